mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use superhopf::coeff::CoeffRing;
use superhopf::env::EnvAlgebra;
use superhopf::ext::{gram_matrix, ExteriorAlgebra};
use superhopf::format::Description;
use superhopf::hcp::{self, HarishChandraPair, SuperGroupData};
use superhopf::hopfpair::{self, check_hopf_axioms, verify_antipode_compat, verify_hopf_pairing, HopfStructure};
use superhopf::lie::check_two_operation;
use superhopf::chevalley::{admissibility_of_zform, integrality_check};
use superhopf::report::Report;

use report::{digest, Format, RunReport};

/// Exact verification of Lie superalgebras and the Hopf superalgebras
/// built from them.
#[derive(Debug, Parser)]
#[command(name = "superhopf", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true, env = "SUPERHOPF_SEED", default_value_t = 0)]
    seed: u64,
    /// Append elapsed time (makes output non-deterministic).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Super-Jacobi axioms, admissibility and 2-operation laws.
    CheckLie { file: PathBuf },
    /// Normal form of a whitespace-separated word in U(g).
    NormalForm {
        file: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Overlap ambiguities of the PBW rewriting system.
    Ambiguities { file: PathBuf },
    /// PBW monomials up to a degree, and the comparison map to U(g0)⊗Λ(g1).
    Pbw {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        degree: u32,
    },
    /// Hopf superalgebra axioms of U(g) on PBW monomials up to a degree.
    HopfVerify {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        degree: u32,
    },
    /// Gram matrices of the exterior pairing.
    ExtGram {
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value = "Z")]
        ring: CoeffRing,
    },
    /// Build the Hopf superalgebra of a pair and verify it on a λ-box.
    HcpBuild {
        file: PathBuf,
        /// λ-box bound per coordinate.
        #[arg(long, default_value_t = 3)]
        max_support: i64,
        /// PBW degree for the U(g) × A pairing.
        #[arg(long, default_value_t = 2)]
        degree: u32,
    },
    /// Build A from a pair, extract the pair back and compare.
    HcpRoundtrip {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_support: i64,
        /// Additional random pairs to round-trip (uses --seed).
        #[arg(long, default_value_t = 0)]
        random: usize,
    },
    /// Integrality of the Kostant Z-form.
    Kostant {
        file: PathBuf,
        #[arg(long, default_value_t = 6)]
        bound: u32,
    },
}

type Outcome = Result<(), String>;

fn load(path: &PathBuf, run: &mut RunReport) -> Result<Description, String> {
    let bytes = std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
    run.input = Some(path.display().to_string());
    run.digest = Some(digest(&bytes));
    let text = String::from_utf8(bytes).map_err(|e| format!("{}: {e}", path.display()))?;
    Description::parse(&text).map_err(|e| e.to_string())
}

fn env_of(d: &Description) -> Result<EnvAlgebra, String> {
    let g = d.lie().map_err(|e| e.to_string())?;
    let q = d.two_operation(&g).map_err(|e| e.to_string())?;
    EnvAlgebra::new(Arc::new(g), q).map_err(|e| e.to_string())
}

fn check_lie(file: &PathBuf, seed: u64, run: &mut RunReport) -> Outcome {
    let d = load(file, run)?;
    let g = d.lie().map_err(|e| e.to_string())?;
    let q = d.two_operation(&g).map_err(|e| e.to_string())?;
    run.checks.push(g.check_axioms());
    let q = if g.ring().is_two_torsion_free() {
        let adm = g.check_admissible().map_err(|e| e.to_string())?;
        let ok = adm.passed();
        run.checks.push(adm);
        q.or_else(|| if ok { g.derive_two_operation().ok() } else { None })
    } else {
        q
    };
    match q {
        Some(q) => {
            run.seed = Some(seed);
            run.checks.push(check_two_operation(&g, &q, seed, 200));
        }
        None => run.output.push("note=no 2-operation available".into()),
    }
    Ok(())
}

fn pbw(file: &PathBuf, degree: u32, run: &mut RunReport) -> Outcome {
    let env = env_of(&load(file, run)?)?;
    let monos = env.pbw_enumerate(degree);
    for m in &monos {
        run.output.push(env.show_monomial(m).unwrap_or_else(|| "1".into()));
    }
    run.output.push(format!("count={}", monos.len()));
    let phi = env.phi_iso(degree);
    let mut rep = Report::new("phi");
    for d in &phi.degrees {
        rep.check(d.identity, "identity", || format!("degree {} ({} monomials)", d.degree, d.size));
    }
    run.checks.push(rep);
    run.checks.push(phi.coalgebra);
    Ok(())
}

fn ext_gram(rank: usize, ring: &CoeffRing, run: &mut RunReport) -> Outcome {
    let mut rep = Report::new("gram-diagonal");
    for d in 0..=rank {
        let m = gram_matrix(ring, rank, d).map_err(|e| e.to_string())?;
        run.output.push(format!("degree={d} size={}", m.len()));
        for (i, row) in m.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            run.output.push(cells.join(" "));
            for (j, c) in row.iter().enumerate() {
                let ok = if i == j { c.is_one() || ring.neg(c).is_one() } else { c.is_zero() };
                rep.check(ok, "entry", || format!("degree {d}, entry ({i},{j}) = {c}"));
            }
        }
    }
    run.checks.push(rep);
    if rank <= 4 {
        let v = ExteriorAlgebra::standard(ring.clone(), "v", rank).map_err(|e| e.to_string())?;
        let w = ExteriorAlgebra::standard(ring.clone(), "w", rank).map_err(|e| e.to_string())?;
        let p = hopfpair::ext_pairing_handle(&v, &w).map_err(|e| e.to_string())?;
        let (l, r) = (v.all_monomials(), w.all_monomials());
        run.checks.push(verify_hopf_pairing(&p, &l, &r));
        run.checks.push(verify_antipode_compat(&p, &l, &r));
    }
    Ok(())
}

fn hcp_build(file: &PathBuf, bound: i64, degree: u32, run: &mut RunReport) -> Outcome {
    let p = load(file, run)?.pair().map_err(|e| e.to_string())?;
    let pair_report = hcp::check_hcp(&p);
    let ok = pair_report.passed();
    run.checks.push(pair_report);
    if !ok {
        return Ok(());
    }
    let a = hcp::build_a(&p).map_err(|e| e.to_string())?;
    run.output.push(format!("weights: {}", p.show_weights()));
    let zero = vec![0; p.rank()];
    for s in 1..1u64 << p.n_odd() {
        let b = hcp::SgBasis::new(zero.clone(), s);
        run.output.push(format!("coproduct {} = {}", a.display(&b), a.show_tensor(&a.coproduct(&b))));
        run.output.push(format!("antipode {} = {}", a.display(&b), a.show_element(&a.antipode(&b))));
    }
    run.checks.push(hcp::check_group_axioms(&a, bound));
    run.checks.push(hcp::check_splitness(&a, bound));
    run.checks.push(hcp::verify_quotient_and_w(&a, &p, bound));
    run.checks.push(hcp::smash_oracle_check(&a, bound));
    run.checks.push(hcp::verify_ua_pairing(&a, degree, bound));
    Ok(())
}

fn hcp_roundtrip(file: &PathBuf, bound: i64, random: usize, seed: u64, run: &mut RunReport) -> Outcome {
    let p = load(file, run)?.pair().map_err(|e| e.to_string())?;
    let rep = hcp::roundtrip(&p, bound).map_err(|e| e.to_string())?;
    if rep.passed() {
        run.output.push("recovered pair identical".into());
    }
    run.checks.push(rep);
    if random > 0 {
        run.seed = Some(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for k in 0..random {
            let q: HarishChandraPair = hcp::random_pair(&mut rng, 2, 2);
            let mut rep = hcp::roundtrip(&q, bound).map_err(|e| e.to_string())?;
            rep.name = format!("roundtrip-random-{k}");
            run.output.push(format!("random-{k}: {}", q.show_weights()));
            run.checks.push(rep);
        }
    }
    Ok(())
}

fn kostant(file: &PathBuf, bound: u32, run: &mut RunReport) -> Outcome {
    let spec = load(file, run)?.zform().map_err(|e| e.to_string())?;
    run.checks.push(admissibility_of_zform(&spec));
    let rep = integrality_check(&spec, bound);
    if let Some(v) = rep.first_violation() {
        run.output.push(format!("first-violation: {}", v.witness));
    }
    run.checks.push(rep);
    Ok(())
}

fn dispatch(cli: &Cli, run: &mut RunReport) -> Outcome {
    match &cli.command {
        Command::CheckLie { file } => check_lie(file, cli.seed, run),
        Command::NormalForm { file, word } => {
            let env = env_of(&load(file, run)?)?;
            let nf = env.parse_word(word).map_err(|e| e.to_string())?;
            run.output.push(env.show(&nf));
            Ok(())
        }
        Command::Ambiguities { file } => {
            let env = env_of(&load(file, run)?)?;
            run.checks.push(env.check_ambiguities().to_report(&env));
            Ok(())
        }
        Command::Pbw { file, degree } => pbw(file, *degree, run),
        Command::HopfVerify { file, degree } => {
            let env = env_of(&load(file, run)?)?;
            run.checks.push(check_hopf_axioms(&env, &env.pbw_enumerate(*degree)));
            Ok(())
        }
        Command::ExtGram { rank, ring } => ext_gram(*rank, ring, run),
        Command::HcpBuild { file, max_support, degree } => hcp_build(file, *max_support, *degree, run),
        Command::HcpRoundtrip { file, max_support, random } => {
            hcp_roundtrip(file, *max_support, *random, cli.seed, run)
        }
        Command::Kostant { file, bound } => kostant(file, *bound, run),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::CheckLie { .. } => "check-lie",
        Command::NormalForm { .. } => "normal-form",
        Command::Ambiguities { .. } => "ambiguities",
        Command::Pbw { .. } => "pbw",
        Command::HopfVerify { .. } => "hopf-verify",
        Command::ExtGram { .. } => "ext-gram",
        Command::HcpBuild { .. } => "hcp-build",
        Command::HcpRoundtrip { .. } => "hcp-roundtrip",
        Command::Kostant { .. } => "kostant",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let mut run = RunReport::new(command_name(&cli.command));
    if let Err(e) = dispatch(&cli, &mut run) {
        run.error = Some(e);
    }
    if cli.timing {
        run.elapsed = Some(start.elapsed());
    }
    print!("{}", run.render(cli.format));
    ExitCode::from(run.exit_code() as u8)
}
