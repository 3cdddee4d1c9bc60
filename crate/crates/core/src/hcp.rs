//! Harish-Chandra pairs with split-torus even part.
//!
//! Weights follow `[h, x] = wt(x)(h) x`. The torus then coacts on the odd
//! generator `x` of `U(g)` with `μ(x) = -wt(x)`, which is the shift that
//! shows up in every structure map of the built algebra.
//!
//! The built algebra `A = Hom_J(U(g), C)` (with `J = U(Lie T)` and
//! `C = k[Z^r]`) has basis `(λ, S)`: the `J`-linear map sending the PBW
//! monomial `h^k x_R` to `δ_{RS} λ^k e^λ`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use thiserror::Error;

use crate::coeff::{CoeffError, CoeffRing, Scalar};
use crate::env::{EnvAlgebra, EnvElement, EnvError, PbwMonomial};
use crate::ext::{wedge_masks, ExtMonomial, ExteriorAlgebra};
use crate::hopfpair::{
    self, lattice_box, show_lattice, verify_antipode_compat, verify_hopf_pairing, HopfStructure,
    LaurentHopf, PairingHandle, Tensor,
};
use crate::lie::{LieError, LieSuperAlgebra, TwoOperation};
use crate::linalg::{Echelon, SparseVec};
use crate::report::Report;
use crate::superlin::{format_terms, LinComb, Parity};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HcpError {
    #[error("invalid Harish-Chandra pair: {0}")]
    HcpViolation(String),
    #[error("weights must be {rank}-vectors for each of {odd} odd generators")]
    WeightShape { rank: usize, odd: usize },
    #[error("at most {max} odd generators are supported, got {got}")]
    TooManyOdd { max: usize, got: usize },
    #[error("cotangent space not finitely cogenerated within support bound: {0}")]
    NotFinitelyCogenerated(String),
    #[error("extraction supports the rings Z and Q, not {0}")]
    UnsupportedRing(String),
    #[error("recovered structure constant not in the ring: {0}")]
    NonIntegral(String),
    #[error("coadjoint coaction is not diagonal on `{0}`")]
    NonDiagonalWeights(String),
    #[error("morphism data has the wrong shape: {0}")]
    MorphismShape(String),
    #[error(transparent)]
    Env(#[from] EnvError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

const MAX_ODD: usize = 8;

/// A torus `T` of rank `r` together with `g` (even basis `h_1..h_r`), a
/// 2-operation and integral weights of the odd generators.
#[derive(Debug, Clone)]
pub struct HarishChandraPair {
    pub g: Arc<LieSuperAlgebra>,
    pub q: TwoOperation,
    pub weights: Vec<Vec<i64>>,
}

impl HarishChandraPair {
    /// Derives `q` when absent and the ring is 2-torsion free.
    pub fn new(
        g: Arc<LieSuperAlgebra>,
        q: Option<TwoOperation>,
        weights: Vec<Vec<i64>>,
    ) -> Result<Self, HcpError> {
        let (r, n) = (g.n_even(), g.n_odd());
        if weights.len() != n || weights.iter().any(|w| w.len() != r) {
            return Err(HcpError::WeightShape { rank: r, odd: n });
        }
        let q = match q {
            Some(q) => q,
            None if g.ring().is_two_torsion_free() => g.derive_two_operation()?,
            None => {
                return Err(EnvError::MissingTwoOperation(format!(
                    "ring {} is not 2-torsion free",
                    g.ring()
                ))
                .into())
            }
        };
        q.validate(&g)?;
        Ok(HarishChandraPair { g, q, weights })
    }

    /// The pair of `gl(1|1)` over the diagonal torus.
    pub fn gl11(ring: CoeffRing) -> Self {
        let g = Arc::new(crate::catalog::gl11(ring));
        Self::new(g, None, vec![vec![1, -1], vec![-1, 1]]).expect("valid pair")
    }

    pub fn rank(&self) -> usize {
        self.g.n_even()
    }

    pub fn n_odd(&self) -> usize {
        self.g.n_odd()
    }

    pub fn ring(&self) -> &CoeffRing {
        self.g.ring()
    }

    /// `μ(x) = -wt(x)`.
    pub fn coweight(&self, k: usize) -> Vec<i64> {
        self.weights[k].iter().map(|w| -w).collect()
    }

    pub fn show_weights(&self) -> String {
        (0..self.n_odd())
            .map(|k| format!("{}={}", self.g.name(self.rank() + k), show_tuple(&self.weights[k])))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

pub fn show_tuple(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn is_zero_vec(a: &[i64]) -> bool {
    a.iter().all(|x| *x == 0)
}

/// Checks that `g0` is the abelian `Lie(T)`, that `[h_i, x] = wt(x)_i x`,
/// that odd brackets only pair opposite weights, and that the 2-operation is
/// invariant under group-like points.
pub fn check_hcp(p: &HarishChandraPair) -> Report {
    let g = &p.g;
    let ring = g.ring();
    let (r, n) = (p.rank(), p.n_odd());
    let mut rep = Report::new("hcp");
    rep.check(p.weights.len() == n && p.weights.iter().all(|w| w.len() == r), "torus", || {
        "weight vectors do not match the torus rank".into()
    });
    for i in 0..r {
        for j in 0..r {
            let b = g.bracket_basis(i, j);
            rep.check(b.is_zero(), "torus", || format!("[{},{}] = {}", g.name(i), g.name(j), g.show(b)));
        }
    }
    for k in 0..n {
        let x = r + k;
        for i in 0..r {
            let b = g.bracket_basis(i, x);
            let want = LinComb::term(x, ring.from_i64(p.weights[k][i]));
            rep.check(*b == want, "weight-action", || {
                format!("[{},{}] = {}, weight gives {}", g.name(i), g.name(x), g.show(b), g.show(&want))
            });
        }
    }
    for a in 0..n {
        for b in a..n {
            let br = g.bracket_basis(r + a, r + b);
            let total = add(&p.weights[a], &p.weights[b]);
            rep.check(br.is_zero() || is_zero_vec(&total), "bracket-equivariance", || {
                format!(
                    "[{},{}] = {} with weight sum {}",
                    g.name(r + a),
                    g.name(r + b),
                    g.show(br),
                    show_tuple(&total)
                )
            });
        }
    }
    // q(v^γ) = q(v) as Laurent polynomials in γ, for v = x_a and x_a + x_b:
    // the terms are γ^{2μ_a} q(x_a) and γ^{μ_a+μ_b} [x_a, x_b].
    for a in 0..n {
        for b in a..n {
            let mut twisted: BTreeMap<Vec<i64>, LinComb<usize>> = BTreeMap::new();
            let mut push = |lat: Vec<i64>, v: &LinComb<usize>| {
                twisted.entry(lat).or_default().add_assign(ring, v);
            };
            let mu = |k: usize| p.coweight(k);
            push(add(&mu(a), &mu(a)), p.q.value(a));
            if a != b {
                push(add(&mu(b), &mu(b)), p.q.value(b));
                push(add(&mu(a), &mu(b)), g.bracket_basis(r + a, r + b));
            }
            let bad: Vec<String> = twisted
                .iter()
                .filter(|(lat, v)| !is_zero_vec(lat) && !v.is_zero())
                .map(|(lat, v)| format!("{}·({})", show_lattice(lat), g.show(v)))
                .collect();
            rep.check(bad.is_empty(), "square-equivariance", || {
                let v = if a == b {
                    g.name(r + a).to_string()
                } else {
                    format!("{}+{}", g.name(r + a), g.name(r + b))
                };
                format!("q(v^γ) for v={v} has twisted terms {}", bad.join(", "))
            });
        }
    }
    rep
}

/// A basis element `(λ, S)` of the built algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SgBasis {
    pub lambda: Vec<i64>,
    pub odd: u64,
}

impl SgBasis {
    pub fn new(lambda: Vec<i64>, odd: u64) -> Self {
        SgBasis { lambda, odd }
    }

    pub fn parity(&self) -> Parity {
        Parity::from_bit(self.odd.count_ones() as usize)
    }
}

pub type SgElement = LinComb<SgBasis>;

fn show_sg(b: &SgBasis, odd_names: &[String]) -> String {
    let mut s = show_lattice(&b.lambda);
    if b.odd != 0 {
        let names: Vec<&str> = (0..odd_names.len())
            .filter(|k| b.odd >> k & 1 == 1)
            .map(|k| odd_names[k].as_str())
            .collect();
        s.push_str(&format!("*w{{{}}}", names.join(",")));
    }
    s
}

/// Hopf data in the `(λ, S)` representation, as accepted by `extract_pair`.
pub trait SuperGroupData: HopfStructure<Basis = SgBasis> {
    fn rank(&self) -> usize;
    fn even_names(&self) -> Vec<String>;
    fn odd_names(&self) -> Vec<String>;

    fn n_odd(&self) -> usize {
        self.odd_names().len()
    }

    /// Every `(λ, S)` with `|λ|∞ <= bound`.
    fn box_basis(&self, bound: i64) -> Vec<SgBasis> {
        let n = self.n_odd();
        lattice_box(self.rank(), bound)
            .into_iter()
            .flat_map(|l| (0..1u64 << n).map(move |s| SgBasis::new(l.clone(), s)))
            .collect()
    }

    fn show_element(&self, a: &SgElement) -> String {
        let names = self.odd_names();
        format_terms(a.iter(), |b| Some(show_sg(b, &names)), true)
    }

    fn show_tensor(&self, t: &Tensor<SgBasis>) -> String {
        let names = self.odd_names();
        format_terms(t.iter(), |(l, r)| Some(format!("{}⊗{}", show_sg(l, &names), show_sg(r, &names))), true)
    }
}

/// A polynomial in `λ` given by PBW terms `c · h^k` (the `h`-part of a normal form).
type LambdaPoly = Vec<(Vec<u32>, Scalar)>;

fn eval_poly(ring: &CoeffRing, poly: &LambdaPoly, lambda: &[i64]) -> Scalar {
    let mut total = ring.zero();
    for (k, c) in poly {
        let mut v = c.clone();
        for (e, l) in k.iter().zip(lambda) {
            if *e > 0 {
                v = ring.mul(&v, &ring.pow(&ring.from_i64(*l), *e));
            }
        }
        total = ring.add(&total, &v);
    }
    total
}

/// Groups the terms of `u` by their odd part.
fn split_by_odd(u: &EnvElement) -> BTreeMap<u64, LambdaPoly> {
    let mut out: BTreeMap<u64, LambdaPoly> = BTreeMap::new();
    for (m, c) in u.iter() {
        out.entry(m.odd).or_default().push((m.even.clone(), c.clone()));
    }
    out
}

/// The built Hopf superalgebra `A(T, g)`.
#[derive(Debug)]
pub struct SuperGroupAlgebra {
    pair: HarishChandraPair,
    env: Arc<EnvAlgebra>,
    mu: Vec<Vec<i64>>,
    /// For each `S`: the pairs `(T1, T2)` and the `h`-polynomial of the
    /// `x_S`-part of `NF(x_{T1} x_{T2})`.
    co_terms: Vec<Vec<(u64, u64, LambdaPoly)>>,
    /// For each `T`: the sets `S` and the `x_T`-part of `S_U(x_S)`.
    s_terms: Vec<Vec<(u64, LambdaPoly)>>,
}

/// Refuses invalid pairs; otherwise tabulates the odd normal forms and
/// antipodes once.
pub fn build_a(p: &HarishChandraPair) -> Result<SuperGroupAlgebra, HcpError> {
    let rep = check_hcp(p);
    if let Some(v) = rep.first_violation() {
        return Err(HcpError::HcpViolation(format!("[{}] {}", v.check, v.witness)));
    }
    let n = p.n_odd();
    if n > MAX_ODD {
        return Err(HcpError::TooManyOdd { max: MAX_ODD, got: n });
    }
    let env = Arc::new(EnvAlgebra::new(p.g.clone(), Some(p.q.clone()))?);
    let r = p.rank();
    let odd_word = |s: u64| -> Vec<usize> { (0..n).filter(|k| s >> k & 1 == 1).map(|k| r + k).collect() };
    let size = 1usize << n;
    let mut co_terms = vec![Vec::new(); size];
    for t1 in 0..size as u64 {
        for t2 in 0..size as u64 {
            let mut w = odd_word(t1);
            w.extend(odd_word(t2));
            let nf = env.normal_form(&w, env.ring().one())?;
            for (s, poly) in split_by_odd(&nf) {
                co_terms[s as usize].push((t1, t2, poly));
            }
        }
    }
    let mut s_terms = vec![Vec::new(); size];
    for s in 0..size as u64 {
        let sx = env.antipode_monomial(&PbwMonomial { even: vec![0; r], odd: s });
        for (t, poly) in split_by_odd(&sx) {
            s_terms[t as usize].push((s, poly));
        }
    }
    let mu = (0..n).map(|k| p.coweight(k)).collect();
    Ok(SuperGroupAlgebra { pair: p.clone(), env, mu, co_terms, s_terms })
}

impl SuperGroupAlgebra {
    pub fn pair(&self) -> &HarishChandraPair {
        &self.pair
    }

    pub fn env(&self) -> &Arc<EnvAlgebra> {
        &self.env
    }

    /// `μ(T) = Σ_{x ∈ T} μ(x)`.
    pub fn mu_of(&self, t: u64) -> Vec<i64> {
        let mut out = vec![0; self.pair.rank()];
        for (k, m) in self.mu.iter().enumerate() {
            if t >> k & 1 == 1 {
                out = add(&out, m);
            }
        }
        out
    }

    pub fn element(&self, terms: &[(i64, &[i64], &[&str])]) -> Result<SgElement, HcpError> {
        let ring = self.ring();
        let mut out = LinComb::zero();
        for (c, lambda, names) in terms {
            let mut s = 0u64;
            for name in *names {
                let i = self.pair.g.lookup(name)?;
                s |= 1 << (i - self.pair.rank());
            }
            out.add_term(ring, SgBasis::new(lambda.to_vec(), s), ring.from_i64(*c));
        }
        Ok(out)
    }
}

impl HopfStructure for SuperGroupAlgebra {
    type Basis = SgBasis;

    fn ring(&self) -> &CoeffRing {
        self.pair.ring()
    }
    fn parity(&self, b: &SgBasis) -> Parity {
        b.parity()
    }
    fn unit(&self) -> SgBasis {
        SgBasis::new(vec![0; self.pair.rank()], 0)
    }
    /// `(λ,S)(μ,T) = ±(λ+μ, S∪T)` with the shuffle sign of `S, T`.
    fn product(&self, a: &SgBasis, b: &SgBasis) -> SgElement {
        let ring = self.ring();
        match wedge_masks(a.odd, b.odd) {
            None => LinComb::zero(),
            Some((neg, s)) => LinComb::term(SgBasis::new(add(&a.lambda, &b.lambda), s), ring.signed(neg, ring.one())),
        }
    }
    /// `Δ(λ,S) = Σ d · (λ,T1)⊗(λ+μ(T1),T2)` where `d` is the `x_S`-part of
    /// `NF(x_{T1} x_{T2})` evaluated at `λ`.
    fn coproduct(&self, a: &SgBasis) -> Tensor<SgBasis> {
        let ring = self.ring();
        let mut out = LinComb::zero();
        for (t1, t2, poly) in &self.co_terms[a.odd as usize] {
            let d = eval_poly(ring, poly, &a.lambda);
            if !d.is_zero() {
                let right = add(&a.lambda, &self.mu_of(*t1));
                out.add_term(ring, (SgBasis::new(a.lambda.clone(), *t1), SgBasis::new(right, *t2)), d);
            }
        }
        out
    }
    fn counit(&self, a: &SgBasis) -> Scalar {
        if a.odd == 0 {
            self.ring().one()
        } else {
            Scalar::zero()
        }
    }
    /// `S(λ,T) = Σ_S d_S (-λ-μ(T), S)` with `d_S` the `x_T`-part of `S_U(x_S)`
    /// evaluated at `λ`.
    fn antipode(&self, a: &SgBasis) -> SgElement {
        let ring = self.ring();
        let target: Vec<i64> = add(&a.lambda, &self.mu_of(a.odd)).iter().map(|x| -x).collect();
        let mut out = LinComb::zero();
        for (s, poly) in &self.s_terms[a.odd as usize] {
            let d = eval_poly(ring, poly, &a.lambda);
            out.add_term(ring, SgBasis::new(target.clone(), *s), d);
        }
        out
    }
    fn display(&self, a: &SgBasis) -> String {
        show_sg(a, &self.odd_names())
    }
}

impl SuperGroupData for SuperGroupAlgebra {
    fn rank(&self) -> usize {
        self.pair.rank()
    }
    fn even_names(&self) -> Vec<String> {
        self.pair.g.even_indices().map(|i| self.pair.g.name(i).to_string()).collect()
    }
    fn odd_names(&self) -> Vec<String> {
        self.pair.g.odd_indices().map(|i| self.pair.g.name(i).to_string()).collect()
    }
}

/// `Λ(W)` alone, as rank-0 group data.
#[derive(Debug, Clone)]
pub struct ExteriorGroup {
    pub ext: ExteriorAlgebra,
}

impl HopfStructure for ExteriorGroup {
    type Basis = SgBasis;

    fn ring(&self) -> &CoeffRing {
        self.ext.ring()
    }
    fn parity(&self, b: &SgBasis) -> Parity {
        b.parity()
    }
    fn unit(&self) -> SgBasis {
        SgBasis::new(vec![], 0)
    }
    fn product(&self, a: &SgBasis, b: &SgBasis) -> SgElement {
        HopfStructure::product(&self.ext, &ExtMonomial(a.odd), &ExtMonomial(b.odd))
            .map_keys(self.ring(), |m| SgBasis::new(vec![], m.0))
    }
    fn coproduct(&self, a: &SgBasis) -> Tensor<SgBasis> {
        self.ext
            .coproduct_monomial(ExtMonomial(a.odd))
            .map_keys(self.ring(), |(l, r)| (SgBasis::new(vec![], l.0), SgBasis::new(vec![], r.0)))
    }
    fn counit(&self, a: &SgBasis) -> Scalar {
        HopfStructure::counit(&self.ext, &ExtMonomial(a.odd))
    }
    fn antipode(&self, a: &SgBasis) -> SgElement {
        HopfStructure::antipode(&self.ext, &ExtMonomial(a.odd)).map_keys(self.ring(), |m| SgBasis::new(vec![], m.0))
    }
    fn display(&self, a: &SgBasis) -> String {
        show_sg(a, &self.odd_names())
    }
}

impl SuperGroupData for ExteriorGroup {
    fn rank(&self) -> usize {
        0
    }
    fn even_names(&self) -> Vec<String> {
        vec![]
    }
    fn odd_names(&self) -> Vec<String> {
        (0..self.ext.rank()).map(|i| self.ext.name(i).to_string()).collect()
    }
}

/// `C = k[Z^r]` alone, as purely even group data.
#[derive(Debug, Clone)]
pub struct TorusGroup {
    pub c: LaurentHopf,
    pub names: Vec<String>,
}

impl TorusGroup {
    pub fn new(ring: CoeffRing, rank: usize) -> Self {
        TorusGroup { c: LaurentHopf::new(ring, rank), names: (1..=rank).map(|i| format!("h{i}")).collect() }
    }
}

impl HopfStructure for TorusGroup {
    type Basis = SgBasis;

    fn ring(&self) -> &CoeffRing {
        HopfStructure::ring(&self.c)
    }
    fn parity(&self, _: &SgBasis) -> Parity {
        Parity::Even
    }
    fn unit(&self) -> SgBasis {
        SgBasis::new(self.c.unit(), 0)
    }
    fn product(&self, a: &SgBasis, b: &SgBasis) -> SgElement {
        self.c.product(&a.lambda, &b.lambda).map_keys(self.ring(), |l| SgBasis::new(l.clone(), 0))
    }
    fn coproduct(&self, a: &SgBasis) -> Tensor<SgBasis> {
        LinComb::term((a.clone(), a.clone()), self.ring().one())
    }
    fn counit(&self, _: &SgBasis) -> Scalar {
        self.ring().one()
    }
    fn antipode(&self, a: &SgBasis) -> SgElement {
        self.c.antipode(&a.lambda).map_keys(self.ring(), |l| SgBasis::new(l.clone(), 0))
    }
    fn display(&self, a: &SgBasis) -> String {
        show_lattice(&a.lambda)
    }
}

impl SuperGroupData for TorusGroup {
    fn rank(&self) -> usize {
        self.c.rank()
    }
    fn even_names(&self) -> Vec<String> {
        self.names.clone()
    }
    fn odd_names(&self) -> Vec<String> {
        vec![]
    }
    fn box_basis(&self, bound: i64) -> Vec<SgBasis> {
        lattice_box(self.c.rank(), bound).into_iter().map(|l| SgBasis::new(l, 0)).collect()
    }
}

/// `π : A -> C`, killing every term with odd part.
fn bar(a: &SgElement) -> LinComb<Vec<i64>> {
    a.iter().filter(|(b, _)| b.odd == 0).map(|(b, c)| (b.lambda.clone(), c.clone())).collect()
}

fn to_sparse(a: &SgElement) -> SparseVec<SgBasis> {
    a.iter().map(|(b, c)| (b.clone(), c.as_rational().clone())).collect()
}

fn in_box(b: &SgBasis, bound: i64) -> bool {
    b.lambda.iter().all(|x| x.abs() <= bound)
}

/// `A⁺/(A⁺)²` computed inside the `λ`-box, with coordinates against the
/// spanning set `e^{ε_i} - 1, w_x`.
struct Cotangent<'a, D: SuperGroupData> {
    data: &'a D,
    bound: i64,
    ideal: Echelon<SgBasis>,
    span: Echelon<SgBasis>,
    spanning: Vec<SgElement>,
    box_size: usize,
    odd_box_size: usize,
}

impl<'a, D: SuperGroupData> Cotangent<'a, D> {
    fn augment(&self, b: &SgBasis) -> SgElement {
        let ring = self.data.ring();
        let mut a = LinComb::term(b.clone(), ring.one());
        a.add_term(ring, self.data.unit(), ring.neg(&self.data.counit(b)));
        a
    }

    fn build(data: &'a D, bound: i64) -> Result<Self, HcpError> {
        let (r, n) = (data.rank(), data.n_odd());
        let basis = data.box_basis(bound);
        let mut gens = Vec::new();
        for i in 0..r {
            for s in [1, -1] {
                let mut l = vec![0; r];
                l[i] = s;
                gens.push(SgBasis::new(l, 0));
            }
        }
        for k in 0..n {
            gens.push(SgBasis::new(vec![0; r], 1 << k));
        }
        let mut me = Cotangent {
            data,
            bound,
            ideal: Echelon::new(),
            span: Echelon::new(),
            spanning: Vec::new(),
            box_size: basis.len(),
            odd_box_size: basis.iter().filter(|b| b.parity().is_odd()).count(),
        };
        let aug_gens: Vec<SgElement> = gens.iter().map(|g| me.augment(g)).collect();
        for a in &basis {
            let aa = me.augment(a);
            if aa.is_zero() {
                continue;
            }
            for g in &aug_gens {
                let prod = hopfpair::mul(data, &aa, g);
                if prod.keys().all(|b| in_box(b, bound)) && !prod.is_zero() {
                    me.ideal.insert(to_sparse(&prod));
                }
            }
        }
        let quotient = me.box_size - 1 - me.ideal.rank();
        if quotient != r + n {
            return Err(HcpError::NotFinitelyCogenerated(format!(
                "cotangent dimension {quotient} at support bound {bound}, expected {}",
                r + n
            )));
        }
        for g in gens.iter().filter(|g| g.odd != 0 || g.lambda.iter().all(|x| *x >= 0)) {
            let s = me.augment(g);
            let (rem, _) = me.ideal.reduce(to_sparse(&s));
            if !me.span.insert(rem) {
                return Err(HcpError::NotFinitelyCogenerated(format!(
                    "class of {} is dependent",
                    data.display(g)
                )));
            }
            me.spanning.push(s);
        }
        Ok(me)
    }

    /// Odd part of the quotient: `A₁/A₀⁺A₁` inside the box.
    fn odd_dim(&self) -> usize {
        let odd_rank = self.ideal_rows_odd();
        self.odd_box_size - odd_rank
    }

    fn ideal_rows_odd(&self) -> usize {
        // every ideal generator is homogeneous, so each row has one parity
        self.data
            .box_basis(self.bound)
            .iter()
            .filter(|b| b.parity().is_odd())
            .filter(|b| {
                let mut v = SparseVec::new();
                v.insert((*b).clone(), BigRational::from_integer(1.into()));
                let (rem, _) = self.ideal.reduce(v.clone());
                rem.keys().next() != Some(*b)
            })
            .count()
    }

    /// Coordinates `κ(b - ε(b))` of a basis element's class.
    fn coords(&self, b: &SgBasis) -> Result<Vec<BigRational>, HcpError> {
        if !in_box(b, self.bound) {
            return Err(HcpError::NotFinitelyCogenerated(format!(
                "{} lies outside the support bound {}",
                self.data.display(b),
                self.bound
            )));
        }
        let (rem, _) = self.ideal.reduce(to_sparse(&self.augment(b)));
        let sol = self.span.solve(rem).ok_or_else(|| {
            HcpError::NotFinitelyCogenerated(format!("class of {} is outside the span", self.data.display(b)))
        })?;
        Ok((0..self.spanning.len()).map(|k| sol.get(&k).cloned().unwrap_or_else(BigRational::zero)).collect())
    }
}

/// The structure recovered by `extract_pair`.
#[derive(Debug, Clone)]
pub struct ExtractedPair {
    pub g: LieSuperAlgebra,
    pub q: TwoOperation,
    pub weights: Vec<Vec<i64>>,
}

impl ExtractedPair {
    /// Exact comparison of names, brackets, 2-operation and weights.
    pub fn compare(&self, p: &HarishChandraPair) -> Report {
        let mut rep = Report::new("roundtrip");
        let (a, b) = (&self.g, &*p.g);
        let names = |g: &LieSuperAlgebra| (0..g.dim()).map(|i| g.name(i).to_string()).collect::<Vec<_>>();
        let same_shape = a.n_even() == b.n_even() && names(a) == names(b);
        rep.check(same_shape, "basis", || format!("{:?} vs {:?}", names(a), names(b)));
        if !same_shape {
            return rep;
        }
        for i in 0..a.dim() {
            for j in i..a.dim() {
                let (x, y) = (a.bracket_basis(i, j), b.bracket_basis(i, j));
                rep.check(x == y, "bracket", || {
                    format!("[{},{}]: recovered {} vs {}", a.name(i), a.name(j), a.show(x), b.show(y))
                });
            }
        }
        rep.check(self.q == p.q, "two-operation", || format!("{} vs {}", self.q.show(a), p.q.show(b)));
        rep.check(self.weights == p.weights, "weights", || format!("{:?} vs {:?}", self.weights, p.weights));
        rep
    }
}

/// Recovers `(g, q, weights)` from Hopf data: `g` is dual to `A⁺/(A⁺)²`,
/// brackets and squares come from convolution, weights from the coadjoint
/// coaction `a ↦ a₂ ⊗ S(ā₁)ā₃`.
pub fn extract_pair<D: SuperGroupData>(data: &D, bound: i64) -> Result<ExtractedPair, HcpError> {
    let ring = data.ring().clone();
    if matches!(ring, CoeffRing::IntegersMod(_)) {
        return Err(HcpError::UnsupportedRing(ring.to_string()));
    }
    let (r, n) = (data.rank(), data.n_odd());
    let cot = Cotangent::build(data, bound)?;
    let dim = r + n;
    let mut cache: HashMap<SgBasis, Vec<BigRational>> = HashMap::new();
    let mut coords = |b: &SgBasis| -> Result<Vec<BigRational>, HcpError> {
        if let Some(v) = cache.get(b) {
            return Ok(v.clone());
        }
        let v = cot.coords(b)?;
        cache.insert(b.clone(), v.clone());
        Ok(v)
    };
    let parity = |k: usize| if k < r { Parity::Even } else { Parity::Odd };
    // convolution products (u_i u_j)(s_k) for all i, j, k
    let mut conv = vec![vec![vec![BigRational::zero(); dim]; dim]; dim];
    for (k, s) in cot.spanning.iter().enumerate() {
        let ds = hopfpair::comul(data, s);
        for ((b1, b2), c) in ds.iter() {
            let (u1, u2) = (coords(b1)?, coords(b2)?);
            let c = c.as_rational();
            for i in 0..dim {
                if u1[i].is_zero() {
                    continue;
                }
                for j in 0..dim {
                    if !u2[j].is_zero() {
                        conv[i][j][k] += c * &u1[i] * &u2[j];
                    }
                }
            }
        }
    }
    let to_ring = |x: &BigRational, what: &dyn Fn() -> String| -> Result<Scalar, HcpError> {
        ring.from_rational(x).map_err(|_| HcpError::NonIntegral(format!("{}: {x}", what())))
    };
    let even = data.even_names();
    let odd = data.odd_names();
    let name = |k: usize| if k < r { even[k].clone() } else { odd[k - r].clone() };
    let mut entries = Vec::new();
    for i in 0..dim {
        for j in i..dim {
            let neg = parity(i).is_odd() && parity(j).is_odd();
            let mut v = LinComb::zero();
            for k in 0..dim {
                let val = if neg { &conv[i][j][k] + &conv[j][i][k] } else { &conv[i][j][k] - &conv[j][i][k] };
                if !val.is_zero() {
                    let c = to_ring(&val, &|| format!("[{},{}] at {}", name(i), name(j), name(k)))?;
                    v.add_term(&ring, k, c);
                }
            }
            if !v.is_zero() {
                entries.push((i, j, v));
            }
        }
    }
    let g = LieSuperAlgebra::from_table(ring.clone(), &even, &odd, entries)?;
    let mut q = TwoOperation::zero(n);
    for x in 0..n {
        for k in 0..dim {
            let val = &conv[r + x][r + x][k];
            if !val.is_zero() {
                let c = to_ring(val, &|| format!("{}^<2> at {}", name(r + x), name(k)))?;
                q.values[x].add_term(&ring, k, c);
            }
        }
    }
    let weights = coadjoint_weights(data, &cot, &mut coords)?;
    Ok(ExtractedPair { g, q, weights })
}

/// `w_x ↦ Σ [a₂] ⊗ S(ā₁)ā₃`; diagonal `w_x ⊗ e^ν` gives `wt(x) = -ν`.
fn coadjoint_weights<D: SuperGroupData>(
    data: &D,
    cot: &Cotangent<'_, D>,
    coords: &mut impl FnMut(&SgBasis) -> Result<Vec<BigRational>, HcpError>,
) -> Result<Vec<Vec<i64>>, HcpError> {
    let (r, n) = (data.rank(), data.n_odd());
    let odd = data.odd_names();
    let mut weights = Vec::new();
    for x in 0..n {
        let w = &cot.spanning[r + x];
        let mut coaction: BTreeMap<(usize, Vec<i64>), BigRational> = BTreeMap::new();
        for (lead, c) in hopfpair::comul(data, w).iter() {
            let (b12, b3) = lead;
            if b3.odd != 0 {
                continue;
            }
            for ((b1, b2), c2) in data.coproduct(b12).iter() {
                if b1.odd != 0 || b2.parity() == Parity::Even {
                    continue;
                }
                let u = coords(b2)?;
                let nu: Vec<i64> = b3.lambda.iter().zip(&b1.lambda).map(|(a, b)| a - b).collect();
                for y in 0..n {
                    let v = &u[r + y];
                    if !v.is_zero() {
                        let e = coaction.entry((y, nu.clone())).or_insert_with(BigRational::zero);
                        *e += c.as_rational() * c2.as_rational() * v;
                    }
                }
            }
        }
        coaction.retain(|_, v| !v.is_zero());
        let one = BigRational::from_integer(1.into());
        let mut it = coaction.iter();
        match (it.next(), it.next()) {
            (Some(((y, nu), v)), None) if *y == x && *v == one => {
                weights.push(nu.iter().map(|a| -a).collect());
            }
            _ => return Err(HcpError::NonDiagonalWeights(odd[x].clone())),
        }
    }
    Ok(weights)
}

/// Builds `A`, extracts the pair back and compares exactly.
pub fn roundtrip(p: &HarishChandraPair, bound: i64) -> Result<Report, HcpError> {
    let a = build_a(p)?;
    let back = extract_pair(&a, bound)?;
    Ok(back.compare(p))
}

/// Hopf axioms and supercommutativity of `A` on the `λ`-box.
pub fn check_group_axioms<D: SuperGroupData>(a: &D, bound: i64) -> Report {
    let set = a.box_basis(bound);
    let mut rep = hopfpair::check_hopf_axioms(a, &set);
    rep.absorb(hopfpair::check_supercommutativity(a, &set));
    rep.name = "group-axioms".into();
    rep
}

/// `Ā ≅ C` as Hopf algebras through `π`, and `W^A = A₁/A₀⁺A₁` has rank
/// `n` with the pair's weights.
pub fn verify_quotient_and_w(a: &SuperGroupAlgebra, p: &HarishChandraPair, bound: i64) -> Report {
    let mut rep = Report::new("quotient-and-W");
    let ring = a.ring();
    let c = LaurentHopf::new(ring.clone(), p.rank());
    let set = a.box_basis(bound);
    for x in &set {
        let ex = hopfpair::basis_elem(a, x);
        let px = bar(&ex);
        let lhs = hopfpair::comul(a, &ex)
            .iter()
            .filter(|((l, r), _)| l.odd == 0 && r.odd == 0)
            .map(|((l, r), v)| ((l.lambda.clone(), r.lambda.clone()), v.clone()))
            .collect::<Tensor<Vec<i64>>>();
        let rhs = hopfpair::comul(&c, &px);
        rep.check(lhs == rhs, "quotient-coproduct", || a.display(x));
        let lhs = bar(&a.antipode(x));
        let rhs = hopfpair::antipode(&c, &px);
        rep.check(lhs == rhs, "quotient-antipode", || a.display(x));
        rep.check(a.counit(x) == hopfpair::counit(&c, &px), "quotient-counit", || a.display(x));
        for y in &set {
            let lhs = bar(&a.product(x, y));
            let rhs = hopfpair::mul(&c, &px, &bar(&hopfpair::basis_elem(a, y)));
            rep.check(lhs == rhs, "quotient-product", || format!("({},{})", a.display(x), a.display(y)));
        }
    }
    match Cotangent::build(a, bound) {
        Err(e) => rep.fail("W-rank", e.to_string()),
        Ok(cot) => {
            let d = cot.odd_dim();
            rep.check(d == p.n_odd(), "W-rank", || format!("rank {d}, expected {}", p.n_odd()));
            let mut coords = |b: &SgBasis| cot.coords(b);
            match coadjoint_weights(a, &cot, &mut coords) {
                Ok(w) => rep.check(w == p.weights, "W-weights", || format!("{w:?} vs {:?}", p.weights)),
                Err(e) => rep.fail("W-weights", e.to_string()),
            }
        }
    }
    rep
}

/// `(π⊗id)Δ(a) = π-leg ⊗ a` on basis elements, the identity-shaped
/// `A -> C⊗Λ(W)` is multiplicative, and it preserves the counit.
pub fn check_splitness(a: &SuperGroupAlgebra, bound: i64) -> Report {
    let mut rep = Report::new("splitness");
    let ring = a.ring();
    let names = a.odd_names();
    let lam = ExteriorAlgebra::new(ring.clone(), names).expect("few odd generators");
    let set = a.box_basis(bound);
    for x in &set {
        let lhs: Tensor<SgBasis> = a.coproduct(x).filter(|(l, _)| l.odd == 0);
        let want = LinComb::term((SgBasis::new(x.lambda.clone(), 0), x.clone()), ring.one());
        rep.check(lhs == want, "comodule", || a.display(x));
        let eps = if x.odd == 0 { ring.one() } else { ring.zero() };
        rep.check(a.counit(x) == eps, "counit", || a.display(x));
        for y in &set {
            let lhs = a.product(x, y);
            let w = lam.wedge_unchecked(
                &LinComb::term(ExtMonomial(x.odd), ring.one()),
                &LinComb::term(ExtMonomial(y.odd), ring.one()),
            );
            let lambda = add(&x.lambda, &y.lambda);
            let rhs: SgElement = w.iter().map(|(m, c)| (SgBasis::new(lambda.clone(), m.0), c.clone())).collect();
            rep.check(lhs == rhs, "algebra", || format!("({},{})", a.display(x), a.display(y)));
        }
    }
    rep
}

/// `Δ(e^λ w_x) = e^λ w_x ⊗ e^{λ+μ(x)} + e^λ ⊗ e^λ w_x`, plus `Δ(e^λ) = e^λ⊗e^λ`,
/// computed from the weights alone and compared with the terms of total odd
/// degree at most one of the production coproduct.
pub fn smash_oracle_check(a: &SuperGroupAlgebra, bound: i64) -> Report {
    let mut rep = Report::new("smash-oracle");
    let ring = a.ring();
    let p = a.pair();
    for lambda in lattice_box(p.rank(), bound) {
        let mut cases = vec![(0u64, vec![(0u64, lambda.clone(), 0u64, lambda.clone())])];
        for x in 0..p.n_odd() {
            let bit = 1u64 << x;
            let shifted = add(&lambda, &p.coweight(x));
            cases.push((bit, vec![(bit, lambda.clone(), 0, shifted), (0, lambda.clone(), bit, lambda.clone())]));
        }
        for (s, terms) in cases {
            let b = SgBasis::new(lambda.clone(), s);
            let want: Tensor<SgBasis> = terms
                .into_iter()
                .map(|(s1, l1, s2, l2)| ((SgBasis::new(l1, s1), SgBasis::new(l2, s2)), ring.one()))
                .collect();
            let got = a.coproduct(&b).filter(|(l, r)| (l.odd | r.odd).count_ones() + (l.odd & r.odd).count_ones() <= 1);
            rep.check(got == want, "smash", || {
                format!("{}: {} vs {}", a.display(&b), hopfpair::show_tensor(a, &got), hopfpair::show_tensor(a, &want))
            });
        }
    }
    rep
}

/// `⟨h^k x_R, (λ, S)⟩ = δ_{RS} λ^k`.
pub fn ua_pairing<'a>(a: &'a SuperGroupAlgebra) -> PairingHandle<'a, EnvAlgebra, SuperGroupAlgebra> {
    let ring = a.ring().clone();
    PairingHandle::new(a.env().as_ref(), a, move |m: &PbwMonomial, b: &SgBasis| {
        if m.odd != b.odd {
            return Scalar::zero();
        }
        let mut v = ring.one();
        for (k, l) in m.even.iter().zip(&b.lambda) {
            v = ring.mul(&v, &ring.pow(&ring.from_i64(*l), *k));
        }
        v
    })
}

/// Hopf pairing conditions and antipode compatibility between `U(g)` (PBW
/// degree `<= degree`) and `A` (`λ`-box `bound`), plus equivariance
/// `⟨x^γ, a⟩ = ⟨x, ^γa⟩` at group-like points as Laurent bookkeeping.
pub fn verify_ua_pairing(a: &SuperGroupAlgebra, degree: u32, bound: i64) -> Report {
    let p = ua_pairing(a);
    let lefts = a.env().pbw_enumerate(degree);
    let rights = a.box_basis(bound);
    let mut rep = verify_hopf_pairing(&p, &lefts, &rights);
    rep.name = "ua-pairing".into();
    rep.absorb(verify_antipode_compat(&p, &lefts, &rights));
    rep.absorb(check_equivariance(a, &p, &lefts, &rights));
    rep
}

fn check_equivariance(
    a: &SuperGroupAlgebra,
    p: &PairingHandle<'_, EnvAlgebra, SuperGroupAlgebra>,
    lefts: &[PbwMonomial],
    rights: &[SgBasis],
) -> Report {
    let ring = a.ring();
    let mut rep = Report::new("equivariance");
    for b in rights {
        // ^γa = Σ γ(ā₁)^{-1} a₂ γ(ā₃)
        let mut twisted: Vec<(Vec<i64>, SgBasis, Scalar)> = Vec::new();
        for ((b12, b3), c) in a.coproduct(b).iter() {
            if b3.odd != 0 {
                continue;
            }
            for ((b1, b2), c2) in a.coproduct(b12).iter() {
                if b1.odd == 0 {
                    let nu: Vec<i64> = b3.lambda.iter().zip(&b1.lambda).map(|(x, y)| x - y).collect();
                    twisted.push((nu, b2.clone(), ring.mul(c, c2)));
                }
            }
        }
        for x in lefts {
            let mut lhs: LinComb<Vec<i64>> = LinComb::zero();
            lhs.add_term(ring, a.mu_of(x.odd), p.eval(x, b));
            let mut rhs: LinComb<Vec<i64>> = LinComb::zero();
            for (nu, b2, c) in &twisted {
                rhs.add_term(ring, nu.clone(), ring.mul(c, &p.eval(x, b2)));
            }
            rep.check(lhs == rhs, "equivariance", || {
                let c = LaurentHopf::new(ring.clone(), a.pair().rank());
                format!("x={}, a={}: {} vs {}", a.env().display(x), a.display(b), c.show(&lhs), c.show(&rhs))
            });
        }
    }
    rep
}

/// A morphism of pairs `(T', g') -> (T, g)`: `Lie(α)` as an integer matrix
/// (`alpha[j][i]` = coefficient of `h_i` in the image of `h'_j`) and the
/// images of the odd generators of `g'`.
#[derive(Debug, Clone)]
pub struct PairMorphism {
    pub alpha: Vec<Vec<i64>>,
    pub beta_odd: Vec<LinComb<usize>>,
}

impl PairMorphism {
    fn beta(&self, src: &HarishChandraPair, v: usize) -> LinComb<usize> {
        let ring = src.ring();
        let r = src.rank();
        if v < r {
            self.alpha[v].iter().enumerate().filter(|(_, c)| **c != 0).map(|(i, c)| (i, ring.from_i64(*c))).collect()
        } else {
            self.beta_odd[v - r].clone()
        }
    }

    fn beta_lin(&self, src: &HarishChandraPair, v: &LinComb<usize>, dst: &HarishChandraPair) -> LinComb<usize> {
        v.apply(dst.ring(), |i| self.beta(src, *i))
    }

    /// Brackets, 2-operations and weights are compatible.
    pub fn check(&self, src: &HarishChandraPair, dst: &HarishChandraPair) -> Report {
        let mut rep = Report::new("morphism");
        let (gs, gd) = (&src.g, &dst.g);
        let shape = self.alpha.len() == src.rank()
            && self.alpha.iter().all(|row| row.len() == dst.rank())
            && self.beta_odd.len() == src.n_odd()
            && self.beta_odd.iter().all(|v| v.keys().all(|k| (dst.rank()..gd.dim()).contains(k)));
        rep.check(shape, "shape", || "dimensions do not match".into());
        if !shape {
            return rep;
        }
        for i in 0..gs.dim() {
            for j in i..gs.dim() {
                let lhs = self.beta_lin(src, gs.bracket_basis(i, j), dst);
                let rhs = gd.bracket_lin(&self.beta(src, i), &self.beta(src, j));
                rep.check(lhs == rhs, "bracket", || format!("[{},{}]", gs.name(i), gs.name(j)));
            }
        }
        for k in 0..src.n_odd() {
            let lhs = self.beta_lin(src, src.q.value(k), dst);
            let rhs = dst.q.apply(gd, &self.beta_odd[k]);
            rep.check(lhs == rhs, "two-operation", || gs.name(src.rank() + k).to_string());
            // β(x) must have the pulled-back weight: wt'(x)_j = Σ_i alpha[j][i] wt(y)_i
            for y in self.beta_odd[k].keys() {
                let wt = &dst.weights[y - dst.rank()];
                let pulled: Vec<i64> = self.alpha.iter().map(|row| row.iter().zip(wt).map(|(a, w)| a * w).sum()).collect();
                rep.check(pulled == src.weights[k], "weight", || {
                    format!("{} -> {}", gs.name(src.rank() + k), gd.name(*y))
                });
            }
        }
        rep
    }

    /// `F(f) = α* ∘ f ∘ U(β)` on a basis element of the target's `A`.
    pub fn induced(&self, src: &SuperGroupAlgebra, dst: &SuperGroupAlgebra, b: &SgBasis) -> SgElement {
        let ps = src.pair();
        let ring = src.ring();
        let rs = ps.rank();
        let lambda: Vec<i64> = self.alpha.iter().map(|row| row.iter().zip(&b.lambda).map(|(a, l)| a * l).sum()).collect();
        let mut out = LinComb::zero();
        for r_set in 0..1u64 << ps.n_odd() {
            // U(β)(x'_R) as a normal form in U(g)
            let mut img = dst.env().one();
            for k in 0..ps.n_odd() {
                if r_set >> k & 1 == 1 {
                    let bx: EnvElement = self.beta(ps, rs + k).apply(ring, |y| {
                        LinComb::term(dst.env().generator(*y), ring.one())
                    });
                    img = dst.env().multiply(&img, &bx).expect("same algebra");
                }
            }
            let polys = split_by_odd(&img);
            if let Some(poly) = polys.get(&b.odd) {
                let d = eval_poly(ring, poly, &b.lambda);
                out.add_term(ring, SgBasis::new(lambda.clone(), r_set), d);
            }
        }
        out
    }

    /// The induced map `A(T,g) -> A(T',g')` is a Hopf map on the box.
    pub fn check_induced(&self, src: &SuperGroupAlgebra, dst: &SuperGroupAlgebra, bound: i64) -> Report {
        let mut rep = Report::new("functoriality");
        let ring = src.ring();
        let f = |b: &SgBasis| self.induced(src, dst, b);
        let set = dst.box_basis(bound);
        for x in &set {
            let fx = f(x);
            let lhs = hopfpair::comul(src, &fx);
            let mut rhs = LinComb::zero();
            for ((l, r), c) in dst.coproduct(x).iter() {
                let (fl, fr) = (f(l), f(r));
                for (a, u) in fl.iter() {
                    for (b, v) in fr.iter() {
                        rhs.add_term(ring, (a.clone(), b.clone()), ring.mul(c, &ring.mul(u, v)));
                    }
                }
            }
            rep.check(lhs == rhs, "coproduct", || dst.display(x));
            rep.check(hopfpair::counit(src, &fx) == dst.counit(x), "counit", || dst.display(x));
            let lhs = hopfpair::antipode(src, &fx);
            let rhs = dst.antipode(x).apply(ring, |b| f(b));
            rep.check(lhs == rhs, "antipode", || dst.display(x));
            for y in &set {
                let lhs = dst.product(x, y).apply(ring, |b| f(b));
                let rhs = hopfpair::mul(src, &fx, &f(y));
                rep.check(lhs == rhs, "product", || format!("({},{})", dst.display(x), dst.display(y)));
            }
        }
        rep
    }
}

/// A random valid pair over Z of rank `1..=max_rank` with `1..=max_odd` odd
/// generators and weights in `[-1, 1]`; rejection-sampled until the axioms
/// and the pair conditions hold and some odd bracket is nonzero.
pub fn random_pair<R: Rng>(rng: &mut R, max_rank: usize, max_odd: usize) -> HarishChandraPair {
    let ring = CoeffRing::Integers;
    loop {
        let r = rng.gen_range(1..=max_rank);
        let n = rng.gen_range(1..=max_odd);
        let weights: Vec<Vec<i64>> = (0..n).map(|_| (0..r).map(|_| rng.gen_range(-1..=1)).collect()).collect();
        let even: Vec<String> = (1..=r).map(|i| format!("h{i}")).collect();
        let odd: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let mut entries = Vec::new();
        for (k, w) in weights.iter().enumerate() {
            for (i, c) in w.iter().enumerate() {
                if *c != 0 {
                    entries.push((i, r + k, LinComb::term(r + k, ring.from_i64(*c))));
                }
            }
        }
        let mut any = false;
        for a in 0..n {
            for b in a..n {
                if !is_zero_vec(&add(&weights[a], &weights[b])) {
                    continue;
                }
                let scale = if a == b { 2 } else { 1 };
                let v: LinComb<usize> = (0..r)
                    .map(|i| (i, ring.from_i64(scale * rng.gen_range(-2..=2))))
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                if !v.is_zero() {
                    any = true;
                    entries.push((r + a, r + b, v));
                }
            }
        }
        if !any {
            continue;
        }
        let Ok(g) = LieSuperAlgebra::from_table(ring.clone(), &even, &odd, entries) else { continue };
        if !g.check_axioms().passed() {
            continue;
        }
        let Ok(p) = HarishChandraPair::new(Arc::new(g), None, weights) else { continue };
        if check_hcp(&p).passed() {
            return p;
        }
    }
}
