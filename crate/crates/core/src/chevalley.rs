//! Kostant Z-forms: divided powers of root vectors, binomials in Cartan
//! elements and odd monomials, checked for closure under multiplication
//! inside `U(g) ⊗ Q`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::coeff::{CoeffRing, Scalar};
use crate::env::{EnvAlgebra, EnvElement, EnvError, PbwMonomial};
use crate::lie::{LieError, LieSuperAlgebra, RingMap, TwoOperation};
use crate::report::Report;
use crate::superlin::{format_terms, LinComb};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChevalleyError {
    #[error("product degree {got} exceeds the bound {bound}")]
    DegreeBoundExceeded { got: u32, bound: u32 },
    #[error("Z-form is not admissible: {0}")]
    NonAdmissibleSpec(String),
    #[error("bad designation: {0}")]
    BadDesignation(String),
    #[error("Z-forms live over Z, not {0}")]
    NotOverIntegers(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Env(#[from] EnvError),
}

/// How an even basis element enters the Kostant basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvenRole {
    /// `x^(r) = x^r / r!`
    Divided,
    /// `binom(h, m) = h(h-1)...(h-m+1) / m!`
    Cartan,
}

/// Exponents per even basis element (read through the roles of a
/// `ZFormSpec`) and an odd subset; ordered like the PBW monomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KostantMonomial(pub PbwMonomial);

impl KostantMonomial {
    pub fn degree(&self) -> u32 {
        self.0.degree()
    }
}

pub type KostantElement = LinComb<KostantMonomial>;

/// A Lie superalgebra over Z with each even basis element designated as a
/// root vector or a Cartan element.
#[derive(Debug)]
pub struct ZFormSpec {
    g: Arc<LieSuperAlgebra>,
    q: Option<TwoOperation>,
    roles: Vec<EvenRole>,
    /// `U(g ⊗ Q)`, where all products are computed.
    env: EnvAlgebra,
}

impl ZFormSpec {
    /// `q` defaults to `[x,x]/2` when that is integral.
    pub fn new(
        g: Arc<LieSuperAlgebra>,
        q: Option<TwoOperation>,
        divided: &[String],
        cartan: &[String],
    ) -> Result<Self, ChevalleyError> {
        if *g.ring() != CoeffRing::Integers {
            return Err(ChevalleyError::NotOverIntegers(g.ring().to_string()));
        }
        let mut roles = vec![None; g.n_even()];
        for (names, role) in [(divided, EvenRole::Divided), (cartan, EvenRole::Cartan)] {
            for name in names {
                let i = g.lookup(name)?;
                if i >= g.n_even() {
                    return Err(ChevalleyError::BadDesignation(format!("`{name}` is odd")));
                }
                if roles[i].replace(role).is_some() {
                    return Err(ChevalleyError::BadDesignation(format!("`{name}` designated twice")));
                }
            }
        }
        let roles = roles
            .into_iter()
            .enumerate()
            .map(|(i, r)| r.ok_or_else(|| ChevalleyError::BadDesignation(format!("`{}` not designated", g.name(i)))))
            .collect::<Result<Vec<_>, _>>()?;
        let q = match q {
            Some(q) => {
                q.validate(&g)?;
                Some(q)
            }
            None => g.derive_two_operation().ok(),
        };
        let placeholder = TwoOperation::zero(g.n_odd());
        let (gq, _) = g.base_change(q.as_ref().unwrap_or(&placeholder), &CoeffRing::Rationals, RingMap::IntegersToRationals)?;
        let qq = gq.derive_two_operation()?;
        let env = EnvAlgebra::new(Arc::new(gq), Some(qq))?;
        Ok(ZFormSpec { g, q, roles, env })
    }

    pub fn lie(&self) -> &Arc<LieSuperAlgebra> {
        &self.g
    }

    pub fn roles(&self) -> &[EvenRole] {
        &self.roles
    }

    pub fn env(&self) -> &EnvAlgebra {
        &self.env
    }

    /// Kostant monomials of degree `<= d` in PBW order.
    pub fn monomials(&self, d: u32) -> Vec<KostantMonomial> {
        self.env.pbw_enumerate(d).into_iter().map(KostantMonomial).collect()
    }

    pub fn monomial(&self, even: &[u32], odd: &[&str]) -> Result<KostantMonomial, ChevalleyError> {
        let mut mask = 0u64;
        for name in odd {
            mask |= 1 << (self.g.lookup(name)? - self.g.n_even());
        }
        Ok(KostantMonomial(PbwMonomial { even: even.to_vec(), odd: mask }))
    }

    /// Product of the single-variable factors over Q, already in PBW order.
    pub fn expand(&self, k: &KostantMonomial) -> EnvElement {
        let q = CoeffRing::Rationals;
        // polynomial in each even variable, as (exponent -> coefficient)
        let mut terms: Vec<(Vec<u32>, BigRational)> = vec![(Vec::new(), BigRational::one())];
        for (i, r) in k.0.even.iter().enumerate() {
            let poly = match self.roles[i] {
                EvenRole::Divided => vec![(*r, BigRational::new(BigInt::one(), factorial(*r)))],
                EvenRole::Cartan => binomial_poly(*r),
            };
            let mut next = Vec::new();
            for (e, c) in &terms {
                for (p, d) in &poly {
                    let mut e = e.clone();
                    e.push(*p);
                    next.push((e, c * d));
                }
            }
            terms = next;
        }
        let mut out = LinComb::zero();
        for (e, c) in terms {
            out.add_term(&q, PbwMonomial { even: e, odd: k.0.odd }, rat(c));
        }
        out
    }

    /// Rewrites a `U(g ⊗ Q)` element in the Kostant basis, top degree first.
    pub fn to_kostant(&self, u: &EnvElement) -> KostantElement {
        let q = CoeffRing::Rationals;
        let mut rest = u.clone();
        let mut out = LinComb::zero();
        // PbwMonomial orders by descending degree, so the first key is maximal
        while let Some((m, c)) = rest.iter().next().map(|(m, c)| (m.clone(), c.clone())) {
            let k = KostantMonomial(m.clone());
            let lead: BigInt = m.even.iter().zip(&self.roles).map(|(r, _)| factorial(*r)).product();
            let coeff = q.mul(&c, &rat(BigRational::from_integer(lead)));
            rest = rest.minus(&q, &self.expand(&k).scale(&q, &coeff));
            out.add_term(&q, k, coeff);
        }
        out
    }

    pub fn show_monomial(&self, k: &KostantMonomial) -> Option<String> {
        let mut parts = Vec::new();
        for (i, r) in k.0.even.iter().enumerate() {
            if *r == 0 {
                continue;
            }
            parts.push(match self.roles[i] {
                EvenRole::Divided => format!("{}^({r})", self.g.name(i)),
                EvenRole::Cartan => format!("binom({},{r})", self.g.name(i)),
            });
        }
        for k2 in 0..self.g.n_odd() {
            if k.0.odd >> k2 & 1 == 1 {
                parts.push(self.g.name(self.g.n_even() + k2).to_string());
            }
        }
        if parts.is_empty() {
            None
        } else {
            Some(parts.join("*"))
        }
    }

    pub fn show(&self, u: &KostantElement) -> String {
        format_terms(u.iter(), |k| self.show_monomial(k), false)
    }
}

impl fmt::Display for KostantMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}|{:b}", self.0.even, self.0.odd)
    }
}

fn rat(c: BigRational) -> Scalar {
    CoeffRing::Rationals.from_rational(&c).expect("Q contains every rational")
}

fn factorial(n: u32) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// Coefficients of `binom(h, m)` as a polynomial in `h`.
fn binomial_poly(m: u32) -> Vec<(u32, BigRational)> {
    let mut coeffs = vec![BigRational::one()];
    for j in 0..m {
        // multiply by (h - j)
        let mut next = vec![BigRational::zero(); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * BigRational::from_integer(j.into());
        }
        coeffs = next;
    }
    let denom = BigRational::from_integer(factorial(m));
    coeffs
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k as u32, c / &denom))
        .collect()
}

/// `u · v` in `U(g ⊗ Q)`, re-expressed in the Kostant basis.
pub fn kostant_product(
    u: &KostantMonomial,
    v: &KostantMonomial,
    spec: &ZFormSpec,
    bound: u32,
) -> Result<KostantElement, ChevalleyError> {
    let got = u.degree() + v.degree();
    if got > bound {
        return Err(ChevalleyError::DegreeBoundExceeded { got, bound });
    }
    if spec.q.is_none() {
        return Err(ChevalleyError::NonAdmissibleSpec(admissibility_of_zform(spec).to_string()));
    }
    let prod = spec.env.multiply(&spec.expand(u), &spec.expand(v))?;
    Ok(spec.to_kostant(&prod))
}

/// Every product of two Kostant monomials of total degree `<= bound` has
/// integer coefficients. Violations are listed in enumeration order.
pub fn integrality_check(spec: &ZFormSpec, bound: u32) -> Report {
    let mut rep = Report::new("integrality");
    let admissible = admissibility_of_zform(spec);
    if !admissible.passed() {
        rep.absorb(admissible);
        return rep;
    }
    let monos = spec.monomials(bound);
    let pairs: Vec<(&KostantMonomial, &KostantMonomial)> = monos
        .iter()
        .flat_map(|u| monos.iter().filter(move |v| u.degree() + v.degree() <= bound).map(move |v| (u, v)))
        .collect();
    let results: Vec<Option<String>> = pairs
        .par_iter()
        .map(|(u, v)| {
            let p = kostant_product(u, v, spec, bound).expect("degree within bound");
            p.iter().find(|(_, c)| !c.is_integer()).map(|(k, c)| {
                format!(
                    "{} · {}: coefficient {} at {}",
                    spec.show_monomial(u).unwrap_or_else(|| "1".into()),
                    spec.show_monomial(v).unwrap_or_else(|| "1".into()),
                    c.as_rational(),
                    spec.show_monomial(k).unwrap_or_else(|| "1".into())
                )
            })
        })
        .collect();
    for r in results {
        rep.check(r.is_none(), "integer-coefficients", || r.clone().unwrap_or_default());
    }
    rep
}

/// The Z-form is admissible and its 2-operation lands in the even lattice.
pub fn admissibility_of_zform(spec: &ZFormSpec) -> Report {
    let mut rep = spec.g.check_admissible().expect("Z is 2-torsion free");
    rep.name = "zform-admissible".into();
    rep.check(spec.q.is_some(), "two-operation", || "some [x,x]/2 is not integral".into());
    if let Some(q) = &spec.q {
        for k in 0..spec.g.n_odd() {
            let v = q.value(k);
            let lattice = v.iter().all(|(i, c)| *i < spec.g.n_even() && c.is_integer());
            rep.check(lattice, "two-operation", || format!("{}^<2> = {}", spec.g.name(spec.g.n_even() + k), spec.g.show(v)));
        }
    }
    rep
}

/// Exponent maps keyed by monomial, for comparing against hand-written expansions.
pub fn coefficients(u: &KostantElement) -> BTreeMap<KostantMonomial, BigRational> {
    u.iter().map(|(k, c)| (k.clone(), c.as_rational().clone())).collect()
}
