//! Exterior Hopf superalgebras on purely odd free modules.

use std::cmp::Ordering;

use thiserror::Error;

use crate::coeff::{CoeffRing, Scalar};
use crate::superlin::{format_terms, LinComb, Parity};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtError {
    #[error("elements live over different generator bases")]
    BasisMismatch,
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("degree {degree} outside 0..={rank}")]
    DegreeOutOfRange { degree: usize, rank: usize },
    #[error("at most 64 generators are supported, got {0}")]
    TooManyGenerators(usize),
}

/// `true` when merging `s` in front of `t` needs an odd number of swaps.
/// Assumes disjoint sets.
pub fn split_sign(s: u64, t: u64) -> bool {
    let mut inv = 0u32;
    let mut rest = s;
    while rest != 0 {
        let i = rest.trailing_zeros();
        rest &= rest - 1;
        // elements of t below i
        inv += (t & ((1u64 << i) - 1)).count_ones();
    }
    inv % 2 == 1
}

/// `v_s ∧ v_t` as a sign and a subset, or `None` when they intersect.
pub fn wedge_masks(s: u64, t: u64) -> Option<(bool, u64)> {
    if s & t != 0 {
        None
    } else {
        Some((split_sign(s, t), s | t))
    }
}

pub fn indices(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// A subset of generators; ordered by degree, then lexicographically on the
/// increasing index sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExtMonomial(pub u64);

impl ExtMonomial {
    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn parity(self) -> Parity {
        Parity::from_bit(self.degree())
    }

    pub fn indices(self) -> Vec<usize> {
        indices(self.0)
    }
}

impl Ord for ExtMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.indices().cmp(&other.indices()))
    }
}

impl PartialOrd for ExtMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub type ExtElement = LinComb<ExtMonomial>;
pub type ExtTensor = LinComb<(ExtMonomial, ExtMonomial)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExteriorAlgebra {
    ring: CoeffRing,
    names: Vec<String>,
}

impl ExteriorAlgebra {
    pub fn new(ring: CoeffRing, names: Vec<String>) -> Result<Self, ExtError> {
        if names.len() > 64 {
            return Err(ExtError::TooManyGenerators(names.len()));
        }
        Ok(ExteriorAlgebra { ring, names })
    }

    /// Generators `{prefix}1 ... {prefix}n`.
    pub fn standard(ring: CoeffRing, prefix: &str, n: usize) -> Result<Self, ExtError> {
        Self::new(ring, (1..=n).map(|i| format!("{prefix}{i}")).collect())
    }

    pub fn ring(&self) -> &CoeffRing {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    fn full(&self) -> u64 {
        if self.rank() == 64 {
            u64::MAX
        } else {
            (1u64 << self.rank()) - 1
        }
    }

    fn check(&self, u: &ExtElement) -> Result<(), ExtError> {
        if u.keys().all(|m| m.0 & !self.full() == 0) {
            Ok(())
        } else {
            Err(ExtError::BasisMismatch)
        }
    }

    pub fn one(&self) -> ExtElement {
        LinComb::term(ExtMonomial(0), self.ring.one())
    }

    pub fn generator(&self, i: usize) -> ExtElement {
        LinComb::term(ExtMonomial(1 << i), self.ring.one())
    }

    /// `v_{i_1} ∧ ... ∧ v_{i_k}` for indices in any order.
    pub fn word(&self, idx: &[usize]) -> Result<ExtElement, ExtError> {
        let mut acc = self.one();
        for i in idx {
            if *i >= self.rank() {
                return Err(ExtError::BasisMismatch);
            }
            acc = self.wedge(&acc, &self.generator(*i))?;
        }
        Ok(acc)
    }

    pub fn wedge(&self, u: &ExtElement, v: &ExtElement) -> Result<ExtElement, ExtError> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.wedge_unchecked(u, v))
    }

    pub(crate) fn wedge_unchecked(&self, u: &ExtElement, v: &ExtElement) -> ExtElement {
        let ring = &self.ring;
        let mut out = LinComb::zero();
        for (s, a) in u.iter() {
            for (t, b) in v.iter() {
                if let Some((neg, m)) = wedge_masks(s.0, t.0) {
                    out.add_term(ring, ExtMonomial(m), ring.signed(neg, ring.mul(a, b)));
                }
            }
        }
        out
    }

    pub fn coproduct_monomial(&self, s: ExtMonomial) -> ExtTensor {
        let ring = &self.ring;
        let mut out = LinComb::zero();
        let mut s1 = s.0;
        loop {
            let s2 = s.0 & !s1;
            out.add_term(
                ring,
                (ExtMonomial(s1), ExtMonomial(s2)),
                ring.signed(split_sign(s1, s2), ring.one()),
            );
            if s1 == 0 {
                break;
            }
            s1 = (s1 - 1) & s.0;
        }
        out
    }

    pub fn coproduct(&self, u: &ExtElement) -> Result<ExtTensor, ExtError> {
        self.check(u)?;
        Ok(u.apply(&self.ring, |m| self.coproduct_monomial(*m)))
    }

    pub fn counit(&self, u: &ExtElement) -> Scalar {
        u.coeff(&ExtMonomial(0))
    }

    /// `S(v_S) = (-1)^{|S|} v_S`: reversing the word costs the same sign
    /// that supercommutativity gives back.
    pub fn antipode_sign(s: ExtMonomial) -> bool {
        s.degree() % 2 == 1
    }

    pub fn antipode(&self, u: &ExtElement) -> Result<ExtElement, ExtError> {
        self.check(u)?;
        let ring = &self.ring;
        Ok(u.iter()
            .map(|(m, c)| (*m, ring.signed(Self::antipode_sign(*m), c.clone())))
            .collect())
    }

    /// Degree-`d` monomials in lexicographic subset order.
    pub fn monomials(&self, d: usize) -> Result<Vec<ExtMonomial>, ExtError> {
        if d > self.rank() {
            return Err(ExtError::DegreeOutOfRange { degree: d, rank: self.rank() });
        }
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(d);
        fn rec(start: usize, n: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<ExtMonomial>) {
            if cur.len() == d {
                out.push(ExtMonomial(cur.iter().fold(0, |m, i| m | 1 << i)));
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, d, cur, out);
                cur.pop();
            }
        }
        rec(0, self.rank(), d, &mut cur, &mut out);
        Ok(out)
    }

    pub fn all_monomials(&self) -> Vec<ExtMonomial> {
        (0..=self.rank()).flat_map(|d| self.monomials(d).expect("d <= rank")).collect()
    }

    pub fn show_monomial(&self, m: ExtMonomial) -> Option<String> {
        if m.0 == 0 {
            return None;
        }
        Some(m.indices().iter().map(|i| self.names[*i].as_str()).collect::<Vec<_>>().join("∧"))
    }

    pub fn show(&self, u: &ExtElement) -> String {
        format_terms(u.iter(), |m| self.show_monomial(*m), false)
    }

    pub fn show_tensor(&self, t: &ExtTensor) -> String {
        let name = |m: ExtMonomial| self.show_monomial(m).unwrap_or_else(|| "1".into());
        format_terms(t.iter(), |(a, b)| Some(format!("{}⊗{}", name(*a), name(*b))), false)
    }
}

/// `Σ_σ sgn σ Π ⟨x_i, w_σ(i)⟩` with `⟨x_i, w_j⟩ = δ_ij`; zero across degrees.
pub fn pair_words(x: &[usize], w: &[usize]) -> i64 {
    if x.len() != w.len() {
        return 0;
    }
    let n = x.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = 0i64;
    // Heap's algorithm, tracking the sign of each transposition
    let mut c = vec![0usize; n];
    let mut sign = 1i64;
    let term = |perm: &[usize]| (0..n).all(|i| x[i] == w[perm[i]]);
    if term(&perm) {
        total += sign;
    }
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            if term(&perm) {
                total += sign;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    total
}

pub fn pair_monomials(s: ExtMonomial, t: ExtMonomial) -> i64 {
    pair_words(&s.indices(), &t.indices())
}

/// The canonical pairing `Λ(V) × Λ(V*)` for dual generator bases.
pub fn ext_pairing(
    v: &ExteriorAlgebra,
    a: &ExtElement,
    w: &ExteriorAlgebra,
    b: &ExtElement,
) -> Result<Scalar, ExtError> {
    if v.rank() != w.rank() {
        return Err(ExtError::RankMismatch { left: v.rank(), right: w.rank() });
    }
    v.check(a)?;
    w.check(b)?;
    let ring = v.ring();
    let mut total = ring.zero();
    for (s, x) in a.iter() {
        for (t, y) in b.iter() {
            let p = pair_monomials(*s, *t);
            if p != 0 {
                total = ring.add(&total, &ring.mul(&ring.from_i64(p), &ring.mul(x, y)));
            }
        }
    }
    Ok(total)
}

/// Pairing matrix between the degree-`d` monomials of rank-`n` exterior
/// algebras, rows and columns in lexicographic subset order.
pub fn gram_matrix(ring: &CoeffRing, n: usize, d: usize) -> Result<Vec<Vec<Scalar>>, ExtError> {
    let v = ExteriorAlgebra::standard(ring.clone(), "v", n)?;
    let basis = v.monomials(d)?;
    Ok(basis
        .iter()
        .map(|s| basis.iter().map(|t| ring.from_i64(pair_monomials(*s, *t))).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(n: usize) -> ExteriorAlgebra {
        ExteriorAlgebra::standard(CoeffRing::Integers, "v", n).unwrap()
    }

    #[test]
    fn wedge_examples() {
        let v = lam(3);
        let g = |i| v.generator(i);
        assert!(v.wedge(&g(0), &g(0)).unwrap().is_zero());
        assert_eq!(v.show(&v.wedge(&g(1), &g(0)).unwrap()), "-1*v1∧v2");
        let v13 = v.wedge(&g(0), &g(2)).unwrap();
        assert_eq!(v.show(&v.wedge(&v13, &g(1)).unwrap()), "-1*v1∧v2∧v3");
        assert_eq!(v.wedge(&lam(4).generator(3), &g(0)), Err(ExtError::BasisMismatch));
    }

    #[test]
    fn coproduct_examples() {
        let v = lam(2);
        assert_eq!(v.show_tensor(&v.coproduct(&v.generator(0)).unwrap()), "1*1⊗v1 + 1*v1⊗1");
        assert_eq!(v.show_tensor(&v.coproduct(&v.one()).unwrap()), "1*1⊗1");
        let v12 = v.word(&[0, 1]).unwrap();
        let d = v.coproduct(&v12).unwrap();
        let m = |s| ExtMonomial(s);
        assert_eq!(d.len(), 4);
        assert_eq!(d.coeff(&(m(3), m(0))), Scalar::from(1));
        assert_eq!(d.coeff(&(m(1), m(2))), Scalar::from(1));
        assert_eq!(d.coeff(&(m(2), m(1))), Scalar::from(-1));
        assert_eq!(d.coeff(&(m(0), m(3))), Scalar::from(1));
    }

    #[test]
    fn pairing_examples() {
        let v = lam(2);
        let w = ExteriorAlgebra::standard(CoeffRing::Integers, "w", 2).unwrap();
        let p = |a: &ExtElement, b: &ExtElement| ext_pairing(&v, a, &w, b).unwrap();
        assert_eq!(p(&v.generator(0), &w.generator(0)), Scalar::from(1));
        assert_eq!(p(&v.word(&[0, 1]).unwrap(), &w.word(&[0, 1]).unwrap()), Scalar::from(1));
        assert_eq!(p(&v.word(&[0, 1]).unwrap(), &w.word(&[1, 0]).unwrap()), Scalar::from(-1));
        assert_eq!(p(&v.generator(0), &w.word(&[0, 1]).unwrap()), Scalar::from(0));
        assert_eq!(pair_words(&[0, 1], &[1, 0]), -1);
        assert_eq!(pair_words(&[2, 0, 1], &[0, 1, 2]), 1);
        let w3 = ExteriorAlgebra::standard(CoeffRing::Integers, "w", 3).unwrap();
        assert!(matches!(
            ext_pairing(&v, &v.one(), &w3, &w3.one()),
            Err(ExtError::RankMismatch { .. })
        ));
    }

    #[test]
    fn gram_examples() {
        let z = CoeffRing::Integers;
        let one = |n: usize| -> Vec<Vec<Scalar>> {
            (0..n).map(|i| (0..n).map(|j| Scalar::from((i == j) as i64)).collect()).collect()
        };
        assert_eq!(gram_matrix(&z, 3, 0).unwrap(), one(1));
        assert_eq!(gram_matrix(&z, 2, 2).unwrap(), one(1));
        assert_eq!(gram_matrix(&z, 3, 2).unwrap(), one(3));
        for n in 0..=6 {
            for d in 0..=n {
                let k = lam(n).monomials(d).unwrap().len();
                assert_eq!(gram_matrix(&z, n, d).unwrap(), one(k));
            }
        }
        assert!(gram_matrix(&z, 2, 3).is_err());
    }

    #[test]
    fn lex_order() {
        let v = lam(3);
        let ms: Vec<_> = v.monomials(2).unwrap().iter().map(|m| m.indices()).collect();
        assert_eq!(ms, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn antipode_signs() {
        let v = lam(4);
        let signs: Vec<bool> = (0..=4)
            .map(|k| ExteriorAlgebra::antipode_sign(ExtMonomial((1 << k) - 1)))
            .collect();
        assert_eq!(signs, vec![false, true, false, true, false]);
        assert_eq!(v.show(&v.antipode(&v.generator(2)).unwrap()), "-1*v3");
    }
}
