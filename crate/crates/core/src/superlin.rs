//! Free super modules with named bases and sparse vectors.

use std::collections::btree_map::{self, BTreeMap};
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::coeff::{CoeffRing, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuperlinError {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("vectors live over different bases")]
    BasisMismatch,
    #[error("duplicate basis symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("expected a tensor of arity {expected}, got {actual}")]
    ArityMismatch { expected: usize, actual: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: usize) -> Parity {
        if b.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> usize {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn add(self, other: Parity) -> Parity {
        Parity::from_bit(self.bit() + other.bit())
    }
}

/// True when swapping homogeneous elements of these parities costs a sign.
pub fn koszul(p: Parity, q: Parity) -> bool {
    p.is_odd() && q.is_odd()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisSymbol {
    pub name: String,
    pub parity: Parity,
}

/// An ordered list of symbols; a symbol's position is its interned id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis {
    symbols: Vec<BasisSymbol>,
    index: HashMap<String, usize>,
}

impl Basis {
    pub fn new(symbols: Vec<BasisSymbol>) -> Result<Self, SuperlinError> {
        let mut index = HashMap::new();
        for (i, s) in symbols.iter().enumerate() {
            if index.insert(s.name.clone(), i).is_some() {
                return Err(SuperlinError::DuplicateSymbol(s.name.clone()));
            }
        }
        Ok(Basis { symbols, index })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbol(&self, i: usize) -> &BasisSymbol {
        &self.symbols[i]
    }

    pub fn symbols(&self) -> &[BasisSymbol] {
        &self.symbols
    }

    pub fn name(&self, i: usize) -> &str {
        &self.symbols[i].name
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.symbols[i].parity
    }

    pub fn lookup(&self, name: &str) -> Result<usize, SuperlinError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| SuperlinError::UnknownSymbol(name.to_string()))
    }
}

/// A sparse linear combination with canonical form: no zero coefficients,
/// keys iterated in their `Ord` order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Scalar>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(key: K, c: Scalar) -> Self {
        let mut out = Self::default();
        if !c.is_zero() {
            out.terms.insert(key, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, Scalar> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, Scalar> {
        self.terms.keys()
    }

    pub fn get(&self, k: &K) -> Option<&Scalar> {
        self.terms.get(k)
    }

    pub fn coeff(&self, k: &K) -> Scalar {
        self.terms.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, ring: &CoeffRing, key: K, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            btree_map::Entry::Occupied(mut o) => {
                let s = ring.add(o.get(), &c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, ring: &CoeffRing, other: &LinComb<K>, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (k, v) in other.iter() {
            self.add_term(ring, k.clone(), ring.mul(v, c));
        }
    }

    pub fn add_assign(&mut self, ring: &CoeffRing, other: &LinComb<K>) {
        for (k, v) in other.iter() {
            self.add_term(ring, k.clone(), v.clone());
        }
    }

    pub fn plus(&self, ring: &CoeffRing, other: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        out.add_assign(ring, other);
        out
    }

    pub fn minus(&self, ring: &CoeffRing, other: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        out.add_scaled(ring, other, &ring.neg(&ring.one()));
        out
    }

    pub fn scale(&self, ring: &CoeffRing, c: &Scalar) -> LinComb<K> {
        let mut out = LinComb::zero();
        out.add_scaled(ring, self, c);
        out
    }

    pub fn neg(&self, ring: &CoeffRing) -> LinComb<K> {
        self.scale(ring, &ring.neg(&ring.one()))
    }

    pub fn map_keys<K2: Ord + Clone>(
        &self,
        ring: &CoeffRing,
        mut f: impl FnMut(&K) -> K2,
    ) -> LinComb<K2> {
        let mut out = LinComb::zero();
        for (k, v) in self.iter() {
            out.add_term(ring, f(k), v.clone());
        }
        out
    }

    /// Applies a linear map given on keys.
    pub fn apply<K2: Ord + Clone>(
        &self,
        ring: &CoeffRing,
        mut f: impl FnMut(&K) -> LinComb<K2>,
    ) -> LinComb<K2> {
        let mut out = LinComb::zero();
        for (k, v) in self.iter() {
            out.add_scaled(ring, &f(k), v);
        }
        out
    }

    pub fn filter(&self, mut keep: impl FnMut(&K) -> bool) -> LinComb<K> {
        LinComb {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// Re-reduces every coefficient into `ring` (e.g. after a base change).
    pub fn reduce_into(&self, ring: &CoeffRing) -> Result<LinComb<K>, crate::coeff::CoeffError> {
        let mut out = LinComb::zero();
        for (k, v) in self.iter() {
            out.add_term(ring, k.clone(), ring.image(v)?);
        }
        Ok(out)
    }
}

impl<K: Ord + Clone> FromIterator<(K, Scalar)> for LinComb<K> {
    /// Collects terms assuming coefficients are already canonical and keys distinct.
    fn from_iter<I: IntoIterator<Item = (K, Scalar)>>(iter: I) -> Self {
        LinComb {
            terms: iter.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

/// Writes `c1*k1 + c2*k2 - c3*k3`; keys rendered as `None` are the unit and
/// print as the bare coefficient.
pub fn format_terms<'a, K: 'a>(
    terms: impl IntoIterator<Item = (&'a K, &'a Scalar)>,
    mut key: impl FnMut(&K) -> Option<String>,
    omit_one: bool,
) -> String {
    let mut out = String::new();
    for (i, (k, c)) in terms.into_iter().enumerate() {
        let neg = c.is_negative();
        let mag = if neg { c.abs() } else { c.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        match key(k) {
            None => out.push_str(&mag.to_string()),
            Some(name) if omit_one && mag.is_one() => out.push_str(&name),
            Some(name) => {
                out.push_str(&mag.to_string());
                out.push('*');
                out.push_str(&name);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperVector {
    pub ring: CoeffRing,
    pub basis: Arc<Basis>,
    pub coeffs: LinComb<usize>,
}

impl SuperVector {
    pub fn zero(ring: CoeffRing, basis: Arc<Basis>) -> Self {
        SuperVector { ring, basis, coeffs: LinComb::zero() }
    }

    pub fn from_terms(
        ring: CoeffRing,
        basis: Arc<Basis>,
        terms: &[(i64, &str)],
    ) -> Result<Self, SuperlinError> {
        let mut coeffs = LinComb::zero();
        for (c, name) in terms {
            let i = basis.lookup(name)?;
            coeffs.add_term(&ring, i, ring.from_i64(*c));
        }
        Ok(SuperVector { ring, basis, coeffs })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    /// The common parity of all terms; `None` for inhomogeneous vectors.
    /// The zero vector counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut p = None;
        for i in self.coeffs.keys() {
            let q = self.basis.parity(*i);
            match p {
                None => p = Some(q),
                Some(p0) if p0 != q => return None,
                _ => {}
            }
        }
        Some(p.unwrap_or(Parity::Even))
    }

    pub fn is_homogeneous(&self) -> bool {
        self.parity().is_some()
    }

    pub fn add(&self, other: &SuperVector) -> Result<SuperVector, SuperlinError> {
        check_compatible(&self.ring, &self.basis, &other.ring, &other.basis)?;
        Ok(SuperVector {
            ring: self.ring.clone(),
            basis: self.basis.clone(),
            coeffs: self.coeffs.plus(&self.ring, &other.coeffs),
        })
    }

    pub fn scale(&self, c: &Scalar) -> SuperVector {
        SuperVector {
            ring: self.ring.clone(),
            basis: self.basis.clone(),
            coeffs: self.coeffs.scale(&self.ring, c),
        }
    }
}

impl fmt::Display for SuperVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = format_terms(self.coeffs.iter(), |i| Some(self.basis.name(*i).to_string()), false);
        f.write_str(&s)
    }
}

fn check_compatible(
    r1: &CoeffRing,
    b1: &Arc<Basis>,
    r2: &CoeffRing,
    b2: &Arc<Basis>,
) -> Result<(), SuperlinError> {
    if r1 != r2 {
        return Err(SuperlinError::RingMismatch(r1.to_string(), r2.to_string()));
    }
    if !Arc::ptr_eq(b1, b2) && b1 != b2 {
        return Err(SuperlinError::BasisMismatch);
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorVector {
    pub ring: CoeffRing,
    pub basis: Arc<Basis>,
    pub arity: usize,
    pub coeffs: LinComb<Vec<usize>>,
}

impl TensorVector {
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }
}

impl fmt::Display for TensorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = format_terms(
            self.coeffs.iter(),
            |t| {
                Some(
                    t.iter()
                        .map(|i| self.basis.name(*i))
                        .collect::<Vec<_>>()
                        .join("⊗"),
                )
            },
            false,
        );
        f.write_str(&s)
    }
}

pub fn tensor(u: &SuperVector, v: &SuperVector) -> Result<TensorVector, SuperlinError> {
    check_compatible(&u.ring, &u.basis, &v.ring, &v.basis)?;
    let ring = &u.ring;
    let mut coeffs = LinComb::zero();
    for (i, a) in u.coeffs.iter() {
        for (j, b) in v.coeffs.iter() {
            coeffs.add_term(ring, vec![*i, *j], ring.mul(a, b));
        }
    }
    Ok(TensorVector { ring: ring.clone(), basis: u.basis.clone(), arity: 2, coeffs })
}

/// The braiding `v⊗w ↦ (-1)^{|v||w|} w⊗v`.
pub fn super_swap(t: &TensorVector) -> Result<TensorVector, SuperlinError> {
    if t.arity != 2 {
        return Err(SuperlinError::ArityMismatch { expected: 2, actual: t.arity });
    }
    let ring = &t.ring;
    let mut coeffs = LinComb::zero();
    for (k, c) in t.coeffs.iter() {
        let neg = koszul(t.basis.parity(k[0]), t.basis.parity(k[1]));
        coeffs.add_term(ring, vec![k[1], k[0]], ring.signed(neg, c.clone()));
    }
    Ok(TensorVector { ring: ring.clone(), basis: t.basis.clone(), arity: 2, coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis() -> Arc<Basis> {
        let sym = |n: &str, p| BasisSymbol { name: n.into(), parity: p };
        Arc::new(
            Basis::new(vec![
                sym("a", Parity::Even),
                sym("b", Parity::Even),
                sym("x", Parity::Odd),
                sym("y", Parity::Odd),
            ])
            .unwrap(),
        )
    }

    fn vec_of(terms: &[(i64, &str)]) -> SuperVector {
        SuperVector::from_terms(CoeffRing::Integers, basis(), terms).unwrap()
    }

    #[test]
    fn swap_signs() {
        let t = tensor(&vec_of(&[(1, "x")]), &vec_of(&[(1, "y")])).unwrap();
        assert_eq!(super_swap(&t).unwrap().to_string(), "-1*y⊗x");
        let t = tensor(&vec_of(&[(1, "a")]), &vec_of(&[(1, "y")])).unwrap();
        assert_eq!(super_swap(&t).unwrap().to_string(), "1*y⊗a");
        let mut mixed = tensor(&vec_of(&[(1, "x")]), &vec_of(&[(1, "y")])).unwrap();
        let ab = tensor(&vec_of(&[(1, "a")]), &vec_of(&[(1, "b")])).unwrap();
        mixed.coeffs.add_assign(&CoeffRing::Integers, &ab.coeffs);
        let swapped = super_swap(&mixed).unwrap();
        assert_eq!(swapped.coeffs.coeff(&vec![3, 2]), Scalar::from(-1));
        assert_eq!(swapped.coeffs.coeff(&vec![1, 0]), Scalar::from(1));
        assert_eq!(swapped.coeffs.len(), 2);
    }

    #[test]
    fn tensor_bilinear() {
        let t = tensor(&vec_of(&[(2, "x")]), &vec_of(&[(3, "y")])).unwrap();
        assert_eq!(t.to_string(), "6*x⊗y");
        assert!(tensor(&vec_of(&[]), &vec_of(&[(1, "y")])).unwrap().is_zero());
        let t = tensor(&vec_of(&[(1, "x"), (1, "a")]), &vec_of(&[(1, "y")])).unwrap();
        assert_eq!(t.to_string(), "1*a⊗y + 1*x⊗y");
    }

    #[test]
    fn mismatches() {
        let other = SuperVector::from_terms(CoeffRing::Rationals, basis(), &[(1, "x")]).unwrap();
        assert!(matches!(
            tensor(&vec_of(&[(1, "x")]), &other),
            Err(SuperlinError::RingMismatch(..))
        ));
        assert!(matches!(
            SuperVector::from_terms(CoeffRing::Integers, basis(), &[(1, "q")]),
            Err(SuperlinError::UnknownSymbol(_))
        ));
    }

    #[test]
    fn homogeneity() {
        assert_eq!(vec_of(&[(1, "x"), (2, "y")]).parity(), Some(Parity::Odd));
        assert_eq!(vec_of(&[(1, "x"), (2, "a")]).parity(), None);
        assert_eq!(vec_of(&[]).parity(), Some(Parity::Even));
    }

    #[test]
    fn canonical_sparse_form() {
        let v = vec_of(&[(1, "x"), (-1, "x")]);
        assert!(v.is_zero());
        let r = CoeffRing::modulo(3).unwrap();
        let mut l = LinComb::<usize>::zero();
        l.add_term(&r, 0, r.from_i64(2));
        l.add_term(&r, 0, r.from_i64(1));
        assert!(l.is_zero());
    }

    #[test]
    fn formatting() {
        let v = vec_of(&[(-1, "x"), (2, "a"), (-3, "b")]);
        assert_eq!(v.to_string(), "2*a - 3*b - 1*x");
        assert_eq!(vec_of(&[]).to_string(), "0");
    }
}
