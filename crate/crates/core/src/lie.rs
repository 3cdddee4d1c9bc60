//! Lie superalgebras given by structure constants, and their 2-operations.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::coeff::{CoeffError, CoeffRing, Scalar};
use crate::report::Report;
use crate::superlin::{koszul, Basis, BasisSymbol, LinComb, Parity, SuperVector, SuperlinError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error(transparent)]
    Superlin(#[from] SuperlinError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error("[{0},{1}] is not homogeneous of parity |{0}|+|{1}|")]
    NonHomogeneousBracket(String, String),
    #[error("bracket [{0},{1}] given twice")]
    DuplicateEntry(String, String),
    #[error("ring {0} is not 2-torsion free")]
    NotTwoTorsionFreeRing(String),
    #[error("not admissible: [{0},{0}] = {1} is not 2-divisible")]
    NotAdmissible(String, String),
    #[error("unsupported ring map {0} -> {1}")]
    UnsupportedRingMap(String, String),
    #[error("2-operation value for `{0}` must lie in the even span")]
    TwoOperationShape(String),
    #[error("2-operation has {got} values for {expected} odd basis elements")]
    TwoOperationArity { expected: usize, got: usize },
}

/// A Lie superalgebra on a free module with basis `even ++ odd`.
///
/// Basis indices are global: the even symbols come first, then the odd ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieSuperAlgebra {
    ring: CoeffRing,
    basis: Arc<Basis>,
    n_even: usize,
    table: Vec<LinComb<usize>>,
}

/// One bracket entry `[i, j] = value` in global indices.
pub type BracketEntry = (usize, usize, LinComb<usize>);

impl LieSuperAlgebra {
    /// Builds the full table; an entry given in one orientation only is
    /// completed by super-antisymmetry.
    pub fn from_table(
        ring: CoeffRing,
        even: &[String],
        odd: &[String],
        entries: Vec<BracketEntry>,
    ) -> Result<Self, LieError> {
        let symbols = even
            .iter()
            .map(|n| BasisSymbol { name: n.clone(), parity: Parity::Even })
            .chain(odd.iter().map(|n| BasisSymbol { name: n.clone(), parity: Parity::Odd }))
            .collect();
        let basis = Arc::new(Basis::new(symbols)?);
        let dim = basis.len();
        let mut given = vec![false; dim * dim];
        let mut table = vec![LinComb::zero(); dim * dim];
        for (i, j, value) in entries {
            let want = basis.parity(i).add(basis.parity(j));
            if value.keys().any(|k| basis.parity(*k) != want) {
                return Err(LieError::NonHomogeneousBracket(
                    basis.name(i).into(),
                    basis.name(j).into(),
                ));
            }
            if given[i * dim + j] {
                return Err(LieError::DuplicateEntry(basis.name(i).into(), basis.name(j).into()));
            }
            given[i * dim + j] = true;
            table[i * dim + j] = value.reduce_into(&ring)?;
        }
        for i in 0..dim {
            for j in 0..dim {
                if !given[i * dim + j] && given[j * dim + i] {
                    let neg = !koszul(basis.parity(i), basis.parity(j));
                    let v = &table[j * dim + i];
                    table[i * dim + j] = if neg { v.neg(&ring) } else { v.clone() };
                }
            }
        }
        Ok(LieSuperAlgebra { ring, basis, n_even: even.len(), table })
    }

    /// Convenience constructor with named integer structure constants.
    pub fn from_named(
        ring: CoeffRing,
        even: &[&str],
        odd: &[&str],
        entries: &[(&str, &str, &[(i64, &str)])],
    ) -> Result<Self, LieError> {
        let even: Vec<String> = even.iter().map(|s| s.to_string()).collect();
        let odd: Vec<String> = odd.iter().map(|s| s.to_string()).collect();
        let names: Vec<&String> = even.iter().chain(odd.iter()).collect();
        let find = |n: &str| {
            names
                .iter()
                .position(|m| m.as_str() == n)
                .ok_or_else(|| LieError::Superlin(SuperlinError::UnknownSymbol(n.to_string())))
        };
        let mut resolved = Vec::new();
        for (z, w, value) in entries {
            let mut v = LinComb::zero();
            for (c, b) in value.iter() {
                v.add_term(&ring, find(b)?, ring.from_i64(*c));
            }
            resolved.push((find(z)?, find(w)?, v));
        }
        Self::from_table(ring, &even, &odd, resolved)
    }

    pub fn ring(&self) -> &CoeffRing {
        &self.ring
    }

    pub fn basis(&self) -> &Arc<Basis> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn n_even(&self) -> usize {
        self.n_even
    }

    pub fn n_odd(&self) -> usize {
        self.dim() - self.n_even
    }

    pub fn even_indices(&self) -> std::ops::Range<usize> {
        0..self.n_even
    }

    pub fn odd_indices(&self) -> std::ops::Range<usize> {
        self.n_even..self.dim()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.basis.parity(i)
    }

    pub fn name(&self, i: usize) -> &str {
        self.basis.name(i)
    }

    pub fn lookup(&self, name: &str) -> Result<usize, LieError> {
        Ok(self.basis.lookup(name)?)
    }

    /// The stored value of `[i, j]` on basis indices.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &LinComb<usize> {
        &self.table[i * self.dim() + j]
    }

    pub fn bracket_lin(&self, u: &LinComb<usize>, v: &LinComb<usize>) -> LinComb<usize> {
        let mut out = LinComb::zero();
        for (i, a) in u.iter() {
            for (j, b) in v.iter() {
                out.add_scaled(&self.ring, self.bracket_basis(*i, *j), &self.ring.mul(a, b));
            }
        }
        out
    }

    pub fn bracket(&self, u: &SuperVector, v: &SuperVector) -> Result<SuperVector, LieError> {
        for w in [u, v] {
            if w.ring != self.ring {
                return Err(SuperlinError::RingMismatch(w.ring.to_string(), self.ring.to_string())
                    .into());
            }
            if !Arc::ptr_eq(&w.basis, &self.basis) && *w.basis != *self.basis {
                return Err(SuperlinError::BasisMismatch.into());
            }
        }
        Ok(self.wrap(self.bracket_lin(&u.coeffs, &v.coeffs)))
    }

    pub fn wrap(&self, coeffs: LinComb<usize>) -> SuperVector {
        SuperVector { ring: self.ring.clone(), basis: self.basis.clone(), coeffs }
    }

    pub fn vector(&self, terms: &[(i64, &str)]) -> Result<SuperVector, LieError> {
        Ok(SuperVector::from_terms(self.ring.clone(), self.basis.clone(), terms)?)
    }

    pub fn show(&self, v: &LinComb<usize>) -> String {
        self.wrap(v.clone()).to_string()
    }

    fn basis_vec(&self, i: usize) -> LinComb<usize> {
        LinComb::term(i, self.ring.one())
    }

    fn pair_sum(&self, i: usize, j: usize) -> LinComb<usize> {
        self.basis_vec(i).plus(&self.ring, &self.basis_vec(j))
    }

    /// Evaluates the four bracket axioms; violations are report content.
    pub fn check_axioms(&self) -> Report {
        let mut rep = Report::new("lie-axioms");
        let ring = &self.ring;
        let mut evens: Vec<(String, LinComb<usize>)> = Vec::new();
        let mut odds: Vec<(String, LinComb<usize>)> = Vec::new();
        for (range, out) in [(self.even_indices(), &mut evens), (self.odd_indices(), &mut odds)] {
            let idx: Vec<usize> = range.collect();
            for &i in &idx {
                out.push((self.name(i).to_string(), self.basis_vec(i)));
            }
            for (a, &i) in idx.iter().enumerate() {
                for &j in &idx[a + 1..] {
                    out.push((format!("{}+{}", self.name(i), self.name(j)), self.pair_sum(i, j)));
                }
            }
        }
        for (label, u) in &evens {
            let v = self.bracket_lin(u, u);
            rep.check(v.is_zero(), "i", || format!("[{label},{label}] = {}", self.show(&v)));
        }
        for (label, u) in &odds {
            let uu = self.bracket_lin(u, u);
            let v = self.bracket_lin(&uu, u);
            rep.check(v.is_zero(), "ii", || format!("[[{label},{label}],{label}] = {}", self.show(&v)));
        }
        let dim = self.dim();
        for i in 0..dim {
            for j in 0..dim {
                let sign = koszul(self.parity(i), self.parity(j));
                let mut v = self.bracket_basis(i, j).clone();
                let back = ring.signed(sign, ring.one());
                v.add_scaled(ring, self.bracket_basis(j, i), &back);
                rep.check(v.is_zero(), "iii", || {
                    format!("({},{}): {}", self.name(i), self.name(j), self.show(&v))
                });
            }
        }
        for x in 0..dim {
            for y in 0..dim {
                for z in 0..dim {
                    let v = self.jacobiator(x, y, z);
                    rep.check(v.is_zero(), "iv", || {
                        format!("({},{},{}): {}", self.name(x), self.name(y), self.name(z), self.show(&v))
                    });
                }
            }
        }
        rep
    }

    /// `[[x,y],z] + (-1)^{|x|(|y|+|z|)}[[y,z],x] + (-1)^{|z|(|x|+|y|)}[[z,x],y]`.
    pub fn jacobiator(&self, x: usize, y: usize, z: usize) -> LinComb<usize> {
        let ring = &self.ring;
        let (px, py, pz) = (self.parity(x), self.parity(y), self.parity(z));
        let t1 = self.bracket_lin(self.bracket_basis(x, y), &self.basis_vec(z));
        let t2 = self.bracket_lin(self.bracket_basis(y, z), &self.basis_vec(x));
        let t3 = self.bracket_lin(self.bracket_basis(z, x), &self.basis_vec(y));
        let s2 = ring.signed(koszul(px, py.add(pz)), ring.one());
        let s3 = ring.signed(koszul(pz, px.add(py)), ring.one());
        let mut v = t1;
        v.add_scaled(ring, &t2, &s2);
        v.add_scaled(ring, &t3, &s3);
        v
    }

    /// Coefficientwise 2-divisibility of `[x,x]` for every odd basis `x`.
    pub fn check_admissible(&self) -> Result<Report, LieError> {
        if !self.ring.is_two_torsion_free() {
            return Err(LieError::NotTwoTorsionFreeRing(self.ring.to_string()));
        }
        let mut rep = Report::new("admissible");
        for x in self.odd_indices() {
            let v = self.bracket_basis(x, x);
            let ok = v.iter().all(|(_, c)| self.ring.halve(c).is_ok());
            rep.check(ok, "halving", || format!("[{0},{0}] = {1}", self.name(x), self.show(v)));
        }
        Ok(rep)
    }

    /// `x^<2> := [x,x]/2` on each odd basis element.
    pub fn derive_two_operation(&self) -> Result<TwoOperation, LieError> {
        if !self.ring.is_two_torsion_free() {
            return Err(LieError::NotTwoTorsionFreeRing(self.ring.to_string()));
        }
        let mut values = Vec::new();
        for x in self.odd_indices() {
            let v = self.bracket_basis(x, x);
            let mut half = LinComb::zero();
            for (k, c) in v.iter() {
                let h = self
                    .ring
                    .halve(c)
                    .map_err(|_| LieError::NotAdmissible(self.name(x).into(), self.show(v)))?;
                half.add_term(&self.ring, *k, h);
            }
            values.push(half);
        }
        Ok(TwoOperation { values })
    }

    /// Pushes the structure constants along `Z -> target` (or the identity).
    pub fn base_change(
        &self,
        q: &TwoOperation,
        target: &CoeffRing,
        map: RingMap,
    ) -> Result<(LieSuperAlgebra, TwoOperation), LieError> {
        let ok = match map {
            RingMap::Identity => *target == self.ring,
            RingMap::IntegersToRationals => {
                self.ring == CoeffRing::Integers && *target == CoeffRing::Rationals
            }
            RingMap::IntegersToResidues => {
                self.ring == CoeffRing::Integers && matches!(target, CoeffRing::IntegersMod(_))
            }
        };
        if !ok {
            return Err(LieError::UnsupportedRingMap(self.ring.to_string(), target.to_string()));
        }
        let table = self
            .table
            .iter()
            .map(|v| v.reduce_into(target))
            .collect::<Result<Vec<_>, _>>()?;
        let values = q
            .values
            .iter()
            .map(|v| v.reduce_into(target))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((
            LieSuperAlgebra {
                ring: target.clone(),
                basis: self.basis.clone(),
                n_even: self.n_even,
                table,
            },
            TwoOperation { values },
        ))
    }

    pub(crate) fn random_vector(
        &self,
        rng: &mut ChaCha8Rng,
        range: std::ops::Range<usize>,
    ) -> LinComb<usize> {
        let mut v = LinComb::zero();
        for i in range {
            v.add_term(&self.ring, i, self.ring.random(rng, 5));
        }
        v
    }
}

/// The ring homomorphisms `base_change` accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingMap {
    Identity,
    IntegersToRationals,
    IntegersToResidues,
}

/// The quadratic map `g1 -> g0`, stored on the odd basis in declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoOperation {
    /// `values[k]` is the square of the `k`-th odd basis element, in global
    /// (even) indices.
    pub values: Vec<LinComb<usize>>,
}

impl TwoOperation {
    pub fn zero(n_odd: usize) -> Self {
        TwoOperation { values: vec![LinComb::zero(); n_odd] }
    }

    pub fn value(&self, odd_pos: usize) -> &LinComb<usize> {
        &self.values[odd_pos]
    }

    pub fn validate(&self, g: &LieSuperAlgebra) -> Result<(), LieError> {
        if self.values.len() != g.n_odd() {
            return Err(LieError::TwoOperationArity { expected: g.n_odd(), got: self.values.len() });
        }
        for (k, v) in self.values.iter().enumerate() {
            if v.keys().any(|i| *i >= g.n_even()) {
                return Err(LieError::TwoOperationShape(g.name(g.n_even() + k).into()));
            }
        }
        Ok(())
    }

    /// `(sum c_i x_i)^<2> = sum c_i^2 x_i^<2> + sum_{i<j} c_i c_j [x_i,x_j]`.
    pub fn apply(&self, g: &LieSuperAlgebra, v: &LinComb<usize>) -> LinComb<usize> {
        let order: Vec<usize> = (0..g.n_odd()).collect();
        self.apply_with_order(g, v, &order)
    }

    /// The same formula with `i<j` read in the given order of odd positions.
    pub fn apply_with_order(
        &self,
        g: &LieSuperAlgebra,
        v: &LinComb<usize>,
        order: &[usize],
    ) -> LinComb<usize> {
        let ring = g.ring();
        let m = g.n_even();
        let coeff = |k: usize| v.coeff(&(m + k));
        let mut out = LinComb::zero();
        for (a, &i) in order.iter().enumerate() {
            let ci = coeff(i);
            if ci.is_zero() {
                continue;
            }
            out.add_scaled(ring, &self.values[i], &ring.mul(&ci, &ci));
            for &j in &order[a + 1..] {
                let cj = coeff(j);
                out.add_scaled(ring, g.bracket_basis(m + i, m + j), &ring.mul(&ci, &cj));
            }
        }
        out
    }

    pub fn show(&self, g: &LieSuperAlgebra) -> String {
        self.values
            .iter()
            .enumerate()
            .map(|(k, v)| format!("{}^<2> = {}", g.name(g.n_even() + k), g.show(v)))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// Checks scaling, polarization and the ad-square identity on the basis and
/// on `samples` random instances drawn from `seed`.
pub fn check_two_operation(
    g: &LieSuperAlgebra,
    q: &TwoOperation,
    seed: u64,
    samples: usize,
) -> Report {
    let mut rep = Report::new("two-operation");
    if let Err(e) = q.validate(g) {
        rep.fail("shape", e.to_string());
        return rep;
    }
    let ring = g.ring();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let odd = g.odd_indices();
    let all = 0..g.dim();
    let sq = |v: &LinComb<usize>| q.apply(g, v);

    let scaling = |rep: &mut Report, v: &LinComb<usize>, c: &Scalar| {
        let lhs = sq(&v.scale(ring, c));
        let rhs = sq(v).scale(ring, &ring.mul(c, c));
        rep.check(lhs == rhs, "i", || {
            format!("c={c}, v={}: {} vs {}", g.show(v), g.show(&lhs), g.show(&rhs))
        });
    };
    for x in odd.clone() {
        let c = ring.random(&mut rng, 5);
        scaling(&mut rep, &g.basis_vec(x), &c);
    }
    for _ in 0..samples {
        let v = g.random_vector(&mut rng, odd.clone());
        let c = ring.random(&mut rng, 5);
        scaling(&mut rep, &v, &c);
    }

    let polar = |rep: &mut Report, v: &LinComb<usize>, w: &LinComb<usize>| {
        let lhs = sq(&v.plus(ring, w));
        let mut rhs = sq(v);
        rhs.add_assign(ring, &g.bracket_lin(v, w));
        rhs.add_assign(ring, &sq(w));
        rep.check(lhs == rhs, "ii", || {
            format!("v={}, w={}: {} vs {}", g.show(v), g.show(w), g.show(&lhs), g.show(&rhs))
        });
    };
    for x in odd.clone() {
        for y in odd.clone() {
            polar(&mut rep, &g.basis_vec(x), &g.basis_vec(y));
        }
    }
    for _ in 0..samples {
        let v = g.random_vector(&mut rng, odd.clone());
        let w = g.random_vector(&mut rng, odd.clone());
        polar(&mut rep, &v, &w);
    }

    let adsq = |rep: &mut Report, v: &LinComb<usize>, z: &LinComb<usize>| {
        let lhs = g.bracket_lin(&sq(v), z);
        let rhs = g.bracket_lin(v, &g.bracket_lin(v, z));
        rep.check(lhs == rhs, "iii", || {
            format!("v={}, z={}: {} vs {}", g.show(v), g.show(z), g.show(&lhs), g.show(&rhs))
        });
    };
    for x in odd.clone() {
        for z in all.clone() {
            adsq(&mut rep, &g.basis_vec(x), &g.basis_vec(z));
        }
    }
    for _ in 0..samples {
        let v = g.random_vector(&mut rng, odd.clone());
        let z = g.random_vector(&mut rng, all.clone());
        adsq(&mut rep, &v, &z);
    }
    rep
}
