//! Exact sparse row echelon forms over Q.

use std::collections::BTreeMap;
use std::ops::Bound;

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type SparseVec<K> = BTreeMap<K, BigRational>;

fn axpy<K: Ord + Clone>(v: &mut SparseVec<K>, c: &BigRational, row: &SparseVec<K>) {
    for (k, x) in row {
        let e = v.entry(k.clone()).or_insert_with(BigRational::zero);
        *e += c * x;
        if e.is_zero() {
            v.remove(k);
        }
    }
}

/// Rows keyed by their smallest key, each with pivot coefficient 1. Every
/// row carries a tag vector recording which inserted vectors it combines.
#[derive(Debug, Clone)]
pub struct Echelon<K: Ord + Clone> {
    rows: BTreeMap<K, (SparseVec<K>, SparseVec<usize>)>,
    inserted: usize,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { rows: BTreeMap::new(), inserted: 0 }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the rows; returns the remainder and the
    /// combination of inserted vectors that was subtracted.
    pub fn reduce(&self, mut v: SparseVec<K>) -> (SparseVec<K>, SparseVec<usize>) {
        let mut used = SparseVec::new();
        let mut lower: Bound<K> = Bound::Unbounded;
        while let Some(k) = v.range((lower.clone(), Bound::Unbounded)).next().map(|(k, _)| k.clone()) {
            if let Some((row, tag)) = self.rows.get(&k) {
                // the row's other keys are all larger than k
                let c = -v[&k].clone();
                axpy(&mut v, &c, row);
                axpy(&mut used, &(-c), tag);
            }
            lower = Bound::Excluded(k);
        }
        (v, used)
    }

    /// Inserts `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: SparseVec<K>) -> bool {
        let id = self.inserted;
        self.inserted += 1;
        let (mut r, used) = self.reduce(v);
        let Some((pivot, lead)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let mut tag: SparseVec<usize> = used.into_iter().map(|(i, c)| (i, -c)).collect();
        tag.insert(id, BigRational::one());
        let inv = BigRational::one() / lead;
        for c in r.values_mut() {
            *c *= &inv;
        }
        for c in tag.values_mut() {
            *c *= &inv;
        }
        self.rows.insert(pivot, (r, tag));
        true
    }

    /// Coordinates of `v` in terms of the inserted vectors, if it lies in
    /// their span.
    pub fn solve(&self, v: SparseVec<K>) -> Option<SparseVec<usize>> {
        let (r, used) = self.reduce(v);
        if r.is_empty() {
            Some(used)
        } else {
            None
        }
    }
}
