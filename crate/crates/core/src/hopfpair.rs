//! Generic Hopf superalgebra checks and Hopf pairings.
//!
//! Pairing conventions: `⟨xy, a⟩ = Σ ⟨x, a₁⟩⟨y, a₂⟩` and
//! `⟨x, ab⟩ = Σ ⟨x₁, a⟩⟨x₂, b⟩`, with no extra signs.

use std::fmt::Debug;
use std::hash::Hash;

use rayon::prelude::*;
use thiserror::Error;

use crate::coeff::{CoeffRing, Scalar};
use crate::env::{EnvAlgebra, PbwMonomial};
use crate::ext::{ExtMonomial, ExteriorAlgebra};
use crate::report::Report;
use crate::superlin::{format_terms, koszul, LinComb, Parity};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairError {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
}

/// A Hopf superalgebra given on a basis.
pub trait HopfStructure: Sync {
    type Basis: Clone + Ord + Hash + Debug + Send + Sync;

    fn ring(&self) -> &CoeffRing;
    fn parity(&self, b: &Self::Basis) -> Parity;
    fn unit(&self) -> Self::Basis;
    fn product(&self, a: &Self::Basis, b: &Self::Basis) -> LinComb<Self::Basis>;
    fn coproduct(&self, a: &Self::Basis) -> LinComb<(Self::Basis, Self::Basis)>;
    fn counit(&self, a: &Self::Basis) -> Scalar;
    fn antipode(&self, a: &Self::Basis) -> LinComb<Self::Basis>;
    fn display(&self, a: &Self::Basis) -> String;
}

pub type Tensor<B> = LinComb<(B, B)>;

pub fn mul<H: HopfStructure>(h: &H, u: &LinComb<H::Basis>, v: &LinComb<H::Basis>) -> LinComb<H::Basis> {
    let ring = h.ring();
    let mut out = LinComb::zero();
    for (a, x) in u.iter() {
        for (b, y) in v.iter() {
            out.add_scaled(ring, &h.product(a, b), &ring.mul(x, y));
        }
    }
    out
}

pub fn comul<H: HopfStructure>(h: &H, u: &LinComb<H::Basis>) -> Tensor<H::Basis> {
    u.apply(h.ring(), |b| h.coproduct(b))
}

pub fn antipode<H: HopfStructure>(h: &H, u: &LinComb<H::Basis>) -> LinComb<H::Basis> {
    u.apply(h.ring(), |b| h.antipode(b))
}

pub fn counit<H: HopfStructure>(h: &H, u: &LinComb<H::Basis>) -> Scalar {
    let ring = h.ring();
    u.iter().fold(ring.zero(), |acc, (b, c)| ring.add(&acc, &ring.mul(c, &h.counit(b))))
}

pub fn unit<H: HopfStructure>(h: &H) -> LinComb<H::Basis> {
    LinComb::term(h.unit(), h.ring().one())
}

pub fn basis_elem<H: HopfStructure>(h: &H, b: &H::Basis) -> LinComb<H::Basis> {
    LinComb::term(b.clone(), h.ring().one())
}

/// `(a⊗b)(c⊗d) = (-1)^{|b||c|} ac⊗bd`.
pub fn tensor_mul<H: HopfStructure>(h: &H, s: &Tensor<H::Basis>, t: &Tensor<H::Basis>) -> Tensor<H::Basis> {
    let ring = h.ring();
    let mut out = LinComb::zero();
    for ((a, b), x) in s.iter() {
        for ((c, d), y) in t.iter() {
            let sign = koszul(h.parity(b), h.parity(c));
            let coef = ring.signed(sign, ring.mul(x, y));
            let ac = h.product(a, c);
            let bd = h.product(b, d);
            for (l, p) in ac.iter() {
                for (r, q) in bd.iter() {
                    out.add_term(ring, (l.clone(), r.clone()), ring.mul(&coef, &ring.mul(p, q)));
                }
            }
        }
    }
    out
}

/// `m ∘ (f⊗g)` on a tensor.
fn contract<H: HopfStructure>(
    h: &H,
    t: &Tensor<H::Basis>,
    f: impl Fn(&H::Basis) -> LinComb<H::Basis>,
    g: impl Fn(&H::Basis) -> LinComb<H::Basis>,
) -> LinComb<H::Basis> {
    let ring = h.ring();
    let mut out = LinComb::zero();
    for ((a, b), c) in t.iter() {
        out.add_scaled(ring, &mul(h, &f(a), &g(b)), c);
    }
    out
}

pub fn show<H: HopfStructure>(h: &H, u: &LinComb<H::Basis>) -> String {
    format_terms(u.iter(), |b| Some(h.display(b)), false)
}

pub fn show_tensor<H: HopfStructure>(h: &H, t: &Tensor<H::Basis>) -> String {
    format_terms(t.iter(), |(a, b)| Some(format!("{}⊗{}", h.display(a), h.display(b))), false)
}

/// Runs `f` on every item in parallel and merges the reports in input order.
fn sweep<T: Sync>(name: &str, items: &[T], f: impl Fn(&T, &mut Report) + Sync) -> Report {
    let parts: Vec<Report> = items
        .par_iter()
        .map(|it| {
            let mut r = Report::new(name);
            f(it, &mut r);
            r
        })
        .collect();
    let mut rep = Report::new(name);
    for p in parts {
        rep.absorb(p);
    }
    rep
}

pub fn check_associativity<H: HopfStructure>(h: &H, set: &[H::Basis]) -> Report {
    sweep("associativity", set, |a, rep| {
        let ea = basis_elem(h, a);
        for b in set {
            let ab = h.product(a, b);
            for c in set {
                let ec = basis_elem(h, c);
                let lhs = mul(h, &ab, &ec);
                let rhs = mul(h, &ea, &h.product(b, c));
                rep.check(lhs == rhs, "associativity", || {
                    format!("({},{},{}): {} vs {}", h.display(a), h.display(b), h.display(c), show(h, &lhs), show(h, &rhs))
                });
            }
        }
    })
}

pub fn check_coassociativity<H: HopfStructure>(h: &H, set: &[H::Basis]) -> Report {
    sweep("coassociativity", set, |a, rep| {
        let ring = h.ring();
        let d = h.coproduct(a);
        let mut lhs: LinComb<(H::Basis, H::Basis, H::Basis)> = LinComb::zero();
        let mut rhs = LinComb::zero();
        for ((x, y), c) in d.iter() {
            for ((x1, x2), c2) in h.coproduct(x).iter() {
                lhs.add_term(ring, (x1.clone(), x2.clone(), y.clone()), ring.mul(c, c2));
            }
            for ((y1, y2), c2) in h.coproduct(y).iter() {
                rhs.add_term(ring, (x.clone(), y1.clone(), y2.clone()), ring.mul(c, c2));
            }
        }
        rep.check(lhs == rhs, "coassociativity", || h.display(a));
    })
}

pub fn check_counit<H: HopfStructure>(h: &H, set: &[H::Basis]) -> Report {
    sweep("counit", set, |a, rep| {
        let ring = h.ring();
        let d = h.coproduct(a);
        let mut left = LinComb::zero();
        let mut right = LinComb::zero();
        for ((x, y), c) in d.iter() {
            left.add_term(ring, y.clone(), ring.mul(c, &h.counit(x)));
            right.add_term(ring, x.clone(), ring.mul(c, &h.counit(y)));
        }
        let id = basis_elem(h, a);
        rep.check(left == id, "counit-left", || format!("{}: {}", h.display(a), show(h, &left)));
        rep.check(right == id, "counit-right", || format!("{}: {}", h.display(a), show(h, &right)));
    })
}

pub fn check_antipode<H: HopfStructure>(h: &H, set: &[H::Basis]) -> Report {
    sweep("antipode", set, |a, rep| {
        let d = h.coproduct(a);
        let target = unit(h).scale(h.ring(), &h.counit(a));
        let left = contract(h, &d, |x| h.antipode(x), |y| basis_elem(h, y));
        let right = contract(h, &d, |x| basis_elem(h, x), |y| h.antipode(y));
        rep.check(left == target, "antipode-left", || format!("{}: {}", h.display(a), show(h, &left)));
        rep.check(right == target, "antipode-right", || format!("{}: {}", h.display(a), show(h, &right)));
    })
}

pub fn check_bialgebra<H: HopfStructure>(h: &H, pairs: &[(H::Basis, H::Basis)]) -> Report {
    sweep("bialgebra", pairs, |(a, b), rep| {
        let lhs = comul(h, &h.product(a, b));
        let rhs = tensor_mul(h, &h.coproduct(a), &h.coproduct(b));
        rep.check(lhs == rhs, "bialgebra", || {
            format!("({},{}): {} vs {}", h.display(a), h.display(b), show_tensor(h, &lhs), show_tensor(h, &rhs))
        });
    })
}

pub fn super_swap<H: HopfStructure>(h: &H, t: &Tensor<H::Basis>) -> Tensor<H::Basis> {
    let ring = h.ring();
    t.iter()
        .map(|((a, b), c)| ((b.clone(), a.clone()), ring.signed(koszul(h.parity(a), h.parity(b)), c.clone())))
        .collect()
}

pub fn check_cocommutativity<H: HopfStructure>(h: &H, set: &[H::Basis]) -> Report {
    sweep("cocommutativity", set, |a, rep| {
        let d = h.coproduct(a);
        let s = super_swap(h, &d);
        rep.check(d == s, "cocommutativity", || format!("{}: {}", h.display(a), show_tensor(h, &d)));
    })
}

pub fn check_supercommutativity<H: HopfStructure>(h: &H, set: &[H::Basis]) -> Report {
    sweep("supercommutativity", set, |a, rep| {
        let ring = h.ring();
        for b in set {
            let ab = h.product(a, b);
            let ba = h.product(b, a).scale(ring, &ring.signed(koszul(h.parity(a), h.parity(b)), ring.one()));
            rep.check(ab == ba, "supercommutativity", || format!("({},{})", h.display(a), h.display(b)));
        }
    })
}

/// Unit and counit are compatible with the product: `ε(ab) = ε(a)ε(b)`,
/// `1·a = a = a·1`, `Δ(1) = 1⊗1`.
pub fn check_unit<H: HopfStructure>(h: &H, set: &[H::Basis]) -> Report {
    let ring = h.ring();
    let one = h.unit();
    let mut rep = Report::new("unit");
    let d1 = h.coproduct(&one);
    rep.check(d1 == LinComb::term((one.clone(), one.clone()), ring.one()), "unit-coproduct", || show_tensor(h, &d1));
    rep.check(h.counit(&one) == ring.one(), "unit-counit", || h.display(&one));
    rep.absorb(sweep("unit", set, |a, rep| {
        let ea = basis_elem(h, a);
        rep.check(h.product(&one, a) == ea && h.product(a, &one) == ea, "unit-product", || h.display(a));
        for b in set {
            let lhs = counit(h, &h.product(a, b));
            rep.check(lhs == ring.mul(&h.counit(a), &h.counit(b)), "counit-product", || {
                format!("({},{})", h.display(a), h.display(b))
            });
        }
    }));
    rep
}

/// Associativity, unit, coassociativity, counit, bialgebra and antipode on
/// `set` (pairs and triples drawn from `set`).
pub fn check_hopf_axioms<H: HopfStructure>(h: &H, set: &[H::Basis]) -> Report {
    let mut rep = Report::new("hopf-axioms");
    let pairs: Vec<_> = set.iter().flat_map(|a| set.iter().map(move |b| (a.clone(), b.clone()))).collect();
    rep.absorb(check_associativity(h, set));
    rep.absorb(check_unit(h, set));
    rep.absorb(check_coassociativity(h, set));
    rep.absorb(check_counit(h, set));
    rep.absorb(check_bialgebra(h, &pairs));
    rep.absorb(check_antipode(h, set));
    rep
}

type Eval<'a, L, R> = Box<dyn Fn(&L, &R) -> Scalar + Sync + 'a>;

/// A bilinear form between two Hopf structures, given on basis pairs.
pub struct PairingHandle<'a, L: HopfStructure, R: HopfStructure> {
    pub left: &'a L,
    pub right: &'a R,
    eval: Eval<'a, L::Basis, R::Basis>,
}

impl<'a, L: HopfStructure, R: HopfStructure> PairingHandle<'a, L, R> {
    pub fn new(left: &'a L, right: &'a R, eval: impl Fn(&L::Basis, &R::Basis) -> Scalar + Sync + 'a) -> Self {
        PairingHandle { left, right, eval: Box::new(eval) }
    }

    /// Mixed-parity pairs are zero without consulting the rule.
    pub fn eval(&self, x: &L::Basis, a: &R::Basis) -> Scalar {
        if self.left.parity(x) != self.right.parity(a) {
            return Scalar::zero();
        }
        (self.eval)(x, a)
    }

    pub fn pair(&self, u: &LinComb<L::Basis>, v: &LinComb<R::Basis>) -> Scalar {
        let ring = self.left.ring();
        let mut total = ring.zero();
        for (x, c) in u.iter() {
            for (a, d) in v.iter() {
                let p = self.eval(x, a);
                if !p.is_zero() {
                    total = ring.add(&total, &ring.mul(&p, &ring.mul(c, d)));
                }
            }
        }
        total
    }

    /// `Σ ⟨x, a⟩⟨y, b⟩` over the terms of two tensors.
    fn pair_tensors(&self, s: &Tensor<L::Basis>, t: &Tensor<R::Basis>) -> Scalar {
        let ring = self.left.ring();
        let mut total = ring.zero();
        for ((x, y), c) in s.iter() {
            for ((a, b), d) in t.iter() {
                let p = self.eval(x, a);
                if p.is_zero() {
                    continue;
                }
                let q = self.eval(y, b);
                if !q.is_zero() {
                    total = ring.add(&total, &ring.mul(&ring.mul(&p, &q), &ring.mul(c, d)));
                }
            }
        }
        total
    }
}

/// The four conditions `⟨xy,a⟩ = ⟨x,a₁⟩⟨y,a₂⟩`, `⟨x,ab⟩ = ⟨x₁,a⟩⟨x₂,b⟩`,
/// `⟨1,a⟩ = ε(a)`, `⟨x,1⟩ = ε(x)` on all test pairs.
pub fn verify_hopf_pairing<L: HopfStructure, R: HopfStructure>(
    p: &PairingHandle<'_, L, R>,
    lefts: &[L::Basis],
    rights: &[R::Basis],
) -> Report {
    let (l, r) = (p.left, p.right);
    let ring = l.ring();
    let mut rep = Report::new("hopf-pairing");
    let one_l = unit(l);
    let one_r = unit(r);
    for a in rights {
        let lhs = p.pair(&one_l, &basis_elem(r, a));
        rep.check(lhs == r.counit(a), "unit-left", || format!("a={}: {} vs {}", r.display(a), lhs, r.counit(a)));
    }
    for x in lefts {
        let lhs = p.pair(&basis_elem(l, x), &one_r);
        rep.check(lhs == l.counit(x), "unit-right", || format!("x={}: {} vs {}", l.display(x), lhs, l.counit(x)));
    }
    let rights_co: Vec<_> = rights.par_iter().map(|a| r.coproduct(a)).collect();
    rep.absorb(sweep("hopf-pairing", lefts, |x, rep| {
        for y in lefts {
            let xy = l.product(x, y);
            let xy_t: Tensor<L::Basis> = LinComb::term((x.clone(), y.clone()), ring.one());
            for (a, da) in rights.iter().zip(&rights_co) {
                let lhs = p.pair(&xy, &basis_elem(r, a));
                let rhs = p.pair_tensors(&xy_t, da);
                rep.check(lhs == rhs, "product", || {
                    format!("x={}, y={}, a={}: {} vs {}", l.display(x), l.display(y), r.display(a), lhs, rhs)
                });
            }
        }
    }));
    let lefts_co: Vec<_> = lefts.par_iter().map(|x| l.coproduct(x)).collect();
    let lefts_idx: Vec<usize> = (0..lefts.len()).collect();
    rep.absorb(sweep("hopf-pairing", &lefts_idx, |&i, rep| {
        let (x, dx) = (&lefts[i], &lefts_co[i]);
        for a in rights {
            for b in rights {
                let ab = r.product(a, b);
                let ab_t: Tensor<R::Basis> = LinComb::term((a.clone(), b.clone()), ring.one());
                let lhs = p.pair(&basis_elem(l, x), &ab);
                let rhs = p.pair_tensors(dx, &ab_t);
                rep.check(lhs == rhs, "coproduct", || {
                    format!("x={}, a={}, b={}: {} vs {}", l.display(x), r.display(a), r.display(b), lhs, rhs)
                });
            }
        }
    }));
    rep
}

/// `⟨S(x), a⟩ = ⟨x, S(a)⟩`.
pub fn verify_antipode_compat<L: HopfStructure, R: HopfStructure>(
    p: &PairingHandle<'_, L, R>,
    lefts: &[L::Basis],
    rights: &[R::Basis],
) -> Report {
    let (l, r) = (p.left, p.right);
    sweep("antipode-compat", lefts, |x, rep| {
        let sx = l.antipode(x);
        for a in rights {
            let lhs = p.pair(&sx, &basis_elem(r, a));
            let rhs = p.pair(&basis_elem(l, x), &r.antipode(a));
            rep.check(lhs == rhs, "antipode", || {
                format!("x={}, a={}: {} vs {}", l.display(x), r.display(a), lhs, rhs)
            });
        }
    })
}

/// `⟨u, ab⟩ = ⟨u,a⟩ε(b) + ε(a)⟨u,b⟩` and `⟨u, S(a)⟩ = -⟨u,a⟩`.
pub fn derivation_check<L: HopfStructure, R: HopfStructure>(
    p: &PairingHandle<'_, L, R>,
    lie: &[LinComb<L::Basis>],
    rights: &[R::Basis],
) -> Report {
    let r = p.right;
    let ring = r.ring();
    let mut rep = Report::new("derivation");
    for (k, u) in lie.iter().enumerate() {
        for a in rights {
            let ea = basis_elem(r, a);
            let ua = p.pair(u, &ea);
            let lhs = p.pair(u, &r.antipode(a));
            rep.check(lhs == ring.neg(&ua), "negation", || format!("u#{k}, a={}: {} vs {}", r.display(a), lhs, ring.neg(&ua)));
            for b in rights {
                let eb = basis_elem(r, b);
                let lhs = p.pair(u, &r.product(a, b));
                let rhs = ring.add(&ring.mul(&ua, &r.counit(b)), &ring.mul(&r.counit(a), &p.pair(u, &eb)));
                rep.check(lhs == rhs, "leibniz", || {
                    format!("u#{k}, a={}, b={}: {} vs {}", r.display(a), r.display(b), lhs, rhs)
                });
            }
        }
    }
    rep
}

/// The Laurent Hopf algebra `k[Z^r]` with group-like basis `e^λ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentHopf {
    ring: CoeffRing,
    rank: usize,
}

pub type LaurentElem = LinComb<Vec<i64>>;

impl LaurentHopf {
    pub fn new(ring: CoeffRing, rank: usize) -> Self {
        LaurentHopf { ring, rank }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn monomial(&self, lambda: &[i64]) -> LaurentElem {
        LinComb::term(lambda.to_vec(), self.ring.one())
    }

    /// All `e^λ` with `|λ|∞ <= bound`, lexicographic.
    pub fn box_basis(&self, bound: i64) -> Vec<Vec<i64>> {
        lattice_box(self.rank, bound)
    }

    pub fn show(&self, u: &LaurentElem) -> String {
        format_terms(u.iter(), |l| Some(show_lattice(l)), false)
    }
}

pub fn show_lattice(l: &[i64]) -> String {
    let parts: Vec<String> = l.iter().map(|x| x.to_string()).collect();
    format!("e^({})", parts.join(","))
}

pub fn lattice_box(rank: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-bound..=bound).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

impl HopfStructure for LaurentHopf {
    type Basis = Vec<i64>;

    fn ring(&self) -> &CoeffRing {
        &self.ring
    }
    fn parity(&self, _: &Vec<i64>) -> Parity {
        Parity::Even
    }
    fn unit(&self) -> Vec<i64> {
        vec![0; self.rank]
    }
    fn product(&self, a: &Vec<i64>, b: &Vec<i64>) -> LaurentElem {
        let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        LinComb::term(s, self.ring.one())
    }
    fn coproduct(&self, a: &Vec<i64>) -> Tensor<Vec<i64>> {
        LinComb::term((a.clone(), a.clone()), self.ring.one())
    }
    fn counit(&self, _: &Vec<i64>) -> Scalar {
        self.ring.one()
    }
    fn antipode(&self, a: &Vec<i64>) -> LaurentElem {
        LinComb::term(a.iter().map(|x| -x).collect(), self.ring.one())
    }
    fn display(&self, a: &Vec<i64>) -> String {
        show_lattice(a)
    }
}

impl HopfStructure for EnvAlgebra {
    type Basis = PbwMonomial;

    fn ring(&self) -> &CoeffRing {
        EnvAlgebra::ring(self)
    }
    fn parity(&self, b: &PbwMonomial) -> Parity {
        b.parity()
    }
    fn unit(&self) -> PbwMonomial {
        self.one_monomial()
    }
    fn product(&self, a: &PbwMonomial, b: &PbwMonomial) -> LinComb<PbwMonomial> {
        self.mul_monomials(a, b)
    }
    fn coproduct(&self, a: &PbwMonomial) -> Tensor<PbwMonomial> {
        (*self.coproduct_monomial(a)).clone()
    }
    fn counit(&self, a: &PbwMonomial) -> Scalar {
        self.counit_monomial(a)
    }
    fn antipode(&self, a: &PbwMonomial) -> LinComb<PbwMonomial> {
        self.antipode_monomial(a)
    }
    fn display(&self, a: &PbwMonomial) -> String {
        self.show_monomial(a).unwrap_or_else(|| "1".into())
    }
}

impl HopfStructure for ExteriorAlgebra {
    type Basis = ExtMonomial;

    fn ring(&self) -> &CoeffRing {
        ExteriorAlgebra::ring(self)
    }
    fn parity(&self, b: &ExtMonomial) -> Parity {
        b.parity()
    }
    fn unit(&self) -> ExtMonomial {
        ExtMonomial(0)
    }
    fn product(&self, a: &ExtMonomial, b: &ExtMonomial) -> LinComb<ExtMonomial> {
        let ring = self.ring();
        self.wedge_unchecked(&LinComb::term(*a, ring.one()), &LinComb::term(*b, ring.one()))
    }
    fn coproduct(&self, a: &ExtMonomial) -> Tensor<ExtMonomial> {
        self.coproduct_monomial(*a)
    }
    fn counit(&self, a: &ExtMonomial) -> Scalar {
        if a.0 == 0 {
            self.ring().one()
        } else {
            Scalar::zero()
        }
    }
    fn antipode(&self, a: &ExtMonomial) -> LinComb<ExtMonomial> {
        let ring = self.ring();
        LinComb::term(*a, ring.signed(ExteriorAlgebra::antipode_sign(*a), ring.one()))
    }
    fn display(&self, a: &ExtMonomial) -> String {
        self.show_monomial(*a).unwrap_or_else(|| "1".into())
    }
}

/// The canonical pairing between two exterior algebras of equal rank.
pub fn ext_pairing_handle<'a>(
    v: &'a ExteriorAlgebra,
    w: &'a ExteriorAlgebra,
) -> Result<PairingHandle<'a, ExteriorAlgebra, ExteriorAlgebra>, PairError> {
    if v.rank() != w.rank() {
        return Err(PairError::RankMismatch { left: v.rank(), right: w.rank() });
    }
    let ring = v.ring().clone();
    Ok(PairingHandle::new(v, w, move |s, t| ring.from_i64(crate::ext::pair_monomials(*s, *t))))
}

/// `⟨h, e^λ⟩ = λ(h)` for `h = Σ c_i h_i`.
pub fn torus_pairing(ring: &CoeffRing, h: &[Scalar], c: &LaurentElem) -> Result<Scalar, PairError> {
    let mut total = ring.zero();
    for (lambda, k) in c.iter() {
        if lambda.len() != h.len() {
            return Err(PairError::RankMismatch { left: h.len(), right: lambda.len() });
        }
        for (hi, li) in h.iter().zip(lambda) {
            total = ring.add(&total, &ring.mul(k, &ring.mul(hi, &ring.from_i64(*li))));
        }
    }
    Ok(total)
}

/// `⟨h^k, e^λ⟩ = Π λ_i^{k_i}` between `U(Lie T)` (an even abelian envelope
/// whose basis is `h_1..h_r`) and `k[Z^r]`.
pub fn torus_pairing_handle<'a>(
    u: &'a EnvAlgebra,
    c: &'a LaurentHopf,
) -> Result<PairingHandle<'a, EnvAlgebra, LaurentHopf>, PairError> {
    if u.lie().n_even() != c.rank() || u.lie().n_odd() != 0 {
        return Err(PairError::RankMismatch { left: u.lie().dim(), right: c.rank() });
    }
    let ring = c.ring().clone();
    Ok(PairingHandle::new(u, c, move |m, lambda| {
        let mut v = ring.one();
        for (k, l) in m.even.iter().zip(lambda) {
            v = ring.mul(&v, &ring.pow(&ring.from_i64(*l), *k));
        }
        v
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::lie::LieSuperAlgebra;
    use std::sync::Arc;

    fn torus_env(r: usize) -> EnvAlgebra {
        let names: Vec<String> = (1..=r).map(|i| format!("h{i}")).collect();
        let g = LieSuperAlgebra::from_table(CoeffRing::Integers, &names, &[], vec![]).unwrap();
        EnvAlgebra::new(Arc::new(g), None).unwrap()
    }

    #[test]
    fn laurent_axioms() {
        let c = LaurentHopf::new(CoeffRing::Integers, 2);
        let set = c.box_basis(1);
        let rep = check_hopf_axioms(&c, &set);
        assert!(rep.passed(), "{rep}");
        assert!(check_cocommutativity(&c, &set).passed());
        assert!(check_supercommutativity(&c, &set).passed());
    }

    #[test]
    fn torus_pairing_examples() {
        let z = CoeffRing::Integers;
        let c = LaurentHopf::new(z.clone(), 2);
        let h1 = [Scalar::from(1), Scalar::from(0)];
        assert_eq!(torus_pairing(&z, &h1, &c.monomial(&[1, 0])).unwrap(), Scalar::from(1));
        assert_eq!(torus_pairing(&z, &h1, &c.monomial(&[0, 1])).unwrap(), Scalar::from(0));
        assert_eq!(torus_pairing(&z, &h1, &c.monomial(&[0, 0])).unwrap(), Scalar::from(0));
        let h = [Scalar::from(2), Scalar::from(-3)];
        let prod = mul(&c, &c.monomial(&[1, 2]), &c.monomial(&[-4, 1]));
        let sum = z.add(
            &torus_pairing(&z, &h, &c.monomial(&[1, 2])).unwrap(),
            &torus_pairing(&z, &h, &c.monomial(&[-4, 1])).unwrap(),
        );
        assert_eq!(torus_pairing(&z, &h, &prod).unwrap(), sum);
        assert!(torus_pairing(&z, &h1, &LaurentHopf::new(z.clone(), 3).monomial(&[1, 0, 0])).is_err());
    }

    #[test]
    fn torus_pairing_is_hopf() {
        let u = torus_env(2);
        let c = LaurentHopf::new(CoeffRing::Integers, 2);
        let p = torus_pairing_handle(&u, &c).unwrap();
        let lefts = u.pbw_enumerate(3);
        let rights = c.box_basis(2);
        assert!(verify_hopf_pairing(&p, &lefts, &rights).passed());
        assert!(verify_antipode_compat(&p, &lefts, &rights).passed());
        // ⟨S(h), e^λ⟩ = -λ(h) = ⟨h, e^{-λ}⟩
        let h1 = u.generator(0);
        let s = u.antipode_monomial(&h1);
        assert_eq!(p.pair(&s, &c.monomial(&[3, 1])), Scalar::from(-3));
        assert_eq!(p.pair(&basis_elem(&u, &h1), &c.monomial(&[-3, -1])), Scalar::from(-3));
        assert_eq!(p.pair(&u.one(), &c.monomial(&[0, 0])), Scalar::from(1));
        let lie = vec![basis_elem(&u, &h1), LinComb::zero()];
        assert!(derivation_check(&p, &lie, &rights).passed());
    }

    #[test]
    fn corrupted_pairing_fails_product() {
        let u = torus_env(1);
        let c = LaurentHopf::new(CoeffRing::Integers, 1);
        let ring = CoeffRing::Integers;
        // ⟨h^k, e^λ⟩ = k·λ instead of λ^k
        let p = PairingHandle::new(&u, &c, move |m: &PbwMonomial, l: &Vec<i64>| {
            if m.even[0] == 0 {
                ring.one()
            } else {
                ring.from_i64(m.even[0] as i64 * l[0])
            }
        });
        let rep = verify_hopf_pairing(&p, &u.pbw_enumerate(2), &c.box_basis(2));
        assert!(rep.has_check("product"));
    }

    #[test]
    fn ext_pairing_hopf() {
        let z = CoeffRing::Integers;
        for n in 0..=3 {
            let v = ExteriorAlgebra::standard(z.clone(), "v", n).unwrap();
            let w = ExteriorAlgebra::standard(z.clone(), "w", n).unwrap();
            let p = ext_pairing_handle(&v, &w).unwrap();
            let (l, r) = (v.all_monomials(), w.all_monomials());
            assert!(verify_hopf_pairing(&p, &l, &r).passed());
            assert!(verify_antipode_compat(&p, &l, &r).passed());
            let rep = check_hopf_axioms(&v, &l);
            assert!(rep.passed(), "{rep}");
            assert!(check_cocommutativity(&v, &l).passed());
            assert!(check_supercommutativity(&v, &l).passed());
        }
    }

    #[test]
    fn env_axioms_small() {
        let u = EnvAlgebra::new(Arc::new(catalog::gl11(CoeffRing::Integers)), None).unwrap();
        let set = u.pbw_enumerate(2);
        let rep = check_hopf_axioms(&u, &set);
        assert!(rep.passed(), "{rep}");
        assert!(check_cocommutativity(&u, &set).passed());
    }
}
