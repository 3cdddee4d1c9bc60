//! The enveloping superalgebra U(g) as a rewriting system.
//!
//! Letters are global basis indices of `g`; even letters sort before odd
//! ones. Normal forms are PBW monomials `a_1^{r_1}...a_m^{r_m} x_{i_1}...x_{i_k}`
//! with `i_1 < ... < i_k`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use thiserror::Error;

use crate::coeff::{CoeffRing, Scalar};
use crate::ext::split_sign;
use crate::lie::{LieError, LieSuperAlgebra, TwoOperation};
use crate::report::Report;
use crate::superlin::{format_terms, koszul, LinComb, Parity};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnvError {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("no 2-operation available: {0}")]
    MissingTwoOperation(String),
    #[error("element does not belong to this enveloping algebra")]
    AlgebraMismatch,
    #[error("at most 64 odd generators are supported, got {0}")]
    TooManyOdd(usize),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// A normal-form monomial: even exponents, then a set of odd letters
/// (bit `k` stands for the `k`-th odd basis element).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PbwMonomial {
    pub even: Vec<u32>,
    pub odd: u64,
}

/// A letter in the word order: every even letter precedes every odd one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Letter {
    Even(usize),
    Odd(usize),
}

impl PbwMonomial {
    pub fn one(n_even: usize) -> Self {
        PbwMonomial { even: vec![0; n_even], odd: 0 }
    }

    pub fn is_one(&self) -> bool {
        self.odd == 0 && self.even.iter().all(|e| *e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.even.iter().sum::<u32>() + self.odd.count_ones()
    }

    pub fn odd_len(&self) -> u32 {
        self.odd.count_ones()
    }

    pub fn parity(&self) -> Parity {
        Parity::from_bit(self.odd.count_ones() as usize)
    }

    pub fn even_part(&self) -> PbwMonomial {
        PbwMonomial { even: self.even.clone(), odd: 0 }
    }

    fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        let evens = self
            .even
            .iter()
            .enumerate()
            .flat_map(|(i, r)| std::iter::repeat_n(Letter::Even(i), *r as usize));
        let odds = (0..64).filter(move |k| self.odd >> k & 1 == 1).map(Letter::Odd);
        evens.chain(odds)
    }

    /// The monomial as a word of global letter indices.
    pub fn word(&self) -> Vec<usize> {
        let m = self.even.len();
        self.letters()
            .map(|l| match l {
                Letter::Even(i) => i,
                Letter::Odd(k) => m + k,
            })
            .collect()
    }

    fn last_letter(&self) -> Option<Letter> {
        if self.odd != 0 {
            return Some(Letter::Odd(63 - self.odd.leading_zeros() as usize));
        }
        self.even.iter().rposition(|r| *r > 0).map(Letter::Even)
    }

    fn push(&mut self, l: Letter) {
        match l {
            Letter::Even(i) => self.even[i] += 1,
            Letter::Odd(k) => self.odd |= 1 << k,
        }
    }

    fn pop(&mut self, l: Letter) {
        match l {
            Letter::Even(i) => self.even[i] -= 1,
            Letter::Odd(k) => self.odd &= !(1 << k),
        }
    }
}

impl Ord for PbwMonomial {
    /// Higher degree first, then lexicographic on the word.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| self.letters().cmp(other.letters()))
    }
}

impl PartialOrd for PbwMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub type EnvElement = LinComb<PbwMonomial>;
pub type EnvTensor = LinComb<(PbwMonomial, PbwMonomial)>;

type Cache<K, V> = RwLock<HashMap<K, Arc<V>>>;

/// U(g) for a Lie superalgebra with a 2-operation.
#[derive(Debug)]
pub struct EnvAlgebra {
    g: Arc<LieSuperAlgebra>,
    q: TwoOperation,
    letters: Cache<(PbwMonomial, usize), EnvElement>,
    coproducts: Cache<PbwMonomial, EnvTensor>,
}

impl EnvAlgebra {
    /// Uses `q` when given; otherwise derives `x^<2> = [x,x]/2`, which needs a
    /// 2-torsion-free ring.
    pub fn new(g: Arc<LieSuperAlgebra>, q: Option<TwoOperation>) -> Result<Self, EnvError> {
        if g.n_odd() > 64 {
            return Err(EnvError::TooManyOdd(g.n_odd()));
        }
        let q = match q {
            Some(q) => q,
            None if g.ring().is_two_torsion_free() => g.derive_two_operation()?,
            None => {
                return Err(EnvError::MissingTwoOperation(format!(
                    "ring {} is not 2-torsion free",
                    g.ring()
                )))
            }
        };
        q.validate(&g)?;
        Ok(EnvAlgebra {
            g,
            q,
            letters: RwLock::new(HashMap::new()),
            coproducts: RwLock::new(HashMap::new()),
        })
    }

    pub fn lie(&self) -> &Arc<LieSuperAlgebra> {
        &self.g
    }

    pub fn two_operation(&self) -> &TwoOperation {
        &self.q
    }

    pub fn ring(&self) -> &CoeffRing {
        self.g.ring()
    }

    pub fn one_monomial(&self) -> PbwMonomial {
        PbwMonomial::one(self.g.n_even())
    }

    pub fn one(&self) -> EnvElement {
        LinComb::term(self.one_monomial(), self.ring().one())
    }

    fn letter(&self, z: usize) -> Letter {
        let m = self.g.n_even();
        if z < m {
            Letter::Even(z)
        } else {
            Letter::Odd(z - m)
        }
    }

    fn global(&self, l: Letter) -> usize {
        match l {
            Letter::Even(i) => i,
            Letter::Odd(k) => self.g.n_even() + k,
        }
    }

    /// The monomial consisting of one letter.
    pub fn generator(&self, z: usize) -> PbwMonomial {
        let mut m = self.one_monomial();
        m.push(self.letter(z));
        m
    }

    pub fn monomial(&self, even: Vec<u32>, odd: u64) -> PbwMonomial {
        PbwMonomial { even, odd }
    }

    fn owns(&self, m: &PbwMonomial) -> bool {
        m.even.len() == self.g.n_even() && (self.g.n_odd() == 64 || m.odd >> self.g.n_odd() == 0)
    }

    fn check(&self, u: &EnvElement) -> Result<(), EnvError> {
        if u.keys().all(|m| self.owns(m)) {
            Ok(())
        } else {
            Err(EnvError::AlgebraMismatch)
        }
    }

    /// Normal form of `m * z`.
    ///
    /// With `m` already normal the only redex of the word `m z` is at its
    /// end, so resolving it there is the leftmost rule application; the
    /// recursion keeps that property for every intermediate word.
    pub fn mul_letter(&self, m: &PbwMonomial, z: usize) -> Arc<EnvElement> {
        let key = (m.clone(), z);
        if let Some(hit) = self.letters.read().expect("cache lock").get(&key) {
            return hit.clone();
        }
        let value = Arc::new(self.mul_letter_uncached(m, z));
        self.letters.write().expect("cache lock").insert(key, value.clone());
        value
    }

    fn mul_letter_uncached(&self, m: &PbwMonomial, z: usize) -> EnvElement {
        let ring = self.ring();
        let lz = self.letter(z);
        let append = || {
            let mut out = m.clone();
            out.push(lz);
            LinComb::term(out, ring.one())
        };
        let y = match m.last_letter() {
            None => return append(),
            Some(y) => y,
        };
        if y < lz || (y == lz && matches!(y, Letter::Even(_))) {
            return append();
        }
        let mut w = m.clone();
        w.pop(y);
        let mut out = LinComb::zero();
        if y == lz {
            // odd square
            let Letter::Odd(k) = y else { unreachable!() };
            for (b, c) in self.q.value(k).iter() {
                out.add_scaled(ring, &self.mul_letter(&w, *b), c);
            }
            return out;
        }
        // y > z: w y z -> (-1)^{|y||z|} w z y + w [y,z]
        let gy = self.global(y);
        let neg = koszul(self.g.parity(gy), self.g.parity(z));
        let wz = self.mul_letter(&w, z);
        let wzy = self.mul_lin_letter(&wz, gy);
        out.add_scaled(ring, &wzy, &ring.signed(neg, ring.one()));
        for (b, c) in self.g.bracket_basis(gy, z).iter() {
            out.add_scaled(ring, &self.mul_letter(&w, *b), c);
        }
        out
    }

    fn mul_lin_letter(&self, u: &EnvElement, z: usize) -> EnvElement {
        let mut out = LinComb::zero();
        for (m, c) in u.iter() {
            out.add_scaled(self.ring(), &self.mul_letter(m, z), c);
        }
        out
    }

    /// Normal form of `c * w_1 ... w_n`.
    pub fn normal_form(&self, word: &[usize], c: Scalar) -> Result<EnvElement, EnvError> {
        if let Some(bad) = word.iter().find(|z| **z >= self.g.dim()) {
            return Err(EnvError::UnknownSymbol(format!("#{bad}")));
        }
        let mut acc = LinComb::term(self.one_monomial(), c);
        for z in word {
            acc = self.mul_lin_letter(&acc, *z);
        }
        Ok(acc)
    }

    pub fn normal_form_names(&self, word: &[&str]) -> Result<EnvElement, EnvError> {
        let idx = word
            .iter()
            .map(|n| self.g.lookup(n).map_err(|_| EnvError::UnknownSymbol(n.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        self.normal_form(&idx, self.ring().one())
    }

    /// Parses a whitespace separated word and normal-forms it.
    pub fn parse_word(&self, text: &str) -> Result<EnvElement, EnvError> {
        let names: Vec<&str> = text.split_whitespace().collect();
        self.normal_form_names(&names)
    }

    pub fn multiply(&self, u: &EnvElement, v: &EnvElement) -> Result<EnvElement, EnvError> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.mul(u, v))
    }

    pub(crate) fn mul(&self, u: &EnvElement, v: &EnvElement) -> EnvElement {
        let ring = self.ring();
        let mut out = LinComb::zero();
        for (m, c) in v.iter() {
            let mut acc = u.clone();
            for z in m.word() {
                acc = self.mul_lin_letter(&acc, z);
            }
            out.add_scaled(ring, &acc, c);
        }
        out
    }

    pub fn mul_monomials(&self, a: &PbwMonomial, b: &PbwMonomial) -> EnvElement {
        let one = self.ring().one();
        self.mul(&LinComb::term(a.clone(), one.clone()), &LinComb::term(b.clone(), one))
    }

    /// Coproduct of a monomial: the product of the primitive coproducts of
    /// its letters in U(g)⊗U(g).
    pub fn coproduct_monomial(&self, m: &PbwMonomial) -> Arc<EnvTensor> {
        if let Some(hit) = self.coproducts.read().expect("cache lock").get(m) {
            return hit.clone();
        }
        let ring = self.ring();
        let one = self.one_monomial();
        let mut acc: EnvTensor = LinComb::term((one.clone(), one), ring.one());
        for z in m.word() {
            let pz = self.g.parity(z);
            let mut next = LinComb::zero();
            for ((l, r), c) in acc.iter() {
                let neg = koszul(r.parity(), pz);
                let sc = ring.signed(neg, c.clone());
                for (lz, c2) in self.mul_letter(l, z).iter() {
                    next.add_term(ring, (lz.clone(), r.clone()), ring.mul(&sc, c2));
                }
                for (rz, c2) in self.mul_letter(r, z).iter() {
                    next.add_term(ring, (l.clone(), rz.clone()), ring.mul(c, c2));
                }
            }
            acc = next;
        }
        let value = Arc::new(acc);
        self.coproducts.write().expect("cache lock").insert(m.clone(), value.clone());
        value
    }

    pub fn coproduct(&self, u: &EnvElement) -> Result<EnvTensor, EnvError> {
        self.check(u)?;
        let mut out = LinComb::zero();
        for (m, c) in u.iter() {
            out.add_scaled(self.ring(), &self.coproduct_monomial(m), c);
        }
        Ok(out)
    }

    pub fn counit_monomial(&self, m: &PbwMonomial) -> Scalar {
        if m.is_one() {
            self.ring().one()
        } else {
            Scalar::zero()
        }
    }

    pub fn counit(&self, u: &EnvElement) -> Scalar {
        u.coeff(&self.one_monomial())
    }

    /// `S(z_1...z_n) = (-1)^n (-1)^{k(k-1)/2} z_n...z_1` with `k` odd letters,
    /// then normal-formed.
    pub fn antipode_monomial(&self, m: &PbwMonomial) -> EnvElement {
        let ring = self.ring();
        let mut word = m.word();
        word.reverse();
        let k = m.odd_len();
        let neg = (m.degree() + k * k.saturating_sub(1) / 2) % 2 == 1;
        self.normal_form(&word, ring.signed(neg, ring.one()))
            .expect("monomial letters are valid")
    }

    pub fn antipode(&self, u: &EnvElement) -> Result<EnvElement, EnvError> {
        self.check(u)?;
        Ok(u.apply(self.ring(), |m| self.antipode_monomial(m)))
    }

    /// All PBW monomials of degree at most `max_degree`, by degree then word.
    pub fn pbw_enumerate(&self, max_degree: u32) -> Vec<PbwMonomial> {
        let m = self.g.n_even();
        let n = self.g.n_odd();
        let mut evens = Vec::new();
        let mut cur = vec![0u32; m];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if i == cur.len() {
                out.push(cur.clone());
                return;
            }
            for r in 0..=left {
                cur[i] = r;
                rec(i + 1, left - r, cur, out);
            }
            cur[i] = 0;
        }
        rec(0, max_degree, &mut cur, &mut evens);
        let mut out = Vec::new();
        for e in evens {
            let used: u32 = e.iter().sum();
            for mask in 0u64..(1u64 << n) {
                if used + mask.count_ones() <= max_degree {
                    out.push(PbwMonomial { even: e.clone(), odd: mask });
                }
            }
        }
        out.sort_by(|a, b| {
            a.degree().cmp(&b.degree()).then_with(|| a.letters().cmp(b.letters()))
        });
        out
    }

    pub fn show_monomial(&self, m: &PbwMonomial) -> Option<String> {
        if m.is_one() {
            return None;
        }
        let mut parts = Vec::new();
        for (i, r) in m.even.iter().enumerate() {
            match r {
                0 => {}
                1 => parts.push(self.g.name(i).to_string()),
                r => parts.push(format!("{}^{}", self.g.name(i), r)),
            }
        }
        for k in 0..self.g.n_odd() {
            if m.odd >> k & 1 == 1 {
                parts.push(self.g.name(self.g.n_even() + k).to_string());
            }
        }
        Some(parts.join("."))
    }

    pub fn show(&self, u: &EnvElement) -> String {
        format_terms(u.iter(), |m| self.show_monomial(m), false)
    }

    pub fn show_tensor(&self, t: &EnvTensor) -> String {
        let name = |m: &PbwMonomial| self.show_monomial(m).unwrap_or_else(|| "1".into());
        format_terms(t.iter(), |(a, b)| Some(format!("{}⊗{}", name(a), name(b))), false)
    }

    pub fn rewrite_system(&self) -> RewriteSystem {
        RewriteSystem::new(&self.g, &self.q)
    }

    /// Reduces every overlap word both ways and records the results.
    pub fn check_ambiguities(&self) -> AmbiguityReport {
        let rs = self.rewrite_system();
        let ring = self.ring();
        let dim = self.g.dim();
        let mut entries = Vec::new();
        for a in 0..dim {
            for b in 0..dim {
                if !rs.is_redex(a, b) {
                    continue;
                }
                for c in 0..dim {
                    if !rs.is_redex(b, c) {
                        continue;
                    }
                    let word = vec![a, b, c];
                    let reduce = |pos: usize| {
                        let step = rs.apply_at(&word, pos).expect("overlap is a redex");
                        let mut out = LinComb::zero();
                        for (w, k) in step.iter() {
                            let nf = self.normal_form(w, k.clone()).expect("valid letters");
                            out.add_assign(ring, &nf);
                        }
                        out
                    };
                    let left = reduce(0);
                    let right = reduce(1);
                    let difference = left.minus(ring, &right);
                    entries.push(Ambiguity { word, left, right, difference });
                }
            }
        }
        AmbiguityReport { entries }
    }

    /// The map `U(g0)⊗Λ(g1) -> U(g)` on degree `<= d`: transition matrices and
    /// the coalgebra-map property.
    pub fn phi_iso(&self, d: u32) -> PhiReport {
        let ring = self.ring();
        let basis = self.pbw_enumerate(d);
        let mut degrees: BTreeMap<u32, (usize, bool)> = BTreeMap::new();
        let mut coalgebra = Report::new("phi-coalgebra");
        for b in &basis {
            let image = self.phi(b);
            let entry = degrees.entry(b.degree()).or_insert((0, true));
            entry.0 += 1;
            entry.1 &= image == LinComb::term(b.clone(), ring.one());

            let lhs = self.coproduct(&image).expect("own element");
            let mut rhs = LinComb::zero();
            for ((l, r), c) in tensor_coproduct_u0_ext(ring, b).iter() {
                let pl = self.phi(l);
                let pr = self.phi(r);
                for (x, a) in pl.iter() {
                    for (y, bb) in pr.iter() {
                        rhs.add_term(ring, (x.clone(), y.clone()), ring.mul(c, &ring.mul(a, bb)));
                    }
                }
            }
            coalgebra.check(lhs == rhs, "coalgebra", || {
                format!(
                    "{}: {} vs {}",
                    self.show_monomial(b).unwrap_or_else(|| "1".into()),
                    self.show_tensor(&lhs),
                    self.show_tensor(&rhs)
                )
            });
        }
        PhiReport {
            degrees: degrees
                .into_iter()
                .map(|(degree, (size, identity))| PhiDegree { degree, size, identity })
                .collect(),
            coalgebra,
        }
    }

    /// `phi(u ⊗ x_S) = u * x_S`.
    pub fn phi(&self, b: &PbwMonomial) -> EnvElement {
        let one = self.ring().one();
        let even = self.normal_form(&b.even_part().word(), one.clone()).expect("valid");
        let odd = PbwMonomial { even: vec![0; b.even.len()], odd: b.odd };
        let odd = self.normal_form(&odd.word(), one).expect("valid");
        self.mul(&even, &odd)
    }
}

/// Coproduct of `u ⊗ x_S` in the tensor product coalgebra `U(g0)⊗Λ(g1)`:
/// binomial splitting of even powers times the shuffle coproduct.
pub fn tensor_coproduct_u0_ext(ring: &CoeffRing, b: &PbwMonomial) -> EnvTensor {
    let mut evens: Vec<(Vec<u32>, Vec<u32>, Scalar)> = vec![(vec![], vec![], ring.one())];
    for r in &b.even {
        let mut next = Vec::new();
        for (l, rr, c) in &evens {
            let mut binom = num_bigint::BigInt::from(1);
            for k in 0..=*r {
                let mut l2 = l.clone();
                l2.push(k);
                let mut r2 = rr.clone();
                r2.push(r - k);
                next.push((l2, r2, ring.mul(c, &ring.from_int(binom.clone()))));
                binom = binom * (r - k) / (k + 1);
            }
        }
        evens = next;
    }
    let mut out = LinComb::zero();
    let s = b.odd;
    let mut s1 = s;
    loop {
        let s2 = s & !s1;
        let neg = split_sign(s1, s2);
        for (l, r, c) in &evens {
            out.add_term(
                ring,
                (PbwMonomial { even: l.clone(), odd: s1 }, PbwMonomial { even: r.clone(), odd: s2 }),
                ring.signed(neg, c.clone()),
            );
        }
        if s1 == 0 {
            break;
        }
        s1 = (s1 - 1) & s;
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleFamily {
    /// Two letters of the same parity out of order.
    OutOfOrder,
    /// An odd letter followed by an even one.
    OddEven,
    /// A repeated odd letter.
    OddSquare,
}

#[derive(Debug, Clone)]
pub struct Rule {
    pub family: RuleFamily,
    pub lhs: (usize, usize),
    pub rhs: LinComb<Vec<usize>>,
}

/// The explicit rule list; used for overlap checking and literal traces.
#[derive(Debug, Clone)]
pub struct RewriteSystem {
    ring: CoeffRing,
    rules: BTreeMap<(usize, usize), Rule>,
}

impl RewriteSystem {
    pub fn new(g: &LieSuperAlgebra, q: &TwoOperation) -> Self {
        let ring = g.ring().clone();
        let mut rules = BTreeMap::new();
        for y in 0..g.dim() {
            for z in 0..g.dim() {
                let (py, pz) = (g.parity(y), g.parity(z));
                let family = if y == z && py.is_odd() {
                    RuleFamily::OddSquare
                } else if y > z {
                    if py == pz {
                        RuleFamily::OutOfOrder
                    } else {
                        RuleFamily::OddEven
                    }
                } else {
                    continue;
                };
                let mut rhs = LinComb::zero();
                let value = if family == RuleFamily::OddSquare {
                    q.value(y - g.n_even())
                } else {
                    rhs.add_term(&ring, vec![z, y], ring.signed(koszul(py, pz), ring.one()));
                    g.bracket_basis(y, z)
                };
                for (b, c) in value.iter() {
                    rhs.add_term(&ring, vec![*b], c.clone());
                }
                rules.insert((y, z), Rule { family, lhs: (y, z), rhs });
            }
        }
        RewriteSystem { ring, rules }
    }

    pub fn rules(&self) -> impl Iterator<Item = &Rule> {
        self.rules.values()
    }

    pub fn is_redex(&self, y: usize, z: usize) -> bool {
        self.rules.contains_key(&(y, z))
    }

    pub fn leftmost_redex(&self, word: &[usize]) -> Option<usize> {
        (0..word.len().saturating_sub(1)).find(|&p| self.is_redex(word[p], word[p + 1]))
    }

    /// One rule application at position `pos`.
    pub fn apply_at(&self, word: &[usize], pos: usize) -> Option<LinComb<Vec<usize>>> {
        let rule = self.rules.get(&(word[pos], *word.get(pos + 1)?))?;
        let mut out = LinComb::zero();
        for (mid, c) in rule.rhs.iter() {
            let mut w = word[..pos].to_vec();
            w.extend_from_slice(mid);
            w.extend_from_slice(&word[pos + 2..]);
            out.add_term(&self.ring, w, c.clone());
        }
        Some(out)
    }

    /// Literal leftmost reduction without memoization; for short words.
    pub fn reduce_leftmost(&self, word: &[usize]) -> LinComb<Vec<usize>> {
        let mut todo: LinComb<Vec<usize>> = LinComb::term(word.to_vec(), self.ring.one());
        let mut done = LinComb::zero();
        while let Some((w, c)) = todo.iter().next().map(|(w, c)| (w.clone(), c.clone())) {
            todo = todo.filter(|k| *k != w);
            match self.leftmost_redex(&w) {
                None => done.add_term(&self.ring, w, c),
                Some(p) => {
                    let step = self.apply_at(&w, p).expect("redex");
                    todo.add_scaled(&self.ring, &step, &c);
                }
            }
        }
        done
    }
}

#[derive(Debug, Clone)]
pub struct Ambiguity {
    pub word: Vec<usize>,
    pub left: EnvElement,
    pub right: EnvElement,
    pub difference: EnvElement,
}

#[derive(Debug, Clone)]
pub struct AmbiguityReport {
    pub entries: Vec<Ambiguity>,
}

impl AmbiguityReport {
    pub fn unresolved(&self) -> impl Iterator<Item = &Ambiguity> {
        self.entries.iter().filter(|a| !a.difference.is_zero())
    }

    pub fn is_confluent(&self) -> bool {
        self.unresolved().next().is_none()
    }

    pub fn to_report(&self, env: &EnvAlgebra) -> Report {
        let mut rep = Report::new("ambiguities");
        for a in &self.entries {
            rep.check(a.difference.is_zero(), "overlap", || {
                let w: Vec<&str> = a.word.iter().map(|z| env.lie().name(*z)).collect();
                format!("{}: {} vs {}", w.join(" "), env.show(&a.left), env.show(&a.right))
            });
        }
        rep
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiDegree {
    pub degree: u32,
    pub size: usize,
    /// The transition matrix to the PBW basis is the identity.
    pub identity: bool,
}

#[derive(Debug, Clone)]
pub struct PhiReport {
    pub degrees: Vec<PhiDegree>,
    pub coalgebra: Report,
}

impl PhiReport {
    pub fn passed(&self) -> bool {
        self.degrees.iter().all(|d| d.identity) && self.coalgebra.passed()
    }
}
