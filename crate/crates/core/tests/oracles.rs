//! Independent cross-checks of the enveloping algebra: a supermatrix
//! representation of gl(1|1) and linear algebra in the free algebra.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use superhopf::catalog;
use superhopf::coeff::CoeffRing;
use superhopf::env::{EnvAlgebra, EnvElement};
use superhopf::lie::LieSuperAlgebra;

type Mat = [[i64; 2]; 2];

fn matmul(x: &Mat, y: &Mat) -> Mat {
    let mut z = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                z[i][j] += x[i][k] * y[k][j];
            }
        }
    }
    z
}

fn unit(i: usize, j: usize) -> Mat {
    let mut m = [[0; 2]; 2];
    m[i][j] = 1;
    m
}

/// a, b, e, f as E11, E22, E12, E21 with e, f odd.
fn gl11_matrices() -> Vec<Mat> {
    vec![unit(0, 0), unit(1, 1), unit(0, 1), unit(1, 0)]
}

fn rho(u: &EnvElement, mats: &[Mat]) -> Mat {
    let mut out = [[0; 2]; 2];
    for (m, c) in u.iter() {
        let mut p = unit(0, 0);
        p[1][1] = 1;
        for z in m.word() {
            p = matmul(&p, &mats[z]);
        }
        let c = c.to_i64().unwrap();
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] += c * p[i][j];
            }
        }
    }
    out
}

#[test]
fn supermatrix_brackets_match_table() {
    let g = catalog::gl11(CoeffRing::Integers);
    let mats = gl11_matrices();
    let odd = |i: usize| i >= 2;
    for i in 0..4 {
        for j in 0..4 {
            let (xy, yx) = (matmul(&mats[i], &mats[j]), matmul(&mats[j], &mats[i]));
            let s = if odd(i) && odd(j) { 1 } else { -1 };
            let mut want = [[0; 2]; 2];
            for r in 0..2 {
                for c in 0..2 {
                    want[r][c] = xy[r][c] + s * yx[r][c];
                }
            }
            let mut got = [[0; 2]; 2];
            for (k, c) in g.bracket_basis(i, j).iter() {
                let c = c.to_i64().unwrap();
                for r in 0..2 {
                    for col in 0..2 {
                        got[r][col] += c * mats[*k][r][col];
                    }
                }
            }
            assert_eq!(got, want, "[{},{}]", g.name(i), g.name(j));
        }
    }
}

fn words(letters: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<usize>| {
                (0..letters).map(move |z| {
                    let mut w = w.clone();
                    w.push(z);
                    w
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

#[test]
fn normal_forms_respect_supermatrix_representation() {
    let env = EnvAlgebra::new(Arc::new(catalog::gl11(CoeffRing::Integers)), None).unwrap();
    let mats = gl11_matrices();
    for w in words(4, 4) {
        let nf = env.normal_form(&w, 1.into()).unwrap();
        let mut direct = unit(0, 0);
        direct[1][1] = 1;
        for z in &w {
            direct = matmul(&direct, &mats[*z]);
        }
        assert_eq!(rho(&nf, &mats), direct, "{w:?}");
    }
    // e f e acts as E12, so a stray -e term would be visible
    let efe = env.normal_form_names(&["e", "f", "e"]).unwrap();
    assert_eq!(rho(&efe, &mats), unit(0, 1));
}

type Vector = BTreeMap<Vec<usize>, BigRational>;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Reduced row echelon rows keyed by pivot word.
fn reduce(rows: &BTreeMap<Vec<usize>, Vector>, mut v: Vector) -> Vector {
    loop {
        let Some(k) = v.keys().find(|k| rows.contains_key(*k)).cloned() else { return v };
        let c = v[&k].clone();
        for (w, x) in &rows[&k] {
            let e = v.entry(w.clone()).or_insert_with(BigRational::zero);
            *e -= &c * x;
            if e.is_zero() {
                v.remove(w);
            }
        }
    }
}

fn insert(rows: &mut BTreeMap<Vec<usize>, Vector>, v: Vector) {
    let v = reduce(rows, v);
    let Some((k, c)) = v.iter().next().map(|(k, c)| (k.clone(), c.clone())) else { return };
    let inv = BigRational::one() / c;
    let v: Vector = v.into_iter().map(|(w, x)| (w, x * &inv)).collect();
    // keep rows fully reduced against the new pivot
    for row in rows.values_mut() {
        if let Some(c) = row.get(&k).cloned() {
            for (w, x) in &v {
                let e = row.entry(w.clone()).or_insert_with(BigRational::zero);
                *e -= &c * x;
                if e.is_zero() {
                    row.remove(w);
                }
            }
        }
    }
    rows.insert(k, v);
}

/// The ideal of the free algebra generated by `zw ∓ wz - [z,w]` and
/// `xx - x^<2>`, truncated to words of length `<= n`.
fn truncated_ideal(g: &LieSuperAlgebra, env: &EnvAlgebra, n: usize) -> BTreeMap<Vec<usize>, Vector> {
    let dim = g.dim();
    let mut relations: Vec<Vector> = Vec::new();
    let vec_of = |v: &superhopf::superlin::LinComb<usize>| -> Vec<(usize, BigRational)> {
        v.iter().map(|(k, c)| (*k, c.as_rational().clone())).collect()
    };
    for z in 0..dim {
        for w in 0..dim {
            let mut r = Vector::new();
            let both_odd = g.parity(z).is_odd() && g.parity(w).is_odd();
            *r.entry(vec![z, w]).or_insert_with(BigRational::zero) += q(1);
            *r.entry(vec![w, z]).or_insert_with(BigRational::zero) += q(if both_odd { 1 } else { -1 });
            for (k, c) in vec_of(g.bracket_basis(z, w)) {
                *r.entry(vec![k]).or_insert_with(BigRational::zero) -= c;
            }
            r.retain(|_, c| !c.is_zero());
            relations.push(r);
        }
    }
    let qop = env.two_operation();
    for x in g.odd_indices() {
        let mut r = Vector::new();
        r.insert(vec![x, x], q(1));
        for (k, c) in vec_of(qop.value(x - g.n_even())) {
            *r.entry(vec![k]).or_insert_with(BigRational::zero) -= c;
        }
        relations.push(r);
    }
    let mut rows = BTreeMap::new();
    for u in words(dim, n - 2) {
        for v in words(dim, n - 2 - u.len()) {
            for r in &relations {
                let shifted: Vector = r
                    .iter()
                    .map(|(w, c)| {
                        let mut full = u.clone();
                        full.extend(w);
                        full.extend(&v);
                        (full, c.clone())
                    })
                    .collect();
                insert(&mut rows, shifted);
            }
        }
    }
    rows
}

fn as_vector(u: &EnvElement) -> Vector {
    u.iter().map(|(m, c)| (m.word(), c.as_rational().clone())).collect()
}

fn check_free_algebra(env: &EnvAlgebra, n: usize) {
    let g = env.lie().clone();
    let ideal = truncated_ideal(&g, env, n);
    for w in words(g.dim(), n) {
        let nf = env.normal_form(&w, 1.into()).unwrap();
        let mut diff = as_vector(&nf);
        for (k, c) in diff.iter_mut() {
            if *k == w {
                *c -= q(1);
            }
        }
        if !diff.contains_key(&w) {
            diff.insert(w.clone(), q(-1));
        }
        diff.retain(|_, c| !c.is_zero());
        assert!(reduce(&ideal, diff).is_empty(), "{w:?}");
    }
}

#[test]
fn free_algebra_oracle_gl11() {
    let env = EnvAlgebra::new(Arc::new(catalog::gl11(CoeffRing::Integers)), None).unwrap();
    check_free_algebra(&env, 3);
    // e f e = a e + b e, and not a e + b e - e
    let ideal = truncated_ideal(env.lie(), &env, 3);
    let (a, b, e, f) = (0, 1, 2, 3);
    let mut v: Vector = [(vec![e, f, e], q(1)), (vec![a, e], q(-1)), (vec![b, e], q(-1))].into();
    assert!(reduce(&ideal, v.clone()).is_empty());
    v.insert(vec![e], q(1));
    assert!(!reduce(&ideal, v).is_empty());
}

#[test]
fn free_algebra_oracle_osp12() {
    let env = EnvAlgebra::new(Arc::new(catalog::osp12(CoeffRing::Integers)), None).unwrap();
    check_free_algebra(&env, 3);
}
