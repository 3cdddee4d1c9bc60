//! Built-in example algebras.
//!
//! Tables come from matrix realizations: gl(1|1) with `a = E11, b = E22,
//! e = E12, f = E21`, and osp(1|2) inside gl(2|1) with `E = E12, F = E21,
//! h = E11 - E22, x = E13 + E32, y = E23 - E31`.

use crate::coeff::CoeffRing;
use crate::lie::LieSuperAlgebra;

pub fn gl11(ring: CoeffRing) -> LieSuperAlgebra {
    LieSuperAlgebra::from_named(
        ring,
        &["a", "b"],
        &["e", "f"],
        &[
            ("a", "e", &[(1, "e")]),
            ("a", "f", &[(-1, "f")]),
            ("b", "e", &[(-1, "e")]),
            ("b", "f", &[(1, "f")]),
            ("e", "f", &[(1, "a"), (1, "b")]),
        ],
    )
    .expect("gl(1|1) table is well formed")
}

pub fn osp12(ring: CoeffRing) -> LieSuperAlgebra {
    osp12_with_square(ring, 2)
}

/// osp(1|2) with `[x,x] = E` instead of `2E`; not admissible over Z.
pub fn osp12_scaled(ring: CoeffRing) -> LieSuperAlgebra {
    osp12_with_square(ring, 1)
}

fn osp12_with_square(ring: CoeffRing, xx: i64) -> LieSuperAlgebra {
    LieSuperAlgebra::from_named(
        ring,
        &["E", "F", "h"],
        &["x", "y"],
        &[
            ("h", "E", &[(2, "E")]),
            ("h", "F", &[(-2, "F")]),
            ("E", "F", &[(1, "h")]),
            ("h", "x", &[(1, "x")]),
            ("h", "y", &[(-1, "y")]),
            ("E", "y", &[(1, "x")]),
            ("F", "x", &[(1, "y")]),
            ("x", "x", &[(xx, "E")]),
            ("x", "y", &[(-1, "h")]),
            ("y", "y", &[(-2, "F")]),
        ],
    )
    .expect("osp(1|2) table is well formed")
}

pub fn sl2(ring: CoeffRing) -> LieSuperAlgebra {
    LieSuperAlgebra::from_named(
        ring,
        &["E", "F", "h"],
        &[],
        &[
            ("h", "E", &[(2, "E")]),
            ("h", "F", &[(-2, "F")]),
            ("E", "F", &[(1, "h")]),
        ],
    )
    .expect("sl2 table is well formed")
}

/// Rank-one torus with two odd generators of weight zero and `[e,f] = c`.
pub fn heisenberg11(ring: CoeffRing) -> LieSuperAlgebra {
    LieSuperAlgebra::from_named(ring, &["c"], &["e", "f"], &[("e", "f", &[(1, "c")])])
        .expect("table is well formed")
}
