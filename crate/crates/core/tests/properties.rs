use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use superhopf::catalog;
use superhopf::coeff::{CoeffRing, Scalar};
use superhopf::env::{EnvAlgebra, EnvElement, PbwMonomial};
use superhopf::ext::{ExtMonomial, ExteriorAlgebra};
use superhopf::hcp::{build_a, HarishChandraPair, SgBasis, SuperGroupAlgebra};
use superhopf::hopfpair::{self, HopfStructure};
use superhopf::lie::check_two_operation;
use superhopf::superlin::LinComb;

fn gl11() -> &'static EnvAlgebra {
    static ENV: OnceLock<EnvAlgebra> = OnceLock::new();
    ENV.get_or_init(|| EnvAlgebra::new(Arc::new(catalog::gl11(CoeffRing::Integers)), None).unwrap())
}

fn osp12() -> &'static EnvAlgebra {
    static ENV: OnceLock<EnvAlgebra> = OnceLock::new();
    ENV.get_or_init(|| EnvAlgebra::new(Arc::new(catalog::osp12(CoeffRing::Integers)), None).unwrap())
}

fn group() -> &'static SuperGroupAlgebra {
    static A: OnceLock<SuperGroupAlgebra> = OnceLock::new();
    A.get_or_init(|| build_a(&HarishChandraPair::gl11(CoeffRing::Integers)).unwrap())
}

/// Short random elements of U(g): up to three words of length up to three.
fn element(env: &'static EnvAlgebra) -> impl Strategy<Value = EnvElement> {
    let dim = env.lie().dim();
    prop::collection::vec((prop::collection::vec(0..dim, 0..=3), -3i64..=3), 1..=3).prop_map(move |terms| {
        let ring = env.ring();
        let mut out = LinComb::zero();
        for (w, c) in terms {
            out.add_assign(ring, &env.normal_form(&w, ring.from_i64(c)).unwrap());
        }
        out
    })
}

fn sg_basis() -> impl Strategy<Value = SgBasis> {
    (prop::collection::vec(-2i64..=2, 2), 0u64..4).prop_map(|(l, s)| SgBasis::new(l, s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn env_associative(u in element(gl11()), v in element(gl11()), w in element(gl11())) {
        let env = gl11();
        let left = env.multiply(&env.multiply(&u, &v).unwrap(), &w).unwrap();
        let right = env.multiply(&u, &env.multiply(&v, &w).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn osp_coproduct_multiplicative(u in element(osp12()), v in element(osp12())) {
        let env = osp12();
        let lhs = env.coproduct(&env.multiply(&u, &v).unwrap()).unwrap();
        let rhs = hopfpair::tensor_mul(env, &env.coproduct(&u).unwrap(), &env.coproduct(&v).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn antipode_anti_multiplicative(u in element(gl11()), v in element(gl11())) {
        // S(uv) = Σ ± S(v)S(u) on homogeneous parts
        let env = gl11();
        let ring = env.ring();
        let mut rhs = LinComb::zero();
        for (a, x) in u.iter() {
            for (b, y) in v.iter() {
                let sign = env.parity(a).is_odd() && env.parity(b).is_odd();
                let term = env.multiply(&env.antipode_monomial(b), &env.antipode_monomial(a)).unwrap();
                rhs.add_scaled(ring, &term, &ring.signed(sign, ring.mul(x, y)));
            }
        }
        prop_assert_eq!(env.antipode(&env.multiply(&u, &v).unwrap()).unwrap(), rhs);
    }

    #[test]
    fn normal_form_is_idempotent(u in element(osp12())) {
        let env = osp12();
        let again = u.apply(env.ring(), |m: &PbwMonomial| env.normal_form(&m.word(), env.ring().one()).unwrap());
        prop_assert_eq!(again, u);
    }

    #[test]
    fn group_algebra_bialgebra(a in sg_basis(), b in sg_basis()) {
        let g = group();
        let lhs = hopfpair::comul(g, &g.product(&a, &b));
        let rhs = hopfpair::tensor_mul(g, &g.coproduct(&a), &g.coproduct(&b));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn group_algebra_supercommutative(a in sg_basis(), b in sg_basis()) {
        let g = group();
        let sign = a.parity().is_odd() && b.parity().is_odd();
        let ring = g.ring();
        prop_assert_eq!(g.product(&a, &b), g.product(&b, &a).scale(ring, &ring.signed(sign, ring.one())));
    }

    #[test]
    fn exterior_wedge_associative(s in 0u64..16, t in 0u64..16, r in 0u64..16) {
        let ext = ExteriorAlgebra::standard(CoeffRing::Integers, "v", 4).unwrap();
        let m = |x: u64| LinComb::term(ExtMonomial(x), Scalar::from(1));
        let left = ext.wedge(&ext.wedge(&m(s), &m(t)).unwrap(), &m(r)).unwrap();
        let right = ext.wedge(&m(s), &ext.wedge(&m(t), &m(r)).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn two_operation_laws_mod_4(seed in any::<u64>()) {
        let ring = CoeffRing::modulo(4).unwrap();
        let g = catalog::osp12(ring.clone());
        let gz = catalog::osp12(CoeffRing::Integers);
        let qz = gz.derive_two_operation().unwrap();
        let (_, q) = gz.base_change(&qz, &ring, superhopf::lie::RingMap::IntegersToResidues).unwrap();
        prop_assert!(check_two_operation(&g, &q, seed, 10).passed());
    }

    #[test]
    fn scalar_ring_laws(a in -50i64..50, b in -50i64..50, c in -50i64..50, n in 2i64..12) {
        for ring in [CoeffRing::Integers, CoeffRing::Rationals, CoeffRing::modulo(n).unwrap()] {
            let (x, y, z) = (ring.from_i64(a), ring.from_i64(b), ring.from_i64(c));
            prop_assert_eq!(ring.mul(&x, &ring.add(&y, &z)), ring.add(&ring.mul(&x, &y), &ring.mul(&x, &z)));
            prop_assert_eq!(ring.add(&x, &ring.neg(&x)), ring.zero());
        }
    }
}
