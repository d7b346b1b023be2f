use num_complex::Complex64;
use proptest::prelude::*;

use schwarzkit::{
    basis_max_bound, d_p, det2_bound, detp_bound, general_e_bound, mean_bound, schwarz_bound,
    triangle_check, CVector, MetricParams, Mode, Order, Tolerance, TriangleKind,
};

fn entries(n: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0), n)
        .prop_map(|v| v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect())
}

fn nonzero(n: usize) -> impl Strategy<Value = CVector> {
    entries(n)
        .prop_filter("nonzero", |v| v.iter().any(|z| z.norm() > 1e-3))
        .prop_map(|v| CVector::new(v).unwrap())
}

fn pair_with_unit() -> impl Strategy<Value = (CVector, CVector, CVector)> {
    triple().prop_map(|(x, y, e)| (x, y, e.normalize().unwrap()))
}

fn triple() -> impl Strategy<Value = (CVector, CVector, CVector)> {
    (1usize..6).prop_flat_map(|n| (nonzero(n), nonzero(n), nonzero(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn schwarz_holds((x, y, _) in pair_with_unit()) {
        let r = schwarz_bound(&x, &y, &Tolerance::default()).unwrap();
        prop_assert!(r.satisfied, "{r}");
    }

    #[test]
    fn determinant_bounds_hold((x, y, e) in pair_with_unit(), p in 2.0f64..12.0) {
        let tol = Tolerance::default();
        for mode in [Mode::Modulus, Mode::RealPart] {
            prop_assert!(det2_bound(&x, &y, &e, mode, &tol).unwrap().satisfied);
            let r = detp_bound(&x, &y, &e, MetricParams::new(p, mode).unwrap(), &tol).unwrap();
            prop_assert!(r.satisfied, "{r}");
        }
    }

    #[test]
    fn basis_max_dominates_each_basis_vector((x, y, _) in pair_with_unit(), p in 2.0f64..6.0) {
        let tol = Tolerance::default();
        let n = x.dim();
        for order in [Order::PForm, Order::Quadratic] {
            let best = basis_max_bound(x.entries(), y.entries(), p, order, &tol).unwrap();
            prop_assert!(best.base.satisfied);
            for m in 0..n {
                let e = CVector::basis(n, m).unwrap();
                let g = general_e_bound(x.entries(), y.entries(), e.entries(), p, order, &tol).unwrap();
                prop_assert!(best.base.rhs >= g.base.rhs - tol.slack(best.base.rhs, g.base.rhs));
            }
            prop_assert!(mean_bound(x.entries(), y.entries(), p, order, &tol).unwrap().base.satisfied);
        }
    }

    #[test]
    fn d_p_is_projective_and_symmetric(
        (x, y, _) in pair_with_unit(),
        p in 2.0f64..8.0,
        phase in 0.0f64..std::f64::consts::TAU,
        scale in 0.1f64..10.0,
    ) {
        let tol = Tolerance::default();
        let xs = x.scale(Complex64::from_polar(scale, phase));
        let a = d_p(&x, &y, p).unwrap();
        prop_assert!((0.0..=1.0).contains(&a));
        prop_assert!((a - d_p(&y, &x, p).unwrap()).abs() <= tol.slack(a, a));
        prop_assert!((a - d_p(&xs, &y, p).unwrap()).abs() <= 1e-12);
    }

    #[test]
    fn triangle_inequalities((x, y, z) in triple(), p in 2.0f64..8.0) {
        for kind in [TriangleKind::Dp, TriangleKind::DeltaP, TriangleKind::Krein, TriangleKind::SinPhi] {
            let r = triangle_check(kind, &x, &y, &z, p, &Tolerance::default()).unwrap();
            prop_assert!(r.satisfied, "{kind:?} {r}");
        }
    }
}
