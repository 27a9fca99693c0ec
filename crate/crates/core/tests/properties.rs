mod common;

use proptest::prelude::*;
use vortex_atlas::kite::{solve_kite, KitePoint};
use vortex_atlas::vortexcore::{certify, PlanarConfiguration};

fn point() -> impl Strategy<Value = [f64; 2]> {
    [-5.0f64..5.0, -5.0f64..5.0]
}

fn planar() -> impl Strategy<Value = [[f64; 2]; 4]> {
    [point(), point(), point(), point()].prop_filter("general position", common::in_general_position)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn cayley_menger_gradient_is_area_product(p in planar()) {
        prop_assert!(common::ds_drho_error(&p) < 1e-6);
    }

    #[test]
    fn oriented_areas_sum_to_zero(p in [point(), point(), point(), point()]) {
        prop_assert!(common::area_sum_relative(&p) < 1e-14);
    }

    #[test]
    fn certificates_are_similarity_invariant(
        theta in 0.0f64..std::f64::consts::TAU,
        s in 0.1f64..10.0,
        dx in -5.0f64..5.0,
        dy in -5.0f64..5.0,
        g in prop_oneof![-0.9f64..-0.1, 0.1f64..3.0],
    ) {
        let report = solve_kite(g, 1e-10).unwrap();
        for sol in &report.solutions {
            let base = sol.point.embed(g);
            let moved = common::transform(&base, theta, s, dx, dy);
            let (a, b) = (certify(&base, 1e-10).unwrap(), certify(&moved, 1e-10).unwrap());
            prop_assert_eq!(a.pass, b.pass);
            prop_assert!((a.residual_motion - b.residual_motion).abs() < 1e-9);
            prop_assert!((a.lambda - b.lambda * s * s).abs() < 1e-8 * (1.0 + a.lambda.abs()));
        }
    }

    #[test]
    fn non_equilibria_stay_rejected_under_similarity(
        k in 0.3f64..3.0,
        l in 0.3f64..3.0,
        theta in 0.0f64..std::f64::consts::TAU,
        s in 0.1f64..10.0,
    ) {
        let cfg: PlanarConfiguration = KitePoint::new(k, l).embed(0.5);
        let cfg = PlanarConfiguration::new(
            [cfg.positions[0], cfg.positions[1], [0.37, cfg.positions[2][1]], cfg.positions[3]],
            cfg.gamma,
        );
        let a = certify(&cfg, 1e-10).unwrap();
        let b = certify(&common::transform(&cfg, theta, s, 0.0, 0.0), 1e-10).unwrap();
        prop_assert!(!a.pass && !b.pass);
        prop_assert!((a.residual_motion - b.residual_motion).abs() < 1e-9 * (1.0 + a.residual_motion));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn sturm_matches_bisection_and_descartes(coeffs in prop::collection::vec(-9i64..=9, 2..=8)) {
        if let Some(c) = common::check_roots(&coeffs) {
            prop_assert!(c.consistent(), "{:?} for {:?}", c, coeffs);
        }
    }
}
