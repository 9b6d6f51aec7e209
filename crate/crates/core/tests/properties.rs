use proptest::prelude::*;

use tubular_lk::config::RunConfig;
use tubular_lk::curvature::{
    adjudicate, binomial, lk_gauss_map_numeric, mean_curvatures, symmetric_functions, NumericOptions, TermVerdict,
};
use tubular_lk::frenet::{integrate_frame, Curvature, CurvatureFunctions, CurveCase, FrenetFrame};
use tubular_lk::grid::HYPERBOLIC_HALF_WIDTH;
use tubular_lk::minkowski::{inner, Vec4};
use tubular_lk::tube::Family;
use tubular_lk::TubeSpec;

fn family() -> impl Strategy<Value = Family> {
    (0..Family::ALL.len()).prop_map(|i| Family::ALL[i])
}

fn case() -> impl Strategy<Value = CurveCase> {
    (0..CurveCase::ALL.len()).prop_map(|i| CurveCase::ALL[i])
}

fn curvatures() -> impl Strategy<Value = CurvatureFunctions> {
    (0.0f64..0.4, -0.1f64..0.1, 0.5f64..2.0, -0.5f64..0.5, -0.5f64..0.5).prop_map(|(a, b, omega, k2, k3)| {
        CurvatureFunctions::new(
            Curvature::Sinusoid { a, b, omega },
            Curvature::Constant(k2),
            Curvature::Constant(k3),
        )
    })
}

// (s, t, w) inside the curve range [0, 2] and the family's angle domain.
fn parameters(family: Family) -> impl Strategy<Value = (f64, f64, f64)> {
    let h = HYPERBOLIC_HALF_WIDTH;
    let (lo, hi) = if family.is_hyperbolic() { (-h, h) } else { (0.0, std::f64::consts::TAU) };
    (0.05f64..1.95, lo..hi, lo..hi)
}

fn tube(family: Family, k: &CurvatureFunctions, r: f64) -> TubeSpec {
    let curve = integrate_frame(k, (0.0, 2.0), Vec4::ZERO, FrenetFrame::standard(family.curve_case()), 1e-3).unwrap();
    TubeSpec::new(curve, r, family).unwrap()
}

fn point() -> impl Strategy<Value = (Family, CurvatureFunctions, f64, (f64, f64, f64))> {
    (family(), curvatures(), 0.1f64..1.0)
        .prop_flat_map(|(f, k, r)| (Just(f), Just(k), Just(r), parameters(f)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn frames_stay_orthonormal_and_unit_speed(case in case(), k in curvatures(), len in 0.5f64..6.0) {
        let curve = integrate_frame(&k, (0.0, len), Vec4::ZERO, FrenetFrame::standard(case), 1e-3).unwrap();
        prop_assert!(curve.max_orthonormality_drift() < 1e-8);
        prop_assert!(curve.max_unit_speed_drift() < 1e-8);
        prop_assert!(curve.max_velocity_defect() < 1e-8);
    }

    #[test]
    fn tube_normal_foliation_and_curvature_product((family, k, r, (s, t, w)) in point()) {
        let spec = tube(family, &k, r);
        prop_assume!(spec.is_regular(s, t, w));
        let pt = spec.evaluate(s, t, w).unwrap();
        let eps = family.normal_sign();
        prop_assert!((inner(&pt.normal, &pt.normal) - eps).abs() < 1e-10);
        let radial = pt.position - pt.center;
        prop_assert!((inner(&radial, &radial) - eps * r * r).abs() < 1e-10);
        let kappa = spec.principal_curvatures(s, t, w).unwrap();
        let a = symmetric_functions(kappa);
        let product = kappa[0] * kappa[1] * kappa[2];
        prop_assert!((product + a.a3).abs() <= 1e-9 * product.abs().max(1.0));
        let g = spec.first_fundamental_form(s, t, w).unwrap();
        let fd = spec.fd_metric(s, t, w, 1e-5).unwrap();
        prop_assert!(g.max_rel_diff(&fd) < 1e-6);
    }

    #[test]
    fn mean_curvature_identity(k0 in -5.0f64..5.0, k1 in -5.0f64..5.0, k2 in -5.0f64..5.0, timelike in any::<bool>()) {
        let eps = if timelike { -1.0 } else { 1.0 };
        let a = symmetric_functions([k0, k1, k2]);
        let h = mean_curvatures(&a, eps);
        for k in 1..=3usize {
            let lhs = binomial(3, k as u64) as f64 * h.get(k);
            let rhs = (-eps).powi(k as i32) * a.get(k);
            prop_assert!((lhs - rhs).abs() <= 4.0 * f64::EPSILON * rhs.abs());
        }
    }

    #[test]
    fn gradient_part_is_tangent((family, k, r, (s, t, w)) in point(), order in 1u8..=2) {
        let spec = tube(family, &k, r);
        prop_assume!(spec.regularity(s, t, w).abs() > 0.05);
        let res = lk_gauss_map_numeric(&spec, order, s, t, w, &NumericOptions::default());
        prop_assume!(res.is_ok());
        let res = res.unwrap();
        let normal = spec.unit_normal(s, t, w).unwrap();
        let tangential = res.tangential.unwrap();
        prop_assert!(inner(&tangential, &normal).abs() <= 1e-8 * tangential.euclidean_norm().max(1.0));
    }

    #[test]
    fn flat_timelike_l1_scales_as_inverse_cube(r in 0.1f64..1.0, (s, t, w) in parameters(Family::Timelike)) {
        prop_assume!(w.cos().abs() > 0.05);
        let k = CurvatureFunctions::new(Curvature::Zero, Curvature::Constant(0.3), Curvature::Constant(0.2));
        let opts = NumericOptions::default();
        let small = lk_gauss_map_numeric(&tube(Family::Timelike, &k, r), 1, s, t, w, &opts).unwrap();
        let large = lk_gauss_map_numeric(&tube(Family::Timelike, &k, 2.0 * r), 1, s, t, w, &opts).unwrap();
        for i in 0..4 {
            if small.frenet[i].abs() > 1e-6 {
                prop_assert!((small.frenet[i] / large.frenet[i] - 8.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn pipeline_agrees_or_records_a_discrepancy((family, k, r, (s, t, w)) in point(), order in 1u8..=2) {
        let spec = tube(family, &k, r);
        prop_assume!(spec.regularity(s, t, w).abs() > 1e-3);
        let terms = adjudicate(&spec, order, &[(s, t, w)], &NumericOptions::default(), 1e-6);
        prop_assume!(terms.is_ok());
        for term in terms.unwrap() {
            let agrees = term.max_scaled_diff <= 1e-6;
            prop_assert_eq!(term.verdict == TermVerdict::Agreement, agrees);
            if term.worst_margin.abs() > 0.05 {
                prop_assert!(agrees, "{:?}", term);
            }
        }
    }

    #[test]
    fn config_round_trips(r in 0.05f64..3.0, seed in any::<u64>(), n in 2usize..30) {
        let mut config = RunConfig { r, seed, ..RunConfig::default() };
        config.grid.t = n;
        let text = serde_json::to_string(&config).unwrap();
        prop_assert_eq!(RunConfig::from_json_str(&text).unwrap(), config);
    }
}
