use approx::assert_relative_eq;
use bajra_core::functions::{builtin, eval_sc, ratio_function, GammaSolution, Interval, WronskianPair};
use bajra_core::invariance::recover_uv;
use bajra_core::means::{recover_weight, BajraktarevicMean};
use proptest::prelude::*;

fn unit() -> Interval<f64> {
    Interval::new(-1.0, 1.0).unwrap()
}

proptest! {
    #[test]
    fn pythagorean_identity(gamma in -4.0f64..4.0, x in -1.0f64..1.0) {
        let (s, c) = eval_sc(gamma, x);
        prop_assert!((c * c - gamma * s * s - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn wronskian_is_constant(
        gamma in -2.0f64..2.0,
        a in -2.0f64..2.0, b in -2.0f64..2.0, c in -2.0f64..2.0, d in -2.0f64..2.0,
        x in -1.0f64..1.0,
    ) {
        let u = GammaSolution::new(gamma, a, b, unit());
        let v = GammaSolution::new(gamma, c, d, unit());
        let pair = WronskianPair::new(u, v).unwrap();
        let scale = 1.0 + (a.abs() + b.abs()) * (c.abs() + d.abs());
        prop_assert!((pair.evaluate_at(x) - pair.wronskian).abs() <= 1e-12 * scale);
    }

    #[test]
    fn recovery_is_a_fixed_point(
        gamma in -1.5f64..1.5,
        a in -2.0f64..2.0, b in -2.0f64..2.0, c in -0.3f64..0.3,
        x0 in -0.5f64..0.5,
    ) {
        prop_assume!((a - b * c).abs() > 0.1);
        let u = GammaSolution::new(gamma, a, b, unit());
        let v = GammaSolution::new(gamma, c, 1.0, unit());
        let f = ratio_function(u, v);
        prop_assume!(f.is_ok());
        let f = f.unwrap();
        let r = recover_uv(&f, x0).unwrap();
        prop_assert!((r.gamma - gamma).abs() <= 1e-8);
        for x in r.positive.interior_grid(9) {
            let ratio = r.u.value_and_slope(x).0 / r.v.value_and_slope(x).0;
            prop_assert!((ratio - bajra_core::functions::C4Function::value(&f, x)).abs() <= 1e-9);
        }
    }

    #[test]
    fn means_are_strict_and_reflexive(x in -0.95f64..0.95, y in -0.95f64..0.95, lam in -1.0f64..1.0) {
        let d = unit();
        let m = BajraktarevicMean::from_parts(builtin::tanh(d), builtin::exp(lam, d), builtin::quadratic(0.5, d), d).unwrap();
        let v = m.evaluate(x, y).unwrap();
        prop_assert_eq!(m.evaluate(x, x).unwrap(), x);
        if (x - y).abs() > 1e-9 {
            prop_assert!(v > x.min(y) && v < x.max(y));
        }
    }

    #[test]
    fn weight_ratio_round_trips(x in -0.9f64..0.9, y in -0.9f64..0.9, lam in -1.0f64..1.0) {
        prop_assume!((x - y).abs() > 0.05);
        let d = unit();
        let p2 = builtin::quadratic(0.3, d);
        let f = builtin::tan(d).unwrap();
        let m = BajraktarevicMean::from_parts(f.clone(), builtin::exp(lam, d), p2.clone(), d).unwrap();
        let got = recover_weight(|a, b| m.evaluate(a, b), &*f, (lam * x).exp(), x, y).unwrap();
        assert_relative_eq!(got, 1.0 + 0.3 * y * y, max_relative = 1e-8);
    }
}
