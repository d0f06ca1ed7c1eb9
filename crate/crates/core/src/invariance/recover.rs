use crate::error::{Error, Result};
use crate::functions::{eval_sc, positive_subinterval, schwarzian, C4Function, GammaSolution, Interval, WronskianPair};
use crate::scalar::{median, Real};

/// Points at which the Schwarzian is sampled to decide constancy.
pub const SCHWARZIAN_SAMPLES: usize = 33;

/// Solutions `u, v` of `F'' = gamma F` with `f = u / v`, recovered from `f`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecoveredPair<T> {
    pub gamma: T,
    pub u: GammaSolution<T>,
    pub v: GammaSolution<T>,
    /// `u'v - uv'`, equal to `f'(x0)`.
    pub wronskian: T,
    /// Largest open subinterval around `x0` where `v > 0`.
    pub positive: Interval<T>,
    /// `max |f - u/v|` sampled on `positive`.
    pub max_residual: T,
    /// `max - min` of the sampled Schwarzian.
    pub schwarzian_spread: T,
}

/// Coefficients `(a, b)` in the `S_gamma, C_gamma` basis of the solution with
/// `F(x0) = value`, `F'(x0) = slope`.
///
/// Works in the shifted basis `S_gamma(x - x0), C_gamma(x - x0)`, where the initial
/// conditions read off directly, then applies the addition rules
/// `S(x - x0) = S(x) C(x0) - C(x) S(x0)` and `C(x - x0) = C(x) C(x0) - gamma S(x) S(x0)`.
pub fn coefficients_from_initial<T: Real>(gamma: T, x0: T, value: T, slope: T) -> (T, T) {
    let (s0, c0) = eval_sc(gamma, x0);
    (slope * c0 - value * gamma * s0, value * c0 - slope * s0)
}

/// Recovers `(gamma, u, v)` with `S(f) = -2 gamma` and
/// `u(x0) = f(x0)`, `u'(x0) = f'(x0) - f''(x0) f(x0) / (2 f'(x0))`,
/// `v(x0) = 1`, `v'(x0) = -f''(x0) / (2 f'(x0))`.
pub fn recover_uv<T: Real>(f: &dyn C4Function<T>, x0: T) -> Result<RecoveredPair<T>> {
    let domain = f.domain();
    domain.check(x0)?;
    let samples =
        domain.chebyshev_nodes(SCHWARZIAN_SAMPLES).into_iter().map(|x| schwarzian(f, x)).collect::<Result<Vec<T>>>()?;
    let mid = median(&samples);
    let (lo, hi) = samples.iter().fold((T::infinity(), T::neg_infinity()), |(lo, hi), &s| (lo.min(s), hi.max(s)));
    let spread = hi - lo;
    let threshold = T::flat_tol() * (T::one() + mid.abs());
    if !(spread < threshold) {
        return Err(Error::NonConstantSchwarzian { spread: spread.as_f64(), threshold: threshold.as_f64() });
    }

    let jet = f.jet(x0);
    let (f0, f1, f2) = (jet.d(0), jet.d(1), jet.d(2));
    if f1.abs() < T::tiny() {
        return Err(Error::VanishingDerivative { x: x0.as_f64() });
    }
    let gamma = -schwarzian(f, x0)? / T::lit(2.0);
    let half_ratio = f2 / (T::lit(2.0) * f1);
    let (ua, ub) = coefficients_from_initial(gamma, x0, f0, f1 - half_ratio * f0);
    let (va, vb) = coefficients_from_initial(gamma, x0, T::one(), -half_ratio);
    let u = GammaSolution::new(gamma, ua, ub, domain);
    let v = GammaSolution::new(gamma, va, vb, domain);
    let wronskian = WronskianPair::new(u, v)?.wronskian;

    let positive = positive_subinterval(&v, x0)?;
    let max_residual = positive
        .interior_grid(SCHWARZIAN_SAMPLES)
        .into_iter()
        .map(|x| (f.value(x) - u.value(x) / v.value(x)).abs())
        .fold(T::zero(), T::max);
    Ok(RecoveredPair {
        gamma,
        u: u.with_domain(positive),
        v: v.with_domain(positive),
        wronskian,
        positive,
        max_residual,
        schwarzian_spread: spread,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{builtin, ratio_function};

    fn dom(lo: f64, hi: f64) -> Interval<f64> {
        Interval::new(lo, hi).unwrap()
    }

    #[test]
    fn recovers_tan() {
        let tan = builtin::tan(dom(-0.5, 0.5)).unwrap();
        let r = recover_uv(tan.as_ref(), 0.0).unwrap();
        assert_eq!(r.gamma, -1.0);
        assert_eq!((r.u.a, r.u.b), (1.0, 0.0));
        assert_eq!((r.v.a, r.v.b), (0.0, 1.0));
        assert!(r.max_residual < 1e-11);
        assert_eq!(r.wronskian, 1.0);
    }

    #[test]
    fn recovers_identity() {
        let id = builtin::identity(dom(-1.0, 1.0));
        let r = recover_uv(id.as_ref(), 0.0).unwrap();
        assert_eq!(r.gamma, 0.0);
        assert_eq!((r.u.a, r.u.b, r.v.a, r.v.b), (1.0, 0.0, 0.0, 1.0));
    }

    #[test]
    fn rejects_cubic() {
        let c = builtin::cubic(dom(-1.0, 1.0));
        assert!(matches!(recover_uv(c.as_ref(), 0.0), Err(Error::NonConstantSchwarzian { .. })));
    }

    #[test]
    fn off_center_anchor_round_trip() {
        let d = dom(-0.5, 2.5);
        let u = GammaSolution::new(1.5, 0.7, -0.4, d);
        let v = GammaSolution::new(1.5, 0.2, 1.1, d);
        let f = ratio_function(u, v).unwrap();
        let r = recover_uv(&f, 2.0).unwrap();
        assert!((r.gamma - 1.5).abs() < 1e-10);
        assert!(r.max_residual < 1e-10);
        assert!((r.wronskian - f.eval(1, 2.0)).abs() < 1e-12);
        // projective equivalence: (u, v) = k (u_rec, v_rec)
        let k = v.b / r.v.b;
        assert!((r.u.a * k - u.a).abs() < 1e-9 && (r.v.a * k - v.a).abs() < 1e-9);
    }

    #[test]
    fn initial_value_coefficients() {
        for &(g, x0) in &[(-1.3, 0.7), (0.0, -2.0), (2.0, 1.1)] {
            let (a, b) = coefficients_from_initial(g, x0, 0.3, -1.7);
            let s = GammaSolution::new(g, a, b, dom(-5.0, 5.0));
            let (v, dv) = s.value_and_slope(x0);
            assert!((v - 0.3).abs() < 1e-13 && (dv + 1.7).abs() < 1e-13);
        }
    }
}
