//! The fundamental system `S_gamma`, `C_gamma` of `F'' = gamma F` and its linear combinations.

use super::c4::C4Function;
use super::interval::Interval;
use super::jet::Jet;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Below this value of `|gamma x^2|` the truncated power series is used.
pub const SERIES_SWITCH: f64 = 1e-4;
const SERIES_TERMS: usize = 8;
const BISECTION_STEPS: usize = 128;

/// Returns `(S_gamma(x), C_gamma(x))`.
pub fn eval_sc<T: Real>(gamma: T, x: T) -> (T, T) {
    let y = gamma * x * x;
    if y.abs() < T::lit(SERIES_SWITCH) {
        // Horner on y: S/x = sum y^k/(2k+1)!, C = sum y^k/(2k)!
        let mut s = T::one();
        let mut c = T::one();
        for k in (1..SERIES_TERMS).rev() {
            let two_k = T::from_usize(2 * k).unwrap();
            s = T::one() + y * s / (two_k * (two_k + T::one()));
            c = T::one() + y * c / ((two_k - T::one()) * two_k);
        }
        (x * s, c)
    } else if gamma < T::zero() {
        let w = (-gamma).sqrt();
        let (s, c) = (w * x).sin_cos();
        (s / w, c)
    } else {
        let w = gamma.sqrt();
        let t = w * x;
        (t.sinh() / w, t.cosh())
    }
}

pub fn eval_sgamma<T: Real>(gamma: T, x: T) -> T {
    eval_sc(gamma, x).0
}

pub fn eval_cgamma<T: Real>(gamma: T, x: T) -> T {
    eval_sc(gamma, x).1
}

/// `a S_gamma + b C_gamma` restricted to `domain`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaSolution<T> {
    pub gamma: T,
    pub a: T,
    pub b: T,
    pub domain: Interval<T>,
}

impl<T: Real> GammaSolution<T> {
    pub fn new(gamma: T, a: T, b: T, domain: Interval<T>) -> Self {
        Self { gamma, a, b, domain }
    }

    /// `(F, F')`; higher orders follow from `F'' = gamma F`.
    pub fn value_and_slope(&self, x: T) -> (T, T) {
        let (s, c) = eval_sc(self.gamma, x);
        (self.a * s + self.b * c, self.a * c + self.b * self.gamma * s)
    }

    pub fn scaled(&self, k: T) -> Self {
        Self { a: self.a * k, b: self.b * k, ..*self }
    }

    pub fn with_domain(&self, domain: Interval<T>) -> Self {
        Self { domain, ..*self }
    }

    fn coeff_norm(&self) -> T {
        self.a.abs() + self.b.abs()
    }
}

impl<T: Real> C4Function<T> for GammaSolution<T> {
    fn domain(&self) -> Interval<T> {
        self.domain
    }

    fn jet(&self, x: T) -> Jet<T> {
        let (f, df) = self.value_and_slope(x);
        let g = self.gamma;
        Jet([f, df, g * f, g * df, g * g * f])
    }
}

/// Two solutions of the same equation together with their (constant) Wronskian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WronskianPair<T> {
    pub first: GammaSolution<T>,
    pub second: GammaSolution<T>,
    pub wronskian: T,
}

impl<T: Real> WronskianPair<T> {
    pub fn new(first: GammaSolution<T>, second: GammaSolution<T>) -> Result<Self> {
        if first.gamma != second.gamma || first.domain != second.domain {
            return Err(Error::InvalidInput("wronskian pair needs a common gamma and domain".into()));
        }
        // u'v - uv' = (a d - b c)(C^2 - gamma S^2) = a d - b c
        let wronskian = first.a * second.b - first.b * second.a;
        Ok(Self { first, second, wronskian })
    }

    /// `|W| > 1e-12 (|a1|+|b1|)(|a2|+|b2|)`.
    pub fn is_independent(&self) -> bool {
        let scale = self.first.coeff_norm() * self.second.coeff_norm();
        self.wronskian.abs() > T::lit(1e-12) * scale
    }

    /// `u'v - uv'` evaluated pointwise.
    pub fn evaluate_at(&self, x: T) -> T {
        let (u, du) = self.first.value_and_slope(x);
        let (v, dv) = self.second.value_and_slope(x);
        du * v - u * dv
    }
}

/// Maximal open subinterval of `v.domain` containing `anchor` on which `v > 0`.
pub fn positive_subinterval<T: Real>(v: &GammaSolution<T>, anchor: T) -> Result<Interval<T>> {
    v.domain.check(anchor)?;
    if v.value(anchor) <= T::zero() {
        return Err(Error::AnchorNotPositive { anchor: anchor.as_f64() });
    }
    let (lo, hi) = (v.domain.lo(), v.domain.hi());
    if v.gamma < T::zero() {
        // c S + d C = R sin(w x + theta), zeros at (k pi - theta) / w
        let w = (-v.gamma).sqrt();
        let theta = v.b.atan2(v.a / w);
        let pi = T::PI();
        let k = ((w * anchor + theta) / pi).floor();
        let left = (k * pi - theta) / w;
        let right = ((k + T::one()) * pi - theta) / w;
        return Interval::new(lo.max(left), hi.min(right));
    }
    // At most one real zero: a sign check at the endpoint decides, bisection locates it.
    let locate = |mut inside: T, mut outside: T| {
        for _ in 0..BISECTION_STEPS {
            let mid = inside + (outside - inside) / T::lit(2.0);
            if mid == inside || mid == outside {
                break;
            }
            if v.value(mid) > T::zero() {
                inside = mid;
            } else {
                outside = mid;
            }
        }
        outside
    };
    let right = if v.value(hi) > T::zero() { hi } else { locate(anchor, hi) };
    let left = if v.value(lo) > T::zero() { lo } else { locate(anchor, lo) };
    Interval::new(left, right)
}

/// `outer` contains `inner` up to a few ulps at each end (bisected zeros land within one ulp).
pub fn covers<T: Real>(outer: &Interval<T>, inner: &Interval<T>) -> bool {
    let slack = |x: T| T::lit(16.0) * T::epsilon() * (T::one() + x.abs());
    outer.lo() <= inner.lo() + slack(inner.lo()) && outer.hi() >= inner.hi() - slack(inner.hi())
}

/// `f = u / v` with derivatives from the exact quotient rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioFunction<T> {
    pub u: GammaSolution<T>,
    pub v: GammaSolution<T>,
    pub wronskian: T,
}

impl<T: Real> C4Function<T> for RatioFunction<T> {
    fn domain(&self) -> Interval<T> {
        self.v.domain
    }

    fn jet(&self, x: T) -> Jet<T> {
        self.u.jet(x) / self.v.jet(x)
    }
}

/// Builds `u / v`, checking independence and positivity of `v` on the common domain.
pub fn ratio_function<T: Real>(u: GammaSolution<T>, v: GammaSolution<T>) -> Result<RatioFunction<T>> {
    let pair = WronskianPair::new(u, v)?;
    if !pair.is_independent() {
        return Err(Error::NotIndependent { wronskian: pair.wronskian.as_f64() });
    }
    let domain = v.domain;
    let mid = domain.midpoint();
    let positive =
        positive_subinterval(&v, mid).map_err(|_| Error::NotPositive { what: "v".into(), at: mid.as_f64() })?;
    if !covers(&positive, &domain) {
        let at = if positive.lo() > domain.lo() { positive.lo() } else { positive.hi() };
        return Err(Error::NotPositive { what: "v".into(), at: at.as_f64() });
    }
    Ok(RatioFunction { u, v, wronskian: pair.wronskian })
}
