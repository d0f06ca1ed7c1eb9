use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar the library is generic over.
///
/// Besides the usual float operations it carries the few precision
/// dependent thresholds the numerics need.
pub trait Real: Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static {
    /// Relative residual `|f(r) - t| <= tol * (1 + |t|)` accepted when inverting a generator.
    fn inversion_tol() -> Self;

    /// Magnitude below which a first derivative is treated as vanishing.
    fn tiny() -> Self;

    /// Relative spread below which a sampled Schwarzian counts as constant.
    fn flat_tol() -> Self;

    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    fn inversion_tol() -> Self {
        1e-13
    }
    fn tiny() -> Self {
        1e-14
    }
    fn flat_tol() -> Self {
        1e-6
    }
}

impl Real for f32 {
    fn inversion_tol() -> Self {
        2e-6
    }
    fn tiny() -> Self {
        1e-6
    }
    fn flat_tol() -> Self {
        1e-2
    }
}

pub(crate) fn median<T: Real>(values: &[T]) -> T {
    let mut v: Vec<T> = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let n = v.len();
    if n == 0 {
        return T::nan();
    }
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / T::lit(2.0)
    }
}
