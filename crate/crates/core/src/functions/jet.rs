use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::scalar::Real;

/// Number of stored derivative orders (value through fourth derivative).
pub const JET_LEN: usize = 5;

/// Truncated derivative jet `(f, f', f'', f''', f'''')` at a point.
///
/// Arithmetic follows the Leibniz and quotient rules exactly, so derivatives
/// of products, quotients and compositions never go through finite differences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet<T>(pub [T; JET_LEN]);

const BINOM: [[u32; JET_LEN]; JET_LEN] =
    [[1, 0, 0, 0, 0], [1, 1, 0, 0, 0], [1, 2, 1, 0, 0], [1, 3, 3, 1, 0], [1, 4, 6, 4, 1]];

impl<T: Real> Jet<T> {
    pub fn new(d: [T; JET_LEN]) -> Self {
        Jet(d)
    }

    pub fn constant(c: T) -> Self {
        let z = T::zero();
        Jet([c, z, z, z, z])
    }

    /// The identity function evaluated at `x`.
    pub fn variable(x: T) -> Self {
        let z = T::zero();
        Jet([x, T::one(), z, z, z])
    }

    pub fn value(&self) -> T {
        self.0[0]
    }

    pub fn d(&self, order: usize) -> T {
        self.0[order]
    }

    /// Jet of the derivative. The top order is unknown afterwards and set to NaN.
    pub fn derivative(&self) -> Self {
        let d = self.0;
        Jet([d[1], d[2], d[3], d[4], T::nan()])
    }

    pub fn scale(&self, c: T) -> Self {
        Jet(self.0.map(|v| v * c))
    }

    pub fn recip(&self) -> Self {
        Jet::constant(T::one()) / *self
    }

    /// Faa di Bruno: jet of `outer o inner`, where `outer` holds the derivatives of the
    /// outer function evaluated at `inner.value()`.
    pub fn compose(outer: &Jet<T>, inner: &Jet<T>) -> Self {
        let g = outer.0;
        let f = inner.0;
        let (f1, f2, f3, f4) = (f[1], f[2], f[3], f[4]);
        let three = T::lit(3.0);
        let four = T::lit(4.0);
        let six = T::lit(6.0);
        Jet([
            g[0],
            g[1] * f1,
            g[2] * f1 * f1 + g[1] * f2,
            g[3] * f1 * f1 * f1 + three * g[2] * f1 * f2 + g[1] * f3,
            g[4] * f1 * f1 * f1 * f1
                + six * g[3] * f1 * f1 * f2
                + g[2] * (three * f2 * f2 + four * f1 * f3)
                + g[1] * f4,
        ])
    }
}

impl<T: Real> Add for Jet<T> {
    type Output = Jet<T>;
    fn add(self, rhs: Self) -> Self {
        let mut out = self.0;
        for (o, r) in out.iter_mut().zip(rhs.0) {
            *o = *o + r;
        }
        Jet(out)
    }
}

impl<T: Real> Sub for Jet<T> {
    type Output = Jet<T>;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Real> Neg for Jet<T> {
    type Output = Jet<T>;
    fn neg(self) -> Self {
        Jet(self.0.map(|v| -v))
    }
}

impl<T: Real> Mul for Jet<T> {
    type Output = Jet<T>;
    fn mul(self, rhs: Self) -> Self {
        let (a, b) = (self.0, rhs.0);
        let mut out = [T::zero(); JET_LEN];
        for (n, slot) in out.iter_mut().enumerate() {
            let mut acc = T::zero();
            for k in 0..=n {
                acc = acc + T::from_u32(BINOM[n][k]).unwrap() * a[k] * b[n - k];
            }
            *slot = acc;
        }
        Jet(out)
    }
}

impl<T: Real> Div for Jet<T> {
    type Output = Jet<T>;
    /// Quotient rule, solved order by order from `u = q * v`.
    fn div(self, rhs: Self) -> Self {
        let (u, v) = (self.0, rhs.0);
        let mut q = [T::zero(); JET_LEN];
        for n in 0..JET_LEN {
            let mut acc = u[n];
            for k in 1..=n {
                acc = acc - T::from_u32(BINOM[n][k]).unwrap() * v[k] * q[n - k];
            }
            q[n] = acc / v[0];
        }
        Jet(q)
    }
}
