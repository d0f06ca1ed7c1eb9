//! Closed-form functions used as generators and weights.

use std::sync::Arc;

use super::c4::{C4Function, Func};
use super::interval::Interval;
use super::jet::Jet;
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy)]
pub struct Identity<T> {
    pub domain: Interval<T>,
}

impl<T: Real> C4Function<T> for Identity<T> {
    fn domain(&self) -> Interval<T> {
        self.domain
    }
    fn jet(&self, x: T) -> Jet<T> {
        Jet::variable(x)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Constant<T> {
    pub value: T,
    pub domain: Interval<T>,
}

impl<T: Real> C4Function<T> for Constant<T> {
    fn domain(&self) -> Interval<T> {
        self.domain
    }
    fn jet(&self, _x: T) -> Jet<T> {
        Jet::constant(self.value)
    }
}

/// `scale * exp(rate * x)`.
#[derive(Debug, Clone, Copy)]
pub struct Exp<T> {
    pub rate: T,
    pub scale: T,
    pub domain: Interval<T>,
}

impl<T: Real> C4Function<T> for Exp<T> {
    fn domain(&self) -> Interval<T> {
        self.domain
    }
    fn jet(&self, x: T) -> Jet<T> {
        let e = self.scale * (self.rate * x).exp();
        let r = self.rate;
        Jet([e, r * e, r * r * e, r * r * r * e, r * r * r * r * e])
    }
}

/// `1 + curvature * x^2`.
#[derive(Debug, Clone, Copy)]
pub struct Quadratic<T> {
    pub curvature: T,
    pub domain: Interval<T>,
}

impl<T: Real> C4Function<T> for Quadratic<T> {
    fn domain(&self) -> Interval<T> {
        self.domain
    }
    fn jet(&self, x: T) -> Jet<T> {
        let m = self.curvature;
        let two = T::lit(2.0);
        let z = T::zero();
        Jet([T::one() + m * x * x, two * m * x, two * m, z, z])
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Tan<T> {
    domain: Interval<T>,
}

impl<T: Real> Tan<T> {
    pub fn new(domain: Interval<T>) -> Result<Self> {
        let half_pi = T::FRAC_PI_2();
        if domain.lo() <= -half_pi || domain.hi() >= half_pi {
            return Err(Error::InvalidInput("tan needs a domain inside (-pi/2, pi/2)".into()));
        }
        Ok(Self { domain })
    }
}

impl<T: Real> C4Function<T> for Tan<T> {
    fn domain(&self) -> Interval<T> {
        self.domain
    }
    fn jet(&self, x: T) -> Jet<T> {
        // with s = 1 + t^2: t' = s, t'' = 2ts, t''' = 2s^2 + 4t^2 s, t'''' = 16ts^2 + 8t^3 s
        let t = x.tan();
        let s = T::one() + t * t;
        let (two, four, eight, sixteen) = (T::lit(2.0), T::lit(4.0), T::lit(8.0), T::lit(16.0));
        Jet([t, s, two * t * s, two * s * s + four * t * t * s, sixteen * t * s * s + eight * t * t * t * s])
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Tanh<T> {
    pub domain: Interval<T>,
}

impl<T: Real> C4Function<T> for Tanh<T> {
    fn domain(&self) -> Interval<T> {
        self.domain
    }
    fn jet(&self, x: T) -> Jet<T> {
        // with s = 1 - t^2: t' = s, t'' = -2ts, t''' = -2s^2 + 4t^2 s, t'''' = 16ts^2 - 8t^3 s
        let t = x.tanh();
        let s = T::one() - t * t;
        let (two, four, eight, sixteen) = (T::lit(2.0), T::lit(4.0), T::lit(8.0), T::lit(16.0));
        Jet([t, s, -two * t * s, -two * s * s + four * t * t * s, sixteen * t * s * s - eight * t * t * t * s])
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Cos<T> {
    pub domain: Interval<T>,
}

impl<T: Real> C4Function<T> for Cos<T> {
    fn domain(&self) -> Interval<T> {
        self.domain
    }
    fn jet(&self, x: T) -> Jet<T> {
        let (s, c) = x.sin_cos();
        Jet([c, -s, -c, s, c])
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Cosh<T> {
    pub domain: Interval<T>,
}

impl<T: Real> C4Function<T> for Cosh<T> {
    fn domain(&self) -> Interval<T> {
        self.domain
    }
    fn jet(&self, x: T) -> Jet<T> {
        let (s, c) = (x.sinh(), x.cosh());
        Jet([c, s, c, s, c])
    }
}

/// Linear fractional map `(a x + b) / (c x + d)`.
#[derive(Debug, Clone, Copy)]
pub struct Mobius<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
    domain: Interval<T>,
}

impl<T: Real> Mobius<T> {
    pub fn new(a: T, b: T, c: T, d: T, domain: Interval<T>) -> Result<Self> {
        if a * d == b * c {
            return Err(Error::NotIndependent { wronskian: 0.0 });
        }
        let den_lo = c * domain.lo() + d;
        let den_hi = c * domain.hi() + d;
        if den_lo * den_hi <= T::zero() {
            return Err(Error::InvalidInput("mobius pole inside the domain".into()));
        }
        Ok(Self { a, b, c, d, domain })
    }
}

impl<T: Real> C4Function<T> for Mobius<T> {
    fn domain(&self) -> Interval<T> {
        self.domain
    }
    fn jet(&self, x: T) -> Jet<T> {
        // f^(k) = (ad - bc) (-1)^(k-1) k! c^(k-1) / (cx + d)^(k+1)
        let den = self.c * x + self.d;
        let det = self.a * self.d - self.b * self.c;
        let mut out = [(self.a * x + self.b) / den, T::zero(), T::zero(), T::zero(), T::zero()];
        let mut coeff = det;
        let mut pow = den * den;
        for (k, slot) in out.iter_mut().enumerate().skip(1) {
            *slot = coeff / pow;
            coeff = -coeff * T::from_usize(k + 1).unwrap() * self.c;
            pow = pow * den;
        }
        Jet(out)
    }
}

/// `x + x^3`, whose Schwarzian is not constant.
#[derive(Debug, Clone, Copy)]
pub struct Cubic<T> {
    pub domain: Interval<T>,
}

impl<T: Real> C4Function<T> for Cubic<T> {
    fn domain(&self) -> Interval<T> {
        self.domain
    }
    fn jet(&self, x: T) -> Jet<T> {
        let (three, six) = (T::lit(3.0), T::lit(6.0));
        Jet([x + x * x * x, T::one() + three * x * x, six * x, six, T::zero()])
    }
}

pub fn identity<T: Real>(domain: Interval<T>) -> Func<T> {
    Arc::new(Identity { domain })
}

pub fn constant<T: Real>(value: T, domain: Interval<T>) -> Func<T> {
    Arc::new(Constant { value, domain })
}

pub fn exp<T: Real>(rate: T, domain: Interval<T>) -> Func<T> {
    Arc::new(Exp { rate, scale: T::one(), domain })
}

pub fn quadratic<T: Real>(curvature: T, domain: Interval<T>) -> Func<T> {
    Arc::new(Quadratic { curvature, domain })
}

pub fn tan<T: Real>(domain: Interval<T>) -> Result<Func<T>> {
    Ok(Arc::new(Tan::new(domain)?))
}

pub fn tanh<T: Real>(domain: Interval<T>) -> Func<T> {
    Arc::new(Tanh { domain })
}

pub fn cos<T: Real>(domain: Interval<T>) -> Func<T> {
    Arc::new(Cos { domain })
}

pub fn cosh<T: Real>(domain: Interval<T>) -> Func<T> {
    Arc::new(Cosh { domain })
}

pub fn mobius<T: Real>(a: T, b: T, c: T, d: T, domain: Interval<T>) -> Result<Func<T>> {
    Ok(Arc::new(Mobius::new(a, b, c, d, domain)?))
}

pub fn cubic<T: Real>(domain: Interval<T>) -> Func<T> {
    Arc::new(Cubic { domain })
}

#[cfg(test)]
mod tests {
    use super::*;

    // Central difference of eval(k-1) against eval(k) at a few points.
    fn check_consistency(f: &dyn C4Function<f64>) {
        let h = 1e-5;
        for x in f.domain().shrink(2.0 * h).unwrap().interior_grid(9) {
            for k in 1..=4 {
                let fd = (f.eval(k - 1, x + h) - f.eval(k - 1, x - h)) / (2.0 * h);
                let exact = f.eval(k, x);
                assert!((fd - exact).abs() <= 1e-6 * (1.0 + exact.abs()), "{f:?} order {k} at {x}: fd {fd} vs {exact}");
            }
        }
    }

    #[test]
    fn derivatives_agree_with_finite_differences() {
        let d = Interval::new(-1.2, 1.2).unwrap();
        check_consistency(&Tan::new(d).unwrap());
        check_consistency(&Tanh { domain: d });
        check_consistency(&Cos { domain: d });
        check_consistency(&Cosh { domain: d });
        check_consistency(&Exp { rate: 0.7, scale: 2.0, domain: d });
        check_consistency(&Quadratic { curvature: 0.25, domain: d });
        check_consistency(&Mobius::new(2.0, 1.0, 1.0, 3.0, d).unwrap());
        check_consistency(&Cubic { domain: d });
    }

    #[test]
    fn tan_rejects_poles() {
        let d = Interval::new(-2.0, 1.0).unwrap();
        assert!(Tan::new(d).is_err());
    }

    #[test]
    fn mobius_rejects_pole_and_degenerate() {
        let d = Interval::new(-4.0, 0.0).unwrap();
        assert!(Mobius::new(2.0, 1.0, 1.0, 3.0, d).is_err());
        let d = Interval::new(-1.0, 1.0).unwrap();
        assert!(matches!(Mobius::new(2.0, 4.0, 1.0, 2.0, d), Err(Error::NotIndependent { .. })));
    }
}
