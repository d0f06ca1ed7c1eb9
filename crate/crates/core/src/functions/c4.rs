use std::fmt::Debug;
use std::sync::Arc;

use super::interval::Interval;
use super::jet::Jet;
use crate::scalar::Real;

/// A real function on an open interval with derivatives of order 0 through 4.
pub trait C4Function<T: Real>: Debug + Send + Sync {
    fn domain(&self) -> Interval<T>;

    /// All derivatives at `x` at once.
    fn jet(&self, x: T) -> Jet<T>;

    /// Derivative of the given order (0 = value). Panics for `order > 4`.
    fn eval(&self, order: usize, x: T) -> T {
        assert!(order <= 4, "derivative order {order} not available");
        self.jet(x).d(order)
    }

    fn value(&self, x: T) -> T {
        self.eval(0, x)
    }
}

/// Shared handle to a function; means and families hold these.
pub type Func<T> = Arc<dyn C4Function<T>>;

/// Pointwise product of two functions.
#[derive(Debug, Clone)]
pub struct Product<T: Real> {
    pub left: Func<T>,
    pub right: Func<T>,
    domain: Interval<T>,
}

impl<T: Real> Product<T> {
    pub fn new(left: Func<T>, right: Func<T>) -> Option<Self> {
        let domain = left.domain().intersect(&right.domain())?;
        Some(Self { left, right, domain })
    }
}

impl<T: Real> C4Function<T> for Product<T> {
    fn domain(&self) -> Interval<T> {
        self.domain
    }
    fn jet(&self, x: T) -> Jet<T> {
        self.left.jet(x) * self.right.jet(x)
    }
}

/// Pointwise quotient `num / den`; the caller guarantees `den` does not vanish.
#[derive(Debug, Clone)]
pub struct Quotient<T: Real> {
    pub num: Func<T>,
    pub den: Func<T>,
    domain: Interval<T>,
}

impl<T: Real> Quotient<T> {
    pub fn new(num: Func<T>, den: Func<T>) -> Option<Self> {
        let domain = num.domain().intersect(&den.domain())?;
        Some(Self { num, den, domain })
    }
}

impl<T: Real> C4Function<T> for Quotient<T> {
    fn domain(&self) -> Interval<T> {
        self.domain
    }
    fn jet(&self, x: T) -> Jet<T> {
        self.num.jet(x) / self.den.jet(x)
    }
}

/// `scale * inner + shift`.
#[derive(Debug, Clone)]
pub struct Affine<T: Real> {
    pub inner: Func<T>,
    pub scale: T,
    pub shift: T,
}

impl<T: Real> C4Function<T> for Affine<T> {
    fn domain(&self) -> Interval<T> {
        self.inner.domain()
    }
    fn jet(&self, x: T) -> Jet<T> {
        self.inner.jet(x).scale(self.scale) + Jet::constant(self.shift)
    }
}

/// `outer o inner`; `outer` must be defined on the range of `inner`.
#[derive(Debug, Clone)]
pub struct Compose<T: Real> {
    pub outer: Func<T>,
    pub inner: Func<T>,
}

impl<T: Real> C4Function<T> for Compose<T> {
    fn domain(&self) -> Interval<T> {
        self.inner.domain()
    }
    fn jet(&self, x: T) -> Jet<T> {
        let inner = self.inner.jet(x);
        let outer = self.outer.jet(inner.value());
        Jet::compose(&outer, &inner)
    }
}

/// Same function viewed on a smaller domain.
#[derive(Debug, Clone)]
pub struct Restrict<T: Real> {
    pub inner: Func<T>,
    pub domain: Interval<T>,
}

impl<T: Real> C4Function<T> for Restrict<T> {
    fn domain(&self) -> Interval<T> {
        self.domain
    }
    fn jet(&self, x: T) -> Jet<T> {
        self.inner.jet(x)
    }
}

pub fn product<T: Real>(left: Func<T>, right: Func<T>) -> Func<T> {
    let d = left.domain();
    Arc::new(Product::new(left, right).unwrap_or_else(|| panic!("disjoint domains near {d:?}")))
}

pub fn quotient<T: Real>(num: Func<T>, den: Func<T>) -> Func<T> {
    let d = num.domain();
    Arc::new(Quotient::new(num, den).unwrap_or_else(|| panic!("disjoint domains near {d:?}")))
}

pub fn affine<T: Real>(inner: Func<T>, scale: T, shift: T) -> Func<T> {
    Arc::new(Affine { inner, scale, shift })
}

pub fn compose<T: Real>(outer: Func<T>, inner: Func<T>) -> Func<T> {
    Arc::new(Compose { outer, inner })
}

pub fn restrict<T: Real>(inner: Func<T>, domain: Interval<T>) -> Func<T> {
    Arc::new(Restrict { inner, domain })
}
