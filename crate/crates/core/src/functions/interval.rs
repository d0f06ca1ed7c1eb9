use crate::error::{Error, Result};
use crate::scalar::Real;

/// Nonempty open real interval `(lo, hi)` with finite endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval<T> {
    lo: T,
    hi: T,
}

impl<T: Real> Interval<T> {
    pub fn new(lo: T, hi: T) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidInterval { lo: lo.as_f64(), hi: hi.as_f64() });
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> T {
        self.lo
    }

    pub fn hi(&self) -> T {
        self.hi
    }

    pub fn width(&self) -> T {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> T {
        self.lo + (self.hi - self.lo) / T::lit(2.0)
    }

    /// Open membership: endpoints are excluded.
    pub fn contains(&self, x: T) -> bool {
        self.lo < x && x < self.hi
    }

    pub fn contains_interval(&self, other: &Interval<T>) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersect(&self, other: &Interval<T>) -> Option<Interval<T>> {
        Interval::new(self.lo.max(other.lo), self.hi.min(other.hi)).ok()
    }

    pub fn check(&self, x: T) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::OutOfDomain { x: x.as_f64(), lo: self.lo.as_f64(), hi: self.hi.as_f64() })
        }
    }

    /// `n` equally spaced points strictly inside the interval (endpoints excluded).
    pub fn interior_grid(&self, n: usize) -> Vec<T> {
        let step = self.width() / T::from_usize(n + 1).unwrap();
        (1..=n).map(|k| self.lo + step * T::from_usize(k).unwrap()).collect()
    }

    /// Chebyshev nodes of the first kind mapped onto the interval; all lie strictly inside.
    pub fn chebyshev_nodes(&self, n: usize) -> Vec<T> {
        let half = self.width() / T::lit(2.0);
        let mid = self.midpoint();
        let denom = T::from_usize(2 * n).unwrap();
        (0..n)
            .map(|k| {
                let theta = T::PI() * T::from_usize(2 * k + 1).unwrap() / denom;
                mid + half * theta.cos()
            })
            .rev()
            .collect()
    }

    /// Closed sub-interval `[lo + margin, hi - margin]`, returned as an open interval.
    pub fn shrink(&self, margin: T) -> Result<Interval<T>> {
        Interval::new(self.lo + margin, self.hi - margin)
    }
}

/// `n >= 2` equally spaced points from `a` to `b` inclusive.
pub fn linspace<T: Real>(a: T, b: T, n: usize) -> Vec<T> {
    if n == 1 {
        return vec![a];
    }
    let step = (b - a) / T::from_usize(n - 1).unwrap();
    (0..n).map(|k| a + step * T::from_usize(k).unwrap()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_reversed() {
        assert!(Interval::new(1.0, 1.0).is_err());
        assert!(Interval::new(2.0, 1.0).is_err());
        assert!(Interval::new(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn membership_is_open() {
        let i = Interval::new(-1.0, 1.0).unwrap();
        assert!(i.contains(0.0));
        assert!(!i.contains(1.0));
        assert!(!i.contains(-1.0));
    }

    #[test]
    fn grids_stay_inside() {
        let i = Interval::new(-3.0, 5.0).unwrap();
        assert!(i.interior_grid(17).iter().all(|&x| i.contains(x)));
        let nodes = i.chebyshev_nodes(257);
        assert_eq!(nodes.len(), 257);
        assert!(nodes.iter().all(|&x| i.contains(x)));
        assert!(nodes.windows(2).all(|w| w[0] < w[1]));
    }
}
