//! Two-variable generalized Bajraktarevic means `A_{f,p}`.

use crate::error::{Error, Result};
use crate::functions::{C4Function, Func, Interval};
use crate::roots::invert_on_bracket;
use crate::scalar::Real;

/// Number of Chebyshev points used to validate monotonicity and positivity.
pub const VALIDATION_POINTS: usize = 257;

/// Positive weights `(p1, p2)` on a common domain.
#[derive(Debug, Clone)]
pub struct WeightPair<T: Real> {
    pub p1: Func<T>,
    pub p2: Func<T>,
    domain: Interval<T>,
}

impl<T: Real> WeightPair<T> {
    pub fn new(p1: Func<T>, p2: Func<T>, domain: Interval<T>) -> Result<Self> {
        ensure_positive("p1", p1.as_ref(), &domain)?;
        ensure_positive("p2", p2.as_ref(), &domain)?;
        Ok(Self { p1, p2, domain })
    }

    pub fn domain(&self) -> Interval<T> {
        self.domain
    }

    /// `p0 = p1 + p2`.
    pub fn sum(&self, x: T) -> T {
        self.p1.value(x) + self.p2.value(x)
    }

    pub fn product(&self, x: T) -> T {
        self.p1.value(x) * self.p2.value(x)
    }

    pub fn swapped(&self) -> Self {
        Self { p1: self.p2.clone(), p2: self.p1.clone(), domain: self.domain }
    }
}

/// Checks `f > 0` on the validation grid of `domain`.
pub(crate) fn ensure_positive<T: Real>(name: &str, f: &dyn C4Function<T>, domain: &Interval<T>) -> Result<()> {
    if !f.domain().contains_interval(domain) {
        return Err(Error::InvalidInput(format!("{name} is not defined on the whole domain")));
    }
    for x in domain.chebyshev_nodes(VALIDATION_POINTS) {
        let v = f.value(x);
        if !(v > T::zero()) {
            return Err(Error::NotPositive { what: name.to_string(), at: x.as_f64() });
        }
    }
    Ok(())
}

/// The mean `A_{f,p}(x, y) = f^{-1}((p1(x) f(x) + p2(y) f(y)) / (p1(x) + p2(y)))`.
#[derive(Debug, Clone)]
pub struct BajraktarevicMean<T: Real> {
    pub f: Func<T>,
    pub p: WeightPair<T>,
}

impl<T: Real> BajraktarevicMean<T> {
    /// Validates strict monotonicity of `f` by the sign of `f'` on the Chebyshev grid.
    pub fn new(f: Func<T>, p: WeightPair<T>) -> Result<Self> {
        let domain = p.domain();
        if !f.domain().contains_interval(&domain) {
            return Err(Error::InvalidInput("generator is not defined on the whole domain".into()));
        }
        let nodes = domain.chebyshev_nodes(VALIDATION_POINTS);
        let sign = f.eval(1, nodes[0]).signum();
        for &x in &nodes {
            let d = f.eval(1, x);
            if d.abs() < T::tiny() || d.signum() != sign {
                return Err(Error::NotMonotone { at: x.as_f64() });
            }
        }
        Ok(Self { f, p })
    }

    pub fn from_parts(f: Func<T>, p1: Func<T>, p2: Func<T>, domain: Interval<T>) -> Result<Self> {
        Self::new(f, WeightPair::new(p1, p2, domain)?)
    }

    pub fn domain(&self) -> Interval<T> {
        self.p.domain()
    }

    /// Weighted generator value `t` that `evaluate` inverts.
    pub fn weighted_value(&self, x: T, y: T) -> T {
        let w1 = self.p.p1.value(x);
        let w2 = self.p.p2.value(y);
        (w1 * self.f.value(x) + w2 * self.f.value(y)) / (w1 + w2)
    }

    pub fn evaluate(&self, x: T, y: T) -> Result<T> {
        let domain = self.domain();
        domain.check(x)?;
        domain.check(y)?;
        if x == y {
            return Ok(x);
        }
        let t = self.weighted_value(x, y);
        invert_on_bracket(self.f.as_ref(), t, x.min(y), x.max(y))
    }

    /// Same generator with `p1` and `p2` exchanged.
    pub fn swapped(&self) -> Self {
        Self { f: self.f.clone(), p: self.p.swapped() }
    }

    pub fn strict_mean_check(&self, grid: &[(T, T)]) -> StrictMeanReport<T> {
        strict_mean_check(|x, y| self.evaluate(x, y), grid)
    }
}

/// Outcome of a strict-mean sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct StrictMeanReport<T> {
    /// `min(A - min(x,y), max(x,y) - A)` over off-diagonal points; negative means violation.
    pub min_margin: T,
    /// `max |A(x,x) - x|`.
    pub diagonal_defect: T,
    pub off_diagonal_points: usize,
    pub diagonal_points: usize,
    /// Off-diagonal points with non-positive margin, plus evaluation failures.
    pub violations: usize,
}

impl<T: Real> StrictMeanReport<T> {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.diagonal_defect <= T::lit(1e-12)
    }
}

pub fn strict_mean_check<T: Real>(mean: impl Fn(T, T) -> Result<T>, grid: &[(T, T)]) -> StrictMeanReport<T> {
    let mut report = StrictMeanReport {
        min_margin: T::infinity(),
        diagonal_defect: T::zero(),
        off_diagonal_points: 0,
        diagonal_points: 0,
        violations: 0,
    };
    for &(x, y) in grid {
        let value = mean(x, y);
        if x == y {
            report.diagonal_points += 1;
            match value {
                Ok(a) => report.diagonal_defect = report.diagonal_defect.max((a - x).abs()),
                Err(_) => report.violations += 1,
            }
            continue;
        }
        report.off_diagonal_points += 1;
        match value {
            Ok(a) => {
                let margin = (a - x.min(y)).min(x.max(y) - a);
                if !(margin > T::zero()) {
                    report.violations += 1;
                }
                report.min_margin = report.min_margin.min(margin);
            }
            Err(_) => report.violations += 1,
        }
    }
    report
}

/// All pairs `(x, y)` with `x` from `xs` and `y` from `ys`.
pub fn product_grid<T: Real>(xs: &[T], ys: &[T]) -> Vec<(T, T)> {
    xs.iter().flat_map(|&x| ys.iter().map(move |&y| (x, y))).collect()
}

/// Recovers `p2(y) = p1(x) (f(M) - f(x)) / (f(y) - f(M))` from samples `M = mean(x, y)`.
pub fn recover_weight<T: Real>(
    mean: impl Fn(T, T) -> Result<T>,
    f: &dyn C4Function<T>,
    p1_at: T,
    x: T,
    y: T,
) -> Result<T> {
    let eps_pair = T::lit(1e-7) * (T::one() + x.abs());
    if (x - y).abs() < eps_pair {
        return Err(Error::DegeneratePair { x: x.as_f64(), y: y.as_f64() });
    }
    let m = mean(x, y)?;
    let fm = f.value(m);
    let den = f.value(y) - fm;
    if den.abs() < T::lit(1e-13) {
        return Err(Error::DenominatorUnderflow { value: den.abs().as_f64() });
    }
    Ok(p1_at * (fm - f.value(x)) / den)
}
