//! Closed-form partial derivatives of `A_{f,p}` on the diagonal, and a finite-difference
//! oracle to check them against.
//!
//! With `P = p1 p2`, `p0 = p1 + p2`, `R = P / p0^2`, `D = (p1 - p2) / p0` and
//! `K = P'/P + f''/f'` the formulas are evaluated term by term; all derivatives of
//! `R`, `D` and `K` come from exact jet arithmetic on the weights and the generator.

use crate::error::{Error, Result};
use crate::functions::{schwarzian_derivative_of_jet, schwarzian_of_jet, Interval, Jet};
use crate::means::BajraktarevicMean;
use crate::scalar::Real;

/// Per-order tolerances for `|closed form - oracle|`, orders 1 through 4.
pub const ORDER_TOLERANCES: [f64; 4] = [1e-7, 1e-6, 1e-5, 5e-4];

/// Finite-difference step per derivative order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdSteps<T> {
    pub first: T,
    pub second: T,
    pub third: T,
    pub fourth: T,
}

impl<T: Real> Default for FdSteps<T> {
    fn default() -> Self {
        Self { first: T::lit(1e-4), second: T::lit(1e-4), third: T::lit(1e-3), fourth: T::lit(4e-3) }
    }
}

impl<T: Real> FdSteps<T> {
    pub fn uniform(h: T) -> Self {
        Self { first: h, second: h, third: h, fourth: h }
    }

    pub fn largest(&self) -> T {
        self.first.max(self.second).max(self.third).max(self.fourth)
    }
}

/// `d1 = d_1 A`, `d2 = d_2 A`, `d12 = d_1 d_2 A`, `d112 = d_1^2 d_2 A`, `d1122 = d_1^2 d_2^2 A`
/// at the diagonal point `(at, at)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagonalDerivatives<T> {
    pub at: T,
    pub d1: T,
    pub d2: T,
    pub d12: T,
    pub d112: T,
    pub d1122: T,
}

struct Terms<T> {
    p1: T,
    p2: T,
    p0: T,
    prod: T,
    r: Jet<T>,
    d: Jet<T>,
    k: Jet<T>,
    s: T,
    ds: T,
}

impl<T: Real> Terms<T> {
    fn at(m: &BajraktarevicMean<T>, x: T) -> Result<Self> {
        m.domain().check(x)?;
        let p1 = m.p.p1.jet(x);
        let p2 = m.p.p2.jet(x);
        let p0 = p1 + p2;
        let prod = p1 * p2;
        let fj = m.f.jet(x);
        if fj.d(1).abs() < T::tiny() {
            return Err(Error::VanishingDerivative { x: x.as_f64() });
        }
        let df = fj.derivative();
        let k = prod.derivative() / prod + df.derivative() / df;
        Ok(Self {
            p1: p1.value(),
            p2: p2.value(),
            p0: p0.value(),
            prod: prod.value(),
            r: prod / (p0 * p0),
            d: (p1 - p2) / p0,
            k,
            s: schwarzian_of_jet(&fj),
            ds: schwarzian_derivative_of_jet(&fj),
        })
    }

    /// `6 - p0^2 / (p1 p2)`
    fn six_minus(&self) -> T {
        T::lit(6.0) - self.p0 * self.p0 / self.prod
    }
}

/// `d_i A o Delta = p_i / p0`.
pub fn formula_first<T: Real>(m: &BajraktarevicMean<T>, i: usize, x: T) -> Result<T> {
    m.domain().check(x)?;
    let (p1, p2) = (m.p.p1.value(x), m.p.p2.value(x));
    match i {
        1 => Ok(p1 / (p1 + p2)),
        2 => Ok(p2 / (p1 + p2)),
        _ => Err(Error::InvalidInput(format!("variable index {i} is not 1 or 2"))),
    }
}

/// `d_1 d_2 A o Delta = -R K`.
pub fn formula_mixed2<T: Real>(m: &BajraktarevicMean<T>, x: T) -> Result<T> {
    let t = Terms::at(m, x)?;
    Ok(-t.r.value() * t.k.value())
}

pub fn formula_mixed3<T: Real>(m: &BajraktarevicMean<T>, x: T) -> Result<T> {
    Ok(mixed3(&Terms::at(m, x)?))
}

pub fn formula_mixed4<T: Real>(m: &BajraktarevicMean<T>, x: T) -> Result<T> {
    Ok(mixed4(&Terms::at(m, x)?))
}

fn mixed3<T: Real>(t: &Terms<T>) -> T {
    let half = T::lit(0.5);
    let (r, d, k) = (t.r.value(), t.d.value(), t.k.value());
    let d1 = t.d.d(1);
    let rk_prime = t.r.d(1) * k + r * t.k.d(1);
    -T::lit(0.25) * t.d.d(2) - T::lit(3.0) * t.p0 * (t.p1 - t.p2) / (T::lit(16.0) * t.prod) * d1 * d1 - half * rk_prime
        + T::lit(0.75) * r * d * k * k
        - half * r * d * t.s
}

fn mixed4<T: Real>(t: &Terms<T>) -> T {
    let (r, k) = (t.r.value(), t.k.value());
    let d1 = t.d.d(1);
    let six = t.six_minus();
    let r2 = r * r;
    (t.r.d(2) + T::lit(0.375) * six * d1 * d1) * k - t.r.d(1) * t.k.d(1) - T::lit(0.5) * r2 * six * k * k * k
        + r2 * six * k * t.s
        - r2 * t.ds
}

pub fn diagonal_derivatives<T: Real>(m: &BajraktarevicMean<T>, x: T) -> Result<DiagonalDerivatives<T>> {
    let t = Terms::at(m, x)?;
    Ok(DiagonalDerivatives {
        at: x,
        d1: t.p1 / t.p0,
        d2: t.p2 / t.p0,
        d12: -t.r.value() * t.k.value(),
        d112: mixed3(&t),
        d1122: mixed4(&t),
    })
}

fn stencil<T: Real>(order: usize, h: T) -> Vec<(i32, T)> {
    match order {
        0 => vec![(0, T::one())],
        1 => {
            let w = T::one() / (T::lit(2.0) * h);
            vec![(-1, -w), (1, w)]
        }
        _ => {
            let w = T::one() / (h * h);
            vec![(-1, w), (0, T::lit(-2.0) * w), (1, w)]
        }
    }
}

/// Central finite difference (second-order accurate) of `d_1^alpha d_2^beta A` at `(x, x)`.
pub fn fd_partial<T: Real>(mean: impl Fn(T, T) -> Result<T>, orders: (usize, usize), x: T, h: T) -> Result<T> {
    let (alpha, beta) = orders;
    if alpha > 2 || beta > 2 || !(h > T::zero()) {
        return Err(Error::InvalidInput(format!("unsupported stencil ({alpha}, {beta}) with h = {h}")));
    }
    let mut acc = T::zero();
    for (i, wi) in stencil(alpha, h) {
        for &(j, wj) in &stencil(beta, h) {
            let xi = x + T::from_i32(i).unwrap() * h;
            let yj = x + T::from_i32(j).unwrap() * h;
            let a = mean(xi, yj).map_err(|e| match e {
                Error::OutOfDomain { .. } => Error::StencilOutOfDomain { x: x.as_f64(), h: h.as_f64() },
                other => other,
            })?;
            acc = acc + wi * wj * a;
        }
    }
    Ok(acc)
}

/// One closed form against its oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderCheck<T> {
    pub order: usize,
    pub closed_form: T,
    pub oracle: T,
    pub discrepancy: T,
    pub tolerance: T,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalComparison<T> {
    pub at: T,
    pub checks: [OrderCheck<T>; 4],
}

impl<T: Real> DiagonalComparison<T> {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Compares given closed-form values against the oracle for `mean`.
pub fn compare_formulas_with<T: Real>(
    formulas: &DiagonalDerivatives<T>,
    mean: impl Fn(T, T) -> Result<T>,
    steps: &FdSteps<T>,
) -> Result<DiagonalComparison<T>> {
    let x = formulas.at;
    let cases = [
        (1, formulas.d1, (1, 0), steps.first),
        (2, formulas.d12, (1, 1), steps.second),
        (3, formulas.d112, (2, 1), steps.third),
        (4, formulas.d1122, (2, 2), steps.fourth),
    ];
    let mut checks = Vec::with_capacity(4);
    for (order, closed_form, orders, h) in cases {
        let oracle = fd_partial(&mean, orders, x, h)?;
        let discrepancy = (closed_form - oracle).abs();
        let tolerance = T::lit(ORDER_TOLERANCES[order - 1]);
        checks.push(OrderCheck {
            order,
            closed_form,
            oracle,
            discrepancy,
            tolerance,
            passed: discrepancy <= tolerance,
        });
    }
    Ok(DiagonalComparison { at: x, checks: checks.try_into().expect("four checks") })
}

pub fn compare_formulas<T: Real>(m: &BajraktarevicMean<T>, x: T) -> Result<DiagonalComparison<T>> {
    compare_formulas_with(&diagonal_derivatives(m, x)?, |a, b| m.evaluate(a, b), &FdSteps::default())
}

/// Comparisons over several diagonal points.
#[derive(Debug, Clone, PartialEq)]
pub struct GridComparison<T> {
    pub results: Vec<DiagonalComparison<T>>,
    /// Points closer than `6h` to a domain endpoint.
    pub skipped: Vec<T>,
}

impl<T: Real> GridComparison<T> {
    pub fn passed(&self) -> bool {
        !self.results.is_empty() && self.results.iter().all(DiagonalComparison::passed)
    }

    /// Largest discrepancy per order.
    pub fn max_discrepancies(&self) -> [T; 4] {
        let mut out = [T::zero(); 4];
        for r in &self.results {
            for (o, c) in out.iter_mut().zip(&r.checks) {
                *o = o.max(c.discrepancy);
            }
        }
        out
    }
}

pub fn compare_on_grid<T: Real>(
    m: &BajraktarevicMean<T>,
    points: &[T],
    steps: &FdSteps<T>,
) -> Result<GridComparison<T>> {
    let margin = T::lit(6.0) * steps.largest();
    let domain = m.domain();
    let safe = Interval::new(domain.lo() + margin, domain.hi() - margin).ok();
    let mut out = GridComparison { results: Vec::new(), skipped: Vec::new() };
    for &x in points {
        match safe {
            Some(s) if s.contains(x) => {
                let formulas = diagonal_derivatives(m, x)?;
                out.results.push(compare_formulas_with(&formulas, |a, b| m.evaluate(a, b), steps)?);
            }
            _ => out.skipped.push(x),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{builtin, Interval};

    fn dom(lo: f64, hi: f64) -> Interval<f64> {
        Interval::new(lo, hi).unwrap()
    }

    fn arithmetic() -> BajraktarevicMean<f64> {
        let d = dom(-1.0, 1.0);
        BajraktarevicMean::from_parts(builtin::identity(d), builtin::constant(1.0, d), builtin::constant(1.0, d), d)
            .unwrap()
    }

    fn id_exp() -> BajraktarevicMean<f64> {
        let d = dom(-1.0, 1.0);
        BajraktarevicMean::from_parts(builtin::identity(d), builtin::exp(1.0, d), builtin::constant(1.0, d), d).unwrap()
    }

    fn tan_cos() -> BajraktarevicMean<f64> {
        let d = dom(-1.2, 1.2);
        BajraktarevicMean::from_parts(builtin::tan(d).unwrap(), builtin::cos(d), builtin::cos(d), d).unwrap()
    }

    #[test]
    fn first_order_examples() {
        assert_eq!(formula_first(&arithmetic(), 1, 0.3).unwrap(), 0.5);
        let d = dom(-1.0, 1.0);
        let m = BajraktarevicMean::from_parts(
            builtin::identity(d),
            builtin::constant(2.0, d),
            builtin::constant(1.0, d),
            d,
        )
        .unwrap();
        assert!((formula_first(&m, 2, -0.2).unwrap() - 1.0 / 3.0).abs() < 1e-16);
        assert_eq!(formula_first(&id_exp(), 1, 0.0).unwrap(), 0.5);
        assert!(formula_first(&m, 3, 0.0).is_err());
        assert!(matches!(formula_first(&m, 1, 1.0), Err(Error::OutOfDomain { .. })));
    }

    #[test]
    fn mixed_examples() {
        assert_eq!(formula_mixed2(&arithmetic(), 0.1).unwrap(), 0.0);
        assert_eq!(formula_mixed3(&arithmetic(), 0.1).unwrap(), 0.0);
        assert_eq!(formula_mixed4(&arithmetic(), 0.1).unwrap(), 0.0);
        assert!((formula_mixed2(&id_exp(), 0.0).unwrap() + 0.25).abs() < 1e-16);
    }

    #[test]
    fn fd_examples() {
        let m = arithmetic();
        let eval = |x, y| m.evaluate(x, y);
        assert!((fd_partial(eval, (1, 0), 0.2, 1e-4).unwrap() - 0.5).abs() < 1e-9);
        assert!(fd_partial(eval, (2, 2), 0.2, 4e-3).unwrap().abs() < 1e-6);
        let err = fd_partial(eval, (1, 1), 0.99995, 1e-4).unwrap_err();
        assert!(matches!(err, Error::StencilOutOfDomain { .. }));

        let t = tan_cos();
        let fd = fd_partial(|x, y| t.evaluate(x, y), (1, 1), 0.0, 1e-3).unwrap();
        assert!((fd - formula_mixed2(&t, 0.0).unwrap()).abs() < 1e-6);
    }

    #[test]
    fn comparisons_pass_for_builtin_means() {
        assert!(compare_formulas(&arithmetic(), 0.0).unwrap().passed());
        assert!(compare_formulas(&tan_cos(), 0.2).unwrap().passed());
        assert!(compare_formulas(&id_exp(), 0.0).unwrap().passed());
    }

    #[test]
    fn negated_fourth_order_is_flagged() {
        let d = dom(-1.0, 1.0);
        let m = BajraktarevicMean::from_parts(
            builtin::tan(d).unwrap(),
            builtin::exp(1.0, d),
            builtin::quadratic(0.5, d),
            d,
        )
        .unwrap();
        assert!(compare_formulas(&m, 0.3).unwrap().passed());
        let mut f = diagonal_derivatives(&m, 0.3).unwrap();
        f.d1122 = -f.d1122;
        let c = compare_formulas_with(&f, |x, y| m.evaluate(x, y), &FdSteps::default()).unwrap();
        assert!(c.checks[..3].iter().all(|c| c.passed));
        assert!(!c.checks[3].passed);
    }

    #[test]
    fn first_order_sums_to_one_and_swap_symmetry() {
        let m = id_exp();
        let s = m.swapped();
        for x in m.domain().interior_grid(17) {
            let d = diagonal_derivatives(&m, x).unwrap();
            assert!((d.d1 + d.d2 - 1.0).abs() <= f64::EPSILON);
            assert_eq!(formula_first(&s, 1, x).unwrap(), formula_first(&m, 2, x).unwrap());
            assert!((formula_mixed2(&s, x).unwrap() - d.d12).abs() < 1e-15);
        }
    }

    #[test]
    fn grid_skips_points_near_endpoints() {
        let m = arithmetic();
        let pts = [-0.999, 0.0, 0.99];
        let g = compare_on_grid(&m, &pts, &FdSteps::default()).unwrap();
        assert_eq!(g.results.len(), 1);
        assert_eq!(g.skipped, vec![-0.999, 0.99]);
    }

    #[test]
    fn richardson_estimate_bounds_oracle_error() {
        let m = tan_cos();
        let exact = formula_mixed2(&m, 0.3).unwrap();
        let h = 2e-3;
        let coarse = fd_partial(|x, y| m.evaluate(x, y), (1, 1), 0.3, h).unwrap();
        let fine = fd_partial(|x, y| m.evaluate(x, y), (1, 1), 0.3, h / 2.0).unwrap();
        let estimate = (coarse - fine).abs() / 3.0;
        assert!((fine - exact).abs() <= 4.0 * estimate + 1e-9);
    }
}
