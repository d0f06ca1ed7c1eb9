use crate::diagonal::diagonal_derivatives;
use crate::error::Result;
use crate::functions::{schwarzian_derivative_of_jet, schwarzian_of_jet, C4Function};
use crate::means::BajraktarevicMean;
use crate::roots::invert_on_bracket;
use crate::scalar::{median, Real};

use super::family::FamilyMeans;

/// Thresholds for the verification pipeline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances<T> {
    pub invariance: T,
    pub necessary: T,
    pub delta_spread: T,
    pub system: T,
    pub reconstruction: T,
    pub gamma: T,
    /// `|p1 - p2|` below this counts toward the sampled size of `{p1 = p2}`.
    pub equal_weights: T,
}

impl<T: Real> Default for Tolerances<T> {
    fn default() -> Self {
        Self {
            invariance: T::lit(1e-9),
            necessary: T::lit(1e-8),
            delta_spread: T::lit(1e-7),
            system: T::lit(1e-8),
            reconstruction: T::lit(1e-9),
            gamma: T::lit(1e-8),
            equal_weights: T::lit(1e-9),
        }
    }
}

/// The four necessary-condition residuals and the fitted constant `delta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NecessaryResiduals<T> {
    /// `max |p1 q1 - p2 q2| / max(|p1 q1|, |p2 q2|)`
    pub cond1: T,
    /// `max |delta(x) - delta_fit| / |delta_fit|` with `delta(x) = p1 p2 q1 q2 f' g'`
    pub cond2: T,
    /// `max |(p1 - p2)(S(f) - S(g))|`
    pub cond3: T,
    /// `max |(p1 - p2)(S(f)' + S(g)')|`
    pub cond4: T,
    /// grid median of `delta(x)`
    pub delta_fit: T,
    /// `(max - min) / |delta_fit|` of `delta(x)`
    pub delta_spread: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualReport<T> {
    pub max_invariance: Option<T>,
    pub necessary: Option<NecessaryResiduals<T>>,
    pub grid_size: usize,
}

/// Named necessary conditions, for verdicts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    Cond1,
    Cond2,
    DeltaSpread,
    Cond3,
    Cond4,
    SystemFirst,
    SystemSecond,
    SystemThird,
    SystemFourth,
}

impl Condition {
    pub fn name(&self) -> &'static str {
        match self {
            Condition::Cond1 => "cond1",
            Condition::Cond2 => "cond2",
            Condition::DeltaSpread => "delta_spread",
            Condition::Cond3 => "cond3",
            Condition::Cond4 => "cond4",
            Condition::SystemFirst => "system_first",
            Condition::SystemSecond => "system_second",
            Condition::SystemThird => "system_third",
            Condition::SystemFourth => "system_fourth",
        }
    }
}

impl<T: Real> NecessaryResiduals<T> {
    /// Conditions exceeding their tolerance; `delta_fit = 0` also fails cond2.
    pub fn failures(&self, tol: &Tolerances<T>) -> Vec<Condition> {
        let mut out = Vec::new();
        let ok = |v: T, t: T| v <= t;
        if !ok(self.cond1, tol.necessary) {
            out.push(Condition::Cond1);
        }
        if !ok(self.cond2, tol.necessary) || self.delta_fit == T::zero() {
            out.push(Condition::Cond2);
        }
        if !ok(self.delta_spread, tol.delta_spread) {
            out.push(Condition::DeltaSpread);
        }
        if !ok(self.cond3, tol.necessary) {
            out.push(Condition::Cond3);
        }
        if !ok(self.cond4, tol.necessary) {
            out.push(Condition::Cond4);
        }
        out
    }

    pub fn max(&self) -> T {
        self.cond1.max(self.cond2).max(self.cond3).max(self.cond4)
    }
}

impl<T: Real> ResidualReport<T> {
    pub fn passed(&self, tol: &Tolerances<T>) -> bool {
        self.max_invariance.is_none_or(|r| r <= tol.invariance)
            && self.necessary.is_none_or(|n| n.failures(tol).is_empty())
    }
}

/// Per-point invariance residuals `|A_f(x,y) + A_g(x,y) - x - y|`.
#[derive(Debug, Clone, PartialEq)]
pub struct InvarianceSweep<T> {
    pub samples: Vec<(T, T, T)>,
    pub max: T,
}

pub fn invariance_sweep<T: Real>(
    f_side: &BajraktarevicMean<T>,
    g_side: &BajraktarevicMean<T>,
    points: &[T],
) -> Result<InvarianceSweep<T>> {
    let mut samples = Vec::with_capacity(points.len() * points.len());
    let mut max = T::zero();
    for &x in points {
        for &y in points {
            let r = (f_side.evaluate(x, y)? + g_side.evaluate(x, y)? - x - y).abs();
            max = max.max(r);
            samples.push((x, y, r));
        }
    }
    Ok(InvarianceSweep { samples, max })
}

/// Sup-norm of the invariance defect over `points x points`.
pub fn invariance_residual<T: Real>(
    f_side: &BajraktarevicMean<T>,
    g_side: &BajraktarevicMean<T>,
    points: &[T],
) -> Result<ResidualReport<T>> {
    let sweep = invariance_sweep(f_side, g_side, points)?;
    Ok(ResidualReport { max_invariance: Some(sweep.max), necessary: None, grid_size: sweep.samples.len() })
}

/// Max deviation from `x + y` of
/// `(u/v)^{-1}((t u(x) + s u(y)) / (t v(x) + s v(y))) + (w/z)^{-1}((s w(x) + t w(y)) / (s z(x) + t z(y)))`.
pub fn identity_uvwz_check<T: Real>(family: &FamilyMeans<T>, samples: &[(T, T, T, T)]) -> Result<T> {
    let (u, v, w, z) = (family.u(), family.v(), family.w(), family.z());
    let mut worst = T::zero();
    for &(x, y, t, s) in samples {
        let (lo, hi) = (x.min(y), x.max(y));
        let target_f = (t * u.value(x) + s * u.value(y)) / (t * v.value(x) + s * v.value(y));
        let target_g = (s * w.value(x) + t * w.value(y)) / (s * z.value(x) + t * z.value(y));
        let a = invert_on_bracket(&family.f, target_f, lo, hi)?;
        let b = invert_on_bracket(&family.g, target_g, lo, hi)?;
        worst = worst.max((a + b - x - y).abs());
    }
    Ok(worst)
}

/// Evaluates the first- through fourth-order necessary conditions on `points`.
pub fn necessary_residuals<T: Real>(
    f_side: &BajraktarevicMean<T>,
    g_side: &BajraktarevicMean<T>,
    points: &[T],
) -> Result<ResidualReport<T>> {
    let mut cond1 = T::zero();
    let mut cond3 = T::zero();
    let mut cond4 = T::zero();
    let mut deltas = Vec::with_capacity(points.len());
    for &x in points {
        f_side.domain().check(x)?;
        g_side.domain().check(x)?;
        let (p1, p2) = (f_side.p.p1.value(x), f_side.p.p2.value(x));
        let (q1, q2) = (g_side.p.p1.value(x), g_side.p.p2.value(x));
        let fj = f_side.f.jet(x);
        let gj = g_side.f.jet(x);
        let (a, b) = (p1 * q1, p2 * q2);
        cond1 = cond1.max((a - b).abs() / a.abs().max(b.abs()));
        deltas.push(a * b * fj.d(1) * gj.d(1));
        let dp = p1 - p2;
        let (sf, sg) = (schwarzian_of_jet(&fj), schwarzian_of_jet(&gj));
        let (dsf, dsg) = (schwarzian_derivative_of_jet(&fj), schwarzian_derivative_of_jet(&gj));
        cond3 = cond3.max((dp * (sf - sg)).abs());
        cond4 = cond4.max((dp * (dsf + dsg)).abs());
    }
    let delta_fit = median(&deltas);
    let (mut lo, mut hi, mut dev) = (T::infinity(), T::neg_infinity(), T::zero());
    for &d in &deltas {
        lo = lo.min(d);
        hi = hi.max(d);
        dev = dev.max((d - delta_fit).abs());
    }
    let scale = delta_fit.abs();
    let necessary =
        NecessaryResiduals { cond1, cond2: dev / scale, cond3, cond4, delta_fit, delta_spread: (hi - lo) / scale };
    Ok(ResidualReport { max_invariance: None, necessary: Some(necessary), grid_size: points.len() })
}

/// Sup-norms of the diagonal system: `d1 sum - 1`, `d12 sum`, `d112 sum`, `d1122 sum`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemReport<T> {
    pub first: T,
    pub second: T,
    pub third: T,
    pub fourth: T,
    pub points: usize,
}

impl<T: Real> SystemReport<T> {
    pub fn failures(&self, tol: &Tolerances<T>) -> Vec<Condition> {
        [
            (self.first, Condition::SystemFirst),
            (self.second, Condition::SystemSecond),
            (self.third, Condition::SystemThird),
            (self.fourth, Condition::SystemFourth),
        ]
        .into_iter()
        .filter(|(v, _)| !(*v <= tol.system))
        .map(|(_, c)| c)
        .collect()
    }

    pub fn as_array(&self) -> [T; 4] {
        [self.first, self.second, self.third, self.fourth]
    }
}

pub fn diagonal_system_check<T: Real>(
    f_side: &BajraktarevicMean<T>,
    g_side: &BajraktarevicMean<T>,
    points: &[T],
) -> Result<SystemReport<T>> {
    let mut r =
        SystemReport { first: T::zero(), second: T::zero(), third: T::zero(), fourth: T::zero(), points: points.len() };
    for &x in points {
        let a = diagonal_derivatives(f_side, x)?;
        let b = diagonal_derivatives(g_side, x)?;
        r.first = r.first.max((a.d1 + b.d1 - T::one()).abs());
        r.second = r.second.max((a.d12 + b.d12).abs());
        r.third = r.third.max((a.d112 + b.d112).abs());
        r.fourth = r.fourth.max((a.d1122 + b.d1122).abs());
    }
    Ok(r)
}
