use std::sync::Arc;

use crate::error::{Error, Result};
use crate::functions::{covers, restrict, C4Function, Func};
use crate::means::BajraktarevicMean;
use crate::scalar::{median, Real};

use super::recover::{recover_uv, RecoveredPair};
use super::residuals::{
    diagonal_system_check, necessary_residuals, Condition, NecessaryResiduals, SystemReport, Tolerances,
};

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict<T> {
    /// The pair is a sufficient-family solution; coefficients already carry the `eta` rescaling of `(u, v)`.
    ConfirmedFamily {
        gamma: T,
        f_coeffs: [T; 4],
        g_coeffs: [T; 4],
        eta: T,
    },
    NecessaryFail {
        failed: Vec<Condition>,
    },
    ReconstructionFail {
        reason: String,
    },
}

impl<T> Verdict<T> {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::ConfirmedFamily { .. } => "ConfirmedFamily",
            Verdict::NecessaryFail { .. } => "NecessaryFail",
            Verdict::ReconstructionFail { .. } => "ReconstructionFail",
        }
    }

    pub fn is_confirmed(&self) -> bool {
        matches!(self, Verdict::ConfirmedFamily { .. })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification<T> {
    pub verdict: Verdict<T>,
    pub necessary: NecessaryResiduals<T>,
    pub system: SystemReport<T>,
    /// Fraction of grid points where `|p1 - p2|` is below the tolerance.
    pub equal_weight_fraction: T,
}

/// Runs the necessary conditions and the diagonal system, then reconstructs
/// `u, v, w, z` and checks `p1 q1 = p2 q2 = eta v z`.
pub fn classify_solution<T: Real>(
    f_side: &BajraktarevicMean<T>,
    g_side: &BajraktarevicMean<T>,
    points: &[T],
    tol: &Tolerances<T>,
) -> Result<Classification<T>> {
    let necessary = necessary_residuals(f_side, g_side, points)?.necessary.expect("necessary residuals");
    let system = diagonal_system_check(f_side, g_side, points)?;
    let equal =
        points.iter().filter(|&&x| (f_side.p.p1.value(x) - f_side.p.p2.value(x)).abs() < tol.equal_weights).count();
    let equal_weight_fraction = T::from_usize(equal).unwrap() / T::from_usize(points.len().max(1)).unwrap();

    let mut failed = necessary.failures(tol);
    failed.extend(system.failures(tol));
    let verdict = if failed.is_empty() {
        reconstruct(f_side, g_side, points, &necessary, tol)?
    } else {
        Verdict::NecessaryFail { failed }
    };
    Ok(Classification { verdict, necessary, system, equal_weight_fraction })
}

fn reconstruction_fail<T>(reason: impl Into<String>) -> Result<Verdict<T>> {
    Ok(Verdict::ReconstructionFail { reason: reason.into() })
}

fn reconstruct<T: Real>(
    f_side: &BajraktarevicMean<T>,
    g_side: &BajraktarevicMean<T>,
    points: &[T],
    necessary: &NecessaryResiduals<T>,
    tol: &Tolerances<T>,
) -> Result<Verdict<T>> {
    let domain = f_side.domain().intersect(&g_side.domain()).ok_or(Error::DomainEmpty)?;
    let x0 = domain.midpoint();
    let on_domain = |f: &Func<T>| restrict(Arc::clone(f), domain);
    let recover = |f: &Func<T>| match recover_uv(on_domain(f).as_ref(), x0) {
        Ok(r) => Ok(Ok(r)),
        Err(e @ Error::NonConstantSchwarzian { .. }) => Ok(Err(e.to_string())),
        Err(e) => Err(e),
    };
    let fr: RecoveredPair<T> = match recover(&f_side.f)? {
        Ok(r) => r,
        Err(msg) => return reconstruction_fail(format!("f: {msg}")),
    };
    let gr: RecoveredPair<T> = match recover(&g_side.f)? {
        Ok(r) => r,
        Err(msg) => return reconstruction_fail(format!("g: {msg}")),
    };

    if (fr.gamma - gr.gamma).abs() > tol.gamma * (T::one() + fr.gamma.abs()) {
        return reconstruction_fail(format!("gamma mismatch: {} vs {}", fr.gamma, gr.gamma));
    }
    for (name, r) in [("v", &fr), ("z", &gr)] {
        if !covers(&r.positive, &domain) {
            return reconstruction_fail(format!("{name} vanishes inside the domain"));
        }
    }
    for (name, r) in [("f", &fr), ("g", &gr)] {
        if !(r.max_residual <= tol.reconstruction) {
            return reconstruction_fail(format!("{name} differs from u/v by {}", r.max_residual));
        }
    }

    // p1 q1 = eta v z with eta = sqrt(delta / (alpha beta))
    let ratio = necessary.delta_fit / (fr.wronskian * gr.wronskian);
    if !(ratio > T::zero()) {
        return Err(Error::NonPositiveEta { ratio: ratio.as_f64() });
    }
    let eta = ratio.sqrt();
    let fitted: Vec<T> =
        points.iter().map(|&x| f_side.p.p1.value(x) * g_side.p.p1.value(x) / (fr.v.value(x) * gr.v.value(x))).collect();
    let eta_fit = median(&fitted);
    let spread = fitted.iter().fold(T::zero(), |m, &e| m.max((e - eta_fit).abs())) / eta_fit.abs();
    if !(spread <= tol.necessary) {
        return reconstruction_fail(format!("p1 q1 / (v z) is not constant (relative spread {spread})"));
    }
    if !((eta - eta_fit).abs() <= tol.delta_spread * eta) {
        return reconstruction_fail(format!("eta from delta {eta} disagrees with fitted {eta_fit}"));
    }

    let (u, v) = (fr.u.scaled(eta), fr.v.scaled(eta));
    Ok(Verdict::ConfirmedFamily {
        gamma: fr.gamma,
        f_coeffs: [u.a, u.b, v.a, v.b],
        g_coeffs: [gr.u.a, gr.u.b, gr.v.a, gr.v.b],
        eta,
    })
}
