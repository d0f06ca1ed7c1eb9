//! Safeguarded Newton inversion of a strictly monotone function on a bracket.

use crate::error::{Error, Result};
use crate::functions::C4Function;
use crate::scalar::Real;

pub const MAX_ITERATIONS: usize = 80;

/// Solves `f(r) = target` for `r` in `[a, b]`.
///
/// `target` must lie between `f(a)` and `f(b)`. Newton steps are taken while they
/// stay strictly inside the current bracket and `|f'|` is not tiny; otherwise the
/// bracket is bisected. The result satisfies `|f(r) - target| <= tol (1 + |target|)`
/// with `tol = T::inversion_tol()`, or `InversionFailure` is returned.
pub fn invert_on_bracket<T: Real>(f: &dyn C4Function<T>, target: T, a: T, b: T) -> Result<T> {
    let (mut lo, mut hi) = (a.min(b), a.max(b));
    if lo == hi {
        return Ok(lo);
    }
    let tol = T::inversion_tol() * (T::one() + target.abs());
    let (f_lo, f_hi) = (f.value(lo), f.value(hi));
    let sign = if f_hi >= f_lo { T::one() } else { -T::one() };
    let two = T::lit(2.0);

    for (end, fv) in [(lo, f_lo), (hi, f_hi)] {
        if (fv - target).abs() == T::zero() {
            return Ok(end);
        }
    }

    let mut x = lo + (hi - lo) * (target - f_lo) / (f_hi - f_lo);
    if !(x > lo && x < hi) {
        x = lo + (hi - lo) / two;
    }
    let mut best = (x, T::infinity());

    for _ in 0..MAX_ITERATIONS {
        let jet = f.jet(x);
        let r = sign * (jet.value() - target);
        if r.abs() < best.1 {
            best = (x, r.abs());
        }
        if r == T::zero() {
            break;
        }
        if r > T::zero() {
            hi = x;
        } else {
            lo = x;
        }
        let slope = sign * jet.d(1);
        let newton = x - r / slope;
        let next = if slope.abs() >= T::tiny() && newton > lo && newton < hi { newton } else { lo + (hi - lo) / two };
        let resolution = two * T::epsilon() * (T::one() + x.abs());
        if (next - x).abs() <= resolution || hi - lo <= resolution {
            let rn = (f.value(next) - target).abs();
            if rn < best.1 {
                best = (next, rn);
            }
            break;
        }
        x = next;
    }

    if best.1 <= tol {
        Ok(best.0)
    } else {
        Err(Error::InversionFailure { target: target.as_f64(), residual: best.1.as_f64() })
    }
}
