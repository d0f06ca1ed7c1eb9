//! Named generators and mean pairs, so verification runs need no input files.

use crate::error::{Error, Result};
use crate::functions::{builtin, product, quotient, Func, Interval};
use crate::means::BajraktarevicMean;
use crate::scalar::Real;

/// Names accepted by [`builtin_pair`].
pub const PAIR_NAMES: [&str; 5] = ["arithmetic", "tan-cos", "identity-exp", "mobius-quadratic", "tanh-cosh"];

/// Names accepted by [`builtin_function`]; `mobius` takes four coefficients, e.g. `"mobius 2 1 1 3"`.
pub const FUNCTION_NAMES: [&str; 6] = ["identity", "tan", "tanh", "exp", "mobius", "cubic"];

/// Parses a generator description such as `"tan"` or `"mobius 2 1 1 3"`.
pub fn builtin_function<T: Real>(description: &str, domain: Interval<T>) -> Result<Func<T>> {
    let mut words = description.split_whitespace();
    let name = words.next().unwrap_or("");
    let params = words
        .map(|w| w.parse::<f64>().map(T::lit).map_err(|_| Error::InvalidInput(format!("bad parameter {w:?}"))))
        .collect::<Result<Vec<T>>>()?;
    let no_params = |f: Func<T>| {
        if params.is_empty() {
            Ok(f)
        } else {
            Err(Error::InvalidInput(format!("{name} takes no parameters")))
        }
    };
    match name {
        "identity" => no_params(builtin::identity(domain)),
        "tan" => no_params(builtin::tan(domain)?),
        "tanh" => no_params(builtin::tanh(domain)),
        "exp" => no_params(builtin::exp(T::one(), domain)),
        "cubic" => no_params(builtin::cubic(domain)),
        "mobius" => match params[..] {
            [a, b, c, d] => builtin::mobius(a, b, c, d, domain),
            [] => builtin::mobius(T::lit(2.0), T::one(), T::one(), T::lit(3.0), domain),
            _ => Err(Error::InvalidInput("mobius takes four coefficients a b c d".into())),
        },
        other => Err(Error::InvalidInput(format!("unknown builtin function {other:?}"))),
    }
}

/// A named pair `(A_{f,p}, A_{g,q})` solving the invariance equation.
///
/// * `arithmetic`: `f = g = x`, all weights 1, on `(-1, 1)`
/// * `tan-cos`: `f = g = tan`, `p = q = (cos, cos)`, on `(-1.2, 1.2)`
/// * `identity-exp`: `f = g = x`, `p = (e^x, 1)`, `q = (e^-x, 1)`, on `(-1, 1)`
/// * `mobius-quadratic`: `f = (2x+1)/(x+3)`, `p = (1 + x^2/4, 1)`, `g = x`,
///   `q = ((x+3)/(1 + x^2/4), x+3)`, on `(-1, 1)`
/// * `tanh-cosh`: `f = g = tanh`, `p = q = (cosh, cosh)`, on `(-1, 1)`
pub fn builtin_pair<T: Real>(name: &str) -> Result<(BajraktarevicMean<T>, BajraktarevicMean<T>)> {
    let unit = Interval::new(-T::one(), T::one())?;
    let one = || builtin::constant(T::one(), unit);
    let mean = |f: Func<T>, p1: Func<T>, p2: Func<T>, d: Interval<T>| BajraktarevicMean::from_parts(f, p1, p2, d);
    match name {
        "arithmetic" => {
            Ok((mean(builtin::identity(unit), one(), one(), unit)?, mean(builtin::identity(unit), one(), one(), unit)?))
        }
        "tan-cos" => {
            let d = Interval::new(T::lit(-1.2), T::lit(1.2))?;
            let m = mean(builtin::tan(d)?, builtin::cos(d), builtin::cos(d), d)?;
            Ok((m.clone(), m))
        }
        "identity-exp" => Ok((
            mean(builtin::identity(unit), builtin::exp(T::one(), unit), one(), unit)?,
            mean(builtin::identity(unit), builtin::exp(-T::one(), unit), one(), unit)?,
        )),
        "mobius-quadratic" => {
            let f = builtin::mobius(T::lit(2.0), T::one(), T::one(), T::lit(3.0), unit)?;
            let p1 = builtin::quadratic(T::lit(0.25), unit);
            let v = builtin::mobius(T::one(), T::lit(3.0), T::zero(), T::one(), unit)?;
            let q1 = quotient(v.clone(), p1.clone());
            Ok((mean(f, p1, one(), unit)?, mean(builtin::identity(unit), q1, product(v, one()), unit)?))
        }
        "tanh-cosh" => {
            let m = mean(builtin::tanh(unit), builtin::cosh(unit), builtin::cosh(unit), unit)?;
            Ok((m.clone(), m))
        }
        other => Err(Error::InvalidInput(format!("unknown builtin mean {other:?}"))),
    }
}
