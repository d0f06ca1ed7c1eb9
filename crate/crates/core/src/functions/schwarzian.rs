use super::c4::C4Function;
use super::jet::Jet;
use crate::error::{Error, Result};
use crate::scalar::Real;

fn check_slope<T: Real>(jet: &Jet<T>, x: T) -> Result<()> {
    if jet.d(1).abs() < T::tiny() {
        return Err(Error::VanishingDerivative { x: x.as_f64() });
    }
    Ok(())
}

/// `f'''/f' - 3/2 (f''/f')^2` from a jet.
pub fn schwarzian_of_jet<T: Real>(jet: &Jet<T>) -> T {
    let r2 = jet.d(2) / jet.d(1);
    let r3 = jet.d(3) / jet.d(1);
    r3 - T::lit(1.5) * r2 * r2
}

/// `S(f)' = f''''/f' - 4 f''' f''/f'^2 + 3 f''^3/f'^3` from a jet.
pub fn schwarzian_derivative_of_jet<T: Real>(jet: &Jet<T>) -> T {
    let r2 = jet.d(2) / jet.d(1);
    let r3 = jet.d(3) / jet.d(1);
    let r4 = jet.d(4) / jet.d(1);
    r4 - T::lit(4.0) * r3 * r2 + T::lit(3.0) * r2 * r2 * r2
}

pub fn schwarzian<T: Real>(f: &dyn C4Function<T>, x: T) -> Result<T> {
    f.domain().check(x)?;
    let jet = f.jet(x);
    check_slope(&jet, x)?;
    Ok(schwarzian_of_jet(&jet))
}

pub fn schwarzian_derivative<T: Real>(f: &dyn C4Function<T>, x: T) -> Result<T> {
    f.domain().check(x)?;
    let jet = f.jet(x);
    check_slope(&jet, x)?;
    Ok(schwarzian_derivative_of_jet(&jet))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::builtin;
    use crate::functions::interval::Interval;

    fn dom(lo: f64, hi: f64) -> Interval<f64> {
        Interval::new(lo, hi).unwrap()
    }

    #[test]
    fn examples() {
        let tan = builtin::tan(dom(-1.2, 1.2)).unwrap();
        assert!((schwarzian(tan.as_ref(), 0.3).unwrap() - 2.0).abs() < 1e-12);
        assert!(schwarzian_derivative(tan.as_ref(), 0.2).unwrap().abs() < 1e-11);

        let m = builtin::mobius(2.0, 1.0, 1.0, 3.0, dom(-1.0, 1.0)).unwrap();
        assert!(schwarzian(m.as_ref(), 0.0).unwrap().abs() < 1e-14);

        let id = builtin::identity(dom(-1.0, 1.0));
        assert_eq!(schwarzian(id.as_ref(), 0.4).unwrap(), 0.0);
        assert_eq!(schwarzian_derivative(id.as_ref(), 0.4).unwrap(), 0.0);

        let exp = builtin::exp(1.0, dom(-1.0, 1.0));
        assert!((schwarzian(exp.as_ref(), 0.0).unwrap() + 0.5).abs() < 1e-15);
        assert!(schwarzian_derivative(exp.as_ref(), 0.0).unwrap().abs() < 1e-15);
    }

    #[test]
    fn vanishing_slope_is_an_error() {
        let c = builtin::constant(2.0, dom(-1.0, 1.0));
        assert!(matches!(schwarzian(c.as_ref(), 0.0), Err(Error::VanishingDerivative { .. })));
        let cube = builtin::cubic(dom(-1.0, 1.0));
        assert!(schwarzian(cube.as_ref(), 3.0).is_err());
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let f = builtin::cubic(dom(-1.0, 1.0));
        let h = 1e-5;
        for x in [-0.6, 0.1, 0.5] {
            let fd = (schwarzian(f.as_ref(), x + h).unwrap() - schwarzian(f.as_ref(), x - h).unwrap()) / (2.0 * h);
            let exact = schwarzian_derivative(f.as_ref(), x).unwrap();
            assert!((fd - exact).abs() < 1e-7 * (1.0 + exact.abs()));
        }
    }
}
