use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::functions::{
    builtin, covers, positive_subinterval, product, quotient, ratio_function, C4Function, Func, GammaSolution,
    Interval, RatioFunction, WronskianPair,
};
use crate::means::{ensure_positive, BajraktarevicMean, VALIDATION_POINTS};
use crate::scalar::Real;

/// Weight functions offered for the free split `p1, p2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Split<T> {
    /// `c`
    Constant(T),
    /// `exp(lambda x)`
    Exp(T),
    /// `1 + mu x^2`
    Quadratic(T),
}

impl<T: Real> Split<T> {
    pub fn func(&self, domain: Interval<T>) -> Func<T> {
        match *self {
            Split::Constant(c) => builtin::constant(c, domain),
            Split::Exp(rate) => builtin::exp(rate, domain),
            Split::Quadratic(mu) => builtin::quadratic(mu, domain),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Split::Constant(_) => "constant",
            Split::Exp(_) => "exp",
            Split::Quadratic(_) => "quadratic",
        }
    }

    pub fn param(&self) -> T {
        match *self {
            Split::Constant(v) | Split::Exp(v) | Split::Quadratic(v) => v,
        }
    }

    fn is_constant(&self) -> bool {
        matches!(self, Split::Constant(_)) || self.param() == T::zero()
    }
}

/// The data of a sufficient solution: `u = a1 S + b1 C`, `v = c1 S + d1 C`,
/// `w = a2 S + b2 C`, `z = c2 S + d2 C`, `f = u/v`, `g = w/z`, `p = (split1, split2)`,
/// `q = (vz/split1, vz/split2)`.
#[derive(Debug, Clone)]
pub struct SolutionFamily<T: Real> {
    pub gamma: T,
    pub f_coeffs: [T; 4],
    pub g_coeffs: [T; 4],
    pub split1: Split<T>,
    pub split2: Split<T>,
    pub domain: Interval<T>,
}

/// The two means of a constructed family, with the solutions they came from.
#[derive(Debug, Clone)]
pub struct FamilyMeans<T: Real> {
    pub f_side: BajraktarevicMean<T>,
    pub g_side: BajraktarevicMean<T>,
    pub f: RatioFunction<T>,
    pub g: RatioFunction<T>,
}

impl<T: Real> FamilyMeans<T> {
    pub fn u(&self) -> &GammaSolution<T> {
        &self.f.u
    }
    pub fn v(&self) -> &GammaSolution<T> {
        &self.f.v
    }
    pub fn w(&self) -> &GammaSolution<T> {
        &self.g.u
    }
    pub fn z(&self) -> &GammaSolution<T> {
        &self.g.v
    }
}

impl<T: Real> SolutionFamily<T> {
    fn solutions(&self) -> [GammaSolution<T>; 4] {
        let [a1, b1, c1, d1] = self.f_coeffs;
        let [a2, b2, c2, d2] = self.g_coeffs;
        let mk = |a, b| GammaSolution::new(self.gamma, a, b, self.domain);
        [mk(a1, b1), mk(c1, d1), mk(a2, b2), mk(c2, d2)]
    }

    /// Same family on the largest subdomain around `anchor` where `v > 0` and `z > 0`.
    pub fn restrict_to_positive(&self, anchor: T) -> Result<Self> {
        let [_, v, _, z] = self.solutions();
        let iv = positive_subinterval(&v, anchor).map_err(|_| Error::DomainEmpty)?;
        let iz = positive_subinterval(&z, anchor).map_err(|_| Error::DomainEmpty)?;
        let domain = iv.intersect(&iz).ok_or(Error::DomainEmpty)?;
        Ok(Self { domain, ..self.clone() })
    }

    /// True when both splits are the same constant, i.e. `p1 = p2` everywhere.
    pub fn has_equal_splits(&self) -> bool {
        self.split1.is_constant()
            && self.split2.is_constant()
            && self.split1.func(self.domain).value(self.domain.midpoint())
                == self.split2.func(self.domain).value(self.domain.midpoint())
    }
}

fn check_positive_on<T: Real>(name: &str, s: &GammaSolution<T>) -> Result<()> {
    let domain = s.domain;
    let mid = domain.midpoint();
    let covered =
        positive_subinterval(s, mid).map_err(|_| Error::NotPositive { what: name.into(), at: mid.as_f64() })?;
    if !covers(&covered, &domain) {
        let at = if covered.lo() > domain.lo() { covered.lo() } else { covered.hi() };
        return Err(Error::NotPositive { what: name.into(), at: at.as_f64() });
    }
    Ok(())
}

/// Builds `(A_{f,p}, A_{g,q})` for a family, validating every invariant.
pub fn construct_family<T: Real>(family: &SolutionFamily<T>) -> Result<FamilyMeans<T>> {
    let [u, v, w, z] = family.solutions();
    for (first, second) in [(u, v), (w, z)] {
        let pair = WronskianPair::new(first, second)?;
        if !pair.is_independent() {
            return Err(Error::NotIndependent { wronskian: pair.wronskian.as_f64() });
        }
    }
    let domain = family.domain;
    let jointly_positive =
        domain.chebyshev_nodes(VALIDATION_POINTS).into_iter().any(|x| v.value(x) > T::zero() && z.value(x) > T::zero());
    if !jointly_positive {
        return Err(Error::DomainEmpty);
    }
    check_positive_on("v", &v)?;
    check_positive_on("z", &z)?;

    let split1 = family.split1.func(domain);
    let split2 = family.split2.func(domain);
    ensure_positive("split1", split1.as_ref(), &domain)?;
    ensure_positive("split2", split2.as_ref(), &domain)?;

    let f = ratio_function(u, v)?;
    let g = ratio_function(w, z)?;
    let vz = product(Arc::new(v) as Func<T>, Arc::new(z) as Func<T>);
    let q1 = quotient(vz.clone(), split1.clone());
    let q2 = quotient(vz, split2.clone());

    let f_side = BajraktarevicMean::from_parts(Arc::new(f), split1, split2, domain)?;
    let g_side = BajraktarevicMean::from_parts(Arc::new(g), q1, q2, domain)?;
    Ok(FamilyMeans { f_side, g_side, f, g })
}

/// Which of the four weights to touch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightSlot {
    P1,
    P2,
    Q1,
    Q2,
}

impl WeightSlot {
    pub const ALL: [WeightSlot; 4] = [WeightSlot::P1, WeightSlot::P2, WeightSlot::Q1, WeightSlot::Q2];

    pub fn name(&self) -> &'static str {
        match self {
            WeightSlot::P1 => "p1",
            WeightSlot::P2 => "p2",
            WeightSlot::Q1 => "q1",
            WeightSlot::Q2 => "q2",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|w| w.name() == s)
    }
}

/// Multiplies one weight of the pair by `factor`.
pub fn perturb_pair<T: Real>(
    f_side: &BajraktarevicMean<T>,
    g_side: &BajraktarevicMean<T>,
    slot: WeightSlot,
    factor: Func<T>,
) -> Result<(BajraktarevicMean<T>, BajraktarevicMean<T>)> {
    let touch = |m: &BajraktarevicMean<T>, first: bool| {
        let (mut p1, mut p2) = (m.p.p1.clone(), m.p.p2.clone());
        if first {
            p1 = product(p1, factor.clone());
        } else {
            p2 = product(p2, factor.clone());
        }
        BajraktarevicMean::from_parts(m.f.clone(), p1, p2, m.domain())
    };
    Ok(match slot {
        WeightSlot::P1 => (touch(f_side, true)?, g_side.clone()),
        WeightSlot::P2 => (touch(f_side, false)?, g_side.clone()),
        WeightSlot::Q1 => (f_side.clone(), touch(g_side, true)?),
        WeightSlot::Q2 => (f_side.clone(), touch(g_side, false)?),
    })
}

/// Draws a valid family for the given `gamma` by rejection sampling.
///
/// Denominators are kept at least `0.05` on the domain so the generators stay
/// well conditioned; splits are drawn from the split library.
pub fn random_family<T: Real, R: Rng + ?Sized>(gamma: T, domain: Interval<T>, rng: &mut R) -> SolutionFamily<T> {
    let nodes = domain.chebyshev_nodes(33);
    let draw_pair = |rng: &mut R| loop {
        let a: f64 = rng.gen_range(-2.0..2.0);
        let b: f64 = rng.gen_range(-2.0..2.0);
        let c: f64 = rng.gen_range(-1.0..1.0);
        let d: f64 = rng.gen_range(0.5..2.0);
        let coeffs = [a, b, c, d].map(T::lit);
        let u = GammaSolution::new(gamma, coeffs[0], coeffs[1], domain);
        let v = GammaSolution::new(gamma, coeffs[2], coeffs[3], domain);
        let independent = (a * d - b * c).abs() > 0.1;
        let positive = check_positive_on("v", &v).is_ok() && nodes.iter().all(|&x| v.value(x) > T::lit(0.05));
        if independent && positive && WronskianPair::new(u, v).map(|p| p.is_independent()).unwrap_or(false) {
            return coeffs;
        }
    };
    let f_coeffs = draw_pair(rng);
    let g_coeffs = draw_pair(rng);
    let draw_split = |rng: &mut R| match rng.gen_range(0..3) {
        0 => Split::Constant(T::lit(rng.gen_range(0.5..2.0))),
        1 => Split::Exp(T::lit(rng.gen_range(-1.0..1.0))),
        _ => Split::Quadratic(T::lit(rng.gen_range(0.0..1.0))),
    };
    let split1 = draw_split(rng);
    let split2 = draw_split(rng);
    SolutionFamily { gamma, f_coeffs, g_coeffs, split1, split2, domain }
}
