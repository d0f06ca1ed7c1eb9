//! The JSON family specification.

use std::path::Path;

use bajra_core::functions::{builtin, product, Interval};
use bajra_core::invariance::{construct_family, perturb_pair, SolutionFamily, Split, WeightSlot};
use bajra_core::{BajraktarevicMean64, Error, Result};
use serde::{Deserialize, Serialize};

pub const DEFAULT_GRID: usize = 33;

fn default_grid() -> usize {
    DEFAULT_GRID
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitKind {
    Constant,
    Exp,
    Quadratic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitSpec {
    pub kind: SplitKind,
    pub params: Vec<f64>,
}

/// Multiplies one weight or generator by `1 + mu x^2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PerturbSpec {
    /// One of `p1`, `p2`, `q1`, `q2`, `f`, `g`.
    pub weight: String,
    pub mu: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub gamma: f64,
    pub f_coeffs: [f64; 4],
    pub g_coeffs: [f64; 4],
    pub domain: [f64; 2],
    pub split1: SplitSpec,
    pub split2: SplitSpec,
    #[serde(default = "default_grid")]
    pub grid: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perturb: Option<PerturbSpec>,
}

impl SplitSpec {
    fn to_split(&self, name: &str) -> Result<Split<f64>> {
        let [p] = self.params[..] else {
            return Err(Error::InvalidInput(format!("{name} takes exactly one parameter")));
        };
        if !p.is_finite() {
            return Err(Error::InvalidInput(format!("{name} parameter is not finite")));
        }
        Ok(match self.kind {
            SplitKind::Constant => Split::Constant(p),
            SplitKind::Exp => Split::Exp(p),
            SplitKind::Quadratic => Split::Quadratic(p),
        })
    }

    fn from_split(split: Split<f64>) -> Self {
        let kind = match split {
            Split::Constant(_) => SplitKind::Constant,
            Split::Exp(_) => SplitKind::Exp,
            Split::Quadratic(_) => SplitKind::Quadratic,
        };
        Self { kind, params: vec![split.param()] }
    }
}

impl FamilySpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("malformed spec: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    pub fn from_family(family: &SolutionFamily<f64>, grid: usize) -> Self {
        Self {
            gamma: family.gamma,
            f_coeffs: family.f_coeffs,
            g_coeffs: family.g_coeffs,
            domain: [family.domain.lo(), family.domain.hi()],
            split1: SplitSpec::from_split(family.split1),
            split2: SplitSpec::from_split(family.split2),
            grid,
            perturb: None,
        }
    }

    pub fn with_perturbation(mut self, slot: WeightSlot, mu: f64) -> Self {
        self.perturb = Some(PerturbSpec { weight: slot.name().to_string(), mu });
        self
    }

    pub fn family(&self) -> Result<SolutionFamily<f64>> {
        let numbers = [self.gamma].into_iter().chain(self.f_coeffs).chain(self.g_coeffs);
        if numbers.into_iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("non-finite coefficient".into()));
        }
        if self.grid < 2 {
            return Err(Error::InvalidInput("grid needs at least two points per axis".into()));
        }
        Ok(SolutionFamily {
            gamma: self.gamma,
            f_coeffs: self.f_coeffs,
            g_coeffs: self.g_coeffs,
            split1: self.split1.to_split("split1")?,
            split2: self.split2.to_split("split2")?,
            domain: Interval::new(self.domain[0], self.domain[1])?,
        })
    }

    /// The pair `(A_{f,p}, A_{g,q})`, perturbed when requested.
    pub fn means(&self) -> Result<(BajraktarevicMean64, BajraktarevicMean64)> {
        let family = self.family()?;
        let built = construct_family(&family)?;
        match &self.perturb {
            None => Ok((built.f_side, built.g_side)),
            Some(p) => {
                let factor = builtin::quadratic(p.mu, family.domain);
                let bend = |m: &BajraktarevicMean64| {
                    BajraktarevicMean64::from_parts(
                        product(m.f.clone(), factor.clone()),
                        m.p.p1.clone(),
                        m.p.p2.clone(),
                        m.domain(),
                    )
                };
                match p.weight.as_str() {
                    "f" => Ok((bend(&built.f_side)?, built.g_side)),
                    "g" => Ok((built.f_side.clone(), bend(&built.g_side)?)),
                    other => {
                        let slot = WeightSlot::parse(other)
                            .ok_or_else(|| Error::InvalidInput(format!("unknown perturbation target {other:?}")))?;
                        perturb_pair(&built.f_side, &built.g_side, slot, factor)
                    }
                }
            }
        }
    }
}
