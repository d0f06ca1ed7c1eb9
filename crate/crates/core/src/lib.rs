//! Generalized Bajraktarevic means and the invariance of the arithmetic mean.
//!
//! The library is generic over the scalar type through [`Real`] (implemented for
//! `f32` and `f64`); the `*64` aliases below fix the scalar to `f64`, which is what
//! the verification tolerances are calibrated for.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod diagonal;
pub mod error;
pub mod functions;
pub mod invariance;
pub mod means;
pub mod roots;
mod scalar;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Interval64 = functions::Interval<f64>;
pub type Func64 = functions::Func<f64>;
pub type GammaSolution64 = functions::GammaSolution<f64>;
pub type RatioFunction64 = functions::RatioFunction<f64>;
pub type WeightPair64 = means::WeightPair<f64>;
pub type BajraktarevicMean64 = means::BajraktarevicMean<f64>;
pub type DiagonalDerivatives64 = diagonal::DiagonalDerivatives<f64>;
pub type SolutionFamily64 = invariance::SolutionFamily<f64>;
pub type FamilyMeans64 = invariance::FamilyMeans<f64>;
pub type ResidualReport64 = invariance::ResidualReport<f64>;
pub type Tolerances64 = invariance::Tolerances<f64>;
pub type Verdict64 = invariance::Verdict<f64>;

pub type Interval32 = functions::Interval<f32>;
pub type BajraktarevicMean32 = means::BajraktarevicMean<f32>;
