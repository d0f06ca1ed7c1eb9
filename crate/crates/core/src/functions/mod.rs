//! Four times differentiable functions, the `gamma` fundamental system and the Schwarzian.

pub mod builtin;
mod c4;
mod gamma;
mod interval;
mod jet;
mod schwarzian;

pub use c4::{
    affine, compose, product, quotient, restrict, Affine, C4Function, Compose, Func, Product, Quotient, Restrict,
};
pub use gamma::{
    covers, eval_cgamma, eval_sc, eval_sgamma, positive_subinterval, ratio_function, GammaSolution, RatioFunction,
    WronskianPair, SERIES_SWITCH,
};
pub use interval::{linspace, Interval};
pub use jet::{Jet, JET_LEN};
pub use schwarzian::{schwarzian, schwarzian_derivative, schwarzian_derivative_of_jet, schwarzian_of_jet};
