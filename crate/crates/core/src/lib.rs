//! Jost functions, Jacobi matrices and the asymptotic series of their
//! recursion coefficients.
//!
//! The crate computes the Jost function u of a Jacobi matrix through the
//! Geronimo-Case recursion, its OPUC counterpart through the second Szegő
//! map, the m-function and coefficient stripping, and recovers complete
//! asymptotic series (rates and polynomial amplitudes) from coefficient
//! data. On top of that sit checks of the pole relations between u and the
//! generating function B of the recursion coefficients.
//!
//! All numerics are generic over [`Scalar`] (`f32`, `f64`, [`Dd`]).

// `!(x > y)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod annulus_check;
pub mod asymptotics;
pub mod dd;
pub mod error;
pub mod io;
pub mod jacobi_gc;
pub mod linalg;
pub mod model;
pub mod opuc;
pub mod pole_algebra;
pub mod poly;
pub mod scalar;
pub mod spectral_m;

pub use error::{JostError, Result};
pub use model::{
    AsymptoticSeries, Input, JacobiParameters, Parity, Pole, PoleSet, PowerSeriesModel, SeriesTerm, Tail,
    VerblunskyCoefficients,
};
pub use scalar::{Dd, Scalar};

pub type JacobiParametersF64 = JacobiParameters<f64>;
pub type JacobiParametersDd = JacobiParameters<Dd>;
pub type VerblunskyCoefficientsF64 = VerblunskyCoefficients<f64>;
pub type VerblunskyCoefficientsDd = VerblunskyCoefficients<Dd>;
pub type AsymptoticSeriesF64 = AsymptoticSeries<f64>;
pub type AsymptoticSeriesDd = AsymptoticSeries<Dd>;
