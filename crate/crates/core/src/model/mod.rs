//! Domain types shared by every module.

pub mod jacobi;
pub mod pole_set;
pub mod power_series;
pub mod series;
pub mod verblunsky;

pub use jacobi::{rank_one_a, rank_one_b, JacobiParameters, Tail, MAX_REALIZE};
pub use pole_set::{Pole, PoleSet};
pub use power_series::PowerSeriesModel;
pub use series::{AsymptoticSeries, Parity, SeriesTerm};
pub use verblunsky::VerblunskyCoefficients;

/// Either kind of coefficient input.
#[derive(Clone, Debug, PartialEq)]
pub enum Input<T> {
    Jacobi(JacobiParameters<T>),
    Verblunsky(VerblunskyCoefficients<T>),
}
