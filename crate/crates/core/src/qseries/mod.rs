//! Truncated formal power series over exact (or certified numeric)
//! coefficient rings, and the q-exponential building blocks.

mod coeff;
mod generating;
mod series;

pub use coeff::Coeff;
pub use generating::{
    composition_coeff, coshq_series, cq_series, exp_q_series, exp_q_series_in, named_reciprocal_series,
    printed_conversion_coeff, sinhq_series, sq_series, Reciprocal,
};
pub use series::{TruncSeries, Var};
