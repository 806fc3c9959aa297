//! Exact arithmetic in Q(u), u = q^(1/2), q-combinatorial scalars, and
//! numeric specialization at rational q.

mod elem;
pub(crate) mod intpoly;
mod numeric;
mod parse;
mod scalars;
mod upoly;

pub use elem::FieldElem;
pub use numeric::{
    eval_at, exact_value, rational_to_decimal, real_from_rational, real_to_f64, real_to_rational, sign_at,
    NumericValue, QuadSurd, Real, DEFAULT_PREC,
};
pub use scalars::{
    pochhammer, q_binomial, q_binomial_in, q_factorial, q_factorial_in, q_factorial_inv, q_factorial_inv_in, q_int,
    q_int_in, q_pow_half, q_pow_half_in, QBase,
};
pub use upoly::UPoly;
