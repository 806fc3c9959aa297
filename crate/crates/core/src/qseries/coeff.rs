use std::fmt::Debug;

use crate::qfield::{FieldElem, NumericValue};

/// Coefficient ring of a truncated series.
///
/// `is_zero` must be exact for symbolic rings; numeric values count as
/// zero only when they are exactly zero with zero error.
pub trait Coeff: Clone + Debug + PartialEq + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Multiplicative inverse, if it exists in the ring.
    fn try_inverse(&self) -> Option<Self>;
    /// Multiplication by a field scalar.
    fn scaled(&self, c: &FieldElem) -> Self;
}

impl Coeff for FieldElem {
    fn zero() -> Self {
        FieldElem::zero()
    }
    fn one() -> Self {
        FieldElem::one()
    }
    fn is_zero(&self) -> bool {
        FieldElem::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn try_inverse(&self) -> Option<Self> {
        self.inverse().ok()
    }
    fn scaled(&self, c: &FieldElem) -> Self {
        self * c
    }
}

impl Coeff for NumericValue {
    fn zero() -> Self {
        NumericValue::from_int(0, crate::qfield::DEFAULT_PREC)
    }
    fn one() -> Self {
        NumericValue::from_int(1, crate::qfield::DEFAULT_PREC)
    }
    fn is_zero(&self) -> bool {
        self.is_exact_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        NumericValue::negated(self)
    }
    fn try_inverse(&self) -> Option<Self> {
        self.recip().ok()
    }
    /// Numeric rings cannot absorb a symbolic scalar without a value of q;
    /// only rational constants are accepted.
    fn scaled(&self, c: &FieldElem) -> Self {
        let r = c.as_rational().expect("numeric series can only be scaled by rational constants");
        self * &NumericValue::from_rational(&r, self.prec())
    }
}
