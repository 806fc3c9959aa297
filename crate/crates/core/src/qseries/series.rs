use std::fmt;

use super::coeff::Coeff;
use crate::error::{Error, Result};
use crate::qfield::FieldElem;

/// Name of the series indeterminate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    W,
    Z,
}

impl Var {
    pub fn symbol(self) -> char {
        match self {
            Var::W => 'w',
            Var::Z => 'z',
        }
    }
}

/// `Σ_{n=0}^{order} c_n x^n + O(x^(order+1))`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<C: Coeff> {
    var: Var,
    coeffs: Vec<C>,
}

impl<C: Coeff> TruncSeries<C> {
    /// Pads or truncates `coeffs` to exactly `order + 1` entries.
    pub fn new(var: Var, order: usize, mut coeffs: Vec<C>) -> Self {
        coeffs.resize(order + 1, C::zero());
        TruncSeries { var, coeffs }
    }

    pub fn from_fn(var: Var, order: usize, f: impl FnMut(usize) -> C) -> Self {
        TruncSeries { var, coeffs: (0..=order).map(f).collect() }
    }

    pub fn zero(var: Var, order: usize) -> Self {
        Self::new(var, order, Vec::new())
    }

    pub fn one(var: Var, order: usize) -> Self {
        Self::new(var, order, vec![C::one()])
    }

    /// `x^k` (zero if k exceeds the order).
    pub fn monomial(var: Var, order: usize, k: usize) -> Self {
        Self::from_fn(var, order, |n| if n == k { C::one() } else { C::zero() })
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Index of the first nonzero coefficient, `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        TruncSeries { var: self.var, coeffs: self.coeffs[..=order].to_vec() }
    }

    fn check_var(&self, other: &Self) -> Result<()> {
        if self.var != other.var {
            return Err(Error::VariableMismatch(self.var.symbol(), other.var.symbol()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let n = self.order().min(other.order());
        Ok(Self::from_fn(self.var, n, |i| self.coeffs[i].plus(&other.coeffs[i])))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let n = self.order().min(other.order());
        Ok(Self::from_fn(self.var, n, |i| self.coeffs[i].minus(&other.coeffs[i])))
    }

    pub fn neg(&self) -> Self {
        TruncSeries { var: self.var, coeffs: self.coeffs.iter().map(|c| c.negated()).collect() }
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let n = self.order().min(other.order());
        let mut out = vec![C::zero(); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].plus(&a.times(b));
                }
            }
        }
        Ok(TruncSeries { var: self.var, coeffs: out })
    }

    pub fn scale(&self, c: &C) -> Self {
        TruncSeries { var: self.var, coeffs: self.coeffs.iter().map(|x| x.times(c)).collect() }
    }

    pub fn scale_field(&self, c: &FieldElem) -> Self {
        TruncSeries { var: self.var, coeffs: self.coeffs.iter().map(|x| x.scaled(c)).collect() }
    }

    /// Substitute x -> c·x.
    pub fn dilate(&self, c: &FieldElem) -> Self {
        let mut p = FieldElem::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            coeffs.push(x.scaled(&p));
            p = &p * c;
        }
        TruncSeries { var: self.var, coeffs }
    }

    /// Multiply by x^k, keeping the order (top coefficients fall off).
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        Self::from_fn(self.var, n, |i| if i >= k { self.coeffs[i - k].clone() } else { C::zero() })
    }

    /// Divide by x^k; the order drops by k. The low coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.order() {
            return Err(Error::ValuationError(format!("shift {k} exceeds order {}", self.order())));
        }
        if self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::ValuationError(format!("series is not divisible by {}^{k}", self.var.symbol())));
        }
        Ok(TruncSeries { var: self.var, coeffs: self.coeffs[k..].to_vec() })
    }

    /// Multiplicative inverse by back-substitution.
    pub fn invert(&self) -> Result<Self> {
        let inv0 = self.coeffs[0].try_inverse().ok_or(Error::NotInvertible)?;
        let n = self.order();
        let mut out: Vec<C> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for m in 1..=n {
            let mut acc = C::zero();
            for k in 1..=m {
                let a = &self.coeffs[k];
                if !a.is_zero() && !out[m - k].is_zero() {
                    acc = acc.plus(&a.times(&out[m - k]));
                }
            }
            out.push(acc.times(&inv0).negated());
        }
        Ok(TruncSeries { var: self.var, coeffs: out })
    }

    /// Exact quotient `numer / denom` when the denominator has positive
    /// valuation v: both are divided by x^v first, so the result has
    /// order `min(orders) - v`.
    pub fn divide_shift(numer: &Self, denom: &Self) -> Result<Self> {
        numer.check_var(denom)?;
        let v = denom
            .valuation()
            .ok_or_else(|| Error::ValuationError("denominator is the zero series".into()))?;
        let vn = numer.valuation().unwrap_or(usize::MAX);
        if vn < v {
            return Err(Error::ValuationError(format!("numerator valuation {vn} below denominator valuation {v}")));
        }
        let order = numer.order().min(denom.order());
        let num = numer.truncate(order).shift_down(v)?;
        let den = denom.truncate(order).shift_down(v)?;
        let inv0 = den.coeffs[0].try_inverse().ok_or(Error::NotInvertible)?;
        let m = order - v;
        let mut out: Vec<C> = Vec::with_capacity(m + 1);
        for i in 0..=m {
            let mut acc = num.coeffs[i].clone();
            for k in 1..=i {
                let d = &den.coeffs[k];
                if !d.is_zero() && !out[i - k].is_zero() {
                    acc = acc.minus(&d.times(&out[i - k]));
                }
            }
            out.push(acc.times(&inv0));
        }
        Ok(TruncSeries { var: numer.var, coeffs: out })
    }

    pub fn map<D: Coeff>(&self, f: impl FnMut(&C) -> D) -> TruncSeries<D> {
        TruncSeries { var: self.var, coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn try_map<D: Coeff>(&self, f: impl FnMut(&C) -> Result<D>) -> Result<TruncSeries<D>> {
        Ok(TruncSeries { var: self.var, coeffs: self.coeffs.iter().map(f).collect::<Result<_>>()? })
    }

    /// Even part `Σ c_{2n} x^{2n}` or odd part, by parity.
    pub fn parity_part(&self, odd: bool) -> Self {
        let r = usize::from(odd);
        Self::from_fn(self.var, self.order(), |i| if i % 2 == r { self.coeffs[i].clone() } else { C::zero() })
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = self.var.symbol();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*{x}")?,
                _ => write!(f, "{c}*{x}^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O({x}^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(cs: &[i64]) -> TruncSeries<FieldElem> {
        TruncSeries::new(Var::W, cs.len() - 1, cs.iter().map(|&c| FieldElem::from_int(c)).collect())
    }

    #[test]
    fn product_truncates() {
        let p = s(&[1, 1, 0]).mul(&s(&[1, -1, 0])).unwrap();
        assert_eq!(p, s(&[1, 0, -1]));
        let a = s(&[3, 1, 4, 1]);
        assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn geometric_inverse() {
        let inv = s(&[1, 1, 0, 0, 0, 0]).invert().unwrap();
        assert_eq!(inv, s(&[1, -1, 1, -1, 1, -1]));
        assert_eq!(s(&[0, 1]).invert(), Err(Error::NotInvertible));
    }

    #[test]
    fn division_with_shift() {
        let q = TruncSeries::divide_shift(&s(&[0, 0, 1, 0]), &s(&[0, 1, 0, 0])).unwrap();
        assert_eq!(q, s(&[0, 1, 0]));
        assert!(matches!(
            TruncSeries::divide_shift(&s(&[1, 0]), &s(&[0, 1])),
            Err(Error::ValuationError(_))
        ));
    }

    #[test]
    fn variable_mismatch() {
        let a = s(&[1, 2]);
        let b = TruncSeries::new(Var::Z, 1, vec![FieldElem::one()]);
        assert_eq!(a.add(&b), Err(Error::VariableMismatch('w', 'z')));
    }
}
