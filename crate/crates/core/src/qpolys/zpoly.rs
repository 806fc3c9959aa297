use std::fmt;

use num_rational::BigRational;

use crate::qfield::{q_int, q_pow_half, FieldElem};
use crate::qseries::Coeff;

/// Polynomial in z with coefficients in Q(u). Trailing zeros are trimmed,
/// so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ZPoly {
    coeffs: Vec<FieldElem>,
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn zero() -> Self {
        ZPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(FieldElem::one())
    }

    pub fn constant(c: FieldElem) -> Self {
        Self::new(vec![c])
    }

    /// `c·z^k`.
    pub fn monomial(c: FieldElem, k: usize) -> Self {
        let mut v = vec![FieldElem::zero(); k];
        v.push(c);
        Self::new(v)
    }

    pub fn z() -> Self {
        Self::monomial(FieldElem::one(), 1)
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| FieldElem::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> FieldElem {
        self.coeffs.get(k).cloned().unwrap_or_else(FieldElem::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| &self.coeff(k) - &other.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        ZPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![FieldElem::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ZPoly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.scale_rational(r)).collect())
    }

    /// Horner evaluation at a field element.
    pub fn eval(&self, z: &FieldElem) -> FieldElem {
        self.coeffs.iter().rev().fold(FieldElem::zero(), |acc, c| &(&acc * z) + c)
    }

    /// Substitute z -> c·z.
    pub fn dilate(&self, c: &FieldElem) -> Self {
        let mut p = FieldElem::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            out.push(x * &p);
            p = &p * c;
        }
        Self::new(out)
    }

    /// Coefficientwise q -> 1/q.
    pub fn subst_q_inverse(&self) -> Self {
        ZPoly { coeffs: self.coeffs.iter().map(|c| c.subst_q_inverse()).collect() }
    }
}

/// Symmetric q-difference in z: z^n -> q^((1-n)/2) [n]_q z^(n-1).
pub fn delta_q(p: &ZPoly) -> ZPoly {
    ZPoly::new(
        p.coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, c)| &(c * &q_pow_half(1 - n as i64)) * &q_int(n as u32))
            .collect(),
    )
}

/// Apply `delta_q` k times.
pub fn delta_q_pow(p: &ZPoly, k: usize) -> ZPoly {
    (0..k).fold(p.clone(), |acc, _| delta_q(&acc))
}

/// (c·z; q)_n = Π_{j<n} (1 - c q^j z).
pub fn pochhammer_poly(c: &FieldElem, n: usize) -> ZPoly {
    let mut acc = ZPoly::one();
    for j in 0..n {
        let root = -(c * &q_pow_half(2 * j as i64));
        acc = acc.mul(&ZPoly::new(vec![FieldElem::one(), root]));
    }
    acc
}

impl Coeff for ZPoly {
    fn zero() -> Self {
        ZPoly::zero()
    }
    fn one() -> Self {
        ZPoly::one()
    }
    fn is_zero(&self) -> bool {
        ZPoly::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn try_inverse(&self) -> Option<Self> {
        match self.degree() {
            Some(0) => self.coeffs[0].inverse().ok().map(ZPoly::constant),
            _ => None,
        }
    }
    fn scaled(&self, c: &FieldElem) -> Self {
        self.scale(c)
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "[{c}]")?,
                1 => write!(f, "[{c}]*z")?,
                _ => write!(f, "[{c}]*z^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_on_monomials() {
        assert_eq!(delta_q(&ZPoly::z()), ZPoly::one());
        let z2 = ZPoly::monomial(FieldElem::one(), 2);
        let expect = ZPoly::monomial(&q_pow_half(-1) * &q_int(2), 1);
        assert_eq!(delta_q(&z2), expect);
        assert!(delta_q(&ZPoly::constant(FieldElem::from_int(7))).is_zero());
    }

    #[test]
    fn delta_matches_difference_quotient() {
        // (p(u z) - p(z/u)) / (z (u - 1/u)) for p = 1 + 2z - z^3 + z^4
        let p = ZPoly::from_ints(&[1, 2, 0, -1, 1]);
        let u = q_pow_half(1);
        let ui = q_pow_half(-1);
        let num = p.dilate(&u).sub(&p.dilate(&ui));
        // num has zero constant term; divide by z and by (u - 1/u)
        let shifted = ZPoly::new(num.coeffs()[1..].to_vec());
        let d = (&u - &ui).inverse().unwrap();
        assert_eq!(shifted.scale(&d), delta_q(&p));
    }

    #[test]
    fn small_pochhammers() {
        assert_eq!(pochhammer_poly(&FieldElem::one(), 0), ZPoly::one());
        assert_eq!(pochhammer_poly(&FieldElem::one(), 1), ZPoly::from_ints(&[1, -1]));
        let q = q_pow_half(2);
        let p2 = ZPoly::new(vec![FieldElem::one(), -(&FieldElem::one() + &q), q]);
        assert_eq!(pochhammer_poly(&FieldElem::one(), 2), p2);
    }
}
