use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Laurent polynomial in u = q^(1/2) with rational coefficients.
///
/// `coeffs[i]` is the coefficient of `u^(offset + i)`. Both the first and
/// the last stored coefficient are nonzero; the zero polynomial stores
/// nothing and has offset 0.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UPoly {
    offset: i64,
    coeffs: Vec<BigRational>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(0, vec![c])
    }

    /// `c * u^power`.
    pub fn monomial(c: BigRational, power: i64) -> Self {
        Self::new(power, vec![c])
    }

    /// Builds from an arbitrary coefficient run, trimming zeros at both ends.
    pub fn new(offset: i64, mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead);
        UPoly { offset: offset + lead as i64, coeffs }
    }

    pub fn from_ints(offset: i64, coeffs: &[i64]) -> Self {
        Self::new(
            offset,
            coeffs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Highest power of u present (meaningless for zero).
    pub fn top_power(&self) -> i64 {
        self.offset + self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, power: i64) -> BigRational {
        let i = power - self.offset;
        if i < 0 || i as usize >= self.coeffs.len() {
            BigRational::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.offset + i as i64, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.offset.min(other.offset);
        let hi = self.top_power().max(other.top_power());
        let coeffs = (lo..=hi).map(|p| self.coeff(p) + other.coeff(p)).collect();
        Self::new(lo, coeffs)
    }

    pub fn neg(&self) -> Self {
        UPoly { offset: self.offset, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(self.offset + other.offset, out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.offset, self.coeffs.iter().map(|x| x * c).collect())
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (p, c) in self.terms() {
            let neg = c < &BigRational::zero();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let mag_str = if mag.is_integer() { mag.to_integer().to_string() } else { format!("({mag})") };
            match p {
                0 => write!(f, "{mag_str}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag_str}*")?;
                    }
                    if p == 1 {
                        write!(f, "u")?;
                    } else {
                        write!(f, "u^{p}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
