//! Exact elements of Q(u), u = q^(1/2).
//!
//! An element is stored as
//!
//! ```text
//!     scale * u^shift * num(u) / ( prod_m Φ_m(u)^e_m * rest(u) )
//! ```
//!
//! with `num` and `rest` primitive integer polynomials (positive leading
//! coefficient, nonzero constant term) and `scale` rational. Every
//! q-integer, q-factorial and q-binomial factors into cyclotomic
//! polynomials in u, so in practice `rest` is 1 and reduction is a handful
//! of exact trial divisions rather than a polynomial gcd. Anything that is
//! not visibly cyclotomic lands in `rest` and is reduced by a full gcd.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::intpoly::{cyclotomic, totient, IntPoly};
use super::upoly::UPoly;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct FieldElem {
    scale: BigRational,
    shift: i64,
    num: IntPoly,
    cyclo: BTreeMap<u32, u32>,
    rest: IntPoly,
}

fn rat(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

/// Divide out every Φ_m factor of `p` that the exponent map still allows.
fn cancel_cyclotomic(mut p: IntPoly, cyclo: &mut BTreeMap<u32, u32>) -> IntPoly {
    for (&m, e) in cyclo.iter_mut() {
        while *e > 0 && p.divisible_by_cyclotomic(m) {
            p = p.div_exact_monic(&cyclotomic(m)).expect("divisibility already checked");
            *e -= 1;
        }
    }
    cyclo.retain(|_, e| *e > 0);
    p
}

fn cyclo_product(cyclo: &BTreeMap<u32, u32>) -> IntPoly {
    cyclo
        .iter()
        .fold(IntPoly::one(), |acc, (&m, &e)| acc.mul(&cyclotomic(m).pow(e)))
}

fn merge_max(a: &BTreeMap<u32, u32>, b: &BTreeMap<u32, u32>) -> BTreeMap<u32, u32> {
    let mut out = a.clone();
    for (&m, &e) in b {
        let slot = out.entry(m).or_insert(0);
        *slot = (*slot).max(e);
    }
    out
}

/// Exponent map of `target / have` (entrywise difference, never negative).
fn cofactor(target: &BTreeMap<u32, u32>, have: &BTreeMap<u32, u32>) -> BTreeMap<u32, u32> {
    target
        .iter()
        .filter_map(|(&m, &e)| {
            let d = e - have.get(&m).copied().unwrap_or(0);
            (d > 0).then_some((m, d))
        })
        .collect()
}

/// Split off the cyclotomic factors of a primitive polynomial with
/// nonzero constant term. Candidates are all m with φ(m) <= degree; for
/// large degrees the search is capped, and anything left over is
/// returned as an opaque residual.
fn factor_cyclotomic(p: &IntPoly) -> (BTreeMap<u32, u32>, IntPoly) {
    let mut rem = p.clone();
    let mut found = BTreeMap::new();
    let deg = p.degree() as u32;
    if deg == 0 {
        return (found, rem);
    }
    let cap = if deg <= 16 { 2 * deg * deg + 2 } else { 8 * deg + 64 };
    let mut m = 1;
    while m <= cap && rem.degree() > 0 {
        if totient(m) <= rem.degree() as u32 {
            let phi = cyclotomic(m);
            while rem.degree() >= phi.degree() && rem.divisible_by_cyclotomic(m) {
                rem = rem.div_exact_monic(&phi).expect("checked");
                *found.entry(m).or_insert(0) += 1;
            }
        }
        m += 1;
    }
    (found, rem)
}

impl FieldElem {
    pub fn zero() -> Self {
        FieldElem {
            scale: BigRational::zero(),
            shift: 0,
            num: IntPoly::one(),
            cyclo: BTreeMap::new(),
            rest: IntPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(r: BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        FieldElem { scale: r, ..Self::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(BigInt::from(n)))
    }

    /// n/d as an element.
    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// u^m = q^(m/2).
    pub fn u_pow(m: i64) -> Self {
        FieldElem { scale: BigRational::one(), shift: m, ..Self::zero() }
    }

    /// Product of cyclotomic powers: `scale * u^shift * prod Φ_m^num / prod Φ_m^den`.
    pub(crate) fn from_cyclotomic(
        scale: BigRational,
        shift: i64,
        num: &BTreeMap<u32, u32>,
        den: &BTreeMap<u32, u32>,
    ) -> Self {
        if scale.is_zero() {
            return Self::zero();
        }
        let mut n = num.clone();
        let mut d = den.clone();
        for (m, e) in n.iter_mut() {
            if let Some(f) = d.get_mut(m) {
                let c = (*e).min(*f);
                *e -= c;
                *f -= c;
            }
        }
        n.retain(|_, e| *e > 0);
        d.retain(|_, e| *e > 0);
        FieldElem { scale, shift, num: cyclo_product(&n), cyclo: d, rest: IntPoly::one() }
    }

    /// Canonicalize an arbitrary integer-polynomial fraction.
    fn from_parts(
        mut scale: BigRational,
        mut shift: i64,
        num: IntPoly,
        mut cyclo: BTreeMap<u32, u32>,
        rest: IntPoly,
    ) -> Self {
        if scale.is_zero() || num.is_zero() {
            return Self::zero();
        }
        assert!(!rest.is_zero(), "zero denominator");
        let (c, p) = num.primitive();
        scale *= rat(c);
        let tz = p.trailing_zeros();
        let mut p = p.shift_down(tz);
        shift += tz as i64;

        let (c, r) = rest.primitive();
        scale /= rat(c);
        let tz = r.trailing_zeros();
        let mut r = r.shift_down(tz);
        shift -= tz as i64;

        cyclo.retain(|_, e| *e > 0);
        p = cancel_cyclotomic(p, &mut cyclo);
        if !r.is_one() {
            let g = p.gcd(&r);
            if !g.is_one() {
                p = p.div_exact(&g).expect("gcd divides");
                r = r.div_exact(&g).expect("gcd divides");
            }
        }
        FieldElem { scale, shift, num: p, cyclo, rest: r }
    }

    /// Element from a Laurent polynomial with rational coefficients.
    pub fn from_upoly(p: &UPoly) -> Self {
        let (scale, num) = upoly_to_int(p);
        Self::from_parts(scale, p.offset(), num, BTreeMap::new(), IntPoly::one())
    }

    /// `num / den`, reduced to canonical form.
    pub fn from_fraction(num: &UPoly, den: &UPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::from_upoly(num).checked_div(&Self::from_upoly(den))
    }

    pub fn is_zero(&self) -> bool {
        self.scale.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.scale.is_one() && self.shift == 0 && self.num.is_one() && self.has_unit_den()
    }

    fn has_unit_den(&self) -> bool {
        self.cyclo.is_empty() && self.rest.is_one()
    }

    /// Rational value when the element is a constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        (self.shift == 0 && self.num.is_one() && self.has_unit_den()).then(|| self.scale.clone())
    }

    /// Whether this is `c * u^k` for a rational c.
    pub fn as_monomial(&self) -> Option<(BigRational, i64)> {
        (self.num.is_one() && self.has_unit_den()).then(|| (self.scale.clone(), self.shift))
    }

    fn den_poly(&self) -> IntPoly {
        cyclo_product(&self.cyclo).mul(&self.rest)
    }

    /// Canonical numerator: polynomial in u (offset >= 0).
    pub fn numerator(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let (n, _) = self.integer_fraction();
        int_to_upoly(&n)
    }

    /// Canonical denominator: polynomial in u with offset 0 and positive
    /// leading coefficient, coprime to the numerator.
    pub fn denominator(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::one();
        }
        let (_, d) = self.integer_fraction();
        int_to_upoly(&d)
    }

    /// Numerator and denominator with integer coefficients, contents
    /// coprime and the denominator's leading coefficient positive.
    pub(crate) fn integer_fraction(&self) -> (IntPoly, IntPoly) {
        if self.is_zero() {
            return (IntPoly::zero(), IntPoly::one());
        }
        let n = self.num.scale(self.scale.numer());
        let d = self.den_poly().scale(self.scale.denom());
        if self.shift >= 0 {
            (n.shift_up(self.shift as usize), d)
        } else {
            (n, d.shift_up((-self.shift) as usize))
        }
    }

    /// All polynomial pieces for exact evaluation:
    /// value = scale * u^shift * num / den.
    pub(crate) fn parts(&self) -> (&BigRational, i64, &IntPoly, IntPoly) {
        (&self.scale, self.shift, &self.num, self.den_poly())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (found, residual) = factor_cyclotomic(&self.num);
        let num = self.den_poly();
        Ok(Self::from_parts(
            BigRational::one() / &self.scale,
            -self.shift,
            num,
            found,
            residual,
        ))
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.inverse().expect("negative power of zero").pow(-e);
        }
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        if r.is_zero() || self.is_zero() {
            return Self::zero();
        }
        FieldElem { scale: &self.scale * r, ..self.clone() }
    }

    /// Multiply by u^k.
    pub fn mul_u_pow(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        FieldElem { shift: self.shift + k, ..self.clone() }
    }

    /// The substitution u -> 1/u (equivalently q -> 1/q).
    pub fn subst_q_inverse(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        // num(1/u) = u^-deg * rev(num); Φ_m(1/u) = u^-φ(m) Φ_m(u) for m >= 2,
        // Φ_1(1/u) = -u^-1 Φ_1(u).
        let mut scale = self.scale.clone();
        let mut shift = -self.shift - self.num.degree() as i64;
        let (c, num) = self.num.reversed().primitive();
        scale *= rat(c);
        for (&m, &e) in &self.cyclo {
            shift += e as i64 * totient(m) as i64;
            if m == 1 && e % 2 == 1 {
                scale = -scale;
            }
        }
        shift += self.rest.degree() as i64;
        let (c, rest) = self.rest.reversed().primitive();
        scale /= rat(c);
        FieldElem { scale, shift, num, cyclo: self.cyclo.clone(), rest }
    }

    /// Decide whether every power of u that occurs is even (the element is
    /// a rational function of q).
    pub fn is_even_in_u(&self) -> bool {
        self.shift % 2 == 0
            && self.num.coeffs().iter().skip(1).step_by(2).all(|c| c.is_zero())
            && self.den_poly().coeffs().iter().skip(1).step_by(2).all(|c| c.is_zero())
    }
}

fn upoly_to_int(p: &UPoly) -> (BigRational, IntPoly) {
    if p.is_zero() {
        return (BigRational::zero(), IntPoly::zero());
    }
    let l = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * rat(l.clone())).to_integer()).collect();
    (BigRational::new(BigInt::one(), l), IntPoly::from_coeffs(ints))
}

fn int_to_upoly(p: &IntPoly) -> UPoly {
    UPoly::new(0, p.coeffs().iter().cloned().map(rat).collect())
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        if self.scale != other.scale {
            return false;
        }
        if self.is_zero() {
            return true;
        }
        if self.shift != other.shift || self.num != other.num {
            return false;
        }
        if self.cyclo == other.cyclo && self.rest == other.rest {
            return true;
        }
        if self.rest.is_one() && other.rest.is_one() {
            return false;
        }
        self.den_poly() == other.den_poly()
    }
}

impl Eq for FieldElem {}

impl Default for FieldElem {
    fn default() -> Self {
        Self::zero()
    }
}

impl<'a> Mul<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;

    fn mul(self, b: &'a FieldElem) -> FieldElem {
        if self.is_zero() || b.is_zero() {
            return FieldElem::zero();
        }
        if self.is_one() {
            return b.clone();
        }
        if b.is_one() {
            return self.clone();
        }
        let mut ca = self.cyclo.clone();
        let mut cb = b.cyclo.clone();
        let na = cancel_cyclotomic(self.num.clone(), &mut cb);
        let nb = cancel_cyclotomic(b.num.clone(), &mut ca);
        for (m, e) in cb {
            *ca.entry(m).or_insert(0) += e;
        }
        let scale = &self.scale * &b.scale;
        let shift = self.shift + b.shift;
        if self.rest.is_one() && b.rest.is_one() {
            return FieldElem { scale, shift, num: na.mul(&nb), cyclo: ca, rest: IntPoly::one() };
        }
        FieldElem::from_parts(scale, shift, na.mul(&nb), ca, self.rest.mul(&b.rest))
    }
}

impl<'a> Add<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;

    fn add(self, b: &'a FieldElem) -> FieldElem {
        if self.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return self.clone();
        }
        let cyclo = merge_max(&self.cyclo, &b.cyclo);
        let (rest, ra, rb) = if self.rest.is_one() && b.rest.is_one() {
            (IntPoly::one(), IntPoly::one(), IntPoly::one())
        } else if self.rest == b.rest {
            (self.rest.clone(), IntPoly::one(), IntPoly::one())
        } else {
            let g = self.rest.gcd(&b.rest);
            let fa = b.rest.div_exact(&g).expect("gcd divides");
            let fb = self.rest.div_exact(&g).expect("gcd divides");
            (self.rest.mul(&fa), fa, fb)
        };
        let cof_a = cyclo_product(&cofactor(&cyclo, &self.cyclo)).mul(&ra);
        let cof_b = cyclo_product(&cofactor(&cyclo, &b.cyclo)).mul(&rb);

        // Common rational factor.
        let l = self.scale.denom().lcm(b.scale.denom());
        let ma = self.scale.numer() * (&l / self.scale.denom());
        let mb = b.scale.numer() * (&l / b.scale.denom());
        let g = ma.gcd(&mb);
        let ia = &ma / &g;
        let ib = &mb / &g;
        let shift = self.shift.min(b.shift);
        let ta = self.num.mul(&cof_a).scale(&ia).shift_up((self.shift - shift) as usize);
        let tb = b.num.mul(&cof_b).scale(&ib).shift_up((b.shift - shift) as usize);
        let sum = ta.add(&tb);
        FieldElem::from_parts(BigRational::new(g, l), shift, sum, cyclo, rest)
    }
}

impl<'a> Neg for &'a FieldElem {
    type Output = FieldElem;

    fn neg(self) -> FieldElem {
        FieldElem { scale: -&self.scale, ..self.clone() }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;

    fn neg(mut self) -> FieldElem {
        self.scale = -self.scale;
        self
    }
}

impl<'a> Sub<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;

    fn sub(self, b: &'a FieldElem) -> FieldElem {
        self + &(-b)
    }
}

impl<'a> Div<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;

    /// Panics on division by zero; see [`FieldElem::checked_div`].
    fn div(self, b: &'a FieldElem) -> FieldElem {
        self.checked_div(b).expect("division by zero")
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl<'a> $tr<&'a FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, b: &'a FieldElem) -> FieldElem { (&self).$m(b) }
        }
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, b: FieldElem) -> FieldElem { (&self).$m(&b) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl fmt::Display for FieldElem {
    /// `(P(u))/(Q(u))` with integer coefficients, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let (n, d) = self.integer_fraction();
        write!(f, "({})/({})", int_to_upoly(&n), int_to_upoly(&d))
    }
}

impl From<i64> for FieldElem {
    fn from(n: i64) -> Self {
        FieldElem::from_int(n)
    }
}

impl From<BigRational> for FieldElem {
    fn from(r: BigRational) -> Self {
        FieldElem::from_rational(r)
    }
}

/// Sign of a rational, as an ordering against zero.
pub(crate) fn rat_sign(r: &BigRational) -> Ordering {
    if r.is_positive() {
        Ordering::Greater
    } else if r.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(offset: i64, cs: &[i64]) -> FieldElem {
        FieldElem::from_upoly(&UPoly::from_ints(offset, cs))
    }

    #[test]
    fn polynomial_identity() {
        // (q + 1)(q - 1) = q^2 - 1 with q = u^2
        let a = poly(0, &[1, 0, 1]);
        let b = poly(0, &[-1, 0, 1]);
        assert_eq!(&a * &b, poly(0, &[-1, 0, 0, 0, 1]));
    }

    #[test]
    fn laurent_cancellation() {
        let r = &FieldElem::u_pow(2) / &FieldElem::u_pow(1);
        assert_eq!(r, FieldElem::u_pow(1));
        assert_eq!(r.to_string(), "(u)/(1)");
    }

    #[test]
    fn geometric_factorization() {
        // (1 - q^3)/(1 - q)
        let r = &poly(0, &[1, 0, 0, 0, 0, 0, -1]) / &poly(0, &[1, 0, -1]);
        assert_eq!(r, poly(0, &[1, 0, 1, 0, 1]));
        assert!(r.denominator() == UPoly::one());
    }

    #[test]
    fn division_by_zero_is_reported() {
        assert_eq!(FieldElem::one().checked_div(&FieldElem::zero()), Err(Error::DivisionByZero));
        assert_eq!(FieldElem::zero().inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn non_cyclotomic_denominators_reduce() {
        // (u^2 + 3)(u - 5) / ((u^2 + 3)(2u + 1))  ->  (u - 5)/(2u + 1)
        let f = UPoly::from_ints(0, &[3, 0, 1]);
        let n = f.mul(&UPoly::from_ints(0, &[-5, 1]));
        let d = f.mul(&UPoly::from_ints(0, &[1, 2]));
        let r = FieldElem::from_fraction(&n, &d).unwrap();
        assert_eq!(r.to_string(), "(-5 + u)/(1 + 2*u)");
        let back = &r * &FieldElem::from_upoly(&UPoly::from_ints(0, &[1, 2]));
        assert_eq!(back, poly(0, &[-5, 1]));
    }

    #[test]
    fn sums_over_mixed_denominators() {
        // 1/(1+u) + 1/(1-u) = 2/(1-u^2)
        let a = FieldElem::from_fraction(&UPoly::one(), &UPoly::from_ints(0, &[1, 1])).unwrap();
        let b = FieldElem::from_fraction(&UPoly::one(), &UPoly::from_ints(0, &[1, -1])).unwrap();
        let expect = FieldElem::from_fraction(&UPoly::from_ints(0, &[2]), &UPoly::from_ints(0, &[1, 0, -1])).unwrap();
        assert_eq!(&a + &b, expect);
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn inverse_substitution() {
        let q = FieldElem::u_pow(2);
        assert_eq!(q.subst_q_inverse(), FieldElem::u_pow(-2));
        assert_eq!(q.subst_q_inverse().to_string(), "(1)/(u^2)");
        let five = FieldElem::from_int(5);
        assert_eq!(five.subst_q_inverse(), five);
        let x = FieldElem::from_fraction(&UPoly::from_ints(0, &[3, -1, 0, 2]), &UPoly::from_ints(0, &[-1, 0, 0, 1, 1])).unwrap();
        assert_eq!(x.subst_q_inverse().subst_q_inverse(), x);
    }
}
