//! Numeric specialization of field elements at a rational q in (0, 1).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::IBig;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::elem::{rat_sign, FieldElem};
use super::intpoly::IntPoly;
use crate::error::{Error, Result};

/// Binary floating point with round-half-even.
pub type Real = FBig<HalfEven, 2>;

pub const DEFAULT_PREC: usize = 128;

pub fn to_ibig(n: &BigInt) -> IBig {
    IBig::from_le_bytes(&n.to_signed_bytes_le())
}

pub fn from_ibig(n: &IBig) -> BigInt {
    BigInt::from_signed_bytes_le(&n.to_le_bytes())
}

pub fn real_from_int(n: &BigInt, prec: usize) -> Real {
    Real::from(to_ibig(n)).with_precision(prec).value()
}

/// Nearest `prec`-bit float to a rational (within a couple of ulps).
pub fn real_from_rational(r: &BigRational, prec: usize) -> Real {
    let n = real_from_int(r.numer(), prec + 2);
    let d = real_from_int(r.denom(), prec + 2);
    (n / d).with_precision(prec).value()
}

/// Exact rational value of a binary float.
pub fn real_to_rational(x: &Real) -> BigRational {
    let sig = from_ibig(x.repr().significand());
    let e = x.repr().exponent();
    let two = BigInt::from(2);
    if e >= 0 {
        BigRational::from_integer(sig * num_traits::pow(two, e as usize))
    } else {
        BigRational::new(sig, num_traits::pow(two, (-e) as usize))
    }
}

pub fn real_to_f64(x: &Real) -> f64 {
    x.to_f64().value()
}

/// Decimal rendering with `digits` significant digits (truncated).
pub fn rational_to_decimal(r: &BigRational, digits: usize) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let neg = r.is_negative();
    let a = r.abs();
    // exponent estimate so that 10^(digits-1) <= a*10^k < 10^digits
    let ten = BigRational::from_integer(BigInt::from(10));
    let mut k: i64 = digits as i64 - 1 - (a.numer().to_string().len() as i64 - a.denom().to_string().len() as i64);
    let lo = BigInt::from(10).pow(digits as u32 - 1);
    let hi = &lo * 10;
    let mut m = (&a * pow_rat(&ten, k)).to_integer();
    while m >= hi {
        k -= 1;
        m = (&a * pow_rat(&ten, k)).to_integer();
    }
    while m < lo {
        k += 1;
        m = (&a * pow_rat(&ten, k)).to_integer();
    }
    let s = m.to_string();
    let exp10 = digits as i64 - 1 - k;
    let body = format!("{}.{}", &s[..1], s[1..].trim_end_matches('0'));
    let body = body.trim_end_matches('.').to_string();
    let sign = if neg { "-" } else { "" };
    match exp10 {
        0 => format!("{sign}{body}"),
        e if (-4..0).contains(&e) || (1..=20).contains(&e) => {
            // plain positional form
            let digits_str = s.trim_end_matches('0');
            let digits_str = if digits_str.is_empty() { "0" } else { digits_str };
            let point = e + 1;
            if point <= 0 {
                format!("{sign}0.{}{}", "0".repeat((-point) as usize), digits_str)
            } else if point as usize >= digits_str.len() {
                format!("{sign}{}{}", digits_str, "0".repeat(point as usize - digits_str.len()))
            } else {
                format!("{sign}{}.{}", &digits_str[..point as usize], &digits_str[point as usize..])
            }
        }
        e => format!("{sign}{body}e{e}"),
    }
}

fn pow_rat(b: &BigRational, k: i64) -> BigRational {
    if k >= 0 {
        num_traits::pow(b.clone(), k as usize)
    } else {
        num_traits::pow(b.recip(), (-k) as usize)
    }
}

/// A float with a certified error radius: the true value lies in
/// `[value - err, value + err]`.
#[derive(Clone, Debug)]
pub struct NumericValue {
    value: Real,
    err: f64,
}

/// Relative rounding unit for `prec` bits, padded by one bit.
fn unit(prec: usize) -> f64 {
    2f64.powi(1 - prec.min(1000) as i32)
}

/// Upper bound for f64 magnitude, nudged up to absorb conversion error.
fn abs_up(x: &Real) -> f64 {
    let f = real_to_f64(x).abs();
    f * (1.0 + 4.0 * f64::EPSILON) + f64::MIN_POSITIVE
}

fn bump(e: f64) -> f64 {
    e * (1.0 + 4.0 * f64::EPSILON)
}

impl NumericValue {
    pub fn new(value: Real, err: f64) -> Self {
        assert!(err >= 0.0 && err.is_finite(), "error radius must be finite and non-negative");
        NumericValue { value, err }
    }

    pub fn exact(value: Real) -> Self {
        Self::new(value, 0.0)
    }

    pub fn from_int(n: i64, prec: usize) -> Self {
        Self::exact(real_from_int(&BigInt::from(n), prec))
    }

    pub fn from_rational(r: &BigRational, prec: usize) -> Self {
        let v = real_from_rational(r, prec);
        let err = if real_to_rational(&v) == *r { 0.0 } else { abs_up(&v) * unit(prec) };
        Self::new(v, err)
    }

    pub fn from_f64(x: f64, prec: usize) -> Self {
        Self::exact(Real::try_from(x).expect("finite").with_precision(prec).value())
    }

    pub fn value(&self) -> &Real {
        &self.value
    }

    pub fn err(&self) -> f64 {
        self.err
    }

    pub fn to_f64(&self) -> f64 {
        real_to_f64(&self.value)
    }

    pub fn prec(&self) -> usize {
        self.value.precision().max(DEFAULT_PREC)
    }

    pub fn abs_upper(&self) -> f64 {
        bump(abs_up(&self.value) + self.err)
    }

    pub fn with_err(mut self, extra: f64) -> Self {
        self.err = bump(self.err + extra);
        self
    }

    /// Sign of the true value if the error radius excludes zero.
    pub fn certified_sign(&self) -> Option<Ordering> {
        let v = real_to_f64(&self.value);
        if v.abs() * (1.0 - 4.0 * f64::EPSILON) > self.err {
            Some(if v > 0.0 { Ordering::Greater } else { Ordering::Less })
        } else if self.err == 0.0 && self.value == Real::ZERO {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn contains(&self, x: f64, slack: f64) -> bool {
        (self.to_f64() - x).abs() <= self.err + slack
    }

    pub fn abs(&self) -> Self {
        NumericValue { value: if self.value < Real::ZERO { -self.value.clone() } else { self.value.clone() }, err: self.err }
    }

    pub fn recip(&self) -> Result<Self> {
        let one = NumericValue::exact(real_from_int(&BigInt::one(), self.prec()));
        one.div(self)
    }

    /// Quotient with propagated error; fails when the divisor interval contains 0.
    pub fn div(&self, b: &Self) -> Result<Self> {
        let bm = real_to_f64(&b.value).abs();
        if bm <= b.err * (1.0 + 8.0 * f64::EPSILON) || b.value == Real::ZERO {
            return Err(Error::DivisionByZero);
        }
        let prec = self.prec().max(b.prec());
        let v = (self.value.clone().with_precision(prec).value() / b.value.clone().with_precision(prec).value())
            .with_precision(prec)
            .value();
        let am = real_to_f64(&self.value).abs();
        let prop = (am * b.err + bm * self.err) / (bm * (bm - b.err));
        let err = prop + abs_up(&v) * unit(prec);
        Ok(NumericValue::new(v, bump(err)))
    }

    pub fn to_decimal(&self, digits: usize) -> String {
        rational_to_decimal(&real_to_rational(&self.value), digits)
    }

    /// Digits justified by the error radius (at least 1, at most 40).
    pub fn significant_digits(&self) -> usize {
        let v = self.to_f64().abs();
        if self.err == 0.0 || v == 0.0 {
            return 40;
        }
        ((v / self.err).log10().floor() as i64).clamp(1, 40) as usize
    }

    /// Unary minus.
    pub fn negated(&self) -> Self {
        NumericValue { value: -self.value.clone(), err: self.err }
    }

    pub fn is_exact_zero(&self) -> bool {
        self.err == 0.0 && self.value == Real::ZERO
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = NumericValue::exact(real_from_int(&BigInt::one(), self.prec()));
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl PartialEq for NumericValue {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.err == other.err
    }
}

impl<'a> Add<&'a NumericValue> for &'a NumericValue {
    type Output = NumericValue;
    fn add(self, b: &'a NumericValue) -> NumericValue {
        let prec = self.prec().max(b.prec());
        let exact_sum = self.value.clone() + b.value.clone();
        let v = exact_sum.clone().with_precision(prec).value();
        let round = if v == exact_sum { 0.0 } else { abs_up(&v) * unit(prec) };
        NumericValue::new(v, bump(self.err + b.err + round))
    }
}

impl<'a> Sub<&'a NumericValue> for &'a NumericValue {
    type Output = NumericValue;
    fn sub(self, b: &'a NumericValue) -> NumericValue {
        self + &b.negated()
    }
}

impl<'a> Mul<&'a NumericValue> for &'a NumericValue {
    type Output = NumericValue;
    fn mul(self, b: &'a NumericValue) -> NumericValue {
        let prec = self.prec().max(b.prec());
        let exact = self.value.clone() * b.value.clone();
        let v = exact.clone().with_precision(prec).value();
        let round = if v == exact { 0.0 } else { abs_up(&v) * unit(prec) };
        let am = abs_up(&self.value);
        let bm = abs_up(&b.value);
        let prop = am * b.err + bm * self.err + self.err * b.err;
        NumericValue::new(v, bump(prop + round))
    }
}

impl Neg for NumericValue {
    type Output = NumericValue;
    fn neg(self) -> NumericValue {
        self.negated()
    }
}

impl<'a> Neg for &'a NumericValue {
    type Output = NumericValue;
    fn neg(self) -> NumericValue {
        self.negated()
    }
}

impl fmt::Display for NumericValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {:.3e}", self.to_decimal(self.significant_digits().min(40)), self.err)
    }
}

impl Serialize for NumericValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("NumericValue", 2)?;
        st.serialize_field("value", &self.to_decimal(40))?;
        st.serialize_field("err", &self.err)?;
        st.end()
    }
}

/// An exact number `x + y·√q` with rational x, y and q > 0.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadSurd {
    pub x: BigRational,
    pub y: BigRational,
    pub q: BigRational,
}

impl QuadSurd {
    pub fn sign(&self) -> Ordering {
        let sx = rat_sign(&self.x);
        let sy = rat_sign(&self.y);
        if sy == Ordering::Equal {
            return sx;
        }
        if sx == Ordering::Equal || sx == sy {
            return sy;
        }
        // opposite signs: compare x^2 with y^2 q
        let lhs = &self.x * &self.x;
        let rhs = &self.y * &self.y * &self.q;
        match lhs.cmp(&rhs) {
            Ordering::Greater => sx,
            Ordering::Less => sy,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    /// Floating value with an error radius covering the truncated √q.
    pub fn to_numeric(&self, prec: usize) -> NumericValue {
        if self.y.is_zero() {
            return NumericValue::from_rational(&self.x, prec);
        }
        // s_lo = floor(√(n d) 2^p) / (d 2^p) satisfies 0 <= √q - s_lo < 1/(d 2^p)
        let p = prec + 8;
        let n = self.q.numer();
        let d = self.q.denom();
        let scale = BigInt::one() << p;
        let root = (n * d * &scale * &scale).sqrt();
        let den = d * &scale;
        let s_lo = BigRational::new(root, den.clone());
        let v = &self.x + &self.y * &s_lo;
        let trunc = (self.y.abs() / BigRational::from_integer(den)).to_f64_lossy();
        NumericValue::from_rational(&v, prec).with_err(trunc)
    }
}

trait ToF64Lossy {
    fn to_f64_lossy(&self) -> f64;
}

impl ToF64Lossy for BigRational {
    fn to_f64_lossy(&self) -> f64 {
        let v = real_from_rational(self, 64);
        abs_up(&v)
    }
}

fn perfect_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Homogenized values of the even and odd parts of p at q = a/b:
/// p(u) = E(u^2) + u·O(u^2), returns (E(a/b)·b^k, O(a/b)·b^k).
fn split_eval(p: &IntPoly, a: &BigInt, b: &BigInt, k: usize) -> (BigInt, BigInt) {
    let mut bpows = vec![BigInt::one(); k + 1];
    for i in 1..=k {
        bpows[i] = &bpows[i - 1] * b;
    }
    let homog = |cs: Vec<&BigInt>| -> BigInt {
        let mut total = BigInt::zero();
        let mut apow = BigInt::one();
        for (i, c) in cs.iter().enumerate() {
            if !c.is_zero() {
                total += *c * &apow * &bpows[k - i];
            }
            apow *= a;
        }
        total
    };
    let even = p.coeffs().iter().step_by(2).collect();
    let odd = p.coeffs().iter().skip(1).step_by(2).collect();
    (homog(even), homog(odd))
}

/// Exact value of `a` at the rational point q, as x + y√q.
pub fn exact_value(a: &FieldElem, q: &BigRational) -> Result<QuadSurd> {
    if !q.is_positive() {
        return Err(Error::InvalidArgument(format!("q = {q} must be positive")));
    }
    if a.is_zero() {
        return Ok(QuadSurd { x: BigRational::zero(), y: BigRational::zero(), q: q.clone() });
    }
    let (scale, shift, num, den) = a.parts();
    let qa = q.numer();
    let qb = q.denom();
    let k = num.degree().max(den.degree()) / 2;
    let (na, nb) = split_eval(num, qa, qb, k);
    let (dc, dd) = split_eval(&den, qa, qb, k);
    let r = |n: BigInt| BigRational::from_integer(n);

    // u^shift = q^h · u^par
    let h = shift.div_euclid(2);
    let par = shift.rem_euclid(2);
    let qh = pow_rat(q, h) * scale;

    if let (Some(sa), Some(sb)) = (perfect_square(qa), perfect_square(qb)) {
        let s = BigRational::new(sa, sb);
        let dv = r(dc) + r(dd) * &s;
        if dv.is_zero() {
            return Err(Error::PoleAtQ(q.to_string()));
        }
        let mut v = (r(na) + r(nb) * &s) / dv * qh;
        if par == 1 {
            v *= &s;
        }
        return Ok(QuadSurd { x: v, y: BigRational::zero(), q: q.clone() });
    }

    // (A + B s)/(C + D s) = ((AC - BDq) + (BC - AD) s)/(C^2 - D^2 q)
    let (ra, rb, rc, rd) = (r(na), r(nb), r(dc), r(dd));
    let norm = &rc * &rc - &rd * &rd * q;
    if norm.is_zero() {
        return Err(Error::PoleAtQ(q.to_string()));
    }
    let mut x = (&ra * &rc - &rb * &rd * q) / &norm * &qh;
    let mut y = (&rb * &rc - &ra * &rd) / &norm * &qh;
    if par == 1 {
        let nx = &y * q;
        y = x;
        x = nx;
    }
    Ok(QuadSurd { x, y, q: q.clone() })
}

/// Value of `a` at q with a certified error radius.
pub fn eval_at(a: &FieldElem, q: &BigRational, prec: usize) -> Result<NumericValue> {
    Ok(exact_value(a, q)?.to_numeric(prec))
}

/// Exact sign of `a` at q.
pub fn sign_at(a: &FieldElem, q: &BigRational) -> Result<Ordering> {
    Ok(exact_value(a, q)?.sign())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::scalars::{q_int, q_pow_half};

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rational_evaluations_are_exact() {
        let v = exact_value(&q_int(3), &r(1, 2)).unwrap();
        assert_eq!(v.x, r(7, 4));
        assert!(v.is_rational());
        let n = eval_at(&q_int(3), &r(1, 2), 128).unwrap();
        assert_eq!(n.err(), 0.0);
        assert_eq!(n.to_f64(), 1.75);
        let h = eval_at(&q_pow_half(1), &r(1, 4), 128).unwrap();
        assert_eq!(h.to_f64(), 0.5);
        assert_eq!(h.err(), 0.0);
    }

    #[test]
    fn half_power_is_sqrt() {
        let v = eval_at(&q_pow_half(1), &r(1, 2), 128).unwrap();
        assert!((v.to_f64() - 0.5f64.sqrt()).abs() < 1e-16);
        assert!(v.err() < 1e-36);
        let w = eval_at(&q_pow_half(-3), &r(1, 2), 128).unwrap();
        assert!((w.to_f64() - 2f64.powf(1.5)).abs() < 1e-14);
    }

    #[test]
    fn sign_decided_exactly() {
        // u - 1 at q = 1/2 is negative, 3u - 2 is positive (3/√2 > 2)
        let one = FieldElem::one();
        assert_eq!(sign_at(&(&q_pow_half(1) - &one), &r(1, 2)).unwrap(), Ordering::Less);
        let e = &q_pow_half(1).scale_rational(&r(3, 1)) - &FieldElem::from_int(2);
        assert_eq!(sign_at(&e, &r(1, 2)).unwrap(), Ordering::Greater);
    }

    #[test]
    fn pole_reported() {
        // 1/(1 - 2q) at q = 1/2
        let d = &FieldElem::one() - &q_pow_half(2).scale_rational(&r(2, 1));
        let x = FieldElem::one().checked_div(&d).unwrap();
        assert!(matches!(eval_at(&x, &r(1, 2), 64), Err(Error::PoleAtQ(_))));
    }

    #[test]
    fn bigint_round_trip() {
        for n in [0i64, 1, -1, 255, -256, i64::MAX, i64::MIN] {
            let b = BigInt::from(n);
            assert_eq!(from_ibig(&to_ibig(&b)), b);
        }
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(rational_to_decimal(&r(7, 4), 10), "1.75");
        assert_eq!(rational_to_decimal(&r(-1, 3), 5), "-0.33333");
        assert_eq!(rational_to_decimal(&r(1, 1000000), 3), "1e-6");
    }
}
