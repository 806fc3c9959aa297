//! Certified evaluation of exp_q, S_q, C_q, Sinh_q, Cosh_q at real points
//! and bracketing/bisection for their smallest positive zeros.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qfield::{eval_at, q_pow_half, rational_to_decimal, NumericValue, DEFAULT_PREC};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum QFunction {
    ExpQ,
    Sq,
    Cq,
    SinhQ,
    CoshQ,
}

impl QFunction {
    pub fn name(self) -> &'static str {
        match self {
            QFunction::ExpQ => "ExpQ",
            QFunction::Sq => "Sq",
            QFunction::Cq => "Cq",
            QFunction::SinhQ => "SinhQ",
            QFunction::CoshQ => "CoshQ",
        }
    }

    /// Which exp-series indices contribute, and whether the sign alternates
    /// as (-1)^floor(m/2).
    fn shape(self) -> (Option<usize>, bool) {
        match self {
            QFunction::ExpQ => (None, false),
            QFunction::Sq => (Some(1), true),
            QFunction::Cq => (Some(0), true),
            QFunction::SinhQ => (Some(1), false),
            QFunction::CoshQ => (Some(0), false),
        }
    }
}

impl fmt::Display for QFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub(crate) fn check_q(q: &BigRational) -> Result<()> {
    if !q.is_positive() || *q >= BigRational::one() {
        return Err(Error::InvalidArgument(format!("q = {q} must lie in (0, 1)")));
    }
    Ok(())
}

fn q_int_rat(q: &BigRational, m: usize) -> BigRational {
    (BigRational::one() - num_traits::pow(q.clone(), m)) / (BigRational::one() - q)
}

/// Taylor coefficients q^(m(m-1)/4)/[m]_q! of exp_q at a numeric q, m < count.
pub fn exp_coeffs(q: &BigRational, count: usize, prec: usize) -> Result<Vec<NumericValue>> {
    check_q(q)?;
    let sq = eval_at(&q_pow_half(1), q, prec)?;
    let mut out = Vec::with_capacity(count);
    let mut c = NumericValue::from_int(1, prec);
    let mut sq_pow = NumericValue::from_int(1, prec);
    for m in 0..count {
        if m > 0 {
            // c_m = c_{m-1} q^((m-1)/2) / [m]_q
            c = (&c * &sq_pow).div(&NumericValue::from_rational(&q_int_rat(q, m), prec))?;
            sq_pow = &sq_pow * &sq;
        }
        out.push(c.clone());
    }
    Ok(out)
}

/// The working precision reached by default evaluations.
pub fn default_eval_tol(prec: usize) -> f64 {
    2f64.powi(-(prec.saturating_sub(20).min(1000) as i32))
}

/// Sum the series of `func` at z, truncating once the exp-series term
/// ratio stays below 1/2 and the geometric tail bound (twice the first
/// omitted term) is under tol/2.
pub fn eval_certified_at(func: QFunction, z: &NumericValue, q: &BigRational, tol: f64, prec: usize) -> Result<NumericValue> {
    check_q(q)?;
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance {tol} must be positive")));
    }
    let (parity, alternating) = func.shape();
    if z.is_exact_zero() {
        let v = if parity == Some(1) { 0 } else { 1 };
        return Ok(NumericValue::from_int(v, prec));
    }
    let zabs = z.abs_upper();
    let qf = q.to_f64().unwrap_or(0.0);
    let sq = eval_at(&q_pow_half(1), q, prec)?;

    let mut sum = NumericValue::from_int(0, prec);
    let mut c = NumericValue::from_int(1, prec);
    let mut zp = NumericValue::from_int(1, prec);
    let mut sq_pow = NumericValue::from_int(1, prec);
    const MAX_TERMS: usize = 20_000;
    for m in 0..MAX_TERMS {
        if m > 0 {
            c = (&c * &sq_pow).div(&NumericValue::from_rational(&q_int_rat(q, m), prec))?;
            sq_pow = &sq_pow * &sq;
            zp = &zp * z;
        }
        let term = &c * &zp;
        // ratio bound for every later step: |z| q^(j/2)/[j+1]_q, decreasing in j
        let rho = zabs * qf.powf(m as f64 / 2.0) * (1.0 - qf) / (1.0 - qf.powi(m as i32 + 1)) * (1.0 + 1e-12);
        let tail = 2.0 * term.abs_upper();
        if rho < 0.5 && tail <= tol / 2.0 {
            let out = sum.with_err(tail);
            if out.err() > tol {
                return Err(Error::PrecisionError { tol, prec });
            }
            return Ok(out);
        }
        if parity.map_or(true, |p| m % 2 == p) {
            let signed = if alternating && (m / 2) % 2 == 1 { term.negated() } else { term };
            sum = &sum + &signed;
        }
    }
    Err(Error::PrecisionError { tol, prec })
}

/// Certified value at a real point given as f64 (taken exactly).
pub fn eval_certified(func: QFunction, z: f64, q: &BigRational, tol: f64) -> Result<NumericValue> {
    if !z.is_finite() {
        return Err(Error::InvalidArgument(format!("z = {z} is not finite")));
    }
    eval_certified_at(func, &NumericValue::from_f64(z, DEFAULT_PREC), q, tol, DEFAULT_PREC)
}

fn eval_rat(func: QFunction, z: &BigRational, q: &BigRational, prec: usize) -> Result<NumericValue> {
    eval_certified_at(func, &NumericValue::from_rational(z, prec), q, default_eval_tol(prec), prec)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootResult {
    pub function: QFunction,
    pub q: BigRational,
    /// Bracket midpoint.
    pub value: BigRational,
    pub radius: f64,
    pub bracket: (BigRational, BigRational),
    /// Upper bound on |f(value)|.
    pub residual: f64,
    /// The difference quotient across the bracket is bounded away from zero.
    pub simple: bool,
    pub prec: usize,
}

impl RootResult {
    pub fn to_numeric(&self) -> NumericValue {
        NumericValue::from_rational(&self.value, self.prec).with_err(self.radius)
    }

    pub fn value_f64(&self) -> f64 {
        self.to_numeric().to_f64()
    }
}

impl Serialize for RootResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RootResult", 8)?;
        st.serialize_field("schema_version", &1)?;
        st.serialize_field("function", self.function.name())?;
        st.serialize_field("q", &self.q.to_string())?;
        st.serialize_field("value", &rational_to_decimal(&self.value, 40))?;
        st.serialize_field("radius", &self.radius)?;
        st.serialize_field("residual", &self.residual)?;
        st.serialize_field(
            "bracket",
            &[rational_to_decimal(&self.bracket.0, 40), rational_to_decimal(&self.bracket.1, 40)],
        )?;
        st.serialize_field("simple", &self.simple)?;
        st.end()
    }
}

/// Scan step used when none is given.
pub fn default_step() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(8))
}

fn upper_f64(r: &BigRational) -> f64 {
    NumericValue::from_rational(r, 64).abs_upper()
}

/// Smallest positive zero of S_q or C_q: scan z = h, 2h, ... for a
/// certified sign change, then bisect at dyadic midpoints until the
/// half-width is at most tol.
pub fn smallest_positive_zero(func: QFunction, q: &BigRational, tol: f64) -> Result<RootResult> {
    smallest_positive_zero_with(func, q, tol, &default_step(), DEFAULT_PREC)
}

pub fn smallest_positive_zero_with(
    func: QFunction,
    q: &BigRational,
    tol: f64,
    step: &BigRational,
    prec: usize,
) -> Result<RootResult> {
    Ok(positive_zeros_with(func, q, tol, step, prec, 1)?.remove(0))
}

/// The first `count` positive zeros, in increasing order.
pub fn positive_zeros(func: QFunction, q: &BigRational, tol: f64, count: usize) -> Result<Vec<RootResult>> {
    positive_zeros_with(func, q, tol, &default_step(), DEFAULT_PREC, count)
}

pub fn positive_zeros_with(
    func: QFunction,
    q: &BigRational,
    tol: f64,
    step: &BigRational,
    prec: usize,
    count: usize,
) -> Result<Vec<RootResult>> {
    check_q(q)?;
    if !matches!(func, QFunction::Sq | QFunction::Cq) {
        return Err(Error::InvalidArgument(format!("{func} has no real zero search")));
    }
    if !(tol > 0.0) || !step.is_positive() || count == 0 {
        return Err(Error::InvalidArgument("tolerance, step and count must be positive".into()));
    }
    let limit = BigRational::one() / num_traits::pow(q.clone(), 8 * count);
    let sign_of = |z: &BigRational| -> Result<Option<Ordering>> { Ok(eval_rat(func, z, q, prec)?.certified_sign()) };

    // S_q(z)/z -> 1 as z -> 0, so S_q is positive just right of 0; C_q(0) = 1.
    let mut lo = step.clone();
    let mut lo_sign = match sign_of(&lo)? {
        Some(Ordering::Greater) => Ordering::Greater,
        _ => return Err(Error::SearchExhausted(format!("sign at first step {lo} not certified positive"))),
    };
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut hi = &lo + step;
        let hi_sign = loop {
            if hi > limit {
                return Err(Error::SearchExhausted(rational_to_decimal(&limit, 12)));
            }
            match sign_of(&hi)? {
                Some(s) if s == lo_sign => {
                    lo = hi.clone();
                    hi = &hi + step;
                }
                Some(s) => break s,
                None => {
                    return Err(Error::SearchExhausted(format!(
                        "sign at {} not certified; step too coarse or precision too low",
                        rational_to_decimal(&hi, 12)
                    )))
                }
            }
        };
        let res = if hi_sign == Ordering::Equal {
            finish(func, q, hi.clone(), hi.clone(), prec)?
        } else {
            bisect(func, q, lo.clone(), hi.clone(), lo_sign, tol, prec)?
        };
        out.push(res);
        // continue the scan past this zero
        lo = hi;
        lo_sign = match sign_of(&lo)? {
            Some(Ordering::Equal) => {
                lo = &lo + step;
                sign_of(&lo)?.unwrap_or(Ordering::Equal)
            }
            Some(s) => s,
            None => return Err(Error::SearchExhausted("sign after a zero not certified".into())),
        };
    }
    Ok(out)
}

fn bisect(
    func: QFunction,
    q: &BigRational,
    mut lo: BigRational,
    mut hi: BigRational,
    lo_sign: Ordering,
    tol: f64,
    prec: usize,
) -> Result<RootResult> {
    let two = BigRational::from_integer(BigInt::from(2));
    while upper_f64(&((&hi - &lo) / &two)) > tol {
        let mid = (&lo + &hi) / &two;
        match eval_rat(func, &mid, q, prec)?.certified_sign() {
            Some(Ordering::Equal) => {
                lo = mid.clone();
                hi = mid;
            }
            Some(s) if s == lo_sign => lo = mid,
            Some(_) => hi = mid,
            None => break,
        }
    }
    let res = finish(func, q, lo, hi, prec)?;
    if res.radius > tol {
        return Err(Error::PrecisionError { tol, prec });
    }
    Ok(res)
}

fn finish(func: QFunction, q: &BigRational, lo: BigRational, hi: BigRational, prec: usize) -> Result<RootResult> {
    let two = BigRational::from_integer(BigInt::from(2));
    let mid = (&lo + &hi) / &two;
    let radius = upper_f64(&((&hi - &lo) / &two));
    let residual = eval_rat(func, &mid, q, prec)?.abs_upper();
    let simple = if lo == hi {
        true
    } else {
        let flo = eval_rat(func, &lo, q, prec)?;
        let fhi = eval_rat(func, &hi, q, prec)?;
        let diff = (&fhi - &flo).abs();
        let noise = flo.err() + fhi.err();
        diff.to_f64() - diff.err() > 10.0 * noise && !diff.is_exact_zero()
    };
    Ok(RootResult { function: func, q: q.clone(), value: mid, radius, bracket: (lo, hi), residual, simple, prec })
}

impl fmt::Display for RootResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} zero at q={}: {} ± {:.2e}", self.function, self.q, rational_to_decimal(&self.value, 30), self.radius)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> BigRational {
        BigRational::new(1.into(), 2.into())
    }

    #[test]
    fn trivial_values() {
        let e = eval_certified(QFunction::ExpQ, 0.0, &half(), 1e-20).unwrap();
        assert!(e.err() == 0.0 && e.to_f64() == 1.0);
        let s = eval_certified(QFunction::Sq, 0.0, &half(), 1e-20).unwrap();
        assert!(s.is_exact_zero());
    }

    #[test]
    fn odd_and_even_symmetry() {
        for z in [0.3, 1.7, 2.9] {
            let a = eval_certified(QFunction::Sq, z, &half(), 1e-25).unwrap();
            let b = eval_certified(QFunction::Sq, -z, &half(), 1e-25).unwrap();
            assert!((&a + &b).abs_upper() <= 2.0 * (a.err() + b.err()) + 1e-30);
            let c = eval_certified(QFunction::Cq, z, &half(), 1e-25).unwrap();
            let d = eval_certified(QFunction::Cq, -z, &half(), 1e-25).unwrap();
            assert!((&c - &d).abs_upper() <= 2.0 * (c.err() + d.err()) + 1e-30);
        }
    }

    #[test]
    fn rejects_bad_q() {
        let two = BigRational::from_integer(2.into());
        assert!(matches!(eval_certified(QFunction::ExpQ, 1.0, &two, 1e-10), Err(Error::InvalidArgument(_))));
        assert!(matches!(smallest_positive_zero(QFunction::Sq, &two, 1e-10), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn bracket_contains_sign_change() {
        let r = smallest_positive_zero(QFunction::Cq, &half(), 1e-10).unwrap();
        assert!(r.radius <= 1e-10);
        assert!(r.residual < 1e-9);
        assert!(r.simple);
        let (lo, hi) = &r.bracket;
        assert!(lo <= hi);
    }
}
