//! Closed-form boundary data for the built-in test functions f(z) = F(a·z).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::basis::LidstoneKind;
use super::expand::{delta_tower, ExpansionInput};
use crate::error::{Error, Result};
use crate::numerics::{default_eval_tol, eval_certified_at, exp_coeffs, smallest_positive_zero_with, QFunction};
use crate::qfield::{eval_at, FieldElem, NumericValue};
use crate::qpolys::{pochhammer_poly, ZPoly};

/// Root tolerance used when a scale refers to S1 or C1; the sharpness
/// sequences grow like root^(2n), so the root must be far below 1e-10.
pub const ROOT_TOL: f64 = 1e-30;

/// A scale `factor·root` where root is S1, C1 or absent.
#[derive(Clone, Debug, PartialEq)]
pub struct Scale {
    pub factor: BigRational,
    pub root: Option<QFunction>,
}

impl Scale {
    pub fn rational(r: BigRational) -> Self {
        Scale { factor: r, root: None }
    }

    /// Numeric value at q; roots are resolved with [`ROOT_TOL`] and their
    /// bracket midpoint is taken as the exact parameter.
    pub fn resolve(&self, q: &BigRational, prec: usize) -> Result<NumericValue> {
        let base = match self.root {
            None => BigRational::one(),
            Some(f) => smallest_positive_zero_with(f, q, ROOT_TOL, &crate::numerics::default_step(), prec)?.value,
        };
        Ok(NumericValue::from_rational(&(&self.factor * &base), prec))
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.root, self.factor.is_one()) {
            (None, _) => write!(f, "{}", self.factor),
            (Some(r), true) => write!(f, "{}", root_token(*r)),
            (Some(r), false) => write!(f, "{}{}", self.factor, root_token(*r)),
        }
    }
}

fn root_token(f: QFunction) -> &'static str {
    if f == QFunction::Sq {
        "S1"
    } else {
        "C1"
    }
}

/// Parse a decimal or `p/q` rational exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
    if (ip.is_empty() && fp.is_empty()) || !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("0{ip}{fp}").parse().map_err(|_| bad())?;
    let r = BigRational::new(digits, BigInt::from(10).pow(fp.len() as u32));
    Ok(if neg { -r } else { r })
}

impl FromStr for Scale {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        for (tok, f) in [("S1", QFunction::Sq), ("C1", QFunction::Cq)] {
            if let Some(head) = s.strip_suffix(tok) {
                let head = head.trim_end_matches('*');
                let factor = if head.is_empty() { BigRational::one() } else { parse_rational(head)? };
                return Ok(Scale { factor, root: Some(f) });
            }
        }
        Ok(Scale::rational(parse_rational(s)?))
    }
}

/// A catalog entry: `F(a·z)` for a q-function F, `(z;q)_n`, or an
/// explicit polynomial with a display label.
#[derive(Clone, Debug, PartialEq)]
pub enum FunctionSpec {
    Scaled { func: QFunction, scale: Scale },
    Pochhammer(usize),
    Polynomial { label: String, poly: ZPoly },
}

impl FunctionSpec {
    /// The function as an exact polynomial, when it is one.
    pub fn polynomial(&self) -> Option<ZPoly> {
        match self {
            FunctionSpec::Pochhammer(m) => Some(pochhammer_function(*m)),
            FunctionSpec::Polynomial { poly, .. } => Some(poly.clone()),
            FunctionSpec::Scaled { .. } => None,
        }
    }
}

impl FromStr for FunctionSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (head, arg) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("function spec {s:?} must look like name:argument")))?;
        let func = match head {
            "expq" => QFunction::ExpQ,
            "sq" => QFunction::Sq,
            "cq" => QFunction::Cq,
            "sinhq" => QFunction::SinhQ,
            "coshq" => QFunction::CoshQ,
            "pochhammer" => {
                let n = arg.trim().parse().map_err(|_| Error::Parse(format!("bad pochhammer length {arg:?}")))?;
                return Ok(FunctionSpec::Pochhammer(n));
            }
            _ => return Err(Error::Parse(format!("unknown function {head:?}"))),
        };
        Ok(FunctionSpec::Scaled { func, scale: arg.parse()? })
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionSpec::Pochhammer(n) => write!(f, "pochhammer:{n}"),
            FunctionSpec::Polynomial { label, .. } => write!(f, "{label}"),
            FunctionSpec::Scaled { func, scale } => {
                let name = match func {
                    QFunction::ExpQ => "expq",
                    QFunction::Sq => "sq",
                    QFunction::Cq => "cq",
                    QFunction::SinhQ => "sinhq",
                    QFunction::CoshQ => "coshq",
                };
                write!(f, "{name}:{scale}")
            }
        }
    }
}

/// `δ^k F(a·z)` equals `sign·a^k·G(a·z)`; returns (sign, G).
fn derivative_shape(func: QFunction, k: usize) -> (i64, QFunction) {
    let even = k % 2 == 0;
    match func {
        QFunction::ExpQ => (1, QFunction::ExpQ),
        QFunction::Sq => {
            let s = if (k / 2) % 2 == 0 { 1 } else { -1 };
            (s, if even { QFunction::Sq } else { QFunction::Cq })
        }
        QFunction::Cq => {
            let s = if ((k + 1) / 2) % 2 == 0 { 1 } else { -1 };
            (s, if even { QFunction::Cq } else { QFunction::Sq })
        }
        QFunction::SinhQ => (1, if even { QFunction::SinhQ } else { QFunction::CoshQ }),
        QFunction::CoshQ => (1, if even { QFunction::CoshQ } else { QFunction::SinhQ }),
    }
}

fn value_at_zero(func: QFunction, prec: usize) -> NumericValue {
    match func {
        QFunction::ExpQ | QFunction::Cq | QFunction::CoshQ => NumericValue::from_int(1, prec),
        QFunction::Sq | QFunction::SinhQ => NumericValue::from_int(0, prec),
    }
}

/// `F(x)` with certified error.
pub fn eval_function(func: QFunction, x: &NumericValue, q: &BigRational, prec: usize) -> Result<NumericValue> {
    if x.is_exact_zero() {
        return Ok(value_at_zero(func, prec));
    }
    eval_certified_at(func, x, q, default_eval_tol(prec), prec)
}

/// `δ^k f(x)` for f(z) = F(a·z), from the closed-form derivative rules.
pub fn delta_value(func: QFunction, a: &NumericValue, k: usize, x: &NumericValue, q: &BigRational, prec: usize) -> Result<NumericValue> {
    let (sign, g) = derivative_shape(func, k);
    let ax = if x.is_exact_zero() { x.clone() } else { a * x };
    let v = &a.pow(k as u32) * &eval_function(g, &ax, q, prec)?;
    Ok(if sign < 0 { v.negated() } else { v })
}

/// Closed-form boundary data for F(a·z), indices 0..=n.
pub fn scaled_inputs(
    func: QFunction,
    a: &NumericValue,
    kind: LidstoneKind,
    q: &BigRational,
    n: usize,
    prec: usize,
) -> Result<ExpansionInput<NumericValue>> {
    let zero = NumericValue::from_int(0, prec);
    let one = NumericValue::from_int(1, prec);
    let mut at_1 = Vec::with_capacity(n + 1);
    let mut at_0 = Vec::with_capacity(n + 1);
    for k in 0..=n {
        at_1.push(delta_value(func, a, 2 * k, &one, q, prec)?);
        let k0 = match kind {
            LidstoneKind::Bernoulli => 2 * k,
            LidstoneKind::Euler => 2 * k + 1,
        };
        at_0.push(delta_value(func, a, k0, &zero, q, prec)?);
    }
    Ok(ExpansionInput { kind, at_1, at_0 })
}

/// Exact tower of a polynomial evaluated at q.
pub fn polynomial_inputs(
    f: &ZPoly,
    kind: LidstoneKind,
    q: &BigRational,
    n: usize,
    prec: usize,
) -> Result<ExpansionInput<NumericValue>> {
    let t = delta_tower(f, kind, n);
    let ev = |v: &[FieldElem]| v.iter().map(|x| eval_at(x, q, prec)).collect::<Result<Vec<_>>>();
    Ok(ExpansionInput { kind, at_1: ev(&t.at_1)?, at_0: ev(&t.at_0)? })
}

pub fn pochhammer_function(m: usize) -> ZPoly {
    pochhammer_poly(&FieldElem::one(), m)
}

/// Taylor coefficients of F(a·z) up to index count−1.
pub fn taylor_coeffs(func: QFunction, a: &NumericValue, q: &BigRational, count: usize, prec: usize) -> Result<Vec<NumericValue>> {
    let c = exp_coeffs(q, count, prec)?;
    let mut ap = NumericValue::from_int(1, prec);
    let mut out = Vec::with_capacity(count);
    for (m, cm) in c.iter().enumerate() {
        let t = cm * &ap;
        let v = match func {
            QFunction::ExpQ => t,
            QFunction::Sq | QFunction::SinhQ if m % 2 == 0 => NumericValue::from_int(0, prec),
            QFunction::Cq | QFunction::CoshQ if m % 2 == 1 => NumericValue::from_int(0, prec),
            QFunction::Sq | QFunction::Cq if (m / 2) % 2 == 1 => t.negated(),
            _ => t,
        };
        out.push(v);
        ap = &ap * a;
    }
    Ok(out)
}
