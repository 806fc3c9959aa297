use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::basis::LidstoneKind;
use crate::error::{Error, Result};
use crate::qfield::NumericValue;

/// Coefficients with index below this are excluded from the fit.
pub const TAIL_START: usize = 4;
/// Half-width of the band around order 2 treated as "order 2".
pub const ORDER_MARGIN: f64 = 0.05;
/// Half-width of the band around the type bound treated as equality.
pub const TYPE_MARGIN: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GrowthEstimate {
    pub order_k: f64,
    pub type_alpha: f64,
    pub fit_residual: f64,
}

/// Fit `log|a_n (1−q)^(−n)| ≈ A n² + B n + C` over the nonzero tail and
/// read off `k = log q/(2A)`, `α = −B k/log q`, which matches the model
/// `|a_n| ≈ K (1−q)^n q^((n−α)²/(2k))`.
///
/// Sequences whose last nonzero entry is followed by at least three zeros
/// are treated as finite support and classify as order 0, type 0.
pub fn classify_growth(coeffs: &[NumericValue], q: &BigRational) -> Result<GrowthEstimate> {
    let qf = q.to_f64().filter(|x| *x > 0.0 && *x < 1.0).ok_or_else(|| {
        Error::InvalidArgument(format!("q = {q} must lie in (0, 1)"))
    })?;
    let nonzero = |c: &NumericValue| c.certified_sign().map_or(false, |s| s != std::cmp::Ordering::Equal);
    let last = coeffs.iter().rposition(nonzero);
    let Some(last) = last else {
        return Err(Error::DegenerateInput("all coefficients vanish".into()));
    };
    if last + 3 < coeffs.len() {
        return Ok(GrowthEstimate { order_k: 0.0, type_alpha: 0.0, fit_residual: 0.0 });
    }
    let lq = qf.ln();
    let l1q = (1.0 - qf).ln();
    let pts: Vec<(f64, f64)> = coeffs
        .iter()
        .enumerate()
        .skip(TAIL_START)
        .filter(|(_, c)| nonzero(c))
        .map(|(n, c)| {
            let n = n as f64;
            (n, log_abs(c) - n * l1q)
        })
        .collect();
    if pts.len() < 3 {
        return Err(Error::DegenerateInput(format!("only {} nonzero tail coefficients", pts.len())));
    }
    let (a, b, c) = quadratic_fit(&pts)?;
    let resid = (pts.iter().map(|(x, y)| (y - (a * x * x + b * x + c)).powi(2)).sum::<f64>() / pts.len() as f64).sqrt();
    if a >= 0.0 {
        return Ok(GrowthEstimate { order_k: f64::INFINITY, type_alpha: 0.0, fit_residual: resid });
    }
    let k = lq / (2.0 * a);
    Ok(GrowthEstimate { order_k: k, type_alpha: -b * k / lq, fit_residual: resid })
}

/// ln|x| through the decimal expansion so magnitudes below f64 range work.
fn log_abs(x: &NumericValue) -> f64 {
    let v = x.to_f64().abs();
    if v > 1e-300 {
        return v.ln();
    }
    let s = x.to_decimal(17);
    let (mant, exp) = s.trim_start_matches('-').split_once('e').unwrap_or((&s, "0"));
    mant.parse::<f64>().unwrap_or(f64::MIN_POSITIVE).abs().ln() + exp.parse::<f64>().unwrap_or(0.0) * std::f64::consts::LN_10
}

/// Least squares for y ≈ a x² + b x + c via the normal equations,
/// with x centred for conditioning.
fn quadratic_fit(pts: &[(f64, f64)]) -> Result<(f64, f64, f64)> {
    let m = pts.iter().map(|p| p.0).sum::<f64>() / pts.len() as f64;
    let mut s = [0.0f64; 5];
    let mut t = [0.0f64; 3];
    for &(x, y) in pts {
        let d = x - m;
        let mut p = 1.0;
        for (i, si) in s.iter_mut().enumerate() {
            *si += p;
            if i < 3 {
                t[i] += p * y;
            }
            p *= d;
        }
    }
    // [s0 s1 s2; s1 s2 s3; s2 s3 s4] (c', b', a') = (t0, t1, t2)
    let mat = [[s[0], s[1], s[2]], [s[1], s[2], s[3]], [s[2], s[3], s[4]]];
    let det = det3(&mat);
    if det.abs() < 1e-300 {
        return Err(Error::DegenerateInput("singular fit".into()));
    }
    let solve = |col: usize| {
        let mut mm = mat;
        for r in 0..3 {
            mm[r][col] = t[r];
        }
        det3(&mm) / det
    };
    let (c0, b0, a0) = (solve(0), solve(1), solve(2));
    // undo the centring x -> x - m
    Ok((a0, b0 - 2.0 * a0 * m, a0 * m * m - b0 * m + c0))
}

fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Admissibility {
    Admissible,
    Boundary,
    Inadmissible,
}

impl Admissibility {
    pub fn name(self) -> &'static str {
        match self {
            Admissibility::Admissible => "admissible",
            Admissibility::Boundary => "boundary",
            Admissibility::Inadmissible => "inadmissible",
        }
    }
}

/// Largest type allowed at order 2: `2(1/4 − log zero/log q)`.
pub fn type_bound(q: &BigRational, zero: &NumericValue) -> f64 {
    let lq = q.to_f64().unwrap_or(0.5).ln();
    0.5 - 2.0 * zero.to_f64().ln() / lq
}

/// Classify an estimate against the order/type condition. `zero` is S₁ for
/// the Bernoulli kind and C₁ for the Euler kind; its error radius widens
/// the equality band.
pub fn admissibility(est: &GrowthEstimate, _kind: LidstoneKind, q: &BigRational, zero: &NumericValue) -> Admissibility {
    if est.order_k < 2.0 - ORDER_MARGIN {
        return Admissibility::Admissible;
    }
    if est.order_k > 2.0 + ORDER_MARGIN {
        return Admissibility::Inadmissible;
    }
    let lq = q.to_f64().unwrap_or(0.5).ln().abs();
    let slack = TYPE_MARGIN + 2.0 * zero.err() / (zero.to_f64().abs() * lq);
    let d = est.type_alpha - type_bound(q, zero);
    if d.abs() <= slack {
        Admissibility::Boundary
    } else if d < 0.0 {
        Admissibility::Admissible
    } else {
        Admissibility::Inadmissible
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::exp_coeffs;

    fn half() -> BigRational {
        BigRational::new(1.into(), 2.into())
    }

    #[test]
    fn exp_has_order_two() {
        let c = exp_coeffs(&half(), 40, 128).unwrap();
        let g = classify_growth(&c, &half()).unwrap();
        assert!((g.order_k - 2.0).abs() < 0.1, "{g:?}");
        assert!((g.type_alpha - 0.5).abs() < 0.05, "{g:?}");
    }

    #[test]
    fn polynomial_is_order_zero() {
        let mut c: Vec<_> = (0..5).map(|k| NumericValue::from_int(k + 1, 128)).collect();
        c.extend((0..10).map(|_| NumericValue::from_int(0, 128)));
        let g = classify_growth(&c, &half()).unwrap();
        assert_eq!(g.order_k, 0.0);
        assert_eq!(
            admissibility(&g, LidstoneKind::Bernoulli, &half(), &NumericValue::from_int(3, 128)),
            Admissibility::Admissible
        );
    }

    #[test]
    fn zero_sequence_is_degenerate() {
        let c: Vec<_> = (0..10).map(|_| NumericValue::from_int(0, 128)).collect();
        assert!(matches!(classify_growth(&c, &half()), Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn order_two_type_zero_is_admissible() {
        let est = GrowthEstimate { order_k: 2.0, type_alpha: 0.0, fit_residual: 0.0 };
        // the bound exceeds 1/2 exactly when the zero exceeds 1
        for s1 in [1.5, 3.0] {
            let z = NumericValue::from_f64(s1, 128);
            assert_eq!(admissibility(&est, LidstoneKind::Bernoulli, &half(), &z), Admissibility::Admissible);
        }
    }
}
