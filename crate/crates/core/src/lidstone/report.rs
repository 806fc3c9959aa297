use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::basis::{build_basis, LidstoneKind};
use super::catalog::{eval_function, polynomial_inputs, scaled_inputs, taylor_coeffs, FunctionSpec};
use super::expand::{delta_tower, expand_numeric, expand_symbolic, ExpansionInput};
use super::growth::{admissibility, classify_growth, Admissibility, GrowthEstimate};
use crate::error::{Error, Result};
use crate::numerics::{check_q, smallest_positive_zero, QFunction};
use crate::qfield::{eval_at, FieldElem, NumericValue};

/// Taylor coefficients used for growth classification.
const GROWTH_TERMS: usize = 48;

#[derive(Clone, Debug, PartialEq)]
pub enum QValue {
    Symbolic,
    Rational(BigRational),
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpansionReport {
    pub schema_version: u32,
    pub function: String,
    pub kind: LidstoneKind,
    pub q: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub coefficients_at_0: Vec<String>,
    pub coefficients_at_1: Vec<String>,
    pub grid: Vec<String>,
    pub partial_sum_values: Vec<String>,
    pub reference_values: Vec<String>,
    pub max_residual_by_n: Vec<f64>,
    pub max_abs_coefficient: Option<f64>,
    pub max_abs_function: Option<f64>,
    pub growth: Option<GrowthEstimate>,
    pub admissibility: Option<Admissibility>,
    pub warning: Option<String>,
    pub recovered: Option<String>,
    pub exact_match: Option<bool>,
}

impl ExpansionReport {
    /// True when the grid residual never increases from index `from` on.
    pub fn residual_monotone_from(&self, from: usize) -> bool {
        self.max_residual_by_n.iter().skip(from).zip(self.max_residual_by_n.iter().skip(from + 1)).all(|(a, b)| b <= a)
    }
}

/// Evenly spaced rational grid on [0, 1].
pub fn unit_grid(points: usize) -> Vec<BigRational> {
    match points {
        0 => Vec::new(),
        1 => vec![BigRational::from_integer(0.into())],
        p => (0..p).map(|i| BigRational::new(BigInt::from(i), BigInt::from(p - 1))).collect(),
    }
}

fn zero_for(kind: LidstoneKind) -> QFunction {
    match kind {
        LidstoneKind::Bernoulli => QFunction::Sq,
        LidstoneKind::Euler => QFunction::Cq,
    }
}

fn warning_for(a: Admissibility) -> Option<String> {
    match a {
        Admissibility::Admissible => None,
        Admissibility::Boundary => Some("boundary type: the type equals the admissible bound".into()),
        Admissibility::Inadmissible => Some("inadmissible type: convergence is not guaranteed".into()),
    }
}

fn show(v: &NumericValue) -> String {
    v.to_decimal(v.significant_digits().clamp(1, 30))
}

/// Build the full report for a catalog function.
pub fn run_expansion(
    spec: &FunctionSpec,
    kind: LidstoneKind,
    q: &QValue,
    n: usize,
    grid_points: usize,
    prec: usize,
) -> Result<ExpansionReport> {
    match q {
        QValue::Symbolic => symbolic_report(spec, kind, n, grid_points),
        QValue::Rational(q) => numeric_report(spec, kind, q, n, grid_points, prec),
    }
}

fn symbolic_report(spec: &FunctionSpec, kind: LidstoneKind, n: usize, grid_points: usize) -> Result<ExpansionReport> {
    let Some(f) = spec.polynomial() else {
        return Err(Error::InvalidArgument("symbolic q supports polynomial functions only".into()));
    };
    // enough terms for exact recovery whatever N was asked for
    let n = n.max(f.degree().unwrap_or(0) / 2 + 1);
    let basis = build_basis(kind, n)?;
    let input = delta_tower(&f, kind, n);
    let rec = expand_symbolic(&input, &basis, n)?;
    let strs = |v: &[FieldElem]| v.iter().map(|x| x.to_string()).collect();
    Ok(ExpansionReport {
        schema_version: 1,
        function: spec.to_string(),
        kind,
        q: "symbolic".into(),
        n,
        coefficients_at_0: strs(&input.at_0),
        coefficients_at_1: strs(&input.at_1),
        grid: unit_grid(grid_points).iter().map(|z| z.to_string()).collect(),
        partial_sum_values: Vec::new(),
        reference_values: Vec::new(),
        max_residual_by_n: Vec::new(),
        max_abs_coefficient: None,
        max_abs_function: None,
        growth: Some(GrowthEstimate { order_k: 0.0, type_alpha: 0.0, fit_residual: 0.0 }),
        admissibility: Some(Admissibility::Admissible),
        warning: None,
        recovered: Some(rec.to_string()),
        exact_match: Some(rec == f),
    })
}

fn numeric_report(
    spec: &FunctionSpec,
    kind: LidstoneKind,
    q: &BigRational,
    n: usize,
    grid_points: usize,
    prec: usize,
) -> Result<ExpansionReport> {
    check_q(q)?;
    let grid = unit_grid(grid_points);
    let (input, reference, growth): (ExpansionInput<NumericValue>, Vec<NumericValue>, GrowthEstimate) = match spec {
        FunctionSpec::Pochhammer(_) | FunctionSpec::Polynomial { .. } => {
            let f = spec.polynomial().expect("polynomial spec");
            let reference = grid
                .iter()
                .map(|z| eval_at(&f.eval(&FieldElem::from_rational(z.clone())), q, prec))
                .collect::<Result<_>>()?;
            let growth = GrowthEstimate { order_k: 0.0, type_alpha: 0.0, fit_residual: 0.0 };
            (polynomial_inputs(&f, kind, q, n, prec)?, reference, growth)
        }
        FunctionSpec::Scaled { func, scale } => {
            let a = scale.resolve(q, prec)?;
            let reference = grid
                .iter()
                .map(|z| eval_function(*func, &(&a * &NumericValue::from_rational(z, prec)), q, prec))
                .collect::<Result<_>>()?;
            let growth = classify_growth(&taylor_coeffs(*func, &a, q, GROWTH_TERMS, prec)?, q)?;
            (scaled_inputs(*func, &a, kind, q, n, prec)?, reference, growth)
        }
    };
    let zero = smallest_positive_zero(zero_for(kind), q, 1e-12)?.to_numeric();
    let adm = admissibility(&growth, kind, q, &zero);
    let sums = expand_numeric(&input, q, n, &grid, prec)?;
    let max_residual_by_n = sums
        .iter()
        .map(|row| row.iter().zip(&reference).map(|(s, f)| (s - f).abs_upper()).fold(0.0, f64::max))
        .collect();
    let max_abs_coefficient = input.at_0.iter().chain(&input.at_1).map(|c| c.abs_upper()).fold(0.0, f64::max);
    let max_abs_function = reference.iter().map(|f| f.abs().to_f64()).fold(0.0, f64::max);
    Ok(ExpansionReport {
        schema_version: 1,
        function: spec.to_string(),
        kind,
        q: q.to_string(),
        n,
        coefficients_at_0: input.at_0.iter().map(show).collect(),
        coefficients_at_1: input.at_1.iter().map(show).collect(),
        grid: grid.iter().map(|z| z.to_string()).collect(),
        partial_sum_values: sums[n].iter().map(show).collect(),
        reference_values: reference.iter().map(show).collect(),
        max_residual_by_n,
        max_abs_coefficient: Some(max_abs_coefficient),
        max_abs_function: Some(max_abs_function),
        growth: Some(growth),
        admissibility: Some(adm),
        warning: warning_for(adm),
        recovered: None,
        exact_match: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints() {
        let g = unit_grid(21);
        assert_eq!(g.len(), 21);
        assert_eq!(g[0], BigRational::from_integer(0.into()));
        assert_eq!(g[20], BigRational::from_integer(1.into()));
    }

    #[test]
    fn symbolic_pochhammer_recovers() {
        let r = run_expansion(&FunctionSpec::Pochhammer(4), LidstoneKind::Bernoulli, &QValue::Symbolic, 2, 5, 128).unwrap();
        assert_eq!(r.exact_match, Some(true));
    }

    #[test]
    fn symbolic_requires_polynomial() {
        let spec: FunctionSpec = "expq:1/2".parse().unwrap();
        assert!(run_expansion(&spec, LidstoneKind::Bernoulli, &QValue::Symbolic, 2, 5, 128).is_err());
    }
}
