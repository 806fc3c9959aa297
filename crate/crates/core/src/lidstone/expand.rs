use num_rational::BigRational;

use super::basis::{LidstoneBasis, LidstoneKind};
use crate::error::{Error, Result};
use crate::numerics::exp_coeffs;
use crate::qfield::{FieldElem, NumericValue};
use crate::qpolys::{delta_q, ZPoly};
use crate::qseries::{Coeff, TruncSeries, Var};

/// Boundary data of a function: `at_1[n] = δ^(2n) f(1)` and
/// `at_0[n] = δ^(2n) f(0)` (Bernoulli type) or `δ^(2n+1) f(0)` (Euler type).
#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionInput<C> {
    pub kind: LidstoneKind,
    pub at_1: Vec<C>,
    pub at_0: Vec<C>,
}

impl<C> ExpansionInput<C> {
    pub fn len(&self) -> usize {
        self.at_1.len().min(self.at_0.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Exact boundary data of a polynomial for indices 0..=max_n.
pub fn delta_tower(f: &ZPoly, kind: LidstoneKind, max_n: usize) -> ExpansionInput<FieldElem> {
    let zero = FieldElem::zero();
    let one = FieldElem::one();
    let mut at_1 = Vec::with_capacity(max_n + 1);
    let mut at_0 = Vec::with_capacity(max_n + 1);
    let mut p = f.clone();
    for _ in 0..=max_n {
        at_1.push(p.eval(&one));
        let d = delta_q(&p);
        match kind {
            LidstoneKind::Bernoulli => at_0.push(p.eval(&zero)),
            LidstoneKind::Euler => at_0.push(d.eval(&zero)),
        }
        p = delta_q(&d);
    }
    ExpansionInput { kind, at_1, at_0 }
}

fn check_lengths<C>(input: &ExpansionInput<C>, kind: LidstoneKind, have_basis: usize, n: usize) -> Result<()> {
    if input.kind != kind {
        return Err(Error::InvalidArgument(format!(
            "input is {} type but basis is {} type",
            input.kind.name(),
            kind.name()
        )));
    }
    if input.len() < n + 1 {
        return Err(Error::InputTooShort { needed: n + 1, have: input.len() });
    }
    if have_basis < n + 1 {
        return Err(Error::InputTooShort { needed: n + 1, have: have_basis });
    }
    Ok(())
}

/// `Σ_{k≤n} first_k(z)·at_1[k] ∓ second_k(z)·at_0[k]` as an exact polynomial.
pub fn expand_symbolic(input: &ExpansionInput<FieldElem>, basis: &LidstoneBasis, n: usize) -> Result<ZPoly> {
    check_lengths(input, basis.kind, basis.first.len(), n)?;
    let sign = FieldElem::from_int(basis.kind.second_sign());
    let mut acc = ZPoly::zero();
    for k in 0..=n {
        acc = acc.add(&basis.first[k].scale(&input.at_1[k]));
        acc = acc.add(&basis.second[k].scale(&(&input.at_0[k] * &sign)));
    }
    Ok(acc)
}

/// `exp_q(x·w)` coefficients with the exp_q coefficients precomputed.
fn exp_series(c: &[NumericValue], x: &BigRational, prec: usize) -> TruncSeries<NumericValue> {
    let xv = NumericValue::from_rational(x, prec);
    let mut p = NumericValue::from_int(1, prec);
    let mut out = Vec::with_capacity(c.len());
    for ci in c {
        out.push(ci * &p);
        p = &p * &xv;
    }
    TruncSeries::new(Var::W, c.len() - 1, out)
}

/// Keep one parity and double it: `s(w) ± s(−w)` with exact zeros elsewhere.
fn doubled_part(s: &TruncSeries<NumericValue>, odd: bool) -> TruncSeries<NumericValue> {
    let two = NumericValue::from_int(2, s.coeff(0).prec());
    let r = usize::from(odd);
    TruncSeries::from_fn(Var::W, s.order(), |i| if i % 2 == r { s.coeff(i) * &two } else { NumericValue::zero() })
}

/// Basis values at a rational point, read off the kernel w-series at fixed
/// z with numeric coefficients: `(first_k(z), second_k(z))` for k ≤ n.
pub fn basis_values(
    kind: LidstoneKind,
    z: &BigRational,
    q: &BigRational,
    n: usize,
    prec: usize,
) -> Result<(Vec<NumericValue>, Vec<NumericValue>)> {
    let order = 2 * n + 2;
    let c = exp_coeffs(q, order + 1, prec)?;
    let one = BigRational::from_integer(1.into());
    let ezw = exp_series(&c, z, prec);
    let ew = exp_series(&c, &one, prec);
    let emw = exp_series(&c, &-one, prec);
    // P(w) − P(−w) with P = exp_q(zw) exp_q(−w)
    let cross = doubled_part(&ezw.mul(&emw)?, true);
    match kind {
        LidstoneKind::Bernoulli => {
            let den = doubled_part(&ew, true);
            let a = TruncSeries::divide_shift(&doubled_part(&ezw, true), &den)?;
            let b = TruncSeries::divide_shift(&cross, &den)?;
            Ok(((0..=n).map(|k| a.coeff(2 * k).clone()).collect(), (0..=n).map(|k| b.coeff(2 * k).clone()).collect()))
        }
        LidstoneKind::Euler => {
            let inv = doubled_part(&ew, false).invert()?;
            let m = doubled_part(&ezw, false).mul(&inv)?;
            let nn = cross.mul(&inv)?;
            Ok((
                (0..=n).map(|k| m.coeff(2 * k).clone()).collect(),
                (0..=n).map(|k| nn.coeff(2 * k + 1).clone()).collect(),
            ))
        }
    }
}

/// Partial sums S_0..S_n at each grid point; `result[N][i]` is S_N(grid[i]).
pub fn expand_numeric(
    input: &ExpansionInput<NumericValue>,
    q: &BigRational,
    n: usize,
    grid: &[BigRational],
    prec: usize,
) -> Result<Vec<Vec<NumericValue>>> {
    check_lengths(input, input.kind, n + 1, n)?;
    let sign = input.kind.second_sign();
    let mut out = vec![Vec::with_capacity(grid.len()); n + 1];
    for z in grid {
        let (first, second) = basis_values(input.kind, z, q, n, prec)?;
        let mut acc = NumericValue::from_int(0, prec);
        for k in 0..=n {
            let t = &second[k] * &input.at_0[k];
            let t = if sign < 0 { t.negated() } else { t };
            acc = &(&acc + &(&first[k] * &input.at_1[k])) + &t;
            out[k].push(acc.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lidstone::build_basis;
    use crate::qfield::{eval_at, q_int, q_pow_half};
    use crate::qpolys::pochhammer_poly;

    #[test]
    fn identity_function() {
        let b = build_basis(LidstoneKind::Bernoulli, 0).unwrap();
        let inp = delta_tower(&ZPoly::z(), LidstoneKind::Bernoulli, 3);
        assert_eq!(inp.at_1[0], FieldElem::one());
        assert!(inp.at_0.iter().all(|x| x.is_zero()));
        assert_eq!(expand_symbolic(&inp, &b, 0).unwrap(), ZPoly::z());
    }

    #[test]
    fn pochhammer_second_difference() {
        let inp = delta_tower(&pochhammer_poly(&FieldElem::one(), 2), LidstoneKind::Bernoulli, 2);
        // δ² of 1 − (1+q)z + qz² is q·q^(−1/2)[2]_q
        assert_eq!(inp.at_0[1], &q_pow_half(1) * &q_int(2));
        assert_eq!(inp.at_1[1], inp.at_0[1]);
        assert!(inp.at_0[2].is_zero());
    }

    #[test]
    fn short_input_rejected() {
        let b = build_basis(LidstoneKind::Bernoulli, 3).unwrap();
        let inp = delta_tower(&ZPoly::z(), LidstoneKind::Bernoulli, 1);
        assert_eq!(expand_symbolic(&inp, &b, 3), Err(Error::InputTooShort { needed: 4, have: 2 }));
    }

    #[test]
    fn numeric_basis_matches_exact_basis() {
        let q = BigRational::new(1.into(), 2.into());
        let z = BigRational::new(3.into(), 10.into());
        for kind in [LidstoneKind::Bernoulli, LidstoneKind::Euler] {
            let b = build_basis(kind, 3).unwrap();
            let (f, s) = basis_values(kind, &z, &q, 3, 128).unwrap();
            let zf = FieldElem::from_rational(z.clone());
            for k in 0..=3 {
                let ef = eval_at(&b.first[k].eval(&zf), &q, 128).unwrap();
                let es = eval_at(&b.second[k].eval(&zf), &q, 128).unwrap();
                assert!((&ef - &f[k]).abs_upper() < 1e-30, "{kind:?} first {k}");
                assert!((&es - &s[k]).abs_upper() < 1e-30, "{kind:?} second {k}");
            }
        }
    }
}
