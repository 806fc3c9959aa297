use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qfield::{q_factorial_inv, q_pow_half, FieldElem};
use crate::qpolys::verify::Checker;
use crate::qpolys::{delta_q, delta_q_pow, family, FamilyKind, Method, ZPoly};
use crate::qseries::{exp_q_series, TruncSeries, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LidstoneKind {
    Bernoulli,
    Euler,
}

impl LidstoneKind {
    pub fn name(self) -> &'static str {
        match self {
            LidstoneKind::Bernoulli => "bernoulli",
            LidstoneKind::Euler => "euler",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "bernoulli" => Some(LidstoneKind::Bernoulli),
            "euler" => Some(LidstoneKind::Euler),
            _ => None,
        }
    }

    /// Sign in front of the second basis sequence in the expansion.
    pub(crate) fn second_sign(self) -> i64 {
        match self {
            LidstoneKind::Bernoulli => -1,
            LidstoneKind::Euler => 1,
        }
    }
}

/// Two-point basis. Bernoulli type: `first = Ã_n`, `second = B̃_n`.
/// Euler type: `first = M̃_n`, `second[n] = Ñ_{n+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LidstoneBasis {
    pub kind: LidstoneKind,
    pub up_to: usize,
    pub first: Vec<ZPoly>,
    pub second: Vec<ZPoly>,
}

fn pow2(k: usize) -> FieldElem {
    FieldElem::from_rational(BigRational::from_integer(BigInt::from(2).pow(k as u32)))
}

/// `2^e/[m]_q! · p(z/2)`.
fn half_scaled(p: &ZPoly, e: usize, m: usize) -> ZPoly {
    p.dilate(&FieldElem::frac(1, 2)).scale(&(&pow2(e) * &q_factorial_inv(m as u32)))
}

fn raw_basis(kind: LidstoneKind, n: usize) -> LidstoneBasis {
    let top = 2 * n + 1;
    let (first, second) = match kind {
        LidstoneKind::Bernoulli => {
            let a = family(FamilyKind::APoly, top, Method::SeriesDivision).entries;
            let b = family(FamilyKind::BernoulliPoly, top, Method::SeriesDivision).entries;
            (
                (0..=n).map(|k| half_scaled(&a[2 * k + 1], 2 * k + 1, 2 * k + 1)).collect(),
                (0..=n).map(|k| half_scaled(&b[2 * k + 1], 2 * k + 1, 2 * k + 1)).collect(),
            )
        }
        LidstoneKind::Euler => {
            let m = family(FamilyKind::MPoly, top, Method::SeriesDivision).entries;
            let e = family(FamilyKind::EulerPoly, top, Method::SeriesDivision).entries;
            (
                (0..=n).map(|k| half_scaled(&m[2 * k], 2 * k + 1, 2 * k)).collect(),
                (0..=n).map(|k| half_scaled(&e[2 * k + 1], 2 * k + 1, 2 * k + 1)).collect(),
            )
        }
    };
    LidstoneBasis { kind, up_to: n, first, second }
}

/// Build the scaled basis to index n and check its invariants.
pub fn build_basis(kind: LidstoneKind, n: usize) -> Result<LidstoneBasis> {
    let basis = raw_basis(kind, n);
    let mut ch = Checker::default();
    basis_invariants(&basis, &mut ch);
    let r = ch.report(crate::qpolys::verify::IdentityTag::LidstoneBasis, n);
    match r.first_mismatch {
        None => Ok(basis),
        Some(m) => Err(Error::Invariant(format!("{}: {} vs {}", m.label, m.lhs, m.rhs))),
    }
}

fn at(p: &ZPoly, z: i64) -> FieldElem {
    p.eval(&FieldElem::from_int(z))
}

fn basis_invariants(b: &LidstoneBasis, ch: &mut Checker) {
    let zero = FieldElem::zero();
    let one = FieldElem::one();
    let kd = b.kind.name();
    match b.kind {
        LidstoneKind::Bernoulli => {
            ch.eq(format!("{kd} Ã_0"), &b.first[0], &ZPoly::z());
            ch.eq(format!("{kd} B̃_0"), &b.second[0], &ZPoly::from_ints(&[-1, 1]));
            for n in 1..=b.up_to {
                ch.eq(format!("{kd} δ²Ã_{n}"), &delta_q_pow(&b.first[n], 2), &b.first[n - 1]);
                ch.eq(format!("{kd} δ²B̃_{n}"), &delta_q_pow(&b.second[n], 2), &b.second[n - 1]);
                for (name, p) in [("Ã", &b.first[n]), ("B̃", &b.second[n])] {
                    ch.eq(format!("{kd} {name}_{n}(0)"), &at(p, 0), &zero);
                    ch.eq(format!("{kd} {name}_{n}(1)"), &at(p, 1), &zero);
                }
            }
        }
        LidstoneKind::Euler => {
            ch.eq(format!("{kd} M̃_0"), &b.first[0], &ZPoly::one());
            ch.eq(format!("{kd} Ñ_1"), &b.second[0], &ZPoly::from_ints(&[-1, 1]));
            for n in 0..=b.up_to {
                let delta = if n == 0 { one.clone() } else { zero.clone() };
                ch.eq(format!("{kd} M̃_{n}(1)"), &at(&b.first[n], 1), &delta);
                ch.eq(format!("{kd} δM̃_{n}(0)"), &at(&delta_q(&b.first[n]), 0), &zero);
                ch.eq(format!("{kd} Ñ_{}(1)", n + 1), &at(&b.second[n], 1), &zero);
                ch.eq(format!("{kd} δÑ_{}(0)", n + 1), &at(&delta_q(&b.second[n]), 0), &delta);
                if n >= 1 {
                    ch.eq(format!("{kd} δ²M̃_{n}"), &delta_q_pow(&b.first[n], 2), &b.first[n - 1]);
                    ch.eq(format!("{kd} δ²Ñ_{}", n + 1), &delta_q_pow(&b.second[n], 2), &b.second[n - 1]);
                }
            }
        }
    }
}

/// Invariants of both basis kinds to index n, plus the comparison with the
/// printed even-index scaling 2^(2n)/[2n]_q! for the M̃ family.
pub(crate) fn check_basis(n: usize) -> Checker {
    let mut ch = Checker::default();
    for kind in [LidstoneKind::Bernoulli, LidstoneKind::Euler] {
        basis_invariants(&raw_basis(kind, n), &mut ch);
    }
    let m0 = family(FamilyKind::MPoly, 0, Method::SeriesDivision).entries[0].clone();
    let printed = half_scaled(&m0, 0, 0);
    ch.printed("M̃_0 with scaling 2^(2n)/[2n]_q!", &printed, &ZPoly::one());
    ch
}

/// `exp_q(zw)` as a w-series with ZPoly coefficients.
fn exp_zw(order: usize) -> TruncSeries<ZPoly> {
    TruncSeries::from_fn(Var::W, order, |m| {
        let mi = m as i64;
        ZPoly::monomial(&q_pow_half(mi * (mi - 1) / 2) * &q_factorial_inv(m as u32), m)
    })
}

/// Kernel decomposition of exp_q(zw) to w-order `order`:
/// Bernoulli `exp_q(w) ΣÃ_n w^(2n) − ΣB̃_n w^(2n)`,
/// Euler `exp_q(w) ΣM̃_n w^(2n) + ΣÑ_(n+1) w^(2n+1)`.
pub(crate) fn check_kernel(kind: LidstoneKind, order: usize) -> Checker {
    let mut ch = Checker::default();
    let n = order / 2;
    let b = raw_basis(kind, n);
    let lhs = exp_zw(order);
    let ew = exp_q_series(&FieldElem::one(), order).map(|c| ZPoly::constant(c.clone()));
    let even = TruncSeries::from_fn(Var::W, order, |i| if i % 2 == 0 { b.first[i / 2].clone() } else { ZPoly::zero() });
    let second = TruncSeries::from_fn(Var::W, order, |i| match kind {
        LidstoneKind::Bernoulli if i % 2 == 0 => b.second[i / 2].clone(),
        LidstoneKind::Euler if i % 2 == 1 => b.second[(i - 1) / 2].clone(),
        _ => ZPoly::zero(),
    });
    let main = ew.mul(&even).expect("same variable");
    let rhs = match kind {
        LidstoneKind::Bernoulli => main.sub(&second),
        LidstoneKind::Euler => main.add(&second),
    }
    .expect("same variable");
    for i in 0..=order {
        ch.eq(format!("{} w^{i}", kind.name()), lhs.coeff(i), rhs.coeff(i));
    }
    if kind == LidstoneKind::Euler && order >= 1 {
        let printed = main.sub(&second).expect("same variable");
        ch.printed("Euler kernel with minus sign, w^1", printed.coeff(1), lhs.coeff(1));
    }
    ch
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_order_bases() {
        let b = build_basis(LidstoneKind::Bernoulli, 2).unwrap();
        assert_eq!(b.first[0], ZPoly::z());
        assert_eq!(b.second[0], ZPoly::from_ints(&[-1, 1]));
        assert!(at(&b.first[1], 1).is_zero());
        let e = build_basis(LidstoneKind::Euler, 2).unwrap();
        assert_eq!(e.first[0], ZPoly::one());
    }

    #[test]
    fn kernels_low_order() {
        for kind in [LidstoneKind::Bernoulli, LidstoneKind::Euler] {
            let r = check_kernel(kind, 6).report(crate::qpolys::verify::IdentityTag::KernelBernoulli, 6);
            assert!(r.passed, "{kind:?}: {:?}", r.first_mismatch);
        }
    }

    #[test]
    fn basis_degrees() {
        let b = build_basis(LidstoneKind::Bernoulli, 3).unwrap();
        for n in 0..=3 {
            assert_eq!(b.first[n].degree(), Some(2 * n + 1));
            assert_eq!(b.second[n].degree(), Some(2 * n + 1));
        }
        let e = build_basis(LidstoneKind::Euler, 3).unwrap();
        for n in 0..=3 {
            assert_eq!(e.first[n].degree(), Some(2 * n));
            assert_eq!(e.second[n].degree(), Some(2 * n + 1));
        }
    }
}
