//! The q-exponential and its trigonometric/hyperbolic relatives as
//! truncated series, and reciprocal series built from them.

use super::series::{TruncSeries, Var};
use crate::qfield::{q_factorial_inv, q_factorial_inv_in, q_pow_half, q_pow_half_in, FieldElem, QBase};

/// `exp_q(scale·w) = Σ q^(n(n-1)/4) scale^n w^n / [n]_q!` in the given base.
pub fn exp_q_series_in(base: QBase, scale: &FieldElem, order: usize, var: Var) -> TruncSeries<FieldElem> {
    let mut p = FieldElem::one();
    let mut coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let n_i = n as i64;
        let c = &q_pow_half_in(base, n_i * (n_i - 1) / 2) * &q_factorial_inv_in(base, n as u32);
        coeffs.push(&c * &p);
        p = &p * scale;
    }
    TruncSeries::new(var, order, coeffs)
}

pub fn exp_q_series(scale: &FieldElem, order: usize) -> TruncSeries<FieldElem> {
    exp_q_series_in(QBase::Direct, scale, order, Var::W)
}

/// Terms of exp_q with index of the given parity, optionally with the
/// alternating sign (-1)^floor(n/2) of the trigonometric versions.
fn parity_series(scale: &FieldElem, order: usize, odd: bool, signed: bool) -> TruncSeries<FieldElem> {
    let r = usize::from(odd);
    let mut p = FieldElem::one();
    let mut coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        if n % 2 == r {
            let n_i = n as i64;
            let mut c = &(&q_pow_half(n_i * (n_i - 1) / 2) * &q_factorial_inv(n as u32)) * &p;
            if signed && (n / 2) % 2 == 1 {
                c = -c;
            }
            coeffs.push(c);
        } else {
            coeffs.push(FieldElem::zero());
        }
        p = &p * scale;
    }
    TruncSeries::new(Var::W, order, coeffs)
}

/// S_q(scale·w) = Σ (-1)^n q^(n(2n+1)/2) (scale·w)^(2n+1) / [2n+1]_q!.
pub fn sq_series(scale: &FieldElem, order: usize) -> TruncSeries<FieldElem> {
    parity_series(scale, order, true, true)
}

/// C_q(scale·w) = Σ (-1)^n q^(n(2n-1)/2) (scale·w)^(2n) / [2n]_q!.
pub fn cq_series(scale: &FieldElem, order: usize) -> TruncSeries<FieldElem> {
    parity_series(scale, order, false, true)
}

pub fn sinhq_series(scale: &FieldElem, order: usize) -> TruncSeries<FieldElem> {
    parity_series(scale, order, true, false)
}

pub fn coshq_series(scale: &FieldElem, order: usize) -> TruncSeries<FieldElem> {
    parity_series(scale, order, false, false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reciprocal {
    /// (w/2)·Coth_q(w/2)
    Coth,
    /// Tanh_q(w/2)
    Tanh,
    /// w / Sinh_q(w)
    Csch,
    /// 1 / Cosh_q(w/2)
    Sech,
}

/// Power series of the normalized reciprocal functions, by series division.
pub fn named_reciprocal_series(which: Reciprocal, order: usize) -> TruncSeries<FieldElem> {
    let half = FieldElem::frac(1, 2);
    match which {
        Reciprocal::Coth => {
            let c = coshq_series(&half, order + 1).shift_up(1).scale(&half);
            let s = sinhq_series(&half, order + 1);
            TruncSeries::divide_shift(&c, &s).expect("Sinh has valuation one")
        }
        Reciprocal::Tanh => {
            let c = coshq_series(&half, order).invert().expect("Cosh is a unit");
            sinhq_series(&half, order).mul(&c).expect("same variable")
        }
        Reciprocal::Csch => {
            let w = TruncSeries::monomial(Var::W, order + 1, 1);
            TruncSeries::divide_shift(&w, &sinhq_series(&FieldElem::one(), order + 1)).expect("Sinh has valuation one")
        }
        Reciprocal::Sech => coshq_series(&half, order).invert().expect("Cosh is a unit"),
    }
}

/// Calls `f` with every composition (ordered partition into positive
/// parts) of n.
fn for_each_composition(n: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(rem: usize, parts: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if rem == 0 {
            f(parts);
            return;
        }
        for s in 1..=rem {
            parts.push(s);
            rec(rem - s, parts, f);
            parts.pop();
        }
    }
    rec(n, &mut Vec::new(), f);
}

/// c_n of the reciprocal `1/exp_q(scale·w) = Σ c_n w^n`, as the
/// alternating composition sum
/// `Σ_k (-1)^k Σ_{s_1+..+s_k=n} Π q^(s_i(s_i-1)/4)/[s_i]_q!`, times scale^n.
pub fn composition_coeff(n: usize, scale: &FieldElem) -> FieldElem {
    let mut total = FieldElem::zero();
    for_each_composition(n, &mut |parts| {
        let mut t = FieldElem::one();
        for &s in parts {
            let s_i = s as i64;
            t = &t * &(&q_pow_half(s_i * (s_i - 1) / 2) * &q_factorial_inv(s as u32));
        }
        if parts.len() % 2 == 1 {
            t = -t;
        }
        total = &total + &t;
    });
    &total * &scale.pow(n as i64)
}

/// The composition sum with shifted factorials,
/// `Σ_k (-1)^k Σ_{s_1+..+s_k=j} Π q^(s_i(s_i+1)/4)/[s_i+1]_q!`.
///
/// This is the coefficient of x^j in x/(exp_q(x) - 1). It is kept so the
/// printed conversion formula can be compared against the correct one.
pub fn printed_conversion_coeff(j: usize) -> FieldElem {
    let mut total = FieldElem::zero();
    for_each_composition(j, &mut |parts| {
        let mut t = FieldElem::one();
        for &s in parts {
            let s_i = s as i64;
            t = &t * &(&q_pow_half(s_i * (s_i + 1) / 2) * &q_factorial_inv(s as u32 + 1));
        }
        if parts.len() % 2 == 1 {
            t = -t;
        }
        total = &total + &t;
    });
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::{q_int, q_factorial};

    #[test]
    fn exp_low_coefficients() {
        let a = FieldElem::from_int(3);
        let e = exp_q_series(&a, 3);
        assert_eq!(e.coeff(0), &FieldElem::one());
        assert_eq!(e.coeff(1), &a);
        assert_eq!(e.coeff(2), &(&(&q_pow_half(1) * &a.pow(2)) / &q_int(2)));
    }

    #[test]
    fn sine_coefficients() {
        let s = sq_series(&FieldElem::one(), 5);
        assert_eq!(s.coeff(1), &FieldElem::one());
        assert_eq!(s.coeff(3), &-(&q_pow_half(3) / &q_factorial(3)));
        assert!(s.coeff(2).is_zero());
    }

    #[test]
    fn cosh_is_even_part() {
        let n = 9;
        let e1 = exp_q_series(&FieldElem::one(), n);
        let e2 = exp_q_series(&FieldElem::from_int(-1), n);
        let avg = e1.add(&e2).unwrap().scale(&FieldElem::frac(1, 2));
        assert_eq!(coshq_series(&FieldElem::one(), n), avg);
    }

    #[test]
    fn inverse_matches_composition_sum() {
        let inv = exp_q_series(&FieldElem::one(), 8).invert().unwrap();
        assert_eq!(inv.coeff(1), &FieldElem::from_int(-1));
        for n in 0..=8 {
            assert_eq!(inv.coeff(n), &composition_coeff(n, &FieldElem::one()), "n = {n}");
        }
    }

    #[test]
    fn reciprocal_constant_terms() {
        for which in [Reciprocal::Coth, Reciprocal::Csch, Reciprocal::Sech] {
            assert_eq!(named_reciprocal_series(which, 4).coeff(0), &FieldElem::one(), "{which:?}");
        }
        let t = named_reciprocal_series(Reciprocal::Tanh, 4);
        assert!(t.coeff(0).is_zero());
        assert_eq!(t.coeff(1), &FieldElem::frac(1, 2));
    }

    #[test]
    fn printed_sum_is_x_over_exp_minus_one() {
        let n = 6;
        let e = exp_q_series(&FieldElem::one(), n + 1);
        let em1 = e.sub(&TruncSeries::one(Var::W, n + 1)).unwrap();
        let x = TruncSeries::monomial(Var::W, n + 1, 1);
        let r = TruncSeries::divide_shift(&x, &em1).unwrap();
        for j in 0..=n {
            assert_eq!(&printed_conversion_coeff(j), r.coeff(j), "j = {j}");
        }
    }
}
