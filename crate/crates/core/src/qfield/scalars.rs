//! q-integers, q-factorials, q-binomials and half-integer q-powers.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::One;

use super::elem::FieldElem;
use super::intpoly::divisors;
use super::upoly::UPoly;
use crate::error::{Error, Result};

/// Which base the scalar constructors use: q itself, or 1/q.
///
/// Families computed with `Inverse` are built directly in base 1/q and
/// give an independent check of [`FieldElem::subst_q_inverse`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QBase {
    Direct,
    Inverse,
}

/// u^m = q^(m/2).
pub fn q_pow_half(m: i64) -> FieldElem {
    FieldElem::u_pow(m)
}

pub fn q_pow_half_in(base: QBase, m: i64) -> FieldElem {
    match base {
        QBase::Direct => FieldElem::u_pow(m),
        QBase::Inverse => FieldElem::u_pow(-m),
    }
}

/// Cyclotomic exponents of [n]_q as a polynomial in u: the Φ_d with d | 2n, d > 2.
fn q_int_factors(n: u32, into: &mut BTreeMap<u32, u32>) {
    for d in divisors(2 * n) {
        if d > 2 {
            *into.entry(d).or_insert(0) += 1;
        }
    }
}

fn factorial_factors(n: u32) -> BTreeMap<u32, u32> {
    let mut f = BTreeMap::new();
    for j in 2..=n {
        q_int_factors(j, &mut f);
    }
    f
}

/// [n]_q = 1 + q + ... + q^(n-1).
pub fn q_int(n: u32) -> FieldElem {
    if n == 0 {
        return FieldElem::zero();
    }
    let mut f = BTreeMap::new();
    q_int_factors(n, &mut f);
    FieldElem::from_cyclotomic(BigRational::one(), 0, &f, &BTreeMap::new())
}

pub fn q_factorial(n: u32) -> FieldElem {
    FieldElem::from_cyclotomic(BigRational::one(), 0, &factorial_factors(n), &BTreeMap::new())
}

/// 1/[n]_q!, built from its factorization rather than by inversion.
pub fn q_factorial_inv(n: u32) -> FieldElem {
    FieldElem::from_cyclotomic(BigRational::one(), 0, &BTreeMap::new(), &factorial_factors(n))
}

pub fn q_binomial(n: u32, k: u32) -> Result<FieldElem> {
    if k > n {
        return Err(Error::IndexError(format!("q-binomial with k = {k} > n = {n}")));
    }
    let mut num = factorial_factors(n);
    for (m, e) in factorial_factors(k).into_iter().chain(factorial_factors(n - k)) {
        *num.get_mut(&m).expect("factorial of k divides factorial of n") -= e;
    }
    Ok(FieldElem::from_cyclotomic(BigRational::one(), 0, &num, &BTreeMap::new()))
}

/// [n] in the chosen base. In base 1/q this is Σ_{j<n} u^(-2j), assembled
/// term by term.
pub fn q_int_in(base: QBase, n: u32) -> FieldElem {
    match base {
        QBase::Direct => q_int(n),
        QBase::Inverse => {
            let mut p = UPoly::zero();
            for j in 0..n as i64 {
                p = p.add(&UPoly::monomial(BigRational::one(), -2 * j));
            }
            FieldElem::from_upoly(&p)
        }
    }
}

pub fn q_factorial_in(base: QBase, n: u32) -> FieldElem {
    match base {
        QBase::Direct => q_factorial(n),
        QBase::Inverse => (1..=n).fold(FieldElem::one(), |acc, j| &acc * &q_int_in(base, j)),
    }
}

pub fn q_factorial_inv_in(base: QBase, n: u32) -> FieldElem {
    match base {
        QBase::Direct => q_factorial_inv(n),
        QBase::Inverse => q_factorial_in(base, n).inverse().expect("q-factorial is nonzero"),
    }
}

pub fn q_binomial_in(base: QBase, n: u32, k: u32) -> Result<FieldElem> {
    match base {
        QBase::Direct => q_binomial(n, k),
        QBase::Inverse => {
            if k > n {
                return Err(Error::IndexError(format!("q-binomial with k = {k} > n = {n}")));
            }
            let d = &q_factorial_in(base, k) * &q_factorial_in(base, n - k);
            Ok(&q_factorial_in(base, n) / &d)
        }
    }
}

/// (a; q)_n = ∏_{j<n} (1 - a q^j).
pub fn pochhammer(a: &FieldElem, n: u32) -> FieldElem {
    let mut acc = FieldElem::one();
    for j in 0..n as i64 {
        acc = &acc * &(&FieldElem::one() - &(a * &FieldElem::u_pow(2 * j)));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qpoly(cs: &[i64]) -> FieldElem {
        // polynomial in q, coefficients ascending
        let mut spread = vec![0; 2 * cs.len()];
        for (i, &c) in cs.iter().enumerate() {
            spread[2 * i] = c;
        }
        FieldElem::from_upoly(&UPoly::from_ints(0, &spread))
    }

    #[test]
    fn half_powers() {
        assert_eq!(q_pow_half(2), qpoly(&[0, 1]));
        assert_eq!(q_pow_half(-3).to_string(), "(1)/(u^3)");
    }

    #[test]
    fn q_integers() {
        assert_eq!(q_int(3), qpoly(&[1, 1, 1]));
        assert_eq!(q_int(1), FieldElem::one());
        assert!(q_int(0).is_zero());
        assert_eq!(q_factorial(0), FieldElem::one());
    }

    #[test]
    fn binomial_matches_factorial_quotient() {
        let direct = &q_factorial(4) / &(&q_factorial(2) * &q_factorial(2));
        assert_eq!(q_binomial(4, 2).unwrap(), direct);
        assert_eq!(q_binomial(4, 2).unwrap(), &qpoly(&[1, 0, 1]) * &qpoly(&[1, 1, 1]));
        assert!(matches!(q_binomial(2, 3), Err(Error::IndexError(_))));
    }

    #[test]
    fn q_int_is_geometric_sum() {
        for n in 1..20 {
            let mut cs = vec![1; n as usize];
            cs.shrink_to_fit();
            assert_eq!(q_int(n), qpoly(&cs), "n = {n}");
        }
    }

    #[test]
    fn inverse_base_agrees_with_substitution() {
        for n in 0..=12 {
            let sub = q_factorial(n).subst_q_inverse();
            assert_eq!(q_factorial_in(QBase::Inverse, n), sub);
            // [n]_{1/q}! = q^{n(1-n)/2} [n]_q!
            let n = n as i64;
            assert_eq!(sub, &q_pow_half(n * (1 - n)) * &q_factorial(n as u32));
        }
        let three = q_int(3).subst_q_inverse();
        assert_eq!(three, &q_pow_half(-4) * &q_int(3));
    }

    #[test]
    fn pochhammer_small() {
        // (q; q)_2 = (1 - q)(1 - q^2)
        let p = pochhammer(&q_pow_half(2), 2);
        assert_eq!(p, qpoly(&[1, -1, -1, 1]));
    }
}
