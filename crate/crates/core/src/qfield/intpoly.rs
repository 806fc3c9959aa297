//! Dense univariate polynomials over the integers, plus the cyclotomic
//! polynomials Φ_m(u) that make up every q-factorial denominator.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer polynomial, ascending powers. The zero polynomial has no
/// coefficients; otherwise the last coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub(crate) struct IntPoly {
    coeffs: Vec<BigInt>,
}

/// Above this many coefficient products, multiplication goes through
/// Kronecker substitution instead of the schoolbook loop.
const KRONECKER_THRESHOLD: usize = 1024;

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly { coeffs: vec![BigInt::one()] }
    }

    pub fn monomial(c: BigInt, deg: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        coeffs[deg] = c;
        IntPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    #[cfg(test)]
    pub fn from_i64(cs: &[i64]) -> Self {
        Self::from_coeffs(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; zero polynomial reports 0 (callers check `is_zero` first).
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Number of vanishing low-order coefficients.
    pub fn trailing_zeros(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn shift_down(&self, k: usize) -> Self {
        IntPoly { coeffs: self.coeffs[k.min(self.coeffs.len())..].to_vec() }
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Coefficients in reverse order (u^d p(1/u) for d = degree).
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::from_coeffs(c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n, BigInt::zero());
        for (c, s) in coeffs.iter_mut().zip(&other.coeffs) {
            *c -= s;
        }
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        if k.is_one() {
            return self.clone();
        }
        IntPoly { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Exact division of every coefficient by `k`.
    pub fn div_scalar_exact(&self, k: &BigInt) -> Self {
        if k.is_one() {
            return self.clone();
        }
        IntPoly { coeffs: self.coeffs.iter().map(|c| c / k).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.coeffs.len() == 1 {
            return other.scale(&self.coeffs[0]);
        }
        if other.coeffs.len() == 1 {
            return self.scale(&other.coeffs[0]);
        }
        if self.coeffs.len() * other.coeffs.len() >= KRONECKER_THRESHOLD {
            return kronecker_mul(self, other);
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::from_coeffs(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// gcd of all coefficients (non-negative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient, and the signed
    /// content that was removed.
    pub fn primitive(&self) -> (BigInt, IntPoly) {
        if self.is_zero() {
            return (BigInt::zero(), Self::zero());
        }
        let mut c = self.content();
        if self.leading().map_or(false, |l| l.is_negative()) {
            c = -c;
        }
        (c.clone(), self.div_scalar_exact(&c))
    }

    /// Division by a monic polynomial; `None` if the remainder is nonzero.
    pub fn div_exact_monic(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let (q, r) = self.divrem_monic(divisor);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    fn divrem_monic(&self, divisor: &IntPoly) -> (IntPoly, IntPoly) {
        debug_assert!(divisor.leading().map_or(false, |l| l.is_one()));
        let dd = divisor.degree();
        if self.coeffs.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = std::mem::take(&mut rem[i + dd]);
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs[..dd].iter().enumerate() {
                if !d.is_zero() {
                    rem[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
    fn pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        let db = b.degree();
        let lb = b.leading().expect("nonzero divisor").clone();
        let mut rem = self.coeffs.clone();
        while rem.len() > db && !rem.is_empty() {
            let k = rem.len() - 1 - db;
            let lr = rem.pop().expect("nonempty");
            for c in rem.iter_mut() {
                *c *= &lb;
            }
            for (j, d) in b.coeffs[..db].iter().enumerate() {
                rem[k + j] -= &lr * d;
            }
            while rem.last().map_or(false, |c| c.is_zero()) {
                rem.pop();
            }
        }
        Self::from_coeffs(rem)
    }

    /// Primitive gcd with positive leading coefficient (primitive PRS).
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive().1;
        }
        if other.is_zero() {
            return self.primitive().1;
        }
        let mut a = self.primitive().1;
        let mut b = other.primitive().1;
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.degree() == 0 {
                return IntPoly::one();
            }
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive().1;
        }
        a
    }

    /// Exact division by an arbitrary (not necessarily monic) divisor over Z.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        if divisor.is_zero() {
            return None;
        }
        let dd = divisor.degree();
        let ld = divisor.leading().expect("nonzero").clone();
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.coeffs.len() <= dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = std::mem::take(&mut rem[i + dd]);
            if c.is_zero() {
                continue;
            }
            let (qc, r) = c.div_rem(&ld);
            if !r.is_zero() {
                return None;
            }
            for (j, d) in divisor.coeffs[..dd].iter().enumerate() {
                if !d.is_zero() {
                    rem[i + j] -= &qc * d;
                }
            }
            quot[i] = qc;
        }
        if rem[..dd].iter().all(|c| c.is_zero()) {
            Some(Self::from_coeffs(quot))
        } else {
            None
        }
    }

    /// Fold coefficients modulo u^m - 1.
    fn fold_mod_xm1(&self, m: usize) -> IntPoly {
        if self.coeffs.len() <= m {
            return self.clone();
        }
        let mut out = vec![BigInt::zero(); m];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i % m] += c;
        }
        Self::from_coeffs(out)
    }

    /// Whether Φ_m(u) divides this polynomial.
    pub fn divisible_by_cyclotomic(&self, m: u32) -> bool {
        if self.is_zero() {
            return true;
        }
        let folded = self.fold_mod_xm1(m as usize);
        if folded.is_zero() {
            return true;
        }
        let phi = cyclotomic(m);
        folded.coeffs.len() > phi.degree() && folded.div_exact_monic(&phi).is_some()
    }

    /// Evaluate at a rational-free integer point (used only in tests).
    #[cfg(test)]
    pub fn eval_i64(&self, x: i64) -> BigInt {
        let x = BigInt::from(x);
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c)
    }
}

fn bit_len(x: &BigInt) -> u64 {
    x.bits()
}

/// Kronecker substitution: pack each operand into a single big integer at
/// a slot width large enough to hold any product coefficient, multiply
/// once, and unpack. Signed inputs are split into non-negative halves.
fn kronecker_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let (ap, an) = split_signs(a);
    let (bp, bn) = split_signs(b);
    let max_a = a.coeffs.iter().map(bit_len).max().unwrap_or(0);
    let max_b = b.coeffs.iter().map(bit_len).max().unwrap_or(0);
    let terms = a.coeffs.len().min(b.coeffs.len()) as u64;
    let bits = max_a + max_b + 64 - terms.leading_zeros() as u64 + 1;
    let slot = ((bits + 31) / 32) as usize;
    let len = a.coeffs.len() + b.coeffs.len() - 1;

    let mut out = vec![BigInt::zero(); len];
    let mut accumulate = |x: &[BigUint], y: &[BigUint], positive: bool| {
        if x.iter().all(|c| c.is_zero()) || y.iter().all(|c| c.is_zero()) {
            return;
        }
        let prod = pack(x, slot) * pack(y, slot);
        let digits = prod.to_u32_digits();
        for (i, o) in out.iter_mut().enumerate() {
            let lo = i * slot;
            if lo >= digits.len() {
                break;
            }
            let hi = (lo + slot).min(digits.len());
            let v = BigInt::from_biguint(Sign::Plus, BigUint::from_slice(&digits[lo..hi]));
            if positive {
                *o += v;
            } else {
                *o -= v;
            }
        }
    };
    accumulate(&ap, &bp, true);
    accumulate(&an, &bn, true);
    accumulate(&ap, &bn, false);
    accumulate(&an, &bp, false);
    IntPoly::from_coeffs(out)
}

fn split_signs(p: &IntPoly) -> (Vec<BigUint>, Vec<BigUint>) {
    let mut pos = Vec::with_capacity(p.coeffs.len());
    let mut neg = Vec::with_capacity(p.coeffs.len());
    for c in &p.coeffs {
        let m = c.magnitude().clone();
        if c.is_negative() {
            pos.push(BigUint::zero());
            neg.push(m);
        } else {
            pos.push(m);
            neg.push(BigUint::zero());
        }
    }
    (pos, neg)
}

fn pack(cs: &[BigUint], slot: usize) -> BigUint {
    let mut digits = vec![0u32; cs.len() * slot];
    for (i, c) in cs.iter().enumerate() {
        for (j, d) in c.to_u32_digits().into_iter().enumerate() {
            digits[i * slot + j] = d;
        }
    }
    BigUint::new(digits)
}

type CycloCache = RwLock<HashMap<u32, Arc<IntPoly>>>;

fn cyclo_cache() -> &'static CycloCache {
    static CACHE: OnceLock<CycloCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The m-th cyclotomic polynomial Φ_m(u), m >= 1.
pub(crate) fn cyclotomic(m: u32) -> Arc<IntPoly> {
    assert!(m >= 1, "cyclotomic index must be positive");
    if let Some(p) = cyclo_cache().read().expect("cyclotomic cache poisoned").get(&m) {
        return Arc::clone(p);
    }
    // u^m - 1 = prod_{d | m} Φ_d
    let mut p = IntPoly::monomial(BigInt::one(), m as usize).sub(&IntPoly::one());
    for d in divisors(m) {
        if d < m {
            p = p.div_exact_monic(&cyclotomic(d)).expect("cyclotomic factor divides u^m - 1");
        }
    }
    let p = Arc::new(p);
    cyclo_cache()
        .write()
        .expect("cyclotomic cache poisoned")
        .insert(m, Arc::clone(&p));
    p
}

pub(crate) fn divisors(m: u32) -> Vec<u32> {
    let mut out: Vec<u32> = (1..=m).filter(|d| m % d == 0).collect();
    out.sort_unstable();
    out
}

/// Euler's totient.
pub(crate) fn totient(mut m: u32) -> u32 {
    let mut result = m;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(*cyclotomic(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(*cyclotomic(2), IntPoly::from_i64(&[1, 1]));
        assert_eq!(*cyclotomic(3), IntPoly::from_i64(&[1, 1, 1]));
        assert_eq!(*cyclotomic(4), IntPoly::from_i64(&[1, 0, 1]));
        assert_eq!(*cyclotomic(6), IntPoly::from_i64(&[1, -1, 1]));
        for m in 1..40 {
            assert_eq!(cyclotomic(m).degree() as u32, totient(m));
        }
    }

    #[test]
    fn cyclotomic_divisibility() {
        // u^6 - 1 contains Φ_1 Φ_2 Φ_3 Φ_6 and nothing else.
        let p = IntPoly::from_i64(&[-1, 0, 0, 0, 0, 0, 1]);
        for m in 1..20 {
            assert_eq!(p.divisible_by_cyclotomic(m), [1, 2, 3, 6].contains(&m), "m={m}");
        }
    }

    #[test]
    fn kronecker_matches_schoolbook() {
        let a = IntPoly::from_coeffs((0..60).map(|i| BigInt::from((i * 7919 % 201) as i64 - 100) << (i % 5 * 20)).collect());
        let b = IntPoly::from_coeffs((0..45).map(|i| BigInt::from((i * 104729 % 301) as i64 - 150)).collect());
        let k = kronecker_mul(&a, &b);
        let mut out = vec![BigInt::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            for (j, y) in b.coeffs.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        assert_eq!(k, IntPoly::from_coeffs(out));
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let f = IntPoly::from_i64(&[3, -2, 5]);
        let a = f.mul(&IntPoly::from_i64(&[1, 4]));
        let b = f.mul(&IntPoly::from_i64(&[-7, 0, 2]));
        assert_eq!(a.gcd(&b), f);
        assert_eq!(a.div_exact(&f), Some(IntPoly::from_i64(&[1, 4])));
        assert_eq!(IntPoly::from_i64(&[1, 1]).gcd(&IntPoly::from_i64(&[1, -1])), IntPoly::one());
    }

    #[test]
    fn evaluation_helper() {
        assert_eq!(IntPoly::from_i64(&[1, 2, 3]).eval_i64(2), BigInt::from(17));
    }
}
