//! The polynomial families and number sequences, each computable three
//! independent ways.
//!
//! * `SeriesDivision` expands the defining generating function.
//! * `Recurrence` solves the coefficient identities obtained by clearing
//!   denominators in the generating functions.
//! * `Conversion` derives one family from another through the
//!   exp_q(-w/2) factor that links them.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::zpoly::ZPoly;
use crate::error::{Error, Result};
use crate::qfield::{q_binomial, q_factorial, q_factorial_inv, q_pow_half, FieldElem, QBase};
use crate::qseries::{cq_series, exp_q_series_in, sq_series, TruncSeries, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    /// B̃_n(z)
    BernoulliPoly,
    /// Ẽ_n(z)
    EulerPoly,
    /// Ã_n(z)
    APoly,
    /// M̃_n(z)
    MPoly,
    /// β̃_n
    BernoulliNum,
    /// ẽ_n
    EulerSmall,
    /// Ẽ_n = Ẽ_n(0)
    EulerCap,
    /// entry n is T_{2n+1}
    Tangent,
    /// entry n is S_{2n}
    Secant,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 9] = [
        FamilyKind::BernoulliPoly,
        FamilyKind::EulerPoly,
        FamilyKind::APoly,
        FamilyKind::MPoly,
        FamilyKind::BernoulliNum,
        FamilyKind::EulerSmall,
        FamilyKind::EulerCap,
        FamilyKind::Tangent,
        FamilyKind::Secant,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::BernoulliPoly => "bernoulli-poly",
            FamilyKind::EulerPoly => "euler-poly",
            FamilyKind::APoly => "a-poly",
            FamilyKind::MPoly => "m-poly",
            FamilyKind::BernoulliNum => "bernoulli-num",
            FamilyKind::EulerSmall => "euler-small",
            FamilyKind::EulerCap => "euler-cap",
            FamilyKind::Tangent => "tangent",
            FamilyKind::Secant => "secant",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    pub fn is_polynomial(self) -> bool {
        matches!(self, FamilyKind::BernoulliPoly | FamilyKind::EulerPoly | FamilyKind::APoly | FamilyKind::MPoly)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    SeriesDivision,
    Recurrence,
    Conversion,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::SeriesDivision, Method::Recurrence, Method::Conversion];

    pub fn name(self) -> &'static str {
        match self {
            Method::SeriesDivision => "series-division",
            Method::Recurrence => "recurrence",
            Method::Conversion => "conversion",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.name() == s)
    }
}

/// Entries 0..=up_to of one family. Number sequences are stored as
/// constant polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyTable {
    pub kind: FamilyKind,
    pub up_to: usize,
    pub method: Method,
    pub entries: Vec<ZPoly>,
}

impl FamilyTable {
    pub fn poly(&self, n: usize) -> &ZPoly {
        &self.entries[n]
    }

    /// Entry n of a number sequence.
    pub fn number(&self, n: usize) -> FieldElem {
        self.entries[n].coeff(0)
    }

    pub fn numbers(&self) -> Vec<FieldElem> {
        self.entries.iter().map(|p| p.coeff(0)).collect()
    }
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    schema_version: u32,
    kind: FamilyKind,
    #[serde(rename = "upTo")]
    up_to: usize,
    method: Method,
    q: String,
    entries: Vec<Vec<String>>,
}

impl FamilyTable {
    /// JSON with each entry stored as its z-coefficients, lowest first.
    pub fn to_json(&self) -> String {
        let file = TableFile {
            schema_version: 1,
            kind: self.kind,
            up_to: self.up_to,
            method: self.method,
            q: "symbolic".into(),
            entries: self
                .entries
                .iter()
                .map(|p| if p.is_zero() { vec!["0".into()] } else { p.coeffs().iter().map(|c| c.to_string()).collect() })
                .collect(),
        };
        serde_json::to_string(&file).expect("table serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: TableFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if file.schema_version != 1 || file.q != "symbolic" {
            return Err(Error::Parse(format!("unsupported table (schema {}, q {})", file.schema_version, file.q)));
        }
        if file.entries.len() != file.up_to + 1 {
            return Err(Error::Parse(format!("expected {} entries, found {}", file.up_to + 1, file.entries.len())));
        }
        let entries = file
            .entries
            .iter()
            .map(|cs| cs.iter().map(|c| c.parse::<FieldElem>()).collect::<Result<Vec<_>>>().map(ZPoly::new))
            .collect::<Result<Vec<_>>>()?;
        Ok(FamilyTable { kind: file.kind, up_to: file.up_to, method: file.method, entries })
    }
}

type CacheKey = (FamilyKind, Method, QBase);

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<Vec<ZPoly>>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<Vec<ZPoly>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Entries 0..=n, memoized per process. Tables are deterministic, so a
/// longer cached table serves any shorter request.
fn entries(kind: FamilyKind, n: usize, method: Method, base: QBase) -> Arc<Vec<ZPoly>> {
    let key = (kind, method, base);
    if let Some(v) = cache().lock().expect("cache lock").get(&key) {
        if v.len() > n {
            return v.clone();
        }
    }
    let v = Arc::new(compute(kind, n, method, base));
    let mut c = cache().lock().expect("cache lock");
    let slot = c.entry(key).or_insert_with(|| v.clone());
    if slot.len() < v.len() {
        *slot = v.clone();
    }
    v
}

/// Preload a table (e.g. from disk). Ignored if a longer one is cached.
pub fn seed_cache(table: &FamilyTable, base: QBase) {
    let mut c = cache().lock().expect("cache lock");
    let slot = c.entry((table.kind, table.method, base)).or_insert_with(|| Arc::new(table.entries.clone()));
    if slot.len() < table.entries.len() {
        *slot = Arc::new(table.entries.clone());
    }
}

/// Family in base q with the given method.
pub fn family(kind: FamilyKind, n: usize, method: Method) -> FamilyTable {
    let e = entries(kind, n, method, QBase::Direct);
    FamilyTable { kind, up_to: n, method, entries: e[..=n].to_vec() }
}

/// Family computed from scratch with every q-power read in base 1/q.
/// Only series division is supported in the inverted base.
pub fn family_in_base(kind: FamilyKind, n: usize, base: QBase) -> FamilyTable {
    let e = entries(kind, n, Method::SeriesDivision, base);
    FamilyTable { kind, up_to: n, method: Method::SeriesDivision, entries: e[..=n].to_vec() }
}

pub fn bernoulli_polys(n: usize, method: Method) -> FamilyTable {
    family(FamilyKind::BernoulliPoly, n, method)
}

pub fn euler_polys(n: usize, method: Method) -> FamilyTable {
    family(FamilyKind::EulerPoly, n, method)
}

pub fn a_polys(n: usize, method: Method) -> FamilyTable {
    family(FamilyKind::APoly, n, method)
}

pub fn m_polys(n: usize, method: Method) -> FamilyTable {
    family(FamilyKind::MPoly, n, method)
}

/// β̃_0..β̃_n from the authoritative series.
pub fn bernoulli_numbers(n: usize) -> Vec<FieldElem> {
    family(FamilyKind::BernoulliNum, n, Method::SeriesDivision).numbers()
}

/// Ẽ_0..Ẽ_n.
pub fn euler_cap_numbers(n: usize) -> Vec<FieldElem> {
    family(FamilyKind::EulerCap, n, Method::SeriesDivision).numbers()
}

/// ẽ_0..ẽ_n.
pub fn euler_small_numbers(n: usize) -> Vec<FieldElem> {
    family(FamilyKind::EulerSmall, n, Method::SeriesDivision).numbers()
}

/// (T_1, T_3, .., T_{2n+1}) and (S_0, S_2, .., S_{2n}).
pub fn tangent_secant_numbers(n: usize) -> (FamilyTable, FamilyTable) {
    (family(FamilyKind::Tangent, n, Method::SeriesDivision), family(FamilyKind::Secant, n, Method::SeriesDivision))
}

/// ã_j = [w^j] 1/exp_q(-w/2), by series inversion.
pub fn conversion_coeffs_a(j: usize) -> Vec<FieldElem> {
    static CACHE: OnceLock<Mutex<Vec<FieldElem>>> = OnceLock::new();
    let c = CACHE.get_or_init(Default::default);
    {
        let v = c.lock().expect("lock");
        if v.len() > j {
            return v[..=j].to_vec();
        }
    }
    let inv = exp_q_series_in(QBase::Direct, &FieldElem::frac(-1, 2), j, Var::W)
        .invert()
        .expect("exp_q is a unit");
    let coeffs = inv.into_coeffs();
    let mut v = c.lock().expect("lock");
    if v.len() < coeffs.len() {
        *v = coeffs.clone();
    }
    coeffs
}

fn half() -> FieldElem {
    FieldElem::frac(1, 2)
}

fn quarter_pow(k: usize) -> FieldElem {
    FieldElem::frac(1, 4).pow(k as i64)
}

fn lift(s: &TruncSeries<FieldElem>) -> TruncSeries<ZPoly> {
    s.map(|c| ZPoly::constant(c.clone()))
}

/// exp_q(z·w) as a w-series with polynomial coefficients c_n z^n.
fn exp_zw(base: QBase, order: usize) -> TruncSeries<ZPoly> {
    let e = exp_q_series_in(base, &FieldElem::one(), order, Var::W);
    TruncSeries::from_fn(Var::W, order, |n| ZPoly::monomial(e.coeff(n).clone(), n))
}

/// Multiply coefficient n by [n]_q! (in the given base).
fn unnormalize<C: Clone>(coeffs: &[C], base: QBase, mul: impl Fn(&C, &FieldElem) -> C) -> Vec<C> {
    coeffs
        .iter()
        .enumerate()
        .map(|(n, c)| mul(c, &crate::qfield::q_factorial_in(base, n as u32)))
        .collect()
}

fn compute(kind: FamilyKind, n: usize, method: Method, base: QBase) -> Vec<ZPoly> {
    assert!(
        base == QBase::Direct || method == Method::SeriesDivision,
        "only series division is available in base 1/q"
    );
    match method {
        Method::SeriesDivision => by_series(kind, n, base),
        Method::Recurrence => by_recurrence(kind, n),
        Method::Conversion => by_conversion(kind, n),
    }
}

fn consts(v: Vec<FieldElem>) -> Vec<ZPoly> {
    v.into_iter().map(ZPoly::constant).collect()
}

fn by_series(kind: FamilyKind, n: usize, base: QBase) -> Vec<ZPoly> {
    let e = |scale: FieldElem, order: usize| exp_q_series_in(base, &scale, order, Var::W);
    let mhalf = FieldElem::frac(-1, 2);
    let poly_out = |s: TruncSeries<ZPoly>| unnormalize(s.coeffs(), base, |p, f| p.scale(f));
    let num_out = |s: TruncSeries<FieldElem>| consts(unnormalize(s.coeffs(), base, |c, f| c * f));
    match kind {
        FamilyKind::BernoulliPoly | FamilyKind::APoly => {
            let m = n + 1;
            let diff = e(half(), m).sub(&e(mhalf.clone(), m)).expect("same var");
            let mut num = exp_zw(base, m).shift_up(1);
            if kind == FamilyKind::BernoulliPoly {
                num = num.mul(&lift(&e(mhalf, m))).expect("same var");
            }
            poly_out(TruncSeries::divide_shift(&num, &lift(&diff)).expect("valuation one"))
        }
        FamilyKind::EulerPoly | FamilyKind::MPoly => {
            let sum = e(half(), n).add(&e(mhalf.clone(), n)).expect("same var");
            let inv = lift(&sum.invert().expect("unit"));
            let mut num = exp_zw(base, n);
            if kind == FamilyKind::EulerPoly {
                num = num.mul(&lift(&e(mhalf, n).scale(&FieldElem::from_int(2)))).expect("same var");
            }
            poly_out(num.mul(&inv).expect("same var"))
        }
        FamilyKind::BernoulliNum => {
            let m = n + 1;
            let diff = e(half(), m).sub(&e(mhalf.clone(), m)).expect("same var");
            let num = e(mhalf, m).shift_up(1);
            num_out(TruncSeries::divide_shift(&num, &diff).expect("valuation one"))
        }
        FamilyKind::EulerCap => {
            let sum = e(half(), n).add(&e(mhalf.clone(), n)).expect("same var");
            let num = e(mhalf, n).scale(&FieldElem::from_int(2));
            num_out(num.mul(&sum.invert().expect("unit")).expect("same var"))
        }
        FamilyKind::EulerSmall => {
            let sum = e(FieldElem::one(), n).add(&e(FieldElem::from_int(-1), n)).expect("same var");
            num_out(sum.invert().expect("unit").scale(&FieldElem::from_int(2)))
        }
        FamilyKind::Tangent | FamilyKind::Secant => {
            assert_eq!(base, QBase::Direct, "tangent/secant series are only built in base q");
            let order = 2 * n + 1;
            let sec = cq_series(&FieldElem::one(), order).invert().expect("unit");
            let s = if kind == FamilyKind::Tangent {
                sq_series(&FieldElem::one(), order).mul(&sec).expect("same var")
            } else {
                sec
            };
            let full = unnormalize(s.coeffs(), base, |c, f| c * f);
            let r = usize::from(kind == FamilyKind::Tangent);
            consts((0..=n).map(|i| full[2 * i + r].clone()).collect())
        }
    }
}

/// u^m for exponents written as q-powers with half-integer exponent m/2.
fn u(m: i64) -> FieldElem {
    q_pow_half(m)
}

fn fi(k: usize) -> FieldElem {
    q_factorial_inv(k as u32)
}

fn fact(k: usize) -> FieldElem {
    q_factorial(k as u32)
}

fn binom(n: usize, k: usize) -> FieldElem {
    q_binomial(n as u32, k as u32).expect("k <= n")
}

fn bernoulli_numbers_rec(n: usize) -> Vec<FieldElem> {
    // q^{m(2m-1)/2} 4^{-m}/[2m]! = Σ_k 4^{-k} q^{k(2k+1)/2}/[2k+1]! · β_{2m-2k}/[2m-2k]!
    let mut b = vec![FieldElem::zero(); n + 1];
    b[0] = FieldElem::one();
    if n >= 1 {
        b[1] = FieldElem::frac(-1, 2);
    }
    for m in 1..=n / 2 {
        let mi = m as i64;
        let mut rhs = &(&u(mi * (2 * mi - 1)) * &quarter_pow(m)) * &fi(2 * m);
        for k in 1..=m {
            let ki = k as i64;
            let c = &(&quarter_pow(k) * &u(ki * (2 * ki + 1))) * &fi(2 * k + 1);
            rhs = &rhs - &(&c * &(&b[2 * m - 2 * k] * &fi(2 * m - 2 * k)));
        }
        b[2 * m] = &rhs * &fact(2 * m);
    }
    b
}

fn euler_cap_rec(n: usize) -> Vec<FieldElem> {
    // q^{m(m-1)/4}(-1/2)^m/[m]! = Σ_k 4^{-k} q^{k(2k-1)/2}/[2k]! · Ẽ_{m-2k}/[m-2k]!
    let mut e: Vec<FieldElem> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let mi = m as i64;
        let mut rhs = &(&u(mi * (mi - 1) / 2) * &FieldElem::frac(-1, 2).pow(mi)) * &fi(m);
        for k in 1..=m / 2 {
            let ki = k as i64;
            let c = &(&quarter_pow(k) * &u(ki * (2 * ki - 1))) * &fi(2 * k);
            rhs = &rhs - &(&c * &(&e[m - 2 * k] * &fi(m - 2 * k)));
        }
        e.push(&rhs * &fact(m));
    }
    e
}

fn euler_small_rec(n: usize) -> Vec<FieldElem> {
    // Cosh_q(w) Σ ẽ_m w^m/[m]! = 1
    let mut e: Vec<FieldElem> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let mut acc = if m == 0 { FieldElem::one() } else { FieldElem::zero() };
        for k in 1..=m / 2 {
            let ki = k as i64;
            let c = &u(ki * (2 * ki - 1)) * &fi(2 * k);
            acc = &acc - &(&c * &(&e[m - 2 * k] * &fi(m - 2 * k)));
        }
        e.push(&acc * &fact(m));
    }
    e
}

fn tangent_rec(n: usize) -> Vec<FieldElem> {
    // T_{2m+1}/[2m+1]! = Σ_{k=1}^m (-1)^{k-1} 4^k β_{2k}/[2k]! · T_{2m-2k+1}/[2m-2k+1]!
    let b = bernoulli_numbers_rec(2 * n);
    let mut t: Vec<FieldElem> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        if m == 0 {
            t.push(FieldElem::one());
            continue;
        }
        let mut acc = FieldElem::zero();
        for k in 1..=m {
            let mut c = &(&FieldElem::from_int(4).pow(k as i64) * &b[2 * k]) * &fi(2 * k);
            if k % 2 == 0 {
                c = -c;
            }
            acc = &acc + &(&c * &(&t[m - k] * &fi(2 * (m - k) + 1)));
        }
        t.push(&acc * &fact(2 * m + 1));
    }
    t
}

fn secant_rec(n: usize) -> Vec<FieldElem> {
    // C_q(z) Sec_q(z) = 1
    let mut s: Vec<FieldElem> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let mut acc = if m == 0 { FieldElem::one() } else { FieldElem::zero() };
        for k in 1..=m {
            let ki = k as i64;
            let mut c = &u(ki * (2 * ki - 1)) * &fi(2 * k);
            if k % 2 == 1 {
                c = -c;
            }
            acc = &acc - &(&c * &(&s[m - k] * &fi(2 * (m - k))));
        }
        s.push(&acc * &fact(2 * m));
    }
    s
}

/// P_m = Σ_k [m k] q^{k(k-1)/4} c_{m-k} z^k.
fn appell(numbers: &[FieldElem], n: usize) -> Vec<ZPoly> {
    (0..=n)
        .map(|m| {
            ZPoly::new(
                (0..=m)
                    .map(|k| {
                        let ki = k as i64;
                        &(&binom(m, k) * &u(ki * (ki - 1) / 2)) * &numbers[m - k]
                    })
                    .collect(),
            )
        })
        .collect()
}

/// Solve q^{m(m-1)/4} z^m/[m]! = Σ_k g_k P_{m-2k}/[m-2k]! for P, where
/// g_k is the coefficient of w^{2k} of the even factor.
fn solve_even_factor(n: usize, g: impl Fn(usize) -> FieldElem, lead: FieldElem) -> Vec<ZPoly> {
    let mut p: Vec<ZPoly> = Vec::with_capacity(n + 1);
    let lead_inv = lead.inverse().expect("nonzero");
    for m in 0..=n {
        let mi = m as i64;
        let mut rhs = ZPoly::monomial(&u(mi * (mi - 1) / 2) * &fi(m), m);
        for k in 1..=m / 2 {
            rhs = rhs.sub(&p[m - 2 * k].scale(&(&g(k) * &fi(m - 2 * k))));
        }
        p.push(rhs.scale(&(&fact(m) * &lead_inv)));
    }
    p
}

fn a_polys_rec(n: usize) -> Vec<ZPoly> {
    // (exp(w/2) - exp(-w/2))/w = Σ 4^{-k} q^{k(2k+1)/2} w^{2k}/[2k+1]!
    solve_even_factor(
        n,
        |k| {
            let ki = k as i64;
            &(&quarter_pow(k) * &u(ki * (2 * ki + 1))) * &fi(2 * k + 1)
        },
        FieldElem::one(),
    )
}

fn m_polys_rec(n: usize) -> Vec<ZPoly> {
    // exp(w/2) + exp(-w/2) = Σ 2·4^{-k} q^{k(2k-1)/2} w^{2k}/[2k]!
    solve_even_factor(
        n,
        |k| {
            let ki = k as i64;
            &(&quarter_pow(k) * &u(ki * (2 * ki - 1))) * &fi(2 * k).scale_rational(&two())
        },
        FieldElem::from_int(2),
    )
}

/// Multiply the exponential generating sequence `src` by the series
/// Σ c_k w^k: returns [m]! Σ_k c_k src_{m-k}/[m-k]!.
fn egf_product(src: &[ZPoly], c: &[FieldElem], n: usize) -> Vec<ZPoly> {
    (0..=n)
        .map(|m| {
            let mut acc = ZPoly::zero();
            for k in 0..=m {
                if !c[k].is_zero() {
                    acc = acc.add(&src[m - k].scale(&(&c[k] * &fi(m - k))));
                }
            }
            acc.scale(&fact(m))
        })
        .collect()
}

/// Coefficients of exp_q(-w/2).
fn exp_minus_half(n: usize) -> Vec<FieldElem> {
    exp_q_series_in(QBase::Direct, &FieldElem::frac(-1, 2), n, Var::W).into_coeffs()
}

fn by_recurrence(kind: FamilyKind, n: usize) -> Vec<ZPoly> {
    match kind {
        FamilyKind::BernoulliNum => consts(bernoulli_numbers_rec(n)),
        FamilyKind::EulerCap => consts(euler_cap_rec(n)),
        FamilyKind::EulerSmall => consts(euler_small_rec(n)),
        FamilyKind::Tangent => consts(tangent_rec(n)),
        FamilyKind::Secant => consts(secant_rec(n)),
        FamilyKind::BernoulliPoly => appell(&entries_numbers(FamilyKind::BernoulliNum, n, Method::Recurrence), n),
        FamilyKind::EulerPoly => appell(&entries_numbers(FamilyKind::EulerCap, n, Method::Recurrence), n),
        FamilyKind::APoly => a_polys_rec(n),
        FamilyKind::MPoly => m_polys_rec(n),
    }
}

fn entries_numbers(kind: FamilyKind, n: usize, method: Method) -> Vec<FieldElem> {
    entries(kind, n, method, QBase::Direct)[..=n].iter().map(|p| p.coeff(0)).collect()
}

fn by_conversion(kind: FamilyKind, n: usize) -> Vec<ZPoly> {
    match kind {
        FamilyKind::BernoulliPoly => {
            // B̃ = exp_q(-w/2) · Ã
            let a = entries(FamilyKind::APoly, n, Method::Recurrence, QBase::Direct);
            egf_product(&a, &exp_minus_half(n), n)
        }
        FamilyKind::EulerPoly => {
            // Ẽ = 2 exp_q(-w/2) · M̃
            let m = entries(FamilyKind::MPoly, n, Method::Recurrence, QBase::Direct);
            let c: Vec<FieldElem> = exp_minus_half(n).iter().map(|x| x.scale_rational(&two())).collect();
            egf_product(&m, &c, n)
        }
        FamilyKind::APoly => {
            let b = entries(FamilyKind::BernoulliPoly, n, Method::Recurrence, QBase::Direct);
            egf_product(&b, &conversion_coeffs_a(n), n)
        }
        FamilyKind::MPoly => {
            let e = entries(FamilyKind::EulerPoly, n, Method::Recurrence, QBase::Direct);
            let c: Vec<FieldElem> =
                conversion_coeffs_a(n).iter().map(|x| x.scale_rational(&num_rational::BigRational::new(1.into(), 2.into()))).collect();
            egf_product(&e, &c, n)
        }
        FamilyKind::BernoulliNum => {
            // β̃_n = Ã_n(-1/2)
            let a = entries(FamilyKind::APoly, n, Method::Conversion, QBase::Direct);
            consts(a[..=n].iter().map(|p| p.eval(&FieldElem::frac(-1, 2))).collect())
        }
        FamilyKind::EulerCap => {
            let e = entries(FamilyKind::EulerPoly, n, Method::Conversion, QBase::Direct);
            consts(e[..=n].iter().map(|p| p.coeff(0)).collect())
        }
        FamilyKind::EulerSmall => {
            // ẽ_{2m} = (-1)^m [2m]! [z^{2m}] 1/C_q(z); odd entries vanish
            let sec = cq_series(&FieldElem::one(), n).invert().expect("unit");
            consts(
                (0..=n)
                    .map(|m| {
                        if m % 2 == 1 {
                            return FieldElem::zero();
                        }
                        let v = sec.coeff(m) * &fact(m);
                        if (m / 2) % 2 == 1 {
                            -v
                        } else {
                            v
                        }
                    })
                    .collect(),
            )
        }
        FamilyKind::Tangent => {
            // T_{2m+1} = (-1)^{m+1} 2^{2m+1} Ẽ_{2m+1}
            let e = entries_numbers(FamilyKind::EulerCap, 2 * n + 1, Method::Recurrence);
            consts(
                (0..=n)
                    .map(|m| {
                        let v = e[2 * m + 1].scale_rational(&num_rational::BigRational::from_integer(
                            num_bigint::BigInt::from(2).pow(2 * m as u32 + 1),
                        ));
                        if m % 2 == 0 {
                            -v
                        } else {
                            v
                        }
                    })
                    .collect(),
            )
        }
        FamilyKind::Secant => {
            // S_{2m} = (-1)^m ẽ_{2m}
            let e = entries_numbers(FamilyKind::EulerSmall, 2 * n, Method::Recurrence);
            consts((0..=n).map(|m| if m % 2 == 1 { -&e[2 * m] } else { e[2 * m].clone() }).collect())
        }
    }
}

fn two() -> num_rational::BigRational {
    num_rational::BigRational::from_integer(2.into())
}
