use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use qlid_core::lidstone::{build_basis, delta_tower, expand_symbolic, LidstoneKind};
use qlid_core::qfield::{eval_at, sign_at, FieldElem, UPoly};
use qlid_core::qpolys::{delta_q, delta_q_pow, family, FamilyKind, FamilyTable, Method, ZPoly};
use qlid_core::qseries::{TruncSeries, Var};

fn upoly(max_len: usize) -> impl Strategy<Value = UPoly> {
    (-3i64..=3, prop::collection::vec(-4i64..=4, 1..=max_len)).prop_map(|(off, cs)| UPoly::from_ints(off, &cs))
}

fn elem() -> impl Strategy<Value = FieldElem> {
    (upoly(4), upoly(3).prop_filter("nonzero denominator", |d| !d.is_zero()))
        .prop_map(|(n, d)| FieldElem::from_fraction(&n, &d).unwrap())
}

/// Polynomials in z with small integer coefficients.
fn zpoly(max_deg: usize) -> impl Strategy<Value = ZPoly> {
    prop::collection::vec(-6i64..=6, 1..=max_deg + 1).prop_map(|cs| ZPoly::from_ints(&cs))
}

fn rational_q() -> impl Strategy<Value = BigRational> {
    (1i64..=15, 2i64..=16)
        .prop_filter("0 < q < 1", |(n, d)| n < d)
        .prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn field_distributes(a in elem(), b in elem(), c in elem()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
    }

    #[test]
    fn field_inverse(a in elem()) {
        prop_assume!(!a.is_zero());
        prop_assert!((&a * &a.inverse().unwrap()).is_one());
    }

    #[test]
    fn display_parses_back(a in elem()) {
        let back: FieldElem = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn q_inversion_is_an_involution(a in elem()) {
        prop_assert_eq!(a.subst_q_inverse().subst_q_inverse(), a);
    }

    #[test]
    fn exact_sign_matches_numeric_value(a in elem(), q in rational_q()) {
        let Ok(v) = eval_at(&a, &q, 128) else { return Ok(()) };
        let s = sign_at(&a, &q).unwrap();
        if let Some(ns) = v.certified_sign() {
            prop_assert_eq!(s, ns);
        }
    }

    #[test]
    fn series_inverse(cs in prop::collection::vec(elem(), 1..6)) {
        let mut cs = cs;
        cs.insert(0, FieldElem::one());
        let order = cs.len() - 1;
        let s = TruncSeries::new(Var::W, order, cs);
        let prod = s.mul(&s.invert().unwrap()).unwrap();
        prop_assert_eq!(prod, TruncSeries::one(Var::W, order));
    }

    #[test]
    fn delta_is_linear_and_lowers_degree(f in zpoly(8), g in zpoly(8), c in elem()) {
        prop_assert_eq!(delta_q(&f.add(&g.scale(&c))), delta_q(&f).add(&delta_q(&g).scale(&c)));
        let d = f.degree().unwrap_or(0);
        prop_assert!(delta_q_pow(&f, d + 1).is_zero());
    }

    #[test]
    fn lidstone_recovers_polynomials(f in zpoly(7), euler in any::<bool>()) {
        let kind = if euler { LidstoneKind::Euler } else { LidstoneKind::Bernoulli };
        let basis = build_basis(kind, 3).unwrap();
        prop_assert_eq!(expand_symbolic(&delta_tower(&f, kind, 3), &basis, 3).unwrap(), f);
    }

    #[test]
    fn table_json_round_trip(k in 0usize..FamilyKind::ALL.len(), n in 0usize..7) {
        let t = family(FamilyKind::ALL[k], n, Method::SeriesDivision);
        prop_assert_eq!(FamilyTable::from_json(&t.to_json()).unwrap(), t);
    }
}
