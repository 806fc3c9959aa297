//! Frozen reference values computed independently with mpmath at 50
//! digits from the defining series.

use num_rational::BigRational;

use qlid_core::lidstone::catalog::parse_rational;
use qlid_core::numerics::{default_step, eval_certified, smallest_positive_zero_with, QFunction};
use qlid_core::qfield::{eval_at, NumericValue};
use qlid_core::qpolys::{bernoulli_numbers, tangent_secant_numbers};

const S1_HALF: &str = "3.0833415183152280210545602551118730293110875597511";
const C1_HALF: &str = "1.5590811734818059696789326491160761976955999922159";
const EXPQ_1_HALF: &str = "2.6350789928821808448071981561946358459984469774422";
/// 8·Ẽ_3 from the Euler generating function at z = 0.
const T3_HALF: &str = "0.883883476483184405501055452631061299106";
const BETA2_HALF: &str = "0.12626906806902634364300792180443732844372070315866";

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

fn frozen(s: &str) -> NumericValue {
    NumericValue::from_rational(&parse_rational(s).unwrap(), 256)
}

fn assert_close(got: &NumericValue, want: &str, tol: f64) {
    let d = (got - &frozen(want)).abs_upper();
    assert!(d <= tol, "{} vs {want}: diff {d:e}", got.to_decimal(45));
}

#[test]
fn smallest_zeros_at_half() {
    for (f, want) in [(QFunction::Sq, S1_HALF), (QFunction::Cq, C1_HALF)] {
        let r = smallest_positive_zero_with(f, &half(), 1e-30, &default_step(), 160).unwrap();
        assert!(r.radius <= 1e-30);
        assert_close(&r.to_numeric(), want, 2e-30);
    }
}

#[test]
fn exp_q_at_one() {
    let v = eval_certified(QFunction::ExpQ, 1.0, &half(), 1e-35).unwrap();
    assert_close(&v, EXPQ_1_HALF, 1e-34);
}

#[test]
fn second_bernoulli_number_at_half() {
    let b = bernoulli_numbers(2);
    assert_close(&eval_at(&b[2], &half(), 256).unwrap(), BETA2_HALF, 1e-45);
}

#[test]
fn low_tangent_and_secant_numbers_at_half() {
    // T_1 = 1 and S_0 = 1 for every q
    let (t, s) = tangent_secant_numbers(1);
    assert_eq!(eval_at(&t.number(0), &half(), 128).unwrap().to_f64(), 1.0);
    assert_eq!(eval_at(&s.number(0), &half(), 128).unwrap().to_f64(), 1.0);
    assert_close(&eval_at(&t.number(1), &half(), 256).unwrap(), T3_HALF, 1e-38);
}
