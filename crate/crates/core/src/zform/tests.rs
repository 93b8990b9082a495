use super::*;
use crate::arith::{binom_int, BigInt, Integers, PrimeField};
use proptest::prelude::*;

const Z: Integers = Integers;

fn mono(a: u64, b: u64, c: u64) -> Element<Integers> {
    Element::monomial(Z, Monomial::new(a, b, c))
}

fn terms(pairs: &[((u64, u64, u64), i64)]) -> Element<Integers> {
    let mut out = Element::zero(Z);
    for ((a, b, c), k) in pairs {
        out.add_term(Monomial::new(*a, *b, *c), BigInt::from(*k));
    }
    out
}

/// Coefficients of a polynomial of degree <= d from its values at 0..=d,
/// by repeated forward differences.
fn newton_from_values(values: &[BigInt]) -> Vec<BigInt> {
    let mut row = values.to_vec();
    let mut out = Vec::new();
    while !row.is_empty() {
        out.push(row[0].clone());
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    out
}

#[test]
fn straighten_examples() {
    assert_eq!(ef_straighten(Z, 1, 1), terms(&[((1, 0, 1), 1), ((0, 1, 0), 1)]));
    assert_eq!(ef_straighten(Z, 0, 4), mono(4, 0, 0));
    assert_eq!(
        ef_straighten(Z, 1, 2),
        terms(&[((2, 0, 1), 1), ((1, 1, 0), 1), ((1, 0, 0), -1)])
    );
}

#[test]
fn shift_examples() {
    assert_eq!(hshift_expand(Z, 0, 3), HPoly::binom(Z, 3));
    let mut expect = HPoly::binom(Z, 1);
    expect.add_term(0, BigInt::from(1));
    assert_eq!(hshift_expand(Z, 1, 1), expect);
    let mut expect = HPoly::binom(Z, 1);
    expect.add_term(0, BigInt::from(-2));
    assert_eq!(hshift_expand(Z, -2, 1), expect);
}

#[test]
fn hh_mul_examples_against_evaluation() {
    for (a, b) in [(3u64, 0u64), (1, 1), (1, 2), (4, 6)] {
        let values: Vec<BigInt> =
            (0..=(a + b) as i64).map(|h| binom_int(h, a) * binom_int(h, b)).collect();
        let expect = newton_from_values(&values);
        let got = hh_mul(Z, a, b);
        for (k, c) in expect.iter().enumerate() {
            assert_eq!(&got.coeff(k as u64), c, "a={a} b={b} k={k}");
        }
    }
    let got = hh_mul(Z, 1, 2);
    assert_eq!(got.coeff(3), BigInt::from(3));
    assert_eq!(got.coeff(2), BigInt::from(2));
    assert_eq!(got.iter().count(), 2);
}

#[test]
fn hh_closed_form_validated() {
    assert_eq!(validate_hh_mul(25), Ok(()));
}

#[test]
fn h_past_examples() {
    let mut e_rule = HPoly::binom(Z, 1);
    e_rule.add_term(0, BigInt::from(-2));
    assert_eq!(h_past_ef(Z, 1, 1, Side::E), e_rule);
    let mut f_rule = HPoly::binom(Z, 1);
    f_rule.add_term(0, BigInt::from(2));
    assert_eq!(h_past_ef(Z, 1, 1, Side::F), f_rule);
    assert_eq!(h_past_ef(Z, 0, 7, Side::E), HPoly::binom(Z, 0));

    // and the rule agrees with the engine's own product
    let lhs = Element::e(Z, 1).mul(&Element::h(Z, 1));
    assert_eq!(lhs, h_past_ef(Z, 1, 1, Side::E).to_element().mul(&Element::e(Z, 1)));
}

#[test]
fn mul_examples() {
    assert_eq!(Element::e(Z, 2).mul(&Element::e(Z, 3)), mono(0, 0, 5).scale(&BigInt::from(10)));
    assert_eq!(Element::e(Z, 1).mul(&Element::f(Z, 1)), terms(&[((1, 0, 1), 1), ((0, 1, 0), 1)]));
    let fe = Element::f(Z, 1).mul(&Element::e(Z, 1));
    let e = Element::e(Z, 1);
    assert_eq!(fe.mul(&e), Element::f(Z, 1).mul(&e.mul(&e)));
}

#[test]
fn commutator_examples() {
    let (e, f) = (Element::e(Z, 1), Element::f(Z, 1));
    assert_eq!(e.commutator(&f), Element::h(Z, 1));
    assert!(e.commutator(&e).is_zero());
    for p in [3u64, 5, 7] {
        let fp = PrimeField::new(p).unwrap();
        let lhs = Element::e(fp, p).commutator(&Element::f(fp, 1));
        let rhs = Element::h(fp, 1).add(&Element::one(fp)).mul(&Element::e(fp, p - 1));
        assert_eq!(lhs, rhs, "p={p}");
    }
}

#[test]
fn chevalley_examples() {
    assert_eq!(Element::e(Z, 1).chevalley_involution(), Element::f(Z, 1));
    assert_eq!(Element::h(Z, 1).chevalley_involution(), Element::h(Z, 1).neg());
    let (e, f) = (Element::e(Z, 1), Element::f(Z, 1));
    let image = e.commutator(&f).chevalley_involution();
    assert_eq!(image, f.commutator(&e));
    assert_eq!(image, Element::h(Z, 1).neg());
}

#[test]
fn display_forms() {
    let ef = Element::e(Z, 1).mul(&Element::f(Z, 1));
    assert_eq!(ef.to_string(), "f(1)e(1) + h(1)");
    assert_eq!(Element::e(Z, 2).mul(&Element::e(Z, 3)).to_string(), "10 e(5)");
    let f3 = PrimeField::new(3).unwrap();
    let x = Element::e(f3, 3).mul(&Element::f(f3, 1));
    assert_eq!(x.to_string(), "f(1)e(3) + (h(1)+1) e(2)");
    assert_eq!(ef_straighten(Z, 1, 2).to_string(), "f(2)e(1) + f(1) (h(1)-1)");
    assert_eq!(Element::<Integers>::zero(Z).to_string(), "0");
    assert_eq!(Element::from_i64(Z, -3).to_string(), "-3");
}

#[test]
fn record_round_trip() {
    let x = ef_straighten(Z, 3, 2);
    let rec = x.to_record();
    let json = serde_json::to_string(&rec).unwrap();
    let back: ElementRecord = serde_json::from_str(&json).unwrap();
    assert_eq!(Element::from_record(Z, &back).unwrap(), x);
    assert!(json.contains(r#""ring":{"ring":"Z"}"#));
}

fn small_monomial(max: u64) -> impl Strategy<Value = Monomial> {
    (0..=max, 0..=max, 0..=max).prop_map(|(a, b, c)| Monomial::new(a, b, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn associativity(x in small_monomial(6), y in small_monomial(6), z in small_monomial(6)) {
        let (x, y, z) = (Element::monomial(Z, x), Element::monomial(Z, y), Element::monomial(Z, z));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
    }

    #[test]
    fn weight_grading(x in small_monomial(10), y in small_monomial(10)) {
        let prod = Element::monomial(Z, x).mul(&Element::monomial(Z, y));
        let w = x.weight() + y.weight();
        prop_assert!(prod.all_terms(|m| m.weight() == w));
    }

    #[test]
    fn cache_is_transparent(x in small_monomial(8), y in small_monomial(8)) {
        let (x, y) = (Element::monomial(Z, x), Element::monomial(Z, y));
        prop_assert_eq!(x.mul(&y), x.mul_with(&y, &StructureCache::disabled()));
    }

    #[test]
    fn chevalley_multiplicative_and_involutive(x in small_monomial(5), y in small_monomial(5)) {
        let (x, y) = (Element::monomial(Z, x), Element::monomial(Z, y));
        prop_assert_eq!(x.chevalley_involution().chevalley_involution(), x.clone());
        prop_assert_eq!(
            x.mul(&y).chevalley_involution(),
            x.chevalley_involution().mul(&y.chevalley_involution())
        );
    }
}
