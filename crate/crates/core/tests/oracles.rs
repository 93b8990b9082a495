mod common;

use common::{divided_ef, to_pbw, weyl_product_agrees, Letter, Pbw};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use num_rational::BigRational;
use sl2dist::arith::Integers;
use sl2dist::zform::{ef_straighten, Element, Monomial};

fn mono(a: u64, b: u64, c: u64) -> Element<Integers> {
    Element::monomial(Integers, Monomial::new(a, b, c))
}

#[test]
fn oracle_sanity() {
    // e f = f e + h
    let ef = Pbw::one().times_word(&[Letter::E, Letter::F]);
    let expect = Pbw([((1, 0, 1), one()), ((0, 1, 0), one())].into_iter().collect());
    assert_eq!(ef, expect);
    assert_ne!(to_pbw(&ef_straighten(Integers, 1, 1)), divided_ef(1, 2));
    assert_eq!(common::binom(-1, 3), (-1).into());
    assert_eq!(common::binom(5, 2), 10.into());
}

#[test]
fn ef_straightening_matches_rational_rewriting() {
    for r in 0..=6 {
        for s in 0..=6 {
            assert_eq!(to_pbw(&ef_straighten(Integers, r, s)), divided_ef(r, s), "r={r} s={s}");
        }
    }
}

#[test]
fn products_match_rational_rewriting() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let mut pick = || mono(rng.gen_range(0..4), rng.gen_range(0..4), rng.gen_range(0..4));
        let (x, y) = (pick(), pick());
        assert_eq!(to_pbw(&x.mul(&y)), to_pbw(&x).mul(&to_pbw(&y)), "{x} * {y}");
    }
}

#[test]
fn products_act_correctly_on_weyl_modules() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..40 {
        let mut pick = || mono(rng.gen_range(0..8), rng.gen_range(0..8), rng.gen_range(0..8));
        let (x, y) = (pick(), pick());
        let xy = x.mul(&y);
        for m in [0, 5, 13, 20] {
            assert!(weyl_product_agrees(m, &x, &y, &xy), "{x} * {y} on V({m})");
        }
    }
}

fn one() -> BigRational {
    BigRational::from_integer(1.into())
}
