use super::*;
use crate::splitting::Splitting;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn xm(f: &[u64], x: &[u64], e: &[u64]) -> XMonomial {
    XMonomial::new(f.to_vec(), x.to_vec(), e.to_vec())
}

#[test]
fn parsing_and_display() {
    assert_eq!(w("e0 f1 e0").gens(), &[Gen::E(0), Gen::F(1), Gen::E(0)]);
    assert_eq!(w("e0f12"), Word(vec![Gen::E(0), Gen::F(12)]));
    assert_eq!(w("1"), Word::default());
    assert_eq!(w("e0 f1").to_string(), "e0 f1");
    assert!("x0".parse::<Word>().is_err());
    assert!("e".parse::<Word>().is_err());
}

#[test]
fn weight_and_disorder() {
    assert_eq!(Word::default().weight(3), 0);
    assert_eq!(w("e0 f1").weight(3), 4);
    assert_eq!(w("f1 e0").weight(3), 4);
    assert_eq!(w("f0 e0").disorder(), 0);
    assert_eq!(w("e0 f0").disorder(), 1);
    assert_eq!(w("e0 e1 f0").disorder(), 2);
}

#[test]
fn straighten_examples() {
    let p = 3;
    let nf = straighten(&w("e0 f0"), p).unwrap();
    let mut expect = NormalCombination::new(p);
    expect.add_term(xm(&[1], &[], &[1]), 1);
    expect.add_term(xm(&[], &[1], &[]), 1);
    assert_eq!(nf, expect);
    assert_eq!(nf.to_string(), "f0 e0 + X0");

    assert_eq!(straighten(&w("f0 e0"), p).unwrap(), NormalCombination::monomial(p, xm(&[1], &[], &[1])));
    assert!(straighten(&w("e0 e0 e0"), p).unwrap().is_zero());
    assert_eq!(straighten(&Word::default(), p).unwrap(), NormalCombination::monomial(p, XMonomial::unit()));
}

#[test]
fn relation_four_example() {
    // e1 f0 = f0 e1 − (X0 + 1) e0^{p−1}
    for p in [3u64, 5] {
        let nf = straighten(&w("e1 f0"), p).unwrap();
        let mut expect = NormalCombination::new(p);
        expect.add_term(xm(&[1], &[], &[0, 1]), 1);
        expect.add_term(xm(&[], &[1], &[p - 1]), p - 1);
        // (X0 + 1) e0^{p−1} = X0 e0^{p−1} + e0^{p−1}
        expect.add_term(xm(&[], &[], &[p - 1]), p - 1);
        let direct = eval_word(&w("e1 f0"), p);
        let sp = Splitting::new(p).unwrap();
        assert_eq!(sp.from_xbasis(&nf).unwrap(), direct);
        assert_eq!(nf, expect, "p={p}");
    }
}

#[test]
fn eval_examples() {
    let p = 5;
    let ef = eval_word(&w("e0 f0"), p);
    assert_eq!(ef, FpElement::f(p, 1).mul(&FpElement::e(p, 1)).add(&FpElement::h(p, 1)));
    assert_eq!(eval_word(&Word::default(), p), FpElement::one(p));
}

fn random_word(rng: &mut ChaCha8Rng, max_len: usize, max_level: u32) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word(
        (0..len)
            .map(|_| {
                let k = rng.gen_range(0..=max_level);
                if rng.gen_bool(0.5) {
                    Gen::E(k)
                } else {
                    Gen::F(k)
                }
            })
            .collect(),
    )
}

#[test]
fn sound_normal_and_confluent_on_samples() {
    for p in [3u64, 5] {
        let sp = Splitting::new(p).unwrap();
        let mut left = Straightener::new(p, Strategy::Leftmost).unwrap();
        let mut right = Straightener::new(p, Strategy::Rightmost).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(p);
        for _ in 0..60 {
            let word = random_word(&mut rng, 6, 1);
            let nf = left.straighten(&word).unwrap();
            assert!(nf.iter().all(|(m, _)| m.is_reduced(p)));
            assert_eq!(sp.from_xbasis(&nf).unwrap(), eval_word(&word, p), "{word}");
            assert_eq!(right.straighten(&word).unwrap(), nf, "{word}");
        }
        assert!(left.steps() > 0);
    }
}

#[test]
fn higher_levels() {
    let p = 3;
    let sp = Splitting::new(p).unwrap();
    for s in ["e2 f0", "e0 f2", "e1 e2 f0 f1 e0 f2", "e2 f2 e1 f1"] {
        let word = w(s);
        let nf = straighten(&word, p).unwrap();
        assert_eq!(sp.from_xbasis(&nf).unwrap(), eval_word(&word, p), "{s}");
    }
}
