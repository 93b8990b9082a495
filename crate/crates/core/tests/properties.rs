use proptest::prelude::*;
use sl2dist::arith::Integers;
use sl2dist::hmodp::{FpElement, Hmodp};
use sl2dist::presentation::{eval_word, straighten, Gen, Word};
use sl2dist::splitting::Splitting;
use sl2dist::zform::{Element, Monomial};

fn monomial(bound: u64) -> impl Strategy<Value = Monomial> {
    (0..bound, 0..bound, 0..bound).prop_map(|(a, b, c)| Monomial::new(a, b, c))
}

fn word(max_level: u32) -> impl Strategy<Value = Word> {
    prop::collection::vec((any::<bool>(), 0..=max_level), 0..=6)
        .prop_map(|gs| Word::new(gs.into_iter().map(|(e, k)| if e { Gen::E(k) } else { Gen::F(k) }).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn integral_products_are_associative(x in monomial(6), y in monomial(6), z in monomial(6)) {
        let [x, y, z] = [x, y, z].map(|m| Element::monomial(Integers, m));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
    }

    #[test]
    fn reduction_mod_p_is_multiplicative(x in monomial(12), y in monomial(12)) {
        let h = Hmodp::new(5).unwrap();
        let (a, b) = (Element::monomial(Integers, x), Element::monomial(Integers, y));
        let lhs = h.reduce(&a.mul(&b)).unwrap();
        prop_assert_eq!(lhs, h.reduce(&a).unwrap().mul(&h.reduce(&b).unwrap()));
    }

    #[test]
    fn frobenius_is_multiplicative(x in monomial(27), y in monomial(27)) {
        let (a, b) = (FpElement::monomial(3, x), FpElement::monomial(3, y));
        prop_assert_eq!(a.mul(&b).frobenius(), a.frobenius().mul(&b.frobenius()));
        prop_assert_eq!(a.mul(&b).counit(), a.counit() * b.counit() % 3);
    }

    #[test]
    fn chevalley_involution_is_an_involution(x in monomial(9)) {
        let a = FpElement::monomial(3, x);
        prop_assert_eq!(a.chevalley_involution().chevalley_involution(), a);
    }

    #[test]
    fn straightening_preserves_value(w in word(2)) {
        let sp = Splitting::new(3).unwrap();
        let nf = straighten(&w, 3).unwrap();
        prop_assert!(nf.iter().all(|(m, _)| m.is_reduced(3)));
        prop_assert_eq!(sp.from_xbasis(&nf).unwrap(), eval_word(&w, 3));
    }
}
