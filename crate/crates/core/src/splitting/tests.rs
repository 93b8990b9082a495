use super::*;
use crate::hmodp::basis_hn;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sp(p: u64) -> Splitting {
    Splitting::new(p).unwrap()
}

#[test]
fn x_examples() {
    for p in [3u64, 5, 7] {
        assert_eq!(compute_x(0, p).unwrap(), FpElement::h(p, 1));
    }
    let h = Hmodp::new(3).unwrap();
    let expect = h
        .h(1)
        .mul(&h.f(2))
        .mul(&h.e(2))
        .add(&h.h(2).mul(&h.f(1)).mul(&h.e(1)))
        .add(&h.h(3));
    assert_eq!(compute_x(1, 3).unwrap(), expect);
}

#[test]
fn frobenius_lowers_x() {
    for (p, kmax) in [(3u64, 3u32), (5, 2), (7, 2)] {
        let s = sp(p);
        for k in 1..=kmax {
            assert_eq!(s.x(k).unwrap().frobenius(), s.x(k - 1).unwrap(), "p={p} k={k}");
        }
    }
}

#[test]
fn t_examples() {
    let h = Hmodp::new(3).unwrap();
    assert!(compute_t(0, 3).unwrap().is_zero());
    let expect = h.h(1).mul(&h.f(2)).mul(&h.e(2)).add(&h.h(2).mul(&h.f(1)).mul(&h.e(1)));
    assert_eq!(compute_t(1, 3).unwrap(), expect);
    for p in [3u64, 5] {
        let s = sp(p);
        for k in 0..3 {
            assert_eq!(s.t(k).unwrap().counit(), 0);
        }
    }
}

#[test]
fn relation_examples() {
    for p in [3u64, 5, 7] {
        let s = sp(p);
        assert!(s.verify_relation(1, 0, 1).unwrap().passed);
        assert!(s.verify_relation(4, 0, 1).unwrap().passed);
        let h = s.algebra();
        let lhs = h.e(p).commutator(&h.f(1));
        assert_eq!(lhs, h.h(1).add_scalar(1).mul(&h.e(p - 1)));
    }
    assert!(sp(3).verify_relation(6, 1, 1).unwrap().passed);
    assert!(sp(3).verify_relation(7, 0, 1).is_err());
    assert!(sp(3).verify_relation(2, 0, 0).is_err());
}

#[test]
fn failing_relation_has_witness() {
    let s = sp(3);
    let mut report = RelationReport::new(Check::Relation(1), 3, 0, None);
    let h = s.algebra();
    report.expect_eq("e = f", &h.e(1), &h.f(1));
    assert!(!report.passed);
    let w = report.witness.unwrap();
    assert_eq!(w.terms.len(), 2);
    assert_eq!(report.part.as_deref(), Some("e = f"));
}

#[test]
fn binom_elem_examples() {
    let s = sp(5);
    let x0 = s.x(0).unwrap();
    assert_eq!(binom_elem(&x0, 0).unwrap(), FpElement::one(5));
    assert_eq!(binom_elem(&x0, 1).unwrap(), x0);
    // on the torus, binom(h, j) as an element agrees with the basis element
    assert_eq!(binom_elem(&x0, 3).unwrap(), FpElement::h(5, 3));
    let t1 = s.t(1).unwrap();
    assert!(binom_elem(&t1, 2).unwrap().is_zero());
    assert!(binom_elem(&t1, 5).is_err());
}

#[test]
fn small_idempotents() {
    for p in [3u64, 5] {
        let s = sp(p);
        assert!(s.verify_t_idempotent(0).unwrap().passed);
        assert!(s.verify_t_idempotent(1).unwrap().passed);
        assert!(s.verify_t_recursion(1).unwrap().passed);
        assert!(s.verify_orthogonality(1).unwrap().passed);
    }
    assert!(sp(3).verify_t_recursion(0).is_err());
}

#[test]
fn t_commutes_with_x() {
    for p in [3u64, 5] {
        let s = sp(p);
        for k in 0..2 {
            assert!(s.t(k).unwrap().commutator(&s.x(k).unwrap()).is_zero());
        }
    }
}

#[test]
fn summand_a_is_fixed_by_t() {
    for (p, k) in [(3u64, 1u32), (5, 1), (3, 2)] {
        let s = sp(p);
        let (a, _) = s.t_summands(k).unwrap();
        assert!(a.mul(&s.t(k).unwrap().add_scalar(-1)).is_zero(), "p={p} k={k}");
    }
}

#[test]
fn summand_a_does_not_annihilate_x() {
    // A·X_k and A·(t_k − 1) differ by A·binom(h, p^k), which is nonzero here
    let s = sp(3);
    let (a, _) = s.t_summands(2).unwrap();
    assert!(!a.mul(&s.x(2).unwrap()).is_zero());
    assert!(!a.mul(&FpElement::h(3, 9)).add(&a).is_zero());
}

#[test]
fn xbasis_examples() {
    let s = sp(3);
    assert_eq!(s.xbasis_element(&XMonomial::unit()).unwrap(), FpElement::one(3));
    let x0 = XMonomial::new(vec![], vec![1], vec![]);
    assert_eq!(s.xbasis_element(&x0).unwrap(), FpElement::h(3, 1));
    let x1 = XMonomial::new(vec![], vec![0, 1], vec![]);
    assert_eq!(s.xbasis_element(&x1).unwrap(), compute_x(1, 3).unwrap());
    assert_eq!(x1.to_string(), "X1");
    let xm = XMonomial::from_indices(5, 4, 3, 3);
    assert_eq!(xm.fexp(), &[2, 1]);
    assert_eq!(xm.to_string(), "f0^2 f1 X0 X1 e1");
    assert_eq!(xm.indices(3), (5, 4, 3));
    assert_eq!(xm.shifted().indices(3), (15, 12, 9));
}

#[test]
fn unitriangular_at_level_one() {
    for p in [3u64, 5] {
        let s = sp(p);
        for m in basis_hn(1, p) {
            let xm = XMonomial::from_indices(m.a, m.b, m.c, p);
            assert_eq!(s.unitriangular_violation(&xm, 1).unwrap(), None);
        }
    }
}

#[test]
fn to_xbasis_examples() {
    let s = sp(3);
    let x = s.to_xbasis(&FpElement::h(3, 1), 1).unwrap();
    assert_eq!(x, XCombination::monomial(3, XMonomial::new(vec![], vec![1], vec![])));
    // binom(h, p) = X_1 − t_1, and t_1 has no X_1 component
    let bp = s.to_xbasis(&FpElement::h(3, 3), 2).unwrap();
    assert_eq!(bp.coeff(&XMonomial::new(vec![], vec![0, 1], vec![])), 1);
    assert_eq!(s.from_xbasis(&bp).unwrap(), FpElement::h(3, 3));
    assert!(s.to_xbasis(&FpElement::e(3, 3), 1).is_err());
}

#[test]
fn round_trip_on_h1() {
    for p in [3u64, 5] {
        let s = sp(p);
        for m in basis_hn(1, p) {
            let x = FpElement::monomial(p, m);
            let combo = s.to_xbasis(&x, 1).unwrap();
            assert_eq!(s.from_xbasis(&combo).unwrap(), x, "{m:?}");
        }
    }
}

#[test]
fn theta_examples() {
    for p in [3u64, 5] {
        let s = sp(p);
        let h = s.algebra();
        assert_eq!(s.theta(&h.e(1), 1).unwrap(), h.e(p));
        assert_eq!(s.theta(&h.f(1), 1).unwrap(), h.f(p));
        assert_eq!(s.theta(&h.one(), 0).unwrap(), h.one());
        assert_eq!(s.theta(&h.h(1), 1).unwrap(), s.x(1).unwrap());
    }
}

#[test]
fn theta_is_a_section_on_h1() {
    for p in [3u64, 5] {
        let s = sp(p);
        for m in basis_hn(1, p) {
            let x = FpElement::monomial(p, m);
            assert_eq!(s.theta(&x, 1).unwrap().frobenius(), x, "{m:?}");
        }
    }
}

#[test]
fn theta_multiplicative_samples() {
    let p = 3;
    let s = sp(p);
    let basis = basis_hn(1, p);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..40 {
        let x = FpElement::monomial(p, basis[rng.gen_range(0..basis.len())]);
        let y = FpElement::monomial(p, basis[rng.gen_range(0..basis.len())]);
        let lhs = s.theta(&x.mul(&y), 1).unwrap();
        assert_eq!(lhs, s.theta(&x, 1).unwrap().mul(&s.theta(&y, 1).unwrap()));
    }
}

#[test]
fn theta_commutes_with_chevalley_on_generators() {
    for p in [3u64, 5] {
        let s = sp(p);
        let h = s.algebra();
        for k in 0..2 {
            for g in [h.e_gen(k), h.f_gen(k)] {
                let lhs = s.theta(&g.chevalley_involution(), k + 1).unwrap();
                let rhs = s.theta(&g, k + 1).unwrap().chevalley_involution();
                assert_eq!(lhs, rhs, "p={p} k={k}");
            }
        }
    }
}

#[test]
fn report_serializes() {
    let r = sp(3).verify_relation(2, 0, 1).unwrap();
    let json = serde_json::to_string(&r).unwrap();
    assert_eq!(json, r#"{"check":{"relation":2},"p":3,"k":0,"n":1,"passed":true}"#);
}
