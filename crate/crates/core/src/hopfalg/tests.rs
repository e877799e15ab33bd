use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::group::FiniteGroup;
use crate::scalar::ScalarQ;

fn alg() -> HopfAlgebra {
    su_q2()
}

fn el(s: &str) -> HopfElement {
    alg().word(s).unwrap()
}

fn q(k: i32) -> ScalarQ {
    ScalarQ::q_pow(k)
}

fn m_s_id(x: &HopfElement) -> HopfElement {
    x.coproduct().apply_antipode(0).unwrap().multiply_legs(0).unwrap().into_element().unwrap()
}

fn m_id_s(x: &HopfElement) -> HopfElement {
    x.coproduct().apply_antipode(1).unwrap().multiply_legs(0).unwrap().into_element().unwrap()
}

#[test]
fn commutation_rules() {
    let a = el("a");
    let b = el("b");
    assert_eq!(b.mul(&a).unwrap(), el("a b").scale(&q(-1)));
    assert_eq!(a.mul(&b).unwrap(), el("a b"));
    let expected = &alg().one() - &el("b b*");
    assert_eq!(el("a*").mul(&a).unwrap(), expected);
    assert_eq!(el("a a*"), &alg().one() - &el("b b*").scale(&q(2)));
}

#[test]
fn unit_law_on_random_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let one = alg().one();
    for _ in 0..50 {
        let x = alg().random_element(&mut rng, 5, 3);
        assert_eq!(one.mul(&x).unwrap(), x);
        assert_eq!(x.mul(&one).unwrap(), x);
    }
}

#[test]
fn star_examples() {
    assert_eq!(el("a").star(), el("a*"));
    assert_eq!(el("b a").scale(&q(1)).star(), el("a* b*").scale(&q(1)));
    assert_eq!(alg().one().star(), alg().one());
}

#[test]
fn coproduct_examples() {
    let d = el("a").coproduct();
    let expected = TensorElement::pure(&[&el("a"), &el("a")])
        .unwrap()
        .checked_sub(&TensorElement::pure(&[&el("b*"), &el("b")]).unwrap().scale(&q(1)))
        .unwrap();
    assert_eq!(d, expected);
    let expected = TensorElement::pure(&[&el("b"), &el("a")])
        .unwrap()
        .checked_add(&TensorElement::pure(&[&el("a*"), &el("b")]).unwrap())
        .unwrap();
    assert_eq!(el("b").coproduct(), expected);
    assert_eq!(alg().one().coproduct(), TensorElement::unit(alg(), 2));
}

#[test]
fn counit_and_antipode_examples() {
    assert_eq!(el("a").counit(), ScalarQ::one());
    assert_eq!(el("b").counit(), ScalarQ::zero());
    assert_eq!(alg().one().counit(), ScalarQ::one());
    assert_eq!(el("a").antipode(), el("a*"));
    assert_eq!(el("b").antipode(), el("b").scale(&-q(1)));
    assert_eq!(el("b*").antipode(), el("b*").scale(&-q(-1)));
    assert_eq!(alg().one().antipode(), alg().one());
    // a*a + b*b, written out without the antipode
    let oracle = &el("a*").mul(&el("a")).unwrap() + &el("b*").mul(&el("b")).unwrap();
    assert_eq!(m_s_id(&el("a")), oracle);
    assert_eq!(oracle, alg().one());
}

#[test]
fn unitarity_relations_hold() {
    let lhs = &el("a*").mul(&el("a")).unwrap() + &el("b*").mul(&el("b")).unwrap();
    assert_eq!(lhs, alg().one());
    let lhs = &el("a").mul(&el("a*")).unwrap() + &el("b").mul(&el("b*")).unwrap().scale(&q(2));
    assert_eq!(lhs, alg().one());
}

#[test]
fn antipode_squared_is_not_involutive() {
    let s2 = el("b").antipode().antipode();
    assert_eq!(s2, el("b").scale(&q(2)));
    assert_ne!(s2, el("b"));
}

fn check_hopf_axioms(h: &HopfAlgebra, samples: usize, degree: usize, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let x = h.random_element(&mut rng, degree, 2);
        let y = h.random_element(&mut rng, degree, 2);
        let d = x.coproduct();
        assert_eq!(d.apply_coproduct(0).unwrap(), d.apply_coproduct(1).unwrap(), "coassoc {x}");
        assert_eq!(d.apply_counit(0).unwrap().into_element().unwrap(), x);
        assert_eq!(d.apply_counit(1).unwrap().into_element().unwrap(), x);
        let xy = x.mul(&y).unwrap();
        assert_eq!(xy.coproduct(), d.mul(&y.coproduct()).unwrap(), "Δ mult {x} ; {y}");
        assert_eq!(xy.counit(), &x.counit() * &y.counit());
        let eps = h.scalar(x.counit());
        assert_eq!(m_s_id(&x), eps, "m(S⊗id)Δ {x}");
        assert_eq!(m_id_s(&x), eps, "m(id⊗S)Δ {x}");
        assert_eq!(x.star().coproduct(), d.star());
        assert_eq!(x.star().antipode().star().antipode(), x);
        assert_eq!(x.star().star(), x);
        assert_eq!(xy.star(), y.star().mul(&x.star()).unwrap());
        assert_eq!(xy.antipode(), y.antipode().mul(&x.antipode()).unwrap());
    }
}

#[test]
fn su_q2_hopf_axioms() {
    check_hopf_axioms(&alg(), 200, 6, 11);
}

#[test]
fn finite_group_hopf_axioms() {
    for g in FiniteGroup::all_up_to_order_6() {
        let h = finite_group_algebra(&g).unwrap();
        check_hopf_axioms(&h, 20, 3, 5);
    }
}

#[test]
fn classical_limit_is_commutative() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let one = BigRational::from_integer(1.into());
    for _ in 0..40 {
        let x = alg().random_monomial(&mut rng, 4);
        let y = alg().random_monomial(&mut rng, 4);
        let c = x.commutator(&y).unwrap();
        assert!(c.specialize(&one).unwrap().is_empty(), "[{x}, {y}] = {c}");
    }
}

#[test]
fn finite_group_examples() {
    let z2 = finite_group_algebra(&FiniteGroup::cyclic(2)).unwrap();
    let basis = z2.finite_basis(4).unwrap();
    assert_eq!(basis.len(), 2);
    for w in &basis {
        let x = z2.word_element(w);
        assert_eq!(x.antipode(), x);
    }
    let s3 = finite_group_algebra(&FiniteGroup::symmetric3()).unwrap();
    let basis = s3.finite_basis(4).unwrap();
    assert_eq!(basis.len(), 6);
    let elems: Vec<_> = basis.iter().map(|w| s3.word_element(w)).collect();
    assert!(elems.iter().any(|x| x.antipode() != *x));
    assert!(elems.iter().all(|x| x.antipode().antipode() == *x));
    let triv = finite_group_algebra(&FiniteGroup::trivial()).unwrap();
    assert_eq!(triv.finite_basis(4).unwrap(), vec![Vec::<u8>::new()]);
    assert_eq!(triv.gen("d0").unwrap(), triv.one());
    assert!(alg().finite_basis(6).is_none());
}

#[test]
fn delta_functions_are_orthogonal_idempotents() {
    let g = FiniteGroup::symmetric3();
    let h = finite_group_algebra(&g).unwrap();
    let d: Vec<_> = g.elements().map(|x| h.gen(&delta_name(x)).unwrap()).collect();
    let mut sum = h.zero();
    for (i, di) in d.iter().enumerate() {
        sum = &sum + di;
        for (j, dj) in d.iter().enumerate() {
            let p = di.mul(dj).unwrap();
            assert_eq!(p, if i == j { di.clone() } else { h.zero() });
        }
    }
    assert_eq!(sum, h.one());
}

#[test]
fn confluence_of_standard_presentations() {
    let r = normal_form_confluence_check(&su_q2_presentation(), 200, 8, 1).unwrap();
    assert!(r.critical_pairs > 0);
    assert!(r.is_confluent(), "{:?}", r.divergences);
    let z2 = finite_group_presentation(&FiniteGroup::cyclic(2)).unwrap();
    assert!(normal_form_confluence_check(&z2, 100, 6, 1).unwrap().is_confluent());
}

#[test]
fn corrupted_presentation_diverges() {
    let r = normal_form_confluence_check(&corrupted_su_q2_presentation(), 50, 6, 1).unwrap();
    assert!(!r.is_confluent());
    assert!(r.divergences.iter().any(|d| d.word == "b a* a"));
}

#[test]
fn mismatched_algebras_are_rejected() {
    let z2 = finite_group_algebra(&FiniteGroup::cyclic(2)).unwrap();
    let err = el("a").mul(&z2.one()).unwrap_err();
    assert!(matches!(err, HopfError::AlgebraMismatch { .. }));
}

#[test]
fn json_round_trip() {
    let x = &el("a b").scale(&(&q(1) + &ScalarQ::from_ratio(1, 2))) - &el("b* ");
    let v = x.to_json();
    assert_eq!(v["algebra"], "SUq2");
    assert_eq!(alg().element_from_json(&v).unwrap(), x);
    let text = serde_json::to_string(&x).unwrap();
    let back: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(alg().element_from_json(&back).unwrap(), x);
}

#[test]
fn non_normal_input_is_normalized() {
    assert!(!su_q2_presentation().is_normal(&[BETA, ALPHA]));
    let x = alg().element(vec![(vec![BETA, ALPHA], ScalarQ::one())]);
    assert_eq!(x.terms().keys().cloned().collect::<Vec<_>>(), vec![vec![ALPHA, BETA]]);
}

#[test]
fn axiom_suite_reports_all_pass() {
    let rep = hopf_axiom_suite(&alg(), 30, 4, 2).unwrap();
    assert!(rep.passed());
    assert_eq!(rep.axioms.len(), AXIOMS.len());
    assert!(rep.axioms.iter().all(|a| a.passed == 30 && a.counterexample.is_none()));
    let h = finite_group_algebra(&FiniteGroup::symmetric3()).unwrap();
    assert!(hopf_axiom_suite(&h, 10, 3, 2).unwrap().passed());
}

#[test]
fn axiom_suite_is_deterministic() {
    let a = serde_json::to_string(&hopf_axiom_suite(&alg(), 10, 4, 5).unwrap()).unwrap();
    let b = serde_json::to_string(&hopf_axiom_suite(&alg(), 10, 4, 5).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn classical_limit_report() {
    let rep = classical_limit_check(&alg(), 50, 4, 1).unwrap();
    assert!(rep.passed(), "{rep:?}");
}
