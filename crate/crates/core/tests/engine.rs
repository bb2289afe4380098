use proptest::prelude::*;
use qtorsor::engine::{
    bruteforce_dimension, complete, orient, Budget, Certainty, Element, Presentation, Status, Word,
};
use qtorsor::scalars::{q_integer, Scalar};
use qtorsor::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn uq_sl2() -> Presentation {
    let mut p = Presentation::new("U_q(sl2)");
    for g in ["e", "f", "t", "tinv"] {
        p.add_generator(g).unwrap();
    }
    p.relation("t_tinv", "t*tinv - 1").unwrap();
    p.relation("tinv_t", "tinv*t - 1").unwrap();
    p.relation("t_e", "t*e - [q^2]*e*t").unwrap();
    p.relation("tinv_e", "tinv*e - [q^-2]*e*tinv").unwrap();
    p.relation("t_f", "t*f - [q^-2]*f*t").unwrap();
    p.relation("tinv_f", "tinv*f - [q^2]*f*tinv").unwrap();
    p.relation("e_f", "e*f - f*e - [1/(q-q^-1)]*t + [1/(q-q^-1)]*tinv")
        .unwrap();
    p
}

fn bq_sl2() -> Presentation {
    let mut p = Presentation::new("B_q(sl2)");
    for g in ["ep", "f", "t", "tinv"] {
        p.add_generator(g).unwrap();
    }
    p.relation("t_tinv", "t*tinv - 1").unwrap();
    p.relation("tinv_t", "tinv*t - 1").unwrap();
    p.relation("t_ep", "t*ep - [q^2]*ep*t").unwrap();
    p.relation("tinv_ep", "tinv*ep - [q^-2]*ep*tinv").unwrap();
    p.relation("t_f", "t*f - [q^-2]*f*t").unwrap();
    p.relation("tinv_f", "tinv*f - [q^2]*f*tinv").unwrap();
    p.relation("ep_f", "ep*f - [q^2]*f*ep - 1").unwrap();
    p
}

fn free(names: &[&str]) -> Presentation {
    let mut p = Presentation::new("free");
    for g in names {
        p.add_generator(g).unwrap();
    }
    p
}

#[test]
fn orient_examples() {
    let p = uq_sl2();
    let rules = orient(&p).unwrap();
    let ef = &rules[6];
    assert_eq!(p.render_word(&ef.lhs), "e*f");
    let expected = p
        .parse_element("f*e + [1/(q-q^-1)]*t - [1/(q-q^-1)]*tinv")
        .unwrap();
    assert_eq!(ef.rhs, expected);
    assert_eq!(p.render_word(&rules[0].lhs), "t*tinv");
    assert_eq!(rules[0].rhs, Element::one());

    let mut lin = free(&["x", "y"]);
    lin.relation("lin", "x + y").unwrap();
    let r = orient(&lin).unwrap();
    assert_eq!(lin.render_word(&r[0].lhs), "x");
    assert_eq!(r[0].rhs, lin.parse_element("-y").unwrap());
}

#[test]
fn orient_rejects_tied_leading_words() {
    let mut p = free(&["x", "y"]);
    p.set_precedence(vec![1, 1]).unwrap();
    p.relation("tie", "x - y").unwrap();
    match orient(&p) {
        Err(Error::Orientation { relation, .. }) => assert_eq!(relation, "tie"),
        other => panic!("expected orientation error, got {other:?}"),
    }
}

#[test]
fn normal_form_examples() {
    let p = bq_sl2();
    let s = complete(&p, 6, Budget::default()).unwrap();
    let e = |t: &str| p.parse_element(t).unwrap();
    assert_eq!(s.normal_form(&e("ep*f")), e("[q^2]*f*ep + 1"));
    assert_eq!(s.normal_form(&e("t*tinv*t")), e("t"));
    assert_eq!(s.normal_form(&e("tinv*ep*t")), e("[q^-2]*ep"));
}

#[test]
fn completion_examples() {
    let p = uq_sl2();
    let s = complete(&p, 6, Budget::default()).unwrap();
    assert_eq!(s.status(), Status::ConfluentUpToBound);
    assert_eq!(s.rules().len(), p.relations().len());

    let mut c = free(&["x", "y"]);
    c.relation("comm", "x*y - y*x").unwrap();
    let s = complete(&c, 4, Budget::default()).unwrap();
    assert_eq!(s.status(), Status::ConfluentUpToBound);
    assert_eq!(s.rules().len(), 1);
}

#[test]
fn completion_saturates_when_overlaps_exceed_bound() {
    // x y x = y x y has an infinite deglex completion
    let mut p = free(&["x", "y"]);
    p.relation("braid", "x*y*x - y*x*y").unwrap();
    let s = complete(&p, 5, Budget::default()).unwrap();
    assert_eq!(s.status(), Status::SaturatedAtBound);
    let cert = s.certified_degree().unwrap();
    assert!(cert >= 5);
    assert!(s.graded_dimension(cert + 1).is_err());
    for d in 0..=4 {
        assert_eq!(
            s.graded_dimension(d).unwrap(),
            bruteforce_dimension(&p, d).unwrap()
        );
    }
}

#[test]
fn budget_is_enforced() {
    let mut p = free(&["x", "y"]);
    p.relation("braid", "x*y*x - y*x*y").unwrap();
    let budget = Budget {
        max_rules: Some(1),
        max_millis: None,
    };
    assert!(matches!(
        complete(&p, 10, budget),
        Err(Error::BudgetExceeded(_))
    ));
}

#[test]
fn is_zero_examples() {
    let p = bq_sl2();
    let s = complete(&p, 6, Budget::default()).unwrap();
    let rel = p.parse_element("ep*f - [q^2]*f*ep - 1").unwrap();
    assert_eq!(s.is_zero(&rel), (true, Certainty::Certain));
    assert_eq!(s.is_zero(&Element::one()), (false, Certainty::Certain));

    let f = free(&["x"]);
    let sf = complete(&f, 3, Budget::default()).unwrap();
    let x = f.gen("x").unwrap();
    let diff = x
        .scale(&q_integer(2, 1))
        .sub(&x.scale(&"q+q^-1".parse::<Scalar>().unwrap()));
    assert_eq!(sf.is_zero(&diff), (true, Certainty::Certain));
}

#[test]
fn dimension_examples() {
    let p = uq_sl2();
    assert_eq!(bruteforce_dimension(&p, 2).unwrap(), 14);
    let s = complete(&p, 6, Budget::default()).unwrap();
    assert_eq!(s.graded_dimension(2).unwrap(), 14);
    assert_eq!(s.graded_dimension(0).unwrap(), 1);

    let f = free(&["x", "y"]);
    assert_eq!(bruteforce_dimension(&f, 2).unwrap(), 7);

    let b = bq_sl2();
    let sb = complete(&b, 6, Budget::default()).unwrap();
    // the unit plus ep, f, t, tinv
    assert_eq!(sb.graded_dimension(1).unwrap(), 5);
    for d in 0..=4 {
        assert_eq!(
            sb.graded_dimension(d).unwrap(),
            bruteforce_dimension(&b, d).unwrap()
        );
        assert_eq!(
            s.graded_dimension(d).unwrap(),
            bruteforce_dimension(&p, d).unwrap()
        );
    }
}

fn random_element(p: &Presentation, rng: &mut ChaCha8Rng, max_len: usize) -> Element {
    let n = p.generators().len() as u16;
    let mut e = Element::zero();
    for _ in 0..rng.gen_range(1..4) {
        let len = rng.gen_range(0..=max_len);
        let w: Word = (0..len).map(|_| rng.gen_range(0..n)).collect();
        let c = Scalar::from_int(rng.gen_range(-3..=3)) * Scalar::q_pow(rng.gen_range(-2..=2));
        e.add_term(w, c);
    }
    e
}

#[test]
fn random_strategies_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for p in [uq_sl2(), bq_sl2()] {
        let s = complete(&p, 8, Budget::default()).unwrap();
        for _ in 0..200 {
            let e = random_element(&p, &mut rng, 5);
            let a = s.reduce_randomly(&e, &mut rng);
            let b = s.reduce_randomly(&e, &mut rng);
            assert_eq!(a, b);
            assert_eq!(a, s.normal_form(&e));
        }
    }
}

fn arb_element() -> impl Strategy<Value = Element> {
    let term = (prop::collection::vec(0u16..3, 0..3), -3i64..=3, -1i64..=1)
        .prop_map(|(w, c, k)| (Word::from_vec(w), Scalar::from_int(c) * Scalar::q_pow(k)));
    prop::collection::vec(term, 0..4).prop_map(|ts| ts.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn element_ring_axioms(a in arb_element(), b in arb_element(), c in arb_element()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&Element::one()), a.clone());
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn normal_form_respects_products(a in arb_element(), b in arb_element()) {
        let p = uq_sl2();
        let s = complete(&p, 8, Budget::default()).unwrap();
        let lhs = s.normal_form(&a.mul(&b));
        let rhs = s.normal_form(&s.normal_form(&a).mul(&s.normal_form(&b)));
        prop_assert_eq!(lhs, rhs);
    }
}
