use std::time::Instant;

use num_rational::BigRational;
use qtorsor::constructions::*;
use qtorsor::engine::{bruteforce_dimension, Trace};
use qtorsor::maps::{Certificate, Handle, Morphism, Outcome, Signature, TensorElement, TensorMap};
use qtorsor::scalars::{q_integer, Scalar};
use qtorsor::Error;

fn ctx() -> BuildContext {
    BuildContext::new(8)
}

fn nf(h: &Handle, text: &str) -> String {
    let trace = Trace::new();
    h.presentation()
        .render(&h.normal_form(&h.parse(text).unwrap(), &trace))
}

fn same(h: &Handle, a: &str, b: &str) {
    assert_eq!(nf(h, a), nf(h, b), "{a} vs {b} in {}", h.name());
}

fn image(m: &Morphism, x: &str) -> TensorElement {
    let trace = Trace::new();
    let e = m.source().parse(x).unwrap();
    m.apply(&e, &trace)
}

fn expect_image(m: &Morphism, x: &str, text: &str) {
    let target = m.target();
    let trace = Trace::new();
    let want = target.normalize(&target.parse(text).unwrap(), &trace);
    assert_eq!(
        target.render(&image(m, x)),
        target.render(&want),
        "{} on {x}",
        m.name()
    );
}

fn rational(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[test]
fn uq_sl2_relations_and_hopf_data() {
    let u = build_uq(&ctx(), &CartanDatum::a1()).unwrap();
    let h = &u.algebra;
    same(h, "e1*f1", "f1*e1 + [1/(q-q^-1)]*t1 - [1/(q-q^-1)]*t1inv");
    expect_image(&u.coproduct, "t1", "(t1)⊗(t1)");
    expect_image(&u.counit, "e1", "0");
    expect_image(&u.counit, "t1", "1");
    expect_image(&u.antipode, "e1", "-t1inv*e1");
}

#[test]
fn uhat_and_uprime_sl2() {
    let c = CartanDatum::a1();
    let uh = build_uhat(&ctx(), &c).unwrap();
    same(&uh.algebra, "eh1*f1", "f1*eh1 + t1 - t1inv");
    expect_image(&uh.antipode, "eh1", "-t1inv*eh1");
    expect_image(&uh.coproduct, "f1", "(f1)⊗(t1inv) + (1)⊗(f1)");

    let up = build_uprime(&ctx(), &c).unwrap();
    same(&up.algebra, "ep1*fp1", "[q^-2]*fp1*ep1");
    expect_image(&up.counit, "fp1", "0");
    // sign differs from the stated formula; see the antipode axiom test
    expect_image(&up.antipode, "fp1", "-t1inv*fp1");
}

#[test]
fn kashiwara_sl2_relations() {
    let b = build_kashiwara(&ctx(), &CartanDatum::a1()).unwrap();
    same(&b, "ep1*f1", "[q^2]*f1*ep1 + 1");
    same(&b, "t1*f1", "[q^-2]*f1*t1");
}

#[test]
fn kashiwara_a2_serre_relation_vanishes() {
    let b = build_kashiwara(&ctx(), &CartanDatum::a2()).unwrap();
    let two = q_integer(2, 1);
    assert_eq!(two, Scalar::q() + Scalar::q_pow(-1));
    let serre = format!("ep1*ep1*ep2 - [{two}]*ep1*ep2*ep1 + ep2*ep1*ep1");
    assert_eq!(nf(&b, &serre), "0");
    let serre_f = format!("f2*f2*f1 - [{two}]*f2*f1*f2 + f1*f2*f2");
    assert_eq!(nf(&b, &serre_f), "0");
}

#[test]
fn kashiwara_torsor_maps() {
    let c = CartanDatum::a1();
    let tor = kashiwara_torsor(&ctx(), &c).unwrap();
    expect_image(&tor.mu, "t1", "(t1)⊗(t1inv)⊗(t1)");
    expect_image(
        &tor.mu,
        "f1",
        "(1)⊗(1)⊗(f1) - (1)⊗(f1*t1)⊗(t1inv) + (f1)⊗(t1)⊗(t1inv)",
    );
    // t^-1 e' t = q^-2 e' from t e' = q^2 e' t
    expect_image(&tor.theta, "ep1", "[q^-2]*ep1");
    assert!(tor.mu.is_verified() && tor.theta.is_verified());
}

#[test]
fn kashiwara_bundle_maps() {
    let bundle = kashiwara_bundle(&ctx(), &CartanDatum::a1()).unwrap();
    expect_image(&bundle.t_left, "t1", "(t1)⊗(t1)");
    expect_image(&bundle.z_left, "t1", "(t1inv)⊗(t1)");
    expect_image(&bundle.delta, "f1", "(1)⊗(f1) - (f1*t1)⊗(t1inv)");
    expect_image(&bundle.t_left, "ep1", "(1)⊗(ep1) + (t1inv*ep1)⊗(t1inv)");
    expect_image(&bundle.gamma, "ep1", "(t1*ep1)⊗(1) - (t1)⊗(ep1)");
}

fn assert_all_verified(bundle: &GaloisBundle) {
    for (role, m) in bundle.maps() {
        assert!(
            m.is_verified(),
            "{} {role} ({}): {:?}",
            bundle.name,
            m.name(),
            m.certificate()
        );
    }
}

#[test]
fn factories_certify_for_builtin_data() {
    for c in [CartanDatum::a1(), CartanDatum::a1xa1(), CartanDatum::a2()] {
        let start = Instant::now();
        let ctx = ctx();
        for hopf in [
            build_uq(&ctx, &c).unwrap(),
            build_uhat(&ctx, &c).unwrap(),
            build_uprime(&ctx, &c).unwrap(),
        ] {
            for m in [&hopf.coproduct, &hopf.antipode, &hopf.counit, &hopf.unit] {
                assert!(
                    m.is_verified(),
                    "{} {}: {:?}",
                    c.label(),
                    m.name(),
                    m.certificate()
                );
            }
        }
        assert_all_verified(&kashiwara_bundle(&ctx, &c).unwrap());
        let (iota, _, _) = embed_uhat(&ctx, &c).unwrap();
        assert!(iota.is_verified(), "{:?}", iota.certificate());
        eprintln!("{}: {:?}", c.label(), start.elapsed());
    }
}

#[test]
fn embed_uhat_is_a_coalgebra_map() {
    let c = CartanDatum::a1();
    let (iota, uh, u) = embed_uhat(&ctx(), &c).unwrap();
    expect_image(&iota, "eh1", "[q-q^-1]*e1");
    expect_image(&iota, "t1", "t1");
    // (q - q^-1)[e, f] = t - t^-1, the image of the Û relation
    let trace = Trace::new();
    let rel = uh.algebra.parse("eh1*f1 - f1*eh1 - t1 + t1inv").unwrap();
    assert!(iota.apply(&rel, &trace).is_zero());

    let uu = Signature::new(vec![u.algebra.clone(), u.algebra.clone()]);
    let lhs = TensorMap::morphism(&uh.coproduct)
        .then(
            TensorMap::tensor(
                &[Some(iota.clone()), Some(iota.clone())],
                &uh.coproduct.target().clone(),
            )
            .unwrap(),
        )
        .unwrap();
    let rhs = TensorMap::morphism(&iota)
        .then(TensorMap::morphism(&u.coproduct))
        .unwrap();
    assert_eq!(lhs.target().len(), uu.len());
    assert_eq!(
        qtorsor::maps::compare_on_generators("Δ∘ι", &rhs, &lhs).unwrap(),
        Outcome::Equal
    );
    let eps = TensorMap::morphism(&iota)
        .then(TensorMap::morphism(&u.counit))
        .unwrap();
    assert_eq!(
        qtorsor::maps::compare_on_generators("ε∘ι", &eps, &TensorMap::morphism(&uh.counit))
            .unwrap(),
        Outcome::Equal
    );
}

#[test]
fn sridharan_presentations() {
    let (lie, c) = weyl_datum();
    let h = build_sridharan(&ctx(), &lie, &c).unwrap();
    same(&h, "x*y", "y*x + 1");

    let (lie, c) = heisenberg_datum();
    let h = build_sridharan(&ctx(), &lie, &c).unwrap();
    same(&h, "x*y", "y*x + z + 1");
    same(&h, "x*z", "z*x");
    same(&h, "y*z", "z*y");

    let u = build_sridharan(&ctx(), &lie, &CocycleSpec::zero(&lie)).unwrap();
    same(&u, "x*y", "y*x + z");
}

#[test]
fn sridharan_rejects_non_cocycles() {
    let aff = LieDatum::new(
        vec!["x".into(), "y".into(), "z".into()],
        &[("x".into(), "y".into(), vec![("x".into(), rational(1))])],
    )
    .unwrap();
    let bad = CocycleSpec::new(&aff, &[("x".into(), "z".into(), rational(1))]);
    assert!(matches!(bad, Err(Error::Cocycle { .. })));
}

#[test]
fn sridharan_bundles_certify() {
    for (lie, c) in [weyl_datum(), heisenberg_datum()] {
        let bundle = sridharan_bundle(&ctx(), &lie, &c).unwrap();
        assert_all_verified(&bundle);
        expect_image(&bundle.gamma, "x", "(x)⊗(1) + (1)⊗(x)");
        // m12 ∘ μ(x) = x⊗1 - x⊗1 + 1⊗x
        let tor = bundle.torsor.as_ref().unwrap();
        let m12 = TensorMap::multiply(tor.mu.target(), 0, &bundle.t).unwrap();
        let route = TensorMap::morphism(&tor.mu).then(m12).unwrap();
        let trace = Trace::new();
        let x = Signature::single(&bundle.t).parse("x").unwrap();
        let got = route.apply(&x, &trace);
        let want = route.target().parse("(1)⊗(x)").unwrap();
        assert_eq!(route.target().render(&got), route.target().render(&want));
    }
}

#[test]
fn classical_limit_of_kashiwara() {
    let c = CartanDatum::a1();
    let cl = classical_limit(&kashiwara_presentation(&c), None).unwrap();
    assert!(!cl.has_generator("t1"));
    let want = cl.parse_element("ep1*f1 - f1*ep1 - 1").unwrap();
    assert!(cl.relations().iter().any(|r| r.element == want));

    let a2 = CartanDatum::a2();
    let cl = classical_limit(&kashiwara_presentation(&a2), None).unwrap();
    let serre = cl
        .relations()
        .iter()
        .find(|r| r.label == "serre(ep1,ep2)")
        .unwrap();
    assert_eq!(
        serre.element.coefficient(
            &cl.parse_element("ep1*ep2*ep1")
                .unwrap()
                .terms()
                .next()
                .unwrap()
                .0[..]
        ),
        Scalar::from_int(-2)
    );
    let h = BuildContext::new(6).handle(&cl).unwrap();
    for i in 1..=2 {
        for j in 1..=2 {
            let delta = if i == j { " - 1" } else { "" };
            assert_eq!(nf(&h, &format!("ep{i}*f{j} - f{j}*ep{i}{delta}")), "0");
        }
    }
}

#[test]
fn classical_limit_pole_names_the_relation() {
    let err = classical_limit(&uq_presentation(&CartanDatum::a1()), None).unwrap_err();
    match err {
        Error::Pole { context } => assert_eq!(context, "[e1,f1]"),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn classical_limit_with_cartan_block() {
    let c = CartanDatum::a1();
    let cl = classical_limit(&kashiwara_presentation(&c), Some(&c)).unwrap();
    let h = BuildContext::new(6).handle(&cl).unwrap();
    same(&h, "h1*ep1 - ep1*h1", "2*ep1");
    same(&h, "h1*f1 - f1*h1", "-2*f1");
}

fn pairs(v: &[(String, String)]) -> Vec<(&str, &str)> {
    v.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect()
}

#[test]
fn classical_limits_of_uprime_and_uhat_coincide() {
    for c in [CartanDatum::a1(), CartanDatum::a2()] {
        let owned_p: Vec<(String, String)> = (1..=c.rank())
            .flat_map(|i| {
                [
                    (format!("ep{i}"), format!("e{i}")),
                    (format!("fp{i}"), format!("f{i}")),
                ]
            })
            .collect();
        let owned_h: Vec<(String, String)> = (1..=c.rank())
            .map(|i| (format!("eh{i}"), format!("e{i}")))
            .collect();
        let (renames_p, renames_h) = (pairs(&owned_p), pairs(&owned_h));
        let up = rename_generators(
            &classical_limit(&uprime_presentation(&c), None).unwrap(),
            &renames_p,
        )
        .unwrap();
        let uh = rename_generators(
            &classical_limit(&uhat_presentation(&c), None).unwrap(),
            &renames_h,
        )
        .unwrap();
        let ctx = BuildContext::new(6);
        assert_eq!(
            mutually_reduce(&ctx, &up, &uh).unwrap(),
            Outcome::Equal,
            "{}",
            c.label()
        );
        // the quantum versions differ
        let qp = rename_generators(&uprime_presentation(&c), &renames_p).unwrap();
        let qh = rename_generators(&uhat_presentation(&c), &renames_h).unwrap();
        assert!(matches!(
            mutually_reduce(&ctx, &qp, &qh).unwrap(),
            Outcome::Differ(_)
        ));
    }
}

#[test]
fn sridharan_match_for_classical_kashiwara() {
    let ctx = BuildContext::new(6);
    for c in [CartanDatum::a1(), CartanDatum::a1xa1(), CartanDatum::a2()] {
        let cl = classical_limit(&kashiwara_presentation(&c), None).unwrap();
        let (lie, cocycle) = nilpotent_pair_datum(&c).unwrap();
        assert_eq!(
            check_sridharan_match(&ctx, &cl, &lie, &cocycle).unwrap(),
            Outcome::Equal,
            "{}",
            c.label()
        );
    }
}

#[test]
fn sridharan_match_detects_wrong_cocycles() {
    let ctx = BuildContext::new(6);
    let c = CartanDatum::a1();
    let cl = classical_limit(&kashiwara_presentation(&c), None).unwrap();
    let (lie, _) = nilpotent_pair_datum(&c).unwrap();
    let doubled = CocycleSpec::new(&lie, &[("ep1".into(), "f1".into(), rational(2))]).unwrap();
    assert!(matches!(
        check_sridharan_match(&ctx, &cl, &lie, &doubled).unwrap(),
        Outcome::Differ(_)
    ));
    let zero = CocycleSpec::zero(&lie);
    match check_sridharan_match(&ctx, &cl, &lie, &zero).unwrap() {
        Outcome::Differ(w) => assert!(w.label.contains("ep1*f1"), "{w:?}"),
        other => panic!("expected a witness, got {other:?}"),
    }
}

#[test]
fn nilpotent_pair_rejects_other_types() {
    let b2 = CartanDatum::new(vec![vec![2, -2], vec![-1, 2]], vec![1, 2]).unwrap();
    assert!(nilpotent_pair_datum(&b2).is_err());
}

#[test]
fn builtin_dimensions_match_the_oracle() {
    let ctx = BuildContext::new(8);
    let cases = [(CartanDatum::a1(), 4), (CartanDatum::a2(), 3)];
    for (c, top) in cases {
        for p in [
            uq_presentation(&c),
            uhat_presentation(&c),
            uprime_presentation(&c),
            kashiwara_presentation(&c),
        ] {
            let h = ctx.handle(&p).unwrap();
            for d in 0..=top {
                assert_eq!(
                    h.system().graded_dimension(d).unwrap(),
                    bruteforce_dimension(&p, d).unwrap(),
                    "{} degree {d} ({})",
                    p.name(),
                    c.label()
                );
            }
        }
    }
}

#[test]
fn certificates_are_verified_or_explained() {
    // a bound too small for the A2 Serre relations leaves them unproven
    let ctx = BuildContext::new(2);
    let torsor = kashiwara_torsor(&ctx, &CartanDatum::a2()).unwrap();
    assert!(matches!(
        torsor.mu.certificate(),
        Certificate::Inconclusive(_)
    ));
}
