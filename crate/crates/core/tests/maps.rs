use std::sync::Arc;

use qtorsor::constructions::*;
use qtorsor::engine::{bruteforce_dimension, Element, Presentation, Trace};
use qtorsor::maps::*;
use qtorsor::scalars::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ctx() -> BuildContext {
    BuildContext::new(8)
}

fn random_element<R: Rng>(h: &Handle, rng: &mut R) -> Element {
    let p = h.presentation();
    let n = p.generators().len();
    let mut e = Element::zero();
    for _ in 0..rng.gen_range(1..4) {
        let len = rng.gen_range(0..3);
        let w = (0..len).map(|_| rng.gen_range(0..n) as u16).collect();
        let c = Scalar::from_int(rng.gen_range(-3..4)) * Scalar::q_pow(rng.gen_range(-2..3));
        e.add_term(w, c);
    }
    h.normal_form(&e, &Trace::new())
}

fn random_tensor<R: Rng>(sig: &Signature, rng: &mut R) -> TensorElement {
    let trace = Trace::new();
    let mut t = TensorElement::zero();
    for _ in 0..rng.gen_range(1..3) {
        let legs: Vec<Element> = sig.legs().iter().map(|h| random_element(h, rng)).collect();
        t = t.add(&sig.pure(&legs, &trace).unwrap());
    }
    t
}

fn apply_text(m: &MorphismRef, x: &str) -> String {
    let trace = Trace::new();
    let e = m.source().parse(x).unwrap();
    m.target().render(&m.apply(&e, &trace))
}

fn normalized(sig: &Signature, text: &str) -> String {
    sig.render(&sig.normalize(&sig.parse(text).unwrap(), &Trace::new()))
}

#[test]
fn opposite_multiplication_reverses_products() {
    let b = build_kashiwara(&ctx(), &CartanDatum::a1()).unwrap();
    let bop = b.opposite();
    assert_eq!(bop.opposite(), b);
    assert!(bop.same_algebra(&b) && bop != b);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let trace = Trace::new();
    for _ in 0..100 {
        let x = random_element(&b, &mut rng);
        let y = random_element(&b, &mut rng);
        assert_eq!(bop.mul(&x, &y, &trace), b.mul(&y, &x, &trace));
    }
}

#[test]
fn legwise_multiplication_is_associative() {
    let b = build_kashiwara(&ctx(), &CartanDatum::a1()).unwrap();
    let sig = Signature::new(vec![b.clone(), b.opposite()]);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let trace = Trace::new();
    for _ in 0..40 {
        let (x, y, z) = (
            random_tensor(&sig, &mut rng),
            random_tensor(&sig, &mut rng),
            random_tensor(&sig, &mut rng),
        );
        let left = sig.mul(&sig.mul(&x, &y, &trace), &z, &trace);
        let right = sig.mul(&x, &sig.mul(&y, &z, &trace), &trace);
        assert_eq!(left, right);
    }
    let unit = sig.unit();
    let x = random_tensor(&sig, &mut rng);
    assert_eq!(sig.mul(&unit, &x, &trace), x);
}

#[test]
fn gamma_on_uprime_is_verified() {
    let bundle = kashiwara_bundle(&ctx(), &CartanDatum::a1()).unwrap();
    assert!(bundle.gamma.is_verified());
    let id = Morphism::identity(&bundle.t);
    assert!(id.is_verified());
}

#[test]
fn collapsing_the_torus_fails_with_a_witness() {
    let b = build_kashiwara(&ctx(), &CartanDatum::a1()).unwrap();
    let sig = Signature::single(&b);
    let images: Vec<(&str, TensorElement)> =
        [("ep1", "ep1"), ("f1", "f1"), ("t1", "1"), ("t1inv", "1")]
            .iter()
            .map(|(g, x)| (*g, sig.parse(x).unwrap()))
            .collect();
    let m = define_morphism("collapse", &b, &sig, &images).unwrap();
    match m.certificate() {
        Certificate::Failed(w) => {
            assert!(w.label.contains("t1*ep1"), "{w:?}");
            // ep - q^2 ep
            assert_eq!(w.normal_form, normalized(&sig, "[1-q^2]*ep1"));
            // degree of the failing relation
            assert_eq!(w.degree, 2);
        }
        other => panic!("expected failure, got {other:?}"),
    }
}

#[test]
fn missing_or_misplaced_images_are_rejected() {
    let b = build_kashiwara(&ctx(), &CartanDatum::a1()).unwrap();
    let sig = Signature::single(&b);
    let one = sig.parse("1").unwrap();
    assert!(define_morphism("short", &b, &sig, &[("ep1", one.clone())]).is_err());
    let two = Signature::new(vec![b.clone(), b.clone()]);
    let wrong: Vec<(&str, TensorElement)> = ["ep1", "f1", "t1", "t1inv"]
        .iter()
        .map(|g| (*g, one.clone()))
        .collect();
    assert!(define_morphism("arity", &b, &two, &wrong).is_err());
}

#[test]
fn composition() {
    let c = CartanDatum::a1();
    let tor = kashiwara_torsor(&ctx(), &c).unwrap();
    let id = Morphism::identity(&tor.algebra);
    assert!(equal_morphisms(&compose(&id, &tor.theta).unwrap(), &tor.theta).unwrap());
    let twice = Arc::new(compose(&tor.theta, &tor.theta).unwrap());
    assert!(twice.is_verified());
    assert_eq!(
        apply_text(&twice, "ep1"),
        normalized(twice.target(), "[q^-4]*ep1")
    );

    let up = build_uprime(&ctx(), &c).unwrap();
    let eps_op = Arc::new(up.counit.opposite());
    let eps_s = compose(&eps_op, &up.antipode).unwrap();
    assert!(eps_s.is_verified());
    assert_eq!(
        compare_on_generators(
            "ε′∘S′",
            &TensorMap::morphism(&Arc::new(eps_s)),
            &TensorMap::morphism(&up.counit)
        )
        .unwrap(),
        Outcome::Equal
    );
    assert!(compose(&tor.theta, &up.antipode).is_err());
}

#[test]
fn leg_lifts() {
    let bundle = kashiwara_bundle(&ctx(), &CartanDatum::a1()).unwrap();
    let b = bundle.t.clone();
    let trace = Trace::new();

    let ambient = Signature::new(vec![bundle.a.algebra.clone(), b.clone()]);
    let lift = TensorMap::lift(&bundle.gamma, 0, &ambient).unwrap();
    let x = ambient.parse("(t1)⊗(t1)").unwrap();
    assert_eq!(
        lift.target().render(&lift.apply(&x, &trace)),
        normalized(lift.target(), "(t1)⊗(t1inv)⊗(t1)")
    );

    let ambient = Signature::new(vec![b.clone(), bundle.b.algebra.clone()]);
    let lift = TensorMap::lift(&bundle.delta, 1, &ambient).unwrap();
    let x = ambient.parse("(1)⊗(t1)").unwrap();
    assert_eq!(
        lift.target().render(&lift.apply(&x, &trace)),
        normalized(lift.target(), "(1)⊗(t1inv)⊗(t1)")
    );

    let id = Arc::new(Morphism::identity(&b));
    let sig = Signature::new(vec![b.clone(), b.opposite()]);
    let lifted = TensorMap::lift(&id, 0, &sig).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let x = random_tensor(&sig, &mut rng);
    assert_eq!(lifted.apply(&x, &trace), x);

    assert!(TensorMap::lift(&bundle.gamma, 1, &sig).is_err());
}

#[test]
fn multiplying_legs_of_mu() {
    let tor = kashiwara_torsor(&ctx(), &CartanDatum::a1()).unwrap();
    let b = tor.algebra.clone();
    let target = tor.mu.target().clone();
    let trace = Trace::new();
    let x = Signature::single(&b).parse("ep1").unwrap();
    let mu_x = TensorMap::morphism(&tor.mu).apply(&x, &trace);

    let m12 = TensorMap::multiply(&target, 0, &b).unwrap();
    assert_eq!(
        m12.target().render(&m12.apply(&mu_x, &trace)),
        normalized(m12.target(), "(1)⊗(ep1)")
    );
    let m23 = TensorMap::multiply(&target, 1, &b).unwrap();
    assert_eq!(
        m23.target().render(&m23.apply(&mu_x, &trace)),
        normalized(m23.target(), "(ep1)⊗(1)")
    );

    let simple = Signature::new(vec![b.clone(), b.clone()]);
    let m = TensorMap::multiply(&simple, 0, &b).unwrap();
    for text in ["(f1)⊗(1)", "(1)⊗(f1)"] {
        let got = m.apply(&simple.parse(text).unwrap(), &trace);
        assert_eq!(m.target().render(&got), "(f1)");
    }
    let u = build_uq(&ctx(), &CartanDatum::a1()).unwrap();
    let mixed = Signature::new(vec![b.clone(), u.algebra.clone()]);
    assert!(TensorMap::multiply(&mixed, 0, &b).is_err());
}

#[test]
fn flips_and_block_flips() {
    let b = build_kashiwara(&ctx(), &CartanDatum::a1()).unwrap();
    let sig = Signature::new(vec![b.clone(), b.opposite()]);
    let trace = Trace::new();
    let flip = TensorMap::flip(&sig, 0, 1).unwrap();
    let x = sig.parse("(ep1)⊗(f1)").unwrap();
    assert_eq!(
        flip.target().render(&flip.apply(&x, &trace)),
        normalized(flip.target(), "(f1)⊗(ep1)")
    );
    let back = TensorMap::flip(flip.target(), 0, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let r = random_tensor(&sig, &mut rng);
    assert_eq!(flip.clone().then(back).unwrap().apply(&r, &trace), r);

    let four = Signature::new(vec![b.clone(), b.opposite(), b.clone(), b.opposite()]);
    let tau = TensorMap::swap_blocks(&four, 1).unwrap();
    let x = four
        .parse("(ep1)⊗(f1)⊗(t1)⊗(1) + [q]*(1)⊗(t1)⊗(f1)⊗(ep1)")
        .unwrap();
    let want = tau
        .target()
        .parse("(f1)⊗(t1)⊗(1)⊗(ep1) + [q]*(t1)⊗(f1)⊗(ep1)⊗(1)")
        .unwrap();
    assert_eq!(tau.apply(&x, &trace), want);
    let legs: Vec<String> = tau.target().legs().iter().map(Handle::name).collect();
    assert_eq!(legs, ["B_q^op", "B_q", "B_q^op", "B_q"]);
}

#[test]
fn coaction_square_commutes() {
    // (γ ⊗ B) ∘ t_left = (B ⊗ δ) ∘ t_right
    let bundle = kashiwara_bundle(&ctx(), &CartanDatum::a1()).unwrap();
    let lhs = TensorMap::morphism(&bundle.t_left)
        .then(TensorMap::lift(&bundle.gamma, 0, bundle.t_left.target()).unwrap())
        .unwrap();
    let rhs = TensorMap::morphism(&bundle.t_right)
        .then(TensorMap::lift(&bundle.delta, 1, bundle.t_right.target()).unwrap())
        .unwrap();
    assert_eq!(
        compare_on_generators("D1", &lhs, &rhs).unwrap(),
        Outcome::Equal
    );
}

#[test]
fn perturbed_mu_differs() {
    let tor = kashiwara_torsor(&ctx(), &CartanDatum::a1()).unwrap();
    let target = tor.mu.target().clone();
    let images: Vec<(String, TensorElement)> = tor
        .algebra
        .presentation()
        .generators()
        .iter()
        .map(|g| {
            let img = tor.mu.image(&g.name).unwrap().clone();
            if g.name == "ep1" {
                let flipped = target
                    .parse("(1)⊗(1)⊗(ep1)")
                    .unwrap()
                    .scale(&Scalar::from_int(-2));
                (g.name.clone(), img.add(&flipped))
            } else {
                (g.name.clone(), img)
            }
        })
        .collect();
    let refs: Vec<(&str, TensorElement)> = images
        .iter()
        .map(|(g, t)| (g.as_str(), t.clone()))
        .collect();
    let perturbed = Arc::new(unchecked_morphism("μ'", &tor.algebra, &target, &refs).unwrap());
    assert!(!equal_morphisms(&tor.mu, &perturbed).unwrap());
    match compare_on_generators(
        "μ",
        &TensorMap::morphism(&tor.mu),
        &TensorMap::morphism(&perturbed),
    )
    .unwrap()
    {
        Outcome::Differ(w) => assert!(w.label.ends_with("on ep1"), "{w:?}"),
        other => panic!("expected a witness, got {other:?}"),
    }
}

#[test]
fn equality_is_an_equivalence_on_sampled_morphisms() {
    let tor = kashiwara_torsor(&ctx(), &CartanDatum::a1()).unwrap();
    let id = Arc::new(Morphism::identity(&tor.algebra));
    let theta2 = Arc::new(compose(&tor.theta, &tor.theta).unwrap());
    let theta3 = Arc::new(compose(&tor.theta, &theta2).unwrap());
    let pool = [id.clone(), tor.theta.clone(), theta2, theta3, id.clone()];
    let eq = |a: &MorphismRef, b: &MorphismRef| equal_morphisms(a, b).unwrap();
    for a in &pool {
        assert!(eq(a, a));
        for b in &pool {
            assert_eq!(eq(a, b), eq(b, a));
            for c in &pool {
                if eq(a, b) && eq(b, c) {
                    assert!(eq(a, c));
                }
            }
        }
    }
    assert!(eq(&pool[0], &pool[4]));
    assert!(!eq(&pool[0], &pool[1]));
}

/// Image of each relation computed in the free algebra on the target
/// letters, without any rewriting; opposite sources reverse the product.
fn raw_relation_images(m: &Morphism) -> Vec<(String, Element)> {
    let source = m.source();
    let opposite = source.orientation() == Orientation::Opposite;
    let images: Vec<Element> = m
        .images()
        .iter()
        .map(|t| {
            let mut e = Element::zero();
            for (legs, c) in t.terms() {
                e.add_term(legs[0].clone(), c.clone());
            }
            e
        })
        .collect();
    let target_opposite = m.target().leg(0).orientation() == Orientation::Opposite;
    source
        .presentation()
        .relations()
        .iter()
        .map(|rel| {
            let mut out = Element::zero();
            for (w, c) in rel.element.terms() {
                let mut letters: Vec<u16> = w.to_vec();
                if opposite != target_opposite {
                    letters.reverse();
                }
                let mut prod = Element::scalar(c.clone());
                for l in letters {
                    prod = prod.mul(&images[l as usize]);
                }
                out = out.add(&prod);
            }
            (rel.label.clone(), out)
        })
        .collect()
}

/// `x` vanishes in the algebra when adding it as a relation leaves the
/// truncated dimension unchanged.
fn oracle_vanishes(p: &Presentation, x: &Element, degree: u32) -> bool {
    if x.is_zero() {
        return true;
    }
    let mut probe = p.clone();
    probe.add_relation("probe", x.clone()).unwrap();
    bruteforce_dimension(&probe, degree).unwrap() == bruteforce_dimension(p, degree).unwrap()
}

#[test]
fn certificates_agree_with_the_oracle() {
    let c = CartanDatum::a1();
    let ctx = ctx();
    let u = build_uq(&ctx, &c).unwrap();
    let uh = build_uhat(&ctx, &c).unwrap();
    let up = build_uprime(&ctx, &c).unwrap();
    let (iota, _, _) = embed_uhat(&ctx, &c).unwrap();
    let maps = [
        u.antipode.clone(),
        uh.antipode.clone(),
        up.antipode.clone(),
        iota,
    ];
    for m in &maps {
        assert!(m.is_verified());
        let target = m.target().leg(0).presentation().clone();
        for (label, x) in raw_relation_images(m) {
            let degree = x.max_len() as u32;
            assert!(degree <= 4, "{label}: degree {degree}");
            assert!(
                oracle_vanishes(&target, &x, degree.max(1)),
                "{} {label}",
                m.name()
            );
        }
    }
    // and the oracle sees a genuinely nonzero image
    let b = build_kashiwara(&ctx, &c).unwrap();
    let x = b.presentation().parse_element("ep1 - [q^2]*ep1").unwrap();
    assert!(!oracle_vanishes(b.presentation(), &x, 1));
}
