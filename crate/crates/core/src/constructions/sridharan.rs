use num_rational::BigRational;

use super::bundle::{GaloisBundle, TorsorData};
use super::cartan::CartanDatum;
use super::context::BuildContext;
use super::lie::{Bracket, CocycleSpec, LieDatum};
use super::quantum::{counit_from, morphism_from_text, unit_of, HopfData};
use crate::engine::{Element, Presentation};
use crate::error::{Error, Result};
use crate::maps::{Handle, MorphismRef, Signature};
use crate::scalars::Scalar;

/// `U_c(g)`: relations `x y - y x - [x, y] - c(x, y)` for basis pairs
/// `x < y`; earlier basis elements rank higher.
pub fn sridharan_presentation(name: &str, lie: &LieDatum, c: &CocycleSpec) -> Result<Presentation> {
    c.check(lie)?;
    let mut p = Presentation::new(name);
    for b in lie.basis() {
        p.add_generator(b)?;
    }
    let n = lie.dim();
    for i in 0..n {
        for j in (i + 1)..n {
            let (x, y) = (p.gen(&lie.basis()[i])?, p.gen(&lie.basis()[j])?);
            let mut r = x.mul(&y).sub(&y.mul(&x));
            for (k, coef) in lie.bracket(i, j) {
                let z = p.gen(&lie.basis()[*k])?;
                r = r.sub(&z.scale(&Scalar::from_rational(coef)));
            }
            r = r.sub(&Element::scalar(Scalar::from_rational(c.value(i, j))));
            p.add_relation(format!("[{},{}]", lie.basis()[i], lie.basis()[j]), r)?;
        }
    }
    Ok(p)
}

pub fn build_sridharan(ctx: &BuildContext, lie: &LieDatum, c: &CocycleSpec) -> Result<Handle> {
    ctx.handle(&sridharan_presentation("U_c", lie, c)?)
}

/// `x ↦ x ⊗ 1 + 1 ⊗ x` on every basis element.
fn primitive(
    name: &str,
    source: &Handle,
    target: &Signature,
    lie: &LieDatum,
) -> Result<MorphismRef> {
    let images: Vec<(String, String)> = lie
        .basis()
        .iter()
        .map(|x| (x.clone(), format!("({x})⊗(1) + (1)⊗({x})")))
        .collect();
    morphism_from_text(name, source, target, &images)
}

fn negation(
    name: &str,
    source: &Handle,
    target: &Signature,
    lie: &LieDatum,
) -> Result<MorphismRef> {
    let images: Vec<(String, String)> = lie
        .basis()
        .iter()
        .map(|x| (x.clone(), format!("-{x}")))
        .collect();
    morphism_from_text(name, source, target, &images)
}

/// Enveloping algebra `U(g)` with its primitive Hopf structure.
pub fn build_enveloping(ctx: &BuildContext, lie: &LieDatum) -> Result<HopfData> {
    let h = ctx.handle(&sridharan_presentation(
        "U(g)",
        lie,
        &CocycleSpec::zero(lie),
    )?)?;
    Ok(HopfData {
        coproduct: primitive(
            "Δ_U(g)",
            &h,
            &Signature::new(vec![h.clone(), h.clone()]),
            lie,
        )?,
        antipode: negation("S_U(g)", &h, &Signature::single(&h.opposite()), lie)?,
        counit: counit_from("ε_U(g)", &h, |_| false)?,
        unit: unit_of(&h)?,
        algebra: h,
    })
}

/// The system `(U(g), U(g), U_c, U_{-c})` with primitive coactions,
/// `S = -Id`, and the torsor `μ(x) = x⊗1⊗1 - 1⊗x⊗1 + 1⊗1⊗x`, `θ = Id`.
pub fn sridharan_bundle(
    ctx: &BuildContext,
    lie: &LieDatum,
    c: &CocycleSpec,
) -> Result<GaloisBundle> {
    let env = build_enveloping(ctx, lie)?;
    let a = env.algebra.clone();
    let t = build_sridharan(ctx, lie, c)?;
    let z = ctx.handle(&sridharan_presentation("U_-c", lie, &c.neg())?)?;
    let sig = |legs: &[&Handle]| Signature::new(legs.iter().map(|h| (*h).clone()).collect());

    let mu_images: Vec<(String, String)> = lie
        .basis()
        .iter()
        .map(|x| {
            (
                x.clone(),
                format!("({x})⊗(1)⊗(1) - (1)⊗({x})⊗(1) + (1)⊗(1)⊗({x})"),
            )
        })
        .collect();
    let mu = morphism_from_text("μ", &t, &sig(&[&t, &t.opposite(), &t]), &mu_images)?;
    let ident: Vec<(String, String)> = lie.basis().iter().map(|x| (x.clone(), x.clone())).collect();
    let theta = morphism_from_text("θ", &t, &Signature::single(&t), &ident)?;

    Ok(GaloisBundle {
        name: "sridharan".into(),
        t_left: primitive("α_T", &t, &sig(&[&a, &t]), lie)?,
        t_right: primitive("β_T", &t, &sig(&[&t, &a]), lie)?,
        z_left: primitive("α_Z", &z, &sig(&[&a, &z]), lie)?,
        z_right: primitive("β_Z", &z, &sig(&[&z, &a]), lie)?,
        gamma: primitive("γ", &a, &sig(&[&t, &z]), lie)?,
        delta: primitive("δ", &a, &sig(&[&z, &t]), lie)?,
        s_t: negation("S_T", &t, &Signature::single(&z.opposite()), lie)?,
        s_z: negation("S_Z", &z, &Signature::single(&t.opposite()), lie)?,
        torsor: Some(TorsorData {
            algebra: t.clone(),
            mu,
            theta,
        }),
        a: env.clone(),
        b: env,
        t,
        z,
    })
}

/// `a = n+ ⊕ n-` for a Cartan datum of rank at most 2, with the cocycle
/// `c(ep_i, f_j) = δ_ij` and zero on every other basis pair.
///
/// Basis elements are named after the letters of the Kashiwara algebra;
/// for A2 the brackets `[ep1, ep2] = ep12` and `[f1, f2] = f12` add one
/// more basis element to each half.
pub fn nilpotent_pair_datum(c: &CartanDatum) -> Result<(LieDatum, CocycleSpec)> {
    let one = || BigRational::from_integer(1.into());
    let s = |x: &str| x.to_string();
    let (basis, brackets): (Vec<String>, Vec<Bracket>) = match c.rank() {
        1 => (vec![s("ep1"), s("f1")], vec![]),
        2 if c.a(0, 1) == 0 && c.a(1, 0) == 0 => {
            (vec![s("ep1"), s("ep2"), s("f1"), s("f2")], vec![])
        }
        2 if c.a(0, 1) == -1 && c.a(1, 0) == -1 => (
            vec![s("ep1"), s("ep2"), s("ep12"), s("f1"), s("f2"), s("f12")],
            vec![
                (s("ep1"), s("ep2"), vec![(s("ep12"), one())]),
                (s("f1"), s("f2"), vec![(s("f12"), one())]),
            ],
        ),
        _ => {
            return Err(Error::Validation(format!(
                "no nilpotent pair datum for Cartan type {}",
                c.label()
            )))
        }
    };
    let lie = LieDatum::new(basis, &brackets)?;
    let entries: Vec<(String, String, BigRational)> = (1..=c.rank())
        .map(|i| (format!("ep{i}"), format!("f{i}"), one()))
        .collect();
    let cocycle = CocycleSpec::new(&lie, &entries)?;
    Ok((lie, cocycle))
}
