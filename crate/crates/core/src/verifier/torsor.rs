use super::diagram::{
    check_routes, single, then_lift, then_mul, then_permute, unit_insertion, VerifyOptions,
};
use super::report::{CheckReport, CheckResult};
use crate::constructions::{GaloisBundle, TorsorData};
use crate::engine::Trace;
use crate::error::{Error, Result};
use crate::maps::{
    compare_elements, compare_on_inputs, generator_inputs, Orientation, Outcome, Signature,
    TensorElement, TensorMap,
};

fn straight(tor: &TorsorData) -> crate::maps::Handle {
    tor.algebra.with_orientation(Orientation::Straight)
}

fn sig_of(tor: &TorsorData, orientations: &[Orientation]) -> Signature {
    Signature::new(
        orientations
            .iter()
            .map(|&o| tor.algebra.with_orientation(o))
            .collect(),
    )
}

use Orientation::{Opposite as Op, Straight as St};

/// Unit, coassociativity and `θ` laws of a torsor on generators.
pub fn check_torsor(tor: &TorsorData, opts: &VerifyOptions) -> Result<CheckReport> {
    let t = straight(tor);
    let mu = &tor.mu;
    let mut report = CheckReport::new("torsor", t.name());
    report.push(CheckResult::certificate(mu, "morphism.certificate"));
    report.push(CheckResult::certificate(&tor.theta, "torsor.theta"));
    report.push(check_routes(
        "m₁₂∘μ = 1⊗id",
        "torsor.unit.left",
        &then_mul(single(mu), 0, &t)?,
        &single(&unit_insertion(&t, true)?),
        opts,
    )?);
    report.push(check_routes(
        "m₂₃∘μ = id⊗1",
        "torsor.unit.right",
        &then_mul(single(mu), 1, &t)?,
        &single(&unit_insertion(&t, false)?),
        opts,
    )?);
    report.push(check_routes(
        "(μ⊗id⊗id)∘μ = (id⊗id⊗μ)∘μ",
        "torsor.coassociativity",
        &then_lift(single(mu), mu, 0)?,
        &then_lift(single(mu), mu, 2)?,
        opts,
    )?);
    let lhs = then_lift(then_lift(single(mu), mu, 0)?, &tor.theta, 2)?;
    let rhs = then_permute(then_lift(single(mu), mu, 1)?, &[0, 3, 2, 1, 4])?;
    report.push(check_routes(
        "(id⊗id⊗θ⊗id⊗id)∘(μ⊗id⊗id)∘μ = τ₂₄∘(id⊗μ^op⊗id)∘μ",
        "torsor.theta-twist",
        &lhs,
        &rhs,
        opts,
    )?);
    Ok(report)
}

/// Route `T -> T^op ⊗ T ⊗ T^op` computing the antipode of the torsor's
/// left Hopf algebra.
pub fn s_t_route(tor: &TorsorData) -> Result<TensorMap> {
    let r = single(&tor.mu);
    let rev = TensorMap::reverse(r.target())?;
    let r = r.then(rev)?;
    let re = TensorMap::reorient(r.target(), &[Op, St, Op])?;
    let r = r.then(re)?;
    then_lift(then_lift(r, &tor.theta, 0)?, &tor.theta, 2)
}

/// `S_T(x)` as an element of `T^op ⊗ T ⊗ T^op`.
pub fn compute_s_t(tor: &TorsorData, x: &TensorElement) -> Result<TensorElement> {
    let r = s_t_route(tor)?;
    r.source().validate(x)?;
    let trace = Trace::new();
    let out = r.apply(x, &trace);
    if trace.limited() {
        return Err(Error::Inconclusive("S_T image is bound-limited".into()));
    }
    Ok(out)
}

fn membership(
    label: &str,
    anchor: &str,
    pairs: &[(TensorMap, TensorMap)],
    u: &TensorElement,
) -> Result<CheckResult> {
    pairs[0].0.source().validate(u)?;
    CheckResult::run(label, anchor, || {
        let inputs = [(String::from("u"), u.clone())];
        let mut result = Outcome::Equal;
        for (lhs, rhs) in pairs {
            match compare_on_inputs(label, lhs, rhs, &inputs)? {
                Outcome::Equal => {}
                Outcome::Differ(w) => return Ok(Outcome::Differ(w)),
                inc => result = inc,
            }
        }
        Ok(result)
    })
}

/// `u ∈ T ⊗ T^op` lies in the left Hopf algebra of the torsor:
/// `(id⊗id⊗θ⊗id)(μ⊗id)u = τ₂₄(id⊗μ^op)u`.
pub fn check_hl_membership(
    tor: &TorsorData,
    label: &str,
    u: &TensorElement,
) -> Result<CheckResult> {
    let sig = sig_of(tor, &[St, Op]);
    let id = TensorMap::identity(&sig);
    let lhs = then_lift(then_lift(id.clone(), &tor.mu, 0)?, &tor.theta, 2)?;
    let rhs = then_permute(then_lift(id, &tor.mu, 1)?, &[0, 3, 2, 1])?;
    membership(label, "membership.left", &[(lhs, rhs)], u)
}

/// `u ∈ T^op ⊗ T` lies in the right Hopf algebra of the torsor:
/// `(id⊗θ⊗id⊗id)(id⊗μ)u = τ₁₃(μ^op⊗id)u`.
pub fn check_hr_membership(
    tor: &TorsorData,
    label: &str,
    u: &TensorElement,
) -> Result<CheckResult> {
    let sig = sig_of(tor, &[Op, St]);
    let id = TensorMap::identity(&sig);
    let lhs = then_lift(then_lift(id.clone(), &tor.mu, 1)?, &tor.theta, 1)?;
    let rhs = then_permute(then_lift(id, &tor.mu, 0)?, &[2, 1, 0, 3])?;
    membership(label, "membership.right", &[(lhs, rhs)], u)
}

/// `z ∈ T^op ⊗ T ⊗ T^op` satisfies both defining equations of the
/// opposite torsor's structure algebra.
pub fn check_z_membership(tor: &TorsorData, label: &str, z: &TensorElement) -> Result<CheckResult> {
    let sig = sig_of(tor, &[Op, St, Op]);
    let id = TensorMap::identity(&sig);
    let lhs1 = then_lift(id.clone(), &tor.mu, 2)?;
    let rhs1 = then_permute(
        then_lift(then_lift(id.clone(), &tor.mu, 1)?, &tor.theta, 3)?,
        &[0, 1, 4, 3, 2],
    )?;
    let lhs2 = then_permute(then_lift(id.clone(), &tor.mu, 0)?, &[2, 1, 0, 3, 4])?;
    let rhs2 = then_lift(then_lift(id, &tor.mu, 1)?, &tor.theta, 1)?;
    membership(label, "membership.z", &[(lhs1, rhs1), (lhs2, rhs2)], z)
}

/// Strip the leg `scalar_leg` of a two-leg element, which must hold only
/// multiples of the unit.
fn collapse(t: &TensorElement, scalar_leg: usize) -> Option<TensorElement> {
    let mut out = TensorElement::zero();
    for (legs, c) in t.terms() {
        if !legs[scalar_leg].is_empty() {
            return None;
        }
        out.add_term(vec![legs[1 - scalar_leg].clone()], c.clone());
    }
    Some(out)
}

/// `(ε_B⊗id)(z) = (id⊗ε_A)(z)` for `z ∈ T^op ⊗ T ⊗ T^op`, with both
/// counits computed by multiplying the contracted legs in `T`.
pub fn check_counit_agreement(
    tor: &TorsorData,
    label: &str,
    z: &TensorElement,
) -> Result<CheckResult> {
    let t = straight(tor);
    let sig = sig_of(tor, &[Op, St, Op]);
    sig.validate(z)?;
    let id = TensorMap::identity(&sig);
    let first = then_mul(id.clone(), 0, &t)?;
    let second = then_mul(id, 1, &t)?;
    let out_sig = Signature::single(&tor.algebra.with_orientation(Op));
    CheckResult::run(label, "membership.counit", || {
        let trace = Trace::new();
        let l = first.apply(z, &trace);
        let r = second.apply(z, &trace);
        let not_scalar = |which: &str, s: &Signature, e: &TensorElement| {
            if trace.limited() {
                Outcome::Inconclusive(format!("{label}: contraction is bound-limited"))
            } else {
                Outcome::Differ(crate::maps::Witness {
                    label: format!("{label}: {which} contraction is not a scalar"),
                    normal_form: s.render(e),
                    degree: 0,
                })
            }
        };
        let Some(lc) = collapse(&l, 0) else {
            return Ok(not_scalar("(ε_B⊗id)", first.target(), &l));
        };
        let Some(rc) = collapse(&r, 1) else {
            return Ok(not_scalar("(id⊗ε_A)", second.target(), &r));
        };
        Ok(compare_elements(label, &out_sig, &lc, &rc, &trace))
    })
}

/// Images of the bundle's structure maps land in the torsor's Hopf
/// algebras: `(T⊗S_Z)γ(a)` in the left one, `(S_Z⊗T)δ(b)` in the right one,
/// and `S_T(x)` in the structure algebra of the opposite torsor.
pub fn check_membership(b: &GaloisBundle, _opts: &VerifyOptions) -> Result<CheckReport> {
    let tor = b
        .torsor
        .as_ref()
        .ok_or_else(|| Error::Validation(format!("bundle {} has no torsor", b.name)))?;
    let mut report = CheckReport::new("membership", &b.name);
    let left = then_lift(single(&b.gamma), &b.s_z, 1)?;
    let right = then_lift(single(&b.delta), &b.s_z, 0)?;
    let st = s_t_route(tor)?;
    let cases: [(&TensorMap, &str); 3] = [(&left, "(T⊗S_Z)γ"), (&right, "(S_Z⊗T)δ"), (&st, "S_T")];
    for (k, (route, what)) in cases.into_iter().enumerate() {
        for (g, x) in generator_inputs(route.source().leg(0)) {
            let trace = Trace::new();
            let u = route.apply(&x, &trace);
            let label = format!("{what}({g})");
            if trace.limited() {
                report.push(CheckResult::from_outcome(
                    &label,
                    "membership",
                    Outcome::Inconclusive(format!("{label} is bound-limited")),
                    0,
                ));
                continue;
            }
            match k {
                0 => report.push(check_hl_membership(tor, &format!("{label} ∈ H_l"), &u)?),
                1 => report.push(check_hr_membership(tor, &format!("{label} ∈ H_r"), &u)?),
                _ => {
                    report.push(check_z_membership(tor, &format!("{label} ∈ Z"), &u)?);
                    report.push(check_counit_agreement(
                        tor,
                        &format!("ε({label}) agrees"),
                        &u,
                    )?);
                }
            }
        }
    }
    Ok(report)
}
