use super::diagram::{check_routes, single, then_lift, then_mul, unit_morphism, VerifyOptions};
use super::report::{CheckReport, CheckResult};
use crate::constructions::{GaloisBundle, HopfData};
use crate::error::Result;
use crate::maps::{Handle, MorphismRef, Signature, TensorMap};

fn then_drop(r: TensorMap) -> Result<TensorMap> {
    let step = TensorMap::drop_trivial(r.target());
    r.then(step)
}

/// `τ ∘ (f ⊗ g) ∘ m` on a two-leg target.
fn flipped_pair(m: &MorphismRef, f: &MorphismRef, g: &MorphismRef) -> Result<TensorMap> {
    let r = then_lift(then_lift(single(m), f, 0)?, g, 1)?;
    let tau = TensorMap::flip(r.target(), 0, 1)?;
    r.then(tau)
}

fn identity_on(h: &Handle) -> TensorMap {
    TensorMap::identity(&Signature::single(h))
}

/// Coassociativity, counit and antipode laws on generators.
pub fn check_hopf(h: &HopfData, opts: &VerifyOptions) -> Result<CheckReport> {
    let name = h.algebra.name();
    let mut report = CheckReport::new("hopf", &name);
    for m in [&h.coproduct, &h.antipode, &h.counit, &h.unit] {
        report.push(CheckResult::certificate(m, "morphism.certificate"));
    }
    let (delta, s, eps) = (&h.coproduct, &h.antipode, &h.counit);
    let eta = &h.unit;
    let label = |what: &str| format!("{name}: {what}");

    report.push(check_routes(
        &label("(Δ⊗id)∘Δ = (id⊗Δ)∘Δ"),
        "hopf.coassociativity",
        &then_lift(single(delta), delta, 0)?,
        &then_lift(single(delta), delta, 1)?,
        opts,
    )?);
    report.push(check_routes(
        &label("(ε⊗id)∘Δ = id"),
        "hopf.counit.left",
        &then_drop(then_lift(single(delta), eps, 0)?)?,
        &identity_on(&h.algebra),
        opts,
    )?);
    report.push(check_routes(
        &label("(id⊗ε)∘Δ = id"),
        "hopf.counit.right",
        &then_drop(then_lift(single(delta), eps, 1)?)?,
        &identity_on(&h.algebra),
        opts,
    )?);
    let eta_eps = single(eps).then(single(eta))?;
    report.push(check_routes(
        &label("m∘(S⊗id)∘Δ = η∘ε"),
        "hopf.antipode.left",
        &then_mul(then_lift(single(delta), s, 0)?, 0, &h.algebra)?,
        &eta_eps,
        opts,
    )?);
    report.push(check_routes(
        &label("m∘(id⊗S)∘Δ = η∘ε"),
        "hopf.antipode.right",
        &then_mul(then_lift(single(delta), s, 1)?, 0, &h.algebra)?,
        &eta_eps,
        opts,
    )?);
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Coassociativity and counit law of a one-sided coaction.
pub fn check_comodule(
    coaction: &MorphismRef,
    h: &HopfData,
    side: Side,
    opts: &VerifyOptions,
) -> Result<CheckReport> {
    let name = coaction.name().to_string();
    let mut report = CheckReport::new("comodule", format!("{name} over {}", h.algebra.name()));
    report.push(CheckResult::certificate(coaction, "morphism.certificate"));
    let t = coaction.source();
    let (lhs, rhs, counit, anchor) = match side {
        Side::Left => (
            then_lift(single(coaction), &h.coproduct, 0)?,
            then_lift(single(coaction), coaction, 1)?,
            then_lift(single(coaction), &h.counit, 0)?,
            "comodule.left",
        ),
        Side::Right => (
            then_lift(single(coaction), coaction, 0)?,
            then_lift(single(coaction), &h.coproduct, 1)?,
            then_lift(single(coaction), &h.counit, 1)?,
            "comodule.right",
        ),
    };
    let (coassoc, unit_law) = match side {
        Side::Left => ("(Δ⊗id)∘α = (id⊗α)∘α", "(ε⊗id)∘α = id"),
        Side::Right => ("(β⊗id)∘β = (id⊗Δ)∘β", "(id⊗ε)∘β = id"),
    };
    report.push(check_routes(
        &format!("{name}: {coassoc}"),
        &format!("{anchor}.coassociativity"),
        &lhs,
        &rhs,
        opts,
    )?);
    report.push(check_routes(
        &format!("{name}: {unit_law}"),
        &format!("{anchor}.counit"),
        &then_drop(counit)?,
        &identity_on(t),
        opts,
    )?);
    Ok(report)
}

/// `(α⊗id)∘β = (id⊗β)∘α` for a left coaction `α` and a right coaction `β`.
pub fn check_bicomodule(
    left: &MorphismRef,
    right: &MorphismRef,
    opts: &VerifyOptions,
) -> Result<CheckResult> {
    check_routes(
        &format!(
            "({}⊗id)∘{} = (id⊗{})∘{}",
            left.name(),
            right.name(),
            right.name(),
            left.name()
        ),
        "comodule.bicomodule",
        &then_lift(single(right), left, 0)?,
        &then_lift(single(left), right, 1)?,
        opts,
    )
}

/// Both coactions of `T` and of `Z`, and their compatibility.
pub fn check_comodules(b: &GaloisBundle, opts: &VerifyOptions) -> Result<CheckReport> {
    let mut report = CheckReport::new("comodule", &b.name);
    report.extend(check_comodule(&b.t_left, &b.a, Side::Left, opts)?);
    report.extend(check_comodule(&b.t_right, &b.b, Side::Right, opts)?);
    report.push(check_bicomodule(&b.t_left, &b.t_right, opts)?);
    report.extend(check_comodule(&b.z_left, &b.b, Side::Left, opts)?);
    report.extend(check_comodule(&b.z_right, &b.a, Side::Right, opts)?);
    report.push(check_bicomodule(&b.z_left, &b.z_right, opts)?);
    Ok(report)
}

/// Maps of one Hopf-Galois system `(A, B, T, Z)`.
struct System<'a> {
    label: &'a str,
    a: &'a HopfData,
    b: &'a HopfData,
    t: &'a Handle,
    t_left: &'a MorphismRef,
    t_right: &'a MorphismRef,
    gamma: &'a MorphismRef,
    delta: &'a MorphismRef,
    s_z: &'a MorphismRef,
}

fn system_diagrams(s: &System<'_>, opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let l = |what: &str| format!("{}: {what}", s.label);
    let eta_t = unit_morphism(s.t)?;
    Ok(vec![
        check_routes(
            &l("(γ⊗T)∘α_T = (T⊗δ)∘β_T"),
            "system.coaction-square",
            &then_lift(single(s.t_left), s.gamma, 0)?,
            &then_lift(single(s.t_right), s.delta, 1)?,
            opts,
        )?,
        check_routes(
            &l("(A⊗γ)∘Δ_A = (α_T⊗Z)∘γ"),
            "system.gamma-coproduct",
            &then_lift(single(&s.a.coproduct), s.gamma, 1)?,
            &then_lift(single(s.gamma), s.t_left, 0)?,
            opts,
        )?,
        check_routes(
            &l("(δ⊗B)∘Δ_B = (Z⊗β_T)∘δ"),
            "system.delta-coproduct",
            &then_lift(single(&s.b.coproduct), s.delta, 0)?,
            &then_lift(single(s.delta), s.t_right, 1)?,
            opts,
        )?,
        check_routes(
            &l("m_T∘(T⊗S_Z)∘γ = η_T∘ε_A"),
            "system.antipode-gamma",
            &then_mul(then_lift(single(s.gamma), s.s_z, 1)?, 0, s.t)?,
            &single(&s.a.counit).then(single(&eta_t))?,
            opts,
        )?,
        check_routes(
            &l("m_T∘(S_Z⊗T)∘δ = η_T∘ε_B"),
            "system.antipode-delta",
            &then_mul(then_lift(single(s.delta), s.s_z, 0)?, 0, s.t)?,
            &single(&s.b.counit).then(single(&eta_t))?,
            opts,
        )?,
    ])
}

fn certificates(b: &GaloisBundle) -> Vec<CheckResult> {
    b.maps()
        .into_iter()
        .map(|(_, m)| CheckResult::certificate(m, "morphism.certificate"))
        .collect()
}

/// The coaction square, the two coproduct diagrams and the two antipode
/// diagrams of `(A, B, T, Z)`.
pub fn check_galois_system(b: &GaloisBundle, opts: &VerifyOptions) -> Result<CheckReport> {
    let mut report = CheckReport::new("galois", &b.name);
    report.results.extend(certificates(b));
    let system = System {
        label: "(A,B,T,Z)",
        a: &b.a,
        b: &b.b,
        t: &b.t,
        t_left: &b.t_left,
        t_right: &b.t_right,
        gamma: &b.gamma,
        delta: &b.delta,
        s_z: &b.s_z,
    };
    report.results.extend(system_diagrams(&system, opts)?);
    Ok(report)
}

/// The eight compatibilities between the two systems, followed by the
/// diagrams of the mirrored system `(B, A, Z, T)`.
pub fn check_complete_system(b: &GaloisBundle, opts: &VerifyOptions) -> Result<CheckReport> {
    let mut report = CheckReport::new("complete", &b.name);
    report.results.extend(certificates(b));
    let (s_a, s_b) = (&b.a.antipode, &b.b.antipode);
    let checks: Vec<(&str, &str, TensorMap, TensorMap)> = vec![
        (
            "(β_T⊗Z)∘γ = (T⊗α_Z)∘γ",
            "complete.gamma-coactions",
            then_lift(single(&b.gamma), &b.t_right, 0)?,
            then_lift(single(&b.gamma), &b.z_left, 1)?,
        ),
        (
            "(β_Z⊗T)∘δ = (Z⊗α_T)∘δ",
            "complete.delta-coactions",
            then_lift(single(&b.delta), &b.z_right, 0)?,
            then_lift(single(&b.delta), &b.t_left, 1)?,
        ),
        (
            "τ∘(S_T⊗S_Z)∘γ = γ∘S_A",
            "complete.gamma-antipode",
            flipped_pair(&b.gamma, &b.s_t, &b.s_z)?,
            then_lift(single(s_a), &b.gamma, 0)?,
        ),
        (
            "τ∘(S_Z⊗S_T)∘δ = δ∘S_B",
            "complete.delta-antipode",
            flipped_pair(&b.delta, &b.s_z, &b.s_t)?,
            then_lift(single(s_b), &b.delta, 0)?,
        ),
        (
            "τ∘(S_A⊗S_T)∘α_T = β_Z∘S_T",
            "complete.left-coaction-antipode",
            flipped_pair(&b.t_left, s_a, &b.s_t)?,
            then_lift(single(&b.s_t), &b.z_right, 0)?,
        ),
        (
            "τ∘(S_T⊗S_B)∘β_T = α_Z∘S_T",
            "complete.right-coaction-antipode",
            flipped_pair(&b.t_right, &b.s_t, s_b)?,
            then_lift(single(&b.s_t), &b.z_left, 0)?,
        ),
        (
            "β_T∘S_Z = τ∘(S_B⊗S_Z)∘α_Z",
            "complete.z-left-coaction-antipode",
            then_lift(single(&b.s_z), &b.t_right, 0)?,
            flipped_pair(&b.z_left, s_b, &b.s_z)?,
        ),
        (
            "α_T∘S_Z = τ∘(S_Z⊗S_A)∘β_Z",
            "complete.z-right-coaction-antipode",
            then_lift(single(&b.s_z), &b.t_left, 0)?,
            flipped_pair(&b.z_right, &b.s_z, s_a)?,
        ),
    ];
    for (label, anchor, lhs, rhs) in &checks {
        report.push(check_routes(label, anchor, lhs, rhs, opts)?);
    }
    let mirrored = System {
        label: "(B,A,Z,T)",
        a: &b.b,
        b: &b.a,
        t: &b.z,
        t_left: &b.z_left,
        t_right: &b.z_right,
        gamma: &b.delta,
        delta: &b.gamma,
        s_z: &b.s_t,
    };
    report.results.extend(system_diagrams(&mirrored, opts)?);
    Ok(report)
}

/// `ι: H -> K` is an algebra map commuting with coproducts and counits.
pub fn check_embedding(
    iota: &MorphismRef,
    h: &HopfData,
    k: &HopfData,
    opts: &VerifyOptions,
) -> Result<CheckReport> {
    let mut report = CheckReport::new("embedding", iota.name());
    report.push(CheckResult::certificate(iota, "morphism.certificate"));
    let both = TensorMap::tensor(
        &[Some(iota.clone()), Some(iota.clone())],
        h.coproduct.target(),
    )?;
    report.push(check_routes(
        &format!("(ι⊗ι)∘Δ_{} = Δ_{}∘ι", h.algebra.name(), k.algebra.name()),
        "embedding.coproduct",
        &single(&h.coproduct).then(both)?,
        &single(iota).then(single(&k.coproduct))?,
        opts,
    )?);
    report.push(check_routes(
        &format!("ε_{}∘ι = ε_{}", k.algebra.name(), h.algebra.name()),
        "embedding.counit",
        &single(iota).then(single(&k.counit))?,
        &single(&h.counit),
        opts,
    )?);
    Ok(report)
}
