use super::bundle::{GaloisBundle, TorsorData};
use super::cartan::CartanDatum;
use super::context::BuildContext;
use super::quantum::{
    build_kashiwara, build_uhat, build_uprime, build_uq, morphism_from_text, t, tinv, HopfData,
};
use crate::error::Result;
use crate::maps::{Handle, MorphismRef, Signature};

type Images = Vec<(String, String)>;

/// One image line per generator of `B`, built from per-index templates.
fn per_index<F>(c: &CartanDatum, mut f: F) -> Images
where
    F: FnMut(usize, &str, &str) -> Vec<(String, String)>,
{
    let mut out = Vec::new();
    for i in 0..c.rank() {
        out.extend(f(i, &t(i), &tinv(i)));
    }
    out
}

/// `μ_B: B -> B ⊗ B^op ⊗ B` and `θ_B: B -> B`.
pub fn kashiwara_torsor(ctx: &BuildContext, c: &CartanDatum) -> Result<TorsorData> {
    let b = build_kashiwara(ctx, c)?;
    let target = Signature::new(vec![b.clone(), b.opposite(), b.clone()]);
    let mu_images = per_index(c, |i, ti, tii| {
        let mut v = Vec::new();
        for x in [format!("ep{}", i + 1), format!("f{}", i + 1)] {
            v.push((
                x.clone(),
                format!("(1)⊗(1)⊗({x}) - (1)⊗({x}*{ti})⊗({tii}) + ({x})⊗({ti})⊗({tii})"),
            ));
        }
        v.push((ti.to_string(), format!("({ti})⊗({tii})⊗({ti})")));
        v.push((tii.to_string(), format!("({tii})⊗({ti})⊗({tii})")));
        v
    });
    let mu = morphism_from_text("μ_B", &b, &target, &mu_images)?;
    let theta = theta_b(&b, c, &Signature::single(&b), "θ_B")?;
    Ok(TorsorData {
        algebra: b,
        mu,
        theta,
    })
}

/// Conjugation `x ↦ t_i^{-1} x t_i` on the letters of index `i`.
fn theta_b(b: &Handle, c: &CartanDatum, target: &Signature, name: &str) -> Result<MorphismRef> {
    let images = per_index(c, |i, ti, tii| {
        vec![
            (format!("ep{}", i + 1), format!("{tii}*ep{}*{ti}", i + 1)),
            (format!("f{}", i + 1), format!("{tii}*f{}*{ti}", i + 1)),
            (ti.to_string(), ti.to_string()),
            (tii.to_string(), tii.to_string()),
        ]
    });
    morphism_from_text(name, b, target, &images)
}

/// The system `(U', Û, B, B^op)` with `S_B = θ_B` and `S_{B^op} = Id`.
pub fn kashiwara_bundle(ctx: &BuildContext, c: &CartanDatum) -> Result<GaloisBundle> {
    let a = build_uprime(ctx, c)?;
    let bh = build_uhat(ctx, c)?;
    let torsor = kashiwara_torsor(ctx, c)?;
    let b = torsor.algebra.clone();
    let bop = b.opposite();
    let (ua, uh) = (a.algebra.clone(), bh.algebra.clone());

    let t_left = morphism_from_text(
        "α_B",
        &b,
        &Signature::new(vec![ua.clone(), b.clone()]),
        &per_index(c, |i, ti, tii| {
            let n = i + 1;
            vec![
                (
                    format!("ep{n}"),
                    format!("(1)⊗(ep{n}) + ({tii}*ep{n})⊗({tii})"),
                ),
                (
                    format!("f{n}"),
                    format!("(1)⊗(f{n}) + ({tii}*fp{n})⊗({tii})"),
                ),
                (ti.into(), format!("({ti})⊗({ti})")),
                (tii.into(), format!("({tii})⊗({tii})")),
            ]
        }),
    )?;
    let t_right = morphism_from_text(
        "β_B",
        &b,
        &Signature::new(vec![b.clone(), uh.clone()]),
        &per_index(c, |i, ti, tii| {
            let n = i + 1;
            vec![
                (
                    format!("ep{n}"),
                    format!("(1)⊗({tii}*eh{n}) + (ep{n})⊗({tii})"),
                ),
                (format!("f{n}"), format!("(f{n})⊗({tii}) + (1)⊗(f{n})")),
                (ti.into(), format!("({ti})⊗({ti})")),
                (tii.into(), format!("({tii})⊗({tii})")),
            ]
        }),
    )?;
    let z_left = morphism_from_text(
        "α_B^op",
        &bop,
        &Signature::new(vec![uh.clone(), bop.clone()]),
        &per_index(c, |i, ti, tii| {
            let n = i + 1;
            vec![
                (format!("ep{n}"), format!("({ti})⊗(ep{n}) - (eh{n})⊗(1)")),
                (format!("f{n}"), format!("-({ti}*f{n})⊗(1) + ({ti})⊗(f{n})")),
                (ti.into(), format!("({tii})⊗({ti})")),
                (tii.into(), format!("({ti})⊗({tii})")),
            ]
        }),
    )?;
    let z_right = morphism_from_text(
        "β_B^op",
        &bop,
        &Signature::new(vec![bop.clone(), ua.clone()]),
        &per_index(c, |i, ti, tii| {
            let n = i + 1;
            vec![
                (format!("ep{n}"), format!("-({tii})⊗(ep{n}) + (ep{n})⊗(1)")),
                (format!("f{n}"), format!("-({tii})⊗(fp{n}) + (f{n})⊗(1)")),
                (ti.into(), format!("({ti})⊗({tii})")),
                (tii.into(), format!("({tii})⊗({ti})")),
            ]
        }),
    )?;
    let gamma = morphism_from_text(
        "γ",
        &ua,
        &Signature::new(vec![b.clone(), bop.clone()]),
        &per_index(c, |i, ti, tii| {
            let n = i + 1;
            vec![
                (
                    format!("ep{n}"),
                    format!("({ti}*ep{n})⊗(1) - ({ti})⊗(ep{n})"),
                ),
                (format!("fp{n}"), format!("({ti}*f{n})⊗(1) - ({ti})⊗(f{n})")),
                (ti.into(), format!("({ti})⊗({tii})")),
                (tii.into(), format!("({tii})⊗({ti})")),
            ]
        }),
    )?;
    let delta = morphism_from_text(
        "δ",
        &uh,
        &Signature::new(vec![bop.clone(), b.clone()]),
        &per_index(c, |i, ti, tii| {
            let n = i + 1;
            vec![
                (
                    format!("eh{n}"),
                    format!("({tii})⊗({ti}*ep{n}) - (ep{n})⊗(1)"),
                ),
                (format!("f{n}"), format!("(1)⊗(f{n}) - (f{n}*{ti})⊗({tii})")),
                (ti.into(), format!("({tii})⊗({ti})")),
                (tii.into(), format!("({ti})⊗({tii})")),
            ]
        }),
    )?;
    // S_T lands in Z^op = (B^op)^op = B
    let s_t = theta_b(&b, c, &Signature::single(&bop.opposite()), "S_B")?;
    let s_z = morphism_from_text(
        "S_B^op",
        &bop,
        &Signature::single(&b.opposite()),
        &b.presentation()
            .generators()
            .iter()
            .map(|g| (g.name.clone(), g.name.clone()))
            .collect::<Vec<_>>(),
    )?;
    Ok(GaloisBundle {
        name: format!("kashiwara {}", c.label()),
        a,
        b: bh,
        t: b,
        z: bop,
        t_left,
        t_right,
        z_left,
        z_right,
        gamma,
        delta,
        s_t,
        s_z,
        torsor: Some(torsor),
    })
}

/// `Û -> U`, `eh_i ↦ (q_i - q_i^{-1}) e_i`, identity on the rest.
pub fn embed_uhat(
    ctx: &BuildContext,
    c: &CartanDatum,
) -> Result<(MorphismRef, HopfData, HopfData)> {
    let uh = build_uhat(ctx, c)?;
    let u = build_uq(ctx, c)?;
    let images = per_index(c, |i, ti, tii| {
        let n = i + 1;
        let d = c.d(i);
        vec![
            (format!("eh{n}"), format!("[q^{d}-q^-{d}]*e{n}")),
            (format!("f{n}"), format!("f{n}")),
            (ti.into(), ti.into()),
            (tii.into(), tii.into()),
        ]
    });
    let m = morphism_from_text("ι", &uh.algebra, &Signature::single(&u.algebra), &images)?;
    Ok((m, uh, u))
}
