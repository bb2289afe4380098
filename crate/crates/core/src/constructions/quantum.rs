use std::sync::Arc;

use super::cartan::CartanDatum;
use super::context::BuildContext;
use crate::engine::{Element, Presentation};
use crate::error::Result;
use crate::maps::{define_morphism, Handle, MorphismRef, Signature, TensorElement};
use crate::scalars::{q_binomial, Scalar};

/// Coproduct, antipode (into the opposite algebra), counit and unit of a
/// Hopf algebra.
#[derive(Clone, Debug)]
pub struct HopfData {
    pub algebra: Handle,
    pub coproduct: MorphismRef,
    pub antipode: MorphismRef,
    pub counit: MorphismRef,
    pub unit: MorphismRef,
}

pub fn t(i: usize) -> String {
    format!("t{}", i + 1)
}

pub fn tinv(i: usize) -> String {
    format!("t{}inv", i + 1)
}

fn mono(p: &Presentation, c: Scalar, names: &[&str]) -> Element {
    let mut w = Element::scalar(c);
    for n in names {
        w = w.mul(&p.gen(n).expect("declared generator"));
    }
    w
}

/// Declare `X_i` for each family, then `t_i`, then `t_i^{-1}`, and add the
/// toral relations and the Serre relations of each family.
///
/// A family is a generator prefix with the sign of its weight (`+1` for
/// e-type, `-1` for f-type).
pub(crate) fn toral_presentation(
    name: &str,
    c: &CartanDatum,
    families: &[(&str, i64)],
) -> Presentation {
    let n = c.rank();
    let mut p = Presentation::new(name);
    for (prefix, _) in families {
        for i in 0..n {
            p.add_generator(&format!("{prefix}{}", i + 1)).unwrap();
        }
    }
    for i in 0..n {
        p.add_generator(&t(i)).unwrap();
    }
    for i in 0..n {
        p.add_generator(&tinv(i)).unwrap();
    }
    let one = Scalar::one;
    for i in 0..n {
        let (ti, tii) = (t(i), tinv(i));
        let r = mono(&p, one(), &[&ti, &tii]).sub(&Element::one());
        p.add_relation(format!("{ti}*{tii}=1"), r).unwrap();
        let r = mono(&p, one(), &[&tii, &ti]).sub(&Element::one());
        p.add_relation(format!("{tii}*{ti}=1"), r).unwrap();
    }
    for i in 0..n {
        for j in (i + 1)..n {
            for a in [t(i), tinv(i)] {
                for b in [t(j), tinv(j)] {
                    let r = mono(&p, one(), &[&a, &b]).sub(&mono(&p, one(), &[&b, &a]));
                    p.add_relation(format!("[{a},{b}]=0"), r).unwrap();
                }
            }
        }
    }
    for (prefix, sign) in families {
        for i in 0..n {
            for j in 0..n {
                let x = format!("{prefix}{}", j + 1);
                let k = sign * c.weight(i, j);
                for (tt, e) in [(t(i), k), (tinv(i), -k)] {
                    let r =
                        mono(&p, one(), &[&tt, &x]).sub(&mono(&p, Scalar::q_pow(e), &[&x, &tt]));
                    p.add_relation(format!("{tt}*{x}*{tt}^-1=q^{e}*{x}"), r)
                        .unwrap();
                }
            }
        }
    }
    for (prefix, _) in families {
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let xi = format!("{prefix}{}", i + 1);
                let xj = format!("{prefix}{}", j + 1);
                let m = 1 - c.a(i, j);
                let mut r = Element::zero();
                for k in 0..=m {
                    let coef = q_binomial(m, k, c.d(i));
                    let coef = if k % 2 == 1 { -coef } else { coef };
                    let mut names: Vec<&str> = vec![&xi; k as usize];
                    names.push(&xj);
                    names.extend(std::iter::repeat_n(xi.as_str(), (m - k) as usize));
                    r = r.add(&mono(&p, coef, &names));
                }
                p.add_relation(format!("serre({xi},{xj})"), r).unwrap();
            }
        }
    }
    p
}

/// `U_q(g)` on `e_i, f_i, t_i, t_i^{-1}`.
pub fn uq_presentation(c: &CartanDatum) -> Presentation {
    let mut p = toral_presentation("U_q", c, &[("e", 1), ("f", -1)]);
    for i in 0..c.rank() {
        for j in 0..c.rank() {
            let (e, f) = (format!("e{}", i + 1), format!("f{}", j + 1));
            let mut r = mono(&p, Scalar::one(), &[&e, &f]).sub(&mono(&p, Scalar::one(), &[&f, &e]));
            if i == j {
                let qi = c.q_i(i);
                let denom = (&qi - &qi.inv().unwrap()).inv().unwrap();
                r = r
                    .sub(&mono(&p, denom.clone(), &[&t(i)]))
                    .add(&mono(&p, denom, &[&tinv(i)]));
            }
            p.add_relation(format!("[{e},{f}]"), r).unwrap();
        }
    }
    p
}

/// `Û` on `eh_i, f_i, t_i, t_i^{-1}`.
pub fn uhat_presentation(c: &CartanDatum) -> Presentation {
    let mut p = toral_presentation("U_hat", c, &[("eh", 1), ("f", -1)]);
    for i in 0..c.rank() {
        for j in 0..c.rank() {
            let (e, f) = (format!("eh{}", i + 1), format!("f{}", j + 1));
            let mut r = mono(&p, Scalar::one(), &[&e, &f]).sub(&mono(&p, Scalar::one(), &[&f, &e]));
            if i == j {
                r = r.sub(&mono(&p, Scalar::one(), &[&t(i)])).add(&mono(
                    &p,
                    Scalar::one(),
                    &[&tinv(i)],
                ));
            }
            p.add_relation(format!("[{e},{f}]"), r).unwrap();
        }
    }
    p
}

/// `U'` on `ep_i, fp_i, t_i, t_i^{-1}`.
pub fn uprime_presentation(c: &CartanDatum) -> Presentation {
    let mut p = toral_presentation("U_prime", c, &[("ep", 1), ("fp", -1)]);
    for i in 0..c.rank() {
        for j in 0..c.rank() {
            let (e, f) = (format!("ep{}", i + 1), format!("fp{}", j + 1));
            let r = mono(&p, Scalar::one(), &[&e, &f]).sub(&mono(
                &p,
                Scalar::q_pow(-c.weight(i, j)),
                &[&f, &e],
            ));
            p.add_relation(format!("{e}*{f}=q^{}*{f}*{e}", -c.weight(i, j)), r)
                .unwrap();
        }
    }
    p
}

/// Kashiwara algebra `B_q(g)` on `ep_i, f_i, t_i, t_i^{-1}`.
pub fn kashiwara_presentation(c: &CartanDatum) -> Presentation {
    let mut p = toral_presentation("B_q", c, &[("ep", 1), ("f", -1)]);
    for i in 0..c.rank() {
        for j in 0..c.rank() {
            let (e, f) = (format!("ep{}", i + 1), format!("f{}", j + 1));
            let mut r = mono(&p, Scalar::one(), &[&e, &f]).sub(&mono(
                &p,
                Scalar::q_pow(c.weight(i, j)),
                &[&f, &e],
            ));
            if i == j {
                r = r.sub(&Element::one());
            }
            p.add_relation(
                format!("{e}*{f}=q^{}*{f}*{e}+{}", c.weight(i, j), i32::from(i == j)),
                r,
            )
            .unwrap();
        }
    }
    p
}

/// True for the toral letters `t<i>` and `t<i>inv`.
pub fn is_toral(name: &str) -> bool {
    let rest = name.strip_prefix('t').unwrap_or("");
    let digits = rest.strip_suffix("inv").unwrap_or(rest);
    !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit())
}

/// Counit sending the letters selected by `group_like` to 1 and every
/// other letter to 0.
pub(crate) fn counit_from(
    name: &str,
    h: &Handle,
    group_like: impl Fn(&str) -> bool,
) -> Result<MorphismRef> {
    let k = Signature::single(&Handle::trivial());
    let images: Vec<(String, TensorElement)> = h
        .presentation()
        .generators()
        .iter()
        .map(|g| {
            let text = if group_like(&g.name) { "1" } else { "0" };
            (g.name.clone(), k.parse(text).expect("scalar"))
        })
        .collect();
    morphism(name, h, &k, &images)
}

pub(crate) fn unit_of(h: &Handle) -> Result<MorphismRef> {
    Ok(Arc::new(define_morphism(
        &format!("η_{}", h.name()),
        &Handle::trivial(),
        &Signature::single(h),
        &[],
    )?))
}

pub(crate) fn morphism(
    name: &str,
    source: &Handle,
    target: &Signature,
    images: &[(String, TensorElement)],
) -> Result<MorphismRef> {
    let refs: Vec<(&str, TensorElement)> = images
        .iter()
        .map(|(g, t)| (g.as_str(), t.clone()))
        .collect();
    Ok(Arc::new(define_morphism(name, source, target, &refs)?))
}

/// Images given as tensor text, one `(generator, text)` pair each.
pub(crate) fn morphism_from_text(
    name: &str,
    source: &Handle,
    target: &Signature,
    images: &[(String, String)],
) -> Result<MorphismRef> {
    let parsed = images
        .iter()
        .map(|(g, text)| Ok((g.clone(), target.parse(text)?)))
        .collect::<Result<Vec<_>>>()?;
    morphism(name, source, target, &parsed)
}

/// Hopf structure shared by the three quantum groups: `x` is the e-type
/// prefix, `y` the f-type prefix. `e`-type letters are primitive-twisted
/// on the left, the f-type coproduct is given by `f_coproduct`.
fn toral_hopf(
    ctx: &BuildContext,
    p: &Presentation,
    c: &CartanDatum,
    x: &str,
    y: &str,
    f_coproduct: impl Fn(&str, &str, &str) -> String,
    f_antipode: impl Fn(&str, &str, &str) -> String,
) -> Result<HopfData> {
    let h = ctx.handle(p)?;
    let hh = Signature::new(vec![h.clone(), h.clone()]);
    let name = p.name();
    let mut delta = Vec::new();
    let mut anti = Vec::new();
    for i in 0..c.rank() {
        let (e, f, ti, tii) = (
            format!("{x}{}", i + 1),
            format!("{y}{}", i + 1),
            t(i),
            tinv(i),
        );
        delta.push((e.clone(), format!("({e})⊗(1) + ({ti})⊗({e})")));
        delta.push((f.clone(), f_coproduct(&f, &ti, &tii)));
        delta.push((ti.clone(), format!("({ti})⊗({ti})")));
        delta.push((tii.clone(), format!("({tii})⊗({tii})")));
        anti.push((e.clone(), format!("-{tii}*{e}")));
        anti.push((f.clone(), f_antipode(&f, &ti, &tii)));
        anti.push((ti.clone(), tii.clone()));
        anti.push((tii.clone(), ti.clone()));
    }
    let coproduct = morphism_from_text(&format!("Δ_{name}"), &h, &hh, &delta)?;
    let antipode = morphism_from_text(
        &format!("S_{name}"),
        &h,
        &Signature::single(&h.opposite()),
        &anti,
    )?;
    let counit = counit_from(&format!("ε_{name}"), &h, is_toral)?;
    let unit = unit_of(&h)?;
    Ok(HopfData {
        algebra: h,
        coproduct,
        antipode,
        counit,
        unit,
    })
}

pub fn build_uq(ctx: &BuildContext, c: &CartanDatum) -> Result<HopfData> {
    toral_hopf(
        ctx,
        &uq_presentation(c),
        c,
        "e",
        "f",
        |f, _, tii| format!("({f})⊗({tii}) + (1)⊗({f})"),
        |f, ti, _| format!("-{f}*{ti}"),
    )
}

pub fn build_uhat(ctx: &BuildContext, c: &CartanDatum) -> Result<HopfData> {
    toral_hopf(
        ctx,
        &uhat_presentation(c),
        c,
        "eh",
        "f",
        |f, _, tii| format!("({f})⊗({tii}) + (1)⊗({f})"),
        |f, ti, _| format!("-{f}*{ti}"),
    )
}

pub fn build_uprime(ctx: &BuildContext, c: &CartanDatum) -> Result<HopfData> {
    toral_hopf(
        ctx,
        &uprime_presentation(c),
        c,
        "ep",
        "fp",
        |f, ti, _| format!("({f})⊗(1) + ({ti})⊗({f})"),
        |f, _, tii| format!("-{tii}*{f}"),
    )
}

pub fn build_kashiwara(ctx: &BuildContext, c: &CartanDatum) -> Result<Handle> {
    ctx.handle(&kashiwara_presentation(c))
}
