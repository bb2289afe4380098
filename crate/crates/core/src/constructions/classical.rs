use std::sync::Arc;

use super::cartan::CartanDatum;
use super::context::BuildContext;
use super::lie::{CocycleSpec, LieDatum};
use super::quantum::{is_toral, uhat_presentation, uprime_presentation};
use super::sridharan::sridharan_presentation;
use crate::engine::{Element, Presentation, Trace};
use crate::error::{Error, Result};
use crate::maps::{
    compare_elements, compare_on_generators, compose, define_morphism, Certificate, Handle,
    Morphism, Outcome, Signature, TensorElement, TensorMap,
};
use crate::scalars::Scalar;

/// Specialize `q = 1` and send `t_i, t_i^{-1}` to 1, dropping the toral
/// letters and every relation that becomes zero. With a Cartan datum an
/// additive block `h_i` is appended with `[h_i, x_j] = ±a_ij x_j` (`+` for
/// e-type letters, `-` for f-type) and `[h_i, h_j] = 0`.
pub fn classical_limit(p: &Presentation, cartan: Option<&CartanDatum>) -> Result<Presentation> {
    let mut out = Presentation::new(format!("{}_cl", p.name()));
    let mut ranks = Vec::new();
    let mut kept = Vec::new();
    for (i, g) in p.generators().iter().enumerate() {
        if is_toral(&g.name) {
            kept.push(None);
        } else {
            kept.push(Some(out.add_generator_with_degree(&g.name, g.degree)?));
            ranks.push(p.precedence()[i]);
        }
    }
    let h_names: Vec<String> = match cartan {
        Some(c) => (0..c.rank()).map(|i| format!("h{}", i + 1)).collect(),
        None => Vec::new(),
    };
    let lowest = ranks.iter().copied().min().unwrap_or(0);
    for (k, h) in h_names.iter().enumerate() {
        out.add_generator(h)?;
        ranks.push(lowest - 1 - k as i64);
    }
    out.set_precedence(ranks)?;

    for rel in p.relations() {
        let mut e = Element::zero();
        for (w, c) in rel.element.terms() {
            let value = c.specialize_q1().map_err(|_| Error::Pole {
                context: rel.label.clone(),
            })?;
            let word = w.iter().filter_map(|l| kept[*l as usize]).collect();
            e.add_term(word, Scalar::from_rational(&value));
        }
        if !e.is_zero() {
            out.add_relation(rel.label.clone(), e)?;
        }
    }

    if let Some(c) = cartan {
        let family: Vec<(String, i64, usize)> = out
            .generators()
            .iter()
            .filter(|g| !h_names.contains(&g.name))
            .filter_map(|g| {
                let sign = match g.name.chars().next() {
                    Some('e') => 1,
                    Some('f') => -1,
                    _ => return None,
                };
                let digits: String = g.name.chars().filter(|ch| ch.is_ascii_digit()).collect();
                let j: usize = digits.parse().ok()?;
                (1..=c.rank())
                    .contains(&j)
                    .then(|| (g.name.clone(), sign, j - 1))
            })
            .collect();
        for (i, h) in h_names.iter().enumerate() {
            let hi = out.gen(h)?;
            for (x, sign, j) in &family {
                let xe = out.gen(x)?;
                let r = hi
                    .mul(&xe)
                    .sub(&xe.mul(&hi))
                    .sub(&xe.scale(&Scalar::from_int(sign * c.a(i, *j))));
                out.add_relation(format!("[{h},{x}]"), r)?;
            }
            for h2 in &h_names[i + 1..] {
                let hj = out.gen(h2)?;
                out.add_relation(format!("[{h},{h2}]"), hi.mul(&hj).sub(&hj.mul(&hi)))?;
            }
        }
    }
    Ok(out)
}

/// Same presentation with generators renamed by `(from, to)` pairs.
pub fn rename_generators(p: &Presentation, renames: &[(&str, &str)]) -> Result<Presentation> {
    for (from, _) in renames {
        p.letter(from)?;
    }
    let mut out = Presentation::new(p.name());
    for g in p.generators() {
        let name = renames
            .iter()
            .find(|(from, _)| *from == g.name)
            .map_or(g.name.as_str(), |(_, to)| *to);
        out.add_generator_with_degree(name, g.degree)?;
    }
    out.set_precedence(p.precedence().to_vec())?;
    for rel in p.relations() {
        out.add_relation(rel.label.clone(), rel.element.clone())?;
    }
    Ok(out)
}

/// Rewrite an element of `from` in the letters of `to`, matching generators
/// by name.
pub fn translate(e: &Element, from: &Presentation, to: &Presentation) -> Result<Element> {
    let map = from
        .generators()
        .iter()
        .map(|g| to.letter(&g.name))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Element::zero();
    for (w, c) in e.terms() {
        out.add_term(w.iter().map(|l| map[*l as usize]).collect(), c.clone());
    }
    Ok(out)
}

fn relations_vanish_in(p: &Presentation, h: &Handle) -> Result<Outcome> {
    let sig = Signature::single(h);
    let mut inconclusive = None;
    for rel in p.relations() {
        let trace = Trace::new();
        let x = translate(&rel.element, p, h.presentation())?;
        let lhs = sig.pure(&[h.normal_form(&x, &trace)], &trace)?;
        match compare_elements(
            &format!("{} in {}", rel.label, h.name()),
            &sig,
            &lhs,
            &TensorElement::zero(),
            &trace,
        ) {
            Outcome::Equal => {}
            Outcome::Inconclusive(m) => {
                inconclusive.get_or_insert(m);
            }
            differ => return Ok(differ),
        }
    }
    Ok(inconclusive.map_or(Outcome::Equal, Outcome::Inconclusive))
}

fn both(first: Outcome, second: impl FnOnce() -> Result<Outcome>) -> Result<Outcome> {
    match first {
        Outcome::Differ(w) => Ok(Outcome::Differ(w)),
        Outcome::Equal => second(),
        Outcome::Inconclusive(m) => match second()? {
            Outcome::Differ(w) => Ok(Outcome::Differ(w)),
            _ => Ok(Outcome::Inconclusive(m)),
        },
    }
}

/// Each relation of either presentation reduces to zero in the other; both
/// must use the same generator names.
pub fn mutually_reduce(
    ctx: &BuildContext,
    p1: &Presentation,
    p2: &Presentation,
) -> Result<Outcome> {
    let h1 = ctx.handle(p1)?;
    let h2 = ctx.handle(p2)?;
    both(relations_vanish_in(p1, &h2)?, || {
        relations_vanish_in(p2, &h1)
    })
}

fn refs(v: &[(String, TensorElement)]) -> Vec<(&str, TensorElement)> {
    v.iter().map(|(g, t)| (g.as_str(), t.clone())).collect()
}

fn certificate_outcome(m: &Morphism) -> Outcome {
    match m.certificate() {
        Certificate::Verified | Certificate::Unchecked => Outcome::Equal,
        Certificate::Failed(w) => Outcome::Differ(w.clone()),
        Certificate::Inconclusive(msg) => Outcome::Inconclusive(msg.clone()),
    }
}

/// Images in `target` of the basis of `lie`: letters present in the target
/// map to themselves, every other basis element to the bracket it spans.
fn basis_images(lie: &LieDatum, target: &Handle) -> Result<Vec<(String, Element)>> {
    let n = lie.dim();
    let mut images: Vec<Option<Element>> = lie.basis().iter().map(|b| target.gen(b).ok()).collect();
    loop {
        let mut progress = false;
        for k in 0..n {
            if images[k].is_some() {
                continue;
            }
            'pairs: for i in 0..n {
                for j in 0..n {
                    let v = lie.bracket(i, j);
                    if v.len() != 1 || !v.contains_key(&k) {
                        continue;
                    }
                    if let (Some(x), Some(y)) = (&images[i], &images[j]) {
                        let coef = Scalar::from_rational(&v[&k])
                            .inv()
                            .expect("nonzero bracket");
                        images[k] = Some(x.mul(y).sub(&y.mul(x)).scale(&coef));
                        progress = true;
                        break 'pairs;
                    }
                }
            }
        }
        if !progress {
            break;
        }
    }
    lie.basis()
        .iter()
        .zip(images)
        .map(|(b, e)| {
            e.map(|e| (b.clone(), e)).ok_or_else(|| {
                Error::Validation(format!(
                    "basis element '{b}' is not generated by the letters of {}",
                    target.name()
                ))
            })
        })
        .collect()
}

/// Whether `classical_b` is isomorphic to the Sridharan algebra `U_c(lie)`
/// through the evident maps: the letters of `classical_b` go to the basis
/// elements of the same name, and basis elements not among those letters go
/// back to the brackets that produce them. Both maps are certified and both
/// composites are checked against the identity on generators.
pub fn check_sridharan_match(
    ctx: &BuildContext,
    classical_b: &Presentation,
    lie: &LieDatum,
    c: &CocycleSpec,
) -> Result<Outcome> {
    let b = ctx.handle(classical_b)?;
    let u = ctx.handle(&sridharan_presentation("U_c(a)", lie, c)?)?;
    let sig_u = Signature::single(&u);
    let sig_b = Signature::single(&b);
    let trace = Trace::new();

    let psi_images = classical_b
        .generators()
        .iter()
        .map(|g| Ok((g.name.clone(), sig_u.pure(&[u.gen(&g.name)?], &trace)?)))
        .collect::<Result<Vec<_>>>()?;
    let phi_images = basis_images(lie, &b)?
        .into_iter()
        .map(|(name, e)| Ok((name, sig_b.pure(&[e], &trace)?)))
        .collect::<Result<Vec<_>>>()?;
    let psi = define_morphism("ψ", &b, &sig_u, &refs(&psi_images))?;
    let phi = define_morphism("φ", &u, &sig_b, &refs(&phi_images))?;
    let certified = both(certificate_outcome(&psi), || Ok(certificate_outcome(&phi)))?;
    if let Outcome::Differ(w) = certified {
        return Ok(Outcome::Differ(w));
    }
    let on_b = Arc::new(compose(&phi, &psi)?);
    let on_u = Arc::new(compose(&psi, &phi)?);
    let round_trips = both(
        compare_on_generators(
            "φ∘ψ = id",
            &TensorMap::morphism(&on_b),
            &TensorMap::identity(&sig_b),
        )?,
        || {
            compare_on_generators(
                "ψ∘φ = id",
                &TensorMap::morphism(&on_u),
                &TensorMap::identity(&sig_u),
            )
        },
    )?;
    both(certified, || Ok(round_trips))
}

/// Classical limits of `U′` and `Û` with their generators renamed to the
/// common names `e<i>`, `f<i>`, ready for [`mutually_reduce`].
pub fn unified_limits(c: &CartanDatum) -> Result<(Presentation, Presentation)> {
    let prime: Vec<(String, String)> = (1..=c.rank())
        .flat_map(|i| {
            [
                (format!("ep{i}"), format!("e{i}")),
                (format!("fp{i}"), format!("f{i}")),
            ]
        })
        .collect();
    let hat: Vec<(String, String)> = (1..=c.rank())
        .map(|i| (format!("eh{i}"), format!("e{i}")))
        .collect();
    let up = rename_owned(&classical_limit(&uprime_presentation(c), None)?, &prime)?;
    let uh = rename_owned(&classical_limit(&uhat_presentation(c), None)?, &hat)?;
    Ok((up, uh))
}

fn rename_owned(p: &Presentation, renames: &[(String, String)]) -> Result<Presentation> {
    let r: Vec<(&str, &str)> = renames
        .iter()
        .map(|(a, b)| (a.as_str(), b.as_str()))
        .collect();
    rename_generators(p, &r)
}
