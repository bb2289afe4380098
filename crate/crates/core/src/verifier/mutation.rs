use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::diagram::VerifyOptions;
use super::report::{CheckReport, CheckStatus};
use super::verify_bundle;
use crate::constructions::{is_toral, GaloisBundle};
use crate::engine::{Trace, Word};
use crate::error::Result;
use crate::maps::{define_morphism, Handle, Morphism, TensorElement};
use crate::scalars::Scalar;

pub const DEFAULT_MUTATIONS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MutationKind {
    Negate,
    TimesQ,
    SwapToral,
}

impl fmt::Display for MutationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MutationKind::Negate => "negate",
            MutationKind::TimesQ => "multiply by q",
            MutationKind::SwapToral => "swap t ↔ t⁻¹",
        })
    }
}

/// One single-token change to a generator image of a bundle map.
#[derive(Clone, Debug)]
pub struct Mutation {
    pub role: String,
    pub generator: String,
    pub kind: MutationKind,
    pub term: String,
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}({}): {} the term {}",
            self.role, self.generator, self.kind, self.term
        )
    }
}

/// Result of running every suite on a mutated bundle.
#[derive(Clone, Debug)]
pub struct MutationOutcome {
    pub mutation: Mutation,
    pub report: CheckReport,
}

impl MutationOutcome {
    pub fn detected(&self) -> bool {
        self.report.status() == CheckStatus::Fail
    }
}

fn swap_toral(h: &Handle, w: &Word) -> Option<Word> {
    let p = h.presentation();
    let mut changed = false;
    let out = w
        .iter()
        .map(|&l| {
            let name = p.letter_name(l);
            if !is_toral(name) {
                return Some(l);
            }
            changed = true;
            let other = match name.strip_suffix("inv") {
                Some(base) => base.to_string(),
                None => format!("{name}inv"),
            };
            p.letter(&other).ok()
        })
        .collect::<Option<Word>>()?;
    changed.then_some(out)
}

fn mutate_term(
    m: &Morphism,
    image: &TensorElement,
    legs: &[Word],
    c: &Scalar,
    kind: MutationKind,
    rng: &mut ChaCha8Rng,
) -> Option<TensorElement> {
    let mut out = image.clone();
    match kind {
        MutationKind::Negate => out.add_term(legs.to_vec(), -(c + c)),
        MutationKind::TimesQ => out.add_term(legs.to_vec(), c * &(Scalar::q() - Scalar::one())),
        MutationKind::SwapToral => {
            let candidates: Vec<usize> = (0..legs.len())
                .filter(|&i| swap_toral(m.target().leg(i), &legs[i]).is_some())
                .collect();
            let &i = candidates.choose(rng)?;
            let mut swapped = legs.to_vec();
            swapped[i] = swap_toral(m.target().leg(i), &legs[i])?;
            out.add_term(legs.to_vec(), -c);
            out.add_term(swapped, c.clone());
        }
    }
    let trace = Trace::new();
    let out = m.target().normalize(&out, &trace);
    (out != *image).then_some(out)
}

/// Draw one effective mutation of `b`, or `None` after repeated no-ops.
pub fn random_mutation(
    b: &GaloisBundle,
    rng: &mut ChaCha8Rng,
) -> Result<Option<(Mutation, GaloisBundle)>> {
    let maps = b.maps();
    for _ in 0..64 {
        let (role, m) = maps[rng.gen_range(0..maps.len())];
        let gens = m.source().presentation().generators();
        let live: Vec<usize> = (0..gens.len())
            .filter(|&i| !m.images()[i].is_zero())
            .collect();
        let Some(&g) = live.choose(rng) else { continue };
        let image = &m.images()[g];
        let terms: Vec<(Vec<Word>, Scalar)> =
            image.terms().map(|(l, c)| (l.clone(), c.clone())).collect();
        let (legs, c) = &terms[rng.gen_range(0..terms.len())];
        let kind = [
            MutationKind::Negate,
            MutationKind::TimesQ,
            MutationKind::SwapToral,
        ][rng.gen_range(0..3)];
        let Some(new_image) = mutate_term(m, image, legs, c, kind, rng) else {
            continue;
        };
        let mut single = TensorElement::zero();
        single.add_term(legs.clone(), c.clone());
        let mutation = Mutation {
            role: role.to_string(),
            generator: gens[g].name.clone(),
            kind,
            term: m.target().render(&single),
        };
        let images: Vec<(&str, TensorElement)> = gens
            .iter()
            .enumerate()
            .map(|(i, gen)| {
                let img = if i == g {
                    new_image.clone()
                } else {
                    m.images()[i].clone()
                };
                (gen.name.as_str(), img)
            })
            .collect();
        let mutated = define_morphism(m.name(), m.source(), m.target(), &images)?;
        return Ok(Some((mutation, b.replace(role, Arc::new(mutated))?)));
    }
    Ok(None)
}

/// Apply `count` independent random mutations to `b` and verify each
/// mutated bundle with every suite.
pub fn run_mutations(b: &GaloisBundle, count: usize, seed: u64) -> Result<Vec<MutationOutcome>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let opts = VerifyOptions::without_samples();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let Some((mutation, mutated)) = random_mutation(b, &mut rng)? else {
            break;
        };
        let report = verify_bundle(&mutated, &opts)?;
        out.push(MutationOutcome { mutation, report });
    }
    Ok(out)
}
