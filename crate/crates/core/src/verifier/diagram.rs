use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::report::CheckResult;
use crate::engine::{Element, Letter, Trace, Word};
use crate::error::{Error, Result};
use crate::maps::{
    compare_on_generators, compare_on_inputs, define_morphism, Handle, MorphismRef, Outcome,
    Signature, TensorElement, TensorMap,
};
use crate::scalars::Scalar;

/// Sampling of random source elements on top of the generator checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub samples: usize,
    pub seed: u64,
}

pub const DEFAULT_SAMPLES: usize = 50;

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            samples: DEFAULT_SAMPLES,
            seed: 0x5eed,
        }
    }
}

impl VerifyOptions {
    pub fn without_samples() -> Self {
        VerifyOptions {
            samples: 0,
            ..Self::default()
        }
    }
}

pub(crate) fn single(m: &MorphismRef) -> TensorMap {
    TensorMap::morphism(m)
}

/// `m` at leg `position`, taking `m^op` when the leg is the opposite of
/// `m`'s source.
pub(crate) fn lift(m: &MorphismRef, position: usize, ambient: &Signature) -> Result<TensorMap> {
    if position < ambient.len()
        && *ambient.leg(position) != *m.source()
        && ambient.leg(position).same_algebra(m.source())
    {
        return TensorMap::lift(&Arc::new(m.opposite()), position, ambient);
    }
    TensorMap::lift(m, position, ambient)
}

/// `(m at position) ∘ r`
pub(crate) fn then_lift(r: TensorMap, m: &MorphismRef, position: usize) -> Result<TensorMap> {
    let step = lift(m, position, r.target())?;
    r.then(step)
}

/// Merge legs `position`, `position + 1` of `r`'s target in `result`.
pub(crate) fn then_mul(r: TensorMap, position: usize, result: &Handle) -> Result<TensorMap> {
    let step = TensorMap::multiply(r.target(), position, result)?;
    r.then(step)
}

pub(crate) fn then_permute(r: TensorMap, perm: &[usize]) -> Result<TensorMap> {
    let step = TensorMap::permute(r.target(), perm)?;
    r.then(step)
}

/// `η: k -> h`
pub fn unit_morphism(h: &Handle) -> Result<MorphismRef> {
    Ok(Arc::new(define_morphism(
        &format!("η_{}", h.name()),
        &Handle::trivial(),
        &Signature::single(h),
        &[],
    )?))
}

/// `x ↦ 1 ⊗ x` (`left = true`) or `x ↦ x ⊗ 1` into `h ⊗ h`.
pub(crate) fn unit_insertion(h: &Handle, left: bool) -> Result<MorphismRef> {
    let sig = Signature::new(vec![h.clone(), h.clone()]);
    let trace = Trace::new();
    let images = h
        .presentation()
        .generators()
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let x = Element::letter(i as Letter);
            let legs = if left {
                [Element::one(), x]
            } else {
                [x, Element::one()]
            };
            Ok((g.name.as_str(), sig.pure(&legs, &trace)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let name = if left { "η⊗id" } else { "id⊗η" };
    Ok(Arc::new(define_morphism(name, h, &sig, &images)?))
}

/// Random elements of degree at most 2 with small coefficients.
pub(crate) fn sample_inputs(h: &Handle, n: usize, seed: u64) -> Vec<(String, TensorElement)> {
    let hash = h.presentation().content_hash();
    let salt = u64::from_str_radix(&hash[..16], 16).unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ salt);
    let gens = h.presentation().generators().len();
    let sig = Signature::single(h);
    let trace = Trace::new();
    (0..n)
        .map(|k| {
            let mut e = Element::zero();
            for _ in 0..rng.gen_range(1..=3) {
                let len = rng.gen_range(1..=2);
                let w: Word = (0..len).map(|_| rng.gen_range(0..gens) as Letter).collect();
                let c =
                    Scalar::from_int(rng.gen_range(1..=3)) * Scalar::q_pow(rng.gen_range(-1..=1));
                e.add_term(w, c);
            }
            let t = sig.pure(&[e], &trace).expect("single leg");
            (format!("sample {k}"), t)
        })
        .collect()
}

/// Compare two routes out of one algebra on its generators, then on random
/// samples. A sample mismatch after generator agreement contradicts the
/// certificates and is reported as an engine inconsistency.
pub(crate) fn check_routes(
    label: &str,
    anchor: &str,
    lhs: &TensorMap,
    rhs: &TensorMap,
    opts: &VerifyOptions,
) -> Result<CheckResult> {
    if lhs.source().len() != 1 {
        return Err(Error::SignatureMismatch(format!(
            "{label}: routes must start from one algebra"
        )));
    }
    CheckResult::run(label, anchor, || {
        let outcome = compare_on_generators(label, lhs, rhs)?;
        if outcome != Outcome::Equal || opts.samples == 0 {
            return Ok(outcome);
        }
        let inputs = sample_inputs(lhs.source().leg(0), opts.samples, opts.seed);
        Ok(match compare_on_inputs(label, lhs, rhs, &inputs)? {
            Outcome::Differ(mut w) => {
                w.label = format!("engine inconsistency: {}", w.label);
                Outcome::Differ(w)
            }
            other => other,
        })
    })
}
