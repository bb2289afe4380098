use super::handle::{Handle, Orientation, Signature};
use super::morphism::{MorphismRef, Witness};
use super::tensor::TensorElement;
use crate::engine::{Element, Letter, Trace};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
enum Op {
    Identity,
    Lift {
        morphism: MorphismRef,
        position: usize,
    },
    Multiply {
        position: usize,
        result: Handle,
    },
    Permute(Vec<usize>),
    DropTrivial(Vec<usize>),
    Compose(Vec<TensorMap>),
}

/// Linear map between tensor signatures built from leg operations.
#[derive(Clone, Debug)]
pub struct TensorMap {
    source: Signature,
    target: Signature,
    op: Op,
}

impl TensorMap {
    pub fn source(&self) -> &Signature {
        &self.source
    }

    pub fn target(&self) -> &Signature {
        &self.target
    }

    pub fn identity(sig: &Signature) -> Self {
        TensorMap {
            source: sig.clone(),
            target: sig.clone(),
            op: Op::Identity,
        }
    }

    /// A single-source morphism as a map from its one-leg signature.
    pub fn morphism(m: &MorphismRef) -> Self {
        TensorMap {
            source: Signature::single(m.source()),
            target: m.target().clone(),
            op: Op::Lift {
                morphism: m.clone(),
                position: 0,
            },
        }
    }

    /// `id ⊗ ... ⊗ m ⊗ ... ⊗ id` with `m` at `position`.
    pub fn lift(m: &MorphismRef, position: usize, ambient: &Signature) -> Result<Self> {
        if position >= ambient.len() || ambient.leg(position) != m.source() {
            return Err(Error::SignatureMismatch(format!(
                "cannot lift {} into leg {position} of {}",
                m.name(),
                ambient.name()
            )));
        }
        let mut legs = ambient.legs()[..position].to_vec();
        legs.extend(m.target().legs().iter().cloned());
        legs.extend(ambient.legs()[position + 1..].iter().cloned());
        Ok(TensorMap {
            source: ambient.clone(),
            target: Signature::new(legs),
            op: Op::Lift {
                morphism: m.clone(),
                position,
            },
        })
    }

    /// Apply one morphism (or the identity) per leg of `ambient`.
    pub fn tensor(maps: &[Option<MorphismRef>], ambient: &Signature) -> Result<Self> {
        if maps.len() != ambient.len() {
            return Err(Error::SignatureMismatch(format!(
                "{} factors for signature {}",
                maps.len(),
                ambient.name()
            )));
        }
        let mut steps = Vec::new();
        let mut sig = ambient.clone();
        // right to left keeps the positions of earlier legs fixed
        for (i, m) in maps.iter().enumerate().rev() {
            if let Some(m) = m {
                let step = TensorMap::lift(m, i, &sig)?;
                sig = step.target.clone();
                steps.push(step);
            }
        }
        if steps.is_empty() {
            return Ok(TensorMap::identity(ambient));
        }
        TensorMap::chain(steps)
    }

    /// Merge legs `position` and `position + 1` by multiplying in `result`.
    pub fn multiply(sig: &Signature, position: usize, result: &Handle) -> Result<Self> {
        if position + 1 >= sig.len()
            || !sig.leg(position).same_algebra(result)
            || !sig.leg(position + 1).same_algebra(result)
        {
            return Err(Error::SignatureMismatch(format!(
                "cannot multiply legs {position},{} of {} in {}",
                position + 1,
                sig.name(),
                result.name()
            )));
        }
        let mut legs = sig.legs()[..position].to_vec();
        legs.push(result.clone());
        legs.extend(sig.legs()[position + 2..].iter().cloned());
        Ok(TensorMap {
            source: sig.clone(),
            target: Signature::new(legs),
            op: Op::Multiply {
                position,
                result: result.clone(),
            },
        })
    }

    /// Output leg `k` is input leg `perm[k]`.
    pub fn permute(sig: &Signature, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; sig.len()];
        if perm.len() != sig.len() {
            return Err(Error::SignatureMismatch(
                "permutation length mismatch".into(),
            ));
        }
        for &i in perm {
            if i >= sig.len() || seen[i] {
                return Err(Error::SignatureMismatch(format!(
                    "invalid permutation {perm:?}"
                )));
            }
            seen[i] = true;
        }
        Ok(TensorMap {
            source: sig.clone(),
            target: Signature::new(perm.iter().map(|&i| sig.leg(i).clone()).collect()),
            op: Op::Permute(perm.to_vec()),
        })
    }

    pub fn flip(sig: &Signature, i: usize, j: usize) -> Result<Self> {
        let mut perm: Vec<usize> = (0..sig.len()).collect();
        if i >= sig.len() || j >= sig.len() {
            return Err(Error::SignatureMismatch(format!(
                "flip({i},{j}) out of range"
            )));
        }
        perm.swap(i, j);
        TensorMap::permute(sig, &perm)
    }

    /// Move the first `split` legs after the remaining ones as one block.
    pub fn swap_blocks(sig: &Signature, split: usize) -> Result<Self> {
        if split == 0 || split >= sig.len() {
            return Err(Error::SignatureMismatch(format!(
                "block split {split} out of range"
            )));
        }
        let perm: Vec<usize> = (split..sig.len()).chain(0..split).collect();
        TensorMap::permute(sig, &perm)
    }

    pub fn reverse(sig: &Signature) -> Result<Self> {
        let perm: Vec<usize> = (0..sig.len()).rev().collect();
        TensorMap::permute(sig, &perm)
    }

    /// Identify `k ⊗ X` with `X` by removing trivial legs.
    pub fn drop_trivial(sig: &Signature) -> Self {
        let mut keep: Vec<usize> = (0..sig.len())
            .filter(|&i| !sig.leg(i).is_trivial())
            .collect();
        if keep.is_empty() {
            keep.push(0);
        }
        TensorMap {
            source: sig.clone(),
            target: Signature::new(keep.iter().map(|&i| sig.leg(i).clone()).collect()),
            op: Op::DropTrivial(keep),
        }
    }

    /// Linear identity changing the declared orientation of legs.
    pub fn reorient(sig: &Signature, orientations: &[Orientation]) -> Result<Self> {
        if orientations.len() != sig.len() {
            return Err(Error::SignatureMismatch(
                "orientation list length mismatch".into(),
            ));
        }
        Ok(TensorMap {
            source: sig.clone(),
            target: Signature::new(
                sig.legs()
                    .iter()
                    .zip(orientations)
                    .map(|(h, &o)| h.with_orientation(o))
                    .collect(),
            ),
            op: Op::Identity,
        })
    }

    /// Apply `steps` left to right.
    pub fn chain(steps: Vec<TensorMap>) -> Result<Self> {
        let first = steps
            .first()
            .ok_or_else(|| Error::Validation("empty composite".into()))?;
        for pair in steps.windows(2) {
            if pair[0].target != pair[1].source {
                return Err(Error::SignatureMismatch(format!(
                    "composite step maps into {} but next expects {}",
                    pair[0].target.name(),
                    pair[1].source.name()
                )));
            }
        }
        Ok(TensorMap {
            source: first.source.clone(),
            target: steps.last().unwrap().target.clone(),
            op: Op::Compose(steps),
        })
    }

    /// `next ∘ self`
    pub fn then(self, next: TensorMap) -> Result<Self> {
        TensorMap::chain(vec![self, next])
    }

    pub fn apply(&self, t: &TensorElement, trace: &Trace) -> TensorElement {
        match &self.op {
            Op::Identity => t.clone(),
            Op::Permute(perm) => t.permute(perm),
            Op::DropTrivial(keep) => t.map_terms(|legs, c| {
                Some((keep.iter().map(|&i| legs[i].clone()).collect(), c.clone()))
            }),
            Op::Lift { morphism, position } => {
                let mut out = TensorElement::zero();
                for (legs, c) in t.terms() {
                    let img = morphism.apply_word(&legs[*position], trace);
                    for (ilegs, d) in img.terms() {
                        let mut nl = legs[..*position].to_vec();
                        nl.extend(ilegs.iter().cloned());
                        nl.extend(legs[position + 1..].iter().cloned());
                        out.add_term(nl, c * d);
                    }
                }
                out
            }
            Op::Multiply { position, result } => {
                let mut out = TensorElement::zero();
                for (legs, c) in t.terms() {
                    let prod = result.mul_words(&legs[*position], &legs[position + 1], trace);
                    for (w, d) in prod.terms() {
                        let mut nl = legs[..*position].to_vec();
                        nl.push(w.clone());
                        nl.extend(legs[position + 2..].iter().cloned());
                        out.add_term(nl, c * d);
                    }
                }
                out
            }
            Op::Compose(steps) => {
                let mut cur = t.clone();
                for s in steps {
                    cur = s.apply(&cur, trace);
                }
                cur
            }
        }
    }
}

/// Result of comparing two routes of a diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Equal,
    Differ(Witness),
    Inconclusive(String),
}

fn legs_match(a: &Signature, b: &Signature) -> bool {
    a.len() == b.len()
        && a.legs()
            .iter()
            .zip(b.legs())
            .all(|(x, y)| x.same_algebra(y))
}

fn difference_degree(sig: &Signature, d: &TensorElement) -> u32 {
    d.terms()
        .map(|(legs, _)| {
            legs.iter()
                .zip(sig.legs())
                .map(|(w, h)| h.presentation().word_degree(w))
                .sum::<u32>()
        })
        .max()
        .unwrap_or(0)
}

/// Compare two tensor elements of the same leg algebras.
pub fn compare_elements(
    label: &str,
    sig: &Signature,
    lhs: &TensorElement,
    rhs: &TensorElement,
    trace: &Trace,
) -> Outcome {
    let diff = lhs.sub(rhs);
    if diff.is_zero() {
        Outcome::Equal
    } else if trace.limited() {
        Outcome::Inconclusive(format!("{label}: difference is bound-limited"))
    } else {
        Outcome::Differ(Witness {
            label: label.to_string(),
            normal_form: sig.render(&diff),
            degree: difference_degree(sig, &diff),
        })
    }
}

/// Compare two maps on the given inputs; the first difference wins.
pub fn compare_on_inputs(
    label: &str,
    lhs: &TensorMap,
    rhs: &TensorMap,
    inputs: &[(String, TensorElement)],
) -> Result<Outcome> {
    if !legs_match(&lhs.source, &rhs.source) || !legs_match(&lhs.target, &rhs.target) {
        return Err(Error::SignatureMismatch(format!(
            "{label}: routes {} -> {} and {} -> {} differ",
            lhs.source.name(),
            lhs.target.name(),
            rhs.source.name(),
            rhs.target.name()
        )));
    }
    let mut inconclusive = None;
    for (name, x) in inputs {
        let trace = Trace::new();
        let a = lhs.apply(x, &trace);
        let b = rhs.apply(x, &trace);
        match compare_elements(&format!("{label} on {name}"), &lhs.target, &a, &b, &trace) {
            Outcome::Equal => {}
            Outcome::Differ(w) => return Ok(Outcome::Differ(w)),
            Outcome::Inconclusive(m) => {
                inconclusive.get_or_insert(m);
            }
        }
    }
    Ok(inconclusive.map_or(Outcome::Equal, Outcome::Inconclusive))
}

/// Generators of a single handle as one-leg tensor inputs.
pub fn generator_inputs(h: &Handle) -> Vec<(String, TensorElement)> {
    let sig = Signature::single(h);
    let trace = Trace::new();
    h.presentation()
        .generators()
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let t = sig
                .pure(&[Element::letter(i as Letter)], &trace)
                .expect("single leg");
            (g.name.clone(), t)
        })
        .collect()
}

/// Compare two maps out of a single presented algebra on its generators;
/// sound when both are algebra morphisms.
pub fn compare_on_generators(label: &str, lhs: &TensorMap, rhs: &TensorMap) -> Result<Outcome> {
    if lhs.source.len() != 1 {
        return Err(Error::SignatureMismatch(format!(
            "{label}: generator comparison needs a single-leg source"
        )));
    }
    compare_on_inputs(label, lhs, rhs, &generator_inputs(lhs.source.leg(0)))
}
