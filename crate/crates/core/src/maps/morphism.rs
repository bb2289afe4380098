use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use super::handle::{Handle, Orientation, Signature};
use super::tensor::TensorElement;
use crate::engine::{Element, Letter, Trace, Word};
use crate::error::{Error, Result};

/// Evidence that an identity or relation fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub label: String,
    pub normal_form: String,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Verified,
    Failed(Witness),
    Inconclusive(String),
    Unchecked,
}

impl Certificate {
    pub fn is_verified(&self) -> bool {
        matches!(self, Certificate::Verified)
    }
}

/// Algebra morphism from a presented algebra (or its opposite) into a
/// tensor product, given by generator images.
pub struct Morphism {
    name: String,
    source: Handle,
    target: Signature,
    images: Vec<TensorElement>,
    images_limited: bool,
    certificate: Certificate,
    memo: Mutex<HashMap<Word, (TensorElement, bool)>>,
}

pub type MorphismRef = Arc<Morphism>;

impl Clone for Morphism {
    fn clone(&self) -> Self {
        Morphism {
            name: self.name.clone(),
            source: self.source.clone(),
            target: self.target.clone(),
            images: self.images.clone(),
            images_limited: self.images_limited,
            certificate: self.certificate.clone(),
            memo: Mutex::new(HashMap::new()),
        }
    }
}

impl std::fmt::Debug for Morphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Morphism({}: {} -> {}, {:?})",
            self.name,
            self.source.name(),
            self.target.name(),
            self.certificate
        )
    }
}

/// Build a morphism from generator images and certify it by reducing the
/// image of every source relation in the target.
pub fn define_morphism(
    name: &str,
    source: &Handle,
    target: &Signature,
    images: &[(&str, TensorElement)],
) -> Result<Morphism> {
    let mut m = unchecked_morphism(name, source, target, images)?;
    m.certificate = m.certify();
    Ok(m)
}

/// Same as [`define_morphism`] without the relation check.
pub fn unchecked_morphism(
    name: &str,
    source: &Handle,
    target: &Signature,
    images: &[(&str, TensorElement)],
) -> Result<Morphism> {
    let pres = source.presentation();
    let mut slots: Vec<Option<TensorElement>> = vec![None; pres.generators().len()];
    for (g, img) in images {
        let l = pres.letter(g)? as usize;
        target.validate(img)?;
        slots[l] = Some(img.clone());
    }
    let trace = Trace::new();
    let mut normalized = Vec::with_capacity(slots.len());
    for (i, slot) in slots.into_iter().enumerate() {
        let img = slot.ok_or_else(|| {
            Error::Validation(format!(
                "{name}: no image for generator '{}'",
                pres.generators()[i].name
            ))
        })?;
        normalized.push(target.normalize(&img, &trace));
    }
    Ok(Morphism {
        name: name.to_string(),
        source: source.clone(),
        target: target.clone(),
        images: normalized,
        images_limited: trace.limited(),
        certificate: Certificate::Unchecked,
        memo: Mutex::new(HashMap::new()),
    })
}

impl Morphism {
    pub fn identity(h: &Handle) -> Morphism {
        let target = Signature::single(h);
        let trace = Trace::new();
        let images = (0..h.presentation().generators().len())
            .map(|l| {
                target
                    .pure(&[Element::letter(l as Letter)], &trace)
                    .expect("single leg")
            })
            .collect();
        Morphism {
            name: format!("id_{}", h.name()),
            source: h.clone(),
            target,
            images,
            images_limited: trace.limited(),
            certificate: Certificate::Verified,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(&self, name: &str) -> Morphism {
        let mut m = self.clone();
        m.name = name.to_string();
        m
    }

    pub fn source(&self) -> &Handle {
        &self.source
    }

    pub fn target(&self) -> &Signature {
        &self.target
    }

    pub fn images(&self) -> &[TensorElement] {
        &self.images
    }

    pub fn image(&self, generator: &str) -> Result<&TensorElement> {
        let l = self.source.presentation().letter(generator)?;
        Ok(&self.images[l as usize])
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    pub fn is_verified(&self) -> bool {
        self.certificate.is_verified()
    }

    /// Image of the product of the letters of `w`, taken in the source's
    /// orientation.
    pub fn apply_word(&self, w: &[Letter], trace: &Trace) -> TensorElement {
        if self.images_limited {
            trace.mark();
        }
        if w.is_empty() {
            return self.target.unit();
        }
        if w.len() == 1 {
            return self.images[w[0] as usize].clone();
        }
        if let Some((t, limited)) = self.memo.lock().unwrap_or_else(|p| p.into_inner()).get(w) {
            if *limited {
                trace.mark();
            }
            return t.clone();
        }
        let local = Trace::new();
        let (prefix, last) = w.split_at(w.len() - 1);
        let head = self.apply_word(prefix, &local);
        let tail = &self.images[last[0] as usize];
        let result = match self.source.orientation() {
            Orientation::Straight => self.target.mul(&head, tail, &local),
            Orientation::Opposite => self.target.mul(tail, &head, &local),
        };
        if local.limited() {
            trace.mark();
        }
        self.memo
            .lock()
            .unwrap_or_else(|p| p.into_inner())
            .insert(Word::from_slice(w), (result.clone(), local.limited()));
        result
    }

    pub fn apply(&self, x: &Element, trace: &Trace) -> TensorElement {
        let mut out = TensorElement::zero();
        for (w, c) in x.terms() {
            out.add_scaled(&self.apply_word(w, trace), c);
        }
        out
    }

    fn certify(&self) -> Certificate {
        let pres = self.source.presentation();
        let mut inconclusive = None;
        for rel in pres.relations() {
            let trace = Trace::new();
            let img = self.apply(&rel.element, &trace);
            if img.is_zero() {
                continue;
            }
            if trace.limited() {
                inconclusive.get_or_insert_with(|| {
                    format!(
                        "{}: image of relation {} is bound-limited",
                        self.name, rel.label
                    )
                });
                continue;
            }
            let degree = rel
                .element
                .terms()
                .map(|(w, _)| pres.word_degree(w))
                .max()
                .unwrap_or(0);
            return Certificate::Failed(Witness {
                label: format!("{}: relation {}", self.name, rel.label),
                normal_form: self.target.render(&img),
                degree,
            });
        }
        match inconclusive {
            Some(msg) => Certificate::Inconclusive(msg),
            None => Certificate::Verified,
        }
    }

    /// `φ^op: A^op -> T^op` with the same images.
    pub fn opposite(&self) -> Morphism {
        Morphism {
            name: format!("{}^op", self.name),
            source: self.source.opposite(),
            target: self.target.opposite(),
            images: self.images.clone(),
            images_limited: self.images_limited,
            certificate: self.certificate.clone(),
            memo: Mutex::new(HashMap::new()),
        }
    }

    /// Same images viewed in a target with different leg orientations.
    pub fn retarget(&self, target: &Signature) -> Result<Morphism> {
        if target.len() != self.target.len()
            || !target
                .legs()
                .iter()
                .zip(self.target.legs())
                .all(|(a, b)| a.same_algebra(b))
        {
            return Err(Error::SignatureMismatch(format!(
                "{}: cannot retarget {} to {}",
                self.name,
                self.target.name(),
                target.name()
            )));
        }
        let mut m = self.clone();
        m.target = target.clone();
        m.certificate = m.certify();
        Ok(m)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (g, img) in self
            .source
            .presentation()
            .generators()
            .iter()
            .zip(&self.images)
        {
            let _ = writeln!(out, "{} ↦ {}", g.name, self.target.render(img));
        }
        out
    }
}

/// `f ∘ g` for `g` landing in a single leg equal to the source of `f`.
pub fn compose(f: &Morphism, g: &Morphism) -> Result<Morphism> {
    if g.target.len() != 1 || g.target.leg(0) != &f.source {
        return Err(Error::SignatureMismatch(format!(
            "cannot compose {} after {}: {} vs {}",
            f.name,
            g.name,
            f.source.name(),
            g.target.name()
        )));
    }
    let trace = Trace::new();
    let images = g
        .images
        .iter()
        .map(|img| {
            let mut out = TensorElement::zero();
            for (legs, c) in img.terms() {
                out.add_scaled(&f.apply_word(&legs[0], &trace), c);
            }
            out
        })
        .collect();
    let mut m = Morphism {
        name: format!("{}∘{}", f.name, g.name),
        source: g.source.clone(),
        target: f.target.clone(),
        images,
        images_limited: trace.limited() || g.images_limited,
        certificate: Certificate::Unchecked,
        memo: Mutex::new(HashMap::new()),
    };
    m.certificate = if f.is_verified() && g.is_verified() {
        Certificate::Verified
    } else {
        m.certify()
    };
    Ok(m)
}

/// Compare two morphisms on every generator.
pub fn equal_morphisms(f: &Morphism, g: &Morphism) -> Result<bool> {
    if f.source != g.source || f.target != g.target {
        return Err(Error::SignatureMismatch(format!(
            "{} and {} have different signatures",
            f.name, g.name
        )));
    }
    let equal = f.images == g.images;
    if !equal && (f.images_limited || g.images_limited) {
        return Err(Error::Inconclusive(format!(
            "{} vs {}: differing images are bound-limited",
            f.name, g.name
        )));
    }
    Ok(equal)
}
