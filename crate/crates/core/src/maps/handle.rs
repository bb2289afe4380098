use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::engine::{complete, Budget, CompletedSystem, Element, Presentation, Trace, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Straight,
    Opposite,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::Straight => Orientation::Opposite,
            Orientation::Opposite => Orientation::Straight,
        }
    }
}

/// A completed algebra viewed either straight or with reversed product.
#[derive(Clone)]
pub struct Handle {
    system: Arc<CompletedSystem>,
    key: Arc<str>,
    orientation: Orientation,
}

impl Handle {
    pub fn new(system: Arc<CompletedSystem>) -> Self {
        let key: Arc<str> = system.presentation().content_hash().into();
        Handle {
            system,
            key,
            orientation: Orientation::Straight,
        }
    }

    /// The ground field as an algebra with no generators.
    pub fn trivial() -> Self {
        static K: OnceLock<Arc<CompletedSystem>> = OnceLock::new();
        let sys = K.get_or_init(|| {
            Arc::new(
                complete(&Presentation::new("k"), 1, Budget::default())
                    .expect("empty presentation"),
            )
        });
        Handle::new(sys.clone())
    }

    pub fn is_trivial(&self) -> bool {
        self.system.presentation().generators().is_empty() && !self.system.is_collapsed()
    }

    pub fn system(&self) -> &CompletedSystem {
        &self.system
    }

    pub fn system_arc(&self) -> &Arc<CompletedSystem> {
        &self.system
    }

    pub fn presentation(&self) -> &Presentation {
        self.system.presentation()
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn opposite(&self) -> Self {
        self.with_orientation(self.orientation.flip())
    }

    pub fn with_orientation(&self, orientation: Orientation) -> Self {
        Handle {
            orientation,
            ..self.clone()
        }
    }

    /// Same underlying algebra, ignoring orientation.
    pub fn same_algebra(&self, other: &Handle) -> bool {
        self.key == other.key
    }

    pub fn name(&self) -> String {
        match self.orientation {
            Orientation::Straight => self.presentation().name().to_string(),
            Orientation::Opposite => format!("{}^op", self.presentation().name()),
        }
    }

    pub fn normal_form(&self, e: &Element, trace: &Trace) -> Element {
        self.system.normal_form_traced(e, trace)
    }

    /// Product `a * b` in this handle's orientation.
    pub fn mul(&self, a: &Element, b: &Element, trace: &Trace) -> Element {
        match self.orientation {
            Orientation::Straight => self.system.multiply(a, b, trace),
            Orientation::Opposite => self.system.multiply(b, a, trace),
        }
    }

    pub fn mul_words(&self, a: &Word, b: &Word, trace: &Trace) -> Element {
        self.mul(&Element::word(a.clone()), &Element::word(b.clone()), trace)
    }

    pub fn gen(&self, name: &str) -> crate::Result<Element> {
        self.presentation().gen(name)
    }

    pub fn parse(&self, text: &str) -> crate::Result<Element> {
        let e = self.presentation().parse_element(text)?;
        Ok(self.system.normal_form(&e))
    }
}

impl PartialEq for Handle {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key && self.orientation == other.orientation
    }
}

impl Eq for Handle {}

impl fmt::Debug for Handle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Handle({})", self.name())
    }
}

/// Ordered list of legs of a tensor product.
#[derive(Clone, PartialEq, Eq)]
pub struct Signature {
    legs: Vec<Handle>,
}

impl Signature {
    pub fn new(legs: Vec<Handle>) -> Self {
        assert!(!legs.is_empty(), "a signature has at least one leg");
        Signature { legs }
    }

    pub fn single(h: &Handle) -> Self {
        Signature::new(vec![h.clone()])
    }

    pub fn legs(&self) -> &[Handle] {
        &self.legs
    }

    pub fn len(&self) -> usize {
        self.legs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn leg(&self, i: usize) -> &Handle {
        &self.legs[i]
    }

    /// Every leg flipped.
    pub fn opposite(&self) -> Self {
        Signature::new(self.legs.iter().map(Handle::opposite).collect())
    }

    pub fn concat(&self, other: &Signature) -> Self {
        let mut legs = self.legs.clone();
        legs.extend(other.legs.iter().cloned());
        Signature::new(legs)
    }

    pub fn name(&self) -> String {
        self.legs
            .iter()
            .map(Handle::name)
            .collect::<Vec<_>>()
            .join(" ⊗ ")
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Signature({})", self.name())
    }
}
