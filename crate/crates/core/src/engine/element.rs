use std::collections::BTreeMap;

use smallvec::SmallVec;

use crate::scalars::Scalar;

/// Index of a generator inside its presentation.
pub type Letter = u16;

/// A monomial in the free algebra; the empty word is the unit.
pub type Word = SmallVec<[Letter; 8]>;

pub fn concat(parts: &[&[Letter]]) -> Word {
    let mut w = Word::new();
    for p in parts {
        w.extend_from_slice(p);
    }
    w
}

/// Finite linear combination of words with nonzero `Q(q)` coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<Word, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(Word::new())
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, Scalar::one())
    }

    pub fn letter(g: Letter) -> Self {
        Self::word(smallvec::smallvec![g])
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::term(Word::new(), c)
    }

    pub fn term(w: Word, c: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(w, c);
        e
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Element, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (w, d) in &other.terms {
            self.add_term(w.clone(), c * d);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, Scalar)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, w: &[Letter]) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        let mut out = Element::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> Element {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::from_int(-1));
        out
    }

    /// Product in the free algebra (word concatenation).
    pub fn mul(&self, other: &Element) -> Element {
        let mut out = Element::zero();
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                out.add_term(concat(&[a, b]), c * d);
            }
        }
        out
    }

    /// Largest word length appearing (0 for the zero element).
    pub fn max_len(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }
}

impl FromIterator<(Word, Scalar)> for Element {
    fn from_iter<I: IntoIterator<Item = (Word, Scalar)>>(iter: I) -> Self {
        let mut e = Element::zero();
        for (w, c) in iter {
            e.add_term(w, c);
        }
        e
    }
}
