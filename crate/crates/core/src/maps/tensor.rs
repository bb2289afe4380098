use std::collections::BTreeMap;

use super::handle::Signature;
use crate::engine::{Element, Trace, Word};
use crate::error::{Error, Result};
use crate::scalars::Scalar;

/// Linear combination of pure tensors of normal words, one word per leg.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorElement {
    terms: BTreeMap<Vec<Word>, Scalar>,
}

impl TensorElement {
    pub fn zero() -> Self {
        Self::default()
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

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &Scalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, legs: Vec<Word>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(legs);
        match entry {
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

    pub fn add_scaled(&mut self, other: &TensorElement, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (legs, d) in &other.terms {
            self.add_term(legs.clone(), c * d);
        }
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn sub(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::from_int(-1));
        out
    }

    pub fn scale(&self, c: &Scalar) -> TensorElement {
        let mut out = TensorElement::zero();
        out.add_scaled(self, c);
        out
    }

    /// Number of legs, if any term is present.
    pub fn arity(&self) -> Option<usize> {
        self.terms.keys().next().map(Vec::len)
    }

    /// Tensor product of the legs of `self` followed by those of `other`.
    pub fn tensor(&self, other: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                let mut legs = a.clone();
                legs.extend(b.iter().cloned());
                out.add_term(legs, c * d);
            }
        }
        out
    }

    /// Reorder legs: output leg `k` is input leg `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> TensorElement {
        let mut out = TensorElement::zero();
        for (legs, c) in &self.terms {
            out.add_term(perm.iter().map(|&i| legs[i].clone()).collect(), c.clone());
        }
        out
    }

    /// Map every term coefficient; terms mapping to zero disappear.
    pub fn map_terms<F>(&self, mut f: F) -> TensorElement
    where
        F: FnMut(&[Word], &Scalar) -> Option<(Vec<Word>, Scalar)>,
    {
        let mut out = TensorElement::zero();
        for (legs, c) in &self.terms {
            if let Some((l, d)) = f(legs, c) {
                out.add_term(l, d);
            }
        }
        out
    }
}

impl Signature {
    /// Pure tensor of arbitrary elements, each reduced in its leg.
    pub fn pure(&self, legs: &[Element], trace: &Trace) -> Result<TensorElement> {
        if legs.len() != self.len() {
            return Err(Error::SignatureMismatch(format!(
                "{} legs given for signature {}",
                legs.len(),
                self.name()
            )));
        }
        let mut acc = TensorElement::zero();
        acc.add_term(Vec::new(), Scalar::one());
        for (h, e) in self.legs().iter().zip(legs) {
            let nf = h.normal_form(e, trace);
            let mut next = TensorElement::zero();
            for (prefix, c) in &acc.terms {
                for (w, d) in nf.terms() {
                    let mut l = prefix.clone();
                    l.push(w.clone());
                    next.add_term(l, c * d);
                }
            }
            acc = next;
        }
        Ok(acc)
    }

    /// Re-reduce every leg of every term.
    pub fn normalize(&self, t: &TensorElement, trace: &Trace) -> TensorElement {
        let mut out = TensorElement::zero();
        for (legs, c) in t.terms() {
            let elems: Vec<Element> = legs.iter().map(|w| Element::word(w.clone())).collect();
            let p = self.pure(&elems, trace).expect("validated arity");
            out.add_scaled(&p, c);
        }
        out
    }

    /// `1 ⊗ ... ⊗ 1`
    pub fn unit(&self) -> TensorElement {
        let mut t = TensorElement::zero();
        if self.legs().iter().all(|h| !h.system().is_collapsed()) {
            t.add_term(vec![Word::new(); self.len()], Scalar::one());
        }
        t
    }

    /// Legwise product honoring each leg's orientation.
    pub fn mul(&self, a: &TensorElement, b: &TensorElement, trace: &Trace) -> TensorElement {
        let mut out = TensorElement::zero();
        for (la, ca) in a.terms() {
            for (lb, cb) in b.terms() {
                let mut acc = TensorElement::zero();
                acc.add_term(Vec::new(), ca * cb);
                for (i, h) in self.legs().iter().enumerate() {
                    let prod = h.mul_words(&la[i], &lb[i], trace);
                    let mut next = TensorElement::zero();
                    for (prefix, c) in acc.terms() {
                        for (w, d) in prod.terms() {
                            let mut l = prefix.clone();
                            l.push(w.clone());
                            next.add_term(l, c * d);
                        }
                    }
                    acc = next;
                    if acc.is_zero() {
                        break;
                    }
                }
                out.add_scaled(&acc, &Scalar::one());
            }
        }
        out
    }

    /// Check that every term has the right number of legs and only letters
    /// of the corresponding presentation.
    pub fn validate(&self, t: &TensorElement) -> Result<()> {
        for (legs, _) in t.terms() {
            if legs.len() != self.len() {
                return Err(Error::SignatureMismatch(format!(
                    "term with {} legs in signature {}",
                    legs.len(),
                    self.name()
                )));
            }
            for (w, h) in legs.iter().zip(self.legs()) {
                let n = h.presentation().generators().len();
                if w.iter().any(|&l| l as usize >= n) {
                    return Err(Error::SignatureMismatch(format!(
                        "leg uses a letter outside {}",
                        h.name()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Parse `[c]*(x)⊗(y) - (z)⊗(1)`; `@` is accepted in place of `⊗`.
    /// Single-leg signatures also accept a plain element.
    pub fn parse(&self, text: &str) -> Result<TensorElement> {
        let trace = Trace::new();
        if self.len() == 1 && !text.contains('(') {
            let e = self.leg(0).presentation().parse_element(text)?;
            return self.pure(&[e], &trace);
        }
        let text = text.replace('⊗', "@");
        let chars: Vec<char> = text.chars().collect();
        let err = |pos: usize, msg: &str| Error::Parse {
            location: format!("tensor '{text}' at offset {pos}"),
            message: msg.to_string(),
        };
        let mut out = TensorElement::zero();
        let mut pos = 0;
        let mut first = true;
        let skip = |pos: &mut usize| {
            while chars.get(*pos).is_some_and(|c| c.is_whitespace()) {
                *pos += 1;
            }
        };
        loop {
            skip(&mut pos);
            if pos >= chars.len() {
                if first {
                    return Err(err(pos, "empty tensor"));
                }
                break;
            }
            let mut sign = Scalar::one();
            match chars[pos] {
                '+' => pos += 1,
                '-' => {
                    sign = Scalar::from_int(-1);
                    pos += 1
                }
                _ if first => {}
                _ => return Err(err(pos, "expected '+' or '-'")),
            }
            first = false;
            skip(&mut pos);
            let mut coef = Scalar::one();
            if chars.get(pos) == Some(&'[') {
                let start = pos + 1;
                let mut depth = 0;
                while pos < chars.len() {
                    match chars[pos] {
                        '[' => depth += 1,
                        ']' => {
                            depth -= 1;
                            if depth == 0 {
                                break;
                            }
                        }
                        _ => {}
                    }
                    pos += 1;
                }
                if pos >= chars.len() {
                    return Err(err(pos, "unterminated '['"));
                }
                coef = chars[start..pos].iter().collect::<String>().parse()?;
                pos += 1;
            } else if chars.get(pos).is_some_and(|c| c.is_ascii_digit()) {
                let start = pos;
                while chars.get(pos).is_some_and(|c| c.is_ascii_digit()) {
                    pos += 1;
                }
                coef = chars[start..pos].iter().collect::<String>().parse()?;
            }
            skip(&mut pos);
            if chars.get(pos) == Some(&'*') {
                pos += 1;
                skip(&mut pos);
            }
            let mut legs = Vec::new();
            loop {
                skip(&mut pos);
                if chars.get(pos) != Some(&'(') {
                    return Err(err(pos, "expected '('"));
                }
                let start = pos + 1;
                let mut depth = 0;
                while pos < chars.len() {
                    match chars[pos] {
                        '(' => depth += 1,
                        ')' => {
                            depth -= 1;
                            if depth == 0 {
                                break;
                            }
                        }
                        _ => {}
                    }
                    pos += 1;
                }
                if pos >= chars.len() {
                    return Err(err(pos, "unterminated '('"));
                }
                let inner: String = chars[start..pos].iter().collect();
                pos += 1;
                let leg = legs.len();
                if leg >= self.len() {
                    return Err(Error::SignatureMismatch(format!(
                        "too many legs for signature {}",
                        self.name()
                    )));
                }
                legs.push(self.leg(leg).presentation().parse_element(&inner)?);
                skip(&mut pos);
                if chars.get(pos) == Some(&'@') {
                    pos += 1;
                } else {
                    break;
                }
            }
            let t = self.pure(&legs, &trace)?;
            out.add_scaled(&t, &(&sign * &coef));
        }
        Ok(out)
    }

    /// Deterministic rendering, terms in storage order.
    pub fn render(&self, t: &TensorElement) -> String {
        if t.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (legs, c)) in t.terms().enumerate() {
            let negative = c
                .numerator()
                .leading()
                .is_some_and(|l| l < &num_bigint::BigInt::from(0));
            let mag = if negative { -c } else { c.clone() };
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if !mag.is_one() {
                if mag.denominator().is_one() && mag.numerator().is_constant() {
                    out.push_str(&format!("{mag}*"));
                } else {
                    out.push_str(&format!("[{mag}]*"));
                }
            }
            let rendered: Vec<String> = legs
                .iter()
                .zip(self.legs())
                .map(|(w, h)| format!("({})", h.presentation().render_word(w)))
                .collect();
            out.push_str(&rendered.join("⊗"));
        }
        out
    }
}
