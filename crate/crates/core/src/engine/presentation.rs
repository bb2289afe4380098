use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use super::element::{Element, Letter, Word};
use crate::error::{Error, Result};
use crate::scalars::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

/// A defining relation, understood as `element = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub label: String,
    pub element: Element,
}

/// Finitely presented associative algebra over `Q(q)`.
#[derive(Clone, Debug)]
pub struct Presentation {
    name: String,
    generators: Vec<Generator>,
    relations: Vec<Relation>,
    /// Rank per generator; larger rank compares larger in the word order.
    precedence: Vec<i64>,
    by_name: HashMap<String, Letter>,
}

impl Presentation {
    pub fn new(name: impl Into<String>) -> Self {
        Presentation {
            name: name.into(),
            generators: Vec::new(),
            relations: Vec::new(),
            precedence: Vec::new(),
            by_name: HashMap::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    /// Declare a generator of degree 1. Generators declared earlier rank
    /// higher unless [`Self::set_precedence`] overrides it.
    pub fn add_generator(&mut self, name: &str) -> Result<Letter> {
        self.add_generator_with_degree(name, 1)
    }

    pub fn add_generator_with_degree(&mut self, name: &str, degree: u32) -> Result<Letter> {
        if name.is_empty() {
            return Err(Error::Validation("generator name is empty".into()));
        }
        if degree == 0 {
            return Err(Error::Validation(format!(
                "generator '{name}' must have positive degree"
            )));
        }
        if self.by_name.contains_key(name) {
            return Err(Error::Validation(format!("duplicate generator '{name}'")));
        }
        let idx = Letter::try_from(self.generators.len())
            .map_err(|_| Error::Validation("too many generators".into()))?;
        self.generators.push(Generator {
            name: name.to_string(),
            degree,
        });
        self.by_name.insert(name.to_string(), idx);
        let n = self.generators.len() as i64;
        self.precedence = (0..n).map(|i| n - i).collect();
        Ok(idx)
    }

    /// Ranks per generator in declaration order.
    pub fn set_precedence(&mut self, ranks: Vec<i64>) -> Result<()> {
        if ranks.len() != self.generators.len() {
            return Err(Error::Validation(format!(
                "precedence has {} entries for {} generators",
                ranks.len(),
                self.generators.len()
            )));
        }
        self.precedence = ranks;
        Ok(())
    }

    /// Precedence from a list of names, highest first.
    pub fn set_precedence_by_names(&mut self, highest_first: &[&str]) -> Result<()> {
        if highest_first.len() != self.generators.len() {
            return Err(Error::Validation(
                "precedence must list every generator exactly once".into(),
            ));
        }
        let n = highest_first.len() as i64;
        let mut ranks = vec![0; self.generators.len()];
        for (i, name) in highest_first.iter().enumerate() {
            ranks[self.letter(name)? as usize] = n - i as i64;
        }
        self.set_precedence(ranks)
    }

    pub fn add_relation(&mut self, label: impl Into<String>, element: Element) -> Result<()> {
        let label = label.into();
        for (w, _) in element.terms() {
            if w.iter().any(|&l| l as usize >= self.generators.len()) {
                return Err(Error::Validation(format!(
                    "relation '{label}' uses an undeclared generator"
                )));
            }
        }
        self.relations.push(Relation { label, element });
        Ok(())
    }

    /// Parse and add a relation written in the element grammar.
    pub fn relation(&mut self, label: &str, text: &str) -> Result<()> {
        let e = self.parse_element(text)?;
        self.add_relation(label, e)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn precedence(&self) -> &[i64] {
        &self.precedence
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn has_generator(&self, name: &str) -> bool {
        self.by_name.contains_key(name)
    }

    pub fn gen(&self, name: &str) -> Result<Element> {
        Ok(Element::letter(self.letter(name)?))
    }

    pub fn letter_name(&self, l: Letter) -> &str {
        &self.generators[l as usize].name
    }

    pub fn order(&self) -> WordOrder {
        WordOrder {
            degrees: self.generators.iter().map(|g| g.degree).collect(),
            ranks: self.precedence.clone(),
        }
    }

    pub fn word_degree(&self, w: &[Letter]) -> u32 {
        w.iter().map(|&l| self.generators[l as usize].degree).sum()
    }

    pub fn render_word(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.iter()
            .map(|&l| self.letter_name(l))
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Render leading term first; coefficients other than integers are
    /// bracketed so the output parses back with [`Self::parse_element`].
    pub fn render(&self, e: &Element) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        let order = self.order();
        let mut terms: Vec<_> = e.terms().collect();
        terms.sort_by(|a, b| order.cmp(b.0, a.0));
        let mut out = String::new();
        for (i, (w, c)) in terms.iter().enumerate() {
            let (neg, mag) = split_sign(c);
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coef = render_coefficient(&mag);
            match (coef, w.is_empty()) {
                (None, true) => out.push('1'),
                (None, false) => out.push_str(&self.render_word(w)),
                (Some(c), true) => out.push_str(&c),
                (Some(c), false) => {
                    let _ = write!(out, "{c}*{}", self.render_word(w));
                }
            }
        }
        out
    }

    /// Parse `[scalar]*name*name - 2*name + 1` style expressions.
    pub fn parse_element(&self, text: &str) -> Result<Element> {
        ElementParser {
            chars: text.chars().collect(),
            pos: 0,
            text,
            pres: self,
        }
        .parse()
    }

    /// Stable content hash over generators, degrees, precedence and
    /// relations (name excluded).
    pub fn content_hash(&self) -> String {
        let mut h = Sha256::new();
        for (g, r) in self.generators.iter().zip(&self.precedence) {
            h.update(format!("gen {} {} {}\n", g.name, g.degree, r));
        }
        for rel in &self.relations {
            h.update(format!(
                "rel {} = {}\n",
                rel.label,
                self.render(&rel.element)
            ));
        }
        hex::encode(h.finalize())
    }
}

fn split_sign(c: &Scalar) -> (bool, Scalar) {
    let neg = c
        .numerator()
        .leading()
        .is_some_and(|l| l < &num_bigint::BigInt::from(0));
    if neg {
        (true, -c)
    } else {
        (false, c.clone())
    }
}

fn render_coefficient(c: &Scalar) -> Option<String> {
    if c.is_one() {
        None
    } else if c.denominator().is_one() && c.numerator().is_constant() {
        Some(c.to_string())
    } else {
        Some(format!("[{c}]"))
    }
}

/// Degree-lexicographic order: weighted degree first, then the leftmost
/// differing letter decides by precedence rank.
#[derive(Clone, Debug)]
pub struct WordOrder {
    degrees: Vec<u32>,
    ranks: Vec<i64>,
}

impl WordOrder {
    pub fn degree(&self, w: &[Letter]) -> u32 {
        w.iter().map(|&l| self.degrees[l as usize]).sum()
    }

    pub fn cmp(&self, a: &[Letter], b: &[Letter]) -> Ordering {
        self.degree(a).cmp(&self.degree(b)).then_with(|| {
            for (x, y) in a.iter().zip(b) {
                let o = self.ranks[*x as usize].cmp(&self.ranks[*y as usize]);
                if o != Ordering::Equal {
                    return o;
                }
            }
            a.len().cmp(&b.len())
        })
    }

    /// True when two distinct words compare equal (ties in precedence).
    pub fn ties(&self, a: &[Letter], b: &[Letter]) -> bool {
        a != b && self.cmp(a, b) == Ordering::Equal
    }

    /// Maximal word of an element and whether it is unique.
    pub fn leading<'a>(&self, e: &'a Element) -> Option<(&'a Word, &'a Scalar, bool)> {
        let mut best: Option<(&Word, &Scalar)> = None;
        let mut unique = true;
        for (w, c) in e.terms() {
            match best {
                None => best = Some((w, c)),
                Some((bw, _)) => match self.cmp(w, bw) {
                    Ordering::Greater => {
                        best = Some((w, c));
                        unique = true;
                    }
                    Ordering::Equal => unique = false,
                    Ordering::Less => {}
                },
            }
        }
        best.map(|(w, c)| (w, c, unique))
    }

    pub fn sort_key(&self, w: &[Letter]) -> (u32, Vec<i64>) {
        (
            self.degree(w),
            w.iter().map(|&l| self.ranks[l as usize]).collect(),
        )
    }
}

struct ElementParser<'a> {
    chars: Vec<char>,
    pos: usize,
    text: &'a str,
    pres: &'a Presentation,
}

impl ElementParser<'_> {
    fn err(&self, message: &str) -> Error {
        Error::Parse {
            location: format!("element '{}' at offset {}", self.text, self.pos),
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<Element> {
        let mut out = Element::zero();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                None if !first => break,
                None => return Err(self.err("empty expression")),
                Some('+') => {
                    self.pos += 1;
                    1
                }
                Some('-') => {
                    self.pos += 1;
                    -1
                }
                Some(_) if first => 1,
                Some(_) => return Err(self.err("expected '+' or '-'")),
            };
            first = false;
            let (w, c) = self.term()?;
            out.add_term(w, &c * &Scalar::from_int(sign));
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Word, Scalar)> {
        let mut coef = Scalar::one();
        let mut have_coef = false;
        match self.peek() {
            Some('[') => {
                self.pos += 1;
                let start = self.pos;
                let mut depth = 1;
                while let Some(&c) = self.chars.get(self.pos) {
                    if c == '[' {
                        depth += 1;
                    } else if c == ']' {
                        depth -= 1;
                        if depth == 0 {
                            break;
                        }
                    }
                    self.pos += 1;
                }
                if self.chars.get(self.pos) != Some(&']') {
                    return Err(self.err("unterminated '['"));
                }
                let inner: String = self.chars[start..self.pos].iter().collect();
                self.pos += 1;
                coef = inner.parse()?;
                have_coef = true;
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let digits: String = self.chars[start..self.pos].iter().collect();
                coef = digits.parse()?;
                have_coef = true;
            }
            _ => {}
        }
        let mut word = Word::new();
        if have_coef {
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                return Ok((word, coef));
            }
        }
        loop {
            self.skip_ws();
            let start = self.pos;
            while self
                .chars
                .get(self.pos)
                .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_' || *c == '\'')
            {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.err("expected generator name"));
            }
            let name: String = self.chars[start..self.pos].iter().collect();
            if name != "1" {
                word.push(self.pres.letter(&name)?);
            }
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((word, coef))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl2_like() -> Presentation {
        let mut p = Presentation::new("test");
        for g in ["e", "f", "t", "tinv"] {
            p.add_generator(g).unwrap();
        }
        p
    }

    #[test]
    fn parse_and_render_round_trip() {
        let p = sl2_like();
        let e = p
            .parse_element("e*f - [q^2]*f*e - 1 + [(q^2+1)/(q)]*t")
            .unwrap();
        assert_eq!(e.len(), 4);
        let text = p.render(&e);
        assert_eq!(p.parse_element(&text).unwrap(), e);
        assert!(text.starts_with("e*f"));
    }

    #[test]
    fn deglex_leftmost_letter_decides() {
        let p = sl2_like();
        let o = p.order();
        let w = |s: &str| -> Word { s.split('*').map(|n| p.letter(n).unwrap()).collect() };
        assert_eq!(o.cmp(&w("e*f"), &w("f*e")), Ordering::Greater);
        assert_eq!(o.cmp(&w("t*t"), &w("e")), Ordering::Greater);
        assert_eq!(o.cmp(&w("e*t"), &w("t*e")), Ordering::Greater);
    }

    #[test]
    fn rejects_unknown_and_duplicate_generators() {
        let mut p = sl2_like();
        assert!(p.add_generator("e").is_err());
        assert!(p.add_generator("").is_err());
        assert!(matches!(
            p.parse_element("e*x"),
            Err(Error::UnknownGenerator(_))
        ));
    }
}
