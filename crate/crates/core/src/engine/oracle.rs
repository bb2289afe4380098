//! Rewriting-free dimension count by exact linear algebra.

use std::collections::{BTreeMap, HashMap};

use super::element::{concat, Letter, Word};
use super::presentation::Presentation;
use crate::error::{Error, Result};
use crate::scalars::Scalar;

pub const DEFAULT_WORD_LIMIT: usize = 60_000;

fn words_up_to(p: &Presentation, degree: u32) -> Vec<Word> {
    let n = p.generators().len() as Letter;
    let mut out = vec![Word::new()];
    let mut frontier = vec![Word::new()];
    while let Some(w) = frontier.pop() {
        let d = p.word_degree(&w);
        for l in 0..n {
            if d + p.word_degree(&[l]) <= degree {
                let mut nw = w.clone();
                nw.push(l);
                out.push(nw.clone());
                frontier.push(nw);
            }
        }
    }
    out
}

/// Dimension of the span of words of degree at most `degree` modulo all
/// shifts `u * r * v` of the relations that stay within that degree.
pub fn bruteforce_dimension(p: &Presentation, degree: u32) -> Result<usize> {
    bruteforce_dimension_with_limit(p, degree, DEFAULT_WORD_LIMIT)
}

pub fn bruteforce_dimension_with_limit(
    p: &Presentation,
    degree: u32,
    word_limit: usize,
) -> Result<usize> {
    let mut words = words_up_to(p, degree);
    if words.len() > word_limit {
        return Err(Error::BudgetExceeded(format!(
            "{} words of degree <= {degree} exceed the oracle limit {word_limit}",
            words.len()
        )));
    }
    let order = p.order();
    words.sort_by(|a, b| order.cmp(a, b));
    let column: HashMap<Word, usize> = words
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, w)| (w, i))
        .collect();

    let mut pivots: HashMap<usize, BTreeMap<usize, Scalar>> = HashMap::new();
    for rel in p.relations() {
        let rel_deg = rel
            .element
            .terms()
            .map(|(w, _)| p.word_degree(w))
            .max()
            .unwrap_or(0);
        if rel_deg > degree {
            continue;
        }
        let room = degree - rel_deg;
        let shifts: Vec<&Word> = words.iter().filter(|w| p.word_degree(w) <= room).collect();
        for u in &shifts {
            for v in &shifts {
                if p.word_degree(u) + p.word_degree(v) > room {
                    continue;
                }
                let mut row = BTreeMap::new();
                for (m, c) in rel.element.terms() {
                    let w = concat(&[u, m, v]);
                    row.insert(column[&w], c.clone());
                }
                insert_row(&mut pivots, row);
            }
        }
    }
    Ok(words.len() - pivots.len())
}

fn insert_row(
    pivots: &mut HashMap<usize, BTreeMap<usize, Scalar>>,
    mut row: BTreeMap<usize, Scalar>,
) {
    while let Some((&lead, coef)) = row.iter().next_back() {
        match pivots.get(&lead) {
            Some(pivot) => {
                let factor = coef.clone();
                for (col, c) in pivot {
                    let updated = &row.get(col).cloned().unwrap_or_default() - &(&factor * c);
                    if updated.is_zero() {
                        row.remove(col);
                    } else {
                        row.insert(*col, updated);
                    }
                }
            }
            None => {
                let inv = coef.inv().expect("nonzero pivot");
                for c in row.values_mut() {
                    *c = &*c * &inv;
                }
                pivots.insert(lead, row);
                return;
            }
        }
    }
}
