use std::time::Instant;

use super::report::CheckResult;
use crate::constructions::{build_kashiwara, is_toral, BuildContext, CartanDatum};
use crate::engine::{bruteforce_dimension, Letter};
use crate::error::Result;
use crate::maps::{Outcome, Witness};

fn block(name: &str) -> u8 {
    if is_toral(name) {
        0
    } else if name.starts_with('f') {
        1
    } else {
        2
    }
}

/// Compare the normal-word count of `B_q` with the oracle at every degree up
/// to `degree`, and check that normal words are ordered as toral letters,
/// then `f`s, then `e′`s.
pub fn verify_basis(ctx: &BuildContext, c: &CartanDatum, degree: u32) -> Result<CheckResult> {
    let start = Instant::now();
    let h = build_kashiwara(ctx, c)?;
    let label = format!("B_q({}) basis up to degree {degree}", c.label());
    let sys = h.system();
    let p = sys.presentation();
    if sys.certified_degree().is_some_and(|d| d < degree) {
        let outcome = Outcome::Inconclusive(format!(
            "completion is certified only up to degree {}",
            sys.certified_degree().unwrap_or(0)
        ));
        return Ok(CheckResult::from_outcome(&label, "basis", outcome, 0));
    }
    let mut outcome = Outcome::Equal;
    for d in 0..=degree {
        let engine = sys.graded_dimension(d)?;
        let oracle = bruteforce_dimension(p, d)?;
        if engine != oracle {
            outcome = Outcome::Differ(Witness {
                label: format!("{label}: dimension at degree {d}"),
                normal_form: format!("engine {engine}, oracle {oracle}"),
                degree: d,
            });
            break;
        }
    }
    if outcome == Outcome::Equal {
        let bad = sys.irreducible_words(degree)?.into_iter().find(|w| {
            let blocks: Vec<u8> = w
                .iter()
                .map(|&l: &Letter| block(p.letter_name(l)))
                .collect();
            blocks.windows(2).any(|x| x[0] > x[1])
        });
        if let Some(w) = bad {
            outcome = Outcome::Differ(Witness {
                label: format!("{label}: normal word out of block order"),
                normal_form: p.render_word(&w),
                degree: p.word_degree(&w),
            });
        }
    }
    Ok(CheckResult::from_outcome(
        &label,
        "basis",
        outcome,
        start.elapsed().as_millis() as u64,
    ))
}
