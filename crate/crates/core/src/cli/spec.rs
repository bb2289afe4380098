use std::collections::BTreeMap;
use std::path::Path;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::constructions::{CartanDatum, CocycleSpec, LieDatum};
use crate::engine::Budget;
use crate::error::{Error, Result};

pub const DEFAULT_DEGREE_BOUND: u32 = 8;
pub const DEFAULT_BASIS_DEGREE: u32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteKind {
    Kashiwara,
    Sridharan,
    UqHopf,
    Custom,
}

impl SuiteKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SuiteKind::Kashiwara => "kashiwara",
            SuiteKind::Sridharan => "sridharan",
            SuiteKind::UqHopf => "uq_hopf",
            SuiteKind::Custom => "custom",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Hopf,
    Torsor,
    Comodule,
    Galois,
    Complete,
    Membership,
    Basis,
    ClassicalLimit,
}

impl CheckKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckKind::Hopf => "hopf",
            CheckKind::Torsor => "torsor",
            CheckKind::Comodule => "comodule",
            CheckKind::Galois => "galois",
            CheckKind::Complete => "complete",
            CheckKind::Membership => "membership",
            CheckKind::Basis => "basis",
            CheckKind::ClassicalLimit => "classical_limit",
        }
    }
}

#[derive(Clone, Debug)]
pub enum Datum {
    Cartan(CartanDatum),
    Lie { lie: LieDatum, cocycle: CocycleSpec },
}

impl Datum {
    pub fn label(&self) -> String {
        match self {
            Datum::Cartan(c) => c.label(),
            Datum::Lie { lie, .. } => format!("lie({})", lie.basis().join(",")),
        }
    }
}

/// Replacement generator images for one bundle map, given as tensor text
/// in the map's target.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Override {
    pub role: String,
    pub images: BTreeMap<String, String>,
}

/// A validated suite file.
#[derive(Clone, Debug)]
pub struct SuiteSpec {
    pub suite: SuiteKind,
    pub datum: Datum,
    pub degree_bound: u32,
    pub checks: Vec<CheckKind>,
    pub budget: Budget,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub basis_degree: u32,
    pub overrides: Vec<Override>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Coefficient {
    Int(i64),
    Text(String),
}

impl Coefficient {
    fn value(&self) -> Result<BigRational> {
        match self {
            Coefficient::Int(n) => Ok(BigRational::from_integer((*n).into())),
            Coefficient::Text(s) => s.trim().parse().map_err(|_| Error::Parse {
                location: format!("coefficient '{s}'"),
                message: "expected an integer or a fraction p/q".into(),
            }),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawCartan {
    Named(String),
    Matrix {
        matrix: Vec<Vec<i64>>,
        #[serde(default)]
        symmetrizers: Option<Vec<u32>>,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBracket {
    x: String,
    y: String,
    value: BTreeMap<String, Coefficient>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLie {
    basis: Vec<String>,
    #[serde(default)]
    brackets: Vec<RawBracket>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCocycleEntry {
    x: String,
    y: String,
    value: Coefficient,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawBudget {
    max_rules: Option<usize>,
    max_millis: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    suite: SuiteKind,
    cartan: Option<RawCartan>,
    lie: Option<RawLie>,
    cocycle: Option<Vec<RawCocycleEntry>>,
    degree_bound: Option<u32>,
    checks: Vec<CheckKind>,
    #[serde(default)]
    budget: RawBudget,
    samples: Option<usize>,
    seed: Option<u64>,
    basis_degree: Option<u32>,
    #[serde(default)]
    overrides: Vec<Override>,
}

fn cartan(raw: RawCartan) -> Result<CartanDatum> {
    match raw {
        RawCartan::Named(name) => CartanDatum::builtin(&name).ok_or_else(|| {
            Error::Validation(format!(
                "unknown Cartan type '{name}' (expected A1, A1xA1 or A2)"
            ))
        }),
        RawCartan::Matrix {
            matrix,
            symmetrizers,
        } => {
            let d = symmetrizers.unwrap_or_else(|| vec![1; matrix.len()]);
            CartanDatum::new(matrix, d)
        }
    }
}

fn lie(raw: RawLie, cocycle: Vec<RawCocycleEntry>) -> Result<Datum> {
    let brackets = raw
        .brackets
        .iter()
        .map(|b| {
            let value = b
                .value
                .iter()
                .map(|(z, c)| Ok((z.clone(), c.value()?)))
                .collect::<Result<Vec<_>>>()?;
            Ok((b.x.clone(), b.y.clone(), value))
        })
        .collect::<Result<Vec<_>>>()?;
    let lie = LieDatum::new(raw.basis, &brackets)?;
    let entries = cocycle
        .iter()
        .map(|e| Ok((e.x.clone(), e.y.clone(), e.value.value()?)))
        .collect::<Result<Vec<_>>>()?;
    let cocycle = CocycleSpec::new(&lie, &entries)?;
    Ok(Datum::Lie { lie, cocycle })
}

fn allowed(suite: SuiteKind, datum: &Datum, check: CheckKind) -> bool {
    use CheckKind::*;
    match (suite, datum, check) {
        (SuiteKind::UqHopf, _, c) => matches!(c, Hopf | Basis | ClassicalLimit),
        (_, Datum::Lie { .. }, c) => !matches!(c, Basis | ClassicalLimit),
        _ => true,
    }
}

/// Parse and validate a suite file held in memory; `origin` names it in
/// error locations.
pub fn parse_spec_str(text: &str, origin: &str) -> Result<SuiteSpec> {
    let raw: RawSpec = serde_json::from_str(text).map_err(|e| Error::Parse {
        location: format!("{origin} line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    let datum = match (raw.cartan, raw.lie) {
        (Some(_), Some(_)) => {
            return Err(Error::Validation(
                "give either 'cartan' or 'lie', not both".into(),
            ))
        }
        (None, None) => {
            return Err(Error::Validation(
                "missing datum: give 'cartan' or 'lie'".into(),
            ))
        }
        (Some(c), None) => {
            if raw.cocycle.is_some() {
                return Err(Error::Validation("'cocycle' requires a 'lie' datum".into()));
            }
            Datum::Cartan(cartan(c)?)
        }
        (None, Some(l)) => lie(l, raw.cocycle.unwrap_or_default())?,
    };
    match (raw.suite, &datum) {
        (SuiteKind::Kashiwara | SuiteKind::UqHopf, Datum::Lie { .. }) => {
            return Err(Error::Validation(format!(
                "suite '{}' needs a Cartan datum",
                raw.suite.as_str()
            )))
        }
        (SuiteKind::Sridharan, Datum::Cartan(_)) => {
            return Err(Error::Validation(
                "suite 'sridharan' needs a Lie datum".into(),
            ))
        }
        _ => {}
    }
    if raw.checks.is_empty() {
        return Err(Error::Validation("'checks' must not be empty".into()));
    }
    if let Some(c) = raw.checks.iter().find(|&&c| !allowed(raw.suite, &datum, c)) {
        return Err(Error::Validation(format!(
            "check '{}' does not apply to suite '{}' with datum {}",
            c.as_str(),
            raw.suite.as_str(),
            datum.label()
        )));
    }
    if raw.suite == SuiteKind::UqHopf && !raw.overrides.is_empty() {
        return Err(Error::Validation(
            "overrides apply to bundle suites only".into(),
        ));
    }
    let degree_bound = raw.degree_bound.unwrap_or(DEFAULT_DEGREE_BOUND);
    if degree_bound == 0 {
        return Err(Error::Validation("degree_bound must be positive".into()));
    }
    Ok(SuiteSpec {
        suite: raw.suite,
        datum,
        degree_bound,
        checks: raw.checks,
        budget: Budget {
            max_rules: raw.budget.max_rules,
            max_millis: raw.budget.max_millis,
        },
        samples: raw.samples,
        seed: raw.seed,
        basis_degree: raw.basis_degree.unwrap_or(DEFAULT_BASIS_DEGREE),
        overrides: raw.overrides,
    })
}

pub fn parse_spec(path: &Path) -> Result<SuiteSpec> {
    let text = std::fs::read_to_string(path)?;
    parse_spec_str(&text, &path.display().to_string())
}
