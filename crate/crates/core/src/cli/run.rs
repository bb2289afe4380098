use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::cache::{FileCache, CACHE_DIR_ENV};
use super::spec::{CheckKind, Datum, Override, SuiteKind, SuiteSpec};
use crate::constructions::{
    build_uhat, build_uprime, build_uq, check_sridharan_match, classical_limit, embed_uhat,
    kashiwara_bundle, kashiwara_presentation, mutually_reduce, nilpotent_pair_datum,
    sridharan_bundle, unified_limits, BuildContext, CartanDatum, GaloisBundle,
};
use crate::error::{Error, Result};
use crate::maps::{define_morphism, Outcome, TensorElement};
use crate::verifier::{
    check_comodules, check_complete_system, check_embedding, check_galois_system, check_hopf,
    check_membership, check_torsor, verify_basis, CheckReport, CheckResult, CheckStatus,
    VerifyOptions,
};

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Pass,
    Fail,
    Inconclusive,
    BudgetExceeded,
}

impl RunStatus {
    pub fn exit_code(self) -> i32 {
        match self {
            RunStatus::Pass => 0,
            RunStatus::Fail => 1,
            RunStatus::Inconclusive => 2,
            RunStatus::BudgetExceeded => 3,
        }
    }
}

/// Exit code for input errors (unreadable or invalid suite files).
pub const EXIT_INPUT_ERROR: i32 = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub report_version: u32,
    pub suite: String,
    pub datum: String,
    pub degree_bound: u32,
    pub conventions: BTreeMap<String, String>,
    pub results: Vec<CheckResult>,
    pub status: RunStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    /// Pretty JSON with every `millis` field zeroed, for comparisons that
    /// ignore timing.
    pub fn without_timing(&self) -> RunReport {
        let mut r = self.clone();
        for x in &mut r.results {
            x.millis = 0;
        }
        r
    }

    /// One-line summary, e.g. `kashiwara A1: pass (63 checks)`.
    pub fn status_line(&self) -> String {
        let status = serde_json::to_value(self.status).expect("status serializes");
        format!(
            "{} {}: {} ({} checks)",
            self.suite,
            self.datum,
            status.as_str().unwrap_or_default(),
            self.results.len()
        )
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub cache_dir: Option<PathBuf>,
    pub no_cache: bool,
    pub degree_bound: Option<u32>,
}

impl RunOptions {
    fn cache(&self) -> Result<Option<FileCache>> {
        if self.no_cache {
            return Ok(None);
        }
        let dir = self
            .cache_dir
            .clone()
            .or_else(|| std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from));
        dir.map(FileCache::new).transpose()
    }
}

fn conventions() -> BTreeMap<String, String> {
    [
        (
            "toral_action",
            "t_i X_j t_i^-1 = q^(±d_i a_ij) X_j, + for e-type, - for f-type",
        ),
        (
            "serre",
            "sum_k (-1)^k [n choose k]_i X_i^k X_j X_i^(n-k), n = 1 - a_ij",
        ),
        ("antipode", "S(f_i) = -f_i t_i, S'(f'_i) = -t_i^-1 f'_i"),
        ("mu_op", "legs of mu reversed, each leg orientation flipped"),
        (
            "normal_words",
            "(toral)(f-block)(e-block), degree-lexicographic",
        ),
        (
            "diagram_checks",
            "on generators, justified by morphism certificates, plus seeded random samples",
        ),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v.to_string()))
    .collect()
}

fn apply_overrides(b: GaloisBundle, overrides: &[Override]) -> Result<GaloisBundle> {
    let mut b = b;
    for o in overrides {
        let m = b
            .maps()
            .into_iter()
            .find(|(role, _)| *role == o.role)
            .map(|(_, m)| m.clone())
            .ok_or_else(|| Error::Validation(format!("override: unknown map role '{}'", o.role)))?;
        let gens = m.source().presentation().generators();
        for g in o.images.keys() {
            if !gens.iter().any(|x| &x.name == g) {
                return Err(Error::UnknownGenerator(format!(
                    "{g} (override of {})",
                    o.role
                )));
            }
        }
        let images = gens
            .iter()
            .zip(m.images())
            .map(|(g, img)| {
                let img = match o.images.get(&g.name) {
                    Some(text) => m.target().parse(text)?,
                    None => img.clone(),
                };
                Ok((g.name.as_str(), img))
            })
            .collect::<Result<Vec<(&str, TensorElement)>>>()?;
        let replaced = define_morphism(m.name(), m.source(), m.target(), &images)?;
        b = b.replace(&o.role, Arc::new(replaced))?;
    }
    Ok(b)
}

struct Runner<'a> {
    spec: &'a SuiteSpec,
    ctx: BuildContext,
    opts: VerifyOptions,
    bundle: Option<GaloisBundle>,
    results: Vec<CheckResult>,
}

impl Runner<'_> {
    fn cartan(&self) -> Result<&CartanDatum> {
        match &self.spec.datum {
            Datum::Cartan(c) => Ok(c),
            Datum::Lie { .. } => Err(Error::Validation("this check needs a Cartan datum".into())),
        }
    }

    fn bundle(&mut self) -> Result<&GaloisBundle> {
        if self.bundle.is_none() {
            let b = match &self.spec.datum {
                Datum::Cartan(c) => kashiwara_bundle(&self.ctx, c)?,
                Datum::Lie { lie, cocycle } => sridharan_bundle(&self.ctx, lie, cocycle)?,
            };
            self.bundle = Some(apply_overrides(b, &self.spec.overrides)?);
        }
        Ok(self.bundle.as_ref().expect("built above"))
    }

    fn push(&mut self, r: CheckReport) {
        self.results.extend(r.results);
    }

    fn outcome(
        &mut self,
        label: &str,
        anchor: &str,
        f: impl FnOnce(&Self) -> Result<Outcome>,
    ) -> Result<()> {
        let r = CheckResult::run(label, anchor, || f(self))?;
        self.results.push(r);
        Ok(())
    }

    fn run_check(&mut self, check: CheckKind) -> Result<()> {
        let opts = self.opts;
        match check {
            CheckKind::Hopf if self.spec.suite == SuiteKind::UqHopf => {
                let c = self.cartan()?.clone();
                for h in [
                    build_uq(&self.ctx, &c)?,
                    build_uhat(&self.ctx, &c)?,
                    build_uprime(&self.ctx, &c)?,
                ] {
                    self.push(check_hopf(&h, &opts)?);
                }
                let (iota, uh, u) = embed_uhat(&self.ctx, &c)?;
                self.push(check_embedding(&iota, &uh, &u, &opts)?);
            }
            CheckKind::Hopf => {
                let b = self.bundle()?.clone();
                self.push(check_hopf(&b.a, &opts)?);
                if !b.b.algebra.same_algebra(&b.a.algebra) {
                    self.push(check_hopf(&b.b, &opts)?);
                }
            }
            CheckKind::Torsor => {
                let b = self.bundle()?.clone();
                let tor = b
                    .torsor
                    .as_ref()
                    .ok_or_else(|| Error::Validation(format!("bundle {} has no torsor", b.name)))?;
                self.push(check_torsor(tor, &opts)?);
            }
            CheckKind::Comodule => {
                let b = self.bundle()?.clone();
                self.push(check_comodules(&b, &opts)?);
            }
            CheckKind::Galois => {
                let b = self.bundle()?.clone();
                self.push(check_galois_system(&b, &opts)?);
            }
            CheckKind::Complete => {
                let b = self.bundle()?.clone();
                self.push(check_complete_system(&b, &opts)?);
            }
            CheckKind::Membership => {
                let b = self.bundle()?.clone();
                self.push(check_membership(&b, &opts)?);
            }
            CheckKind::Basis => {
                let c = self.cartan()?.clone();
                let r = verify_basis(&self.ctx, &c, self.spec.basis_degree)?;
                self.results.push(r);
            }
            CheckKind::ClassicalLimit => {
                let c = self.cartan()?.clone();
                self.outcome(
                    "classical limit of B_q matches the Sridharan algebra of n⁺ ⊕ n⁻",
                    "classical.kashiwara",
                    |r| {
                        let (lie, coc) = nilpotent_pair_datum(&c)?;
                        let cl = classical_limit(&kashiwara_presentation(&c), None)?;
                        check_sridharan_match(&r.ctx, &cl, &lie, &coc)
                    },
                )?;
                self.outcome(
                    "classical limits of U′ and Û coincide",
                    "classical.uprime-uhat",
                    |r| {
                        let (a, b) = unified_limits(&c)?;
                        mutually_reduce(&r.ctx, &a, &b)
                    },
                )?;
            }
        }
        Ok(())
    }
}

/// Build the algebras a suite needs and run its checks in declared order.
///
/// Errors are input errors; budget exhaustion and bound-limited answers
/// are reported through [`RunStatus`].
pub fn run(spec: &SuiteSpec, options: &RunOptions) -> Result<RunReport> {
    let degree_bound = options.degree_bound.unwrap_or(spec.degree_bound);
    let mut ctx = BuildContext::new(degree_bound).with_budget(spec.budget);
    if let Some(cache) = options.cache()? {
        ctx = ctx.with_cache(Arc::new(cache));
    }
    let mut opts = VerifyOptions::default();
    if let Some(n) = spec.samples {
        opts.samples = n;
    }
    if let Some(s) = spec.seed {
        opts.seed = s;
    }
    let mut runner = Runner {
        spec,
        ctx,
        opts,
        bundle: None,
        results: Vec::new(),
    };
    let mut error = None;
    let mut budget = false;
    for &check in &spec.checks {
        log::info!("running {} checks", check.as_str());
        match runner.run_check(check) {
            Ok(()) => {}
            Err(Error::BudgetExceeded(m)) => {
                error = Some(format!("budget exceeded during {}: {m}", check.as_str()));
                budget = true;
                break;
            }
            Err(Error::Inconclusive(m)) => {
                runner.results.push(CheckResult::from_outcome(
                    &format!("{} checks", check.as_str()),
                    check.as_str(),
                    Outcome::Inconclusive(m),
                    0,
                ));
            }
            Err(e) => return Err(e),
        }
    }
    let worst = runner.results.iter().map(|r| r.status).max();
    let status = if budget {
        RunStatus::BudgetExceeded
    } else {
        match worst {
            Some(CheckStatus::Fail) => RunStatus::Fail,
            Some(CheckStatus::Inconclusive) => RunStatus::Inconclusive,
            _ => RunStatus::Pass,
        }
    };
    Ok(RunReport {
        report_version: REPORT_VERSION,
        suite: spec.suite.as_str().to_string(),
        datum: spec.datum.label(),
        degree_bound,
        conventions: conventions(),
        results: runner.results,
        status,
        error,
    })
}
