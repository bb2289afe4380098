use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::constructions::RuleCache;
use crate::engine::{CompletedSystem, Element, Letter, Presentation, Rule, Status, Word};
use crate::error::Result;
use crate::scalars::{Poly, Scalar};

pub const CACHE_DIR_ENV: &str = "QTORSOR_CACHE_DIR";
pub const ENGINE_VERSION: &str = concat!("qtorsor-", env!("CARGO_PKG_VERSION"), "-rules-1");

#[derive(Serialize, Deserialize)]
struct StoredTerm {
    word: Vec<Letter>,
    num: Vec<String>,
    den: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct StoredRule {
    lhs: Vec<Letter>,
    rhs: Vec<StoredTerm>,
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    engine_version: String,
    presentation_hash: String,
    name: String,
    precedence: Vec<i64>,
    degree_bound: u32,
    status: String,
    certified_degree: Option<u32>,
    collapsed: bool,
    rules: Vec<StoredRule>,
}

fn coeffs(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

fn poly(v: &[String]) -> Option<Poly> {
    v.iter()
        .map(|c| c.parse::<BigInt>().ok())
        .collect::<Option<Vec<_>>>()
        .map(Poly::from_coeffs)
}

/// Completed rule systems stored as `<sha256>.rules` JSON files.
#[derive(Clone, Debug)]
pub struct FileCache {
    dir: PathBuf,
}

impl FileCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(FileCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// File name for a presentation completed at `degree_bound`.
    pub fn key(p: &Presentation, degree_bound: u32) -> String {
        let mut h = Sha256::new();
        h.update(format!(
            "{ENGINE_VERSION}\n{}\n{}\n{:?}\n{degree_bound}\n",
            p.name(),
            p.content_hash(),
            p.precedence()
        ));
        hex::encode(h.finalize())
    }

    fn path(&self, p: &Presentation, degree_bound: u32) -> PathBuf {
        self.dir
            .join(format!("{}.rules", Self::key(p, degree_bound)))
    }

    fn decode(entry: CacheEntry, p: &Presentation, degree_bound: u32) -> Option<CompletedSystem> {
        if entry.engine_version != ENGINE_VERSION
            || entry.presentation_hash != p.content_hash()
            || entry.precedence != p.precedence()
            || entry.degree_bound != degree_bound
        {
            return None;
        }
        let mut rules = Vec::with_capacity(entry.rules.len());
        for r in entry.rules {
            let mut rhs = Element::zero();
            for t in r.rhs {
                let c = Scalar::new(poly(&t.num)?, poly(&t.den)?).ok()?;
                rhs.add_term(Word::from_vec(t.word), c);
            }
            rules.push(Rule {
                lhs: Word::from_vec(r.lhs),
                rhs,
            });
        }
        Some(CompletedSystem::from_parts(
            p.clone(),
            rules,
            degree_bound,
            Status::parse(&entry.status)?,
            entry.certified_degree,
            entry.collapsed,
        ))
    }
}

impl RuleCache for FileCache {
    fn load(&self, p: &Presentation, degree_bound: u32) -> Option<CompletedSystem> {
        let path = self.path(p, degree_bound);
        let text = fs::read_to_string(&path).ok()?;
        let entry: CacheEntry = match serde_json::from_str(&text) {
            Ok(e) => e,
            Err(e) => {
                log::warn!("ignoring unreadable cache file {}: {e}", path.display());
                return None;
            }
        };
        Self::decode(entry, p, degree_bound)
    }

    fn store(&self, s: &CompletedSystem) -> Result<()> {
        let p = s.presentation();
        let entry = CacheEntry {
            engine_version: ENGINE_VERSION.to_string(),
            presentation_hash: p.content_hash(),
            name: p.name().to_string(),
            precedence: p.precedence().to_vec(),
            degree_bound: s.degree_bound(),
            status: s.status().as_str().to_string(),
            certified_degree: s.certified_degree(),
            collapsed: s.is_collapsed(),
            rules: s
                .rules()
                .iter()
                .map(|r| StoredRule {
                    lhs: r.lhs.to_vec(),
                    rhs: r
                        .rhs
                        .terms()
                        .map(|(w, c)| StoredTerm {
                            word: w.to_vec(),
                            num: coeffs(c.numerator()),
                            den: coeffs(c.denominator()),
                        })
                        .collect(),
                })
                .collect(),
        };
        let path = self.path(p, s.degree_bound());
        let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
        fs::write(
            &tmp,
            serde_json::to_vec(&entry).map_err(std::io::Error::from)?,
        )?;
        fs::rename(&tmp, &path)?;
        log::debug!(
            "stored {} rules for {} in {}",
            s.rules().len(),
            p.name(),
            path.display()
        );
        Ok(())
    }
}
