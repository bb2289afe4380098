use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::engine::{complete, Budget, CompletedSystem, Presentation};
use crate::error::Result;
use crate::maps::Handle;

/// Persistent store for completed systems.
pub trait RuleCache: Send + Sync {
    fn load(&self, p: &Presentation, degree_bound: u32) -> Option<CompletedSystem>;
    fn store(&self, s: &CompletedSystem) -> Result<()>;
}

/// Shared settings for the factories; completes each distinct presentation
/// once per context.
pub struct BuildContext {
    degree_bound: u32,
    budget: Budget,
    cache: Option<Arc<dyn RuleCache>>,
    built: Mutex<HashMap<String, Arc<CompletedSystem>>>,
}

impl BuildContext {
    pub fn new(degree_bound: u32) -> Self {
        BuildContext {
            degree_bound,
            budget: Budget::default(),
            cache: None,
            built: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_cache(mut self, cache: Arc<dyn RuleCache>) -> Self {
        self.cache = Some(cache);
        self
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn system(&self, p: &Presentation) -> Result<Arc<CompletedSystem>> {
        let key = format!("{}:{}", p.name(), p.content_hash());
        if let Some(s) = self
            .built
            .lock()
            .unwrap_or_else(|e| e.into_inner())
            .get(&key)
        {
            return Ok(s.clone());
        }
        let system = match self
            .cache
            .as_ref()
            .and_then(|c| c.load(p, self.degree_bound))
        {
            Some(s) => {
                log::debug!("{}: loaded {} rules from cache", p.name(), s.rules().len());
                s
            }
            None => {
                let s = complete(p, self.degree_bound, self.budget)?;
                if let Some(c) = &self.cache {
                    c.store(&s)?;
                }
                s
            }
        };
        let system = Arc::new(system);
        self.built
            .lock()
            .unwrap_or_else(|e| e.into_inner())
            .insert(key, system.clone());
        Ok(system)
    }

    pub fn handle(&self, p: &Presentation) -> Result<Handle> {
        Ok(Handle::new(self.system(p)?))
    }
}
