use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use parking_lot::RwLock;

use crate::dense::Layout;
use crate::element::{Element, GeneratorId};
use crate::error::{Error, Result};
use crate::nt::{self, FactorLimits};
use crate::ordinal::Ordinal;
use crate::structure::{AlphaRecord, ChiRecord};

/// Search caps and limits used by a [`Context`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    /// Maximum number of candidates examined when searching for `α_u`.
    pub alpha_scan_cap: u64,
    /// Maximum number of Frobenius iterations in `degree`.
    pub degree_cap: u64,
    /// Largest field dimension over `F_p` handled by the dense engine.
    pub dense_limit: usize,
    /// Largest number of terms allowed in the sparse rewriting engine.
    pub sparse_term_cap: usize,
    pub factor_limits: FactorLimits,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            alpha_scan_cap: 10_000,
            degree_cap: 100_000,
            dense_limit: 4096,
            sparse_term_cap: 1 << 20,
            factor_limits: FactorLimits::default(),
        }
    }
}

/// Per-prime workspace: the characteristic plus memoized structure data.
///
/// All caches sit behind locks, so a `Context` can be shared between threads.
/// Locks are only held for single lookups or inserts, never across a
/// computation that may recurse into the same context.
pub struct Context {
    p: u32,
    config: Config,
    pub(crate) alphas: RwLock<HashMap<u32, AlphaRecord>>,
    pub(crate) chis: RwLock<HashMap<u64, ChiRecord>>,
    pub(crate) degrees: RwLock<HashMap<Element, u64>>,
    pub(crate) layouts: RwLock<HashMap<Vec<GeneratorId>, Arc<Layout>>>,
}

impl Context {
    pub fn new(p: u32) -> Result<Self> {
        Context::with_config(p, Config::default())
    }

    pub fn with_config(p: u32, config: Config) -> Result<Self> {
        if !nt::is_prime(p as u64) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        Ok(Context {
            p,
            config,
            alphas: RwLock::default(),
            chis: RwLock::default(),
            degrees: RwLock::default(),
            layouts: RwLock::default(),
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn config(&self) -> &Config {
        &self.config
    }

    pub fn ordinal_to_element(&self, o: &Ordinal) -> Element {
        Element::from_ordinal(o, self.p)
    }

    pub fn element_to_ordinal(&self, e: &Element) -> Ordinal {
        e.to_ordinal(self.p)
    }

    /// The element for the natural number `n`, read as an ordinal.
    pub fn natural(&self, n: u64) -> Element {
        self.ordinal_to_element(&Ordinal::from(n))
    }

    /// Every `α_u` computed or seeded so far, by increasing `u`.
    pub fn cached_alphas(&self) -> Vec<AlphaRecord> {
        let mut out: Vec<AlphaRecord> = self.alphas.read().values().cloned().collect();
        out.sort_by_key(|r| r.u);
        out
    }
}

impl fmt::Debug for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Context")
            .field("p", &self.p)
            .field("config", &self.config)
            .field("alphas", &self.alphas.read().len())
            .field("layouts", &self.layouts.read().len())
            .finish()
    }
}
