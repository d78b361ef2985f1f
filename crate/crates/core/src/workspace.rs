//! Shared state for multi-algebra computations: one Kazhdan–Lusztig cache,
//! one Hall counter and the Schur algebras built on demand.

use std::collections::HashMap;
use std::sync::Arc;

use parking_lot::Mutex;
use serde::{Deserialize, Serialize};

use crate::hall::{HallCounter, DEFAULT_CAP_DIM};
use crate::hecke::KlCache;
use crate::schur::{SchurAlgebra, SchurError};

/// Size limits. Exceeding one is reported as an error.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest level `r` for which a Schur algebra is built.
    pub max_r: usize,
    /// Largest length of a longest double coset element.
    pub max_length: usize,
    /// Largest total dimension of a module in Hall counts.
    pub max_dim: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_r: 8,
            max_length: 40,
            max_dim: DEFAULT_CAP_DIM,
        }
    }
}

pub struct Workspace {
    caps: Caps,
    kl: Arc<KlCache>,
    hall: HallCounter,
    algebras: Mutex<HashMap<(usize, usize), Arc<SchurAlgebra>>>,
}

impl Default for Workspace {
    fn default() -> Self {
        Self::new(Caps::default())
    }
}

impl Workspace {
    pub fn new(caps: Caps) -> Self {
        Self::with_cache(caps, Arc::new(KlCache::new()))
    }

    pub fn with_cache(caps: Caps, kl: Arc<KlCache>) -> Self {
        Workspace {
            caps,
            kl,
            hall: HallCounter::new(caps.max_dim),
            algebras: Mutex::new(HashMap::new()),
        }
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn kl(&self) -> &Arc<KlCache> {
        &self.kl
    }

    pub fn hall(&self) -> &HallCounter {
        &self.hall
    }

    /// `𝒮_Δ(n, r)`, built on first use.
    pub fn algebra(&self, n: usize, r: usize) -> Result<Arc<SchurAlgebra>, SchurError> {
        if r > self.caps.max_r {
            return Err(SchurError::CapExceeded {
                what: "level r",
                value: r,
                cap: self.caps.max_r,
            });
        }
        let mut map = self.algebras.lock();
        if let Some(a) = map.get(&(n, r)) {
            return Ok(a.clone());
        }
        let alg = Arc::new(
            SchurAlgebra::new(n, r, self.kl.clone())?.with_max_length(self.caps.max_length),
        );
        map.insert((n, r), alg.clone());
        Ok(alg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebras_are_shared_and_capped() {
        let ws = Workspace::default();
        let a = ws.algebra(2, 2).unwrap();
        let b = ws.algebra(2, 2).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert!(matches!(
            ws.algebra(2, 9),
            Err(SchurError::CapExceeded { .. })
        ));
        assert!(matches!(ws.algebra(1, 2), Err(SchurError::TooSmall { .. })));
    }
}
