//! Process-wide enumeration caps.
//!
//! The CLI overrides these once at startup; library callers normally keep
//! the defaults.

use std::sync::RwLock;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest ring or module carrier that may be built.
    pub module_cap: usize,
    /// Largest number of ideals an enumeration may produce.
    pub ideal_cap: usize,
    /// Candidate matrices tried per size in the Fix-closure search.
    pub matrix_budget: u64,
    /// Memory allowed for the two Cayley tables of one ring.
    pub table_bytes: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            module_cap: 65536,
            ideal_cap: 4096,
            matrix_budget: 1 << 20,
            table_bytes: 1 << 31,
        }
    }
}

static LIMITS: RwLock<Option<Limits>> = RwLock::new(None);

pub fn get() -> Limits {
    LIMITS.read().ok().and_then(|l| *l).unwrap_or_default()
}

pub fn set(limits: Limits) {
    if let Ok(mut l) = LIMITS.write() {
        *l = Some(limits);
    }
}

pub(crate) fn check_module(what: &'static str, size: u128) -> Result<()> {
    let cap = get().module_cap as u128;
    if size > cap {
        return Err(Error::SizeCapExceeded { what, size, cap });
    }
    Ok(())
}
