//! Enumeration and solver limits.
//!
//! Every exponential routine checks one of these limits and fails with
//! [`Error::CapExceeded`] instead of truncating. The defaults are the hard
//! maxima; overrides may only lower them.

use std::sync::{OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Ground-set size of a rank table.
    pub rank_table_n: usize,
    /// Number of vectors produced by one vector enumeration.
    pub vectors: u64,
    /// Order of GL(m, p) for row-equivalence enumeration.
    pub gl_order: u64,
    pub flats_n: usize,
    pub cuts_n: usize,
    pub c_n: usize,
    pub d_n: usize,
    pub cd_n: usize,
    pub cstar_n: usize,
    pub cstar_d_n: usize,
    pub cstar_dstar_n: usize,
    pub brute_n: usize,
    pub bw_n: usize,
    pub bd_n: usize,
    pub mtd_n: usize,
    pub cstar_decomp_n: usize,
    pub closure_n: usize,
    pub td_vertices: usize,
    pub graphic_edges: usize,
    pub split_degree: usize,
    /// Largest ground set in the exhaustive matroid families of the verifier.
    pub family_n: usize,
    /// Largest ground set for checks that only need the fast solvers.
    pub family_large_n: usize,
    pub matrix_m: usize,
    pub matrix_n: usize,
    pub graph_edges: usize,
    pub explore_m: usize,
    pub explore_n: usize,
    pub closure_budget: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            rank_table_n: 16,
            vectors: 1 << 20,
            gl_order: 20_000_000,
            flats_n: 10,
            cuts_n: 6,
            c_n: 16,
            d_n: 16,
            cd_n: 12,
            cstar_n: 14,
            cstar_d_n: 10,
            cstar_dstar_n: 6,
            brute_n: 6,
            bw_n: 10,
            bd_n: 7,
            mtd_n: 6,
            cstar_decomp_n: 7,
            closure_n: 7,
            td_vertices: 15,
            graphic_edges: 9,
            split_degree: 10,
            family_n: 5,
            family_large_n: 6,
            matrix_m: 3,
            matrix_n: 4,
            graph_edges: 6,
            explore_m: 2,
            explore_n: 4,
            closure_budget: 3,
        }
    }
}

impl Caps {
    /// Applies comma- or whitespace-separated `key=value` overrides.
    /// Raising a value above its hard maximum is rejected.
    pub fn with_overrides(&self, spec: &str) -> Result<Caps> {
        let mut value = serde_json::to_value(self).expect("caps serialize");
        let hard = serde_json::to_value(Caps::default()).expect("caps serialize");
        for item in spec.split(|c: char| c == ',' || c.is_whitespace()) {
            if item.is_empty() {
                continue;
            }
            let (k, v) =
                item.split_once('=').ok_or_else(|| Error::input(format!("cap override '{item}' is not key=value")))?;
            let k = k.trim().replace('-', "_");
            let v: u64 =
                v.trim().parse().map_err(|_| Error::input(format!("cap override '{item}' has a non-integer value")))?;
            let max =
                hard.get(&k).and_then(|x| x.as_u64()).ok_or_else(|| Error::input(format!("unknown cap '{k}'")))?;
            if v > max {
                return Err(Error::input(format!("cap '{k}' may only be lowered (hard maximum {max}, requested {v})")));
            }
            value[&k] = serde_json::json!(v);
        }
        serde_json::from_value(value).map_err(|e| Error::input(e.to_string()))
    }
}

fn slot() -> &'static RwLock<Caps> {
    static CAPS: OnceLock<RwLock<Caps>> = OnceLock::new();
    CAPS.get_or_init(|| RwLock::new(Caps::default()))
}

/// The process-wide caps in effect.
pub fn caps() -> Caps {
    slot().read().expect("caps lock").clone()
}

/// Replaces the process-wide caps.
pub fn set_caps(c: Caps) {
    *slot().write().expect("caps lock") = c;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_lower_only() {
        let c = Caps::default().with_overrides("brute_n=4, family-n=3").unwrap();
        assert_eq!(c.brute_n, 4);
        assert_eq!(c.family_n, 3);
        assert!(Caps::default().with_overrides("brute_n=40").is_err());
        assert!(Caps::default().with_overrides("nonsense=1").is_err());
        assert!(Caps::default().with_overrides("brute_n").is_err());
    }
}
