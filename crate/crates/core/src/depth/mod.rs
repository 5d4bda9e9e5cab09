//! Exact solvers for the eight contraction/deletion depth measures.
//!
//! Every measure shares the same shape: matroids with at most one element have depth 1,
//! disconnected matroids take the maximum over components, and connected ones pay 1 for a
//! step of the allowed kinds. Plain steps are solved by subset dynamic programming,
//! starred contractions by the equivalent bipartition recursion, starred deletions through
//! duality, and the doubly starred measure by bounded search over all transformations.

mod brute;
mod checks;
mod dp;
mod starred;
mod witness;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::caps::{caps, Caps};
use crate::error::{check_cap, Error, Result};
use crate::matroid::{Fingerprint, Mask, RankTable};

pub use brute::brute_depth;
pub use checks::{chain_check, circumference_bounds_check, BoundCheck};
pub use witness::{replay, Step, Witness, WitnessNode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Measure {
    #[serde(rename = "C")]
    C,
    #[serde(rename = "D")]
    D,
    #[serde(rename = "CD")]
    Cd,
    #[serde(rename = "CSTAR")]
    CStar,
    #[serde(rename = "DSTAR")]
    DStar,
    #[serde(rename = "CSTAR_D")]
    CStarD,
    #[serde(rename = "C_DSTAR")]
    CDStar,
    #[serde(rename = "CSTAR_DSTAR")]
    CStarDStar,
}

impl Measure {
    pub const ALL: [Measure; 8] = [
        Measure::C,
        Measure::D,
        Measure::Cd,
        Measure::CStar,
        Measure::DStar,
        Measure::CStarD,
        Measure::CDStar,
        Measure::CStarDStar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::C => "C",
            Measure::D => "D",
            Measure::Cd => "CD",
            Measure::CStar => "CSTAR",
            Measure::DStar => "DSTAR",
            Measure::CStarD => "CSTAR_D",
            Measure::CDStar => "C_DSTAR",
            Measure::CStarDStar => "CSTAR_DSTAR",
        }
    }

    /// Conventional abbreviation such as `csdd`.
    pub fn short(self) -> &'static str {
        match self {
            Measure::C => "cd",
            Measure::D => "dd",
            Measure::Cd => "cdd",
            Measure::CStar => "csd",
            Measure::DStar => "dsd",
            Measure::CStarD => "csdd",
            Measure::CDStar => "cdsd",
            Measure::CStarDStar => "csdsd",
        }
    }

    /// The measure μ' with μ(M) = μ'(M*).
    pub fn dual(self) -> Measure {
        match self {
            Measure::C => Measure::D,
            Measure::D => Measure::C,
            Measure::CStar => Measure::DStar,
            Measure::DStar => Measure::CStar,
            Measure::CStarD => Measure::CDStar,
            Measure::CDStar => Measure::CStarD,
            m => m,
        }
    }

    /// Allowed steps as (contract, delete, c*, d*).
    pub(crate) fn moves(self) -> (bool, bool, bool, bool) {
        match self {
            Measure::C => (true, false, false, false),
            Measure::D => (false, true, false, false),
            Measure::Cd => (true, true, false, false),
            Measure::CStar => (false, false, true, false),
            Measure::DStar => (false, false, false, true),
            Measure::CStarD => (false, true, true, false),
            Measure::CDStar => (true, false, false, true),
            Measure::CStarDStar => (false, false, true, true),
        }
    }

    pub fn cap(self, c: &Caps) -> usize {
        match self {
            Measure::C => c.c_n,
            Measure::D => c.d_n,
            Measure::Cd => c.cd_n,
            Measure::CStar | Measure::DStar => c.cstar_n,
            Measure::CStarD | Measure::CDStar => c.cstar_d_n,
            Measure::CStarDStar => c.cstar_dstar_n,
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        // Exact names first, then abbreviations ("cd" is c-depth, "CD" is cd-depth),
        // then case-insensitive names.
        let t = s.trim();
        let norm = t.to_ascii_uppercase().replace(['-', ' '], "_");
        let all = Measure::ALL.into_iter();
        let found = all
            .clone()
            .find(|m| m.name() == t)
            .or_else(|| all.clone().find(|m| m.short() == t))
            .or_else(|| all.clone().find(|m| m.name() == norm));
        found.ok_or_else(|| Error::input(format!("unknown measure '{s}'")))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub nodes: u64,
    pub cache_hits: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DepthResult {
    pub measure: Measure,
    pub value: u32,
    pub witness: Witness,
    pub stats: Stats,
}

type Cache = Mutex<HashMap<(Fingerprint, Measure), u32>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn check_measure_cap(m: &RankTable, mu: Measure) -> Result<()> {
    check_cap(&format!("{} ground set", mu.name()), m.n() as u64, mu.cap(&caps()) as u64)
}

/// The value of measure `mu` on `m`, memoized per labeled rank table for the whole process.
pub fn depth_value(m: &RankTable, mu: Measure) -> Result<u32> {
    check_measure_cap(m, mu)?;
    let key = (m.fingerprint(), mu);
    if let Some(&v) = cache().lock().expect("depth cache poisoned").get(&key) {
        return Ok(v);
    }
    let v = match mu {
        Measure::C | Measure::D | Measure::Cd => dp::ContractDelete::new(m, mu).value(),
        Measure::CStar => dp::Guts::new(m).value(),
        Measure::CStarD => dp::GutsDelete::new(m).value(),
        Measure::DStar | Measure::CDStar => return depth_value(&m.dual(), mu.dual()),
        Measure::CStarDStar => starred::value(m)?,
    };
    cache().lock().expect("depth cache poisoned").insert(key, v);
    Ok(v)
}

/// c*d-depth with one-element matroids valued by their rank, by the guts-delete recursion.
pub(crate) fn csdd_rank_based_value(m: &RankTable) -> u32 {
    dp::GutsDelete::rank_based(m).value()
}

/// The value of `mu` on `m` together with a replayable witness.
pub fn depth(m: &RankTable, mu: Measure) -> Result<DepthResult> {
    check_measure_cap(m, mu)?;
    let (on_dual, target, inner) = match mu {
        Measure::DStar | Measure::CDStar => (true, m.dual(), mu.dual()),
        _ => (false, m.clone(), mu),
    };
    let (root, stats) = match inner {
        Measure::C | Measure::D | Measure::Cd => {
            let mut s = dp::ContractDelete::new(&target, inner);
            (s.witness(), s.stats())
        }
        Measure::CStar => {
            let mut s = dp::Guts::new(&target);
            (s.witness(), s.stats())
        }
        Measure::CStarD => {
            let mut s = dp::GutsDelete::new(&target);
            (s.witness(), s.stats())
        }
        _ => starred::witness(&target)?,
    };
    let value = root.value;
    cache().lock().expect("depth cache poisoned").insert((m.fingerprint(), mu), value);
    Ok(DepthResult { measure: mu, value, witness: Witness { measure: mu, value, on_dual, root }, stats })
}

/// An optimal first bipartition of the c*-depth recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Split {
    pub a: Mask,
    pub b: Mask,
    pub lambda: u8,
}

/// The bipartition chosen at the root of an optimal c*-depth recursion of `m` (n ≥ 2).
pub fn cstar_split(m: &RankTable) -> Result<Split> {
    check_measure_cap(m, Measure::CStar)?;
    if m.n() < 2 {
        return Err(Error::input("a bipartition needs at least two elements"));
    }
    Ok(dp::Guts::new(m).root_split())
}

#[cfg(test)]
mod tests;
