//! Probes for two open questions. They report what they find and assert nothing about it.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::families::{matrices, matroids_up_to};
use crate::caps::caps;
use crate::depth::{depth_value, Measure};
use crate::error::{check_cap, Result};
use crate::extensions::{enumerate_modular_cuts, extend_table, ExtensionSpec};
use crate::gf::FFMatrix;
use crate::io::MatroidSpec;
use crate::matrix_depth::matrix_depth;
use crate::matroid::RankTable;

/// Field-level against matroid-level c*d*-depth of one matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsdsdProbe {
    pub matrix: MatroidSpec,
    pub csdsd_matrix: Option<u32>,
    pub csdsd_abstract: Option<u32>,
    /// `None` when either side hit a cap.
    pub equal: Option<bool>,
}

/// Compares c*d*-depth of every matrix over GF(p) with m ≤ max_m, n ≤ max_n against the
/// c*d*-depth of its vector matroid.
pub fn explore_open_csdsd(p: u8, max_m: usize, max_n: usize) -> Result<Vec<CsdsdProbe>> {
    let c = caps();
    check_cap("explorer rows", max_m as u64, c.explore_m as u64)?;
    check_cap("explorer columns", max_n as u64, c.explore_n as u64)?;
    let mats = matrices(p, max_m, max_n)?;
    mats.par_iter()
        .map(|a: &FFMatrix| {
            let ok = |r: Result<u32>| match r {
                Ok(v) => Ok(Some(v)),
                Err(e) if e.is_cap() => Ok(None),
                Err(e) => Err(e),
            };
            let x = ok(matrix_depth(a, Measure::CStarDStar))?;
            let y = ok(a.vector_matroid().and_then(|m| depth_value(&m, Measure::CStarDStar)))?;
            Ok(CsdsdProbe {
                matrix: MatroidSpec::from_matrix(a),
                csdsd_matrix: x,
                csdsd_abstract: y,
                equal: x.zip(y).map(|(x, y)| x == y),
            })
        })
        .collect()
}

/// Least cd-depth found among matroids containing `matroid` as a restriction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureProbe {
    pub matroid: MatroidSpec,
    pub csdd: u32,
    pub cdd: u32,
    /// Smallest cdd seen over extensions by at most `budget` elements, including none.
    pub best_cdd: u32,
    pub added: usize,
    pub budget: usize,
    /// Some layer of the search was cut at the candidate limit.
    pub truncated: bool,
    pub equal: bool,
}

/// Candidates kept per layer of the extension search.
const LAYER_LIMIT: usize = 2000;

/// For each matroid with at most `max_n` elements, searches extensions by up to `budget`
/// elements for the least cd-depth and compares it with csdd. Since csdd is
/// restriction-monotone and at most cdd, the best value found is never below csdd.
pub fn explore_open_csdd_closure(max_n: usize, budget: usize) -> Result<Vec<ClosureProbe>> {
    let c = caps();
    check_cap("closure probe budget", budget as u64, c.closure_budget as u64)?;
    check_cap("closure probe ground set", max_n as u64, c.explore_n as u64)?;
    let fam: Vec<RankTable> = matroids_up_to(max_n)?;
    fam.par_iter().map(|m| probe_one(m, budget)).collect()
}

fn probe_one(m: &RankTable, budget: usize) -> Result<ClosureProbe> {
    let csdd = depth_value(m, Measure::CStarD)?;
    let cdd = depth_value(m, Measure::Cd)?;
    let (mut best, mut added, mut truncated) = (cdd, 0, false);
    let mut layer = vec![m.clone()];
    for step in 1..=budget {
        if best == csdd {
            break;
        }
        let mut next = BTreeSet::new();
        'outer: for x in &layer {
            for cut in enumerate_modular_cuts(x)? {
                next.insert(extend_table(x, &ExtensionSpec::ByCut(cut))?.canonical());
                if next.len() >= LAYER_LIMIT {
                    truncated = true;
                    break 'outer;
                }
            }
        }
        layer = next.into_iter().collect();
        for x in &layer {
            let v = depth_value(x, Measure::Cd)?;
            if v < best {
                best = v;
                added = step;
            }
        }
    }
    Ok(ClosureProbe {
        matroid: MatroidSpec::from_table(m),
        csdd,
        cdd,
        best_cdd: best,
        added,
        budget,
        truncated,
        equal: best == csdd,
    })
}
