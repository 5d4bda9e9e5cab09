//! Verification harness: one registered check per claim, run over exhaustive families.
//!
//! Every check reports pass, fail or skipped (a cap was hit) per instance. Failures carry
//! the instance in the matroid JSON format so they can be reproduced alone. Reports contain
//! no timing data and are ordered by registry and instance order, so they do not depend on
//! the thread count.

mod checks;
pub mod explore;
pub mod families;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::caps::{caps, Caps};
use crate::error::{Error, Result};
use crate::io::MatroidSpec;

pub use explore::{explore_open_csdd_closure, explore_open_csdsd, ClosureProbe, CsdsdProbe};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check_id: String,
    pub instance: String,
    pub input: MatroidSpec,
    pub status: Status,
    pub details: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_id: String,
    pub claim: String,
    pub family: String,
    pub caps: Caps,
    pub pass_count: usize,
    pub fail_count: usize,
    pub skipped: usize,
    pub failures: Vec<CheckResult>,
    /// Every result, kept only for small families.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub table: Vec<CheckResult>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub pass_count: usize,
    pub fail_count: usize,
    pub skipped: usize,
    pub checks: Vec<CheckReport>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.fail_count == 0
    }
}

/// Settings shared by all checks of one run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Ctx {
    /// Seed for the randomly sampled families.
    pub seed: u64,
}

#[derive(Debug, Clone, Copy)]
pub struct CheckInfo {
    pub id: &'static str,
    pub claim: &'static str,
    pub family: fn(&Caps) -> String,
}

type Runner = fn(&Ctx) -> Result<Vec<CheckResult>>;

/// Reports list every result when the family has at most this many instances.
const TABLE_LIMIT: usize = 32;

pub fn registry() -> Vec<CheckInfo> {
    checks::REGISTRY.iter().map(|(info, _)| *info).collect()
}

pub fn run_check(id: &str, ctx: &Ctx) -> Result<CheckReport> {
    let (info, runner) = checks::REGISTRY
        .iter()
        .find(|(info, _)| info.id == id)
        .ok_or_else(|| Error::Unknown(format!("check id '{id}'")))?;
    let results = runner(ctx)?;
    let count = |s: Status| results.iter().filter(|r| r.status == s).count();
    let c = caps();
    Ok(CheckReport {
        check_id: info.id.to_string(),
        claim: info.claim.to_string(),
        family: (info.family)(&c),
        caps: c,
        pass_count: count(Status::Pass),
        fail_count: count(Status::Fail),
        skipped: count(Status::Skipped),
        failures: results.iter().filter(|r| r.status == Status::Fail).cloned().collect(),
        table: if results.len() <= TABLE_LIMIT { results } else { Vec::new() },
    })
}

/// Runs the given ids in order; "all" expands to the whole registry.
pub fn run_checks(ids: &[String], ctx: &Ctx) -> Result<VerifyReport> {
    let mut expanded: Vec<String> = Vec::new();
    for id in ids {
        if id == "all" {
            expanded.extend(registry().iter().map(|i| i.id.to_string()));
        } else if registry().iter().any(|i| i.id == id) {
            expanded.push(id.clone());
        } else {
            return Err(Error::Unknown(format!("check id '{id}'")));
        }
    }
    let mut seen = std::collections::HashSet::new();
    expanded.retain(|id| seen.insert(id.clone()));
    let checks = expanded.iter().map(|id| run_check(id, ctx)).collect::<Result<Vec<_>>>()?;
    Ok(VerifyReport {
        seed: ctx.seed,
        pass_count: checks.iter().map(|c| c.pass_count).sum(),
        fail_count: checks.iter().map(|c| c.fail_count).sum(),
        skipped: checks.iter().map(|c| c.skipped).sum(),
        checks,
    })
}

/// Evaluates `f` on every item in parallel, keeping input order.
///
/// `Ok((true, _))` passes, `Ok((false, _))` fails, a cap error skips and any other error fails.
pub(crate) fn run_cases<T, L, F>(id: &str, items: &[T], label: L, f: F) -> Vec<CheckResult>
where
    T: Sync,
    L: Fn(usize, &T) -> (String, MatroidSpec) + Sync,
    F: Fn(&T) -> Result<(bool, String)> + Sync,
{
    items
        .par_iter()
        .enumerate()
        .map(|(i, item)| {
            let (instance, input) = label(i, item);
            let (status, details) = match f(item) {
                Ok((true, d)) => (Status::Pass, d),
                Ok((false, d)) => (Status::Fail, d),
                Err(e) if e.is_cap() => (Status::Skipped, e.to_string()),
                Err(e) => (Status::Fail, format!("error: {e}")),
            };
            CheckResult { check_id: id.to_string(), instance, input, status, details }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_covers_required_ids() {
        let ids: Vec<&str> = registry().iter().map(|c| c.id).collect();
        for id in [
            "duality",
            "chain",
            "circuit-bounds",
            "bd-sandwich",
            "mtd-sandwich",
            "contraction-star",
            "closure-cstar",
            "closure-dstar",
            "closure-contrstar",
            "matrix-eq",
            "min-td",
            "gd-eq",
            "monotone",
            "incomparable",
            "fat-cycle",
            "k3n",
            "td2",
            "graph-3conn",
            "td-cd",
        ] {
            assert!(ids.contains(&id), "missing {id}");
        }
        let unique: std::collections::HashSet<_> = ids.iter().collect();
        assert_eq!(unique.len(), ids.len());
    }

    #[test]
    fn unknown_id_is_rejected() {
        assert!(matches!(run_checks(&["nope".to_string()], &Ctx::default()), Err(Error::Unknown(_))));
    }

    #[test]
    #[ignore]
    fn time_every_check() {
        for info in registry() {
            let t = std::time::Instant::now();
            let r = run_check(info.id, &Ctx::default()).unwrap();
            println!(
                "{:<18} pass {:>5} fail {:>3} skip {:>3} {:>8.2}s",
                info.id,
                r.pass_count,
                r.fail_count,
                r.skipped,
                t.elapsed().as_secs_f64()
            );
            for f in r.failures.iter().take(3) {
                println!("    {} {}", f.instance, f.details);
            }
        }
    }
}
