//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use matroid_depth::depth::{depth_value, Measure};
use matroid_depth::gf::FFMatrix;
use matroid_depth::graphs::{gen_cycle, gen_d, gen_fat_cycle, gen_k3n};
use matroid_depth::matrix_depth::{td_star_enumerated, td_star_formula};
use matroid_depth::theorems::explore::{explore_open_csdd_closure, explore_open_csdsd};
use matroid_depth::theorems::{run_check, CheckReport, Ctx};
use matroid_depth::RankTable;

type Outcome = Result<String, String>;

/// Runs the checks and requires each to have results, no failures and, unless
/// `allow_skips`, no instance skipped for caps.
fn checks(ids: &[&str], allow_skips: bool) -> Outcome {
    let mut parts = Vec::new();
    let mut problems = Vec::new();
    for id in ids {
        let r: CheckReport = run_check(id, &Ctx::default()).map_err(|e| format!("{id}: {e}"))?;
        parts.push(format!("{id} {}/{}", r.pass_count, r.pass_count + r.fail_count + r.skipped));
        if r.pass_count == 0 {
            problems.push(format!("{id}: no instance passed"));
        }
        if r.fail_count > 0 {
            let first = r.failures.first().map(|f| format!("{} {}", f.instance, f.details)).unwrap_or_default();
            problems.push(format!("{id}: {} failures, first: {first}", r.fail_count));
        }
        if !allow_skips && r.skipped > 0 {
            problems.push(format!("{id}: {} instances skipped for caps", r.skipped));
        }
    }
    if problems.is_empty() {
        Ok(parts.join(", "))
    } else {
        Err(problems.join("; "))
    }
}

fn value(m: &RankTable, mu: Measure) -> Result<u32, String> {
    depth_value(m, mu).map_err(|e| format!("{mu}: {e}"))
}

fn cycle(n: usize) -> Result<RankTable, String> {
    gen_cycle(n).and_then(|g| g.cycle_matroid()).map_err(|e| e.to_string())
}

fn numeric_claims() -> Outcome {
    let mut bad = Vec::new();
    for n in 3..=8 {
        let dd = value(&cycle(n)?, Measure::D)?;
        if dd != 2 {
            bad.push(format!("dd(C_{n}) = {dd}"));
        }
    }
    for i in 1..=3u32 {
        let cd = value(&cycle(1 << i)?, Measure::C)?;
        if cd < i {
            bad.push(format!("cd(C_{}) = {cd} < {i}", 1 << i));
        }
    }
    let graph = |r: matroid_depth::Result<matroid_depth::MultiGraph>| {
        r.and_then(|g| g.cycle_matroid()).map_err(|e| e.to_string())
    };
    let d42 = graph(gen_d(4, 2))?;
    let c42 = graph(gen_fat_cycle(4, 2))?;
    let (cdd, cdsd, csdd) = (value(&d42, Measure::Cd)?, value(&c42, Measure::CDStar)?, value(&c42, Measure::CStarD)?);
    if cdd > 3 {
        bad.push(format!("cdd(M(D_4,2)) = {cdd}"));
    }
    if cdsd > 3 {
        bad.push(format!("cdsd(M(C_4,2)) = {cdsd}"));
    }
    if csdd < 2 {
        bad.push(format!("csdd(M(C_4,2)) = {csdd}"));
    }
    for n in [3, 4] {
        let g = gen_k3n(n).map_err(|e| e.to_string())?;
        let td = g.tree_depth().map_err(|e| e.to_string())?;
        let dd = value(&g.cycle_matroid().map_err(|e| e.to_string())?, Measure::D)?;
        if td != 4 {
            bad.push(format!("td(K_3,{n}) = {td}"));
        }
        if (dd as usize) < n {
            bad.push(format!("dd(M(K_3,{n})) = {dd}"));
        }
    }
    let suite = checks(&["incomparable", "fat-cycle", "k3n", "td2"], false)?;
    if bad.is_empty() {
        Ok(format!("direct values ok; {suite}"))
    } else {
        Err(bad.join("; "))
    }
}

fn matrix_formula() -> Outcome {
    let suite = checks(&["min-td"], false)?;
    // Identity-like matrices exercise the loops-and-coloops branch.
    let mut special = 0;
    for (m, rows) in
        [(1, vec![vec![1]]), (2, vec![vec![1, 0], vec![0, 1]]), (3, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]])]
    {
        let a = FFMatrix::from_rows(2, m, &rows).map_err(|e| e.to_string())?;
        let f = td_star_formula(&a).map_err(|e| e.to_string())?;
        let e = td_star_enumerated(&a).map_err(|e| e.to_string())?;
        if !f.loops_and_coloops_only || f.formula != e {
            return Err(format!("I_{m}: formula {:?} enumerated {e:?}", f.formula));
        }
        special += 1;
    }
    Ok(format!("{suite}; {special} identity matrices on the special branch"))
}

fn explorers() -> Outcome {
    let probes = explore_open_csdsd(2, 2, 4).map_err(|e| e.to_string())?;
    let decided = probes.iter().filter(|p| p.equal.is_some()).count();
    if decided != probes.len() {
        return Err(format!("{} of {} matrices left undecided", probes.len() - decided, probes.len()));
    }
    let unequal = probes.iter().filter(|p| p.equal == Some(false)).count();
    let closure = explore_open_csdd_closure(3, 2).map_err(|e| e.to_string())?;
    Ok(format!(
        "csdsd: {} matrices, {unequal} with differing values; closure: {} matroids probed",
        probes.len(),
        closure.len()
    ))
}

fn determinism() -> Outcome {
    let run = |jobs: &str| -> Result<Vec<u8>, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_matroid-depth"))
            .args(["verify", "--check", "all", "--seed", "7", "--jobs", jobs])
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!("verify --jobs {jobs} exited with {}", out.status));
        }
        Ok(out.stdout)
    };
    let (a, b) = (run("1")?, run("4")?);
    if a == b {
        Ok(format!("{} bytes identical at 1 and 4 threads", a.len()))
    } else {
        Err("reports differ between 1 and 4 threads".into())
    }
}

fn main() {
    let criteria: Vec<(&str, Duration, Box<dyn Fn() -> Outcome>)> = vec![
        (
            "rank axioms on every derived matroid",
            Duration::from_secs(120),
            Box::new(|| checks(&["rank-axioms"], false)),
        ),
        (
            "solvers equal the definitions for all eight measures",
            Duration::from_secs(600),
            Box::new(|| checks(&["oracle"], false)),
        ),
        ("duality identities", Duration::from_secs(600), Box::new(|| checks(&["duality"], false))),
        (
            "depth chain, circuit bounds, branch-depth and tree-depth sandwiches",
            Duration::from_secs(600),
            Box::new(|| checks(&["chain", "circuit-bounds", "bd-sandwich", "mtd-sandwich"], true)),
        ),
        ("numeric claims on cycles, fat cycles and K_3,n", Duration::from_secs(300), Box::new(numeric_claims)),
        ("minimum matrix tree-depths match the formulas", Duration::from_secs(600), Box::new(matrix_formula)),
        (
            "matrix-level depths equal matroid-level depths",
            Duration::from_secs(600),
            Box::new(|| checks(&["matrix-eq", "representation"], false)),
        ),
        (
            "restriction closure and contraction*-depth decompositions",
            Duration::from_secs(600),
            Box::new(|| checks(&["closure-cstar", "contraction-star", "closure-dstar", "closure-contrstar"], false)),
        ),
        ("open-question probes run to completion", Duration::from_secs(600), Box::new(explorers)),
        ("verify reports are identical across thread counts", Duration::from_secs(600), Box::new(determinism)),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(s) if took > *budget => Err(format!("{s}; took {took:.1?}, budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(s) => println!("[PASS] {}. {name} ({took:.1?}): {s}", i + 1),
            Err(s) => {
                failed += 1;
                println!("[FAIL] {}. {name} ({took:.1?}): {s}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
