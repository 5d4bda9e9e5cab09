use std::io::Read;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use matroid_depth::decomposition::{
    bd_node_width, branch_decomposition, branch_decomposition_width, branch_depth_decomposition, build_cstar_decomp,
    csd, cstar_decomp_brute, matroid_tree_depth_decomposition, matroid_tree_width_decomposition,
    tree_decomposition_width, verify_branch_depth, verify_cstar_decomp, CStarDecomp, LeafTree, TreeDecomp,
};
use matroid_depth::depth::{depth, depth_value, replay, Measure, Witness};
use matroid_depth::extensions::{restriction_closure_witness, TraceStep};
use matroid_depth::graphs::named_graph;
use matroid_depth::io::{load_str, parse_field, Loaded, MatroidSpec};
use matroid_depth::matrix_depth::{matrix_depth, sparsify_report, MatrixDepthReport};
use matroid_depth::theorems::explore::{explore_open_csdd_closure, explore_open_csdsd};
use matroid_depth::theorems::{registry, run_checks, Ctx, VerifyReport};
use matroid_depth::{caps, Error, RankTable};

use crate::render::{self, table};
use crate::{Cli, Command, DecompKind, Failure, Format, Probe};

pub fn dispatch(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Depth { input, measures, matrix_level, no_witness } => {
            cmd_depth(cli, &input.input, measures, *matrix_level, *no_witness)
        }
        Command::Decompose { input, kind } => cmd_decompose(cli, &input.input, *kind),
        Command::CheckDecomp { decomposition } => cmd_check_decomp(cli, decomposition),
        Command::SparsifyTd { input } => cmd_sparsify(cli, &input.input),
        Command::Verify { checks, seed, list } => cmd_verify(cli, checks, *seed, *list),
        Command::Gen { name, params, text } => cmd_gen(cli, name, params, *text),
        Command::Explain { input, measure } => cmd_explain(cli, &input.input, measure),
        Command::Explore { probe } => cmd_explore(cli, probe),
    }
}

fn read_source(src: &str) -> Result<String, Failure> {
    if src == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Io(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(src).map_err(|e| Failure::Io(format!("{src}: {e}")))
}

/// Accepts a file path, `-`, inline JSON or matrix/graph text, or a fixture shorthand such
/// as `fano` or `cycle:n=5`.
fn load_input(src: &str) -> Result<Loaded, Failure> {
    let t = src.trim_start();
    if t.starts_with('{') || t.starts_with("gf") && t.contains(char::is_whitespace) || t.starts_with("graph ") {
        return Ok(load_str(src)?);
    }
    if src != "-" && !std::path::Path::new(src).exists() {
        if let Some(spec) = fixture_shorthand(src) {
            return Ok(spec.load()?);
        }
    }
    Ok(load_str(&read_source(src)?)?)
}

fn fixture_shorthand(src: &str) -> Option<MatroidSpec> {
    let (name, rest) = src.split_once(':').unwrap_or((src, ""));
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return None;
    }
    let params = parse_params(rest.split(',').filter(|s| !s.is_empty())).ok()?;
    Some(MatroidSpec::Named { name: name.to_string(), params })
}

fn parse_params<'a>(items: impl Iterator<Item = &'a str>) -> Result<serde_json::Value, Failure> {
    let mut map = serde_json::Map::new();
    for item in items {
        let (k, v) =
            item.split_once('=').ok_or_else(|| Error::input(format!("parameter '{item}' is not key=value")))?;
        let v: u64 = v.parse().map_err(|_| Error::input(format!("parameter '{item}' needs an integer value")))?;
        map.insert(k.to_string(), v.into());
    }
    Ok(serde_json::Value::Object(map))
}

fn emit<T: Serialize>(cli: &Cli, value: &T, human: impl FnOnce() -> String) -> Result<(), Failure> {
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(value).expect("reports serialize") + "\n",
        Format::Table => human(),
    };
    write_text(cli, &text)
}

fn write_text(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct DepthStats {
    nodes: u64,
    cache_hits: u64,
    wall_ms: u64,
}

#[derive(Serialize)]
struct DepthRecord {
    measure: Measure,
    /// `matroid` for the rank-function recursion, `matrix` for the field-level search.
    source: &'static str,
    value: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    replayed: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stats: Option<DepthStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Serialize)]
struct DepthReport {
    n: usize,
    rank: u8,
    results: Vec<DepthRecord>,
}

fn field_level(mu: Measure) -> bool {
    matches!(mu, Measure::CStar | Measure::DStar | Measure::CStarD | Measure::CDStar | Measure::CStarDStar)
}

fn cmd_depth(cli: &Cli, src: &str, names: &[String], matrix_level: bool, no_witness: bool) -> Result<(), Failure> {
    let measures: Vec<Measure> = if names.is_empty() {
        Measure::ALL.to_vec()
    } else {
        names.iter().map(|s| s.parse()).collect::<Result<_, Error>>()?
    };
    let loaded = load_input(src)?;
    let m = &loaded.matroid;
    let mut results = Vec::new();
    let mut capped: Vec<String> = Vec::new();
    for &mu in &measures {
        let start = Instant::now();
        match depth(m, mu) {
            Ok(r) => {
                let replayed = replay(m, &r.witness).map(|v| v == r.value).unwrap_or(false);
                results.push(DepthRecord {
                    measure: mu,
                    source: "matroid",
                    value: Some(r.value),
                    witness: (!no_witness).then_some(r.witness),
                    replayed: Some(replayed),
                    stats: Some(DepthStats {
                        nodes: r.stats.nodes,
                        cache_hits: r.stats.cache_hits,
                        wall_ms: start.elapsed().as_millis() as u64,
                    }),
                    error: None,
                });
            }
            Err(e) if e.is_cap() => {
                // Represented inputs still get a field-level value, labeled as such.
                let fallback = match &loaded.matrix {
                    Some(a) if field_level(mu) => Some(matrix_record(a, mu)),
                    _ => None,
                };
                match fallback {
                    Some(rec) if rec.value.is_some() => {
                        results.push(DepthRecord { error: Some(format!("matroid-level: {e}")), ..rec })
                    }
                    _ => {
                        capped.push(e.to_string());
                        results.push(DepthRecord {
                            measure: mu,
                            source: "matroid",
                            value: None,
                            witness: None,
                            replayed: None,
                            stats: None,
                            error: Some(e.to_string()),
                        });
                    }
                }
                continue;
            }
            Err(e) => return Err(e.into()),
        }
        if matrix_level && field_level(mu) {
            if let Some(a) = &loaded.matrix {
                let rec = matrix_record(a, mu);
                if let Some(e) = &rec.error {
                    capped.push(format!("{mu} field-level: {e}"));
                }
                results.push(rec);
            }
        }
    }
    let report = DepthReport { n: m.n(), rank: m.rank(), results };
    emit(cli, &report, || {
        let rows: Vec<Vec<String>> = report
            .results
            .iter()
            .map(|r| {
                let stat = |f: fn(&DepthStats) -> u64| r.stats.as_ref().map_or("-".into(), |s| f(s).to_string());
                vec![
                    r.measure.name().to_string(),
                    r.value.map_or_else(|| "capped".into(), |v| v.to_string()),
                    r.source.to_string(),
                    stat(|s| s.nodes),
                    stat(|s| s.cache_hits),
                    stat(|s| s.wall_ms),
                ]
            })
            .collect();
        format!("n = {}, rank = {}\n", report.n, report.rank)
            + &table(&["measure", "value", "source", "nodes", "cache_hits", "wall_ms"], &rows)
    })?;
    if !capped.is_empty() {
        return Err(Failure::Capped(capped.join("; ")));
    }
    Ok(())
}

fn matrix_record(a: &matroid_depth::FFMatrix, mu: Measure) -> DepthRecord {
    let start = Instant::now();
    let r = matrix_depth(a, mu);
    DepthRecord {
        measure: mu,
        source: "matrix",
        value: r.as_ref().ok().copied(),
        witness: None,
        replayed: None,
        stats: r.is_ok().then(|| DepthStats { nodes: 0, cache_hits: 0, wall_ms: start.elapsed().as_millis() as u64 }),
        error: r.err().map(|e| e.to_string()),
    }
}

/// A decomposition together with the matroid it decomposes; `check-decomp` reads it back.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompFile {
    pub kind: String,
    pub matroid: MatroidSpec,
    /// The parameter value the decomposition is claimed to attain.
    pub value: u32,
    /// The value recomputed from the decomposition by the verifier.
    pub certified: Option<u32>,
    pub verified: bool,
    pub decomposition: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn kind_name(k: DecompKind) -> &'static str {
    match k {
        DecompKind::BranchDepth => "branch-depth",
        DecompKind::BranchWidth => "branch-width",
        DecompKind::TreeDepth => "tree-depth",
        DecompKind::TreeWidth => "tree-width",
        DecompKind::Cstar => "cstar",
    }
}

fn kind_from_name(s: &str) -> Result<DecompKind, Failure> {
    use clap::ValueEnum;
    DecompKind::from_str(s, false).map_err(|_| Failure::Lib(Error::Unknown(format!("decomposition kind '{s}'"))))
}

fn to_value<T: Serialize>(t: &T) -> serde_json::Value {
    serde_json::to_value(t).expect("decompositions serialize")
}

fn from_value<T: for<'de> Deserialize<'de>>(v: &serde_json::Value) -> Result<T, Failure> {
    serde_json::from_value(v.clone()).map_err(|e| Failure::Lib(Error::Parse(e.to_string())))
}

fn cmd_decompose(cli: &Cli, src: &str, kind: DecompKind) -> Result<(), Failure> {
    let m = load_input(src)?.matroid;
    let (value, decomposition, mut note): (u32, Option<serde_json::Value>, Option<String>) = match kind {
        DecompKind::BranchDepth => {
            let (bd, t) = branch_depth_decomposition(&m)?;
            let note = t.is_none().then(|| "none, bd=0".to_string());
            (bd, t.as_ref().map(to_value), note)
        }
        DecompKind::BranchWidth => {
            if m.n() < 2 {
                (0, None, Some("none, bw=0".to_string()))
            } else {
                let (w, t) = branch_decomposition(&m)?;
                (w, Some(to_value(&t)), None)
            }
        }
        DecompKind::TreeDepth => {
            let (v, t) = matroid_tree_depth_decomposition(&m)?;
            (v, Some(to_value(&t)), None)
        }
        DecompKind::TreeWidth => {
            let (v, t) = matroid_tree_width_decomposition(&m)?;
            (v, Some(to_value(&t)), None)
        }
        DecompKind::Cstar => {
            let d = match cstar_decomp_brute(&m) {
                Ok((_, d)) => d,
                Err(e) if e.is_cap() => build_cstar_decomp(&m)?,
                Err(e) => return Err(e.into()),
            };
            let c = csd(&m)?;
            (d.depth() as u32, Some(to_value(&d)), Some(format!("c*-depth {c}")))
        }
    };
    let mut file = DecompFile {
        kind: kind_name(kind).to_string(),
        matroid: MatroidSpec::from_table(&m),
        value,
        certified: None,
        verified: false,
        decomposition,
        note: note.take(),
    };
    let (certified, ok) = certify(&file, &m, kind)?;
    file.certified = certified;
    file.verified = ok;
    emit(cli, &file, || decomp_table(&file))?;
    if !ok {
        return Err(Failure::Checks);
    }
    Ok(())
}

fn decomp_table(f: &DecompFile) -> String {
    let row = vec![
        f.kind.clone(),
        f.value.to_string(),
        f.certified.map_or("-".into(), |c| c.to_string()),
        if f.verified { "pass".into() } else { "FAIL".into() },
        f.note.clone().unwrap_or_default(),
    ];
    table(&["kind", "value", "certified", "verifier", "note"], &[row])
}

/// Recomputes the value attained by the decomposition in `f` and compares it with the claim.
fn certify(f: &DecompFile, m: &RankTable, kind: DecompKind) -> Result<(Option<u32>, bool), Failure> {
    let Some(d) = &f.decomposition else {
        return Ok((None, m.n() <= 1 && f.value == 0));
    };
    let certified = match kind {
        DecompKind::BranchDepth => {
            let t: LeafTree = from_value(d)?;
            let inner: Vec<usize> = (0..t.tree.len()).filter(|&v| t.tree.adjacency()[v].len() >= 2).collect();
            let width = inner.iter().map(|&v| bd_node_width(m, &t, v)).try_fold(0, |a, w| w.map(|w| a.max(w)))?;
            let k = width.max(t.tree.radius() as u32);
            if !verify_branch_depth(m, &t, k, k)? {
                return Ok((None, false));
            }
            k
        }
        DecompKind::BranchWidth => branch_decomposition_width(m, &from_value::<LeafTree>(d)?)?,
        DecompKind::TreeDepth => {
            let t: TreeDecomp = from_value(d)?;
            let w = tree_decomposition_width(m, &t)?.max(0) as u32;
            w.max(t.tree.radius() as u32)
        }
        DecompKind::TreeWidth => tree_decomposition_width(m, &from_value::<TreeDecomp>(d)?)?.max(0) as u32,
        DecompKind::Cstar => {
            let t: CStarDecomp = from_value(d)?;
            if !verify_cstar_decomp(m, &t)? {
                return Ok((None, false));
            }
            t.depth() as u32
        }
    };
    Ok((Some(certified), certified == f.value))
}

fn cmd_check_decomp(cli: &Cli, src: &str) -> Result<(), Failure> {
    let text = read_source(src)?;
    let f: DecompFile = serde_json::from_str(&text).map_err(|e| Failure::Lib(Error::Parse(e.to_string())))?;
    let kind = kind_from_name(&f.kind)?;
    let m = f.matroid.load()?.matroid;
    let (certified, ok) = certify(&f, &m, kind)?;
    let checked = DecompFile { certified, verified: ok, ..f };
    emit(cli, &checked, || decomp_table(&checked))?;
    if !ok {
        return Err(Failure::Checks);
    }
    Ok(())
}

fn cmd_sparsify(cli: &Cli, src: &str) -> Result<(), Failure> {
    let loaded = load_input(src)?;
    let a = loaded.matrix.ok_or_else(|| Error::input("sparsify-td needs a matrix input"))?;
    let r = sparsify_report(&a)?;
    emit(cli, &r, || sparsify_table(&r))
}

fn sparsify_table(r: &MatrixDepthReport) -> String {
    let e = |f: fn(&matroid_depth::matrix_depth::StarValues) -> u32| {
        r.enumerated.as_ref().map_or("-".to_string(), |v| f(v).to_string())
    };
    let rows = vec![
        vec![
            "primal".into(),
            r.td_p.to_string(),
            r.formula.td_p.to_string(),
            r.literal.td_p.to_string(),
            e(|v| v.td_p),
        ],
        vec!["dual".into(), r.td_d.to_string(), r.formula.td_d.to_string(), r.literal.td_d.to_string(), e(|v| v.td_d)],
        vec![
            "incidence".into(),
            r.td_i.to_string(),
            r.formula.td_i.to_string(),
            r.literal.td_i.to_string(),
            e(|v| v.td_i),
        ],
    ];
    let mut out = format!("GF({}) {}x{}  dd={} csd={} csdd={}\n", r.p, r.m, r.n, r.dd, r.csd, r.csdd);
    out +=
        &table(&["tree-depth", "this matrix", "minimum (formula)", "literal formula", "minimum (enumerated)"], &rows);
    for n in &r.notes {
        out += &format!("note: {n}\n");
    }
    out
}

fn cmd_verify(cli: &Cli, checks: &[String], seed: u64, list: bool) -> Result<(), Failure> {
    if list {
        let c = caps();
        let rows: Vec<Vec<String>> =
            registry().iter().map(|i| vec![i.id.to_string(), i.claim.to_string(), (i.family)(&c)]).collect();
        return write_text(cli, &table(&["id", "claim", "family"], &rows));
    }
    let report = run_checks(checks, &Ctx { seed })?;
    emit(cli, &report, || verify_table(&report))?;
    if !report.all_passed() {
        return Err(Failure::Checks);
    }
    Ok(())
}

fn verify_table(r: &VerifyReport) -> String {
    let mut rows: Vec<Vec<String>> = r
        .checks
        .iter()
        .map(|c| {
            vec![
                c.check_id.clone(),
                c.pass_count.to_string(),
                c.fail_count.to_string(),
                c.skipped.to_string(),
                c.family.clone(),
            ]
        })
        .collect();
    rows.push(vec![
        "total".into(),
        r.pass_count.to_string(),
        r.fail_count.to_string(),
        r.skipped.to_string(),
        String::new(),
    ]);
    let mut out = table(&["check", "pass", "fail", "skipped", "family"], &rows);
    for c in &r.checks {
        if !c.table.is_empty() {
            out += &format!("\n{}: {}\n", c.check_id, c.claim);
            let detail: Vec<Vec<String>> = c
                .table
                .iter()
                .map(|x| vec![x.instance.clone(), format!("{:?}", x.status).to_lowercase(), x.details.clone()])
                .collect();
            out += &table(&["instance", "status", "details"], &detail);
        }
    }
    for f in r.checks.iter().flat_map(|c| &c.failures) {
        out += &format!("FAIL {} {}: {}\n", f.check_id, f.instance, f.details);
    }
    out
}

fn cmd_gen(cli: &Cli, name: &str, params: &[String], text: bool) -> Result<(), Failure> {
    let params = parse_params(params.iter().map(String::as_str))?;
    // Graph fixtures are emitted without building their cycle matroids, which may exceed caps.
    let (spec, text_form) = match named_graph(name, &params) {
        Ok(g) => (MatroidSpec::from_graph(&g), Some(g.to_text())),
        Err(Error::Unknown(_)) => {
            let loaded = MatroidSpec::Named { name: name.to_string(), params }.load()?;
            match &loaded.matrix {
                Some(a) => (MatroidSpec::from_matrix(a), Some(a.to_text())),
                None => (MatroidSpec::from_table(&loaded.matroid), None),
            }
        }
        Err(e) => return Err(e.into()),
    };
    if text {
        let t = text_form.ok_or_else(|| Error::input(format!("fixture '{name}' has no text form; omit --text")))?;
        return write_text(cli, &t);
    }
    write_text(cli, &(serde_json::to_string_pretty(&spec).expect("specs serialize") + "\n"))
}

#[derive(Serialize)]
struct ClosureOut {
    added: usize,
    trace: Vec<TraceStep>,
    cd: Option<u32>,
}

#[derive(Serialize)]
struct Explanation {
    witness: Witness,
    #[serde(skip_serializing_if = "Option::is_none")]
    closure: Option<ClosureOut>,
}

fn cmd_explain(cli: &Cli, src: &str, measure: &str) -> Result<(), Failure> {
    let mu: Measure = measure.parse()?;
    let m = load_input(src)?.matroid;
    let r = depth(&m, mu)?;
    let closure = if mu == Measure::CStar {
        let w = restriction_closure_witness(&m)?;
        let cd = depth_value(&w.matroid, Measure::Cd).ok();
        Some(ClosureOut { added: w.matroid.n() - m.n(), trace: w.trace, cd })
    } else {
        None
    };
    let ex = Explanation { witness: r.witness, closure };
    emit(cli, &ex, || {
        let mut out = render::witness_tree(&ex.witness);
        if let Some(c) = &ex.closure {
            out += &format!(
                "\nrestriction closure: {} elements added by relatively free extensions, cd-depth {}\n",
                c.added,
                c.cd.map_or("capped".into(), |v| v.to_string())
            );
            for (i, s) in c.trace.iter().enumerate() {
                if let TraceStep::Rfext { x, y } = s {
                    out += &format!("  {}. extend freely in ({}, {})\n", i + 1, render::set(*x), render::set(*y));
                }
            }
        }
        out
    })
}

fn matrix_cell(spec: &MatroidSpec) -> String {
    match spec {
        MatroidSpec::Linear { matrix, .. } => {
            let rows: Vec<String> = matrix.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
            if rows.is_empty() {
                "[]".into()
            } else {
                format!("[{}]", rows.join(";"))
            }
        }
        MatroidSpec::Ranktable { n, ranks } => format!("n={n} ranks={ranks:?}"),
        other => format!("{other:?}"),
    }
}

fn cmd_explore(cli: &Cli, probe: &Probe) -> Result<(), Failure> {
    let opt = |v: Option<u32>| v.map_or("capped".to_string(), |v| v.to_string());
    match probe {
        Probe::Csdsd { field, rows, cols } => {
            let p = parse_field(field)?;
            let r = explore_open_csdsd(p, *rows, *cols)?;
            emit(cli, &r, || {
                let unequal = r.iter().filter(|x| x.equal == Some(false)).count();
                let rows: Vec<Vec<String>> = r
                    .iter()
                    .map(|x| {
                        vec![
                            matrix_cell(&x.matrix),
                            opt(x.csdsd_matrix),
                            opt(x.csdsd_abstract),
                            x.equal.map_or("unknown".into(), |e| e.to_string()),
                        ]
                    })
                    .collect();
                table(&["matrix", "field-level", "matroid-level", "equal"], &rows)
                    + &format!("{} matrices, {} with different values\n", r.len(), unequal)
            })
        }
        Probe::Closure { max_n, budget } => {
            let r = explore_open_csdd_closure(*max_n, *budget)?;
            emit(cli, &r, || {
                let rows: Vec<Vec<String>> = r
                    .iter()
                    .map(|x| {
                        vec![
                            matrix_cell(&x.matroid),
                            x.csdd.to_string(),
                            x.cdd.to_string(),
                            x.best_cdd.to_string(),
                            x.added.to_string(),
                            x.equal.to_string(),
                            x.truncated.to_string(),
                        ]
                    })
                    .collect();
                table(&["matroid", "csdd", "cdd", "best cdd", "added", "equal", "truncated"], &rows)
            })
        }
    }
}
