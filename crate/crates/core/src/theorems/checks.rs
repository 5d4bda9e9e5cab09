//! The registered checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::families::{connected_multigraphs, is_simple, matrices, matroids_up_to};
use super::{run_cases, CheckInfo, CheckResult, Ctx, Runner};
use crate::caps::{caps, Caps};
use crate::decomposition::{
    branch_depth, branch_width, build_cstar_decomp, csd_to_treedecomp, cstar_decomp_min_height, matroid_tree_depth,
    matroid_tree_depth_decomposition, omega, tree_decomposition_width, verify_cstar_decomp,
};
use crate::depth::{brute_depth, chain_check, circumference_bounds_check, depth_value, Measure};
use crate::error::Result;
use crate::extensions::{
    cstar_transformations_with_cuts, enumerate_modular_cuts, extend_table, guts_contract, guts_split,
    restriction_closure_witness, ExtensionSpec,
};
use crate::gf::FFMatrix;
use crate::graphs::{gen_d, gen_fat_cycle, gen_k3n, gen_tree_plus_two_universal, MultiGraph};
use crate::io::MatroidSpec;
use crate::matrix_depth::{matrix_depth, td_star_enumerated, td_star_formula};
use crate::matroid::{elements, full_mask, submasks, Mask, RankTable};

use Measure::*;

macro_rules! check {
    ($id:literal, $claim:literal, $family:expr, $run:path) => {
        (CheckInfo { id: $id, claim: $claim, family: $family }, $run as Runner)
    };
}

pub(super) const REGISTRY: &[(CheckInfo, Runner)] = &[
    check!(
        "rank-axioms",
        "every matroid produced by duality, minors, extensions, coextensions and vector representation satisfies the rank axioms",
        |c| format!("matroids up to isomorphism with n <= {} and their derived matroids; GF(2) matrices m <= {}, n <= {}", c.family_n, c.matrix_m, c.matrix_n),
        rank_axioms
    ),
    check!(
        "oracle",
        "the fast solvers agree with the literal recursive definition for all eight measures",
        fam_small,
        oracle
    ),
    check!(
        "duality",
        "cd(M) = dd(M*), csd(M) = dsd(M*), csdd(M) = cdsd(M*), cdd(M) = cdd(M*), csdsd(M) = csdsd(M*)",
        |c| format!("matroids up to isomorphism with n <= {} (csdsd identity for n <= {})", c.family_large_n, c.family_n),
        duality
    ),
    check!(
        "chain",
        "csdsd <= csdd <= cdd, csdsd <= cdsd <= cdd, csd <= cd, dsd <= dd, csdsd <= cdd",
        fam_small,
        chain
    ),
    check!(
        "circuit-bounds",
        "log2 u* <= dd <= u*(u*+1)/2 and log2 u <= cd <= u(u+1)/2; log2 u <= csd <= u^2+1 and dually for dsd",
        fam_large,
        circuit_bounds
    ),
    check!("bd-sandwich", "bd(M) <= csdsd(M) <= 2 bd(M)^2 + 1", fam_small, bd_sandwich),
    check!("mtd-sandwich", "mtd(M) <= csd(M) <= mtd(M)^2 + 1", fam_small, mtd_sandwich),
    check!(
        "mtd-decomp",
        "the c*-depth recursion yields a tree-decomposition of width and radius at most csd (radius csd-1 when connected), and a tree-decomposition of width t and radius d gives csd <= t(d+1)+1",
        fam_small,
        mtd_decomp
    ),
    check!(
        "bw-selfdual",
        "branch-width is self-dual",
        fam_large,
        bw_selfdual
    ),
    check!(
        "contraction-star",
        "the least contraction*-depth k is csd-1, except k = csd = 1 for positive rank with only loops and coloops; the recursive builder reaches csd-1 otherwise",
        fam_small,
        contraction_star
    ),
    check!(
        "closure-cstar",
        "the least c-depth of a matroid containing M as a restriction equals csd(M): a relatively free closure attains it and no single or double extension goes below it",
        |c| format!("named fixtures and matroids up to isomorphism with n <= {}", c.family_n),
        closure_cstar
    ),
    check!(
        "closure-dstar",
        "the least d-depth of a matroid containing M as a contraction equals dsd(M)",
        |c| format!("named fixtures and matroids up to isomorphism with n <= {}", c.family_n),
        closure_dstar
    ),
    check!(
        "closure-contrstar",
        "contraction*-depth k and least c-depth l of a matroid containing M as a restriction satisfy k = l-1, unless M has positive rank and only loops and coloops, where k = l = 1",
        fam_small,
        closure_contrstar
    ),
    check!(
        "gd-eq",
        "the bipartition-or-delete recursion equals c*d-depth",
        fam_small,
        gd_eq
    ),
    check!(
        "guts-steps",
        "guts contraction of a bipartition (A,B) takes exactly lambda(A) c*-transformations and ends at M/B on A plus M/A on B",
        fam_small,
        guts_steps
    ),
    check!(
        "extensions",
        "a relatively free extension in a connected bispan (X,Y) adds a non-loop in cl(X) and cl(Y), and deleting it recovers M",
        fam_small,
        extensions
    ),
    check!(
        "commute",
        "a relatively free extension of M/Y lifts to a relatively free extension of M whose contraction by Y is the original",
        |c| format!("64 seeded samples from matroids with n <= {}", c.family_n),
        commute
    ),
    check!(
        "omega",
        "across a c*-transformation M -> M' != M: omega_M <= omega_M' + 1, with equality when the new element spans every complement, and omega_M >= omega_M' when it is spanned by a part",
        |c| format!("matroids up to isomorphism with n <= {}, all c*-transformations, up to 3 parts", c.family_n.min(4)),
        omega_check
    ),
    check!(
        "monotone",
        "csd, dsd and csdsd are minor-monotone and csdd is restriction-monotone; cdd, csdd and cdsd are not minor-monotone (fat cycle inside D graph)",
        |c| format!("matroids up to isomorphism with n <= {}, all single-element minors; D(4,2) and C(4,2)", c.family_n),
        monotone
    ),
    check!(
        "incomparable",
        "cycles have d-depth 2 and c-depth at least log2 of their length, and dually; fat cycles separate csdd from cdsd",
        |_| "cycles of length 3..8 and their duals; C(4,2) and its dual".to_string(),
        incomparable
    ),
    check!(
        "fat-cycle",
        "cdsd(M(C(i,j))) <= 3, cdd(M(D(i,j))) <= 3 and csdd(M(C(4,2))) >= 2",
        |_| "fat cycles and D graphs with at most 11 edges".to_string(),
        fat_cycle
    ),
    check!(
        "k3n",
        "td(K(3,n)) = 4 and dd(M(K(3,n))) >= n",
        |_| "K(3,3) and K(3,4)".to_string(),
        k3n
    ),
    check!(
        "td2",
        "td2(G) <= 2 cdd(M(G)) and td2(G) <= 2 csdsd(G); trees plus two universal vertices have td2 = 4",
        |c| format!("connected multigraphs with at most {} edges; trees on 2 and 3 vertices plus two universal vertices", c.graph_edges),
        td2
    ),
    check!(
        "graph-3conn",
        "csdsd(M(G)) <= cd(M(G)) on 3-connected graphs",
        |c| format!("3-connected simple graphs with at most {} edges", c.graph_edges),
        graph_3conn
    ),
    check!(
        "td-cd",
        "longest path with l vertices: ceil(log2 l) <= td <= l; 2-connected with circumference l: 1 + ceil(log2 l) <= td <= 1 + (l-2)^2 (l >= 4); hence cd <= f(td) and, when 2-connected, td <= g(cd)",
        |c| format!("connected simple graphs with at most {} edges", c.graph_edges),
        td_cd
    ),
    check!(
        "matrix-eq",
        "field-level csd, dsd, csdd and cdsd of a matrix equal those of its vector matroid",
        |c| format!("GF(2) matrices with m <= {}, n <= {}", c.matrix_m, c.matrix_n),
        matrix_eq
    ),
    check!(
        "representation",
        "field-level depths agree across representations over different fields",
        |_| "U(1,2), U(2,3) over GF(2), GF(3), GF(5); U(2,4) over GF(3), GF(5)".to_string(),
        representation
    ),
    check!(
        "min-td",
        "least primal, dual and incidence tree-depth over row-equivalent matrices are dd, csd-1 (csd for positive rank with only loops and coloops) and csdd+1",
        |c| format!("GF(2) matrices with m <= {}, n <= {}", c.matrix_m, c.matrix_n),
        min_td
    ),
];

fn fam_small(c: &Caps) -> String {
    format!("matroids up to isomorphism with n <= {}", c.family_n)
}

fn fam_large(c: &Caps) -> String {
    format!("matroids up to isomorphism with n <= {}", c.family_large_n)
}

fn label_m(i: usize, m: &RankTable) -> (String, MatroidSpec) {
    (format!("n{}#{}", m.n(), i), MatroidSpec::from_table(m))
}

fn label_named((name, m): &(String, RankTable)) -> (String, MatroidSpec) {
    (name.clone(), MatroidSpec::from_table(m))
}

fn label_a(i: usize, a: &FFMatrix) -> (String, MatroidSpec) {
    (format!("gf{} {}x{} #{}", a.p(), a.m(), a.n(), i), MatroidSpec::from_matrix(a))
}

fn label_g(i: usize, g: &MultiGraph) -> (String, MatroidSpec) {
    (format!("graph v{} e{} #{}", g.vertex_count(), g.edge_count(), i), MatroidSpec::from_graph(g))
}

fn d(m: &RankTable, mu: Measure) -> Result<u32> {
    depth_value(m, mu)
}

fn small() -> Result<Vec<RankTable>> {
    matroids_up_to(caps().family_n)
}

fn large() -> Result<Vec<RankTable>> {
    matroids_up_to(caps().family_large_n)
}

/// Collects failed conditions; the verdict passes when none failed.
#[derive(Default)]
struct Verdict {
    failed: Vec<String>,
    notes: Vec<String>,
}

impl Verdict {
    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failed.push(what());
        }
    }
    fn note(&mut self, s: String) {
        self.notes.push(s);
    }
    fn finish(self) -> Result<(bool, String)> {
        if self.failed.is_empty() {
            Ok((true, self.notes.join("; ")))
        } else {
            Ok((false, self.failed.join("; ")))
        }
    }
}

fn named_fixtures() -> Result<Vec<(String, RankTable)>> {
    let named = |name: &str, params: serde_json::Value| RankTable::named(name, &params);
    use serde_json::json;
    Ok(vec![
        ("U(1,2)".into(), RankTable::uniform(1, 2)?),
        ("U(2,4)".into(), RankTable::uniform(2, 4)?),
        ("U(3,5)".into(), RankTable::uniform(3, 5)?),
        ("U(3,6)".into(), RankTable::uniform(3, 6)?),
        ("free(3)".into(), RankTable::free(3)?),
        ("loops(2)".into(), RankTable::all_loops(2)?),
        ("M(C4)".into(), named("cycle", json!({"n": 4}))?),
        ("M(C5)".into(), named("cycle", json!({"n": 5}))?),
        ("M(C(3,2))".into(), named("fat_cycle", json!({"i": 3, "j": 2}))?),
        ("M(K4)".into(), named("complete", json!({"n": 4}))?),
        ("fano".into(), named("fano", json!({}))?),
    ])
}

fn rank_axioms(_: &Ctx) -> Result<Vec<CheckResult>> {
    let c = caps();
    let fam = small()?;
    let mut out = run_cases("rank-axioms", &fam, label_m, |m| {
        let mut derived = vec![m.dual()];
        for e in 0..m.n() {
            derived.push(m.delete(1 << e)?);
            derived.push(m.contract(1 << e)?);
        }
        if m.n() < c.family_n {
            for cut in enumerate_modular_cuts(m)? {
                let ext = extend_table(m, &ExtensionSpec::ByCut(cut))?;
                if ext.delete(1 << m.n())? != *m {
                    return Ok((false, "deleting the new element does not give back M".into()));
                }
                derived.push(ext);
            }
            for cut in enumerate_modular_cuts(&m.dual())? {
                let co = crate::extensions::coextend_table(m, &ExtensionSpec::ByCut(cut))?;
                if co.contract(1 << m.n())? != *m {
                    return Ok((false, "contracting the new element does not give back M".into()));
                }
                derived.push(co);
            }
        }
        for x in &derived {
            if let Err(e) = x.check_axioms() {
                return Ok((false, format!("{x:?}: {e}")));
            }
        }
        Ok((true, format!("{} derived matroids", derived.len())))
    });
    let mats = matrices(2, c.matrix_m, c.matrix_n)?;
    out.extend(run_cases("rank-axioms", &mats, label_a, |a| {
        let mut ms = vec![a.vector_matroid()?];
        for v in crate::gf::enumerate_vectors(a.p(), a.m())? {
            ms.push(a.contract_column(&v)?.vector_matroid()?);
        }
        for w in crate::gf::enumerate_vectors(a.p(), a.n())? {
            ms.push(a.coextend_row(&w)?.vector_matroid()?);
        }
        for x in &ms {
            if let Err(e) = x.check_axioms() {
                return Ok((false, format!("{x:?}: {e}")));
            }
        }
        Ok((true, format!("{} vector matroids", ms.len())))
    }));
    Ok(out)
}

fn oracle(_: &Ctx) -> Result<Vec<CheckResult>> {
    Ok(run_cases("oracle", &small()?, label_m, |m| {
        let mut v = Verdict::default();
        let mut values = Vec::new();
        for mu in Measure::ALL {
            let (fast, slow) = (d(m, mu)?, brute_depth(m, mu)?);
            v.require(fast == slow, || format!("{mu}: solver {fast}, definition {slow}"));
            values.push(format!("{}={fast}", mu.short()));
        }
        v.note(values.join(" "));
        v.finish()
    }))
}

fn duality(_: &Ctx) -> Result<Vec<CheckResult>> {
    let limit = caps().family_n;
    Ok(run_cases("duality", &large()?, label_m, |m| {
        let dual = m.dual();
        let mut v = Verdict::default();
        let mut pairs = vec![(C, D), (CStar, DStar), (CStarD, CDStar), (Cd, Cd)];
        if m.n() <= limit {
            pairs.push((CStarDStar, CStarDStar));
        }
        for (a, b) in pairs {
            let (x, y) = (d(m, a)?, d(&dual, b)?);
            v.require(x == y, || format!("{a}(M) = {x} but {b}(M*) = {y}"));
        }
        v.finish()
    }))
}

fn bound_report(checks: Vec<crate::depth::BoundCheck>) -> Result<(bool, String)> {
    let mut v = Verdict::default();
    for b in checks {
        v.require(b.holds, || format!("{}: {} vs {}", b.name, b.lhs, b.rhs));
    }
    v.finish()
}

fn chain(_: &Ctx) -> Result<Vec<CheckResult>> {
    Ok(run_cases("chain", &small()?, label_m, |m| bound_report(chain_check(m)?)))
}

fn circuit_bounds(_: &Ctx) -> Result<Vec<CheckResult>> {
    Ok(run_cases("circuit-bounds", &large()?, label_m, |m| bound_report(circumference_bounds_check(m)?)))
}

fn bd_sandwich(_: &Ctx) -> Result<Vec<CheckResult>> {
    Ok(run_cases("bd-sandwich", &small()?, label_m, |m| {
        let (bd, x) = (branch_depth(m)?, d(m, CStarDStar)?);
        Ok((bd <= x && x <= 2 * bd * bd + 1, format!("bd={bd} csdsd={x}")))
    }))
}

fn mtd_sandwich(_: &Ctx) -> Result<Vec<CheckResult>> {
    Ok(run_cases("mtd-sandwich", &small()?, label_m, |m| {
        let (mtd, x) = (matroid_tree_depth(m)?, d(m, CStar)?);
        Ok((mtd <= x && x <= mtd * mtd + 1, format!("mtd={mtd} csd={x}")))
    }))
}

fn mtd_decomp(_: &Ctx) -> Result<Vec<CheckResult>> {
    Ok(run_cases("mtd-decomp", &small()?, label_m, |m| {
        let csd = d(m, CStar)? as i64;
        let mut v = Verdict::default();
        let t = csd_to_treedecomp(m)?;
        let (w, r) = (tree_decomposition_width(m, &t)?, t.tree.radius() as i64);
        let rmax = if m.is_connected() { csd - 1 } else { csd };
        v.require(w <= csd && r <= rmax, || format!("built decomposition has width {w}, radius {r}, csd {csd}"));
        let (_, best) = matroid_tree_depth_decomposition(m)?;
        for (t, d) in [(w, r), (tree_decomposition_width(m, &best)?, best.tree.radius() as i64)] {
            // Peeling the root costs up to t steps and a single node up to t + 1, which gives
            // t(d+1)+1. The sharper t*d+1 fails already for a single node of rank t.
            v.require(csd <= t * (d + 1) + 1, || format!("csd {csd} exceeds t(d+1)+1 for t={t}, d={d}"));
            if csd > t * d + 1 {
                v.note(format!("csd {csd} > t*d+1 for (t,d)=({t},{d})"));
            }
        }
        let (bw, br) = (tree_decomposition_width(m, &best)?, best.tree.radius());
        v.note(format!("csd={csd} built=({w},{r}) optimal=({bw},{br})"));
        v.finish()
    }))
}

fn bw_selfdual(_: &Ctx) -> Result<Vec<CheckResult>> {
    Ok(run_cases("bw-selfdual", &large()?, label_m, |m| {
        let (a, b) = (branch_width(m)?, branch_width(&m.dual())?);
        Ok((a == b, format!("bw(M)={a} bw(M*)={b}")))
    }))
}

fn special_case(m: &RankTable) -> bool {
    m.rank() > 0 && m.only_loops_and_coloops()
}

fn contraction_star(_: &Ctx) -> Result<Vec<CheckResult>> {
    Ok(run_cases("contraction-star", &small()?, label_m, |m| {
        let (k, csd) = (cstar_decomp_min_height(m)?, d(m, CStar)?);
        let mut v = Verdict::default();
        if special_case(m) {
            v.require(k == 1 && csd == 1, || format!("loops and coloops only: k={k}, csd={csd}"));
        } else {
            v.require(k + 1 == csd, || format!("k={k}, csd={csd}"));
            let built = build_cstar_decomp(m)?;
            v.require(verify_cstar_decomp(m, &built)?, || "builder output is not a decomposition".into());
            v.require(built.depth() as u32 + 1 <= csd, || format!("builder height {} for csd {csd}", built.depth()));
        }
        v.note(format!("k={k} csd={csd}"));
        v.finish()
    }))
}

/// Every matroid reachable from `m` by up to `steps` single-element extensions.
fn extension_chains(m: &RankTable, steps: usize) -> Result<Vec<RankTable>> {
    let mut out = Vec::new();
    let mut layer = vec![m.clone()];
    for _ in 0..steps {
        let mut next = std::collections::BTreeSet::new();
        for x in &layer {
            for cut in enumerate_modular_cuts(x)? {
                next.insert(extend_table(x, &ExtensionSpec::ByCut(cut))?);
            }
        }
        layer = next.into_iter().collect();
        out.extend(layer.iter().cloned());
    }
    Ok(out)
}

fn closure_family() -> Result<Vec<(String, RankTable)>> {
    let mut items = named_fixtures()?;
    items.extend(small()?.into_iter().enumerate().map(|(i, m)| (format!("n{}#{}", m.n(), i), m)));
    Ok(items)
}

fn closure_cstar(_: &Ctx) -> Result<Vec<CheckResult>> {
    let fam = closure_family()?;
    Ok(run_cases(
        "closure-cstar",
        &fam,
        |_, x| label_named(x),
        |(_, m)| {
            let csd = d(m, CStar)?;
            let w = restriction_closure_witness(m)?;
            let cd = d(&w.matroid, C)?;
            let mut v = Verdict::default();
            v.require(w.matroid.restrict(m.full()) == *m, || "M is not a restriction of the witness".into());
            v.require(cd == csd, || format!("witness c-depth {cd}, csd {csd}"));
            // Lower bound: no extension chain within the budget has smaller c-depth.
            let steps = match m.n() {
                0..=3 => 2,
                4 => 1,
                _ => 0,
            };
            let chains = extension_chains(m, steps)?;
            for x in &chains {
                let c = d(x, C)?;
                v.require(csd <= c, || format!("extension with c-depth {c} below csd {csd}"));
            }
            v.note(format!("csd={csd} witness n={} extensions checked={}", w.matroid.n(), chains.len()));
            v.finish()
        },
    ))
}

fn closure_dstar(_: &Ctx) -> Result<Vec<CheckResult>> {
    let fam = closure_family()?;
    Ok(run_cases(
        "closure-dstar",
        &fam,
        |_, x| label_named(x),
        |(_, m)| {
            let dsd = d(m, DStar)?;
            let w = restriction_closure_witness(&m.dual())?;
            let n_plus = w.matroid.dual();
            let added = n_plus.full() & !m.full();
            let mut v = Verdict::default();
            v.require(n_plus.contract(added)? == *m, || "M is not a contraction of the witness".into());
            let dd = d(&n_plus, D)?;
            v.require(dd == dsd, || format!("witness d-depth {dd}, dsd {dsd}"));
            v.note(format!("dsd={dsd}"));
            v.finish()
        },
    ))
}

fn closure_contrstar(_: &Ctx) -> Result<Vec<CheckResult>> {
    Ok(run_cases("closure-contrstar", &small()?, label_m, |m| {
        let k = cstar_decomp_min_height(m)?;
        let l = d(&restriction_closure_witness(m)?.matroid, C)?;
        let ok = if special_case(m) { k == 1 && l == 1 } else { k + 1 == l };
        Ok((ok, format!("k={k} l={l}")))
    }))
}

fn gd_eq(_: &Ctx) -> Result<Vec<CheckResult>> {
    Ok(run_cases("gd-eq", &small()?, label_m, |m| {
        let (gd, x) = (d(m, CStarD)?, brute_depth(m, CStarD)?);
        Ok((gd == x, format!("gd={gd} csdd={x}")))
    }))
}

/// Bipartitions (A, B) with the lowest element in A and both sides nonempty.
fn bipartitions(m: &RankTable) -> Vec<(Mask, Mask)> {
    let full = m.full();
    (1..full).filter(|a| a & 1 == 1).map(|a| (a, full & !a)).collect()
}

fn guts_steps(_: &Ctx) -> Result<Vec<CheckResult>> {
    Ok(run_cases("guts-steps", &small()?, label_m, |m| {
        let mut v = Verdict::default();
        for (a, b) in bipartitions(m) {
            let g = guts_contract(m, a, b)?;
            let lam = m.lambda(a) as usize;
            v.require(g.steps == lam, || format!("A={a:#b}: {} steps, lambda {lam}", g.steps));
            v.require(g.matroid == guts_split(m, a, b), || format!("A={a:#b}: result is not M/B + M/A"));
        }
        v.finish()
    }))
}

fn extensions(_: &Ctx) -> Result<Vec<CheckResult>> {
    Ok(run_cases("extensions", &small()?, label_m, |m| {
        let mut v = Verdict::default();
        let full = m.full();
        let e = 1u32 << m.n();
        let mut count = 0;
        for x in submasks(full) {
            for y in submasks(full & !x) {
                if !m.is_connected_bispan(x, y) {
                    continue;
                }
                count += 1;
                let nx = extend_table(m, &ExtensionSpec::RelativelyFree(x, y))?;
                nx.check_axioms()?;
                v.require(nx.r(e) == 1, || format!("({x:#b},{y:#b}): new element is a loop"));
                v.require(nx.r(x | e) == nx.r(x) && nx.r(y | e) == nx.r(y), || {
                    format!("({x:#b},{y:#b}): new element outside cl(X) or cl(Y)")
                });
                v.require(nx.delete(e)? == *m, || format!("({x:#b},{y:#b}): deletion does not give M"));
            }
        }
        v.note(format!("{count} connected bispans"));
        v.finish()
    }))
}

/// Positions of `x` inside the ground set `ground`, packed to the low bits.
fn compress(x: Mask, ground: Mask) -> Mask {
    elements(ground).enumerate().fold(0, |acc, (i, e)| acc | (((x >> e) & 1) << i))
}

fn expand(x: Mask, ground: Mask) -> Mask {
    elements(ground).enumerate().fold(0, |acc, (i, e)| acc | (((x >> i) & 1) << e))
}

struct CommuteCase {
    m: RankTable,
    y: Mask,
    a0: Mask,
    b0: Mask,
}

fn commute(ctx: &Ctx) -> Result<Vec<CheckResult>> {
    let pool: Vec<RankTable> = small()?.into_iter().filter(|m| m.n() >= 3).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut cases = Vec::new();
    let mut attempts = 0;
    while cases.len() < 64 && attempts < 10_000 && !pool.is_empty() {
        attempts += 1;
        let m = pool[rng.gen_range(0..pool.len())].clone();
        let y: Mask = rng.gen_range(0..=m.full());
        let rest = m.full() & !y;
        let m2 = m.contract(y)?;
        let bispans: Vec<(Mask, Mask)> = submasks(m2.full())
            .flat_map(|a| submasks(m2.full() & !a).map(move |b| (a, b)))
            .filter(|&(a, b)| m2.is_connected_bispan(a, b))
            .collect();
        if bispans.is_empty() {
            continue;
        }
        let (a0, b0) = bispans[rng.gen_range(0..bispans.len())];
        cases.push(CommuteCase { m, y, a0: expand(a0, rest), b0: expand(b0, rest) });
    }
    Ok(run_cases(
        "commute",
        &cases,
        |i, c| (format!("sample {i} Y={:#b} A0={:#b} B0={:#b}", c.y, c.a0, c.b0), MatroidSpec::from_table(&c.m)),
        |c| {
            let rest = c.m.full() & !c.y;
            let m2 = c.m.contract(c.y)?;
            let (a0, b0) = (compress(c.a0, rest), compress(c.b0, rest));
            let m2x = extend_table(&m2, &ExtensionSpec::RelativelyFree(a0, b0))?;
            // A bipartition with A0 ⊆ A ⊆ cl(A0) and B0 ⊆ B ⊆ cl(B0).
            let a = m2.closure(a0) & !b0;
            let b = m2.full() & !a;
            let a1 = expand(a, rest) | c.y;
            let b1 = expand(b, rest);
            let m1x = extend_table(&c.m, &ExtensionSpec::RelativelyFree(a1, b1))?;
            let lifted = m1x.contract(c.y)?;
            Ok((lifted == m2x, format!("lift in ({a1:#b}, {b1:#b})")))
        },
    ))
}

fn omega_check(_: &Ctx) -> Result<Vec<CheckResult>> {
    let limit = caps().family_n.min(4);
    let fam: Vec<RankTable> = small()?.into_iter().filter(|m| m.n() <= limit).collect();
    Ok(run_cases("omega", &fam, label_m, |m| {
        let n = m.n();
        let e = 1u32 << n;
        let full = m.full();
        let mut v = Verdict::default();
        let mut count = 0;
        for (cut, mp) in cstar_transformations_with_cuts(m)? {
            if mp == *m {
                continue;
            }
            let plus = extend_table(m, &ExtensionSpec::ByCut(cut))?;
            let spans = |z: Mask| plus.r(z | e) == plus.r(z);
            for k in 1..=3usize {
                let total = (k + 1).pow(n as u32);
                for code in 0..total {
                    let mut parts = vec![0 as Mask; k];
                    let mut c = code;
                    for x in 0..n {
                        let slot = c % (k + 1);
                        c /= k + 1;
                        if slot > 0 {
                            parts[slot - 1] |= 1 << x;
                        }
                    }
                    count += 1;
                    let (w, wp) = (omega(m, &parts)?, omega(&mp, &parts)?);
                    v.require(w <= wp + 1, || format!("parts {parts:?}: {w} > {wp} + 1"));
                    if parts.iter().all(|&x| spans(full & !x)) {
                        v.require(w == wp + 1, || format!("parts {parts:?}: {w} != {wp} + 1"));
                    }
                    if parts.iter().any(|&x| spans(x)) {
                        v.require(w >= wp, || format!("parts {parts:?}: {w} < {wp}"));
                    }
                }
            }
        }
        v.note(format!("{count} part tuples"));
        v.finish()
    }))
}

fn cycle_matroid(g: Result<MultiGraph>) -> Result<RankTable> {
    g?.cycle_matroid()
}

fn monotone(_: &Ctx) -> Result<Vec<CheckResult>> {
    let mut out = run_cases("monotone", &small()?, label_m, |m| {
        let mut v = Verdict::default();
        let base = [d(m, CStar)?, d(m, DStar)?, d(m, CStarDStar)?];
        let csdd = d(m, CStarD)?;
        for e in 0..m.n() {
            let del = m.delete(1 << e)?;
            for (kind, minor) in [("deletion", &del), ("contraction", &m.contract(1 << e)?)] {
                for (i, mu) in [CStar, DStar, CStarDStar].into_iter().enumerate() {
                    let x = d(minor, mu)?;
                    v.require(x <= base[i], || format!("{mu} of {kind} of {e} is {x} > {}", base[i]));
                }
            }
            let x = d(&del, CStarD)?;
            v.require(x <= csdd, || format!("csdd of deletion of {e} is {x} > {csdd}"));
        }
        v.finish()
    });
    let witness = vec![("D(4,2) contains C(4,2)".to_string(), cycle_matroid(gen_d(4, 2))?)];
    out.extend(run_cases(
        "monotone",
        &witness,
        |_, x| label_named(x),
        |(_, big)| {
            // C(4,2) is D(4,2) with its simple edge contracted.
            let minor = big.contract(1 << (big.n() - 1))?;
            let mut v = Verdict::default();
            v.require(minor == cycle_matroid(gen_fat_cycle(4, 2))?, || "contraction is not M(C(4,2))".into());
            let (bd, bsd) = (big.dual(), minor.dual());
            let rows = [
                ("cdd", d(big, Cd)?, d(&minor, Cd)?),
                ("csdd", d(big, CStarD)?, d(&minor, CStarD)?),
                ("cdsd", d(&bd, CDStar)?, d(&bsd, CDStar)?),
            ];
            for (name, host, sub) in rows {
                v.require(host <= 3 && sub >= 2, || format!("{name}: host {host}, minor {sub}"));
                v.note(format!("{name}: host {host}, minor {sub}"));
            }
            v.finish()
        },
    ));
    Ok(out)
}

fn log2_ceil(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

fn incomparable(_: &Ctx) -> Result<Vec<CheckResult>> {
    let mut items: Vec<(String, RankTable)> = Vec::new();
    for n in 3..=8 {
        items.push((format!("M(C{n})"), cycle_matroid(crate::graphs::gen_cycle(n))?));
    }
    let mut out = run_cases(
        "incomparable",
        &items,
        |_, x| label_named(x),
        |(_, m)| {
            let n = m.n() as u64;
            let dual = m.dual();
            let (dd, cd, dcd, ddd) = (d(m, D)?, d(m, C)?, d(&dual, C)?, d(&dual, D)?);
            let mut v = Verdict::default();
            v.require(dd == 2, || format!("dd = {dd}"));
            v.require(cd >= log2_ceil(n).max(1), || format!("cd = {cd} below log2 {n}"));
            v.require(dcd == 2 && ddd >= log2_ceil(n).max(1), || format!("dual: cd = {dcd}, dd = {ddd}"));
            v.note(format!("dd={dd} cd={cd}"));
            v.finish()
        },
    );
    let fat = vec![("M(C(4,2))".to_string(), cycle_matroid(gen_fat_cycle(4, 2))?)];
    out.extend(run_cases(
        "incomparable",
        &fat,
        |_, x| label_named(x),
        |(_, m)| {
            let (csdd, cdsd) = (d(m, CStarD)?, d(m, CDStar)?);
            let dual = m.dual();
            let (dcsdd, dcdsd) = (d(&dual, CStarD)?, d(&dual, CDStar)?);
            let ok = csdd >= 2 && cdsd <= 3 && dcdsd >= 2 && dcsdd <= 3;
            Ok((ok, format!("csdd={csdd} cdsd={cdsd}; dual csdd={dcsdd} cdsd={dcdsd}")))
        },
    ));
    Ok(out)
}

fn fat_cycle(_: &Ctx) -> Result<Vec<CheckResult>> {
    let mut items: Vec<(String, RankTable, u8)> = Vec::new();
    for i in 2..=5usize {
        for j in 1..=5usize {
            if i * j <= 10 {
                items.push((format!("M(C({i},{j}))"), cycle_matroid(gen_fat_cycle(i, j))?, 0));
            }
            if i * j < 11 {
                items.push((format!("M(D({i},{j}))"), cycle_matroid(gen_d(i, j))?, 1));
            }
        }
    }
    Ok(run_cases(
        "fat-cycle",
        &items,
        |_, (name, m, _)| (name.clone(), MatroidSpec::from_table(m)),
        |(name, m, kind)| {
            if *kind == 0 {
                let x = d(m, CDStar)?;
                let mut ok = x <= 3;
                if name == "M(C(4,2))" {
                    ok &= d(m, CStarD)? >= 2;
                }
                Ok((ok, format!("cdsd={x}")))
            } else {
                let x = d(m, Cd)?;
                Ok((x <= 3, format!("cdd={x}")))
            }
        },
    ))
}

fn k3n(_: &Ctx) -> Result<Vec<CheckResult>> {
    let items = vec![(3usize, gen_k3n(3)?), (4, gen_k3n(4)?)];
    Ok(run_cases(
        "k3n",
        &items,
        |_, (n, g)| (format!("K(3,{n})"), MatroidSpec::from_graph(g)),
        |(n, g)| {
            let td = g.tree_depth()?;
            let dd = d(&g.cycle_matroid()?, D)?;
            Ok((td == 4 && dd >= *n as u32, format!("td={td} dd={dd}")))
        },
    ))
}

fn td2(_: &Ctx) -> Result<Vec<CheckResult>> {
    let gs = connected_multigraphs(caps().graph_edges)?;
    let mut out = run_cases("td2", &gs, label_g, |g| {
        let t = g.two_tree_depth()?;
        let cdd = d(&g.cycle_matroid()?, Cd)?;
        let gc = g.graphic_csdsd()?;
        Ok((t <= 2 * cdd && t <= 2 * gc, format!("td2={t} cdd={cdd} csdsd={gc}")))
    });
    let trees = vec![crate::graphs::gen_path(2)?, crate::graphs::gen_path(3)?];
    out.extend(run_cases(
        "td2",
        &trees,
        |i, t| {
            let g = gen_tree_plus_two_universal(t).expect("tree input");
            (format!("tree on {} vertices plus two universal #{i}", t.vertex_count()), MatroidSpec::from_graph(&g))
        },
        |t| {
            let g = gen_tree_plus_two_universal(t)?;
            let x = g.two_tree_depth()?;
            Ok((x == 4, format!("td2={x}")))
        },
    ));
    Ok(out)
}

fn simple_adjacency(g: &MultiGraph) -> Vec<Mask> {
    let mut adj = vec![0 as Mask; g.vertex_count()];
    for &(u, v) in g.edges() {
        if u != v {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
    }
    adj
}

fn connected_within(adj: &[Mask], s: Mask) -> bool {
    let Some(start) = elements(s).next() else { return true };
    let mut seen: Mask = 1 << start;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for w in elements(adj[v] & s & !seen) {
            seen |= 1 << w;
            stack.push(w);
        }
    }
    seen == s
}

/// At least k+1 vertices and connected after removing any k-1 vertices.
fn is_k_connected(g: &MultiGraph, k: usize) -> bool {
    let n = g.vertex_count();
    let adj = simple_adjacency(g);
    let all = full_mask(n);
    n > k && submasks(all).filter(|x| x.count_ones() as usize <= k - 1).all(|x| connected_within(&adj, all & !x))
}

/// Vertex counts of the longest path and of the longest cycle (0 when acyclic).
fn longest_path_and_cycle(g: &MultiGraph) -> (usize, usize) {
    let adj = simple_adjacency(g);
    let n = adj.len();
    let (mut path, mut cycle) = (0, 0);
    fn dfs(adj: &[Mask], start: usize, v: usize, seen: Mask, len: usize, path: &mut usize, cycle: &mut usize) {
        *path = (*path).max(len);
        if len >= 3 && adj[v] & (1 << start) != 0 {
            *cycle = (*cycle).max(len);
        }
        for w in elements(adj[v] & !seen) {
            dfs(adj, start, w, seen | 1 << w, len + 1, path, cycle);
        }
    }
    for s in 0..n {
        dfs(&adj, s, s, 1 << s, 1, &mut path, &mut cycle);
    }
    (path, cycle)
}

fn graph_3conn(_: &Ctx) -> Result<Vec<CheckResult>> {
    let gs: Vec<MultiGraph> = connected_multigraphs(caps().graph_edges)?
        .into_iter()
        .filter(|g| is_simple(g) && is_k_connected(g, 3))
        .collect();
    Ok(run_cases("graph-3conn", &gs, label_g, |g| {
        let m = g.cycle_matroid()?;
        let (x, cd) = (d(&m, CStarDStar)?, d(&m, C)?);
        Ok((x <= cd, format!("csdsd={x} cd={cd}")))
    }))
}

fn td_cd(_: &Ctx) -> Result<Vec<CheckResult>> {
    let gs: Vec<MultiGraph> = connected_multigraphs(caps().graph_edges)?.into_iter().filter(is_simple).collect();
    Ok(run_cases("td-cd", &gs, label_g, |g| {
        let td = g.tree_depth()?;
        let cd = d(&g.cycle_matroid()?, C)?;
        let (lp, lc) = longest_path_and_cycle(g);
        let mut v = Verdict::default();
        v.require(log2_ceil(lp as u64) <= td && td as usize <= lp, || format!("path {lp}: td={td}"));
        // cd <= u(u+1)/2 with circumference u < 2^td.
        let u = (1u64 << td) - 1;
        v.require(cd as u64 <= u * (u + 1) / 2, || format!("cd={cd} above f(td={td})"));
        if g.vertex_count() >= 3 && is_k_connected(g, 2) {
            let l = lc as u64;
            v.require(1 + log2_ceil(l) <= td, || format!("cycle {l}: td={td}"));
            if l >= 4 {
                v.require(td as u64 <= 1 + (l - 2) * (l - 2), || format!("cycle {l}: td={td}"));
            } else {
                // A triangle has tree-depth 3, above 1 + (3-2)^2.
                v.require(td as u64 <= l, || format!("cycle {l}: td={td}"));
                v.note(format!("circumference {l}: upper bound 1 + (l-2)^2 replaced by l"));
            }
            let g_cd = (1 + ((1u64 << cd) - 2).pow(2)).max(3);
            v.require(td as u64 <= g_cd, || format!("td={td} above g(cd={cd})"));
        }
        v.note(format!("td={td} cd={cd} path={lp} cycle={lc}"));
        v.finish()
    }))
}

fn matrix_eq(_: &Ctx) -> Result<Vec<CheckResult>> {
    let c = caps();
    let mats = matrices(2, c.matrix_m, c.matrix_n)?;
    Ok(run_cases("matrix-eq", &mats, label_a, |a| {
        let m = a.vector_matroid()?;
        let mut v = Verdict::default();
        for mu in [CStar, DStar, CStarD, CDStar] {
            let (x, y) = (matrix_depth(a, mu)?, d(&m, mu)?);
            v.require(x == y, || format!("{mu}: matrix {x}, matroid {y}"));
        }
        v.finish()
    }))
}

fn representation(_: &Ctx) -> Result<Vec<CheckResult>> {
    let mat = |p: u8, rows: &[&[i64]]| {
        FFMatrix::from_rows(p, rows[0].len(), &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    };
    let items: Vec<(String, RankTable, Vec<FFMatrix>)> = vec![
        (
            "U(1,2)".into(),
            RankTable::uniform(1, 2)?,
            vec![mat(2, &[&[1, 1]])?, mat(3, &[&[1, 2]])?, mat(5, &[&[1, 3]])?],
        ),
        (
            "U(2,3)".into(),
            RankTable::uniform(2, 3)?,
            vec![
                mat(2, &[&[1, 0, 1], &[0, 1, 1]])?,
                mat(3, &[&[1, 0, 1], &[0, 1, 2]])?,
                mat(5, &[&[1, 0, 2], &[0, 1, 3]])?,
            ],
        ),
        (
            "U(2,4)".into(),
            RankTable::uniform(2, 4)?,
            vec![mat(3, &[&[1, 0, 1, 1], &[0, 1, 1, 2]])?, mat(5, &[&[1, 0, 1, 1], &[0, 1, 2, 3]])?],
        ),
    ];
    Ok(run_cases(
        "representation",
        &items,
        |_, (name, m, _)| (name.clone(), MatroidSpec::from_table(m)),
        |(_, m, reps)| {
            let mut v = Verdict::default();
            for a in reps {
                v.require(a.vector_matroid()? == *m, || format!("GF({}) matrix does not represent the matroid", a.p()));
                for mu in [CStar, DStar, CStarD, CDStar] {
                    let (x, y) = (matrix_depth(a, mu)?, d(m, mu)?);
                    v.require(x == y, || format!("GF({}) {mu}: matrix {x}, matroid {y}", a.p()));
                }
            }
            v.finish()
        },
    ))
}

fn min_td(_: &Ctx) -> Result<Vec<CheckResult>> {
    let c = caps();
    let mats = matrices(2, c.matrix_m, c.matrix_n)?;
    Ok(run_cases("min-td", &mats, label_a, |a| {
        let r = td_star_formula(a)?;
        let e = td_star_enumerated(a)?;
        let mut v = Verdict::default();
        v.require(r.formula == e, || format!("formula {:?}, enumerated {e:?}", r.formula));
        if r.loops_and_coloops_only {
            v.note("loops and coloops only".into());
        }
        if r.zero_rank {
            v.note("zero matrix".into());
        }
        v.finish()
    }))
}
