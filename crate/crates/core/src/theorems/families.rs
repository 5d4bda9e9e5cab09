//! Exhaustive instance families.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Mutex, OnceLock};

use crate::error::{check_cap, Result};
use crate::extensions::{enumerate_modular_cuts, extend_table, ExtensionSpec};
use crate::gf::FFMatrix;
use crate::graphs::MultiGraph;
use crate::matroid::RankTable;

/// One representative per isomorphism class of matroids with at most `max_n` elements,
/// ordered by size and then by rank vector.
///
/// Every matroid on n+1 elements is a single-element extension of its deletion, so growing
/// the empty matroid through all modular cuts reaches every class.
pub fn matroids_up_to(max_n: usize) -> Result<Vec<RankTable>> {
    static MEMO: OnceLock<Mutex<HashMap<usize, Vec<RankTable>>>> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    if let Some(v) = memo.lock().expect("family memo poisoned").get(&max_n) {
        return Ok(v.clone());
    }
    check_cap("matroid family size", max_n as u64, crate::caps::caps().cuts_n as u64)?;
    let mut out = vec![RankTable::empty()];
    let mut layer = vec![RankTable::empty()];
    for _ in 0..max_n {
        let mut next = BTreeSet::new();
        for m in &layer {
            for cut in enumerate_modular_cuts(m)? {
                next.insert(extend_table(m, &ExtensionSpec::ByCut(cut))?.canonical());
            }
        }
        layer = next.into_iter().collect();
        out.extend(layer.iter().cloned());
    }
    memo.lock().expect("family memo poisoned").insert(max_n, out.clone());
    Ok(out)
}

/// Every matrix over GF(p) with 1 ≤ m ≤ max_m rows and 1 ≤ n ≤ max_n columns,
/// ordered by shape and then by entries.
pub fn matrices(p: u8, max_m: usize, max_n: usize) -> Result<Vec<FFMatrix>> {
    let mut out = Vec::new();
    for m in 1..=max_m {
        for n in 1..=max_n {
            let count = (p as u64).checked_pow((m * n) as u32).unwrap_or(u64::MAX);
            check_cap("matrix family size", count, crate::caps::caps().vectors)?;
            for code in 0..count {
                let mut c = code;
                let rows: Vec<Vec<i64>> = (0..m)
                    .map(|_| {
                        (0..n)
                            .map(|_| {
                                let d = c % p as u64;
                                c /= p as u64;
                                d as i64
                            })
                            .collect()
                    })
                    .collect();
                out.push(FFMatrix::from_rows(p, n, &rows)?);
            }
        }
    }
    Ok(out)
}

type EdgeList = Vec<(usize, usize)>;

/// Least sorted edge list over vertex orders that list vertices by non-increasing degree.
fn canonical_edges(nv: usize, edges: &[(usize, usize)]) -> EdgeList {
    let mut deg = vec![0usize; nv];
    for &(u, v) in edges {
        deg[u] += 1;
        deg[v] += 1;
    }
    let mut order: Vec<usize> = (0..nv).collect();
    order.sort_by(|&a, &b| deg[b].cmp(&deg[a]));
    // Runs of equal degree may be permuted freely.
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match groups.last_mut() {
            Some(g) if deg[g[0]] == deg[v] => g.push(v),
            _ => groups.push(vec![v]),
        }
    }
    let mut best: Option<EdgeList> = None;
    let mut pos = vec![0usize; nv];
    fn rec(
        gi: usize,
        next: usize,
        groups: &mut [Vec<usize>],
        pos: &mut [usize],
        edges: &[(usize, usize)],
        best: &mut Option<EdgeList>,
    ) {
        if gi == groups.len() {
            let mut e: EdgeList = edges.iter().map(|&(u, v)| (pos[u].min(pos[v]), pos[u].max(pos[v]))).collect();
            e.sort_unstable();
            if best.as_ref().is_none_or(|b| e < *b) {
                *best = Some(e);
            }
            return;
        }
        let len = groups[gi].len();
        permute(gi, 0, len, next, groups, pos, edges, best);
    }
    #[allow(clippy::too_many_arguments)]
    fn permute(
        gi: usize,
        k: usize,
        len: usize,
        next: usize,
        groups: &mut [Vec<usize>],
        pos: &mut [usize],
        edges: &[(usize, usize)],
        best: &mut Option<EdgeList>,
    ) {
        if k == len {
            rec(gi + 1, next + len, groups, pos, edges, best);
            return;
        }
        for i in k..len {
            groups[gi].swap(k, i);
            pos[groups[gi][k]] = next + k;
            permute(gi, k + 1, len, next, groups, pos, edges, best);
            groups[gi].swap(k, i);
        }
    }
    rec(0, 0, &mut groups, &mut pos, edges, &mut best);
    best.unwrap_or_default()
}

/// Connected multigraphs (loops and parallel edges allowed) with 1..=max_edges edges,
/// one per isomorphism class, ordered by edge count and then by canonical edge list.
pub fn connected_multigraphs(max_edges: usize) -> Result<Vec<MultiGraph>> {
    check_cap("graph family edges", max_edges as u64, crate::caps::caps().graphic_edges as u64)?;
    let mut out = Vec::new();
    let mut layer: BTreeSet<(usize, EdgeList)> = BTreeSet::new();
    layer.insert((1, Vec::new()));
    for _ in 0..max_edges {
        let mut next = BTreeSet::new();
        for (nv, edges) in &layer {
            let mut candidates: Vec<(usize, (usize, usize))> = Vec::new();
            for u in 0..*nv {
                for v in u..*nv {
                    candidates.push((*nv, (u, v)));
                }
                candidates.push((nv + 1, (u, *nv)));
            }
            for (nv2, e) in candidates {
                let mut es = edges.clone();
                es.push(e);
                next.insert((nv2, canonical_edges(nv2, &es)));
            }
        }
        for (nv, es) in &next {
            out.push(MultiGraph::new(*nv, es.clone())?);
        }
        layer = next;
    }
    Ok(out)
}

/// No loops and no parallel edges.
pub fn is_simple(g: &MultiGraph) -> bool {
    let mut seen = BTreeSet::new();
    g.edges().iter().all(|&(u, v)| u != v && seen.insert((u.min(v), u.max(v))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matroid_class_counts() {
        let all = matroids_up_to(5).unwrap();
        let count = |n| all.iter().filter(|m| m.n() == n).count();
        assert_eq!((0..=5).map(count).collect::<Vec<_>>(), vec![1, 2, 4, 8, 17, 38]);
        for m in &all {
            m.check_axioms().unwrap();
        }
    }

    #[test]
    fn matrix_family_size() {
        assert_eq!(matrices(2, 2, 2).unwrap().len(), 2 + 4 + 4 + 16);
    }

    #[test]
    fn multigraph_counts() {
        // Connected multigraphs with loops allowed: one edge gives a loop or a link.
        let gs = connected_multigraphs(3).unwrap();
        let count = |e| gs.iter().filter(|g| g.edge_count() == e).count();
        assert_eq!(count(1), 2);
        // Two edges: two loops at a vertex, a link with a loop, a double link, a path.
        assert_eq!(count(2), 4);
        let simple: Vec<_> = gs.iter().filter(|g| is_simple(g)).collect();
        // Simple connected graphs: K2, P3, P4, K1,3, K3.
        assert_eq!(simple.len(), 5);
    }
}
