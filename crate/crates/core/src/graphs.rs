//! Multigraphs, cycle matroids, tree-depth variants and the graphic c*d*-depth.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::caps::caps;
use crate::error::{check_cap, Error, Result};
use crate::gf::FFMatrix;
use crate::matroid::{elements, RankTable};

/// An undirected multigraph on vertices `0..v`; loops and parallel edges are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiGraph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl MultiGraph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= vertices || v >= vertices) {
            return Err(Error::input(format!("edge ({u}, {v}) leaves the vertex range 0..{vertices}")));
        }
        Ok(MultiGraph { vertices, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Adjacency masks of the underlying simple graph; loops are dropped.
    pub fn adjacency(&self) -> Result<Vec<u32>> {
        check_cap("graph vertices", self.vertices as u64, 32)?;
        let mut adj = vec![0u32; self.vertices];
        for &(u, v) in &self.edges {
            if u != v {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
        Ok(adj)
    }

    /// Rank of an edge set is the number of vertices minus the number of components it spans.
    pub fn cycle_matroid(&self) -> Result<RankTable> {
        let n = self.edges.len();
        check_cap("cycle matroid edges", n as u64, caps().rank_table_n as u64)?;
        let mut ranks = vec![0u8; 1 << n];
        let mut parent = vec![0usize; self.vertices];
        for x in 1u32..(1 << n) {
            for (i, p) in parent.iter_mut().enumerate() {
                *p = i;
            }
            let mut r = 0u8;
            for e in elements(x) {
                let (a, b) = self.edges[e];
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra] = rb;
                    r += 1;
                }
            }
            ranks[x as usize] = r;
        }
        RankTable::from_ranks(n, ranks)
    }

    /// Contracts edge `e`: its endpoints merge and the edge disappears. Remaining edges keep their order.
    pub fn contract_edge(&self, e: usize) -> Result<MultiGraph> {
        let &(a, b) = self.edges.get(e).ok_or_else(|| Error::input(format!("edge {e} out of range")))?;
        let (keep, gone) = (a.min(b), a.max(b));
        let relabel = |x: usize| {
            let x = if x == gone { keep } else { x };
            if a != b && x > gone {
                x - 1
            } else {
                x
            }
        };
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, &(u, v))| (relabel(u), relabel(v)))
            .collect();
        MultiGraph::new(if a != b { self.vertices - 1 } else { self.vertices }, edges)
    }

    /// Graph text format: `graph V E` then one `u v` line per edge, 1-indexed.
    pub fn to_text(&self) -> String {
        let mut s = format!("graph {} {}\n", self.vertices, self.edges.len());
        for &(u, v) in &self.edges {
            s.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<MultiGraph> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty graph text".into()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        let num = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad number '{s}'")));
        if parts.len() != 3 || parts[0] != "graph" {
            return Err(Error::Parse(format!("bad graph header '{header}'")));
        }
        let (nv, ne) = (num(parts[1])?, num(parts[2])?);
        let mut edges = Vec::with_capacity(ne);
        for i in 0..ne {
            let line = lines.next().ok_or_else(|| Error::Parse(format!("missing edge line {}", i + 1)))?;
            let uv: Vec<&str> = line.split_whitespace().collect();
            if uv.len() != 2 {
                return Err(Error::Parse(format!("bad edge line '{line}'")));
            }
            let (u, v) = (num(uv[0])?, num(uv[1])?);
            if u == 0 || v == 0 || u > nv || v > nv {
                return Err(Error::Parse(format!("edge '{line}' leaves the vertex range 1..{nv}")));
            }
            edges.push((u - 1, v - 1));
        }
        if lines.next().is_some() {
            return Err(Error::Parse("trailing lines after edge list".into()));
        }
        MultiGraph::new(nv, edges).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Edge partition into blocks; every loop forms its own class. Classes are ordered by least edge.
    pub fn blocks(&self) -> Result<Vec<Vec<usize>>> {
        Ok(edge_blocks(self.vertices, &self.edges))
    }

    pub fn tree_depth(&self) -> Result<u32> {
        check_cap("tree-depth vertices", self.vertices as u64, caps().td_vertices as u64)?;
        let adj = self.adjacency()?;
        let mut memo = vec![u8::MAX; 1 << self.vertices];
        Ok(td_rec(&adj, full(self.vertices), &mut memo) as u32)
    }

    pub fn two_tree_depth(&self) -> Result<u32> {
        check_cap("tree-depth vertices", self.vertices as u64, caps().td_vertices as u64)?;
        let adj = self.adjacency()?;
        let mut memo = HashMap::new();
        Ok(td2_rec(&adj, full(self.vertices), &mut memo))
    }

    /// Graph c*d*-depth: the least depth reachable through edge-add-then-contract and
    /// vertex-split-then-delete moves, with block maximum and base "at most one edge".
    pub fn graphic_csdsd(&self) -> Result<u32> {
        let c = caps();
        check_cap("graphic c*d*-depth edges", self.edges.len() as u64, c.graphic_edges as u64)?;
        let mut solver = GraphicSolver { memo: HashMap::new(), degree_cap: c.split_degree };
        let g = normalize(&self.edges);
        let limit = self.edges.len() as u32 + 1;
        for k in 1..=limit.max(1) {
            if solver.at_most(&g, k)? {
                return Ok(k);
            }
        }
        Err(Error::InvalidInput("graphic c*d*-depth search did not terminate".into()))
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn full(n: usize) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Connected components of the subgraph induced by `s`.
fn vertex_components(adj: &[u32], s: u32) -> Vec<u32> {
    let mut rest = s;
    let mut out = Vec::new();
    while rest != 0 {
        let mut comp = rest & rest.wrapping_neg();
        let mut frontier = comp;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = adj[v] & s & !comp;
            comp |= new;
            frontier |= new;
        }
        out.push(comp);
        rest &= !comp;
    }
    out
}

fn td_rec(adj: &[u32], s: u32, memo: &mut [u8]) -> u8 {
    if s == 0 {
        return 0;
    }
    if memo[s as usize] != u8::MAX {
        return memo[s as usize];
    }
    let comps = vertex_components(adj, s);
    let v = if comps.len() > 1 {
        comps.iter().map(|&c| td_rec(adj, c, memo)).max().unwrap_or(0)
    } else if s.count_ones() == 1 {
        1
    } else {
        1 + elements(s).map(|v| td_rec(adj, s & !(1 << v), memo)).min().unwrap_or(0)
    };
    memo[s as usize] = v;
    v
}

/// Vertex sets of the blocks of the simple graph induced by `s`; isolated vertices are singleton blocks.
pub(crate) fn vertex_blocks(adj: &[u32], s: u32) -> Vec<u32> {
    struct St<'a> {
        adj: &'a [u32],
        s: u32,
        disc: Vec<u32>,
        low: Vec<u32>,
        time: u32,
        stack: Vec<(usize, usize)>,
        blocks: Vec<u32>,
    }
    fn dfs(st: &mut St, u: usize, parent: usize) {
        st.time += 1;
        st.disc[u] = st.time;
        st.low[u] = st.time;
        for w in elements(st.adj[u] & st.s) {
            if w == parent {
                continue;
            }
            if st.disc[w] == 0 {
                st.stack.push((u, w));
                dfs(st, w, u);
                st.low[u] = st.low[u].min(st.low[w]);
                if st.low[w] >= st.disc[u] {
                    let mut b = 0u32;
                    while let Some((x, y)) = st.stack.pop() {
                        b |= 1 << x | 1 << y;
                        if (x, y) == (u, w) {
                            break;
                        }
                    }
                    st.blocks.push(b);
                }
            } else if st.disc[w] < st.disc[u] {
                st.stack.push((u, w));
                st.low[u] = st.low[u].min(st.disc[w]);
            }
        }
    }
    let n = adj.len();
    let mut st = St { adj, s, disc: vec![0; n], low: vec![0; n], time: 0, stack: Vec::new(), blocks: Vec::new() };
    for r in elements(s) {
        if st.disc[r] == 0 {
            if adj[r] & s == 0 {
                st.blocks.push(1 << r);
                st.disc[r] = u32::MAX;
            } else {
                dfs(&mut st, r, usize::MAX);
            }
        }
    }
    st.blocks
}

fn td2_rec(adj: &[u32], s: u32, memo: &mut HashMap<u32, u32>) -> u32 {
    match s.count_ones() {
        0 => return 0,
        1 => return 1,
        _ => {}
    }
    if let Some(&v) = memo.get(&s) {
        return v;
    }
    let blocks = vertex_blocks(adj, s);
    let v = if blocks.len() == 1 && blocks[0] == s {
        1 + elements(s).map(|v| td2_rec(adj, s & !(1 << v), memo)).min().unwrap_or(0)
    } else {
        blocks.iter().map(|&b| td2_rec(adj, b, memo)).max().unwrap_or(0)
    };
    memo.insert(s, v);
    v
}

/// Edge blocks of a multigraph given as an edge list.
pub(crate) fn edge_blocks(nv: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![0u32; nv];
    for &(u, v) in edges {
        if u != v {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
    }
    let vb = vertex_blocks(&adj, full(nv));
    let mut by_block: Vec<Vec<usize>> = vec![Vec::new(); vb.len()];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for (i, &(u, v)) in edges.iter().enumerate() {
        if u == v {
            out.push(vec![i]);
        } else {
            let b = vb.iter().position(|&b| b >> u & 1 == 1 && b >> v & 1 == 1).expect("edge lies in a block");
            by_block[b].push(i);
        }
    }
    out.extend(by_block.into_iter().filter(|b| !b.is_empty()));
    out.sort();
    out
}

type GraphKey = Vec<(u8, u8)>;

/// Relabels vertices by first appearance so that graphs equal up to vertex names share a key.
fn normalize(edges: &[(usize, usize)]) -> GraphKey {
    let mut map: HashMap<usize, u8> = HashMap::new();
    let id = |x: usize, map: &mut HashMap<usize, u8>| {
        let next = map.len() as u8;
        *map.entry(x).or_insert(next)
    };
    edges
        .iter()
        .map(|&(u, v)| {
            let a = id(u, &mut map);
            let b = id(v, &mut map);
            (a.min(b), a.max(b))
        })
        .collect()
}

struct GraphicSolver {
    memo: HashMap<(GraphKey, u32), bool>,
    degree_cap: usize,
}

impl GraphicSolver {
    fn at_most(&mut self, g: &GraphKey, k: u32) -> Result<bool> {
        if k == 0 {
            return Ok(false);
        }
        if g.len() <= 1 {
            return Ok(true);
        }
        if let Some(&v) = self.memo.get(&(g.clone(), k)) {
            return Ok(v);
        }
        let nv = g.iter().map(|&(u, v)| u.max(v) as usize + 1).max().unwrap_or(0);
        let edges: Vec<(usize, usize)> = g.iter().map(|&(u, v)| (u as usize, v as usize)).collect();
        let blocks = edge_blocks(nv, &edges);
        let result = if blocks.len() > 1 {
            let mut all = true;
            for b in &blocks {
                let sub: Vec<(usize, usize)> = b.iter().map(|&i| edges[i]).collect();
                if !self.at_most(&normalize(&sub), k)? {
                    all = false;
                    break;
                }
            }
            all
        } else if k < 2 {
            false
        } else {
            self.some_move_within(&edges, nv, k - 1)?
        };
        self.memo.insert((g.clone(), k), result);
        Ok(result)
    }

    fn some_move_within(&mut self, edges: &[(usize, usize)], nv: usize, k: u32) -> Result<bool> {
        // Add an edge between two distinct vertices and contract it: the vertices merge.
        for a in 0..nv {
            for b in (a + 1)..nv {
                let merged: Vec<(usize, usize)> =
                    edges.iter().map(|&(u, v)| (if u == b { a } else { u }, if v == b { a } else { v })).collect();
                if self.at_most(&normalize(&merged), k)? {
                    return Ok(true);
                }
            }
        }
        // Split a vertex along a new edge and delete that edge.
        for w in 0..nv {
            let ends: Vec<(usize, usize)> = edges
                .iter()
                .enumerate()
                .flat_map(|(i, &(u, v))| {
                    let mut e = Vec::new();
                    if u == w {
                        e.push((i, 0));
                    }
                    if v == w {
                        e.push((i, 1));
                    }
                    e
                })
                .collect();
            if ends.len() < 2 {
                continue;
            }
            check_cap("vertex degree for splitting", ends.len() as u64, self.degree_cap as u64)?;
            let d = ends.len() - 1;
            for side in 1u32..(1 << d) {
                let mut split = edges.to_vec();
                for (bit, &(i, which)) in ends[1..].iter().enumerate() {
                    if side >> bit & 1 == 1 {
                        if which == 0 {
                            split[i].0 = nv;
                        } else {
                            split[i].1 = nv;
                        }
                    }
                }
                if self.at_most(&normalize(&split), k)? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

pub fn gen_cycle(n: usize) -> Result<MultiGraph> {
    gen_fat_cycle(n, 1)
}

/// C_{i,j}: an i-cycle with every edge replaced by j parallel edges.
pub fn gen_fat_cycle(i: usize, j: usize) -> Result<MultiGraph> {
    if i == 0 || j == 0 {
        return Err(Error::input("fat cycle needs i ≥ 1 and j ≥ 1"));
    }
    check_cap("generated edges", (i * j) as u64, 64)?;
    let edges = (0..i).flat_map(|k| std::iter::repeat_n((k, (k + 1) % i), j)).collect();
    MultiGraph::new(i, edges)
}

/// D_{i,j}: an (i+1)-cycle whose edges are j-fold except the last, which is simple.
pub fn gen_d(i: usize, j: usize) -> Result<MultiGraph> {
    if i == 0 || j == 0 {
        return Err(Error::input("D graph needs i ≥ 1 and j ≥ 1"));
    }
    check_cap("generated edges", (i * j + 1) as u64, 64)?;
    let mut edges: Vec<(usize, usize)> = (0..i).flat_map(|k| std::iter::repeat_n((k, k + 1), j)).collect();
    edges.push((i, 0));
    MultiGraph::new(i + 1, edges)
}

/// K_{3,n} with the three-vertex side first.
pub fn gen_k3n(n: usize) -> Result<MultiGraph> {
    check_cap("generated edges", (3 * n) as u64, 64)?;
    MultiGraph::new(3 + n, (0..3).flat_map(|a| (0..n).map(move |b| (a, 3 + b))).collect())
}

pub fn gen_complete(n: usize) -> Result<MultiGraph> {
    MultiGraph::new(n, (0..n).flat_map(|a| ((a + 1)..n).map(move |b| (a, b))).collect())
}

/// Adds two new vertices adjacent to each other and to every vertex of `tree`.
pub fn gen_tree_plus_two_universal(tree: &MultiGraph) -> Result<MultiGraph> {
    let v = tree.vertices;
    let mut edges = tree.edges.clone();
    for x in 0..v {
        edges.push((x, v));
        edges.push((x, v + 1));
    }
    edges.push((v, v + 1));
    MultiGraph::new(v + 2, edges)
}

/// Path on `n` vertices.
pub fn gen_path(n: usize) -> Result<MultiGraph> {
    MultiGraph::new(n, (1..n).map(|k| (k - 1, k)).collect())
}

pub fn named_graph(name: &str, params: &serde_json::Value) -> Result<MultiGraph> {
    let get = |k: &str| -> Result<usize> {
        params
            .get(k)
            .and_then(|v| v.as_u64())
            .map(|v| v as usize)
            .ok_or_else(|| Error::input(format!("fixture '{name}' needs integer parameter '{k}'")))
    };
    match name {
        "cycle" => gen_cycle(get("n")?),
        "fat_cycle" => gen_fat_cycle(get("i")?, get("j")?),
        "d_graph" => gen_d(get("i")?, get("j")?),
        "k3n" => gen_k3n(get("n")?),
        "complete" => gen_complete(get("n")?),
        "path" => gen_path(get("n")?),
        _ => Err(Error::Unknown(format!("fixture '{name}'"))),
    }
}

/// Columns adjacent when some row is nonzero in both.
pub fn primal_graph(a: &FFMatrix) -> Result<MultiGraph> {
    let mut edges = Vec::new();
    for i in 0..a.n() {
        for j in (i + 1)..a.n() {
            if (0..a.m()).any(|r| a.get(r, i) != 0 && a.get(r, j) != 0) {
                edges.push((i, j));
            }
        }
    }
    MultiGraph::new(a.n(), edges)
}

/// Rows adjacent when some column is nonzero in both.
pub fn dual_graph(a: &FFMatrix) -> Result<MultiGraph> {
    let mut edges = Vec::new();
    for i in 0..a.m() {
        for j in (i + 1)..a.m() {
            if (0..a.n()).any(|c| a.get(i, c) != 0 && a.get(j, c) != 0) {
                edges.push((i, j));
            }
        }
    }
    MultiGraph::new(a.m(), edges)
}

/// Bipartite graph with rows `0..m` and columns `m..m+n`, joined where the entry is nonzero.
pub fn incidence_graph(a: &FFMatrix) -> Result<MultiGraph> {
    let mut edges = Vec::new();
    for i in 0..a.m() {
        for j in 0..a.n() {
            if a.get(i, j) != 0 {
                edges.push((i, a.m() + j));
            }
        }
    }
    MultiGraph::new(a.m() + a.n(), edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Tree-depth straight from the closure definition: the least height of a rooted forest
    /// on the vertex set whose ancestor relation covers every edge.
    fn brute_tree_depth(g: &MultiGraph) -> u32 {
        let n = g.vertex_count();
        let mut best = u32::MAX;
        // parent[v] ∈ {none} ∪ V; enumerate all parent functions and keep forests.
        let total = (n as u64 + 1).pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let parent: Vec<Option<usize>> = (0..n)
                .map(|_| {
                    let d = (c % (n as u64 + 1)) as usize;
                    c /= n as u64 + 1;
                    if d == n {
                        None
                    } else {
                        Some(d)
                    }
                })
                .collect();
            let mut depth = vec![0u32; n];
            let mut ok = true;
            for v in 0..n {
                let (mut x, mut d) = (v, 1);
                while let Some(p) = parent[x] {
                    x = p;
                    d += 1;
                    if d > n as u32 {
                        ok = false;
                        break;
                    }
                }
                depth[v] = d;
            }
            if !ok {
                continue;
            }
            let ancestor = |a: usize, b: usize| {
                let mut x = b;
                loop {
                    if x == a {
                        return true;
                    }
                    match parent[x] {
                        Some(p) => x = p,
                        None => return false,
                    }
                }
            };
            if g.edges().iter().all(|&(u, v)| u == v || ancestor(u, v) || ancestor(v, u)) {
                best = best.min(depth.iter().copied().max().unwrap_or(0));
            }
        }
        best
    }

    #[test]
    fn cycle_matroid_examples() {
        assert_eq!(gen_cycle(3).unwrap().cycle_matroid().unwrap(), RankTable::uniform(2, 3).unwrap());
        assert_eq!(gen_path(5).unwrap().cycle_matroid().unwrap(), RankTable::free(4).unwrap());
        let l = MultiGraph::new(1, vec![(0, 0)]).unwrap().cycle_matroid().unwrap();
        assert!(l.is_loop(0));
    }

    #[test]
    fn tree_depth_examples() {
        assert_eq!(MultiGraph::new(1, vec![]).unwrap().tree_depth().unwrap(), 1);
        let star = MultiGraph::new(5, (1..5).map(|i| (0, i)).collect()).unwrap();
        assert_eq!(star.tree_depth().unwrap(), 2);
        assert_eq!(gen_k3n(3).unwrap().tree_depth().unwrap(), 4);
        assert_eq!(gen_k3n(4).unwrap().tree_depth().unwrap(), 4);
    }

    #[test]
    fn tree_depth_matches_forest_definition() {
        let graphs = [
            gen_cycle(4).unwrap(),
            gen_cycle(5).unwrap(),
            gen_complete(4).unwrap(),
            gen_path(5).unwrap(),
            gen_k3n(2).unwrap(),
            MultiGraph::new(5, vec![(0, 1), (1, 2), (3, 4), (2, 2)]).unwrap(),
        ];
        for g in &graphs {
            assert_eq!(g.tree_depth().unwrap(), brute_tree_depth(g), "{g:?}");
        }
    }

    #[test]
    fn cycle_tree_depth_bounds() {
        for l in 3..=10usize {
            let td = gen_cycle(l).unwrap().tree_depth().unwrap();
            let lower = 1 + (l as f64).log2().ceil() as u32;
            assert!(lower <= td, "lower bound at length {l}");
            let upper = 1 + ((l - 2) * (l - 2)) as u32;
            if l == 3 {
                // The triangle is K₃ with tree-depth 3, one above the quadratic bound.
                assert_eq!((td, upper), (3, 2));
            } else {
                assert!(td <= upper, "upper bound at length {l}");
            }
        }
    }

    #[test]
    fn two_tree_depth_examples() {
        assert_eq!(MultiGraph::new(1, vec![]).unwrap().two_tree_depth().unwrap(), 1);
        assert_eq!(gen_path(6).unwrap().two_tree_depth().unwrap(), 2);
        let forest = MultiGraph::new(6, vec![(0, 1), (1, 2), (1, 3), (4, 5)]).unwrap();
        assert_eq!(forest.two_tree_depth().unwrap(), 2);
        for tree in
            [gen_path(2).unwrap(), gen_path(4).unwrap(), MultiGraph::new(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap()]
        {
            let g = gen_tree_plus_two_universal(&tree).unwrap();
            assert_eq!(g.two_tree_depth().unwrap(), 4, "{g:?}");
        }
    }

    #[test]
    fn block_examples() {
        assert_eq!(gen_path(3).unwrap().blocks().unwrap(), vec![vec![0], vec![1]]);
        assert_eq!(gen_cycle(4).unwrap().blocks().unwrap(), vec![vec![0, 1, 2, 3]]);
        let bowtie = MultiGraph::new(5, vec![(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(bowtie.blocks().unwrap(), vec![vec![0, 1, 2], vec![3, 4, 5]]);
    }

    #[test]
    fn blocks_match_matroid_components() {
        // Every multigraph on 4 vertices with up to 6 edges, edges drawn from all 10 vertex pairs
        // including loops, sampled by a fixed stride to keep the run short.
        let pairs: Vec<(usize, usize)> = (0..4).flat_map(|a| (a..4).map(move |b| (a, b))).collect();
        let mut count = 0;
        for code in 0u64..10u64.pow(6) {
            if code % 97 != 0 {
                continue;
            }
            let mut c = code;
            let edges: Vec<(usize, usize)> = (0..6)
                .map(|_| {
                    let p = pairs[(c % 10) as usize];
                    c /= 10;
                    p
                })
                .collect();
            let g = MultiGraph::new(4, edges).unwrap();
            let m = g.cycle_matroid().unwrap();
            let comps: Vec<Vec<usize>> = m.components().iter().map(|&c| elements(c).collect()).collect();
            let mut comps = comps;
            comps.sort();
            assert_eq!(g.blocks().unwrap(), comps, "{g:?}");
            count += 1;
        }
        assert!(count > 1000);
    }

    #[test]
    fn generators() {
        let c65 = gen_fat_cycle(6, 5).unwrap();
        assert_eq!((c65.vertex_count(), c65.edge_count()), (6, 30));
        let d55 = gen_d(5, 5).unwrap();
        assert_eq!((d55.vertex_count(), d55.edge_count()), (6, 26));
        let mut count: HashMap<(usize, usize), usize> = HashMap::new();
        for &(u, v) in d55.edges() {
            *count.entry((u.min(v), u.max(v))).or_default() += 1;
        }
        assert_eq!(count.values().filter(|&&c| c == 1).count(), 1);
        let k31 = gen_k3n(1).unwrap();
        assert_eq!(k31.tree_depth().unwrap(), 2);
        assert_eq!(k31.edge_count(), 3);
        // Contracting the simple edge of D_{i,j} gives C_{i,j} with the same edge labels.
        for (i, j) in [(2, 2), (3, 2), (4, 2), (5, 5)] {
            let d = gen_d(i, j).unwrap();
            let contracted = d.contract_edge(d.edge_count() - 1).unwrap();
            let expected = gen_fat_cycle(i, j).unwrap();
            let norm = |g: &MultiGraph| -> Vec<(usize, usize)> {
                g.edges().iter().map(|&(u, v)| (u.min(v), u.max(v))).collect()
            };
            assert_eq!(norm(&contracted), norm(&expected));
        }
    }

    #[test]
    fn matrix_graphs() {
        let i2 = FFMatrix::identity(2, 2).unwrap();
        assert_eq!(primal_graph(&i2).unwrap().edge_count(), 0);
        assert_eq!(dual_graph(&i2).unwrap().edge_count(), 0);
        assert_eq!(incidence_graph(&i2).unwrap().edges(), &[(0, 2), (1, 3)]);
        let a = FFMatrix::from_rows(2, 2, &[vec![1, 1]]).unwrap();
        assert_eq!(primal_graph(&a).unwrap().edges(), &[(0, 1)]);
        assert_eq!(dual_graph(&a).unwrap().vertex_count(), 1);
        let z = FFMatrix::zero(2, 2, 3).unwrap();
        assert!([primal_graph(&z), dual_graph(&z), incidence_graph(&z)].iter().all(|g| g
            .as_ref()
            .unwrap()
            .edge_count()
            == 0));
    }

    #[test]
    fn graphic_csdsd_basics() {
        assert_eq!(gen_path(2).unwrap().graphic_csdsd().unwrap(), 1);
        assert_eq!(gen_path(6).unwrap().graphic_csdsd().unwrap(), 1);
        assert_eq!(MultiGraph::new(2, vec![(0, 1), (0, 1)]).unwrap().graphic_csdsd().unwrap(), 2);
        assert_eq!(gen_cycle(3).unwrap().graphic_csdsd().unwrap(), 2);
    }

    #[test]
    fn text_round_trip() {
        let g = gen_fat_cycle(3, 2).unwrap();
        let t = g.to_text();
        assert!(t.starts_with("graph 3 6\n1 2\n"));
        assert_eq!(MultiGraph::parse_text(&t).unwrap(), g);
        assert!(MultiGraph::parse_text("graph 2 1\n1 3\n").is_err());
        assert!(MultiGraph::parse_text("graph 2 2\n1 2\n").is_err());
    }
}
