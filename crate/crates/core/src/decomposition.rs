//! Decomposition-based width and depth parameters with exact small-instance solvers.
//!
//! Trees are stored as parent arrays (`None` marks the root). Element-to-node maps are
//! plain vectors indexed by element.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::caps::caps;
use crate::depth::{cstar_split, depth_value, Measure};
use crate::error::{check_cap, Error, Result};
use crate::extensions::guts_split;
use crate::matroid::{elements, full_mask, submasks, Mask, RankTable};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Tree {
    pub parent: Vec<Option<usize>>,
}

impl Tree {
    pub fn single() -> Self {
        Tree { parent: vec![None] }
    }

    fn add(&mut self, parent: Option<usize>) -> usize {
        self.parent.push(parent);
        self.parent.len() - 1
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Exactly one root and every parent chain reaches it.
    pub fn validate(&self) -> Result<()> {
        let n = self.parent.len();
        if self.parent.iter().filter(|p| p.is_none()).count() != 1 {
            return Err(Error::input("a tree needs exactly one root"));
        }
        for v in 0..n {
            let mut cur = v;
            let mut steps = 0;
            while let Some(p) = self.parent[cur] {
                if p >= n || steps > n {
                    return Err(Error::input("parent array does not describe a tree"));
                }
                cur = p;
                steps += 1;
            }
        }
        Ok(())
    }

    pub fn root(&self) -> usize {
        self.parent.iter().position(|p| p.is_none()).unwrap_or(0)
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.parent.len()];
        for (v, p) in self.parent.iter().enumerate() {
            if let Some(p) = *p {
                adj[v].push(p);
                adj[p].push(v);
            }
        }
        adj
    }

    pub fn edge_count(&self) -> usize {
        self.parent.len().saturating_sub(1)
    }

    pub fn children(&self, v: usize) -> Vec<usize> {
        (0..self.parent.len()).filter(|&u| self.parent[u] == Some(v)).collect()
    }

    fn distances(&self, adj: &[Vec<usize>], from: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; adj.len()];
        dist[from] = 0;
        let mut q = VecDeque::from([from]);
        while let Some(v) = q.pop_front() {
            for &u in &adj[v] {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    q.push_back(u);
                }
            }
        }
        dist
    }

    /// Minimum eccentricity over all nodes.
    pub fn radius(&self) -> usize {
        let adj = self.adjacency();
        (0..adj.len()).map(|v| self.distances(&adj, v).into_iter().max().unwrap_or(0)).min().unwrap_or(0)
    }

    /// Largest number of edges on a root-to-node path.
    pub fn height(&self) -> usize {
        let adj = self.adjacency();
        self.distances(&adj, self.root()).into_iter().max().unwrap_or(0)
    }

    /// Node sets of the components of T − v.
    pub fn components_without(&self, v: usize) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut out = Vec::new();
        for &start in &adj[v] {
            let mut seen = vec![start];
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if y != v && !seen.contains(&y) {
                        seen.push(y);
                        stack.push(y);
                    }
                }
            }
            out.push(seen);
        }
        out
    }

    /// Nodes in the subtree below `v`, including `v`.
    fn subtree(&self, v: usize) -> Vec<usize> {
        (0..self.parent.len())
            .filter(|&u| {
                let mut cur = Some(u);
                while let Some(c) = cur {
                    if c == v {
                        return true;
                    }
                    cur = self.parent[c];
                }
                false
            })
            .collect()
    }
}

fn preimage(map: &[usize], nodes: &[usize]) -> Mask {
    map.iter().enumerate().filter(|(_, v)| nodes.contains(v)).fold(0, |acc, (e, _)| acc | 1 << e)
}

/// Elements mapped bijectively onto the leaves of a tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeafTree {
    pub tree: Tree,
    pub sigma: Vec<usize>,
}

impl LeafTree {
    fn validate(&self, m: &RankTable) -> Result<Vec<Vec<usize>>> {
        self.tree.validate()?;
        let adj = self.tree.adjacency();
        let mut leaves: Vec<usize> = (0..adj.len()).filter(|&v| adj[v].len() <= 1).collect();
        let mut image = self.sigma.clone();
        leaves.sort_unstable();
        image.sort_unstable();
        if self.sigma.len() != m.n() || image != leaves {
            return Err(Error::input("σ must map the elements bijectively onto the leaves"));
        }
        Ok(adj)
    }
}

/// Width of the edge joining `v` to its parent: λ of the elements below `v`.
pub fn edge_width(m: &RankTable, t: &LeafTree, v: usize) -> Result<u32> {
    t.validate(m)?;
    if t.tree.parent.get(v).copied().flatten().is_none() {
        return Err(Error::input(format!("node {v} has no parent edge")));
    }
    Ok(m.lambda(preimage(&t.sigma, &t.tree.subtree(v))) as u32)
}

/// Maximum edge width of a branch decomposition; rejects trees that are not subcubic.
pub fn branch_decomposition_width(m: &RankTable, t: &LeafTree) -> Result<u32> {
    let adj = t.validate(m)?;
    if adj.iter().any(|a| a.len() > 3) {
        return Err(Error::input("branch decompositions use subcubic trees"));
    }
    let mut w = 0;
    for v in 0..t.tree.len() {
        if t.tree.parent[v].is_some() {
            w = w.max(edge_width(m, t, v)?);
        }
    }
    Ok(w)
}

/// Exact branch-width with an optimal decomposition; 0 when there are fewer than two elements.
///
/// Rooting the tree at the leaf of the last element, every other edge sits above a set X
/// whose subtree is a binary tree, so f(X) = min over splits of max(λ(X₁), λ(X₂), f(X₁), f(X₂)).
pub fn branch_decomposition(m: &RankTable) -> Result<(u32, LeafTree)> {
    check_cap("branch-width ground set", m.n() as u64, caps().bw_n as u64)?;
    let n = m.n();
    if n <= 1 {
        let tree = Tree { parent: (0..n).map(|_| None).collect() };
        return Ok((0, LeafTree { tree: if n == 0 { Tree::single() } else { tree }, sigma: (0..n).collect() }));
    }
    let rest = full_mask(n - 1);
    let mut f = vec![0u8; 1 << (n - 1)];
    let mut choice = vec![0 as Mask; 1 << (n - 1)];
    for x in 1..=rest {
        if x.count_ones() < 2 {
            continue;
        }
        let low = x & x.wrapping_neg();
        let mut best = u8::MAX;
        for sub in submasks(x & !low) {
            let x1 = low | sub;
            if x1 == x {
                continue;
            }
            let x2 = x & !x1;
            let v = m.lambda(x1).max(m.lambda(x2)).max(f[x1 as usize]).max(f[x2 as usize]);
            if v < best {
                best = v;
                choice[x as usize] = x1;
            }
        }
        f[x as usize] = best;
    }
    let value = m.lambda(1 << (n - 1)).max(f[rest as usize]) as u32;
    let mut tree = Tree { parent: Vec::new() };
    let mut sigma = vec![0; n];
    let root = tree.add(None);
    sigma[n - 1] = root;
    fn build(x: Mask, parent: usize, choice: &[Mask], tree: &mut Tree, sigma: &mut [usize]) {
        let v = tree.add(Some(parent));
        if x.count_ones() == 1 {
            sigma[x.trailing_zeros() as usize] = v;
        } else {
            let x1 = choice[x as usize];
            build(x1, v, choice, tree, sigma);
            build(x & !x1, v, choice, tree, sigma);
        }
    }
    build(rest, root, &choice, &mut tree, &mut sigma);
    Ok((value, LeafTree { tree, sigma }))
}

pub fn branch_width(m: &RankTable) -> Result<u32> {
    Ok(branch_decomposition(m)?.0)
}

/// max over unions U of blocks of λ(U).
fn nu(m: &RankTable, blocks: &[Mask]) -> u8 {
    (1u32..(1 << blocks.len())).map(|q| m.lambda(elements(q).fold(0, |acc, i| acc | blocks[i]))).max().unwrap_or(0)
}

/// Width of inner node `v`: the largest λ over unions of the leaf sets of the components of T − v.
pub fn bd_node_width(m: &RankTable, t: &LeafTree, v: usize) -> Result<u32> {
    t.validate(m)?;
    let blocks: Vec<Mask> = t.tree.components_without(v).iter().map(|c| preimage(&t.sigma, c)).collect();
    Ok(nu(m, &blocks) as u32)
}

/// Whether `t` is a (width, radius) = (tw, d) branch-depth decomposition.
pub fn verify_branch_depth(m: &RankTable, t: &LeafTree, tw: u32, d: u32) -> Result<bool> {
    let adj = t.validate(m)?;
    let inner: Vec<usize> = (0..adj.len()).filter(|&v| adj[v].len() >= 2).collect();
    if inner.is_empty() {
        return Ok(false);
    }
    for v in inner {
        if bd_node_width(m, t, v)? > tw {
            return Ok(false);
        }
    }
    Ok(t.tree.radius() as u32 <= d)
}

/// Decides "branch-depth ≤ k" with the tree rooted at a center. A node holding leaf set X
/// splits it into at least two child blocks; its width only depends on the blocks.
struct BranchDepth<'a> {
    m: &'a RankTable,
    k: u8,
    memo: HashMap<(Mask, u8), bool>,
}

impl BranchDepth<'_> {
    fn fits(&mut self, x: Mask, h: u8) -> bool {
        if x.count_ones() == 1 {
            return true;
        }
        if h == 0 {
            return false;
        }
        if let Some(&v) = self.memo.get(&(x, h)) {
            return v;
        }
        let v = self.split(x, h).is_some();
        self.memo.insert((x, h), v);
        v
    }

    fn split(&mut self, x: Mask, h: u8) -> Option<Vec<Mask>> {
        let mut blocks = Vec::new();
        if self.partition(x, x, h, &mut blocks) {
            Some(blocks)
        } else {
            None
        }
    }

    fn partition(&mut self, whole: Mask, rest: Mask, h: u8, blocks: &mut Vec<Mask>) -> bool {
        if rest == 0 {
            return blocks.len() >= 2 && nu(self.m, blocks) <= self.k;
        }
        let low = rest & rest.wrapping_neg();
        for sub in submasks(rest & !low) {
            let b = low | sub;
            if b == whole || !self.fits(b, h - 1) {
                continue;
            }
            blocks.push(b);
            if self.partition(whole, rest & !b, h, blocks) {
                return true;
            }
            blocks.pop();
        }
        false
    }

    fn build(&mut self, x: Mask, h: u8, parent: Option<usize>, tree: &mut Tree, sigma: &mut [usize]) {
        let v = tree.add(parent);
        if x.count_ones() == 1 {
            sigma[x.trailing_zeros() as usize] = v;
            return;
        }
        let blocks = self.split(x, h).expect("feasible split");
        for b in blocks {
            self.build(b, h - 1, Some(v), tree, sigma);
        }
    }
}

/// Exact branch-depth with an optimal decomposition, `None` when |E| ≤ 1 (value 0).
pub fn branch_depth_decomposition(m: &RankTable) -> Result<(u32, Option<LeafTree>)> {
    check_cap("branch-depth ground set", m.n() as u64, caps().bd_n as u64)?;
    if m.n() <= 1 {
        return Ok((0, None));
    }
    for k in 1..=m.n() as u8 {
        let mut s = BranchDepth { m, k, memo: HashMap::new() };
        if s.fits(m.full(), k) {
            let mut tree = Tree { parent: Vec::new() };
            let mut sigma = vec![0; m.n()];
            s.build(m.full(), k, None, &mut tree, &mut sigma);
            return Ok((k as u32, Some(LeafTree { tree, sigma })));
        }
    }
    unreachable!("a star of depth 1 has width at most the rank")
}

pub fn branch_depth(m: &RankTable) -> Result<u32> {
    Ok(branch_depth_decomposition(m)?.0)
}

/// ω(X₁, …, X_k) = Σ r(E − X_i) − (k − 1)·r(M); the empty family gives r(M).
pub fn omega(m: &RankTable, parts: &[Mask]) -> Result<i64> {
    let mut seen = 0;
    for &p in parts {
        if p & seen != 0 || p & !m.full() != 0 {
            return Err(Error::input("ω needs pairwise disjoint subsets of the ground set"));
        }
        seen |= p;
    }
    if parts.is_empty() {
        return Ok(m.rank() as i64);
    }
    let sum: i64 = parts.iter().map(|&p| m.r(m.full() & !p) as i64).sum();
    Ok(sum - (parts.len() as i64 - 1) * m.rank() as i64)
}

/// A tree with an arbitrary map from elements to nodes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecomp {
    pub tree: Tree,
    pub tau: Vec<usize>,
}

impl TreeDecomp {
    fn validate(&self, m: &RankTable) -> Result<()> {
        self.tree.validate()?;
        if self.tau.len() != m.n() || self.tau.iter().any(|&v| v >= self.tree.len()) {
            return Err(Error::input("τ must map every element to a node"));
        }
        Ok(())
    }
}

/// ω over the element sets of the components of T − u.
pub fn td_node_width(m: &RankTable, t: &TreeDecomp, u: usize) -> Result<i64> {
    t.validate(m)?;
    let parts: Vec<Mask> = t.tree.components_without(u).iter().map(|c| preimage(&t.tau, c)).collect();
    omega(m, &parts)
}

pub fn tree_decomposition_width(m: &RankTable, t: &TreeDecomp) -> Result<i64> {
    t.validate(m)?;
    (0..t.tree.len()).map(|u| td_node_width(m, t, u)).try_fold(i64::MIN, |a, w| Ok(a.max(w?)))
}

/// Decides whether a rooted tree-decomposition of width ≤ k and height ≤ d exists.
///
/// Subtrees holding no elements add empty parts, which leave ω unchanged, so they can be
/// dropped; a non-root node with an empty bag and one child can be contracted. Hence every
/// non-root subtree holds a nonempty element set S and its node chooses a bag B ⊆ S and a
/// partition of S − B into child blocks, with width ω(blocks…, E − S).
struct TreeSearch<'a> {
    m: &'a RankTable,
    k: i64,
    memo: HashMap<(Mask, u8), bool>,
}

impl TreeSearch<'_> {
    fn width(&self, blocks: &[Mask], outside: Option<Mask>) -> i64 {
        let mut parts = blocks.to_vec();
        parts.extend(outside);
        omega(self.m, &parts).expect("disjoint parts")
    }

    fn fits(&mut self, s: Mask, d: u8) -> bool {
        if let Some(&v) = self.memo.get(&(s, d)) {
            return v;
        }
        let v = self.node(s, d, false).is_some();
        self.memo.insert((s, d), v);
        v
    }

    /// Finds (bag, blocks) for a node holding `s`; the root holds everything.
    fn node(&mut self, s: Mask, d: u8, root: bool) -> Option<(Mask, Vec<Mask>)> {
        let outside = if root { None } else { Some(self.m.full() & !s) };
        for bag in submasks(s) {
            let rest = s & !bag;
            if rest == 0 {
                if self.width(&[], outside) <= self.k {
                    return Some((bag, Vec::new()));
                }
                continue;
            }
            if d == 0 {
                continue;
            }
            let min_blocks = if bag == 0 { 2 } else { 1 };
            let mut blocks = Vec::new();
            if self.partition(rest, d, min_blocks, outside, &mut blocks) {
                return Some((bag, blocks));
            }
        }
        None
    }

    fn partition(
        &mut self,
        rest: Mask,
        d: u8,
        min_blocks: usize,
        outside: Option<Mask>,
        blocks: &mut Vec<Mask>,
    ) -> bool {
        if rest == 0 {
            return blocks.len() >= min_blocks && self.width(blocks, outside) <= self.k;
        }
        let low = rest & rest.wrapping_neg();
        for sub in submasks(rest & !low) {
            let b = low | sub;
            if !self.fits(b, d - 1) {
                continue;
            }
            blocks.push(b);
            if self.partition(rest & !b, d, min_blocks, outside, blocks) {
                return true;
            }
            blocks.pop();
        }
        false
    }

    fn build(&mut self, s: Mask, d: u8, parent: Option<usize>, tree: &mut Tree, tau: &mut [usize]) {
        let v = tree.add(parent);
        let (bag, blocks) = self.node(s, d, parent.is_none()).expect("feasible node");
        for e in elements(bag) {
            tau[e] = v;
        }
        for b in blocks {
            self.build(b, d - 1, Some(v), tree, tau);
        }
    }
}

fn tree_search(m: &RankTable, depth_limit: impl Fn(i64) -> u8) -> Result<(u32, TreeDecomp)> {
    check_cap("tree-decomposition ground set", m.n() as u64, caps().mtd_n as u64)?;
    for k in 0..=m.rank() as i64 {
        let d = depth_limit(k);
        let mut s = TreeSearch { m, k, memo: HashMap::new() };
        if s.node(m.full(), d, true).is_some() {
            let mut tree = Tree { parent: Vec::new() };
            let mut tau = vec![0; m.n()];
            s.build(m.full(), d, None, &mut tree, &mut tau);
            return Ok((k as u32, TreeDecomp { tree, tau }));
        }
    }
    unreachable!("the one-node decomposition has width r(M)")
}

/// Exact matroid tree-width with an optimal decomposition.
pub fn matroid_tree_width_decomposition(m: &RankTable) -> Result<(u32, TreeDecomp)> {
    let n = m.n() as u8;
    tree_search(m, |_| 2 * n + 1)
}

pub fn matroid_tree_width(m: &RankTable) -> Result<u32> {
    Ok(matroid_tree_width_decomposition(m)?.0)
}

/// Exact matroid tree-depth: least k with a decomposition of width ≤ k and radius ≤ k,
/// searched with the tree rooted at a center.
pub fn matroid_tree_depth_decomposition(m: &RankTable) -> Result<(u32, TreeDecomp)> {
    tree_search(m, |k| k as u8)
}

pub fn matroid_tree_depth(m: &RankTable) -> Result<u32> {
    Ok(matroid_tree_depth_decomposition(m)?.0)
}

/// Tree-decomposition of width ≤ csd(M) and radius ≤ csd(M) following the c*-depth recursion:
/// components hang below a fresh node, and a connected matroid reuses the decomposition of
/// its guts contraction.
pub fn csd_to_treedecomp(m: &RankTable) -> Result<TreeDecomp> {
    check_cap("c*-depth ground set", m.n() as u64, caps().cstar_n as u64)?;
    let mut tree = Tree { parent: Vec::new() };
    let mut tau = vec![0; m.n()];
    fn build(m: &RankTable, s: Mask, parent: Option<usize>, tree: &mut Tree, tau: &mut [usize]) -> Result<()> {
        let v = tree.add(parent);
        if s.count_ones() <= 1 {
            for e in elements(s) {
                tau[e] = v;
            }
            return Ok(());
        }
        let local = m.minor_on(s, m.full() & !s);
        let expand = |x: Mask| elements(s).enumerate().fold(0, |acc, (i, e)| acc | ((x >> i) & 1) << e);
        let comps = local.components();
        let parts: Vec<Mask> = if comps.len() > 1 {
            comps
        } else {
            let sp = cstar_split(&local)?;
            guts_split(&local, sp.a, sp.b).components()
        };
        for c in parts {
            build(m, expand(c), Some(v), tree, tau)?;
        }
        Ok(())
    }
    build(m, m.full(), None, &mut tree, &mut tau)?;
    Ok(TreeDecomp { tree, tau })
}

/// A rooted tree with |E(T)| = r(M) and elements mapped into its leaves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CStarDecomp {
    pub tree: Tree,
    pub f: Vec<usize>,
}

impl CStarDecomp {
    /// Edges on a longest root-to-leaf path; the contraction*-depth of the decomposition.
    pub fn depth(&self) -> usize {
        self.tree.height()
    }
}

fn root_paths(tree: &Tree) -> Vec<u64> {
    (0..tree.len())
        .map(|v| {
            let mut path = 0u64;
            let mut cur = v;
            while let Some(p) = tree.parent[cur] {
                path |= 1 << cur;
                cur = p;
            }
            path
        })
        .collect()
}

/// Checks |E(T)| = r(M), that f maps into leaves, and r(X) ≤ |E(T_X)| for all X.
pub fn verify_cstar_decomp(m: &RankTable, d: &CStarDecomp) -> Result<bool> {
    d.tree.validate()?;
    check_cap("tree nodes", d.tree.len() as u64, 64)?;
    if d.f.len() != m.n() || d.f.iter().any(|&v| v >= d.tree.len()) {
        return Err(Error::input("f must map every element to a node"));
    }
    if d.tree.edge_count() != m.rank() as usize {
        return Ok(false);
    }
    if d.f.iter().any(|&v| !d.tree.children(v).is_empty()) {
        return Ok(false);
    }
    let paths = root_paths(&d.tree);
    Ok((0..=m.full()).all(|x| {
        let covered = elements(x).fold(0u64, |acc, e| acc | paths[d.f[e]]);
        m.r(x) as u32 <= covered.count_ones()
    }))
}

/// Rooted unlabeled trees with `nodes` nodes and height ≤ h, each as a list of child lists.
fn rooted_shapes(nodes: usize, h: usize, memo: &mut HashMap<(usize, usize), Vec<Shape>>) -> Vec<Shape> {
    if nodes == 1 {
        return vec![Shape(Vec::new())];
    }
    if h == 0 {
        return Vec::new();
    }
    if let Some(v) = memo.get(&(nodes, h)) {
        return v.clone();
    }
    let mut out = Vec::new();
    let mut kids = Vec::new();
    child_multisets(nodes - 1, nodes - 1, usize::MAX, h - 1, memo, &mut kids, &mut out);
    memo.insert((nodes, h), out.clone());
    out
}

#[derive(Debug, Clone)]
struct Shape(Vec<Shape>);

fn child_multisets(
    remaining: usize,
    max_size: usize,
    max_index: usize,
    h: usize,
    memo: &mut HashMap<(usize, usize), Vec<Shape>>,
    kids: &mut Vec<Shape>,
    out: &mut Vec<Shape>,
) {
    if remaining == 0 {
        out.push(Shape(kids.clone()));
        return;
    }
    for size in (1..=remaining.min(max_size)).rev() {
        let options = rooted_shapes(size, h, memo);
        let top = if size == max_size {
            max_index.min(options.len().saturating_sub(1))
        } else {
            options.len().saturating_sub(1)
        };
        if options.is_empty() {
            continue;
        }
        for i in (0..=top).rev() {
            kids.push(options[i].clone());
            child_multisets(remaining - size, size, i, h, memo, kids, out);
            kids.pop();
        }
    }
}

fn shape_tree(s: &Shape) -> Tree {
    fn go(s: &Shape, parent: Option<usize>, t: &mut Tree) {
        let v = t.add(parent);
        for c in &s.0 {
            go(c, Some(v), t);
        }
    }
    let mut t = Tree { parent: Vec::new() };
    go(s, None, &mut t);
    t
}

/// Parallel-class representatives of the non-loops, and for every element its representative.
fn simplification(m: &RankTable) -> (Vec<usize>, Vec<Option<usize>>) {
    let mut reps: Vec<usize> = Vec::new();
    let mut rep_of = vec![None; m.n()];
    for e in 0..m.n() {
        if m.is_loop(e) {
            continue;
        }
        match reps.iter().find(|&&r| m.r(1 << r | 1 << e) == 1) {
            Some(&r) => rep_of[e] = Some(r),
            None => {
                reps.push(e);
                rep_of[e] = Some(e);
            }
        }
    }
    (reps, rep_of)
}

fn assign(m: &RankTable, reps: &[usize], leaves: &[usize], paths: &[u64], f: &mut Vec<usize>) -> bool {
    let i = f.len();
    if i == reps.len() {
        return true;
    }
    for &leaf in leaves {
        f.push(leaf);
        // Check every subset of the assigned representatives that contains the new one.
        let ok = (0u32..(1 << i)).all(|sub| {
            let x = elements(sub).fold(1u32 << reps[i], |acc, j| acc | 1 << reps[j]);
            let covered = elements(sub).fold(paths[leaf], |acc, j| acc | paths[f[j]]);
            m.r(x) as u32 <= covered.count_ones()
        });
        if ok && assign(m, reps, leaves, paths, f) {
            return true;
        }
        f.pop();
    }
    false
}

/// Minimum-depth contraction*-depth decomposition by exhaustive search over rooted tree shapes
/// with r(M) edges. Loops may go to any leaf and parallel elements share a leaf.
pub fn cstar_decomp_brute(m: &RankTable) -> Result<(u32, CStarDecomp)> {
    check_cap("contraction*-depth ground set", m.n() as u64, caps().cstar_decomp_n as u64)?;
    let r = m.rank() as usize;
    let (reps, rep_of) = simplification(m);
    let mut memo = HashMap::new();
    for h in 0..=r {
        for shape in rooted_shapes(r + 1, h, &mut memo) {
            let tree = shape_tree(&shape);
            let leaves: Vec<usize> = (0..tree.len()).filter(|&v| tree.children(v).is_empty()).collect();
            let paths = root_paths(&tree);
            let mut f = Vec::new();
            if assign(m, &reps, &leaves, &paths, &mut f) {
                let map = (0..m.n())
                    .map(|e| match rep_of[e] {
                        Some(r) => f[reps.iter().position(|&x| x == r).expect("representative")],
                        None => leaves[0],
                    })
                    .collect();
                return Ok((h as u32, CStarDecomp { tree, f: map }));
            }
        }
    }
    unreachable!("a star with r(M) leaves always works")
}

/// Minimum over all contraction*-depth decompositions of the root-to-leaf edge count.
pub fn cstar_decomp_min_height(m: &RankTable) -> Result<u32> {
    Ok(cstar_decomp_brute(m)?.0)
}

/// Builds a decomposition from an optimal c*-depth recursion: coloops become leaves at the
/// root, otherwise the two sides of a guts bipartition share a root and a path of length λ
/// is added on top. Depth ≤ csd(M) − 1 unless M has positive rank and only loops and
/// coloops, where a star of depth 1 is returned.
pub fn build_cstar_decomp(m: &RankTable) -> Result<CStarDecomp> {
    check_cap("c*-depth ground set", m.n() as u64, caps().cstar_n as u64)?;
    let mut tree = Tree { parent: Vec::new() };
    let mut f = vec![0; m.n()];
    let root = tree.add(None);
    if m.rank() > 0 && m.only_loops_and_coloops() {
        let mut first = None;
        for e in elements(m.coloops()) {
            let leaf = tree.add(Some(root));
            f[e] = leaf;
            first.get_or_insert(leaf);
        }
        for e in elements(m.loops()) {
            f[e] = first.expect("positive rank");
        }
    } else {
        decompose_into(m, m.full(), root, &mut tree, &mut f)?;
        // A loop-only side sits on a node that may have gained children; moving elements
        // down to a leaf only enlarges the covered subtrees.
        for v in f.iter_mut() {
            while let Some(&c) = tree.children(*v).first() {
                *v = c;
            }
        }
    }
    Ok(CStarDecomp { tree, f })
}

/// Attaches a decomposition of M/(E − s) below `root`, which is already present.
fn decompose_into(m: &RankTable, s: Mask, root: usize, tree: &mut Tree, f: &mut [usize]) -> Result<()> {
    let local = m.minor_on(s, m.full() & !s);
    let expand = |x: Mask| elements(s).enumerate().fold(0, |acc, (i, e)| acc | ((x >> i) & 1) << e);
    if local.rank() == 0 {
        for e in elements(s) {
            f[e] = root;
        }
        return Ok(());
    }
    let coloops = local.coloops();
    if coloops != 0 {
        for e in elements(expand(coloops)) {
            f[e] = tree.add(Some(root));
        }
        return decompose_into(m, s & !expand(coloops), root, tree, f);
    }
    let sp = cstar_split(&local)?;
    let mut top = root;
    for _ in 0..sp.lambda {
        top = tree.add(Some(top));
    }
    decompose_into(m, expand(sp.a), top, tree, f)?;
    decompose_into(m, expand(sp.b), top, tree, f)
}

/// c*-depth, used by callers comparing decompositions with the recursive measure.
pub fn csd(m: &RankTable) -> Result<u32> {
    depth_value(m, Measure::CStar)
}
