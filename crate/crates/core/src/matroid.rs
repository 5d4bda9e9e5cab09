//! Matroids on ground sets `{0, …, n−1}` stored as full rank tables.
//!
//! Subsets are `u32` bitmasks; bit `i` stands for element `i`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::caps::caps;
use crate::error::{check_cap, Error, Result};

pub type Mask = u32;

/// Iterates the elements of a mask in increasing order.
pub fn elements(mut x: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            None
        } else {
            let e = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(e)
        }
    })
}

/// Iterates all submasks of `x`, including `0` and `x`.
pub fn submasks(x: Mask) -> impl Iterator<Item = Mask> {
    let mut cur = Some(x);
    std::iter::from_fn(move || {
        let s = cur?;
        cur = if s == 0 { None } else { Some((s - 1) & x) };
        Some(s)
    })
}

pub fn full_mask(n: usize) -> Mask {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Precomputes the embedding of masks over `0..k` into masks over the positions of `ground`.
pub(crate) fn expansion_table(ground: Mask) -> Vec<Mask> {
    let pos: Vec<Mask> = elements(ground).map(|e| 1 << e).collect();
    let k = pos.len();
    let mut t = vec![0; 1 << k];
    for y in 1usize..(1 << k) {
        let low = y.trailing_zeros() as usize;
        t[y] = t[y & (y - 1)] | pos[low];
    }
    t
}

/// Components of the matroid on `s` with rank function `rk`, via fundamental circuits of a
/// greedy basis. Classes are ordered by least element.
pub(crate) fn components_of(s: Mask, rk: impl Fn(Mask) -> u8) -> Vec<Mask> {
    let mut basis: Mask = 0;
    let mut rb = 0;
    for e in elements(s) {
        let r = rk(basis | 1 << e);
        if r > rb {
            basis |= 1 << e;
            rb = r;
        }
    }
    let mut class: [Mask; 32] = [0; 32];
    for e in elements(s) {
        class[e] = 1 << e;
    }
    for x in elements(s & !basis) {
        let mut circuit: Mask = 1 << x;
        for b in elements(basis) {
            if rk((basis & !(1 << b)) | 1 << x) == rb {
                circuit |= 1 << b;
            }
        }
        if circuit.count_ones() > 1 {
            let merged = elements(circuit).fold(0, |acc, e| acc | class[e]);
            for e in elements(merged) {
                class[e] = merged;
            }
        }
    }
    let mut out: Vec<Mask> = Vec::new();
    for e in elements(s) {
        if class[e].trailing_zeros() as usize == e {
            out.push(class[e]);
        }
    }
    out
}

/// Labeled memo key: the ground-set size followed by every rank.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fingerprint(pub Vec<u8>);

impl fmt::Debug for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fingerprint(n={}, {} bytes)", self.0.first().copied().unwrap_or(0), self.0.len())
    }
}

/// A matroid given by the rank of every subset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RankTable {
    n: usize,
    ranks: Vec<u8>,
}

impl fmt::Debug for RankTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RankTable(n={}, rank={}, {:?})", self.n, self.rank(), self.ranks)
    }
}

impl RankTable {
    /// Builds and validates a rank table.
    pub fn from_ranks(n: usize, ranks: Vec<u8>) -> Result<Self> {
        check_cap("rank table ground set", n as u64, caps().rank_table_n as u64)?;
        if ranks.len() != 1usize << n {
            return Err(Error::InvalidMatroid(format!("expected {} ranks, got {}", 1usize << n, ranks.len())));
        }
        let m = RankTable { n, ranks };
        m.check_axioms()?;
        Ok(m)
    }

    /// Builds a rank table whose axioms hold by construction.
    pub(crate) fn from_ranks_unchecked(n: usize, ranks: Vec<u8>) -> Self {
        debug_assert_eq!(ranks.len(), 1usize << n);
        let m = RankTable { n, ranks };
        debug_assert!(m.check_axioms().is_ok(), "{:?}", m.check_axioms());
        m
    }

    /// Checks normalization, unit increase and (local) submodularity.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.n;
        if self.ranks[0] != 0 {
            return Err(Error::InvalidMatroid("rank of the empty set is not 0".into()));
        }
        for x in 0..(1u32 << n) {
            let rx = self.r(x);
            for e in 0..n {
                if x >> e & 1 == 1 {
                    continue;
                }
                let re = self.r(x | 1 << e);
                if re < rx || re > rx + 1 {
                    return Err(Error::InvalidMatroid(format!("unit increase fails at {x:#b} + {e}")));
                }
                for f in (e + 1)..n {
                    if x >> f & 1 == 1 {
                        continue;
                    }
                    if re + self.r(x | 1 << f) < rx + self.r(x | 1 << e | 1 << f) {
                        return Err(Error::InvalidMatroid(format!("submodularity fails at {x:#b} with {e}, {f}")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn empty() -> Self {
        RankTable { n: 0, ranks: vec![0] }
    }

    /// U_{k,n}: every set of size at most k is independent.
    pub fn uniform(k: usize, n: usize) -> Result<Self> {
        if k > n {
            return Err(Error::input(format!("uniform matroid needs k ≤ n (k={k}, n={n})")));
        }
        check_cap("rank table ground set", n as u64, caps().rank_table_n as u64)?;
        let ranks = (0..1u32 << n).map(|x| (x.count_ones() as usize).min(k) as u8).collect();
        Ok(Self::from_ranks_unchecked(n, ranks))
    }

    pub fn free(n: usize) -> Result<Self> {
        Self::uniform(n, n)
    }

    /// The rank-0 matroid: every element is a loop.
    pub fn all_loops(n: usize) -> Result<Self> {
        Self::uniform(0, n)
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn full(&self) -> Mask {
        full_mask(self.n)
    }
    #[inline]
    pub fn r(&self, x: Mask) -> u8 {
        self.ranks[x as usize]
    }
    pub fn rank(&self) -> u8 {
        self.ranks[self.full() as usize]
    }
    pub fn ranks(&self) -> &[u8] {
        &self.ranks
    }

    pub fn fingerprint(&self) -> Fingerprint {
        let mut v = Vec::with_capacity(self.ranks.len() + 1);
        v.push(self.n as u8);
        v.extend_from_slice(&self.ranks);
        Fingerprint(v)
    }

    pub fn from_fingerprint(fp: &Fingerprint) -> Result<Self> {
        let (&n, ranks) = fp.0.split_first().ok_or_else(|| Error::InvalidMatroid("empty fingerprint".into()))?;
        Self::from_ranks(n as usize, ranks.to_vec())
    }

    /// r*(X) = |X| + r(E−X) − r(M).
    pub fn dual(&self) -> Self {
        let full = self.full();
        let rk = self.rank();
        let ranks = (0..=full).map(|x| (x.count_ones() as u8 + self.r(full & !x)) - rk).collect();
        Self::from_ranks_unchecked(self.n, ranks)
    }

    /// The minor on `ground` with `con` contracted, relabeled compactly in increasing order.
    /// Elements outside `ground ∪ con` are deleted.
    pub fn minor_on(&self, ground: Mask, con: Mask) -> Self {
        debug_assert_eq!(ground & con, 0);
        let exp = expansion_table(ground);
        let rc = self.r(con);
        let ranks = exp.iter().map(|&x| self.r(x | con) - rc).collect();
        Self::from_ranks_unchecked(ground.count_ones() as usize, ranks)
    }

    /// Deletes `x` and contracts `y`, which must be disjoint.
    pub fn minor(&self, del: Mask, con: Mask) -> Result<Self> {
        if del & con != 0 {
            return Err(Error::input("deleted and contracted sets overlap"));
        }
        self.check_subset(del | con)?;
        Ok(self.minor_on(self.full() & !(del | con), con))
    }

    pub fn delete(&self, x: Mask) -> Result<Self> {
        self.minor(x, 0)
    }

    pub fn contract(&self, x: Mask) -> Result<Self> {
        self.minor(0, x)
    }

    /// Restriction to `x`, relabeled compactly.
    pub fn restrict(&self, x: Mask) -> Self {
        self.minor_on(x & self.full(), 0)
    }

    fn check_subset(&self, x: Mask) -> Result<()> {
        if x & !self.full() != 0 {
            return Err(Error::input(format!("set {x:#b} is not inside a ground set of size {}", self.n)));
        }
        Ok(())
    }

    /// λ(X) = r(X) + r(E−X) − r(M).
    #[inline]
    pub fn lambda(&self, x: Mask) -> u8 {
        self.r(x) + self.r(self.full() & !x) - self.rank()
    }

    /// Finest partition into sets of connectivity 0, classes ordered by least element.
    pub fn components(&self) -> Vec<Mask> {
        components_of(self.full(), |x| self.r(x))
    }

    pub fn is_connected(&self) -> bool {
        self.n >= 1 && self.components().len() == 1
    }

    /// Isomorphism-invariant representative: the least relabeled rank vector.
    pub fn canonical(&self) -> RankTable {
        let n = self.n;
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best = self.clone();
        let mut buf = vec![0u8; self.ranks.len()];
        // Heap's algorithm over all relabelings.
        let mut c = vec![0usize; n];
        let mut i = 0;
        while i < n {
            if c[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(c[i], i);
                }
                for x in 0..=self.full() {
                    let y = elements(x).fold(0u32, |m, e| m | 1 << perm[e]);
                    buf[y as usize] = self.ranks[x as usize];
                }
                if buf < best.ranks {
                    best.ranks.copy_from_slice(&buf);
                }
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        best
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.r(1 << e) == 0
    }

    pub fn is_coloop(&self, e: usize) -> bool {
        self.r(self.full() & !(1 << e)) < self.rank()
    }

    pub fn loops(&self) -> Mask {
        (0..self.n).filter(|&e| self.is_loop(e)).fold(0, |m, e| m | 1 << e)
    }

    pub fn coloops(&self) -> Mask {
        (0..self.n).filter(|&e| self.is_coloop(e)).fold(0, |m, e| m | 1 << e)
    }

    /// True when every element is a loop or a coloop.
    pub fn only_loops_and_coloops(&self) -> bool {
        self.loops() | self.coloops() == self.full()
    }

    pub fn is_independent(&self, x: Mask) -> bool {
        self.r(x) as u32 == x.count_ones()
    }

    /// Inclusion-minimal dependent sets, in increasing mask order.
    pub fn circuits(&self) -> Vec<Mask> {
        (1..=self.full())
            .filter(|&x| !self.is_independent(x) && elements(x).all(|e| self.is_independent(x & !(1 << e))))
            .collect()
    }

    /// Largest circuit size, or 1 when there is no circuit.
    pub fn circumference(&self) -> usize {
        self.circuits().iter().map(|c| c.count_ones() as usize).max().unwrap_or(1)
    }

    pub fn cocircumference(&self) -> usize {
        self.dual().circumference()
    }

    pub fn closure(&self, x: Mask) -> Mask {
        let rx = self.r(x);
        (0..self.n).filter(|&e| self.r(x | 1 << e) == rx).fold(x, |m, e| m | 1 << e)
    }

    pub fn is_flat(&self, x: Mask) -> bool {
        self.closure(x) == x
    }

    pub fn is_modular_pair(&self, x: Mask, y: Mask) -> bool {
        self.r(x) as u16 + self.r(y) as u16 == self.r(x | y) as u16 + self.r(x & y) as u16
    }

    pub fn is_bispan(&self, x: Mask, y: Mask) -> bool {
        self.closure(x) | self.closure(y) == self.full()
    }

    pub fn is_connected_bispan(&self, x: Mask, y: Mask) -> bool {
        self.is_bispan(x, y) && self.r(x) + self.r(y) > self.rank()
    }

    /// `self` on the low indices, `other` shifted above them.
    pub fn direct_sum(&self, other: &RankTable) -> Result<Self> {
        let n = self.n + other.n;
        check_cap("rank table ground set", n as u64, caps().rank_table_n as u64)?;
        let lo = self.full();
        let ranks = (0..1u32 << n).map(|x| self.r(x & lo) + other.r(x >> self.n)).collect();
        Ok(Self::from_ranks_unchecked(n, ranks))
    }

    /// Relabels element `e` as `perm[e]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let mut ranks = vec![0u8; self.ranks.len()];
        for x in 0..=self.full() {
            let y = elements(x).fold(0u32, |m, e| m | 1 << perm[e]);
            ranks[y as usize] = self.r(x);
        }
        Self::from_ranks_unchecked(self.n, ranks)
    }

    /// Named fixtures: `uniform {k, n}`, `free {n}`, `loops {n}`, `fano`, and the graph
    /// families `cycle {n}`, `fat_cycle {i, j}`, `d_graph {i, j}`, `k3n {n}`, `complete {n}`.
    pub fn named(name: &str, params: &serde_json::Value) -> Result<Self> {
        let get = |k: &str| -> Result<usize> {
            params
                .get(k)
                .and_then(|v| v.as_u64())
                .map(|v| v as usize)
                .ok_or_else(|| Error::input(format!("fixture '{name}' needs integer parameter '{k}'")))
        };
        match name {
            "uniform" => Self::uniform(get("k")?, get("n")?),
            "free" => Self::free(get("n")?),
            "loops" => Self::all_loops(get("n")?),
            "fano" => crate::gf::FFMatrix::from_rows(2, 7, &fano_rows())?.vector_matroid(),
            _ => crate::graphs::named_graph(name, params)?.cycle_matroid(),
        }
    }
}

pub(crate) fn fano_rows() -> Vec<Vec<i64>> {
    (0..3).map(|i| (1..=7).map(|c| (c >> (2 - i)) & 1).collect()).collect()
}

type Evaluator = dyn Fn(Mask) -> u8 + Send + Sync;

/// A matroid given by a rank function evaluated on demand and cached.
pub struct OracleMatroid {
    n: usize,
    eval: Arc<Evaluator>,
    cache: Mutex<HashMap<Mask, u8>>,
    provenance: Option<String>,
}

impl fmt::Debug for OracleMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OracleMatroid(n={}, {:?})", self.n, self.provenance)
    }
}

impl OracleMatroid {
    pub fn new(n: usize, eval: impl Fn(Mask) -> u8 + Send + Sync + 'static, provenance: Option<String>) -> Self {
        OracleMatroid { n, eval: Arc::new(eval), cache: Mutex::new(HashMap::new()), provenance }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn provenance(&self) -> Option<&str> {
        self.provenance.as_deref()
    }

    pub fn r(&self, x: Mask) -> u8 {
        if let Some(&v) = self.cache.lock().expect("oracle cache").get(&x) {
            return v;
        }
        let v = (self.eval)(x);
        self.cache.lock().expect("oracle cache").entry(x).or_insert(v);
        v
    }

    /// Evaluates every subset and validates the rank axioms.
    pub fn materialize(&self) -> Result<RankTable> {
        check_cap("rank table ground set", self.n as u64, caps().rank_table_n as u64)?;
        let ranks = (0..1u32 << self.n).map(|x| (self.eval)(x)).collect();
        RankTable::from_ranks(self.n, ranks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Circuits by definition: dependent sets none of whose proper subsets are dependent.
    fn brute_circuits(m: &RankTable) -> Vec<Mask> {
        (1..=m.full())
            .filter(|&x| !m.is_independent(x) && submasks(x).filter(|&s| s != x).all(|s| m.is_independent(s)))
            .collect()
    }

    #[test]
    fn duals() {
        assert_eq!(RankTable::uniform(1, 3).unwrap().dual(), RankTable::uniform(2, 3).unwrap());
        assert_eq!(RankTable::free(4).unwrap().dual(), RankTable::all_loops(4).unwrap());
        assert_eq!(RankTable::uniform(3, 4).unwrap().dual(), RankTable::uniform(1, 4).unwrap());
    }

    #[test]
    fn minors() {
        let u23 = RankTable::uniform(2, 3).unwrap();
        assert_eq!(u23.contract(1).unwrap(), RankTable::uniform(1, 2).unwrap());
        let c5 = RankTable::uniform(4, 5).unwrap();
        for e in 0..5 {
            assert_eq!(c5.delete(1 << e).unwrap(), RankTable::free(4).unwrap());
        }
        assert_eq!(u23.contract(0).unwrap(), u23);
        assert_eq!(u23.delete(0).unwrap(), u23);
        assert!(u23.minor(1, 1).is_err());
        assert!(u23.delete(8).is_err());
    }

    #[test]
    fn lambda_and_components() {
        let u12 = RankTable::uniform(1, 2).unwrap();
        let s = u12.direct_sum(&u12).unwrap();
        assert_eq!(s.components(), vec![0b0011, 0b1100]);
        assert_eq!(s.lambda(0b0011), 0);
        assert_eq!(RankTable::uniform(4, 5).unwrap().components(), vec![0b11111]);
        assert_eq!(RankTable::free(3).unwrap().components(), vec![1, 2, 4]);
        let u34 = RankTable::uniform(3, 4).unwrap();
        assert_eq!(u34.lambda(0b0011), 1);
        assert_eq!(u34.lambda(0), 0);
        assert!(RankTable::empty().components().is_empty());
        assert!(!RankTable::empty().is_connected());
    }

    #[test]
    fn circuits_and_circumference() {
        let u24 = RankTable::uniform(2, 4).unwrap();
        assert!(u24.circuits().iter().all(|c| c.count_ones() == 3));
        assert_eq!(u24.circuits().len(), 4);
        assert_eq!(u24.circumference(), 3);
        assert_eq!(RankTable::free(3).unwrap().circumference(), 1);
        let fano = RankTable::named("fano", &serde_json::json!({})).unwrap();
        assert_eq!(fano.circuits(), brute_circuits(&fano));
        assert_eq!(fano.circumference(), 4);
        assert_eq!(fano.n(), 7);
        assert_eq!(fano.rank(), 3);
    }

    #[test]
    fn closure_and_pairs() {
        let u12 = RankTable::uniform(1, 2).unwrap();
        assert_eq!(u12.closure(1), 0b11);
        let u23 = RankTable::uniform(2, 3).unwrap();
        assert!(u23.is_modular_pair(1, 2));
        let u34 = RankTable::uniform(3, 4).unwrap();
        for x in 1..15u32 {
            assert_eq!(u34.is_connected_bispan(x, 15 & !x), u34.lambda(x) > 0);
        }
    }

    #[test]
    fn named_fixtures() {
        let v = serde_json::json!({"k": 1, "n": 2});
        assert_eq!(RankTable::named("uniform", &v).unwrap(), RankTable::uniform(1, 2).unwrap());
        assert_eq!(RankTable::named("free", &serde_json::json!({"n": 4})).unwrap(), RankTable::free(4).unwrap());
        assert!(RankTable::named("nope", &v).is_err());
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(RankTable::from_ranks(1, vec![1, 1]).is_err());
        assert!(RankTable::from_ranks(1, vec![0, 2]).is_err());
        // r({a}) = r({b}) = 1, r({a,b}) = 0 breaks monotonicity.
        assert!(RankTable::from_ranks(2, vec![0, 1, 1, 0]).is_err());
        assert!(RankTable::from_ranks(2, vec![0, 1]).is_err());
    }

    #[test]
    fn oracle_materializes() {
        let o = OracleMatroid::new(3, |x| x.count_ones().min(2) as u8, Some("test".into()));
        assert_eq!(o.r(7), 2);
        assert_eq!(o.materialize().unwrap(), RankTable::uniform(2, 3).unwrap());
    }
}
