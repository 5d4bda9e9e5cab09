//! Single-element extensions and coextensions.
//!
//! Extensions are parameterized by modular cuts of flats; free and relatively free
//! extensions are given pointwise. The new element always takes the last index.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::caps::caps;
use crate::error::{check_cap, Error, Result};
use crate::matroid::{elements, full_mask, Fingerprint, Mask, OracleMatroid, RankTable};

/// All flats in increasing mask order.
pub fn flats(m: &RankTable) -> Result<Vec<Mask>> {
    check_cap("flat enumeration ground set", m.n() as u64, caps().flats_n as u64)?;
    let cl = closure_table(m);
    Ok((0..=m.full()).filter(|&x| cl[x as usize] == x).collect())
}

fn closure_table(m: &RankTable) -> Vec<Mask> {
    (0..=m.full()).map(|x| m.closure(x)).collect()
}

/// A modular cut of a host matroid, stored as its sorted list of member flats.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModularCut {
    host: Fingerprint,
    members: Vec<Mask>,
}

impl ModularCut {
    /// Closes the given flats under up-sets and modular intersections.
    pub fn generated_by(m: &RankTable, generators: &[Mask]) -> Result<Self> {
        let lattice = FlatLattice::new(m)?;
        let mut cut = 0u128;
        for &g in generators {
            let i = lattice.index_of(g).ok_or_else(|| Error::input(format!("{g:#b} is not a flat")))?;
            cut = lattice.close(cut, i);
        }
        Ok(lattice.to_cut(m, cut))
    }

    /// Checks a family of sets against the modular cut axioms for `m`.
    pub fn from_members(m: &RankTable, mut members: Vec<Mask>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        let set: HashSet<Mask> = members.iter().copied().collect();
        for &f in &members {
            if f & !m.full() != 0 || !m.is_flat(f) {
                return Err(Error::input(format!("cut member {f:#b} is not a flat")));
            }
        }
        for g in flats(m)? {
            if !set.contains(&g) && members.iter().any(|&f| f & g == f) {
                return Err(Error::input(format!("cut is not up-closed at {g:#b}")));
            }
        }
        for &a in &members {
            for &b in &members {
                if m.is_modular_pair(a, b) && !set.contains(&(a & b)) {
                    return Err(Error::input(format!("cut misses the modular meet of {a:#b} and {b:#b}")));
                }
            }
        }
        Ok(ModularCut { host: m.fingerprint(), members })
    }

    pub fn members(&self) -> &[Mask] {
        &self.members
    }

    pub fn contains(&self, flat: Mask) -> bool {
        self.members.binary_search(&flat).is_ok()
    }

    /// Inclusion-minimal members.
    pub fn minimal(&self) -> Vec<Mask> {
        self.members.iter().copied().filter(|&f| !self.members.iter().any(|&g| g != f && g & f == g)).collect()
    }

    pub fn host(&self) -> &Fingerprint {
        &self.host
    }
}

/// Flats indexed for bitset closure computations; at most 128 flats.
struct FlatLattice {
    flats: Vec<Mask>,
    index: HashMap<Mask, usize>,
    up: Vec<u128>,
    modular_with: Vec<u128>,
    meet: Vec<Vec<u8>>,
}

impl FlatLattice {
    fn new(m: &RankTable) -> Result<Self> {
        check_cap("modular cut ground set", m.n() as u64, caps().cuts_n as u64)?;
        let flats = flats(m)?;
        check_cap("flat count", flats.len() as u64, 128)?;
        let k = flats.len();
        let index: HashMap<Mask, usize> = flats.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let mut up = vec![0u128; k];
        let mut modular_with = vec![0u128; k];
        let mut meet = vec![vec![u8::MAX; k]; k];
        for i in 0..k {
            for j in 0..k {
                if flats[i] & flats[j] == flats[i] {
                    up[i] |= 1 << j;
                }
                if m.is_modular_pair(flats[i], flats[j]) {
                    modular_with[i] |= 1 << j;
                    meet[i][j] = index[&(flats[i] & flats[j])] as u8;
                }
            }
        }
        Ok(FlatLattice { flats, index, up, modular_with, meet })
    }

    fn index_of(&self, f: Mask) -> Option<usize> {
        self.index.get(&f).copied()
    }

    fn close(&self, mut cut: u128, add: usize) -> u128 {
        let mut queue = vec![add];
        while let Some(i) = queue.pop() {
            if cut >> i & 1 == 1 {
                continue;
            }
            let new = self.up[i] & !cut;
            cut |= new;
            let mut bits = new;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let mut partners = cut & self.modular_with[j];
                while partners != 0 {
                    let h = partners.trailing_zeros() as usize;
                    partners &= partners - 1;
                    let mt = self.meet[j][h] as usize;
                    if cut >> mt & 1 == 0 {
                        queue.push(mt);
                    }
                }
            }
        }
        cut
    }

    fn to_cut(&self, m: &RankTable, cut: u128) -> ModularCut {
        let members = (0..self.flats.len()).filter(|&i| cut >> i & 1 == 1).map(|i| self.flats[i]).collect();
        ModularCut { host: m.fingerprint(), members }
    }
}

/// Every modular cut of `m` exactly once, ordered by member bitset.
pub fn enumerate_modular_cuts(m: &RankTable) -> Result<Vec<ModularCut>> {
    let lattice = FlatLattice::new(m)?;
    let k = lattice.flats.len();
    let mut seen: HashSet<u128> = HashSet::new();
    seen.insert(0);
    let mut stack = vec![0u128];
    while let Some(cut) = stack.pop() {
        for i in 0..k {
            if cut >> i & 1 == 0 {
                let next = lattice.close(cut, i);
                if seen.insert(next) {
                    stack.push(next);
                }
            }
        }
    }
    let mut codes: Vec<u128> = seen.into_iter().collect();
    codes.sort_unstable();
    Ok(codes.into_iter().map(|c| lattice.to_cut(m, c)).collect())
}

/// How the new element sits relative to the host.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExtensionSpec {
    ByCut(ModularCut),
    Free,
    RelativelyFree(Mask, Mask),
}

/// Returns the predicate "new element lies in the closure of Z".
fn spans_new(m: &RankTable, spec: &ExtensionSpec) -> Result<Box<dyn Fn(Mask) -> bool + Send + Sync>> {
    match spec {
        ExtensionSpec::ByCut(cut) => {
            if cut.host != m.fingerprint() {
                return Err(Error::input("modular cut belongs to a different matroid"));
            }
            let cl = closure_table(m);
            let members: HashSet<Mask> = cut.members.iter().copied().collect();
            Ok(Box::new(move |z| members.contains(&cl[z as usize])))
        }
        ExtensionSpec::Free => {
            let m = m.clone();
            Ok(Box::new(move |z| m.r(z) == m.rank()))
        }
        ExtensionSpec::RelativelyFree(x, y) => {
            let (x, y) = (*x, *y);
            if x & y != 0 || (x | y) & !m.full() != 0 || !m.is_connected_bispan(x, y) {
                return Err(Error::input(format!("({x:#b}, {y:#b}) is not a connected bispan")));
            }
            let m = m.clone();
            Ok(Box::new(move |z| m.is_modular_pair(x | z, y | z)))
        }
    }
}

fn describe(spec: &ExtensionSpec) -> String {
    match spec {
        ExtensionSpec::ByCut(c) => format!("extension by modular cut with minimal flats {:?}", c.minimal()),
        ExtensionSpec::Free => "free extension".to_string(),
        ExtensionSpec::RelativelyFree(x, y) => format!("relatively free extension in ({x:#b}, {y:#b})"),
    }
}

/// Lazy single-element extension; the new element has index `n`.
pub fn extend(m: &RankTable, spec: &ExtensionSpec) -> Result<OracleMatroid> {
    check_cap("rank table ground set", m.n() as u64 + 1, caps().rank_table_n as u64)?;
    let spans = spans_new(m, spec)?;
    let host = m.clone();
    let n = m.n();
    let e = 1u32 << n;
    let provenance = Some(format!("{} of {:?}", describe(spec), host.fingerprint()));
    Ok(OracleMatroid::new(
        n + 1,
        move |z| {
            let base = z & !e;
            let r = host.r(base);
            if z & e == 0 || spans(base) {
                r
            } else {
                r + 1
            }
        },
        provenance,
    ))
}

/// Materialized extension.
pub fn extend_table(m: &RankTable, spec: &ExtensionSpec) -> Result<RankTable> {
    check_cap("rank table ground set", m.n() as u64 + 1, caps().rank_table_n as u64)?;
    let spans = spans_new(m, spec)?;
    let mut ranks = m.ranks().to_vec();
    ranks.extend((0..=m.full()).map(|z| m.r(z) + u8::from(!spans(z))));
    Ok(RankTable::from_ranks_unchecked(m.n() + 1, ranks))
}

/// Dual of the extension of the dual.
pub fn coextend(m: &RankTable, spec: &ExtensionSpec) -> Result<OracleMatroid> {
    let t = extend_table(&m.dual(), spec)?.dual();
    let provenance = Some(format!("coextension: dual of the {}", describe(spec)));
    Ok(OracleMatroid::new(t.n(), move |z| t.r(z), provenance))
}

pub fn coextend_table(m: &RankTable, spec: &ExtensionSpec) -> Result<RankTable> {
    Ok(extend_table(&m.dual(), spec)?.dual())
}

/// Extends by the cut and contracts the new element; computed without building the extension.
pub fn cstar_by_cut(m: &RankTable, cut: &ModularCut) -> RankTable {
    let members: HashSet<Mask> = cut.members.iter().copied().collect();
    let gain = |z: Mask| u8::from(!members.contains(&m.closure(z)));
    let g0 = gain(0);
    let ranks = (0..=m.full()).map(|z| m.r(z) + gain(z) - g0).collect();
    RankTable::from_ranks_unchecked(m.n(), ranks)
}

/// c*-transformations paired with the cut that produced them; duplicates keep the first cut.
pub fn cstar_transformations_with_cuts(m: &RankTable) -> Result<Vec<(ModularCut, RankTable)>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for cut in enumerate_modular_cuts(m)? {
        let t = cstar_by_cut(m, &cut);
        if seen.insert(t.clone()) {
            out.push((cut, t));
        }
    }
    Ok(out)
}

/// Distinct matroids `M⁺/f` over all extensions `M⁺` of `m` by `f`.
pub fn cstar_transformations(m: &RankTable) -> Result<Vec<RankTable>> {
    Ok(cstar_transformations_with_cuts(m)?.into_iter().map(|(_, t)| t).collect())
}

/// d*-transformations paired with the cut of the dual that produced them.
pub fn dstar_transformations_with_cuts(m: &RankTable) -> Result<Vec<(ModularCut, RankTable)>> {
    Ok(cstar_transformations_with_cuts(&m.dual())?.into_iter().map(|(c, t)| (c, t.dual())).collect())
}

/// Distinct matroids `M⁺∖f` over all coextensions `M⁺` of `m` by `f`.
pub fn dstar_transformations(m: &RankTable) -> Result<Vec<RankTable>> {
    Ok(dstar_transformations_with_cuts(m)?.into_iter().map(|(_, t)| t).collect())
}

/// One step of an extension trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum TraceStep {
    Rfext {
        #[serde(rename = "X")]
        x: Mask,
        #[serde(rename = "Y")]
        y: Mask,
    },
    Contract {
        elem: usize,
    },
}

/// Applies a trace to `m`.
pub fn replay_trace(m: &RankTable, trace: &[TraceStep]) -> Result<RankTable> {
    let mut cur = m.clone();
    for step in trace {
        cur = match *step {
            TraceStep::Rfext { x, y } => extend_table(&cur, &ExtensionSpec::RelativelyFree(x, y))?,
            TraceStep::Contract { elem } => {
                if elem >= cur.n() {
                    return Err(Error::input(format!("trace contracts missing element {elem}")));
                }
                cur.contract(1 << elem)?
            }
        };
    }
    Ok(cur)
}

#[derive(Debug, Clone)]
pub struct GutsContraction {
    pub matroid: RankTable,
    pub steps: usize,
    pub trace: Vec<TraceStep>,
}

/// Repeats "relatively free extension in (A, B), then contract it" until λ(A) = 0.
pub fn guts_contract(m: &RankTable, a: Mask, b: Mask) -> Result<GutsContraction> {
    if a == 0 || b == 0 || a & b != 0 || a | b != m.full() {
        return Err(Error::input(format!("({a:#b}, {b:#b}) is not a bipartition into nonempty parts")));
    }
    let lam = m.lambda(a) as usize;
    let mut cur = m.clone();
    let mut trace = Vec::with_capacity(2 * lam);
    for _ in 0..lam {
        let ext = extend_table(&cur, &ExtensionSpec::RelativelyFree(a, b))?;
        trace.push(TraceStep::Rfext { x: a, y: b });
        trace.push(TraceStep::Contract { elem: cur.n() });
        cur = ext.contract(1 << cur.n())?;
    }
    if cur.lambda(a) != 0 {
        return Err(Error::InvalidMatroid("guts contraction did not separate the bipartition".into()));
    }
    Ok(GutsContraction { matroid: cur, steps: lam, trace })
}

/// `M/B` on `A` together with `M/A` on `B`, in the original labels.
pub fn guts_split(m: &RankTable, a: Mask, b: Mask) -> RankTable {
    let (ra, rb) = (m.r(a), m.r(b));
    let ranks = (0..=m.full()).map(|x| (m.r((x & a) | b) - rb) + (m.r((x & b) | a) - ra)).collect();
    RankTable::from_ranks_unchecked(m.n(), ranks)
}

/// A matroid containing `m` as a restriction, built only from relatively free extensions.
#[derive(Debug, Clone)]
pub struct ClosureWitness {
    pub matroid: RankTable,
    pub trace: Vec<TraceStep>,
}

/// Builds `M'` with `M = M'|E(M)` following an optimal guts recursion of `m`, so that the
/// c-depth of `M'` equals the c*-depth of `m`.
pub fn restriction_closure_witness(m: &RankTable) -> Result<ClosureWitness> {
    check_cap("closure witness ground set", m.n() as u64, caps().closure_n as u64)?;
    let steps = closure_steps(m)?;
    let trace: Vec<TraceStep> = steps.into_iter().map(|(x, y)| TraceStep::Rfext { x, y }).collect();
    check_cap("closure witness size", (m.n() + trace.len()) as u64, caps().rank_table_n as u64)?;
    let matroid = replay_trace(m, &trace)?;
    Ok(ClosureWitness { matroid, trace })
}

/// Bipartitions (X, Y) of the growing ground set, one per added element.
fn closure_steps(m: &RankTable) -> Result<Vec<(Mask, Mask)>> {
    let n = m.n();
    if n <= 1 {
        return Ok(Vec::new());
    }
    let split = crate::depth::cstar_split(m)?;
    let (a, b, lam) = (split.a, split.b, split.lambda as usize);
    let full = m.full();
    if lam == 0 {
        let mut out = Vec::new();
        let mut added = 0usize;
        for (part, rest_orig) in [(a, b), (b, a)] {
            let sub = m.restrict(part);
            let orig: Vec<usize> = elements(part).collect();
            let before = added;
            let sub_steps = closure_steps(&sub)?;
            for &(x, y) in &sub_steps {
                let map = |s: Mask| -> Mask {
                    elements(s).fold(0, |acc, i| {
                        acc | if i < orig.len() { 1 << orig[i] } else { 1 << (n + before + i - orig.len()) }
                    })
                };
                // The other part and everything added for it so far joins the X side.
                let others = rest_orig | (full_mask(n + before) & !full);
                out.push((map(x) | others, map(y)));
            }
            added += sub_steps.len();
        }
        return Ok(out);
    }
    let mut out = Vec::with_capacity(lam);
    let mut cur = m.clone();
    for t in 0..lam {
        let z = full_mask(n + t) & !full;
        out.push((a | z, b));
        cur = extend_table(&cur, &ExtensionSpec::RelativelyFree(a | z, b))?;
    }
    let z = full_mask(n + lam) & !full;
    let reduced = cur.contract(z)?;
    debug_assert_eq!(reduced, guts_split(m, a, b));
    for (x, y) in closure_steps(&reduced)? {
        let lift = |s: Mask| (s & full) | ((s & !full) << lam);
        out.push((lift(x) | z, lift(y)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Modular cuts by definition: every family of flats that is up-closed and closed under
    /// intersections of modular pairs.
    fn brute_cut_count(m: &RankTable) -> usize {
        let fl = flats(m).unwrap();
        let k = fl.len();
        assert!(k <= 20);
        (0u32..(1 << k))
            .filter(|&code| {
                let has = |i: usize| code >> i & 1 == 1;
                (0..k).all(|i| {
                    !has(i)
                        || (0..k).all(|j| {
                            (fl[i] & fl[j] != fl[i] || has(j))
                                && (!has(j)
                                    || !m.is_modular_pair(fl[i], fl[j])
                                    || has(fl.iter().position(|&f| f == fl[i] & fl[j]).unwrap()))
                        })
                })
            })
            .count()
    }

    #[test]
    fn flats_examples() {
        assert_eq!(flats(&RankTable::uniform(1, 2).unwrap()).unwrap(), vec![0, 3]);
        assert_eq!(flats(&RankTable::free(3).unwrap()).unwrap().len(), 8);
        let f = flats(&RankTable::uniform(2, 4).unwrap()).unwrap();
        assert_eq!(*f.last().unwrap(), 15);
    }

    #[test]
    fn cut_counts() {
        assert_eq!(enumerate_modular_cuts(&RankTable::uniform(1, 2).unwrap()).unwrap().len(), 3);
        assert_eq!(enumerate_modular_cuts(&RankTable::free(1).unwrap()).unwrap().len(), 3);
        assert_eq!(enumerate_modular_cuts(&RankTable::all_loops(1).unwrap()).unwrap().len(), 2);
        for m in [
            RankTable::uniform(2, 4).unwrap(),
            RankTable::uniform(2, 3).unwrap().direct_sum(&RankTable::uniform(1, 2).unwrap()).unwrap(),
            RankTable::free(3).unwrap(),
            RankTable::uniform(3, 5).unwrap(),
        ] {
            assert_eq!(enumerate_modular_cuts(&m).unwrap().len(), brute_cut_count(&m), "{m:?}");
        }
    }

    #[test]
    fn cuts_validate_and_extend() {
        let m = RankTable::uniform(2, 4).unwrap();
        for cut in enumerate_modular_cuts(&m).unwrap() {
            ModularCut::from_members(&m, cut.members().to_vec()).unwrap();
            let ext = extend(&m, &ExtensionSpec::ByCut(cut.clone())).unwrap().materialize().unwrap();
            assert_eq!(ext.delete(1 << 4).unwrap(), m);
        }
    }

    #[test]
    fn free_extensions() {
        let e = extend(&RankTable::uniform(1, 2).unwrap(), &ExtensionSpec::Free).unwrap();
        assert_eq!(e.materialize().unwrap(), RankTable::uniform(1, 3).unwrap());
        let e = extend(&RankTable::uniform(2, 3).unwrap(), &ExtensionSpec::Free).unwrap();
        assert_eq!(e.materialize().unwrap(), RankTable::uniform(2, 4).unwrap());
        let c = coextend(&RankTable::uniform(1, 2).unwrap(), &ExtensionSpec::Free).unwrap();
        assert_eq!(c.materialize().unwrap(), RankTable::uniform(2, 3).unwrap());
    }

    #[test]
    fn relatively_free_in_u34() {
        let m = RankTable::uniform(3, 4).unwrap();
        let n = extend_table(&m, &ExtensionSpec::RelativelyFree(0b0011, 0b1100)).unwrap();
        assert!(!n.is_loop(4));
        assert!(n.closure(0b0011) >> 4 & 1 == 1 && n.closure(0b1100) >> 4 & 1 == 1);
        assert_eq!(n.contract(1 << 4).unwrap().lambda(0b0011), 0);
        assert!(extend(&m, &ExtensionSpec::RelativelyFree(0b0011, 0b0100)).is_err());
        let d = RankTable::free(2).unwrap();
        assert!(extend(&d, &ExtensionSpec::RelativelyFree(1, 2)).is_err());
    }

    #[test]
    fn coloop_transformations() {
        let t = cstar_transformations(&RankTable::free(1).unwrap()).unwrap();
        assert!(t.iter().all(|x| *x == RankTable::free(1).unwrap() || *x == RankTable::all_loops(1).unwrap()));
        assert!(t.contains(&RankTable::all_loops(1).unwrap()));
    }

    #[test]
    fn transformation_ranks() {
        let m = RankTable::uniform(3, 4).unwrap();
        for t in cstar_transformations(&m).unwrap() {
            assert!(t.rank() == 3 || t.rank() == 2);
        }
        assert!(cstar_transformations(&m).unwrap().contains(&RankTable::uniform(2, 4).unwrap()));
        for t in dstar_transformations(&m).unwrap() {
            assert!(t.rank() == 3 || t.rank() == 4);
        }
    }

    #[test]
    fn guts_examples() {
        let m = RankTable::uniform(3, 4).unwrap();
        let g = guts_contract(&m, 0b0011, 0b1100).unwrap();
        assert_eq!(g.steps, 1);
        let u12 = RankTable::uniform(1, 2).unwrap();
        assert_eq!(g.matroid, u12.direct_sum(&u12).unwrap());
        let d = u12.direct_sum(&RankTable::uniform(2, 3).unwrap()).unwrap();
        let g = guts_contract(&d, 0b00011, 0b11100).unwrap();
        assert_eq!((g.steps, g.matroid.clone()), (0, d));
        let c32 = crate::graphs::gen_fat_cycle(3, 2).unwrap().cycle_matroid().unwrap();
        let g = guts_contract(&c32, 0b000011, 0b111100).unwrap();
        assert_eq!(g.steps, c32.lambda(0b11) as usize);
        assert_eq!(g.matroid, guts_split(&c32, 0b000011, 0b111100));
        assert_eq!(replay_trace(&c32, &g.trace).unwrap(), g.matroid);
        assert!(guts_contract(&m, 0, 15).is_err());
    }

    #[test]
    fn trace_json() {
        let t = vec![TraceStep::Rfext { x: 3, y: 12 }, TraceStep::Contract { elem: 4 }];
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"[{"op":"rfext","X":3,"Y":12},{"op":"contract","elem":4}]"#);
        assert_eq!(serde_json::from_str::<Vec<TraceStep>>(&s).unwrap(), t);
    }
}
