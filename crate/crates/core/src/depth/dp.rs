//! Subset dynamic programs over minors of a fixed root matroid.
//!
//! A state is a pair (S, C): the minor on S with C contracted and everything else deleted.
//! Its rank function is r(X ∪ C) − r(C).

use std::collections::HashMap;

use super::witness::{Step, WitnessNode};
use super::{Measure, Split, Stats};
use crate::matroid::{components_of, elements, submasks, Mask, RankTable};

#[inline]
fn rk(m: &RankTable, c: Mask, x: Mask) -> u8 {
    m.r(x | c) - m.r(c)
}

/// Bipartitions (A, B) of `s` with the least element of `s` in A and B nonempty.
fn bipartitions(s: Mask) -> impl Iterator<Item = (Mask, Mask)> {
    let low = s & s.wrapping_neg();
    let rest = s & !low;
    submasks(rest).filter(move |&sub| sub != rest).map(move |sub| (low | sub, rest & !sub))
}

fn base(s: Mask) -> WitnessNode {
    WitnessNode { ground: s, value: 1, step: Step::Base }
}

/// c-depth, d-depth and cd-depth.
pub(crate) struct ContractDelete<'a> {
    m: &'a RankTable,
    contract: bool,
    delete: bool,
    memo: HashMap<(Mask, Mask), u8>,
    stats: Stats,
}

impl<'a> ContractDelete<'a> {
    pub fn new(m: &'a RankTable, mu: Measure) -> Self {
        let (contract, delete, _, _) = mu.moves();
        ContractDelete { m, contract, delete, memo: HashMap::new(), stats: Stats::default() }
    }

    pub fn stats(&self) -> Stats {
        self.stats.clone()
    }

    pub fn value(&mut self) -> u32 {
        self.solve(self.m.full(), 0) as u32
    }

    /// Contraction-only runs keep everything outside S contracted; otherwise other
    /// components are deleted. Both give the same restriction.
    fn component_state(&self, s: Mask, c: Mask, k: Mask) -> (Mask, Mask) {
        if self.delete {
            (k, c)
        } else {
            (k, c | (s & !k))
        }
    }

    fn moves(&self, s: Mask, c: Mask) -> Vec<(bool, usize, Mask, Mask)> {
        let mut out = Vec::new();
        for e in elements(s) {
            if self.contract {
                out.push((true, e, s & !(1 << e), c | 1 << e));
            }
            if self.delete {
                out.push((false, e, s & !(1 << e), c));
            }
        }
        out
    }

    fn solve(&mut self, s: Mask, c: Mask) -> u8 {
        if s.count_ones() <= 1 {
            return 1;
        }
        if let Some(&v) = self.memo.get(&(s, c)) {
            self.stats.cache_hits += 1;
            return v;
        }
        self.stats.nodes += 1;
        let m = self.m;
        let comps = components_of(s, |x| rk(m, c, x));
        let v = if comps.len() > 1 {
            comps
                .iter()
                .map(|&k| {
                    let (ks, kc) = self.component_state(s, c, k);
                    self.solve(ks, kc)
                })
                .max()
                .unwrap_or(1)
        } else {
            let mut best = u8::MAX;
            for (_, _, ns, nc) in self.moves(s, c) {
                best = best.min(1 + self.solve(ns, nc));
                if best == 2 {
                    break;
                }
            }
            best
        };
        self.memo.insert((s, c), v);
        v
    }

    pub fn witness(&mut self) -> WitnessNode {
        self.node(self.m.full(), 0)
    }

    fn node(&mut self, s: Mask, c: Mask) -> WitnessNode {
        if s.count_ones() <= 1 {
            return base(s);
        }
        let value = self.solve(s, c);
        let m = self.m;
        let comps = components_of(s, |x| rk(m, c, x));
        let step = if comps.len() > 1 {
            let children = comps
                .iter()
                .map(|&k| {
                    let (ks, kc) = self.component_state(s, c, k);
                    self.node(ks, kc)
                })
                .collect();
            Step::Components { children }
        } else {
            let (is_contract, elem, ns, nc) = self
                .moves(s, c)
                .into_iter()
                .find(|&(_, _, ns, nc)| 1 + self.solve(ns, nc) == value)
                .expect("optimal move exists");
            let child = Box::new(self.node(ns, nc));
            if is_contract {
                Step::Contract { elem, child }
            } else {
                Step::Delete { elem, child }
            }
        };
        WitnessNode { ground: s, value: value as u32, step }
    }
}

/// c*-depth through the bipartition recursion
/// csd(N) = min over (A, B) of λ_N(A) + max(csd(N/B), csd(N/A)).
/// Every state contracts its complement, so a state is just S.
pub(crate) struct Guts<'a> {
    m: &'a RankTable,
    memo: Vec<u8>,
    stats: Stats,
}

impl<'a> Guts<'a> {
    pub fn new(m: &'a RankTable) -> Self {
        Guts { m, memo: vec![0; 1 << m.n()], stats: Stats::default() }
    }

    pub fn stats(&self) -> Stats {
        self.stats.clone()
    }

    pub fn value(&mut self) -> u32 {
        self.solve(self.m.full()) as u32
    }

    fn lambda(&self, s: Mask, a: Mask, b: Mask) -> u8 {
        let c = self.m.full() & !s;
        rk(self.m, c, a) + rk(self.m, c, b) - rk(self.m, c, s)
    }

    fn solve(&mut self, s: Mask) -> u8 {
        if s.count_ones() <= 1 {
            return 1;
        }
        if self.memo[s as usize] != 0 {
            self.stats.cache_hits += 1;
            return self.memo[s as usize];
        }
        self.stats.nodes += 1;
        let mut best = u8::MAX;
        for (a, b) in bipartitions(s) {
            let lam = self.lambda(s, a, b);
            if lam + 1 >= best {
                continue;
            }
            let fa = self.solve(a);
            if lam + fa >= best {
                continue;
            }
            let v = lam + fa.max(self.solve(b));
            best = best.min(v);
        }
        self.memo[s as usize] = best;
        best
    }

    fn best_split(&mut self, s: Mask) -> Split {
        let value = self.solve(s);
        for (a, b) in bipartitions(s) {
            let lambda = self.lambda(s, a, b);
            if lambda + self.solve(a).max(self.solve(b)) == value {
                return Split { a, b, lambda };
            }
        }
        unreachable!("optimal bipartition exists")
    }

    pub fn root_split(&mut self) -> Split {
        self.best_split(self.m.full())
    }

    pub fn witness(&mut self) -> WitnessNode {
        self.node(self.m.full())
    }

    fn node(&mut self, s: Mask) -> WitnessNode {
        if s.count_ones() <= 1 {
            return base(s);
        }
        let value = self.solve(s) as u32;
        let sp = self.best_split(s);
        let step = Step::Guts {
            a: sp.a,
            b: sp.b,
            lambda: sp.lambda,
            left: Box::new(self.node(sp.a)),
            right: Box::new(self.node(sp.b)),
        };
        WitnessNode { ground: s, value, step }
    }
}

/// c*d-depth through the recursion that also allows single deletions:
/// min(1 + f(N∖e), min over (A, B) of λ_N(A) + max(f(N/B), f(N/A))).
pub(crate) struct GutsDelete<'a> {
    m: &'a RankTable,
    memo: HashMap<(Mask, Mask), u8>,
    stats: Stats,
    /// Single elements are worth their rank instead of 1.
    rank_base: bool,
}

impl<'a> GutsDelete<'a> {
    pub fn new(m: &'a RankTable) -> Self {
        GutsDelete { m, memo: HashMap::new(), stats: Stats::default(), rank_base: false }
    }

    pub fn rank_based(m: &'a RankTable) -> Self {
        GutsDelete { rank_base: true, ..Self::new(m) }
    }

    pub fn stats(&self) -> Stats {
        self.stats.clone()
    }

    pub fn value(&mut self) -> u32 {
        self.solve(self.m.full(), 0) as u32
    }

    fn lambda(&self, c: Mask, s: Mask, a: Mask, b: Mask) -> u8 {
        rk(self.m, c, a) + rk(self.m, c, b) - rk(self.m, c, s)
    }

    fn solve(&mut self, s: Mask, c: Mask) -> u8 {
        if s.count_ones() <= 1 {
            return if self.rank_base { rk(self.m, c, s) } else { 1 };
        }
        if let Some(&v) = self.memo.get(&(s, c)) {
            self.stats.cache_hits += 1;
            return v;
        }
        self.stats.nodes += 1;
        let floor = u8::from(!self.rank_base);
        let mut best = u8::MAX;
        for (a, b) in bipartitions(s) {
            let lam = self.lambda(c, s, a, b);
            if lam + floor >= best {
                continue;
            }
            let fa = self.solve(a, c | b);
            if lam + fa >= best {
                continue;
            }
            best = best.min(lam + fa.max(self.solve(b, c | a)));
        }
        for e in elements(s) {
            if best <= floor + 1 {
                break;
            }
            best = best.min(1 + self.solve(s & !(1 << e), c));
        }
        self.memo.insert((s, c), best);
        best
    }

    pub fn witness(&mut self) -> WitnessNode {
        self.node(self.m.full(), 0)
    }

    fn node(&mut self, s: Mask, c: Mask) -> WitnessNode {
        if s.count_ones() <= 1 {
            return base(s);
        }
        let value = self.solve(s, c);
        let mut step = None;
        for (a, b) in bipartitions(s) {
            let lam = self.lambda(c, s, a, b);
            if lam + self.solve(a, c | b).max(self.solve(b, c | a)) == value {
                step = Some(Step::Guts {
                    a,
                    b,
                    lambda: lam,
                    left: Box::new(self.node(a, c | b)),
                    right: Box::new(self.node(b, c | a)),
                });
                break;
            }
        }
        let step = step.unwrap_or_else(|| {
            let e = elements(s).find(|&e| 1 + self.solve(s & !(1 << e), c) == value).expect("optimal step exists");
            Step::Delete { elem: e, child: Box::new(self.node(s & !(1 << e), c)) }
        });
        WitnessNode { ground: s, value: value as u32, step }
    }
}
