//! c*d*-depth by bounded search over all c*- and d*-transformations.
//!
//! Starred contractions lower the rank by one and starred deletions raise it, so the
//! recursion has cycles; instead of a fixed point we decide "depth ≤ k" for increasing k.
//! Answers depend only on the isomorphism class and are shared process-wide.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::witness::{expand, Step, WitnessNode};
use super::{depth_value, Measure, Stats};
use crate::error::{Error, Result};
use crate::extensions::{cstar_transformations_with_cuts, dstar_transformations_with_cuts};
use crate::matroid::{Mask, RankTable};

/// Known bounds lo ≤ value ≤ hi per canonical form.
type Bounds = Mutex<HashMap<RankTable, (u32, u32)>>;

fn bounds() -> &'static Bounds {
    static B: OnceLock<Bounds> = OnceLock::new();
    B.get_or_init(|| Mutex::new(HashMap::new()))
}

struct Search {
    stats: Stats,
}

impl Search {
    fn at_most(&mut self, m: &RankTable, k: u32) -> Result<bool> {
        if k == 0 {
            return Ok(false);
        }
        if m.n() <= 1 {
            return Ok(true);
        }
        let comps = m.components();
        if comps.len() > 1 {
            for c in comps {
                if !self.at_most(&m.restrict(c), k)? {
                    return Ok(false);
                }
            }
            return Ok(true);
        }
        if k == 1 {
            return Ok(false);
        }
        let key = m.canonical();
        let known = bounds().lock().expect("bounds poisoned").get(&key).copied();
        let (lo, hi) = known.unwrap_or((2, u32::MAX));
        if hi <= k {
            self.stats.cache_hits += 1;
            return Ok(true);
        }
        if lo > k {
            self.stats.cache_hits += 1;
            return Ok(false);
        }
        self.stats.nodes += 1;
        let mut found = false;
        for t in transformations(&key)? {
            if t.2 != key && self.at_most(&t.2, k - 1)? {
                found = true;
                break;
            }
        }
        let mut b = bounds().lock().expect("bounds poisoned");
        let e = b.entry(key).or_insert((2, u32::MAX));
        if found {
            e.1 = e.1.min(k);
        } else {
            e.0 = e.0.max(k + 1);
        }
        Ok(found)
    }

    fn least(&mut self, m: &RankTable) -> Result<u32> {
        // c*d*-depth never exceeds cd-depth, which the cheaper solver provides.
        let upper = if m.n() <= crate::caps::caps().cd_n { depth_value(m, Measure::Cd)? } else { m.n() as u32 };
        for k in 1..upper {
            if self.at_most(m, k)? {
                return Ok(k);
            }
        }
        Ok(upper.max(1))
    }

    fn node(&mut self, m: &RankTable, ground: Mask) -> Result<WitnessNode> {
        let value = self.least(m)?;
        if m.n() <= 1 {
            return Ok(WitnessNode { ground, value, step: Step::Base });
        }
        let comps = m.components();
        if comps.len() > 1 {
            let children =
                comps.iter().map(|&c| self.node(&m.restrict(c), expand(c, ground))).collect::<Result<Vec<_>>>()?;
            return Ok(WitnessNode { ground, value, step: Step::Components { children } });
        }
        for (is_c, cut, t) in transformations(m)? {
            if t != *m && self.at_most(&t, value - 1)? {
                let child = Box::new(self.node(&t, ground)?);
                let cut: Vec<Mask> = cut.iter().map(|&f| expand(f, ground)).collect();
                let step = if is_c { Step::CStar { cut, child } } else { Step::DStar { cut, child } };
                return Ok(WitnessNode { ground, value, step });
            }
        }
        Err(Error::InvalidMatroid("no transformation attains the computed c*d*-depth".into()))
    }
}

/// All c*- and d*-transformations with their cuts; c* first.
fn transformations(m: &RankTable) -> Result<Vec<(bool, Vec<Mask>, RankTable)>> {
    let mut out: Vec<(bool, Vec<Mask>, RankTable)> =
        cstar_transformations_with_cuts(m)?.into_iter().map(|(c, t)| (true, c.members().to_vec(), t)).collect();
    out.extend(dstar_transformations_with_cuts(m)?.into_iter().map(|(c, t)| (false, c.members().to_vec(), t)));
    Ok(out)
}

pub(crate) fn value(m: &RankTable) -> Result<u32> {
    Search { stats: Stats::default() }.least(m)
}

pub(crate) fn witness(m: &RankTable) -> Result<(WitnessNode, Stats)> {
    let mut s = Search { stats: Stats::default() };
    let node = s.node(m, m.full())?;
    Ok((node, s.stats))
}
