//! Literal recursive evaluation of the depth definitions, used as a validation oracle.
//! Starred steps range over every modular cut.

use std::collections::HashMap;

use super::Measure;
use crate::caps::caps;
use crate::error::{check_cap, Error, Result};
use crate::extensions::{cstar_transformations, dstar_transformations};
use crate::matroid::RankTable;

struct Brute {
    mu: Measure,
    memo: HashMap<(RankTable, u32), bool>,
}

impl Brute {
    fn successors(&self, m: &RankTable) -> Result<Vec<RankTable>> {
        let (c, d, cs, ds) = self.mu.moves();
        let mut out = Vec::new();
        for e in 0..m.n() {
            if c {
                out.push(m.contract(1 << e)?);
            }
            if d {
                out.push(m.delete(1 << e)?);
            }
        }
        if cs {
            out.extend(cstar_transformations(m)?.into_iter().filter(|t| t != m));
        }
        if ds {
            out.extend(dstar_transformations(m)?.into_iter().filter(|t| t != m));
        }
        Ok(out)
    }

    fn at_most(&mut self, m: &RankTable, k: u32) -> Result<bool> {
        if k == 0 {
            return Ok(false);
        }
        if m.n() <= 1 {
            return Ok(true);
        }
        if let Some(&v) = self.memo.get(&(m.clone(), k)) {
            return Ok(v);
        }
        let comps = m.components();
        let v = if comps.len() > 1 {
            let mut all = true;
            for c in comps {
                if !self.at_most(&m.restrict(c), k)? {
                    all = false;
                    break;
                }
            }
            all
        } else if k == 1 {
            false
        } else {
            let mut any = false;
            for t in self.successors(m)? {
                if self.at_most(&t, k - 1)? {
                    any = true;
                    break;
                }
            }
            any
        };
        self.memo.insert((m.clone(), k), v);
        Ok(v)
    }
}

/// The least k with "depth ≤ k", evaluated straight from the recursive definition.
pub fn brute_depth(m: &RankTable, mu: Measure) -> Result<u32> {
    check_cap("brute-force depth ground set", m.n() as u64, caps().brute_n as u64)?;
    let mut b = Brute { mu, memo: HashMap::new() };
    // Every measure is at most the number of elements.
    for k in 1..=(m.n() as u32).max(1) {
        if b.at_most(m, k)? {
            return Ok(k);
        }
    }
    Err(Error::InvalidMatroid(format!("{} exceeds the element count", mu.name())))
}
