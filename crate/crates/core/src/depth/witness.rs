//! Certificates for depth values and their replay.

use serde::{Deserialize, Serialize};

use super::Measure;
use crate::error::{Error, Result};
use crate::extensions::{cstar_by_cut, guts_contract, guts_split, ModularCut};
use crate::matroid::{elements, Mask, RankTable};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub measure: Measure,
    pub value: u32,
    /// Steps refer to the dual matroid.
    pub on_dual: bool,
    pub root: WitnessNode,
}

/// One node of a recursion tree. `ground` uses the labels of the root matroid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessNode {
    pub ground: Mask,
    pub value: u32,
    pub step: Step,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Step {
    /// At most one element.
    Base,
    Components {
        children: Vec<WitnessNode>,
    },
    Contract {
        elem: usize,
        child: Box<WitnessNode>,
    },
    Delete {
        elem: usize,
        child: Box<WitnessNode>,
    },
    /// Guts contraction along (A, B); `left` lives on A with B contracted and `right` on B.
    Guts {
        a: Mask,
        b: Mask,
        lambda: u8,
        left: Box<WitnessNode>,
        right: Box<WitnessNode>,
    },
    /// Extension by the given modular cut, then contraction of the new element.
    CStar {
        cut: Vec<Mask>,
        child: Box<WitnessNode>,
    },
    /// Coextension by the given modular cut of the dual, then deletion of the new element.
    DStar {
        cut: Vec<Mask>,
        child: Box<WitnessNode>,
    },
}

pub(crate) fn compress(x: Mask, ground: Mask) -> Mask {
    elements(ground).enumerate().fold(0, |acc, (i, e)| acc | (((x >> e) & 1) << i))
}

pub(crate) fn expand(x: Mask, ground: Mask) -> Mask {
    elements(ground).enumerate().fold(0, |acc, (i, e)| acc | (((x >> i) & 1) << e))
}

/// Checks every step of `w` against `m` and returns the certified value.
pub fn replay(m: &RankTable, w: &Witness) -> Result<u32> {
    let target = if w.on_dual { m.dual() } else { m.clone() };
    let v = replay_node(&target, target.full(), &w.root)?;
    if v != w.value {
        return Err(Error::InvalidInput(format!("witness certifies {v}, claims {}", w.value)));
    }
    Ok(v)
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(format!("witness rejected: {}", msg.into()))
}

fn needs_connected(n: &RankTable) -> Result<()> {
    if n.n() < 2 || !n.is_connected() {
        return Err(bad("transformation step on a matroid that is not connected with ≥ 2 elements"));
    }
    Ok(())
}

fn replay_node(n: &RankTable, ground: Mask, node: &WitnessNode) -> Result<u32> {
    if node.ground != ground {
        return Err(bad(format!("node ground {:#b} does not match {ground:#b}", node.ground)));
    }
    let v = match &node.step {
        Step::Base => {
            if n.n() > 1 {
                return Err(bad("base step on more than one element"));
            }
            1
        }
        Step::Components { children } => {
            let mut seen = 0;
            let mut best = 0;
            for c in children {
                let local = compress(c.ground, ground);
                if c.ground & !ground != 0 || c.ground & seen != 0 || c.ground == 0 || n.lambda(local) != 0 {
                    return Err(bad("component parts must be disjoint nonempty separators"));
                }
                seen |= c.ground;
                best = best.max(replay_node(&n.restrict(local), c.ground, c)?);
            }
            if seen != ground || children.len() < 2 {
                return Err(bad("components must cover the ground set in at least two parts"));
            }
            best
        }
        Step::Contract { elem, child } | Step::Delete { elem, child } => {
            if ground >> elem & 1 == 0 {
                return Err(bad(format!("element {elem} is not present")));
            }
            needs_connected(n)?;
            let local = compress(1 << elem, ground);
            let next = if matches!(node.step, Step::Contract { .. }) { n.contract(local)? } else { n.delete(local)? };
            1 + replay_node(&next, ground & !(1 << elem), child)?
        }
        Step::Guts { a, b, lambda, left, right } => {
            let (la, lb) = (compress(*a, ground), compress(*b, ground));
            if a & b != 0 || a | b != ground || *a == 0 || *b == 0 {
                return Err(bad("guts step needs a bipartition into nonempty parts"));
            }
            let g = guts_contract(n, la, lb)?;
            if g.steps != *lambda as usize || g.matroid != guts_split(n, la, lb) {
                return Err(bad("guts contraction does not match the recorded connectivity"));
            }
            let vl = replay_node(&n.contract(lb)?, *a, left)?;
            let vr = replay_node(&n.contract(la)?, *b, right)?;
            *lambda as u32 + vl.max(vr)
        }
        Step::CStar { cut, child } | Step::DStar { cut, child } => {
            needs_connected(n)?;
            let local: Vec<Mask> = cut.iter().map(|&f| compress(f, ground)).collect();
            let next = if matches!(node.step, Step::CStar { .. }) {
                cstar_by_cut(n, &ModularCut::from_members(n, local)?)
            } else {
                let d = n.dual();
                cstar_by_cut(&d, &ModularCut::from_members(&d, local)?).dual()
            };
            if next == *n {
                return Err(bad("transformation leaves the matroid unchanged"));
            }
            1 + replay_node(&next, ground, child)?
        }
    };
    if v != node.value {
        return Err(bad(format!("node claims {} but replays to {v}", node.value)));
    }
    Ok(v)
}
