//! Per-matroid inequality reports tying the measures together.

use serde::{Deserialize, Serialize};

use super::{depth_value, Measure};
use crate::error::Result;
use crate::matroid::RankTable;

/// One evaluated inequality `lhs ≤ rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    pub lhs: u64,
    pub rhs: u64,
    pub holds: bool,
}

impl BoundCheck {
    fn le(name: &str, lhs: u64, rhs: u64) -> Self {
        BoundCheck { name: name.to_string(), lhs, rhs, holds: lhs <= rhs }
    }
}

/// `log₂ u ≤ d` is checked as `u ≤ 2^d`.
fn log_bound(name: &str, u: u64, d: u64) -> BoundCheck {
    BoundCheck::le(name, u, 1u64 << d.min(63))
}

/// Bounds by circumference u and cocircumference u*:
/// log₂ u ≤ cd ≤ u(u+1)/2, log₂ u* ≤ dd ≤ u*(u*+1)/2, log₂ u ≤ csd ≤ u²+1, log₂ u* ≤ dsd ≤ u*²+1.
pub fn circumference_bounds_check(m: &RankTable) -> Result<Vec<BoundCheck>> {
    let u = m.circumference() as u64;
    let us = m.cocircumference() as u64;
    let cd = depth_value(m, Measure::C)? as u64;
    let dd = depth_value(m, Measure::D)? as u64;
    let csd = depth_value(m, Measure::CStar)? as u64;
    let dsd = depth_value(m, Measure::DStar)? as u64;
    Ok(vec![
        log_bound("2^cd >= u", u, cd),
        BoundCheck::le("cd <= u(u+1)/2", cd, u * (u + 1) / 2),
        log_bound("2^dd >= u*", us, dd),
        BoundCheck::le("dd <= u*(u*+1)/2", dd, us * (us + 1) / 2),
        log_bound("2^csd >= u", u, csd),
        BoundCheck::le("csd <= u^2+1", csd, u * u + 1),
        log_bound("2^dsd >= u*", us, dsd),
        BoundCheck::le("dsd <= u*^2+1", dsd, us * us + 1),
    ])
}

/// csdsd ≤ csdd ≤ cdd, csdsd ≤ cdsd ≤ cdd, csd ≤ cd, dsd ≤ dd, csdsd ≤ cdd.
pub fn chain_check(m: &RankTable) -> Result<Vec<BoundCheck>> {
    let v = |mu| depth_value(m, mu).map(u64::from);
    let (cd, dd, cdd) = (v(Measure::C)?, v(Measure::D)?, v(Measure::Cd)?);
    let (csd, dsd) = (v(Measure::CStar)?, v(Measure::DStar)?);
    let (csdd, cdsd, csdsd) = (v(Measure::CStarD)?, v(Measure::CDStar)?, v(Measure::CStarDStar)?);
    Ok(vec![
        BoundCheck::le("csdsd <= csdd", csdsd, csdd),
        BoundCheck::le("csdd <= cdd", csdd, cdd),
        BoundCheck::le("csdsd <= cdsd", csdsd, cdsd),
        BoundCheck::le("cdsd <= cdd", cdsd, cdd),
        BoundCheck::le("csd <= cd", csd, cd),
        BoundCheck::le("dsd <= dd", dsd, dd),
        BoundCheck::le("csdsd <= cdd", csdsd, cdd),
    ])
}
