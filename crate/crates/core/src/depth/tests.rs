use super::*;
use crate::graphs::{gen_cycle, gen_d, gen_fat_cycle, gen_k3n};

fn cycle(n: usize) -> RankTable {
    gen_cycle(n).unwrap().cycle_matroid().unwrap()
}

fn small_zoo() -> Vec<RankTable> {
    let mut v = vec![
        RankTable::empty(),
        RankTable::free(1).unwrap(),
        RankTable::all_loops(1).unwrap(),
        RankTable::uniform(1, 2).unwrap(),
        RankTable::free(2).unwrap(),
        RankTable::uniform(1, 3).unwrap(),
        RankTable::uniform(2, 3).unwrap(),
        RankTable::uniform(2, 4).unwrap(),
        RankTable::uniform(3, 5).unwrap(),
        RankTable::uniform(1, 2).unwrap().direct_sum(&RankTable::uniform(2, 3).unwrap()).unwrap(),
        RankTable::free(1).unwrap().direct_sum(&RankTable::all_loops(2).unwrap()).unwrap(),
    ];
    v.extend((3..=5).map(cycle));
    v.push(gen_fat_cycle(2, 2).unwrap().cycle_matroid().unwrap());
    v
}

#[test]
fn single_elements_have_depth_one() {
    for m in [RankTable::free(1).unwrap(), RankTable::all_loops(1).unwrap(), RankTable::empty()] {
        for mu in Measure::ALL {
            assert_eq!(depth_value(&m, mu).unwrap(), 1, "{mu}");
            assert_eq!(brute_depth(&m, mu).unwrap(), 1, "{mu}");
        }
    }
}

#[test]
fn cycle_values() {
    for n in 2..=9 {
        let m = cycle(n);
        assert_eq!(depth_value(&m, Measure::D).unwrap(), 2, "dd C{n}");
        assert_eq!(depth_value(&m, Measure::C).unwrap(), n as u32, "cd C{n}");
        let log = (n as f64).log2().ceil() as u32;
        assert_eq!(depth_value(&m, Measure::CStar).unwrap(), log + 1, "csd C{n}");
    }
    for i in 1..=3 {
        assert!(depth_value(&cycle(1 << i), Measure::C).unwrap() >= i);
    }
}

#[test]
fn cycle_csd_matches_extension_oracle() {
    for n in 2..=5 {
        assert_eq!(brute_depth(&cycle(n), Measure::CStar).unwrap(), depth_value(&cycle(n), Measure::CStar).unwrap());
    }
}

#[test]
fn parallel_pair() {
    let m = RankTable::uniform(1, 2).unwrap();
    assert_eq!(brute_depth(&m, Measure::CStar).unwrap(), 2);
    for mu in Measure::ALL {
        assert_eq!(depth_value(&m, mu).unwrap(), 2);
    }
}

#[test]
fn solvers_match_brute_force_on_small_matroids() {
    for m in small_zoo() {
        for mu in Measure::ALL {
            assert_eq!(depth_value(&m, mu).unwrap(), brute_depth(&m, mu).unwrap(), "{mu} on {m:?}");
        }
    }
}

#[test]
fn duality_on_small_matroids() {
    for m in small_zoo() {
        let d = m.dual();
        for mu in Measure::ALL {
            assert_eq!(depth_value(&m, mu).unwrap(), depth_value(&d, mu.dual()).unwrap(), "{mu}");
        }
    }
}

#[test]
fn witnesses_replay() {
    let mut zoo = small_zoo();
    zoo.push(RankTable::named("fano", &serde_json::Value::Null).unwrap());
    for m in zoo {
        for mu in Measure::ALL {
            if m.n() > mu.cap(&caps()) || (mu == Measure::CStarDStar && m.n() > 5) {
                continue;
            }
            let r = depth(&m, mu).unwrap();
            assert_eq!(replay(&m, &r.witness).unwrap(), r.value, "{mu} on {m:?}");
            let json = serde_json::to_string(&r.witness).unwrap();
            let back: Witness = serde_json::from_str(&json).unwrap();
            assert_eq!(back, r.witness);
        }
    }
}

#[test]
fn tampered_witness_is_rejected() {
    let m = cycle(4);
    let mut r = depth(&m, Measure::C).unwrap();
    r.witness.value += 1;
    r.witness.root.value += 1;
    assert!(replay(&m, &r.witness).is_err());
}

#[test]
fn fat_cycles_and_friends() {
    let c42 = gen_fat_cycle(4, 2).unwrap().cycle_matroid().unwrap();
    assert!(depth_value(&c42, Measure::CStarD).unwrap() >= 2);
    assert!(depth_value(&c42, Measure::CDStar).unwrap() <= 3);
    let d42 = gen_d(4, 2).unwrap().cycle_matroid().unwrap();
    assert!(depth_value(&d42, Measure::Cd).unwrap() <= 3);
    for n in 3..=4 {
        let k = gen_k3n(n).unwrap().cycle_matroid().unwrap();
        assert!(depth_value(&k, Measure::D).unwrap() >= n as u32);
    }
}

#[test]
fn fano_values_are_consistent() {
    let f = RankTable::named("fano", &serde_json::Value::Null).unwrap();
    let csd = depth_value(&f, Measure::CStar).unwrap();
    assert!(csd <= depth_value(&f, Measure::C).unwrap());
    assert_eq!(depth_value(&f, Measure::DStar).unwrap(), depth_value(&f.dual(), Measure::CStar).unwrap());
}

#[test]
fn split_is_optimal() {
    let m = cycle(6);
    let s = cstar_split(&m).unwrap();
    let v = s.lambda as u32
        + depth_value(&m.contract(s.b).unwrap(), Measure::CStar)
            .unwrap()
            .max(depth_value(&m.contract(s.a).unwrap(), Measure::CStar).unwrap());
    assert_eq!(v, depth_value(&m, Measure::CStar).unwrap());
    assert!(cstar_split(&RankTable::free(1).unwrap()).is_err());
}

#[test]
fn measure_names_round_trip() {
    for mu in Measure::ALL {
        assert_eq!(mu.name().parse::<Measure>().unwrap(), mu);
        assert_eq!(mu.short().parse::<Measure>().unwrap(), mu);
        assert_eq!(mu.dual().dual(), mu);
        let j = serde_json::to_string(&mu).unwrap();
        assert_eq!(j, format!("\"{}\"", mu.name()));
    }
    assert!("XD".parse::<Measure>().is_err());
}

#[test]
fn caps_are_enforced() {
    let big = RankTable::free(7).unwrap();
    assert!(depth_value(&big, Measure::CStarDStar).unwrap_err().is_cap());
    assert!(brute_depth(&big, Measure::C).unwrap_err().is_cap());
}

#[test]
fn chain_and_circuit_reports_hold() {
    for m in small_zoo() {
        assert!(chain_check(&m).unwrap().iter().all(|b| b.holds));
        assert!(circumference_bounds_check(&m).unwrap().iter().all(|b| b.holds), "{m:?}");
    }
}
