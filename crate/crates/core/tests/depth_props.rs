mod common;

use common::matroid;
use matroid_depth::depth::{brute_depth, chain_check, depth, depth_value, replay, Measure, Witness};
use matroid_depth::RankTable;
use proptest::prelude::*;

fn measure() -> impl Strategy<Value = Measure> {
    prop::sample::select(Measure::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn duality_swaps_measures(m in matroid(), mu in measure()) {
        prop_assert_eq!(depth_value(&m, mu).unwrap(), depth_value(&m.dual(), mu.dual()).unwrap());
    }

    #[test]
    fn witnesses_replay_to_their_value(m in matroid(), mu in measure()) {
        let r = depth(&m, mu).unwrap();
        prop_assert_eq!(replay(&m, &r.witness).unwrap(), r.value);
        let text = serde_json::to_string(&r.witness).unwrap();
        let back: Witness = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, r.witness);
    }

    #[test]
    fn solver_matches_definition(m in matroid(), mu in measure()) {
        prop_assume!(m.n() <= 4);
        prop_assert_eq!(depth_value(&m, mu).unwrap(), brute_depth(&m, mu).unwrap());
    }

    #[test]
    fn direct_sum_takes_the_maximum(a in matroid(), b in matroid(), mu in measure()) {
        prop_assume!(a.n() + b.n() <= 6 && a.n() > 0 && b.n() > 0);
        let s = a.direct_sum(&b).unwrap();
        let expect = depth_value(&a, mu).unwrap().max(depth_value(&b, mu).unwrap());
        prop_assert_eq!(depth_value(&s, mu).unwrap(), expect);
    }

    #[test]
    fn chain_inequalities_hold(m in matroid()) {
        for b in chain_check(&m).unwrap() {
            prop_assert!(b.holds, "{}: {} vs {}", b.name, b.lhs, b.rhs);
        }
    }

    #[test]
    fn values_lie_between_one_and_size(m in matroid(), mu in measure()) {
        let v = depth_value(&m, mu).unwrap();
        prop_assert!(v >= 1);
        prop_assert!(v as usize <= m.n().max(1));
    }
}

#[test]
fn named_values() {
    let fano = RankTable::named("fano", &serde_json::json!({})).unwrap();
    assert_eq!(depth_value(&fano, Measure::CStar).unwrap(), 4);
    let u24 = RankTable::uniform(2, 4).unwrap();
    assert_eq!(depth_value(&u24, Measure::C).unwrap(), 3);
    assert_eq!(depth_value(&u24, Measure::D).unwrap(), 3);
}
