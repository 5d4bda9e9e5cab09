mod common;

use common::{matroid, multigraph};
use matroid_depth::io::{load_str, MatroidSpec};
use matroid_depth::matroid::{elements, RankTable};
use matroid_depth::MultiGraph;
use proptest::prelude::*;

fn bits(n: usize) -> impl Strategy<Value = u32> {
    0u32..(1 << n)
}

/// Connected components by union-find, counted independently of the library.
fn component_count(v: usize, edges: &[(usize, usize)]) -> usize {
    let mut parent: Vec<usize> = (0..v).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    let mut count = v;
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            count -= 1;
        }
    }
    count
}

proptest! {
    #[test]
    fn dual_rank_formula(m in matroid(), x in bits(5)) {
        let x = x & m.full();
        let d = m.dual();
        let expected = x.count_ones() as i32 - m.rank() as i32 + m.r(m.full() & !x) as i32;
        prop_assert_eq!(d.r(x) as i32, expected);
        prop_assert_eq!(d.dual(), m.clone());
        prop_assert!(d.check_axioms().is_ok());
    }

    #[test]
    fn minors_satisfy_axioms_and_dualize(m in matroid(), del in bits(5), con in bits(5)) {
        let del = del & m.full();
        let con = con & m.full() & !del;
        let minor = m.minor(del, con).unwrap();
        prop_assert!(minor.check_axioms().is_ok());
        prop_assert_eq!(minor.n(), m.n() - (del | con).count_ones() as usize);
        prop_assert_eq!(minor.dual(), m.dual().minor(con, del).unwrap());
    }

    #[test]
    fn contraction_rank_formula(m in matroid(), c in bits(5), x in bits(5)) {
        let c = c & m.full();
        let rest: Vec<usize> = elements(m.full() & !c).collect();
        let x = x & ((1u32 << rest.len()) - 1);
        let orig = elements(x).fold(0u32, |acc, i| acc | 1 << rest[i]);
        let mc = m.contract(c).unwrap();
        prop_assert_eq!(mc.r(x) as i32, m.r(orig | c) as i32 - m.r(c) as i32);
    }

    #[test]
    fn connectivity_is_symmetric_and_components_partition(m in matroid(), x in bits(5)) {
        let x = x & m.full();
        prop_assert_eq!(m.lambda(x), m.lambda(m.full() & !x));
        prop_assert_eq!(m.lambda(x), m.dual().lambda(x));
        let comps = m.components();
        prop_assert_eq!(comps.iter().fold(0, |a, &c| a | c), m.full());
        for c in &comps {
            prop_assert_eq!(m.lambda(*c), 0);
        }
    }

    #[test]
    fn rank_table_json_round_trips(m in matroid()) {
        let spec = MatroidSpec::from_table(&m);
        let text = serde_json::to_string(&spec).unwrap();
        prop_assert_eq!(serde_json::from_str::<MatroidSpec>(&text).unwrap(), spec);
        prop_assert_eq!(load_str(&text).unwrap().matroid, m);
    }

    #[test]
    fn graphic_rank_counts_components(g in multigraph()) {
        let m = g.cycle_matroid().unwrap();
        let full = m.full();
        for x in [0, full, full & 0b1010101, full & 0b0110011] {
            let chosen: Vec<(usize, usize)> = elements(x).map(|e| g.edges()[e]).collect();
            prop_assert_eq!(m.r(x) as usize, g.vertex_count() - component_count(g.vertex_count(), &chosen));
        }
    }

    #[test]
    fn edge_contraction_matches_matroid_contraction(g in multigraph(), pick in any::<prop::sample::Index>()) {
        prop_assume!(g.edge_count() > 0);
        let e = pick.index(g.edge_count());
        let m = g.cycle_matroid().unwrap();
        prop_assert_eq!(g.contract_edge(e).unwrap().cycle_matroid().unwrap(), m.contract(1 << e).unwrap());
    }

    #[test]
    fn graph_formats_round_trip(g in multigraph()) {
        prop_assert_eq!(MultiGraph::parse_text(&g.to_text()).unwrap(), g.clone());
        let spec = MatroidSpec::from_graph(&g);
        let back = load_str(&serde_json::to_string(&spec).unwrap()).unwrap();
        prop_assert_eq!(back.graph.unwrap(), g);
    }

    #[test]
    fn canonical_form_ignores_labels(m in matroid(), seed in any::<u64>()) {
        let n = m.n();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.rotate_left((seed as usize) % n.max(1));
        prop_assert_eq!(m.permute(&perm).canonical(), m.canonical());
    }
}

#[test]
fn uniform_matroids_have_closed_form_ranks() {
    for n in 0..=6 {
        for k in 0..=n {
            let u = RankTable::uniform(k, n).unwrap();
            for x in 0..=u.full() {
                assert_eq!(u.r(x) as usize, (x.count_ones() as usize).min(k));
            }
        }
    }
}
