#![allow(dead_code)]

use std::sync::OnceLock;

use matroid_depth::theorems::families::matroids_up_to;
use matroid_depth::{FFMatrix, MultiGraph, RankTable};
use proptest::prelude::*;

/// All matroids with at most five elements, one per isomorphism class.
pub fn small_family() -> &'static [RankTable] {
    static FAMILY: OnceLock<Vec<RankTable>> = OnceLock::new();
    FAMILY.get_or_init(|| matroids_up_to(5).expect("family fits the caps"))
}

/// A member of the small family under a random relabeling.
pub fn matroid() -> impl Strategy<Value = RankTable> {
    (0..small_family().len(), any::<u64>()).prop_map(|(i, seed)| {
        let m = &small_family()[i];
        let mut perm: Vec<usize> = (0..m.n()).collect();
        // Fisher-Yates driven by the seed so the relabeling shrinks with it.
        let mut s = seed;
        for k in (1..perm.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(k, (s >> 33) as usize % (k + 1));
        }
        m.permute(&perm)
    })
}

/// A matrix over GF(2) or GF(3) with at most 3 rows and 4 columns.
pub fn matrix() -> impl Strategy<Value = FFMatrix> {
    (prop::sample::select(vec![2u8, 3]), 1usize..=3, 1usize..=4).prop_flat_map(|(p, m, n)| {
        prop::collection::vec(prop::collection::vec(0..p as i64, n), m)
            .prop_map(move |rows| FFMatrix::from_rows(p, n, &rows).expect("entries are in range"))
    })
}

/// A square matrix of the given size over GF(p), possibly singular.
pub fn square(p: u8, m: usize) -> impl Strategy<Value = FFMatrix> {
    prop::collection::vec(prop::collection::vec(0..p as i64, m), m)
        .prop_map(move |rows| FFMatrix::from_rows(p, m, &rows).expect("entries are in range"))
}

/// A multigraph with loops allowed, at most 5 vertices and 7 edges.
pub fn multigraph() -> impl Strategy<Value = MultiGraph> {
    (1usize..=5).prop_flat_map(|v| {
        prop::collection::vec((0..v, 0..v), 0..=7)
            .prop_map(move |edges| MultiGraph::new(v, edges).expect("endpoints in range"))
    })
}
