mod common;

use common::{matrix, square};
use matroid_depth::depth::{depth_value, Measure};
use matroid_depth::matrix_depth::{matrix_depth, td_star_formula};
use matroid_depth::FFMatrix;
use proptest::prelude::*;

/// A matrix together with an invertible matrix of matching row count.
fn matrix_and_row_op() -> impl Strategy<Value = (FFMatrix, FFMatrix)> {
    matrix().prop_flat_map(|a| {
        let (p, m) = (a.p(), a.m());
        (Just(a), square(p, m).prop_filter("invertible", move |u| u.rank() == m))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn text_format_round_trips(a in matrix()) {
        prop_assert_eq!(FFMatrix::parse_text(&a.to_text()).unwrap(), a);
    }

    #[test]
    fn rank_agrees_with_vector_matroid(a in matrix()) {
        let m = a.vector_matroid().unwrap();
        prop_assert_eq!(a.rank(), m.rank() as usize);
        prop_assert!(m.check_axioms().is_ok());
    }

    #[test]
    fn row_operations_keep_the_matroid((a, u) in matrix_and_row_op()) {
        let b = a.left_mul(&u);
        prop_assert_eq!(b.vector_matroid().unwrap(), a.vector_matroid().unwrap());
        prop_assert_eq!(b.row_space_key(), a.row_space_key());
        prop_assert_eq!(td_star_formula(&b).unwrap().formula, td_star_formula(&a).unwrap().formula);
    }

    #[test]
    fn matrix_level_depth_equals_matroid_depth(a in matrix()) {
        let m = a.vector_matroid().unwrap();
        for mu in [Measure::CStar, Measure::DStar, Measure::CStarD, Measure::CDStar] {
            prop_assert_eq!(matrix_depth(&a, mu).unwrap(), depth_value(&m, mu).unwrap(), "{}", mu);
        }
    }

    #[test]
    fn column_deletion_is_matroid_deletion(a in matrix(), j in any::<prop::sample::Index>()) {
        let j = j.index(a.n());
        prop_assume!(a.n() > 1);
        let m = a.vector_matroid().unwrap();
        prop_assert_eq!(a.delete_column(j).unwrap().vector_matroid().unwrap(), m.delete(1 << j).unwrap());
    }

    #[test]
    fn column_contraction_is_matroid_contraction(a in matrix(), j in any::<prop::sample::Index>()) {
        let j = j.index(a.n());
        prop_assume!(a.n() > 1);
        let m = a.vector_matroid().unwrap();
        prop_assert_eq!(a.contract_existing(j).unwrap().vector_matroid().unwrap(), m.contract(1 << j).unwrap());
    }
}
