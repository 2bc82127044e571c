mod common;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use sofic_core::krieger::EdgeMatrix;
use sofic_core::ktheory::{k_groups, kernel, smith_normal_form, IntMatrix};

fn arb_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-9i64..=9, c), r)
            .prop_map(|rows| IntMatrix::from_rows(&rows))
    })
}

fn arb_edge_matrix_and_perm() -> impl Strategy<Value = (EdgeMatrix, Vec<usize>)> {
    (1usize..=6).prop_flat_map(|n| {
        (
            proptest::collection::vec(proptest::collection::vec(0u8..=1, n), n),
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
        )
            .prop_map(|(rows, perm)| (EdgeMatrix::from_rows(&rows), perm))
    })
}

proptest! {
    #![proptest_config(common::config(200))]

    #[test]
    fn smith_form_reconstructs(m in arb_matrix()) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert!(s.d.is_diagonal());
        prop_assert_eq!(s.u.determinant().magnitude().clone(), BigInt::one().magnitude().clone());
        prop_assert_eq!(s.v.determinant().magnitude().clone(), BigInt::one().magnitude().clone());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            prop_assert!(w[0] >= BigInt::zero());
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
        prop_assert_eq!(s.rank() + kernel(&m).free_rank, m.cols());
    }

    #[test]
    fn groups_ignore_edge_relabeling((b, perm) in arb_edge_matrix_and_perm()) {
        prop_assert_eq!(k_groups(&b), k_groups(&b.permuted(&perm)));
    }

    #[test]
    fn rank_matches_determinant(m in arb_matrix()) {
        if m.rows() == m.cols() {
            let full = smith_normal_form(&m).rank() == m.rows();
            prop_assert_eq!(full, !m.determinant().is_zero());
        }
    }
}
