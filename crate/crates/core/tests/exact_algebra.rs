use proptest::prelude::*;

use scroll_core::exactlin::{laurent_arith, ExactMatrix, Field, FiniteField, LaurentOp, LaurentSeries, Rationals};

fn matrix_strategy() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-3i64..4, r * c)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn rank_is_transpose_invariant_over_f11((r, c, data) in matrix_strategy()) {
        let f = FiniteField::prime(11).unwrap();
        let m = ExactMatrix::new(r, c, data.iter().map(|&a| f.from_int(a)).collect()).unwrap();
        prop_assert_eq!(m.rank(&f), m.transpose().rank(&f));
        let ker = m.kernel(&f);
        prop_assert_eq!(ker.len(), c - m.rank(&f));
        for v in ker {
            prop_assert!(m.mul_vec(&f, &v).iter().all(|a| f.is_zero(a)));
        }
    }

    #[test]
    fn rank_is_transpose_invariant_over_q((r, c, data) in matrix_strategy()) {
        let q = Rationals;
        let m = ExactMatrix::new(r, c, data.iter().map(|&a| q.from_int(a)).collect()).unwrap();
        prop_assert_eq!(m.rank(&q), m.transpose().rank(&q));
        for v in m.kernel(&q) {
            prop_assert!(m.mul_vec(&q, &v).iter().all(|a| q.is_zero(a)));
        }
    }

    #[test]
    fn invert_then_multiply_is_one(val in -5i64..5, lead in 1u32..11, tail in prop::collection::vec(0u32..11, 0..7)) {
        let f = FiniteField::prime(11).unwrap();
        let mut coeffs = vec![lead];
        coeffs.extend(tail);
        let n = coeffs.len() as i64;
        let a = LaurentSeries::new(&f, val, coeffs, val + n);
        let inv = laurent_arith(&f, &a, None, LaurentOp::Invert).unwrap();
        let one = laurent_arith(&f, &a, Some(&inv), LaurentOp::Mul).unwrap();
        prop_assert!(one.agrees_with(&f, &LaurentSeries::monomial(&f, 1, 0)));
        prop_assert_eq!(one.precision, n);
    }
}
