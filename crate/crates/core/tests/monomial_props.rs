mod common;

use std::collections::BTreeSet;

use common::*;
use contact_core::exact::{binomial, frac, int, q};
use contact_core::monomial::{
    graded_piece, hilbert_function, image_basis, min_weight, weight_sum, Monomial, MonomialMap,
    WeightVector,
};
use contact_core::{Execution, Q};
use num_traits::ToPrimitive;
use proptest::prelude::*;

const SEQ: Execution = Execution::Sequential;

/// A random map: 2 or 3 variables, generators of one common degree.
fn arb_map() -> impl Strategy<Value = Vec<Vec<u64>>> {
    (2usize..=3, 1u64..=3).prop_flat_map(|(vars, deg)| {
        let all = all_of_degree(vars, deg);
        let n = all.len();
        proptest::sample::subsequence(all, 1..=n.min(5))
    })
}

fn all_of_degree(vars: usize, deg: u64) -> Vec<Vec<u64>> {
    if vars == 1 {
        return vec![vec![deg]];
    }
    (0..=deg)
        .rev()
        .flat_map(|e| {
            all_of_degree(vars - 1, deg - e).into_iter().map(move |mut rest| {
                rest.insert(0, e);
                rest
            })
        })
        .collect()
}

fn arb_weights(len: usize) -> impl Strategy<Value = Vec<Q>> {
    proptest::collection::vec((0i64..6, 1i64..4), len).prop_map(|v| {
        let mut w: Vec<Q> = v.into_iter().map(|(n, d)| frac(n, d)).collect();
        w.sort_by(|a, b| b.cmp(a));
        w
    })
}

fn map_and_weights() -> impl Strategy<Value = (Vec<Vec<u64>>, Vec<Q>)> {
    arb_map().prop_flat_map(|rows| {
        let n = rows.len();
        (Just(rows), arb_weights(n))
    })
}

fn build(rows: &[Vec<u64>]) -> MonomialMap {
    MonomialMap::from_rows(rows[0].len(), rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn weight_sum_matches_exhaustive_factorization((rows, w) in map_and_weights(), m in 1usize..=4) {
        let map = build(&rows);
        let wv = WeightVector::new(w.clone()).unwrap();
        let (brute, h0) = brute_weight_sum(&rows, &w, m);
        prop_assert_eq!(weight_sum(&map, &wv, m, SEQ).unwrap(), brute);
        prop_assert_eq!(hilbert_function(&map, m, SEQ).unwrap(), h0);
    }

    #[test]
    fn basis_size_bounded_by_multisets(rows in arb_map(), m in 1usize..=4) {
        let map = build(&rows);
        let n = rows.len();
        let bound = binomial(n - 1 + m, m).to_usize().unwrap();
        prop_assert!(image_basis(&map, m, SEQ).unwrap().len() <= bound);
    }

    #[test]
    fn min_weight_monotone_in_weights((rows, w) in map_and_weights(), bump in 0usize..5, m in 1usize..=3) {
        let map = build(&rows);
        let i = bump % rows.len();
        // raising the first i+1 weights by one keeps the order non-increasing
        let raised: Vec<Q> = w.iter().enumerate().map(|(j, x)| if j <= i { x + q(1) } else { x.clone() }).collect();
        let lo = WeightVector::new(w).unwrap();
        let hi = WeightVector::new(raised).unwrap();
        for u in image_basis(&map, m, SEQ).unwrap() {
            prop_assert!(min_weight(&map, &lo, &u, m).unwrap() <= min_weight(&map, &hi, &u, m).unwrap());
        }
    }

    #[test]
    fn weight_sum_linear_in_weights((rows, w) in map_and_weights(), num in 1i64..7, den in 1i64..5, m in 1usize..=4) {
        let map = build(&rows);
        let c = frac(num, den);
        let wv = WeightVector::new(w).unwrap();
        let scaled = wv.scaled(&c).unwrap();
        prop_assert_eq!(
            weight_sum(&map, &scaled, m, SEQ).unwrap(),
            &c * weight_sum(&map, &wv, m, SEQ).unwrap()
        );
    }

    #[test]
    fn basis_is_multiplicative(rows in arb_map(), m1 in 1usize..=2, m2 in 1usize..=2) {
        let map = build(&rows);
        let a = image_basis(&map, m1, SEQ).unwrap();
        let b = image_basis(&map, m2, SEQ).unwrap();
        let ab = image_basis(&map, m1 + m2, SEQ).unwrap();
        for x in &a {
            for y in &b {
                prop_assert!(ab.contains(&x.mul(y)));
            }
        }
    }

    #[test]
    fn parallel_matches_sequential((rows, w) in map_and_weights(), m in 1usize..=4) {
        let map = build(&rows);
        let wv = WeightVector::new(w).unwrap();
        prop_assert_eq!(
            graded_piece(&map, &wv, m, SEQ).unwrap(),
            graded_piece(&map, &wv, m, Execution::Parallel).unwrap()
        );
    }
}

#[test]
fn projective_space_hilbert_function() {
    for n in 1..=4usize {
        let map = MonomialMap::projective_space(n);
        for m in 1..=6 {
            assert_eq!(
                int(hilbert_function(&map, m, SEQ).unwrap()),
                int(binomial(n + m, n)),
                "P^{n}, m = {m}"
            );
        }
    }
}

#[test]
fn steiner_examples() {
    let map = steiner_map();
    assert_eq!(map, MonomialMap::steiner());
    let m1: BTreeSet<Monomial> = image_basis(&map, 1, SEQ).unwrap();
    let gens: BTreeSet<Monomial> = steiner_rows().into_iter().map(Monomial::new).collect();
    assert_eq!(m1, gens);
    assert_eq!(image_basis(&map, 2, SEQ).unwrap().len(), 12);
    let h: Vec<usize> = (1..=5).map(|m| hilbert_function(&map, m, SEQ).unwrap()).collect();
    let closed: Vec<usize> = (1..=5).map(|m| (3 * m * m + 5 * m + 2) / 2).collect();
    assert_eq!(h, closed);

    let w = WeightVector::from_integers(&[1, 1, 0, 0, 0]).unwrap();
    assert_eq!(min_weight(&map, &w, &Monomial::new(vec![4, 0, 0]), 2).unwrap(), q(0));
    assert_eq!(min_weight(&map, &w, &Monomial::new(vec![2, 0, 2]), 2).unwrap(), q(2));
    assert_eq!(min_weight(&map, &w, &Monomial::new(vec![2, 1, 1]), 2).unwrap(), q(1));
    assert!(min_weight(&map, &w, &Monomial::new(vec![0, 0, 4]), 2).is_err());
    assert_eq!(weight_sum(&map, &w, 1, SEQ).unwrap(), q(2));
    assert_eq!(weight_sum(&map, &w, 2, SEQ).unwrap(), q(10));
}
