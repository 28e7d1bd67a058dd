mod common;

use std::cmp::Ordering;
use std::collections::BTreeSet;

use common::*;
use contact_core::exact::{frac, int, q};
use contact_core::heights::{
    abs_value, approx_defect, height, ord, product_formula_check, search_points, support,
    ApproximationSystem, LinearForm, LogValue, Place, ProjectivePoint,
};
use contact_core::monomial::{MonomialMap, WeightVector};
use contact_core::{Error, Execution, Q};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn nonzero_rational() -> impl Strategy<Value = Q> {
    (1i64..=1_000_000, 1i64..=1_000_000, any::<bool>()).prop_map(|(n, d, neg)| frac(if neg { -n } else { n }, d))
}

fn point() -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-20i64..=20, 2..5).prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
}

proptest! {
    #[test]
    fn product_formula(x in nonzero_rational()) {
        prop_assert!(product_formula_check(&x).unwrap().is_one());
    }

    #[test]
    fn finite_absolute_value_matches_valuation(x in nonzero_rational()) {
        for v in support(&x) {
            if let Place::Finite(p) = v {
                let expected = q(p as i64).pow(-(ord(&x, p) as i32));
                prop_assert_eq!(abs_value(&x, v).unwrap(), expected);
            }
        }
    }

    #[test]
    fn height_ignores_scaling(c in point(), k in 1i64..30, neg in any::<bool>()) {
        let k = if neg { -k } else { k };
        let p = ProjectivePoint::from_i64(&c).unwrap();
        let scaled: Vec<i64> = c.iter().map(|x| x * k).collect();
        let s = ProjectivePoint::from_i64(&scaled).unwrap();
        prop_assert_eq!(&p, &s);
        prop_assert_eq!(height(&p), height(&s));
        let r: Vec<Q> = c.iter().map(|&x| frac(x, k.abs())).collect();
        prop_assert_eq!(height(&ProjectivePoint::from_rationals(&r).unwrap()), height(&p));
    }

    #[test]
    fn defect_nonpositive_for_small_forms(c in point(), raw in proptest::collection::vec(-3i64..=3, 4)) {
        let n = c.len();
        let p = ProjectivePoint::from_i64(&c).unwrap();
        let coeffs: Vec<Q> = raw[..n].iter().map(|&x| q(x)).collect();
        let norm_sq: Q = coeffs.iter().map(|x| x * x).sum();
        // rescale to Euclidean norm ≤ 1 with a rational factor
        let scale = if norm_sq.is_zero() { q(1) } else { Q::one() / (norm_sq.to_integer() + BigInt::one()) };
        let real_form = LinearForm::new(coeffs.iter().map(|x| x * &scale).collect());
        prop_assert!(approx_defect(&p, Place::Real, &real_form).compare(&LogValue::zero()) != Ordering::Greater);
        let integral = LinearForm::new(coeffs);
        for v in [Place::Finite(2), Place::Finite(3), Place::Finite(7)] {
            prop_assert!(approx_defect(&p, v, &integral).compare(&LogValue::zero()) != Ordering::Greater);
        }
    }

    #[test]
    fn log_compare_agrees_with_floats(a in 2i64..500, b in 2i64..500, c1 in 1i64..20, c2 in 1i64..20) {
        let x = LogValue::log(q(a), frac(c1, 7));
        let y = LogValue::log(q(b), frac(c2, 5));
        let (fx, fy) = (x.to_f64(), y.to_f64());
        if (fx - fy).abs() > 1e-9 {
            prop_assert_eq!(x.compare(&y), fx.partial_cmp(&fy).unwrap());
        }
    }
}

#[test]
fn seeded_product_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..1000 {
        let n: i64 = rng.gen_range(1..=1_000_000) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let d: i64 = rng.gen_range(1..=1_000_000);
        assert!(product_formula_check(&frac(n, d)).unwrap().is_one());
    }
    assert_eq!(abs_value(&q(0), Place::Real), Err(Error::ZeroInput));
}

#[test]
fn basic_heights() {
    assert!(height(&ProjectivePoint::from_i64(&[1, 0, 0]).unwrap()).is_zero());
    assert_eq!(height(&ProjectivePoint::from_i64(&[3, 4]).unwrap()).norm_sq, BigInt::from(25));
    assert_eq!(height(&ProjectivePoint::from_i64(&[6, -8]).unwrap()).norm_sq, BigInt::from(25));
    assert!(ProjectivePoint::from_i64(&[0, 0]).is_err());
}

#[test]
fn search_matches_oracle_on_random_systems() {
    let map = MonomialMap::steiner();
    let rows = steiner_rows();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..6 {
        let mut w: Vec<i64> = (0..5).map(|_| rng.gen_range(0..4)).collect();
        w.sort_by(|a, b| b.cmp(a));
        let mut w2: Vec<i64> = (0..5).map(|_| rng.gen_range(0..3)).collect();
        w2.sort_by(|a, b| b.cmp(a));
        let sys = ApproximationSystem::coordinate_system(
            5,
            &[
                (Place::Real, WeightVector::from_integers(&w).unwrap()),
                (Place::Finite(2), WeightVector::from_integers(&w2).unwrap()),
            ],
        )
        .unwrap();
        for exec in [Execution::Sequential, Execution::Parallel] {
            let hits = search_points(&map, &sys, 4, exec).unwrap();
            let got: BTreeSet<Vec<BigInt>> = hits.iter().map(|h| h.image.coords().to_vec()).collect();
            assert_eq!(got, search_oracle(&rows, &sys, 4), "weights {w:?} / {w2:?}");
            for h in &hits {
                assert_eq!(h.zero_height, height(&h.image).is_zero());
            }
        }
    }
}

#[test]
fn zero_weight_search_returns_every_image() {
    let map = MonomialMap::steiner();
    let sys = ApproximationSystem::coordinate_system(5, &[(Place::Real, WeightVector::zero(5))]).unwrap();
    let hits = search_points(&map, &sys, 1, Execution::Sequential).unwrap();
    assert_eq!(hits.len(), search_oracle(&steiner_rows(), &sys, 1).len());
    assert!(hits.iter().all(|h| int(h.image.norm_sq()) >= q(1)));
}
