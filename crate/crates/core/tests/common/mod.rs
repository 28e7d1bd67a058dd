//! Brute-force reference computations, written without the library's
//! algorithms so the two can be compared.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use contact_core::exact::{binomial, int, q};
use contact_core::heights::{solves_system, ApproximationSystem, ProjectivePoint};
use contact_core::monomial::MonomialMap;
use contact_core::Q;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Every multiset of `m` generator indices, as sorted index vectors.
pub fn multisets(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, m: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, m, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, m, 0, &mut Vec::new(), &mut out);
    out
}

/// Minimal weight of every degree-`m` image monomial, found by trying all
/// products of `m` generators.
pub fn brute_min_weights(rows: &[Vec<u64>], weights: &[Q], m: usize) -> BTreeMap<Vec<u64>, Q> {
    let vars = rows[0].len();
    let mut best: BTreeMap<Vec<u64>, Q> = BTreeMap::new();
    for ms in multisets(rows.len(), m) {
        let mut e = vec![0u64; vars];
        let mut w = Q::zero();
        for &i in &ms {
            for (a, b) in e.iter_mut().zip(&rows[i]) {
                *a += b;
            }
            w += &weights[i];
        }
        best.entry(e)
            .and_modify(|cur| {
                if w < *cur {
                    *cur = w.clone();
                }
            })
            .or_insert(w);
    }
    best
}

/// `(w_r(m), h^0(m))` by exhaustive factorization.
pub fn brute_weight_sum(rows: &[Vec<u64>], weights: &[Q], m: usize) -> (Q, usize) {
    let best = brute_min_weights(rows, weights, m);
    (best.values().sum(), best.len())
}

/// `Δ^k f(i) = Σ_j (−1)^{k−j} C(k, j) f(i + j)` for every admissible `i`.
pub fn forward_differences(values: &[Q], k: usize) -> Vec<Q> {
    if values.len() <= k {
        return Vec::new();
    }
    (0..values.len() - k)
        .map(|i| {
            (0..=k)
                .map(|j| {
                    let c = int(binomial(k, j));
                    let term = c * &values[i + j];
                    if (k - j).is_multiple_of(2) {
                        term
                    } else {
                        -term
                    }
                })
                .sum()
        })
        .collect()
}

pub fn steiner_rows() -> Vec<Vec<u64>> {
    vec![
        vec![1, 0, 1],
        vec![0, 1, 1],
        vec![2, 0, 0],
        vec![1, 1, 0],
        vec![0, 2, 0],
    ]
}

pub fn qs(xs: &[i64]) -> Vec<Q> {
    xs.iter().map(|&x| q(x)).collect()
}

/// Generators of `I^n` by multiplying generator lists, with no minimalization.
pub fn power_generators(gens: &[Vec<u64>], n: usize) -> Vec<Vec<u64>> {
    let vars = gens[0].len();
    let mut cur: BTreeSet<Vec<u64>> = BTreeSet::new();
    cur.insert(vec![0; vars]);
    for _ in 0..n {
        let mut next = BTreeSet::new();
        for a in &cur {
            for g in gens {
                next.insert(a.iter().zip(g).map(|(x, y)| x + y).collect());
            }
        }
        cur = next;
    }
    cur.into_iter().collect()
}

fn divides(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// For each variable, the smallest pure power among the generators.
fn box_bounds(gens: &[Vec<u64>]) -> Vec<u64> {
    let vars = gens[0].len();
    (0..vars)
        .map(|i| {
            gens.iter()
                .filter(|g| g.iter().enumerate().all(|(j, &e)| j == i || e == 0) && g[i] > 0)
                .map(|g| g[i])
                .min()
                .expect("finite colength needs a pure power of every variable")
        })
        .collect()
}

fn box_points(bounds: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for &b in bounds {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..b).map(move |e| {
                    let mut p = p.clone();
                    p.push(e);
                    p
                })
            })
            .collect();
    }
    out
}

/// Colength by testing every monomial in the bounding box for membership.
pub fn colength_by_membership(gens: &[Vec<u64>]) -> u64 {
    let bounds = box_bounds(gens);
    box_points(&bounds)
        .iter()
        .filter(|u| !gens.iter().any(|g| divides(g, u)))
        .count() as u64
}

/// Colength as `|box| − |I ∩ box|`, with `|I ∩ box|` from inclusion-exclusion
/// over subsets of the generators.
pub fn colength_by_inclusion_exclusion(gens: &[Vec<u64>]) -> u64 {
    let bounds = box_bounds(gens);
    let total: i128 = bounds.iter().map(|&b| b as i128).product();
    let k = gens.len();
    assert!(k <= 20, "too many generators for inclusion-exclusion");
    let mut inside: i128 = 0;
    for mask in 1u32..(1u32 << k) {
        let mut lcm = vec![0u64; bounds.len()];
        for (i, g) in gens.iter().enumerate() {
            if mask & (1 << i) != 0 {
                for (a, b) in lcm.iter_mut().zip(g) {
                    *a = (*a).max(*b);
                }
            }
        }
        let count: i128 = lcm
            .iter()
            .zip(&bounds)
            .map(|(&l, &b)| if l >= b { 0 } else { (b - l) as i128 })
            .product();
        if mask.count_ones() % 2 == 1 {
            inside += count;
        } else {
            inside -= count;
        }
    }
    (total - inside) as u64
}

/// `e(I) = 2 · area` under the Newton polygon of a finite-colength monomial
/// ideal in two variables.
pub fn newton_multiplicity_2d(gens: &[Vec<u64>]) -> Q {
    let mut pts: Vec<(i64, i64)> = gens.iter().map(|g| (g[0] as i64, g[1] as i64)).collect();
    pts.sort();
    pts.dedup();
    // lower-left convex chain from the y-axis point to the x-axis point
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for p in pts {
        if let Some(&(_, y)) = hull.last() {
            if p.1 >= y {
                continue;
            }
        }
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    assert_eq!(hull[0].0, 0, "needs a pure power of y");
    assert_eq!(hull.last().unwrap().1, 0, "needs a pure power of x");
    let twice_area: i64 = hull
        .windows(2)
        .map(|w| (w[1].0 - w[0].0) * (w[0].1 + w[1].1))
        .sum();
    q(twice_area)
}

/// All integer tuples in `[−b, b]^n`.
pub fn all_tuples(n: usize, b: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-b..=b).map(move |x| {
                    let mut p = p.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out
}

fn primitive_normal(v: &[BigInt]) -> Option<Vec<BigInt>> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return None;
    }
    let mut w: Vec<BigInt> = v.iter().map(|x| x / &g).collect();
    if w.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in &mut w {
            *x = -x.clone();
        }
    }
    Some(w)
}

/// Distinct image points of `[−b, b]^vars` under the monomial map that solve
/// the system, as normalized coordinate vectors.
pub fn search_oracle(rows: &[Vec<u64>], sys: &ApproximationSystem, b: i64) -> BTreeSet<Vec<BigInt>> {
    let vars = rows[0].len();
    let mut images = BTreeSet::new();
    for t in all_tuples(vars, b) {
        let x: Vec<BigInt> = t.iter().map(|&v| BigInt::from(v)).collect();
        let img: Vec<BigInt> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .zip(&x)
                    .map(|(&e, xi)| num_traits::pow(xi.clone(), e as usize))
                    .product()
            })
            .collect();
        if let Some(img) = primitive_normal(&img) {
            images.insert(img);
        }
    }
    images
        .into_iter()
        .filter(|img| {
            let p = ProjectivePoint::new(img.clone()).unwrap();
            solves_system(&p, sys).unwrap()
        })
        .collect()
}

pub fn steiner_map() -> MonomialMap {
    MonomialMap::from_rows(3, &steiner_rows()).unwrap()
}
