//! Brute-force oracles and random instances shared by the integration tests.
//! Everything here works on plain `i64` and avoids the library's algorithms.
#![allow(dead_code)]

use std::collections::BTreeSet;

use hilbcover_core::cone::Cone;
use hilbcover_core::lattice::{IntMatrix, LatticeVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type V = Vec<i64>;

pub fn to_v(x: &LatticeVector) -> V {
    x.iter().map(|c| c.to_i64().expect("small entries")).collect()
}

pub fn to_lv(x: &[i64]) -> LatticeVector {
    LatticeVector::from_i64s(x)
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Determinant by cofactor expansion.
pub fn det(m: &[V]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<V> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect()).collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det(&minor)
        })
        .sum()
}

/// Nonnegative integral solution of `x = sum_i c_i g_i` for `d` independent
/// generators, by Cramer's rule.
pub fn integral_coefficients(gens: &[V], x: &[i64]) -> Option<Vec<i64>> {
    let d0 = det(gens);
    if d0 == 0 {
        return None;
    }
    let mut out = Vec::with_capacity(gens.len());
    for i in 0..gens.len() {
        let mut m = gens.to_vec();
        m[i] = x.to_vec();
        let di = det(&m);
        if di % d0 != 0 || di / d0 < 0 {
            return None;
        }
        out.push(di / d0);
    }
    Some(out)
}

/// `x` is a nonnegative integral combination of some `d` linearly
/// independent elements of `basis`.
pub fn f_covered(basis: &[V], x: &[i64]) -> bool {
    let d = x.len();
    subsets(basis.len(), d).any(|s| {
        let g: Vec<V> = s.iter().map(|&i| basis[i].clone()).collect();
        integral_coefficients(&g, x).is_some()
    })
}

pub fn subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let c = cur.as_mut().unwrap();
        let mut i = k;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if c[i] < n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

/// All lattice points of the cone `{x : <s, x> >= 0}` with
/// `0 < <grading, x> <= max_degree` inside the box `|x_i| <= radius`.
pub fn cone_points(supports: &[V], grading: &[i64], max_degree: i64, radius: i64) -> Vec<V> {
    let d = grading.len();
    let mut out = Vec::new();
    let mut x = vec![-radius; d];
    loop {
        let g = dot(grading, &x);
        if g > 0 && g <= max_degree && supports.iter().all(|s| dot(s, &x) >= 0) {
            out.push(x.clone());
        }
        let mut i = 0;
        while i < d {
            if x[i] < radius {
                x[i] += 1;
                break;
            }
            x[i] = -radius;
            i += 1;
        }
        if i == d {
            break;
        }
    }
    out
}

/// A point set and its grading large enough to contain the Hilbert basis:
/// every basis element lies in the half-open parallelepiped of some `d` rays,
/// so its degree is below the sum of the `d` largest ray degrees.
pub struct Enumerated {
    pub grading: V,
    pub points: Vec<V>,
}

pub fn enumerate_for_hilbert(cone: &Cone) -> Enumerated {
    let supports: Vec<V> = cone.supports().iter().map(to_v).collect();
    let rays: Vec<V> = cone.rays().iter().map(to_v).collect();
    let d = cone.dim();
    let grading: V = (0..d).map(|j| supports.iter().map(|s| s[j]).sum()).collect();
    let mut degs: Vec<i64> = rays.iter().map(|r| dot(&grading, r)).collect();
    degs.sort_unstable_by(|a, b| b.cmp(a));
    let max_degree: i64 = degs.iter().take(d).sum();
    // |y|_inf <= deg(y) * max_r |r|_inf / deg(r) for y in the cone
    let ratio = rays
        .iter()
        .map(|r| r.iter().map(|c| c.abs()).max().unwrap() as f64 / dot(&grading, r) as f64)
        .fold(0.0, f64::max);
    let radius = (max_degree as f64 * ratio).ceil() as i64;
    Enumerated { points: cone_points(&supports, &grading, max_degree, radius), grading }
}

/// Irreducible elements among `points` (which must be closed under taking
/// summands), via `x - y ∈ C`.
pub fn brute_force_hilbert(cone: &Cone) -> BTreeSet<V> {
    let supports: Vec<V> = cone.supports().iter().map(to_v).collect();
    let e = enumerate_for_hilbert(cone);
    let in_cone = |z: &[i64]| supports.iter().all(|s| dot(s, z) >= 0);
    e.points
        .iter()
        .filter(|x| {
            !e.points.iter().any(|y| {
                y != *x && dot(&e.grading, y) < dot(&e.grading, x) && {
                    let z: V = x.iter().zip(y).map(|(a, b)| a - b).collect();
                    in_cone(&z)
                }
            })
        })
        .cloned()
        .collect()
}

/// A random pointed full-dimensional cone with generators in a small box.
pub fn random_cone(rng: &mut ChaCha8Rng, dim: usize, entry: i64, count: usize) -> Cone {
    loop {
        let rows: Vec<LatticeVector> = (0..count)
            .map(|_| {
                // keep a positive last coordinate so the cone is pointed
                let mut v: V = (0..dim - 1).map(|_| rng.gen_range(-entry..=entry)).collect();
                v.push(rng.gen_range(1..=entry));
                to_lv(&v)
            })
            .collect();
        if let Ok(c) = Cone::from_generators(&IntMatrix::new(rows, dim)) {
            return c;
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// 50 instances in dimension 2 and 3 used by the oracle comparisons.
pub fn small_instances(seed: u64) -> Vec<Cone> {
    let mut r = rng(seed);
    (0..50)
        .map(|i| {
            if i % 2 == 0 {
                random_cone(&mut r, 2, 4, 2 + i % 3)
            } else {
                random_cone(&mut r, 3, 2, 3 + i % 3)
            }
        })
        .collect()
}
