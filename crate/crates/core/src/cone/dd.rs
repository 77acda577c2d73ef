//! Double description primitives.
//!
//! All routines work on pointed cones given by a list of extreme rays together
//! with *some* valid inequality description `<a, x> >= 0`. Adjacency of rays is
//! decided combinatorially: two rays span a 2-face iff no third ray is tight on
//! every inequality tight at both.

use fixedbitset::FixedBitSet;

use crate::lattice::{adjugate, rank, IntMatrix, LatticeVector};

fn zero_sets(rays: &[LatticeVector], ineqs: &[LatticeVector]) -> Vec<FixedBitSet> {
    rays.iter()
        .map(|r| {
            let mut z = FixedBitSet::with_capacity(ineqs.len());
            for (k, a) in ineqs.iter().enumerate() {
                if a.dot(r).is_zero() {
                    z.insert(k);
                }
            }
            z
        })
        .collect()
}

/// Extreme rays of `cone(rays) ∩ {<h, x> >= 0}`.
///
/// `ineqs` must be a valid inequality description of `cone(rays)` (redundant
/// rows are fine) and `dim` the ambient dimension.
pub(crate) fn cut(rays: &[LatticeVector], ineqs: &[LatticeVector], h: &LatticeVector, dim: usize) -> Vec<LatticeVector> {
    let values: Vec<_> = rays.iter().map(|r| h.dot(r)).collect();
    let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
    let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();

    let mut out: Vec<LatticeVector> = (0..rays.len())
        .filter(|&i| !values[i].is_negative())
        .map(|i| rays[i].clone())
        .collect();
    if neg.is_empty() || pos.is_empty() {
        return out;
    }

    let zs = zero_sets(rays, ineqs);
    let need = dim.saturating_sub(2);
    let mut common = FixedBitSet::with_capacity(ineqs.len());
    for &p in &pos {
        for &n in &neg {
            common.clone_from(&zs[p]);
            common.intersect_with(&zs[n]);
            if common.count_ones(..) < need {
                continue;
            }
            let adjacent = (0..rays.len()).all(|r| r == p || r == n || !common.is_subset(&zs[r]));
            if adjacent {
                // <h,p> n - <h,n> p has positive weights on both rays
                let mut v = rays[n].scale(&values[p]);
                v.add_scaled(&-&values[n], &rays[p]);
                out.push(v.primitive());
            }
        }
    }
    out
}

/// Extreme rays of the polyhedral cone `{x : <a, x> >= 0 for a in ineqs}`.
///
/// Returns `None` when the inequalities have rank below `dim` (the cone then
/// contains a line).
pub(crate) fn extreme_rays(ineqs: &[LatticeVector], dim: usize) -> Option<Vec<LatticeVector>> {
    // greedy choice of `dim` independent rows
    let mut basis_idx: Vec<usize> = Vec::with_capacity(dim);
    let mut basis_rows: Vec<LatticeVector> = Vec::with_capacity(dim);
    for (i, a) in ineqs.iter().enumerate() {
        if basis_rows.len() == dim {
            break;
        }
        basis_rows.push(a.clone());
        if rank(&basis_rows) == basis_rows.len() {
            basis_idx.push(i);
        } else {
            basis_rows.pop();
        }
    }
    if basis_rows.len() < dim {
        return None;
    }
    let (det, adj) = adjugate(&IntMatrix::new(basis_rows.clone(), dim))?;
    let mut rays: Vec<LatticeVector> = (0..dim)
        .map(|j| {
            let col = adj.column(j);
            let col = if det.is_negative() { -&col } else { col };
            col.primitive()
        })
        .collect();
    let mut used = basis_rows;
    for (i, a) in ineqs.iter().enumerate() {
        if basis_idx.contains(&i) {
            continue;
        }
        rays = cut(&rays, &used, a, dim);
        used.push(a.clone());
        if rays.is_empty() {
            break;
        }
    }
    rays.sort();
    rays.dedup();
    Some(rays)
}

/// Keeps the inequalities that define facets of `cone(rays)`; duplicates are
/// merged. `ineqs` must contain every facet.
pub(crate) fn facets(rays: &[LatticeVector], ineqs: &[LatticeVector], dim: usize) -> Vec<LatticeVector> {
    let mut cand: Vec<LatticeVector> = ineqs.iter().map(LatticeVector::primitive).collect();
    cand.sort();
    cand.dedup();
    let sets: Vec<FixedBitSet> = cand
        .iter()
        .map(|a| {
            let mut z = FixedBitSet::with_capacity(rays.len());
            for (k, r) in rays.iter().enumerate() {
                if a.dot(r).is_zero() {
                    z.insert(k);
                }
            }
            z
        })
        .collect();
    let need = dim.saturating_sub(1);
    (0..cand.len())
        .filter(|&i| {
            let zi = &sets[i];
            let ni = zi.count_ones(..);
            ni >= need
                && ni < rays.len()
                && !(0..cand.len()).any(|j| j != i && zi.is_subset(&sets[j]) && sets[j].count_ones(..) > ni)
        })
        .map(|i| cand[i].clone())
        .collect()
}

/// Generators (primitive, deduplicated) that span extreme rays of their cone,
/// given the complete facet list.
pub(crate) fn extreme_generators(gens: &[LatticeVector], supports: &[LatticeVector]) -> Vec<LatticeVector> {
    let zs = zero_sets(gens, supports);
    (0..gens.len())
        .filter(|&i| !(0..gens.len()).any(|j| j != i && zs[i].is_subset(&zs[j]) && zs[j] != zs[i]))
        .map(|i| gens[i].clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(rows: &[&[i64]]) -> Vec<LatticeVector> {
        rows.iter().map(|r| LatticeVector::from_i64s(r)).collect()
    }

    #[test]
    fn quadrant_rays() {
        let rays = extreme_rays(&vs(&[&[1, 0], &[0, 1]]), 2).unwrap();
        assert_eq!(rays, vs(&[&[0, 1], &[1, 0]]));
    }

    #[test]
    fn cut_square_cone() {
        // cone over the unit square at height 1, cut by x1 <= x0/2 ... i.e. x0 - 2 x1 >= 0
        let rays = vs(&[&[1, 0, 0], &[1, 1, 0], &[1, 0, 1], &[1, 1, 1]]);
        let ineqs = vs(&[&[0, 1, 0], &[0, 0, 1], &[1, -1, 0], &[1, 0, -1]]);
        let mut out = cut(&rays, &ineqs, &LatticeVector::from_i64s(&[1, -2, 0]), 3);
        out.sort();
        assert_eq!(out, vs(&[&[1, 0, 0], &[1, 0, 1], &[2, 1, 0], &[2, 1, 2]]));
    }

    #[test]
    fn not_pointed_detected() {
        assert!(extreme_rays(&vs(&[&[1, 0], &[-1, 0]]), 2).is_none());
    }

    #[test]
    fn facets_drop_redundant() {
        let rays = vs(&[&[1, 0], &[0, 1]]);
        let f = facets(&rays, &vs(&[&[1, 0], &[0, 1], &[1, 1], &[2, 0]]), 2);
        assert_eq!(f, vs(&[&[0, 1], &[1, 0]]));
    }
}
