use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Cone, SimplicialSubcone};
use crate::lattice::{rank, LatticeVector};

/// Placing triangulation of the extreme rays of `cone`, inserting rays in
/// their stored (lexicographic) order. Cell indices refer to `cone.rays()`.
pub fn triangulate(cone: &Cone) -> Vec<SimplicialSubcone> {
    let order: Vec<usize> = (0..cone.rays().len()).collect();
    placing_triangulation(cone.rays(), &order)
}

/// Placing triangulation with rays inserted in a seeded random order.
pub fn triangulate_shuffled(cone: &Cone, seed: u64) -> Vec<SimplicialSubcone> {
    let mut order: Vec<usize> = (0..cone.rays().len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    placing_triangulation(cone.rays(), &order)
}

/// Placing triangulation of `cone(vectors)` using the vectors in `order`.
///
/// The vectors must span the full space. Each new vector is joined to every
/// boundary facet of the current triangulation that it sees strictly from
/// outside.
pub fn placing_triangulation(vectors: &[LatticeVector], order: &[usize]) -> Vec<SimplicialSubcone> {
    let Some(first) = vectors.first() else { return Vec::new() };
    let d = first.dim();

    let mut start: Vec<usize> = Vec::with_capacity(d);
    let mut rows: Vec<LatticeVector> = Vec::with_capacity(d);
    for &i in order {
        if start.len() == d {
            break;
        }
        rows.push(vectors[i].clone());
        if rank(&rows) == rows.len() {
            start.push(i);
        } else {
            rows.pop();
        }
    }
    assert_eq!(start.len(), d, "vectors do not span the ambient space");

    let mut cells = vec![SimplicialSubcone::from_pool(vectors, &start).expect("independent start")];
    let mut placed: Vec<usize> = start.clone();

    for &v in order {
        if start.contains(&v) {
            continue;
        }
        let x = &vectors[v];
        let mut fresh = Vec::new();
        for cell in &cells {
            for (j, s) in cell.supports().iter().enumerate() {
                if !s.dot(x).is_negative() {
                    continue;
                }
                let on_boundary = placed.iter().all(|&w| !s.dot(&vectors[w]).is_negative());
                if !on_boundary {
                    continue;
                }
                let mut idx: Vec<usize> = cell.indices().to_vec();
                idx[j] = v;
                fresh.push(SimplicialSubcone::from_pool(vectors, &idx).expect("visible facet gives a full cell"));
            }
        }
        cells.extend(fresh);
        placed.push(v);
    }
    cells
}

/// Lattice points of the half-open parallelepiped `{sum q_i g_i : 0 <= q_i < 1}`
/// of a simplicial cell; there are exactly `|det|` of them.
pub fn parallelepiped_points(cell: &SimplicialSubcone) -> Vec<LatticeVector> {
    let d = cell.dim();
    if cell.is_unimodular() {
        return vec![LatticeVector::zero(d)];
    }
    crate::lattice::Sublattice::full(d)
        .coset_representatives(cell.gamma())
        .expect("Γ(S) is a subgroup of Z^d")
        .iter()
        .map(|x| cell.reduce_to_parallelepiped(x))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{Int, IntMatrix};
    use std::collections::HashSet;

    fn vs(rows: &[&[i64]]) -> Vec<LatticeVector> {
        rows.iter().map(|r| LatticeVector::from_i64s(r)).collect()
    }

    #[test]
    fn simplicial_cone_is_one_cell() {
        let c = Cone::from_generators(&IntMatrix::from_i64s(&[&[1, 0, 0], &[1, 1, 0], &[1, 0, 1]])).unwrap();
        assert_eq!(triangulate(&c).len(), 1);
    }

    #[test]
    fn square_cone_has_two_cells() {
        let c = Cone::from_generators(&IntMatrix::from_i64s(&[&[1, 0, 0], &[1, 1, 0], &[1, 0, 1], &[1, 1, 1]]))
            .unwrap();
        let cells = triangulate(&c);
        assert_eq!(cells.len(), 2);
        let vol: Int = cells.iter().map(|c| c.det().clone()).sum();
        assert_eq!(vol, Int::from(2));
    }

    #[test]
    fn parallelepiped_examples() {
        let pool = vs(&[&[1, 0], &[1, 2], &[0, 3], &[0, 1]]);
        let cell = SimplicialSubcone::from_pool(&pool, &[0, 1]).unwrap();
        let pts: HashSet<_> = parallelepiped_points(&cell).into_iter().collect();
        assert_eq!(pts, vs(&[&[0, 0], &[1, 1]]).into_iter().collect());

        let axis = SimplicialSubcone::from_pool(&pool, &[0, 2]).unwrap();
        assert_eq!(parallelepiped_points(&axis).len(), 3);

        let unit = SimplicialSubcone::from_pool(&pool, &[0, 3]).unwrap();
        assert_eq!(parallelepiped_points(&unit), vs(&[&[0, 0]]));
    }
}
