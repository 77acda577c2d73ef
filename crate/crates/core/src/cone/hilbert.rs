use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::triangulation::{parallelepiped_points, triangulate};
use super::Cone;
use crate::lattice::{adjugate, rank, Int, IntMatrix, LatticeVector};

/// The irreducible lattice points of a pointed cone, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertBasis {
    dim: usize,
    elements: Vec<LatticeVector>,
}

impl HilbertBasis {
    /// Wraps a set that is already known to be a Hilbert basis.
    pub fn from_elements(dim: usize, mut elements: Vec<LatticeVector>) -> Self {
        elements.sort();
        elements.dedup();
        HilbertBasis { dim, elements }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[LatticeVector] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: &LatticeVector) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    pub fn into_elements(self) -> Vec<LatticeVector> {
        self.elements
    }
}

/// Hilbert basis of `cone`.
///
/// Candidates are the extreme ray generators together with the nonzero
/// parallelepiped points of a placing triangulation; a candidate `z` is
/// dropped as soon as an already accepted `y` has `z - y ∈ C`. Candidates are
/// visited by increasing total support degree, so every reducer of `z` that is
/// itself irreducible has been seen before `z`.
pub fn hilbert_basis(cone: &Cone) -> HilbertBasis {
    let mut cand: BTreeSet<LatticeVector> = cone.rays().iter().cloned().collect();
    for cell in triangulate(cone) {
        if cell.is_unimodular() {
            continue;
        }
        for p in parallelepiped_points(&cell) {
            if !p.is_zero() {
                cand.insert(p);
            }
        }
    }
    let elements = reduce_candidates(cone.supports(), cand.into_iter().collect());
    HilbertBasis::from_elements(cone.dim(), elements)
}

/// Keeps the candidates not of the form `y + w` with `y` another candidate and
/// `w` in the cone given by `supports`.
pub(crate) fn reduce_candidates(supports: &[LatticeVector], cand: Vec<LatticeVector>) -> Vec<LatticeVector> {
    let mut graded: Vec<(Vec<Int>, Int, LatticeVector)> = cand
        .into_iter()
        .map(|z| {
            let vals: Vec<Int> = supports.iter().map(|s| s.dot(&z)).collect();
            let deg: Int = vals.iter().sum();
            (vals, deg, z)
        })
        .collect();
    graded.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.2.cmp(&b.2)));

    let mut kept: Vec<(Vec<Int>, LatticeVector)> = Vec::new();
    for (vals, _, z) in graded {
        let reducible = kept
            .iter()
            .any(|(yv, y)| y != &z && yv.iter().zip(&vals).all(|(a, b)| a <= b));
        if !reducible {
            kept.push((vals, z));
        }
    }
    kept.into_iter().map(|(_, z)| z).collect()
}

/// An integral `λ` with `<λ, x> = 1` for every element, if one exists.
pub fn is_flat(basis: &HilbertBasis) -> Option<LatticeVector> {
    flat_functional(basis.elements())
}

pub(crate) fn flat_functional(elements: &[LatticeVector]) -> Option<LatticeVector> {
    let d = elements.first()?.dim();
    let mut rows: Vec<LatticeVector> = Vec::with_capacity(d);
    for x in elements {
        if rows.len() == d {
            break;
        }
        rows.push(x.clone());
        if rank(&rows) < rows.len() {
            rows.pop();
        }
    }
    if rows.len() < d {
        return None;
    }
    // rows * λ = 1  =>  λ = adj * 1 / det
    let (det, adj) = adjugate(&IntMatrix::new(rows, d))?;
    let num: Vec<Int> = adj.rows().iter().map(|r| r.iter().sum()).collect();
    if !num.iter().all(|n| n.is_divisible_by(&det)) {
        return None;
    }
    let lambda = LatticeVector::new(num.iter().map(|n| n.div_exact(&det)).collect());
    elements.iter().all(|x| lambda.dot(x).is_one()).then_some(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cone(rows: &[&[i64]]) -> Cone {
        Cone::from_generators(&IntMatrix::from_i64s(rows)).unwrap()
    }

    fn vs(rows: &[&[i64]]) -> Vec<LatticeVector> {
        rows.iter().map(|r| LatticeVector::from_i64s(r)).collect()
    }

    #[test]
    fn unimodular_cone_basis_is_its_rays() {
        let h = hilbert_basis(&cone(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(h.elements(), &vs(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]])[..]);
    }

    #[test]
    fn two_dim_example() {
        let h = hilbert_basis(&cone(&[&[1, 0], &[1, 2]]));
        assert_eq!(h.elements(), &vs(&[&[1, 0], &[1, 1], &[1, 2]])[..]);
    }

    #[test]
    fn flatness() {
        let units = HilbertBasis::from_elements(2, vs(&[&[1, 0], &[0, 1]]));
        assert_eq!(is_flat(&units), Some(LatticeVector::from_i64s(&[1, 1])));
        let skew = HilbertBasis::from_elements(2, vs(&[&[1, 0], &[1, 1], &[1, 3]]));
        assert_eq!(is_flat(&skew), Some(LatticeVector::from_i64s(&[1, 0])));
        let bent = HilbertBasis::from_elements(2, vs(&[&[1, 0], &[1, 1], &[0, 1]]));
        assert_eq!(is_flat(&bent), None);
    }
}
