use crate::cone::{hilbert_basis, Cone, HilbertBasis};
use crate::lattice::normal_form::staircase_solve;
use crate::lattice::{hermite_normal_form, rank, IntMatrix, LatticeVector};

/// Coordinates of `vectors` in a lattice basis of `span(vectors) ∩ Z^d`.
fn saturated_coordinates(vectors: &[LatticeVector]) -> Vec<LatticeVector> {
    let d = vectors[0].dim();
    let v = IntMatrix::new(vectors.to_vec(), d);
    let normals = hermite_normal_form(&v.transpose()).left_kernel().to_vec();
    if normals.is_empty() {
        return vectors.to_vec();
    }
    let w = IntMatrix::new(normals, d);
    let lattice = hermite_normal_form(&w.transpose()).left_kernel().to_vec();
    let sat = hermite_normal_form(&IntMatrix::new(lattice, d));
    vectors
        .iter()
        .map(|x| {
            let c = staircase_solve(sat.basis(), &sat.pivots, x).expect("vector lies in its own saturation");
            LatticeVector::new(c)
        })
        .collect()
}

/// Whether `vectors` (pairwise distinct, all irreducible in the cone they
/// came from) are exactly the Hilbert basis of the cone they generate, taken
/// in the lattice `span ∩ Z^d`.
pub fn is_hilbert_basis_of_own_cone(vectors: &[LatticeVector]) -> bool {
    if vectors.is_empty() {
        return true;
    }
    let coords = saturated_coordinates(vectors);
    let Ok(cone) = Cone::from_vectors(&coords) else {
        // only a pointed sub-configuration can reach this point
        return false;
    };
    let h = hilbert_basis(&cone);
    let mut want = coords;
    want.sort();
    h.elements() == &want[..]
}

/// `x` is destructive if `H \ {x}` is not the Hilbert basis of the cone it
/// generates. Elements off the extreme rays always are: removing them leaves
/// the cone unchanged.
pub fn is_destructive(basis: &HilbertBasis, x: &LatticeVector) -> bool {
    let rays = Cone::from_vectors(basis.elements()).map(|c| c.rays().to_vec()).ok();
    destructive_given_rays(basis, rays.as_deref(), x)
}

/// `rays` are the extreme rays of `cone(basis)` when it is full-dimensional.
fn destructive_given_rays(basis: &HilbertBasis, rays: Option<&[LatticeVector]>, x: &LatticeVector) -> bool {
    if !basis.contains(x) {
        return false;
    }
    if rays.is_some_and(|r| !r.contains(x)) {
        return true;
    }
    let rest: Vec<LatticeVector> = basis.elements().iter().filter(|y| *y != x).cloned().collect();
    !is_hilbert_basis_of_own_cone(&rest)
}

/// Position of the first nondestructive element.
fn first_nondestructive(basis: &HilbertBasis) -> Option<usize> {
    let rays = Cone::from_vectors(basis.elements()).map(|c| c.rays().to_vec()).ok();
    basis.elements().iter().position(|x| !destructive_given_rays(basis, rays.as_deref(), x))
}

pub fn is_tight(basis: &HilbertBasis) -> bool {
    !basis.is_empty() && first_nondestructive(basis).is_none()
}

/// How a shrink ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShrinkOutcome {
    Tight(HilbertBasis),
    /// The remaining set stopped spanning a full-dimensional pointed cone.
    Trivial,
}

#[derive(Clone, Debug)]
pub struct ShrinkResult {
    pub outcome: ShrinkOutcome,
    /// Every full-dimensional basis met on the way, starting with `Hilb(C)`;
    /// the last one is the tight basis if there is one.
    pub path: Vec<HilbertBasis>,
}

impl ShrinkResult {
    /// Up to `k` non-tight bases immediately before the end of the path.
    pub fn last_approximations(&self, k: usize) -> &[HilbertBasis] {
        let end = match self.outcome {
            ShrinkOutcome::Tight(_) => self.path.len() - 1,
            ShrinkOutcome::Trivial => self.path.len(),
        };
        &self.path[end.saturating_sub(k)..end]
    }
}

/// Removes the first nondestructive element, one at a time, until the basis
/// is tight or no longer spans a full-dimensional cone.
pub fn shrink(cone: &Cone) -> ShrinkResult {
    shrink_basis(hilbert_basis(cone))
}

pub fn shrink_basis(mut basis: HilbertBasis) -> ShrinkResult {
    let d = basis.dim();
    let mut path = Vec::new();
    loop {
        if basis.len() < d || rank(basis.elements()) < d {
            return ShrinkResult { outcome: ShrinkOutcome::Trivial, path };
        }
        path.push(basis.clone());
        match first_nondestructive(&basis) {
            None => return ShrinkResult { outcome: ShrinkOutcome::Tight(basis), path },
            Some(i) => {
                let mut rest = basis.into_elements();
                rest.remove(i);
                basis = HilbertBasis::from_elements(d, rest);
            }
        }
    }
}
