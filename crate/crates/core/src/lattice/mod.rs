//! Exact integer linear algebra on `Z^d`: vectors and matrices over [`Int`],
//! normal forms, and finite-index sublattices with their residue classes.

mod int;
pub mod normal_form;
mod sublattice;
mod vector;

pub use int::Int;
pub use normal_form::{
    adjugate, determinant, hermite_normal_form, rank, smith_normal_form, HermiteForm, SmithForm,
};
pub use sublattice::{LatticeError, ResidueClass, Sublattice};
pub use vector::{IntMatrix, LatticeVector};

pub fn lattice_member(lattice: &Sublattice, x: &LatticeVector) -> bool {
    lattice.contains(x)
}

pub fn lattice_intersection(a: &Sublattice, b: &Sublattice) -> Sublattice {
    a.intersection(b)
}

/// Representatives of `group / sub` (requires `sub ⊆ group`).
pub fn coset_representatives(group: &Sublattice, sub: &Sublattice) -> Result<Vec<LatticeVector>, LatticeError> {
    group.coset_representatives(sub)
}

pub fn canonical_residue(x: &LatticeVector, lattice: &Sublattice) -> ResidueClass {
    lattice.canonical(x)
}

/// A `Z`-basis of the left kernel `{y : y * m = 0}`.
pub fn left_kernel(m: &IntMatrix) -> Vec<LatticeVector> {
    hermite_normal_form(m).left_kernel().to_vec()
}
