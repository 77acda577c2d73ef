//! Pointed full-dimensional rational cones: double description, placing
//! triangulations, Hilbert bases and simplicial subcones.

mod dd;
mod hilbert;
mod subcone;
mod triangulation;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{rank, IntMatrix, LatticeVector};

pub(crate) use dd::{cut, extreme_rays, facets};
pub use hilbert::{hilbert_basis, is_flat, HilbertBasis};
pub use subcone::{enumerate_simplicial_subcones, enumerate_simplicial_subcones_capped, SimplicialSubcone, SubconeList};
pub use triangulation::{parallelepiped_points, placing_triangulation, triangulate, triangulate_shuffled};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConeError {
    #[error("the generators do not span a pointed cone")]
    NotPointed,
    #[error("the generators span rank {rank} < {dim}")]
    NotFullDimensional { rank: usize, dim: usize },
    #[error("no nonzero generators")]
    Empty,
}

/// A pointed full-dimensional cone as a synchronized pair of primitive
/// extreme rays and primitive inward facet normals, both sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cone {
    dim: usize,
    rays: Vec<LatticeVector>,
    supports: Vec<LatticeVector>,
}

impl Cone {
    /// Double description of `cone(rows)`. Zero rows are ignored and
    /// positive multiples are merged.
    pub fn from_generators(gens: &IntMatrix) -> Result<Cone, ConeError> {
        let dim = gens.ncols();
        let mut prim: Vec<LatticeVector> =
            gens.rows().iter().filter(|g| !g.is_zero()).map(LatticeVector::primitive).collect();
        prim.sort();
        prim.dedup();
        if prim.is_empty() {
            return Err(ConeError::Empty);
        }
        let r = rank(&prim);
        if r < dim {
            return Err(ConeError::NotFullDimensional { rank: r, dim });
        }
        // facets of C are the extreme rays of the dual cone
        let supports = extreme_rays(&prim, dim).ok_or(ConeError::NotPointed)?;
        if rank(&supports) < dim {
            return Err(ConeError::NotPointed);
        }
        let rays = dd::extreme_generators(&prim, &supports);
        Ok(Cone { dim, rays, supports })
    }

    pub fn from_vectors(gens: &[LatticeVector]) -> Result<Cone, ConeError> {
        let dim = gens.first().ok_or(ConeError::Empty)?.dim();
        Self::from_generators(&IntMatrix::new(gens.to_vec(), dim))
    }

    /// Cone given by facet normals `{x : <λ, x> >= 0}`.
    pub fn from_supports(supports: &[LatticeVector]) -> Result<Cone, ConeError> {
        let dim = supports.first().ok_or(ConeError::Empty)?.dim();
        let rays = extreme_rays(supports, dim).ok_or(ConeError::NotFullDimensional { rank: 0, dim })?;
        let r = rank(&rays);
        if r < dim {
            return Err(ConeError::NotFullDimensional { rank: r, dim });
        }
        let supports = facets(&rays, supports, dim);
        Ok(Cone { dim, rays, supports })
    }

    /// Trusted constructor for a pair that is already synchronized.
    pub(crate) fn from_parts(dim: usize, mut rays: Vec<LatticeVector>, mut supports: Vec<LatticeVector>) -> Cone {
        rays.sort();
        supports.sort();
        Cone { dim, rays, supports }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn supports(&self) -> &[LatticeVector] {
        &self.supports
    }

    pub fn contains(&self, x: &LatticeVector) -> bool {
        self.supports.iter().all(|s| !s.dot(x).is_negative())
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.len() == self.dim
    }
}
