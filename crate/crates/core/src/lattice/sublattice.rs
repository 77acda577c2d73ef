use thiserror::Error;

use super::normal_form::{hermite_normal_form, smith_normal_form, staircase_solve};
use super::{Int, IntMatrix, LatticeVector};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("generators span rank {rank}, need a full-rank lattice of rank {dim}")]
    NotFullRank { rank: usize, dim: usize },
    #[error("the smaller lattice is not a subgroup of the larger one")]
    NotASubgroup,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

/// A finite-index subgroup of `Z^d`, stored by its lower-triangular Hermite
/// basis. Two sublattices are equal iff their bases are equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Sublattice {
    basis: IntMatrix,
    index: Int,
}

/// The canonical representative of a coset `x + L`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ResidueClass(pub LatticeVector);

impl ResidueClass {
    pub fn rep(&self) -> &LatticeVector {
        &self.0
    }
}

impl Sublattice {
    pub fn full(dim: usize) -> Self {
        Sublattice { basis: IntMatrix::identity(dim), index: Int::ONE }
    }

    /// `k * Z^d`
    pub fn scaled(dim: usize, k: i64) -> Self {
        let mut b = IntMatrix::identity(dim);
        for i in 0..dim {
            b.set(i, i, Int::from(k.abs()));
        }
        let index = (0..dim).map(|_| Int::from(k.abs())).product();
        Sublattice { basis: b, index }
    }

    /// Lattice generated by the rows of `gens` (any number of rows).
    pub fn from_generators(gens: &IntMatrix) -> Result<Self, LatticeError> {
        let dim = gens.ncols();
        let hnf = hermite_normal_form(gens);
        if hnf.rank() != dim {
            return Err(LatticeError::NotFullRank { rank: hnf.rank(), dim });
        }
        let basis = IntMatrix::new(hnf.basis().to_vec(), dim);
        let index = (0..dim).map(|i| basis.get(i, i).clone()).product();
        Ok(Sublattice { basis, index })
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// `#(Z^d / L)`
    pub fn index(&self) -> &Int {
        &self.index
    }

    pub fn is_full(&self) -> bool {
        self.index.is_one()
    }

    /// Integral coordinates of `x` in the Hermite basis, if `x` is a member.
    pub fn coordinates(&self, x: &LatticeVector) -> Option<Vec<Int>> {
        let pivots: Vec<usize> = (0..self.dim()).collect();
        staircase_solve(self.basis.rows(), &pivots, x)
    }

    pub fn contains(&self, x: &LatticeVector) -> bool {
        debug_assert_eq!(x.dim(), self.dim());
        let mut rest = x.clone();
        for i in (0..self.dim()).rev() {
            let p = &self.basis.rows()[i][i];
            if !rest[i].is_divisible_by(p) {
                return false;
            }
            if !rest[i].is_zero() {
                let q = -rest[i].div_exact(p);
                rest.add_scaled(&q, self.basis.row(i));
            }
        }
        true
    }

    pub fn is_sublattice_of(&self, other: &Sublattice) -> bool {
        self.basis.rows().iter().all(|r| other.contains(r))
    }

    /// Canonical representative: reducing coordinates from the last one down
    /// leaves `0 <= x_i < h_ii`.
    pub fn canonical(&self, x: &LatticeVector) -> ResidueClass {
        let mut rest = x.clone();
        for i in (0..self.dim()).rev() {
            let p = &self.basis.rows()[i][i];
            let q = rest[i].div_floor(p);
            if !q.is_zero() {
                rest.add_scaled(&-q, self.basis.row(i));
            }
        }
        ResidueClass(rest)
    }

    pub fn intersection(&self, other: &Sublattice) -> Sublattice {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        if self.is_full() || other.is_sublattice_of(self) {
            return other.clone();
        }
        if other.is_full() || self.is_sublattice_of(other) {
            return self.clone();
        }
        // Rows (a*B1, a*B1 + b*B2); those with vanishing second half are
        // exactly (x, 0) with x in L1 ∩ L2, and the lower staircase puts them
        // first.
        let d = self.dim();
        let mut rows = Vec::with_capacity(2 * d);
        for r in self.basis.rows() {
            let mut c = r.coords().to_vec();
            c.extend(r.coords().iter().cloned());
            rows.push(LatticeVector::new(c));
        }
        for r in other.basis.rows() {
            let mut c = vec![Int::ZERO; d];
            c.extend(r.coords().iter().cloned());
            rows.push(LatticeVector::new(c));
        }
        let hnf = hermite_normal_form(&IntMatrix::new(rows, 2 * d));
        debug_assert!(hnf.pivots[..d].iter().all(|&p| p < d));
        let basis: Vec<LatticeVector> = hnf.basis()[..d]
            .iter()
            .map(|r| LatticeVector::new(r.coords()[..d].to_vec()))
            .collect();
        let basis = IntMatrix::new(basis, d);
        let index = (0..d).map(|i| basis.get(i, i).clone()).product();
        Sublattice { basis, index }
    }

    /// Representatives of `self / sub`, one per coset, each canonical mod
    /// `sub`. Requires `sub ⊆ self`.
    pub fn coset_representatives(&self, sub: &Sublattice) -> Result<Vec<LatticeVector>, LatticeError> {
        if self.dim() != sub.dim() {
            return Err(LatticeError::DimensionMismatch(self.dim(), sub.dim()));
        }
        let d = self.dim();
        if self == sub {
            return Ok(vec![LatticeVector::zero(d)]);
        }
        // transition matrix: sub basis in coordinates of self's basis
        let mut t_rows = Vec::with_capacity(d);
        for r in sub.basis.rows() {
            let c = self.coordinates(r).ok_or(LatticeError::NotASubgroup)?;
            t_rows.push(LatticeVector::new(c));
        }
        let snf = smith_normal_form(&IntMatrix::new(t_rows, d));
        let diag = snf.diagonal();
        // Z^d / rowspace(T) ≅ Z^d / rowspace(D) via y -> y*V; walk the box of
        // D and map back with V^{-1}, then into Z^d with self's basis.
        let sizes: Vec<u64> = diag
            .iter()
            .map(|x| x.to_u64().expect("coset count exceeds u64"))
            .collect();
        let total: u64 = sizes.iter().product();
        let lift = snf.v_inv.mul(&self.basis);
        let mut reps = Vec::with_capacity(total as usize);
        let mut counter = vec![0u64; d];
        for _ in 0..total {
            let mut x = LatticeVector::zero(d);
            for (i, &c) in counter.iter().enumerate() {
                if c != 0 {
                    x.add_scaled(&Int::from(c), lift.row(i));
                }
            }
            reps.push(sub.canonical(&x).0);
            for (i, c) in counter.iter_mut().enumerate() {
                *c += 1;
                if *c < sizes[i] {
                    break;
                }
                *c = 0;
            }
        }
        Ok(reps)
    }
}
