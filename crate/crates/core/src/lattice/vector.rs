use std::fmt;
use std::ops::{Add, Index, IndexMut, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::Int;

/// A point of the integer lattice.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector(Vec<Int>);

impl LatticeVector {
    pub fn new(coords: Vec<Int>) -> Self {
        LatticeVector(coords)
    }

    pub fn zero(dim: usize) -> Self {
        LatticeVector(vec![Int::ZERO; dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = Int::ONE;
        v
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        LatticeVector(coords.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Int] {
        &self.0
    }

    pub fn coords_mut(&mut self) -> &mut [Int] {
        &mut self.0
    }

    pub fn into_coords(self) -> Vec<Int> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Int> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Int::is_zero)
    }

    pub fn dot(&self, other: &LatticeVector) -> Int {
        debug_assert_eq!(self.dim(), other.dim());
        if let Some(v) = small_dot(&self.0, &other.0) {
            return Int::from(v);
        }
        let mut acc = Int::ZERO;
        for (a, b) in self.0.iter().zip(&other.0) {
            if !a.is_zero() && !b.is_zero() {
                acc += a * b;
            }
        }
        acc
    }

    /// Sign of `<self, other>`.
    pub fn dot_sign(&self, other: &LatticeVector) -> i32 {
        match small_dot(&self.0, &other.0) {
            Some(v) => v.signum() as i32,
            None => self.dot(other).signum(),
        }
    }

    pub fn scale(&self, k: &Int) -> LatticeVector {
        LatticeVector(self.0.iter().map(|c| c * k).collect())
    }

    /// `self += k * other`
    pub fn add_scaled(&mut self, k: &Int, other: &LatticeVector) {
        if k.is_zero() {
            return;
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            if !b.is_zero() {
                *a += k * b;
            }
        }
    }

    /// Nonnegative gcd of the coordinates.
    pub fn content(&self) -> Int {
        let mut g = Int::ZERO;
        for c in &self.0 {
            if !c.is_zero() {
                g = g.gcd(c);
                if g.is_one() {
                    break;
                }
            }
        }
        g
    }

    /// The vector divided by its content; zero stays zero.
    pub fn primitive(&self) -> LatticeVector {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        LatticeVector(self.0.iter().map(|c| c.div_exact(&g)).collect())
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }
}

/// Dot product in `i128` when every entry is a machine word and no partial
/// sum overflows.
#[inline]
fn small_dot(a: &[Int], b: &[Int]) -> Option<i128> {
    let mut acc: i128 = 0;
    for (x, y) in a.iter().zip(b) {
        match (x, y) {
            (Int::Small(p), Int::Small(q)) => acc = acc.checked_add(*p as i128 * *q as i128)?,
            _ => return None,
        }
    }
    Some(acc)
}

impl Index<usize> for LatticeVector {
    type Output = Int;
    fn index(&self, i: usize) -> &Int {
        &self.0[i]
    }
}

impl IndexMut<usize> for LatticeVector {
    fn index_mut(&mut self, i: usize) -> &mut Int {
        &mut self.0[i]
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }
}

impl From<Vec<Int>> for LatticeVector {
    fn from(v: Vec<Int>) -> Self {
        LatticeVector(v)
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A rectangular integer matrix stored by rows.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: Vec<LatticeVector>,
    cols: usize,
}

impl IntMatrix {
    /// Panics if the rows do not all have length `cols`.
    pub fn new(rows: Vec<LatticeVector>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.dim() == cols), "ragged matrix");
        IntMatrix { rows, cols }
    }

    pub fn from_rows(rows: Vec<LatticeVector>) -> Self {
        let cols = rows.first().map_or(0, LatticeVector::dim);
        Self::new(rows, cols)
    }

    pub fn from_i64s(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| LatticeVector::from_i64s(r)).collect())
    }

    pub fn zeros(m: usize, n: usize) -> Self {
        IntMatrix { rows: vec![LatticeVector::zero(n); m], cols: n }
    }

    pub fn identity(n: usize) -> Self {
        IntMatrix { rows: (0..n).map(|i| LatticeVector::unit(n, i)).collect(), cols: n }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.cols)
    }

    pub fn rows(&self) -> &[LatticeVector] {
        &self.rows
    }

    pub fn rows_mut(&mut self) -> &mut [LatticeVector] {
        &mut self.rows
    }

    pub fn into_rows(self) -> Vec<LatticeVector> {
        self.rows
    }

    pub fn row(&self, i: usize) -> &LatticeVector {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.rows[i][j] = v;
    }

    pub fn column(&self, j: usize) -> LatticeVector {
        LatticeVector::new(self.rows.iter().map(|r| r[j].clone()).collect())
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix {
            rows: (0..self.cols).map(|j| self.column(j)).collect(),
            cols: self.rows.len(),
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.nrows(), "shape mismatch");
        let rows = self
            .rows
            .iter()
            .map(|r| r.mul_matrix(other))
            .collect();
        IntMatrix { rows, cols: other.cols }
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        self.rows.swap(i, j);
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// Rows selected by index.
    pub fn select(&self, idx: &[usize]) -> IntMatrix {
        IntMatrix { rows: idx.iter().map(|&i| self.rows[i].clone()).collect(), cols: self.cols }
    }

    pub fn is_diagonal(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, r)| r.iter().enumerate().all(|(j, c)| i == j || c.is_zero()))
    }
}

impl LatticeVector {
    /// Row vector times matrix.
    pub fn mul_matrix(&self, m: &IntMatrix) -> LatticeVector {
        assert_eq!(self.dim(), m.nrows(), "shape mismatch");
        let mut out = LatticeVector::zero(m.ncols());
        for (c, row) in self.0.iter().zip(m.rows()) {
            out.add_scaled(c, row);
        }
        out
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows.iter()).finish()
    }
}
