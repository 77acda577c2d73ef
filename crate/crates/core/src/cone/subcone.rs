use std::sync::OnceLock;

use crate::lattice::{adjugate, determinant, Int, IntMatrix, LatticeVector, Sublattice};

/// A simplicial cone spanned by `d` linearly independent lattice vectors,
/// usually Hilbert basis elements (an f-subcone) or extreme rays (a
/// triangulation cell).
#[derive(Debug)]
pub struct SimplicialSubcone {
    indices: Vec<usize>,
    generators: IntMatrix,
    det: Int,
    /// `adj(G) * sign(det G)`: the coefficients of `x` in the generators are
    /// `(x * adj) / det`.
    adj: IntMatrix,
    supports: Vec<LatticeVector>,
    gamma: OnceLock<Sublattice>,
}

impl Clone for SimplicialSubcone {
    fn clone(&self) -> Self {
        let gamma = OnceLock::new();
        if let Some(g) = self.gamma.get() {
            let _ = gamma.set(g.clone());
        }
        SimplicialSubcone {
            indices: self.indices.clone(),
            generators: self.generators.clone(),
            det: self.det.clone(),
            adj: self.adj.clone(),
            supports: self.supports.clone(),
            gamma,
        }
    }
}

impl PartialEq for SimplicialSubcone {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators
    }
}

impl SimplicialSubcone {
    /// `None` if the generators are linearly dependent.
    pub fn new(indices: Vec<usize>, generators: IntMatrix) -> Option<Self> {
        let dim = generators.ncols();
        assert_eq!(generators.nrows(), dim, "a simplicial cone needs exactly d generators");
        let (det, adj) = adjugate(&generators)?;
        if det.is_zero() {
            return None;
        }
        let adj = if det.is_negative() {
            IntMatrix::new(adj.rows().iter().map(|r| -r).collect(), dim)
        } else {
            adj
        };
        // column j of adj is an inward normal of the facet opposite generator j
        let supports = (0..dim).map(|j| adj.column(j).primitive()).collect();
        Some(SimplicialSubcone {
            indices,
            generators,
            det: det.abs(),
            adj,
            supports,
            gamma: OnceLock::new(),
        })
    }

    /// Builds from rows of `pool` selected by `indices`.
    pub fn from_pool(pool: &[LatticeVector], indices: &[usize]) -> Option<Self> {
        let dim = pool.first()?.dim();
        let gens = IntMatrix::new(indices.iter().map(|&i| pool[i].clone()).collect(), dim);
        Self::new(indices.to_vec(), gens)
    }

    pub fn dim(&self) -> usize {
        self.generators.ncols()
    }

    /// Positions of the generators in the list they were drawn from.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn generators(&self) -> &[LatticeVector] {
        self.generators.rows()
    }

    /// `|det|`, the index of `Γ(S)` in `Z^d`.
    pub fn det(&self) -> &Int {
        &self.det
    }

    pub fn is_unimodular(&self) -> bool {
        self.det.is_one()
    }

    /// Inward facet normals; `supports()[j]` vanishes on every generator but
    /// the `j`-th.
    pub fn supports(&self) -> &[LatticeVector] {
        &self.supports
    }

    /// The group `Γ(S)` generated by the generators.
    pub fn gamma(&self) -> &Sublattice {
        self.gamma.get_or_init(|| {
            if self.det.is_one() {
                Sublattice::full(self.dim())
            } else {
                Sublattice::from_generators(&self.generators).expect("independent generators")
            }
        })
    }

    /// Numerators `n_j` with `x = sum_j (n_j / det) g_j`.
    pub fn coefficient_numerators(&self, x: &LatticeVector) -> LatticeVector {
        x.mul_matrix(&self.adj)
    }

    /// `x` lies in the real cone.
    pub fn contains_point(&self, x: &LatticeVector) -> bool {
        self.supports.iter().all(|s| !s.dot(x).is_negative())
    }

    /// `x` is a nonnegative integral combination of the generators, i.e.
    /// `x ∈ Σ(S)`. Returns the coefficients.
    pub fn sigma_coefficients(&self, x: &LatticeVector) -> Option<Vec<Int>> {
        if !self.contains_point(x) {
            return None;
        }
        let nums = self.coefficient_numerators(x);
        let mut out = Vec::with_capacity(nums.dim());
        for n in nums.iter() {
            if !n.is_divisible_by(&self.det) {
                return None;
            }
            out.push(n.div_exact(&self.det));
        }
        Some(out)
    }

    /// Every ray satisfies every support.
    pub fn contains_rays(&self, rays: &[LatticeVector]) -> bool {
        self.supports.iter().all(|s| rays.iter().all(|r| !s.dot(r).is_negative()))
    }

    /// The lattice point `sum_j frac(q_j) g_j` of the half-open fundamental
    /// parallelepiped congruent to `x` modulo `Γ(S)`.
    pub fn reduce_to_parallelepiped(&self, x: &LatticeVector) -> LatticeVector {
        let nums = self.coefficient_numerators(x);
        let mut acc = LatticeVector::zero(self.dim());
        for (n, g) in nums.iter().zip(self.generators.rows()) {
            let r = n.mod_floor(&self.det);
            acc.add_scaled(&r, g);
        }
        LatticeVector::new(acc.iter().map(|c| c.div_exact(&self.det)).collect())
    }
}

/// Lexicographically next `k`-subset of `0..n`; false when exhausted.
pub(crate) fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// All `d`-subsets of `pool` with nonzero determinant, ordered by `|det|`
/// and then by index tuple. `max_det` drops anything larger.
pub fn enumerate_simplicial_subcones(pool: &[LatticeVector], max_det: Option<&Int>) -> Vec<SimplicialSubcone> {
    enumerate_simplicial_subcones_capped(pool, max_det, usize::MAX).expect("no cap")
}

/// As [`enumerate_simplicial_subcones`], but gives up with `None` once more
/// than `cap` subcones qualify.
pub fn enumerate_simplicial_subcones_capped(
    pool: &[LatticeVector],
    max_det: Option<&Int>,
    cap: usize,
) -> Option<Vec<SimplicialSubcone>> {
    let Some(first) = pool.first() else { return Some(Vec::new()) };
    let d = first.dim();
    if pool.len() < d || d == 0 {
        return Some(Vec::new());
    }
    let mut out = Vec::new();
    let mut comb: Vec<usize> = (0..d).collect();
    loop {
        let gens = IntMatrix::new(comb.iter().map(|&i| pool[i].clone()).collect(), d);
        let det = determinant(&gens).abs();
        if !det.is_zero() && max_det.is_none_or(|m| &det <= m) {
            if out.len() == cap {
                return None;
            }
            out.push(SimplicialSubcone::new(comb.clone(), gens).expect("nonsingular"));
        }
        if !next_combination(&mut comb, pool.len()) {
            break;
        }
    }
    out.sort_by(|a, b| a.det.cmp(&b.det).then_with(|| a.indices.cmp(&b.indices)));
    Some(out)
}

/// A det-ordered subcone list that can be materialized on demand.
///
/// In lazy mode only unimodular subcones are produced; they are discovered in
/// lexicographic index order, which is also their final order, so the list
/// grows append-only as the scan needs more of it.
#[derive(Debug, Clone)]
pub struct SubconeList {
    pool: Vec<LatticeVector>,
    items: Vec<SimplicialSubcone>,
    cursor: Option<Vec<usize>>,
}

impl SubconeList {
    pub fn from_vec(items: Vec<SimplicialSubcone>) -> Self {
        SubconeList { pool: Vec::new(), items, cursor: None }
    }

    /// Lazily enumerated unimodular subcones of `pool`.
    pub fn lazy_unimodular(pool: &[LatticeVector]) -> Self {
        let d = pool.first().map_or(0, LatticeVector::dim);
        let cursor = (d > 0 && pool.len() >= d).then(|| (0..d).collect());
        SubconeList { pool: pool.to_vec(), items: Vec::new(), cursor }
    }

    /// All unimodular subcones, computed up front.
    pub fn unimodular(pool: &[LatticeVector]) -> Self {
        let mut l = Self::lazy_unimodular(pool);
        l.materialize();
        l
    }

    /// All f-subcones in det-ascending order.
    pub fn all(pool: &[LatticeVector], max_det: Option<&Int>) -> Self {
        Self::from_vec(enumerate_simplicial_subcones(pool, max_det))
    }

    fn advance(&mut self) -> bool {
        let Some(mut comb) = self.cursor.take() else { return false };
        let n = self.pool.len();
        let d = comb.len();
        loop {
            let gens = IntMatrix::new(comb.iter().map(|&i| self.pool[i].clone()).collect(), d);
            let found = if determinant(&gens).abs().is_one() {
                SimplicialSubcone::new(comb.clone(), gens)
            } else {
                None
            };
            let more = next_combination(&mut comb, n);
            if more {
                self.cursor = Some(comb.clone());
            }
            if let Some(s) = found {
                self.items.push(s);
                return true;
            }
            if !more {
                return false;
            }
        }
    }

    /// Makes sure entry `i` exists if the list has one; returns it.
    pub fn get(&mut self, i: usize) -> Option<&SimplicialSubcone> {
        while self.items.len() <= i {
            if !self.advance() {
                break;
            }
        }
        self.items.get(i)
    }

    pub fn materialize(&mut self) {
        while self.advance() {}
    }

    /// Entries produced so far.
    pub fn materialized(&self) -> &[SimplicialSubcone] {
        &self.items
    }

    pub fn is_complete(&self) -> bool {
        self.cursor.is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(rows: &[&[i64]]) -> Vec<LatticeVector> {
        rows.iter().map(|r| LatticeVector::from_i64s(r)).collect()
    }

    #[test]
    fn enumerate_small_basis() {
        let h = vs(&[&[1, 0], &[1, 1], &[1, 2]]);
        let subs = enumerate_simplicial_subcones(&h, None);
        let dets: Vec<i64> = subs.iter().map(|s| s.det().to_i64().unwrap()).collect();
        assert_eq!(dets, vec![1, 1, 2]);
        assert_eq!(subs[0].indices(), &[0, 1]);
        assert_eq!(subs[1].indices(), &[1, 2]);
        assert_eq!(subs.iter().filter(|s| s.is_unimodular()).count(), 2);

        let units = enumerate_simplicial_subcones(&vs(&[&[1, 0], &[0, 1]]), None);
        assert_eq!(units.len(), 1);
        assert!(units[0].is_unimodular());
    }

    #[test]
    fn lazy_list_matches_upfront() {
        let h = vs(&[&[1, 0, 0], &[1, 1, 0], &[1, 0, 1], &[1, 1, 1], &[1, 2, 1]]);
        let mut lazy = SubconeList::lazy_unimodular(&h);
        assert!(lazy.get(0).is_some());
        assert!(!lazy.is_complete());
        lazy.materialize();
        let upfront: Vec<_> = enumerate_simplicial_subcones(&h, Some(&Int::ONE));
        assert_eq!(lazy.materialized(), &upfront[..]);
    }

    #[test]
    fn sigma_and_parallelepiped() {
        let s = SimplicialSubcone::from_pool(&vs(&[&[1, 0], &[1, 2]]), &[0, 1]).unwrap();
        assert_eq!(s.det(), &Int::from(2));
        assert!(s.sigma_coefficients(&LatticeVector::from_i64s(&[1, 1])).is_none());
        assert_eq!(
            s.sigma_coefficients(&LatticeVector::from_i64s(&[2, 2])).unwrap(),
            vec![Int::ONE, Int::ONE]
        );
        assert_eq!(
            s.reduce_to_parallelepiped(&LatticeVector::from_i64s(&[5, 3])),
            LatticeVector::from_i64s(&[1, 1])
        );
        assert_eq!(s.supports(), &vs(&[&[2, -1], &[0, 1]])[..]);
    }
}
