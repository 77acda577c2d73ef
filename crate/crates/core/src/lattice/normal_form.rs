//! Hermite and Smith normal forms, determinants and kernels.
//!
//! The Hermite form used throughout is the row-style *lower* staircase: every
//! nonzero row `i` has its last nonzero entry (the pivot) at column `p_i`,
//! pivots strictly increase with `i`, pivots are positive, and each entry
//! `h[i][p_k]` with `i > k` lies in `[0, h[k][p_k])`. Zero rows come last.
//! For a full-rank square matrix this is a lower triangular matrix with
//! positive diagonal, which gives a unique basis per lattice.

use super::{Int, IntMatrix, LatticeVector};

/// Hermite normal form `h = u * m` with `u` unimodular.
#[derive(Clone, Debug)]
pub struct HermiteForm {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// Pivot column of each nonzero row of `h`, increasing.
    pub pivots: Vec<usize>,
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// The nonzero rows of `h`.
    pub fn basis(&self) -> &[LatticeVector] {
        &self.h.rows()[..self.pivots.len()]
    }

    /// Rows of `u` spanning the left kernel `{y : y*m = 0}`.
    pub fn left_kernel(&self) -> &[LatticeVector] {
        &self.u.rows()[self.pivots.len()..]
    }
}

pub fn hermite_normal_form(m: &IntMatrix) -> HermiteForm {
    let (nrows, ncols) = m.shape();
    let mut a: Vec<LatticeVector> = m.rows().to_vec();
    let mut u: Vec<LatticeVector> = IntMatrix::identity(nrows).into_rows();
    let mut active: Vec<usize> = (0..nrows).collect();
    // (pivot column, row index), found from the last column backwards
    let mut found: Vec<(usize, usize)> = Vec::new();

    for col in (0..ncols).rev() {
        loop {
            let mut best: Option<usize> = None;
            let mut nonzero = 0usize;
            for &r in &active {
                if !a[r][col].is_zero() {
                    nonzero += 1;
                    if best.is_none_or(|b| a[r][col].abs() < a[b][col].abs()) {
                        best = Some(r);
                    }
                }
            }
            let Some(p) = best else { break };
            if nonzero == 1 {
                if a[p][col].is_negative() {
                    a[p] = -&a[p];
                    u[p] = -&u[p];
                }
                found.push((col, p));
                active.retain(|&r| r != p);
                break;
            }
            let pivot = a[p][col].clone();
            for &r in &active {
                if r != p && !a[r][col].is_zero() {
                    let q = -a[r][col].div_floor(&pivot);
                    let (ap, up) = (a[p].clone(), u[p].clone());
                    a[r].add_scaled(&q, &ap);
                    u[r].add_scaled(&q, &up);
                }
            }
        }
    }

    found.reverse();
    let pivots: Vec<usize> = found.iter().map(|&(c, _)| c).collect();
    let mut order: Vec<usize> = found.iter().map(|&(_, r)| r).collect();
    order.extend(active.iter().copied());

    let mut h: Vec<LatticeVector> = order.iter().map(|&r| a[r].clone()).collect();
    let mut uu: Vec<LatticeVector> = order.iter().map(|&r| u[r].clone()).collect();

    for i in 1..pivots.len() {
        for k in (0..i).rev() {
            let pk = pivots[k];
            let q = h[i][pk].div_floor(&h[k][pk]);
            if !q.is_zero() {
                let nq = -q;
                let (hk, uk) = (h[k].clone(), uu[k].clone());
                h[i].add_scaled(&nq, &hk);
                uu[i].add_scaled(&nq, &uk);
            }
        }
    }

    HermiteForm {
        h: IntMatrix::new(h, ncols),
        u: IntMatrix::new(uu, nrows),
        pivots,
    }
}

/// Solves `c * basis = x` for integral `c`, where `basis` is the nonzero
/// part of a lower-staircase Hermite form with the given pivots.
pub fn staircase_solve(basis: &[LatticeVector], pivots: &[usize], x: &LatticeVector) -> Option<Vec<Int>> {
    let mut rest = x.clone();
    let mut coeffs = vec![Int::ZERO; basis.len()];
    let mut upper = rest.dim();
    for i in (0..basis.len()).rev() {
        let p = pivots[i];
        if rest.coords()[p + 1..upper].iter().any(|c| !c.is_zero()) {
            return None;
        }
        let v = &rest[p];
        if !v.is_zero() {
            if !v.is_divisible_by(&basis[i][p]) {
                return None;
            }
            let c = v.div_exact(&basis[i][p]);
            rest.add_scaled(&-&c, &basis[i]);
            coeffs[i] = c;
        }
        upper = p;
    }
    if rest.coords()[..upper].iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(coeffs)
}

/// Smith normal form `d = u * m * v` with unimodular `u`, `v`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Inverse of `v`, tracked alongside it.
    pub v_inv: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries `d_1 | d_2 | ...` (length `min(m, n)`).
    pub fn diagonal(&self) -> Vec<Int> {
        let k = self.d.nrows().min(self.d.ncols());
        (0..k).map(|i| self.d.get(i, i).clone()).collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (nr, nc) = m.shape();
    let mut a = m.clone();
    let mut u = IntMatrix::identity(nr);
    let mut v = IntMatrix::identity(nc);
    let mut vi = IntMatrix::identity(nc);

    // column op: col_j += k * col_i  (v likewise; v_inv: row_i -= k * row_j)
    fn col_add(a: &mut IntMatrix, i: usize, j: usize, k: &Int) {
        for r in a.rows_mut() {
            let t = &r[i] * k;
            r[j] += t;
        }
    }
    fn col_swap(a: &mut IntMatrix, i: usize, j: usize) {
        for r in a.rows_mut() {
            r.coords_mut().swap(i, j);
        }
    }
    fn row_add(a: &mut IntMatrix, i: usize, j: usize, k: &Int) {
        // row_j += k * row_i
        let ri = a.row(i).clone();
        a.rows_mut()[j].add_scaled(k, &ri);
    }

    for t in 0..nr.min(nc) {
        loop {
            // smallest nonzero entry of the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..nr {
                for j in t..nc {
                    let e = a.get(i, j);
                    if !e.is_zero() && best.is_none_or(|(bi, bj)| e.abs() < a.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish(a, u, v, vi);
            };
            if bi != t {
                a.swap_rows(bi, t);
                u.swap_rows(bi, t);
            }
            if bj != t {
                col_swap(&mut a, bj, t);
                col_swap(&mut v, bj, t);
                vi.swap_rows(bj, t);
            }
            let p = a.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..nr {
                if !a.get(i, t).is_zero() {
                    let q = -a.get(i, t).div_floor(&p);
                    row_add(&mut a, t, i, &q);
                    row_add(&mut u, t, i, &q);
                    dirty |= !a.get(i, t).is_zero();
                }
            }
            for j in t + 1..nc {
                if !a.get(t, j).is_zero() {
                    let q = -a.get(t, j).div_floor(&p);
                    col_add(&mut a, t, j, &q);
                    col_add(&mut v, t, j, &q);
                    row_add(&mut vi, j, t, &-&q);
                    dirty |= !a.get(t, j).is_zero();
                }
            }
            if dirty {
                continue;
            }
            // divisibility: fold an offending row into row t and retry
            let mut offending = None;
            'scan: for i in t + 1..nr {
                for j in t + 1..nc {
                    if !a.get(i, j).is_divisible_by(&p) {
                        offending = Some(i);
                        break 'scan;
                    }
                }
            }
            match offending {
                Some(i) => {
                    row_add(&mut a, i, t, &Int::ONE);
                    row_add(&mut u, i, t, &Int::ONE);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.rows_mut()[t] = -a.row(t);
            u.rows_mut()[t] = -u.row(t);
        }
    }
    finish(a, u, v, vi)
}

fn finish(d: IntMatrix, u: IntMatrix, v: IntMatrix, v_inv: IntMatrix) -> SmithForm {
    let mut form = SmithForm { d, u, v, v_inv };
    // zero blocks can leave a negative pivot behind when we return early
    let k = form.d.nrows().min(form.d.ncols());
    for t in 0..k {
        if form.d.get(t, t).is_negative() {
            form.d.rows_mut()[t] = -form.d.row(t);
            form.u.rows_mut()[t] = -form.u.row(t);
        }
    }
    form
}

/// Fraction-free forward elimination; returns the echelon rows count and the
/// last pivot (the determinant up to sign for square input).
fn bareiss(rows: &mut [LatticeVector], ncols: usize) -> (usize, Int, i32) {
    let nrows = rows.len();
    let mut prev = Int::ONE;
    let mut sign = 1;
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else { continue };
        if p != r {
            rows.swap(p, r);
            sign = -sign;
        }
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let v = &rows[r][c] * &rows[i][j] - &rows[i][c] * &rows[r][j];
                rows[i][j] = v.div_exact(&prev);
            }
            rows[i][c] = Int::ZERO;
        }
        prev = rows[r][c].clone();
        r += 1;
    }
    (r, prev, sign)
}

pub fn rank(rows: &[LatticeVector]) -> usize {
    let Some(first) = rows.first() else { return 0 };
    let mut work = rows.to_vec();
    bareiss(&mut work, first.dim()).0
}

/// Determinant of a square matrix.
pub fn determinant(m: &IntMatrix) -> Int {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.nrows();
    if n == 0 {
        return Int::ONE;
    }
    let mut work = m.rows().to_vec();
    let (r, last, sign) = bareiss(&mut work, n);
    if r < n {
        Int::ZERO
    } else if sign < 0 {
        -last
    } else {
        last
    }
}

/// Determinant and adjugate (`m * adj = det * I`), or `None` if singular.
pub fn adjugate(m: &IntMatrix) -> Option<(Int, IntMatrix)> {
    assert!(m.is_square(), "adjugate of a non-square matrix");
    let n = m.nrows();
    if n == 0 {
        return Some((Int::ONE, IntMatrix::zeros(0, 0)));
    }
    // Fraction-free Gauss-Jordan on [m | I].
    let mut rows: Vec<LatticeVector> = m
        .rows()
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut c = r.coords().to_vec();
            c.extend((0..n).map(|j| if i == j { Int::ONE } else { Int::ZERO }));
            LatticeVector::new(c)
        })
        .collect();
    let mut prev = Int::ONE;
    let mut sign = 1;
    for k in 0..n {
        let p = (k..n).find(|&i| !rows[i][k].is_zero())?;
        if p != k {
            rows.swap(p, k);
            sign = -sign;
        }
        for i in 0..n {
            if i == k {
                continue;
            }
            for j in 0..2 * n {
                if j == k {
                    continue;
                }
                let v = &rows[k][k] * &rows[i][j] - &rows[i][k] * &rows[k][j];
                rows[i][j] = v.div_exact(&prev);
            }
            rows[i][k] = Int::ZERO;
        }
        prev = rows[k][k].clone();
    }
    // Row i is now [s_i * e_i | s_i * e_i * m^{-1}] for some scale s_i.
    let det = if sign < 0 { -&prev } else { prev.clone() };
    let adj_rows: Vec<LatticeVector> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let scale = &r[i];
            LatticeVector::new(r.coords()[n..].iter().map(|x| (x * &det).div_exact(scale)).collect())
        })
        .collect();
    Some((det, IntMatrix::new(adj_rows, n)))
}
