//! Sparse exact linear algebra over the rationals.
//!
//! Everything here is built around reduced row echelon form. RREF is unique
//! for a fixed column order, so pivot strategy only affects speed: rows are
//! inserted sparsest-first and reduced against existing pivots, then a single
//! back-substitution pass produces the canonical form. Callers get
//! deterministic kernels and solutions by choosing their column order.

use rustc_hash::FxHashMap;

use crate::rational::Rat;

/// Sorted `(column, value)` pairs with no explicit zeros.
pub type SparseVec = Vec<(usize, Rat)>;

/// `a - s * b` for sorted sparse vectors.
fn axpy_sub(a: &[(usize, Rat)], s: &Rat, b: &[(usize, Rat)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, -&(s * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - &(s * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn scale(v: &mut SparseVec, s: &Rat) {
    for (_, x) in v.iter_mut() {
        *x = &*x * s;
    }
}

/// Row-echelon accumulator. Rows are stored with a leading 1.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<SparseVec>,
    pivot_row: FxHashMap<usize, usize>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            rows: Vec::new(),
            pivot_row: FxHashMap::default(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Reduce `row` until its leading column is not a pivot; returns the
    /// remainder (empty when `row` was in the span).
    pub fn reduce_leading(&self, mut row: SparseVec) -> SparseVec {
        loop {
            let Some((lead, val)) = row.first().cloned() else {
                return row;
            };
            match self.pivot_row.get(&lead) {
                Some(&r) => row = axpy_sub(&row, &val, &self.rows[r]),
                None => return row,
            }
        }
    }

    /// Insert a row; returns `true` if it increased the rank.
    pub fn insert(&mut self, row: SparseVec) -> bool {
        let mut row = self.reduce_leading(row);
        let Some((lead, val)) = row.first().cloned() else {
            return false;
        };
        debug_assert!(lead < self.ncols);
        if !val.is_one() {
            scale(&mut row, &val.recip());
        }
        self.pivot_row.insert(lead, self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.pivot_row.keys().copied().collect();
        p.sort_unstable();
        p
    }

    /// Fully reduce to RREF. Rows are returned in increasing pivot order.
    pub fn into_rref(self) -> Rref {
        let Echelon {
            ncols, mut rows, ..
        } = self;
        rows.sort_by_key(|r| r[0].0);
        let pivots: Vec<usize> = rows.iter().map(|r| r[0].0).collect();
        let index: FxHashMap<usize, usize> =
            pivots.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        for i in (0..rows.len()).rev() {
            loop {
                let hit = rows[i]
                    .iter()
                    .skip(1)
                    .find(|(c, _)| index.contains_key(c))
                    .map(|(c, v)| (index[c], v.clone()));
                let Some((j, v)) = hit else { break };
                let reduced = axpy_sub(&rows[i], &v, &rows[j]);
                rows[i] = reduced;
            }
        }
        Rref {
            ncols,
            rows,
            pivots,
        }
    }
}

/// Reduced row echelon form.
#[derive(Debug, Clone)]
pub struct Rref {
    pub ncols: usize,
    pub rows: Vec<SparseVec>,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Kernel basis, one vector per free column (in column order); each vector
    /// has a 1 in its free column.
    pub fn kernel(&self) -> Vec<SparseVec> {
        let is_pivot: rustc_hash::FxHashSet<usize> = self.pivots.iter().copied().collect();
        let mut by_free: FxHashMap<usize, Vec<(usize, Rat)>> = FxHashMap::default();
        for (r, row) in self.rows.iter().enumerate() {
            let p = self.pivots[r];
            for (c, v) in row.iter().skip(1) {
                by_free.entry(*c).or_default().push((p, -v));
            }
        }
        (0..self.ncols)
            .filter(|c| !is_pivot.contains(c))
            .map(|f| {
                let mut v = by_free.remove(&f).unwrap_or_default();
                v.push((f, Rat::one()));
                v.sort_by_key(|e| e.0);
                v
            })
            .collect()
    }
}

pub fn rref(rows: impl IntoIterator<Item = SparseVec>, ncols: usize) -> Rref {
    let mut rows: Vec<SparseVec> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    rows.sort_by_key(|r| r.len());
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r);
    }
    e.into_rref()
}

pub fn rank(rows: impl IntoIterator<Item = SparseVec>, ncols: usize) -> usize {
    let mut rows: Vec<SparseVec> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    rows.sort_by_key(|r| r.len());
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

pub fn kernel(rows: impl IntoIterator<Item = SparseVec>, ncols: usize) -> Vec<SparseVec> {
    rref(rows, ncols).kernel()
}

/// Transpose a list of sparse columns into sparse rows.
pub fn columns_to_rows(columns: &[SparseVec], nrows: usize) -> Vec<SparseVec> {
    let mut rows: Vec<SparseVec> = vec![Vec::new(); nrows];
    for (j, col) in columns.iter().enumerate() {
        for (i, v) in col {
            rows[*i].push((j, v.clone()));
        }
    }
    rows
}

/// Solve `A x = b` where `rows` are the rows of `A` (over `ncols` unknowns)
/// and `rhs[i]` is the right-hand side of row `i`. Free variables are set to
/// zero, so the answer is the unique solution supported on pivot columns.
/// Returns `None` when the system is inconsistent.
pub fn solve(rows: Vec<SparseVec>, rhs: Vec<Rat>, ncols: usize) -> Option<SparseVec> {
    assert_eq!(rows.len(), rhs.len());
    let aug: Vec<SparseVec> = rows
        .into_iter()
        .zip(rhs)
        .map(|(mut r, b)| {
            if !b.is_zero() {
                r.push((ncols, b));
            }
            r
        })
        .collect();
    let rr = rref(aug, ncols + 1);
    if rr.pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x: SparseVec = rr
        .rows
        .iter()
        .zip(&rr.pivots)
        .filter_map(|(row, &p)| {
            row.iter()
                .find(|(c, _)| *c == ncols)
                .map(|(_, v)| (p, v.clone()))
        })
        .collect();
    x.sort_by_key(|e| e.0);
    Some(x)
}

/// Dense square inverse; `None` when singular.
pub fn invert_dense(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let rows: Vec<SparseVec> = (0..n)
        .map(|i| {
            let mut r: SparseVec = m[i]
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(j, v)| (j, v.clone()))
                .collect();
            r.push((n + i, Rat::one()));
            r
        })
        .collect();
    let rr = rref(rows, 2 * n);
    if rr.rank() != n || rr.pivots.iter().any(|&p| p >= n) {
        return None;
    }
    let mut inv = vec![vec![Rat::zero(); n]; n];
    for (r, row) in rr.rows.iter().enumerate() {
        let p = rr.pivots[r];
        for (c, v) in row {
            if *c >= n {
                inv[p][c - n] = v.clone();
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    fn dense(rows: &[&[i64]]) -> Vec<SparseVec> {
        rows.iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, v)| **v != 0)
                    .map(|(j, v)| (j, r(*v)))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn rank_and_kernel_of_small_matrix() {
        // rows: x0 + x1 = 0, x1 + x2 = 0, x0 - x2 = 0 (dependent)
        let m = dense(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, -1]]);
        assert_eq!(rank(m.clone(), 3), 2);
        let k = kernel(m, 3);
        assert_eq!(k, vec![vec![(0, r(1)), (1, r(-1)), (2, r(1))]]);
    }

    #[test]
    fn solve_prefers_pivot_columns() {
        let m = dense(&[&[1, 1, 0], &[0, 0, 2]]);
        let x = solve(m.clone(), vec![r(3), r(4)], 3).unwrap();
        assert_eq!(x, vec![(0, r(3)), (2, r(2))]);
        let bad = dense(&[&[1, 1], &[2, 2]]);
        assert!(solve(bad, vec![r(1), r(3)], 2).is_none());
        let _ = m;
    }

    #[test]
    fn dense_inverse() {
        let m = vec![vec![r(2), r(1)], vec![r(1), r(1)]];
        let inv = invert_dense(&m).unwrap();
        assert_eq!(inv, vec![vec![r(1), r(-1)], vec![r(-1), r(2)]]);
        assert!(invert_dense(&[vec![r(1), r(2)], vec![r(2), r(4)]]).is_none());
    }

    #[test]
    fn rref_is_independent_of_row_order() {
        let a = dense(&[&[0, 2, 4, 1], &[1, 1, 0, 3], &[1, 3, 4, 4], &[2, 0, -4, 0]]);
        let mut b = a.clone();
        b.reverse();
        let ra = rref(a, 4);
        let rb = rref(b, 4);
        assert_eq!(ra.rows, rb.rows);
        assert_eq!(ra.pivots, rb.pivots);
    }
}
