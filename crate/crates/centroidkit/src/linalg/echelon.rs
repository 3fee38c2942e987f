//! Sparse incremental reduced row echelon over Q.
//!
//! Rows arrive one at a time (equation streaming); the structure keeps a
//! reduced echelon basis of the row space with unit pivots. Pivot choice is
//! deterministic: a row's pivot is its leftmost nonzero column after
//! reduction, so for a fixed insertion order the echelon is reproducible.
//!
//! Kernels of genuinely large systems should go through `kernel_streamed`,
//! which solves on a seed subset of the equations and then verifies the
//! candidate kernel against every remaining equation, inserting violated
//! rows and repeating. The result satisfies every equation (each basis
//! vector is checked against the full stream before returning), and no
//! solution is lost (the echelon only ever contains genuine equations).

use crate::rational::Rat;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Sorted sparse row: strictly increasing column indices, nonzero entries.
pub type SparseRow = Vec<(usize, Rat)>;

pub fn sparse_from_dense(v: &[Rat]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn sparse_to_dense(row: &SparseRow, n: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    for (i, x) in row {
        v[*i] = x.clone();
    }
    v
}

/// row - c * other, both sorted sparse.
fn row_axpy(row: &SparseRow, c: &Rat, other: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < other.len() {
        let take_row = j >= other.len() || (i < row.len() && row[i].0 < other[j].0);
        let take_other = i >= row.len() || (j < other.len() && other[j].0 < row[i].0);
        if take_row {
            out.push(row[i].clone());
            i += 1;
        } else if take_other {
            out.push((other[j].0, -(c * &other[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - &(c * &other[j].1);
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub struct Echelon {
    ncols: usize,
    rows: Vec<SparseRow>,
    /// pivot column -> index into `rows`; pivot entries are 1.
    pivots: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            rows: Vec::new(),
            pivots: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces a row against the current echelon without inserting it.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut i = 0;
        while i < row.len() {
            let col = row[i].0;
            if let Some(&r) = self.pivots.get(&col) {
                let c = row[i].1.clone();
                row = row_axpy(&row, &c, &self.rows[r]);
                // Entries left of `col` are untouched; restart scan at same index.
            } else {
                i += 1;
            }
        }
        row
    }

    /// Inserts a row; returns its pivot column if the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> Option<usize> {
        let row = self.reduce(row);
        if row.is_empty() {
            return None;
        }
        let (pivot_col, pivot_val) = (row[0].0, row[0].1.clone());
        let row: SparseRow = row
            .into_iter()
            .map(|(c, v)| (c, v / &pivot_val))
            .collect();
        // Back-eliminate the new pivot column from existing rows to stay reduced.
        let idx = self.rows.len();
        for r in 0..idx {
            if let Some(pos) = self.rows[r].iter().position(|(c, _)| *c == pivot_col) {
                let c = self.rows[r][pos].1.clone();
                self.rows[r] = row_axpy(&self.rows[r], &c, &row);
            }
        }
        self.rows.push(row);
        self.pivots.insert(pivot_col, idx);
        Some(pivot_col)
    }

    pub fn insert_dense(&mut self, v: &[Rat]) -> Option<usize> {
        assert_eq!(v.len(), self.ncols);
        self.insert(sparse_from_dense(v))
    }

    /// True when `v` lies in the row space.
    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(sparse_from_dense(v)).is_empty()
    }

    /// Coordinates of `v` in terms of the echelon rows; `None` if outside.
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let mut coords = vec![Rat::zero(); self.rows.len()];
        let mut row = sparse_from_dense(v);
        let mut i = 0;
        while i < row.len() {
            let col = row[i].0;
            if let Some(&r) = self.pivots.get(&col) {
                let c = row[i].1.clone();
                row = row_axpy(&row, &c, &self.rows[r]);
                coords[r] = c;
            } else {
                i += 1;
            }
        }
        if row.is_empty() {
            Some(coords)
        } else {
            None
        }
    }

    /// Kernel of the matrix whose rows were inserted: one basis vector per
    /// free column, in increasing column order (free column set to 1).
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let mut out = Vec::new();
        for free in 0..self.ncols {
            if self.pivots.contains_key(&free) {
                continue;
            }
            let mut v = vec![Rat::zero(); self.ncols];
            v[free] = Rat::one();
            for (&pc, &r) in &self.pivots {
                if let Some((_, val)) = self.rows[r].iter().find(|(c, _)| *c == free) {
                    v[pc] = -val.clone();
                }
            }
            out.push(v);
        }
        out
    }

    /// The echelon rows, sorted by pivot column (canonical basis of the row space).
    pub fn canonical_rows(&self) -> Vec<Vec<Rat>> {
        self.pivots
            .values()
            .map(|&r| sparse_to_dense(&self.rows[r], self.ncols))
            .collect()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }
}

/// Sparse dot product of a sparse equation row with a dense vector.
pub fn sparse_dot(row: &SparseRow, v: &[Rat]) -> Rat {
    let mut s = Rat::zero();
    for (c, x) in row {
        if !v[*c].is_zero() {
            s += x * &v[*c];
        }
    }
    s
}

/// Kernel of a large equation stream.
///
/// `rows` yields every equation (sparse). A seed prefix is inserted directly;
/// afterwards the candidate kernel is verified against the full stream and
/// violated equations are inserted until every equation annihilates every
/// kernel vector. Sound and complete: see module docs.
pub fn kernel_streamed<F>(ncols: usize, mut rows: F, seed: usize) -> Vec<Vec<Rat>>
where
    F: FnMut(&mut dyn FnMut(SparseRow) -> bool),
{
    let mut ech = Echelon::new(ncols);
    let mut fed = 0usize;
    rows(&mut |r| {
        if !r.is_empty() {
            ech.insert(r);
            fed += 1;
        }
        fed < seed
    });
    loop {
        let kernel = ech.kernel();
        if kernel.is_empty() {
            return kernel;
        }
        let mut violated: Vec<SparseRow> = Vec::new();
        rows(&mut |r| {
            if !r.is_empty() && kernel.iter().any(|k| !sparse_dot(&r, k).is_zero()) {
                violated.push(r);
                violated.len() < 64
            } else {
                true
            }
        });
        if violated.is_empty() {
            return kernel;
        }
        for r in violated {
            ech.insert(r);
        }
    }
}

/// Kernel of a dense matrix: vectors x with M x = 0.
pub fn kernel_dense(m: &super::matrix::Matrix) -> Vec<Vec<Rat>> {
    let mut ech = Echelon::new(m.cols);
    for i in 0..m.rows {
        ech.insert_dense(&m.row(i));
    }
    ech.kernel()
}

/// One solution of M x = b along with a kernel basis; `None` if inconsistent.
/// Free variables are set to zero (pivot order: leftmost column, rows as given).
pub fn solve_dense(
    m: &super::matrix::Matrix,
    b: &[Rat],
) -> Option<(Vec<Rat>, Vec<Vec<Rat>>)> {
    assert_eq!(m.rows, b.len());
    // Augmented system; the extra column must stay non-pivotal.
    let mut ech = Echelon::new(m.cols + 1);
    for i in 0..m.rows {
        let mut row = sparse_from_dense(&m.row(i));
        if !b[i].is_zero() {
            row.push((m.cols, b[i].clone()));
        }
        ech.insert(row);
    }
    if ech.pivots.contains_key(&m.cols) {
        return None;
    }
    let mut x = vec![Rat::zero(); m.cols];
    for (&pc, &r) in &ech.pivots {
        if let Some((_, val)) = ech.rows[r].iter().find(|(c, _)| *c == m.cols) {
            x[pc] = val.clone();
        }
    }
    // Kernel vectors of M are exactly the augmented-kernel vectors whose
    // last (augmented) coordinate vanishes.
    let kernel = ech
        .kernel()
        .into_iter()
        .filter(|k| k[m.cols].is_zero())
        .map(|mut k| {
            k.pop();
            k
        })
        .collect();
    Some((x, kernel))
}
