//! Exact rational matrices. Everything here is small and dense under the
//! hood; the sparse triplet form is kept for construction and dumping.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn rat(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

/// Sparse matrix with exact rational entries, stored as coordinate triplets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: BTreeMap<(usize, usize), BigRational>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> SparseMatrix {
        SparseMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        assert!(r < self.rows && c < self.cols, "entry out of range");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> BigRational {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &BigRational)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = SparseMatrix::zero(self.cols, self.rows);
        for (&(r, c), v) in &self.entries {
            t.entries.insert((c, r), v.clone());
        }
        t
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = SparseMatrix::zero(self.rows, other.cols);
        // group other's entries by row for the sparse pass
        let mut by_row: Vec<Vec<(usize, &BigRational)>> = vec![vec![]; other.rows];
        for (&(r, c), v) in &other.entries {
            by_row[r].push((c, v));
        }
        let mut acc: BTreeMap<(usize, usize), BigRational> = BTreeMap::new();
        for (&(r, k), v) in &self.entries {
            for &(c, w) in &by_row[k] {
                let e = acc.entry((r, c)).or_insert_with(BigRational::zero);
                *e += v * w;
            }
        }
        for (pos, v) in acc {
            if !v.is_zero() {
                out.entries.insert(pos, v);
            }
        }
        out
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        assert!(self.rows == other.rows && self.cols == other.cols);
        let mut out = self.clone();
        for (&pos, v) in &other.entries {
            let e = out.entries.entry(pos).or_insert_with(BigRational::zero);
            *e += v;
            if e.is_zero() {
                out.entries.remove(&pos);
            }
        }
        out
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_dense(&self) -> Vec<Vec<BigRational>> {
        let mut d = vec![vec![BigRational::zero(); self.cols]; self.rows];
        for (&(r, c), v) in &self.entries {
            d[r][c] = v.clone();
        }
        d
    }

    pub fn from_dense(d: &[Vec<BigRational>]) -> SparseMatrix {
        let rows = d.len();
        let cols = d.first().map_or(0, |r| r.len());
        let mut m = SparseMatrix::zero(rows, cols);
        for (r, row) in d.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    m.entries.insert((r, c), v.clone());
                }
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        row_echelon(&mut self.to_dense())
    }

    /// A basis of the right kernel, one column vector per basis element.
    pub fn kernel_basis(&self) -> Vec<Vec<BigRational>> {
        let mut d = self.to_dense();
        let pivots = reduced_row_echelon(&mut d);
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = vec![];
        for free in 0..self.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![BigRational::zero(); self.cols];
            v[free] = BigRational::one();
            for &(r, c) in &pivots {
                v[c] = -d[r][free].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Whether Ax = b has a solution.
    pub fn is_consistent(&self, b: &[BigRational]) -> bool {
        assert_eq!(b.len(), self.rows);
        let mut aug = self.to_dense();
        for (r, row) in aug.iter_mut().enumerate() {
            row.push(b[r].clone());
        }
        let plain_rank = self.rank();
        row_echelon(&mut aug) == plain_rank
    }

    /// One line per entry: `row col numerator/denominator`.
    pub fn dump_triplets(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {} x {} rank {}", self.rows, self.cols, self.rank());
        for (&(r, c), v) in &self.entries {
            let _ = writeln!(out, "{} {} {}/{}", r, c, v.numer(), v.denom());
        }
        out
    }
}

/// In-place forward elimination with partial (largest-magnitude) pivoting;
/// returns the rank.
fn row_echelon(d: &mut [Vec<BigRational>]) -> usize {
    let rows = d.len();
    let cols = d.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows)
            .filter(|&r| !d[r][col].is_zero())
            .max_by_key(|&r| d[r][col].abs())
        else {
            continue;
        };
        d.swap(rank, piv);
        for r in rank + 1..rows {
            if d[r][col].is_zero() {
                continue;
            }
            let factor = &d[r][col] / &d[rank][col];
            for c in col..cols {
                let delta = &factor * &d[rank][c];
                d[r][c] -= delta;
            }
        }
        rank += 1;
    }
    rank
}

/// Full Gauss-Jordan; returns the pivot (row, col) list.
fn reduced_row_echelon(d: &mut [Vec<BigRational>]) -> Vec<(usize, usize)> {
    let rows = d.len();
    let cols = d.first().map_or(0, |r| r.len());
    let mut pivots = vec![];
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| !d[r][col].is_zero()) else {
            continue;
        };
        d.swap(rank, piv);
        let inv = d[rank][col].recip();
        for c in col..cols {
            d[rank][c] = &d[rank][c] * &inv;
        }
        for r in 0..rows {
            if r != rank && !d[r][col].is_zero() {
                let factor = d[r][col].clone();
                for c in col..cols {
                    let delta = &factor * &d[rank][c];
                    d[r][c] -= delta;
                }
            }
        }
        pivots.push((rank, col));
        rank += 1;
    }
    pivots
}
