//! Exact dense linear algebra over complex rationals: row reduction, rank,
//! kernel, inverse, and the inertia of Hermitian forms by congruence.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::scalar::{cx_one, cx_zero, is_zero, ComplexScalar};

#[derive(Clone, PartialEq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ComplexScalar>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![cx_zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = cx_one();
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must have equal length.
    pub fn from_rows(rows: &[Vec<ComplexScalar>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ExactMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flat_map(|row| row.iter().cloned()).collect(),
        }
    }

    pub fn from_columns(cols: &[Vec<ComplexScalar>]) -> Self {
        Self::from_rows(cols).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[ComplexScalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<ComplexScalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn adjoint(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].conj();
            }
        }
        t
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !is_zero(b) {
                        out[(r, c)] = &out[(r, c)] + a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[ComplexScalar]) -> Vec<ComplexScalar> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(cx_zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn is_hermitian(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|i| (i..self.cols).all(|j| self[(i, j)] == self[(j, i)].conj()))
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !is_zero(&m[(r, col)])) else {
                continue;
            };
            m.swap_rows(p, row);
            let inv = cx_one() / m[(row, col)].clone();
            for c in col..m.cols {
                m[(row, c)] = &m[(row, c)] * &inv;
            }
            for r in 0..m.rows {
                if r == row || is_zero(&m[(r, col)]) {
                    continue;
                }
                let f = m[(r, col)].clone();
                for c in col..m.cols {
                    let delta = &f * &m[(row, c)];
                    m[(r, c)] = &m[(r, c)] - delta;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self·x = 0}`, one vector per free column, in column order.
    pub fn kernel(&self) -> Vec<Vec<ComplexScalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![cx_zero(); self.cols];
                v[f] = cx_one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(row, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<ExactMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = cx_one();
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = red[(r, n + c)].clone();
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = ComplexScalar;
    fn index(&self, (r, c): (usize, usize)) -> &ComplexScalar {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut ComplexScalar {
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self
                .row(r)
                .iter()
                .map(|z| {
                    if z.im.is_zero() {
                        z.re.to_string()
                    } else {
                        format!("{}+{}i", z.re, z.im)
                    }
                })
                .collect();
            writeln!(f, "  {}", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Counts of positive, negative and zero directions of a Hermitian form.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn new(positive: usize, negative: usize, zero: usize) -> Self {
        Inertia {
            positive,
            negative,
            zero,
        }
    }

    pub fn dim(&self) -> usize {
        self.positive + self.negative + self.zero
    }
}

/// Inertia of a Hermitian matrix by exact congruence (Sylvester's law).
///
/// Panics if the matrix is not square and Hermitian.
pub fn hermitian_inertia(m: &ExactMatrix) -> Inertia {
    assert!(m.is_hermitian(), "inertia requires a Hermitian matrix");
    let mut a = m.clone();
    let n = a.rows();
    let mut active: Vec<usize> = (0..n).collect();
    let mut inertia = Inertia::default();

    while !active.is_empty() {
        let pivot = active.iter().copied().find(|&i| !is_zero(&a[(i, i)]));
        let pivot = match pivot {
            Some(p) => p,
            None => {
                // Zero diagonal: any nonzero off-diagonal entry can be folded
                // into a nonzero diagonal one by a congruence.
                let pair = active.iter().copied().find_map(|i| {
                    active
                        .iter()
                        .copied()
                        .find(|&j| j != i && !is_zero(&a[(i, j)]))
                        .map(|j| (i, j))
                });
                let Some((i, j)) = pair else {
                    inertia.zero += active.len();
                    break;
                };
                let t = a[(i, j)].conj();
                let tc = t.conj();
                for &r in &active {
                    let v = &a[(r, j)] * &t;
                    a[(r, i)] = &a[(r, i)] + v;
                }
                for &c in &active {
                    let v = &a[(j, c)] * &tc;
                    a[(i, c)] = &a[(i, c)] + v;
                }
                i
            }
        };

        let d = a[(pivot, pivot)].clone();
        debug_assert!(d.im.is_zero());
        if d.re.is_positive() {
            inertia.positive += 1;
        } else {
            inertia.negative += 1;
        }
        active.retain(|&i| i != pivot);
        for &r in &active {
            if is_zero(&a[(r, pivot)]) {
                continue;
            }
            let f = &a[(r, pivot)] / &d;
            let fc = f.conj();
            for &c in active.iter().chain(std::iter::once(&pivot)) {
                let v = &f * &a[(pivot, c)];
                a[(r, c)] = &a[(r, c)] - v;
            }
            for &c in active.iter().chain(std::iter::once(&pivot)) {
                let v = &fc * &a[(c, pivot)];
                a[(c, r)] = &a[(c, r)] - v;
            }
        }
    }
    inertia
}
