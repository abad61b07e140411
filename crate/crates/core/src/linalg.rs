//! Dense exact linear algebra over the rationals.
//!
//! [`Matrix`] is a row-major rational matrix with Gaussian elimination based
//! rank, kernel and inverse. [`Subspace`] stores a subspace of `Q^d` by the
//! reduced row echelon form of a spanning set, which makes equality of
//! subspaces a structural comparison.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Signed, Zero};

use crate::error::{invalid, Result};
use crate::rational::{fmt_q, int, parse_q, Q};

pub type Vector = Vec<Q>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(fmt_q).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Q;
    fn index(&self, (r, c): (usize, usize)) -> &Q {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Q {
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(invalid("ragged matrix rows"));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor for integer literals; panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect();
        Self::from_rows(rows).expect("ragged integer matrix")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vector], dim: usize) -> Self {
        let mut m = Self::zeros(dim, cols.len());
        for (j, v) in cols.iter().enumerate() {
            for i in 0..dim {
                m[(i, j)] = v[i].clone();
            }
        }
        m
    }

    /// Parses row-major `"p/q"` strings.
    pub fn parse(rows: &[Vec<String>]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(parsed)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(fmt_q).collect())
            .collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
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

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Q::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, s: &Q) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Matrix {
        assert!(self.is_square());
        let mut out = Self::identity(self.rows);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].recip();
            for c in col..m.cols {
                let v = &m[(row, c)] * &inv;
                m[(row, c)] = v;
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for c in col..m.cols {
                    if m[(row, c)].is_zero() {
                        continue;
                    }
                    let v = &m[(row, c)] * &factor;
                    m[(r, c)] -= v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{x : Mx = 0}`.
    pub fn kernel(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Q::zero(); self.cols];
                v[f] = Q::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(i, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Q::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square() && *self == self.transpose().scale(&int(-1))
    }
}

/// Euclidean pairing of two rational vectors.
pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// `u^T B v` for a bilinear form given by its Gram matrix.
pub fn bilinear(b: &Matrix, u: &[Q], v: &[Q]) -> Q {
    dot(u, &b.mul_vec(v))
}

/// Inertia `(positive, negative, zero)` of a symmetric rational matrix,
/// computed by symmetric elimination (Sylvester's law of inertia).
pub fn inertia(m: &Matrix) -> (usize, usize, usize) {
    assert!(m.is_symmetric(), "inertia needs a symmetric matrix");
    let mut a = m.clone();
    let n = a.rows();
    let (mut pos, mut neg) = (0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let pivot = active.iter().copied().find(|&i| !a[(i, i)].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                // all remaining diagonal entries vanish: fold an off-diagonal
                // entry onto the diagonal, or stop if the block is zero
                let pair = active.iter().copied().find_map(|i| {
                    active
                        .iter()
                        .copied()
                        .find(|&j| j != i && !a[(i, j)].is_zero())
                        .map(|j| (i, j))
                });
                let Some((i, j)) = pair else { break };
                for k in 0..n {
                    let v = a[(j, k)].clone();
                    a[(i, k)] += v;
                }
                for k in 0..n {
                    let v = a[(k, j)].clone();
                    a[(k, i)] += v;
                }
                i
            }
        };
        let d = a[(p, p)].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&i| i != p);
        for &i in &active {
            if a[(i, p)].is_zero() {
                continue;
            }
            let f = &a[(i, p)] / &d;
            for &j in &active {
                let v = &f * &a[(p, j)];
                a[(i, j)] -= v;
            }
        }
        for &i in &active {
            a[(i, p)] = Q::zero();
            a[(p, i)] = Q::zero();
        }
    }
    (pos, neg, n - pos - neg)
}

/// A linear subspace of `Q^d`, stored canonically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    // nonzero rows of the reduced row echelon form
    basis: Vec<Vector>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in Q^{})", self.dim(), self.ambient)
    }
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let id = Matrix::identity(ambient);
        Subspace {
            ambient,
            basis: (0..ambient).map(|r| id.row(r).to_vec()).collect(),
        }
    }

    pub fn span(ambient: usize, vectors: &[Vector]) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        let m = Matrix::from_rows(vectors.to_vec()).expect("vectors of equal length");
        assert_eq!(
            m.cols(),
            ambient,
            "vector length does not match ambient dimension"
        );
        let (r, pivots) = m.rref();
        Subspace {
            ambient,
            basis: (0..pivots.len()).map(|i| r.row(i).to_vec()).collect(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Matrix::from_rows(rows).unwrap().rank() == self.dim()
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Self::span(self.ambient, &vs)
    }

    /// Orthogonal complement for the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        if self.basis.is_empty() {
            return Self::full(self.ambient);
        }
        let m = Matrix::from_rows(self.basis.clone()).unwrap();
        Self::span(self.ambient, &m.kernel())
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        self.annihilator().sum(&other.annihilator()).annihilator()
    }

    pub fn image(&self, m: &Matrix) -> Subspace {
        let vs: Vec<Vector> = self.basis.iter().map(|v| m.mul_vec(v)).collect();
        Self::span(m.rows(), &vs)
    }

    /// `{x : Mx ∈ self}`.
    pub fn preimage(&self, m: &Matrix) -> Subspace {
        let ann = self.annihilator();
        if ann.dim() == 0 {
            return Self::full(m.cols());
        }
        let a = Matrix::from_rows(ann.basis.clone()).unwrap();
        Self::span(m.cols(), &a.mul(m).kernel())
    }

    /// Vectors extending a basis of `self` to a basis of `larger`; their
    /// classes form a basis of the quotient `larger / self`.
    pub fn complement_in(&self, larger: &Subspace) -> Vec<Vector> {
        debug_assert!(larger.contains_space(self));
        let mut current = self.clone();
        let mut out = Vec::new();
        for v in &larger.basis {
            if !current.contains(v) {
                out.push(v.clone());
                current = current.sum(&Self::span(self.ambient, std::slice::from_ref(v)));
            }
        }
        out
    }
}
