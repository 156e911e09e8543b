//! Dense matrices over GF(p).
//!
//! Everything is exact, so pivoting only looks for the first nonzero entry.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::gf::{FieldElement, PrimeModulus};
use crate::poly::Polynomial;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
    modulus: PrimeModulus,
}

impl FieldMatrix {
    pub fn zeros(modulus: PrimeModulus, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![modulus.zero(); rows * cols],
            modulus,
        }
    }

    pub fn identity(modulus: PrimeModulus, n: usize) -> Self {
        let mut m = Self::zeros(modulus, n, n);
        for i in 0..n {
            m[(i, i)] = modulus.one();
        }
        m
    }

    pub fn from_fn(
        modulus: PrimeModulus,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElement,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = f(i, j);
                assert_eq!(v.modulus(), modulus, "entry from a different field");
                data.push(v);
            }
        }
        Self {
            rows,
            cols,
            data,
            modulus,
        }
    }

    /// Builds a matrix from signed integer rows, reduced mod p.
    pub fn from_rows(modulus: PrimeModulus, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self::from_fn(modulus, rows.len(), cols, |i, j| {
            modulus.from_i64(rows[i][j])
        }))
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.modulus, self.cols, self.rows, |i, j| self[(j, i)])
    }

    fn check_same_shape(&self, rhs: &Self) -> Result<()> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_same_shape(rhs)?;
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| a + b)
            .collect();
        Ok(Self { data, ..*self })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_same_shape(rhs)?;
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| a - b)
            .collect();
        Ok(Self { data, ..*self })
    }

    pub fn scale(&self, c: FieldElement) -> Self {
        let data = self.data.iter().map(|&a| a * c).collect();
        Self { data, ..*self }
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(|&a| -a).collect();
        Self { data, ..*self }
    }

    /// Schoolbook product in i-k-j order.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.modulus, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                let src = rhs.row(k);
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, &b) in dst.iter_mut().zip(src) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    fn require_square(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "expected a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += c * row[src]`, restricted to columns `from..`.
    fn add_row_multiple(&mut self, dst: usize, src: usize, c: FieldElement, from: usize) {
        for j in from..self.cols {
            let v = self[(src, j)];
            self[(dst, j)] += c * v;
        }
    }

    /// `col[dst] += c * col[src]`, restricted to rows `from..`.
    fn add_col_multiple(&mut self, dst: usize, src: usize, c: FieldElement, from: usize) {
        for i in from..self.rows {
            let v = self[(i, src)];
            self[(i, dst)] += c * v;
        }
    }

    /// Determinant by forward elimination.
    pub fn determinant(&self) -> Result<FieldElement> {
        self.require_square()?;
        let n = self.rows;
        let mut a = self.clone();
        let mut det = self.modulus.one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return Ok(self.modulus.zero());
            };
            if piv != col {
                a.swap_rows(piv, col);
                det = -det;
            }
            let pivot = a[(col, col)];
            det *= pivot;
            let inv = pivot.inv()?;
            for r in (col + 1)..n {
                let f = a[(r, col)];
                if !f.is_zero() {
                    a.add_row_multiple(r, col, -(f * inv), col);
                }
            }
        }
        Ok(det)
    }

    /// Determinant together with the inverse, which is `None` exactly when
    /// the determinant vanishes. Gauss-Jordan on `[A | I]`.
    pub fn det_inv(&self) -> Result<(FieldElement, Option<FieldMatrix>)> {
        self.require_square()?;
        let n = self.rows;
        let m = self.modulus;
        let mut aug = Self::from_fn(m, n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)]
            } else if j - n == i {
                m.one()
            } else {
                m.zero()
            }
        });
        let mut det = m.one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !aug[(r, col)].is_zero()) else {
                return Ok((m.zero(), None));
            };
            if piv != col {
                aug.swap_rows(piv, col);
                det = -det;
            }
            let pivot = aug[(col, col)];
            det *= pivot;
            let inv = pivot.inv()?;
            for j in col..2 * n {
                aug[(col, j)] *= inv;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = aug[(r, col)];
                if !f.is_zero() {
                    aug.add_row_multiple(r, col, -f, col);
                }
            }
        }
        let inverse = Self::from_fn(m, n, n, |i, j| aug[(i, n + j)]);
        Ok((det, Some(inverse)))
    }

    pub fn inverse(&self) -> Result<Option<FieldMatrix>> {
        Ok(self.det_inv()?.1)
    }

    /// Row-echelon rank.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(piv) = (rank..self.rows).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(piv, rank);
            let inv = a[(rank, col)].inv().expect("nonzero pivot");
            for r in (rank + 1)..self.rows {
                let f = a[(r, col)];
                if !f.is_zero() {
                    a.add_row_multiple(r, rank, -(f * inv), col);
                }
            }
            rank += 1;
        }
        rank
    }

    /// `det(tI - A)`, monic of degree n.
    ///
    /// Reduces to upper Hessenberg form by elimination similarities (each row
    /// operation is paired with the inverse column operation), then expands
    /// the leading principal minors of the Hessenberg matrix.
    pub fn charpoly(&self) -> Result<Polynomial> {
        self.require_square()?;
        let n = self.rows;
        let m = self.modulus;
        let mut h = self.clone();

        for k in 1..n.saturating_sub(1) {
            let Some(piv) = (k..n).find(|&r| !h[(r, k - 1)].is_zero()) else {
                continue;
            };
            h.swap_rows(piv, k);
            h.swap_cols(piv, k);
            let inv = h[(k, k - 1)].inv()?;
            for r in (k + 1)..n {
                let u = h[(r, k - 1)] * inv;
                if u.is_zero() {
                    continue;
                }
                h.add_row_multiple(r, k, -u, 0);
                h.add_col_multiple(k, r, u, 0);
            }
        }

        // minors[k] = charpoly of the leading k x k block, coefficients low-to-high
        let mut minors: Vec<Vec<FieldElement>> = Vec::with_capacity(n + 1);
        minors.push(vec![m.one()]);
        for k in 0..n {
            let prev = &minors[k];
            let mut next = vec![m.zero(); k + 2];
            for (i, &c) in prev.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= h[(k, k)] * c;
            }
            let mut sub_product = m.one();
            for i in 1..=k {
                sub_product *= h[(k - i + 1, k - i)];
                let f = h[(k - i, k)] * sub_product;
                if f.is_zero() {
                    continue;
                }
                for (j, &c) in minors[k - i].iter().enumerate() {
                    next[j] -= f * c;
                }
            }
            minors.push(next);
        }
        Ok(Polynomial::from_coeffs(m, minors.pop().unwrap()))
    }
}

impl Index<(usize, usize)> for FieldMatrix {
    type Output = FieldElement;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &FieldElement {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for FieldMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut FieldElement {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// A square matrix with `a_ij = -a_ji`, checked on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewMatrix(FieldMatrix);

impl SkewMatrix {
    pub fn new(a: FieldMatrix) -> Result<Self> {
        a.require_square()?;
        for i in 0..a.rows {
            for j in i..a.cols {
                if a[(i, j)] != -a[(j, i)] {
                    return Err(Error::NotSkew { row: i, col: j });
                }
            }
        }
        Ok(Self(a))
    }

    pub fn zeros(modulus: PrimeModulus, n: usize) -> Self {
        Self(FieldMatrix::zeros(modulus, n, n))
    }

    /// Fills the strict upper triangle row by row from `upper` and mirrors it.
    pub fn from_upper(modulus: PrimeModulus, n: usize, upper: &[i64]) -> Result<Self> {
        if upper.len() != n * n.saturating_sub(1) / 2 {
            return Err(Error::DimensionMismatch(format!(
                "{} upper entries for n={n}",
                upper.len()
            )));
        }
        let mut s = Self::zeros(modulus, n);
        let mut it = upper.iter();
        for i in 0..n {
            for j in (i + 1)..n {
                s.set_pair(i, j, modulus.from_i64(*it.next().unwrap()));
            }
        }
        Ok(s)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.0.rows
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.0.modulus
    }

    #[inline]
    pub fn as_matrix(&self) -> &FieldMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> FieldMatrix {
        self.0
    }

    /// Sets `(u, v)` to `value` and `(v, u)` to `-value`.
    pub fn set_pair(&mut self, u: usize, v: usize, value: FieldElement) {
        assert!(u != v || value.is_zero(), "nonzero diagonal in skew matrix");
        self.0[(u, v)] = value;
        self.0[(v, u)] = -value;
    }

    /// `(u, v) += value`, `(v, u) -= value`.
    pub fn add_pair(&mut self, u: usize, v: usize, value: FieldElement) {
        if u == v {
            return;
        }
        self.0[(u, v)] += value;
        self.0[(v, u)] -= value;
    }

    pub fn add(&self, rhs: &SkewMatrix) -> Result<SkewMatrix> {
        Ok(SkewMatrix(self.0.add(&rhs.0)?))
    }

    pub fn scale(&self, c: FieldElement) -> SkewMatrix {
        SkewMatrix(self.0.scale(c))
    }

    pub fn determinant(&self) -> FieldElement {
        self.0.determinant().expect("skew matrices are square")
    }

    /// Exact pfaffian with the sign of the canonical matching expansion.
    ///
    /// Each step moves a nonzero entry of row `k` into column `k + 1`
    /// (a symmetric swap flips the sign), clears the rest of row `k` with
    /// congruence operations, and recurses on the trailing block.
    pub fn pfaffian(&self) -> Result<FieldElement> {
        let n = self.n();
        if n % 2 == 1 {
            return Err(Error::OddDimension(n));
        }
        let m = self.modulus();
        let mut a = self.0.clone();
        let mut pf = m.one();
        for k in (0..n).step_by(2) {
            let Some(piv) = ((k + 1)..n).find(|&j| !a[(k, j)].is_zero()) else {
                return Ok(m.zero());
            };
            if piv != k + 1 {
                a.swap_rows(piv, k + 1);
                a.swap_cols(piv, k + 1);
                pf = -pf;
            }
            let pivot = a[(k, k + 1)];
            pf *= pivot;
            let inv = pivot.inv()?;
            for i in (k + 2)..n {
                let c = -(a[(k, i)] * inv);
                if c.is_zero() {
                    continue;
                }
                a.add_row_multiple(i, k + 1, c, k);
                a.add_col_multiple(i, k + 1, c, k);
            }
        }
        Ok(pf)
    }
}
