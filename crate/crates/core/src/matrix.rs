//! Dense matrices of Laurent polynomials.
//!
//! Shape mismatches inside arithmetic operators are programming errors and
//! panic. Operations with genuine preconditions (square, unit determinant)
//! return [`Error`].

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ring::{Laurent, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    ring: Ring,
    data: Vec<Laurent>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, ring: &Ring) -> Matrix {
        Matrix { rows, cols, ring: ring.clone(), data: vec![Laurent::zero(ring); rows * cols] }
    }

    pub fn identity(n: usize, ring: &Ring) -> Matrix {
        let mut m = Matrix::zeros(n, n, ring);
        for i in 0..n {
            m.set(i, i, Laurent::one(ring));
        }
        m
    }

    pub fn from_fn<F>(rows: usize, cols: usize, ring: &Ring, mut f: F) -> Matrix
    where
        F: FnMut(usize, usize) -> Laurent,
    {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let x = f(i, j);
                assert_eq!(x.ring(), ring, "ring mismatch");
                data.push(x);
            }
        }
        Matrix { rows, cols, ring: ring.clone(), data }
    }

    /// Build from rows; `cols` is only consulted when `rows` is empty.
    pub fn from_rows(ring: &Ring, rows: Vec<Vec<Laurent>>, cols: usize) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(cols, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows"));
        }
        if rows.iter().flatten().any(|x| x.ring() != ring) {
            return Err(Error::DimensionMismatch("entries over different rings"));
        }
        Ok(Matrix { rows: r, cols: c, ring: ring.clone(), data: rows.into_iter().flatten().collect() })
    }

    /// Integer matrix from literal rows. Panics on ragged input.
    pub fn from_ints(rows: &[&[i64]]) -> Matrix {
        let ring = Ring::integral();
        let c = rows.first().map_or(0, |r| r.len());
        Matrix::from_fn(rows.len(), c, &ring, |i, j| Laurent::int(rows[i][j]))
    }

    /// Matrix over `Z[t, 1/t]` from rows of elements. Panics on ragged input.
    pub fn from_elems(rows: Vec<Vec<Laurent>>) -> Matrix {
        Matrix::from_rows(&Ring::integral(), rows, 0).expect("well-formed literal matrix")
    }

    /// Column vector.
    pub fn column(entries: Vec<Laurent>) -> Matrix {
        let n = entries.len();
        Matrix { rows: n, cols: 1, ring: Ring::integral(), data: entries }
    }

    /// 1x1 matrix.
    pub fn scalar(x: Laurent) -> Matrix {
        let ring = x.ring().clone();
        Matrix { rows: 1, cols: 1, ring, data: vec![x] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Laurent {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Laurent) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        assert_eq!(x.ring(), &self.ring, "ring mismatch");
        self.data[i * self.cols + j] = x;
    }

    pub fn entries(&self) -> impl Iterator<Item = &Laurent> {
        self.data.iter()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Laurent>> {
        (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Laurent::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.rows, &self.ring)
    }

    /// All entries supported in exponent zero.
    pub fn is_integer(&self) -> bool {
        self.data.iter().all(Laurent::is_constant)
    }

    pub fn map<F: FnMut(&Laurent) -> Laurent>(&self, mut f: F) -> Matrix {
        let data: Vec<Laurent> = self.data.iter().map(&mut f).collect();
        let ring = data.first().map_or(self.ring.clone(), |x| x.ring().clone());
        Matrix { rows: self.rows, cols: self.cols, ring, data }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, &self.ring, |i, j| self.get(j, i).clone())
    }

    /// The dual map: transpose followed by the involution on every entry.
    pub fn conj_transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, &self.ring, |i, j| self.get(j, i).involute())
    }

    /// Apply `t -> 1/t` entrywise without transposing.
    pub fn involute_entries(&self) -> Matrix {
        self.map(Laurent::involute)
    }

    /// Apply the augmentation `t -> 1` entrywise.
    pub fn augment(&self) -> Matrix {
        self.map(Laurent::augment)
    }

    pub fn scale(&self, x: &Laurent) -> Matrix {
        self.map(|e| e * x)
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        assert!(r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols, "block out of range");
        Matrix::from_fn(r1 - r0, c1 - c0, &self.ring, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn col(&self, j: usize) -> Matrix {
        self.block(0, self.rows, j, j + 1)
    }

    /// Side-by-side concatenation.
    pub fn hstack(parts: &[&Matrix]) -> Matrix {
        let first = parts.first().expect("hstack of nothing");
        let rows = first.rows;
        assert!(parts.iter().all(|p| p.rows == rows), "hstack row mismatch");
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Matrix::zeros(rows, cols, &first.ring);
        let mut off = 0;
        for p in parts {
            out.paste(0, off, p);
            off += p.cols;
        }
        out
    }

    /// Top-to-bottom concatenation.
    pub fn vstack(parts: &[&Matrix]) -> Matrix {
        let first = parts.first().expect("vstack of nothing");
        let cols = first.cols;
        assert!(parts.iter().all(|p| p.cols == cols), "vstack column mismatch");
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut out = Matrix::zeros(rows, cols, &first.ring);
        let mut off = 0;
        for p in parts {
            out.paste(off, 0, p);
            off += p.rows;
        }
        out
    }

    pub fn block_diag(parts: &[&Matrix]) -> Matrix {
        let ring = parts.first().map_or(Ring::integral(), |p| p.ring.clone());
        let rows = parts.iter().map(|p| p.rows).sum();
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Matrix::zeros(rows, cols, &ring);
        let (mut r, mut c) = (0, 0);
        for p in parts {
            out.paste(r, c, p);
            r += p.rows;
            c += p.cols;
        }
        out
    }

    /// Overwrite the block starting at `(r, c)` with `m`.
    pub fn paste(&mut self, r: usize, c: usize, m: &Matrix) {
        for i in 0..m.rows {
            for j in 0..m.cols {
                self.set(r + i, c + j, m.get(i, j).clone());
            }
        }
    }

    /// Exact determinant.
    ///
    /// Over `Z[t, 1/t]` this is fraction-free Bareiss elimination with exact
    /// division; over `Z/m`, which may have zero divisors, a division-free
    /// expansion over column subsets.
    pub fn det(&self) -> Result<Laurent> {
        if !self.is_square() {
            return Err(Error::NonSquare(self.rows, self.cols));
        }
        if self.ring.is_integral() {
            Ok(self.bareiss_det())
        } else {
            Ok(self.subset_det())
        }
    }

    fn bareiss_det(&self) -> Laurent {
        let n = self.rows;
        let one = Laurent::one(&self.ring);
        if n == 0 {
            return one;
        }
        let mut a = self.row_vecs();
        let mut prev = one;
        let mut negate = false;
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        negate = !negate;
                    }
                    None => return Laurent::zero(&self.ring),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    /// Laplace expansion by dynamic programming over sets of used columns.
    fn subset_det(&self) -> Laurent {
        let n = self.rows;
        assert!(n <= 20, "subset determinant limited to 20x20");
        let mut dp = vec![Laurent::zero(&self.ring); 1 << n];
        dp[0] = Laurent::one(&self.ring);
        for mask in 0usize..(1 << n) {
            if dp[mask].is_zero() {
                continue;
            }
            let row = mask.count_ones() as usize;
            if row == n {
                continue;
            }
            for col in 0..n {
                if mask & (1 << col) != 0 {
                    continue;
                }
                // Sign of placing `col` after the already used columns.
                let inversions = (mask >> col).count_ones();
                let term = &dp[mask] * self.get(row, col);
                let next = mask | (1 << col);
                if inversions % 2 == 1 {
                    dp[next] = &dp[next] - &term;
                } else {
                    dp[next] = &dp[next] + &term;
                }
            }
        }
        dp[(1 << n) - 1].clone()
    }

    /// Minor with row `r` and column `c` removed.
    pub fn minor(&self, r: usize, c: usize) -> Matrix {
        let n = self.rows;
        Matrix::from_fn(n - 1, self.cols - 1, &self.ring, |i, j| {
            let ii = if i < r { i } else { i + 1 };
            let jj = if j < c { j } else { j + 1 };
            self.get(ii, jj).clone()
        })
    }

    pub fn adjugate(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NonSquare(self.rows, self.cols));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        if n == 1 {
            return Ok(Matrix::identity(1, &self.ring));
        }
        let mut out = Matrix::zeros(n, n, &self.ring);
        for i in 0..n {
            for j in 0..n {
                let d = self.minor(i, j).det()?;
                out.set(j, i, if (i + j) % 2 == 0 { d } else { -d });
            }
        }
        Ok(out)
    }

    /// Exact inverse `adj(M) / det(M)`.
    ///
    /// Over `Z[t, 1/t]` the determinant must be `+-t^k`; over `Z/m` it must
    /// be a monomial with invertible coefficient. Other units of residue rings
    /// are not recognised.
    pub fn inverse(&self) -> Result<Matrix> {
        let d = self.det()?;
        let dinv = d.monomial_inverse().ok_or(Error::NotAUnit)?;
        Ok(self.adjugate()?.scale(&dinv))
    }

    /// Rank over the fraction field (integral ring only).
    pub fn rank(&self) -> Result<usize> {
        if !self.ring.is_integral() {
            return Err(Error::UnsupportedRing("rank"));
        }
        let mut a = self.row_vecs();
        let (m, n) = (self.rows, self.cols);
        let mut prev = Laurent::one(&self.ring);
        let mut r = 0;
        for c in 0..n {
            if r == m {
                break;
            }
            let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            for i in r + 1..m {
                for j in c + 1..n {
                    let num = &(&a[r][c] * &a[i][j]) - &(&a[i][c] * &a[r][j]);
                    a[i][j] = num.exact_div(&prev).unwrap_or(num);
                }
                a[i][c] = Laurent::zero(&self.ring);
            }
            prev = a[r][c].clone();
            r += 1;
        }
        Ok(r)
    }

    /// Integer entries as `BigInt`s, if every entry is constant.
    pub fn to_int_rows(&self) -> Result<Vec<Vec<BigInt>>> {
        if !self.is_integer() {
            return Err(Error::NotInteger);
        }
        Ok((0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).coeff(0)).collect()).collect())
    }

    pub fn from_int_rows(rows: &[Vec<BigInt>], cols: usize) -> Matrix {
        let ring = Ring::integral();
        let c = rows.first().map_or(cols, |r| r.len());
        Matrix::from_fn(rows.len(), c, &ring, |i, j| Laurent::from_bigint(rows[i][j].clone()))
    }

    /// Largest absolute exponent among the entries, 0 for the zero matrix.
    pub fn degree_span(&self) -> i64 {
        self.data
            .iter()
            .filter_map(|x| Some(x.min_exp()?.abs().max(x.max_exp()?.abs())))
            .max()
            .unwrap_or(0)
    }
}

/// True when every pair of entries agrees and shapes match.
pub fn same_shape(a: &Matrix, b: &Matrix) -> bool {
    a.rows == b.rows && a.cols == b.cols
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        f.write_str("]")
    }
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols, &self.ring);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    out.data[idx] += &(a * b);
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert!(same_shape(self, rhs), "matrix sum shape mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, ring: self.ring.clone(), data }
    }
}

impl<'a> Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert!(same_shape(self, rhs), "matrix difference shape mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, ring: self.ring.clone(), data }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.map(|x| -x)
    }
}

impl Neg for Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Matrix> for Matrix {
            type Output = Matrix;
            fn $m(self, rhs: Matrix) -> Matrix {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Matrix> for Matrix {
            type Output = Matrix;
            fn $m(self, rhs: &Matrix) -> Matrix {
                (&self).$m(rhs)
            }
        }
        impl $tr<Matrix> for &Matrix {
            type Output = Matrix;
            fn $m(self, rhs: Matrix) -> Matrix {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// `[[a, b], [c, d]]` from four blocks.
pub fn blocks2(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Matrix {
    Matrix::vstack(&[&Matrix::hstack(&[a, b]), &Matrix::hstack(&[c, d])])
}

/// `true` when `x` equals the integer `c`.
pub fn is_int(x: &Laurent, c: i64) -> bool {
    x.is_constant() && x.coeff(0) == BigInt::from(c)
}
