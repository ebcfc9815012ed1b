//! Smith normal form over the integers, with the integer linear algebra built
//! on it: particular solutions of `A y = b` and saturated kernels.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::matrix::Matrix;

type Rows = Vec<Vec<BigInt>>;

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal, each diagonal
/// entry dividing the next. The first `rank` diagonal entries are nonzero.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: Rows,
    pub d: Rows,
    pub v: Rows,
    pub rank: usize,
    rows: usize,
    cols: usize,
}

fn identity(n: usize) -> Rows {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

fn swap_cols(m: &mut Rows, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// `row[dst] -= q * row[src]`
fn row_axpy(m: &mut Rows, dst: usize, src: usize, q: &BigInt) {
    let (s, d) = if src < dst {
        let (lo, hi) = m.split_at_mut(dst);
        (&lo[src], &mut hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(src);
        (&hi[0], &mut lo[dst])
    };
    for (x, y) in d.iter_mut().zip(s) {
        *x -= q * y;
    }
}

/// `col[dst] -= q * col[src]`
fn col_axpy(m: &mut Rows, dst: usize, src: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let y = row[src].clone();
        row[dst] -= q * y;
    }
}

impl Smith {
    pub fn compute(a: &[Vec<BigInt>], cols: usize) -> Smith {
        let m = a.len();
        let n = a.first().map_or(cols, |r| r.len());
        let mut d: Rows = a.to_vec();
        let mut u = identity(m);
        let mut v = identity(n);
        let mut t = 0;
        while t < m.min(n) {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if !d[i][j].is_zero() && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            d.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut d, t, pj);
            swap_cols(&mut v, t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..m {
                    if !d[i][t].is_zero() {
                        let q = d[i][t].div_floor(&d[t][t]);
                        row_axpy(&mut d, i, t, &q);
                        row_axpy(&mut u, i, t, &q);
                        clean &= d[i][t].is_zero();
                    }
                }
                for j in t + 1..n {
                    if !d[t][j].is_zero() {
                        let q = d[t][j].div_floor(&d[t][t]);
                        col_axpy(&mut d, j, t, &q);
                        col_axpy(&mut v, j, t, &q);
                        clean &= d[t][j].is_zero();
                    }
                }
                if !clean {
                    // A remainder is smaller than the pivot: move it in and retry.
                    let mut best = (t, t);
                    for i in t + 1..m {
                        if !d[i][t].is_zero() && d[i][t].abs() < d[best.0][best.1].abs() {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..n {
                        if !d[t][j].is_zero() && d[t][j].abs() < d[best.0][best.1].abs() {
                            best = (t, j);
                        }
                    }
                    if best.0 != t {
                        d.swap(t, best.0);
                        u.swap(t, best.0);
                    }
                    if best.1 != t {
                        swap_cols(&mut d, t, best.1);
                        swap_cols(&mut v, t, best.1);
                    }
                    continue;
                }
                let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[i][j].is_multiple_of(&d[t][t])));
                match bad {
                    Some(i) => {
                        let minus_one = -BigInt::one();
                        row_axpy(&mut d, t, i, &minus_one);
                        row_axpy(&mut u, t, i, &minus_one);
                    }
                    None => break,
                }
            }
            if d[t][t].is_negative() {
                for x in d[t].iter_mut() {
                    *x = -&*x;
                }
                for x in u[t].iter_mut() {
                    *x = -&*x;
                }
            }
            t += 1;
        }
        Smith { u, d, v, rank: t, rows: m, cols: n }
    }

    /// Diagonal entries `d_0 | d_1 | ...`, nonzero ones first.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols)).map(|i| self.d[i][i].clone()).collect()
    }

    /// One integer solution of `A y = b`, if any.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let c: Vec<BigInt> = self.u.iter().map(|row| row.iter().zip(b).map(|(x, y)| x * y).sum()).collect();
        let mut z = vec![BigInt::zero(); self.cols];
        for i in 0..self.rows {
            if i < self.rank {
                let (q, r) = c[i].div_rem(&self.d[i][i]);
                if !r.is_zero() {
                    return None;
                }
                z[i] = q;
            } else if !c[i].is_zero() {
                return None;
            }
        }
        Some(self.v.iter().map(|row| row.iter().zip(&z).map(|(x, y)| x * y).sum()).collect())
    }

    /// Basis of the integer kernel of `A`, one vector per entry. The span is
    /// saturated because `V` is unimodular.
    pub fn kernel(&self) -> Vec<Vec<BigInt>> {
        (self.rank..self.cols).map(|j| self.v.iter().map(|row| row[j].clone()).collect()).collect()
    }
}

/// Smith normal form of an integer matrix as `(U, D, V)` with `U * M * V = D`.
pub fn smith_normal_form(m: &Matrix) -> Result<(Matrix, Matrix, Matrix)> {
    let a = m.to_int_rows()?;
    let s = Smith::compute(&a, m.cols());
    Ok((
        Matrix::from_int_rows(&s.u, m.rows()),
        Matrix::from_int_rows(&s.d, m.cols()),
        Matrix::from_int_rows(&s.v, m.cols()),
    ))
}

/// Saturated integer kernel `{x : M x = 0}` as the columns of a matrix.
pub fn integer_kernel(m: &Matrix) -> Result<Matrix> {
    let a = m.to_int_rows()?;
    let s = Smith::compute(&a, m.cols());
    let basis = s.kernel();
    let mut out = Matrix::zeros(m.cols(), basis.len(), m.ring());
    for (j, vec) in basis.iter().enumerate() {
        for (i, x) in vec.iter().enumerate() {
            out.set(i, j, crate::ring::Laurent::from_bigint(x.clone()));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> Rows {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn coprime_row() {
        let s = Smith::compute(&ints(&[&[3, 5]]), 2);
        assert_eq!(s.diagonal(), vec![BigInt::from(1)]);
        assert_eq!(s.rank, 1);
    }

    #[test]
    fn divisibility_normalization() {
        let s = Smith::compute(&ints(&[&[2, 0], &[0, 3]]), 2);
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn zero_matrix() {
        let s = Smith::compute(&ints(&[&[0, 0], &[0, 0]]), 2);
        assert_eq!(s.rank, 0);
        assert_eq!(s.kernel().len(), 2);
    }

    #[test]
    fn solves_and_rejects() {
        let s = Smith::compute(&ints(&[&[6]]), 1);
        assert_eq!(s.solve(&[BigInt::from(12)]), Some(vec![BigInt::from(2)]));
        let s = Smith::compute(&ints(&[&[2]]), 1);
        assert_eq!(s.solve(&[BigInt::from(1)]), None);
    }
}
