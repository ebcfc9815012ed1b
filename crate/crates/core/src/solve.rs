//! Linear systems over `Z[t, 1/t]` by bounded-degree coefficient expansion.
//!
//! An unknown Laurent entry with exponents in a window `[lo, hi]` is a vector
//! of integer coefficients, and a matrix equation becomes one integer system
//! solved exactly through the Smith normal form. When all data is constant
//! the window collapses to `{0}`, which is exact over `Z`: specialising
//! `t -> 1` turns any Laurent solution into an integer one.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::{Laurent, Ring};
use crate::snf::Smith;

/// Integer system for the unknown row vector `x` in `x * m`, with `x`'s
/// entries supported in `[lo, hi]`. Equations are indexed by output column
/// and exponent.
struct CoefficientSystem {
    a: Vec<Vec<BigInt>>,
    unknowns: usize,
    lo: i64,
    width: usize,
    dmin: i64,
    dmax: i64,
    out_cols: usize,
}

impl CoefficientSystem {
    fn new(m: &Matrix, lo: i64, hi: i64, extra: Option<(i64, i64)>) -> CoefficientSystem {
        let width = (hi - lo + 1) as usize;
        let unknowns = m.rows() * width;
        let mut mmin = i64::MAX;
        let mut mmax = i64::MIN;
        for x in m.entries() {
            if let (Some(a), Some(b)) = (x.min_exp(), x.max_exp()) {
                mmin = mmin.min(a);
                mmax = mmax.max(b);
            }
        }
        let (mut dmin, mut dmax) = if mmin <= mmax { (lo + mmin, hi + mmax) } else { (0, -1) };
        if let Some((a, b)) = extra {
            if a <= b {
                dmin = dmin.min(a);
                dmax = dmax.max(b);
            }
        }
        let span = if dmin <= dmax { (dmax - dmin + 1) as usize } else { 0 };
        let eqs = m.cols() * span;
        let mut a = alloc::vec![alloc::vec![BigInt::zero(); unknowns]; eqs];
        for c in 0..m.cols() {
            for k in 0..m.rows() {
                for (me, mc) in m.get(k, c).terms() {
                    for e in lo..=hi {
                        let d = e + me;
                        let row = c * span + (d - dmin) as usize;
                        a[row][k * width + (e - lo) as usize] += mc;
                    }
                }
            }
        }
        CoefficientSystem { a, unknowns, lo, width, dmin, dmax, out_cols: m.cols() }
    }

    fn rhs(&self, target_row: &[Laurent]) -> Option<Vec<BigInt>> {
        let span = if self.dmin <= self.dmax { (self.dmax - self.dmin + 1) as usize } else { 0 };
        let mut b = alloc::vec![BigInt::zero(); self.out_cols * span];
        for (c, x) in target_row.iter().enumerate() {
            for (d, v) in x.terms() {
                if d < self.dmin || d > self.dmax {
                    return None;
                }
                b[c * span + (d - self.dmin) as usize] = v.clone();
            }
        }
        Some(b)
    }

    fn decode(&self, y: &[BigInt], ring: &Ring) -> Vec<Laurent> {
        let n = self.unknowns / self.width.max(1);
        (0..n)
            .map(|k| {
                Laurent::from_terms(
                    ring,
                    (0..self.width).map(|w| (self.lo + w as i64, y[k * self.width + w].clone())),
                )
            })
            .collect()
    }
}

fn exp_range(m: &Matrix) -> Option<(i64, i64)> {
    let lo = m.entries().filter_map(Laurent::min_exp).min()?;
    let hi = m.entries().filter_map(Laurent::max_exp).max()?;
    Some((lo, hi))
}

fn require_integral(m: &Matrix) -> Result<()> {
    if m.ring().is_integral() {
        Ok(())
    } else {
        Err(Error::UnsupportedRing("linear solving"))
    }
}

/// Solve `X * M = T` for `X`.
///
/// Over `Z` (all entries constant) this is exact. Otherwise the entries of
/// `X` are searched with exponents in `[-degree_bound, degree_bound]`, and
/// `None` means no solution exists inside that window.
pub fn solve_left(m: &Matrix, target: &Matrix, degree_bound: u32) -> Result<Option<Matrix>> {
    if m.cols() != target.cols() {
        return Err(Error::DimensionMismatch("solve_left"));
    }
    require_integral(m)?;
    require_integral(target)?;
    let b = if m.is_integer() && target.is_integer() { 0 } else { degree_bound as i64 };
    let sys = CoefficientSystem::new(m, -b, b, exp_range(target));
    let smith = Smith::compute(&sys.a, sys.unknowns);
    let mut out = Matrix::zeros(target.rows(), m.rows(), m.ring());
    for i in 0..target.rows() {
        let row: Vec<Laurent> = (0..target.cols()).map(|c| target.get(i, c).clone()).collect();
        let Some(rhs) = sys.rhs(&row) else { return Ok(None) };
        let Some(y) = smith.solve(&rhs) else { return Ok(None) };
        for (k, x) in sys.decode(&y, m.ring()).into_iter().enumerate() {
            out.set(i, k, x);
        }
    }
    Ok(Some(out))
}

/// Alias of [`solve_left`]: solve `x * M = target`.
pub fn solve_linear(m: &Matrix, target: &Matrix, degree_bound: u32) -> Result<Option<Matrix>> {
    solve_left(m, target, degree_bound)
}

/// Solve `M * X = T` for `X`, with the same window semantics as [`solve_left`].
pub fn solve_right(m: &Matrix, target: &Matrix, degree_bound: u32) -> Result<Option<Matrix>> {
    if m.rows() != target.rows() {
        return Err(Error::DimensionMismatch("solve_right"));
    }
    Ok(solve_left(&m.conj_transpose(), &target.conj_transpose(), degree_bound)?.map(|x| x.conj_transpose()))
}

/// Integer basis of `{x : x * M = 0}` with entries of `x` supported in `[lo, hi]`.
fn left_kernel_window(m: &Matrix, lo: i64, hi: i64) -> Vec<Vec<Laurent>> {
    let sys = CoefficientSystem::new(m, lo, hi, None);
    let smith = Smith::compute(&sys.a, sys.unknowns);
    smith.kernel().iter().map(|y| sys.decode(y, m.ring())).collect()
}

/// Columns spanning a free summand of `{c : M * c = 0}` of the expected rank,
/// found by bounded search. Returns `None` when the search fails.
///
/// Over `Z` the integer kernel is exact and saturated. Over the Laurent ring a
/// rank-one kernel is found exactly as the element of least exponent span;
/// higher ranks are assembled greedily and must be certified by the caller.
pub fn right_kernel(m: &Matrix, degree_bound: u32) -> Result<Option<Matrix>> {
    require_integral(m)?;
    let n = m.cols();
    let expected = n - m.rank()?;
    if expected == 0 {
        return Ok(Some(Matrix::zeros(n, 0, m.ring())));
    }
    if m.is_integer() {
        return Ok(Some(crate::snf::integer_kernel(m)?));
    }
    let mc = m.conj_transpose();
    let as_column = |x: &[Laurent]| Matrix::from_fn(n, 1, m.ring(), |i, _| x[i].involute());
    if expected == 1 {
        for span in 0..=(2 * degree_bound as i64) {
            let basis = left_kernel_window(&mc, -span, 0);
            if let Some(x) = basis.first() {
                return Ok(Some(as_column(x)));
            }
        }
        return Ok(None);
    }
    let b = degree_bound as i64;
    let mut basis = left_kernel_window(&mc, -b, b);
    basis.sort_by_key(|x| {
        let lo = x.iter().filter_map(Laurent::min_exp).min().unwrap_or(0);
        let hi = x.iter().filter_map(Laurent::max_exp).max().unwrap_or(0);
        let weight: BigInt = x.iter().flat_map(|e| e.terms().map(|(_, c)| BigInt::from(c.magnitude().clone()))).sum();
        (hi - lo, weight)
    });
    let mut picked: Vec<Matrix> = Vec::new();
    for x in &basis {
        let col = as_column(x);
        let mut trial: Vec<&Matrix> = picked.iter().collect();
        trial.push(&col);
        if Matrix::hstack(&trial).rank()? == picked.len() + 1 {
            picked.push(col);
            if picked.len() == expected {
                let refs: Vec<&Matrix> = picked.iter().collect();
                return Ok(Some(Matrix::hstack(&refs)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn integer_solutions() {
        let six = Matrix::from_ints(&[&[6]]);
        let x = solve_left(&six, &Matrix::from_ints(&[&[12]]), 8).unwrap().unwrap();
        assert_eq!(x, Matrix::from_ints(&[&[2]]));
        let two = Matrix::from_ints(&[&[2]]);
        assert_eq!(solve_left(&two, &Matrix::from_ints(&[&[1]]), 8).unwrap(), None);
    }

    #[test]
    fn laurent_solution() {
        let m = Matrix::scalar(Laurent::t(1) - Laurent::t(-1));
        let target = Matrix::scalar(Laurent::t(2) - Laurent::t(-2));
        let x = solve_left(&m, &target, 2).unwrap().unwrap();
        assert_eq!(x, Matrix::scalar(Laurent::t(1) + Laurent::t(-1)));
    }

    #[test]
    fn window_too_small() {
        let m = Matrix::scalar(Laurent::int(1) - Laurent::t(1));
        let target = Matrix::scalar(Laurent::int(1) - Laurent::t(5));
        assert_eq!(solve_left(&m, &target, 2).unwrap(), None);
        assert!(solve_left(&m, &target, 4).unwrap().is_some());
    }

    #[test]
    fn right_solve_and_kernel() {
        let m = Matrix::from_elems(vec![vec![Laurent::int(1) + Laurent::t(1), Laurent::int(1) + Laurent::mono(2, 1)]]);
        let k = right_kernel(&m, 4).unwrap().unwrap();
        assert!((&m * &k).is_zero());
        assert_eq!(k.cols(), 1);
        let x = solve_right(&m, &Matrix::scalar(Laurent::int(1)), 2).unwrap();
        assert!(x.is_some_and(|x| (&m * &x).get(0, 0).is_one()));
    }
}
