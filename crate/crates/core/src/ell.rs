//! Quasi-formations `(H(F); F, V)` at representative level: induced and
//! complement forms, the boundary maps, the elementary test, and the maps
//! `delta` (to boundary isomorphisms) and `kappa` (to forms, via the union).
//! Also a hyperbolicity test for the forms `kappa` produces.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::formations::StableIso;
use crate::forms::{self, check_isometry, hyperbolic, restrict_form, zero_stable_strip, ComplementMode, Eps, QuadForm};
use crate::glue::{self, PrimEmbedding};
use crate::matrix::Matrix;
use crate::ring::{Laurent, Ring};
use crate::solve;

/// `(H_eps(R^r); F, V)` with `F = R^r + 0` and `V` given by a `2r x r` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiFormation {
    pub eps: Eps,
    pub k_rank: usize,
    pub v: Matrix,
    /// `C` with `[V | C]` invertible, when known.
    pub complement_witness: Option<Matrix>,
}

impl QuasiFormation {
    pub fn new(v: Matrix, eps: Eps) -> Result<QuasiFormation> {
        if v.rows() != 2 * v.cols() {
            return Err(Error::DimensionMismatch("V must be 2r x r"));
        }
        Ok(QuasiFormation { eps, k_rank: v.cols(), v, complement_witness: None })
    }

    /// `(H(F); F, F*)`.
    pub fn trivial(r: usize, eps: Eps) -> QuasiFormation {
        let ring = Ring::integral();
        let v = Matrix::vstack(&[&Matrix::zeros(r, r, &ring), &Matrix::identity(r, &ring)]);
        let c = Matrix::vstack(&[&Matrix::identity(r, &ring), &Matrix::zeros(r, r, &ring)]);
        QuasiFormation { eps, k_rank: r, v, complement_witness: Some(c) }
    }

    pub fn ambient(&self) -> QuadForm {
        hyperbolic(self.k_rank, self.eps)
    }

    /// `V` is a half-rank direct summand: certified by the witness if one is
    /// stored, otherwise by a left inverse.
    pub fn is_valid(&self, degree_bound: u32) -> Result<bool> {
        if self.v.rows() != 2 * self.k_rank || self.v.cols() != self.k_rank {
            return Ok(false);
        }
        match &self.complement_witness {
            Some(c) => Ok(c.rows() == self.v.rows() && c.cols() == self.k_rank && Matrix::hstack(&[&self.v, c]).det()?.is_trivial_unit()),
            None => forms::is_split_injection(&self.v, degree_bound),
        }
    }

    /// Direct sum with the trivial formation of rank `k`, keeping the
    /// coordinate order `(F, F_k, F*, F_k*)`.
    pub fn stabilize(&self, k: usize) -> QuasiFormation {
        let r = self.k_rank;
        let extra = QuasiFormation::trivial(k, self.eps);
        let interleave = |a: &Matrix, b: &Matrix| {
            let top = Matrix::block_diag(&[&a.block(0, r, 0, a.cols()), &b.block(0, k, 0, b.cols())]);
            let bottom = Matrix::block_diag(&[&a.block(r, 2 * r, 0, a.cols()), &b.block(k, 2 * k, 0, b.cols())]);
            Matrix::vstack(&[&top, &bottom])
        };
        let v = interleave(&self.v, &extra.v);
        let complement_witness = self.complement_witness.as_ref().map(|c| interleave(c, extra.complement_witness.as_ref().unwrap()));
        QuasiFormation { eps: self.eps, k_rank: r + k, v, complement_witness }
    }
}

/// `restrict_form(H_eps(R^r), V)`.
pub fn induced_form(x: &QuasiFormation) -> Result<QuadForm> {
    restrict_form(&x.ambient(), &x.v)
}

/// Columns spanning `V^perp`. Over `Z` each column is signed so that its last
/// nonzero entry is positive.
pub fn complement(x: &QuasiFormation, mode: &ComplementMode) -> Result<Matrix> {
    let c = forms::orthogonal_complement(&x.ambient(), &x.v, mode)?;
    if !c.is_integer() {
        return Ok(c);
    }
    let mut c = c;
    for col in 0..c.cols() {
        let last = (0..c.rows()).rev().map(|i| c.get(i, col).coeff(0)).find(|v| !v.is_zero());
        if last.is_some_and(|v| v.is_negative()) {
            for i in 0..c.rows() {
                let e = -c.get(i, col);
                c.set(i, col, e);
            }
        }
    }
    Ok(c)
}

pub fn complement_form(x: &QuasiFormation, mode: &ComplementMode) -> Result<QuadForm> {
    restrict_form(&x.ambient(), &complement(x, mode)?)
}

/// Representative of `[v]_0`.
pub fn boundary_minus(x: &QuasiFormation) -> Result<QuadForm> {
    Ok(zero_stable_strip(&induced_form(x)?))
}

/// Representative of `-[v^perp]_0`.
pub fn boundary_plus(x: &QuasiFormation, mode: &ComplementMode) -> Result<QuadForm> {
    Ok(zero_stable_strip(&complement_form(x, mode)?).negate())
}

/// `det [F | V]` is a trivial unit, i.e. `F + V -> H(F)` is a simple isomorphism.
pub fn is_elementary_rep(x: &QuasiFormation) -> Result<bool> {
    let r = x.k_rank;
    let ring = x.v.ring().clone();
    let f = Matrix::vstack(&[&Matrix::identity(r, &ring), &Matrix::zeros(r, r, &ring)]);
    Ok(Matrix::hstack(&[&f, &x.v]).det()?.is_trivial_unit())
}

/// The embedding `v -> H(R^r) <- v^perp` behind `delta`.
pub fn embedding_of(x: &QuasiFormation, sigma: Option<Matrix>, mode: &ComplementMode) -> Result<PrimEmbedding> {
    let m = x.ambient();
    let jprime = complement(x, mode)?;
    Ok(PrimEmbedding { v: induced_form(x)?, vprime: restrict_form(&m, &jprime)?, m, j: x.v.clone(), jprime, sigma })
}

/// `delta(x) = f_j` for the inclusion of the induced form.
pub fn delta_of_quasiformation(x: &QuasiFormation, sigma: Option<Matrix>, mode: &ComplementMode, degree_bound: u32) -> Result<StableIso> {
    glue::f_from_embedding(&embedding_of(x, sigma, mode)?, degree_bound)
}

/// `kappa(f) = v cup_f -v'`.
pub fn kappa(f: &StableIso) -> Result<QuadForm> {
    glue::union(&f.src, &f.dst, f)
}

/// How [`hyperbolicity_test`] decides.
#[derive(Clone, Debug)]
pub enum HyperbolicityMode {
    /// Over `Z`: exact obstructions, then a constructed witness.
    ZExact,
    /// Verify `u: form -> H`.
    Witness(Matrix),
    /// Over the Laurent ring: obstructions through the augmentation and a
    /// bounded search in rank 2.
    Bounded(u32),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Hyperbolicity {
    /// An isometry from the form to the standard hyperbolic form.
    Hyperbolic(Matrix),
    NotHyperbolic(String),
    Unknown,
}

impl Hyperbolicity {
    pub fn is_hyperbolic(&self) -> bool {
        matches!(self, Hyperbolicity::Hyperbolic(_))
    }

    pub fn is_not_hyperbolic(&self) -> bool {
        matches!(self, Hyperbolicity::NotHyperbolic(_))
    }
}

pub fn hyperbolicity_test(form: &QuadForm, mode: &HyperbolicityMode) -> Result<Hyperbolicity> {
    let lambda = form.lambda();
    let det = lambda.det()?;
    if det.is_zero() {
        return Err(Error::Singular);
    }
    if form.rank() % 2 == 1 {
        return Ok(Hyperbolicity::NotHyperbolic(String::from("odd rank")));
    }
    if !det.is_trivial_unit() {
        return Ok(Hyperbolicity::NotHyperbolic(format!("determinant {} is not a unit", det)));
    }
    let target = hyperbolic(form.rank() / 2, form.eps());
    match mode {
        HyperbolicityMode::Witness(u) => {
            if check_isometry(u, form, &target)? {
                Ok(Hyperbolicity::Hyperbolic(u.clone()))
            } else {
                Ok(Hyperbolicity::Unknown)
            }
        }
        HyperbolicityMode::ZExact => {
            if !form.psi().is_integer() {
                return Err(Error::NotInteger);
            }
            integer_test(form)
        }
        HyperbolicityMode::Bounded(bound) => {
            if form.psi().is_integer() {
                return integer_test(form);
            }
            let augmented = QuadForm::new(form.psi().augment(), form.eps())?;
            if let Hyperbolicity::NotHyperbolic(why) = integer_test(&augmented)? {
                return Ok(Hyperbolicity::NotHyperbolic(format!("after t -> 1: {}", why)));
            }
            if form.rank() == 2 {
                if let Some(u) = laurent_rank_two(form, *bound)? {
                    return Ok(Hyperbolicity::Hyperbolic(u));
                }
            }
            Ok(Hyperbolicity::Unknown)
        }
    }
}

/// Hyperbolicity of the even form with symmetrization `lambda` over `Z`.
/// An odd diagonal entry is an obstruction on its own.
pub fn hyperbolicity_test_symmetric(lambda: &Matrix) -> Result<Hyperbolicity> {
    if !lambda.is_square() || lambda.transpose() != *lambda {
        return Err(Error::BadParams("lambda must be symmetric"));
    }
    let rows = lambda.to_int_rows()?;
    if let Some(i) = (0..rows.len()).find(|&i| rows[i][i].is_odd()) {
        return Ok(Hyperbolicity::NotHyperbolic(format!("odd diagonal entry at {}", i)));
    }
    let n = rows.len();
    let psi = Matrix::from_fn(n, n, &Ring::integral(), |i, j| {
        Laurent::from_bigint(if i == j { &rows[i][i] / 2 } else if i < j { rows[i][j].clone() } else { BigInt::zero() })
    });
    hyperbolicity_test(&QuadForm::new(psi, Eps::Plus)?, &HyperbolicityMode::ZExact)
}

/// Signature of a symmetric integer matrix, by congruence diagonalisation.
pub fn signature(rows: &[Vec<BigInt>]) -> i64 {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut sig = 0i64;
    loop {
        let n = a.len();
        if n == 0 {
            return sig;
        }
        let pivot = match (0..n).find(|&i| !a[i][i].is_zero()) {
            Some(p) => p,
            None => {
                let Some((i, j)) = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero()) else {
                    return sig;
                };
                // e_i + e_j has value 2 a_ij != 0.
                let row_j = a[j].clone();
                for (x, y) in a[i].iter_mut().zip(&row_j) {
                    *x += y;
                }
                for row in a.iter_mut() {
                    let x = row[j].clone();
                    row[i] += x;
                }
                i
            }
        };
        let p = a[pivot][pivot].clone();
        sig += if p.is_positive() { 1 } else { -1 };
        // Clear the pivot row and column. The rest becomes |p| times the
        // Schur complement, which has the same signature.
        let sign = if p.is_positive() { BigInt::one() } else { -BigInt::one() };
        let keep: Vec<usize> = (0..n).filter(|&i| i != pivot).collect();
        let next = keep
            .iter()
            .map(|&i| keep.iter().map(|&j| (&p * &a[i][j] - &a[i][pivot] * &a[pivot][j]) * &sign).collect())
            .collect();
        a = next;
    }
}

fn ints(m: &Matrix) -> Result<Vec<Vec<BigInt>>> {
    m.to_int_rows()
}

fn col(v: &[BigInt]) -> Matrix {
    Matrix::column(v.iter().map(|x| Laurent::from_bigint(x.clone())).collect())
}

/// Value of the quadratic form at `x`: `x* psi x` as an integer.
fn q_value(psi: &[Vec<BigInt>], x: &[BigInt]) -> BigInt {
    let mut s = BigInt::zero();
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, xj) in x.iter().enumerate() {
            s += xi * &psi[i][j] * xj;
        }
    }
    s
}

fn isotropic(psi: &[Vec<BigInt>], x: &[BigInt], eps: Eps) -> bool {
    let q = q_value(psi, x);
    match eps {
        Eps::Plus => q.is_zero(),
        Eps::Minus => q.is_even(),
    }
}

fn primitive(x: &[BigInt]) -> bool {
    x.iter().fold(BigInt::zero(), |g, v| g.gcd(v)).is_one()
}

/// A primitive isotropic vector of the rank-`m` form `psi`: explicit in rank 2,
/// otherwise a search over coefficient boxes of growing radius.
fn find_isotropic(psi: &[Vec<BigInt>], eps: Eps) -> Option<Vec<BigInt>> {
    let m = psi.len();
    if m == 2 && eps == Eps::Plus {
        // a u^2 + b u v + c v^2 with b^2 - 4ac = 1.
        let a = &psi[0][0];
        let b = &psi[0][1] + &psi[1][0];
        if a.is_zero() {
            return Some(vec![BigInt::one(), BigInt::zero()]);
        }
        for root in [BigInt::one() - &b, -BigInt::one() - &b] {
            let den = BigInt::from(2) * a;
            let g = root.gcd(&den);
            if g.is_zero() {
                continue;
            }
            let x = vec![&root / &g, &den / &g];
            if isotropic(psi, &x, eps) {
                return Some(x);
            }
        }
        return None;
    }
    // Over Z/2 a {0, 1} box is enough; in the symmetric case grow the box.
    let (max_radius, budget) = match eps {
        Eps::Minus => (1i64, 1u64 << 20),
        Eps::Plus => (6i64, 2_000_000u64),
    };
    for radius in 1..=max_radius {
        let lo = if eps == Eps::Minus { 0 } else { -radius };
        let width = (radius - lo + 1) as u64;
        let total = width.checked_pow(m as u32)?;
        if total > budget {
            return None;
        }
        let mut x = vec![BigInt::from(lo); m];
        let mut counter = vec![0u64; m];
        for _ in 0..total {
            let on_shell = x.iter().any(|v| v.abs() == BigInt::from(radius));
            if on_shell && primitive(&x) && isotropic(psi, &x, eps) {
                return Some(x);
            }
            for k in 0..m {
                counter[k] += 1;
                if counter[k] < width {
                    x[k] += 1;
                    break;
                }
                counter[k] = 0;
                x[k] = BigInt::from(lo);
            }
        }
    }
    None
}

/// Over `Z` with `eps = -1`, the Arf invariant via counting zeros of the form mod 2.
fn arf_invariant(psi: &[Vec<BigInt>]) -> Option<bool> {
    let m = psi.len();
    if m > 20 {
        return None;
    }
    let mut zeros = 0u64;
    for mask in 0u64..(1 << m) {
        let x: Vec<BigInt> = (0..m).map(|i| BigInt::from((mask >> i) & 1)).collect();
        if q_value(psi, &x).is_even() {
            zeros += 1;
        }
    }
    Some(zeros != (1u64 << (m - 1)) + (1u64 << (m / 2 - 1)))
}

fn integer_test(form: &QuadForm) -> Result<Hyperbolicity> {
    let eps = form.eps();
    let lam = ints(&form.lambda())?;
    let psi = ints(form.psi())?;
    match eps {
        Eps::Plus => {
            if let Some(i) = (0..lam.len()).find(|&i| lam[i][i].is_odd()) {
                return Ok(Hyperbolicity::NotHyperbolic(format!("odd diagonal entry at {} in the symmetrization", i)));
            }
            let sig = signature(&lam);
            if sig != 0 {
                return Ok(Hyperbolicity::NotHyperbolic(format!("signature {}", sig)));
            }
        }
        Eps::Minus => {
            if arf_invariant(&psi) == Some(true) {
                return Ok(Hyperbolicity::NotHyperbolic(String::from("Arf invariant 1")));
            }
        }
    }
    Ok(match integer_witness(form)? {
        Some(u) => Hyperbolicity::Hyperbolic(u),
        None => Hyperbolicity::Unknown,
    })
}

/// Split off hyperbolic planes one at a time. The columns `x_i`, `y_i` of the
/// resulting basis satisfy `q(x_i) = q(y_i) = 0` and `lambda(x_i, y_j) = delta_ij`,
/// so the inverse of `[x | y]` maps the form onto `H`.
fn integer_witness(form: &QuadForm) -> Result<Option<Matrix>> {
    let n = form.rank();
    let eps = form.eps();
    let ring = Ring::integral();
    let lambda = form.lambda();
    let mut xs: Vec<Matrix> = Vec::new();
    let mut ys: Vec<Matrix> = Vec::new();
    let mut basis = Matrix::identity(n, &ring);
    while basis.cols() > 0 {
        let sub = restrict_form(form, &basis)?;
        let Some(xk) = find_isotropic(&ints(sub.psi())?, eps) else { return Ok(None) };
        let x = &basis * &col(&xk);
        let row = &(&x.transpose() * &lambda) * &basis;
        let Some(z) = solve::solve_right(&row, &Matrix::identity(1, &ring), 0)? else { return Ok(None) };
        let y = &basis * &z;
        // Make y isotropic: q(y - c x) = q(y) - c lambda(x, y) or its mod 2 analogue.
        let qy = restrict_form(form, &y)?.psi().get(0, 0).coeff(0);
        let c = match eps {
            Eps::Plus => qy,
            Eps::Minus => qy.mod_floor(&BigInt::from(2)),
        };
        let y = &y - &x.scale(&Laurent::from_bigint(c));
        // Project the rest of the basis off the plane.
        let pairing = Matrix::vstack(&[&(&x.transpose() * &lambda), &(&y.transpose() * &lambda)]);
        basis = if basis.cols() == 2 { Matrix::zeros(n, 0, &ring) } else { intersect_kernel(&pairing, &basis)? };
        xs.push(x);
        ys.push(y);
    }
    let mut parts: Vec<&Matrix> = xs.iter().collect();
    parts.extend(ys.iter());
    let p = Matrix::hstack(&parts);
    let u = p.inverse()?;
    let target = hyperbolic(n / 2, eps);
    Ok(check_isometry(&u, form, &target)?.then_some(u))
}

/// Columns of `basis` combined to span `{v in span(basis) : pairing v = 0}`.
fn intersect_kernel(pairing: &Matrix, basis: &Matrix) -> Result<Matrix> {
    let k = crate::snf::integer_kernel(&(pairing * basis))?;
    Ok(basis * &k)
}

fn laurent_rank_two(form: &QuadForm, bound: u32) -> Result<Option<Matrix>> {
    let ring = Ring::integral();
    let lambda = form.lambda();
    let target = hyperbolic(1, form.eps());
    let b = bound as i64;
    // Entries c0 + c1 t^k with small coefficients.
    let mut entries: Vec<Laurent> = (-2..=2).map(Laurent::int).collect();
    for k in (-b..=b).filter(|&k| k != 0) {
        for c0 in -2..=2 {
            for c1 in [-2, -1, 1, 2] {
                entries.push(Laurent::int(c0) + Laurent::mono(c1, k));
            }
        }
    }
    for e0 in &entries {
        for e1 in &entries {
            if e0.is_zero() && e1.is_zero() {
                continue;
            }
            let x = Matrix::column(vec![e0.clone(), e1.clone()]);
            if !forms::q_is_zero(restrict_form(form, &x)?.psi(), form.eps()) {
                continue;
            }
            let row = &x.conj_transpose() * &lambda;
            let Some(y) = solve::solve_right(&row, &Matrix::identity(1, &ring), bound)? else { continue };
            let qy = restrict_form(form, &y)?.psi().get(0, 0).clone();
            for c in [qy.clone(), qy.involute(), form.eps().apply(&qy)] {
                let y2 = &y - &(&x * &Matrix::scalar(c));
                let p = Matrix::hstack(&[&x, &y2]);
                if let Ok(u) = p.inverse() {
                    if check_isometry(&u, form, &target)? {
                        return Ok(Some(u));
                    }
                }
            }
        }
    }
    Ok(None)
}

