//! Quadratic forms up to the relation `psi ~ psi + X - eps X*`.
//!
//! A form is stored as any representative matrix. Equality of forms is
//! equality of canonical representatives, see [`q_canonical`].

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::{Laurent, Ring};
use crate::solve;
use crate::DEFAULT_DEGREE_BOUND;

/// Symmetry sign of a form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Eps {
    Plus,
    Minus,
}

impl Eps {
    pub fn from_sign(s: i64) -> Option<Eps> {
        match s {
            1 => Some(Eps::Plus),
            -1 => Some(Eps::Minus),
            _ => None,
        }
    }

    pub fn sign(self) -> i64 {
        match self {
            Eps::Plus => 1,
            Eps::Minus => -1,
        }
    }

    pub fn flip(self) -> Eps {
        match self {
            Eps::Plus => Eps::Minus,
            Eps::Minus => Eps::Plus,
        }
    }

    /// `eps * x`
    pub fn apply(self, x: &Laurent) -> Laurent {
        match self {
            Eps::Plus => x.clone(),
            Eps::Minus => -x,
        }
    }

    pub fn apply_matrix(self, m: &Matrix) -> Matrix {
        match self {
            Eps::Plus => m.clone(),
            Eps::Minus => -m,
        }
    }
}

/// An `eps`-quadratic form `(R^n, psi)`.
#[derive(Clone, Debug)]
pub struct QuadForm {
    eps: Eps,
    psi: Matrix,
}

impl PartialEq for QuadForm {
    fn eq(&self, other: &QuadForm) -> bool {
        self.eps == other.eps
            && self.psi.rows() == other.psi.rows()
            && q_equal(&self.psi, &other.psi, self.eps).unwrap_or(false)
    }
}

impl QuadForm {
    pub fn new(psi: Matrix, eps: Eps) -> Result<QuadForm> {
        if !psi.is_square() {
            return Err(Error::NonSquare(psi.rows(), psi.cols()));
        }
        Ok(QuadForm { eps, psi })
    }

    /// Rank-one form `(R, theta)`.
    pub fn rank_one(theta: Laurent, eps: Eps) -> QuadForm {
        QuadForm { eps, psi: Matrix::scalar(theta) }
    }

    pub fn empty(eps: Eps, ring: &Ring) -> QuadForm {
        QuadForm { eps, psi: Matrix::zeros(0, 0, ring) }
    }

    pub fn eps(&self) -> Eps {
        self.eps
    }

    pub fn psi(&self) -> &Matrix {
        &self.psi
    }

    pub fn rank(&self) -> usize {
        self.psi.rows()
    }

    pub fn ring(&self) -> &Ring {
        self.psi.ring()
    }

    pub fn canonical(&self) -> Matrix {
        q_canonical(&self.psi, self.eps).expect("square by construction")
    }

    /// The symmetrization `lambda = psi + eps psi*`.
    pub fn lambda(&self) -> Matrix {
        &self.psi + &self.eps.apply_matrix(&self.psi.conj_transpose())
    }

    pub fn negate(&self) -> QuadForm {
        QuadForm { eps: self.eps, psi: -&self.psi }
    }

    /// The symmetrization has a trivial-unit determinant.
    pub fn is_nonsingular(&self) -> bool {
        self.lambda().det().is_ok_and(|d| d.monomial_inverse().is_some())
    }
}

/// Reduce a diagonal entry modulo the image of `x -> x - eps x*`.
fn reduce_diagonal(x: &Laurent, eps: Eps) -> Laurent {
    let ring = x.ring().clone();
    let mut terms: Vec<(i64, BigInt)> = Vec::new();
    for (k, c) in x.terms() {
        if k < 0 {
            let c = match eps {
                Eps::Plus => c.clone(),
                Eps::Minus => -c,
            };
            terms.push((-k, c));
        } else {
            terms.push((k, c.clone()));
        }
    }
    let folded = Laurent::from_terms(&ring, terms);
    if eps == Eps::Plus {
        return folded;
    }
    // For eps = -1 the constant term only survives modulo 2 (and not at all
    // over Z/m with m odd, where 2 is invertible).
    let c0 = folded.coeff(0);
    let reduced = match ring.modulus() {
        Some(m) if m.is_odd() => BigInt::from(0),
        _ => c0.mod_floor(&BigInt::from(2)),
    };
    let fix = Laurent::term(&ring, reduced - c0, 0);
    &folded + &fix
}

/// Canonical representative of the class of `psi` in `Q_eps`.
///
/// The strictly lower triangle is folded into the upper one by
/// `upper(i, j) <- psi[i][j] + eps * involute(psi[j][i])`, and each diagonal
/// entry is reduced: for `eps = +1` exponent `-n` folds onto `+n`; for
/// `eps = -1` it folds with a sign change and the constant term is taken mod 2.
pub fn q_canonical(psi: &Matrix, eps: Eps) -> Result<Matrix> {
    if !psi.is_square() {
        return Err(Error::NonSquare(psi.rows(), psi.cols()));
    }
    let n = psi.rows();
    Ok(Matrix::from_fn(n, n, psi.ring(), |i, j| {
        if i == j {
            reduce_diagonal(psi.get(i, i), eps)
        } else if i < j {
            psi.get(i, j) + &eps.apply(&psi.get(j, i).involute())
        } else {
            Laurent::zero(psi.ring())
        }
    }))
}

pub fn q_equal(a: &Matrix, b: &Matrix, eps: Eps) -> Result<bool> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::DimensionMismatch("q_equal"));
    }
    Ok(q_canonical(a, eps)? == q_canonical(b, eps)?)
}

/// `psi` represents zero in `Q_eps`.
pub fn q_is_zero(psi: &Matrix, eps: Eps) -> bool {
    q_canonical(psi, eps).is_ok_and(|c| c.is_zero())
}

/// Find `X` with `diff = X - eps X*`, certifying that `diff` is zero in `Q_eps`.
///
/// Independent of [`q_canonical`]: the unknown entries of `X` are solved for
/// directly with the bounded coefficient search.
pub fn q_difference_witness(diff: &Matrix, eps: Eps, degree_bound: u32) -> Result<Option<Matrix>> {
    if !diff.is_square() {
        return Err(Error::NonSquare(diff.rows(), diff.cols()));
    }
    if !diff.ring().is_integral() {
        return Err(Error::UnsupportedRing("difference witness"));
    }
    let n = diff.rows();
    let ring = diff.ring();
    // X -> X - eps X* is Z-linear in the coefficients of X, so expand every
    // entry over the exponent window and solve one integer system.
    let b = if diff.is_integer() { 0 } else { degree_bound as i64 };
    let width = (2 * b + 1) as usize;
    let unknowns = n * n * width;
    let dmin = -b.max(diff.degree_span());
    let dmax = -dmin;
    let span = (dmax - dmin + 1) as usize;
    let eqs = n * n * span;
    let mut a = alloc::vec![alloc::vec![BigInt::from(0); unknowns]; eqs];
    let mut rhs = alloc::vec![BigInt::from(0); eqs];
    let var = |i: usize, j: usize, e: i64| (i * n + j) * width + (e + b) as usize;
    let eq = |i: usize, j: usize, d: i64| (i * n + j) * span + (d - dmin) as usize;
    for i in 0..n {
        for j in 0..n {
            for e in -b..=b {
                // X[i][j] contributes +t^e at (i, j).
                a[eq(i, j, e)][var(i, j, e)] += 1;
                // -eps conj(X[j][i]) contributes at (i, j) with exponent -e.
                a[eq(i, j, -e)][var(j, i, e)] -= eps.sign();
            }
            for (d, c) in diff.get(i, j).terms() {
                if d < dmin || d > dmax {
                    return Ok(None);
                }
                rhs[eq(i, j, d)] = c.clone();
            }
        }
    }
    // Integer system a * y = rhs.
    let smith = crate::snf::Smith::compute(&a, unknowns);
    let Some(y) = smith.solve(&rhs) else { return Ok(None) };
    Ok(Some(Matrix::from_fn(n, n, ring, |i, j| {
        Laurent::from_terms(ring, (-b..=b).map(|e| (e, y[var(i, j, e)].clone())))
    })))
}

pub fn symmetrize(form: &QuadForm) -> Matrix {
    form.lambda()
}

/// The standard hyperbolic form on `R^r + (R^r)*` with `psi = [[0, I], [0, 0]]`.
pub fn hyperbolic(r: usize, eps: Eps) -> QuadForm {
    let ring = Ring::integral();
    let mut psi = Matrix::zeros(2 * r, 2 * r, &ring);
    for i in 0..r {
        psi.set(i, r + i, Laurent::one(&ring));
    }
    QuadForm { eps, psi }
}

/// `h: v -> w` is an isometry: `h* psi_w h = psi_v` in `Q_eps` and `det h = +-t^k`.
pub fn check_isometry(h: &Matrix, v: &QuadForm, w: &QuadForm) -> Result<bool> {
    if v.eps != w.eps {
        return Err(Error::MixedEps);
    }
    if h.rows() != w.rank() || h.cols() != v.rank() {
        return Err(Error::DimensionMismatch("check_isometry"));
    }
    if !h.is_square() {
        return Ok(false);
    }
    let pulled = &(&h.conj_transpose() * &w.psi) * h;
    Ok(q_equal(&pulled, &v.psi, v.eps)? && h.det()?.is_trivial_unit())
}

/// The form `j* psi j` induced along `j`.
pub fn restrict_form(form: &QuadForm, j: &Matrix) -> Result<QuadForm> {
    if j.rows() != form.rank() {
        return Err(Error::DimensionMismatch("restrict_form"));
    }
    QuadForm::new(&(&j.conj_transpose() * &form.psi) * j, form.eps)
}

/// A summand `incl: L -> M` on which the form vanishes.
#[derive(Clone, Debug)]
pub struct Sublagrangian {
    pub ambient: QuadForm,
    pub incl: Matrix,
    pub summand_witness: Option<Matrix>,
}

/// Per-condition outcome of [`check_lagrangian`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LagrangianCheck {
    /// `j* psi j = 0` in `Q_eps`.
    pub isotropic: bool,
    /// `rank L = rank M / 2`.
    pub half_rank: bool,
    /// `[j | witness]` has a trivial-unit determinant.
    pub summand: bool,
    /// `j* lambda witness = I`.
    pub dual_pairing: bool,
}

impl LagrangianCheck {
    pub fn holds(&self) -> bool {
        self.isotropic && self.half_rank && self.summand && self.dual_pairing
    }
}

/// Only condition (a): the inclusion is isotropic.
pub fn is_sublagrangian(sub: &Sublagrangian) -> Result<bool> {
    let r = restrict_form(&sub.ambient, &sub.incl)?;
    Ok(q_is_zero(r.psi(), r.eps()))
}

pub fn check_lagrangian(sub: &Sublagrangian, witness: &Matrix) -> Result<LagrangianCheck> {
    let m = sub.ambient.rank();
    let j = &sub.incl;
    if j.rows() != m || witness.rows() != m || witness.cols() != j.cols() {
        return Err(Error::DimensionMismatch("check_lagrangian"));
    }
    let isotropic = is_sublagrangian(sub)?;
    let half_rank = 2 * j.cols() == m;
    let summand = half_rank && Matrix::hstack(&[j, witness]).det()?.is_trivial_unit();
    let pairing = &(&j.conj_transpose() * &sub.ambient.lambda()) * witness;
    let dual_pairing = pairing.is_identity();
    Ok(LagrangianCheck { isotropic, half_rank, summand, dual_pairing })
}

/// How [`orthogonal_complement`] should find or accept the complement.
#[derive(Clone, Debug)]
pub enum ComplementMode {
    /// Integer kernel via the Smith normal form. Needs constant entries.
    Exact,
    /// Bounded-degree kernel search over the Laurent ring.
    Bounded(u32),
    /// Verify a supplied complement.
    Witness(Matrix),
}

/// Columns generating `{m : lambda(m, j v) = 0 for all v}`.
pub fn orthogonal_complement(form: &QuadForm, j: &Matrix, mode: &ComplementMode) -> Result<Matrix> {
    if j.rows() != form.rank() {
        return Err(Error::DimensionMismatch("orthogonal_complement"));
    }
    let pairing = &j.conj_transpose() * &form.lambda();
    match mode {
        ComplementMode::Exact => crate::snf::integer_kernel(&pairing),
        ComplementMode::Bounded(bound) => {
            let c = solve::right_kernel(&pairing, *bound)?.ok_or(Error::NoComplementFound)?;
            if c.cols() > 0 && !is_split_injection(&c, *bound)? {
                return Err(Error::NoComplementFound);
            }
            Ok(c)
        }
        ComplementMode::Witness(c) => {
            if c.rows() != form.rank() {
                return Err(Error::DimensionMismatch("complement witness"));
            }
            if !(&pairing * c).is_zero() {
                return Err(Error::WitnessRejected("not orthogonal"));
            }
            let expected = form.rank() - pairing.rank()?;
            if c.cols() != expected || c.rank()? != expected {
                return Err(Error::WitnessRejected("rank does not match the complement"));
            }
            if expected > 0 && !is_split_injection(c, DEFAULT_DEGREE_BOUND)? {
                return Err(Error::WitnessRejected("not a direct summand"));
            }
            Ok(c.clone())
        }
    }
}

/// `j` has a left inverse, found exactly over `Z` or within the bound.
pub fn is_split_injection(j: &Matrix, degree_bound: u32) -> Result<bool> {
    Ok(left_inverse(j, degree_bound)?.is_some())
}

pub fn left_inverse(j: &Matrix, degree_bound: u32) -> Result<Option<Matrix>> {
    let id = Matrix::identity(j.cols(), j.ring());
    solve::solve_left(j, &id, degree_bound)
}

pub fn direct_sum(forms: &[&QuadForm]) -> Result<QuadForm> {
    let first = forms.first().ok_or(Error::BadParams("direct sum of no forms"))?;
    if forms.iter().any(|f| f.eps != first.eps) {
        return Err(Error::MixedEps);
    }
    let parts: Vec<&Matrix> = forms.iter().map(|f| &f.psi).collect();
    Ok(QuadForm { eps: first.eps, psi: Matrix::block_diag(&parts) })
}

/// Drop every coordinate whose row and column vanish both in the canonical
/// representative and in the symmetrization.
pub fn zero_stable_strip(form: &QuadForm) -> QuadForm {
    let c = form.canonical();
    let l = form.lambda();
    let n = form.rank();
    let dead = |i: usize| (0..n).all(|k| c.get(i, k).is_zero() && c.get(k, i).is_zero() && l.get(i, k).is_zero() && l.get(k, i).is_zero());
    let keep: Vec<usize> = (0..n).filter(|&i| !dead(i)).collect();
    let psi = Matrix::from_fn(keep.len(), keep.len(), form.ring(), |i, j| form.psi.get(keep[i], keep[j]).clone());
    QuadForm { eps: form.eps, psi }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_folds_lower_triangle() {
        let h = Matrix::from_ints(&[&[0, 1], &[0, 0]]);
        assert_eq!(q_canonical(&h, Eps::Plus).unwrap(), h);
        let transposed = Matrix::from_ints(&[&[0, 0], &[1, 0]]);
        assert!(q_equal(&h, &transposed, Eps::Plus).unwrap());
        let minus = Matrix::from_ints(&[&[0, 0], &[-1, 0]]);
        assert!(q_equal(&h, &minus, Eps::Minus).unwrap());
        assert!(!q_equal(&Matrix::from_ints(&[&[1]]), &Matrix::from_ints(&[&[2]]), Eps::Plus).unwrap());
    }

    #[test]
    fn minus_diagonal_mod_two() {
        assert!(q_is_zero(&Matrix::from_ints(&[&[4]]), Eps::Minus));
        assert!(!q_is_zero(&Matrix::from_ints(&[&[3]]), Eps::Minus));
        let x = Matrix::scalar(Laurent::t(2) + Laurent::t(-2));
        assert!(q_is_zero(&x, Eps::Minus));
        assert!(!q_is_zero(&x, Eps::Plus));
    }

    #[test]
    fn symmetrizations() {
        assert_eq!(hyperbolic(1, Eps::Plus).lambda(), Matrix::from_ints(&[&[0, 1], &[1, 0]]));
        assert_eq!(hyperbolic(1, Eps::Minus).lambda(), Matrix::from_ints(&[&[0, 1], &[-1, 0]]));
        assert!(hyperbolic(2, Eps::Plus).lambda().det().unwrap().is_trivial_unit());
        assert_eq!(hyperbolic(0, Eps::Plus).rank(), 0);
    }

    #[test]
    fn restriction_to_a_vector() {
        let j = Matrix::from_ints(&[&[3], &[5]]);
        let v = restrict_form(&hyperbolic(1, Eps::Plus), &j).unwrap();
        assert_eq!(v.psi(), &Matrix::from_ints(&[&[15]]));
    }

    #[test]
    fn worked_isometry() {
        let union = QuadForm::new(Matrix::from_ints(&[&[15, 0], &[-19, 6]]), Eps::Plus).unwrap();
        let h = Matrix::from_ints(&[&[3, -2], &[5, -3]]);
        assert!(check_isometry(&h, &union, &hyperbolic(1, Eps::Plus)).unwrap());
        let bad = Matrix::from_ints(&[&[3, -2], &[5, -2]]);
        assert!(!check_isometry(&bad, &union, &hyperbolic(1, Eps::Plus)).unwrap());
    }

    #[test]
    fn complements() {
        let h = hyperbolic(1, Eps::Plus);
        let j = Matrix::from_ints(&[&[3], &[5]]);
        let c = orthogonal_complement(&h, &j, &ComplementMode::Exact).unwrap();
        let (x, y) = (c.get(0, 0).coeff(0), c.get(1, 0).coeff(0));
        assert!((x == BigInt::from(-3) && y == BigInt::from(5)) || (x == BigInt::from(3) && y == BigInt::from(-5)));
        let first = Matrix::from_ints(&[&[1], &[0]]);
        let c = orthogonal_complement(&h, &first, &ComplementMode::Exact).unwrap();
        assert_eq!(c.get(1, 0), &Laurent::int(0));
        let w = Matrix::from_ints(&[&[-3], &[5]]);
        assert!(orthogonal_complement(&h, &j, &ComplementMode::Witness(w)).is_ok());
        let bad = Matrix::from_ints(&[&[-6], &[10]]);
        assert!(matches!(
            orthogonal_complement(&h, &j, &ComplementMode::Witness(bad)),
            Err(Error::WitnessRejected(_))
        ));
    }

    #[test]
    fn strip_zero_coordinates() {
        let v = QuadForm::rank_one(Laurent::int(7), Eps::Plus);
        let z = QuadForm::new(Matrix::zeros(2, 2, &Ring::integral()), Eps::Plus).unwrap();
        let s = zero_stable_strip(&direct_sum(&[&v, &z]).unwrap());
        assert_eq!(s, v);
        let h = hyperbolic(1, Eps::Plus);
        assert_eq!(zero_stable_strip(&h).rank(), 2);
        let z3 = QuadForm::new(Matrix::zeros(3, 3, &Ring::integral()), Eps::Plus).unwrap();
        assert_eq!(zero_stable_strip(&z3).rank(), 0);
    }

    #[test]
    fn lagrangian_certificates() {
        let h = hyperbolic(1, Eps::Plus);
        let sub = Sublagrangian { ambient: h, incl: Matrix::from_ints(&[&[1], &[0]]), summand_witness: None };
        let check = check_lagrangian(&sub, &Matrix::from_ints(&[&[0], &[1]])).unwrap();
        assert!(check.holds());
    }
}
