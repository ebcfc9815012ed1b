//! Split formations, boundaries of forms, and stable isomorphisms between
//! stabilised boundary formations.
//!
//! A [`StableIso`] is a triple `(alpha, beta, nu)` from
//! `d(V, theta) + (P, P*)` to `d(V', theta') + (P', P'*)`. Its defining
//! equations are checked directly, and the a, b, s components are read off
//! the top-left blocks of `alpha`, `beta^-1` and `alpha nu alpha*`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::forms::{self, check_isometry, q_equal, Eps, QuadForm};
use crate::matrix::Matrix;
use crate::ring::{normalize_up_to_trivial_unit, Laurent, Ring};
use crate::solve;
use crate::Verdict;

/// `(F, (gamma; delta)(G, theta))` with `theta` a `(-eps)`-quadratic form on `G`.
#[derive(Clone, Debug)]
pub struct SplitFormation {
    pub eps: Eps,
    pub gamma: Matrix,
    pub delta: Matrix,
    pub hessian: QuadForm,
    /// Complement of the lagrangian `(gamma; delta)` in `H_eps(F)`.
    pub witness: Option<Matrix>,
}

/// Outcome of [`SplitFormation::check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FormationCheck {
    pub hessian: bool,
    pub lagrangian: Option<forms::LagrangianCheck>,
}

impl SplitFormation {
    pub fn f_rank(&self) -> usize {
        self.gamma.rows()
    }

    pub fn g_rank(&self) -> usize {
        self.gamma.cols()
    }

    /// `(F, F*) = (F, (0; 1)(F*, 0))`.
    pub fn trivial(rank: usize, eps: Eps) -> SplitFormation {
        let ring = Ring::integral();
        SplitFormation {
            eps,
            gamma: Matrix::zeros(rank, rank, &ring),
            delta: Matrix::identity(rank, &ring),
            hessian: QuadForm::new(Matrix::zeros(rank, rank, &ring), eps.flip()).expect("square"),
            witness: Some(eps.apply_matrix(&Matrix::vstack(&[&Matrix::identity(rank, &ring), &Matrix::zeros(rank, rank, &ring)]))),
        }
    }

    pub fn direct_sum(&self, other: &SplitFormation) -> Result<SplitFormation> {
        if self.eps != other.eps {
            return Err(Error::MixedEps);
        }
        let witness = match (&self.witness, &other.witness) {
            (Some(w1), Some(w2)) => {
                let (f1, f2) = (self.f_rank(), other.f_rank());
                let top = Matrix::block_diag(&[&w1.block(0, f1, 0, w1.cols()), &w2.block(0, f2, 0, w2.cols())]);
                let bottom = Matrix::block_diag(&[&w1.block(f1, 2 * f1, 0, w1.cols()), &w2.block(f2, 2 * f2, 0, w2.cols())]);
                Some(Matrix::vstack(&[&top, &bottom]))
            }
            _ => None,
        };
        Ok(SplitFormation {
            eps: self.eps,
            gamma: Matrix::block_diag(&[&self.gamma, &other.gamma]),
            delta: Matrix::block_diag(&[&self.delta, &other.delta]),
            hessian: forms::direct_sum(&[&self.hessian, &other.hessian])?,
            witness,
        })
    }

    /// `gamma* delta = theta - eps theta*`, and the lagrangian certificate when
    /// a witness is stored.
    pub fn check(&self) -> Result<FormationCheck> {
        let theta = self.hessian.psi();
        let lhs = &self.gamma.conj_transpose() * &self.delta;
        let rhs = theta - &self.eps.apply_matrix(&theta.conj_transpose());
        let hessian = lhs == rhs;
        let lagrangian = match &self.witness {
            Some(w) => {
                let sub = forms::Sublagrangian {
                    ambient: forms::hyperbolic(self.f_rank(), self.eps),
                    incl: Matrix::vstack(&[&self.gamma, &self.delta]),
                    summand_witness: Some(w.clone()),
                };
                Some(forms::check_lagrangian(&sub, w)?)
            }
            None => None,
        };
        Ok(FormationCheck { hessian, lagrangian })
    }
}

/// `d(P, psi) = (P, (1; psi + eps psi*)(P, psi))`, a split formation of sign `-eps`.
pub fn boundary_formation(p: &QuadForm) -> SplitFormation {
    let n = p.rank();
    let ring = p.ring().clone();
    SplitFormation {
        eps: p.eps().flip(),
        gamma: Matrix::identity(n, &ring),
        delta: p.lambda(),
        hessian: p.clone(),
        witness: Some(Matrix::vstack(&[&Matrix::zeros(n, n, &ring), &Matrix::identity(n, &ring)])),
    }
}

/// A stable isomorphism `d(src) + (P, P*) -> d(dst) + (P', P'*)` with
/// `rank P = src_stab` and `rank P' = dst_stab`.
#[derive(Clone, Debug)]
pub struct StableIso {
    pub alpha: Matrix,
    pub beta: Matrix,
    pub nu: Matrix,
    pub src: QuadForm,
    pub dst: QuadForm,
    pub src_stab: usize,
    pub dst_stab: usize,
}

/// Blocks of a stable isomorphism relative to `V + P`.
#[derive(Clone, Debug, PartialEq)]
pub struct Components {
    pub a: Matrix,
    pub b: Matrix,
    pub s: Matrix,
    pub a1: Matrix,
    pub b1: Matrix,
    pub a3: Matrix,
}

/// Per-condition outcome of [`check_stable_iso`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoReport {
    pub simple_alpha: bool,
    pub simple_beta: bool,
    /// `theta1 + delta1* nu delta1 = beta* theta2 beta`.
    pub hessian: bool,
    /// `alpha (gamma1 + (nu + eps nu*) delta1) = gamma2 beta`.
    pub gamma_square: bool,
    /// `delta1 = alpha* delta2 beta`.
    pub delta_square: bool,
    /// `1 = ab + (s* + eps s) lambda'`
    pub cond_i: bool,
    /// `a* lambda' = lambda b`
    pub cond_ii: bool,
    /// `theta' = b* theta b + lambda'* s lambda'`
    pub cond_iii: bool,
    /// Off-diagonal blocks of `alpha`, `beta^-1`, `alpha nu alpha*` match the template.
    pub template: bool,
}

impl IsoReport {
    /// Every condition, template included.
    pub fn passes(&self) -> bool {
        self.simple_alpha
            && self.simple_beta
            && self.hessian
            && self.gamma_square
            && self.delta_square
            && self.cond_i
            && self.cond_ii
            && self.cond_iii
            && self.template
    }

    pub fn conditions(&self) -> [(&'static str, bool); 9] {
        [
            ("alpha simple", self.simple_alpha),
            ("beta simple", self.simple_beta),
            ("hessian equation", self.hessian),
            ("gamma square", self.gamma_square),
            ("delta square", self.delta_square),
            ("condition (i)", self.cond_i),
            ("condition (ii)", self.cond_ii),
            ("condition (iii)", self.cond_iii),
            ("block template", self.template),
        ]
    }
}

fn stabilised(v: &QuadForm, k: usize) -> (Matrix, Matrix, Matrix) {
    let ring = v.ring().clone();
    let n = v.rank();
    let gamma = Matrix::block_diag(&[&Matrix::identity(n, &ring), &Matrix::zeros(k, k, &ring)]);
    let delta = Matrix::block_diag(&[&v.lambda(), &Matrix::identity(k, &ring)]);
    let theta = Matrix::block_diag(&[v.psi(), &Matrix::zeros(k, k, &ring)]);
    (gamma, delta, theta)
}

impl StableIso {
    pub fn new(alpha: Matrix, beta: Matrix, nu: Matrix, src: QuadForm, dst: QuadForm, src_stab: usize, dst_stab: usize) -> Result<StableIso> {
        let f = StableIso { alpha, beta, nu, src, dst, src_stab, dst_stab };
        f.check_shapes()?;
        Ok(f)
    }

    pub fn eps(&self) -> Eps {
        self.src.eps()
    }

    fn check_shapes(&self) -> Result<()> {
        if self.src.eps() != self.dst.eps() {
            return Err(Error::MixedEps);
        }
        let n1 = self.src.rank() + self.src_stab;
        let n2 = self.dst.rank() + self.dst_stab;
        if n1 != n2 {
            return Err(Error::DimensionMismatch("stabilised ranks differ"));
        }
        for (m, what) in [(&self.alpha, "alpha"), (&self.beta, "beta"), (&self.nu, "nu")] {
            if m.rows() != n1 || m.cols() != n1 {
                return Err(Error::NotBlockConformant(what));
            }
        }
        Ok(())
    }

    pub fn src_formation(&self) -> SplitFormation {
        boundary_formation(&self.src).direct_sum(&SplitFormation::trivial(self.src_stab, self.eps().flip())).expect("same sign")
    }

    pub fn dst_formation(&self) -> SplitFormation {
        boundary_formation(&self.dst).direct_sum(&SplitFormation::trivial(self.dst_stab, self.eps().flip())).expect("same sign")
    }

    /// `alpha nu alpha*` in canonical form.
    pub fn nu_image(&self) -> Matrix {
        let m = &(&self.alpha * &self.nu) * &self.alpha.conj_transpose();
        forms::q_canonical(&m, self.eps()).expect("square")
    }

    pub fn components(&self) -> Result<Components> {
        self.check_shapes()?;
        let n = self.src.rank();
        let n2 = self.dst.rank();
        let total = n + self.src_stab;
        let binv = self.beta.inverse()?;
        let nu = self.nu_image();
        Ok(Components {
            a: self.alpha.block(0, n2, 0, n),
            b: binv.block(0, n, 0, n2),
            s: nu.block(0, n2, 0, n2),
            a1: self.alpha.block(0, n2, n, total),
            b1: binv.block(0, n, n2, total),
            a3: binv.block(n, total, n2, total).conj_transpose(),
        })
    }

    /// Add `d` trivial summands on both sides.
    pub fn pad(&self, d: usize) -> StableIso {
        if d == 0 {
            return self.clone();
        }
        let ring = self.alpha.ring().clone();
        let id = Matrix::identity(d, &ring);
        StableIso {
            alpha: Matrix::block_diag(&[&self.alpha, &id]),
            beta: Matrix::block_diag(&[&self.beta, &id]),
            nu: Matrix::block_diag(&[&self.nu, &Matrix::zeros(d, d, &ring)]),
            src: self.src.clone(),
            dst: self.dst.clone(),
            src_stab: self.src_stab + d,
            dst_stab: self.dst_stab + d,
        }
    }

    /// Apply the ring automorphism `t -> 1/t` to every entry.
    pub fn twist(&self) -> StableIso {
        StableIso {
            alpha: self.alpha.involute_entries(),
            beta: self.beta.involute_entries(),
            nu: self.nu.involute_entries(),
            src: twist_form(&self.src),
            dst: twist_form(&self.dst),
            src_stab: self.src_stab,
            dst_stab: self.dst_stab,
        }
    }
}

pub(crate) fn twist_form(v: &QuadForm) -> QuadForm {
    QuadForm::new(v.psi().involute_entries(), v.eps()).expect("square")
}

/// `d h = (h, h, 0)` for an isometry `h: src -> dst`.
pub fn boundary_of_isometry(h: &Matrix, src: &QuadForm, dst: &QuadForm) -> Result<StableIso> {
    if !check_isometry(h, src, dst)? {
        return Err(Error::NotAnIsometry);
    }
    let n = src.rank();
    StableIso::new(h.clone(), h.clone(), Matrix::zeros(n, n, h.ring()), src.clone(), dst.clone(), 0, 0)
}

pub fn identity(v: &QuadForm) -> StableIso {
    let id = Matrix::identity(v.rank(), v.ring());
    boundary_of_isometry(&id, v, v).expect("identity is an isometry")
}

pub fn check_stable_iso(f: &StableIso) -> Result<IsoReport> {
    f.check_shapes()?;
    let eps = f.eps();
    let simple_alpha = f.alpha.det()?.is_trivial_unit();
    let simple_beta = f.beta.det()?.is_trivial_unit();
    let (g1, d1, t1) = stabilised(&f.src, f.src_stab);
    let (g2, d2, t2) = stabilised(&f.dst, f.dst_stab);
    let nu_sym = &f.nu + &eps.apply_matrix(&f.nu.conj_transpose());
    let hessian = q_equal(&(&t1 + &(&(&d1.conj_transpose() * &f.nu) * &d1)), &(&(&f.beta.conj_transpose() * &t2) * &f.beta), eps)?;
    let gamma_square = &f.alpha * &(&g1 + &(&nu_sym * &d1)) == &g2 * &f.beta;
    let delta_square = d1 == &(&f.alpha.conj_transpose() * &d2) * &f.beta;
    let (cond_i, cond_ii, cond_iii, template) = if simple_beta {
        let c = f.components()?;
        let lam = f.src.lambda();
        let lam2 = f.dst.lambda();
        let one = Matrix::identity(f.dst.rank(), f.alpha.ring());
        let s_sym = &c.s.conj_transpose() + &eps.apply_matrix(&c.s);
        let cond_i = one == &(&c.a * &c.b) + &(&s_sym * &lam2);
        let cond_ii = &c.a.conj_transpose() * &lam2 == &lam * &c.b;
        let rhs = &(&(&c.b.conj_transpose() * f.src.psi()) * &c.b) + &(&(&lam2.conj_transpose() * &c.s) * &lam2);
        let cond_iii = q_equal(f.dst.psi(), &rhs, eps)?;
        (cond_i, cond_ii, cond_iii, template_holds(f, &c)?)
    } else {
        (false, false, false, false)
    };
    Ok(IsoReport { simple_alpha, simple_beta, hessian, gamma_square, delta_square, cond_i, cond_ii, cond_iii, template })
}

/// `alpha = [[a, a1], [eps b1* lambda, a3]]`, `beta^-1 = [[b, b1], [a1* lambda', a3*]]`,
/// `alpha nu alpha* = [[s, -eps a b1], [0, -b1* theta b1]]`.
fn template_holds(f: &StableIso, c: &Components) -> Result<bool> {
    let eps = f.eps();
    let n = f.src.rank();
    let n2 = f.dst.rank();
    let total = n + f.src_stab;
    let binv = f.beta.inverse()?;
    let alpha_bl = f.alpha.block(n2, total, 0, n);
    let alpha_br = f.alpha.block(n2, total, n, total);
    let binv_bl = binv.block(n, total, 0, n2);
    let ok_alpha = alpha_bl == eps.apply_matrix(&(&c.b1.conj_transpose() * &f.src.lambda())) && alpha_br == c.a3;
    let ok_beta = binv_bl == &c.a1.conj_transpose() * &f.dst.lambda();
    let top = Matrix::hstack(&[&c.s, &-eps.apply_matrix(&(&c.a * &c.b1))]);
    let bottom = Matrix::hstack(&[
        &Matrix::zeros(f.src_stab, n2, f.alpha.ring()),
        &-&(&(&c.b1.conj_transpose() * f.src.psi()) * &c.b1),
    ]);
    let expected = Matrix::vstack(&[&top, &bottom]);
    let nu_image = &(&f.alpha * &f.nu) * &f.alpha.conj_transpose();
    Ok(ok_alpha && ok_beta && q_equal(&nu_image, &expected, eps)?)
}

/// `(alpha2 alpha1, beta2 beta1, nu1 + alpha1^-1 nu2 alpha1^-*)`, padding
/// the stabilisations to a common rank first.
pub fn compose(f2: &StableIso, f1: &StableIso) -> Result<StableIso> {
    if f1.dst.rank() != f2.src.rank() || f1.eps() != f2.eps() || f1.dst != f2.src {
        return Err(Error::NotComposable("target of the first differs from the source of the second"));
    }
    let k = f1.dst_stab.max(f2.src_stab);
    let f1 = f1.pad(k - f1.dst_stab);
    let f2 = f2.pad(k - f2.src_stab);
    let ainv = f1.alpha.inverse()?;
    let nu = &f1.nu + &(&(&ainv * &f2.nu) * &ainv.conj_transpose());
    StableIso::new(&f2.alpha * &f1.alpha, &f2.beta * &f1.beta, nu, f1.src.clone(), f2.dst.clone(), f1.src_stab, f2.dst_stab)
}

/// `(alpha^-1, beta^-1, -alpha nu alpha*)`.
pub fn invert(f: &StableIso) -> Result<StableIso> {
    let nu = -&(&(&f.alpha * &f.nu) * &f.alpha.conj_transpose());
    StableIso::new(f.alpha.inverse()?, f.beta.inverse()?, nu, f.dst.clone(), f.src.clone(), f.dst_stab, f.src_stab)
}

fn same_ends(f: &StableIso, g: &StableIso) -> Result<()> {
    if f.src.rank() != g.src.rank() || f.dst.rank() != g.dst.rank() || f.eps() != g.eps() {
        return Err(Error::DimensionMismatch("stable isomorphisms with different ends"));
    }
    Ok(())
}

/// `a' - a = Delta lambda*`, `b' - b = Delta* lambda'` and
/// `s' - s = (-eps a' + Delta theta) Delta*` in `Q_eps`.
pub fn check_homotopy(f: &StableIso, g: &StableIso, delta: &Matrix) -> Result<bool> {
    same_ends(f, g)?;
    if delta.rows() != f.dst.rank() || delta.cols() != f.src.rank() {
        return Err(Error::DimensionMismatch("homotopy"));
    }
    let (c, c2) = (f.components()?, g.components()?);
    homotopy_holds(f, &c, &c2, delta)
}

fn homotopy_holds(f: &StableIso, c: &Components, c2: &Components, delta: &Matrix) -> Result<bool> {
    let eps = f.eps();
    let lam = f.src.lambda();
    let lam2 = f.dst.lambda();
    if &c2.a - &c.a != delta * &lam.conj_transpose() {
        return Ok(false);
    }
    if &c2.b - &c.b != &delta.conj_transpose() * &lam2 {
        return Ok(false);
    }
    let inner = &(-eps.apply_matrix(&c2.a)) + &(delta * f.src.psi());
    q_equal(&(&c2.s - &c.s), &(&inner * &delta.conj_transpose()), eps)
}

/// A homotopy from `f` to `g` inside the exponent window. The first equation
/// determines `Delta` whenever `lambda` is nonsingular, so `None` is then final.
pub fn find_homotopy(f: &StableIso, g: &StableIso, degree_bound: u32) -> Result<Option<Matrix>> {
    same_ends(f, g)?;
    let (c, c2) = (f.components()?, g.components()?);
    find_homotopy_components(f, &c, &c2, degree_bound)
}

fn find_homotopy_components(f: &StableIso, c: &Components, c2: &Components, degree_bound: u32) -> Result<Option<Matrix>> {
    let lam_star = f.src.lambda().conj_transpose();
    let diff = &c2.a - &c.a;
    let Some(delta) = solve_delta(&lam_star, &diff, degree_bound)? else { return Ok(None) };
    Ok(if homotopy_holds(f, c, c2, &delta)? { Some(delta) } else { None })
}

/// Solve `Delta * m = target`, exactly through the adjugate when `m` has a
/// nonzero determinant and by bounded search otherwise.
fn solve_delta(m: &Matrix, target: &Matrix, degree_bound: u32) -> Result<Option<Matrix>> {
    if m.rows() == 0 {
        return Ok(Some(Matrix::zeros(target.rows(), 0, m.ring())));
    }
    let d = m.det()?;
    if d.is_zero() {
        return solve::solve_left(m, target, degree_bound);
    }
    Ok(exact_divide(&(target * &m.adjugate()?), &d))
}

/// Divide every entry by `d`, or `None` when some entry is not a multiple.
pub(crate) fn exact_divide(m: &Matrix, d: &Laurent) -> Option<Matrix> {
    let mut out = Matrix::zeros(m.rows(), m.cols(), m.ring());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.set(i, j, m.get(i, j).exact_div(d)?);
        }
    }
    Some(out)
}

/// Witness for equality in a boundary isomorphism set.
#[derive(Clone, Debug, PartialEq)]
pub struct BisoWitness {
    /// Isometry of the source form.
    pub h1: Matrix,
    /// Isometry of the target form.
    pub h2: Matrix,
    pub delta: Matrix,
}

/// True when every matrix of the stable isomorphism has constant entries, so
/// the comparison can be carried out over the integers.
pub(crate) fn all_constant(ms: &[&Matrix]) -> bool {
    ms.iter().all(|m| m.is_integer())
}

/// Automorphisms of a form tried by the bounded searches: `+-t^k` for rank
/// one (`+-1` when `integral`), `+-1` otherwise.
pub(crate) fn unit_candidates(v: &QuadForm, integral: bool, degree_bound: u32) -> Vec<Matrix> {
    let ring = v.ring().clone();
    let b = if integral || v.rank() != 1 { 0 } else { degree_bound as i64 };
    let mut out = Vec::new();
    for k in 0..=b {
        for e in if k == 0 { alloc::vec![0] } else { alloc::vec![k, -k] } {
            for sign in [1, -1] {
                let u = Laurent::mono(sign, e);
                out.push(Matrix::identity(v.rank(), &ring).scale(&u));
            }
        }
    }
    out
}

/// Class of `b` in `(Z/m)[t, 1/t]` modulo `+-t^k`, where `m = lambda'` is a
/// constant of absolute value at least 2. Homotopies move `b` by multiples of
/// `lambda'` and form automorphisms multiply it by trivial units.
pub fn b_residue_invariant(f: &StableIso) -> Result<Option<Laurent>> {
    if f.src.rank() != 1 || f.dst.rank() != 1 {
        return Ok(None);
    }
    let lam2 = f.dst.lambda();
    let Some(m) = lam2.get(0, 0).to_integer() else { return Ok(None) };
    if m.magnitude() < &num_bigint::BigUint::from(2u32) {
        return Ok(None);
    }
    let b = f.components()?.b.get(0, 0).clone();
    Ok(Some(normalize_up_to_trivial_unit(&b.reduce_mod(&m)?)))
}

/// Compare two stable isomorphisms `d v -> d v'` in the boundary isomorphism set.
pub fn biso_compare(f: &StableIso, g: &StableIso, degree_bound: u32) -> Result<Verdict<BisoWitness>> {
    if f.src.rank() != g.src.rank() || f.dst.rank() != g.dst.rank() || f.eps() != g.eps() {
        return Ok(Verdict::Distinct(String::from("forms of different rank")));
    }
    if f.src.rank() == 1 && f.dst.rank() == 1 && (f.src != g.src || f.dst != g.dst) {
        return Ok(Verdict::Distinct(String::from("rank-one forms differ, and their isometries are trivial units")));
    }
    let (c, c2) = (f.components()?, g.components()?);
    let integral = all_constant(&[&f.alpha, &f.beta, &f.nu, &g.alpha, &g.beta, &g.nu, f.src.psi(), f.dst.psi()]);
    let ring = f.alpha.ring().clone();
    // Rank-one automorphisms commute with everything, so acting on both ends
    // is the same as acting by their ratio on the target.
    let h1_choices = if f.src.rank() == 1 && f.dst.rank() == 1 {
        alloc::vec![Matrix::identity(1, &ring)]
    } else {
        unit_candidates(&f.src, integral, degree_bound)
    };
    let h2_choices = unit_candidates(&f.dst, integral, degree_bound);
    for h1 in &h1_choices {
        let h1inv = h1.inverse()?;
        for h2 in &h2_choices {
            let h2inv = h2.inverse()?;
            let twisted = Components {
                a: &(h2 * &c2.a) * &h1inv,
                b: &(h1 * &c2.b) * &h2inv,
                s: &(h2 * &c2.s) * &h2.conj_transpose(),
                a1: c2.a1.clone(),
                b1: c2.b1.clone(),
                a3: c2.a3.clone(),
            };
            if let Some(delta) = find_homotopy_components(f, &twisted, &c, degree_bound)? {
                return Ok(Verdict::Equal(BisoWitness { h1: h1.clone(), h2: h2.clone(), delta }));
            }
        }
    }
    if let (Some(x), Some(y)) = (b_residue_invariant(f)?, b_residue_invariant(g)?) {
        if x != y {
            return Ok(Verdict::Distinct(format!("b modulo lambda' differs up to trivial units: {} vs {}", x, y)));
        }
    }
    let lam_nonsingular = f.src.rank() == 0 || !f.src.lambda().det()?.is_zero();
    if integral && lam_nonsingular && f.src.rank() == 1 && f.dst.rank() == 1 {
        return Ok(Verdict::Distinct(String::from("no isometry pair and homotopy exists; the integral search is exhaustive")));
    }
    Ok(Verdict::Unknown)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rank_one(c: i64) -> QuadForm {
        QuadForm::rank_one(Laurent::int(c), Eps::Plus)
    }

    #[test]
    fn boundary_formation_is_valid() {
        let f = boundary_formation(&rank_one(5));
        assert_eq!(f.delta, Matrix::from_ints(&[&[10]]));
        let check = f.check().unwrap();
        assert!(check.hessian && check.lagrangian.unwrap().holds());
        let stab = f.direct_sum(&SplitFormation::trivial(2, f.eps)).unwrap();
        let check = stab.check().unwrap();
        assert!(check.hessian && check.lagrangian.unwrap().holds());
    }

    #[test]
    fn boundary_isometries_pass() {
        let v = rank_one(7);
        let minus = boundary_of_isometry(&Matrix::from_ints(&[&[-1]]), &v, &v).unwrap();
        assert!(check_stable_iso(&minus).unwrap().passes());
        let c = minus.components().unwrap();
        assert_eq!((c.a.get(0, 0), c.b.get(0, 0)), (&Laurent::int(-1), &Laurent::int(-1)));
        assert!(c.s.is_zero());
        assert!(boundary_of_isometry(&Matrix::from_ints(&[&[2]]), &v, &v).is_err());
    }

    #[test]
    fn inverse_composes_to_identity_components() {
        let v = rank_one(3);
        let f = boundary_of_isometry(&Matrix::from_ints(&[&[-1]]), &v, &v).unwrap();
        let g = compose(&f, &invert(&f).unwrap()).unwrap();
        let c = g.components().unwrap();
        assert!(c.a.is_identity() && c.b.is_identity() && c.s.is_zero());
        assert!(biso_compare(&g, &identity(&v), 8).unwrap().is_equal());
    }
}
