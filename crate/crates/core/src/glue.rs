//! Gluing forms along boundary isomorphisms, and 2-sided primitive embeddings.
//!
//! The two directions are [`pr_map`] (isomorphism to embedding, through the
//! union and its inclusions) and [`delta_map`] (embedding to isomorphism,
//! through [`f_from_embedding`]).

use alloc::string::String;

use crate::error::{Error, Result};
use crate::formations::{all_constant, biso_compare, check_stable_iso, exact_divide, unit_candidates, StableIso};
use crate::forms::{self, check_isometry, hyperbolic, restrict_form, ComplementMode, Eps, QuadForm};
use crate::matrix::Matrix;
use crate::ring::Laurent;
use crate::solve;
use crate::Verdict;

/// The union `v cup_f -v'` with `psi = [[theta, 0], [eps a, -s]]`.
pub fn union(v: &QuadForm, vprime: &QuadForm, f: &StableIso) -> Result<QuadForm> {
    if f.src != *v || f.dst != *vprime {
        return Err(Error::InvalidStableIso("forms do not match the ends of the isomorphism"));
    }
    if !check_stable_iso(f)?.passes() {
        return Err(Error::InvalidStableIso("the defining equations fail"));
    }
    union_unchecked(f)
}

fn union_unchecked(f: &StableIso) -> Result<QuadForm> {
    let c = f.components()?;
    let eps = f.eps();
    let (n, n2) = (f.src.rank(), f.dst.rank());
    let top = Matrix::hstack(&[f.src.psi(), &Matrix::zeros(n, n2, f.alpha.ring())]);
    let bottom = Matrix::hstack(&[&eps.apply_matrix(&c.a), &-&c.s]);
    QuadForm::new(Matrix::vstack(&[&top, &bottom]), eps)
}

/// `j_f = (1; 0)` and `j'_f = (b; -lambda')`.
pub fn union_inclusions(f: &StableIso) -> Result<(Matrix, Matrix)> {
    let c = f.components()?;
    let ring = f.alpha.ring().clone();
    let (n, n2) = (f.src.rank(), f.dst.rank());
    let j = Matrix::vstack(&[&Matrix::identity(n, &ring), &Matrix::zeros(n2, n, &ring)]);
    let jprime = Matrix::vstack(&[&c.b, &-&f.dst.lambda()]);
    Ok((j, jprime))
}

/// `v -j-> m <-j'- v'` with `j(v)^perp = j'(v')`. `sigma` splits
/// `j'* lambda_m`, i.e. `(j'* lambda_m) sigma = 1`.
#[derive(Clone, Debug)]
pub struct PrimEmbedding {
    pub v: QuadForm,
    pub vprime: QuadForm,
    pub m: QuadForm,
    pub j: Matrix,
    pub jprime: Matrix,
    pub sigma: Option<Matrix>,
}

/// Per-certificate outcome of [`PrimEmbedding::check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EmbeddingCheck {
    pub m_nonsingular: bool,
    pub restricts_to_v: bool,
    pub restricts_to_vprime: bool,
    pub complement: bool,
    pub split: bool,
    pub sigma: bool,
}

impl EmbeddingCheck {
    pub fn holds(&self) -> bool {
        self.m_nonsingular && self.restricts_to_v && self.restricts_to_vprime && self.complement && self.split && self.sigma
    }
}

fn map_form(v: &QuadForm, f: impl Fn(&Matrix) -> Matrix) -> QuadForm {
    QuadForm::new(f(v.psi()), v.eps()).expect("square")
}

impl PrimEmbedding {
    pub fn check(&self, degree_bound: u32) -> Result<EmbeddingCheck> {
        let m_nonsingular = self.m.is_nonsingular();
        let restricts_to_v = restrict_form(&self.m, &self.j)? == self.v;
        let restricts_to_vprime = restrict_form(&self.m, &self.jprime)? == self.vprime;
        let complement = match forms::orthogonal_complement(&self.m, &self.j, &ComplementMode::Witness(self.jprime.clone())) {
            Ok(_) => true,
            Err(Error::WitnessRejected(_)) | Err(Error::NoComplementFound) => false,
            Err(e) => return Err(e),
        };
        let split = forms::is_split_injection(&self.j, degree_bound)?;
        let sigma = match &self.sigma {
            Some(s) => (&(&self.jprime.conj_transpose() * &self.m.lambda()) * s).is_identity(),
            None => true,
        };
        Ok(EmbeddingCheck { m_nonsingular, restricts_to_v, restricts_to_vprime, complement, split, sigma })
    }

    /// Apply the ring automorphism `t -> 1/t` to every entry.
    pub fn twist(&self) -> PrimEmbedding {
        let tw = |m: &Matrix| m.involute_entries();
        PrimEmbedding {
            v: map_form(&self.v, tw),
            vprime: map_form(&self.vprime, tw),
            m: map_form(&self.m, tw),
            j: tw(&self.j),
            jprime: tw(&self.jprime),
            sigma: self.sigma.as_ref().map(tw),
        }
    }

    /// Push every entry through the augmentation `t -> 1`.
    pub fn augment(&self) -> PrimEmbedding {
        let aug = |m: &Matrix| m.augment();
        PrimEmbedding {
            v: map_form(&self.v, aug),
            vprime: map_form(&self.vprime, aug),
            m: map_form(&self.m, aug),
            j: aug(&self.j),
            jprime: aug(&self.jprime),
            sigma: self.sigma.as_ref().map(aug),
        }
    }

    fn is_constant(&self) -> bool {
        all_constant(&[self.v.psi(), self.vprime.psi(), self.m.psi(), &self.j, &self.jprime])
    }
}

/// The stored splitting, or one solved for (exactly over `Z`, by bounded search otherwise).
pub fn splitting(pe: &PrimEmbedding, degree_bound: u32) -> Result<Matrix> {
    if let Some(s) = &pe.sigma {
        return Ok(s.clone());
    }
    let pairing = &pe.jprime.conj_transpose() * &pe.m.lambda();
    let id = Matrix::identity(pe.jprime.cols(), pe.j.ring());
    solve::solve_right(&pairing, &id, degree_bound)?.ok_or(Error::NoSplittingAvailable)
}

/// The stable isomorphism `f_j: d v + (M', M'*) -> d(-v^perp) + (M, M*)`
/// with `v^perp` the image of `j'` and `M' = H(v^perp)`.
///
/// Built as `E2 . dh . E1` where `h` is the isometry
/// `v + H(v^perp) -> -v^perp + m` and `E1`, `E2` identify the trivial
/// formations with the boundaries of the nonsingular forms `H(v^perp)` and `m`.
pub fn f_from_embedding(pe: &PrimEmbedding, degree_bound: u32) -> Result<StableIso> {
    let sigma = splitting(pe, degree_bound)?;
    let ring = pe.j.ring().clone();
    let eps = pe.m.eps();
    let n = pe.j.cols();
    let r = pe.jprime.cols();
    let mrank = pe.m.rank();
    if n + r != mrank {
        return Err(Error::DimensionMismatch("ranks of v and v' must add up to the rank of m"));
    }
    let psi = pe.m.psi();
    let phi = pe.m.lambda();
    let phi_inv = phi.inverse()?;
    let jp = &pe.jprime;
    let j = &pe.j;
    let id = |k: usize| Matrix::identity(k, &ring);
    let zero = |a: usize, b: usize| Matrix::zeros(a, b, &ring);
    let sigma_star = sigma.conj_transpose();

    let left = Matrix::vstack(&[
        &Matrix::hstack(&[&id(r), &zero(r, r), &zero(r, n)]),
        &Matrix::hstack(&[jp, &sigma, j]),
    ]);
    let right = Matrix::vstack(&[
        &Matrix::hstack(&[&-&(&(&sigma_star * &phi.conj_transpose()) * j), &id(r), &-&(&(&sigma_star * &psi.conj_transpose()) * &sigma)]),
        &Matrix::hstack(&[&zero(r, n), &zero(r, r), &id(r)]),
        &Matrix::hstack(&[&id(n), &zero(n, r), &zero(n, r)]),
    ]);
    let h = &left * &right;

    let hyp = hyperbolic(r, eps);
    let phi2 = hyp.lambda();
    let phi2_inv = phi2.inverse()?;
    let beta = &(&Matrix::block_diag(&[&id(r), &phi]) * &h) * &Matrix::block_diag(&[&id(n), &phi2_inv]);
    let nu_e1 = Matrix::block_diag(&[&zero(n, n), &(&(&phi2_inv.conj_transpose() * &hyp.psi().conj_transpose()) * &phi2_inv)]);
    let nu_e2 = Matrix::block_diag(&[&zero(r, r), &-&(&(&phi_inv.conj_transpose() * psi) * &phi_inv)]);
    let hinv = h.inverse()?;
    let nu = &nu_e1 + &(&(&hinv * &nu_e2) * &hinv.conj_transpose());
    let dst = restrict_form(&pe.m, jp)?.negate();
    StableIso::new(h, beta, nu, pe.v.clone(), dst, 2 * r, mrank)
}

/// The closed forms `a = -sigma* phi* j`, `b = -sigma~ j'` and `s = -sigma* psi sigma`,
/// with `sigma~ = j^-1 (1 - sigma j'* phi)`.
pub fn closed_form_components(pe: &PrimEmbedding, degree_bound: u32) -> Result<(Matrix, Matrix, Matrix)> {
    let sigma = splitting(pe, degree_bound)?;
    let phi = pe.m.lambda();
    let sigma_star = sigma.conj_transpose();
    let a = -&(&(&sigma_star * &phi.conj_transpose()) * &pe.j);
    let s = -&(&(&sigma_star * pe.m.psi()) * &sigma);
    let x = &Matrix::identity(pe.m.rank(), pe.j.ring()) - &(&sigma * &(&pe.jprime.conj_transpose() * &phi));
    let tilde = solve::solve_right(&pe.j, &x, degree_bound)?.ok_or(Error::NoSplittingAvailable)?;
    let b = -&(&tilde * &pe.jprime);
    Ok((a, b, s))
}

/// The isometry `(j | -sigma): v cup_{f_j} -v^perp -> m`.
pub fn r_iso(pe: &PrimEmbedding, degree_bound: u32) -> Result<Matrix> {
    let sigma = splitting(pe, degree_bound)?;
    Ok(Matrix::hstack(&[&pe.j, &-&sigma]))
}

/// `v -> v cup_f -v' <- -v'` through the union inclusions.
pub fn pr_map(f: &StableIso) -> Result<PrimEmbedding> {
    let m = union(&f.src, &f.dst, f)?;
    let (j, jprime) = union_inclusions(f)?;
    let ring = f.alpha.ring().clone();
    let (n, n2) = (f.src.rank(), f.dst.rank());
    let sigma = Matrix::vstack(&[&Matrix::zeros(n, n2, &ring), &Matrix::identity(n2, &ring)]);
    Ok(PrimEmbedding { v: f.src.clone(), vprime: f.dst.negate(), m, j, jprime, sigma: Some(sigma) })
}

/// `d v -> d(-v')` for an embedding `v -> m <- v'`. Since the complement is
/// taken to be the image of `j'` itself, the correction `d(j'^-1)` is the identity.
pub fn delta_map(pe: &PrimEmbedding, degree_bound: u32) -> Result<StableIso> {
    f_from_embedding(pe, degree_bound)
}

/// Witness for equality of embeddings: `h j1 = j2 g1` and `h j1' = j2' g2`
/// with `h: m1 -> m2` an isometry, after twisting the second embedding when
/// `twisted` is set.
#[derive(Clone, Debug, PartialEq)]
pub struct PrimWitness {
    pub h: Matrix,
    pub g1: Matrix,
    pub g2: Matrix,
    pub twisted: bool,
}

/// Compare two embeddings in the boundary primitive embedding set.
pub fn bprim_compare(pe1: &PrimEmbedding, pe2: &PrimEmbedding, degree_bound: u32, allow_group_twist: bool) -> Result<Verdict<PrimWitness>> {
    let plain = bprim_compare_plain(pe1, pe2, degree_bound, false)?;
    if !allow_group_twist || plain.is_equal() {
        return Ok(plain);
    }
    let twisted = bprim_compare_plain(pe1, &pe2.twist(), degree_bound, true)?;
    Ok(match (plain, twisted) {
        (_, Verdict::Equal(w)) => Verdict::Equal(w),
        (Verdict::Distinct(a), Verdict::Distinct(b)) => Verdict::Distinct(alloc::format!("{}; twisted: {}", a, b)),
        _ => Verdict::Unknown,
    })
}

fn bprim_compare_plain(pe1: &PrimEmbedding, pe2: &PrimEmbedding, degree_bound: u32, twisted: bool) -> Result<Verdict<PrimWitness>> {
    if pe1.m.rank() != pe2.m.rank() || pe1.j.cols() != pe2.j.cols() || pe1.jprime.cols() != pe2.jprime.cols() {
        return Ok(Verdict::Distinct(String::from("ranks differ")));
    }
    if pe1.m.eps() != pe2.m.eps() {
        return Ok(Verdict::Distinct(String::from("signs differ")));
    }
    let rank_one = pe1.v.rank() == 1 && pe1.vprime.rank() == 1;
    if rank_one && (pe1.v != pe2.v || pe1.vprime != pe2.vprime) {
        return Ok(Verdict::Distinct(String::from("rank-one forms differ, and their isometries are trivial units")));
    }
    let integral = pe1.is_constant() && pe2.is_constant();
    let big_j = Matrix::hstack(&[&pe1.j, &pe1.jprime]);
    let d = big_j.det()?;
    if !d.is_zero() {
        let adj = big_j.adjugate()?;
        for g1 in unit_candidates(&pe1.v, integral, degree_bound) {
            for g2 in unit_candidates(&pe1.vprime, integral, degree_bound) {
                let target = Matrix::hstack(&[&(&pe2.j * &g1), &(&pe2.jprime * &g2)]);
                let Some(h) = exact_divide(&(&target * &adj), &d) else { continue };
                if check_isometry(&h, &pe1.m, &pe2.m)? {
                    return Ok(Verdict::Equal(PrimWitness { h, g1, g2, twisted }));
                }
            }
        }
        if integral && rank_one {
            return Ok(Verdict::Distinct(String::from("no isometry of m intertwines the inclusions; the integral search is exhaustive")));
        }
    }
    if let (Ok(f1), Ok(f2)) = (delta_map(pe1, degree_bound), delta_map(pe2, degree_bound)) {
        if let Verdict::Distinct(why) = biso_compare(&f1, &f2, degree_bound)? {
            return Ok(Verdict::Distinct(alloc::format!("boundary isomorphisms differ: {}", why)));
        }
    }
    Ok(Verdict::Unknown)
}

/// `Some(true)` when `pe` is isomorphic to the re-inclusion of its augmentation.
pub fn check_extended(pe: &PrimEmbedding, degree_bound: u32) -> Result<Option<bool>> {
    Ok(match bprim_compare(pe, &pe.augment(), degree_bound, false)? {
        Verdict::Equal(_) => Some(true),
        Verdict::Distinct(_) => Some(false),
        Verdict::Unknown => None,
    })
}

/// `(H, lambda, nu)` with `lambda` even symmetric nonsingular of rank `2r`
/// and `nu: H -> Q` surjective, `rank Q = r`.
#[derive(Clone, Debug)]
pub struct ExtendedForm {
    pub lambda: Matrix,
    pub nu: Matrix,
    /// Columns spanning `ker nu`, required over the Laurent ring when the
    /// bounded search cannot find them.
    pub kernel: Option<Matrix>,
}

fn even_entry(x: &Laurent) -> bool {
    use num_integer::Integer;
    x.involute() == *x && x.coeff(0).is_even()
}

impl ExtendedForm {
    pub fn q_rank(&self) -> usize {
        self.nu.rows()
    }

    /// The quadratic form on `H` whose symmetrization is `lambda`.
    pub fn refinement(&self) -> Result<QuadForm> {
        let l = &self.lambda;
        if !l.is_square() || l.conj_transpose() != *l {
            return Err(Error::BadParams("lambda must be symmetric"));
        }
        let n = l.rows();
        let ring = l.ring().clone();
        let mut psi = Matrix::zeros(n, n, &ring);
        for i in 0..n {
            let x = l.get(i, i);
            if !even_entry(x) {
                return Err(Error::BadParams("lambda must be even"));
            }
            let half = Laurent::from_terms(
                &ring,
                x.terms().filter(|(k, _)| *k >= 0).map(|(k, c)| (k, if k == 0 { c / 2 } else { c.clone() })),
            );
            psi.set(i, i, half);
            for j in i + 1..n {
                psi.set(i, j, l.get(i, j).clone());
            }
        }
        QuadForm::new(psi, Eps::Plus)
    }

    pub fn check(&self, degree_bound: u32) -> Result<bool> {
        let Ok(h) = self.refinement() else { return Ok(false) };
        let r = self.q_rank();
        if h.rank() != 2 * r || self.nu.cols() != 2 * r || !h.lambda().det()?.is_trivial_unit() {
            return Ok(false);
        }
        Ok(solve::solve_right(&self.nu, &Matrix::identity(r, self.nu.ring()), degree_bound)?.is_some())
    }
}

/// `ker nu -> H <- Q*` with the second map `lambda^-1 nu*`.
pub fn esf_to_embedding(e: &ExtendedForm, degree_bound: u32) -> Result<PrimEmbedding> {
    let h = e.refinement()?;
    let r = e.q_rank();
    if h.rank() != 2 * r || e.nu.cols() != 2 * r {
        return Err(Error::DimensionMismatch("extended form ranks"));
    }
    let sigma = solve::solve_right(&e.nu, &Matrix::identity(r, e.nu.ring()), degree_bound)?.ok_or(Error::NotSurjective)?;
    let kernel = match &e.kernel {
        Some(k) => {
            if !(&e.nu * k).is_zero() {
                return Err(Error::WitnessRejected("kernel witness is not annihilated by nu"));
            }
            k.clone()
        }
        None if e.nu.is_integer() => crate::snf::integer_kernel(&e.nu)?,
        None => solve::right_kernel(&e.nu, degree_bound)?.ok_or(Error::KernelUnavailable)?,
    };
    if kernel.cols() != r {
        return Err(Error::KernelUnavailable);
    }
    let jprime = &e.lambda.inverse()? * &e.nu.conj_transpose();
    let v = restrict_form(&h, &kernel)?;
    let vprime = restrict_form(&h, &jprime)?;
    Ok(PrimEmbedding { v, vprime, m: h, j: kernel, jprime, sigma: Some(sigma) })
}

/// `v cup_f -v'` viewed as an ordinary form, without validating `f`.
pub fn kappa_unchecked(f: &StableIso) -> Result<QuadForm> {
    union_unchecked(f)
}

/// Check that `j` and `j'` pair to zero under the symmetrization of `m`.
pub fn orthogonal(pe: &PrimEmbedding) -> bool {
    (&(&pe.j.conj_transpose() * &pe.m.lambda()) * &pe.jprime).is_zero()
}
