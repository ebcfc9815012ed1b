//! Named concrete objects: the `t_g` family of boundary automorphisms of
//! `d(Lambda, pq)` with `q = 1 - 4p^2`, its hyperbolicity witness `u_g`, the
//! residue-ring invariant separating the family, the classification of
//! embeddings `(Z, q) -> H(Z) <- (Z, -q)`, the `(j_g, j'_g)` family, the
//! `(-a; b), (a; b)` fixtures, and the gluing isometry `phi` for composites.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::formations::{compose, StableIso};
use crate::forms::{check_isometry, direct_sum, hyperbolic, q_is_zero, restrict_form, Eps, QuadForm};
use crate::glue::{self, union, union_inclusions, PrimEmbedding};
use crate::matrix::Matrix;
use crate::ring::{Laurent, Ring};

/// `p`, `n` and the derived `q = 1 - 4p^2`, `theta = pq`, `lambda = 2pq`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TgParams {
    pub p: BigInt,
    pub n: i64,
}

impl TgParams {
    pub fn new(p: impl Into<BigInt>, n: i64) -> Result<TgParams> {
        let p = p.into();
        if p.is_zero() {
            return Err(Error::BadParams("p must be nonzero"));
        }
        Ok(TgParams { p, n })
    }

    pub fn q(&self) -> BigInt {
        BigInt::one() - BigInt::from(4) * &self.p * &self.p
    }

    pub fn theta(&self) -> BigInt {
        &self.p * self.q()
    }

    pub fn lambda(&self) -> BigInt {
        BigInt::from(2) * self.theta()
    }

    /// `(2p)(2p) + q = 1`.
    pub fn coprimality_holds(&self) -> bool {
        let two_p = BigInt::from(2) * &self.p;
        &two_p * &two_p + self.q() == BigInt::one()
    }

    /// The form `(Lambda, pq)`.
    pub fn form(&self) -> QuadForm {
        QuadForm::rank_one(Laurent::from_bigint(self.theta()), Eps::Plus)
    }

    /// `s = -t^n + p`.
    pub fn s(&self) -> Laurent {
        Laurent::from_bigint(self.p.clone()) - Laurent::t(self.n)
    }

    /// `b = 2p t^n + q`.
    pub fn b(&self) -> Laurent {
        let ring = Ring::integral();
        Laurent::term(&ring, BigInt::from(2) * &self.p, self.n) + Laurent::from_bigint(self.q())
    }
}

fn c(x: &BigInt) -> Laurent {
    Laurent::from_bigint(x.clone())
}

/// The boundary automorphism `t_g` of `d(Lambda, pq)` for `g = t^n`, with one
/// trivial summand on each side.
pub fn make_tg(params: &TgParams) -> Result<StableIso> {
    let s = params.s();
    let b = params.b();
    let bbar = b.involute();
    let ss = &s + &s.involute();
    let lam = c(&params.lambda());
    let theta = c(&params.theta());
    let alpha = Matrix::from_elems(vec![vec![bbar.clone(), Laurent::int(1)], vec![-&(&ss * &lam), b.clone()]]);
    let beta_inv = Matrix::from_elems(vec![vec![b.clone(), -&ss], vec![lam, bbar.clone()]]);
    let image = Matrix::from_elems(vec![
        vec![s.clone(), &bbar * &ss],
        vec![Laurent::int(0), -&(&(&ss * &theta) * &ss)],
    ]);
    let ainv = alpha.inverse()?;
    let nu = &(&ainv * &image) * &ainv.conj_transpose();
    let v = params.form();
    StableIso::new(alpha, beta_inv.inverse()?, nu, v.clone(), v, 1, 1)
}

/// The three elementary factors `[[1,0],[-p,1]]`, `[[1,t^-n],[0,1]]`, `[[1,0],[2p,1]]`.
pub fn ug_factors(params: &TgParams) -> [Matrix; 3] {
    let one = Laurent::int(1);
    let zero = Laurent::int(0);
    [
        Matrix::from_elems(vec![vec![one.clone(), zero.clone()], vec![c(&-&params.p), one.clone()]]),
        Matrix::from_elems(vec![vec![one.clone(), Laurent::t(-params.n)], vec![zero.clone(), one.clone()]]),
        Matrix::from_elems(vec![vec![one.clone(), zero], vec![c(&(BigInt::from(2) * &params.p)), one]]),
    ]
}

/// `u_g = [[1 + 2p t^-n, t^-n], [p - 2p^2 t^-n, 1 - p t^-n]]`.
pub fn make_ug(params: &TgParams) -> Matrix {
    let ring = Ring::integral();
    let p = &params.p;
    let n = params.n;
    let two = BigInt::from(2);
    Matrix::from_elems(vec![
        vec![Laurent::int(1) + Laurent::term(&ring, &two * p, -n), Laurent::t(-n)],
        vec![c(p) - Laurent::term(&ring, &two * p * p, -n), Laurent::int(1) - Laurent::term(&ring, p.clone(), -n)],
    ])
}

/// `u_g` is an isometry from the union along `t_g` to the hyperbolic plane.
pub fn verify_tg_hyperbolic(params: &TgParams) -> Result<bool> {
    verify_tg_hyperbolic_with(params, &make_ug(params))
}

pub fn verify_tg_hyperbolic_with(params: &TgParams, u: &Matrix) -> Result<bool> {
    let v = params.form();
    let glued = union(&v, &v, &make_tg(params)?)?;
    check_isometry(u, &glued, &hyperbolic(1, Eps::Plus))
}

/// Value of the invariant: `b` reduced mod `|2p|` and mod `|q|`, divided by
/// the trivial unit that pins the first component to 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantValue {
    pub comp_2p: Laurent,
    pub comp_q: Laurent,
    pub normalized: bool,
}

impl fmt::Display for InvariantValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, [{}])", self.comp_2p, self.comp_q)
    }
}

fn term_key(x: &Laurent) -> Vec<(i64, BigInt)> {
    x.terms().map(|(k, c)| (k, c.clone())).collect()
}

fn unitary_in(x: &Laurent) -> bool {
    x.is_unitary()
}

/// The invariant of any `b` for the parameter `p`.
pub fn invariant_of(b: &Laurent, p: &BigInt) -> Result<InvariantValue> {
    let two_p = (BigInt::from(2) * p).abs();
    let q = (BigInt::one() - BigInt::from(4) * p * p).abs();
    if two_p < BigInt::from(2) || q < BigInt::from(2) {
        return Err(Error::BadParams("both moduli must be at least 2"));
    }
    let x = b.reduce_mod(&two_p)?;
    let y = b.reduce_mod(&q)?;
    if !unitary_in(&x) || !unitary_in(&y) {
        return Err(Error::NotAUnitInResidueRing);
    }
    Ok(normalize_invariant(x, y))
}

fn normalize_invariant(x: Laurent, y: Laurent) -> InvariantValue {
    let Some(inv) = x.trivial_unit().and_then(|_| x.monomial_inverse()) else {
        return InvariantValue { comp_2p: x, comp_q: y, normalized: false };
    };
    let x = &x * &inv.reduce_mod(x.ring().modulus().expect("residue")).expect("nonzero modulus");
    let mut y = &y * &inv.lift().reduce_mod(y.ring().modulus().expect("residue")).expect("nonzero modulus");
    // Over Z/2 the sign of the pinning unit is invisible, so fix it on the
    // second component instead.
    if x.ring().modulus().is_some_and(|m| *m == BigInt::from(2)) {
        let neg = -&y;
        if term_key(&neg) < term_key(&y) {
            y = neg;
        }
    }
    InvariantValue { comp_2p: x, comp_q: y, normalized: true }
}

pub fn tg_invariant(params: &TgParams) -> Result<InvariantValue> {
    invariant_of(&params.b(), &params.p)
}

/// Image under `t -> 1/t`.
pub fn twist_invariant(iv: &InvariantValue) -> InvariantValue {
    if !iv.normalized {
        return InvariantValue { comp_2p: iv.comp_2p.involute(), comp_q: iv.comp_q.involute(), normalized: false };
    }
    normalize_invariant(iv.comp_2p.involute(), iv.comp_q.involute())
}

/// A representative of `{iv, twist(iv)}`, constant on twist orbits.
pub fn invariant_up_to_twist(iv: &InvariantValue) -> InvariantValue {
    let tw = twist_invariant(iv);
    let key = |v: &InvariantValue| (term_key(&v.comp_2p), term_key(&v.comp_q));
    if key(&tw) < key(iv) {
        tw
    } else {
        iv.clone()
    }
}

/// `x x* = 1`.
pub fn unitary_units_check(x: &Laurent) -> bool {
    x.is_unitary()
}

/// An embedding `(Z, q) -> H(Z) <- (Z, -q)` as its two integer columns.
pub type EmbeddingPair = ([i64; 2], [i64; 2]);

/// Outcome of [`enumerate_prim_z`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimClassification {
    pub q: i64,
    /// Number of distinct primes dividing `q`.
    pub k: u32,
    /// Isomorphism classes, from the factorisation route.
    pub f: usize,
    /// Classes modulo isometries of `(Z, -q)`.
    pub rf: usize,
    /// Classes modulo isometries of `(Z, q)`.
    pub lf: usize,
    /// Classes modulo both.
    pub bf: usize,
    /// `2^(k-1)`.
    pub formula: usize,
    /// The same counts from brute force over all integral columns bounded by `|q|`.
    pub oracle_f: usize,
    pub oracle_bf: usize,
    /// Brute force found exactly the factorisation-generated embeddings.
    pub sets_agree: bool,
    /// One `(y1, y2, sign of j')` per class of the boundary set.
    pub representatives: Vec<(i64, i64, i64)>,
}

fn distinct_primes(mut n: u64) -> u32 {
    let mut k = 0;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            k += 1;
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        k += 1;
    }
    k
}

/// The four isometries of `H(Z)`: `+-1` and `+-` the swap.
fn hyperbolic_isometries() -> [[[i64; 2]; 2]; 4] {
    [[[1, 0], [0, 1]], [[-1, 0], [0, -1]], [[0, 1], [1, 0]], [[0, -1], [-1, 0]]]
}

fn act(h: &[[i64; 2]; 2], x: [i64; 2]) -> [i64; 2] {
    [h[0][0] * x[0] + h[0][1] * x[1], h[1][0] * x[0] + h[1][1] * x[1]]
}

fn neg(x: [i64; 2]) -> [i64; 2] {
    [-x[0], -x[1]]
}

/// Orbit count of `set` under the group generated by `moves`.
fn orbits(set: &BTreeSet<EmbeddingPair>, moves: &[&dyn Fn(EmbeddingPair) -> EmbeddingPair]) -> (usize, Vec<EmbeddingPair>) {
    let items: Vec<EmbeddingPair> = set.iter().copied().collect();
    let index: BTreeMap<EmbeddingPair, usize> = items.iter().enumerate().map(|(i, x)| (*x, i)).collect();
    let mut parent: Vec<usize> = (0..items.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (i, x) in items.iter().enumerate() {
        for mv in moves {
            if let Some(&k) = index.get(&mv(*x)) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, k));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut reps = Vec::new();
    for (i, item) in items.iter().enumerate() {
        if find(&mut parent, i) == i {
            reps.push(*item);
        }
    }
    (reps.len(), reps)
}

/// Classify `(Z, q) -> H(Z) <- (Z, -q)` two ways: from the coprime
/// factorisations `q = y1 y2` and by brute force over bounded integer columns.
pub fn enumerate_prim_z(q: i64) -> Result<PrimClassification> {
    if q == 0 {
        return Err(Error::BadParams("q must be nonzero"));
    }
    let bound = q.abs();
    let mut generated = BTreeSet::new();
    for y1 in -bound..=bound {
        if y1 == 0 || q % y1 != 0 {
            continue;
        }
        let y2 = q / y1;
        if y1.gcd(&y2) != 1 {
            continue;
        }
        generated.insert(([y1, y2], [-y1, y2]));
        generated.insert(([y1, y2], [y1, -y2]));
    }
    // Brute force: primitive isotropic-free columns with the right values,
    // orthogonal to each other, with entries bounded by |q|.
    let mut columns_v = Vec::new();
    let mut columns_w = Vec::new();
    for x in -bound..=bound {
        for y in -bound..=bound {
            if x.gcd(&y) != 1 {
                continue;
            }
            if x * y == q {
                columns_v.push([x, y]);
            }
            if x * y == -q {
                columns_w.push([x, y]);
            }
        }
    }
    let mut brute = BTreeSet::new();
    for jv in &columns_v {
        for jw in &columns_w {
            if jv[0] * jw[1] + jv[1] * jw[0] == 0 {
                brute.insert((*jv, *jw));
            }
        }
    }
    let isometries = hyperbolic_isometries();
    let by_h: Vec<_> = isometries.iter().map(|h| move |(a, b): EmbeddingPair| (act(h, a), act(h, b))).collect();
    let flip_v = |(a, b): EmbeddingPair| (neg(a), b);
    let flip_w = |(a, b): EmbeddingPair| (a, neg(b));
    let base: Vec<&dyn Fn(EmbeddingPair) -> EmbeddingPair> = by_h.iter().map(|f| f as &dyn Fn(EmbeddingPair) -> EmbeddingPair).collect();
    let mut with_w = base.clone();
    with_w.push(&flip_w);
    let mut with_v = base.clone();
    with_v.push(&flip_v);
    let mut with_both = with_w.clone();
    with_both.push(&flip_v);

    let (f, _) = orbits(&generated, &base);
    let (rf, _) = orbits(&generated, &with_w);
    let (lf, _) = orbits(&generated, &with_v);
    let (bf, reps) = orbits(&generated, &with_both);
    let (oracle_f, _) = orbits(&brute, &base);
    let (oracle_bf, _) = orbits(&brute, &with_both);
    let k = distinct_primes(q.unsigned_abs());
    let representatives = reps.iter().map(|(a, b)| (a[0], a[1], if *b == [-a[0], a[1]] { 1 } else { -1 })).collect();
    Ok(PrimClassification {
        q,
        k,
        f,
        rf,
        lf,
        bf,
        formula: if k == 0 { 1 } else { 1 << (k - 1) },
        oracle_f,
        oracle_bf,
        sets_agree: generated == brute,
        representatives,
    })
}

/// `(Z, y1 y2) -(y1; y2)-> H(Z) <-(-y1; y2)- (Z, -y1 y2)` with the splitting solved exactly.
pub fn make_z_embedding(y1: i64, y2: i64) -> Result<PrimEmbedding> {
    if y1.gcd(&y2) != 1 {
        return Err(Error::NotCoprime);
    }
    let q = y1 * y2;
    let mut pe = PrimEmbedding {
        v: QuadForm::rank_one(Laurent::int(q), Eps::Plus),
        vprime: QuadForm::rank_one(Laurent::int(-q), Eps::Plus),
        m: hyperbolic(1, Eps::Plus),
        j: Matrix::from_ints(&[&[y1], &[y2]]),
        jprime: Matrix::from_ints(&[&[-y1], &[y2]]),
        sigma: None,
    };
    pe.sigma = Some(glue::splitting(&pe, 0)?);
    Ok(pe)
}

/// `((Lambda, pq) -j_g-> H(Lambda) <-j'_g- (Lambda, -pq))` with
/// `j_g = (1 + 2p t^-n; p - 2p^2 t^-n)`, `j'_g = (1 + 2p t^n; -p + 2p^2 t^n)`
/// and splitting `(t^-n; 1 - p t^-n)`.
pub fn make_jg_embedding(params: &TgParams) -> PrimEmbedding {
    let ring = Ring::integral();
    let p = &params.p;
    let n = params.n;
    let two = BigInt::from(2);
    let two_p_sq = &two * p * p;
    let j = Matrix::column(vec![
        Laurent::int(1) + Laurent::term(&ring, &two * p, -n),
        c(p) - Laurent::term(&ring, two_p_sq.clone(), -n),
    ]);
    let jprime = Matrix::column(vec![
        Laurent::int(1) + Laurent::term(&ring, &two * p, n),
        Laurent::term(&ring, two_p_sq, n) - c(p),
    ]);
    let sigma = Matrix::column(vec![Laurent::t(-n), Laurent::int(1) - Laurent::term(&ring, p.clone(), -n)]);
    let v = params.form();
    PrimEmbedding { vprime: v.negate(), v, m: hyperbolic(1, Eps::Plus), j, jprime, sigma: Some(sigma) }
}

/// `((R, -ab) -(-a; b)-> H(R) <-(a; b)- (R, ab))` for coprime positive `a`, `b`.
/// The same matrices serve over `Z` and over the Laurent ring.
pub fn make_nab_fixture(a: i64, b: i64) -> Result<PrimEmbedding> {
    if a <= 0 || b <= 0 {
        return Err(Error::BadParams("a and b must be positive"));
    }
    if a.gcd(&b) != 1 {
        return Err(Error::NotCoprime);
    }
    let mut pe = PrimEmbedding {
        v: QuadForm::rank_one(Laurent::int(-a * b), Eps::Plus),
        vprime: QuadForm::rank_one(Laurent::int(a * b), Eps::Plus),
        m: hyperbolic(1, Eps::Plus),
        j: Matrix::from_ints(&[&[-a], &[b]]),
        jprime: Matrix::from_ints(&[&[a], &[b]]),
        sigma: None,
    };
    pe.sigma = Some(glue::splitting(&pe, 0)?);
    Ok(pe)
}

/// The isometry `[[0, 1], [1, a]]` from the fixture's `H(R)` to the union
/// `(R, -a) cup_id (R, -a)`, carrying `(-a; 1)` to `(1; 0)` and `(a; 1)` to `(1; 2a)`.
pub fn trivial_delta_witness(a: i64) -> Matrix {
    Matrix::from_ints(&[&[0, 1], &[1, a]])
}

/// The fixture for `(a, 1)` is the embedding of the identity boundary
/// automorphism, certified by [`trivial_delta_witness`].
pub fn verify_trivial_delta(a: i64) -> Result<bool> {
    let pe = make_nab_fixture(a, 1)?;
    let id = crate::formations::identity(&pe.v);
    let target = glue::pr_map(&id)?;
    let h = trivial_delta_witness(a);
    Ok(check_isometry(&h, &pe.m, &target.m)? && &h * &pe.j == target.j && &h * &pe.jprime == target.jprime)
}

/// Per-property outcome of [`verify_gluing_isometry`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingReport {
    pub isometry: bool,
    pub prop_a: bool,
    pub prop_b: bool,
    pub prop_c: bool,
}

impl GluingReport {
    pub fn passes(&self) -> bool {
        self.isometry && self.prop_a && self.prop_b && self.prop_c
    }
}

/// The isometry `phi: (v'' cup_f -v) + (v cup_f' -v') -> H(V) + (v'' cup_{f'f} -v')`.
pub fn gluing_isometry(f: &StableIso, fprime: &StableIso) -> Result<Matrix> {
    let (f, fprime) = align(f, fprime)?;
    gluing_aligned(&f, &fprime)
}

fn align(f: &StableIso, fprime: &StableIso) -> Result<(StableIso, StableIso)> {
    if f.dst.rank() != fprime.src.rank() || f.dst != fprime.src {
        return Err(Error::NotComposable("the middle forms differ"));
    }
    let k = f.dst_stab.max(fprime.src_stab);
    Ok((f.pad(k - f.dst_stab), fprime.pad(k - fprime.src_stab)))
}

fn gluing_aligned(f: &StableIso, fprime: &StableIso) -> Result<Matrix> {
    let eps = f.eps();
    let c = f.components()?;
    let c2 = fprime.components()?;
    let ring = f.alpha.ring().clone();
    let (n2, n, n1) = (f.src.rank(), f.dst.rank(), fprime.dst.rank());
    let lam = f.dst.lambda();
    let s_star = c.s.conj_transpose();
    let a2_star = c2.a.conj_transpose();
    let zero = |r: usize, k: usize| Matrix::zeros(r, k, &ring);
    let id = |k: usize| Matrix::identity(k, &ring);
    let rows = [
        Matrix::hstack(&[&c.a, &-eps.apply_matrix(&c.s), &-&(&s_star * &lam), &-&(&s_star * &a2_star)]),
        Matrix::hstack(&[&zero(n, n2), &id(n), &-&lam, &-&a2_star]),
        Matrix::hstack(&[&id(n2), &zero(n2, n), &c.b, &-&(&c.b1 * &c2.a1.conj_transpose())]),
        Matrix::hstack(&[&zero(n1, n2), &zero(n1, n), &zero(n1, n), &id(n1)]),
    ];
    Ok(Matrix::vstack(&[&rows[0], &rows[1], &rows[2], &rows[3]]))
}

/// Check that `phi` is an isometry with properties (a) to (c).
pub fn verify_gluing_isometry(f: &StableIso, fprime: &StableIso) -> Result<GluingReport> {
    let (f, fprime) = align(f, fprime)?;
    let phi = gluing_aligned(&f, &fprime)?;
    let ring = f.alpha.ring().clone();
    let eps = f.eps();
    let (n2, n, n1) = (f.src.rank(), f.dst.rank(), fprime.dst.rank());
    let composite = compose(&fprime, &f)?;
    let u1 = union(&f.src, &f.dst, &f)?;
    let u2 = union(&fprime.src, &fprime.dst, &fprime)?;
    let u3 = union(&composite.src, &composite.dst, &composite)?;
    let hyp = hyperbolic(n, eps);
    let isometry = check_isometry(&phi, &direct_sum(&[&u1, &u2])?, &direct_sum(&[&hyp, &u3])?)?;

    let zero = |r: usize, k: usize| Matrix::zeros(r, k, &ring);
    let (jf, jpf) = union_inclusions(&f)?;
    let (jf2, jpf2) = union_inclusions(&fprime)?;
    let (_, jp3) = union_inclusions(&composite)?;
    let prop_a = &phi * &Matrix::vstack(&[&zero(n2 + n, n1), &jpf2]) == Matrix::vstack(&[&zero(2 * n, n1), &jp3]);

    let first = n2 + 2 * n;
    let restricted = phi.block(0, 2 * n + n2, 0, first);
    let prop_b = phi.block(2 * n + n2, 2 * n + n2 + n1, 0, first).is_zero()
        && check_isometry(&restricted, &direct_sum(&[&u1, &f.dst])?, &direct_sum(&[&hyp, &f.src])?)?;
    let _ = jf;

    let diag = Matrix::vstack(&[&jpf, &-&jf2]);
    let expected = Matrix::vstack(&[&Matrix::identity(n, &ring), &zero(n + n2 + n1, n)]);
    let prop_c = &phi * &diag == expected;
    Ok(GluingReport { isometry, prop_a, prop_b, prop_c })
}

/// `D = {(j'_f x, -x)}` inside `(v cup_f -v) + v`, as a column block.
pub fn diagonal_sublagrangian(f: &StableIso) -> Result<Matrix> {
    let (_, jp) = union_inclusions(f)?;
    let n = f.src.rank();
    Ok(Matrix::vstack(&[&jp, &-&Matrix::identity(n, f.alpha.ring())]))
}

/// Both the symmetrization and the quadratic form of `(v cup_f -v) + v` vanish on `D`.
pub fn diagonal_is_sublagrangian(f: &StableIso) -> Result<bool> {
    let d = diagonal_sublagrangian(f)?;
    let ambient = direct_sum(&[&union(&f.src, &f.dst, f)?, &f.src])?;
    let restricted = restrict_form(&ambient, &d)?;
    Ok((&(&d.conj_transpose() * &ambient.lambda()) * &d).is_zero() && q_is_zero(restricted.psi(), restricted.eps()))
}

/// A short label for reports.
pub fn describe(params: &TgParams) -> String {
    format!("p={}, n={}", params.p, params.n)
}
