//! Verification suites and the other report-producing commands.

use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use quadform::constructions::{self as c, TgParams};
use quadform::ell::{self, HyperbolicityMode, QuasiFormation};
use quadform::formations::{self, biso_compare, boundary_of_isometry, check_stable_iso, BisoWitness};
use quadform::forms::{check_isometry, hyperbolic, ComplementMode};
use quadform::glue::{self, bprim_compare, delta_map, esf_to_embedding, pr_map, ExtendedForm, PrimEmbedding, PrimWitness};
use quadform::{Eps, Laurent, Matrix, QuadForm, StableIso, Verdict};

use crate::format::Json;
use crate::report::Report;
use crate::CliError;

pub const SUITES: [&str; 6] = ["all", "tg", "phi", "markexample", "fixtures", "roundtrip"];

/// Parameters shared by every command. `None` means the suite default.
#[derive(Clone, Debug)]
pub struct Params {
    pub p: Option<i64>,
    pub n: Option<i64>,
    pub q: Option<i64>,
    pub degree_bound: u32,
    pub seed: u64,
}

impl Default for Params {
    fn default() -> Params {
        Params { p: None, n: None, q: None, degree_bound: quadform::DEFAULT_DEGREE_BOUND, seed: 0 }
    }
}

impl Params {
    fn ps(&self) -> Vec<i64> {
        self.p.map_or(vec![-1, -2, -3, -4], |p| vec![p])
    }

    fn ns(&self, radius: i64) -> Vec<i64> {
        self.n.map_or((-radius..=radius).collect(), |n| vec![n])
    }

    fn echo(&self) -> Map<String, Value> {
        let mut m = Map::new();
        if let Some(p) = self.p {
            m.insert("p".into(), json!(p));
        }
        if let Some(n) = self.n {
            m.insert("n".into(), json!(n));
        }
        if let Some(q) = self.q {
            m.insert("q".into(), json!(q));
        }
        m.insert("degree_bound".into(), json!(self.degree_bound));
        m.insert("seed".into(), json!(self.seed));
        m
    }
}

fn tg_params(p: i64, n: i64) -> Result<TgParams, CliError> {
    Ok(TgParams::new(p, n)?)
}

fn biso_json(w: &BisoWitness) -> Value {
    json!({ "h1": w.h1.to_json(), "h2": w.h2.to_json(), "delta": w.delta.to_json() })
}

fn prim_json(w: &PrimWitness) -> Value {
    json!({ "h": w.h.to_json(), "g1": w.g1.to_json(), "g2": w.g2.to_json(), "twisted": w.twisted })
}

fn record_biso(r: &mut Report, check: String, v: Verdict<BisoWitness>) {
    match v {
        Verdict::Equal(w) => r.pass(check, Some(biso_json(&w))),
        Verdict::Distinct(why) => r.fail(check, Some(Value::String(why))),
        Verdict::Unknown => r.unknown(check),
    }
}

fn record_prim(r: &mut Report, check: String, v: Verdict<PrimWitness>) {
    match v {
        Verdict::Equal(w) => r.pass(check, Some(prim_json(&w))),
        Verdict::Distinct(why) => r.fail(check, Some(Value::String(why))),
        Verdict::Unknown => r.unknown(check),
    }
}

pub fn run_verify(suite: &str, params: &Params) -> Result<Report, CliError> {
    if !SUITES.contains(&suite) {
        return Err(CliError::UnknownSuite(suite.to_string()));
    }
    let mut r = Report::new(&format!("verify {}", suite), params.echo());
    let all = suite == "all";
    if all || suite == "tg" {
        suite_tg(&mut r, params)?;
    }
    if all || suite == "phi" {
        suite_phi(&mut r, params)?;
    }
    if all || suite == "markexample" {
        suite_markexample(&mut r, params)?;
    }
    if all || suite == "fixtures" {
        suite_fixtures(&mut r, params)?;
    }
    if all || suite == "roundtrip" {
        suite_roundtrip(&mut r, params)?;
    }
    Ok(r)
}

/// Every defining condition of `t_g` and the `u_g` witness on the grid.
pub fn suite_tg(r: &mut Report, params: &Params) -> Result<(), CliError> {
    for p in params.ps() {
        for n in params.ns(8) {
            let tp = tg_params(p, n)?;
            let tg = c::make_tg(&tp)?;
            let report = check_stable_iso(&tg)?;
            let failed: Vec<&str> = report.conditions().iter().filter(|(_, ok)| !ok).map(|(name, _)| *name).collect();
            let tag = format!("tg[p={},n={}]", p, n);
            r.expect(format!("{} stable iso", tag), failed.is_empty(), (!failed.is_empty()).then(|| json!(failed)));
            let u = c::make_ug(&tp);
            let ok = c::verify_tg_hyperbolic_with(&tp, &u)?;
            r.expect(format!("{} hyperbolic", tag), ok, Some(u.to_json()));
        }
    }
    Ok(())
}

fn phi_objects(p: i64) -> Result<Vec<(String, StableIso)>, CliError> {
    let tp = tg_params(p, 1)?;
    let v = tp.form();
    let minus = Matrix::from_ints(&[&[-1]]);
    Ok(vec![
        ("d(id)".into(), formations::identity(&v)),
        ("d(-1)".into(), boundary_of_isometry(&minus, &v, &v)?),
        ("t(t^1)".into(), c::make_tg(&tp)?),
        ("t(t^2)".into(), c::make_tg(&tg_params(p, 2)?)?),
    ])
}

fn phi_check(r: &mut Report, name: String, f: &StableIso, g: &StableIso) -> Result<(), CliError> {
    let rep = c::verify_gluing_isometry(f, g)?;
    let detail = json!({ "isometry": rep.isometry, "a": rep.prop_a, "b": rep.prop_b, "c": rep.prop_c });
    r.expect(name, rep.passes(), Some(detail));
    Ok(())
}

/// The gluing isometry for composable pairs over the Laurent ring and over `Z`.
pub fn suite_phi(r: &mut Report, params: &Params) -> Result<(), CliError> {
    let p = params.p.unwrap_or(-1);
    let objs = phi_objects(p)?;
    for (a, f) in &objs {
        for (b, g) in &objs {
            phi_check(r, format!("phi[p={}] {} then {}", p, a, b), f, g)?;
        }
    }
    let pe = c::make_z_embedding(3, 5)?;
    let f = delta_map(&pe, params.degree_bound)?;
    let minus = boundary_of_isometry(&Matrix::from_ints(&[&[-1]]), &f.dst, &f.dst)?;
    let id = formations::identity(&f.dst);
    phi_check(r, "phi[Z] f(3,5) then d(-1)".into(), &f, &minus)?;
    phi_check(r, "phi[Z] f(3,5) then d(id)".into(), &f, &id)?;
    phi_check(r, "phi[Z] f(3,5) then f(3,5)".into(), &f, &f)?;
    phi_check(r, "phi[Z] d(-1) then f(3,5)".into(), &minus, &f)?;
    r.expect("diagonal[Z] f(3,5) sublagrangian", c::diagonal_is_sublagrangian(&f)?, Some(c::diagonal_sublagrangian(&f)?.to_json()));
    Ok(())
}

/// The worked `Z` example with `j = (3; 5)` and splitting `(2; 3)`.
pub fn suite_markexample(r: &mut Report, params: &Params) -> Result<(), CliError> {
    let bound = params.degree_bound;
    let mut pe = c::make_z_embedding(3, 5)?;
    pe.sigma = Some(Matrix::from_ints(&[&[2], &[3]]));
    r.expect("markexample embedding certificates", pe.check(bound)?.holds(), None);
    let f = delta_map(&pe, bound)?;
    let comps = f.components()?;
    let got = [comps.a.get(0, 0), comps.b.get(0, 0), comps.s.get(0, 0)].map(|x| x.to_string());
    r.expect("markexample components (-19, -19, -6)", got == ["-19", "-19", "-6"], Some(json!(got)));
    r.expect("markexample stable iso", check_stable_iso(&f)?.passes(), None);
    let back = pr_map(&f)?;
    let union = Matrix::from_ints(&[&[15, 0], &[-19, 6]]);
    r.expect("markexample union [[15,0],[-19,6]]", *back.m.psi() == union, Some(back.m.psi().to_json()));
    let w = Matrix::from_ints(&[&[3, -2], &[5, -3]]);
    let ok = check_isometry(&w, &back.m, &hyperbolic(1, Eps::Plus))? && glue::r_iso(&pe, bound)? == w;
    r.expect("markexample witness [[3,-2],[5,-3]]", ok, Some(w.to_json()));
    record_prim(r, "markexample Pr(delta(pe)) = pe".into(), bprim_compare(&back, &pe, bound, false)?);
    record_biso(r, "markexample delta(Pr(f)) = f".into(), biso_compare(&delta_map(&back, bound)?, &f, bound)?);
    Ok(())
}

fn nab_extended_form(a: i64, b: i64) -> ExtendedForm {
    ExtendedForm { lambda: Matrix::from_ints(&[&[0, 1], &[1, 0]]), nu: Matrix::from_ints(&[&[b, a]]), kernel: None }
}

/// Named embeddings, their certificates, and the quasi-formation layer on the `(3; 5)` example.
pub fn suite_fixtures(r: &mut Report, params: &Params) -> Result<(), CliError> {
    let bound = params.degree_bound;
    let esf = esf_to_embedding(&nab_extended_form(24, 1), bound)?;
    let nab = c::make_nab_fixture(24, 1)?;
    r.expect("fixtures esf(nu=(1,24)) certificates", esf.check(bound)?.holds(), None);
    record_prim(r, "fixtures esf(nu=(1,24)) = nab(24,1)".into(), bprim_compare(&esf, &nab, bound, false)?);
    for a in [24, 48] {
        r.expect(format!("fixtures nab({},1) trivial delta", a), c::verify_trivial_delta(a)?, Some(c::trivial_delta_witness(a).to_json()));
    }
    let f35 = c::make_nab_fixture(3, 5)?;
    r.expect("fixtures nab(3,5) certificates", f35.check(bound)?.holds(), None);
    match c::make_nab_fixture(2, 4) {
        Err(quadform::Error::NotCoprime) => r.pass("fixtures nab(2,4) rejected", None),
        other => r.fail("fixtures nab(2,4) rejected", Some(Value::String(format!("{:?}", other.map(|_| ()))))),
    }
    let jg = c::make_jg_embedding(&tg_params(-1, 0)?);
    let ok = jg.j == Matrix::from_ints(&[&[-1], &[-3]]) && jg.jprime == Matrix::from_ints(&[&[-1], &[3]]);
    r.expect("fixtures jg[p=-1,n=0] columns", ok, None);

    let mut pe = c::make_z_embedding(3, 5)?;
    pe.sigma = Some(Matrix::from_ints(&[&[2], &[3]]));
    let f = delta_map(&pe, bound)?;
    let d = c::diagonal_sublagrangian(&f)?;
    let expected = Matrix::from_ints(&[&[-19], &[-30], &[-1]]);
    r.expect("fixtures diagonal (-19; -30; -1)", d == expected && c::diagonal_is_sublagrangian(&f)?, Some(d.to_json()));

    let x = QuasiFormation::new(Matrix::from_ints(&[&[3], &[5]]), Eps::Plus)?;
    let bm = ell::boundary_minus(&x)?;
    let bp = ell::boundary_plus(&x, &ComplementMode::Exact)?;
    let v15 = QuadForm::rank_one(Laurent::int(15), Eps::Plus);
    r.expect("fixtures ell b-(3;5) = (15)", bm == v15, Some(bm.to_json()));
    r.expect("fixtures ell b+(3;5) = (15)", bp == v15, Some(bp.to_json()));
    let k = ell::kappa(&ell::delta_of_quasiformation(&x, pe.sigma.clone(), &ComplementMode::Exact, bound)?)?;
    match ell::hyperbolicity_test(&k, &HyperbolicityMode::ZExact)? {
        ell::Hyperbolicity::Hyperbolic(u) => r.pass("fixtures ell kappa(delta(3;5)) hyperbolic", Some(u.to_json())),
        ell::Hyperbolicity::NotHyperbolic(why) => r.fail("fixtures ell kappa(delta(3;5)) hyperbolic", Some(Value::String(why))),
        ell::Hyperbolicity::Unknown => r.unknown("fixtures ell kappa(delta(3;5)) hyperbolic"),
    }
    Ok(())
}

/// Coprime pairs with entries in `[1, 50]`, drawn from the seed.
pub fn seeded_pairs(seed: u64, count: usize) -> Vec<(i64, i64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let y1: i64 = rng.gen_range(1..=50);
        let y2: i64 = rng.gen_range(1..=50);
        if y1.gcd(&y2) == 1 && !out.contains(&(y1, y2)) {
            out.push((y1, y2));
        }
    }
    out
}

fn roundtrip(r: &mut Report, tag: &str, pe: &PrimEmbedding, bound: u32) -> Result<(), CliError> {
    let f = delta_map(pe, bound)?;
    let back = pr_map(&f)?;
    record_prim(r, format!("{} Pr(delta) = id", tag), bprim_compare(&back, pe, bound, false)?);
    record_biso(r, format!("{} delta(Pr) = id", tag), biso_compare(&delta_map(&back, bound)?, &f, bound)?);
    Ok(())
}

/// `Pr` and `delta` are mutually inverse on seeded `Z` pairs and on the `(j_g, j'_g)` family,
/// and only `n = 0` is extended.
pub fn suite_roundtrip(r: &mut Report, params: &Params) -> Result<(), CliError> {
    let bound = params.degree_bound;
    for (y1, y2) in seeded_pairs(params.seed, 20) {
        roundtrip(r, &format!("roundtrip[Z y=({},{})]", y1, y2), &c::make_z_embedding(y1, y2)?, bound)?;
    }
    let ps = params.p.map_or(vec![-1, -2], |p| vec![p]);
    for &p in &ps {
        for n in params.ns(3) {
            roundtrip(r, &format!("roundtrip[jg p={},n={}]", p, n), &c::make_jg_embedding(&tg_params(p, n)?), bound)?;
        }
    }
    for &p in &ps {
        for n in params.ns(4) {
            let check = format!("extended[jg p={},n={}] iff n = 0", p, n);
            match glue::check_extended(&c::make_jg_embedding(&tg_params(p, n)?), bound)? {
                Some(e) => r.expect(check, e == (n == 0), Some(json!(e))),
                None => r.unknown(check),
            }
        }
    }
    Ok(())
}

pub fn cmd_enum_prim(q: i64) -> Result<Report, CliError> {
    let mut inputs = Map::new();
    inputs.insert("q".into(), json!(q));
    let mut r = Report::new("enum-prim", inputs);
    let cl = c::enumerate_prim_z(q)?;
    let counts = json!({ "k": cl.k, "F": cl.f, "rF": cl.rf, "lF": cl.lf, "bF": cl.bf });
    r.pass("counts", Some(counts));
    r.expect("bF = 2^(k-1)", cl.bf == cl.formula, Some(json!(cl.formula)));
    r.expect("brute force agrees", cl.sets_agree && cl.oracle_f == cl.f && cl.oracle_bf == cl.bf, Some(json!({ "F": cl.oracle_f, "bF": cl.oracle_bf })));
    let reps: Vec<Value> = cl.representatives.iter().map(|(a, b, s)| json!({ "j": [a, b], "jprime": [-s * a, s * b] })).collect();
    r.pass("representatives", Some(Value::Array(reps)));
    Ok(r)
}

pub fn cmd_tg(p: i64, n: i64, invariant: bool, hyperbolic_flag: bool) -> Result<Report, CliError> {
    let tp = tg_params(p, n)?;
    let mut inputs = Map::new();
    inputs.insert("p".into(), json!(p));
    inputs.insert("n".into(), json!(n));
    let mut r = Report::new("tg", inputs);
    let tg = c::make_tg(&tp)?;
    let comps = tg.components()?;
    let show = |m: &Matrix| m.get(0, 0).to_string();
    r.pass("components", Some(json!({ "a": show(&comps.a), "b": show(&comps.b), "s": show(&comps.s) })));
    let failed: Vec<&str> = check_stable_iso(&tg)?.conditions().iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    r.expect("stable iso", failed.is_empty(), (!failed.is_empty()).then(|| json!(failed)));
    if invariant {
        let iv = c::tg_invariant(&tp)?;
        let m2 = (BigInt::from(2) * p).magnitude().to_string();
        let mq = tp.q().magnitude().to_string();
        let value = json!({ "value": iv.to_string(), "moduli": [m2, mq], "normalized": iv.normalized, "up_to_twist": c::invariant_up_to_twist(&iv).to_string() });
        r.pass("invariant", Some(value));
    }
    if hyperbolic_flag {
        let u = c::make_ug(&tp);
        r.expect("hyperbolic", c::verify_tg_hyperbolic_with(&tp, &u)?, Some(u.to_json()));
    }
    Ok(r)
}

pub fn cmd_compare(kind: &str, lhs: &Value, rhs: &Value, degree_bound: u32, group_twist: bool) -> Result<Report, CliError> {
    let mut inputs = Map::new();
    inputs.insert("kind".into(), json!(kind));
    inputs.insert("degree_bound".into(), json!(degree_bound));
    inputs.insert("group_twist".into(), json!(group_twist));
    let mut r = Report::new("compare", inputs);
    match kind {
        "biso" => {
            let (f, g) = (StableIso::from_json(lhs)?, StableIso::from_json(rhs)?);
            let mut v = biso_compare(&f, &g, degree_bound)?;
            if group_twist && !v.is_equal() {
                if let Verdict::Equal(w) = biso_compare(&f, &g.twist(), degree_bound)? {
                    v = Verdict::Equal(w);
                }
            }
            record_biso(&mut r, "biso".into(), v);
        }
        "bprim" => {
            let (a, b) = (PrimEmbedding::from_json(lhs)?, PrimEmbedding::from_json(rhs)?);
            record_prim(&mut r, "bprim".into(), bprim_compare(&a, &b, degree_bound, group_twist)?);
        }
        other => return Err(CliError::BadParams(format!("unknown comparison kind {:?}", other))),
    }
    Ok(r)
}

/// JSON for a named object, for use as `compare` input.
pub fn emit(kind: &str, p: i64, n: i64, a: i64, b: i64) -> Result<Value, CliError> {
    Ok(match kind {
        "tg" => c::make_tg(&tg_params(p, n)?)?.to_json(),
        "jg" => c::make_jg_embedding(&tg_params(p, n)?).to_json(),
        "nab" => c::make_nab_fixture(a, b)?.to_json(),
        "zemb" => c::make_z_embedding(a, b)?.to_json(),
        other => return Err(CliError::BadParams(format!("unknown object {:?}", other))),
    })
}
