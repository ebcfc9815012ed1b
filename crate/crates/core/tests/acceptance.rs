//! One pass/fail line per acceptance criterion. Exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quadform::constructions::*;
use quadform::ell::{self, HyperbolicityMode, QuasiFormation};
use quadform::formations::{biso_compare, boundary_of_isometry, check_stable_iso, identity};
use quadform::forms::{check_isometry, hyperbolic, ComplementMode};
use quadform::glue::{self, bprim_compare, check_extended, delta_map, esf_to_embedding, pr_map, ExtendedForm, PrimEmbedding};
use quadform::{Eps, Laurent, Matrix, QuadForm, StableIso};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn err(e: quadform::Error) -> String {
    e.to_string()
}

const PS: [i64; 4] = [-1, -2, -3, -4];

fn tg_validity() -> Outcome {
    for p in PS {
        for n in -8..=8 {
            let r = check_stable_iso(&make_tg(&TgParams::new(p, n).map_err(err)?).map_err(err)?).map_err(err)?;
            ensure(r.passes(), || format!("p={} n={}: {:?}", p, n, r.conditions()))?;
        }
    }
    Ok(())
}

fn hyperbolicity_witness() -> Outcome {
    for p in PS {
        for n in -8..=8 {
            let params = TgParams::new(p, n).map_err(err)?;
            ensure(verify_tg_hyperbolic(&params).map_err(err)?, || format!("p={} n={}", p, n))?;
        }
    }
    Ok(())
}

fn invariant_injectivity() -> Outcome {
    for p in PS {
        let values: Vec<InvariantValue> = (-8..=8).map(|n| tg_invariant(&TgParams::new(p, n).unwrap())).collect::<Result<_, _>>().map_err(err)?;
        for (i, a) in values.iter().enumerate() {
            for (k, b) in values.iter().enumerate() {
                ensure((a == b) == (i == k), || format!("p={}: n={} and n={} collide", p, i as i64 - 8, k as i64 - 8))?;
                let (ta, tb) = (invariant_up_to_twist(a), invariant_up_to_twist(b));
                let same_pair = (i as i64 - 8).abs() == (k as i64 - 8).abs();
                ensure((ta == tb) == same_pair, || format!("p={}: twist classes of n={} and n={}", p, i as i64 - 8, k as i64 - 8))?;
            }
        }
    }
    Ok(())
}

fn classification_counts() -> Outcome {
    for (q, expected) in [(7, 1), (15, 2), (105, 4), (1155, 8)] {
        let c = enumerate_prim_z(q).map_err(err)?;
        ensure(c.bf == expected && c.formula == expected, || format!("q={}: bF={} formula={}", q, c.bf, c.formula))?;
        ensure(c.oracle_bf == c.bf && c.oracle_f == c.f && c.sets_agree, || format!("q={}: oracle disagrees", q))?;
    }
    Ok(())
}

fn worked_example() -> Outcome {
    let mut pe = make_z_embedding(3, 5).map_err(err)?;
    pe.sigma = Some(Matrix::from_ints(&[&[2], &[3]]));
    let f = delta_map(&pe, 8).map_err(err)?;
    let c = f.components().map_err(err)?;
    let got = (c.a.get(0, 0).clone(), c.b.get(0, 0).clone(), c.s.get(0, 0).clone());
    ensure(got == (Laurent::int(-19), Laurent::int(-19), Laurent::int(-6)), || format!("components {:?}", got))?;
    let back = pr_map(&f).map_err(err)?;
    ensure(*back.m.psi() == Matrix::from_ints(&[&[15, 0], &[-19, 6]]), || format!("union {}", back.m.psi()))?;
    let w = Matrix::from_ints(&[&[3, -2], &[5, -3]]);
    ensure(check_isometry(&w, &back.m, &hyperbolic(1, Eps::Plus)).map_err(err)?, || "witness rejected".into())?;
    ensure(bprim_compare(&back, &pe, 8, false).map_err(err)?.is_equal(), || "Pr(delta(pe)) is not pe".into())
}

fn roundtrip(pe: &PrimEmbedding, bound: u32) -> Outcome {
    let f = delta_map(pe, bound).map_err(err)?;
    let back = pr_map(&f).map_err(err)?;
    let prim = bprim_compare(&back, pe, bound, false).map_err(err)?;
    ensure(prim.is_equal(), || format!("Pr(delta): {:?}", prim.is_distinct()))?;
    let iso = biso_compare(&delta_map(&back, bound).map_err(err)?, &f, bound).map_err(err)?;
    ensure(iso.is_equal(), || format!("delta(Pr): {:?}", iso.is_distinct()))
}

fn inverse_roundtrips() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut done = 0;
    while done < 20 {
        let (y1, y2): (i64, i64) = (rng.gen_range(1..=50), rng.gen_range(1..=50));
        if y1.gcd(&y2) != 1 {
            continue;
        }
        roundtrip(&make_z_embedding(y1, y2).map_err(err)?, 8).map_err(|e| format!("y=({},{}): {}", y1, y2, e))?;
        done += 1;
    }
    for p in [-1, -2] {
        for n in -3..=3 {
            roundtrip(&make_jg_embedding(&TgParams::new(p, n).map_err(err)?), 8).map_err(|e| format!("jg p={} n={}: {}", p, n, e))?;
        }
    }
    Ok(())
}

fn extendedness() -> Outcome {
    for p in [-1, -2] {
        for n in -4..=4 {
            let e = check_extended(&make_jg_embedding(&TgParams::new(p, n).map_err(err)?), 8).map_err(err)?;
            ensure(e == Some(n == 0), || format!("p={} n={}: {:?}", p, n, e))?;
        }
    }
    Ok(())
}

fn gluing_isometry() -> Outcome {
    let params = TgParams::new(-1, 1).map_err(err)?;
    let v = params.form();
    let minus = Matrix::from_ints(&[&[-1]]);
    let objs: Vec<StableIso> = vec![
        identity(&v),
        boundary_of_isometry(&minus, &v, &v).map_err(err)?,
        make_tg(&params).map_err(err)?,
        make_tg(&TgParams::new(-1, 2).map_err(err)?).map_err(err)?,
    ];
    for (i, f) in objs.iter().enumerate() {
        for (k, g) in objs.iter().enumerate() {
            let r = verify_gluing_isometry(f, g).map_err(err)?;
            ensure(r.passes(), || format!("pair ({}, {}): {:?}", i, k, r))?;
        }
    }
    for (y1, y2) in [(3, 5), (2, 7), (1, 6)] {
        let f = delta_map(&make_z_embedding(y1, y2).map_err(err)?, 8).map_err(err)?;
        let m = boundary_of_isometry(&minus, &f.dst, &f.dst).map_err(err)?;
        for (a, b) in [(&f, &m), (&m, &f), (&f, &f)] {
            let r = verify_gluing_isometry(a, b).map_err(err)?;
            ensure(r.passes(), || format!("Z y=({},{}): {:?}", y1, y2, r))?;
        }
    }
    Ok(())
}

fn fixture_coherence() -> Outcome {
    let esf = ExtendedForm { lambda: Matrix::from_ints(&[&[0, 1], &[1, 0]]), nu: Matrix::from_ints(&[&[1, 24]]), kernel: None };
    let pe = esf_to_embedding(&esf, 8).map_err(err)?;
    let nab = make_nab_fixture(24, 1).map_err(err)?;
    ensure(bprim_compare(&pe, &nab, 8, false).map_err(err)?.is_equal(), || "esf embedding differs from the fixture".into())?;
    for a in [24, 48] {
        ensure(verify_trivial_delta(a).map_err(err)?, || format!("a={}", a))?;
    }
    Ok(())
}

fn ell_layer() -> Outcome {
    for y1 in -12i64..=12 {
        for y2 in -12i64..=12 {
            if y1 == 0 || y2 == 0 || y1.gcd(&y2) != 1 {
                continue;
            }
            let x = QuasiFormation::new(Matrix::from_ints(&[&[y1], &[y2]]), Eps::Plus).map_err(err)?;
            let v = QuadForm::rank_one(Laurent::int(y1 * y2), Eps::Plus);
            ensure(ell::boundary_minus(&x).map_err(err)? == v, || format!("b- at ({},{})", y1, y2))?;
            ensure(ell::boundary_plus(&x, &ComplementMode::Exact).map_err(err)? == v, || format!("b+ at ({},{})", y1, y2))?;
            ensure(ell::is_elementary_rep(&x).map_err(err)? == (y2.abs() == 1), || format!("elementary at ({},{})", y1, y2))?;
            let k = ell::kappa(&ell::delta_of_quasiformation(&x, None, &ComplementMode::Exact, 8).map_err(err)?).map_err(err)?;
            let h = ell::hyperbolicity_test(&k, &HyperbolicityMode::ZExact).map_err(err)?;
            ensure(h.is_hyperbolic(), || format!("kappa(delta) at ({},{}): {:?}", y1, y2, h))?;
        }
    }
    let f = QuasiFormation::new(Matrix::from_ints(&[&[1], &[0]]), Eps::Plus).map_err(err)?;
    ensure(!ell::is_elementary_rep(&f).map_err(err)?, || "V = F counted as elementary".into())?;
    let graph = QuasiFormation::new(Matrix::from_ints(&[&[1, 2], &[2, 5], &[1, 0], &[0, 1]]), Eps::Plus).map_err(err)?;
    ensure(ell::is_elementary_rep(&graph).map_err(err)?, || "graph not elementary".into())?;
    let odd = Matrix::from_ints(&[&[2, 1], &[1, 2]]);
    ensure(ell::hyperbolicity_test_symmetric(&odd).map_err(err)?.is_not_hyperbolic(), || "definite form passed".into())?;
    let t = glue::pr_map(&identity(&QuadForm::rank_one(Laurent::int(-3), Eps::Plus))).map_err(err)?;
    let h = ell::hyperbolicity_test(&t.m, &HyperbolicityMode::ZExact).map_err(err)?;
    ensure(h.is_hyperbolic(), || "kappa(d id) not hyperbolic".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("t_g validity on p in {-1..-4}, |n| <= 8", tg_validity),
        ("u_g hyperbolicity witness on the same grid", hyperbolicity_witness),
        ("invariant injective in n, twist classes {n, -n}", invariant_injectivity),
        ("Z-classification counts 1, 2, 4, 8 with oracle", classification_counts),
        ("worked (3, 5, 2, 3) example", worked_example),
        ("Pr and delta mutually inverse", inverse_roundtrips),
        ("extended iff n = 0", extendedness),
        ("gluing isometry and its three properties", gluing_isometry),
        ("extended-form fixture and trivial delta witness", fixture_coherence),
        ("boundary maps, elementary test, kappa(delta) hyperbolic", ell_layer),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(()) => println!("PASS  criterion {:>2}: {} ({} ms)", i + 1, name, ms),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {:>2}: {} ({} ms): {}", i + 1, name, ms, why);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
