use num_bigint::BigInt;
use quadform::constructions::*;
use quadform::formations::{check_stable_iso, compose, identity, invert, biso_compare};
use quadform::glue::{check_extended, closed_form_components, delta_map, f_from_embedding, pr_map, bprim_compare};
use quadform::{Laurent, Matrix};

#[test]
fn tg_passes_every_condition() {
    for p in [-1i64, -2, -3, -4] {
        for n in -8..=8 {
            let params = TgParams::new(p, n).unwrap();
            let tg = make_tg(&params).unwrap();
            let report = check_stable_iso(&tg).unwrap();
            assert!(report.passes(), "p={p} n={n}: {:?}", report.conditions());
            assert!(verify_tg_hyperbolic(&params).unwrap(), "p={p} n={n}");
        }
    }
}

#[test]
fn tg_components_match_table() {
    let params = TgParams::new(-1, 1).unwrap();
    let c = make_tg(&params).unwrap().components().unwrap();
    assert_eq!(c.b.get(0, 0).to_string(), params.b().to_string());
    assert_eq!(c.a.get(0, 0), &params.b().involute());
    assert_eq!(c.s.get(0, 0), &params.s());
}

#[test]
fn ug_factors_and_det() {
    for n in -3..=3 {
        let params = TgParams::new(-2, n).unwrap();
        let [x, y, z] = ug_factors(&params);
        let u = make_ug(&params);
        assert_eq!(&(&x * &y) * &z, u);
        assert!(u.det().unwrap().is_one());
    }
    let params = TgParams::new(-1, 0).unwrap();
    assert_eq!(make_ug(&params), Matrix::from_ints(&[&[-1, 1], &[-3, 2]]));
    let mut bad = make_ug(&params);
    bad.set(0, 0, Laurent::int(0));
    assert!(!verify_tg_hyperbolic_with(&params, &bad).unwrap());
}

#[test]
fn invariant_values() {
    let params = TgParams::new(-2, 3).unwrap();
    let iv = tg_invariant(&params).unwrap();
    assert!(iv.comp_2p.is_one());
    for n in -8..=8 {
        for m in -8..=8 {
            let a = tg_invariant(&TgParams::new(-2, n).unwrap()).unwrap();
            let b = tg_invariant(&TgParams::new(-2, m).unwrap()).unwrap();
            assert_eq!(a == b, n == m);
        }
        let a = tg_invariant(&TgParams::new(-2, n).unwrap()).unwrap();
        assert_eq!(twist_invariant(&a), tg_invariant(&TgParams::new(-2, -n).unwrap()).unwrap());
    }
    let iv = tg_invariant(&TgParams::new(-1, 2).unwrap()).unwrap();
    println!("{iv}");
}

#[test]
fn prim_counts() {
    for (q, bf) in [(7, 1), (15, 2), (105, 4)] {
        let c = enumerate_prim_z(q).unwrap();
        assert_eq!(c.bf, bf, "{c:?}");
        assert_eq!(c.formula, bf);
        assert_eq!(c.oracle_bf, bf);
        assert!(c.sets_agree, "{c:?}");
    }
    assert_eq!(enumerate_prim_z(15).unwrap().f, 4);
}

#[test]
fn f_j_components_closed_form() {
    let pe = make_z_embedding(3, 5).unwrap();
    let pe = quadform::glue::PrimEmbedding { sigma: Some(Matrix::from_ints(&[&[2], &[3]])), ..pe };
    let f = f_from_embedding(&pe, 4).unwrap();
    let r = check_stable_iso(&f).unwrap();
    assert!(r.passes(), "{:?}", r.conditions());
    let c = f.components().unwrap();
    let (a, b, s) = closed_form_components(&pe, 4).unwrap();
    assert_eq!((c.a.clone(), c.b.clone()), (a, b));
    assert!(quadform::forms::q_equal(&c.s, &s, f.eps()).unwrap());
    println!("{} {} {}", c.a.get(0,0), c.b.get(0,0), c.s.get(0,0));
}

#[test]
fn pr_delta_roundtrip() {
    let params = TgParams::new(-1, 2).unwrap();
    let tg = make_tg(&params).unwrap();
    let pe = pr_map(&tg).unwrap();
    assert!(pe.check(4).unwrap().holds());
    let back = delta_map(&pe, 4).unwrap();
    assert!(check_stable_iso(&back).unwrap().passes());
    assert!(biso_compare(&tg, &back, 4).unwrap().is_equal());
    let other = make_tg(&TgParams::new(-1, 1).unwrap()).unwrap();
    assert!(biso_compare(&other, &back, 4).unwrap().is_distinct());
}

#[test]
fn jg_family() {
    for p in [-1i64, -2] {
        for n in -4..=4 {
            let params = TgParams::new(p, n).unwrap();
            let pe = make_jg_embedding(&params);
            assert!(pe.check(4).unwrap().holds(), "p={p} n={n}");
            let d = delta_map(&pe, 4).unwrap();
            let tg = make_tg(&params).unwrap();
            assert!(biso_compare(&tg, &d, 4).unwrap().is_equal(), "p={p} n={n}");
            assert_eq!(check_extended(&pe, 4).unwrap(), Some(n == 0), "p={p} n={n}");
        }
    }
    let pe = make_jg_embedding(&TgParams::new(-1, 0).unwrap());
    assert_eq!(pe.j, Matrix::from_ints(&[&[-1], &[-3]]));
    assert_eq!(pe.jprime, Matrix::from_ints(&[&[-1], &[3]]));
}

#[test]
fn fixtures() {
    assert!(make_nab_fixture(3, 5).unwrap().check(2).unwrap().holds());
    assert!(make_nab_fixture(2, 4).is_err());
    for a in 1..6 {
        assert!(verify_trivial_delta(a).unwrap(), "a={a}");
    }
    let x = make_nab_fixture(3, 1).unwrap();
    let y = pr_map(&identity(&x.v)).unwrap();
    assert!(bprim_compare(&x, &y, 2, false).unwrap().is_equal());
}

#[test]
fn gluing_isometry() {
    let params = TgParams::new(-1, 1).unwrap();
    let id = identity(&params.form());
    assert!(verify_gluing_isometry(&id, &id).unwrap().passes());
    let t1 = make_tg(&params).unwrap();
    let t2 = make_tg(&TgParams::new(-1, 2).unwrap()).unwrap();
    let r = verify_gluing_isometry(&t1, &t2).unwrap();
    assert!(r.passes(), "{r:?}");
    let f = f_from_embedding(&make_z_embedding(3, 5).unwrap(), 4).unwrap();
    let minus = quadform::formations::boundary_of_isometry(&Matrix::from_ints(&[&[-1]]), &f.dst, &f.dst).unwrap();
    let r = verify_gluing_isometry(&f, &minus).unwrap();
    assert!(r.passes(), "{r:?}");
    let inv = invert(&t1).unwrap();
    let _ = compose(&inv, &t1).unwrap();
}

#[test]
fn diagonal() {
    let t1 = make_tg(&TgParams::new(-1, 1).unwrap()).unwrap();
    assert!(diagonal_is_sublagrangian(&t1).unwrap());
    let id = identity(&TgParams::new(-1, 1).unwrap().form());
    assert!(diagonal_is_sublagrangian(&id).unwrap());
    let _ = BigInt::from(0);
}
