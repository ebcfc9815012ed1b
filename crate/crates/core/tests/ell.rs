use quadform::ell::*;
use quadform::forms::{check_isometry, hyperbolic, ComplementMode, Eps, QuadForm};
use quadform::constructions::{make_tg, make_ug, TgParams};
use quadform::{Laurent, Matrix};
use proptest::prelude::*;

fn x(y1: i64, y2: i64) -> QuasiFormation {
    QuasiFormation::new(Matrix::from_ints(&[&[y1], &[y2]]), Eps::Plus).unwrap()
}

#[test]
fn induced_and_boundaries() {
    let t = QuasiFormation::trivial(2, Eps::Plus);
    assert!(t.is_valid(0).unwrap());
    assert!(quadform::forms::q_is_zero(induced_form(&t).unwrap().psi(), Eps::Plus));
    assert_eq!(boundary_minus(&t).unwrap().rank(), 0);
    assert_eq!(boundary_plus(&t, &ComplementMode::Exact).unwrap().rank(), 0);
    let q = x(3, 5);
    assert_eq!(induced_form(&q).unwrap(), QuadForm::rank_one(Laurent::int(15), Eps::Plus));
    assert_eq!(complement(&q, &ComplementMode::Exact).unwrap(), Matrix::from_ints(&[&[-3], &[5]]));
    assert_eq!(complement_form(&q, &ComplementMode::Exact).unwrap(), QuadForm::rank_one(Laurent::int(-15), Eps::Plus));
    assert_eq!(boundary_plus(&q, &ComplementMode::Exact).unwrap(), boundary_minus(&q).unwrap());
    let f = QuasiFormation::new(Matrix::from_ints(&[&[1], &[0]]), Eps::Plus).unwrap();
    assert_eq!(complement_form(&f, &ComplementMode::Exact).unwrap().psi().get(0, 0), &Laurent::int(0));
}

#[test]
fn elementary() {
    assert!(is_elementary_rep(&x(7, 1)).unwrap());
    assert!(is_elementary_rep(&x(7, -1)).unwrap());
    assert!(!is_elementary_rep(&x(3, 5)).unwrap());
    assert!(!is_elementary_rep(&x(1, 0)).unwrap());
    assert!(is_elementary_rep(&QuasiFormation::trivial(3, Eps::Plus)).unwrap());
}

#[test]
fn delta_and_kappa() {
    let sigma = Matrix::from_ints(&[&[2], &[3]]);
    let f = delta_of_quasiformation(&x(3, 5), Some(sigma), &ComplementMode::Exact, 2).unwrap();
    let c = f.components().unwrap();
    assert_eq!((c.a.get(0, 0), c.b.get(0, 0), c.s.get(0, 0)), (&Laurent::int(-19), &Laurent::int(-19), &Laurent::int(-6)));
    let k = kappa(&f).unwrap();
    assert_eq!(k.psi(), &Matrix::from_ints(&[&[15, 0], &[-19, 6]]));
    let u = Matrix::from_ints(&[&[3, -2], &[5, -3]]);
    assert!(check_isometry(&u, &k, &Matrix::from_ints(&[&[0, 1], &[0, 0]]).pipe()).unwrap());
    assert!(hyperbolicity_test(&k, &HyperbolicityMode::ZExact).unwrap().is_hyperbolic());

    let t = delta_of_quasiformation(&QuasiFormation::trivial(1, Eps::Plus), None, &ComplementMode::Exact, 2).unwrap();
    let c = t.components().unwrap();
    assert_eq!((c.a.get(0, 0), c.b.get(0, 0), c.s.get(0, 0)), (&Laurent::int(-1), &Laurent::int(-1), &Laurent::int(0)));
}

trait Pipe {
    fn pipe(self) -> QuadForm;
}
impl Pipe for Matrix {
    fn pipe(self) -> QuadForm {
        QuadForm::new(self, Eps::Plus).unwrap()
    }
}

#[test]
fn hyperbolicity() {
    let h = hyperbolic(2, Eps::Plus);
    assert!(hyperbolicity_test(&h, &HyperbolicityMode::ZExact).unwrap().is_hyperbolic());
    let odd = Matrix::from_ints(&[&[1, 0], &[0, -1]]);
    assert!(hyperbolicity_test_symmetric(&odd).unwrap().is_not_hyperbolic());
    let e8ish = Matrix::from_ints(&[&[1, 0], &[0, 1]]).pipe();
    assert!(hyperbolicity_test(&e8ish, &HyperbolicityMode::ZExact).is_err() || !hyperbolicity_test(&e8ish, &HyperbolicityMode::ZExact).unwrap().is_hyperbolic());
    for n in -3..=3 {
        let params = TgParams::new(-1, n).unwrap();
        let k = kappa(&make_tg(&params).unwrap()).unwrap();
        assert!(hyperbolicity_test(&k, &HyperbolicityMode::Witness(make_ug(&params))).unwrap().is_hyperbolic());
        let b = hyperbolicity_test(&k, &HyperbolicityMode::Bounded(3)).unwrap();
        assert!(b.is_hyperbolic(), "n={n}");
    }
    // ε = -1: the Arf invariant decides.
    let arf1 = QuadForm::new(Matrix::from_ints(&[&[1, 1], &[0, 1]]), Eps::Minus).unwrap();
    assert!(hyperbolicity_test(&arf1, &HyperbolicityMode::ZExact).unwrap().is_not_hyperbolic());
    let arf0 = QuadForm::new(Matrix::from_ints(&[&[1, 1], &[0, 0]]), Eps::Minus).unwrap();
    assert!(hyperbolicity_test(&arf0, &HyperbolicityMode::ZExact).unwrap().is_hyperbolic());
    let two = quadform::forms::direct_sum(&[&arf1, &arf1]).unwrap();
    assert!(hyperbolicity_test(&two, &HyperbolicityMode::ZExact).unwrap().is_hyperbolic());
}

#[test]
fn signature_values() {
    use num_bigint::BigInt;
    let m = |r: &[&[i64]]| r.iter().map(|row| row.iter().map(|&v| BigInt::from(v)).collect()).collect::<Vec<Vec<BigInt>>>();
    assert_eq!(signature(&m(&[&[0, 1], &[1, 0]])), 0);
    assert_eq!(signature(&m(&[&[2, 1], &[1, 2]])), 2);
    assert_eq!(signature(&m(&[&[0, 0], &[0, 0]])), 0);
    assert_eq!(signature(&m(&[&[-1, 0, 0], &[0, -3, 0], &[0, 0, 5]])), -1);
}

proptest! {
    #[test]
    fn kappa_delta_hyperbolic(y1 in -30i64..30, y2 in -30i64..30) {
        use num_integer::Integer;
        prop_assume!(y1 != 0 && y2 != 0 && y1.gcd(&y2) == 1);
        let q = x(y1, y2);
        let f = delta_of_quasiformation(&q, None, &ComplementMode::Exact, 2).unwrap();
        let k = kappa(&f).unwrap();
        prop_assert!(hyperbolicity_test(&k, &HyperbolicityMode::ZExact).unwrap().is_hyperbolic());
        prop_assert_eq!(boundary_minus(&q).unwrap(), boundary_plus(&q, &ComplementMode::Exact).unwrap());
    }

    #[test]
    fn stabilizing_keeps_boundaries(y1 in 1i64..20, y2 in 1i64..20, k in 0usize..3) {
        use num_integer::Integer;
        prop_assume!(y1.gcd(&y2) == 1);
        let q = x(y1, y2);
        let s = q.stabilize(k);
        prop_assert_eq!(boundary_minus(&q).unwrap(), boundary_minus(&s).unwrap());
        prop_assert_eq!(boundary_plus(&q, &ComplementMode::Exact).unwrap(), boundary_plus(&s, &ComplementMode::Exact).unwrap());
    }

    #[test]
    fn induced_and_complement_are_orthogonal(y1 in -20i64..20, y2 in -20i64..20) {
        use num_integer::Integer;
        prop_assume!(y1.gcd(&y2) == 1);
        let q = x(y1, y2);
        let c = complement(&q, &ComplementMode::Exact).unwrap();
        let l = q.ambient().lambda();
        prop_assert!((&(&q.v.transpose() * &l) * &c).is_zero());
    }
}
