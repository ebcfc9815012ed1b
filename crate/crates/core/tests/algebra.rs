use num_bigint::BigInt;
use proptest::prelude::*;

use quadform::constructions::{make_tg, TgParams};
use quadform::formations::{check_stable_iso, compose, invert, biso_compare};
use quadform::forms::{q_canonical, q_equal, Eps};
use quadform::snf::smith_normal_form;
use quadform::{Laurent, Matrix, Ring};

fn laurent() -> impl Strategy<Value = Laurent> {
    prop::collection::btree_map(-4i64..4, -20i64..20, 0..4)
        .prop_map(|t| Laurent::from_terms(&Ring::integral(), t.into_iter().map(|(k, c)| (k, BigInt::from(c)))))
}

fn int_matrix(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-9i64..10, n * n).prop_map(move |v| Matrix::from_fn(n, n, &Ring::integral(), |i, j| Laurent::int(v[i * n + j])))
}

fn laurent_matrix(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(laurent(), n * n).prop_map(move |v| Matrix::from_fn(n, n, &Ring::integral(), |i, j| v[i * n + j].clone()))
}

/// Determinant by permutation expansion, independent of the elimination code.
fn leibniz(m: &Matrix) -> Laurent {
    let n = m.rows();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Laurent::int(0);
    fn heap(k: usize, perm: &mut Vec<usize>, m: &Matrix, total: &mut Laurent) {
        if k == 1 {
            let inversions = (0..perm.len()).flat_map(|i| (i + 1..perm.len()).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
            let mut term = Laurent::int(if inversions.is_multiple_of(2) { 1 } else { -1 });
            for (i, &p) in perm.iter().enumerate() {
                term = &term * m.get(i, p);
            }
            *total += &term;
            return;
        }
        for i in 0..k {
            heap(k - 1, perm, m, total);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            perm.swap(j, k - 1);
        }
    }
    heap(n, &mut perm, m, &mut total);
    total
}

proptest! {
    #[test]
    fn ring_laws(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!((&a * &b).involute(), &a.involute() * &b.involute());
        prop_assert_eq!(a.involute().involute(), a.clone());
        prop_assert_eq!((&a * &b).augment(), &a.augment() * &b.augment());
    }

    #[test]
    fn exact_division(a in laurent(), b in laurent()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_div(&b), Some(a));
    }

    #[test]
    fn residue_reduction_is_a_ring_map(a in laurent(), b in laurent(), m in 2i64..40) {
        let m = BigInt::from(m);
        let ab = (&a * &b).reduce_mod(&m).unwrap();
        prop_assert_eq!(ab, &a.reduce_mod(&m).unwrap() * &b.reduce_mod(&m).unwrap());
    }

    #[test]
    fn determinant_matches_expansion(m in laurent_matrix(3)) {
        prop_assert_eq!(m.det().unwrap(), leibniz(&m));
    }

    #[test]
    fn determinant_is_multiplicative(a in laurent_matrix(2), b in laurent_matrix(2)) {
        prop_assert_eq!((&a * &b).det().unwrap(), &a.det().unwrap() * &b.det().unwrap());
    }

    #[test]
    fn adjugate_identity(m in laurent_matrix(3)) {
        let d = m.det().unwrap();
        let lhs = &m.adjugate().unwrap() * &m;
        let rhs = Matrix::from_fn(3, 3, &Ring::integral(), |i, j| if i == j { d.clone() } else { Laurent::int(0) });
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn smith_form(m in int_matrix(3)) {
        let (u, d, v) = smith_normal_form(&m).unwrap();
        prop_assert_eq!(&(&u * &m) * &v, d.clone());
        prop_assert!(u.det().unwrap().is_trivial_unit() && v.det().unwrap().is_trivial_unit());
        let diag: Vec<BigInt> = (0..3).map(|i| d.get(i, i).coeff(0)).collect();
        for i in 0..3 {
            for j in 0..3 {
                prop_assert!(i == j || d.get(i, j).is_zero());
            }
        }
        for w in diag.windows(2) {
            use num_integer::Integer;
            use num_traits::Zero;
            prop_assert!(w[0].is_zero() && w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])));
        }
        let prod: BigInt = diag.iter().product();
        use num_traits::Signed;
        prop_assert_eq!(prod.abs(), m.det().unwrap().coeff(0).abs());
    }

    #[test]
    fn q_class_absorbs_symmetric_moves(psi in laurent_matrix(2), x in laurent_matrix(2), minus in any::<bool>()) {
        let eps = if minus { Eps::Minus } else { Eps::Plus };
        let moved = &psi + &(&x - &eps.apply_matrix(&x.conj_transpose()));
        prop_assert!(q_equal(&psi, &moved, eps).unwrap());
        let c = q_canonical(&psi, eps).unwrap();
        prop_assert_eq!(q_canonical(&c, eps).unwrap(), c);
    }

    #[test]
    fn tg_composition(p in -4i64..0, n1 in -4i64..5, n2 in -4i64..5) {
        let f = make_tg(&TgParams::new(p, n1).unwrap()).unwrap();
        let g = make_tg(&TgParams::new(p, n2).unwrap()).unwrap();
        let fg = compose(&g, &f).unwrap();
        prop_assert!(check_stable_iso(&fg).unwrap().passes());
        let (cf, cg, cfg) = (f.components().unwrap(), g.components().unwrap(), fg.components().unwrap());
        // Exact up to the cross term (s + s*) lambda.
        let lambda = f.dst.lambda().get(0, 0).clone();
        let diff = cfg.b.get(0, 0) - &(cg.b.get(0, 0) * cf.b.get(0, 0));
        prop_assert!(diff.exact_div(&lambda).is_some());
        let back = compose(&invert(&f).unwrap(), &f).unwrap();
        let id = quadform::formations::identity(&f.src);
        prop_assert!(biso_compare(&back, &id, 2).unwrap().is_equal());
    }
}
