mod common;

use common::*;
use proptest::prelude::*;
use varsep_core::rational::int;
use varsep_core::{Polynomial, Rational};

fn small() -> impl Strategy<Value = Polynomial> {
    arb_poly(3, 3, 6, 5)
}

proptest! {
    #[test]
    fn ring_axioms(a in small(), b in small(), c in small()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &a.zero_like(), a.clone());
        prop_assert_eq!(&a * &a.one_like(), a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a + &(-&a), a.zero_like());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in small(), b in small(), p in arb_point(3)) {
        let va = a.evaluate(&p).unwrap();
        let vb = b.evaluate(&p).unwrap();
        prop_assert_eq!((&a + &b).evaluate(&p).unwrap(), &va + &vb);
        prop_assert_eq!((&a * &b).evaluate(&p).unwrap(), &va * &vb);
        prop_assert_eq!(a.pow(3).evaluate(&p).unwrap(), &va * &va * &va);
    }

    #[test]
    fn mixed_partials_commute(a in small(), i in 0usize..3, j in 0usize..3) {
        let ij = a.partial_derivative(i).unwrap().partial_derivative(j).unwrap();
        let ji = a.partial_derivative(j).unwrap().partial_derivative(i).unwrap();
        prop_assert_eq!(ij, ji);
    }

    #[test]
    fn derivative_obeys_leibniz(a in small(), b in small(), i in 0usize..3) {
        let lhs = (&a * &b).partial_derivative(i).unwrap();
        let rhs = &(&a.partial_derivative(i).unwrap() * &b) + &(&a * &b.partial_derivative(i).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn margin_commutes_with_evaluation(a in small(), p in arb_point(3), k in 0usize..3) {
        let fixed = vec![(k, p[k].clone())];
        let m = a.margin(&fixed).unwrap();
        prop_assert_eq!(m.nvars(), 2);
        let rest: Vec<Rational> = (0..3).filter(|&v| v != k).map(|v| p[v].clone()).collect();
        prop_assert_eq!(m.evaluate(&rest).unwrap(), a.evaluate(&p).unwrap());
        let s = a.specialize(&fixed).unwrap();
        prop_assert_eq!(s.evaluate(&p).unwrap(), a.evaluate(&p).unwrap());
    }

    #[test]
    fn monic_rescales(a in small()) {
        prop_assume!(!a.is_zero());
        let (lc, m) = a.monic().unwrap();
        prop_assert_eq!(m.leading_term().unwrap().1.clone(), int(1));
        prop_assert_eq!(m.scale(&lc), a);
    }

    #[test]
    fn degree_vector_is_additive(a in small(), b in small()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let da = a.degree_vector().unwrap();
        let db = b.degree_vector().unwrap();
        let dab = (&a * &b).degree_vector().unwrap();
        let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| x + y).collect();
        prop_assert_eq!(dab, sum);
    }

    #[test]
    fn canonical_text_reparses(a in small()) {
        let e = varsep_core::expr::parse(&a.to_string()).unwrap();
        prop_assert_eq!(varsep_core::expr::lower_to_polynomial(&e, a.vars()).unwrap(), a);
    }
}

#[test]
fn affine_transform_of_xy() {
    let f = poly_from(2, vec![(vec![1, 1], 1)]);
    let t = vec![vec![int(1), int(1)], vec![int(1), int(-1)]];
    let g = f.apply_affine_transform(&t, &[int(0), int(0)]).unwrap();
    assert_eq!(g, poly_from(2, vec![(vec![2, 0], 1), (vec![0, 2], -1)]));
}
