//! Seeded randomized property checks.

mod common;

use noether_core::jet::{Assignment, Rational};
use noether_core::sampling::{self, random_expr, random_field, random_point, ExprShape};
use noether_core::{lie_bracket, Expr, JetSpace, JetVar};
use num_traits::Zero;

#[test]
fn total_derivative_leibniz() {
    common::leibniz(200).unwrap();
}

#[test]
fn total_derivatives_commute() {
    common::commutation(200).unwrap();
}

#[test]
fn euler_annihilates_divergences() {
    common::euler_annihilates_divergence(100).unwrap();
}

#[test]
fn prolongation_preserves_brackets() {
    common::prolongation_homomorphism(50).unwrap();
}

#[test]
fn prolonged_coefficients_of_bracket_match_commutator() {
    let space = JetSpace::default();
    let mut rng = sampling::rng(15);
    for _ in 0..50 {
        let v = random_field(&mut rng);
        let w = random_field(&mut rng);
        let pv = space.prolong(&v, 2).unwrap();
        let pw = space.prolong(&w, 2).unwrap();
        let pb = space.prolong(&lie_bracket(&v, &w), 2).unwrap();
        for (j, eta) in &pb.eta_j {
            let var = Expr::var(JetVar::Deriv(*j));
            let expected = space
                .apply_prolonged(&pv, &space.apply_prolonged(&pw, &var).unwrap())
                .unwrap()
                - space
                    .apply_prolonged(&pw, &space.apply_prolonged(&pv, &var).unwrap())
                    .unwrap();
            assert_eq!(*eta, expected, "coefficient of u_{}", j.suffix());
        }
    }
}

#[test]
fn jacobi_over_catalog_triples() {
    common::jacobi().unwrap();
}

#[test]
fn parser_round_trip() {
    common::parser_round_trip(500).unwrap();
}

#[test]
fn symbolic_zeros_vanish_at_random_points() {
    common::numeric_zeros(20).unwrap();
}

#[test]
fn ring_laws() {
    let mut rng = sampling::rng(17);
    for _ in 0..100 {
        let a = random_expr(&mut rng, ExprShape::default());
        let b = random_expr(&mut rng, ExprShape::default());
        let c = random_expr(&mut rng, ExprShape::default());
        assert_eq!(&a + &b, &b + &a);
        assert_eq!(&a * &b, &b * &a);
        assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
        assert!((&a - &a).is_zero());
        assert_eq!(&a * &Expr::one(), a);
        assert!((&a * &Expr::zero()).is_zero());
    }
}

#[test]
fn evaluation_is_a_ring_homomorphism() {
    let mut rng = sampling::rng(18);
    for _ in 0..100 {
        let a = random_expr(&mut rng, ExprShape::default());
        let b = random_expr(&mut rng, ExprShape::default());
        let p: Assignment = random_point(&mut rng, 2);
        let ea = a.evaluate(&p).unwrap();
        let eb = b.evaluate(&p).unwrap();
        assert_eq!((&a + &b).evaluate(&p).unwrap(), &ea + &eb);
        assert_eq!((&a * &b).evaluate(&p).unwrap(), &ea * &eb);
        assert_eq!((-&a).evaluate(&p).unwrap(), -ea);
    }
}

#[test]
fn substituting_a_variable_for_itself_is_identity() {
    let space = JetSpace::default();
    let mut rng = sampling::rng(19);
    for _ in 0..100 {
        let e = random_expr(&mut rng, ExprShape::default());
        for v in [JetVar::X, JetVar::U, JetVar::u("xx"), JetVar::u("yt")] {
            assert_eq!(space.substitute(&e, v, &Expr::var(v)).unwrap(), e);
        }
    }
}

#[test]
fn substitution_commutes_with_evaluation() {
    let space = JetSpace::default();
    let mut rng = sampling::rng(20);
    for _ in 0..100 {
        let e = random_expr(&mut rng, ExprShape::default());
        let r = random_expr(&mut rng, common::first_order());
        let p = random_point(&mut rng, 2);
        let mut q = p.clone();
        q.insert(JetVar::u("xx"), r.evaluate(&p).unwrap());
        let s = space.substitute(&e, JetVar::u("xx"), &r).unwrap();
        assert_eq!(s.evaluate(&p).unwrap(), e.evaluate(&q).unwrap());
    }
}

#[test]
fn nonzero_expressions_rarely_vanish_at_random_points() {
    let mut rng = sampling::rng(21);
    let mut zero_hits = 0;
    let mut trials = 0;
    for _ in 0..100 {
        let e = random_expr(&mut rng, ExprShape::default());
        if e.is_zero() {
            continue;
        }
        trials += 1;
        let p = random_point(&mut rng, 2);
        if e.evaluate(&p).unwrap() == Rational::zero() {
            zero_hits += 1;
        }
    }
    assert!(trials > 50);
    assert!(zero_hits * 10 < trials, "{zero_hits} of {trials}");
}
