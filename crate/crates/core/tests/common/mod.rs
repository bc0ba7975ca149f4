//! Seeded property suites shared by the property tests and the acceptance run.

#![allow(dead_code)]

use noether_core::jet::{Assignment, Rational};
use noether_core::parser::parse_expr_with;
use noether_core::sampling::{self, random_expr, random_field, random_point, ExprShape};
use noether_core::verifier::{catalog, lagrangian, CATALOG_NAMES};
use noether_core::{
    characteristic, lie_bracket, print_expr, Coord, Expr, FluxVector, JetSpace, JetVar, Verifier,
};
use num_traits::Zero;
use rand::Rng;

pub type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

pub fn first_order() -> ExprShape {
    ExprShape {
        order: 1,
        ..ExprShape::default()
    }
}

pub fn leibniz(cases: usize) -> Outcome {
    let space = JetSpace::default();
    let mut rng = sampling::rng(11);
    for _ in 0..cases {
        let f = random_expr(&mut rng, ExprShape::default());
        let g = random_expr(&mut rng, ExprShape::default());
        let c = Coord::ALL[rng.gen_range(0..3)];
        let lhs = ok(space.total_derivative(&(&f * &g), c))?;
        let rhs =
            &f * &ok(space.total_derivative(&g, c))? + &g * &ok(space.total_derivative(&f, c))?;
        ensure(lhs == rhs, || {
            format!("Leibniz fails for f = {f}, g = {g}, D_{}", c.symbol())
        })?;
    }
    Ok(())
}

pub fn commutation(cases: usize) -> Outcome {
    let space = JetSpace::default();
    let mut rng = sampling::rng(12);
    for _ in 0..cases {
        let f = random_expr(&mut rng, first_order());
        let a = Coord::ALL[rng.gen_range(0..3)];
        let b = Coord::ALL[rng.gen_range(0..3)];
        let ab = ok(space.total_derivative(&ok(space.total_derivative(&f, a))?, b))?;
        let ba = ok(space.total_derivative(&ok(space.total_derivative(&f, b))?, a))?;
        ensure(ab == ba, || {
            format!(
                "D_{} and D_{} do not commute on {f}",
                a.symbol(),
                b.symbol()
            )
        })?;
    }
    Ok(())
}

pub fn euler_annihilates_divergence(cases: usize) -> Outcome {
    // E of a second-order expression applies D_J with |J| = 2 to second-order partials.
    let space = JetSpace::new(4);
    let mut rng = sampling::rng(13);
    for _ in 0..cases {
        let mut div = Expr::zero();
        for c in Coord::ALL {
            let f = random_expr(&mut rng, first_order());
            div += &ok(space.total_derivative(&f, c))?;
        }
        let e = ok(space.euler_operator(&div))?;
        ensure(e.is_zero(), || format!("E(div) = {e} for div = {div}"))?;
    }
    Ok(())
}

pub fn prolongation_homomorphism(pairs: usize) -> Outcome {
    let space = JetSpace::new(4);
    let mut rng = sampling::rng(14);
    for _ in 0..pairs {
        let v = random_field(&mut rng);
        let w = random_field(&mut rng);
        let f = random_expr(&mut rng, ExprShape::default());
        let pv = ok(space.prolong(&v, 2))?;
        let pw = ok(space.prolong(&w, 2))?;
        let pb = ok(space.prolong(&lie_bracket(&v, &w), 2))?;
        let vw = ok(space.apply_prolonged(&pv, &ok(space.apply_prolonged(&pw, &f))?))?;
        let wv = ok(space.apply_prolonged(&pw, &ok(space.apply_prolonged(&pv, &f))?))?;
        let lhs = ok(space.apply_prolonged(&pb, &f))?;
        ensure(lhs == vw - wv, || {
            format!("pr[v,w] differs from [pr v, pr w] on {f}")
        })?;
    }
    Ok(())
}

pub fn jacobi() -> Outcome {
    let records = catalog();
    let n = records.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let (x, y, z) = (&records[a].field, &records[b].field, &records[c].field);
                let sum = lie_bracket(&lie_bracket(x, y), z)
                    .add(&lie_bracket(&lie_bracket(y, z), x))
                    .add(&lie_bracket(&lie_bracket(z, x), y));
                ensure(sum.is_zero(), || {
                    format!(
                        "Jacobi fails for ({}, {}, {})",
                        CATALOG_NAMES[a], CATALOG_NAMES[b], CATALOG_NAMES[c]
                    )
                })?;
            }
        }
    }
    Ok(())
}

pub fn parser_round_trip(cases: usize) -> Outcome {
    let space = JetSpace::default();
    let mut rng = sampling::rng(16);
    let shape = ExprShape {
        max_terms: 6,
        max_factors: 4,
        max_exponent: 4,
        order: 3,
    };
    for _ in 0..cases {
        let e = random_expr(&mut rng, shape);
        let text = print_expr(&e);
        let back = ok(parse_expr_with(&text, &space))?;
        ensure(back == e, || format!("round trip changes {text}"))?;
        ensure(print_expr(&back) == text, || {
            format!("reprint changes {text}")
        })?;
    }
    Ok(())
}

/// Every symbolic zero of the catalog checks (defects, off-shell identity,
/// on-shell conservation) evaluated at `points` random rational points each.
pub fn numeric_zeros(points: usize) -> Outcome {
    let verifier = Verifier::default();
    let space = &verifier.space;
    let l = lagrangian();
    let el = ok(space.euler_operator(&l))?;
    let rhs = verifier.u_xx_on_shell();
    let mut rng = sampling::rng(37);
    for name in CATALOG_NAMES {
        let rec = ok(verifier.record(name))?;
        let phi = rec.potential.clone().unwrap_or_else(FluxVector::zero);
        let defect = ok(verifier.divergence_symmetry_defect(&rec.field, &l, &phi))?;
        let flux = ok(verifier.noether_flux(&rec.field, &l, &phi))?;
        let div = ok(space.divergence(&flux))?;
        let identity = &div + &(&characteristic(&rec.field).0 * &el);
        for _ in 0..points {
            let p: Assignment = random_point(&mut rng, 2);
            ensure(ok(defect.evaluate(&p))?.is_zero(), || {
                format!("defect of {name} is nonzero at a point")
            })?;
            ensure(ok(identity.evaluate(&p))?.is_zero(), || {
                format!("identity of {name} is nonzero at a point")
            })?;
            let mut s = p.clone();
            s.insert(JetVar::u("xx"), ok(rhs.evaluate(&p))?);
            ensure(ok(div.evaluate(&s))? == Rational::zero(), || {
                format!("divergence of the {name} flux is nonzero at a solution point")
            })?;
        }
    }
    Ok(())
}
