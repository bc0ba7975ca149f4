//! Seeded random inputs: rational points for spot evaluation and random
//! expressions and point fields for property checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::jet::{rational, Assignment, Coord, Expr, JetVar, Monomial, MultiIndex, Rational};
use crate::variational::VectorField;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Stable 64-bit FNV-1a hash, used to derive per-record seeds.
pub fn name_hash(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

/// Rational in `[-5, 5]` with denominator at most 9.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let den: i64 = rng.gen_range(1..=9);
    let num: i64 = rng.gen_range(-5 * den..=5 * den);
    rational(num, den)
}

/// Every jet variable up to `order`, coordinates first.
pub fn jet_variables(order: u32) -> Vec<JetVar> {
    let mut vars: Vec<JetVar> = Coord::ALL.into_iter().map(JetVar::Coord).collect();
    vars.extend(
        (0..=order)
            .flat_map(MultiIndex::of_order)
            .map(JetVar::Deriv),
    );
    vars
}

/// Assigns a random rational to every jet variable up to `order`.
pub fn random_point<R: Rng + ?Sized>(rng: &mut R, order: u32) -> Assignment {
    jet_variables(order)
        .into_iter()
        .map(|v| (v, random_rational(rng)))
        .collect()
}

/// Shape of randomly generated polynomials.
#[derive(Clone, Copy, Debug)]
pub struct ExprShape {
    pub max_terms: usize,
    pub max_factors: usize,
    pub max_exponent: u32,
    /// Highest derivative order of the jet variables drawn.
    pub order: u32,
}

impl Default for ExprShape {
    fn default() -> Self {
        ExprShape {
            max_terms: 5,
            max_factors: 3,
            max_exponent: 3,
            order: 2,
        }
    }
}

pub fn random_expr<R: Rng + ?Sized>(rng: &mut R, shape: ExprShape) -> Expr {
    random_expr_over(rng, shape, &jet_variables(shape.order))
}

pub fn random_expr_over<R: Rng + ?Sized>(rng: &mut R, shape: ExprShape, vars: &[JetVar]) -> Expr {
    let n_terms = rng.gen_range(0..=shape.max_terms);
    let mut terms = Vec::with_capacity(n_terms);
    for _ in 0..n_terms {
        let n_factors = rng.gen_range(0..=shape.max_factors);
        let factors: Vec<(JetVar, u32)> = (0..n_factors)
            .map(|_| {
                let v = *vars.choose(rng).expect("nonempty variable set");
                (v, rng.gen_range(1..=shape.max_exponent))
            })
            .collect();
        terms.push((Monomial::from_factors(factors), random_rational(rng)));
    }
    Expr::from_terms(terms)
}

/// Random point field with components of degree at most 2 in `x, y, t, u`.
pub fn random_field<R: Rng + ?Sized>(rng: &mut R) -> VectorField {
    let shape = ExprShape {
        max_terms: 4,
        max_factors: 2,
        max_exponent: 1,
        order: 0,
    };
    let vars = jet_variables(0);
    let mut comp = || random_expr_over(rng, shape, &vars);
    VectorField::new(comp(), comp(), comp(), comp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_generation_is_reproducible() {
        let a = random_expr(&mut rng(7), ExprShape::default());
        let b = random_expr(&mut rng(7), ExprShape::default());
        assert_eq!(a, b);
        assert_eq!(random_point(&mut rng(3), 2), random_point(&mut rng(3), 2));
    }

    #[test]
    fn rationals_stay_in_range() {
        let mut r = rng(1);
        let five = rational(5, 1);
        for _ in 0..1000 {
            let q = random_rational(&mut r);
            assert!(q <= five && q >= -five.clone());
        }
    }

    #[test]
    fn variables_by_order() {
        assert_eq!(jet_variables(0).len(), 4);
        assert_eq!(jet_variables(2).len(), 3 + 1 + 3 + 6);
        assert!(random_field(&mut rng(5)).is_point());
    }

    #[test]
    fn name_hash_is_stable() {
        assert_eq!(name_hash(""), 0xcbf2_9ce4_8422_2325);
        assert_ne!(name_hash("V1"), name_hash("V2"));
    }
}
