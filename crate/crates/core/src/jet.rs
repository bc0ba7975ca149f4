//! Canonical polynomials with exact rational coefficients over jet variables.
//!
//! The jet variables are the three coordinates `x`, `y`, `t` of the Heisenberg
//! group together with the dependent variable `u` and its partial derivatives
//! `u_J`, where `J` is a symmetric multi-index. Every jet variable is treated
//! as an independent symbol; the total derivative in [`crate::variational`]
//! is what ties them together.
//!
//! An [`Expr`] is stored as a sorted map from [`Monomial`] to a nonzero
//! coefficient, so two expressions are mathematically equal exactly when
//! their maps are identical.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number with arbitrary-precision numerator and denominator.
pub type Rational = BigRational;

/// Builds the rational `num/den`. Panics if `den == 0`.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Default bound on the derivative order of jet variables.
pub const DEFAULT_MAX_ORDER: u32 = 3;

/// One of the independent variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coord {
    X,
    Y,
    T,
}

impl Coord {
    pub const ALL: [Coord; 3] = [Coord::X, Coord::Y, Coord::T];

    pub fn index(self) -> usize {
        match self {
            Coord::X => 0,
            Coord::Y => 1,
            Coord::T => 2,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Coord::X => 'x',
            Coord::Y => 'y',
            Coord::T => 't',
        }
    }

    pub fn from_symbol(c: char) -> Option<Coord> {
        match c {
            'x' => Some(Coord::X),
            'y' => Some(Coord::Y),
            't' => Some(Coord::T),
            _ => None,
        }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Symmetric multi-index `(a, b, c)` standing for `∂^(a+b+c) / ∂x^a ∂y^b ∂t^c`.
///
/// Ordered graded-lex: lower total order first, then by descending `x`, `y`,
/// `t` counts, so `u_xx < u_xy < u_xt < u_yy < u_yt < u_tt`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiIndex([u8; 3]);

impl MultiIndex {
    pub const ZERO: MultiIndex = MultiIndex([0, 0, 0]);

    pub fn new(x: u8, y: u8, t: u8) -> Self {
        MultiIndex([x, y, t])
    }

    pub fn single(c: Coord) -> Self {
        MultiIndex::ZERO.raised(c)
    }

    pub fn order(self) -> u32 {
        self.0.iter().map(|&n| u32::from(n)).sum()
    }

    pub fn count(self, c: Coord) -> u8 {
        self.0[c.index()]
    }

    pub fn counts(self) -> [u8; 3] {
        self.0
    }

    pub fn raised(mut self, c: Coord) -> Self {
        self.0[c.index()] += 1;
        self
    }

    pub fn lowered(mut self, c: Coord) -> Option<Self> {
        let n = &mut self.0[c.index()];
        if *n == 0 {
            return None;
        }
        *n -= 1;
        Some(self)
    }

    /// Coordinate letters in canonical order, e.g. `"xxt"`; empty for `u` itself.
    pub fn suffix(self) -> String {
        let mut s = String::with_capacity(self.order() as usize);
        for c in Coord::ALL {
            for _ in 0..self.count(c) {
                s.push(c.symbol());
            }
        }
        s
    }

    /// Parses a suffix in any letter order; `"tx"` and `"xt"` give the same index.
    pub fn from_suffix(suffix: &str) -> Option<Self> {
        let mut idx = MultiIndex::ZERO;
        for ch in suffix.chars() {
            let c = Coord::from_symbol(ch)?;
            idx.0[c.index()] = idx.0[c.index()].checked_add(1)?;
        }
        Some(idx)
    }

    /// All multi-indices of exactly the given order, in canonical order.
    pub fn of_order(order: u32) -> Vec<MultiIndex> {
        let order = order as u8;
        let mut out = Vec::new();
        for a in (0..=order).rev() {
            for b in (0..=order - a).rev() {
                out.push(MultiIndex([a, b, order - a - b]));
            }
        }
        out
    }

    fn sort_key(self) -> (u32, Reverse<[u8; 3]>) {
        (self.order(), Reverse(self.0))
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A coordinate or a derivative `u_J` of the dependent variable.
///
/// Coordinates sort before derivatives; `u` is `Deriv(MultiIndex::ZERO)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum JetVar {
    Coord(Coord),
    Deriv(MultiIndex),
}

impl JetVar {
    pub const X: JetVar = JetVar::Coord(Coord::X);
    pub const Y: JetVar = JetVar::Coord(Coord::Y);
    pub const T: JetVar = JetVar::Coord(Coord::T);
    pub const U: JetVar = JetVar::Deriv(MultiIndex::ZERO);

    /// `u_J` for the given derivative suffix. Panics on letters other than `x`, `y`, `t`.
    pub fn u(suffix: &str) -> JetVar {
        JetVar::Deriv(MultiIndex::from_suffix(suffix).expect("invalid derivative suffix"))
    }

    pub fn first(c: Coord) -> JetVar {
        JetVar::Deriv(MultiIndex::single(c))
    }

    /// Derivative order; zero for coordinates and for `u`.
    pub fn order(self) -> u32 {
        match self {
            JetVar::Coord(_) => 0,
            JetVar::Deriv(j) => j.order(),
        }
    }
}

impl fmt::Display for JetVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JetVar::Coord(c) => write!(f, "{c}"),
            JetVar::Deriv(j) if j.order() == 0 => write!(f, "u"),
            JetVar::Deriv(j) => write!(f, "u_{}", j.suffix()),
        }
    }
}

/// Power product of jet variables, factors sorted by variable, no zero exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(JetVar, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: JetVar) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_factors<I: IntoIterator<Item = (JetVar, u32)>>(factors: I) -> Self {
        let mut map: BTreeMap<JetVar, u32> = BTreeMap::new();
        for (v, e) in factors {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        Monomial(map.into_iter().collect())
    }

    pub fn factors(&self) -> &[(JetVar, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: JetVar) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn order(&self) -> u32 {
        self.0.iter().map(|&(v, _)| v.order()).max().unwrap_or(0)
    }

    pub fn product(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Splits off every power of `v`: returns `(k, rest)` with `self = v^k * rest`.
    pub fn split(&self, v: JetVar) -> (u32, Monomial) {
        match self.0.binary_search_by(|(w, _)| w.cmp(&v)) {
            Ok(i) => {
                let mut rest = self.0.clone();
                let (_, k) = rest.remove(i);
                (k, Monomial(rest))
            }
            Err(_) => (0, self.clone()),
        }
    }

    /// Formal derivative with respect to `v`, as `(multiplier, monomial)`.
    pub fn partial(&self, v: JetVar) -> Option<(u32, Monomial)> {
        let i = self.0.binary_search_by(|(w, _)| w.cmp(&v)).ok()?;
        let mut rest = self.0.clone();
        let k = rest[i].1;
        if k == 1 {
            rest.remove(i);
        } else {
            rest[i].1 -= 1;
        }
        Some((k, Monomial(rest)))
    }
}

impl Ord for Monomial {
    /// Graded-lex: lower total degree first; among equal degrees, the monomial
    /// with the larger exponent on the earliest variable comes first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0) {
                let ord = a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1));
                if ord != Ordering::Equal {
                    return ord;
                }
            }
            self.0.len().cmp(&other.0.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Point at which an expression is evaluated.
pub type Assignment = BTreeMap<JetVar, Rational>;

/// Polynomial in jet variables with exact rational coefficients, in canonical form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Expr {
    terms: BTreeMap<Monomial, Rational>,
}

impl Expr {
    pub fn zero() -> Self {
        Expr::default()
    }

    pub fn one() -> Self {
        Expr::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Expr::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        Expr::constant(integer(n))
    }

    pub fn var(v: JetVar) -> Self {
        Expr::term(Rational::one(), Monomial::var(v))
    }

    pub fn coord(c: Coord) -> Self {
        Expr::var(JetVar::Coord(c))
    }

    pub fn u(suffix: &str) -> Self {
        Expr::var(JetVar::u(suffix))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Expr { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(iter: I) -> Self {
        let mut e = Expr::zero();
        for (m, c) in iter {
            e.add_term(m, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The constant term when the expression is a constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn variables(&self) -> BTreeSet<JetVar> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|&(v, _)| v))
            .collect()
    }

    pub fn contains(&self, v: JetVar) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    /// Highest derivative order of any jet variable present.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(Monomial::order).max().unwrap_or(0)
    }

    /// True when no derivative of `u` occurs (only `x`, `y`, `t`, `u`).
    pub fn is_point_function(&self) -> bool {
        self.order() == 0
    }

    pub fn scale(&self, c: &Rational) -> Expr {
        if c.is_zero() {
            return Expr::zero();
        }
        Expr {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Expr {
        let mut acc = Expr::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Partial derivative treating every jet variable as an independent symbol.
    pub fn formal_partial(&self, v: JetVar) -> Expr {
        let mut out = Expr::zero();
        for (m, c) in &self.terms {
            if let Some((k, rest)) = m.partial(v) {
                out.add_term(rest, c * integer(i64::from(k)));
            }
        }
        out
    }

    /// Replaces every occurrence of `v` by `r`, without any order bound.
    ///
    /// Use [`JetSpace::substitute`] when the result must respect the order bound.
    pub fn substitute_unbounded(&self, v: JetVar, r: &Expr) -> Expr {
        let mut powers: Vec<Expr> = vec![Expr::one()];
        let mut out = Expr::zero();
        for (m, c) in &self.terms {
            let (k, rest) = m.split(v);
            if k == 0 {
                out.add_term(rest, c.clone());
                continue;
            }
            while powers.len() <= k as usize {
                let next = powers.last().expect("nonempty") * r;
                powers.push(next);
            }
            for (pm, pc) in &powers[k as usize].terms {
                out.add_term(rest.product(pm), c * pc);
            }
        }
        out
    }

    /// Exact value at `point`; fails on the first jet variable without an assignment.
    pub fn evaluate(&self, point: &Assignment) -> Result<Rational> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut value = c.clone();
            for &(v, e) in m.factors() {
                let x = point.get(&v).ok_or(Error::MissingAssignment(v))?;
                value *= num_traits::pow(x.clone(), e as usize);
            }
            total += value;
        }
        Ok(total)
    }

    /// Largest absolute numerator or denominator among the coefficients, in bits.
    pub fn coefficient_bits(&self) -> u64 {
        self.terms
            .values()
            .map(|c| c.numer().abs().bits().max(c.denom().bits()))
            .max()
            .unwrap_or(0)
    }
}

impl From<JetVar> for Expr {
    fn from(v: JetVar) -> Self {
        Expr::var(v)
    }
}

impl From<Rational> for Expr {
    fn from(c: Rational) -> Self {
        Expr::constant(c)
    }
}

impl AddAssign<&Expr> for Expr {
    fn add_assign(&mut self, rhs: &Expr) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Expr> for Expr {
    fn sub_assign(&mut self, rhs: &Expr) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add<&Expr> for &Expr {
    type Output = Expr;
    fn add(self, rhs: &Expr) -> Expr {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Expr> for &Expr {
    type Output = Expr;
    fn sub(self, rhs: &Expr) -> Expr {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Expr> for &Expr {
    type Output = Expr;
    fn mul(self, rhs: &Expr) -> Expr {
        let mut out = Expr::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.product(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<Expr> for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Expr> for Expr {
            type Output = Expr;
            fn $method(self, rhs: &Expr) -> Expr {
                (&self).$method(rhs)
            }
        }
        impl $tr<Expr> for &Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned_binop!(Add add, Sub sub, Mul mul);

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -&self
    }
}

impl std::iter::Sum for Expr {
    fn sum<I: Iterator<Item = Expr>>(iter: I) -> Expr {
        let mut acc = Expr::zero();
        for e in iter {
            acc += &e;
        }
        acc
    }
}

/// Engine-wide configuration bounding the derivative order of jet variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JetSpace {
    pub max_order: u32,
}

impl Default for JetSpace {
    fn default() -> Self {
        JetSpace {
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

impl JetSpace {
    pub fn new(max_order: u32) -> Self {
        JetSpace { max_order }
    }

    pub fn check_var(&self, v: JetVar) -> Result<()> {
        if v.order() > self.max_order {
            return Err(Error::OrderOverflow {
                var: v.to_string(),
                max_order: self.max_order,
            });
        }
        Ok(())
    }

    pub fn check(&self, e: &Expr) -> Result<()> {
        match e
            .variables()
            .into_iter()
            .rev()
            .find(|v| v.order() > self.max_order)
        {
            Some(v) => self.check_var(v),
            None => Ok(()),
        }
    }

    pub fn substitute(&self, e: &Expr, v: JetVar, r: &Expr) -> Result<Expr> {
        let out = e.substitute_unbounded(v, r);
        self.check(&out)?;
        Ok(out)
    }
}
