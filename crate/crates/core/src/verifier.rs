//! Conservation laws of the critical Kohn-Laplace equation on the Heisenberg group.
//!
//! Holds the builtin catalog (Lagrangian, equation, the eight point
//! symmetries with their potentials and tabulated fluxes), and the checks run
//! against it: the divergence-symmetry defect, the Noether flux, on-shell
//! reduction modulo the equation, flux equivalence and the bracket table.

use std::fmt;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_traits::{One, Signed, Zero};
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::jet::{integer, Assignment, Coord, Expr, JetSpace, JetVar, Monomial, Rational};
use crate::parser::{parse_expr, parse_record_patches, parse_symmetry_file_with, RecordPatch};
use crate::sampling;
use crate::variational::{characteristic, lie_bracket, VectorField};

/// Ordered triple of expressions: a conservation-law flux or a potential.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FluxVector(pub [Expr; 3]);

impl FluxVector {
    pub fn new(p1: Expr, p2: Expr, p3: Expr) -> Self {
        FluxVector([p1, p2, p3])
    }

    pub fn zero() -> Self {
        FluxVector::default()
    }

    pub fn component(&self, c: Coord) -> &Expr {
        &self.0[c.index()]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Expr::is_zero)
    }

    pub fn order(&self) -> u32 {
        self.0.iter().map(Expr::order).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> FluxVector {
        FluxVector([self.0[0].scale(c), self.0[1].scale(c), self.0[2].scale(c)])
    }

    pub fn sub(&self, other: &FluxVector) -> FluxVector {
        FluxVector([
            &self.0[0] - &other.0[0],
            &self.0[1] - &other.0[1],
            &self.0[2] - &other.0[2],
        ])
    }

    pub fn add(&self, other: &FluxVector) -> FluxVector {
        FluxVector([
            &self.0[0] + &other.0[0],
            &self.0[1] + &other.0[1],
            &self.0[2] + &other.0[2],
        ])
    }
}

/// Named symmetry generator with optional potential and optional tabulated flux.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryRecord {
    pub name: String,
    pub field: VectorField,
    pub potential: Option<FluxVector>,
    pub paper_flux: Option<FluxVector>,
}

const CATALOG: &str = include_str!("catalog.sym");

const LAGRANGIAN: &str =
    "1/2*u_x^2 + 1/2*u_y^2 + 2*(x^2+y^2)*u_t^2 + 2*y*u_x*u_t - 2*x*u_y*u_t - 1/4*u^4";

const KOHN_LAPLACIAN: &str = "u_xx + u_yy + 4*(x^2+y^2)*u_tt + 4*y*u_xt - 4*x*u_yt";

/// Names of the catalog fields, in report order.
pub const CATALOG_NAMES: [&str; 8] = ["T", "R", "Xt", "Yt", "Z", "V1", "V2", "V3"];

/// Source text of the builtin symmetry file.
pub fn catalog_source() -> &'static str {
    CATALOG
}

/// The Lagrangian whose Euler-Lagrange equation is the critical equation.
pub fn lagrangian() -> Expr {
    parse_expr(LAGRANGIAN).expect("builtin Lagrangian parses")
}

/// The sub-Laplacian `Δ_H u` in coordinates.
pub fn kohn_laplacian() -> Expr {
    parse_expr(KOHN_LAPLACIAN).expect("builtin operator parses")
}

/// `F = Δ_H u + u^3`.
pub fn equation_expr() -> Expr {
    kohn_laplacian() + Expr::u("").pow(3)
}

/// The eight builtin symmetry records, parsed from the bundled symmetry file.
pub fn catalog() -> Vec<SymmetryRecord> {
    static RECORDS: OnceLock<Vec<SymmetryRecord>> = OnceLock::new();
    RECORDS
        .get_or_init(|| {
            parse_symmetry_file_with(CATALOG, &JetSpace::default()).expect("builtin catalog parses")
        })
        .clone()
}

/// Bracket table `[row, column]` as published, columns and rows in the order
/// `T R Xt Yt V1 V2 V3 Z`.
const PUBLISHED_TABLE: [[&str; 8]; 8] = [
    ["0", "0", "0", "0", "Z", "Xt", "Yt", "2T"],
    ["0", "0", "Yt", "-Xt", "0", "V3", "-V2", "0"],
    ["0", "-Yt", "0", "4T", "V2", "-6R", "2Z", "Xt"],
    ["0", "Xt", "-4T", "0", "V3", "-2Z", "-6R", "Yt"],
    ["-Z", "0", "-V2", "-V3", "0", "0", "0", "-2V1"],
    ["-Xt", "-V3", "6R", "2Z", "0", "0", "4V1", "-V2"],
    ["-Yt", "-V2", "-2Z", "6R", "0", "-4V1", "0", "-V3"],
    ["-2T", "0", "-Xt", "-Yt", "2V1", "V2", "V3", "0"],
];

const PUBLISHED_ORDER: [&str; 8] = ["T", "R", "Xt", "Yt", "V1", "V2", "V3", "Z"];

/// A rational linear combination of named fields.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Combination(pub Vec<(String, Rational)>);

impl Combination {
    fn parse_published(entry: &str) -> Combination {
        if entry == "0" {
            return Combination::default();
        }
        let (neg, rest) = match entry.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, entry),
        };
        let split = rest
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len());
        let coeff: i64 = if split == 0 {
            1
        } else {
            rest[..split].parse().unwrap()
        };
        let coeff = if neg { -coeff } else { coeff };
        Combination(vec![(rest[split..].to_string(), integer(coeff))])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coefficient(&self, name: &str) -> Rational {
        self.0
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    fn normalized(&self) -> Vec<(String, Rational)> {
        let mut v: Vec<_> = self
            .0
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .cloned()
            .collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    pub fn same_as(&self, other: &Combination) -> bool {
        self.normalized() == other.normalized()
    }

    pub fn negated(&self) -> Combination {
        Combination(self.0.iter().map(|(n, c)| (n.clone(), -c)).collect())
    }
}

impl fmt::Display for Combination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, (name, c)) in self.0.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            if !mag.is_one() {
                if mag.is_integer() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "{}/{}*", mag.numer(), mag.denom())?;
                }
            }
            write!(f, "{name}")?;
        }
        Ok(())
    }
}

/// Published bracket entries keyed by `(row, column)` field names.
pub fn published_bracket_table() -> Vec<(String, String, Combination)> {
    let mut out = Vec::with_capacity(64);
    for (i, row) in PUBLISHED_TABLE.iter().enumerate() {
        for (j, entry) in row.iter().enumerate() {
            out.push((
                PUBLISHED_ORDER[i].to_string(),
                PUBLISHED_ORDER[j].to_string(),
                Combination::parse_published(entry),
            ));
        }
    }
    out
}

/// Coefficients `c` with `Σ c_k basis_k = target`, if they exist.
///
/// Exact Gaussian elimination over the coefficient vectors of all monomials
/// in all four components.
pub fn solve_combination(basis: &[VectorField], target: &VectorField) -> Option<Vec<Rational>> {
    let mut keys: Vec<(usize, Monomial)> = Vec::new();
    for f in basis.iter().chain(std::iter::once(target)) {
        for (i, comp) in f.components().iter().enumerate() {
            for (m, _) in comp.terms() {
                keys.push((i, m.clone()));
            }
        }
    }
    keys.sort();
    keys.dedup();
    let n = basis.len();
    // Augmented rows: one per (component, monomial), n coefficients plus the target.
    let mut rows: Vec<Vec<Rational>> = keys
        .iter()
        .map(|(i, m)| {
            let mut row: Vec<Rational> = basis
                .iter()
                .map(|f| f.components()[*i].coefficient(m))
                .collect();
            row.push(target.components()[*i].coefficient(m));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        #[allow(clippy::needless_range_loop)]
        for k in 0..rows.len() {
            if k != r && !rows[k][col].is_zero() {
                let factor = rows[k][col].clone();
                for c in col..=n {
                    let delta = &factor * &rows[r][c];
                    rows[k][c] -= delta;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut coeffs = vec![Rational::zero(); n];
    for (k, &col) in pivots.iter().enumerate() {
        coeffs[col] = rows[k][n].clone();
    }
    Some(coeffs)
}

/// All 64 brackets of the catalog fields, expressed in the catalog basis.
#[derive(Clone, Debug)]
pub struct BracketTable {
    pub names: Vec<String>,
    /// `entries[i][j]` is `[names[i], names[j]]`.
    pub entries: Vec<Vec<Combination>>,
}

/// One disagreement between the computed and the published table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketMismatch {
    pub row: String,
    pub column: String,
    pub computed: Combination,
    pub published: Combination,
}

impl BracketTable {
    pub fn get(&self, row: &str, column: &str) -> Option<&Combination> {
        let i = self.names.iter().position(|n| n == row)?;
        let j = self.names.iter().position(|n| n == column)?;
        Some(&self.entries[i][j])
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.names.len();
        (0..n).all(|i| {
            self.entries[i][i].is_zero()
                && (0..n).all(|j| self.entries[i][j].same_as(&self.entries[j][i].negated()))
        })
    }

    pub fn mismatches(&self) -> Vec<BracketMismatch> {
        published_bracket_table()
            .into_iter()
            .filter_map(|(row, column, published)| {
                let computed = self.get(&row, &column).cloned().unwrap_or_default();
                (!computed.same_as(&published)).then_some(BracketMismatch {
                    row,
                    column,
                    computed,
                    published,
                })
            })
            .collect()
    }
}

/// Per-component comparison of a tabulated flux with the constructed one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    /// `paper - constructed`, component by component.
    pub differences: FluxVector,
    /// Components whose replacement by the constructed component alone zeroes the residual.
    pub suspects: Vec<usize>,
    /// Record whose constructed flux differs from the tabulated one in the fewest
    /// terms, with that difference (`paper - constructed`).
    pub nearest: Option<(String, FluxVector)>,
}

/// Randomized evaluation of symbolic zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NumericCheck {
    pub points: usize,
    pub failures: usize,
}

impl NumericCheck {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub symmetry: String,
    pub defect: Expr,
    pub constructed_flux: FluxVector,
    pub constructed_residual: Expr,
    /// `+1` or `-1` when `div(flux) = sign * q * E(L)` holds off-shell.
    pub noether_sign: Option<i8>,
    pub paper_flux: Option<FluxVector>,
    pub paper_residual: Option<Expr>,
    pub equivalent: Option<bool>,
    /// Which paper components coincide term-for-term with the constructed ones.
    pub componentwise_equal: Option<[bool; 3]>,
    pub discrepancy: Option<Discrepancy>,
    pub numeric: NumericCheck,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn defect_passed(&self) -> bool {
        self.defect.is_zero()
    }

    pub fn constructed_passed(&self) -> bool {
        self.constructed_residual.is_zero() && self.numeric.passed()
    }

    /// `None` when the record carries no tabulated flux.
    pub fn paper_passed(&self) -> Option<bool> {
        self.paper_residual
            .as_ref()
            .map(|r| r.is_zero() && self.equivalent == Some(true))
    }

    /// Forgets the tabulated-flux results so only the engine tiers are reported.
    pub fn drop_paper_tier(&mut self) {
        self.paper_flux = None;
        self.paper_residual = None;
        self.equivalent = None;
        self.componentwise_equal = None;
        self.discrepancy = None;
    }

    pub fn passed(&self) -> bool {
        self.defect_passed() && self.constructed_passed() && self.paper_passed().unwrap_or(true)
    }
}

/// Verification engine over a set of symmetry records and a first-order Lagrangian.
#[derive(Clone, Debug)]
pub struct Verifier {
    pub space: JetSpace,
    pub lagrangian: Expr,
    pub equation: Expr,
    pub records: Vec<SymmetryRecord>,
    pub numeric_points: usize,
    pub seed: u64,
}

impl Default for Verifier {
    fn default() -> Self {
        Verifier::builtin(JetSpace::default())
    }
}

impl Verifier {
    pub fn builtin(space: JetSpace) -> Self {
        Verifier::with_records(space, catalog())
    }

    pub fn with_records(space: JetSpace, records: Vec<SymmetryRecord>) -> Self {
        Verifier {
            space,
            lagrangian: lagrangian(),
            equation: equation_expr(),
            records,
            numeric_points: 20,
            seed: 0,
        }
    }

    pub fn record(&self, name: &str) -> Result<&SymmetryRecord> {
        self.records
            .iter()
            .find(|r| r.name == name)
            .ok_or_else(|| Error::UnknownSymmetry(name.to_string()))
    }

    /// Overrides catalog components with those supplied by an errata overlay.
    pub fn apply_errata(&mut self, patches: &[RecordPatch]) -> Result<()> {
        for patch in patches {
            let rec = self
                .records
                .iter_mut()
                .find(|r| r.name == patch.name)
                .ok_or_else(|| Error::UnknownSymmetry(patch.name.clone()))?;
            patch.apply_to(rec)?;
        }
        Ok(())
    }

    pub fn apply_errata_text(&mut self, text: &str) -> Result<()> {
        let patches = parse_record_patches(text, &self.space)?;
        self.apply_errata(&patches)
    }

    /// `pr v (L) + L * Σ D_i xi^i - Σ D_i phi^i`; zero exactly for a divergence symmetry.
    pub fn divergence_symmetry_defect(
        &self,
        v: &VectorField,
        lagrangian: &Expr,
        phi: &FluxVector,
    ) -> Result<Expr> {
        let found = lagrangian.order();
        if found > 1 {
            return Err(Error::OrderMismatch { found, allowed: 1 });
        }
        let pv = self.space.prolong(v, 1)?;
        let mut out = self.space.apply_prolonged(&pv, lagrangian)?;
        out += &(lagrangian * &self.space.total_divergence_of_field(v)?);
        out -= &self.space.divergence(phi)?;
        Ok(out)
    }

    /// `P^i = xi^i L + q ∂L/∂u_i - phi^i` with `q` the characteristic of `v`.
    pub fn noether_flux(
        &self,
        v: &VectorField,
        lagrangian: &Expr,
        phi: &FluxVector,
    ) -> Result<FluxVector> {
        let found = lagrangian.order();
        if found > 1 {
            return Err(Error::OrderMismatch { found, allowed: 1 });
        }
        let q = characteristic(v).0;
        let comp = |c: Coord| {
            let mut p = v.xi(c) * lagrangian;
            p += &(&q * &lagrangian.formal_partial(JetVar::first(c)));
            p -= phi.component(c);
            p
        };
        Ok(FluxVector::new(
            comp(Coord::X),
            comp(Coord::Y),
            comp(Coord::T),
        ))
    }

    /// Right-hand side of `u_xx = ...` obtained by solving `F = 0`.
    pub fn u_xx_on_shell(&self) -> Expr {
        let uxx = Expr::u("xx");
        let coeff = self.equation.formal_partial(JetVar::u("xx"));
        debug_assert_eq!(coeff, Expr::one());
        &uxx - &self.equation
    }

    /// Eliminates `u_xx` using the equation; zero exactly when `e` vanishes on solutions.
    pub fn on_shell_reduce(&self, e: &Expr) -> Result<Expr> {
        if let Some(v) = e.variables().into_iter().rev().find(|v| v.order() > 2) {
            return Err(Error::OrderOverflow {
                var: v.to_string(),
                max_order: 2,
            });
        }
        let uxx = JetVar::u("xx");
        let rhs = self.u_xx_on_shell();
        let mut out = e.clone();
        while out.contains(uxx) {
            out = self.space.substitute(&out, uxx, &rhs)?;
        }
        Ok(out)
    }

    pub fn flux_equivalent(&self, p: &FluxVector, p2: &FluxVector) -> Result<bool> {
        let div = self.space.divergence(&p.sub(p2))?;
        Ok(self.on_shell_reduce(&div)?.is_zero())
    }

    fn paper_residual(&self, flux: &FluxVector) -> Result<Expr> {
        self.on_shell_reduce(&self.space.divergence(flux)?)
    }

    /// Evaluates `e` at random points where `u_xx` satisfies the equation.
    pub fn numeric_on_shell(&self, e: &Expr, seed: u64) -> Result<NumericCheck> {
        let mut rng = sampling::rng(seed);
        let rhs = self.u_xx_on_shell();
        let mut failures = 0;
        for _ in 0..self.numeric_points {
            let point = self.on_shell_point(&mut rng, &rhs)?;
            if !e.evaluate(&point)?.is_zero() {
                failures += 1;
            }
        }
        Ok(NumericCheck {
            points: self.numeric_points,
            failures,
        })
    }

    fn on_shell_point<R: Rng>(&self, rng: &mut R, u_xx_rhs: &Expr) -> Result<Assignment> {
        let mut point = sampling::random_point(rng, self.space.max_order.min(2));
        point.remove(&JetVar::u("xx"));
        let value = u_xx_rhs.evaluate(&point)?;
        point.insert(JetVar::u("xx"), value);
        Ok(point)
    }

    /// Full check of one named record.
    pub fn verify_symmetry(&self, name: &str) -> Result<VerificationReport> {
        let rec = self.record(name)?;
        self.verify_record(rec)
    }

    pub fn verify_record(&self, rec: &SymmetryRecord) -> Result<VerificationReport> {
        let start = Instant::now();
        let phi = rec.potential.clone().unwrap_or_default();
        let defect = self.divergence_symmetry_defect(&rec.field, &self.lagrangian, &phi)?;
        let flux = self.noether_flux(&rec.field, &self.lagrangian, &phi)?;
        let div = self.space.divergence(&flux)?;
        let constructed_residual = self.on_shell_reduce(&div)?;

        let q_euler =
            &characteristic(&rec.field).0 * &self.space.euler_operator(&self.lagrangian)?;
        let noether_sign = if div == q_euler {
            Some(1)
        } else if div == -&q_euler {
            Some(-1)
        } else {
            None
        };

        let numeric_seed = self.seed ^ sampling::name_hash(&rec.name);
        let mut numeric = self.numeric_on_shell(&div, numeric_seed)?;

        let (mut paper_residual, mut equivalent, mut componentwise_equal, mut discrepancy) =
            (None, None, None, None);
        if let Some(paper) = &rec.paper_flux {
            let residual = self.paper_residual(paper)?;
            let paper_div = self.space.divergence(paper)?;
            let n = self.numeric_on_shell(&paper_div, numeric_seed.wrapping_add(1))?;
            // Numeric failures are expected exactly when the symbolic residual is nonzero.
            if residual.is_zero() {
                numeric.points += n.points;
                numeric.failures += n.failures;
            }
            equivalent = Some(self.flux_equivalent(&flux, paper)?);
            componentwise_equal = Some([0, 1, 2].map(|i| paper.0[i] == flux.0[i]));
            if !residual.is_zero() {
                discrepancy = Some(self.localize(paper, &flux)?);
            }
            paper_residual = Some(residual);
        }

        Ok(VerificationReport {
            symmetry: rec.name.clone(),
            defect,
            constructed_flux: flux,
            constructed_residual,
            noether_sign,
            paper_flux: rec.paper_flux.clone(),
            paper_residual,
            equivalent,
            componentwise_equal,
            discrepancy,
            numeric,
            elapsed: start.elapsed(),
        })
    }

    fn localize(&self, paper: &FluxVector, constructed: &FluxVector) -> Result<Discrepancy> {
        let differences = paper.sub(constructed);
        let mut suspects = Vec::new();
        for i in 0..3 {
            if differences.0[i].is_zero() {
                continue;
            }
            let mut swapped = paper.clone();
            swapped.0[i] = constructed.0[i].clone();
            if self.paper_residual(&swapped)?.is_zero() {
                suspects.push(i);
            }
        }
        let mut nearest: Option<(String, FluxVector, usize)> = None;
        for rec in &self.records {
            let phi = rec.potential.clone().unwrap_or_default();
            let other = self.noether_flux(&rec.field, &self.lagrangian, &phi)?;
            let diff = paper.sub(&other);
            let size: usize = diff.0.iter().map(Expr::len).sum();
            if nearest.as_ref().is_none_or(|(_, _, best)| size < *best) {
                nearest = Some((rec.name.clone(), diff, size));
            }
        }
        Ok(Discrepancy {
            differences,
            suspects,
            nearest: nearest.map(|(name, diff, _)| (name, diff)),
        })
    }

    /// Verifies the named records concurrently; results follow the requested order.
    pub fn verify_many(&self, names: &[String]) -> Result<Vec<VerificationReport>> {
        for n in names {
            self.record(n)?;
        }
        names.par_iter().map(|n| self.verify_symmetry(n)).collect()
    }

    pub fn verify_all(&self) -> Result<Vec<VerificationReport>> {
        let names: Vec<String> = self.records.iter().map(|r| r.name.clone()).collect();
        self.verify_many(&names)
    }

    /// Brackets of every ordered pair of records, solved in the record basis.
    pub fn bracket_table(&self) -> Result<BracketTable> {
        let names: Vec<String> = self.records.iter().map(|r| r.name.clone()).collect();
        let basis: Vec<VectorField> = self.records.iter().map(|r| r.field.clone()).collect();
        let entries = self
            .records
            .par_iter()
            .map(|a| {
                self.records
                    .iter()
                    .map(|b| {
                        let br = lie_bracket(&a.field, &b.field);
                        let coeffs =
                            solve_combination(&basis, &br).ok_or_else(|| Error::NotInSpan {
                                left: a.name.clone(),
                                right: b.name.clone(),
                            })?;
                        Ok(Combination(
                            names
                                .iter()
                                .cloned()
                                .zip(coeffs)
                                .filter(|(_, c)| !c.is_zero())
                                .collect(),
                        ))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BracketTable { names, entries })
    }
}
