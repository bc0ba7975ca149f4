//! Jet-space calculus: total derivatives, prolongation of point symmetries,
//! the Euler-Lagrange operator and Lie brackets of vector fields.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::jet::{Coord, Expr, JetSpace, JetVar, MultiIndex, Rational};
use crate::verifier::FluxVector;

/// A point symmetry generator `xi_x ∂x + xi_y ∂y + xi_t ∂t + eta ∂u`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VectorField {
    pub xi: [Expr; 3],
    pub eta: Expr,
}

impl VectorField {
    pub fn new(xi_x: Expr, xi_y: Expr, xi_t: Expr, eta: Expr) -> Self {
        VectorField {
            xi: [xi_x, xi_y, xi_t],
            eta,
        }
    }

    pub fn zero() -> Self {
        VectorField::new(Expr::zero(), Expr::zero(), Expr::zero(), Expr::zero())
    }

    pub fn xi(&self, c: Coord) -> &Expr {
        &self.xi[c.index()]
    }

    pub fn components(&self) -> [&Expr; 4] {
        [&self.xi[0], &self.xi[1], &self.xi[2], &self.eta]
    }

    pub fn is_zero(&self) -> bool {
        self.components().iter().all(|e| e.is_zero())
    }

    pub fn is_point(&self) -> bool {
        self.components().iter().all(|e| e.is_point_function())
    }

    pub fn scale(&self, c: &Rational) -> VectorField {
        VectorField {
            xi: [
                self.xi[0].scale(c),
                self.xi[1].scale(c),
                self.xi[2].scale(c),
            ],
            eta: self.eta.scale(c),
        }
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        VectorField {
            xi: [
                &self.xi[0] + &other.xi[0],
                &self.xi[1] + &other.xi[1],
                &self.xi[2] + &other.xi[2],
            ],
            eta: &self.eta + &other.eta,
        }
    }

    /// Action on a function of `(x, y, t, u)` as a first-order derivation.
    pub fn act(&self, f: &Expr) -> Expr {
        let mut out = &self.eta * &f.formal_partial(JetVar::U);
        for c in Coord::ALL {
            out += &(self.xi(c) * &f.formal_partial(JetVar::Coord(c)));
        }
        out
    }
}

/// The combination `eta - xi_x u_x - xi_y u_y - xi_t u_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Characteristic(pub Expr);

impl Characteristic {
    pub fn expr(&self) -> &Expr {
        &self.0
    }
}

pub fn characteristic(v: &VectorField) -> Characteristic {
    let mut q = v.eta.clone();
    for c in Coord::ALL {
        q -= &(v.xi(c) * &Expr::var(JetVar::first(c)));
    }
    Characteristic(q)
}

/// A point field extended to derivatives `u_J`, `1 <= |J| <= order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProlongedField {
    pub base: VectorField,
    pub eta_j: BTreeMap<MultiIndex, Expr>,
    pub order: u32,
}

impl ProlongedField {
    pub fn coefficient(&self, j: MultiIndex) -> Option<&Expr> {
        if j == MultiIndex::ZERO {
            Some(&self.base.eta)
        } else {
            self.eta_j.get(&j)
        }
    }
}

/// `[v, w]` with components `v(w^i) - w(v^i)`.
pub fn lie_bracket(v: &VectorField, w: &VectorField) -> VectorField {
    let comp = |i: usize| {
        let (a, b) = (v.components()[i], w.components()[i]);
        v.act(b) - w.act(a)
    };
    VectorField::new(comp(0), comp(1), comp(2), comp(3))
}

impl JetSpace {
    /// `D_c e = ∂e/∂c + Σ_J u_{J+c} ∂e/∂u_J`.
    pub fn total_derivative(&self, e: &Expr, c: Coord) -> Result<Expr> {
        let mut out = e.formal_partial(JetVar::Coord(c));
        for v in e.variables() {
            if let JetVar::Deriv(j) = v {
                let raised = JetVar::Deriv(j.raised(c));
                self.check_var(raised)?;
                out += &(&Expr::var(raised) * &e.formal_partial(v));
            }
        }
        Ok(out)
    }

    /// Applies `D_J` one coordinate at a time.
    pub fn total_derivative_multi(&self, e: &Expr, j: MultiIndex) -> Result<Expr> {
        let mut out = e.clone();
        for c in Coord::ALL {
            for _ in 0..j.count(c) {
                out = self.total_derivative(&out, c)?;
            }
        }
        Ok(out)
    }

    /// `D_x p1 + D_y p2 + D_t p3`.
    pub fn divergence(&self, p: &FluxVector) -> Result<Expr> {
        let mut out = Expr::zero();
        for c in Coord::ALL {
            out += &self.total_derivative(p.component(c), c)?;
        }
        Ok(out)
    }

    /// Sum of `D_i xi^i`.
    pub fn total_divergence_of_field(&self, v: &VectorField) -> Result<Expr> {
        self.divergence(&FluxVector(v.xi.clone()))
    }

    /// Extends `v` to derivatives up to `order` by the recursion
    /// `eta^{J,i} = D_i eta^J - Σ_j (D_i xi^j) u_{J,j}`.
    pub fn prolong(&self, v: &VectorField, order: u32) -> Result<ProlongedField> {
        let mut eta_j: BTreeMap<MultiIndex, Expr> = BTreeMap::new();
        let mut d_xi: BTreeMap<Coord, [Expr; 3]> = BTreeMap::new();
        for c in Coord::ALL {
            d_xi.insert(
                c,
                [
                    self.total_derivative(&v.xi[0], c)?,
                    self.total_derivative(&v.xi[1], c)?,
                    self.total_derivative(&v.xi[2], c)?,
                ],
            );
        }
        for m in 1..=order {
            for j in MultiIndex::of_order(m) {
                let c = Coord::ALL
                    .into_iter()
                    .find(|&c| j.count(c) > 0)
                    .expect("nonzero multi-index");
                let parent = j.lowered(c).expect("count > 0");
                let parent_eta = if parent == MultiIndex::ZERO {
                    &v.eta
                } else {
                    &eta_j[&parent]
                };
                let mut eta = self.total_derivative(parent_eta, c)?;
                for (k, dk) in Coord::ALL.into_iter().zip(&d_xi[&c]) {
                    let var = JetVar::Deriv(parent.raised(k));
                    self.check_var(var)?;
                    eta -= &(dk * &Expr::var(var));
                }
                eta_j.insert(j, eta);
            }
        }
        Ok(ProlongedField {
            base: v.clone(),
            eta_j,
            order,
        })
    }

    /// `Σ xi^i ∂e/∂x^i + eta ∂e/∂u + Σ_J eta^J ∂e/∂u_J`, all partials formal.
    pub fn apply_prolonged(&self, pv: &ProlongedField, e: &Expr) -> Result<Expr> {
        let found = e.order();
        if found > pv.order {
            return Err(Error::OrderMismatch {
                found,
                allowed: pv.order,
            });
        }
        let mut out = Expr::zero();
        for v in e.variables() {
            let coeff = match v {
                JetVar::Coord(c) => pv.base.xi(c),
                JetVar::Deriv(j) => pv.coefficient(j).expect("prolonged to e's order"),
            };
            out += &(coeff * &e.formal_partial(v));
        }
        Ok(out)
    }

    /// Euler-Lagrange expression of a Lagrangian of order at most 2.
    ///
    /// Second-order terms use the canonical symmetric variable once per
    /// unordered pair, so `E(u_xt)` carries a single `D_x D_t`.
    pub fn euler_operator(&self, lagrangian: &Expr) -> Result<Expr> {
        let found = lagrangian.order();
        if found > 2 {
            return Err(Error::OrderMismatch { found, allowed: 2 });
        }
        let mut out = lagrangian.formal_partial(JetVar::U);
        for m in 1..=found {
            for j in MultiIndex::of_order(m) {
                let partial = lagrangian.formal_partial(JetVar::Deriv(j));
                if partial.is_zero() {
                    continue;
                }
                let term = self.total_derivative_multi(&partial, j)?;
                if m % 2 == 1 {
                    out -= &term;
                } else {
                    out += &term;
                }
            }
        }
        Ok(out)
    }
}
