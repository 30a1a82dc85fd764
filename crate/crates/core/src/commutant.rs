//! Centralizer of the coefficient algebra and center of the Ore extension,
//! restricted to a degree window `deg ≤ max_degree`.
//!
//! Two routes are provided. For a zero derivation the closed forms are
//!
//! * centralizer: `{ Σ f_k x^k : f_k = 0 on Sep^k }`
//! * center: additionally `σ̃(f_k) = f_k`, i.e. `f_k` constant on cycles.
//!
//! The solver handles any derivation: it assembles the centrality equations
//! `g f_k = Σ_{j ≥ k} f_j π_k^j(g)` for `g = e_1..e_n` and `k = 0..max_degree`
//! into one linear system over all coefficient entries and takes its null
//! space.
//!
//! Coordinates are ordered by degree, then by point: entry `i` of `f_k` is
//! column `k * n + i`. Every basis is returned in reduced row echelon form
//! with respect to this order, so the two routes can be compared directly.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::base_algebra::FuncElem;
use crate::error::{Error, Result};
use crate::matrix::{self, RatMatrix};
use crate::ore_poly::{OreContext, OrePoly};
use crate::rational::Rational;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Method {
    ClosedForm,
    Solver,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Solver => "solver",
        }
    }
}

/// A basis of a subspace of `{ P : deg P ≤ max_degree }`.
#[derive(Clone, Debug)]
pub struct SubspaceBasis {
    ctx: Arc<OreContext>,
    max_degree: usize,
    method: Method,
    elements: Vec<OrePoly>,
}

impl SubspaceBasis {
    /// Canonical (RREF) basis of the span of the given coordinate vectors.
    fn from_vectors(ctx: &Arc<OreContext>, max_degree: usize, method: Method, vectors: &[Vec<Rational>]) -> Self {
        let cols = ctx.n() * (max_degree + 1);
        let elements = matrix::row_space_basis(vectors, cols)
            .iter()
            .map(|v| OrePoly::from_coordinates(ctx, v))
            .collect();
        SubspaceBasis { ctx: ctx.clone(), max_degree, method, elements }
    }

    /// Canonical basis of the span of arbitrary polynomials of degree ≤ `max_degree`.
    pub fn span_of(ctx: &Arc<OreContext>, max_degree: usize, method: Method, polys: &[OrePoly]) -> Result<Self> {
        let mut vectors = Vec::with_capacity(polys.len());
        for p in polys {
            if !p.context().same_as(ctx) {
                return Err(Error::ContextMismatch);
            }
            if p.degree().finite().is_some_and(|d| d > max_degree) {
                return Err(Error::DimensionMismatch { expected: max_degree, found: p.degree().finite().unwrap() });
            }
            vectors.push(p.coordinates(max_degree));
        }
        Ok(Self::from_vectors(ctx, max_degree, method, &vectors))
    }

    pub fn context(&self) -> &Arc<OreContext> {
        &self.ctx
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn elements(&self) -> &[OrePoly] {
        &self.elements
    }

    pub fn dimension(&self) -> usize {
        self.elements.len()
    }

    fn cols(&self) -> usize {
        self.ctx.n() * (self.max_degree + 1)
    }

    pub fn coordinate_rows(&self) -> Vec<Vec<Rational>> {
        self.elements.iter().map(|p| p.coordinates(self.max_degree)).collect()
    }

    /// Exact rank of the stacked coordinate vectors equals the element count.
    pub fn is_independent(&self) -> bool {
        matrix::rank(&self.coordinate_rows(), self.cols()) == self.elements.len()
    }

    /// `p` lies in the span (and within the degree window).
    pub fn contains(&self, p: &OrePoly) -> bool {
        if !p.context().same_as(&self.ctx) {
            return false;
        }
        if p.degree().finite().is_some_and(|d| d > self.max_degree) {
            return false;
        }
        matrix::span_contains(&self.coordinate_rows(), &[p.coordinates(self.max_degree)], self.cols())
    }

    /// Mutual containment by rank.
    pub fn same_span(&self, other: &SubspaceBasis) -> bool {
        if !self.ctx.same_as(&other.ctx) || self.max_degree != other.max_degree {
            return false;
        }
        let (a, b) = (self.coordinate_rows(), other.coordinate_rows());
        matrix::span_contains(&a, &b, self.cols()) && matrix::span_contains(&b, &a, self.cols())
    }
}

fn require_zero_derivation(ctx: &OreContext, what: &'static str) -> Result<()> {
    if ctx.has_zero_derivation() {
        Ok(())
    } else {
        Err(Error::NonZeroDerivation(what))
    }
}

/// `{ e_i x^k : 0 ≤ k ≤ max_degree, i ∈ Per^k }`.
pub fn centralizer_closed_form(ctx: &Arc<OreContext>, max_degree: usize) -> Result<SubspaceBasis> {
    require_zero_derivation(ctx, "the closed-form centralizer")?;
    let n = ctx.n();
    let cols = n * (max_degree + 1);
    let mut vectors = Vec::new();
    for k in 0..=max_degree {
        let (_, per) = ctx.perm().sep_per_sets(k as i64);
        for i in per {
            let mut v = vec![Rational::zero(); cols];
            v[k * n + i] = Rational::one();
            vectors.push(v);
        }
    }
    Ok(SubspaceBasis::from_vectors(ctx, max_degree, Method::ClosedForm, &vectors))
}

/// Rows of the centrality system: one row per (basis element `e_l`, degree
/// `k`, point `p`), in that nesting order.
pub fn centrality_constraints(ctx: &OreContext, max_degree: usize) -> RatMatrix {
    constraint_rows(ctx, max_degree, 0..=max_degree)
}

/// The `k = 0` block of the centrality system, which reduces to
/// `Σ_{j ≥ 1} f_j Δ^j(g) = 0`. The columns of `f_0` are identically zero.
pub fn constant_term_constraints(ctx: &OreContext, max_degree: usize) -> RatMatrix {
    constraint_rows(ctx, max_degree, 0..=0)
}

fn constraint_rows(ctx: &OreContext, max_degree: usize, degrees: std::ops::RangeInclusive<usize>) -> RatMatrix {
    let n = ctx.n();
    let cols = n * (max_degree + 1);
    let mut rows = Vec::new();
    for l in 0..n {
        for k in degrees.clone() {
            let maps: Vec<_> = (k..=max_degree).map(|j| ctx.pi_map(k as i64, j as i64)).collect();
            for p in 0..n {
                let mut row = vec![Rational::zero(); cols];
                if l == p {
                    row[k * n + p] += Rational::one();
                }
                for (offset, map) in maps.iter().enumerate() {
                    let j = k + offset;
                    row[j * n + p] -= &map[(p, l)];
                }
                rows.push(row);
            }
        }
    }
    RatMatrix::from_rows(rows)
}

/// Exact basis of `{ P : deg P ≤ max_degree, P g = g P for all g }` for any derivation.
pub fn centralizer_solver(ctx: &Arc<OreContext>, max_degree: usize) -> SubspaceBasis {
    let system = centrality_constraints(ctx, max_degree);
    let kernel = matrix::null_space(&system);
    SubspaceBasis::from_vectors(ctx, max_degree, Method::Solver, &kernel)
}

/// Every element's leading coefficient vanishes on `Sep^deg`.
pub fn leading_coefficient_check(basis: &SubspaceBasis) -> bool {
    basis.elements().iter().all(leading_coefficient_vanishes_on_sep)
}

pub fn leading_coefficient_vanishes_on_sep(p: &OrePoly) -> bool {
    let (Some(m), Some(lead)) = (p.degree().finite(), p.leading_coefficient()) else {
        return true;
    };
    let (sep, _) = p.context().perm().sep_per_sets(m as i64);
    lead.vanishes_on(&sep)
}

/// `{ 1_C x^k : C a cycle with |C| dividing k }`.
pub fn center_closed_form(ctx: &Arc<OreContext>, max_degree: usize) -> Result<SubspaceBasis> {
    require_zero_derivation(ctx, "the center")?;
    let n = ctx.n();
    let cycles = ctx.perm().cycle_decomposition().cycles;
    let mut polys = Vec::new();
    for k in 0..=max_degree {
        for cycle in cycles.iter().filter(|c| k % c.len() == 0) {
            polys.push(OrePoly::monomial(ctx, FuncElem::indicator(n, cycle.iter().copied()), k));
        }
    }
    SubspaceBasis::span_of(ctx, max_degree, Method::ClosedForm, &polys)
}

/// Membership in the center of the skew polynomial ring.
pub fn center_membership(p: &OrePoly) -> Result<bool> {
    let ctx = p.context();
    require_zero_derivation(ctx, "the center")?;
    if !p.commutes_with_coefficient_algebra() {
        return Ok(false);
    }
    for f in p.coeffs() {
        if ctx.perm().apply_automorphism(f, 1)? != *f {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All pairs of basis elements commute under the Ore product.
pub fn maximal_commutativity_check(basis: &SubspaceBasis) -> bool {
    let els = basis.elements();
    for (a, p) in els.iter().enumerate() {
        for q in &els[a + 1..] {
            match p.commutes_with(q) {
                Ok(true) => {}
                _ => return false,
            }
        }
    }
    true
}
