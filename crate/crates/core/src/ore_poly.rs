//! The Ore extension `A[x; σ̃, Δ]` over the function algebra on a finite set.
//!
//! Elements are stored in left canonical form `Σ f_k x^k`. Products are
//! computed by rewriting `x^k g = Σ_{m ≤ k} π_m^k(g) x^m`, where the linear
//! maps `π_m^k` satisfy `π_0^0 = id`, `π_m^k = 0` outside `0 ≤ m ≤ k`, and
//!
//! ```text
//! π_m^k = σ̃ ∘ π_{m-1}^{k-1} + Δ ∘ π_m^{k-1}.
//! ```
//!
//! The maps are memoized per context as `n × n` matrices.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::Zero;

use crate::base_algebra::{check_dim, FuncElem, Permutation};
use crate::derivation::DerivationMatrix;
use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::rational::Rational;

/// A permutation together with a valid twisted derivation; the data defining
/// one Ore extension.
pub struct OreContext {
    perm: Permutation,
    delta: DerivationMatrix,
    sigma: RatMatrix,
    // pi[k][m] = π_m^k for 0 ≤ m ≤ k
    pi: RwLock<Vec<Vec<Arc<RatMatrix>>>>,
}

impl OreContext {
    /// Fails if `delta` is not a valid derivation matrix for its permutation.
    pub fn new(delta: DerivationMatrix) -> Result<Arc<Self>> {
        if let Err(v) = delta.validate() {
            return Err(Error::NotADerivation(v.to_string()));
        }
        let perm = delta.perm().clone();
        let n = perm.n();
        let mut sigma = RatMatrix::zeros(n, n);
        for q in 0..n {
            sigma[(perm.apply(q), q)] = Rational::from_integer(1.into());
        }
        Ok(Arc::new(OreContext {
            perm,
            delta,
            sigma,
            pi: RwLock::new(vec![vec![Arc::new(RatMatrix::identity(n))]]),
        }))
    }

    pub fn from_diag(perm: Permutation, diag: Vec<Rational>) -> Result<Arc<Self>> {
        Self::new(DerivationMatrix::build(perm, diag)?)
    }

    /// The skew polynomial ring `A[x; σ̃]` (zero derivation).
    pub fn skew(perm: Permutation) -> Arc<Self> {
        Self::new(DerivationMatrix::zero(perm)).expect("zero derivation is valid")
    }

    pub fn n(&self) -> usize {
        self.perm.n()
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn derivation(&self) -> &DerivationMatrix {
        &self.delta
    }

    pub fn has_zero_derivation(&self) -> bool {
        self.delta.is_zero()
    }

    /// Matrix of `σ̃`.
    pub fn sigma_matrix(&self) -> &RatMatrix {
        &self.sigma
    }

    /// Matrix of `π_m^k`. Indices outside `0 ≤ m ≤ k` give the zero map.
    pub fn pi_map(&self, m: i64, k: i64) -> Arc<RatMatrix> {
        let n = self.n();
        if m < 0 || k < 0 || m > k {
            return Arc::new(RatMatrix::zeros(n, n));
        }
        let (m, k) = (m as usize, k as usize);
        {
            let table = self.pi.read().expect("pi table poisoned");
            if let Some(row) = table.get(k) {
                return row[m].clone();
            }
        }
        let mut table = self.pi.write().expect("pi table poisoned");
        while table.len() <= k {
            let prev = table.last().expect("table starts with π_0^0");
            let next_k = table.len();
            let row: Vec<Arc<RatMatrix>> = (0..=next_k)
                .map(|mm| {
                    let shifted = if mm >= 1 { Some(self.sigma.mul(&prev[mm - 1])) } else { None };
                    let derived = if mm < next_k { Some(self.delta.entries().mul(&prev[mm])) } else { None };
                    let out = match (shifted, derived) {
                        (Some(a), Some(b)) => a.add(&b),
                        (Some(a), None) => a,
                        (None, Some(b)) => b,
                        (None, None) => unreachable!("k ≥ 1"),
                    };
                    Arc::new(out)
                })
                .collect();
            table.push(row);
        }
        table[k][m].clone()
    }

    /// `π_m^k(g)`.
    pub fn pi(&self, m: i64, k: i64, g: &FuncElem) -> Result<FuncElem> {
        check_dim(self.n(), g.n())?;
        FuncElem::new(self.pi_map(m, k).mul_vec(g.values()))
    }

    pub fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }
}

impl PartialEq for OreContext {
    fn eq(&self, other: &Self) -> bool {
        self.delta == other.delta
    }
}

impl Eq for OreContext {}

impl fmt::Debug for OreContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OreContext").field("perm", &self.perm).field("delta", self.delta.entries()).finish()
    }
}

/// Degree of a polynomial; the zero polynomial has degree `-∞`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl std::ops::Add for Degree {
    type Output = Degree;
    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInfinity,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// `Σ f_k x^k` with `f_k` in the function algebra and no trailing zero coefficients.
#[derive(Clone)]
pub struct OrePoly {
    ctx: Arc<OreContext>,
    coeffs: Vec<FuncElem>,
}

impl OrePoly {
    pub fn new(ctx: &Arc<OreContext>, coeffs: Vec<FuncElem>) -> Result<Self> {
        for c in &coeffs {
            check_dim(ctx.n(), c.n())?;
        }
        Ok(Self::from_coeffs_unchecked(ctx, coeffs))
    }

    pub(crate) fn from_coeffs_unchecked(ctx: &Arc<OreContext>, mut coeffs: Vec<FuncElem>) -> Self {
        while coeffs.last().is_some_and(FuncElem::is_zero) {
            coeffs.pop();
        }
        OrePoly { ctx: ctx.clone(), coeffs }
    }

    pub fn zero(ctx: &Arc<OreContext>) -> Self {
        OrePoly { ctx: ctx.clone(), coeffs: Vec::new() }
    }

    pub fn one(ctx: &Arc<OreContext>) -> Self {
        Self::constant(ctx, FuncElem::one(ctx.n()))
    }

    pub fn constant(ctx: &Arc<OreContext>, f: FuncElem) -> Self {
        Self::monomial(ctx, f, 0)
    }

    /// `f x^k`.
    pub fn monomial(ctx: &Arc<OreContext>, f: FuncElem, k: usize) -> Self {
        assert_eq!(f.n(), ctx.n(), "coefficient lives on a different set");
        let mut coeffs = vec![FuncElem::zero(ctx.n()); k];
        coeffs.push(f);
        Self::from_coeffs_unchecked(ctx, coeffs)
    }

    /// The generator `x = 1·x`.
    pub fn x(ctx: &Arc<OreContext>) -> Self {
        Self::monomial(ctx, FuncElem::one(ctx.n()), 1)
    }

    /// Builds a polynomial from a coordinate vector indexed `k * n + i`.
    pub fn from_coordinates(ctx: &Arc<OreContext>, coords: &[Rational]) -> Self {
        let n = ctx.n();
        assert_eq!(coords.len() % n, 0);
        let coeffs = coords.chunks(n).map(|c| FuncElem::new(c.to_vec()).expect("n > 0")).collect();
        Self::from_coeffs_unchecked(ctx, coeffs)
    }

    /// Coordinate vector of length `n * (max_degree + 1)`, indexed `k * n + i`.
    pub fn coordinates(&self, max_degree: usize) -> Vec<Rational> {
        let n = self.ctx.n();
        let mut out = vec![Rational::zero(); n * (max_degree + 1)];
        for (k, c) in self.coeffs.iter().enumerate().take(max_degree + 1) {
            out[k * n..(k + 1) * n].clone_from_slice(c.values());
        }
        out
    }

    pub fn context(&self) -> &Arc<OreContext> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[FuncElem] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> FuncElem {
        self.coeffs.get(k).cloned().unwrap_or_else(|| FuncElem::zero(self.ctx.n()))
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            len => Degree::Finite(len - 1),
        }
    }

    pub fn leading_coefficient(&self) -> Option<&FuncElem> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check_context(&self, other: &OrePoly) -> Result<()> {
        if self.ctx.same_as(&other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, other: &OrePoly) -> Result<OrePoly> {
        self.check_context(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|k| &self.coeff(k) + &other.coeff(k)).collect();
        Ok(Self::from_coeffs_unchecked(&self.ctx, coeffs))
    }

    pub fn sub(&self, other: &OrePoly) -> Result<OrePoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> OrePoly {
        OrePoly { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &Rational) -> OrePoly {
        Self::from_coeffs_unchecked(&self.ctx, self.coeffs.iter().map(|f| f.scale(c)).collect())
    }

    /// `g · P` for `g` in the coefficient algebra.
    pub fn left_mul_coefficient(&self, g: &FuncElem) -> Result<OrePoly> {
        check_dim(self.ctx.n(), g.n())?;
        Ok(Self::from_coeffs_unchecked(&self.ctx, self.coeffs.iter().map(|f| g * f).collect()))
    }

    /// `P · g` for `g` in the coefficient algebra.
    pub fn right_mul_coefficient(&self, g: &FuncElem) -> Result<OrePoly> {
        self.multiply(&OrePoly::constant(&self.ctx, g.clone()))
    }

    /// The product in `A[x; σ̃, Δ]`.
    pub fn multiply(&self, other: &OrePoly) -> Result<OrePoly> {
        self.check_context(other)?;
        let n = self.ctx.n();
        let (Some(dp), Some(dq)) = (self.degree().finite(), other.degree().finite()) else {
            return Ok(OrePoly::zero(&self.ctx));
        };
        let mut out = vec![FuncElem::zero(n); dp + dq + 1];
        for (k, f) in self.coeffs.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            for (l, g) in other.coeffs.iter().enumerate() {
                if g.is_zero() {
                    continue;
                }
                // f x^k g x^l = Σ_m f π_m^k(g) x^{m+l}
                for m in 0..=k {
                    let moved = FuncElem::new(self.ctx.pi_map(m as i64, k as i64).mul_vec(g.values()))?;
                    if moved.is_zero() {
                        continue;
                    }
                    out[m + l] = &out[m + l] + &(f * &moved);
                }
            }
        }
        Ok(Self::from_coeffs_unchecked(&self.ctx, out))
    }

    /// `P g = g P` for every `g` in the coefficient algebra.
    ///
    /// Decided coefficientwise: `g f_k = Σ_{j ≥ k} f_j π_k^j(g)` for each `k`,
    /// with `g` ranging over the basis `e_1..e_n`.
    pub fn commutes_with_coefficient_algebra(&self) -> bool {
        let n = self.ctx.n();
        let Some(m) = self.degree().finite() else {
            return true;
        };
        for l in 0..n {
            let g = FuncElem::basis(n, l);
            for k in 0..=m {
                let lhs = &g * &self.coeffs[k];
                let mut rhs = FuncElem::zero(n);
                for j in k..=m {
                    let moved = FuncElem::new(self.ctx.pi_map(k as i64, j as i64).column(l)).expect("n > 0");
                    rhs = &rhs + &(&self.coeffs[j] * &moved);
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// `P Q = Q P`.
    pub fn commutes_with(&self, other: &OrePoly) -> Result<bool> {
        Ok(self.multiply(other)? == other.multiply(self)?)
    }
}

impl PartialEq for OrePoly {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same_as(&other.ctx) && self.coeffs == other.coeffs
    }
}

impl Eq for OrePoly {}

impl fmt::Debug for OrePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k.cmp(&1) {
                Ordering::Less => write!(f, "{c:?}")?,
                Ordering::Equal => write!(f, "{c:?}x")?,
                Ordering::Greater => write!(f, "{c:?}x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn swap_ctx(s: i64, t: i64) -> Arc<OreContext> {
        OreContext::from_diag(Permutation::swap(2, 0, 1), vec![int(s), int(t)]).unwrap()
    }

    #[test]
    fn pi_boundary_values() {
        let ctx = swap_ctx(1, 2);
        let g = FuncElem::from_ints(&[3, -5]);
        assert_eq!(ctx.pi(0, 0, &g).unwrap(), g);
        assert!(ctx.pi(2, 1, &g).unwrap().is_zero());
        assert!(ctx.pi(-1, 3, &g).unwrap().is_zero());
        assert!(ctx.pi(0, -1, &g).unwrap().is_zero());
        for j in 1..=3 {
            assert_eq!(ctx.pi(0, j, &g).unwrap(), ctx.derivation().delta_power(j as usize, &g).unwrap());
        }
        // π_k^k = σ̃^k
        assert_eq!(ctx.pi(3, 3, &g).unwrap(), ctx.perm().apply_automorphism(&g, 3).unwrap());
    }

    #[test]
    fn x_times_e1() {
        let ctx = swap_ctx(1, 1);
        let x = OrePoly::x(&ctx);
        let e1 = OrePoly::constant(&ctx, FuncElem::basis(2, 0));
        let expected =
            OrePoly::new(&ctx, vec![FuncElem::from_ints(&[1, -1]), FuncElem::basis(2, 1)]).unwrap();
        assert_eq!(x.multiply(&e1).unwrap(), expected);
    }

    #[test]
    fn x_squared_times_g() {
        let ctx = swap_ctx(2, 3);
        let sigma = ctx.perm();
        let d = ctx.derivation();
        let g = FuncElem::from_ints(&[7, -4]);
        let x2 = OrePoly::monomial(&ctx, FuncElem::one(2), 2);
        let prod = x2.multiply(&OrePoly::constant(&ctx, g.clone())).unwrap();
        let c2 = sigma.apply_automorphism(&g, 2).unwrap();
        let c1 = &d.apply(&sigma.apply_automorphism(&g, 1).unwrap()).unwrap()
            + &sigma.apply_automorphism(&d.apply(&g).unwrap(), 1).unwrap();
        let c0 = d.delta_power(2, &g).unwrap();
        assert_eq!(prod, OrePoly::new(&ctx, vec![c0, c1, c2]).unwrap());
    }

    #[test]
    fn identity_and_zero() {
        let ctx = swap_ctx(1, 2);
        let p = OrePoly::new(&ctx, vec![FuncElem::from_ints(&[1, 2]), FuncElem::from_ints(&[0, 3])]).unwrap();
        let one = OrePoly::one(&ctx);
        assert_eq!(p.multiply(&one).unwrap(), p);
        assert_eq!(one.multiply(&p).unwrap(), p);
        assert_eq!(p.add(&OrePoly::zero(&ctx)).unwrap(), p);
        let z = p.add(&p.scale(&int(-1))).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.degree(), Degree::NegInfinity);
        assert!(OrePoly::zero(&ctx).multiply(&p).unwrap().is_zero());
    }

    #[test]
    fn componentwise_sum() {
        let ctx = OreContext::skew(Permutation::identity(2));
        let a = OrePoly::monomial(&ctx, FuncElem::basis(2, 0), 1);
        let b = OrePoly::monomial(&ctx, FuncElem::basis(2, 1), 1);
        assert_eq!(a.add(&b).unwrap(), OrePoly::x(&ctx));
    }

    #[test]
    fn context_mismatch() {
        let a = OrePoly::x(&swap_ctx(1, 2));
        let b = OrePoly::x(&swap_ctx(1, 3));
        assert_eq!(a.multiply(&b).unwrap_err(), Error::ContextMismatch);
        assert_eq!(a.add(&b).unwrap_err(), Error::ContextMismatch);
        // structurally equal contexts are interchangeable
        assert!(a.add(&OrePoly::x(&swap_ctx(1, 2))).is_ok());
    }

    #[test]
    fn commutation_examples() {
        let ctx = swap_ctx(1, 2);
        assert!(OrePoly::constant(&ctx, FuncElem::from_ints(&[5, 6])).commutes_with_coefficient_algebra());
        assert!(!OrePoly::monomial(&ctx, FuncElem::basis(2, 0), 1).commutes_with_coefficient_algebra());
        let cyc = OreContext::skew(Permutation::rotation(3));
        assert!(!OrePoly::monomial(&cyc, FuncElem::basis(3, 0), 1).commutes_with_coefficient_algebra());
        assert!(OrePoly::monomial(&cyc, FuncElem::basis(3, 0), 3).commutes_with_coefficient_algebra());
    }

    #[test]
    fn unit_commutes_with_x() {
        let ctx = swap_ctx(3, -1);
        assert!(OrePoly::x(&ctx).commutes_with(&OrePoly::one(&ctx)).unwrap());
    }

    #[test]
    fn degree_drops_on_zero_divisors() {
        let ctx = OreContext::skew(Permutation::swap(2, 0, 1));
        let a = OrePoly::monomial(&ctx, FuncElem::basis(2, 0), 1);
        // e1 x · e1 x = e1 σ̃(e1) x² = e1 e2 x² = 0
        assert!(a.multiply(&a).unwrap().is_zero());
    }
}
