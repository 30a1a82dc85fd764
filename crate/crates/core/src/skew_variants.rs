//! Skew power series (truncated at a fixed order) and skew Laurent
//! polynomials over the function algebra, both twisted by `σ̃` alone.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::base_algebra::{check_dim, FuncElem};
use crate::error::{Error, Result};
use crate::ore_poly::OreContext;
use crate::rational::Rational;

fn require_skew(ctx: &OreContext, what: &'static str) -> Result<()> {
    if ctx.has_zero_derivation() {
        Ok(())
    } else {
        Err(Error::NonZeroDerivation(what))
    }
}

fn check_same(a: &Arc<OreContext>, b: &Arc<OreContext>) -> Result<()> {
    if a.same_as(b) {
        Ok(())
    } else {
        Err(Error::ContextMismatch)
    }
}

/// `f_k · σ̃^k(g)`, the coefficient of `(f x^k)(g x^l)`.
fn twisted_product(ctx: &OreContext, f: &FuncElem, k: i64, g: &FuncElem) -> FuncElem {
    let moved = ctx.perm().apply_automorphism(g, k).expect("same dimension");
    f * &moved
}

/// `Σ_{k=0}^{N} f_k x^k` modulo `x^{N+1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct SeriesElem {
    ctx: Arc<OreContext>,
    order: usize,
    coeffs: Vec<FuncElem>,
}

impl SeriesElem {
    /// Coefficients past `order` are dropped; missing ones are zero.
    pub fn new(ctx: &Arc<OreContext>, order: usize, mut coeffs: Vec<FuncElem>) -> Result<Self> {
        require_skew(ctx, "the skew power series ring")?;
        for c in &coeffs {
            check_dim(ctx.n(), c.n())?;
        }
        coeffs.resize(order + 1, FuncElem::zero(ctx.n()));
        Ok(SeriesElem { ctx: ctx.clone(), order, coeffs })
    }

    pub fn zero(ctx: &Arc<OreContext>, order: usize) -> Result<Self> {
        Self::new(ctx, order, Vec::new())
    }

    pub fn one(ctx: &Arc<OreContext>, order: usize) -> Result<Self> {
        Self::new(ctx, order, vec![FuncElem::one(ctx.n())])
    }

    /// `f x^k` (zero when `k > order`).
    pub fn monomial(ctx: &Arc<OreContext>, order: usize, f: FuncElem, k: usize) -> Result<Self> {
        let mut coeffs = vec![FuncElem::zero(ctx.n()); k];
        coeffs.push(f);
        Self::new(ctx, order, coeffs)
    }

    pub fn context(&self) -> &Arc<OreContext> {
        &self.ctx
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Exactly `order + 1` coefficients.
    pub fn coeffs(&self) -> &[FuncElem] {
        &self.coeffs
    }

    fn check(&self, other: &SeriesElem) -> Result<()> {
        check_same(&self.ctx, &other.ctx)?;
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }

    pub fn add(&self, other: &SeriesElem) -> Result<SeriesElem> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(SeriesElem { ctx: self.ctx.clone(), order: self.order, coeffs })
    }

    pub fn neg(&self) -> SeriesElem {
        SeriesElem { ctx: self.ctx.clone(), order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &SeriesElem) -> Result<SeriesElem> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> SeriesElem {
        SeriesElem { ctx: self.ctx.clone(), order: self.order, coeffs: self.coeffs.iter().map(|f| f.scale(c)).collect() }
    }

    /// Coefficient `n` is `Σ_{k ≤ n} f_k σ̃^k(g_{n-k})`.
    pub fn multiply(&self, other: &SeriesElem) -> Result<SeriesElem> {
        self.check(other)?;
        let n = self.ctx.n();
        let coeffs = (0..=self.order)
            .map(|deg| {
                (0..=deg).fold(FuncElem::zero(n), |acc, k| {
                    &acc + &twisted_product(&self.ctx, &self.coeffs[k], k as i64, &other.coeffs[deg - k])
                })
            })
            .collect();
        Ok(SeriesElem { ctx: self.ctx.clone(), order: self.order, coeffs })
    }

    /// Reduction modulo `x^{m+1}` for `m ≤ order`.
    pub fn truncate(&self, m: usize) -> Result<SeriesElem> {
        if m > self.order {
            return Err(Error::OrderMismatch(self.order, m));
        }
        Ok(SeriesElem { ctx: self.ctx.clone(), order: m, coeffs: self.coeffs[..=m].to_vec() })
    }

    pub fn commutes_with(&self, other: &SeriesElem) -> Result<bool> {
        Ok(self.multiply(other)? == other.multiply(self)?)
    }

    /// Every `f_k` vanishes on `Sep^k`, checked up to the truncation order.
    pub fn centralizer_membership(&self) -> bool {
        let perm = self.ctx.perm();
        self.coeffs.iter().enumerate().all(|(k, f)| f.support().into_iter().all(|i| perm.is_periodic(i, k as i64)))
    }

    /// Centralizer membership plus `σ̃(f_k) = f_k` for every `k`.
    pub fn center_membership(&self) -> bool {
        let perm = self.ctx.perm();
        self.centralizer_membership()
            && self.coeffs.iter().all(|f| perm.apply_automorphism(f, 1).expect("same dimension") == *f)
    }
}

impl fmt::Debug for SeriesElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + O(x^{})", self.coeffs, self.order + 1)
    }
}

/// `Σ_{k ∈ ℤ} f_k x^k` with finitely many nonzero `f_k`, none of them stored.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentElem {
    ctx: Arc<OreContext>,
    coeffs: BTreeMap<i64, FuncElem>,
}

impl LaurentElem {
    pub fn new(ctx: &Arc<OreContext>, coeffs: BTreeMap<i64, FuncElem>) -> Result<Self> {
        require_skew(ctx, "the skew Laurent ring")?;
        for c in coeffs.values() {
            check_dim(ctx.n(), c.n())?;
        }
        Ok(Self::canonical(ctx, coeffs))
    }

    fn canonical(ctx: &Arc<OreContext>, mut coeffs: BTreeMap<i64, FuncElem>) -> Self {
        coeffs.retain(|_, f| !f.is_zero());
        LaurentElem { ctx: ctx.clone(), coeffs }
    }

    pub fn zero(ctx: &Arc<OreContext>) -> Result<Self> {
        Self::new(ctx, BTreeMap::new())
    }

    /// `f x^k`.
    pub fn monomial(ctx: &Arc<OreContext>, f: FuncElem, k: i64) -> Result<Self> {
        Self::new(ctx, BTreeMap::from([(k, f)]))
    }

    pub fn one(ctx: &Arc<OreContext>) -> Result<Self> {
        Self::monomial(ctx, FuncElem::one(ctx.n()), 0)
    }

    pub fn x(ctx: &Arc<OreContext>) -> Result<Self> {
        Self::monomial(ctx, FuncElem::one(ctx.n()), 1)
    }

    pub fn x_inv(ctx: &Arc<OreContext>) -> Result<Self> {
        Self::monomial(ctx, FuncElem::one(ctx.n()), -1)
    }

    pub fn context(&self) -> &Arc<OreContext> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, FuncElem> {
        &self.coeffs
    }

    pub fn coeff(&self, k: i64) -> FuncElem {
        self.coeffs.get(&k).cloned().unwrap_or_else(|| FuncElem::zero(self.ctx.n()))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &LaurentElem) -> Result<LaurentElem> {
        check_same(&self.ctx, &other.ctx)?;
        let mut coeffs = self.coeffs.clone();
        for (&k, g) in &other.coeffs {
            let slot = coeffs.entry(k).or_insert_with(|| FuncElem::zero(self.ctx.n()));
            *slot = &*slot + g;
        }
        Ok(Self::canonical(&self.ctx, coeffs))
    }

    pub fn neg(&self) -> LaurentElem {
        LaurentElem { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(|(&k, f)| (k, -f)).collect() }
    }

    pub fn sub(&self, other: &LaurentElem) -> Result<LaurentElem> {
        self.add(&other.neg())
    }

    /// `(f_k x^k)(g_l x^l) = f_k σ̃^k(g_l) x^{k+l}` for all integers `k, l`.
    pub fn multiply(&self, other: &LaurentElem) -> Result<LaurentElem> {
        check_same(&self.ctx, &other.ctx)?;
        let mut coeffs: BTreeMap<i64, FuncElem> = BTreeMap::new();
        for (&k, f) in &self.coeffs {
            for (&l, g) in &other.coeffs {
                let term = twisted_product(&self.ctx, f, k, g);
                let slot = coeffs.entry(k + l).or_insert_with(|| FuncElem::zero(self.ctx.n()));
                *slot = &*slot + &term;
            }
        }
        Ok(Self::canonical(&self.ctx, coeffs))
    }

    pub fn commutes_with(&self, other: &LaurentElem) -> Result<bool> {
        Ok(self.multiply(other)? == other.multiply(self)?)
    }

    /// Every `f_k` vanishes on `Sep^k`, negative `k` included.
    pub fn centralizer_membership(&self) -> bool {
        let perm = self.ctx.perm();
        self.coeffs.iter().all(|(&k, f)| f.support().into_iter().all(|i| perm.is_periodic(i, k)))
    }

    /// Centralizer membership plus `σ̃(f_k) = f_k` for every `k`.
    pub fn center_membership(&self) -> bool {
        let perm = self.ctx.perm();
        self.centralizer_membership()
            && self.coeffs.values().all(|f| perm.apply_automorphism(f, 1).expect("same dimension") == *f)
    }
}

impl fmt::Debug for LaurentElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.coeffs.iter()).finish()
    }
}
