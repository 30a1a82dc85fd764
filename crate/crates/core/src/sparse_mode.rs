//! The non-unital algebra of finitely supported functions `ℤ → ℚ`, its
//! finitely described bijections, twisted derivations, and the Ore extension
//! built from them.
//!
//! There is no unit and hence no standalone `x`; polynomials are sums of
//! monomials `f x^k` and products are normalized with
//! `(f x) g = f σ̃(g) x + f Δ(g)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::base_algebra::{FuncElem, Permutation};
use crate::error::{Error, Result};
use crate::matrix::{self, RatMatrix};
use crate::rational::Rational;

/// A finitely supported function `ℤ → ℚ`. Zero values are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseFunc {
    support: BTreeMap<i64, Rational>,
}

impl SparseFunc {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Indicator `e_i`.
    pub fn basis(i: i64) -> Self {
        let mut support = BTreeMap::new();
        support.insert(i, Rational::one());
        SparseFunc { support }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let mut f = Self::zero();
        for (i, v) in pairs {
            f.add_at(i, &v);
        }
        f
    }

    pub fn get(&self, i: i64) -> Rational {
        self.support.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn entries(&self) -> &BTreeMap<i64, Rational> {
        &self.support
    }

    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.support.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    fn add_at(&mut self, i: i64, v: &Rational) {
        if v.is_zero() {
            return;
        }
        let slot = self.support.entry(i).or_insert_with(Rational::zero);
        *slot += v;
        if slot.is_zero() {
            self.support.remove(&i);
        }
    }

    pub fn add(&self, other: &SparseFunc) -> SparseFunc {
        let mut out = self.clone();
        for (&i, v) in &other.support {
            out.add_at(i, v);
        }
        out
    }

    pub fn neg(&self) -> SparseFunc {
        SparseFunc { support: self.support.iter().map(|(&i, v)| (i, -v)).collect() }
    }

    pub fn sub(&self, other: &SparseFunc) -> SparseFunc {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> SparseFunc {
        if c.is_zero() {
            return Self::zero();
        }
        SparseFunc { support: self.support.iter().map(|(&i, v)| (i, v * c)).collect() }
    }

    /// Pointwise product, supported on the intersection of the supports.
    pub fn pointwise_mul(&self, other: &SparseFunc) -> SparseFunc {
        let (small, large) = if self.support.len() <= other.support.len() { (self, other) } else { (other, self) };
        SparseFunc {
            support: small
                .support
                .iter()
                .filter_map(|(i, a)| large.support.get(i).map(|b| (*i, a * b)))
                .collect(),
        }
    }

    /// The function on `{0, .., n-1}` given by `i ↦ self(i + 1)`. Fails if the
    /// support leaves `{1, .., n}`.
    pub fn to_finite(&self, n: usize) -> Result<FuncElem> {
        let mut values = vec![Rational::zero(); n];
        for (&i, v) in &self.support {
            if i < 1 || i > n as i64 {
                return Err(Error::DimensionMismatch { expected: n, found: i as usize });
            }
            values[(i - 1) as usize] = v.clone();
        }
        FuncElem::new(values)
    }

    /// Inverse of [`SparseFunc::to_finite`].
    pub fn from_finite(f: &FuncElem) -> SparseFunc {
        SparseFunc::from_pairs(f.values().iter().enumerate().map(|(i, v)| (i as i64 + 1, v.clone())))
    }
}

impl fmt::Debug for SparseFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support.is_empty() {
            return write!(f, "0");
        }
        for (pos, (i, v)) in self.support.iter().enumerate() {
            if pos > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{v}e[{i}]")?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Repr {
    Cycles { cycles: Vec<Vec<i64>>, forward: BTreeMap<i64, i64>, backward: BTreeMap<i64, i64>, order: usize },
    Shift(i64),
}

/// A bijection of `ℤ` that is either a finite product of disjoint cycles
/// (identity elsewhere) or a translation `i ↦ i + d`, `d ≠ 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CountableBijection(Repr);

/// Read-only view of a [`CountableBijection`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BijectionKind<'a> {
    FiniteCycles(&'a [Vec<i64>]),
    Shift(i64),
}

impl CountableBijection {
    /// Disjoint cycles; length-1 cycles are dropped. Each cycle is rotated to
    /// start at its least element and cycles are sorted, so equal bijections
    /// compare equal.
    pub fn cycles(cycles: Vec<Vec<i64>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut normalized = Vec::new();
        for cycle in cycles {
            if cycle.is_empty() {
                return Err(Error::InvalidBijection("empty cycle".into()));
            }
            for &i in &cycle {
                if !seen.insert(i) {
                    return Err(Error::InvalidBijection(format!("index {i} appears in more than one place")));
                }
            }
            if cycle.len() == 1 {
                continue;
            }
            let start = cycle.iter().enumerate().min_by_key(|(_, &v)| v).map(|(p, _)| p).unwrap();
            let mut rotated = cycle[start..].to_vec();
            rotated.extend_from_slice(&cycle[..start]);
            normalized.push(rotated);
        }
        normalized.sort();
        let mut forward = BTreeMap::new();
        let mut backward = BTreeMap::new();
        for c in &normalized {
            for (pos, &i) in c.iter().enumerate() {
                let j = c[(pos + 1) % c.len()];
                forward.insert(i, j);
                backward.insert(j, i);
            }
        }
        let order = normalized.iter().fold(1usize, |acc, c| acc.lcm(&c.len()));
        Ok(CountableBijection(Repr::Cycles { cycles: normalized, forward, backward, order }))
    }

    pub fn shift(d: i64) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidBijection("shift by 0 is the identity; use empty cycles".into()));
        }
        Ok(CountableBijection(Repr::Shift(d)))
    }

    pub fn identity() -> Self {
        Self::cycles(Vec::new()).expect("no cycles")
    }

    /// The bijection of `ℤ` that acts as `perm` on `{1, .., n}` (point `i`
    /// of the permutation is index `i + 1`) and fixes everything else.
    pub fn from_permutation(perm: &Permutation) -> Self {
        let cycles = perm
            .cycle_decomposition()
            .cycles
            .into_iter()
            .map(|c| c.into_iter().map(|i| i as i64 + 1).collect())
            .collect();
        Self::cycles(cycles).expect("cycles of a permutation are disjoint")
    }

    /// The permutation of `{0, .., n-1}` induced on `{1, .., n}`; fails for
    /// shifts and for cycles leaving that range.
    pub fn to_permutation(&self, n: usize) -> Result<Permutation> {
        match &self.0 {
            Repr::Shift(_) => Err(Error::InvalidBijection("a shift does not restrict to a finite set".into())),
            Repr::Cycles { cycles, .. } => {
                let mut zero_based = Vec::with_capacity(cycles.len());
                for c in cycles {
                    let mut z = Vec::with_capacity(c.len());
                    for &i in c {
                        if i < 1 || i > n as i64 {
                            return Err(Error::InvalidBijection(format!("index {i} outside 1..={n}")));
                        }
                        z.push((i - 1) as usize);
                    }
                    zero_based.push(z);
                }
                Permutation::from_cycles(n, &zero_based)
            }
        }
    }

    pub fn kind(&self) -> BijectionKind<'_> {
        match &self.0 {
            Repr::Cycles { cycles, .. } => BijectionKind::FiniteCycles(cycles),
            Repr::Shift(d) => BijectionKind::Shift(*d),
        }
    }

    pub fn apply(&self, i: i64) -> i64 {
        self.apply_pow(i, 1)
    }

    /// `σ^k(i)` for any integer `k`.
    pub fn apply_pow(&self, i: i64, k: i64) -> i64 {
        match &self.0 {
            Repr::Shift(d) => i + k * d,
            Repr::Cycles { forward, backward, .. } => {
                if !forward.contains_key(&i) {
                    return i;
                }
                let len = self.cycle_length(i).expect("finite cycles") as i64;
                let steps = k.rem_euclid(len);
                let mut j = i;
                // step backwards when that is shorter
                if steps * 2 <= len {
                    for _ in 0..steps {
                        j = forward[&j];
                    }
                } else {
                    for _ in 0..(len - steps) {
                        j = backward[&j];
                    }
                }
                j
            }
        }
    }

    /// Order of `σ`, or `None` for infinite order.
    pub fn order(&self) -> Option<usize> {
        match &self.0 {
            Repr::Shift(_) => None,
            Repr::Cycles { order, .. } => Some(*order),
        }
    }

    /// Length of the orbit of `i`, or `None` for an infinite orbit.
    pub fn cycle_length(&self, i: i64) -> Option<usize> {
        match &self.0 {
            Repr::Shift(_) => None,
            Repr::Cycles { forward, .. } => {
                let mut len = 1;
                let mut j = match forward.get(&i) {
                    None => return Some(1),
                    Some(&j) => j,
                };
                while j != i {
                    j = forward[&j];
                    len += 1;
                }
                Some(len)
            }
        }
    }

    pub fn is_fixed_point(&self, i: i64) -> bool {
        self.apply(i) == i
    }

    /// `i ∈ Per^k`, i.e. `σ^k(i) = i`.
    pub fn is_periodic(&self, i: i64, k: i64) -> bool {
        match self.cycle_length(i) {
            None => k == 0,
            Some(len) => (k.unsigned_abs() as usize).is_multiple_of(len),
        }
    }

    /// Points moved by `σ` (empty for shifts, where every point moves, see
    /// [`CountableBijection::order`]).
    pub fn moved_points(&self) -> Vec<i64> {
        match &self.0 {
            Repr::Cycles { forward, .. } => forward.keys().copied().collect(),
            Repr::Shift(_) => Vec::new(),
        }
    }

    /// `σ̃^power(f) = f ∘ σ^{-power}`: the value at `i` moves to `σ^power(i)`.
    pub fn apply_automorphism(&self, f: &SparseFunc, power: i64) -> SparseFunc {
        if power == 0 {
            return f.clone();
        }
        SparseFunc { support: f.support.iter().map(|(&i, v)| (self.apply_pow(i, power), v.clone())).collect() }
    }
}

/// A twisted derivation of the finite-support algebra, determined by its
/// finitely many nonzero diagonal values: `Δ(e_i) = d_i e_i - d_{σ(i)} e_{σ(i)}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseDerivation {
    bijection: CountableBijection,
    diag: BTreeMap<i64, Rational>,
}

impl SparseDerivation {
    pub fn zero(bijection: CountableBijection) -> Self {
        SparseDerivation { bijection, diag: BTreeMap::new() }
    }

    /// Fails if a fixed point carries a nonzero diagonal value.
    pub fn from_diagonal(bijection: CountableBijection, diag: BTreeMap<i64, Rational>) -> Result<Self> {
        let diag: BTreeMap<i64, Rational> = diag.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        if let Some(i) = diag.keys().find(|&&i| bijection.is_fixed_point(i)) {
            return Err(Error::NotADerivation(format!("index {i} is fixed, so its diagonal value must be 0")));
        }
        Ok(SparseDerivation { bijection, diag })
    }

    /// From explicit columns `i ↦ (Δ(e_i)(i), Δ(e_i)(σ(i)))`. Unlisted
    /// indices have a zero column. Checks the pairing condition
    /// `Δ(e_i)(σ(i)) = -Δ(e_{σ(i)})(σ(i))`, which also requires the
    /// predecessor of every index with a nonzero diagonal value to be listed.
    pub fn from_assignments(
        bijection: CountableBijection,
        assignments: BTreeMap<i64, (Rational, Rational)>,
    ) -> Result<Self> {
        let mut diag = BTreeMap::new();
        for (&i, (own, next)) in &assignments {
            if bijection.is_fixed_point(i) && !(own.is_zero() && next.is_zero()) {
                return Err(Error::NotADerivation(format!("index {i} is fixed, so its column must vanish")));
            }
            if !own.is_zero() {
                diag.insert(i, own.clone());
            }
        }
        let d = |i: i64| diag.get(&i).cloned().unwrap_or_else(Rational::zero);
        for (&i, (_, next)) in &assignments {
            let j = bijection.apply(i);
            if j != i && *next != -d(j) {
                return Err(Error::NotADerivation(format!(
                    "pairing fails at index {i}: Δ(e_{i})({j}) must equal -Δ(e_{j})({j})"
                )));
            }
        }
        for &j in diag.keys() {
            let i = bijection.apply_pow(j, -1);
            if !assignments.contains_key(&i) {
                return Err(Error::NotADerivation(format!(
                    "index {j} has a nonzero diagonal value, so the column of its predecessor {i} must be given"
                )));
            }
        }
        Ok(SparseDerivation { bijection, diag })
    }

    pub fn bijection(&self) -> &CountableBijection {
        &self.bijection
    }

    pub fn diagonal(&self) -> &BTreeMap<i64, Rational> {
        &self.diag
    }

    pub fn is_zero(&self) -> bool {
        self.diag.is_empty()
    }

    /// Every index with a nonzero column, mapped to `(Δ(e_i)(i), Δ(e_i)(σ(i)))`.
    pub fn assignments(&self) -> BTreeMap<i64, (Rational, Rational)> {
        let mut idx: BTreeSet<i64> = self.diag.keys().copied().collect();
        idx.extend(self.diag.keys().map(|&j| self.bijection.apply_pow(j, -1)));
        idx.into_iter()
            .map(|i| {
                let own = self.diag.get(&i).cloned().unwrap_or_else(Rational::zero);
                let next = -self.diag.get(&self.bijection.apply(i)).cloned().unwrap_or_else(Rational::zero);
                (i, (own, next))
            })
            .collect()
    }

    pub fn apply(&self, f: &SparseFunc) -> SparseFunc {
        let mut out = SparseFunc::zero();
        for (&i, v) in &f.support {
            let j = self.bijection.apply(i);
            if let Some(di) = self.diag.get(&i) {
                out.add_at(i, &(v * di));
            }
            if let Some(dj) = self.diag.get(&j) {
                out.add_at(j, &-(v * dj));
            }
        }
        out
    }
}

/// A bijection with a derivation: the data of one sparse Ore extension.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseContext {
    delta: SparseDerivation,
}

impl SparseContext {
    pub fn new(delta: SparseDerivation) -> Arc<Self> {
        Arc::new(SparseContext { delta })
    }

    pub fn skew(bijection: CountableBijection) -> Arc<Self> {
        Self::new(SparseDerivation::zero(bijection))
    }

    pub fn bijection(&self) -> &CountableBijection {
        &self.delta.bijection
    }

    pub fn derivation(&self) -> &SparseDerivation {
        &self.delta
    }

    pub fn has_zero_derivation(&self) -> bool {
        self.delta.is_zero()
    }
}

/// `Σ f_k x^k` with finitely supported coefficients, trailing zeros stripped.
#[derive(Clone, PartialEq, Eq)]
pub struct SparsePoly {
    ctx: Arc<SparseContext>,
    coeffs: Vec<SparseFunc>,
}

impl SparsePoly {
    pub fn new(ctx: &Arc<SparseContext>, mut coeffs: Vec<SparseFunc>) -> Self {
        while coeffs.last().is_some_and(SparseFunc::is_zero) {
            coeffs.pop();
        }
        SparsePoly { ctx: ctx.clone(), coeffs }
    }

    pub fn zero(ctx: &Arc<SparseContext>) -> Self {
        Self::new(ctx, Vec::new())
    }

    pub fn monomial(ctx: &Arc<SparseContext>, f: SparseFunc, k: usize) -> Self {
        let mut coeffs = vec![SparseFunc::zero(); k];
        coeffs.push(f);
        Self::new(ctx, coeffs)
    }

    pub fn context(&self) -> &Arc<SparseContext> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[SparseFunc] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> SparseFunc {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check_context(&self, other: &SparsePoly) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_context(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        Ok(Self::new(&self.ctx, (0..len).map(|k| self.coeff(k).add(&other.coeff(k))).collect()))
    }

    pub fn neg(&self) -> SparsePoly {
        SparsePoly { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(SparseFunc::neg).collect() }
    }

    pub fn sub(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> SparsePoly {
        Self::new(&self.ctx, self.coeffs.iter().map(|f| f.scale(c)).collect())
    }

    /// Left canonical form of `x^k g`, by `k` applications of `x h = σ̃(h) x + Δ(h)`.
    pub fn rewrite_power(ctx: &SparseContext, k: usize, g: &SparseFunc) -> Vec<SparseFunc> {
        let bij = ctx.bijection();
        let delta = ctx.derivation();
        let mut terms = vec![g.clone()];
        for _ in 0..k {
            let mut next = vec![SparseFunc::zero(); terms.len() + 1];
            for (m, h) in terms.iter().enumerate() {
                if h.is_zero() {
                    continue;
                }
                next[m + 1] = next[m + 1].add(&bij.apply_automorphism(h, 1));
                if !delta.is_zero() {
                    next[m] = next[m].add(&delta.apply(h));
                }
            }
            terms = next;
        }
        terms
    }

    pub fn multiply(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_context(other)?;
        let (Some(dp), Some(dq)) = (self.degree(), other.degree()) else {
            return Ok(Self::zero(&self.ctx));
        };
        let mut out = vec![SparseFunc::zero(); dp + dq + 1];
        for (k, f) in self.coeffs.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            for (l, g) in other.coeffs.iter().enumerate() {
                if g.is_zero() {
                    continue;
                }
                for (m, h) in Self::rewrite_power(&self.ctx, k, g).iter().enumerate() {
                    let term = f.pointwise_mul(h);
                    if !term.is_zero() {
                        out[m + l] = out[m + l].add(&term);
                    }
                }
            }
        }
        Ok(Self::new(&self.ctx, out))
    }

    pub fn commutes_with(&self, other: &SparsePoly) -> Result<bool> {
        Ok(self.multiply(other)? == other.multiply(self)?)
    }

    /// Indices `j` for which `[P, e_j]` can be nonzero; outside this set both
    /// `P e_j` and `e_j P` vanish.
    pub fn probe_indices(&self) -> BTreeSet<i64> {
        let bij = self.ctx.bijection();
        let mut out = BTreeSet::new();
        for (k, f) in self.coeffs.iter().enumerate() {
            for i in f.support() {
                for t in 0..=k as i64 {
                    out.insert(bij.apply_pow(i, -t));
                }
            }
        }
        out
    }

    /// `P g = g P` for every finitely supported `g`, decided on the basis
    /// elements `e_j` that can interact with `P`.
    pub fn commutes_with_coefficient_algebra(&self) -> bool {
        self.probe_indices().into_iter().all(|j| {
            let e = SparsePoly::monomial(&self.ctx, SparseFunc::basis(j), 0);
            self.commutes_with(&e).expect("same context")
        })
    }
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

/// Which monomials `e_i x^k` lie in the centralizer at one degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DegreeSlice {
    pub degree: usize,
    /// Every index (degree 0 only).
    pub all_indices: bool,
    /// Every fixed point of the bijection.
    pub all_fixed_points: bool,
    /// Moved indices whose cycle length divides the degree.
    pub cycle_members: Vec<i64>,
}

/// Description of the centralizer `{ Σ f_k x^k : f_k = 0 on Sep^k }` of the
/// finite-support algebra, for a zero derivation, up to `max_degree`. The
/// centralizer is spanned by the monomials `e_i x^k` allowed by each slice.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseCentralizerWindow {
    pub max_degree: usize,
    pub slices: Vec<DegreeSlice>,
}

impl SparseCentralizerWindow {
    /// `e_i x^k` is allowed.
    pub fn allows(&self, bij: &CountableBijection, k: usize, i: i64) -> bool {
        let Some(slice) = self.slices.get(k) else {
            return false;
        };
        slice.all_indices
            || (slice.all_fixed_points && bij.is_fixed_point(i))
            || slice.cycle_members.binary_search(&i).is_ok()
    }

    pub fn contains(&self, p: &SparsePoly) -> bool {
        let bij = p.context().bijection();
        p.coeffs().iter().enumerate().all(|(k, f)| f.support().all(|i| self.allows(bij, k, i)))
    }

    /// True when no monomial of positive degree is allowed, i.e. the
    /// centralizer (in this window) is the coefficient algebra itself.
    pub fn is_coefficient_algebra(&self) -> bool {
        self.slices.iter().skip(1).all(|s| !s.all_indices && !s.all_fixed_points && s.cycle_members.is_empty())
    }
}

pub fn sparse_centralizer(ctx: &SparseContext, max_degree: usize) -> Result<SparseCentralizerWindow> {
    if !ctx.has_zero_derivation() {
        return Err(Error::NonZeroDerivation("the sparse centralizer description"));
    }
    let bij = ctx.bijection();
    let moved = bij.moved_points();
    let slices = (0..=max_degree)
        .map(|k| {
            if k == 0 {
                return DegreeSlice { degree: 0, all_indices: true, all_fixed_points: false, cycle_members: Vec::new() };
            }
            match bij.kind() {
                BijectionKind::Shift(_) => {
                    DegreeSlice { degree: k, all_indices: false, all_fixed_points: false, cycle_members: Vec::new() }
                }
                BijectionKind::FiniteCycles(_) => DegreeSlice {
                    degree: k,
                    all_indices: false,
                    all_fixed_points: true,
                    cycle_members: moved.iter().copied().filter(|&i| bij.is_periodic(i, k as i64)).collect(),
                },
            }
        })
        .collect();
    Ok(SparseCentralizerWindow { max_degree, slices })
}

/// Necessary condition for centrality with any derivation: the leading
/// coefficient vanishes on `Sep^deg`.
pub fn sparse_leading_coefficient_check(p: &SparsePoly) -> bool {
    let Some(m) = p.degree() else {
        return true;
    };
    let bij = p.context().bijection();
    p.coeff(m).support().all(|i| bij.is_periodic(i, m as i64))
}

/// Center membership for a zero derivation: `f_k = 0 on Sep^k` and `σ̃(f_k) = f_k`.
pub fn sparse_center_membership(p: &SparsePoly) -> Result<bool> {
    let ctx = p.context();
    if !ctx.has_zero_derivation() {
        return Err(Error::NonZeroDerivation("the sparse center"));
    }
    let bij = ctx.bijection();
    Ok(p.coeffs().iter().enumerate().all(|(k, f)| {
        f.support().all(|i| bij.is_periodic(i, k as i64)) && bij.apply_automorphism(f, 1) == *f
    }))
}

/// All `P` with coefficients supported in `window` and degree ≤ `max_degree`
/// commuting with the coefficient algebra, found by solving the commutator
/// equations `[P, e_j] = 0` directly. Works for any derivation.
///
/// Returns a canonical (row-reduced) basis, ordered by degree then index.
pub fn sparse_commutation_search(ctx: &Arc<SparseContext>, window: &[i64], max_degree: usize) -> Vec<SparsePoly> {
    let window: Vec<i64> = window.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let unknowns: Vec<(usize, i64)> = (0..=max_degree).flat_map(|k| window.iter().map(move |&i| (k, i))).collect();
    if unknowns.is_empty() {
        return Vec::new();
    }
    let bij = ctx.bijection();
    let probes: BTreeSet<i64> =
        window.iter().flat_map(|&i| (0..=max_degree as i64).map(move |t| bij.apply_pow(i, -t))).collect();

    // equation key: (probe j, power of x, index) -> row
    let mut rows: BTreeMap<(i64, usize, i64), Vec<Rational>> = BTreeMap::new();
    for (col, &(k, i)) in unknowns.iter().enumerate() {
        let mono = SparsePoly::monomial(ctx, SparseFunc::basis(i), k);
        for &j in &probes {
            let e = SparsePoly::monomial(ctx, SparseFunc::basis(j), 0);
            let comm = mono.multiply(&e).and_then(|a| a.sub(&e.multiply(&mono)?)).expect("same context");
            for (power, f) in comm.coeffs().iter().enumerate() {
                for (&idx, v) in f.entries() {
                    rows.entry((j, power, idx)).or_insert_with(|| vec![Rational::zero(); unknowns.len()])[col] +=
                        v;
                }
            }
        }
    }
    let rows: Vec<Vec<Rational>> = rows.into_values().collect();
    let kernel = if rows.is_empty() {
        matrix::null_space(&RatMatrix::zeros(0, unknowns.len()))
    } else {
        matrix::null_space(&RatMatrix::from_rows(rows))
    };
    matrix::row_space_basis(&kernel, unknowns.len())
        .into_iter()
        .map(|v| {
            let mut coeffs = vec![SparseFunc::zero(); max_degree + 1];
            for (&(k, i), x) in unknowns.iter().zip(&v) {
                coeffs[k].add_at(i, x);
            }
            SparsePoly::new(ctx, coeffs)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn sf(pairs: &[(i64, i64)]) -> SparseFunc {
        SparseFunc::from_pairs(pairs.iter().map(|&(i, v)| (i, int(v))))
    }

    #[test]
    fn pointwise_arithmetic() {
        assert_eq!(SparseFunc::basis(5).pointwise_mul(&SparseFunc::basis(5)), SparseFunc::basis(5));
        assert!(SparseFunc::basis(5).pointwise_mul(&SparseFunc::basis(7)).is_zero());
        assert_eq!(sf(&[(1, 2), (2, 3)]).pointwise_mul(&SparseFunc::basis(2)), sf(&[(2, 3)]));
        assert!(sf(&[(1, 2)]).add(&sf(&[(1, -2)])).entries().is_empty());
        assert!(sf(&[(1, 2)]).scale(&int(0)).is_zero());
    }

    #[test]
    fn automorphism_moves_support() {
        let shift = CountableBijection::shift(1).unwrap();
        assert_eq!(shift.apply_automorphism(&SparseFunc::basis(0), 1), SparseFunc::basis(1));
        let cyc = CountableBijection::cycles(vec![vec![1, 2, 3]]).unwrap();
        assert_eq!(cyc.apply_automorphism(&SparseFunc::basis(1), 1), SparseFunc::basis(2));
        let f = sf(&[(-4, 1), (9, 2)]);
        assert_eq!(cyc.apply_automorphism(&f, 0), f);
        assert_eq!(shift.apply_automorphism(&f, 0), f);
    }

    #[test]
    fn bijection_validation_and_orders() {
        assert!(CountableBijection::shift(0).is_err());
        assert!(CountableBijection::cycles(vec![vec![1, 2], vec![2, 3]]).is_err());
        assert!(CountableBijection::cycles(vec![vec![]]).is_err());
        let b = CountableBijection::cycles(vec![vec![4, 2], vec![7, 8, 9], vec![11]]).unwrap();
        assert_eq!(b.kind(), BijectionKind::FiniteCycles(&[vec![2, 4], vec![7, 8, 9]]));
        assert_eq!(b.order(), Some(6));
        assert_eq!(b.apply_pow(7, -1), 9);
        assert_eq!(b.apply_pow(7, 5), 9);
        assert!(b.is_fixed_point(11) && b.is_fixed_point(-100));
        assert_eq!(CountableBijection::shift(-2).unwrap().order(), None);
        assert!(!CountableBijection::shift(3).unwrap().is_periodic(5, 4));
    }

    #[test]
    fn derivation_from_assignments() {
        let b = CountableBijection::cycles(vec![vec![1, 2]]).unwrap();
        let d = SparseDerivation::from_assignments(
            b.clone(),
            [(1, (int(1), int(-2))), (2, (int(2), int(-1)))].into_iter().collect(),
        )
        .unwrap();
        assert_eq!(d.apply(&SparseFunc::basis(1)), sf(&[(1, 1), (2, -2)]));
        assert!(SparseDerivation::zero(b.clone()).apply(&sf(&[(1, 3), (2, 5)])).is_zero());

        let bad = SparseDerivation::from_assignments(b, [(1, (int(1), int(5))), (2, (int(2), int(-1)))].into());
        assert_eq!(bad.unwrap_err().code(), "not_a_derivation");
    }

    #[test]
    fn shift_derivation_needs_predecessor() {
        let shift = CountableBijection::shift(1).unwrap();
        // Δ(e_0) = k00 e_0 - k11 e_1 needs k11, which is only legal if e_0's column pairs with it
        let missing = SparseDerivation::from_assignments(shift.clone(), [(1, (int(3), int(0)))].into());
        assert!(missing.is_err());
        let ok = SparseDerivation::from_assignments(
            shift.clone(),
            [(0, (int(2), int(-3))), (1, (int(3), int(0))), (-1, (int(0), int(-2)))].into(),
        )
        .unwrap();
        assert_eq!(ok.apply(&SparseFunc::basis(0)), sf(&[(0, 2), (1, -3)]));
        let from_diag = SparseDerivation::from_diagonal(shift, [(0, int(2)), (1, int(3))].into()).unwrap();
        assert_eq!(from_diag, ok);
        assert_eq!(from_diag.assignments().len(), 3);
    }

    #[test]
    fn fixed_points_reject_diagonal() {
        let b = CountableBijection::cycles(vec![vec![1, 2]]).unwrap();
        assert!(SparseDerivation::from_diagonal(b, [(5, int(1))].into()).is_err());
    }

    #[test]
    fn centralizer_windows() {
        let shift = SparseContext::skew(CountableBijection::shift(1).unwrap());
        let w = sparse_centralizer(&shift, 5).unwrap();
        assert!(w.is_coefficient_algebra());

        let swap = SparseContext::skew(CountableBijection::cycles(vec![vec![1, 2]]).unwrap());
        let w = sparse_centralizer(&swap, 2).unwrap();
        assert_eq!(w.slices[2].cycle_members, vec![1, 2]);
        assert!(w.slices[1].cycle_members.is_empty());
        let bij = swap.bijection();
        assert!(w.allows(bij, 2, 1) && w.allows(bij, 1, 40) && !w.allows(bij, 1, 1));

        let cyc = SparseContext::skew(CountableBijection::cycles(vec![vec![1, 2, 3]]).unwrap());
        let w = sparse_centralizer(&cyc, 1).unwrap();
        assert!((1..=3).all(|i| !w.allows(cyc.bijection(), 1, i)));

        let with_delta = SparseContext::new(
            SparseDerivation::from_diagonal(CountableBijection::cycles(vec![vec![1, 2]]).unwrap(), [(1, int(1))].into())
                .unwrap(),
        );
        assert!(sparse_centralizer(&with_delta, 2).is_err());
    }

    #[test]
    fn center_membership() {
        let ctx = SparseContext::skew(CountableBijection::cycles(vec![vec![1, 2]]).unwrap());
        assert!(sparse_center_membership(&SparsePoly::monomial(&ctx, sf(&[(1, 1), (2, 1)]), 2)).unwrap());
        assert!(!sparse_center_membership(&SparsePoly::monomial(&ctx, sf(&[(1, 1)]), 2)).unwrap());
        assert!(sparse_center_membership(&SparsePoly::monomial(&ctx, SparseFunc::basis(7), 0)).unwrap());
    }

    #[test]
    fn commutation_search_on_swap() {
        let ctx = SparseContext::skew(CountableBijection::cycles(vec![vec![1, 2]]).unwrap());
        let found = sparse_commutation_search(&ctx, &[1, 2, 3], 2);
        // degree 0: 3, degree 1: only the fixed point 3, degree 2: all 3
        assert_eq!(found.len(), 7);
        assert!(found.iter().all(SparsePoly::commutes_with_coefficient_algebra));
        let window = sparse_centralizer(&ctx, 2).unwrap();
        assert!(found.iter().all(|p| window.contains(p)));
    }

    #[test]
    fn finite_round_trip() {
        let f = FuncElem::from_ints(&[0, 3, -1]);
        assert_eq!(SparseFunc::from_finite(&f).to_finite(3).unwrap(), f);
        assert!(SparseFunc::basis(0).to_finite(3).is_err());
    }
}
