//! The coefficient algebra of functions on a finite set `X = {0, .., n-1}`,
//! permutations of `X`, and the automorphism they induce.
//!
//! Indices are zero-based throughout the Rust API. The JSON encodings in
//! [`crate::json`] are one-based.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A bijection of `{0, .., n-1}`, stored as its image table.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    /// `image[i]` is `σ(i)`. Fails unless `image` is a bijection of `0..n` with `n ≥ 1`.
    pub fn new(image: Vec<usize>) -> Result<Self> {
        if image.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        let n = image.len();
        let mut seen = vec![false; n];
        for &j in &image {
            if j >= n {
                return Err(Error::InvalidPermutation(format!("image value {} out of range for n = {n}", j + 1)));
            }
            if std::mem::replace(&mut seen[j], true) {
                return Err(Error::InvalidPermutation(format!("image value {} appears twice", j + 1)));
            }
        }
        Ok(Permutation { image })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "permutation of an empty set");
        Permutation { image: (0..n).collect() }
    }

    /// Builds a permutation of `0..n` from disjoint cycles; points not listed are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyIndexSet);
        }
        let mut image: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for (pos, &i) in cycle.iter().enumerate() {
                if i >= n {
                    return Err(Error::InvalidPermutation(format!("cycle entry {} out of range", i + 1)));
                }
                if std::mem::replace(&mut used[i], true) {
                    return Err(Error::InvalidPermutation(format!("cycles overlap at {}", i + 1)));
                }
                image[i] = cycle[(pos + 1) % cycle.len()];
            }
        }
        Ok(Permutation { image })
    }

    /// The transposition of `a` and `b` on `0..n`.
    pub fn swap(n: usize, a: usize, b: usize) -> Self {
        let mut image: Vec<usize> = (0..n).collect();
        image.swap(a, b);
        Permutation { image }
    }

    /// The cycle `0 -> 1 -> .. -> n-1 -> 0`.
    pub fn rotation(n: usize) -> Self {
        Permutation { image: (0..n).map(|i| (i + 1) % n).collect() }
    }

    /// All `n!` permutations of `0..n` in lexicographic order of their image tables.
    pub fn all(n: usize) -> Vec<Permutation> {
        fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if prefix.len() == used.len() {
                out.push(Permutation { image: prefix.clone() });
                return;
            }
            for j in 0..used.len() {
                if !used[j] {
                    used[j] = true;
                    prefix.push(j);
                    rec(prefix, used, out);
                    prefix.pop();
                    used[j] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
        out
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// `σ(i)`.
    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &j) in self.image.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { image: inv }
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n(), "composing permutations of different sizes");
        Permutation { image: other.image.iter().map(|&j| self.image[j]).collect() }
    }

    /// `σ^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> Permutation {
        let cycles = self.cycle_decomposition();
        let mut image = vec![0; self.n()];
        for cycle in &cycles.cycles {
            let len = cycle.len() as i64;
            let shift = k.rem_euclid(len) as usize;
            for (pos, &i) in cycle.iter().enumerate() {
                image[i] = cycle[(pos + shift) % cycle.len()];
            }
        }
        Permutation { image }
    }

    /// Disjoint cycles covering `0..n` (fixed points appear as length-1
    /// cycles), each starting at its smallest element, ordered by that element.
    pub fn cycle_decomposition(&self) -> CycleDecomposition {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut i = self.image[start];
            while i != start {
                seen[i] = true;
                cycle.push(i);
                i = self.image[i];
            }
            cycles.push(cycle);
        }
        let order = cycles.iter().fold(1usize, |acc, c| acc.lcm(&c.len()));
        CycleDecomposition { cycles, order }
    }

    /// Smallest `j > 0` with `σ^j = id`; also the order of the induced automorphism.
    pub fn automorphism_order(&self) -> usize {
        self.cycle_decomposition().order
    }

    /// Length of the cycle through each point.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut lens = vec![0; self.n()];
        for cycle in self.cycle_decomposition().cycles {
            for &i in &cycle {
                lens[i] = cycle.len();
            }
        }
        lens
    }

    /// `(Sep^k, Per^k)`: points moved, resp. fixed, by `σ^k`.
    ///
    /// `Per^0` is all of `X`, and `Per^{-k} = Per^k`.
    pub fn sep_per_sets(&self, k: i64) -> (BTreeSet<usize>, BTreeSet<usize>) {
        let lens = self.cycle_lengths();
        let k = k.unsigned_abs() as usize;
        (0..self.n()).partition(|&i| !k.is_multiple_of(lens[i]))
    }

    /// `i ∈ Per^k`.
    pub fn is_periodic(&self, i: usize, k: i64) -> bool {
        let len = self.cycle_lengths()[i];
        (k.unsigned_abs() as usize).is_multiple_of(len)
    }

    /// `σ̃^power(f) = f ∘ σ^{-power}`.
    pub fn apply_automorphism(&self, f: &FuncElem, power: i64) -> Result<FuncElem> {
        check_dim(self.n(), f.n())?;
        let p = self.pow(power);
        let mut values = vec![Rational::zero(); self.n()];
        for (j, v) in f.values.iter().enumerate() {
            values[p.image[j]] = v.clone();
        }
        Ok(FuncElem { values })
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation with one-based points, e.g. `(1 2 3)(4)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in self.cycle_decomposition().cycles {
            write!(f, "(")?;
            for (pos, i) in cycle.iter().enumerate() {
                if pos > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", i + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycleDecomposition {
    pub cycles: Vec<Vec<usize>>,
    /// Least common multiple of the cycle lengths.
    pub order: usize,
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// A function `X → ℚ`, stored as its value vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FuncElem {
    values: Vec<Rational>,
}

impl FuncElem {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        Ok(FuncElem { values })
    }

    pub fn from_ints(values: &[i64]) -> Self {
        assert!(!values.is_empty());
        FuncElem { values: values.iter().map(|&v| crate::rational::int(v)).collect() }
    }

    pub fn zero(n: usize) -> Self {
        FuncElem { values: vec![Rational::zero(); n] }
    }

    /// The multiplicative identity (constant 1).
    pub fn one(n: usize) -> Self {
        FuncElem { values: vec![Rational::one(); n] }
    }

    /// Indicator function `e_i` of the point `i`.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut f = Self::zero(n);
        f.values[i] = Rational::one();
        f
    }

    /// Indicator function of a set of points.
    pub fn indicator(n: usize, points: impl IntoIterator<Item = usize>) -> Self {
        let mut f = Self::zero(n);
        for i in points {
            f.values[i] = Rational::one();
        }
        f
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.values
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.values[i]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// Points where the function is nonzero.
    pub fn support(&self) -> BTreeSet<usize> {
        (0..self.n()).filter(|&i| !self.values[i].is_zero()).collect()
    }

    pub fn vanishes_on<'a>(&self, points: impl IntoIterator<Item = &'a usize>) -> bool {
        points.into_iter().all(|&i| self.values[i].is_zero())
    }

    pub fn pointwise_mul(&self, other: &FuncElem) -> Result<FuncElem> {
        check_dim(self.n(), other.n())?;
        Ok(self * other)
    }

    pub fn checked_add(&self, other: &FuncElem) -> Result<FuncElem> {
        check_dim(self.n(), other.n())?;
        Ok(self + other)
    }

    pub fn scale(&self, c: &Rational) -> FuncElem {
        FuncElem { values: self.values.iter().map(|v| v * c).collect() }
    }
}

impl fmt::Debug for FuncElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

// Operator impls panic on dimension mismatch; use the checked methods for
// untrusted operands.
impl Mul for &FuncElem {
    type Output = FuncElem;
    fn mul(self, rhs: &FuncElem) -> FuncElem {
        assert_eq!(self.n(), rhs.n(), "pointwise product of functions on different sets");
        FuncElem { values: self.values.iter().zip(&rhs.values).map(|(a, b)| a * b).collect() }
    }
}

impl Add for &FuncElem {
    type Output = FuncElem;
    fn add(self, rhs: &FuncElem) -> FuncElem {
        assert_eq!(self.n(), rhs.n(), "sum of functions on different sets");
        FuncElem { values: self.values.iter().zip(&rhs.values).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &FuncElem {
    type Output = FuncElem;
    fn sub(self, rhs: &FuncElem) -> FuncElem {
        assert_eq!(self.n(), rhs.n(), "difference of functions on different sets");
        FuncElem { values: self.values.iter().zip(&rhs.values).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &FuncElem {
    type Output = FuncElem;
    fn neg(self) -> FuncElem {
        FuncElem { values: self.values.iter().map(|v| -v).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn cycle3() -> Permutation {
        Permutation::new(vec![1, 2, 0]).unwrap()
    }

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    #[test]
    fn pointwise_products() {
        let f = FuncElem::from_ints(&[1, 2, 3]);
        let g = FuncElem::from_ints(&[4, 5, 6]);
        assert_eq!(f.pointwise_mul(&g).unwrap(), FuncElem::from_ints(&[4, 10, 18]));
        assert!((&FuncElem::basis(3, 0) * &FuncElem::basis(3, 1)).is_zero());
        assert_eq!(&FuncElem::basis(3, 0) * &FuncElem::basis(3, 0), FuncElem::basis(3, 0));
    }

    #[test]
    fn mismatched_dimensions_are_errors() {
        let err = FuncElem::one(2).pointwise_mul(&FuncElem::one(3)).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 2, found: 3 });
        assert!(cycle3().apply_automorphism(&FuncElem::one(2), 1).is_err());
    }

    #[test]
    fn automorphism_on_three_cycle() {
        let f = FuncElem::from_ints(&[10, 20, 30]);
        assert_eq!(cycle3().apply_automorphism(&f, 1).unwrap(), FuncElem::from_ints(&[30, 10, 20]));
        assert_eq!(cycle3().apply_automorphism(&f, 0).unwrap(), f);
        assert_eq!(cycle3().apply_automorphism(&f, -1).unwrap(), FuncElem::from_ints(&[20, 30, 10]));
    }

    #[test]
    fn swap_moves_first_basis_vector() {
        let swap = Permutation::swap(2, 0, 1);
        assert_eq!(swap.apply_automorphism(&FuncElem::basis(2, 0), 1).unwrap(), FuncElem::basis(2, 1));
    }

    #[test]
    fn sep_per_examples() {
        assert_eq!(cycle3().sep_per_sets(1), (set(&[0, 1, 2]), set(&[])));
        assert_eq!(cycle3().sep_per_sets(3), (set(&[]), set(&[0, 1, 2])));
        assert_eq!(Permutation::swap(3, 0, 1).sep_per_sets(1), (set(&[0, 1]), set(&[2])));
        assert_eq!(cycle3().sep_per_sets(0), (set(&[]), set(&[0, 1, 2])));
        assert_eq!(cycle3().sep_per_sets(-3), cycle3().sep_per_sets(3));
    }

    #[test]
    fn orders() {
        assert_eq!(Permutation::identity(4).automorphism_order(), 1);
        assert_eq!(cycle3().automorphism_order(), 3);
        let p = Permutation::from_cycles(5, &[vec![0, 1], vec![2, 3, 4]]).unwrap();
        assert_eq!(p.automorphism_order(), 6);
        assert_eq!(p.to_string(), "(1 2)(3 4 5)");
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![2, 0]).is_err());
        assert!(Permutation::new(vec![]).is_err());
        assert!(Permutation::from_cycles(3, &[vec![0, 1], vec![1, 2]]).is_err());
    }

    #[test]
    fn pow_matches_repeated_application() {
        let p = Permutation::from_cycles(6, &[vec![0, 3, 5], vec![1, 4]]).unwrap();
        let mut acc = Permutation::identity(6);
        for k in 0..8 {
            assert_eq!(p.pow(k), acc);
            assert_eq!(p.pow(-k), acc.inverse());
            acc = p.compose(&acc);
        }
    }

    #[test]
    fn all_permutations_count() {
        assert_eq!(Permutation::all(4).len(), 24);
        assert_eq!(Permutation::all(1), vec![Permutation::identity(1)]);
    }

    #[test]
    fn scale_and_indicator() {
        let f = FuncElem::indicator(4, [1, 3]).scale(&int(2));
        assert_eq!(f, FuncElem::from_ints(&[0, 2, 0, 2]));
        assert_eq!(f.support(), set(&[1, 3]));
    }
}
