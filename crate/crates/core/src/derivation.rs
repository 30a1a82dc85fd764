//! Twisted derivations of the function algebra on a finite set, represented
//! by their standard matrix `[Δ] = [Δ(e_1) | .. | Δ(e_n)]`.
//!
//! A matrix `k` is the matrix of a `σ̃`-derivation exactly when
//!
//! 1. column `i` is supported on `{i, σ(i)}`, and
//! 2. `k[σ(i)][i] = -k[σ(i)][σ(i)]` whenever `σ(i) ≠ i`.
//!
//! At a fixed point `σ(i) = i` the Leibniz rule applied to `e_i² = e_i`
//! forces the whole column to vanish, so a derivation is determined by its
//! diagonal restricted to the non-fixed points.

use std::fmt;

use num_traits::Zero;

use crate::base_algebra::{check_dim, FuncElem, Permutation};
use crate::error::{Error, Result};
use crate::matrix::{self, RatMatrix};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DerivationMatrix {
    perm: Permutation,
    entries: RatMatrix,
}

/// The first entry (zero-based row, column) of a matrix that breaks one of
/// the derivation conditions.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Violation {
    /// `k[row][column] ≠ 0` with `row ∉ {column, σ(column)}`.
    Support { row: usize, column: usize },
    /// `k[row][column] ≠ -k[row][row]` where `row = σ(column) ≠ column`.
    OffDiagonalTie { row: usize, column: usize },
    /// Nonzero entry in the column of a fixed point.
    FixedPoint { row: usize, column: usize },
}

impl Violation {
    pub fn position(&self) -> (usize, usize) {
        match *self {
            Violation::Support { row, column }
            | Violation::OffDiagonalTie { row, column }
            | Violation::FixedPoint { row, column } => (row, column),
        }
    }

    pub fn condition(&self) -> &'static str {
        match self {
            Violation::Support { .. } => "support",
            Violation::OffDiagonalTie { .. } => "off_diagonal_tie",
            Violation::FixedPoint { .. } => "fixed_point",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (r, c) = self.position();
        write!(f, "{} condition fails at row {}, column {}", self.condition(), r + 1, c + 1)
    }
}

impl DerivationMatrix {
    /// The derivation with diagonal `diag`: `k[i][i] = diag[i]` and
    /// `k[σ(i)][i] = -diag[σ(i)]`.
    pub fn build(perm: Permutation, diag: Vec<Rational>) -> Result<Self> {
        let n = perm.n();
        check_dim(n, diag.len())?;
        let mut entries = RatMatrix::zeros(n, n);
        for i in 0..n {
            let j = perm.apply(i);
            if j == i {
                if !diag[i].is_zero() {
                    return Err(Error::NotADerivation(format!(
                        "point {} is fixed by the permutation, so its diagonal entry must be 0",
                        i + 1
                    )));
                }
                continue;
            }
            entries[(i, i)] = diag[i].clone();
            entries[(j, i)] = -diag[j].clone();
        }
        Ok(DerivationMatrix { perm, entries })
    }

    pub fn zero(perm: Permutation) -> Self {
        let n = perm.n();
        DerivationMatrix { perm, entries: RatMatrix::zeros(n, n) }
    }

    /// Wraps an arbitrary square matrix without checking the derivation
    /// conditions; see [`DerivationMatrix::validate`].
    pub fn from_entries(perm: Permutation, entries: RatMatrix) -> Result<Self> {
        check_dim(perm.n(), entries.rows())?;
        check_dim(perm.n(), entries.cols())?;
        Ok(DerivationMatrix { perm, entries })
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn entries(&self) -> &RatMatrix {
        &self.entries
    }

    pub fn n(&self) -> usize {
        self.perm.n()
    }

    pub fn diagonal(&self) -> Vec<Rational> {
        (0..self.n()).map(|i| self.entries[(i, i)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_zero()
    }

    /// Checks the column-support, off-diagonal tie and fixed-point conditions,
    /// scanning column by column.
    pub fn validate(&self) -> Result<(), Violation> {
        let n = self.n();
        for column in 0..n {
            let image = self.perm.apply(column);
            for row in 0..n {
                let k = &self.entries[(row, column)];
                if image == column {
                    if !k.is_zero() {
                        return Err(Violation::FixedPoint { row, column });
                    }
                } else if row == image {
                    if *k != -self.entries[(row, row)].clone() {
                        return Err(Violation::OffDiagonalTie { row, column });
                    }
                } else if row != column && !k.is_zero() {
                    return Err(Violation::Support { row, column });
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// `Δ(f) = [Δ] f`.
    pub fn apply(&self, f: &FuncElem) -> Result<FuncElem> {
        check_dim(self.n(), f.n())?;
        FuncElem::new(self.entries.mul_vec(f.values()))
    }

    /// `Δ^j(f)` by repeated application; `j = 0` is the identity.
    pub fn delta_power(&self, j: usize, f: &FuncElem) -> Result<FuncElem> {
        check_dim(self.n(), f.n())?;
        let mut acc = f.clone();
        for _ in 0..j {
            acc = self.apply(&acc)?;
        }
        Ok(acc)
    }

    /// An element `a` with `Δ(r) = a r - σ̃(r) a` for all `r`, if one exists.
    ///
    /// For a valid matrix the diagonal itself is such a witness; otherwise the
    /// witness equations on the basis `e_1..e_n` are solved directly.
    pub fn inner_witness(&self) -> Result<Option<FuncElem>> {
        if let Err(v) = self.validate() {
            return Err(Error::NotADerivation(v.to_string()));
        }
        let candidate = FuncElem::new(self.diagonal())?;
        if self.is_witness(&candidate) {
            return Ok(Some(candidate));
        }
        Ok(self.solve_witness())
    }

    /// Checks `Δ(e_i) = a e_i - σ̃(e_i) a` on every basis vector.
    pub fn is_witness(&self, a: &FuncElem) -> bool {
        if a.n() != self.n() {
            return false;
        }
        (0..self.n()).all(|i| {
            let e = FuncElem::basis(self.n(), i);
            let moved = FuncElem::basis(self.n(), self.perm.apply(i));
            let rhs = &(a * &e) - &(&moved * a);
            rhs.values() == self.entries.column(i).as_slice()
        })
    }

    fn solve_witness(&self) -> Option<FuncElem> {
        // Unknown a ∈ ℚⁿ; equation (row l, column i): [l = i] a_i - [l = σ(i)] a_l = k[l][i].
        let n = self.n();
        let mut system = RatMatrix::zeros(n * n, n);
        let mut rhs = Vec::with_capacity(n * n);
        for i in 0..n {
            let j = self.perm.apply(i);
            for l in 0..n {
                let row = i * n + l;
                if l == i {
                    system[(row, i)] += Rational::from_integer(1.into());
                }
                if l == j {
                    system[(row, l)] -= Rational::from_integer(1.into());
                }
                rhs.push(self.entries[(l, i)].clone());
            }
        }
        matrix::solve(&system, &rhs).map(|v| FuncElem::new(v).expect("n > 0"))
    }
}

/// Basis of the space of all `σ̃`-derivation matrices, obtained by solving
/// the Leibniz rule `Δ(e_a e_b) = σ̃(e_a) Δ(e_b) + Δ(e_a) e_b` on all basis
/// pairs as a linear system in the `n²` matrix entries.
///
/// This does not use the closed-form conditions checked by
/// [`DerivationMatrix::validate`], and so serves as an independent
/// characterization of the same space.
pub fn leibniz_space(perm: &Permutation) -> Vec<RatMatrix> {
    let n = perm.n();
    let var = |row: usize, col: usize| row * n + col;
    let one = Rational::from_integer(1.into());
    let mut rows = Vec::new();
    for a in 0..n {
        let sa = perm.apply(a);
        for b in 0..n {
            // Component p: [a = b] k[p][a]  -  [p = σ(a)] k[p][b]  -  [p = b] k[p][a] = 0.
            for p in 0..n {
                let mut row = vec![Rational::zero(); n * n];
                if a == b {
                    row[var(p, a)] += &one;
                }
                if p == sa {
                    row[var(p, b)] -= &one;
                }
                if p == b {
                    row[var(p, a)] -= &one;
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let system = if rows.is_empty() { RatMatrix::zeros(0, n * n) } else { RatMatrix::from_rows(rows) };
    matrix::null_space(&system)
        .into_iter()
        .map(|v| RatMatrix::from_rows(v.chunks(n).map(<[Rational]>::to_vec).collect()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn ints(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn mat(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(rows.iter().map(|r| ints(r)).collect())
    }

    fn cycle3() -> Permutation {
        Permutation::new(vec![1, 2, 0]).unwrap()
    }

    #[test]
    fn three_cycle_pattern() {
        let d = DerivationMatrix::build(cycle3(), ints(&[1, 2, 3])).unwrap();
        assert_eq!(*d.entries(), mat(&[&[1, 0, -1], &[-2, 2, 0], &[0, -3, 3]]));
        assert!(d.is_valid());
    }

    #[test]
    fn identity_admits_only_zero() {
        let d = DerivationMatrix::build(Permutation::identity(4), ints(&[0, 0, 0, 0])).unwrap();
        assert!(d.is_zero());
        let err = DerivationMatrix::build(Permutation::identity(2), ints(&[1, 0])).unwrap_err();
        assert_eq!(err.code(), "not_a_derivation");
    }

    #[test]
    fn swap_pattern() {
        let d = DerivationMatrix::build(Permutation::swap(2, 0, 1), ints(&[5, 7])).unwrap();
        assert_eq!(*d.entries(), mat(&[&[5, -5], &[-7, 7]]));
    }

    #[test]
    fn validation_reports_first_violation() {
        let swap = Permutation::swap(2, 0, 1);
        let d = DerivationMatrix::from_entries(swap.clone(), mat(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(d.validate(), Err(Violation::OffDiagonalTie { row: 1, column: 0 }));

        let d = DerivationMatrix::from_entries(cycle3(), mat(&[&[1, 0, -1], &[-2, 2, 0], &[4, -3, 3]])).unwrap();
        assert_eq!(d.validate(), Err(Violation::Support { row: 2, column: 0 }));

        let p = Permutation::swap(3, 0, 1);
        let d = DerivationMatrix::from_entries(p, mat(&[&[0, 0, 0], &[0, 0, 0], &[0, 0, 1]])).unwrap();
        assert_eq!(d.validate(), Err(Violation::FixedPoint { row: 2, column: 2 }));

        assert!(DerivationMatrix::zero(swap).is_valid());
    }

    #[test]
    fn application() {
        let d = DerivationMatrix::build(cycle3(), ints(&[1, 2, 3])).unwrap();
        assert_eq!(d.apply(&FuncElem::basis(3, 0)).unwrap(), FuncElem::from_ints(&[1, -2, 0]));
        assert!(d.apply(&FuncElem::one(3)).unwrap().is_zero());
        assert!(DerivationMatrix::zero(cycle3()).apply(&FuncElem::from_ints(&[4, 5, 6])).unwrap().is_zero());
        assert!(d.apply(&FuncElem::one(2)).is_err());
    }

    #[test]
    fn powers() {
        let d = DerivationMatrix::build(Permutation::swap(2, 0, 1), ints(&[1, 1])).unwrap();
        let g = FuncElem::basis(2, 0);
        assert_eq!(d.delta_power(1, &g).unwrap(), FuncElem::from_ints(&[1, -1]));
        assert_eq!(d.delta_power(0, &g).unwrap(), g);
        assert_eq!(d.delta_power(3, &g).unwrap(), FuncElem::from_ints(&[4, -4]));
    }

    #[test]
    fn witnesses() {
        let d = DerivationMatrix::build(cycle3(), ints(&[4, -1, 2])).unwrap();
        assert_eq!(d.inner_witness().unwrap(), Some(FuncElem::from_ints(&[4, -1, 2])));
        assert_eq!(DerivationMatrix::zero(cycle3()).inner_witness().unwrap(), Some(FuncElem::zero(3)));
        let d = DerivationMatrix::build(Permutation::swap(2, 0, 1), ints(&[3, 8])).unwrap();
        assert_eq!(d.inner_witness().unwrap(), Some(FuncElem::from_ints(&[3, 8])));

        let bad = DerivationMatrix::from_entries(Permutation::swap(2, 0, 1), mat(&[&[1, 0], &[0, 1]])).unwrap();
        assert!(bad.inner_witness().is_err());
    }

    #[test]
    fn witness_solver_agrees_with_diagonal() {
        let d = DerivationMatrix::build(cycle3(), ints(&[4, -1, 2])).unwrap();
        let solved = d.solve_witness().unwrap();
        assert!(d.is_witness(&solved));
    }

    #[test]
    fn leibniz_space_dimensions() {
        // one free parameter per non-fixed point
        assert!(leibniz_space(&Permutation::identity(3)).is_empty());
        assert_eq!(leibniz_space(&cycle3()).len(), 3);
        assert_eq!(leibniz_space(&Permutation::swap(3, 0, 2)).len(), 2);
    }
}
