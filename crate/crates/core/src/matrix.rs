//! Dense rational matrices and exact row reduction.
//!
//! Row reduction is done fraction-free: every row is scaled to a primitive
//! integer vector, eliminated with integer cross-multiplication, and only
//! divided back to rationals once the reduced echelon form is reached. The
//! reduced row echelon form of a matrix is unique, so every basis produced
//! here is canonical for a given column order.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from row vectors. Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let nrows = rows.len();
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        RatMatrix { rows: nrows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        RatMatrix { rows: self.rows, cols: self.cols, data }
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_string()).collect()).collect();
        f.debug_struct("RatMatrix").field("rows", &self.rows).field("cols", &self.cols).field("data", &rows).finish()
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub cols: usize,
    /// Nonzero rows only; row `r` has a leading 1 in column `pivots[r]`.
    pub rows: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Canonical basis of the null space: one vector per free column, with a 1
    /// in that column and 0 in every other free column.
    pub fn null_space(&self) -> Vec<Vec<Rational>> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Rational::zero(); self.cols];
                v[free] = Rational::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    v[p] = -row[free].clone();
                }
                v
            })
            .collect()
    }
}

/// Scales a rational row to a primitive integer row (gcd of entries 1, first
/// nonzero entry keeps its sign).
fn to_primitive(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    make_primitive(ints)
}

fn make_primitive(mut row: Vec<BigInt>) -> Vec<BigInt> {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
    row
}

/// Fraction-free Gauss-Jordan elimination. Pivots are chosen as the first
/// row (in input order) with a nonzero entry in the current column, so the
/// result is deterministic; being the RREF it is also unique.
pub fn rref(rows: &[Vec<Rational>], cols: usize) -> Echelon {
    let mut work: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), cols, "row length mismatch");
            to_primitive(r)
        })
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();

    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..cols {
        if next == work.len() {
            break;
        }
        let Some(found) = (next..work.len()).find(|&r| !work[r][col].is_zero()) else {
            continue;
        };
        work.swap(next, found);
        let pivot_row = std::mem::take(&mut work[next]);
        let p = pivot_row[col].clone();
        for (r, row) in work.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let a = row[col].clone();
            let reduced: Vec<BigInt> = row.iter().zip(&pivot_row).map(|(x, y)| &p * x - &a * y).collect();
            *row = make_primitive(reduced);
        }
        work[next] = pivot_row;
        pivots.push(col);
        next += 1;
    }
    work.truncate(next);

    let rows = work
        .into_iter()
        .zip(&pivots)
        .map(|(row, &p)| {
            let lead = row[p].clone();
            row.into_iter().map(|x| Rational::new(x, lead.clone())).collect()
        })
        .collect();
    Echelon { cols, rows, pivots }
}

pub fn rank(rows: &[Vec<Rational>], cols: usize) -> usize {
    rref(rows, cols).rank()
}

/// Canonical basis of `{ v : A v = 0 }`.
pub fn null_space(a: &RatMatrix) -> Vec<Vec<Rational>> {
    rref(&a.to_rows(), a.cols()).null_space()
}

/// Canonical basis (RREF rows) of the span of `vectors`.
pub fn row_space_basis(vectors: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    rref(vectors, cols).rows
}

/// One solution of `A v = b` with all free variables set to zero, if any exists.
pub fn solve(a: &RatMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(b.len(), a.rows());
    let n = a.cols();
    let augmented: Vec<Vec<Rational>> = (0..a.rows())
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    let ech = rref(&augmented, n + 1);
    if ech.pivots.last() == Some(&n) {
        return None;
    }
    let mut v = vec![Rational::zero(); n];
    for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
        v[p] = row[n].clone();
    }
    Some(v)
}

/// True when every vector of `inner` lies in the span of `outer`.
pub fn span_contains(outer: &[Vec<Rational>], inner: &[Vec<Rational>], cols: usize) -> bool {
    let base = rank(outer, cols);
    let mut all = outer.to_vec();
    all.extend_from_slice(inner);
    rank(&all, cols) == base
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn rref_is_reduced_and_normalized() {
        let a = m(&[&[2, 4, 6], &[1, 3, 5], &[3, 7, 11]]);
        let e = rref(&a.to_rows(), 3);
        assert_eq!(e.pivots, vec![0, 1]);
        assert_eq!(e.rows[0], vec![int(1), int(0), int(-1)]);
        assert_eq!(e.rows[1], vec![int(0), int(1), int(2)]);
    }

    #[test]
    fn null_space_vectors_are_annihilated() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 7, 9]]);
        let ns = null_space(&a);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn rational_entries() {
        let a = RatMatrix::from_rows(vec![vec![rat(1, 2), rat(1, 3)], vec![rat(1, 4), rat(1, 6)]]);
        assert_eq!(rank(&a.to_rows(), 2), 1);
        assert_eq!(null_space(&a), vec![vec![rat(-2, 3), int(1)]]);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m(&[&[1, 1], &[1, -1]]);
        assert_eq!(solve(&a, &[int(3), int(1)]), Some(vec![int(2), int(1)]));
        let singular = m(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve(&singular, &[int(1), int(3)]), None);
    }

    #[test]
    fn empty_and_zero_inputs() {
        assert_eq!(rank(&[], 3), 0);
        assert_eq!(null_space(&RatMatrix::zeros(2, 2)).len(), 2);
        assert!(span_contains(&[vec![int(1), int(1)]], &[vec![int(-2), int(-2)]], 2));
        assert!(!span_contains(&[vec![int(1), int(1)]], &[vec![int(1), int(0)]], 2));
    }
}
