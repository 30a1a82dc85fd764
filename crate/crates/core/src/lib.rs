//! Exact arithmetic in Ore extensions `A[x; σ̃, Δ]` of algebras of
//! rational-valued functions on a set, with centralizer and center
//! computations.
//!
//! `A` is the algebra of functions `X → ℚ` for a finite `X = {0, .., n-1}`
//! ([`FuncElem`]), or the non-unital algebra of finitely supported functions
//! on `ℤ` ([`sparse_mode`]). A bijection `σ` of the underlying set induces the
//! automorphism `σ̃(f) = f ∘ σ⁻¹`, and a twisted derivation `Δ` satisfies
//! `Δ(fg) = σ̃(f)Δ(g) + Δ(f)g`. Products are normalized with `x f = σ̃(f) x + Δ(f)`.
//!
//! ```
//! use ore_ext::{FuncElem, OreContext, OrePoly, Permutation};
//!
//! let ctx = OreContext::skew(Permutation::swap(2, 0, 1));
//! let x = OrePoly::x(&ctx);
//! let e0 = OrePoly::constant(&ctx, FuncElem::basis(2, 0));
//! // x e0 = e1 x
//! assert_eq!(x.multiply(&e0).unwrap(), OrePoly::monomial(&ctx, FuncElem::basis(2, 1), 1));
//! ```

pub mod base_algebra;
pub mod cli;
pub mod commutant;
pub mod derivation;
pub mod error;
pub mod json;
pub mod matrix;
pub mod ore_poly;
pub mod rational;
pub mod skew_variants;
pub mod sparse_mode;

pub use base_algebra::{CycleDecomposition, FuncElem, Permutation};
pub use commutant::{Method, SubspaceBasis};
pub use derivation::{DerivationMatrix, Violation};
pub use error::{Error, Result};
pub use matrix::RatMatrix;
pub use ore_poly::{Degree, OreContext, OrePoly};
pub use rational::Rational;
pub use skew_variants::{LaurentElem, SeriesElem};
pub use sparse_mode::{CountableBijection, SparseContext, SparseDerivation, SparseFunc, SparsePoly};
