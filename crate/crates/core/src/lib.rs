//! Exact symbolic engine for the rank-n super-Virasoro algebra `SVir[M,s]`.
//!
//! Scalars are rational functions in the declared indeterminates, so every
//! identity is checked exactly. The crate covers the defining bracket, the
//! three intermediate-series module families and the lattice constructions
//! used for generalized highest weight cones.

pub mod algebra;
pub mod lattice;
pub mod parse;
pub mod repmod;
pub mod scalar;

pub use algebra::{AlgebraElement, BasisElt};
pub use lattice::{AlgebraConfig, HalfInt, IndexVector, LatticeBasis, OddCentralSign, Parity};
pub use repmod::{Family, ModuleBasisVector, ModuleSpec, ModuleVector};
pub use scalar::{Scalar, Symbols};
