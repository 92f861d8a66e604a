//! Exact computations of Hopf-cyclic cohomology for finite-dimensional
//! Hopf symmetries with stable anti-Yetter-Drinfeld coefficients.

pub mod calculi;
pub mod cyclic;
pub mod error;
pub mod exactla;
pub mod fixtures;
pub mod morphisms;
pub mod multilin;
pub mod products;
pub mod structures;

pub use error::{Error, Result};
pub use exactla::{q, qf, Limits, Matrix, Rational, SparseVec, Subspace};
pub use structures::{
    Action, Algebra, Coaction, Coalgebra, Hopf, Kind, ModularPair, Sayd, Symmetry, SymmetryBundle, Validate,
    ValidationReport,
};
