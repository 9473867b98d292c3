//! Yangian Bethe algebras acting on weight subspaces of `(ℂ^N)^{⊗n}`, the
//! equivariant (quantum) cohomology of cotangent bundles of partial flag
//! varieties in a fixed-point model, discrete Wronskians, and the full-flag
//! Hecke-algebra picture — all in exact arithmetic.

pub mod cohomology;
pub mod error;
pub mod model;
pub mod orbit;
pub mod special_case;
pub mod weight_space;
pub mod wronskian_quantum;
pub mod yangian;

pub use error::{Result, YblError};
pub use model::{Op, QMode, Sc, Setup, Weight};
pub use weight_space::{Composition, Sign, WeightBasis};
