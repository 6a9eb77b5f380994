//! Exact truth-value algebra of type-2 fuzzy sets.
//!
//! Functions `[0, 1] -> [0, 1]` are represented exactly as piecewise-affine
//! maps over big rationals ([`PwFn`]). On top of that sit the running-supremum
//! envelopes, the lattice operations ⊓ and ⊔, parametric sup-convolutions,
//! the constructed operations ⋆ and ♦, and an axiom laboratory that samples L
//! and checks the t-norm axiom families (O1)-(O7), (O4′), (O4″).

pub mod cli;
pub mod constructions;
pub mod convolution;
pub mod envelope;
pub mod error;
pub mod lab;
pub mod lattice;
pub mod par;
pub mod pwfn;
pub mod rat;
pub mod scalar_ops;

pub use error::{Error, Result};
pub use par::Exec;
pub use pwfn::{canonical_equal, parse_pwf, serialize_pwf, Affine, PwFn};
pub use rat::Rat;
