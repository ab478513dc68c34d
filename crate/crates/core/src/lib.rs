//! Weak polynomial identities of the first Weyl algebra `A₁ = 𝔽⟨x,y⟩/(yx − xy − 1)`
//! with respect to the generating subspace `V = span{x, y}`.
//!
//! The crate provides exact arithmetic in the free algebra and in `A₁`, the
//! generic-substitution test for weak identities, a rewriting engine that
//! brings any polynomial to a combination of completely reduced
//! bracket-monomials modulo the L-ideal `I` generated by `Γ₃`, `St₃` and
//! `T₄`, and the linear algebra that compares `Id(A₁,V)_Δ` with `I_Δ`
//! multidegree by multidegree.

pub mod bracket;
pub mod error;
pub mod evaluation;
pub mod free_algebra;
pub mod identities;
pub mod linalg;
pub mod rewriter;
pub mod scalar;
pub mod weyl;

pub use error::{Error, Result};
pub use scalar::{FieldSpec, Scalar};
