//! The free algebra `𝔽⟨x₁, x₂, …⟩`: words, multidegrees, sparse polynomials,
//! linearization, the generators of `I`, and the text syntax.

mod generators;
mod linearize;
mod parse;
mod poly;

pub use generators::{gamma, generator_at, st3, t4, Generator};
pub use linearize::{complete_linearization, partial_linearization};
pub use parse::{format, parse, MAX_EXPONENT};
pub use poly::{MultiDegree, NCPoly, Word};
