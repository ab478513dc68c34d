//! The weak identities `Γ_m`, `St₃` and `T₄` generating the L-ideal `I`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::free_algebra::NCPoly;
use crate::scalar::FieldSpec;

fn x(field: FieldSpec, i: u32) -> NCPoly {
    NCPoly::var(field, i)
}

fn br(field: FieldSpec, a: u32, b: u32) -> NCPoly {
    x(field, a).commutator(&x(field, b)).unwrap()
}

/// `Γ_m = [[x₁,x₂], x₃⋯x_m]`.
pub fn gamma(field: FieldSpec, m: u32) -> Result<NCPoly> {
    if m < 3 {
        return Err(Error::BadArity(format!("Γ_m needs m ≥ 3, got {m}")));
    }
    let tail = (3..=m).fold(NCPoly::one(field), |acc, i| &acc * &x(field, i));
    br(field, 1, 2).commutator(&tail)
}

/// `St₃ = x₁[x₂,x₃] − x₂[x₁,x₃] + x₃[x₁,x₂]`.
pub fn st3(field: FieldSpec) -> NCPoly {
    let a = &x(field, 1) * &br(field, 2, 3);
    let b = &x(field, 2) * &br(field, 1, 3);
    let c = &x(field, 3) * &br(field, 1, 2);
    &(&a - &b) + &c
}

/// `T₄ = [x₁,x₂][x₃,x₄] − [x₁,x₃][x₂,x₄] + [x₂,x₃][x₁,x₄]`.
pub fn t4(field: FieldSpec) -> NCPoly {
    let a = &br(field, 1, 2) * &br(field, 3, 4);
    let b = &br(field, 1, 3) * &br(field, 2, 4);
    let c = &br(field, 2, 3) * &br(field, 1, 4);
    &(&a - &b) + &c
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generator {
    Gamma(u32),
    St3,
    T4,
}

impl Generator {
    /// The generators of `I` used for ideal spans.
    pub const IDEAL: [Generator; 3] = [Generator::Gamma(3), Generator::St3, Generator::T4];

    pub fn arity(&self) -> u32 {
        match self {
            Generator::Gamma(m) => *m,
            Generator::St3 => 3,
            Generator::T4 => 4,
        }
    }

    pub fn poly(&self, field: FieldSpec) -> Result<NCPoly> {
        match self {
            Generator::Gamma(m) => gamma(field, *m),
            Generator::St3 => Ok(st3(field)),
            Generator::T4 => Ok(t4(field)),
        }
    }

    /// `g(x_{j₁}, …, x_{j_k})`; indices may repeat.
    pub fn at(&self, field: FieldSpec, indices: &[u32]) -> Result<NCPoly> {
        if indices.len() != self.arity() as usize {
            return Err(Error::ArityMismatch {
                expected: self.arity() as usize,
                got: indices.len(),
            });
        }
        if indices.contains(&0) {
            return Err(Error::BadArity("variable indices are 1-based".into()));
        }
        self.poly(field)?.relabel(indices)
    }
}

/// Shorthand for [`Generator::at`].
pub fn generator_at(g: Generator, field: FieldSpec, indices: &[u32]) -> Result<NCPoly> {
    g.at(field, indices)
}
