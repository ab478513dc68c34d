//! Substituting elements of `V = span{x, y}` into free-algebra polynomials.
//!
//! The generic substitution sends `x_k ↦ α_k x + β_k y` with formal
//! parameters. Its coefficient at `α^a β^b · x^i y^j` collects the values of
//! the partial linearizations of `f` at tuples from `{x, y}`, so vanishing of
//! the generic substitution of every multihomogeneous component is exactly
//! membership in `Id(A₁, V)` over an infinite field of the given
//! characteristic.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::free_algebra::{NCPoly, Word};
use crate::scalar::Scalar;
use crate::weyl::{CommPoly, ParamMonomial, WeylElement};

/// A basis vector of `V`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum XY {
    X,
    Y,
}

impl fmt::Display for XY {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XY::X => write!(f, "x"),
            XY::Y => write!(f, "y"),
        }
    }
}

/// All `2^m` tuples over `{x, y}`, in binary order with `x < y`.
pub fn all_tuples(m: usize) -> Vec<Vec<XY>> {
    (0u64..1 << m)
        .map(|bits| {
            (0..m)
                .map(|k| if bits >> (m - 1 - k) & 1 == 1 { XY::Y } else { XY::X })
                .collect()
        })
        .collect()
}

/// Coordinate of a generic evaluation: the basis element `x^i y^j` and the
/// parameter monomial multiplying it.
pub type EvalCoord = ((u32, u32), ParamMonomial);

/// Caches normal orderings of words over `{x, y}`.
#[derive(Debug, Default)]
pub struct Evaluator {
    cache: HashMap<(u32, u64), Vec<(u32, u32, u64)>>,
}

impl Evaluator {
    pub fn new() -> Self {
        Self::default()
    }

    /// Normal ordering of the `{x,y}`-word of length `len` whose letter `t`
    /// is `y` iff bit `t` of `ybits` is set.
    fn normal_order(&mut self, len: u32, ybits: u64) -> &[(u32, u32, u64)] {
        self.cache.entry((len, ybits)).or_insert_with(|| {
            let mut cur: BTreeMap<(u32, u32), u64> = BTreeMap::new();
            cur.insert((0, 0), 1);
            for t in 0..len {
                let mut next: BTreeMap<(u32, u32), u64> = BTreeMap::new();
                let is_y = ybits >> t & 1 == 1;
                for ((a, b), c) in cur {
                    if is_y {
                        *next.entry((a, b + 1)).or_default() += c;
                    } else {
                        *next.entry((a + 1, b)).or_default() += c;
                        if b > 0 {
                            *next.entry((a, b - 1)).or_default() += c * b as u64;
                        }
                    }
                }
                cur = next;
            }
            cur.into_iter().map(|((a, b), c)| (a, b, c)).collect()
        })
    }

    /// Generic substitution of a single word, as integer coordinates.
    pub fn word_coordinates(&mut self, w: &Word, nvars: usize) -> BTreeMap<EvalCoord, u64> {
        let letters = w.letters();
        let n = letters.len() as u32;
        assert!(n < 64, "word too long for generic evaluation");
        let m = nvars.max(w.max_letter() as usize);
        let mut out: BTreeMap<EvalCoord, u64> = BTreeMap::new();
        let mut alpha = vec![0u32; m];
        let mut beta = vec![0u32; m];
        for ybits in 0u64..1 << n {
            alpha.iter_mut().for_each(|a| *a = 0);
            beta.iter_mut().for_each(|b| *b = 0);
            for (t, &l) in letters.iter().enumerate() {
                if ybits >> t & 1 == 1 {
                    beta[l as usize - 1] += 1;
                } else {
                    alpha[l as usize - 1] += 1;
                }
            }
            let pm = ParamMonomial::from_alpha_beta(&alpha, &beta);
            let terms = self.normal_order(n, ybits).to_vec();
            for (i, j, c) in terms {
                *out.entry(((i, j), pm.clone())).or_default() += c;
            }
        }
        out
    }

    /// Coordinates of the generic substitution of `f`.
    pub fn generic_coordinates(&mut self, f: &NCPoly) -> BTreeMap<EvalCoord, Scalar> {
        let field = f.field();
        let mut out: BTreeMap<EvalCoord, Scalar> = BTreeMap::new();
        for (w, c) in f.terms() {
            for (coord, k) in self.word_coordinates(w, f.nvars()) {
                let v = c * &field.from_u64(k);
                let e = out.entry(coord).or_insert_with(|| field.zero());
                *e += &v;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn generic_substitution(&mut self, f: &NCPoly) -> WeylElement {
        let field = f.field();
        let mut out = WeylElement::zero(field);
        for (((i, j), pm), c) in self.generic_coordinates(f) {
            out.add_term(i, j, CommPoly::monomial(pm, c));
        }
        out
    }

    pub fn substitute_tuple(&mut self, f: &NCPoly, t: &[XY]) -> Result<WeylElement> {
        if t.len() != f.nvars() {
            return Err(Error::ArityMismatch {
                expected: f.nvars(),
                got: t.len(),
            });
        }
        let field = f.field();
        let mut acc: BTreeMap<(u32, u32), Scalar> = BTreeMap::new();
        for (w, c) in f.terms() {
            let mut ybits = 0u64;
            for (pos, &l) in w.letters().iter().enumerate() {
                if t[l as usize - 1] == XY::Y {
                    ybits |= 1 << pos;
                }
            }
            for &(i, j, k) in self.normal_order(w.len() as u32, ybits) {
                let e = acc.entry((i, j)).or_insert_with(|| field.zero());
                *e += &(c * &field.from_u64(k));
            }
        }
        let mut out = WeylElement::zero(field);
        for ((i, j), c) in acc {
            out.add_term(i, j, CommPoly::constant(c));
        }
        Ok(out)
    }
}

/// `x_k ↦ α_k x + β_k y` for every variable.
pub fn generic_substitution(f: &NCPoly) -> WeylElement {
    Evaluator::new().generic_substitution(f)
}

/// `x_k ↦ t[k−1]`; the tuple length must equal `f.nvars()`.
pub fn substitute_tuple(f: &NCPoly, t: &[XY]) -> Result<WeylElement> {
    Evaluator::new().substitute_tuple(f, t)
}

/// `x_k ↦ values[k−1]` for arbitrary elements of `A₁`, evaluated with
/// [`WeylElement::mul`] word by word.
pub fn evaluate_at(f: &NCPoly, values: &[WeylElement]) -> Result<WeylElement> {
    if values.len() < f.nvars() {
        return Err(Error::ArityMismatch {
            expected: f.nvars(),
            got: values.len(),
        });
    }
    let field = f.field();
    let mut out = WeylElement::zero(field);
    for (w, c) in f.terms() {
        let mut prod = WeylElement::one(field);
        for &l in w.letters() {
            prod = prod.mul(&values[l as usize - 1])?;
        }
        out = out.add(&prod.scale(c))?;
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalOptions {
    /// Decide multilinear components by the `2^m` tuple evaluations.
    pub multilinear_fast_path: bool,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            multilinear_fast_path: true,
        }
    }
}

/// True iff `f ∈ Id(A₁, V)`.
pub fn is_weak_identity(f: &NCPoly) -> bool {
    is_weak_identity_with(f, EvalOptions::default())
}

pub fn is_weak_identity_with(f: &NCPoly, opts: EvalOptions) -> bool {
    let mut ev = Evaluator::new();
    f.multihomogeneous_components().values().all(|comp| {
        let mdeg = comp.multidegree().expect("component is multihomogeneous");
        if opts.multilinear_fast_path && mdeg.is_multilinear() {
            all_tuples(comp.nvars())
                .iter()
                .all(|t| ev.substitute_tuple(comp, t).unwrap().is_zero())
        } else {
            ev.generic_substitution(comp).is_zero()
        }
    })
}
