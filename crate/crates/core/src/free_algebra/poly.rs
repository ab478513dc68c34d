use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};

/// A monomial of the free monoid: a sequence of 1-based variable indices.
///
/// Ordered by length first, then lexicographically on the letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u32>);

impl Word {
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        if letters.contains(&0) {
            return Err(Error::UnknownVariable {
                pos: 0,
                name: "x0".into(),
            });
        }
        Ok(Word(letters))
    }

    pub(crate) fn from_vec_unchecked(letters: Vec<u32>) -> Self {
        debug_assert!(letters.iter().all(|&l| l >= 1));
        Word(letters)
    }

    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_letter(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Multidegree padded to `nvars` entries.
    pub fn multidegree(&self, nvars: usize) -> MultiDegree {
        let m = nvars.max(self.max_letter() as usize);
        let mut counts = vec![0u32; m];
        for &l in &self.0 {
            counts[l as usize - 1] += 1;
        }
        MultiDegree(counts)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    /// `x1^2*x3*x1`; the unit word prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == l {
                run += 1;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if run == 1 {
                write!(f, "x{l}")?;
            } else {
                write!(f, "x{l}^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

/// Per-variable degree vector `(δ₁, …, δ_m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiDegree(pub Vec<u32>);

impl MultiDegree {
    pub fn new(counts: Vec<u32>) -> Self {
        MultiDegree(counts)
    }

    /// `1^m`.
    pub fn multilinear(m: usize) -> Self {
        MultiDegree(vec![1; m])
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_multilinear(&self) -> bool {
        self.0.iter().all(|&d| d == 1)
    }

    /// Trailing zeros removed.
    pub fn trimmed(&self) -> MultiDegree {
        let mut v = self.0.clone();
        while v.last() == Some(&0) {
            v.pop();
        }
        MultiDegree(v)
    }

    /// The letters of `x₁^{δ₁}⋯x_m^{δ_m}` in order.
    pub fn sorted_letters(&self) -> Vec<u32> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &d)| std::iter::repeat_n(i as u32 + 1, d as usize))
            .collect()
    }

    /// Equality up to trailing zeros.
    pub fn same_as(&self, other: &MultiDegree) -> bool {
        self.trimmed() == other.trimmed()
    }

    /// Every word with this multidegree, ascending.
    pub fn words(&self) -> Vec<Word> {
        let mut out = Vec::new();
        let mut remaining = self.0.clone();
        let mut cur = Vec::with_capacity(self.total() as usize);
        fn rec(remaining: &mut [u32], cur: &mut Vec<u32>, total: usize, out: &mut Vec<Word>) {
            if cur.len() == total {
                out.push(Word(cur.clone()));
                return;
            }
            for i in 0..remaining.len() {
                if remaining[i] > 0 {
                    remaining[i] -= 1;
                    cur.push(i as u32 + 1);
                    rec(remaining, cur, total, out);
                    cur.pop();
                    remaining[i] += 1;
                }
            }
        }
        rec(&mut remaining, &mut cur, self.total() as usize, &mut out);
        out
    }

    /// Number of words of this multidegree (multinomial coefficient).
    pub fn word_count(&self) -> u128 {
        let mut acc: u128 = 1;
        let mut n: u128 = 0;
        for &d in &self.0 {
            for k in 1..=d as u128 {
                n += 1;
                acc = acc * n / k;
            }
        }
        acc
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl std::str::FromStr for MultiDegree {
    type Err = Error;

    /// Comma-separated nonnegative integers, e.g. `2,1,1`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        if t.trim().is_empty() {
            return Err(Error::MalformedMultiDegree(s.to_string()));
        }
        t.split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::MalformedMultiDegree(s.to_string()))
            })
            .collect::<Result<Vec<_>>>()
            .map(MultiDegree)
    }
}

/// A polynomial in the free algebra `𝔽⟨x₁,…,x_m⟩`.
///
/// `nvars` is the ambient number of variables (at least the largest index
/// used); equality ignores it.
#[derive(Clone, Debug)]
pub struct NCPoly {
    field: FieldSpec,
    nvars: usize,
    terms: BTreeMap<Word, Scalar>,
}

impl PartialEq for NCPoly {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.terms == other.terms
    }
}

impl Eq for NCPoly {}

impl std::hash::Hash for NCPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.hash(state);
        self.terms.hash(state);
    }
}

impl NCPoly {
    pub fn zero(field: FieldSpec, nvars: usize) -> Self {
        NCPoly {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::monomial(field, Word::unit(), field.one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(c.field(), Word::unit(), c)
    }

    /// The variable `x_i` (1-based).
    pub fn var(field: FieldSpec, i: u32) -> Self {
        assert!(i >= 1, "variables are 1-based");
        Self::monomial(field, Word(vec![i]), field.one())
    }

    pub fn monomial(field: FieldSpec, w: Word, c: Scalar) -> Self {
        let nvars = w.max_letter() as usize;
        let mut p = Self::zero(field, nvars);
        p.add_term(w, c);
        p
    }

    pub fn from_terms(field: FieldSpec, terms: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut p = Self::zero(field, 0);
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Raises the variable bound (never lowers it below the letters used).
    pub fn with_nvars(mut self, nvars: usize) -> Self {
        self.nvars = self.nvars.max(nvars);
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    /// Adds `c·w`, dropping the term if it cancels.
    pub fn add_term(&mut self, w: Word, c: Scalar) {
        assert_eq!(c.field(), self.field, "coefficient field mismatch");
        if c.is_zero() {
            return;
        }
        self.nvars = self.nvars.max(w.max_letter() as usize);
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &NCPoly) -> Result<NCPoly> {
        self.field.check_same(&other.field)?;
        let mut out = self.clone();
        out.nvars = out.nvars.max(other.nvars);
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &NCPoly) -> Result<NCPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> NCPoly {
        self.scale(&-self.field.one())
    }

    pub fn scale(&self, c: &Scalar) -> NCPoly {
        let mut out = NCPoly::zero(self.field, self.nvars);
        if c.is_zero() {
            return out;
        }
        for (w, a) in &self.terms {
            out.terms.insert(w.clone(), a * c);
        }
        out
    }

    /// Concatenation product.
    pub fn mul(&self, other: &NCPoly) -> Result<NCPoly> {
        self.field.check_same(&other.field)?;
        let mut out = NCPoly::zero(self.field, self.nvars.max(other.nvars));
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        Ok(out)
    }

    /// `fg − gf`.
    pub fn commutator(&self, other: &NCPoly) -> Result<NCPoly> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn pow(&self, k: u32) -> NCPoly {
        let mut acc = NCPoly::one(self.field).with_nvars(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Multidegree if every term has the same one.
    pub fn multidegree(&self) -> Option<MultiDegree> {
        let mut it = self.terms.keys().map(|w| w.multidegree(self.nvars));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_multihomogeneous(&self) -> bool {
        self.is_zero() || self.multidegree().is_some()
    }

    pub fn is_multilinear(&self) -> bool {
        self.multidegree().is_some_and(|d| d.is_multilinear())
    }

    /// Splits `f = Σ f_δ`. Zero yields an empty map.
    pub fn multihomogeneous_components(&self) -> BTreeMap<MultiDegree, NCPoly> {
        let mut out: BTreeMap<MultiDegree, NCPoly> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(w.multidegree(self.nvars))
                .or_insert_with(|| NCPoly::zero(self.field, self.nvars))
                .terms
                .insert(w.clone(), c.clone());
        }
        out
    }

    /// Applies `x_k ↦ x_{map[k-1]}` to every letter (repetition allowed).
    pub fn relabel(&self, map: &[u32]) -> Result<NCPoly> {
        let mut out = NCPoly::zero(self.field, 0);
        for (w, c) in &self.terms {
            let letters = w
                .0
                .iter()
                .map(|&l| {
                    map.get(l as usize - 1).copied().ok_or(Error::ArityMismatch {
                        expected: w.max_letter() as usize,
                        got: map.len(),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            out.add_term(Word::new(letters)?, c.clone());
        }
        Ok(out)
    }

    /// Sum of all coefficients, i.e. the value at `x₁ = ⋯ = x_m = 1` in a
    /// commutative image.
    pub fn coefficient_sum(&self) -> Scalar {
        self.terms.values().fold(self.field.zero(), |acc, c| &acc + c)
    }

    /// Converts every coefficient into another field via its residue or
    /// rational value. Fails over `𝔽_p` if a denominator vanishes.
    pub fn to_field(&self, field: FieldSpec) -> Result<NCPoly> {
        let mut out = NCPoly::zero(field, self.nvars);
        for (w, c) in &self.terms {
            let v = match c.as_rational() {
                Some(r) => field.from_ratio(r.numer(), r.denom())?,
                None if c.field() == field => c.clone(),
                None => return Err(Error::FieldMismatch(c.field().to_string(), field.to_string())),
            };
            out.add_term(w.clone(), v);
        }
        Ok(out)
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if w.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{mag}*{w}")?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a NCPoly> for &'a NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        NCPoly::add(self, rhs).expect("field mismatch in +")
    }
}

impl<'a> Sub<&'a NCPoly> for &'a NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        NCPoly::sub(self, rhs).expect("field mismatch in -")
    }
}

impl<'a> Mul<&'a NCPoly> for &'a NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        NCPoly::mul(self, rhs).expect("field mismatch in *")
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        NCPoly::neg(self)
    }
}
