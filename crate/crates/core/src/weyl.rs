//! The first Weyl algebra `A₁ = 𝔽⟨x,y⟩/(yx − xy − 1)` in the normal-ordered
//! basis `{x^i y^j}`, with coefficients in the commutative parameter ring
//! `𝔽[α₁, β₁, α₂, β₂, …]`.
//!
//! Products are reordered letter by letter with `y^j x = x y^j + j y^{j−1}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};

/// A monomial in the parameters: entry `2(k−1)` is the exponent of `α_k`,
/// entry `2k−1` that of `β_k`. Trailing zeros are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ParamMonomial(Vec<u32>);

impl ParamMonomial {
    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        ParamMonomial(exps)
    }

    pub fn one() -> Self {
        ParamMonomial(Vec::new())
    }

    /// `α_k^a β_k^b` for each variable `k`, from the per-variable counts.
    pub fn from_alpha_beta(alpha: &[u32], beta: &[u32]) -> Self {
        let n = alpha.len().max(beta.len());
        let mut v = Vec::with_capacity(2 * n);
        for k in 0..n {
            v.push(alpha.get(k).copied().unwrap_or(0));
            v.push(beta.get(k).copied().unwrap_or(0));
        }
        Self::new(v)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    fn mul(&self, other: &ParamMonomial) -> ParamMonomial {
        let n = self.0.len().max(other.0.len());
        let v = (0..n)
            .map(|i| self.0.get(i).copied().unwrap_or(0) + other.0.get(i).copied().unwrap_or(0))
            .collect();
        ParamMonomial(v)
    }
}

impl fmt::Display for ParamMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (idx, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            let name = if idx % 2 == 0 { "a" } else { "b" };
            write!(f, "{name}{}", idx / 2 + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// A polynomial in the commuting parameters `α_k, β_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CommPoly {
    field: FieldSpec,
    terms: BTreeMap<ParamMonomial, Scalar>,
}

impl CommPoly {
    pub fn zero(field: FieldSpec) -> Self {
        CommPoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(ParamMonomial::one(), c)
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::constant(field.one())
    }

    pub fn monomial(m: ParamMonomial, c: Scalar) -> Self {
        let mut p = Self::zero(c.field());
        p.add_term(m, c);
        p
    }

    /// `α_k` (1-based `k`).
    pub fn alpha(field: FieldSpec, k: usize) -> Self {
        let mut e = vec![0; 2 * k];
        e[2 * (k - 1)] = 1;
        Self::monomial(ParamMonomial::new(e), field.one())
    }

    /// `β_k` (1-based `k`).
    pub fn beta(field: FieldSpec, k: usize) -> Self {
        let mut e = vec![0; 2 * k];
        e[2 * k - 1] = 1;
        Self::monomial(ParamMonomial::new(e), field.one())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ParamMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &ParamMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// The constant value if no parameter occurs.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(self.field.zero()),
            1 => self.terms.get(&ParamMonomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: ParamMonomial, c: Scalar) {
        assert_eq!(c.field(), self.field, "coefficient field mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn add_assign(&mut self, other: &CommPoly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &Scalar) -> CommPoly {
        let mut out = CommPoly::zero(self.field);
        if !c.is_zero() {
            for (m, a) in &self.terms {
                out.terms.insert(m.clone(), a * c);
            }
        }
        out
    }

    pub fn mul(&self, other: &CommPoly) -> CommPoly {
        let mut out = CommPoly::zero(self.field);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    /// Substitutes values for the parameters, in the order
    /// `α₁, β₁, α₂, β₂, …`; missing values count as zero.
    pub fn eval(&self, values: &[Scalar]) -> Scalar {
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    let v = values.get(i).cloned().unwrap_or_else(|| self.field.zero());
                    t *= &v.pow(e as u64);
                }
            }
            acc += &t;
        }
        acc
    }
}

impl fmt::Display for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

/// An element `Σ c_{ij} x^i y^j` of `A₁`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    field: FieldSpec,
    terms: BTreeMap<(u32, u32), CommPoly>,
}

impl WeylElement {
    pub fn zero(field: FieldSpec) -> Self {
        WeylElement {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::monomial(0, 0, CommPoly::one(field))
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(0, 0, CommPoly::constant(c))
    }

    pub fn x(field: FieldSpec) -> Self {
        Self::monomial(1, 0, CommPoly::one(field))
    }

    pub fn y(field: FieldSpec) -> Self {
        Self::monomial(0, 1, CommPoly::one(field))
    }

    /// `c · x^i y^j`.
    pub fn monomial(i: u32, j: u32, c: CommPoly) -> Self {
        let mut e = Self::zero(c.field());
        e.add_term(i, j, c);
        e
    }

    /// `c · x^i y^j` for a scalar `c`.
    pub fn scalar_monomial(i: u32, j: u32, c: Scalar) -> Self {
        Self::monomial(i, j, CommPoly::constant(c))
    }

    /// `Σ coeffs[i] x^i`.
    pub fn x_polynomial(field: FieldSpec, coeffs: &[Scalar]) -> Self {
        let mut e = Self::zero(field);
        for (i, c) in coeffs.iter().enumerate() {
            e.add_term(i as u32, 0, CommPoly::constant(c.clone()));
        }
        e
    }

    /// `α_k x + β_k y`, the generic element of `V` attached to variable `k`.
    pub fn generic_linear(field: FieldSpec, k: usize) -> Self {
        let mut e = Self::monomial(1, 0, CommPoly::alpha(field, k));
        e.add_term(0, 1, CommPoly::beta(field, k));
        e
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &CommPoly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> CommPoly {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| CommPoly::zero(self.field))
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: CommPoly) {
        assert_eq!(c.field(), self.field, "coefficient field mismatch");
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_insert_with(|| CommPoly::zero(self.field));
        slot.add_assign(&c);
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn add(&self, other: &WeylElement) -> Result<WeylElement> {
        self.field.check_same(&other.field)?;
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> WeylElement {
        self.scale(&-self.field.one())
    }

    pub fn sub(&self, other: &WeylElement) -> Result<WeylElement> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> WeylElement {
        let mut out = WeylElement::zero(self.field);
        for (&(i, j), p) in &self.terms {
            out.add_term(i, j, p.scale(c));
        }
        out
    }

    pub fn scale_poly(&self, c: &CommPoly) -> WeylElement {
        let mut out = WeylElement::zero(self.field);
        for (&(i, j), p) in &self.terms {
            out.add_term(i, j, p.mul(c));
        }
        out
    }

    /// Product in `A₁`, re-expressed in the `x^i y^j` basis.
    pub fn mul(&self, other: &WeylElement) -> Result<WeylElement> {
        self.field.check_same(&other.field)?;
        let mut memo: HashMap<(u32, u32), Vec<(u32, u32, Scalar)>> = HashMap::new();
        let mut out = WeylElement::zero(self.field);
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &other.terms {
                let c = c1.mul(c2);
                if c.is_zero() {
                    continue;
                }
                let table = memo
                    .entry((j1, i2))
                    .or_insert_with(|| reorder_y_pow_x_pow(self.field, j1, i2));
                for (a, b, k) in table.iter() {
                    out.add_term(i1 + a, b + j2, c.scale(k));
                }
            }
        }
        Ok(out)
    }

    /// `uv − vu`.
    pub fn commutator(&self, other: &WeylElement) -> Result<WeylElement> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn pow(&self, k: u32) -> WeylElement {
        let mut acc = WeylElement::one(self.field);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// True iff `u` commutes with both `x` and `y`.
    pub fn is_central(&self) -> bool {
        let x = WeylElement::x(self.field);
        let y = WeylElement::y(self.field);
        self.commutator(&x).unwrap().is_zero() && self.commutator(&y).unwrap().is_zero()
    }

    /// True iff only `y`-free basis elements occur.
    pub fn is_purely_x(&self) -> bool {
        self.terms.keys().all(|&(_, j)| j == 0)
    }

    /// Substitutes values for the parameters in every coefficient.
    pub fn specialize(&self, values: &[Scalar]) -> WeylElement {
        let mut out = WeylElement::zero(self.field);
        for (&(i, j), p) in &self.terms {
            out.add_term(i, j, CommPoly::constant(p.eval(values)));
        }
        out
    }

    /// The scalar coefficients, if no parameter occurs.
    pub fn scalar_terms(&self) -> Option<BTreeMap<(u32, u32), Scalar>> {
        self.terms
            .iter()
            .map(|(&k, p)| p.as_constant().map(|c| (k, c)))
            .collect()
    }
}

/// `y^j x^i` in the normal-ordered basis, computed by appending one `x` at a
/// time with `x^a y^b · x = x^{a+1} y^b + b x^a y^{b−1}`.
fn reorder_y_pow_x_pow(field: FieldSpec, j: u32, i: u32) -> Vec<(u32, u32, Scalar)> {
    let mut cur: BTreeMap<(u32, u32), Scalar> = BTreeMap::new();
    cur.insert((0, j), field.one());
    for _ in 0..i {
        let mut next: BTreeMap<(u32, u32), Scalar> = BTreeMap::new();
        for ((a, b), c) in cur {
            let e = next.entry((a + 1, b)).or_insert_with(|| field.zero());
            *e += &c;
            if b > 0 {
                let e = next.entry((a, b - 1)).or_insert_with(|| field.zero());
                *e += &(&c * &field.from_u64(b as u64));
            }
        }
        next.retain(|_, c| !c.is_zero());
        cur = next;
    }
    cur.into_iter().map(|((a, b), c)| (a, b, c)).collect()
}

/// `[y, a] = ∂(a)` for `a ∈ 𝔽[x]`.
pub fn commutator_with_y(a: &WeylElement) -> Result<WeylElement> {
    if !a.is_purely_x() {
        return Err(Error::NotPurelyX);
    }
    let mut out = WeylElement::zero(a.field());
    for (&(i, _), c) in a.terms() {
        if i > 0 {
            out.add_term(i - 1, 0, c.scale(&a.field().from_u64(i as u64)));
        }
    }
    Ok(out)
}

/// Product of two Weyl elements (`weyl_mul`).
pub fn weyl_mul(u: &WeylElement, v: &WeylElement) -> Result<WeylElement> {
    u.mul(v)
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest basis element first.
        for (n, (&(i, j), c)) in self.terms.iter().rev().enumerate() {
            let basis = match (i, j) {
                (0, 0) => String::new(),
                _ => {
                    let mut parts = Vec::new();
                    match i {
                        0 => {}
                        1 => parts.push("x".to_string()),
                        _ => parts.push(format!("x^{i}")),
                    }
                    match j {
                        0 => {}
                        1 => parts.push("y".to_string()),
                        _ => parts.push(format!("y^{j}")),
                    }
                    parts.join("*")
                }
            };
            let (neg, coef) = match c.as_constant() {
                Some(s) if s.is_negative() => (true, (-&s).to_string()),
                Some(s) => (false, s.to_string()),
                None => (false, format!("({c})")),
            };
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if basis.is_empty() {
                write!(f, "{coef}")?;
            } else if coef == "1" {
                write!(f, "{basis}")?;
            } else {
                write!(f, "{coef}*{basis}")?;
            }
        }
        Ok(())
    }
}

impl<'a> Mul<&'a WeylElement> for &'a WeylElement {
    type Output = WeylElement;
    fn mul(self, rhs: &WeylElement) -> WeylElement {
        WeylElement::mul(self, rhs).expect("field mismatch in *")
    }
}

impl<'a> Add<&'a WeylElement> for &'a WeylElement {
    type Output = WeylElement;
    fn add(self, rhs: &WeylElement) -> WeylElement {
        WeylElement::add(self, rhs).expect("field mismatch in +")
    }
}

impl<'a> Sub<&'a WeylElement> for &'a WeylElement {
    type Output = WeylElement;
    fn sub(self, rhs: &WeylElement) -> WeylElement {
        WeylElement::sub(self, rhs).expect("field mismatch in -")
    }
}

impl Neg for &WeylElement {
    type Output = WeylElement;
    fn neg(self) -> WeylElement {
        WeylElement::neg(self)
    }
}
