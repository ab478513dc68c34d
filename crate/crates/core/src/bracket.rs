//! Bracket-monomials `x_{t₁}⋯x_{t_l}[x_{r₁},x_{s₁}]⋯[x_{r_k},x_{s_k}]` with
//! `r_i < s_i`, their reduction status, their weights, and the enumeration of
//! the completely reduced ones of a given multidegree.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::free_algebra::{MultiDegree, NCPoly, Word};
use crate::scalar::FieldSpec;

/// Reduction status, from weakest to strongest. Each level implies the
/// previous ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    None,
    SemiReduced,
    Reduced,
    CompletelyReduced,
}

/// A nonincreasing sequence of nonnegative integers, ordered
/// lexicographically after padding the shorter one with zeros.
#[derive(Clone, Debug)]
pub struct Weight(Vec<u32>);

impl Weight {
    /// Sorts `entries` into nonincreasing order.
    pub fn new(mut entries: Vec<u32>) -> Self {
        entries.sort_unstable_by(|a, b| b.cmp(a));
        Weight(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }
}

impl Ord for Weight {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.0.len().max(other.0.len());
        for i in 0..n {
            let a = self.0.get(i).copied().unwrap_or(0);
            let b = other.0.get(i).copied().unwrap_or(0);
            match a.cmp(&b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Weight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Weight {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Weight {}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Strict padded-lexicographic comparison `a < b`.
pub fn weight_less(a: &Weight, b: &Weight) -> bool {
    a < b
}

/// A prefix of letters followed by a product of commutators.
///
/// Equality is literal: two values are equal iff their prefix and bracket
/// sequences coincide, which is also when their expansions coincide.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BracketMonomial {
    prefix: Vec<u32>,
    brackets: Vec<(u32, u32)>,
}

impl BracketMonomial {
    pub fn new(prefix: Vec<u32>, brackets: Vec<(u32, u32)>) -> Result<Self> {
        if brackets.is_empty() {
            return Err(Error::InvalidBracket("at least one bracket is required".into()));
        }
        Self::validate(&prefix, &brackets)?;
        Ok(BracketMonomial { prefix, brackets })
    }

    /// Like [`BracketMonomial::new`] but allows `k = 0` (a plain word), which
    /// the rewriter uses for the pure-power part.
    pub(crate) fn raw(prefix: Vec<u32>, brackets: Vec<(u32, u32)>) -> Self {
        debug_assert!(Self::validate(&prefix, &brackets).is_ok());
        BracketMonomial { prefix, brackets }
    }

    fn validate(prefix: &[u32], brackets: &[(u32, u32)]) -> Result<()> {
        if prefix.contains(&0) || brackets.iter().any(|&(r, _)| r == 0) {
            return Err(Error::InvalidBracket("variable indices are 1-based".into()));
        }
        if let Some(&(r, s)) = brackets.iter().find(|&&(r, s)| r >= s) {
            return Err(Error::InvalidBracket(format!("[x{r},x{s}] needs r < s")));
        }
        Ok(())
    }

    pub fn prefix(&self) -> &[u32] {
        &self.prefix
    }

    pub fn brackets(&self) -> &[(u32, u32)] {
        &self.brackets
    }

    pub fn l(&self) -> usize {
        self.prefix.len()
    }

    pub fn k(&self) -> usize {
        self.brackets.len()
    }

    pub fn degree(&self) -> usize {
        self.prefix.len() + 2 * self.brackets.len()
    }

    pub fn max_letter(&self) -> u32 {
        let p = self.prefix.iter().copied().max().unwrap_or(0);
        let b = self.brackets.iter().map(|&(_, s)| s).max().unwrap_or(0);
        p.max(b)
    }

    pub fn multidegree(&self, nvars: usize) -> MultiDegree {
        let m = nvars.max(self.max_letter() as usize);
        let mut counts = vec![0u32; m];
        for &t in &self.prefix {
            counts[t as usize - 1] += 1;
        }
        for &(r, s) in &self.brackets {
            counts[r as usize - 1] += 1;
            counts[s as usize - 1] += 1;
        }
        MultiDegree(counts)
    }

    /// The product as a polynomial: `2^k` distinct words with coefficients ±1.
    pub fn expand(&self, field: FieldSpec) -> NCPoly {
        let k = self.brackets.len();
        let mut out = NCPoly::zero(field, self.max_letter() as usize);
        let neg = -field.one();
        for mask in 0u64..1 << k {
            let mut letters = self.prefix.clone();
            for (b, &(r, s)) in self.brackets.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    letters.extend([s, r]);
                } else {
                    letters.extend([r, s]);
                }
            }
            let c = if mask.count_ones() % 2 == 1 { neg.clone() } else { field.one() };
            out.add_term(Word::from_vec_unchecked(letters), c);
        }
        out
    }

    pub fn is_semi_reduced(&self) -> bool {
        self.prefix.windows(2).all(|w| w[0] <= w[1]) && self.brackets.windows(2).all(|w| w[0].1 <= w[1].1)
    }

    /// Semi-reduced and the last prefix letter is at most `s₁`.
    pub fn is_reduced(&self) -> bool {
        self.is_semi_reduced()
            && match (self.prefix.last(), self.brackets.first()) {
                (Some(&t), Some(&(_, s))) => t <= s,
                _ => true,
            }
    }

    /// First pair `(i, j)` (lexicographically) with `r_j < r_i < s_i < s_j`.
    pub fn first_nested_pair(&self) -> Option<(usize, usize)> {
        let b = &self.brackets;
        for i in 0..b.len() {
            for j in 0..b.len() {
                if i != j && b[j].0 < b[i].0 && b[i].1 < b[j].1 {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_completely_reduced(&self) -> bool {
        self.is_reduced() && self.first_nested_pair().is_none()
    }

    pub fn status(&self) -> Status {
        if !self.is_semi_reduced() {
            Status::None
        } else if !self.is_reduced() {
            Status::SemiReduced
        } else if self.first_nested_pair().is_some() {
            Status::Reduced
        } else {
            Status::CompletelyReduced
        }
    }

    /// Prefix letters in nonincreasing order, or `(0)` for an empty prefix.
    pub fn monomial_weight(&self) -> Weight {
        if self.prefix.is_empty() {
            Weight(vec![0])
        } else {
            Weight::new(self.prefix.clone())
        }
    }

    /// Bracket spans `s_i − r_i` in nonincreasing order.
    pub fn bracket_weight(&self) -> Weight {
        Weight::new(self.brackets.iter().map(|&(r, s)| s - r).collect())
    }

    /// Sorts brackets by `(s, r)`. On a semi-reduced monomial this keeps the
    /// `s`-sequence sorted and only fixes the order among equal `s`.
    pub fn canonical(&self) -> BracketMonomial {
        let mut b = self.brackets.clone();
        b.sort_by_key(|&(r, s)| (s, r));
        BracketMonomial {
            prefix: self.prefix.clone(),
            brackets: b,
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.brackets.windows(2).all(|w| (w[0].1, w[0].0) <= (w[1].1, w[1].0))
    }
}

impl Ord for BracketMonomial {
    /// Number of brackets, then prefix, then the bracket sequence.
    fn cmp(&self, other: &Self) -> Ordering {
        self.brackets
            .len()
            .cmp(&other.brackets.len())
            .then_with(|| self.prefix.cmp(&other.prefix))
            .then_with(|| self.brackets.cmp(&other.brackets))
    }
}

impl PartialOrd for BracketMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BracketMonomial {
    /// `x1 x2 [x3,x4] [x1,x5]`; an empty product prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.prefix.iter().map(|t| format!("x{t}")).collect();
        parts.extend(self.brackets.iter().map(|(r, s)| format!("[x{r},x{s}]")));
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

impl FromStr for BracketMonomial {
    type Err = Error;

    /// Parses the display form, e.g. `x1 x2 [x3,x4]`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidBracket(format!("{msg} in `{s}`"));
        let var = |t: &str| -> Result<u32> {
            t.trim()
                .strip_prefix('x')
                .and_then(|d| d.parse::<u32>().ok())
                .filter(|&n| n >= 1)
                .ok_or_else(|| bad("bad variable"))
        };
        let mut prefix = Vec::new();
        let mut brackets = Vec::new();
        let compact: String = s.split_whitespace().collect::<Vec<_>>().join(" ");
        let mut rest = compact.as_str();
        while !rest.trim().is_empty() {
            rest = rest.trim_start();
            if let Some(r) = rest.strip_prefix('[') {
                let end = r.find(']').ok_or_else(|| bad("unclosed bracket"))?;
                let (a, b) = r[..end].split_once(',').ok_or_else(|| bad("missing comma"))?;
                brackets.push((var(a)?, var(b)?));
                rest = &r[end + 1..];
            } else {
                if !brackets.is_empty() {
                    return Err(bad("letter after a bracket"));
                }
                let end = rest.find([' ', '[']).unwrap_or(rest.len());
                prefix.push(var(&rest[..end])?);
                rest = &rest[end..];
            }
        }
        BracketMonomial::new(prefix, brackets)
    }
}

/// All completely reduced bracket-monomials of multidegree `delta`, with
/// brackets in `(s, r)` order, sorted by [`BracketMonomial`]'s ordering.
pub fn enumerate_completely_reduced(delta: &MultiDegree) -> Result<Vec<BracketMonomial>> {
    let total = delta.total();
    if total < 2 {
        return Err(Error::DegreeTooSmall(total));
    }
    Ok(completely_reduced_unchecked(delta))
}

/// As [`enumerate_completely_reduced`], but returns an empty list below
/// degree 2.
pub(crate) fn completely_reduced_unchecked(delta: &MultiDegree) -> Vec<BracketMonomial> {
    let m = delta.nvars() as u32;
    let mut rem = delta.counts().to_vec();
    let mut chosen = Vec::new();
    let mut out = Vec::new();

    fn rec(m: u32, rem: &mut Vec<u32>, chosen: &mut Vec<(u32, u32)>, out: &mut Vec<BracketMonomial>) {
        if !chosen.is_empty() {
            let s1 = chosen[0].1;
            let prefix: Vec<u32> = rem
                .iter()
                .enumerate()
                .flat_map(|(i, &c)| std::iter::repeat_n(i as u32 + 1, c as usize))
                .collect();
            if prefix.last().is_none_or(|&t| t <= s1) {
                let b = BracketMonomial::raw(prefix, chosen.clone());
                if b.first_nested_pair().is_none() {
                    out.push(b);
                }
            }
        }
        let (last_s, last_r) = chosen.last().map_or((0, 0), |&(r, s)| (s, r));
        for s in last_s.max(2)..=m {
            for r in 1..s {
                if (s, r) < (last_s, last_r) {
                    continue;
                }
                let (ri, si) = (r as usize - 1, s as usize - 1);
                if rem[ri] == 0 || rem[si] == 0 {
                    continue;
                }
                rem[ri] -= 1;
                rem[si] -= 1;
                chosen.push((r, s));
                rec(m, rem, chosen, out);
                chosen.pop();
                rem[ri] += 1;
                rem[si] += 1;
            }
        }
    }

    rec(m, &mut rem, &mut chosen, &mut out);
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::RATIONALS;

    fn b(s: &str) -> BracketMonomial {
        s.parse().unwrap()
    }

    fn w(v: &[u32]) -> Weight {
        Weight::new(v.to_vec())
    }

    #[test]
    fn expansion_of_two_brackets() {
        let e = b("[x1,x2] [x3,x4]").expand(Q);
        let expected = crate::free_algebra::parse("x1*x2*x3*x4 - x1*x2*x4*x3 - x2*x1*x3*x4 + x2*x1*x4*x3", Q).unwrap();
        assert_eq!(e, expected);
        assert_eq!(b("x1 [x2,x3]").expand(Q), crate::free_algebra::parse("x1*x2*x3 - x1*x3*x2", Q).unwrap());
        assert_eq!(b("x3 [x1,x2]").expand(Q).len(), 2);
    }

    #[test]
    fn statuses() {
        assert_eq!(b("x3 [x1,x2]").status(), Status::SemiReduced);
        assert_eq!(b("[x2,x3] [x1,x4]").status(), Status::Reduced);
        assert_eq!(b("x1 [x2,x3]").status(), Status::CompletelyReduced);
        assert_eq!(b("x2 x1 [x1,x2]").status(), Status::None);
        assert_eq!(b("[x1,x4] [x2,x3]").status(), Status::None);
        assert!(Status::None < Status::SemiReduced && Status::Reduced < Status::CompletelyReduced);
    }

    #[test]
    fn weights_of_standard_terms() {
        assert_eq!(b("x1 [x2,x3]").monomial_weight().entries(), &[1]);
        assert_eq!(b("x2 [x1,x3]").monomial_weight().entries(), &[2]);
        assert_eq!(b("x3 [x1,x2]").monomial_weight().entries(), &[3]);
        assert_eq!(b("x1 [x2,x3]").bracket_weight().entries(), &[1]);
        assert_eq!(b("x2 [x1,x3]").bracket_weight().entries(), &[2]);
        assert_eq!(b("[x1,x2] [x3,x4]").bracket_weight().entries(), &[1, 1]);
        assert_eq!(b("[x1,x3] [x2,x4]").bracket_weight().entries(), &[2, 2]);
        assert_eq!(b("[x2,x3] [x1,x4]").bracket_weight().entries(), &[3, 1]);
        assert_eq!(b("[x1,x2] [x3,x4]").monomial_weight().entries(), &[0]);
        assert_eq!(b("x1 x3 x2 [x4,x5]").monomial_weight().entries(), &[3, 2, 1]);
    }

    #[test]
    fn padded_order() {
        assert!(weight_less(&w(&[0]), &w(&[1])));
        assert!(weight_less(&w(&[2]), &w(&[2, 1])));
        assert!(weight_less(&w(&[2, 2]), &w(&[3, 1])));
        assert!(!weight_less(&w(&[2, 0]), &w(&[2])));
        assert_eq!(w(&[2, 0]), w(&[2]));
    }

    #[test]
    fn invalid_monomials() {
        assert!(BracketMonomial::new(vec![1], vec![]).is_err());
        assert!(BracketMonomial::new(vec![], vec![(2, 1)]).is_err());
        assert!(BracketMonomial::new(vec![], vec![(1, 1)]).is_err());
        assert!(BracketMonomial::new(vec![0], vec![(1, 2)]).is_err());
        assert!("x1 [x2,x3] x4".parse::<BracketMonomial>().is_err());
    }

    #[test]
    fn display_round_trip() {
        let m = b("x1 x2 [x3,x4] [x1,x5]");
        assert_eq!(m.to_string(), "x1 x2 [x3,x4] [x1,x5]");
        assert_eq!(m.to_string().parse::<BracketMonomial>().unwrap(), m);
    }

    fn names(delta: &[u32]) -> Vec<String> {
        enumerate_completely_reduced(&MultiDegree(delta.to_vec()))
            .unwrap()
            .iter()
            .map(ToString::to_string)
            .collect()
    }

    #[test]
    fn multilinear_lists() {
        assert_eq!(names(&[1, 1]), ["[x1,x2]"]);
        assert_eq!(names(&[1, 1, 1]), ["x1 [x2,x3]", "x2 [x1,x3]"]);
        assert_eq!(
            names(&[1, 1, 1, 1]),
            ["x1 x2 [x3,x4]", "x1 x3 [x2,x4]", "x2 x3 [x1,x4]", "[x1,x2] [x3,x4]", "[x1,x3] [x2,x4]"]
        );
        assert_eq!(
            names(&[1, 1, 1, 1, 1]),
            [
                "x1 x2 x3 [x4,x5]",
                "x1 x2 x4 [x3,x5]",
                "x1 x3 x4 [x2,x5]",
                "x2 x3 x4 [x1,x5]",
                "x1 [x2,x3] [x4,x5]",
                "x1 [x2,x4] [x3,x5]",
                "x2 [x1,x3] [x4,x5]",
                "x2 [x1,x4] [x3,x5]",
                "x3 [x1,x4] [x2,x5]",
            ]
        );
    }

    #[test]
    fn two_variables() {
        for r in 1..6u32 {
            for s in 1..=r {
                let got = enumerate_completely_reduced(&MultiDegree(vec![r, s])).unwrap();
                let expected: Vec<BracketMonomial> = (1..=s)
                    .map(|i| {
                        let mut prefix = vec![1; (r - i) as usize];
                        prefix.extend(vec![2; (s - i) as usize]);
                        BracketMonomial::new(prefix, vec![(1, 2); i as usize]).unwrap()
                    })
                    .collect();
                assert_eq!(got, expected, "({r},{s})");
            }
        }
    }

    #[test]
    fn single_variable_is_empty() {
        assert!(names(&[3]).is_empty());
        assert!(names(&[3, 0]).is_empty());
        assert_eq!(
            enumerate_completely_reduced(&MultiDegree(vec![1])),
            Err(Error::DegreeTooSmall(1))
        );
    }

    #[test]
    fn degree_four_and_five_lists() {
        assert_eq!(names(&[2, 1, 1]), ["x1 x1 [x2,x3]", "x1 x2 [x1,x3]", "[x1,x2] [x1,x3]"]);
        assert_eq!(
            names(&[2, 2, 1]),
            ["x1 x1 x2 [x2,x3]", "x1 x2 x2 [x1,x3]", "x1 [x1,x2] [x2,x3]", "x2 [x1,x2] [x1,x3]"]
        );
    }
}
