//! Rewriting modulo the L-ideal `I = ⟨Γ₃, St₃, T₄⟩` into
//! `β·x₁^{δ₁}⋯x_m^{δ_m} + Σ αᵢ·(completely reduced bracket-monomial)`.
//!
//! Intermediate terms are kept as `(prefix, brackets)` pairs; a pair with no
//! brackets and a sorted prefix is the pure power. Four rules are used:
//!
//! * **swap**: `f₁ x_j x_i f₂ ≡ f₁ x_i x_j f₂ − f₁ f₂ [x_i,x_j]` for `i < j`,
//! * **move-bracket**: `f₁ [x_i,x_j] f₀ f₂ ≡ f₁ f₀ [x_i,x_j] f₂`, so brackets
//!   always sit at the end in `(s, r)` order,
//! * **exchange**: `x_t [x_r,x_s] ≡ x_s [x_r,x_t] − x_r [x_s,x_t]`,
//! * **uncross**: `[x_b,x_c][x_a,x_d] ≡ −[x_a,x_b][x_c,x_d] + [x_a,x_c][x_b,x_d]`
//!   for `a < b < c < d`.
//!
//! Every rule strictly lowers `(mw, bw, prefix inversions)`, so terms are
//! processed from the largest measure down and each term is visited once.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::bracket::{BracketMonomial, Status, Weight};
use crate::error::{Error, Result};
use crate::free_algebra::{MultiDegree, NCPoly, Word};
use crate::scalar::{FieldSpec, Scalar};

/// Linear combination of bracket-monomials.
pub type Combination = BTreeMap<BracketMonomial, Scalar>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    Swap,
    MoveBracket,
    Exchange,
    Uncross,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Swap => "swap",
            Rule::MoveBracket => "move-bracket",
            Rule::Exchange => "exchange",
            Rule::Uncross => "uncross",
        })
    }
}

/// One rewrite: `coeff · before ↦ Σ c · after`.
#[derive(Clone, Debug)]
pub struct TraceStep {
    pub rule: Rule,
    pub coeff: Scalar,
    pub before: BracketMonomial,
    pub after: Vec<(BracketMonomial, Scalar)>,
}

impl TraceStep {
    pub fn weight_before(&self) -> (Weight, Weight) {
        (self.before.monomial_weight(), self.before.bracket_weight())
    }
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (mw, bw) = self.weight_before();
        write!(f, "{:<12} {} · {}  [mw {mw}, bw {bw}]  ->", self.rule, self.coeff, self.before)?;
        for (b, c) in &self.after {
            write!(
                f,
                " {} {}·{} [mw {}, bw {}]",
                if c.is_negative() { "-" } else { "+" },
                if c.is_negative() { -c } else { c.clone() },
                b,
                b.monomial_weight(),
                b.bracket_weight()
            )?;
        }
        Ok(())
    }
}

/// Termination measure; larger terms are rewritten first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Measure {
    mw: Weight,
    bw: Weight,
    inversions: usize,
}

fn measure(b: &BracketMonomial) -> Measure {
    let p = b.prefix();
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    Measure {
        mw: b.monomial_weight(),
        bw: b.bracket_weight(),
        inversions,
    }
}

struct Engine<'a> {
    field: FieldSpec,
    target: Status,
    queue: BTreeMap<(Measure, BracketMonomial), Scalar>,
    done: Combination,
    trace: Option<&'a mut Vec<TraceStep>>,
}

impl<'a> Engine<'a> {
    fn new(field: FieldSpec, target: Status, trace: Option<&'a mut Vec<TraceStep>>) -> Self {
        Engine {
            field,
            target,
            queue: BTreeMap::new(),
            done: BTreeMap::new(),
            trace,
        }
    }

    fn push(&mut self, b: BracketMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (measure(&b), b);
        match self.queue.get_mut(&key) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.queue.remove(&key);
                }
            }
            None => {
                self.queue.insert(key, c);
            }
        }
    }

    fn record(&mut self, rule: Rule, coeff: &Scalar, before: &BracketMonomial, after: &[(BracketMonomial, Scalar)]) {
        if let Some(t) = self.trace.as_deref_mut() {
            t.push(TraceStep {
                rule,
                coeff: coeff.clone(),
                before: before.clone(),
                after: after.to_vec(),
            });
        }
    }

    /// Appends a bracket and restores `(s, r)` order.
    fn with_bracket(&mut self, prefix: Vec<u32>, brackets: &[(u32, u32)], new: (u32, u32), c: &Scalar) -> BracketMonomial {
        let mut bs = brackets.to_vec();
        bs.push(new);
        let appended = BracketMonomial::raw(prefix, bs);
        let canon = appended.canonical();
        if canon != appended {
            self.record(Rule::MoveBracket, c, &appended, &[(canon.clone(), self.field.one())]);
        }
        canon
    }

    /// Children of one rewrite step, or `None` if `b` already has the
    /// target status (or is the pure power).
    fn step(&mut self, b: &BracketMonomial, c: &Scalar) -> Option<(Rule, Vec<(BracketMonomial, Scalar)>)> {
        let one = self.field.one();
        let p = b.prefix();
        let bs = b.brackets();
        if let Some(d) = p.windows(2).position(|w| w[0] > w[1]) {
            let (j, i) = (p[d], p[d + 1]);
            let mut swapped = p.to_vec();
            swapped.swap(d, d + 1);
            let mut rest = p[..d].to_vec();
            rest.extend_from_slice(&p[d + 2..]);
            let bracketed = self.with_bracket(rest, bs, (i, j), c);
            return Some((
                Rule::Swap,
                vec![(BracketMonomial::raw(swapped, bs.to_vec()), one.clone()), (bracketed, -one)],
            ));
        }
        if self.target == Status::SemiReduced || bs.is_empty() {
            return None;
        }
        let (r, s) = bs[0];
        if let Some(&t) = p.last().filter(|&&t| t > s) {
            let head = &p[..p.len() - 1];
            let child = |x: u32, pair: (u32, u32)| {
                let mut pre = head.to_vec();
                pre.push(x);
                let mut brs = bs[1..].to_vec();
                brs.push(pair);
                BracketMonomial::raw(pre, brs).canonical()
            };
            return Some((
                Rule::Exchange,
                vec![(child(s, (r, t)), one.clone()), (child(r, (s, t)), -one)],
            ));
        }
        if self.target == Status::Reduced {
            return None;
        }
        let (i, j) = b.first_nested_pair()?;
        let ((a2, a3), (a1, a4)) = (bs[i], bs[j]);
        let rest: Vec<(u32, u32)> = bs
            .iter()
            .enumerate()
            .filter(|&(n, _)| n != i && n != j)
            .map(|(_, &x)| x)
            .collect();
        let child = |x: (u32, u32), y: (u32, u32)| {
            let mut brs = rest.clone();
            brs.extend([x, y]);
            BracketMonomial::raw(p.to_vec(), brs).canonical()
        };
        Some((
            Rule::Uncross,
            vec![(child((a1, a2), (a3, a4)), -one.clone()), (child((a1, a3), (a2, a4)), one)],
        ))
    }

    fn run(mut self) -> Combination {
        while let Some(((m, b), c)) = self.queue.pop_last() {
            match self.step(&b, &c) {
                None => {
                    self.done.insert(b, c);
                }
                Some((rule, children)) => {
                    self.record(rule, &c, &b, &children);
                    for (child, k) in children {
                        debug_assert!(measure(&child) < m, "{rule} did not lower the measure at {b}");
                        self.push(child, &c * &k);
                    }
                }
            }
        }
        self.done
    }
}

fn rewrite(
    field: FieldSpec,
    input: impl IntoIterator<Item = (BracketMonomial, Scalar)>,
    target: Status,
    trace: Option<&mut Vec<TraceStep>>,
) -> Combination {
    let mut e = Engine::new(field, target, trace);
    for (b, c) in input {
        e.push(b.canonical(), c);
    }
    e.run()
}

fn word_term(w: &Word) -> BracketMonomial {
    BracketMonomial::raw(w.letters().to_vec(), Vec::new())
}

/// Splits off the pure-power term.
fn split_beta(field: FieldSpec, mut comb: Combination) -> (Scalar, Combination) {
    let mut beta = field.zero();
    comb.retain(|b, c| {
        if b.k() == 0 {
            beta += &*c;
            false
        } else {
            true
        }
    });
    (beta, comb)
}

/// Rewrites a multihomogeneous polynomial into `β·x^δ` plus semi-reduced
/// bracket-monomials.
pub fn semi_reduce(f: &NCPoly) -> Result<(Scalar, Combination)> {
    if !f.is_multihomogeneous() {
        return Err(Error::NotMultihomogeneous);
    }
    let comb = rewrite(
        f.field(),
        f.terms().map(|(w, c)| (word_term(w), c.clone())),
        Status::SemiReduced,
        None,
    );
    Ok(split_beta(f.field(), comb))
}

/// Semi-reduces a single bracket-monomial; the result has no pure-power
/// part.
pub fn semi_reduce_monomial(b: &BracketMonomial, field: FieldSpec) -> Combination {
    rewrite(field, [(b.clone(), field.one())], Status::SemiReduced, None)
}

/// Rewrites a semi-reduced monomial into reduced ones.
pub fn reduce(b: &BracketMonomial, field: FieldSpec) -> Result<Combination> {
    if b.status() < Status::SemiReduced {
        return Err(Error::NotSemiReduced);
    }
    Ok(rewrite(field, [(b.canonical(), field.one())], Status::Reduced, None))
}

/// Rewrites a reduced monomial into completely reduced ones.
pub fn completely_reduce(b: &BracketMonomial, field: FieldSpec) -> Result<Combination> {
    if b.status() < Status::Reduced {
        return Err(Error::NotReduced);
    }
    Ok(rewrite(field, [(b.canonical(), field.one())], Status::CompletelyReduced, None))
}

/// `β·x₁^{δ₁}⋯x_m^{δ_m} + Σ αᵢ fᵢ` for one multidegree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub mdeg: MultiDegree,
    pub beta: Scalar,
    pub terms: Combination,
}

impl NormalForm {
    pub fn field(&self) -> FieldSpec {
        self.beta.field()
    }

    pub fn is_zero(&self) -> bool {
        self.beta.is_zero() && self.terms.is_empty()
    }

    /// The polynomial this normal form denotes.
    pub fn reconstruct(&self) -> NCPoly {
        let field = self.field();
        let mut out = NCPoly::zero(field, self.mdeg.nvars());
        if !self.beta.is_zero() {
            out.add_term(Word::from_vec_unchecked(self.mdeg.sorted_letters()), self.beta.clone());
        }
        for (b, c) in &self.terms {
            for (w, e) in b.expand(field).terms() {
                out.add_term(w.clone(), c * e);
            }
        }
        out
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let power = BracketMonomial::raw(self.mdeg.sorted_letters(), Vec::new());
        writeln!(f, "mdeg {}: beta = {} ({power})", self.mdeg.trimmed(), self.beta)?;
        for (b, c) in &self.terms {
            writeln!(f, "  {c} {b}")?;
        }
        Ok(())
    }
}

/// Normal form of a multihomogeneous component, with optional trace.
pub fn normal_form_component(f: &NCPoly, trace: Option<&mut Vec<TraceStep>>) -> Result<NormalForm> {
    let mdeg = f.multidegree().ok_or(Error::NotMultihomogeneous)?;
    let comb = rewrite(
        f.field(),
        f.terms().map(|(w, c)| (word_term(w), c.clone())),
        Status::CompletelyReduced,
        trace,
    );
    let (beta, terms) = split_beta(f.field(), comb);
    debug_assert!(terms.keys().all(|b| b.status() == Status::CompletelyReduced));
    Ok(NormalForm { mdeg, beta, terms })
}

/// Normal form of every multihomogeneous component, in parallel.
pub fn normal_form(f: &NCPoly) -> BTreeMap<MultiDegree, NormalForm> {
    f.multihomogeneous_components()
        .into_par_iter()
        .map(|(d, comp)| {
            let nf = normal_form_component(&comp, None).expect("component is multihomogeneous");
            (d, nf)
        })
        .collect()
}

/// Sequential variant recording every rewrite, components in ascending
/// multidegree order.
pub fn normal_form_traced(f: &NCPoly) -> (BTreeMap<MultiDegree, NormalForm>, Vec<TraceStep>) {
    let mut trace = Vec::new();
    let mut out = BTreeMap::new();
    for (d, comp) in f.multihomogeneous_components() {
        let nf = normal_form_component(&comp, Some(&mut trace)).expect("component is multihomogeneous");
        out.insert(d, nf);
    }
    (out, trace)
}
