//! Weak-identity spaces `Id(A₁,V)_Δ`, the ideal span `I_Δ`, and the
//! per-multidegree check `Id_Δ = I_Δ`.
//!
//! Over `ℚ` every matrix here has integer entries, so ranks modulo a prime
//! are lower bounds for the rational ranks. Because `I_Δ ⊆ Id_Δ`,
//!
//! ```text
//! rank_p(ideal rows) ≤ dim I_Δ ≤ dim Id_Δ = N − rank(E) ≤ N − rank_p(E)
//! ```
//!
//! and when the two ends meet all four numbers are exact. Only when they
//! don't is exact rational elimination needed.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bracket::{completely_reduced_unchecked, BracketMonomial};
use crate::error::{Error, Result};
use crate::evaluation::{EvalCoord, Evaluator, XY};
use crate::free_algebra::{Generator, MultiDegree, NCPoly, Word};
use crate::linalg::{Elimination, ExactMatrix, ModEchelon, RowEchelon, SCREENING_PRIMES};
use crate::rewriter::normal_form_component;
use crate::scalar::{FieldSpec, Scalar};
use crate::weyl::WeylElement;

/// Default cap on the total degree accepted by [`verify_conjecture`].
pub const DEFAULT_MAX_DEGREE: u32 = 8;
/// Default cap on the estimated size of the matrices built by
/// [`verify_conjecture`].
pub const DEFAULT_MEMORY_BUDGET: u64 = 8 << 30;

/// Generic-substitution coordinates of every word of multidegree `Δ`.
#[derive(Clone, Debug)]
pub struct WordEvaluation {
    pub words: Vec<Word>,
    pub columns: Vec<EvalCoord>,
    /// `rows[w]` lists `(column, value)` pairs with nonzero integer values.
    pub rows: Vec<Vec<(usize, u64)>>,
}

impl WordEvaluation {
    pub fn new(delta: &MultiDegree) -> Self {
        let words = delta.words();
        let mut ev = Evaluator::new();
        let coords: Vec<BTreeMap<EvalCoord, u64>> =
            words.iter().map(|w| ev.word_coordinates(w, delta.nvars())).collect();
        let columns: Vec<EvalCoord> = coords
            .iter()
            .flat_map(|m| m.keys().cloned())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let index: HashMap<&EvalCoord, usize> = columns.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let rows = coords
            .iter()
            .map(|m| m.iter().map(|(c, &v)| (index[c], v)).collect())
            .collect();
        WordEvaluation { words, columns, rows }
    }

    /// Words × columns, over `field`.
    pub fn matrix(&self, field: FieldSpec) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(field, self.words.len(), self.columns.len());
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, v) in row {
                m.set(r, c, field.from_u64(v));
            }
        }
        m
    }

    fn rank_mod(&self, p: u64) -> usize {
        let mut ech = ModEchelon::new(p, self.columns.len());
        for row in &self.rows {
            let mut dense = vec![0u64; self.columns.len()];
            for &(c, v) in row {
                dense[c] = v % p;
            }
            ech.insert(dense);
            if ech.rank() == self.columns.len() {
                break;
            }
        }
        ech.rank()
    }

    /// Exact rank over `field`.
    pub fn rank(&self, field: FieldSpec) -> usize {
        if !field.is_rationals() {
            return self.rank_mod(field.characteristic());
        }
        let full = self.words.len().min(self.columns.len());
        let bound = self.rank_lower_bound(field);
        if bound == full {
            return full;
        }
        self.matrix(field).rank_with(Elimination::FractionFree)
    }

    /// A lower bound on the rank over `field`, exact unless `field = ℚ`.
    pub fn rank_lower_bound(&self, field: FieldSpec) -> usize {
        if !field.is_rationals() {
            return self.rank_mod(field.characteristic());
        }
        let full = self.words.len().min(self.columns.len());
        let mut best = 0;
        for &p in &SCREENING_PRIMES {
            best = best.max(self.rank_mod(p));
            if best == full {
                break;
            }
        }
        best
    }
}

/// The words × evaluation-coordinates matrix of multidegree `Δ`.
pub fn word_evaluation_matrix(delta: &MultiDegree, field: FieldSpec) -> ExactMatrix {
    WordEvaluation::new(delta).matrix(field)
}

/// A basis of `Id(A₁,V)_Δ`: the kernel of the evaluation map on words, one
/// element per free word in reduced echelon form.
pub fn identity_basis(delta: &MultiDegree, field: FieldSpec) -> Vec<NCPoly> {
    let ev = WordEvaluation::new(delta);
    let kernel = ev.matrix(field).transpose().kernel_basis();
    kernel
        .into_iter()
        .map(|v| {
            let mut f = NCPoly::zero(field, delta.nvars());
            for (w, c) in ev.words.iter().zip(v) {
                f.add_term(w.clone(), c);
            }
            f
        })
        .collect()
}

/// `dim Id(A₁,V)_Δ`, exactly.
pub fn identity_dimension(delta: &MultiDegree, field: FieldSpec) -> usize {
    let ev = WordEvaluation::new(delta);
    ev.words.len() - ev.rank(field)
}

/// Spanning set of `I_Δ`: `w₁·g(x_{j₁},…,x_{j_k})·w₂` for `g ∈ {Γ₃, St₃, T₄}`,
/// nonzero and deduplicated up to sign, in generation order.
pub fn ideal_span_rows(delta: &MultiDegree, field: FieldSpec) -> Vec<NCPoly> {
    let m = delta.nvars();
    let mut seen: HashSet<Vec<(Word, Scalar)>> = HashSet::new();
    let mut out = Vec::new();
    for g in Generator::IDEAL {
        let base = g.poly(field).expect("ideal generators are valid");
        let mut tuples = Vec::new();
        index_tuples(&mut delta.counts().to_vec(), g.arity() as usize, &mut Vec::new(), &mut tuples);
        for (idx, rem) in tuples {
            let gj = base.relabel(&idx).expect("indices in range");
            if gj.is_zero() {
                continue;
            }
            for u in MultiDegree(rem).words() {
                for split in 0..=u.len() {
                    let (w1, w2) = u.letters().split_at(split);
                    let mut row: Vec<(Word, Scalar)> = gj
                        .terms()
                        .map(|(w, c)| {
                            let mut l = w1.to_vec();
                            l.extend_from_slice(w.letters());
                            l.extend_from_slice(w2);
                            (Word::from_vec_unchecked(l), c.clone())
                        })
                        .collect();
                    row.sort_by(|a, b| a.0.cmp(&b.0));
                    if !row[0].1.is_one() {
                        let inv = row[0].1.inverse().expect("nonzero");
                        for (_, c) in row.iter_mut() {
                            *c *= &inv;
                        }
                    }
                    if seen.insert(row.clone()) {
                        out.push(NCPoly::from_terms(field, row).with_nvars(m));
                    }
                }
            }
        }
    }
    out
}

/// Every `k`-tuple of variable indices whose letters fit into `rem`, with
/// the multidegree left over.
fn index_tuples(rem: &mut Vec<u32>, k: usize, cur: &mut Vec<u32>, out: &mut Vec<(Vec<u32>, Vec<u32>)>) {
    if cur.len() == k {
        out.push((cur.clone(), rem.clone()));
        return;
    }
    for j in 0..rem.len() {
        if rem[j] > 0 {
            rem[j] -= 1;
            cur.push(j as u32 + 1);
            index_tuples(rem, k, cur, out);
            cur.pop();
            rem[j] += 1;
        }
    }
}

/// Integer (or `𝔽_p`) rows of the ideal span over the word basis.
struct IdealRows {
    n_words: usize,
    rows: Vec<Vec<(usize, Scalar)>>,
}

impl IdealRows {
    fn new(delta: &MultiDegree, field: FieldSpec, words: &[Word]) -> Self {
        let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let rows = ideal_span_rows(delta, field)
            .iter()
            .map(|f| f.terms().map(|(w, c)| (index[w], c.clone())).collect())
            .collect();
        IdealRows {
            n_words: words.len(),
            rows,
        }
    }

    /// Rank modulo `p`, stopping once `stop_at` is reached.
    fn rank_mod(&self, p: u64, stop_at: usize) -> Option<usize> {
        let mut ech = ModEchelon::new(p, self.n_words);
        for row in &self.rows {
            if ech.rank() >= stop_at {
                break;
            }
            let mut dense = vec![0u64; self.n_words];
            for (c, v) in row {
                dense[*c] = v.residue_mod(p)?;
            }
            ech.insert(dense);
        }
        Some(ech.rank())
    }

    fn rank_exact(&self, field: FieldSpec) -> usize {
        if !field.is_rationals() {
            return self.rank_mod(field.characteristic(), usize::MAX).expect("field residues");
        }
        let mut ech = RowEchelon::new(field, self.n_words);
        for row in &self.rows {
            let mut dense = vec![field.zero(); self.n_words];
            for (c, v) in row {
                dense[*c] = v.clone();
            }
            ech.insert(dense);
            if ech.rank() == self.n_words {
                break;
            }
        }
        ech.rank()
    }
}

/// `dim I_Δ`, exactly.
pub fn ideal_span_dimension(delta: &MultiDegree, field: FieldSpec) -> usize {
    let words = delta.words();
    IdealRows::new(delta, field, &words).rank_exact(field)
}

/// Both dimensions, certified through the sandwich bound when possible.
fn dimensions(delta: &MultiDegree, field: FieldSpec, with_ideal: bool) -> (usize, Option<usize>) {
    let ev = WordEvaluation::new(delta);
    let n = ev.words.len();
    if !with_ideal {
        return (n - ev.rank(field), None);
    }
    let ideal = IdealRows::new(delta, field, &ev.words);
    if !field.is_rationals() {
        let dim_id = n - ev.rank(field);
        return (dim_id, Some(ideal.rank_exact(field)));
    }
    let upper = n - ev.rank_lower_bound(field);
    for &p in &SCREENING_PRIMES {
        if ideal.rank_mod(p, upper) == Some(upper) {
            return (upper, Some(upper));
        }
    }
    (n - ev.rank(field), Some(ideal.rank_exact(field)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Verified,
    Refuted,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Outcome of [`verify_conjecture`] for one multidegree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub mdeg: MultiDegree,
    pub field: FieldSpec,
    pub n_reduced: usize,
    pub eval_rank: usize,
    pub dim_id: usize,
    #[serde(rename = "dim_I")]
    pub dim_i: Option<usize>,
    pub verdict: Verdict,
    pub witness: Option<String>,
    pub elapsed_ms: u64,
}

impl ConjectureReport {
    /// Whether the completely reduced monomials evaluate independently.
    pub fn independent(&self) -> bool {
        self.eval_rank == self.n_reduced
    }
}

impl fmt::Display for ConjectureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "mdeg {} over {}: n_reduced={} eval_rank={} dim_id={} dim_I={} verdict={}",
            self.mdeg,
            self.field,
            self.n_reduced,
            self.eval_rank,
            self.dim_id,
            self.dim_i.map_or("-".to_string(), |d| d.to_string()),
            self.verdict
        )?;
        if let Some(w) = &self.witness {
            write!(f, " witness={w}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Also compute `dim I_Δ` when the independence shortcut succeeds.
    pub cross_check: bool,
    pub max_degree: u32,
    /// Estimated bytes of matrix storage allowed.
    pub memory_budget: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            cross_check: true,
            max_degree: DEFAULT_MAX_DEGREE,
            memory_budget: DEFAULT_MEMORY_BUDGET,
        }
    }
}

/// Rough storage needed: the ideal echelon form is at most `N × N` machine
/// words, where `N` is the number of words of multidegree `Δ`.
fn estimated_bytes(delta: &MultiDegree) -> u128 {
    let n = delta.word_count();
    n.saturating_mul(n).saturating_mul(8)
}

/// Rank of the generic evaluations of the given bracket-monomials.
pub fn evaluation_rank(monomials: &[BracketMonomial], nvars: usize, field: FieldSpec) -> usize {
    let mut ev = Evaluator::new();
    let coords: Vec<BTreeMap<EvalCoord, Scalar>> = monomials
        .iter()
        .map(|b| ev.generic_coordinates(&b.expand(field).with_nvars(nvars)))
        .collect();
    let columns: BTreeMap<&EvalCoord, usize> = coords
        .iter()
        .flat_map(|m| m.keys())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .enumerate()
        .map(|(i, c)| (c, i))
        .collect();
    let rows: Vec<Vec<Scalar>> = coords
        .iter()
        .map(|m| {
            let mut row = vec![field.zero(); columns.len()];
            for (c, v) in m {
                row[columns[c]] = v.clone();
            }
            row
        })
        .collect();
    let m = ExactMatrix::from_rows(field, columns.len(), rows).expect("rows have equal length");
    m.screened_rank()
}

/// Checks `Id(A₁,V)_Δ = I_Δ` over (an infinite field of the characteristic
/// of) `field`.
///
/// If the completely reduced monomials of multidegree `Δ` evaluate
/// independently, every identity rewrites to zero modulo `I` and the answer
/// is `Verified`. Otherwise the dimensions decide: equal gives `Verified`, a
/// strict gap together with an identity whose normal form survives gives
/// `Refuted`, anything else `Inconclusive`.
pub fn verify_conjecture(delta: &MultiDegree, field: FieldSpec, opts: VerifyOptions) -> Result<ConjectureReport> {
    let start = Instant::now();
    let total = delta.total();
    if total > opts.max_degree {
        return Err(Error::ResourceLimit(format!(
            "total degree {total} exceeds the cap {}",
            opts.max_degree
        )));
    }
    let need = estimated_bytes(delta);
    if need > opts.memory_budget as u128 {
        return Err(Error::ResourceLimit(format!(
            "multidegree {delta} needs about {need} bytes, budget is {}",
            opts.memory_budget
        )));
    }
    let reduced = completely_reduced_unchecked(delta);
    let eval_rank = evaluation_rank(&reduced, delta.nvars(), field);
    let independent = eval_rank == reduced.len();
    let (dim_id, dim_i) = dimensions(delta, field, opts.cross_check || !independent);

    let mut witness = None;
    let verdict = if independent || dim_i == Some(dim_id) {
        Verdict::Verified
    } else if dim_i.is_some_and(|d| d < dim_id) {
        witness = identity_basis(delta, field).into_iter().find(|f| {
            normal_form_component(f, None).is_ok_and(|nf| !nf.is_zero())
        });
        if witness.is_some() {
            Verdict::Refuted
        } else {
            Verdict::Inconclusive
        }
    } else {
        Verdict::Inconclusive
    };
    Ok(ConjectureReport {
        mdeg: delta.clone(),
        field,
        n_reduced: reduced.len(),
        eval_rank,
        dim_id,
        dim_i,
        verdict,
        witness: witness.map(|f| f.to_string()),
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// [`verify_conjecture`] over several multidegrees in parallel; results keep
/// the input order.
pub fn verify_many(deltas: &[MultiDegree], field: FieldSpec, opts: VerifyOptions) -> Vec<Result<ConjectureReport>> {
    deltas.par_iter().map(|d| verify_conjecture(d, field, opts)).collect()
}

/// Partitions of `n` as multidegrees with nonincreasing entries, in
/// decreasing lexicographic order.
pub fn partitions(n: u32) -> Vec<MultiDegree> {
    fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiDegree>) {
        if rest == 0 {
            out.push(MultiDegree(cur.clone()));
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            rec(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, n, &mut Vec::new(), &mut out);
    }
    out
}

/// One row of the two-variable certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateRow {
    pub i: u32,
    pub monomial: BracketMonomial,
    /// The value at `(x₁, x₂) = (x, y)`.
    pub value: WeylElement,
}

/// Values of `x₁^{r−i} x₂^{s−i} [x₁,x₂]^i` at `(x, y)` for `i = 1..s`. They
/// are `(−1)^i x^{r−i} y^{s−i}`, pairwise distinct basis elements, so the
/// completely reduced monomials of multidegree `(r, s)` are independent.
pub fn two_variable_certificate(r: u32, s: u32, field: FieldSpec) -> Result<Vec<CertificateRow>> {
    if s == 0 || s > r {
        return Err(Error::MalformedMultiDegree(format!("need r ≥ s ≥ 1, got ({r},{s})")));
    }
    let mut ev = Evaluator::new();
    (1..=s)
        .map(|i| {
            let mut prefix = vec![1; (r - i) as usize];
            prefix.extend(vec![2; (s - i) as usize]);
            let monomial = BracketMonomial::new(prefix, vec![(1, 2); i as usize])?;
            let value = ev.substitute_tuple(&monomial.expand(field).with_nvars(2), &[XY::X, XY::Y])?;
            Ok(CertificateRow { i, monomial, value })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_algebra::{gamma, parse, st3};

    const Q: FieldSpec = FieldSpec::RATIONALS;

    fn md(v: &[u32]) -> MultiDegree {
        MultiDegree(v.to_vec())
    }

    fn span_rank(fs: &[NCPoly], delta: &MultiDegree) -> usize {
        let words = delta.words();
        let rows = fs
            .iter()
            .map(|f| words.iter().map(|w| f.coeff(w)).collect())
            .collect();
        ExactMatrix::from_rows(Q, words.len(), rows).unwrap().rank()
    }

    #[test]
    fn degree_three_spaces() {
        let basis = identity_basis(&md(&[1, 1, 1]), Q);
        assert_eq!(basis.len(), 3);
        let expected = [
            gamma(Q, 3).unwrap(),
            Generator::Gamma(3).at(Q, &[1, 3, 2]).unwrap(),
            st3(Q),
        ];
        let mut all = basis.clone();
        all.extend(expected.iter().cloned());
        assert_eq!(span_rank(&expected, &md(&[1, 1, 1])), 3);
        assert_eq!(span_rank(&all, &md(&[1, 1, 1])), 3);

        let b21 = identity_basis(&md(&[2, 1]), Q);
        assert_eq!(b21.len(), 1);
        let g = parse("[[x1,x2],x1]", Q).unwrap().with_nvars(2);
        assert_eq!(span_rank(&[b21[0].clone(), g], &md(&[2, 1])), 1);

        assert!(identity_basis(&md(&[3]), Q).is_empty());
    }

    #[test]
    fn basis_elements_are_identities() {
        for d in [md(&[2, 2]), md(&[2, 1, 1]), md(&[1, 1, 1, 1])] {
            for f in identity_basis(&d, Q) {
                assert!(crate::evaluation::is_weak_identity(&f), "{f}");
            }
        }
    }

    #[test]
    fn ideal_dimensions() {
        assert_eq!(ideal_span_dimension(&md(&[2, 1]), Q), 1);
        assert_eq!(ideal_span_dimension(&md(&[1, 1]), Q), 0);
        assert_eq!(ideal_span_dimension(&md(&[1, 1, 1]), Q), 3);
        assert_eq!(ideal_span_dimension(&md(&[3]), Q), 0);
    }

    #[test]
    fn degree_three_verified() {
        for (d, dim) in [(md(&[1, 1, 1]), 3), (md(&[2, 1]), 1), (md(&[3]), 0)] {
            let r = verify_conjecture(&d, Q, VerifyOptions::default()).unwrap();
            assert_eq!(r.verdict, Verdict::Verified);
            assert_eq!(r.dim_id, dim);
            assert_eq!(r.dim_i, Some(dim));
        }
    }

    #[test]
    fn modular_verification() {
        let f7 = FieldSpec::prime(7).unwrap();
        for d in partitions(4) {
            let r = verify_conjecture(&d, f7, VerifyOptions::default()).unwrap();
            assert_eq!(r.verdict, Verdict::Verified, "{r}");
            assert_eq!(r.dim_id, identity_dimension(&d, f7));
        }
    }

    #[test]
    fn resource_limits() {
        let opts = VerifyOptions {
            max_degree: 3,
            ..Default::default()
        };
        assert!(matches!(verify_conjecture(&md(&[2, 2]), Q, opts), Err(Error::ResourceLimit(_))));
        let opts = VerifyOptions {
            memory_budget: 10,
            ..Default::default()
        };
        assert!(matches!(verify_conjecture(&md(&[2, 1]), Q, opts), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn partition_lists() {
        let p4: Vec<String> = partitions(4).iter().map(ToString::to_string).collect();
        assert_eq!(p4, ["(4)", "(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"]);
        assert_eq!(partitions(6).len(), 11);
        assert!(partitions(0).is_empty());
    }

    #[test]
    fn certificate_values() {
        let rows = two_variable_certificate(2, 1, Q).unwrap();
        assert_eq!(rows[0].value, WeylElement::x(Q).neg());
        let rows = two_variable_certificate(2, 2, Q).unwrap();
        assert_eq!(rows[1].value, WeylElement::one(Q));
        let rows = two_variable_certificate(3, 1, Q).unwrap();
        assert_eq!(rows[0].value, WeylElement::scalar_monomial(2, 0, Q.from_i64(-1)));
        assert!(two_variable_certificate(1, 2, Q).is_err());
    }

    #[test]
    fn json_field_names() {
        let r = verify_conjecture(&md(&[2, 1]), Q, VerifyOptions::default()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["mdeg"], serde_json::json!([2, 1]));
        assert_eq!(v["field"], "q");
        assert_eq!(v["dim_I"], 1);
        assert_eq!(v["verdict"], "Verified");
        assert!(v["witness"].is_null());
    }
}
