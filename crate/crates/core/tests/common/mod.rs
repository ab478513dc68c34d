//! Independent reference implementations used to check the library.
//!
//! Everything here is deliberately naive: Weyl products by repeatedly
//! rewriting `yx → xy + 1` on letter strings, ranks by textbook elimination
//! over `BigRational`, and enumeration by filtering every arrangement.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use weylpi::free_algebra::{MultiDegree, NCPoly};
use weylpi::weyl::WeylElement;
use weylpi::FieldSpec;

/// Element of `A₁` over `ℚ` in the `x^i y^j` basis.
pub type Oracle = BTreeMap<(u32, u32), BigRational>;

/// Normal ordering of a word over `{x, y}` (`false` = x, `true` = y) by
/// rewriting the leftmost `yx` until none is left.
pub fn single_swap_normal_order(word: &[bool]) -> BTreeMap<(u32, u32), BigInt> {
    let mut todo: Vec<(Vec<bool>, BigInt)> = vec![(word.to_vec(), BigInt::one())];
    let mut out: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
    while let Some((w, c)) = todo.pop() {
        match w.windows(2).position(|p| p[0] && !p[1]) {
            Some(i) => {
                let mut swapped = w.clone();
                swapped.swap(i, i + 1);
                let mut dropped = w[..i].to_vec();
                dropped.extend_from_slice(&w[i + 2..]);
                todo.push((swapped, c.clone()));
                todo.push((dropped, c));
            }
            None => {
                let i = w.iter().filter(|&&b| !b).count() as u32;
                let j = w.len() as u32 - i;
                *out.entry((i, j)).or_insert_with(BigInt::zero) += c;
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

#[derive(Default)]
pub struct OracleEvaluator {
    cache: HashMap<Vec<bool>, BTreeMap<(u32, u32), BigInt>>,
}

impl OracleEvaluator {
    pub fn normal_order(&mut self, w: &[bool]) -> &BTreeMap<(u32, u32), BigInt> {
        self.cache
            .entry(w.to_vec())
            .or_insert_with(|| single_swap_normal_order(w))
    }

    /// `f(a₁x + b₁y, …, a_m x + b_m y)` over `ℚ`.
    pub fn eval_linear(&mut self, f: &NCPoly, points: &[(i64, i64)]) -> Oracle {
        let mut out = Oracle::new();
        for (w, c) in f.terms() {
            let c = c.as_rational().expect("rational coefficients").clone();
            let letters = w.letters();
            let n = letters.len();
            for bits in 0u64..1 << n {
                let mut coeff = BigInt::one();
                let mut xy = Vec::with_capacity(n);
                for (t, &l) in letters.iter().enumerate() {
                    let (a, b) = points[l as usize - 1];
                    let is_y = bits >> t & 1 == 1;
                    coeff *= if is_y { b } else { a };
                    xy.push(is_y);
                }
                if coeff.is_zero() {
                    continue;
                }
                let scale = &c * BigRational::from_integer(coeff);
                for (&k, v) in self.normal_order(&xy) {
                    *out.entry(k).or_insert_with(BigRational::zero) += &scale * BigRational::from_integer(v.clone());
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }
}

/// Converts a library element with scalar coefficients over `ℚ`.
pub fn from_weyl(e: &WeylElement) -> Oracle {
    e.scalar_terms()
        .expect("scalar coefficients")
        .into_iter()
        .map(|(k, v)| (k, v.as_rational().expect("rational").clone()))
        .filter(|(_, v)| !v.is_zero())
        .collect()
}

pub fn random_points(rng: &mut impl Rng, m: usize) -> Vec<(i64, i64)> {
    (0..m).map(|_| (rng.gen_range(-4..=4), rng.gen_range(-4..=4))).collect()
}

/// Rank by plain Gaussian elimination over `ℚ`.
pub fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &rows[r][c];
                for j in c..cols {
                    let d = &f * &rows[r][j];
                    rows[i][j] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

/// Coefficient vectors over the words of `delta`.
pub fn coefficient_rows(fs: &[NCPoly], delta: &MultiDegree) -> Vec<Vec<BigRational>> {
    let words = delta.words();
    fs.iter()
        .map(|f| {
            words
                .iter()
                .map(|w| f.coeff(w).as_rational().expect("rational").clone())
                .collect()
        })
        .collect()
}

/// `dim Id_Δ` over `ℚ` from evaluations at random integer points: the
/// rank of the words' values equals the generic rank once there are more
/// points than parameter monomials (with overwhelming probability).
pub fn sampled_identity_dimension(delta: &MultiDegree, rng: &mut impl Rng) -> usize {
    let words = delta.words();
    let param_monomials: u32 = delta.counts().iter().map(|d| d + 1).product();
    let npoints = param_monomials as usize + 4;
    let mut ev = OracleEvaluator::default();
    let mut rows: Vec<BTreeMap<(usize, (u32, u32)), BigRational>> = vec![BTreeMap::new(); words.len()];
    for p in 0..npoints {
        let pts = random_points(rng, delta.nvars());
        for (wi, w) in words.iter().enumerate() {
            let f = NCPoly::monomial(FieldSpec::RATIONALS, w.clone(), FieldSpec::RATIONALS.one());
            for (k, v) in ev.eval_linear(&f, &pts) {
                rows[wi].insert((p, k), v);
            }
        }
    }
    let cols: BTreeSet<(usize, (u32, u32))> = rows.iter().flat_map(|r| r.keys().cloned()).collect();
    let dense = rows
        .iter()
        .map(|r| cols.iter().map(|c| r.get(c).cloned().unwrap_or_else(BigRational::zero)).collect())
        .collect();
    words.len() - rank(dense)
}

/// Completely reduced bracket-monomials straight from the definition:
/// every arrangement of the letters, split into a prefix and consecutive
/// pairs, filtered by the three conditions, in display form.
pub fn brute_force_completely_reduced(delta: &MultiDegree) -> BTreeSet<String> {
    let mut arrangements = BTreeSet::new();
    permute(&mut delta.counts().to_vec(), &mut Vec::new(), delta.total() as usize, &mut arrangements);
    let n = delta.total() as usize;
    let mut out = BTreeSet::new();
    for u in arrangements {
        for l in (0..n).filter(|l| (n - l).is_multiple_of(2) && n > *l) {
            let prefix = &u[..l];
            let mut pairs: Vec<(u32, u32)> = u[l..].chunks(2).map(|c| (c[0], c[1])).collect();
            if pairs.iter().any(|&(r, s)| r >= s) {
                continue;
            }
            let sorted_prefix = prefix.windows(2).all(|w| w[0] <= w[1]);
            let sorted_s = pairs.windows(2).all(|w| w[0].1 <= w[1].1);
            let bounded = prefix.last().is_none_or(|&t| t <= pairs[0].1);
            let nested = pairs
                .iter()
                .any(|&(ri, si)| pairs.iter().any(|&(rj, sj)| rj < ri && si < sj));
            if sorted_prefix && sorted_s && bounded && !nested {
                pairs.sort_by_key(|&(r, s)| (s, r));
                let mut parts: Vec<String> = prefix.iter().map(|t| format!("x{t}")).collect();
                parts.extend(pairs.iter().map(|(r, s)| format!("[x{r},x{s}]")));
                out.insert(parts.join(" "));
            }
        }
    }
    out
}

fn permute(rem: &mut Vec<u32>, cur: &mut Vec<u32>, n: usize, out: &mut BTreeSet<Vec<u32>>) {
    if cur.len() == n {
        out.insert(cur.clone());
        return;
    }
    for i in 0..rem.len() {
        if rem[i] > 0 {
            rem[i] -= 1;
            cur.push(i as u32 + 1);
            permute(rem, cur, n, out);
            cur.pop();
            rem[i] += 1;
        }
    }
}

/// Every multidegree (including permuted ones) with total degree `n` in at
/// most `m` variables, without trailing zeros.
pub fn multidegrees(n: u32, m: usize) -> Vec<MultiDegree> {
    fn rec(rest: u32, left: usize, cur: &mut Vec<u32>, out: &mut Vec<MultiDegree>) {
        if left == 0 {
            if rest == 0 {
                out.push(MultiDegree(cur.clone()).trimmed());
            }
            return;
        }
        for d in 0..=rest {
            cur.push(d);
            rec(rest - d, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, m, &mut Vec::new(), &mut out);
    out.sort();
    out.dedup();
    out.retain(|d| d.nvars() > 0);
    out
}

pub fn is_unit(c: &BigRational) -> bool {
    c.abs().is_one()
}
pub mod schema;
