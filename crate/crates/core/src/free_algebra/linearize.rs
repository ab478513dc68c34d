//! Partial and complete linearization.
//!
//! `lin_{x_i}^γ(f)` substitutes `x_i ↦ x_i + ⋯ + x_{i+k-1}` (shifting the
//! variables above `i` up by `k − 1`) and keeps the component of multidegree
//! `(δ₁,…,δ_{i−1}, γ₁,…,γ_k, δ_{i+1},…)`.

use crate::error::{Error, Result};
use crate::free_algebra::{NCPoly, Word};

/// All label sequences containing label `j` exactly `counts[j]` times.
pub(crate) fn multiset_permutations(counts: &[u32]) -> Vec<Vec<u32>> {
    let total: u32 = counts.iter().sum();
    let mut out = Vec::new();
    let mut rem = counts.to_vec();
    let mut cur = Vec::with_capacity(total as usize);
    fn rec(rem: &mut [u32], cur: &mut Vec<u32>, total: usize, out: &mut Vec<Vec<u32>>) {
        if cur.len() == total {
            out.push(cur.clone());
            return;
        }
        for j in 0..rem.len() {
            if rem[j] > 0 {
                rem[j] -= 1;
                cur.push(j as u32);
                rec(rem, cur, total, out);
                cur.pop();
                rem[j] += 1;
            }
        }
    }
    rec(&mut rem, &mut cur, total as usize, &mut out);
    out
}

/// `lin_{x_i}^{γ}(f)` for multihomogeneous `f`.
pub fn partial_linearization(f: &NCPoly, i: u32, gamma: &[u32]) -> Result<NCPoly> {
    if i == 0 || gamma.is_empty() {
        return Err(Error::BadArity("linearization needs i ≥ 1 and a nonempty γ".into()));
    }
    let field = f.field();
    let k = gamma.len() as u32;
    let Some(mdeg) = f.multidegree() else {
        return if f.is_zero() {
            Ok(f.clone())
        } else {
            Err(Error::NotMultihomogeneous)
        };
    };
    let delta_i = mdeg.counts().get(i as usize - 1).copied().unwrap_or(0);
    let g_total: u32 = gamma.iter().sum();
    if delta_i == 0 || g_total != delta_i {
        return Err(Error::DegreeMismatch {
            expected: delta_i,
            got: g_total,
        });
    }
    let labelings = multiset_permutations(gamma);
    let new_nvars = f.nvars().max(i as usize) + k as usize - 1;
    let mut out = NCPoly::zero(field, new_nvars);
    for (w, c) in f.terms() {
        for lab in &labelings {
            let mut next = lab.iter();
            let letters: Vec<u32> = w
                .letters()
                .iter()
                .map(|&l| match l.cmp(&i) {
                    std::cmp::Ordering::Less => l,
                    std::cmp::Ordering::Equal => i + next.next().unwrap(),
                    std::cmp::Ordering::Greater => l + k - 1,
                })
                .collect();
            out.add_term(Word::from_vec_unchecked(letters), c.clone());
        }
    }
    Ok(out)
}

/// Applies `lin_{x_1}^{1^{δ_1}}, …, lin_{x_m}^{1^{δ_m}}` in order, tracking
/// where each original variable has moved. Variables of degree 0 are
/// dropped so the result is multilinear of multidegree `1^{|δ|}`.
pub fn complete_linearization(f: &NCPoly) -> Result<NCPoly> {
    let Some(mdeg) = f.multidegree() else {
        return if f.is_zero() {
            Ok(f.clone())
        } else {
            Err(Error::NotMultihomogeneous)
        };
    };
    let mut g = f.clone();
    let mut cur: u32 = 1;
    for &d in mdeg.counts() {
        if d == 0 {
            let map: Vec<u32> = (1..=g.nvars() as u32)
                .map(|l| if l > cur { l - 1 } else { l })
                .collect();
            g = g.relabel(&map)?;
        } else {
            g = partial_linearization(&g, cur, &vec![1; d as usize])?;
            cur += d;
        }
    }
    Ok(g.with_nvars(mdeg.total() as usize))
}
