//! Exact dense linear algebra over a [`FieldSpec`].
//!
//! Pivoting is deterministic: the first nonzero entry in column order is
//! taken, so bases are reproducible across runs. Over `ℚ` there are two
//! elimination routes (plain rational Gauss–Jordan and fraction-free Bareiss
//! on integer-scaled rows) and a modular lower bound used for screening.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};

/// Large primes below 2^32 used for modular screening over `ℚ`.
pub const SCREENING_PRIMES: [u64; 3] = [4_294_967_291, 4_294_967_279, 4_294_967_231];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Elimination {
    /// Gauss–Jordan with eagerly normalized rationals.
    #[default]
    Rational,
    /// Bareiss elimination on rows scaled to integers (ℚ only; falls back to
    /// `Rational` over a prime field).
    FractionFree,
}

/// A dense row-major matrix of exact scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ArityMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        for e in &entries {
            field.check_same(&e.field())?;
        }
        Ok(ExactMatrix {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix from row vectors; all rows must have length `cols`.
    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::ArityMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            entries.extend(r);
        }
        Self::new(field, n, cols, entries)
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, cols, rows)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert_eq!(v.field(), self.field);
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        ExactMatrix {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::ArityMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect())
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..cols {
            if pr == rows {
                break;
            }
            let Some(found) = (pr..rows).find(|&r| !self.get(r, c).is_zero()) else {
                continue;
            };
            if found != pr {
                for j in 0..cols {
                    self.entries.swap(found * cols + j, pr * cols + j);
                }
            }
            let inv = self.get(pr, c).inverse().expect("pivot is nonzero");
            for j in c..cols {
                let v = self.get(pr, j);
                if !v.is_zero() {
                    let nv = v * &inv;
                    self.entries[pr * cols + j] = nv;
                }
            }
            let pivot_row: Vec<Scalar> = self.row(pr).to_vec();
            for r in 0..rows {
                if r == pr {
                    continue;
                }
                let factor = self.get(r, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..cols {
                    if !pivot_row[j].is_zero() {
                        let idx = r * cols + j;
                        self.entries[idx] -= &(&factor * &pivot_row[j]);
                    }
                }
            }
            pivots.push(c);
            pr += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rank_with(Elimination::Rational)
    }

    pub fn rank_with(&self, method: Elimination) -> usize {
        match (method, self.field.is_rationals()) {
            (Elimination::FractionFree, true) => bareiss_rank(self.integer_rows()),
            _ => RowEchelon::from_rows(self.field, self.cols, (0..self.rows).map(|r| self.row(r).to_vec())).rank(),
        }
    }

    /// Rank with modular screening: over `ℚ` the rank modulo a screening
    /// prime is a lower bound, and when it already equals `min(rows, cols)`
    /// it is the exact answer. Otherwise the exact rational rank is computed.
    pub fn screened_rank(&self) -> usize {
        if !self.field.is_rationals() {
            return self.rank();
        }
        let full = self.rows.min(self.cols);
        if self.modular_rank_lower_bound() == full {
            return full;
        }
        self.rank()
    }

    /// Largest rank over the screening primes (a lower bound on the rank
    /// over `ℚ`; exact over `𝔽_p`).
    pub fn modular_rank_lower_bound(&self) -> usize {
        if !self.field.is_rationals() {
            return self.rank();
        }
        let mut best = 0;
        for &p in &SCREENING_PRIMES {
            if let Some(r) = self.rank_mod(p) {
                best = best.max(r);
                if best == self.rows.min(self.cols) {
                    break;
                }
            }
        }
        best
    }

    /// Rank of the image of the matrix in `𝔽_p`, or `None` when some entry
    /// has a denominator divisible by `p`.
    pub fn rank_mod(&self, p: u64) -> Option<usize> {
        let mut ech = ModEchelon::new(p, self.cols);
        for r in 0..self.rows {
            let row: Option<Vec<u64>> = self.row(r).iter().map(|s| s.residue_mod(p)).collect();
            ech.insert(row?);
        }
        Some(ech.rank())
    }

    /// Basis of `{v : M v = 0}`: one vector per free column (ascending), with
    /// a 1 in that coordinate, `-rref[i][free]` at the pivot columns and zero
    /// elsewhere.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![self.field.zero(); self.cols];
                v[free] = self.field.one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(i, free);
                }
                v
            })
            .collect()
    }

    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let lcm = row.iter().fold(BigInt::one(), |acc, s| {
                    acc.lcm(s.as_rational().expect("rational entries").denom())
                });
                row.iter()
                    .map(|s| {
                        let q = s.as_rational().unwrap();
                        q.numer() * (&lcm / q.denom())
                    })
                    .collect()
            })
            .collect()
    }
}

/// Fraction-free (Bareiss) rank of an integer matrix.
fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut prev = BigInt::one();
    let mut pr = 0;
    for c in 0..cols {
        if pr == rows {
            break;
        }
        let Some(found) = (pr..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(found, pr);
        for r in pr + 1..rows {
            for j in c + 1..cols {
                let v = &a[pr][c] * &a[r][j] - &a[r][c] * &a[pr][j];
                a[r][j] = v / &prev;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[pr][c].clone();
        pr += 1;
    }
    pr
}

/// Incremental row echelon form over an exact field. Rows are inserted one
/// at a time; dependent rows are discarded.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    field: FieldSpec,
    cols: usize,
    /// Pivot rows, each normalized to a leading 1, indexed by pivot column.
    pivot_rows: Vec<Option<Vec<Scalar>>>,
    rank: usize,
}

impl RowEchelon {
    pub fn new(field: FieldSpec, cols: usize) -> Self {
        RowEchelon {
            field,
            cols,
            pivot_rows: vec![None; cols],
            rank: 0,
        }
    }

    pub fn from_rows(field: FieldSpec, cols: usize, rows: impl IntoIterator<Item = Vec<Scalar>>) -> Self {
        let mut e = Self::new(field, cols);
        for r in rows {
            e.insert(r);
            if e.rank == cols {
                break;
            }
        }
        e
    }

    /// Reduces `row` against the current pivots; returns whether it was
    /// independent (and then stores it).
    pub fn insert(&mut self, mut row: Vec<Scalar>) -> bool {
        assert_eq!(row.len(), self.cols);
        for c in 0..self.cols {
            if row[c].is_zero() {
                continue;
            }
            match &self.pivot_rows[c] {
                Some(p) => {
                    let factor = row[c].clone();
                    for j in c..self.cols {
                        if !p[j].is_zero() {
                            row[j] -= &(&factor * &p[j]);
                        }
                    }
                }
                None => {
                    let inv = row[c].inverse().unwrap();
                    for v in row[c..].iter_mut() {
                        if !v.is_zero() {
                            *v *= &inv;
                        }
                    }
                    self.pivot_rows[c] = Some(row);
                    self.rank += 1;
                    return true;
                }
            }
        }
        false
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }
}

/// Incremental echelon form over `𝔽_p` on machine words.
#[derive(Clone, Debug)]
pub struct ModEchelon {
    p: u64,
    cols: usize,
    pivot_rows: Vec<Option<Vec<u64>>>,
    rank: usize,
}

impl ModEchelon {
    pub fn new(p: u64, cols: usize) -> Self {
        ModEchelon {
            p,
            cols,
            pivot_rows: vec![None; cols],
            rank: 0,
        }
    }

    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        if self.p <= u32::MAX as u64 {
            a * b % self.p
        } else {
            crate::scalar::mul_mod(a, b, self.p)
        }
    }

    /// `row` holds residues in `[0, p)`.
    pub fn insert(&mut self, mut row: Vec<u64>) -> bool {
        assert_eq!(row.len(), self.cols);
        let p = self.p;
        for c in 0..self.cols {
            if row[c] == 0 {
                continue;
            }
            match &self.pivot_rows[c] {
                Some(piv) => {
                    let factor = p - row[c];
                    for j in c..self.cols {
                        if piv[j] != 0 {
                            let t = row[j] + self.mul(factor, piv[j]);
                            row[j] = if t >= p { t - p } else { t };
                        }
                    }
                }
                None => {
                    let inv = crate::scalar::pow_mod(row[c], p - 2, p);
                    for j in c..self.cols {
                        if row[j] != 0 {
                            row[j] = self.mul(row[j], inv);
                        }
                    }
                    self.pivot_rows[c] = Some(row);
                    self.rank += 1;
                    return true;
                }
            }
        }
        false
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> FieldSpec {
        FieldSpec::RATIONALS
    }

    #[test]
    fn identity_rank() {
        assert_eq!(ExactMatrix::identity(q(), 3).rank(), 3);
    }

    #[test]
    fn zero_rank() {
        assert_eq!(ExactMatrix::zeros(q(), 2, 4).rank(), 0);
    }

    #[test]
    fn proportional_rows() {
        let m = ExactMatrix::from_i64(q(), &[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(m.rank_with(Elimination::FractionFree), 1);
    }

    #[test]
    fn identity_kernel_empty() {
        assert!(ExactMatrix::identity(q(), 4).kernel_basis().is_empty());
    }

    #[test]
    fn zero_kernel_is_standard_basis() {
        let k = ExactMatrix::zeros(q(), 1, 2).kernel_basis();
        assert_eq!(k, vec![vec![q().one(), q().zero()], vec![q().zero(), q().one()]]);
    }

    #[test]
    fn single_relation_kernel() {
        let k = ExactMatrix::from_i64(q(), &[&[1, 1]]).unwrap().kernel_basis();
        assert_eq!(k, vec![vec![q().from_i64(-1), q().one()]]);
    }

    #[test]
    fn bad_shape_rejected() {
        assert!(ExactMatrix::new(q(), 2, 2, vec![q().one(); 3]).is_err());
    }

    #[test]
    fn rank_mod_small_prime_drops() {
        let m = ExactMatrix::from_i64(q(), &[&[1, 2], &[3, 1]]).unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.rank_mod(5), Some(1));
        assert_eq!(m.screened_rank(), 2);
    }

    fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
        (1usize..6, 1usize..7).prop_flat_map(|(r, c)| {
            (Just(r), Just(c), proptest::collection::vec(-3i64..=3, r * c))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity((r, c, vals) in small_matrix(), use_prime in any::<bool>()) {
            let field = if use_prime { FieldSpec::prime(7).unwrap() } else { q() };
            let m = ExactMatrix::new(field, r, c, vals.iter().map(|&v| field.from_i64(v)).collect()).unwrap();
            let k = m.kernel_basis();
            prop_assert_eq!(m.rank() + k.len(), c);
            for v in &k {
                prop_assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
            }
        }

        #[test]
        fn rational_rank_dominates_modular((r, c, vals) in small_matrix()) {
            let m = ExactMatrix::new(q(), r, c, vals.iter().map(|&v| q().from_i64(v)).collect()).unwrap();
            let rq = m.rank();
            prop_assert!(rq >= m.rank_mod(3).unwrap());
            prop_assert!(rq >= m.rank_mod(5).unwrap());
            prop_assert_eq!(rq, m.rank_with(Elimination::FractionFree));
            prop_assert_eq!(rq, m.screened_rank());
        }
    }
}
