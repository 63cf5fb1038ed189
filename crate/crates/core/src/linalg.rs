//! Exact rank, kernel and cokernel computations over the rationals.
//!
//! Dense matrices are eliminated with the fraction-free (Bareiss) scheme in
//! Gauss–Jordan form. Sparse matrices are reduced row by row against an
//! incremental echelon form with primitive integer rows. Either way the
//! result is turned into the reduced row echelon form, which is unique, so
//! both storage modes return identical kernel bases.
//!
//! [`rank_multimodular`] is an alternative for large integer-like matrices
//! whose exact elimination suffers from coefficient growth.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::poly::{denominator_lcm, Rational};

/// Below this fraction of nonzero entries, sparse storage is chosen.
pub const SPARSE_DENSITY_THRESHOLD: f64 = 0.25;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Storage {
    Dense,
    Sparse,
}

#[derive(Clone, Debug, PartialEq)]
enum Entries {
    /// Row-major.
    Dense(Vec<Rational>),
    /// Per row, nonzero entries sorted by column.
    Sparse(Vec<Vec<(usize, Rational)>>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Entries,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: Entries::Sparse(vec![Vec::new(); rows]),
        }
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n).map(|i| vec![(i, Rational::one())]).collect();
        Self::from_sparse_rows(n, rows)
    }

    /// Builds from dense rows; storage is picked from the density.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let sparse = rows
            .into_iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged rows");
                r.into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        Self::from_sparse_rows(cols, sparse)
    }

    /// Builds from `(column, value)` lists; duplicate columns are summed.
    pub fn from_sparse_rows(cols: usize, rows: Vec<Vec<(usize, Rational)>>) -> Self {
        let rows: Vec<Vec<(usize, Rational)>> = rows
            .into_iter()
            .map(|r| {
                let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                for (c, v) in r {
                    assert!(c < cols, "column {c} out of bounds");
                    *acc.entry(c).or_insert_with(Rational::zero) += v;
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        let m = Self {
            rows: rows.len(),
            cols,
            entries: Entries::Sparse(rows),
        };
        let mode = if m.density() < SPARSE_DENSITY_THRESHOLD {
            Storage::Sparse
        } else {
            Storage::Dense
        };
        m.with_storage(mode)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn storage(&self) -> Storage {
        match self.entries {
            Entries::Dense(_) => Storage::Dense,
            Entries::Sparse(_) => Storage::Sparse,
        }
    }

    pub fn nonzeros(&self) -> usize {
        match &self.entries {
            Entries::Dense(v) => v.iter().filter(|x| !x.is_zero()).count(),
            Entries::Sparse(r) => r.iter().map(Vec::len).sum(),
        }
    }

    pub fn density(&self) -> f64 {
        let total = self.rows * self.cols;
        if total == 0 {
            return 0.0;
        }
        self.nonzeros() as f64 / total as f64
    }

    /// Converts to the requested storage mode.
    pub fn with_storage(self, mode: Storage) -> Self {
        let Self {
            rows,
            cols,
            entries,
        } = self;
        let entries = match (entries, mode) {
            (e @ Entries::Dense(_), Storage::Dense) | (e @ Entries::Sparse(_), Storage::Sparse) => {
                e
            }
            (Entries::Dense(v), Storage::Sparse) => Entries::Sparse(
                v.chunks(cols.max(1))
                    .take(rows)
                    .map(|r| {
                        r.iter()
                            .cloned()
                            .enumerate()
                            .filter(|(_, x)| !x.is_zero())
                            .collect()
                    })
                    .collect(),
            ),
            (Entries::Sparse(r), Storage::Dense) => {
                let mut v = vec![Rational::zero(); rows * cols];
                for (i, row) in r.into_iter().enumerate() {
                    for (j, x) in row {
                        v[i * cols + j] = x;
                    }
                }
                Entries::Dense(v)
            }
        };
        Self {
            rows,
            cols,
            entries,
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        match &self.entries {
            Entries::Dense(v) => v[r * self.cols + c].clone(),
            Entries::Sparse(rows) => rows[r]
                .binary_search_by_key(&c, |(j, _)| *j)
                .map(|k| rows[r][k].1.clone())
                .unwrap_or_else(|_| Rational::zero()),
        }
    }

    /// Nonzero entries of row `r` as `(column, value)`.
    pub fn row_entries(&self, r: usize) -> Vec<(usize, Rational)> {
        match &self.entries {
            Entries::Dense(v) => v[r * self.cols..(r + 1) * self.cols]
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(j, x)| (j, x.clone()))
                .collect(),
            Entries::Sparse(rows) => rows[r].clone(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut cols: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.cols];
        for i in 0..self.rows {
            for (j, x) in self.row_entries(i) {
                cols[j].push((i, x));
            }
        }
        Self::from_sparse_rows(self.rows, cols)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row_entries(i)
                    .iter()
                    .fold(Rational::zero(), |acc, (j, x)| acc + x * &v[*j])
            })
            .collect()
    }

    /// Rows scaled to primitive integer vectors.
    fn integer_rows(&self) -> Vec<Vec<(usize, BigInt)>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row_entries(i);
                let l = denominator_lcm(row.iter().map(|(_, x)| x));
                let ints: Vec<(usize, BigInt)> = row
                    .into_iter()
                    .map(|(j, x)| (j, (x * Rational::from_integer(l.clone())).to_integer()))
                    .collect();
                make_primitive(ints)
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankKernel {
    pub rank: usize,
    pub kernel_dim: usize,
    /// One vector per non-pivot column, in increasing column order.
    pub kernel_basis: Vec<Vec<Rational>>,
}

/// Reduced row echelon form: nonzero rows with leading entry one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub pivots: Vec<usize>,
    pub rows: Vec<Vec<(usize, Rational)>>,
    pub cols: usize,
}

/// Rank of `m`.
pub fn rank(m: &RationalMatrix) -> usize {
    match m.storage() {
        Storage::Dense => bareiss(m, false).1.len(),
        Storage::Sparse => sparse_echelon(m).len(),
    }
}

/// Number of rows minus the rank.
pub fn cokernel_dim(m: &RationalMatrix) -> usize {
    m.rows() - rank(m)
}

pub fn rref(m: &RationalMatrix) -> Rref {
    let rows = match m.storage() {
        Storage::Dense => {
            let (a, pivots) = bareiss(m, true);
            pivots
                .iter()
                .enumerate()
                .map(|(k, &c)| {
                    let p = &a[k][c];
                    a[k].iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(j, x)| (j, Rational::new(x.clone(), p.clone())))
                        .collect()
                })
                .collect()
        }
        Storage::Sparse => back_substitute(sparse_echelon(m)),
    };
    let pivots = rows
        .iter()
        .map(|r: &Vec<(usize, Rational)>| r[0].0)
        .collect();
    Rref {
        pivots,
        rows,
        cols: m.cols(),
    }
}

pub fn rank_and_kernel(m: &RationalMatrix) -> RankKernel {
    let r = rref(m);
    let mut is_pivot = vec![false; m.cols()];
    for &p in &r.pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..m.cols()).filter(|&j| !is_pivot[j]) {
        let mut v = vec![Rational::zero(); m.cols()];
        v[free] = Rational::one();
        for (k, row) in r.rows.iter().enumerate() {
            if let Ok(pos) = row.binary_search_by_key(&free, |(j, _)| *j) {
                v[r.pivots[k]] = -row[pos].1.clone();
            }
        }
        basis.push(v);
    }
    RankKernel {
        rank: r.pivots.len(),
        kernel_dim: basis.len(),
        kernel_basis: basis,
    }
}

/// Fraction-free elimination on a dense integer copy. Returns the reduced
/// array and the pivot columns; pivot `k` sits in row `k`. With `jordan`
/// the rows above each pivot are cleared as well.
fn bareiss(m: &RationalMatrix, jordan: bool) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let (nr, nc) = (m.rows(), m.cols());
    let mut a: Vec<Vec<BigInt>> = m
        .integer_rows()
        .into_iter()
        .map(|row| {
            let mut dense = vec![BigInt::zero(); nc];
            for (j, x) in row {
                dense[j] = x;
            }
            dense
        })
        .collect();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        // Leftmost column with a nonzero entry; smallest bit length wins, then row index.
        let Some(best) = (r..nr)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| (a[i][c].bits(), i))
        else {
            continue;
        };
        a.swap(r, best);
        let pivot_row = a[r].clone();
        let p = pivot_row[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || (!jordan && i < r) {
                continue;
            }
            let factor = row[c].clone();
            let start = if jordan { 0 } else { c };
            for j in start..nc {
                if j == c {
                    continue;
                }
                let v = &p * &row[j] - &factor * &pivot_row[j];
                let (q, rem) = v.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                row[j] = q;
            }
            row[c] = BigInt::zero();
        }
        prev = p;
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

type IntRow = Vec<(usize, BigInt)>;

/// Incremental echelon form of the rows, keyed by leading column.
fn sparse_echelon(m: &RationalMatrix) -> BTreeMap<usize, IntRow> {
    let mut pivots: BTreeMap<usize, IntRow> = BTreeMap::new();
    for mut row in m.integer_rows() {
        while let Some(&(lead, _)) = row.first() {
            match pivots.get(&lead) {
                Some(prow) => row = eliminate(&row, prow, lead),
                None => {
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    pivots
}

/// Clears column `col` of `row` using `pivot` (whose entry there is nonzero);
/// the result is primitive.
fn eliminate(row: &IntRow, pivot: &IntRow, col: usize) -> IntRow {
    let a = entry(row, col).expect("row has an entry at col");
    let p = entry(pivot, col).expect("pivot has an entry at col");
    let g = a.gcd(p);
    let (ra, rp) = (a / &g, p / &g);
    // rp * row - ra * pivot
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j == pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_piv = i == row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        let (c, v) = if take_row {
            let r = (row[i].0, &rp * &row[i].1);
            i += 1;
            r
        } else if take_piv {
            let r = (pivot[j].0, -(&ra * &pivot[j].1));
            j += 1;
            r
        } else {
            let r = (row[i].0, &rp * &row[i].1 - &ra * &pivot[j].1);
            i += 1;
            j += 1;
            r
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    make_primitive(out)
}

fn entry(row: &IntRow, col: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |(j, _)| *j)
        .ok()
        .map(|k| &row[k].1)
}

fn make_primitive(mut row: IntRow) -> IntRow {
    let g = row.iter().fold(BigInt::zero(), |g, (_, x)| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for (_, x) in &mut row {
            *x /= &g;
        }
    }
    if row.first().is_some_and(|(_, x)| x.is_negative()) {
        for (_, x) in &mut row {
            *x = -&*x;
        }
    }
    row
}

/// Turns an echelon form into the reduced row echelon form.
fn back_substitute(mut pivots: BTreeMap<usize, IntRow>) -> Vec<Vec<(usize, Rational)>> {
    let cols: Vec<usize> = pivots.keys().copied().collect();
    for (k, &c) in cols.iter().enumerate().rev() {
        let mut row = pivots.remove(&c).expect("pivot present");
        for &later in &cols[k + 1..] {
            if entry(&row, later).is_some() {
                row = eliminate(&row, &pivots[&later], later);
            }
        }
        pivots.insert(c, row);
    }
    pivots
        .into_values()
        .map(|row| {
            let lead = row[0].1.clone();
            row.into_iter()
                .map(|(j, x)| (j, Rational::new(x, lead.clone())))
                .collect()
        })
        .collect()
}

/// Primes in `[2^31 − 2^20, 2^31)`, largest first.
fn word_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        const HI: u64 = 1 << 31;
        const LO: u64 = HI - (1 << 20);
        let limit = 46_341u64;
        let mut small = vec![true; limit as usize + 1];
        let mut composite = vec![false; (HI - LO) as usize];
        for i in 2..=limit {
            if !small[i as usize] {
                continue;
            }
            for j in (i * i..=limit).step_by(i as usize) {
                small[j as usize] = false;
            }
            for k in (LO.div_ceil(i) * i..HI).step_by(i as usize) {
                composite[(k - LO) as usize] = true;
            }
        }
        (LO..HI)
            .rev()
            .filter(|&n| !composite[(n - LO) as usize])
            .collect()
    })
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn rank_mod(rows: &[IntRow], cols: usize, p: u64) -> usize {
    let modulus = BigInt::from(p);
    let mut echelon: Vec<Option<Vec<u64>>> = vec![None; cols];
    let mut rank = 0;
    for row in rows {
        let mut v = vec![0u64; cols];
        for (j, x) in row {
            v[*j] = x.mod_floor(&modulus).to_u64().expect("residue fits in u64");
        }
        let mut lead = None;
        for c in 0..cols {
            if v[c] == 0 {
                continue;
            }
            let Some(e) = &echelon[c] else {
                lead = Some(c);
                break;
            };
            let f = v[c];
            for j in c..cols {
                if e[j] != 0 {
                    v[j] = (v[j] + p - f * e[j] % p) % p;
                }
            }
        }
        if let Some(c) = lead {
            let inv = pow_mod(v[c], p - 2, p);
            for x in &mut v[c..] {
                *x = *x * inv % p;
            }
            echelon[c] = Some(v);
            rank += 1;
            if rank == cols {
                break;
            }
        }
    }
    rank
}

/// Exact rank from ranks modulo word-sized primes.
///
/// Each modular rank is a lower bound. A nonzero minor of maximal size is at
/// most `2^h` in absolute value, `h` from Hadamard's bound, so it is divisible
/// by fewer than `h/30 + 1` of the primes used; the maximum over that many
/// primes is therefore the rank over the rationals. Falls back to [`rank`]
/// when the bound needs more primes than are tabulated.
pub fn rank_multimodular(m: &RationalMatrix) -> usize {
    let rows: Vec<IntRow> = m
        .integer_rows()
        .into_iter()
        .filter(|r| !r.is_empty())
        .collect();
    let full = rows.len().min(m.cols());
    let primes = word_primes();
    let first = rank_mod(&rows, m.cols(), primes[0]);
    if first == full {
        return first;
    }
    let mut bits: Vec<u64> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|(_, x)| x * x)
                .sum::<BigInt>()
                .bits()
                .div_ceil(2)
        })
        .collect();
    bits.sort_unstable_by(|a, b| b.cmp(a));
    let needed = (bits.iter().take(full).sum::<u64>() / 30 + 1) as usize;
    if needed > primes.len() {
        return rank(m);
    }
    primes[1..needed]
        .par_iter()
        .map(|&p| rank_mod(&rows, m.cols(), p))
        .max()
        .unwrap_or(0)
        .max(first)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn mat(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    fn both(m: &RationalMatrix) -> [RationalMatrix; 2] {
        [
            m.clone().with_storage(Storage::Dense),
            m.clone().with_storage(Storage::Sparse),
        ]
    }

    #[test]
    fn identity_has_full_rank() {
        for m in both(&RationalMatrix::identity(2)) {
            let rk = rank_and_kernel(&m);
            assert_eq!((rk.rank, rk.kernel_dim), (2, 0));
        }
        for m in both(&RationalMatrix::identity(3)) {
            assert_eq!(cokernel_dim(&m), 0);
        }
    }

    #[test]
    fn single_row_kernel() {
        for m in both(&mat(&[&[1, 1]])) {
            let rk = rank_and_kernel(&m);
            assert_eq!((rk.rank, rk.kernel_dim), (1, 1));
            assert_eq!(rk.kernel_basis, vec![vec![int(-1), int(1)]]);
        }
    }

    #[test]
    fn zero_column_cokernel() {
        let m = RationalMatrix::zeros(3, 1);
        assert_eq!(cokernel_dim(&m), 3);
        assert_eq!(rank(&m.clone().with_storage(Storage::Dense)), 0);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = mat(&[&[2, 4, -2, 0], &[1, 2, 0, 3], &[3, 6, -2, 3]]);
        for m in both(&m) {
            let rk = rank_and_kernel(&m);
            assert_eq!(rk.rank, 2);
            for v in &rk.kernel_basis {
                assert!(m.mul_vec(v).iter().all(Zero::is_zero));
            }
        }
    }

    #[test]
    fn rational_entries() {
        let m = RationalMatrix::from_rows(vec![
            vec![crate::poly::rat(1, 2), crate::poly::rat(1, 3)],
            vec![crate::poly::rat(3, 2), int(1)],
        ]);
        for m in both(&m) {
            assert_eq!(rank(&m), 1);
        }
    }
}
