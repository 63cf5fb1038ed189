//! Independent oracles: plain rational Gaussian elimination and brute-force
//! truncated quotient dimensions. Nothing here calls the library's linear
//! algebra or standard basis code.
#![allow(dead_code)]

use hodgering_core::poly::{ExponentVector, Polynomial, Rational};
use num_traits::Zero;
use rand::Rng;

/// Rank by textbook Gaussian elimination over the rationals.
pub fn naive_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let prow = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let factor = &row[c] / &prow[c];
                for (x, p) in row[c..].iter_mut().zip(&prow[c..]) {
                    *x -= &factor * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Every exponent vector of total degree below `n`.
pub fn monomials_below(nvars: usize, n: u32) -> Vec<ExponentVector> {
    (0..n)
        .flat_map(|k| ExponentVector::all_of_degree(nvars, k))
        .collect()
}

/// `dim Q[x]/(I + m^N)`, which equals the local quotient length once
/// `m^N ⊂ I` in the localization.
pub fn truncated_quotient_dim(gens: &[Polynomial], n: u32) -> usize {
    let nvars = gens[0].nvars();
    let basis = monomials_below(nvars, n);
    let index: std::collections::HashMap<&ExponentVector, usize> =
        basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for g in gens {
        for m in &basis {
            let mut row = vec![Rational::zero(); basis.len()];
            let mut any = false;
            for (e, c) in g.terms() {
                if let Some(&i) = index.get(&e.mul(m)) {
                    row[i] += c;
                    any = true;
                }
            }
            if any {
                rows.push(row);
            }
        }
    }
    basis.len() - naive_rank(rows)
}

pub fn random_matrix(
    rng: &mut impl Rng,
    rows: usize,
    cols: usize,
    density: f64,
    bound: i64,
) -> Vec<Vec<Rational>> {
    (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| {
                    if rng.gen_bool(density) {
                        Rational::new(
                            rng.gen_range(-bound..=bound).into(),
                            rng.gen_range(1..=3i64).into(),
                        )
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// A random invertible integer matrix: a product of unit triangular ones.
pub fn random_invertible(rng: &mut impl Rng, n: usize) -> Vec<Vec<Rational>> {
    let mut lower = vec![vec![Rational::zero(); n]; n];
    let mut upper = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                lower[i][j] = Rational::from_integer(1.into());
                upper[i][j] = Rational::from_integer(1.into());
            } else if i > j {
                lower[i][j] = Rational::from_integer(rng.gen_range(-3..=3i64).into());
            } else {
                upper[i][j] = Rational::from_integer(rng.gen_range(-3..=3i64).into());
            }
        }
    }
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| &lower[i][k] * &upper[k][j]).sum())
                .collect()
        })
        .collect()
}
