use std::fmt;

/// Exponents of a monomial, one entry per ring variable.
///
/// The derived ordering is plain lexicographic on the entries and only serves
/// as a map key; use [`MonomialOrder`](super::MonomialOrder) for term orders.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Box<[u32]>);

impl ExponentVector {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents.into_boxed_slice())
    }

    /// The monomial `1` in `nvars` variables.
    pub fn zero(nvars: usize) -> Self {
        Self(vec![0; nvars].into_boxed_slice())
    }

    /// The variable `x_i` in `nvars` variables.
    pub fn unit(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::new(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// Total degree.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `Σ e_i w_i` for integer weights.
    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| u64::from(e) * u64::from(w))
            .sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// `Some(i)` if this is a pure power `x_i^k` with `k > 0`.
    pub fn pure_power_variable(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        if !other.divides(self) {
            return None;
        }
        Some(Self(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Self(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// Removes the entry at `i` (used when dehomogenizing).
    pub fn without(&self, i: usize) -> Self {
        Self(
            self.0
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &e)| e)
                .collect(),
        )
    }

    /// All exponent vectors of total degree `k` in `nvars` variables, in
    /// lexicographically decreasing order (`x_0^k` first).
    pub fn all_of_degree(nvars: usize, k: u32) -> Vec<Self> {
        let mut out = Vec::new();
        if nvars == 0 {
            if k == 0 {
                out.push(Self::zero(0));
            }
            return out;
        }
        let mut current = vec![0u32; nvars];
        fill_degree(&mut current, 0, k, &mut out);
        out
    }
}

fn fill_degree(current: &mut [u32], pos: usize, remaining: u32, out: &mut Vec<ExponentVector>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(ExponentVector::new(current.to_vec()));
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e;
        fill_degree(current, pos + 1, remaining - e, out);
    }
    current[pos] = 0;
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        Self::new(v)
    }
}

impl<const N: usize> From<[u32; N]> for ExponentVector {
    fn from(v: [u32; N]) -> Self {
        Self::new(v.to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_enumeration_counts() {
        assert_eq!(ExponentVector::all_of_degree(3, 2).len(), 6);
        assert_eq!(ExponentVector::all_of_degree(4, 4).len(), 35);
        assert_eq!(ExponentVector::all_of_degree(1, 5).len(), 1);
        let first = &ExponentVector::all_of_degree(3, 2)[0];
        assert_eq!(first.as_slice(), &[2, 0, 0]);
    }

    #[test]
    fn divisibility() {
        let a = ExponentVector::from([1, 2, 0]);
        let b = ExponentVector::from([2, 2, 1]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(b.checked_div(&a).unwrap().as_slice(), &[1, 0, 1]);
        assert_eq!(
            a.lcm(&ExponentVector::from([0, 3, 1])).as_slice(),
            &[1, 3, 1]
        );
        assert_eq!(
            ExponentVector::from([0, 4, 0]).pure_power_variable(),
            Some(1)
        );
        assert_eq!(a.pure_power_variable(), None);
    }
}
