//! Monomial orders.
//!
//! Global orders have `1` as the smallest monomial and drive canonical
//! printing. Local orders have `1` as the largest monomial; they are the
//! ones used for standard bases in the localization at the origin.

use std::cmp::Ordering;

use super::ExponentVector;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Degree first, ties broken by reverse lexicographic comparison.
    GradedReverseLex(usize),
    /// Lower degree is larger; ties broken reverse lexicographically.
    NegativeGradedReverseLex(usize),
    /// Like `NegativeGradedReverseLex` with the degree replaced by a weighted
    /// degree with positive integer weights.
    NegativeWeightedReverseLex(Vec<u32>),
}

impl MonomialOrder {
    /// Local weighted order; all weights must be positive.
    pub fn local_weighted(weights: Vec<u32>) -> Self {
        assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
        MonomialOrder::NegativeWeightedReverseLex(weights)
    }

    pub fn nvars(&self) -> usize {
        match self {
            MonomialOrder::GradedReverseLex(n) | MonomialOrder::NegativeGradedReverseLex(n) => *n,
            MonomialOrder::NegativeWeightedReverseLex(w) => w.len(),
        }
    }

    pub fn is_local(&self) -> bool {
        !matches!(self, MonomialOrder::GradedReverseLex(_))
    }

    /// Integer weights of the (weighted) degree this order is graded by.
    pub fn weights(&self) -> Vec<u32> {
        match self {
            MonomialOrder::NegativeWeightedReverseLex(w) => w.clone(),
            _ => vec![1; self.nvars()],
        }
    }

    pub fn compare(&self, a: &ExponentVector, b: &ExponentVector) -> Ordering {
        let (da, db) = match self {
            MonomialOrder::NegativeWeightedReverseLex(w) => {
                (a.weighted_degree(w), b.weighted_degree(w))
            }
            _ => (u64::from(a.degree()), u64::from(b.degree())),
        };
        let by_degree = if self.is_local() {
            db.cmp(&da)
        } else {
            da.cmp(&db)
        };
        by_degree.then_with(|| revlex(a.as_slice(), b.as_slice()))
    }
}

/// Reverse lexicographic tie-break: the monomial with the smaller exponent in
/// the last differing variable is larger.
fn revlex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    #[test]
    fn global_one_is_smallest() {
        let o = MonomialOrder::GradedReverseLex(2);
        assert_eq!(o.compare(&ev(&[0, 0]), &ev(&[1, 0])), Ordering::Less);
        assert_eq!(o.compare(&ev(&[0, 0]), &ev(&[0, 1])), Ordering::Less);
        // x^2 > xy > y^2 in grevlex
        assert_eq!(o.compare(&ev(&[2, 0]), &ev(&[1, 1])), Ordering::Greater);
        assert_eq!(o.compare(&ev(&[1, 1]), &ev(&[0, 2])), Ordering::Greater);
    }

    #[test]
    fn local_one_is_largest() {
        let o = MonomialOrder::NegativeGradedReverseLex(3);
        for m in [ev(&[1, 0, 0]), ev(&[0, 0, 1]), ev(&[3, 1, 2])] {
            assert_eq!(o.compare(&ev(&[0, 0, 0]), &m), Ordering::Greater);
        }
        assert_eq!(
            o.compare(&ev(&[2, 0, 0]), &ev(&[0, 3, 0])),
            Ordering::Greater
        );
        assert_eq!(
            o.compare(&ev(&[2, 0, 0]), &ev(&[1, 1, 0])),
            Ordering::Greater
        );
    }

    #[test]
    fn weighted_local() {
        let o = MonomialOrder::local_weighted(vec![3, 2]);
        // x has weight 3, y^2 weight 4
        assert_eq!(o.compare(&ev(&[1, 0]), &ev(&[0, 2])), Ordering::Greater);
        assert_eq!(o.compare(&ev(&[0, 1]), &ev(&[1, 0])), Ordering::Greater);
    }
}
