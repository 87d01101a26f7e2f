//! Exact integer sets, sumsets and the structural predicates on consecutive gaps.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest admissible magnitude of an element. Pairwise sums and differences
/// of admissible elements never overflow `i64`.
pub const MAX_ABS: i64 = 1 << 62;

#[inline]
pub(crate) fn check_range(x: i64) -> Result<i64> {
    if x.checked_abs().is_none_or(|a| a > MAX_ABS) {
        Err(Error::Overflow)
    } else {
        Ok(x)
    }
}

/// A finite, strictly increasing sequence of integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct GroundSet(Vec<i64>);

impl GroundSet {
    /// Sorts `values` and builds the set. Duplicates are an error, not merged.
    pub fn new(values: impl Into<Vec<i64>>) -> Result<Self> {
        let mut values = values.into();
        if values.is_empty() {
            return Err(Error::Empty);
        }
        for &v in &values {
            check_range(v)?;
        }
        values.sort_unstable();
        if let Some(w) = values.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateElement(w[0]));
        }
        Ok(GroundSet(values))
    }

    /// Builds a set from values that are already sorted and deduplicated.
    pub(crate) fn from_sorted(values: Vec<i64>) -> Result<Self> {
        debug_assert!(values.windows(2).all(|w| w[0] < w[1]));
        match (values.first(), values.last()) {
            (Some(&lo), Some(&hi)) => {
                check_range(lo)?;
                check_range(hi)?;
                Ok(GroundSet(values))
            }
            _ => Err(Error::Empty),
        }
    }

    /// Sorts and deduplicates; used for sets produced by set arithmetic.
    pub(crate) fn collect_dedup(mut values: Vec<i64>) -> Result<Self> {
        values.sort_unstable();
        values.dedup();
        Self::from_sorted(values)
    }

    /// The interval `{lo, lo+1, ..., hi}`.
    pub fn interval(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::Empty);
        }
        check_range(lo)?;
        check_range(hi)?;
        Self::from_sorted((lo..=hi).collect())
    }

    pub fn elements(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false: a `GroundSet` holds at least one element.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min(&self) -> i64 {
        self.0[0]
    }

    pub fn max(&self) -> i64 {
        self.0[self.0.len() - 1]
    }

    pub fn contains(&self, x: i64) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    /// Position of `x` in increasing order, if present.
    pub fn index_of(&self, x: i64) -> Option<usize> {
        self.0.binary_search(&x).ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.iter().copied()
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }
}

impl TryFrom<Vec<i64>> for GroundSet {
    type Error = Error;

    fn try_from(v: Vec<i64>) -> Result<Self> {
        GroundSet::new(v)
    }
}

impl From<GroundSet> for Vec<i64> {
    fn from(s: GroundSet) -> Self {
        s.0
    }
}

impl fmt::Display for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

/// Consecutive gaps `a_{i+1} - a_i` of a set, all positive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffProfile(Vec<i64>);

impl DiffProfile {
    pub fn gaps(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of distinct gap values.
    pub fn distinct_count(&self) -> usize {
        self.0.iter().collect::<HashSet<_>>().len()
    }
}

/// Alias of [`GroundSet::new`].
pub fn make_set(values: impl Into<Vec<i64>>) -> Result<GroundSet> {
    GroundSet::new(values)
}

/// `A + B = {a + b}`.
pub fn sumset(a: &GroundSet, b: &GroundSet) -> Result<GroundSet> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a.elements() {
        for &y in b.elements() {
            out.push(x.checked_add(y).ok_or(Error::Overflow)?);
        }
    }
    GroundSet::collect_dedup(out)
}

/// `A - B = {a - b}`.
pub fn difference_set(a: &GroundSet, b: &GroundSet) -> Result<GroundSet> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a.elements() {
        for &y in b.elements() {
            out.push(x.checked_sub(y).ok_or(Error::Overflow)?);
        }
    }
    GroundSet::collect_dedup(out)
}

/// Size of `A + B` without keeping the set around.
pub fn sumset_size(a: &GroundSet, b: &GroundSet) -> Result<usize> {
    sumset(a, b).map(|s| s.len())
}

pub fn consecutive_differences(a: &GroundSet) -> Result<DiffProfile> {
    if a.len() < 2 {
        return Err(Error::TooSmall {
            need: 2,
            got: a.len(),
        });
    }
    Ok(gaps_of(a))
}

fn gaps_of(a: &GroundSet) -> DiffProfile {
    DiffProfile(a.elements().windows(2).map(|w| w[1] - w[0]).collect())
}

/// Gaps strictly increasing. Sets with at most two elements are convex.
pub fn is_convex(a: &GroundSet) -> bool {
    gaps_of(a).0.windows(2).all(|w| w[0] < w[1])
}

/// All consecutive gaps pairwise distinct. Vacuously true for `|A| <= 2`.
pub fn has_distinct_consecutive_differences(a: &GroundSet) -> bool {
    let gaps = gaps_of(a);
    gaps.distinct_count() == gaps.len()
}

/// Whether the pairs `(d_i, d'_i)` of consecutive gaps of `a` and `a2` are
/// pairwise distinct.
pub fn has_distinct_pairs(a: &GroundSet, a2: &GroundSet) -> Result<bool> {
    if a.len() != a2.len() {
        return Err(Error::SizeMismatch {
            left: a.len(),
            right: a2.len(),
        });
    }
    let g1 = gaps_of(a);
    let g2 = gaps_of(a2);
    let pairs: HashSet<(i64, i64)> = g1.0.iter().copied().zip(g2.0.iter().copied()).collect();
    Ok(pairs.len() == g1.len())
}

/// `{lambda * a + mu}`, re-sorted when `lambda < 0`.
pub fn dilate_translate(a: &GroundSet, lambda: i64, mu: i64) -> Result<GroundSet> {
    if lambda == 0 {
        return Err(Error::InvalidParameter(
            "dilation factor must be nonzero".into(),
        ));
    }
    let mut out = Vec::with_capacity(a.len());
    for &x in a.elements() {
        let y = lambda
            .checked_mul(x)
            .and_then(|v| v.checked_add(mu))
            .ok_or(Error::Overflow)?;
        out.push(check_range(y)?);
    }
    if lambda < 0 {
        out.reverse();
    }
    GroundSet::from_sorted(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[i64]) -> GroundSet {
        GroundSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn make_set_sorts_and_rejects() {
        assert_eq!(s(&[3, 1, 2]).elements(), &[1, 2, 3]);
        assert_eq!(GroundSet::new(vec![1, 1]), Err(Error::DuplicateElement(1)));
        assert_eq!(s(&[0]).elements(), &[0]);
        assert_eq!(GroundSet::new(Vec::<i64>::new()), Err(Error::Empty));
        assert_eq!(GroundSet::new(vec![MAX_ABS + 1]), Err(Error::Overflow));
        assert_eq!(GroundSet::new(vec![i64::MIN]), Err(Error::Overflow));
        assert!(GroundSet::new(vec![-MAX_ABS, MAX_ABS]).is_ok());
    }

    #[test]
    fn sumset_examples() {
        assert_eq!(
            sumset(&s(&[0, 1]), &s(&[0, 2])).unwrap().elements(),
            &[0, 1, 2, 3]
        );
        let ap = s(&[1, 2, 3]);
        assert_eq!(sumset(&ap, &ap).unwrap().elements(), &[2, 3, 4, 5, 6]);
        let sq = s(&[1, 4, 9]);
        assert_eq!(sumset(&sq, &sq).unwrap().elements(), &[2, 5, 8, 10, 13, 18]);
    }

    #[test]
    fn sumset_overflow() {
        let big = s(&[MAX_ABS]);
        assert_eq!(sumset(&big, &big), Err(Error::Overflow));
        let neg = s(&[-MAX_ABS]);
        assert_eq!(difference_set(&big, &neg), Err(Error::Overflow));
    }

    #[test]
    fn difference_set_examples() {
        let a = s(&[0, 1]);
        assert_eq!(difference_set(&a, &a).unwrap().elements(), &[-1, 0, 1]);
        let sidon = s(&[0, 1, 3]);
        let d = difference_set(&sidon, &sidon).unwrap();
        assert_eq!(d.elements(), &[-3, -2, -1, 0, 1, 2, 3]);
        assert_eq!(d.len(), 3 * 2 + 1);
    }

    #[test]
    fn gaps_examples() {
        let a = s(&[7, 15, 24, 28, 38, 43]);
        assert_eq!(
            consecutive_differences(&a).unwrap().gaps(),
            &[8, 9, 4, 10, 5]
        );
        assert_eq!(
            consecutive_differences(&s(&[1, 2, 3])).unwrap().gaps(),
            &[1, 1]
        );
        assert_eq!(
            consecutive_differences(&s(&[1, 4, 9, 16])).unwrap().gaps(),
            &[3, 5, 7]
        );
        assert_eq!(
            consecutive_differences(&s(&[5])),
            Err(Error::TooSmall { need: 2, got: 1 })
        );
    }

    #[test]
    fn predicates() {
        assert!(is_convex(&s(&[1, 4, 9, 16, 25])));
        assert!(!is_convex(&s(&[1, 2, 3, 4])));
        assert!(is_convex(&s(&[0, 1])));
        assert!(is_convex(&s(&[0])));

        assert!(has_distinct_consecutive_differences(&s(&[
            7, 15, 24, 28, 38, 43
        ])));
        assert!(!has_distinct_consecutive_differences(&s(&[0, 1, 2])));
        assert!(has_distinct_consecutive_differences(&s(&[3, 9])));

        assert!(has_distinct_pairs(&s(&[1, 2, 3, 4]), &s(&[1, 4, 9, 16])).unwrap());
        assert!(!has_distinct_pairs(&s(&[0, 1, 2]), &s(&[0, 1, 2])).unwrap());
        assert_eq!(
            has_distinct_pairs(&s(&[0, 1]), &s(&[0, 1, 2])),
            Err(Error::SizeMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn dilate_translate_examples() {
        let a = s(&[1, 2, 3]);
        assert_eq!(dilate_translate(&a, 2, 1).unwrap().elements(), &[3, 5, 7]);
        assert_eq!(
            dilate_translate(&a, -1, 0).unwrap().elements(),
            &[-3, -2, -1]
        );
        assert_eq!(dilate_translate(&a, 1, 0).unwrap(), a);
        assert!(dilate_translate(&a, 0, 0).is_err());
        assert_eq!(dilate_translate(&s(&[MAX_ABS]), 2, 0), Err(Error::Overflow));
    }

    #[test]
    fn serde_validates() {
        let a: GroundSet = serde_json::from_str("[3,1,2]").unwrap();
        assert_eq!(a.elements(), &[1, 2, 3]);
        assert!(serde_json::from_str::<GroundSet>("[1,1]").is_err());
        assert_eq!(serde_json::to_string(&a).unwrap(), "[1,2,3]");
    }
}
