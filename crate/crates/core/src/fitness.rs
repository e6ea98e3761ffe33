//! Fitness vectors and the componentwise dominance order on them.

use smallvec::SmallVec;

use crate::error::DimensionMismatch;

/// A length-`m` vector of non-negative integer objective values. Inline
/// storage covers up to eight objectives without heap allocation.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FitnessVector(SmallVec<[u32; 8]>);

impl FitnessVector {
    pub fn new(values: impl IntoIterator<Item = u32>) -> Self {
        FitnessVector(values.into_iter().collect())
    }

    pub fn from_slice(values: &[u32]) -> Self {
        FitnessVector(SmallVec::from_slice(values))
    }

    /// Number of objectives `m`.
    pub fn m(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().map(|&v| v as u64).sum()
    }

    pub(crate) fn clear(&mut self) {
        self.0.clear();
    }

    pub(crate) fn push(&mut self, v: u32) {
        self.0.push(v);
    }

    /// Dominance relation of `self` over `other`; panics on mismatched `m`.
    pub fn dominance(&self, other: &FitnessVector) -> Dominance {
        self.try_dominance(other).expect("mismatched objective counts")
    }

    pub fn try_dominance(&self, other: &FitnessVector) -> Result<Dominance, DimensionMismatch> {
        compare(self, other)
    }

    /// `self` >= `other` componentwise (strict dominance or equality).
    pub fn weakly_dominates(&self, other: &FitnessVector) -> bool {
        self.dominance(other).is_weak_dominance()
    }
}

impl std::ops::Index<usize> for FitnessVector {
    type Output = u32;
    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

impl std::fmt::Display for FitnessVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// The relation of an ordered pair of fitness vectors. Exactly one variant
/// holds for any pair; weak dominance is `StrictlyDominates` or `Equal`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dominance {
    StrictlyDominates,
    Equal,
    StrictlyDominatedBy,
    Incomparable,
}

impl Dominance {
    /// True when the left vector weakly dominates the right one.
    pub fn is_weak_dominance(self) -> bool {
        matches!(self, Dominance::StrictlyDominates | Dominance::Equal)
    }

    /// True when the left vector is weakly dominated by the right one.
    pub fn is_weakly_dominated(self) -> bool {
        matches!(self, Dominance::StrictlyDominatedBy | Dominance::Equal)
    }

    /// The relation seen from the other side of the pair.
    pub fn reversed(self) -> Dominance {
        match self {
            Dominance::StrictlyDominates => Dominance::StrictlyDominatedBy,
            Dominance::StrictlyDominatedBy => Dominance::StrictlyDominates,
            other => other,
        }
    }
}

/// Componentwise comparison of two fitness vectors of the same length.
pub fn compare(u: &FitnessVector, v: &FitnessVector) -> Result<Dominance, DimensionMismatch> {
    if u.m() != v.m() {
        return Err(DimensionMismatch {
            left: u.m(),
            right: v.m(),
        });
    }
    Ok(compare_slices(u.values(), v.values()))
}

#[inline]
pub(crate) fn compare_slices(u: &[u32], v: &[u32]) -> Dominance {
    let mut all_ge = true;
    let mut all_le = true;
    for (&a, &b) in u.iter().zip(v) {
        if a < b {
            all_ge = false;
        }
        if a > b {
            all_le = false;
        }
        if !all_ge && !all_le {
            return Dominance::Incomparable;
        }
    }
    match (all_ge, all_le) {
        (true, true) => Dominance::Equal,
        (true, false) => Dominance::StrictlyDominates,
        (false, true) => Dominance::StrictlyDominatedBy,
        (false, false) => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fv(values: &[u32]) -> FitnessVector {
        FitnessVector::from_slice(values)
    }

    #[test]
    fn examples() {
        assert_eq!(fv(&[3, 2]).dominance(&fv(&[3, 2])), Dominance::Equal);
        assert_eq!(fv(&[4, 2]).dominance(&fv(&[3, 2])), Dominance::StrictlyDominates);
        assert_eq!(fv(&[4, 1]).dominance(&fv(&[3, 2])), Dominance::Incomparable);
        assert_eq!(fv(&[3, 2]).dominance(&fv(&[4, 2])), Dominance::StrictlyDominatedBy);
    }

    #[test]
    fn mismatched_dimensions_error() {
        let err = compare(&fv(&[1, 2]), &fv(&[1, 2, 3])).unwrap_err();
        assert_eq!(err, DimensionMismatch { left: 2, right: 3 });
    }

    fn vec_strategy() -> impl Strategy<Value = FitnessVector> {
        proptest::collection::vec(0u32..6, 3).prop_map(FitnessVector::new)
    }

    proptest! {
        #[test]
        fn antisymmetry(u in vec_strategy(), v in vec_strategy()) {
            let fwd = u.dominance(&v);
            let bwd = v.dominance(&u);
            prop_assert_eq!(fwd.reversed(), bwd);
            match fwd {
                Dominance::Equal => prop_assert_eq!(bwd, Dominance::Equal),
                Dominance::Incomparable => prop_assert_eq!(bwd, Dominance::Incomparable),
                Dominance::StrictlyDominates => prop_assert_eq!(bwd, Dominance::StrictlyDominatedBy),
                Dominance::StrictlyDominatedBy => prop_assert_eq!(bwd, Dominance::StrictlyDominates),
            }
        }

        #[test]
        fn weak_dominance_is_transitive(
            u in vec_strategy(),
            v in vec_strategy(),
            w in vec_strategy(),
        ) {
            if u.weakly_dominates(&v) && v.weakly_dominates(&w) {
                prop_assert!(u.weakly_dominates(&w));
            }
        }

        #[test]
        fn weak_dominance_matches_componentwise(u in vec_strategy(), v in vec_strategy()) {
            let expected = u.values().iter().zip(v.values()).all(|(a, b)| a >= b);
            prop_assert_eq!(u.weakly_dominates(&v), expected);
        }
    }
}
