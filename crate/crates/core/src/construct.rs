//! Realizing permutations.
//!
//! A prefix that passes (D) and (S) up to `N` is realized, on `1..=N`, by any
//! permutation with `b_n = D_n(a) / n` cycles of length `n`. The cycle type is
//! the primary output since the counts are often far too large to lay out.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::numtheory::divisors;
use crate::realizability::{check_realizable, orbit_counts};
use crate::sequences::Seq;
use crate::{Error, Result};

/// Default ceiling on the number of points in [`explicit_permutation`].
pub const DEFAULT_POINT_CAP: usize = 1_000_000;

/// Cycle counts by length, for lengths up to a horizon. Zero counts are not
/// stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CycleType {
    horizon: usize,
    counts: BTreeMap<usize, BigUint>,
}

impl CycleType {
    /// Builds a cycle type from `(length, count)` pairs. Lengths must be in
    /// `1..=horizon`; repeated lengths add up.
    pub fn new(horizon: usize, pairs: impl IntoIterator<Item = (usize, BigUint)>) -> Result<Self> {
        let mut counts = BTreeMap::new();
        for (len, count) in pairs {
            if len == 0 {
                return Err(Error::ZeroIndex);
            }
            if len > horizon {
                return Err(Error::InsufficientTerms { required: len, available: horizon });
            }
            if !count.is_zero() {
                *counts.entry(len).or_insert_with(BigUint::zero) += count;
            }
        }
        Ok(CycleType { horizon, counts })
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    /// Number of cycles of length `len`.
    pub fn count(&self, len: usize) -> BigUint {
        self.counts.get(&len).cloned().unwrap_or_default()
    }

    /// Non-zero `(length, count)` entries by ascending length.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigUint)> {
        self.counts.iter().map(|(&l, c)| (l, c))
    }

    /// `sum n * b_n`.
    pub fn total_points(&self) -> BigUint {
        self.iter().map(|(l, c)| c * BigUint::from(l)).sum()
    }

    /// Points fixed by the `n`-th iterate: `sum_{d | n} d * b_d`.
    ///
    /// Lengths above the horizon are unknown, so for `n` beyond it this is
    /// only a lower bound.
    pub fn fixed_points(&self, n: usize) -> Result<BigUint> {
        Ok(divisors(n)?.into_iter().map(|d| self.count(d) * BigUint::from(d)).sum())
    }
}

pub fn realize_cycle_type(a: &Seq, horizon: usize) -> Result<CycleType> {
    let report = check_realizable(a, horizon)?;
    if let Some(failure) = report.first_failure {
        return Err(Error::NotRealizable(failure));
    }
    let counts = orbit_counts(a, horizon)?
        .to_naturals()
        .expect("consistent prefix has natural orbit counts");
    let pairs = counts
        .into_iter()
        .enumerate()
        .map(|(i, b)| (i + 1, b.to_biguint().expect("non-negative")));
    CycleType::new(horizon, pairs)
}

/// True iff `fixed_points(ct, n) == a_n` for every `n <= N`.
pub fn verify_realization(ct: &CycleType, a: &Seq, horizon: usize) -> bool {
    if horizon > a.len() {
        return false;
    }
    (1..=horizon).all(|n| match ct.fixed_points(n) {
        Ok(f) => &BigInt::from(f) == a.term(n).expect("n <= len"),
        Err(_) => false,
    })
}

/// Lays out a permutation of `0..total` with the given cycle type.
///
/// `perm[x]` is the image of `x`. Cycles appear in ascending length, each on
/// consecutive labels.
pub fn explicit_permutation(ct: &CycleType, cap: usize) -> Result<Vec<usize>> {
    let total = ct.total_points();
    let size = match total.to_usize() {
        Some(s) if s <= cap => s,
        _ => return Err(Error::PointCapExceeded { total, cap }),
    };
    let mut perm = Vec::with_capacity(size);
    for (len, count) in ct.iter() {
        let count = count.to_usize().expect("bounded by total");
        for _ in 0..count {
            let start = perm.len();
            perm.extend((1..len).map(|j| start + j));
            perm.push(start);
        }
    }
    debug_assert_eq!(perm.len(), size);
    Ok(perm)
}
