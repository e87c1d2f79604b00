//! Localization at primes.
//!
//! The `p`-part of a positive sequence replaces each term by the exact power
//! of `p` dividing it. A sequence whose `p`-parts are realizable for every
//! prime is itself realizable, because the product of realizable sequences is
//! realizable. Only primes dividing some term up to the horizon can fail, so
//! the everywhere-local scan covers that finite support.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Pow, Signed};

use crate::numtheory::{is_prime, padic_valuation, prime_divisors, primes_upto};
use crate::realizability::{check_realizable, Failure, RealizabilityReport};
use crate::sequences::Seq;
use crate::{Error, Result};

/// Trial-division ceiling used when collecting support primes.
pub const TRIAL_DIVISION_LIMIT: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalReport {
    pub prime: u64,
    pub p_parts: Seq,
    pub report: RealizabilityReport,
}

impl LocalReport {
    pub fn is_consistent(&self) -> bool {
        self.report.is_consistent()
    }
}

fn require_positive(a: &Seq, horizon: usize) -> Result<()> {
    match a.terms()[..horizon].iter().position(|t| !t.is_positive()) {
        Some(i) => Err(Error::NonPositiveTerm { index: i + 1 }),
        None => Ok(()),
    }
}

/// Term `n` becomes `p^(v_p(a_n))`.
pub fn p_part(a: &Seq, p: u64) -> Result<Seq> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    require_positive(a, a.len())?;
    let base = BigInt::from(p);
    let terms = a
        .terms()
        .iter()
        .map(|t| Ok(Pow::pow(&base, padic_valuation(t, p)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Seq::new(terms)?.with_label(format!("{}-part of {}", p, a.label())))
}

pub fn check_local(a: &Seq, p: u64, horizon: usize) -> Result<LocalReport> {
    let prefix = a.prefix(horizon)?;
    let p_parts = p_part(&prefix, p)?;
    let report = check_realizable(&p_parts, horizon)?;
    Ok(LocalReport { prime: p, p_parts, report })
}

/// Ascending primes dividing at least one of `a_1..a_N`.
///
/// Terms are factored by trial division up to [`TRIAL_DIVISION_LIMIT`]; a
/// larger cofactor must be a (probable) prime below `2^64`, otherwise the
/// term is reported as [`Error::IncompleteFactorization`].
pub fn support_primes(a: &Seq, horizon: usize) -> Result<Vec<u64>> {
    a.require(horizon)?;
    require_positive(a, horizon)?;
    let mut support = BTreeSet::new();
    for (i, t) in a.terms()[..horizon].iter().enumerate() {
        let magnitude = t.magnitude();
        let primes = prime_divisors(magnitude, TRIAL_DIVISION_LIMIT)
            .ok_or(Error::IncompleteFactorization { index: i + 1 })?;
        support.extend(primes);
    }
    Ok(support.into_iter().collect())
}

/// Local reports for every support prime up to the horizon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EverywhereLocal {
    pub horizon: usize,
    /// One report per support prime, ascending.
    pub reports: Vec<LocalReport>,
    /// Primes `<= N` outside the support. Their `p`-parts are all ones.
    pub trivial_primes: usize,
}

impl EverywhereLocal {
    pub fn is_consistent(&self) -> bool {
        self.reports.iter().all(LocalReport::is_consistent)
    }

    pub fn failing_primes(&self) -> Vec<u64> {
        self.reports.iter().filter(|r| !r.is_consistent()).map(|r| r.prime).collect()
    }

    /// The earliest failure across all primes, with the prime it occurs at.
    pub fn first_failure(&self) -> Option<(u64, Failure)> {
        self.reports
            .iter()
            .filter_map(|r| r.report.first_failure.map(|f| (r.prime, f)))
            .min_by_key(|(p, f)| (f.n, *p))
    }
}

pub fn check_everywhere_local(a: &Seq, horizon: usize) -> Result<EverywhereLocal> {
    let support = support_primes(a, horizon)?;
    let reports = support
        .iter()
        .map(|&p| check_local(a, p, horizon))
        .collect::<Result<Vec<_>>>()?;
    let trivial_primes =
        primes_upto(horizon as u64).primes().iter().filter(|p| !support.contains(p)).count();
    Ok(EverywhereLocal { horizon, reports, trivial_primes })
}
