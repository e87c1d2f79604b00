//! Dold transforms, orbit counts and the (D)/(S) verdict.
//!
//! For a prefix `a_1..a_N` the Dold transform `D_n(a) = sum_{d | n} mu(n/d) a_d`
//! is `n` times the number of closed orbits of length `n` in any map realizing
//! `a`. The prefix is consistent with realizability exactly when every
//! `D_n(a)` with `n <= N` is divisible by `n` (condition D) and non-negative
//! (condition S). Passing only rules out counterexamples below the horizon.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::numtheory::{divisors, mobius};
use crate::sequences::Seq;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    /// `n | D_n(a)` fails.
    Dold,
    /// `D_n(a) >= 0` fails.
    Sign,
    /// Both fail at the same `n`.
    Both,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::Dold => "(D)",
            Condition::Sign => "(S)",
            Condition::Both => "(D) and (S)",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Failure {
    pub n: usize,
    pub condition: Condition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// No counterexample at any `n <= N`. This is not a proof of realizability.
    ConsistentUpTo,
    FailsDold,
    FailsSign,
    FailsBoth,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::ConsistentUpTo => "consistent-up-to-N",
            Verdict::FailsDold => "fails-D",
            Verdict::FailsSign => "fails-S",
            Verdict::FailsBoth => "fails-both",
        }
    }

    pub fn is_consistent(&self) -> bool {
        *self == Verdict::ConsistentUpTo
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of both conditions at a single `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    pub n: usize,
    pub dold_value: BigInt,
    /// Least non-negative residue of `dold_value` modulo `n`.
    pub dold_mod_n: BigInt,
    pub sign_ok: bool,
    /// `n` divides `dold_value`, i.e. `dold_mod_n == 0`.
    pub divisibility_ok: bool,
}

impl Record {
    fn new(n: usize, dold_value: BigInt) -> Self {
        let dold_mod_n = dold_value.mod_floor(&BigInt::from(n));
        let divisibility_ok = dold_mod_n.is_zero();
        let sign_ok = !dold_value.is_negative();
        Record { n, dold_value, dold_mod_n, sign_ok, divisibility_ok }
    }

    pub fn failure(&self) -> Option<Condition> {
        match (self.divisibility_ok, self.sign_ok) {
            (true, true) => None,
            (false, true) => Some(Condition::Dold),
            (true, false) => Some(Condition::Sign),
            (false, false) => Some(Condition::Both),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizabilityReport {
    pub horizon: usize,
    pub records: Vec<Record>,
    pub verdict: Verdict,
    /// Smallest failing `n`, with what failed there.
    pub first_failure: Option<Failure>,
}

impl RealizabilityReport {
    /// Assembles a report from per-`n` records, which must be sorted by `n`.
    pub fn from_records(horizon: usize, records: Vec<Record>) -> Self {
        debug_assert!(records.windows(2).all(|w| w[0].n < w[1].n));
        let first_failure = records
            .iter()
            .find_map(|r| r.failure().map(|condition| Failure { n: r.n, condition }));
        let any_d = records.iter().any(|r| !r.divisibility_ok);
        let any_s = records.iter().any(|r| !r.sign_ok);
        let verdict = match (any_d, any_s) {
            (false, false) => Verdict::ConsistentUpTo,
            (true, false) => Verdict::FailsDold,
            (false, true) => Verdict::FailsSign,
            (true, true) => Verdict::FailsBoth,
        };
        RealizabilityReport { horizon, records, verdict, first_failure }
    }

    pub fn is_consistent(&self) -> bool {
        self.verdict.is_consistent()
    }

    /// The verdict with `N` filled in, e.g. `consistent-up-to-50`.
    pub fn verdict_label(&self) -> String {
        match self.verdict {
            Verdict::ConsistentUpTo => format!("consistent-up-to-{}", self.horizon),
            v => v.as_str().to_string(),
        }
    }

    /// True when condition (D) holds at every `n <= N`, whatever the signs.
    pub fn passes_dold(&self) -> bool {
        self.records.iter().all(|r| r.divisibility_ok)
    }
}

/// `D_n(a) = sum_{d | n} mu(n/d) a_d`.
pub fn dold_transform(a: &Seq, n: usize) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::ZeroIndex);
    }
    a.require(n)?;
    let mut acc = BigInt::zero();
    for d in divisors(n)? {
        let term = a.term(d).expect("d <= n <= len");
        match mobius(n / d)? {
            1 => acc += term,
            -1 => acc -= term,
            _ => {}
        }
    }
    Ok(acc)
}

/// Exact orbit counts `b_n = D_n(a) / n` for `n = 1..=N`, 1-indexed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCounts(Vec<BigRational>);

impl OrbitCounts {
    pub fn get(&self, n: usize) -> Option<&BigRational> {
        n.checked_sub(1).and_then(|i| self.0.get(i))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[BigRational] {
        &self.0
    }

    /// The counts as integers, when every one is a non-negative integer.
    pub fn to_naturals(&self) -> Option<Vec<BigInt>> {
        self.0
            .iter()
            .map(|b| (b.is_integer() && !b.is_negative()).then(|| b.to_integer()))
            .collect()
    }
}

pub fn orbit_counts(a: &Seq, horizon: usize) -> Result<OrbitCounts> {
    a.require(horizon)?;
    (1..=horizon)
        .map(|n| Ok(BigRational::new(dold_transform(a, n)?, BigInt::from(n))))
        .collect::<Result<_>>()
        .map(OrbitCounts)
}

/// Checks (D) and (S) at every `n <= N`.
pub fn check_realizable(a: &Seq, horizon: usize) -> Result<RealizabilityReport> {
    if horizon == 0 {
        return Err(Error::ZeroHorizon);
    }
    a.require(horizon)?;
    a.require_non_negative(horizon)?;
    let records = (1..=horizon)
        .map(|n| Ok(Record::new(n, dold_transform(a, n)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(RealizabilityReport::from_records(horizon, records))
}

/// Whether `a_m | a_n` whenever `m | n <= N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DivisibilityOutcome {
    pub holds: bool,
    /// First `(m, n)` with `m | n` and `a_m` not dividing `a_n`, ordered by
    /// `n` then `m`.
    pub first_failure: Option<(usize, usize)>,
}

pub fn divisibility_check(a: &Seq, horizon: usize) -> Result<DivisibilityOutcome> {
    a.require(horizon)?;
    if let Some(i) = a.terms()[..horizon].iter().position(Zero::is_zero) {
        return Err(Error::ZeroTerm { index: i + 1 });
    }
    for n in 1..=horizon {
        let an = a.term(n).expect("n <= horizon");
        for m in divisors(n)? {
            if !an.is_multiple_of(a.term(m).expect("m <= n")) {
                return Ok(DivisibilityOutcome { holds: false, first_failure: Some((m, n)) });
            }
        }
    }
    Ok(DivisibilityOutcome { holds: true, first_failure: None })
}
