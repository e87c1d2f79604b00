//! Operations on sequences that interact with realizability: sampling along a
//! time change `n -> h(n)`, raising terms to polynomial powers, scaling by a
//! constant, and measuring how far a sequence is from realizable.
//!
//! Sampling along `n -> n^k` and term-wise powers `a_n^(h(n))` with
//! `h` in `N[x]` both preserve realizability. Whether an arbitrary time change
//! does cannot be settled by finite checks, so [`time_change_evidence`] only
//! ever reports "no counterexample found" or a concrete counterexample.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::numtheory::factor;
use crate::realizability::{check_realizable, dold_transform, Failure, RealizabilityReport};
use crate::sequences::{LinearRecurrence, Seq};
use crate::{Error, Result};

/// A map `h: N -> N` used to sample `(a_{h(n)})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TimeChange {
    /// `n -> n^k`, `k >= 1`.
    Monomial(u32),
    /// `n -> table[n - 1]`, entries `>= 1`.
    Explicit(Vec<usize>),
}

impl TimeChange {
    pub fn monomial(k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidTimeChange("monomial exponent must be at least 1"));
        }
        Ok(TimeChange::Monomial(k))
    }

    pub fn explicit(table: Vec<usize>) -> Result<Self> {
        if table.is_empty() {
            return Err(Error::InvalidTimeChange("table is empty"));
        }
        if table.contains(&0) {
            return Err(Error::InvalidTimeChange("table values must be at least 1"));
        }
        Ok(TimeChange::Explicit(table))
    }

    /// Tabulates `n -> poly(n)` for `n = 1..=len`.
    pub fn from_polynomial(poly: &IntPolynomial, len: usize) -> Result<Self> {
        let table = (1..=len)
            .map(|n| {
                poly.eval(n as u64)
                    .and_then(|v| usize::try_from(v).ok())
                    .ok_or(Error::Overflow { index: n })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::explicit(table)
    }

    /// `h(n)` for `n >= 1`.
    pub fn at(&self, n: usize) -> Result<usize> {
        if n == 0 {
            return Err(Error::ZeroIndex);
        }
        match self {
            TimeChange::Monomial(k) => n.checked_pow(*k).ok_or(Error::Overflow { index: n }),
            TimeChange::Explicit(table) => table
                .get(n - 1)
                .copied()
                .ok_or(Error::InsufficientTerms { required: n, available: table.len() }),
        }
    }

    /// Source prefix length needed to sample `horizon` terms: `max h(n)`.
    pub fn required_source_len(&self, horizon: usize) -> Result<usize> {
        (1..=horizon).try_fold(0, |acc, n| Ok(acc.max(self.at(n)?)))
    }
}

/// A polynomial with non-negative integer coefficients `c_0 + c_1 x + ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coefficients: Vec<u64>,
}

impl IntPolynomial {
    pub fn new(coefficients: Vec<u64>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::InvalidTimeChange("polynomial needs at least one coefficient"));
        }
        Ok(IntPolynomial { coefficients })
    }

    pub fn constant(c: u64) -> Self {
        IntPolynomial { coefficients: alloc::vec![c] }
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coefficients
    }

    /// Horner evaluation; `None` on overflow.
    pub fn eval(&self, x: u64) -> Option<u64> {
        self.coefficients
            .iter()
            .rev()
            .try_fold(0u64, |acc, &c| acc.checked_mul(x)?.checked_add(c))
    }
}

/// `(a_{h(1)}, ..., a_{h(N)})`.
pub fn sample(a: &Seq, h: &TimeChange, horizon: usize) -> Result<Seq> {
    if horizon == 0 {
        return Err(Error::ZeroHorizon);
    }
    a.require(h.required_source_len(horizon)?)?;
    let terms = (1..=horizon)
        .map(|n| Ok(a.term(h.at(n)?).expect("checked above").clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Seq::new(terms)?.with_label(format!("{} sampled by {}", a.label(), describe(h))))
}

/// Like [`sample`], but evaluates `u_{h(n)}` directly from the recurrence,
/// so the source prefix is never materialized.
pub fn sample_recurrence(rec: &LinearRecurrence, h: &TimeChange, horizon: usize) -> Result<Seq> {
    if horizon == 0 {
        return Err(Error::ZeroHorizon);
    }
    let terms = (1..=horizon)
        .map(|n| rec.term(h.at(n)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(Seq::new(terms)?.with_label(format!("recurrence sampled by {}", describe(h))))
}

fn describe(h: &TimeChange) -> alloc::string::String {
    match h {
        TimeChange::Monomial(k) => format!("n^{k}"),
        TimeChange::Explicit(t) => format!("table[{}]", t.len()),
    }
}

/// `(a_n^(h(n)))` for `n <= N`, with `0^0 = 1`.
pub fn term_power(a: &Seq, h: &IntPolynomial, horizon: usize) -> Result<Seq> {
    if horizon == 0 {
        return Err(Error::ZeroHorizon);
    }
    a.require(horizon)?;
    a.require_non_negative(horizon)?;
    let terms = (1..=horizon)
        .map(|n| {
            let e = h
                .eval(n as u64)
                .and_then(|e| u32::try_from(e).ok())
                .ok_or(Error::Overflow { index: n })?;
            Ok(Pow::pow(a.term(n).expect("checked above"), e))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Seq::new(terms)?.with_label(format!("{} raised to polynomial powers", a.label())))
}

/// `(C a_n)` for `C >= 1`.
pub fn scale(a: &Seq, multiplier: &BigUint) -> Result<Seq> {
    if multiplier.is_zero() {
        return Err(Error::ZeroMultiplier);
    }
    let c = BigInt::from(multiplier.clone());
    let terms = a.map_terms(a.len(), |t| t * &c);
    Ok(Seq::new(terms)?.with_label(format!("{} times {}", a.label(), multiplier)))
}

/// The least multiplier that makes a prefix pass condition (D).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplierReport {
    pub horizon: usize,
    /// `C_N`: lcm of the denominators of `D_n(a) / n` for `n <= N`.
    pub multiplier: BigUint,
    /// `D_n(a) >= 0` for every `n <= N`. Scaling by a positive constant never
    /// changes this.
    pub sign_ok: bool,
    /// Denominator of `D_n(a) / n` in lowest terms, for `n = 1..=N`.
    pub denominators: Vec<BigUint>,
}

impl MultiplierReport {
    /// Primes dividing `C_N`.
    pub fn primes(&self) -> Vec<u64> {
        let mut primes = BTreeSet::new();
        for (i, d) in self.denominators.iter().enumerate() {
            if !d.is_one() {
                // each denominator divides its index n
                let n = (i + 1) as u64;
                debug_assert!(d.to_u64().is_some_and(|d| n.is_multiple_of(d)));
                primes.extend(factor(d.to_u64().unwrap_or(n)).into_iter().map(|(p, _)| p));
            }
        }
        primes.into_iter().collect()
    }
}

pub fn minimal_multiplier(a: &Seq, horizon: usize) -> Result<MultiplierReport> {
    if horizon == 0 {
        return Err(Error::ZeroHorizon);
    }
    a.require(horizon)?;
    a.require_non_negative(horizon)?;
    let mut multiplier = BigUint::one();
    let mut sign_ok = true;
    let mut denominators = Vec::with_capacity(horizon);
    for n in 1..=horizon {
        let dold = dold_transform(a, n)?;
        sign_ok &= dold >= BigInt::zero();
        let q = BigRational::new(dold, BigInt::from(n));
        let d = q.denom().magnitude().clone();
        multiplier = multiplier.lcm(&d);
        denominators.push(d);
    }
    Ok(MultiplierReport { horizon, multiplier, sign_ok, denominators })
}

/// Ascending primes dividing any denominator of `D_n(a) / n`, `n <= N`.
pub fn denominator_prime_scan(a: &Seq, horizon: usize) -> Result<Vec<u64>> {
    Ok(minimal_multiplier(a, horizon)?.primes())
}

/// Checks `(M u_{n^s})_{n <= N}` for a linear recurrence `u`.
///
/// `M` and `s` come from the caller; see [`RECURRENCE_POWER_FIXTURES`] for worked
/// parameters.
pub fn recurrence_power_check(
    rec: &LinearRecurrence,
    multiplier: &BigUint,
    s: u32,
    horizon: usize,
) -> Result<RealizabilityReport> {
    let sampled = sample_recurrence(rec, &TimeChange::monomial(s)?, horizon)?;
    let scaled = scale(&sampled, multiplier)?;
    check_realizable(&scaled, horizon)
}

/// Splitting-field data for a recurrence, computed by hand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RecurrencePowerFixture {
    pub name: &'static str,
    pub coefficients: &'static [i64],
    pub initial: &'static [i64],
    /// Discriminant of the splitting field.
    pub field_discriminant: i64,
    /// Discriminant of the characteristic polynomial.
    pub polynomial_discriminant: i64,
    pub galois_order: u32,
    pub galois_exponent: u32,
}

impl RecurrencePowerFixture {
    pub fn recurrence(&self) -> LinearRecurrence {
        LinearRecurrence::from_i64s(self.coefficients, self.initial).expect("fixture is valid")
    }

    /// `lcm(|disc K|, |disc F|)`.
    pub fn multiplier(&self) -> BigUint {
        let k = BigUint::from(self.field_discriminant.unsigned_abs());
        let f = BigUint::from(self.polynomial_discriminant.unsigned_abs());
        k.lcm(&f)
    }

    /// Smallest multiple of the Galois exponent that is at least the group order.
    pub fn exponent(&self) -> u32 {
        self.galois_order.div_ceil(self.galois_exponent) * self.galois_exponent
    }
}

pub const RECURRENCE_POWER_FIXTURES: &[RecurrencePowerFixture] = &[
    // x^2 - x - 1; K = Q(sqrt 5), G = C2
    RecurrencePowerFixture {
        name: "fibonacci",
        coefficients: &[1, 1],
        initial: &[1, 1],
        field_discriminant: 5,
        polynomial_discriminant: 5,
        galois_order: 2,
        galois_exponent: 2,
    },
    // x^3 - x^2 - 2x + 1, roots -2cos(2 pi j / 7); K is the cubic subfield of
    // Q(zeta_7), G = C3
    RecurrencePowerFixture {
        name: "cyclic-cubic-7",
        coefficients: &[1, 2, -1],
        initial: &[1, 0, 1],
        field_discriminant: 49,
        polynomial_discriminant: 49,
        galois_order: 3,
        galois_exponent: 3,
    },
];

/// Outcome of testing a time change against a corpus of sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TimeChangeEvidence {
    /// Every consistent corpus sequence stayed consistent after sampling.
    NoCounterexampleFound { tested: usize },
    /// Corpus entry `witness` is consistent up to the required source length,
    /// but its sample fails.
    Counterexample { witness: usize, failure: Failure },
}

/// Samples each corpus sequence along `h` and checks the result to `horizon`.
///
/// Corpus entries that are themselves inconsistent up to the required source
/// length are skipped and not counted.
pub fn time_change_evidence(
    h: &TimeChange,
    corpus: &[Seq],
    horizon: usize,
) -> Result<TimeChangeEvidence> {
    let needed = h.required_source_len(horizon)?;
    let mut tested = 0;
    for (i, a) in corpus.iter().enumerate() {
        if !check_realizable(a, needed)?.is_consistent() {
            continue;
        }
        tested += 1;
        let report = check_realizable(&sample(a, h, horizon)?, horizon)?;
        if let Some(failure) = report.first_failure {
            return Ok(TimeChangeEvidence::Counterexample { witness: i, failure });
        }
    }
    Ok(TimeChangeEvidence::NoCounterexampleFound { tested })
}
