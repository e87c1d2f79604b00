//! Exact realizability checks for integer sequences.
//!
//! A sequence `(a_n)` of non-negative integers is *realizable* when there is a
//! map `T: X -> X` with `a_n = |{x : T^n x = x}|` for every `n >= 1`. This holds
//! exactly when every Dold transform `D_n(a) = sum_{d | n} mu(n/d) a_d` is a
//! non-negative multiple of `n`. Every check here works on a finite prefix, so
//! a passing result means "no counterexample up to the horizon", never a proof.
//!
//! The crate is `no_std` and needs only `alloc`. File formats, JSON reports and
//! the command-line front end live in the `realseq` crate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod error;

pub mod construct;
pub mod local;
pub mod numtheory;
pub mod realizability;
pub mod sequences;
pub mod transforms;

pub use error::{Error, Result};

pub use construct::{explicit_permutation, realize_cycle_type, verify_realization, CycleType};
pub use local::{check_everywhere_local, check_local, p_part, support_primes, LocalReport};
pub use realizability::{
    check_realizable, divisibility_check, dold_transform, orbit_counts, Condition, Failure,
    OrbitCounts, RealizabilityReport, Record, Verdict,
};
pub use sequences::{LinearRecurrence, Seq, StirlingKind};
pub use transforms::{
    denominator_prime_scan, recurrence_power_check, minimal_multiplier, sample, scale, term_power,
    IntPolynomial, MultiplierReport, TimeChange,
};

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;
