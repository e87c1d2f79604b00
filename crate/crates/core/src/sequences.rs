//! Exact generators for the integer sequences under study.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::numtheory::primes_upto;
use crate::{Error, Result};

/// A non-empty, 1-indexed prefix `a_1, a_2, ...` of an integer sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seq {
    terms: Vec<BigInt>,
    label: String,
}

impl Seq {
    pub fn new(terms: Vec<BigInt>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(Seq { terms, label: String::new() })
    }

    pub fn from_i64s(terms: &[i64]) -> Result<Self> {
        Self::new(terms.iter().map(|&t| BigInt::from(t)).collect())
    }

    /// A sequence with period `pattern.len()`, truncated to `len` terms.
    pub fn periodic(pattern: &[i64], len: usize) -> Result<Self> {
        if pattern.is_empty() {
            return Err(Error::EmptySequence);
        }
        Self::new((0..len).map(|i| BigInt::from(pattern[i % pattern.len()])).collect())
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Term `a_n`, 1-indexed.
    pub fn term(&self, n: usize) -> Option<&BigInt> {
        n.checked_sub(1).and_then(|i| self.terms.get(i))
    }

    pub fn terms(&self) -> &[BigInt] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<BigInt> {
        self.terms
    }

    /// The first `n` terms.
    pub fn prefix(&self, n: usize) -> Result<Seq> {
        self.require(n)?;
        if n == 0 {
            return Err(Error::ZeroHorizon);
        }
        Ok(Seq { terms: self.terms[..n].to_vec(), label: self.label.clone() })
    }

    pub(crate) fn require(&self, n: usize) -> Result<()> {
        if n > self.terms.len() {
            return Err(Error::InsufficientTerms { required: n, available: self.terms.len() });
        }
        Ok(())
    }

    pub(crate) fn require_non_negative(&self, n: usize) -> Result<()> {
        match self.terms[..n].iter().position(|t| t.is_negative()) {
            Some(i) => Err(Error::NegativeTerm { index: i + 1 }),
            None => Ok(()),
        }
    }

    pub(crate) fn map_terms(&self, n: usize, f: impl FnMut(&BigInt) -> BigInt) -> Vec<BigInt> {
        self.terms[..n].iter().map(f).collect()
    }
}

/// `u_{n+k} = a_1 u_{n+k-1} + ... + a_k u_n` with initial terms `u_1..u_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearRecurrence {
    coefficients: Vec<BigInt>,
    initial: Vec<BigInt>,
}

impl LinearRecurrence {
    pub fn new(coefficients: Vec<BigInt>, initial: Vec<BigInt>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::InvalidRecurrence("order must be at least 1"));
        }
        if coefficients.len() != initial.len() {
            return Err(Error::InvalidRecurrence(
                "number of initial terms must equal the order",
            ));
        }
        if coefficients.last().is_some_and(Zero::is_zero) {
            return Err(Error::InvalidRecurrence("last coefficient must be non-zero"));
        }
        Ok(LinearRecurrence { coefficients, initial })
    }

    pub fn from_i64s(coefficients: &[i64], initial: &[i64]) -> Result<Self> {
        Self::new(
            coefficients.iter().map(|&c| BigInt::from(c)).collect(),
            initial.iter().map(|&u| BigInt::from(u)).collect(),
        )
    }

    /// `F_1 = F_2 = 1`, `F_{n+2} = F_{n+1} + F_n`.
    pub fn fibonacci() -> Self {
        Self::from_i64s(&[1, 1], &[1, 1]).expect("valid recurrence")
    }

    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn initial(&self) -> &[BigInt] {
        &self.initial
    }

    /// The first `count` terms, generated by stepping the recurrence.
    pub fn terms(&self, count: usize) -> Result<Seq> {
        if count == 0 {
            return Err(Error::ZeroHorizon);
        }
        let k = self.order();
        let mut out: Vec<BigInt> = self.initial.iter().take(count).cloned().collect();
        while out.len() < count {
            let n = out.len();
            let next = self
                .coefficients
                .iter()
                .enumerate()
                .fold(BigInt::zero(), |acc, (i, a)| acc + a * &out[n - 1 - i]);
            out.push(next);
        }
        debug_assert!(out.len() == count && (count < k || out[..k] == self.initial[..]));
        Seq::new(out)
    }

    /// The single term `u_m`, without materializing the prefix.
    ///
    /// Reduces `x^(m-1)` modulo the characteristic polynomial
    /// `x^k - a_1 x^(k-1) - ... - a_k`; the remainder's coefficients weight the
    /// initial terms.
    pub fn term(&self, m: usize) -> Result<BigInt> {
        if m == 0 {
            return Err(Error::ZeroIndex);
        }
        if m <= self.order() {
            return Ok(self.initial[m - 1].clone());
        }
        let weights = self.power_of_x(m - 1);
        Ok(weights.iter().zip(&self.initial).map(|(w, u)| w * u).sum())
    }

    fn reduce(&self, mut poly: Vec<BigInt>) -> Vec<BigInt> {
        let k = self.order();
        while poly.len() > k {
            let top = poly.pop().expect("non-empty");
            if top.is_zero() {
                continue;
            }
            let d = poly.len();
            for (i, a) in self.coefficients.iter().enumerate() {
                poly[d - 1 - i] += a * &top;
            }
        }
        poly.resize(k, BigInt::zero());
        poly
    }

    fn mul_mod(&self, lhs: &[BigInt], rhs: &[BigInt]) -> Vec<BigInt> {
        let mut prod = vec![BigInt::zero(); lhs.len() + rhs.len() - 1];
        for (i, l) in lhs.iter().enumerate() {
            if l.is_zero() {
                continue;
            }
            for (j, r) in rhs.iter().enumerate() {
                prod[i + j] += l * r;
            }
        }
        self.reduce(prod)
    }

    fn power_of_x(&self, mut e: usize) -> Vec<BigInt> {
        let mut base = self.reduce(vec![BigInt::zero(), BigInt::one()]);
        let mut acc = self.reduce(vec![BigInt::one()]);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_mod(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_mod(&base, &base);
            }
        }
        acc
    }
}

/// Stepped recurrence prefix; see [`LinearRecurrence::terms`].
pub fn linear_recurrence_terms(rec: &LinearRecurrence, count: usize) -> Result<Seq> {
    rec.terms(count)
}

/// `1, c, 1 + c, 1 + 2c, 2 + 3c, ...` under the Fibonacci recurrence.
/// `c = 3` gives the Lucas numbers and `c = 1` the Fibonacci numbers.
pub fn fibonacci_like(c: impl Into<BigInt>, count: usize) -> Result<Seq> {
    let c = c.into();
    let label = alloc::format!("fibonacci-like c={c}");
    let rec = LinearRecurrence::new(
        vec![BigInt::one(), BigInt::one()],
        vec![BigInt::one(), c],
    )?;
    Ok(rec.terms(count)?.with_label(label))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StirlingKind {
    /// Unsigned, counting permutations by number of cycles.
    First,
    /// Counting set partitions by number of blocks.
    Second,
}

/// Column `k` of the Stirling triangle for upper indices `0..=max_n`.
fn stirling_column(kind: StirlingKind, k: usize, max_n: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::zero(); k + 1];
    row[0] = BigUint::one();
    let mut column = Vec::with_capacity(max_n + 1);
    column.push(row[k].clone());
    for n in 1..=max_n {
        for j in (1..=k.min(n)).rev() {
            let weight = match kind {
                StirlingKind::First => n - 1,
                StirlingKind::Second => j,
            };
            let stay = &row[j] * BigUint::from(weight);
            row[j] = stay + &row[j - 1];
        }
        row[0] = BigUint::zero();
        column.push(row[k].clone());
    }
    column
}

/// Unsigned Stirling number of the first kind: permutations of `n` points
/// with exactly `k` cycles.
pub fn stirling_first(n: usize, k: usize) -> Result<BigUint> {
    if n == 0 || k > n {
        return Err(Error::StirlingRange { n, k });
    }
    Ok(stirling_column(StirlingKind::First, k, n).pop().expect("non-empty"))
}

/// Stirling number of the second kind: partitions of an `n`-set into `k`
/// non-empty blocks.
pub fn stirling_second(n: usize, k: usize) -> Result<BigUint> {
    if n == 0 || k == 0 || k > n {
        return Err(Error::StirlingRange { n, k });
    }
    Ok(stirling_column(StirlingKind::Second, k, n).pop().expect("non-empty"))
}

/// `(S(n + k - 1, k))_{n >= 1}` for the given kind.
pub fn stirling_row_sequence(kind: StirlingKind, k: usize, count: usize) -> Result<Seq> {
    if k == 0 {
        return Err(Error::StirlingRange { n: 0, k });
    }
    if count == 0 {
        return Err(Error::ZeroHorizon);
    }
    let column = stirling_column(kind, k, count + k - 1);
    let terms = column[k..].iter().map(|v| BigInt::from(v.clone())).collect();
    let tag = match kind {
        StirlingKind::First => 1,
        StirlingKind::Second => 2,
    };
    Ok(Seq::new(terms)?.with_label(alloc::format!("stirling kind={tag} k={k}")))
}

/// Row `m` of Pascal's triangle.
fn binomial_row(m: usize) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(m + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for j in 1..=m {
        c = c * BigInt::from(m + 1 - j) / BigInt::from(j);
        row.push(c.clone());
    }
    row
}

/// Signed Euler numbers `E_0, E_2, ..., E_{2 max}` (odd ones vanish), from
/// `sum_{k=0}^{n} C(2n, 2k) E_{2k} = 0`.
pub fn euler_even(max: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(max + 1);
    out.push(BigInt::one());
    for n in 1..=max {
        let row = binomial_row(2 * n);
        let s: BigInt = (0..n).map(|k| &row[2 * k] * &out[k]).sum();
        out.push(-s);
    }
    out
}

/// `(|E_{2n}|)_{n >= 1}`: `1, 5, 61, 1385, ...`. `E_0` is not included.
pub fn euler_abs_sequence(count: usize) -> Result<Seq> {
    if count == 0 {
        return Err(Error::ZeroHorizon);
    }
    let terms = euler_even(count).into_iter().skip(1).map(|e| e.abs()).collect();
    Ok(Seq::new(terms)?.with_label("euler |E_2n|"))
}

/// `B_0, ..., B_max` with `B_1 = -1/2`, from
/// `sum_{k=0}^{m} C(m + 1, k) B_k = 0`.
pub fn bernoulli_numbers(max: usize) -> Vec<BigRational> {
    let mut out: Vec<BigRational> = Vec::with_capacity(max + 1);
    out.push(BigRational::one());
    for m in 1..=max {
        let row = binomial_row(m + 1);
        let mut s = BigRational::zero();
        for (k, b) in out.iter().enumerate() {
            if !b.is_zero() {
                s += b * BigRational::from_integer(row[k].clone());
            }
        }
        out.push(-s / BigRational::from_integer(BigInt::from(m + 1)));
    }
    out
}

/// `tau_n / beta_n = |B_{2n} / 2n|` in lowest terms, for `n = 1..=count`.
pub fn tau_beta_sequences(count: usize) -> Result<(Seq, Seq)> {
    if count == 0 {
        return Err(Error::ZeroHorizon);
    }
    let bernoulli = bernoulli_numbers(2 * count);
    let (tau, beta): (Vec<_>, Vec<_>) = (1..=count)
        .map(|n| {
            let q = (&bernoulli[2 * n] / BigRational::from_integer(BigInt::from(2 * n))).abs();
            (q.numer().clone(), q.denom().clone())
        })
        .unzip();
    Ok((
        Seq::new(tau)?.with_label("bernoulli tau_n"),
        Seq::new(beta)?.with_label("bernoulli beta_n"),
    ))
}

/// Irregular primes `<= bound` by the Kummer criterion: `p` is irregular when
/// it divides the numerator of some `B_k` with `k` even and `2 <= k <= p - 3`.
pub fn irregular_primes(bound: u64) -> Result<Vec<u64>> {
    if bound < 5 {
        return Err(Error::BoundTooSmall { bound, minimum: 5 });
    }
    let top = usize::try_from(bound - 3).map_err(|_| Error::Overflow { index: 0 })?;
    let bernoulli = bernoulli_numbers(top);
    let irregular = primes_upto(bound)
        .into_vec()
        .into_iter()
        .filter(|&p| p >= 5)
        .filter(|&p| {
            let p_big = BigInt::from(p);
            (2..=(p as usize - 3))
                .step_by(2)
                .any(|k| bernoulli[k].numer().is_multiple_of(&p_big))
        })
        .collect();
    Ok(irregular)
}

impl core::fmt::Display for Seq {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let shown: Vec<String> = self.terms.iter().map(ToString::to_string).collect();
        write!(f, "({})", shown.join(", "))
    }
}
