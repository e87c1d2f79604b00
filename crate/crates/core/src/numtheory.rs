//! Elementary number theory on machine indices and big integers.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Ascending primes `<= bound`, complete below the bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeList {
    primes: Vec<u64>,
    bound: u64,
}

impl PrimeList {
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok()
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.primes
    }
}

/// Sieve of Eratosthenes. Bounds below 2 give an empty list.
pub fn primes_upto(bound: u64) -> PrimeList {
    if bound < 2 {
        return PrimeList { primes: Vec::new(), bound };
    }
    let limit = usize::try_from(bound).expect("sieve bound exceeds address space");
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    PrimeList { primes, bound }
}

/// Prime factorization of a machine integer by trial division, as ascending
/// `(p, e)` pairs. `factor(1)` is empty.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// The Möbius function.
pub fn mobius(n: usize) -> Result<i8> {
    if n == 0 {
        return Err(Error::ZeroIndex);
    }
    let mut sign = 1i8;
    for (_, e) in factor(n as u64) {
        if e > 1 {
            return Ok(0);
        }
        sign = -sign;
    }
    Ok(sign)
}

/// All positive divisors of `n` in ascending order.
pub fn divisors(n: usize) -> Result<Vec<usize>> {
    if n == 0 {
        return Err(Error::ZeroIndex);
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1usize;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin with the first twelve prime bases. Exact below `3.3 * 10^24`,
/// probabilistic above.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime(small);
    }
    if n.is_even() {
        return false;
    }
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    'witness: for a in WITNESSES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Largest `e` with `p^e | x`.
pub fn padic_valuation(x: &BigInt, p: u64) -> Result<u32> {
    if x.is_zero() {
        return Err(Error::ZeroValuation);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let p = BigUint::from(p);
    let mut rest = x.abs().into_parts().1;
    let mut e = 0;
    loop {
        let (q, r) = rest.div_rem(&p);
        if !r.is_zero() {
            return Ok(e);
        }
        rest = q;
        e += 1;
    }
}

/// Distinct prime divisors of a non-zero big integer.
///
/// Trial division runs up to `trial_limit`; a remaining cofactor is accepted
/// when it is below `trial_limit^2` or passes [`is_probable_prime`]. Otherwise
/// `None` is returned.
pub fn prime_divisors(x: &BigUint, trial_limit: u64) -> Option<Vec<u64>> {
    let mut rest = x.clone();
    let mut out = Vec::new();
    let mut p = 2u64;
    while p <= trial_limit {
        let pp = BigUint::from(p);
        if &pp * &pp > rest {
            break;
        }
        if (&rest % p).is_zero() {
            out.push(p);
            while (&rest % p).is_zero() {
                rest /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest.is_one() {
        return Some(out);
    }
    let limit = BigUint::from(trial_limit);
    if rest <= &limit * &limit || is_probable_prime(&rest) {
        out.push(rest.to_u64()?);
        return Some(out);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius(1), Ok(1));
        assert_eq!(mobius(6), Ok(1));
        assert_eq!(mobius(12), Ok(0));
        assert_eq!(mobius(30), Ok(-1));
        assert_eq!(mobius(0), Err(Error::ZeroIndex));
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(divisors(1).unwrap(), vec![1]);
        assert_eq!(divisors(16).unwrap(), vec![1, 2, 4, 8, 16]);
        assert_eq!(divisors(12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(0), Err(Error::ZeroIndex));
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(padic_valuation(&BigInt::from(6), 2), Ok(1));
        assert_eq!(padic_valuation(&BigInt::from(1), 7), Ok(0));
        assert_eq!(padic_valuation(&BigInt::from(32760), 3), Ok(2));
        assert_eq!(padic_valuation(&BigInt::from(-24), 2), Ok(3));
        assert_eq!(padic_valuation(&BigInt::zero(), 2), Err(Error::ZeroValuation));
        assert_eq!(padic_valuation(&BigInt::from(12), 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn sieve_examples() {
        assert_eq!(primes_upto(2).primes(), &[2]);
        assert_eq!(primes_upto(20).primes(), &[2, 3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(primes_upto(37).primes().last(), Some(&37));
        assert!(primes_upto(1).is_empty());
    }

    #[test]
    fn miller_rabin_agrees_with_sieve() {
        let sieve = primes_upto(20_000);
        for n in 0..=20_000u64 {
            assert_eq!(is_prime(n), sieve.contains(n), "n = {n}");
        }
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn big_prime_divisors() {
        // 7709321041217 = 37 * 683 * 305065927
        let x = BigUint::from(7_709_321_041_217u64);
        assert_eq!(prime_divisors(&x, 1000), Some(vec![37, 683, 305_065_927]));
        assert_eq!(prime_divisors(&BigUint::one(), 10), Some(vec![]));
        // (2^61 - 1)^2 has no small factor and is composite
        let m = BigUint::from((1u64 << 61) - 1);
        assert_eq!(prime_divisors(&(&m * &m), 1000), None);
    }

    #[test]
    fn mobius_sums_vanish() {
        for n in 1..=10_000usize {
            let s: i64 = divisors(n).unwrap().iter().map(|&d| mobius(d).unwrap() as i64).sum();
            assert_eq!(s, if n == 1 { 1 } else { 0 }, "n = {n}");
        }
    }

    proptest! {
        #[test]
        fn mobius_inversion_round_trip(b in prop::collection::vec(-1000i64..1000, 1..60)) {
            let len = b.len();
            let a: Vec<i64> = (1..=len)
                .map(|n| divisors(n).unwrap().iter().map(|&d| b[d - 1]).sum())
                .collect();
            for n in 1..=len {
                let c: i64 = divisors(n)
                    .unwrap()
                    .iter()
                    .map(|&d| mobius(n / d).unwrap() as i64 * a[d - 1])
                    .sum();
                prop_assert_eq!(c, b[n - 1]);
            }
        }

        #[test]
        fn valuations_reconstruct(x in 1u64..20_000) {
            let big = BigInt::from(x);
            let mut product = 1u64;
            for p in primes_upto(x.max(2)).primes() {
                let e = padic_valuation(&big, *p).unwrap();
                product *= p.pow(e);
            }
            prop_assert_eq!(product, x);
        }

        #[test]
        fn divisors_closed_under_complement(n in 1usize..5000) {
            let ds = divisors(n).unwrap();
            for d in &ds {
                prop_assert!(ds.contains(&(n / d)));
            }
        }
    }
}
