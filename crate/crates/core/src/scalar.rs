//! Prime context and binomial coefficients modulo a prime.

use crate::error::{Error, Result};

/// The prime all coefficients are reduced by.
///
/// Only `p = 2` drives the Dyer-Lashof engine; odd primes are accepted for the
/// binomial helpers and the odd-primary predicates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub const TWO: Prime = Prime(2);

    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn is_two(self) -> bool {
        self.0 == 2
    }

    /// Fails unless this is the prime the full engine supports.
    pub fn require_two(self) -> Result<()> {
        if self.is_two() {
            Ok(())
        } else {
            Err(Error::UnsupportedPrime(self.0))
        }
    }

    /// `C(n, k) mod p` by Lucas' theorem. Zero whenever `n < 0`, `k < 0` or `k > n`.
    pub fn binom(self, n: i64, k: i64) -> u64 {
        binom_mod_p(n, k, self.0)
    }
}

impl Default for Prime {
    fn default() -> Self {
        Prime::TWO
    }
}

impl std::fmt::Display for Prime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `C(n, k) mod p` for a prime `p`, computed digit by digit in base `p`.
pub fn binom_mod_p(n: i64, k: i64, p: u64) -> u64 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let (mut n, mut k) = (n as u64, k as u64);
    let mut acc = 1u64;
    while k > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        acc = acc * small_binom(nd, kd, p) % p;
        n /= p;
        k /= p;
    }
    acc
}

/// Binomial coefficient of two base-`p` digits, reduced mod `p`.
fn small_binom(n: u64, k: u64, p: u64) -> u64 {
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num = num * ((n - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * mod_pow(den, p - 2, p) % p
}

/// Parity of `C(n, k)`; the workhorse of every mod 2 relation.
#[inline]
pub fn binom_odd(n: i64, k: i64) -> bool {
    n >= 0 && k >= 0 && k <= n && (n & k) == k
}

pub fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % m as u128) as u64;
        }
        base = (base as u128 * base as u128 % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial_binom(n: u64, k: u64) -> u128 {
        // exact for n <= 64 via the multiplicative formula
        let mut acc: u128 = 1;
        for i in 0..k {
            acc = acc * (n - i) as u128 / (i + 1) as u128;
        }
        acc
    }

    #[test]
    fn small_examples() {
        assert_eq!(binom_mod_p(3, 2, 2), 1);
        assert_eq!(binom_mod_p(4, 2, 2), 0);
        for n in 0..50 {
            assert_eq!(binom_mod_p(n, 0, 2), 1);
        }
        assert_eq!(binom_mod_p(-1, 0, 2), 0);
        assert_eq!(binom_mod_p(3, -1, 2), 0);
        assert_eq!(binom_mod_p(3, 4, 2), 0);
    }

    #[test]
    fn lucas_matches_factorials() {
        for p in [2u64, 3, 5, 7] {
            for n in 0..=64u64 {
                for k in 0..=n {
                    let expect = (factorial_binom(n, k) % p as u128) as u64;
                    assert_eq!(binom_mod_p(n as i64, k as i64, p), expect, "C({n},{k}) mod {p}");
                }
            }
        }
    }

    #[test]
    fn parity_shortcut_agrees() {
        for n in -3..70 {
            for k in -3..70 {
                assert_eq!(binom_odd(n, k), binom_mod_p(n, k, 2) == 1);
            }
        }
    }

    #[test]
    fn prime_validation() {
        assert!(Prime::new(4).is_err());
        assert!(Prime::new(5).is_ok());
        assert!(Prime::new(3).unwrap().require_two().is_err());
    }
}
