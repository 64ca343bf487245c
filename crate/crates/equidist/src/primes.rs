//! Prime moduli and schedules.
//!
//! Primality is decided by deterministic Miller-Rabin with the seven-witness
//! set {2, 325, 9375, 28178, 450775, 9780504, 1795265022}, which is sound for
//! every u64 (Sinclair's verified base set). Schedules step through primes at
//! geometrically spaced targets so convergence studies sample several orders
//! of magnitude with a handful of moduli.

use crate::error::{Error, Result};

const WITNESSES: [u64; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];

/// Largest prime representable in u64; `next_prime` overflows past it.
const LAST_U64_PRIME: u64 = 18_446_744_073_709_551_557;

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
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

/// Deterministic primality test for the full u64 range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    // n - 1 = d * 2^s with d odd
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let a = a % n;
        if a == 0 {
            continue;
        }
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

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> Result<u64> {
    if n >= LAST_U64_PRIME {
        return Err(Error::PrimeOverflow(n));
    }
    let mut c = n + 1;
    if c <= 2 {
        return Ok(2);
    }
    if c % 2 == 0 {
        c += 1;
    }
    while !is_prime(c) {
        c += 2;
    }
    Ok(c)
}

/// Smallest prime greater than or equal to `n`.
fn prime_at_or_above(n: u64) -> Result<u64> {
    if n <= 2 {
        Ok(2)
    } else {
        next_prime(n - 1)
    }
}

/// How the moduli of a schedule were chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Spacing {
    Geometric,
    Explicit,
}

/// A strictly increasing list of prime moduli.
#[derive(Clone, Debug)]
pub struct PrimeSchedule {
    q_values: Vec<u64>,
    spacing: Spacing,
}

impl PrimeSchedule {
    /// Wrap caller-chosen moduli, validating primality and strict order.
    pub fn explicit(q_values: Vec<u64>) -> Result<Self> {
        if q_values.is_empty() {
            return Err(Error::EmptySchedule);
        }
        for &q in &q_values {
            if !is_prime(q) {
                return Err(Error::NotPrime { q });
            }
        }
        for w in q_values.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::NotIncreasing { prev: w[0], next: w[1] });
            }
        }
        Ok(PrimeSchedule { q_values, spacing: Spacing::Explicit })
    }

    pub fn q_values(&self) -> &[u64] {
        &self.q_values
    }

    pub fn spacing(&self) -> Spacing {
        self.spacing
    }

    pub fn len(&self) -> usize {
        self.q_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q_values.is_empty()
    }
}

/// `count` primes at geometrically spaced targets between `q_min` and
/// `q_max`: each schedule entry is the next prime at or above its target.
/// Primes that collide after rounding are de-duplicated, so the result may
/// be shorter than `count`. The last entry may overshoot `q_max` slightly
/// (it is the next prime at or above it), but the range itself must contain
/// at least one prime.
pub fn geometric_schedule(q_min: u64, q_max: u64, count: usize) -> Result<PrimeSchedule> {
    if q_min < 2 || q_max < q_min || count == 0 {
        return Err(Error::EmptyRange { q_min, q_max });
    }
    // A schedule over a prime-free window would silently study nothing.
    let first = prime_at_or_above(q_min)?;
    if first > q_max {
        return Err(Error::EmptyRange { q_min, q_max });
    }
    let mut qs = Vec::with_capacity(count);
    let (lo, hi) = (q_min as f64, q_max as f64);
    for j in 0..count {
        let target = if j == 0 {
            q_min
        } else if j == count - 1 {
            q_max
        } else {
            let t = (lo.ln() + (hi.ln() - lo.ln()) * j as f64 / (count - 1) as f64).exp();
            t.round().clamp(lo, hi) as u64
        };
        let p = prime_at_or_above(target)?;
        if qs.last() != Some(&p) {
            qs.push(p);
        }
    }
    Ok(PrimeSchedule { q_values: qs, spacing: Spacing::Geometric })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Sieve of Eratosthenes: the independent oracle for the MR implementation.
    fn sieve(limit: usize) -> Vec<bool> {
        let mut comp = vec![false; limit + 1];
        comp[0] = true;
        if limit >= 1 {
            comp[1] = true;
        }
        let mut p = 2usize;
        while p * p <= limit {
            if !comp[p] {
                let mut m = p * p;
                while m <= limit {
                    comp[m] = true;
                    m += p;
                }
            }
            p += 1;
        }
        comp.iter().map(|c| !c).collect()
    }

    #[test]
    fn agrees_with_sieve_to_one_million() {
        let table = sieve(1_000_000);
        for (n, &want) in table.iter().enumerate() {
            assert_eq!(is_prime(n as u64), want, "disagree at {n}");
        }
    }

    #[test]
    fn known_prime_counts() {
        let table = sieve(100_000);
        let pi = |limit: usize| table[..=limit].iter().filter(|&&p| p).count();
        assert_eq!(pi(100), 25);
        assert_eq!(pi(1_000), 168);
        assert_eq!(pi(10_000), 1_229);
        assert_eq!(pi(100_000), 9_592);
    }

    #[test]
    fn next_prime_inverts_predecessor() {
        let table = sieve(1_000_000);
        for (n, &p) in table.iter().enumerate() {
            if p {
                assert_eq!(next_prime(n as u64 - 1).unwrap(), n as u64);
            }
        }
    }

    #[test]
    fn next_prime_known_values() {
        assert_eq!(next_prime(0).unwrap(), 2);
        assert_eq!(next_prime(2).unwrap(), 3);
        assert_eq!(next_prime(100).unwrap(), 101);
        assert_eq!(next_prime(1_000).unwrap(), 1_009);
        assert_eq!(next_prime(10_000).unwrap(), 10_007);
        assert_eq!(next_prime(100_000).unwrap(), 100_003);
        assert!(is_prime(LAST_U64_PRIME));
        assert!(matches!(next_prime(u64::MAX), Err(Error::PrimeOverflow(_))));
        assert!(matches!(next_prime(LAST_U64_PRIME), Err(Error::PrimeOverflow(_))));
        assert_eq!(next_prime(LAST_U64_PRIME - 1).unwrap(), LAST_U64_PRIME);
    }

    #[test]
    fn large_primes_spot_check() {
        // Mersenne prime 2^61 - 1 and neighbors.
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime((1 << 61) + 1));
        assert!(!is_prime(3_825_123_056_546_413_051)); // strong pseudoprime to bases 2..23
    }

    #[test]
    fn schedule_decades() {
        let s = geometric_schedule(100, 100_000, 4).unwrap();
        assert_eq!(s.q_values(), &[101, 1_009, 10_007, 100_003]);
        assert_eq!(s.spacing(), Spacing::Geometric);
    }

    #[test]
    fn schedule_degenerate_and_empty() {
        let s = geometric_schedule(2, 2, 1).unwrap();
        assert_eq!(s.q_values(), &[2]);
        // No prime lives in [24, 28]; 29 must not sneak in.
        assert!(matches!(
            geometric_schedule(24, 28, 1),
            Err(Error::EmptyRange { q_min: 24, q_max: 28 })
        ));
    }

    #[test]
    fn schedule_dedupes_collisions() {
        // Targets 2,3,4,6,8 collide on small primes after rounding.
        let s = geometric_schedule(2, 8, 5).unwrap();
        let qs = s.q_values();
        assert!(qs.windows(2).all(|w| w[0] < w[1]));
        assert!(qs.iter().all(|&q| is_prime(q)));
        assert_eq!(*qs.first().unwrap(), 2);
    }

    #[test]
    fn explicit_schedule_validation() {
        assert!(PrimeSchedule::explicit(vec![101, 1_009]).is_ok());
        assert!(matches!(
            PrimeSchedule::explicit(vec![4]),
            Err(Error::NotPrime { q: 4 })
        ));
        assert!(matches!(
            PrimeSchedule::explicit(vec![7, 7]),
            Err(Error::NotIncreasing { .. })
        ));
        assert!(matches!(PrimeSchedule::explicit(vec![]), Err(Error::EmptySchedule)));
    }
}
