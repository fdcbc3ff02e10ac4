//! Elementary number theory consumed by the filters: multiplicative orders,
//! primitive roots, self-conjugacy and exact prime-power valuations.
//!
//! All arguments here are parameter-sized (at most ~10^6), so trial division
//! is used throughout.

use crate::error::{Error, Result};

/// Prime factorization of `n` as (prime, exponent) pairs, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0u32;
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

/// Distinct prime divisors of `n`, ascending.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}

/// Returns `Some((p, e))` when `n = p^e` for a prime `p` and `e >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    let f = factorize(n);
    if f.len() == 1 {
        Some(f[0])
    } else {
        None
    }
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .map(|(p, e)| (p - 1) * p.pow(e - 1))
        .product::<u64>()
        .max(1)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % modulus as u128) as u64;
        }
        base = (base as u128 * base as u128 % modulus as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Multiplicative order of `q` modulo `n`.
///
/// Errors when `gcd(q, n) != 1`. The order modulo 1 is 1.
pub fn nt_order(q: u64, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidParams("modulus must be positive".into()));
    }
    if gcd(q % n.max(1), n) != 1 && n > 1 {
        return Err(Error::NonCoprime { q, n });
    }
    if n == 1 {
        return Ok(1);
    }
    let phi = euler_phi(n);
    let mut ord = phi;
    for (p, _) in factorize(phi) {
        while ord.is_multiple_of(p) && pow_mod(q, ord / p, n) == 1 {
            ord /= p;
        }
    }
    Ok(ord)
}

/// True when `q` generates the full multiplicative group modulo `n`.
///
/// Returns false (rather than erroring) when `gcd(q, n) != 1`.
pub fn nt_is_primitive_root(q: u64, n: u64) -> bool {
    if n <= 1 {
        return n == 1;
    }
    if gcd(q % n, n) != 1 {
        return false;
    }
    nt_order(q, n).map(|o| o == euler_phi(n)).unwrap_or(false)
}

/// Largest divisor of `n` coprime to `q`.
pub fn coprime_part(mut n: u64, q: u64) -> u64 {
    if q <= 1 {
        return n;
    }
    for (p, _) in factorize(q) {
        while n.is_multiple_of(p) {
            n /= p;
        }
    }
    n
}

/// Self-conjugacy of `q` modulo `n`: some power of `q` is congruent to -1
/// modulo the largest divisor of `n` not divisible by `q`.
///
/// A prime that is a primitive root modulo `n` is always self-conjugate
/// modulo `n`.
pub fn nt_is_self_conjugate(q: u64, n: u64) -> bool {
    let nq = coprime_part(n, q);
    if nq <= 2 {
        return true;
    }
    // -1 lies in <q> mod nq iff ord(q) is even and q^(ord/2) = -1: a cyclic
    // group contains at most one element of order 2.
    match nt_order(q, nq) {
        Ok(ord) => ord % 2 == 0 && pow_mod(q, ord / 2, nq) == nq - 1,
        Err(_) => false,
    }
}

/// Exact exponent `f` with `q^f || u` (i.e. `q^f | u` but `q^(f+1) ∤ u`).
///
/// Errors on `u = 0`; requires `q >= 2`.
pub fn nt_valuation(q: u64, u: i128) -> Result<u32> {
    if u == 0 {
        return Err(Error::ZeroValuation);
    }
    if q < 2 {
        return Err(Error::InvalidParams("valuation base must be >= 2".into()));
    }
    let mut m = u.unsigned_abs();
    let q = q as u128;
    let mut f = 0u32;
    while m.is_multiple_of(q) {
        m /= q;
        f += 1;
    }
    Ok(f)
}

/// Floor of the integer square root.
pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128 + 2;
    while x * x > n {
        x = (x + n / x) / 2;
    }
    x
}

/// `Some(r)` when `n = r^2` exactly.
pub fn perfect_sqrt(n: u128) -> Option<u128> {
    let r = isqrt(n);
    (r * r == n).then_some(r)
}
