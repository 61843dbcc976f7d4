//! Trial-division factorization with a hard bound.
//!
//! Everything downstream stores integers fully factored, so this is the one
//! place where factoring happens. Trial division runs through candidate
//! divisors up to `bound`; a cofactor that survives is prime whenever it is
//! below `bound^2`, and anything larger is a hard error rather than a guess.

use num::bigint::BigInt;
use num::traits::ToPrimitive;
use num::{Signed, Zero};

use crate::error::{Error, Result};

/// Default trial-division bound. Certifies primes up to 10^12.
pub const DEFAULT_FACTOR_BOUND: u64 = 1_000_000;

/// Largest accepted bound; keeps `bound^2` inside u64.
pub const MAX_FACTOR_BOUND: u64 = 1_000_000_000;

/// Prime factorization of `|n|` as (prime, exponent) pairs, ascending.
pub(crate) fn factor_magnitude(n: &BigInt, bound: u64) -> Result<Vec<(u64, u32)>> {
    debug_assert!(!n.is_zero());
    let bound = bound.min(MAX_FACTOR_BOUND);
    if let Some(m) = n.abs().to_u128() {
        return factor_u128(m, bound);
    }
    // Inputs beyond u128 are out of reach for trial division anyway, but be
    // honest and peel small factors off until the bound decides.
    let mut m = n.abs();
    let mut out: Vec<(u64, u32)> = Vec::new();
    let mut d: u64 = 2;
    while d <= bound {
        let big_d = BigInt::from(d);
        if (&big_d * &big_d) > m {
            break;
        }
        let mut e = 0u32;
        while (&m % &big_d).is_zero() {
            m /= &big_d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d = if d == 2 { 3 } else { d + 2 };
        if let Some(small) = m.to_u128() {
            let rest = factor_u128_from(small, d, bound)?;
            merge(&mut out, rest);
            return Ok(out);
        }
    }
    if let Some(small) = m.to_u128() {
        let rest = factor_u128_from(small, d, bound)?;
        merge(&mut out, rest);
        Ok(out)
    } else {
        Err(Error::FactorBoundExceeded { bound })
    }
}

fn merge(out: &mut Vec<(u64, u32)>, rest: Vec<(u64, u32)>) {
    for (p, e) in rest {
        match out.iter_mut().find(|(q, _)| *q == p) {
            Some((_, e0)) => *e0 += e,
            None => out.push((p, e)),
        }
    }
    out.sort_unstable();
}

fn factor_u128(m: u128, bound: u64) -> Result<Vec<(u64, u32)>> {
    factor_u128_from(m, 2, bound)
}

fn factor_u128_from(mut m: u128, start: u64, bound: u64) -> Result<Vec<(u64, u32)>> {
    let mut out = Vec::new();
    let mut d: u64 = start.max(2);
    if d == 2 {
        let mut e = 0u32;
        while m % 2 == 0 {
            m /= 2;
            e += 1;
        }
        if e > 0 {
            out.push((2, e));
        }
        d = 3;
    }
    if d % 2 == 0 {
        d += 1;
    }
    while (d as u128) * (d as u128) <= m {
        if d > bound {
            return Err(Error::FactorBoundExceeded { bound });
        }
        if m % (d as u128) == 0 {
            let mut e = 0u32;
            while m % (d as u128) == 0 {
                m /= d as u128;
                e += 1;
            }
            out.push((d, e));
        }
        d += 2;
    }
    if m > 1 {
        // Cofactor below d^2, hence prime; d <= bound + 2 keeps it in u64 range.
        match u64::try_from(m) {
            Ok(p) => out.push((p, 1)),
            Err(_) => return Err(Error::FactorBoundExceeded { bound }),
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Deterministic primality by trial division; fine for the sizes we keep.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while (d as u128) * (d as u128) <= n as u128 {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// All positive divisors of `|n|`, ascending.
pub(crate) fn divisors(n: &BigInt, bound: u64) -> Result<Vec<BigInt>> {
    let factors = factor_magnitude(n, bound)?;
    let mut out = vec![BigInt::from(1)];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        let mut pk = BigInt::from(1);
        for _ in 0..=e {
            for d in &out {
                next.push(d * &pk);
            }
            pk *= p;
        }
        out = next;
    }
    out.sort();
    Ok(out)
}
