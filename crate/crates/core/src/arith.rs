//! Small modular-arithmetic helpers shared by the field, plane and search code.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

/// Largest supported prime. Dense rank-2 storage holds `p^2` values and the
/// direct transform costs `p^4` terms, so anything larger is impractical.
pub const MAX_PRIME: u64 = 251;

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

/// Validates `p` as a supported prime.
pub fn check_prime(p: u64) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p > MAX_PRIME {
        return Err(Error::PrimeTooLarge(p));
    }
    Ok(p as u32)
}

/// Inverse of a unit modulo a prime, by Fermat.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub fn pow_mod(base: u32, mut exp: u32, p: u32) -> u32 {
    let m = p as u64;
    let mut b = base as u64 % m;
    let mut acc = 1u64 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u32
}

pub fn neg_mod(a: u32, p: u32) -> u32 {
    (p - a % p) % p
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Formats a rational as `num/den`, always with an explicit denominator.
pub fn rat_to_fraction(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Formats a rational compactly: `n` for integers, `n/d` otherwise.
pub fn rat_to_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        rat_to_fraction(r)
    }
}

/// Parses `n`, `n/d`, `-n/d` (no decimals).
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
    }
}
