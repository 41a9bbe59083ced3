//! Exact arithmetic in the cyclotomic field `Q(ζ_p)`.
//!
//! Elements are stored in the power basis `{1, ζ, …, ζ^(p-2)}` with rational
//! coordinates. The single relation `1 + ζ + … + ζ^(p-1) = 0` rewrites
//! `ζ^(p-1)` as `-(1 + ζ + … + ζ^(p-2))`, which makes the representation
//! canonical: two values are equal iff their coordinates are equal, and a value
//! is zero iff all coordinates vanish.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{check_prime, parse_rational, rat_to_fraction};
use crate::error::{Error, Result};

/// An exact element of `Q(ζ_p)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    p: u32,
    coeffs: Vec<BigRational>,
}

impl CycNum {
    /// The zero of `Q(ζ_p)`. Assumes `p` was already validated.
    pub fn zero(p: u32) -> Self {
        let len = (p as usize - 1).max(1);
        CycNum {
            p,
            coeffs: vec![BigRational::zero(); len],
        }
    }

    pub fn one(p: u32) -> Self {
        Self::from_rational(p, BigRational::one())
    }

    pub fn from_rational(p: u32, r: BigRational) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[0] = r;
        z
    }

    pub fn from_int(p: u32, n: i64) -> Self {
        Self::from_rational(p, BigRational::from_integer(n.into()))
    }

    /// Builds a value from its power-basis coordinates (length `p - 1`).
    pub fn from_coeffs(p: u64, coeffs: Vec<BigRational>) -> Result<Self> {
        let p = check_prime(p)?;
        if coeffs.len() != p as usize - 1 {
            return Err(Error::InvalidParameter(format!(
                "expected {} coordinates for p = {p}, got {}",
                p - 1,
                coeffs.len()
            )));
        }
        Ok(CycNum { p, coeffs })
    }

    /// Builds a value from coefficients on `ζ^0, …, ζ^(p-1)` and reduces it.
    pub fn from_exponent_coeffs(p: u32, full: Vec<BigRational>) -> Self {
        debug_assert_eq!(full.len(), p as usize);
        reduce(p, full)
    }

    /// `ζ^k` in reduced form.
    pub fn root_of_unity(p: u64, k: u64) -> Result<Self> {
        let p = check_prime(p)?;
        if k >= p as u64 {
            return Err(Error::ResidueOutOfRange { p, k });
        }
        Ok(Self::zeta_pow(p, k as u32))
    }

    /// `ζ^k` for any `k`, reduced mod `p`. Assumes `p` was already validated.
    pub fn zeta_pow(p: u32, k: u32) -> Self {
        let mut full = vec![BigRational::zero(); p as usize];
        full[(k % p) as usize] = BigRational::one();
        reduce(p, full)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Power-basis coordinates `[c_0, …, c_(p-2)]`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `Some(r)` when the value lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    fn check_order(&self, other: &CycNum) -> Result<()> {
        if self.p != other.p {
            Err(Error::OrderMismatch(self.p, other.p))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &CycNum) -> Result<CycNum> {
        self.check_order(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &CycNum) -> Result<CycNum> {
        self.check_order(other)?;
        Ok(self.sub_unchecked(other))
    }

    pub fn try_mul(&self, other: &CycNum) -> Result<CycNum> {
        self.check_order(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &CycNum) -> CycNum {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycNum { p: self.p, coeffs }
    }

    fn sub_unchecked(&self, other: &CycNum) -> CycNum {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        CycNum { p: self.p, coeffs }
    }

    fn mul_unchecked(&self, other: &CycNum) -> CycNum {
        if let Some(r) = self.as_rational() {
            return other.scalar_mul(r);
        }
        if let Some(r) = other.as_rational() {
            return self.scalar_mul(r);
        }
        let p = self.p as usize;
        let mut full = vec![BigRational::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                full[(i + j) % p] += a * b;
            }
        }
        reduce(self.p, full)
    }

    pub fn scalar_mul(&self, r: &BigRational) -> CycNum {
        CycNum {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn negate(&self) -> CycNum {
        CycNum {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Multiplies by `ζ^k`; a rotation of exponents followed by reduction.
    pub fn mul_zeta_pow(&self, k: u32) -> CycNum {
        let p = self.p as usize;
        let k = k as usize % p;
        if k == 0 {
            return self.clone();
        }
        let mut full = vec![BigRational::zero(); p];
        for (i, c) in self.coeffs.iter().enumerate() {
            full[(i + k) % p] = c.clone();
        }
        reduce(self.p, full)
    }

    /// The automorphism `ζ ↦ ζ^j` of `Q(ζ_p)`.
    pub fn galois_apply(&self, j: u64) -> Result<CycNum> {
        let p = self.p as u64;
        if j.is_multiple_of(p) {
            return Err(Error::NotUnit { p: self.p, j });
        }
        Ok(self.galois_unchecked((j % p) as u32))
    }

    pub(crate) fn galois_unchecked(&self, j: u32) -> CycNum {
        let p = self.p as usize;
        let mut full = vec![BigRational::zero(); p];
        for (i, c) in self.coeffs.iter().enumerate() {
            full[(i * j as usize) % p] = c.clone();
        }
        reduce(self.p, full)
    }

    /// Complex conjugation, `ζ ↦ ζ^(p-1)`.
    pub fn conjugate(&self) -> CycNum {
        self.galois_unchecked(self.p - 1)
    }

    pub fn pow(&self, mut n: u32) -> CycNum {
        let mut base = self.clone();
        let mut acc = CycNum::one(self.p);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            n >>= 1;
        }
        acc
    }

    /// Floating-point value `(re, im)`, for display only.
    pub fn approx(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let tau = std::f64::consts::TAU;
        self.coeffs
            .iter()
            .enumerate()
            .fold((0.0, 0.0), |(re, im), (k, c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                let t = tau * k as f64 / self.p as f64;
                (re + c * t.cos(), im + c * t.sin())
            })
    }

    /// Parses a sum of terms such as `1+z^2`, `-3/2*z`, `2 - z^4`.
    ///
    /// Exponents may be any non-negative integer; they are read mod `p`.
    pub fn parse(p: u32, text: &str) -> Result<CycNum> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty value".into()));
        }
        let mut full = vec![BigRational::zero(); p as usize];
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let (negative, body) = match rest.as_bytes()[0] {
                b'-' => (true, &rest[1..]),
                b'+' => (false, &rest[1..]),
                _ => (false, rest),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            if term.is_empty() {
                return Err(Error::Parse(format!("dangling sign in `{text}`")));
            }
            let (coeff, exp) = parse_term(term, text)?;
            let coeff = if negative { -coeff } else { coeff };
            full[(exp % p as u64) as usize] += coeff;
        }
        Ok(reduce(p, full))
    }
}

fn parse_term(term: &str, text: &str) -> Result<(BigRational, u64)> {
    let bad = || Error::Parse(format!("invalid term `{term}` in `{text}`"));
    let (coeff, zpart) = match term.find('z') {
        None => return Ok((parse_rational(term)?, 0)),
        Some(0) => (BigRational::one(), term),
        Some(i) => {
            let c = term[..i].strip_suffix('*').ok_or_else(bad)?;
            (parse_rational(c)?, &term[i..])
        }
    };
    let exp = match zpart {
        "z" => 1,
        _ => zpart
            .strip_prefix("z^")
            .and_then(|e| e.parse::<u64>().ok())
            .ok_or_else(bad)?,
    };
    Ok((coeff, exp))
}

/// Rewrites `ζ^(p-1)` via the minimal polynomial, truncating to `p - 1` slots.
fn reduce(p: u32, mut full: Vec<BigRational>) -> CycNum {
    if p == 2 {
        // Q(ζ_2) = Q with ζ = -1.
        let v = &full[0] - &full[1];
        return CycNum { p, coeffs: vec![v] };
    }
    let top = full.pop().expect("p >= 2");
    if !top.is_zero() {
        for c in full.iter_mut() {
            *c -= &top;
        }
    }
    CycNum { p, coeffs: full }
}

/// Accumulates `Σ c_i ζ^(k_i)` without reducing after every term.
pub(crate) struct CycAccumulator {
    p: u32,
    full: Vec<BigRational>,
}

impl CycAccumulator {
    pub(crate) fn new(p: u32) -> Self {
        CycAccumulator {
            p,
            full: vec![BigRational::zero(); p as usize],
        }
    }

    /// Adds `value · ζ^shift`.
    pub(crate) fn add_shifted(&mut self, value: &CycNum, shift: u32) {
        let p = self.p as usize;
        let shift = shift as usize % p;
        if self.p == 2 {
            let v = &value.coeffs[0];
            self.full[shift] += v;
            return;
        }
        for (i, c) in value.coeffs.iter().enumerate() {
            if !c.is_zero() {
                self.full[(i + shift) % p] += c;
            }
        }
    }

    pub(crate) fn add_rational_shifted(&mut self, r: &BigRational, shift: u32) {
        self.full[(shift % self.p) as usize] += r;
    }

    pub(crate) fn finish(self) -> CycNum {
        reduce(self.p, self.full)
    }
}

impl fmt::Display for CycNum {
    /// Renders in the literal grammar accepted by [`CycNum::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            let sign = if c.is_negative() {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = if abs.is_integer() {
                abs.numer().to_string()
            } else {
                format!("{}/{}", abs.numer(), abs.denom())
            };
            match (k, abs.is_one()) {
                (0, _) => write!(f, "{sign}{mag}")?,
                (1, true) => write!(f, "{sign}z")?,
                (1, false) => write!(f, "{sign}{mag}*z")?,
                (_, true) => write!(f, "{sign}z^{k}")?,
                (_, false) => write!(f, "{sign}{mag}*z^{k}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum(p={}, {})", self.p, self)
    }
}

impl Add for &CycNum {
    type Output = CycNum;
    /// Panics on mismatched orders; use [`CycNum::try_add`] to recover.
    fn add(self, rhs: &CycNum) -> CycNum {
        self.try_add(rhs).expect("cyclotomic order mismatch")
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self.try_sub(rhs).expect("cyclotomic order mismatch")
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        self.try_mul(rhs).expect("cyclotomic order mismatch")
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        self.negate()
    }
}

#[derive(Serialize, Deserialize)]
struct CycNumRepr {
    p: u32,
    coeffs: Vec<String>,
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CycNumRepr {
            p: self.p,
            coeffs: self.coeffs.iter().map(rat_to_fraction).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = CycNumRepr::deserialize(deserializer)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        CycNum::from_coeffs(repr.p as u64, coeffs).map_err(D::Error::custom)
    }
}
