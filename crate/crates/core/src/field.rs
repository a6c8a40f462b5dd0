//! Exact coefficient fields.
//!
//! Every algebraic object in the crate is parameterized by a [`Field`], a
//! small `Copy` context value that knows how to combine its elements. The
//! default is [`Rationals`] (arbitrary precision); [`PrimeField`] exists for
//! speed and answers questions in characteristic `p` only.

use alloc::string::{String, ToString};
use core::fmt::{self, Debug};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("{0} is not a prime greater than 3")]
    NotPrime(u64),
    #[error("denominator {den} is divisible by the characteristic {p}")]
    DenominatorVanishes { den: String, p: u64 },
    #[error("malformed field `{0}` (expected `q` or `fp:<prime>`)")]
    BadField(String),
}

pub trait Field: Copy + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` on zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_rational(&self, r: &BigRational) -> Result<Self::Elem, FieldError>;
    /// Exact text form: integers as `n`, other rationals as `num/den`.
    fn render(&self, a: &Self::Elem) -> String;
    /// Whether a rendered coefficient needs a leading sign split off.
    fn is_negative(&self, a: &Self::Elem) -> bool;
    fn characteristic(&self) -> u64;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

/// The rational numbers with big-integer numerators and denominators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_rational(&self, r: &BigRational) -> Result<BigRational, FieldError> {
        Ok(r.clone())
    }
    fn render(&self, a: &BigRational) -> String {
        render_rational(a)
    }
    fn is_negative(&self, a: &BigRational) -> bool {
        a.is_negative()
    }
    fn characteristic(&self) -> u64 {
        0
    }
}

pub fn render_rational(a: &BigRational) -> String {
    if a.denom().is_one() {
        a.numer().to_string()
    } else {
        alloc::format!("{}/{}", a.numer(), a.denom())
    }
}

/// `Z/pZ` for a prime `p > 3` below `2^32`; elements are canonical
/// representatives in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p <= 3 || p >= (1 << 32) || !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_big(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        let r = v.mod_floor(&m);
        r.to_u64().unwrap_or(0)
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mulmod(acc, base, self.p);
            }
            base = mulmod(base, base, self.p);
            exp >>= 1;
        }
        acc
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mulmod(*a, *b, self.p)
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    fn from_i64(&self, v: i64) -> u64 {
        (v.rem_euclid(self.p as i64)) as u64
    }
    fn from_rational(&self, r: &BigRational) -> Result<u64, FieldError> {
        let den = self.reduce_big(r.denom());
        if den == 0 {
            return Err(FieldError::DenominatorVanishes {
                den: r.denom().to_string(),
                p: self.p,
            });
        }
        let num = self.reduce_big(r.numer());
        Ok(mulmod(num, self.pow(den, self.p - 2), self.p))
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn is_negative(&self, _a: &u64) -> bool {
        false
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
}

/// Runtime choice between the two supported fields, parsed from `q` or
/// `fp:<p>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FieldConfig {
    #[default]
    Rationals,
    Prime(PrimeField),
}

impl FieldConfig {
    pub fn parse(text: &str) -> Result<Self, FieldError> {
        let text = text.trim();
        if text == "q" || text == "Q" {
            return Ok(FieldConfig::Rationals);
        }
        match text.strip_prefix("fp:") {
            Some(p) => {
                let p: u64 = p
                    .trim()
                    .parse()
                    .map_err(|_| FieldError::BadField(text.to_string()))?;
                Ok(FieldConfig::Prime(PrimeField::new(p)?))
            }
            None => Err(FieldError::BadField(text.to_string())),
        }
    }
}

impl fmt::Display for FieldConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldConfig::Rationals => write!(f, "q"),
            FieldConfig::Prime(p) => write!(f, "fp:{}", p.p),
        }
    }
}

/// Integer part of a rational when it is one.
pub fn rational_to_i64(r: &BigRational) -> Option<i64> {
    if r.denom().is_one() {
        r.numer().to_i64()
    } else {
        None
    }
}
