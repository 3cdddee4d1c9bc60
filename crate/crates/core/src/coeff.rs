//! Exact coefficient rings: the integers, the rationals and residues mod n.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("no element u with 2u = {0}")]
    NoHalf(String),
    #[error("2u = {0} has several solutions in {1}")]
    NonUniqueHalf(String, String),
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(String),
    #[error("unknown ring designator `{0}`")]
    BadDesignator(String),
    #[error("{0} is not an element of {1}")]
    NotInRing(String, String),
}

/// A supported coefficient ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CoeffRing {
    Integers,
    Rationals,
    IntegersMod(BigInt),
}

/// An exact ring element.
///
/// The value is always stored canonically for the ring it was produced in:
/// integers have denominator one, residues lie in `[0, n)`, and rationals
/// are in lowest terms. A scalar does not remember its ring, so arithmetic
/// goes through [`CoeffRing`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    fn int(n: BigInt) -> Self {
        Scalar(BigRational::from_integer(n))
    }

    pub fn abs(&self) -> Scalar {
        Scalar(self.0.abs())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(BigInt::from(n))
    }
}

impl CoeffRing {
    pub fn modulo(n: i64) -> Result<Self, CoeffError> {
        Self::modulo_big(BigInt::from(n))
    }

    pub fn modulo_big(n: BigInt) -> Result<Self, CoeffError> {
        if n < BigInt::from(2) {
            return Err(CoeffError::InvalidModulus(n.to_string()));
        }
        Ok(CoeffRing::IntegersMod(n))
    }

    pub fn is_two_torsion_free(&self) -> bool {
        match self {
            CoeffRing::Integers | CoeffRing::Rationals => true,
            CoeffRing::IntegersMod(n) => n.is_odd(),
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        self.from_int(BigInt::one())
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_int(BigInt::from(n))
    }

    pub fn from_int(&self, n: BigInt) -> Scalar {
        match self {
            CoeffRing::IntegersMod(m) => Scalar::int(n.mod_floor(m)),
            _ => Scalar::int(n),
        }
    }

    /// Maps a rational into the ring, failing when it has no image.
    ///
    /// Residue rings accept fractions whose denominator is a unit mod n.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar, CoeffError> {
        match self {
            CoeffRing::Rationals => Ok(Scalar(q.clone())),
            CoeffRing::Integers => {
                if q.is_integer() {
                    Ok(Scalar(q.clone()))
                } else {
                    Err(CoeffError::NotInRing(q.to_string(), self.to_string()))
                }
            }
            CoeffRing::IntegersMod(m) => {
                let d = q.denom().mod_floor(m);
                let inv = mod_inverse(&d, m)
                    .ok_or_else(|| CoeffError::NotInRing(q.to_string(), self.to_string()))?;
                Ok(Scalar::int((q.numer() * inv).mod_floor(m)))
            }
        }
    }

    /// Reinterprets a scalar from another ring (for the supported maps out of Z).
    pub fn image(&self, s: &Scalar) -> Result<Scalar, CoeffError> {
        self.from_rational(&s.0)
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        match self {
            CoeffRing::Rationals => true,
            CoeffRing::Integers => s.0.is_integer(),
            CoeffRing::IntegersMod(m) => {
                s.0.is_integer() && !s.numer().is_negative() && s.numer() < m
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            CoeffRing::Rationals => Scalar(&a.0 + &b.0),
            CoeffRing::Integers => Scalar::int(a.numer() + b.numer()),
            CoeffRing::IntegersMod(m) => Scalar::int((a.numer() + b.numer()).mod_floor(m)),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            CoeffRing::Rationals => Scalar(&a.0 - &b.0),
            CoeffRing::Integers => Scalar::int(a.numer() - b.numer()),
            CoeffRing::IntegersMod(m) => Scalar::int((a.numer() - b.numer()).mod_floor(m)),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match self {
            CoeffRing::Rationals => Scalar(-&a.0),
            CoeffRing::Integers => Scalar::int(-a.numer()),
            CoeffRing::IntegersMod(m) => Scalar::int((-a.numer()).mod_floor(m)),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            CoeffRing::Rationals => Scalar(&a.0 * &b.0),
            CoeffRing::Integers => Scalar::int(a.numer() * b.numer()),
            CoeffRing::IntegersMod(m) => Scalar::int((a.numer() * b.numer()).mod_floor(m)),
        }
    }

    pub fn pow(&self, a: &Scalar, e: u32) -> Scalar {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Negates `a` when `negative` holds; the sign rule helper used everywhere.
    pub fn signed(&self, negative: bool, a: Scalar) -> Scalar {
        if negative {
            self.neg(&a)
        } else {
            a
        }
    }

    /// Division, when the quotient exists and is unique.
    pub fn div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        match self {
            CoeffRing::Rationals => {
                if b.is_zero() {
                    None
                } else {
                    Some(Scalar(&a.0 / &b.0))
                }
            }
            CoeffRing::Integers => {
                if b.is_zero() {
                    return None;
                }
                let (q, r) = a.numer().div_rem(b.numer());
                r.is_zero().then(|| Scalar::int(q))
            }
            CoeffRing::IntegersMod(m) => {
                let inv = mod_inverse(b.numer(), m)?;
                Some(Scalar::int((a.numer() * inv).mod_floor(m)))
            }
        }
    }

    /// The unique `u` with `2u = a`.
    pub fn halve(&self, a: &Scalar) -> Result<Scalar, CoeffError> {
        match self {
            CoeffRing::Rationals => Ok(Scalar(&a.0 / BigInt::from(2))),
            CoeffRing::Integers => {
                let (q, r) = a.numer().div_rem(&BigInt::from(2));
                if r.is_zero() {
                    Ok(Scalar::int(q))
                } else {
                    Err(CoeffError::NoHalf(a.to_string()))
                }
            }
            CoeffRing::IntegersMod(m) => {
                if m.is_odd() {
                    let inv = (m + BigInt::one()) / BigInt::from(2);
                    Ok(Scalar::int((a.numer() * inv).mod_floor(m)))
                } else if a.numer().is_odd() {
                    Err(CoeffError::NoHalf(a.to_string()))
                } else {
                    Err(CoeffError::NonUniqueHalf(a.to_string(), self.to_string()))
                }
            }
        }
    }

    /// A random element; integers are drawn from `[-bound, bound]`.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> Scalar {
        match self {
            CoeffRing::Integers => self.from_i64(rng.gen_range(-bound..=bound)),
            CoeffRing::Rationals => {
                let n = rng.gen_range(-bound..=bound);
                let d = rng.gen_range(1..=bound.max(1));
                Scalar(BigRational::new(BigInt::from(n), BigInt::from(d)))
            }
            CoeffRing::IntegersMod(m) => {
                let top = m.to_i64().unwrap_or(i64::MAX);
                self.from_i64(rng.gen_range(0..top))
            }
        }
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffRing::Integers => write!(f, "Z"),
            CoeffRing::Rationals => write!(f, "Q"),
            CoeffRing::IntegersMod(n) => write!(f, "Z/{n}"),
        }
    }
}

impl FromStr for CoeffRing {
    type Err = CoeffError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "Z" => Ok(CoeffRing::Integers),
            "Q" => Ok(CoeffRing::Rationals),
            other => {
                let n = other
                    .strip_prefix("Z/")
                    .and_then(|n| n.trim().parse::<BigInt>().ok())
                    .ok_or_else(|| CoeffError::BadDesignator(other.to_string()))?;
                CoeffRing::modulo_big(n)
            }
        }
    }
}

/// Parses an integer or a fraction `p/q` into the given ring.
pub fn parse_scalar(ring: &CoeffRing, s: &str) -> Result<Scalar, CoeffError> {
    let s = s.trim();
    let bad = || CoeffError::NotInRing(s.to_string(), ring.to_string());
    let q = match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            BigRational::new(n, d)
        }
        None => BigRational::from_integer(s.parse().map_err(|_| bad())?),
    };
    ring.from_rational(&q)
}
