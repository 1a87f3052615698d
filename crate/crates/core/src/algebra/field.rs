use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primes::is_prime;

/// Coefficient field, identified by its characteristic (0 means ℚ).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct FieldSpec {
    characteristic: u64,
}

/// An exact field element: a rational in characteristic 0, otherwise a
/// canonical residue in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue(u64),
}

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec { characteristic: 0 };

    pub fn new(characteristic: u64) -> Result<Self> {
        if characteristic == 0 || is_prime(characteristic) {
            Ok(FieldSpec { characteristic })
        } else {
            Err(Error::NotPrime(characteristic))
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn is_rational(&self) -> bool {
        self.characteristic == 0
    }

    pub fn zero(&self) -> Scalar {
        match self.characteristic {
            0 => Scalar::Rational(BigRational::zero()),
            _ => Scalar::Residue(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self.characteristic {
            0 => Scalar::Rational(BigRational::one()),
            _ => Scalar::Residue(1),
        }
    }

    pub fn from_i64(&self, value: i64) -> Scalar {
        self.from_bigint(&BigInt::from(value))
    }

    /// Image of an integer under ℤ → 𝕂.
    pub fn from_bigint(&self, value: &BigInt) -> Scalar {
        match self.characteristic {
            0 => Scalar::Rational(BigRational::from_integer(value.clone())),
            p => {
                let r = value.mod_floor(&BigInt::from(p));
                Scalar::Residue(r.to_u64().expect("residue fits in u64"))
            }
        }
    }

    /// Image of a rational; fails when the denominator vanishes in 𝕂.
    pub fn from_rational(&self, value: &BigRational) -> Result<Scalar> {
        match self.characteristic {
            0 => Ok(Scalar::Rational(value.clone())),
            _ => {
                let num = self.from_bigint(value.numer());
                let den = self.from_bigint(value.denom());
                let inv = self.inv(&den).ok_or_else(|| {
                    Error::InvalidArgument(format!(
                        "denominator {} vanishes in characteristic {}",
                        value.denom(),
                        self.characteristic
                    ))
                })?;
                Ok(self.mul(&num, &inv))
            }
        }
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        match (self.characteristic, s) {
            (0, Scalar::Rational(_)) => true,
            (p, Scalar::Residue(v)) if p != 0 => *v < p,
            _ => false,
        }
    }

    pub fn is_zero(&self, s: &Scalar) -> bool {
        s.is_zero()
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            (Scalar::Residue(x), Scalar::Residue(y)) => {
                let p = self.characteristic as u128;
                Scalar::Residue(((*x as u128 + *y as u128) % p) as u64)
            }
            _ => panic!("mixed scalar kinds"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Rational(x) => Scalar::Rational(-x),
            Scalar::Residue(0) => Scalar::Residue(0),
            Scalar::Residue(x) => Scalar::Residue(self.characteristic - x),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            (Scalar::Residue(x), Scalar::Residue(y)) => {
                let p = self.characteristic as u128;
                Scalar::Residue(((*x as u128 * *y as u128) % p) as u64)
            }
            _ => panic!("mixed scalar kinds"),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        match a {
            Scalar::Rational(x) => Some(Scalar::Rational(x.recip())),
            Scalar::Residue(x) => {
                let p = BigInt::from(self.characteristic);
                let e = BigInt::from(*x).extended_gcd(&p);
                Some(self.from_bigint(&e.x))
            }
        }
    }
}

impl TryFrom<u64> for FieldSpec {
    type Error = Error;
    fn try_from(value: u64) -> Result<Self> {
        FieldSpec::new(value)
    }
}

impl From<FieldSpec> for u64 {
    fn from(f: FieldSpec) -> u64 {
        f.characteristic
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.characteristic {
            0 => write!(f, "Q"),
            p => write!(f, "F_{p}"),
        }
    }
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(x) => x.is_zero(),
            Scalar::Residue(x) => *x == 0,
        }
    }

    /// Integer value when the scalar is an integer rational or a residue.
    pub fn to_bigint(&self) -> Option<BigInt> {
        match self {
            Scalar::Rational(x) if x.is_integer() => Some(x.to_integer()),
            Scalar::Rational(_) => None,
            Scalar::Residue(x) => Some(BigInt::from(*x)),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(x) => write!(f, "{x}"),
            Scalar::Residue(x) => write!(f, "{x}"),
        }
    }
}
