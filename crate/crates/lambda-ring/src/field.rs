//! Exact coefficient arithmetic over prime fields F_p and the rationals.
//!
//! A [`FieldDesc`] performs the arithmetic; [`FieldElem`] is plain data.
//! Prime residues are stored canonically in `[0, p)`, rationals fully
//! reduced with a positive denominator (num-rational keeps both
//! invariants for us).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Largest admissible prime modulus.
pub const MAX_PRIME: u64 = 1 << 31;

/// Coefficient field: F_p for a prime p <= 2^31, or the rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldDesc {
    Prime(u64),
    Rationals,
}

/// An element of a [`FieldDesc`]: a canonical residue or a reduced fraction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Fp(u64),
    Rat(BigRational),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// Extended Euclid; a must be a nonzero residue mod p.
fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        let r = r0 - q * r1;
        r0 = r1;
        r1 = r;
        let t = t0 - q * t1;
        t0 = t1;
        t1 = t;
    }
    debug_assert_eq!(r0, 1, "inverse of a non-unit residue");
    t0.rem_euclid(p as i64) as u64
}

impl FieldDesc {
    /// Build F_p, verifying primality by trial division.
    pub fn prime(p: u64) -> Result<Self, Error> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(Error::InvalidParameter(format!(
                "{p} is not a prime in [2, 2^31]"
            )));
        }
        Ok(FieldDesc::Prime(p))
    }

    pub fn rationals() -> Self {
        FieldDesc::Rationals
    }

    pub fn zero(&self) -> FieldElem {
        match self {
            FieldDesc::Prime(_) => FieldElem::Fp(0),
            FieldDesc::Rationals => FieldElem::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> FieldElem {
        match self {
            FieldDesc::Prime(_) => FieldElem::Fp(1),
            FieldDesc::Rationals => FieldElem::Rat(BigRational::one()),
        }
    }

    pub fn from_i64(&self, v: i64) -> FieldElem {
        match self {
            FieldDesc::Prime(p) => FieldElem::Fp(v.rem_euclid(*p as i64) as u64),
            FieldDesc::Rationals => FieldElem::Rat(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> FieldElem {
        match self {
            FieldDesc::Prime(p) => {
                let m = v.mod_floor(&BigInt::from(*p));
                FieldElem::Fp(m.to_u64().expect("residue fits u64"))
            }
            FieldDesc::Rationals => FieldElem::Rat(BigRational::from_integer(v.clone())),
        }
    }

    /// n/d as a field element; fails when d maps to zero.
    pub fn from_fraction(&self, n: i64, d: i64) -> Result<FieldElem, Error> {
        let num = self.from_i64(n);
        let den = self.from_i64(d);
        self.div(&num, &den)
    }

    pub fn is_zero(&self, a: &FieldElem) -> bool {
        match a {
            FieldElem::Fp(v) => *v == 0,
            FieldElem::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self, a: &FieldElem) -> bool {
        match a {
            FieldElem::Fp(v) => *v == 1,
            FieldElem::Rat(r) => r.is_one(),
        }
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (self, a, b) {
            (FieldDesc::Prime(p), FieldElem::Fp(x), FieldElem::Fp(y)) => FieldElem::Fp((x + y) % p),
            (FieldDesc::Rationals, FieldElem::Rat(x), FieldElem::Rat(y)) => FieldElem::Rat(x + y),
            _ => unreachable!("field element does not match descriptor"),
        }
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        match (self, a) {
            (FieldDesc::Prime(p), FieldElem::Fp(x)) => FieldElem::Fp((p - x) % p),
            (FieldDesc::Rationals, FieldElem::Rat(x)) => FieldElem::Rat(-x),
            _ => unreachable!("field element does not match descriptor"),
        }
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (self, a, b) {
            (FieldDesc::Prime(p), FieldElem::Fp(x), FieldElem::Fp(y)) => FieldElem::Fp(x * y % p),
            (FieldDesc::Rationals, FieldElem::Rat(x), FieldElem::Rat(y)) => FieldElem::Rat(x * y),
            _ => unreachable!("field element does not match descriptor"),
        }
    }

    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem, Error> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match (self, a) {
            (FieldDesc::Prime(p), FieldElem::Fp(x)) => FieldElem::Fp(inv_mod(*x, *p)),
            (FieldDesc::Rationals, FieldElem::Rat(x)) => FieldElem::Rat(x.recip()),
            _ => unreachable!("field element does not match descriptor"),
        })
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem, Error> {
        Ok(self.mul(a, &self.inv(b)?))
    }
}

impl FieldElem {
    /// True for rationals strictly below zero; residues are never negative.
    pub fn is_negative(&self) -> bool {
        match self {
            FieldElem::Fp(_) => false,
            FieldElem::Rat(r) => r.is_negative(),
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Fp(v) => write!(f, "{v}"),
            FieldElem::Rat(r) => write!(f, "{r}"),
        }
    }
}
