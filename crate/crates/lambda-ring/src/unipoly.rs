//! Dense univariate polynomials over the coefficient field, used for the
//! mod-Y work inside factorization: division, gcd, Bezout coefficients and
//! conversions to and from one-variable series.

use std::fmt;

use crate::error::Error;
use crate::field::{FieldDesc, FieldElem};
use crate::series::{DegX, Monomial, Series};

/// `coeffs[i]` is the X^i coefficient; no trailing zeros; empty = 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    field: FieldDesc,
    coeffs: Vec<FieldElem>,
}

impl UniPoly {
    pub fn new(field: FieldDesc, mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn zero(field: FieldDesc) -> Self {
        UniPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: FieldDesc) -> Self {
        let c = field.one();
        UniPoly::new(field, vec![c])
    }

    pub fn constant(field: FieldDesc, c: FieldElem) -> Self {
        UniPoly::new(field, vec![c])
    }

    /// X^e
    pub fn x_pow(field: FieldDesc, e: usize) -> Self {
        let mut coeffs = vec![field.zero(); e + 1];
        coeffs[e] = field.one();
        UniPoly::new(field, coeffs)
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&FieldElem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| self.field.is_one(c))
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.field.add(&self.coeff(i), &other.coeff(i)))
            .collect();
        UniPoly::new(self.field, coeffs)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.field.sub(&self.coeff(i), &other.coeff(i)))
            .collect();
        UniPoly::new(self.field, coeffs)
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly::new(
            self.field,
            self.coeffs.iter().map(|c| self.field.neg(c)).collect(),
        )
    }

    pub fn scale(&self, c: &FieldElem) -> UniPoly {
        UniPoly::new(
            self.field,
            self.coeffs.iter().map(|v| self.field.mul(v, c)).collect(),
        )
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if self.field.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let prod = self.field.mul(a, b);
                coeffs[i + j] = self.field.add(&coeffs[i + j], &prod);
            }
        }
        UniPoly::new(self.field, coeffs)
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut out = UniPoly::one(self.field);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Division with remainder; the divisor's leading coefficient must be
    /// invertible (always true over a field for nonzero divisors).
    pub fn divmod(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly), Error> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::DivisionByZero);
        };
        let lead_inv = self
            .field
            .inv(divisor.leading().expect("nonzero divisor"))?;
        let mut rem = self.clone();
        let mut quo = vec![self.field.zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = self.field.mul(rem.leading().expect("nonzero"), &lead_inv);
            let shift = rd - dd;
            quo[shift] = self.field.add(&quo[shift], &factor);
            // rem -= factor * X^shift * divisor
            let mut coeffs = rem.coeffs;
            for (j, b) in divisor.coeffs.iter().enumerate() {
                let prod = self.field.mul(&factor, b);
                coeffs[shift + j] = self.field.sub(&coeffs[shift + j], &prod);
            }
            rem = UniPoly::new(self.field, coeffs);
        }
        Ok((UniPoly::new(self.field, quo), rem))
    }

    pub fn is_divisible_by(&self, divisor: &UniPoly) -> bool {
        matches!(self.divmod(divisor), Ok((_, r)) if r.is_zero())
    }

    /// Monic associate and the leading unit that was removed.
    pub fn monic(&self) -> (FieldElem, UniPoly) {
        match self.leading() {
            None => (self.field.one(), self.clone()),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("nonzero leading coefficient");
                (lc.clone(), self.scale(&inv))
            }
        }
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divmod(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic().1
        }
    }

    /// Extended Euclid: returns (g, u, v) with u*self + v*other = g, g monic.
    pub fn egcd(&self, other: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut u0, mut u1) = (UniPoly::one(self.field), UniPoly::zero(self.field));
        let (mut v0, mut v1) = (UniPoly::zero(self.field), UniPoly::one(self.field));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let nu = u0.sub(&q.mul(&u1));
            u0 = std::mem::replace(&mut u1, nu);
            let nv = v0.sub(&q.mul(&v1));
            v0 = std::mem::replace(&mut v1, nv);
        }
        if r0.is_zero() {
            return (r0, u0, v0);
        }
        let (lc, g) = r0.monic();
        let lc_inv = self.field.inv(&lc).expect("unit");
        (g, u0.scale(&lc_inv), v0.scale(&lc_inv))
    }

    /// Reinterpret as a Y-free series in one X variable.
    pub fn to_series(&self, prec: u32) -> Series {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (Monomial::new(vec![i as u32], 0), c.clone()));
        Series::from_terms(self.field, 1, prec, terms)
    }

    /// Read the mod-Y image of a one-variable series.
    pub fn from_series_mod_y(s: &Series) -> Result<UniPoly, Error> {
        if s.nvars() != 1 {
            return Err(Error::ArityMismatch {
                expected: 1,
                got: s.nvars(),
            });
        }
        let red = s.reduce_mod_y();
        let deg = red.deg_x(DegX::Total).map_or(0, |d| d as usize);
        let mut coeffs = vec![s.field().zero(); deg + 1];
        for (m, c) in red.terms() {
            coeffs[m.mu[0] as usize] = c.clone();
        }
        Ok(UniPoly::new(*s.field(), coeffs))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_series(1))
    }
}
