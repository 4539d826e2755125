//! Truncated sparse series in `F[X1..Xn][[Y]]` with exact arithmetic mod Y^N.
//!
//! Every series carries an explicit Y-precision N; binary operations
//! propagate the minimum precision of their operands. X-degrees are never
//! capped. Terms live in a BTreeMap keyed by (Y-exponent, X-multidegree),
//! which fixes the canonical ordering used for rendering and equality.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Error;
use crate::field::{FieldDesc, FieldElem};

/// Monomial key: Y-exponent first, then the X-multidegree lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub k: u32,
    pub mu: Vec<u32>,
}

impl Monomial {
    pub fn new(mu: Vec<u32>, k: u32) -> Self {
        Monomial { k, mu }
    }

    pub fn constant(nvars: usize) -> Self {
        Monomial {
            k: 0,
            mu: vec![0; nvars],
        }
    }

    pub fn total_x_degree(&self) -> u32 {
        let t: u64 = self.mu.iter().map(|&e| e as u64).sum();
        u32::try_from(t).expect("X-exponent arithmetic overflow")
    }

    // Product of monomials = componentwise exponent addition.
    fn product(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.mu.len(), other.mu.len());
        let mu = self
            .mu
            .iter()
            .zip(&other.mu)
            .map(|(a, b)| a.checked_add(*b).expect("X-exponent arithmetic overflow"))
            .collect();
        Monomial {
            k: self.k + other.k,
            mu,
        }
    }
}

/// Which X-degree [`Series::deg_x`] reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegX {
    Total,
    /// 0-based variable index.
    Var(usize),
    /// The last variable X_n.
    Xn,
}

/// Element of F[X1..Xn; Y, lambda] known modulo Y^prec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    field: FieldDesc,
    nvars: usize,
    prec: u32,
    terms: BTreeMap<Monomial, FieldElem>,
}

impl Series {
    pub fn zero(field: FieldDesc, nvars: usize, prec: u32) -> Self {
        assert!(nvars >= 1, "need at least one X variable");
        assert!(prec >= 1, "precision must be at least 1");
        Series {
            field,
            nvars,
            prec,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: FieldDesc, nvars: usize, prec: u32, c: FieldElem) -> Self {
        Self::from_terms(field, nvars, prec, [(Monomial::constant(nvars), c)])
    }

    pub fn one(field: FieldDesc, nvars: usize, prec: u32) -> Self {
        let c = field.one();
        Self::constant(field, nvars, prec, c)
    }

    /// X_i^e (0-based i).
    pub fn var_pow(field: FieldDesc, nvars: usize, prec: u32, i: usize, e: u32) -> Self {
        assert!(i < nvars);
        let mut mu = vec![0; nvars];
        mu[i] = e;
        let c = field.one();
        Self::from_terms(field, nvars, prec, [(Monomial::new(mu, 0), c)])
    }

    /// Y^k, the zero series when k >= prec.
    pub fn y_pow(field: FieldDesc, nvars: usize, prec: u32, k: u32) -> Self {
        let c = field.one();
        Self::from_terms(field, nvars, prec, [(Monomial::new(vec![0; nvars], k), c)])
    }

    /// Canonicalizing constructor: sums duplicate monomials, drops zero
    /// coefficients and every term with Y-exponent >= prec.
    pub fn from_terms(
        field: FieldDesc,
        nvars: usize,
        prec: u32,
        terms: impl IntoIterator<Item = (Monomial, FieldElem)>,
    ) -> Self {
        let mut s = Series::zero(field, nvars, prec);
        for (m, c) in terms {
            assert_eq!(m.mu.len(), nvars, "monomial arity mismatch");
            if m.k >= prec || field.is_zero(&c) {
                continue;
            }
            match s.terms.entry(m) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = field.add(e.get(), &c);
                    if field.is_zero(&sum) {
                        e.remove();
                    } else {
                        *e.get_mut() = sum;
                    }
                }
            }
        }
        s
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of a monomial (zero when absent).
    pub fn coeff(&self, m: &Monomial) -> FieldElem {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub(crate) fn check_compat(&self, other: &Series) -> Result<(), Error> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: other.nvars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Series) -> Result<Series, Error> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Series) -> Result<Series, Error> {
        self.combine(other, true)
    }

    fn combine(&self, other: &Series, negate: bool) -> Result<Series, Error> {
        self.check_compat(other)?;
        let prec = self.prec.min(other.prec);
        let mut out = Series::zero(self.field, self.nvars, prec);
        for (m, c) in &self.terms {
            if m.k < prec {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        for (m, c) in &other.terms {
            if m.k >= prec {
                continue;
            }
            let c = if negate { self.field.neg(c) } else { c.clone() };
            match out.terms.entry(m.clone()) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = self.field.add(e.get(), &c);
                    if self.field.is_zero(&sum) {
                        e.remove();
                    } else {
                        *e.get_mut() = sum;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Series {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.field.neg(c);
        }
        out
    }

    pub fn scale(&self, c: &FieldElem) -> Series {
        if self.field.is_zero(c) {
            return Series::zero(self.field, self.nvars, self.prec);
        }
        let mut out = self.clone();
        out.terms.retain(|_, v| {
            *v = self.field.mul(v, c);
            !self.field.is_zero(v)
        });
        out
    }

    /// Convolution product, truncated to the minimum operand precision.
    pub fn mul(&self, other: &Series) -> Result<Series, Error> {
        self.check_compat(other)?;
        let prec = self.prec.min(other.prec);
        let mut acc: BTreeMap<Monomial, FieldElem> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            if ma.k >= prec {
                continue;
            }
            for (mb, cb) in &other.terms {
                // terms are ordered by k first, so the tail is all truncated
                if ma.k + mb.k >= prec {
                    break;
                }
                let m = ma.product(mb);
                let c = self.field.mul(ca, cb);
                match acc.entry(m) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let sum = self.field.add(e.get(), &c);
                        *e.get_mut() = sum;
                    }
                }
            }
        }
        acc.retain(|_, v| !self.field.is_zero(v));
        Ok(Series {
            field: self.field,
            nvars: self.nvars,
            prec,
            terms: acc,
        })
    }

    pub fn pow(&self, e: u32) -> Result<Series, Error> {
        let mut out = Series::one(self.field, self.nvars, self.prec);
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Y-adic order; `None` is the infinity marker of the zero series.
    pub fn ord_y(&self) -> Option<u32> {
        // first key has the least k: terms sort by k before mu
        self.terms.keys().next().map(|m| m.k)
    }

    /// Max X-degree over stored terms; `None` is the minus-infinity marker.
    pub fn deg_x(&self, which: DegX) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| match which {
                DegX::Total => m.total_x_degree(),
                DegX::Var(i) => m.mu[i],
                DegX::Xn => m.mu[self.nvars - 1],
            })
            .max()
    }

    /// Keep only the Y-free part (k = 0 terms); precision is preserved.
    pub fn reduce_mod_y(&self) -> Series {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.k == 0)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Series {
            field: self.field,
            nvars: self.nvars,
            prec: self.prec,
            terms,
        }
    }

    /// Projection keeping X_n-degrees below s, unchanged.
    pub fn alpha(&self, s: u32) -> Series {
        let n = self.nvars - 1;
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.mu[n] < s)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Series {
            field: self.field,
            nvars: self.nvars,
            prec: self.prec,
            terms,
        }
    }

    /// Projection keeping X_n-degrees >= s, lowered by s; the section
    /// identity tau(w * X_n^s, s) = w holds exactly.
    pub fn tau(&self, s: u32) -> Series {
        let n = self.nvars - 1;
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.mu[n] >= s)
            .map(|(m, c)| {
                let mut mu = m.mu.clone();
                mu[n] -= s;
                (Monomial::new(mu, m.k), c.clone())
            })
            .collect();
        Series {
            field: self.field,
            nvars: self.nvars,
            prec: self.prec,
            terms,
        }
    }

    /// Lower the precision, dropping the now-unknown terms. Raising the
    /// precision would fabricate information and is an error.
    pub fn truncate(&self, new_prec: u32) -> Result<Series, Error> {
        if new_prec > self.prec {
            return Err(Error::PrecisionIncrease {
                from: self.prec,
                to: new_prec,
            });
        }
        if new_prec < 1 {
            return Err(Error::InvalidParameter(
                "precision must be at least 1".into(),
            ));
        }
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.k < new_prec)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Ok(Series {
            field: self.field,
            nvars: self.nvars,
            prec: new_prec,
            terms,
        })
    }

    /// Multiply by Y^d; the result is known modulo Y^(prec + d).
    pub fn mul_y_pow(&self, d: u32) -> Series {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (Monomial::new(m.mu.clone(), m.k + d), c.clone()))
            .collect();
        Series {
            field: self.field,
            nvars: self.nvars,
            prec: self.prec.checked_add(d).expect("precision overflow"),
            terms,
        }
    }

    /// Exact division by Y^d; the result is known modulo Y^(prec - d).
    pub fn div_y_pow(&self, d: u32) -> Result<Series, Error> {
        if d == 0 {
            return Ok(self.clone());
        }
        if self.prec <= d {
            return Err(Error::PrecisionUnderflow);
        }
        if let Some(ord) = self.ord_y() {
            if ord < d {
                return Err(Error::NotDivisibleByYd { d });
            }
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (Monomial::new(m.mu.clone(), m.k - d), c.clone()))
            .collect();
        Ok(Series {
            field: self.field,
            nvars: self.nvars,
            prec: self.prec - d,
            terms,
        })
    }

    /// The Y^j slice as a Y-free series (k set to 0).
    pub fn y_slice(&self, j: u32) -> Series {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.k == j)
            .map(|(m, c)| (Monomial::new(m.mu.clone(), 0), c.clone()))
            .collect();
        Series {
            field: self.field,
            nvars: self.nvars,
            prec: self.prec,
            terms,
        }
    }

    /// Coefficient of X_n^d, viewed in the same ambient variables
    /// (the X_n-component of every returned monomial is zero).
    pub fn xn_coeff(&self, d: u32) -> Series {
        let n = self.nvars - 1;
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.mu[n] == d)
            .map(|(m, c)| {
                let mut mu = m.mu.clone();
                mu[n] = 0;
                (Monomial::new(mu, m.k), c.clone())
            })
            .collect();
        Series {
            field: self.field,
            nvars: self.nvars,
            prec: self.prec,
            terms,
        }
    }

    /// Multiply by X_n^e.
    pub fn xn_mul_pow(&self, e: u32) -> Series {
        let n = self.nvars - 1;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut mu = m.mu.clone();
                mu[n] = mu[n]
                    .checked_add(e)
                    .expect("X-exponent arithmetic overflow");
                (Monomial::new(mu, m.k), c.clone())
            })
            .collect();
        Series {
            field: self.field,
            nvars: self.nvars,
            prec: self.prec,
            terms,
        }
    }
}

fn write_term(
    f: &mut fmt::Formatter<'_>,
    m: &Monomial,
    c: &FieldElem,
    field: &FieldDesc,
    nvars: usize,
) -> fmt::Result {
    let is_const = m.k == 0 && m.mu.iter().all(|&e| e == 0);
    let mut lead = true;
    if is_const || !field.is_one(c) {
        write!(f, "{c}")?;
        lead = false;
    }
    for (i, &e) in m.mu.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !lead {
            write!(f, "*")?;
        }
        lead = false;
        if nvars == 1 {
            write!(f, "X")?;
        } else {
            write!(f, "X{}", i + 1)?;
        }
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    if m.k > 0 {
        if !lead {
            write!(f, "*")?;
        }
        write!(f, "Y")?;
        if m.k > 1 {
            write!(f, "^{}", m.k)?;
        }
    }
    Ok(())
}

impl fmt::Display for Series {
    /// Canonical text: terms ascending by (Y-exponent, X-multidegree);
    /// `X` abbreviates `X1` in the single-variable case.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let neg = c.is_negative();
            let mag = if neg { self.field.neg(c) } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write_term(f, m, &mag, &self.field, self.nvars)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_series;

    fn q() -> FieldDesc {
        FieldDesc::rationals()
    }

    fn s(text: &str, nvars: usize, prec: u32) -> Series {
        parse_series(text, &q(), nvars, prec).unwrap()
    }

    #[test]
    fn add_cancels() {
        let a = s("X + Y", 1, 4);
        let b = s("X - Y", 1, 4);
        assert_eq!(a.add(&b).unwrap(), s("2*X", 1, 4));
    }

    #[test]
    fn add_identity_preserves_precision() {
        let a = s("X + Y^2", 1, 5);
        let z = Series::zero(q(), 1, 5);
        assert_eq!(a.add(&z).unwrap(), a);
    }

    #[test]
    fn char_two_doubles_to_zero() {
        let f2 = FieldDesc::prime(2).unwrap();
        let a = parse_series("X + Y", &f2, 1, 4).unwrap();
        let sum = a.add(&a).unwrap();
        assert!(sum.is_zero());
    }

    #[test]
    fn telescoping_product_is_one() {
        let a = s("1 - X*Y", 1, 4);
        let b = s("1 + X*Y + X^2*Y^2 + X^3*Y^3", 1, 4);
        assert_eq!(a.mul(&b).unwrap(), s("1", 1, 4));
    }

    #[test]
    fn monomial_product() {
        let x = s("X", 1, 4);
        let y = s("Y", 1, 4);
        assert_eq!(x.mul(&y).unwrap(), s("X*Y", 1, 4));
    }

    #[test]
    fn difference_of_squares_truncates() {
        let a = s("X - Y", 1, 2);
        let b = s("X + Y", 1, 2);
        // -Y^2 falls outside precision 2
        assert_eq!(a.mul(&b).unwrap(), s("X^2", 1, 2));
    }

    #[test]
    fn ord_y_reads_least_exponent() {
        assert_eq!(s("Y^2*X + Y^3", 1, 5).ord_y(), Some(2));
        assert_eq!(s("X + 1", 1, 5).ord_y(), Some(0));
        assert_eq!(Series::zero(q(), 1, 5).ord_y(), None);
    }

    #[test]
    fn deg_x_variants() {
        let a = s("X1^2*X2*Y", 2, 3);
        assert_eq!(a.deg_x(DegX::Total), Some(3));
        assert_eq!(a.deg_x(DegX::Var(1)), Some(1));
        assert_eq!(a.deg_x(DegX::Xn), Some(1));
        assert_eq!(Series::zero(q(), 2, 3).deg_x(DegX::Total), None);
    }

    #[test]
    fn reduce_mod_y_cases() {
        assert_eq!(s("X + X*Y + Y^2", 1, 4).reduce_mod_y(), s("X", 1, 4));
        assert!(s("Y", 1, 4).reduce_mod_y().is_zero());
        assert_eq!(s("3 + X1*Y + X2", 2, 4).reduce_mod_y(), s("3 + X2", 2, 4));
    }

    #[test]
    fn alpha_tau_split() {
        let a = s("X2^3 + X1*X2 + 1", 2, 4);
        assert_eq!(a.alpha(2), s("X1*X2 + 1", 2, 4));
        assert_eq!(a.tau(2), s("X2", 2, 4));
        // recomposition: alpha(a, s) + X_n^s * tau(a, s) = a
        let back = a.alpha(2).add(&a.tau(2).xn_mul_pow(2)).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn tau_section_and_kernel() {
        let w = s("X1 + X2*Y + 5", 2, 4);
        assert_eq!(w.xn_mul_pow(2).tau(2), w);
        let low = s("X2 + X1^4", 2, 4);
        assert!(low.tau(2).is_zero()); // deg_{Xn} < 2
    }

    #[test]
    fn truncate_cases() {
        let a = s("1 + Y + Y^2", 1, 3);
        assert_eq!(a.truncate(2).unwrap(), s("1 + Y", 1, 2));
        assert_eq!(a.truncate(3).unwrap(), a);
        assert!(s("Y^2", 1, 3).truncate(1).unwrap().is_zero());
        assert_eq!(
            a.truncate(4),
            Err(Error::PrecisionIncrease { from: 3, to: 4 })
        );
    }

    #[test]
    fn y_power_shifts() {
        let a = s("X + Y", 1, 3);
        let up = a.mul_y_pow(2);
        assert_eq!(up.prec(), 5);
        assert_eq!(up, s("X*Y^2 + Y^3", 1, 5));
        assert_eq!(up.div_y_pow(2).unwrap(), a);
        assert_eq!(a.div_y_pow(1), Err(Error::NotDivisibleByYd { d: 1 }));
    }

    #[test]
    fn mixed_field_and_arity_are_rejected() {
        let a = s("X", 1, 3);
        let b = parse_series("X", &FieldDesc::prime(7).unwrap(), 1, 3).unwrap();
        assert_eq!(a.add(&b), Err(Error::FieldMismatch));
        let c = s("X1", 2, 3);
        assert!(matches!(a.add(&c), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn canonical_rendering() {
        assert_eq!(s("X - Y", 1, 4).to_string(), "X - Y");
        assert_eq!(Series::zero(q(), 1, 4).to_string(), "0");
        assert_eq!(s("-1/2*X + Y", 1, 4).to_string(), "-1/2*X + Y");
        assert_eq!(
            s("3*X1^2*X2*Y^4 + 1/2*X1", 2, 6).to_string(),
            "1/2*X1 + 3*X1^2*X2*Y^4"
        );
        let f7 = FieldDesc::prime(7).unwrap();
        let a = parse_series("X - Y", &f7, 1, 4).unwrap();
        assert_eq!(a.to_string(), "X + 6*Y");
    }
}
