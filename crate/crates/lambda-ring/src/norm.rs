//! The norms |.|_lambda and ||.||_{lambda,c}, represented in exponent space.
//!
//! Every norm value is p^q for the fixed (never materialized) base p > 1, so
//! we store the exact rational q and compare exponents. The norm of the zero
//! series is the bottom marker, below every exponent.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::growth::GrowthFn;
use crate::series::Series;
use crate::weierstrass::is_distinguished;

/// A norm value p^exponent, or zero (the bottom marker).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormExp {
    Zero,
    Exp(BigRational),
}

impl NormExp {
    pub fn exp_i64(v: i64) -> Self {
        NormExp::Exp(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, NormExp::Zero)
    }

    pub fn exponent(&self) -> Option<&BigRational> {
        match self {
            NormExp::Zero => None,
            NormExp::Exp(q) => Some(q),
        }
    }
}

impl Ord for NormExp {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (NormExp::Zero, NormExp::Zero) => Ordering::Equal,
            (NormExp::Zero, NormExp::Exp(_)) => Ordering::Less,
            (NormExp::Exp(_), NormExp::Zero) => Ordering::Greater,
            (NormExp::Exp(a), NormExp::Exp(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for NormExp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for NormExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormExp::Zero => write!(f, "0"),
            NormExp::Exp(q) => write!(f, "p^({q})"),
        }
    }
}

/// Positive rational weight vector c for ||.||_{lambda,c}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weights(Vec<BigRational>);

impl Weights {
    pub fn new(c: Vec<BigRational>) -> Result<Self, Error> {
        if c.is_empty() {
            return Err(Error::InvalidParameter("empty weight vector".into()));
        }
        if c.iter().any(|w| *w <= BigRational::zero()) {
            return Err(Error::InvalidParameter(
                "weights must be strictly positive".into(),
            ));
        }
        Ok(Weights(c))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[BigRational] {
        &self.0
    }

    /// The weight of the last variable, c_n.
    pub fn last(&self) -> &BigRational {
        self.0.last().expect("weights are nonempty")
    }

    /// c . mu
    pub fn dot(&self, mu: &[u32]) -> BigRational {
        debug_assert_eq!(self.0.len(), mu.len());
        let mut acc = BigRational::zero();
        for (c, &e) in self.0.iter().zip(mu) {
            if e != 0 {
                acc += c * BigRational::from_integer(BigInt::from(e));
            }
        }
        acc
    }
}

/// |a|_lambda = p^{-lambda(ord_Y a)}, and 0 for the zero series.
pub fn norm_lambda(a: &Series, lam: &GrowthFn) -> Result<NormExp, Error> {
    match a.ord_y() {
        None => Ok(NormExp::Zero),
        Some(k) => Ok(NormExp::Exp(-lam.eval(k)?)),
    }
}

/// ||a||_{lambda,c} = max over the support of p^{c.mu - lambda(k)}.
///
/// The max over stored terms equals the max over X-monomials of
/// |a_mu|_lambda p^{c.mu}: for fixed mu the largest contribution comes from
/// the least Y-exponent, which is ord_Y(a_mu).
pub fn norm_weighted(a: &Series, lam: &GrowthFn, c: &Weights) -> Result<NormExp, Error> {
    if c.len() != a.nvars() {
        return Err(Error::ArityMismatch {
            expected: a.nvars(),
            got: c.len(),
        });
    }
    let mut best: Option<BigRational> = None;
    for (m, _) in a.terms() {
        let e = c.dot(&m.mu) - lam.eval(m.k)?;
        if best.as_ref().is_none_or(|b| e > *b) {
            best = Some(e);
        }
    }
    Ok(match best {
        None => NormExp::Zero,
        Some(e) => NormExp::Exp(e),
    })
}

/// Exact re-check of the weighted distinguishedness conditions for g of
/// degree s: the X_n^s coefficient has weighted norm exactly 1, and every
/// other X_n-slice satisfies ||g_k X_n^k|| < p^{c_n s} strictly.
pub fn weights_certify(g: &Series, lam: &GrowthFn, c: &Weights, s: u32) -> Result<bool, Error> {
    if c.len() != g.nvars() {
        return Err(Error::ArityMismatch {
            expected: g.nvars(),
            got: c.len(),
        });
    }
    let cn = c.last().clone();
    let cns = &cn * BigRational::from_integer(BigInt::from(s));
    let kmax = match g.deg_x(crate::series::DegX::Xn) {
        None => return Ok(false),
        Some(d) => d,
    };
    if s > kmax {
        return Ok(false); // the X_n^s coefficient is zero, never a unit
    }
    for d in 0..=kmax {
        let gd = g.xn_coeff(d);
        if gd.is_zero() {
            continue;
        }
        // gd has no X_n component, so c_n plays no role in its norm
        let nd = norm_weighted(&gd, lam, c)?;
        if d == s {
            if nd != NormExp::Exp(BigRational::zero()) {
                return Ok(false);
            }
        } else {
            match nd {
                NormExp::Zero => {}
                NormExp::Exp(q) => {
                    let total = q + &cn * BigRational::from_integer(BigInt::from(d));
                    if total >= cns {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Find weights making a distinguished g weighted-distinguished of the same
/// degree: start from c_n = min(1, lambda(1)/(2(K-s))) where K is the top
/// X_n-degree in the support, shrink the first n-1 coordinates geometrically,
/// and halve c_n between rounds. Existence is guaranteed for distinguished
/// input, so exhaustion signals a degenerate argument.
pub fn select_weights(g: &Series, lam: &GrowthFn) -> Result<(Weights, u32), Error> {
    let s = is_distinguished(g).ok_or(Error::NotDistinguished)?;
    let n = g.nvars();
    let one = BigRational::one();
    let two = BigRational::from_integer(BigInt::from(2));
    let kmax = g.deg_x(crate::series::DegX::Xn).expect("nonzero series");
    let mut cn = if kmax > s {
        let cap = lam.eval(1)? / (&two * BigRational::from_integer(BigInt::from(kmax - s)));
        cap.min(one.clone())
    } else {
        one.clone()
    };
    for _round in 0..=60 {
        if n == 1 {
            let c = Weights::new(vec![cn.clone()])?;
            if weights_certify(g, lam, &c, s)? {
                return Ok((c, s));
            }
        } else {
            let mut cp = &cn / &two;
            for _j in 1..=200 {
                let mut v = vec![cp.clone(); n - 1];
                v.push(cn.clone());
                let c = Weights::new(v)?;
                if weights_certify(g, lam, &c, s)? {
                    return Ok((c, s));
                }
                cp = &cp / &two;
            }
        }
        cn = &cn / &two;
    }
    Err(Error::WeightSearchExhausted)
}

/// One slice-degree violation of the growth bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipViolation {
    pub k: u32,
    pub degree: u32,
    pub bound: BigRational,
}

/// Truncation-level membership evidence. Membership in F[X; Y, lambda] is an
/// asymptotic property, so a pass here is a heuristic, never a proof.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipReport {
    pub c: BigRational,
    pub k0: u32,
    pub prec: u32,
    pub violations: Vec<MembershipViolation>,
}

impl MembershipReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check deg_X(f_k) <= C * lambda(k) for every Y-level k in [k0, prec).
pub fn membership_check(
    f: &Series,
    lam: &GrowthFn,
    c: &BigRational,
    k0: u32,
) -> Result<MembershipReport, Error> {
    if *c <= BigRational::zero() {
        return Err(Error::InvalidParameter("C must be positive".into()));
    }
    if k0 >= f.prec() {
        return Err(Error::InvalidParameter(format!(
            "k0 = {} must be below the precision {}",
            k0,
            f.prec()
        )));
    }
    let mut violations = Vec::new();
    for k in k0..f.prec() {
        let slice = f.y_slice(k);
        let Some(degree) = slice.deg_x(crate::series::DegX::Total) else {
            continue;
        };
        let bound = c * lam.eval(k)?;
        if BigRational::from_integer(BigInt::from(degree)) > bound {
            violations.push(MembershipViolation { k, degree, bound });
        }
    }
    Ok(MembershipReport {
        c: c.clone(),
        k0,
        prec: f.prec(),
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldDesc;
    use crate::parse::parse_series;

    fn q() -> FieldDesc {
        FieldDesc::rationals()
    }

    fn s(text: &str, nvars: usize, prec: u32) -> Series {
        parse_series(text, &q(), nvars, prec).unwrap()
    }

    fn lin1() -> GrowthFn {
        GrowthFn::linear(BigRational::one()).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn y_adic_norm_values() {
        assert_eq!(
            norm_lambda(&s("Y^2", 1, 4), &lin1()).unwrap(),
            NormExp::exp_i64(-2)
        );
        // constants all have norm 1 = p^0
        assert_eq!(
            norm_lambda(&s("5", 1, 4), &lin1()).unwrap(),
            NormExp::exp_i64(0)
        );
        assert_eq!(
            norm_lambda(&Series::zero(q(), 1, 4), &lin1()).unwrap(),
            NormExp::Zero
        );
    }

    #[test]
    fn weighted_norm_values() {
        let w11 = Weights::new(vec![rat(1, 1), rat(1, 1)]).unwrap();
        assert_eq!(
            norm_weighted(&s("X1*Y", 2, 4), &lin1(), &w11).unwrap(),
            NormExp::exp_i64(0)
        );
        let whalf = Weights::new(vec![rat(1, 2)]).unwrap();
        // max(2 * 1/2, -lambda(1)) = 1, attained by the X^2 term
        assert_eq!(
            norm_weighted(&s("X^2 + Y", 1, 4), &lin1(), &whalf).unwrap(),
            NormExp::Exp(rat(1, 1))
        );
        assert_eq!(
            norm_weighted(&s("1", 1, 4), &lin1(), &whalf).unwrap(),
            NormExp::exp_i64(0)
        );
    }

    #[test]
    fn weighted_norm_checks_arity() {
        let w = Weights::new(vec![rat(1, 1)]).unwrap();
        assert!(matches!(
            norm_weighted(&s("X1*X2", 2, 4), &lin1(), &w),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn bottom_sorts_below_everything() {
        assert!(NormExp::Zero < NormExp::Exp(rat(-1000, 1)));
        assert!(NormExp::Exp(rat(-1, 2)) < NormExp::Exp(rat(1, 3)));
    }

    #[test]
    fn norm_text_rendering() {
        assert_eq!(NormExp::Zero.to_string(), "0");
        assert_eq!(NormExp::Exp(rat(-3, 2)).to_string(), "p^(-3/2)");
    }

    #[test]
    fn select_weights_simple_line() {
        let g = s("X - Y", 1, 4);
        let (c, sdeg) = select_weights(&g, &lin1()).unwrap();
        assert_eq!(sdeg, 1);
        assert_eq!(c.as_slice(), &[rat(1, 1)]);
        assert!(weights_certify(&g, &lin1(), &c, sdeg).unwrap());
    }

    #[test]
    fn select_weights_shrinks_prefix() {
        // the Y-free low term X1^5 forces 5*c1 < c2
        let g = s("X2 + X1^5", 2, 4);
        let (c, sdeg) = select_weights(&g, &lin1()).unwrap();
        assert_eq!(sdeg, 1);
        assert_eq!(c.as_slice(), &[rat(1, 8), rat(1, 1)]);
        assert!(weights_certify(&g, &lin1(), &c, sdeg).unwrap());
        let five_c1 = rat(5, 1) * &c.as_slice()[0];
        assert!(five_c1 < c.as_slice()[1]);
    }

    #[test]
    fn select_weights_rejects_non_distinguished() {
        assert_eq!(
            select_weights(&s("Y", 1, 4), &lin1()),
            Err(Error::NotDistinguished)
        );
        // 1 + X is distinguished of degree 1 in one variable
        let g = s("1 + X", 1, 4);
        let (c, sdeg) = select_weights(&g, &lin1()).unwrap();
        assert_eq!((c.as_slice(), sdeg), (&[rat(1, 1)][..], 1));
    }

    #[test]
    fn membership_identity_growth() {
        // sum_{k<6} X^k Y^k has slice degree k = lambda(k)
        let f = s("1 + X*Y + X^2*Y^2 + X^3*Y^3 + X^4*Y^4 + X^5*Y^5", 1, 6);
        let rep = membership_check(&f, &lin1(), &rat(1, 1), 1).unwrap();
        assert!(rep.passed());
    }

    #[test]
    fn membership_detects_doubling() {
        // slice degrees 2^k - 1 outgrow C * k
        let f = s("1 + X*Y + X^3*Y^2 + X^7*Y^3", 1, 4);
        let rep = membership_check(&f, &lin1(), &rat(1, 1), 1).unwrap();
        assert!(!rep.passed());
        assert!(rep
            .violations
            .iter()
            .any(|v| v.k == 3 && v.degree == 7 && v.bound == rat(3, 1)));
        assert!(rep.violations.iter().any(|v| v.k == 2 && v.degree == 3));
        // under exponential growth the same slices fit exactly
        let exp = GrowthFn::exponential(2).unwrap();
        let rep = membership_check(&f, &exp, &rat(1, 1), 0).unwrap();
        assert!(rep.passed());
    }
}
