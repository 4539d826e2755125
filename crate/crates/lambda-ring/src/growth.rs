//! Growth functions: exact rational values of a validated lambda at
//! nonnegative integers.
//!
//! A growth function here is normalized so that lambda(0) = 0, is strictly
//! increasing and superadditive (lambda(x) + lambda(y) <= lambda(x+y)).
//! Built-in families satisfy all three by construction; table data is
//! checked by sampling, see [`GrowthFn::validate`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Error;

/// Largest evaluation point accepted by the closed-form families.
pub const MAX_LAMBDA_EVAL: u32 = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GrowthFn {
    /// lambda(x) = a*x with a > 0.
    Linear(BigRational),
    /// lambda(x) = x^a with a >= 1.
    Power(u32),
    /// lambda(x) = b^x - 1 with b >= 2.
    Exponential(u32),
    /// lambda(k) = `values[k]` for k within the table.
    Table(Vec<BigRational>),
}

impl GrowthFn {
    pub fn linear(a: BigRational) -> Result<Self, Error> {
        if a <= BigRational::zero() {
            return Err(Error::InvalidParameter(
                "linear growth needs a positive slope".into(),
            ));
        }
        Ok(GrowthFn::Linear(a))
    }

    pub fn power(a: u32) -> Result<Self, Error> {
        if a < 1 {
            return Err(Error::InvalidParameter(
                "power growth needs an exponent >= 1".into(),
            ));
        }
        Ok(GrowthFn::Power(a))
    }

    pub fn exponential(b: u32) -> Result<Self, Error> {
        if b < 2 {
            return Err(Error::InvalidParameter(
                "exponential growth needs a base >= 2".into(),
            ));
        }
        Ok(GrowthFn::Exponential(b))
    }

    pub fn table(values: Vec<BigRational>) -> Result<Self, Error> {
        if values.is_empty() {
            return Err(Error::InvalidParameter("empty growth table".into()));
        }
        Ok(GrowthFn::Table(values))
    }

    /// Exact value lambda(k).
    pub fn eval(&self, k: u32) -> Result<BigRational, Error> {
        match self {
            GrowthFn::Table(v) => v.get(k as usize).cloned().ok_or(Error::OutOfRange {
                k,
                max: (v.len() - 1) as u32,
            }),
            _ if k > MAX_LAMBDA_EVAL => Err(Error::OutOfRange {
                k,
                max: MAX_LAMBDA_EVAL,
            }),
            GrowthFn::Linear(a) => Ok(a * BigRational::from_integer(BigInt::from(k))),
            GrowthFn::Power(a) => Ok(BigRational::from_integer(BigInt::from(k).pow(*a))),
            GrowthFn::Exponential(b) => Ok(BigRational::from_integer(
                BigInt::from(*b).pow(k) - BigInt::one(),
            )),
        }
    }

    /// Largest point `eval` accepts.
    pub fn max_eval_point(&self) -> u32 {
        match self {
            GrowthFn::Table(v) => (v.len() - 1) as u32,
            _ => MAX_LAMBDA_EVAL,
        }
    }

    /// Sample lambda on 0..=bound and report every normalization violation:
    /// lambda(0) = 0, strict monotonicity, and superadditivity on all pairs
    /// x <= y with x + y <= bound.
    pub fn validate(&self, sample_bound: u32) -> LambdaReport {
        let bound = sample_bound.min(self.max_eval_point());
        let vals: Vec<BigRational> = (0..=bound)
            .map(|k| self.eval(k).expect("eval within validated range"))
            .collect();
        let mut violations = Vec::new();
        if !vals[0].is_zero() {
            violations.push(LambdaViolation::OriginNonzero {
                value: vals[0].clone(),
            });
        }
        for x in 0..bound {
            let (x, y) = (x as usize, x as usize + 1);
            if vals[y] <= vals[x] {
                violations.push(LambdaViolation::NotIncreasing {
                    x: x as u32,
                    y: y as u32,
                    fx: vals[x].clone(),
                    fy: vals[y].clone(),
                });
            }
        }
        for x in 0..=bound {
            for y in x..=bound.saturating_sub(x) {
                let (xi, yi, si) = (x as usize, y as usize, (x + y) as usize);
                let sum = &vals[xi] + &vals[yi];
                if sum > vals[si] {
                    violations.push(LambdaViolation::NotSuperadditive {
                        x,
                        y,
                        sum,
                        joint: vals[si].clone(),
                    });
                }
            }
        }
        LambdaReport { bound, violations }
    }
}

/// Outcome of [`GrowthFn::validate`]; empty `violations` means valid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaReport {
    pub bound: u32,
    pub violations: Vec<LambdaViolation>,
}

impl LambdaReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LambdaViolation {
    OriginNonzero {
        value: BigRational,
    },
    NotIncreasing {
        x: u32,
        y: u32,
        fx: BigRational,
        fy: BigRational,
    },
    NotSuperadditive {
        x: u32,
        y: u32,
        sum: BigRational,
        joint: BigRational,
    },
}
