//! Shared randomized generators for the integration suites.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lambda_ring::field::{FieldDesc, FieldElem};
use lambda_ring::growth::GrowthFn;
use lambda_ring::norm::Weights;
use lambda_ring::parse::parse_series;
use lambda_ring::series::{Monomial, Series};
use lambda_ring::weierstrass::is_distinguished;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn lin1() -> GrowthFn {
    GrowthFn::linear(BigRational::from_integer(BigInt::from(1))).unwrap()
}

pub fn exp2() -> GrowthFn {
    GrowthFn::exponential(2).unwrap()
}

pub fn f7() -> FieldDesc {
    FieldDesc::prime(7).unwrap()
}

pub fn qq() -> FieldDesc {
    FieldDesc::rationals()
}

pub fn ps(text: &str, field: &FieldDesc, nvars: usize, prec: u32) -> Series {
    parse_series(text, field, nvars, prec).unwrap()
}

pub fn rand_elem(rng: &mut ChaCha8Rng, field: &FieldDesc) -> FieldElem {
    match field {
        FieldDesc::Prime(p) => field.from_i64(rng.random_range(0..*p) as i64),
        FieldDesc::Rationals => {
            let num = rng.random_range(-9..=9);
            let den = rng.random_range(1..=9);
            field.from_fraction(num, den).unwrap()
        }
    }
}

pub fn rand_nonzero_elem(rng: &mut ChaCha8Rng, field: &FieldDesc) -> FieldElem {
    loop {
        let e = rand_elem(rng, field);
        if !field.is_zero(&e) {
            return e;
        }
    }
}

/// Random sparse series: up to `max_terms` terms with X-exponents at most
/// `max_deg` and any Y-exponent below the precision.
pub fn rand_series(
    rng: &mut ChaCha8Rng,
    field: &FieldDesc,
    nvars: usize,
    prec: u32,
    max_deg: u32,
    max_terms: usize,
) -> Series {
    let nterms = rng.random_range(0..=max_terms);
    let terms = (0..nterms).map(|_| {
        let mu = (0..nvars).map(|_| rng.random_range(0..=max_deg)).collect();
        let k = rng.random_range(0..prec);
        (Monomial::new(mu, k), rand_elem(rng, field))
    });
    let terms: Vec<_> = terms.collect();
    Series::from_terms(*field, nvars, prec, terms)
}

pub fn rand_nonzero_series(
    rng: &mut ChaCha8Rng,
    field: &FieldDesc,
    nvars: usize,
    prec: u32,
    max_deg: u32,
    max_terms: usize,
) -> Series {
    loop {
        let s = rand_series(rng, field, nvars, prec, max_deg, max_terms);
        if !s.is_zero() {
            return s;
        }
    }
}

/// Random unit: nonzero constant plus Y-divisible noise.
pub fn rand_unit(
    rng: &mut ChaCha8Rng,
    field: &FieldDesc,
    nvars: usize,
    prec: u32,
    max_deg: u32,
    max_terms: usize,
) -> Series {
    let c0 = Series::constant(*field, nvars, prec, rand_nonzero_elem(rng, field));
    if prec == 1 {
        return c0;
    }
    let noise = rand_series(rng, field, nvars, prec - 1, max_deg, max_terms);
    c0.add(&noise.mul_y_pow(1)).unwrap()
}

/// Random X_n-distinguished series of degree s: unit * monic-in-X_n plus
/// Y-divisible noise.
pub fn rand_distinguished(
    rng: &mut ChaCha8Rng,
    field: &FieldDesc,
    nvars: usize,
    prec: u32,
    s: u32,
) -> Series {
    let mut monic = Series::var_pow(*field, nvars, prec, nvars - 1, s);
    if s > 0 {
        // lower X_n-degrees with arbitrary coefficients in the other
        // variables and Y
        let low = rand_series(rng, field, nvars, prec, 2, 4);
        let capped = Series::from_terms(
            *field,
            nvars,
            prec,
            low.terms()
                .filter(|(m, _)| m.mu[nvars - 1] < s)
                .map(|(m, c)| (m.clone(), c.clone())),
        );
        monic = monic.add(&capped).unwrap();
    }
    let unit = rand_unit(rng, field, nvars, prec, 2, 3);
    let mut g = unit.mul(&monic).unwrap();
    if prec > 1 {
        let noise = rand_series(rng, field, nvars, prec - 1, s + 2, 3);
        g = g.add(&noise.mul_y_pow(1)).unwrap();
    }
    assert_eq!(
        is_distinguished(&g),
        Some(s),
        "generator must stay distinguished"
    );
    g
}

pub fn rand_weights(rng: &mut ChaCha8Rng, nvars: usize) -> Weights {
    let v = (0..nvars)
        .map(|_| {
            BigRational::new(
                BigInt::from(rng.random_range(1..=4)),
                BigInt::from(rng.random_range(1..=4)),
            )
        })
        .collect();
    Weights::new(v).unwrap()
}
