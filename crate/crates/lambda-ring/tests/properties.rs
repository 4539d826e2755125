//! Property tests for the ring, norm and projection invariants.

mod common;

use common::*;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::Rng;

use lambda_ring::field::FieldDesc;
use lambda_ring::norm::{norm_weighted, select_weights, weights_certify, NormExp, Weights};
use lambda_ring::parse::parse_series;
use lambda_ring::series::{DegX, Monomial, Series};
use lambda_ring::weierstrass::{divide, divide_oracle};

#[derive(Debug, Clone, Copy)]
enum WhichField {
    F7,
    Q,
}

fn field_of(w: WhichField) -> FieldDesc {
    match w {
        WhichField::F7 => f7(),
        WhichField::Q => qq(),
    }
}

fn arb_field() -> impl Strategy<Value = WhichField> {
    prop_oneof![Just(WhichField::F7), Just(WhichField::Q)]
}

// terms: (multidegree, y-exponent, small integer coefficient)
fn arb_terms(nvars: usize, prec: u32) -> impl Strategy<Value = Vec<(Vec<u32>, u32, i64)>> {
    prop::collection::vec(
        (prop::collection::vec(0u32..4, nvars), 0u32..prec, -9i64..10),
        0..7,
    )
}

fn mk_series(field: &FieldDesc, nvars: usize, prec: u32, terms: &[(Vec<u32>, u32, i64)]) -> Series {
    Series::from_terms(
        *field,
        nvars,
        prec,
        terms
            .iter()
            .map(|(mu, k, c)| (Monomial::new(mu.clone(), *k), field.from_i64(*c))),
    )
}

proptest! {
    #[test]
    fn ring_axioms_mod_y_n(
        w in arb_field(),
        nvars in 1usize..=3,
        prec in 2u32..=6,
        ta in arb_terms(3, 6),
        tb in arb_terms(3, 6),
        tc in arb_terms(3, 6),
    ) {
        let field = field_of(w);
        let cut = |t: &[(Vec<u32>, u32, i64)]| -> Vec<(Vec<u32>, u32, i64)> {
            t.iter()
                .filter(|(_, k, _)| *k < prec)
                .map(|(mu, k, c)| (mu[..nvars].to_vec(), *k, *c))
                .collect()
        };
        let a = mk_series(&field, nvars, prec, &cut(&ta));
        let b = mk_series(&field, nvars, prec, &cut(&tb));
        let c = mk_series(&field, nvars, prec, &cut(&tc));
        // associativity and distributivity, exact equality mod Y^prec
        prop_assert_eq!(
            a.add(&b).unwrap().add(&c).unwrap(),
            a.add(&b.add(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.mul(&b).unwrap().mul(&c).unwrap(),
            a.mul(&b.mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }

    #[test]
    fn ord_is_additive_below_truncation(
        w in arb_field(),
        ta in arb_terms(2, 5),
        tb in arb_terms(2, 5),
    ) {
        let field = field_of(w);
        let prec = 5u32;
        let a = mk_series(&field, 2, prec, &ta);
        let b = mk_series(&field, 2, prec, &tb);
        prop_assume!(!a.is_zero() && !b.is_zero());
        let (oa, ob) = (a.ord_y().unwrap(), b.ord_y().unwrap());
        prop_assume!(oa + ob < prec);
        prop_assert_eq!(a.mul(&b).unwrap().ord_y(), Some(oa + ob));
    }

    #[test]
    fn truncation_commutes_with_ring_ops(
        w in arb_field(),
        m in 1u32..=4,
        ta in arb_terms(2, 6),
        tb in arb_terms(2, 6),
    ) {
        let field = field_of(w);
        let prec = 6u32;
        let a = mk_series(&field, 2, prec, &ta);
        let b = mk_series(&field, 2, prec, &tb);
        let ta = a.truncate(m).unwrap();
        let tb = b.truncate(m).unwrap();
        prop_assert_eq!(a.add(&b).unwrap().truncate(m).unwrap(), ta.add(&tb).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().truncate(m).unwrap(), ta.mul(&tb).unwrap());
    }

    #[test]
    fn alpha_tau_recompose(
        w in arb_field(),
        s in 0u32..=4,
        ta in arb_terms(2, 5),
    ) {
        let field = field_of(w);
        let a = mk_series(&field, 2, 5, &ta);
        let back = a.alpha(s).add(&a.tau(s).xn_mul_pow(s)).unwrap();
        prop_assert_eq!(back, a.clone());
        // tau vanishes exactly when the X_n-degree is below s
        let low = a.deg_x(DegX::Xn).is_none_or(|d| d < s);
        prop_assert_eq!(a.tau(s).is_zero(), low);
    }

    #[test]
    fn canonical_form_is_idempotent(
        w in arb_field(),
        ta in arb_terms(2, 5),
    ) {
        let field = field_of(w);
        let a = mk_series(&field, 2, 5, &ta);
        let rebuilt = Series::from_terms(
            field,
            2,
            5,
            a.terms().map(|(m, c)| (m.clone(), c.clone())),
        );
        prop_assert_eq!(rebuilt, a);
    }

    #[test]
    fn weighted_norm_is_monotone_in_weights(
        w in arb_field(),
        ta in arb_terms(2, 5),
        num in 1i64..=4,
        den in 1i64..=4,
        shrink in 2i64..=5,
    ) {
        let field = field_of(w);
        let a = mk_series(&field, 2, 5, &ta);
        let c0 = BigRational::new(BigInt::from(num), BigInt::from(den));
        let big = Weights::new(vec![c0.clone(), c0.clone()]).unwrap();
        let small_val = c0 / BigRational::from_integer(BigInt::from(shrink));
        let small = Weights::new(vec![small_val.clone(), small_val]).unwrap();
        let nb = norm_weighted(&a, &lin1(), &big).unwrap();
        let ns = norm_weighted(&a, &lin1(), &small).unwrap();
        prop_assert!(ns <= nb);
    }

    #[test]
    fn parse_render_round_trip(
        w in arb_field(),
        nvars in 1usize..=3,
        prec in 1u32..=6,
        ta in arb_terms(3, 6),
    ) {
        let field = field_of(w);
        let cut: Vec<_> = ta
            .iter()
            .filter(|(_, k, _)| *k < prec)
            .map(|(mu, k, c)| (mu[..nvars].to_vec(), *k, *c))
            .collect();
        let a = mk_series(&field, nvars, prec, &cut);
        let text = a.to_string();
        let back = parse_series(&text, &field, nvars, prec).unwrap();
        prop_assert_eq!(back, a);
    }
}

/// Division preserves X_n-polynomial degree bounds: when g has no X_n-power
/// above its distinguished degree, deg(q) <= max(deg f, s) - s and r stays
/// below s.
#[test]
fn division_respects_polynomial_degrees() {
    let mut rng = rng(1111);
    for _ in 0..120 {
        let field = [f7(), qq()][rng.random_range(0..2)];
        let nvars = rng.random_range(1..=2);
        let prec = rng.random_range(2..=6);
        let s = rng.random_range(1..=3);
        // monic with all X_n-degrees <= s
        let mut g = Series::var_pow(field, nvars, prec, nvars - 1, s);
        let low = rand_series(&mut rng, &field, nvars, prec, 2, 4);
        let capped = Series::from_terms(
            field,
            nvars,
            prec,
            low.terms()
                .filter(|(m, _)| m.mu[nvars - 1] < s)
                .map(|(m, c)| (m.clone(), c.clone())),
        );
        g = g.add(&capped).unwrap();
        let f = rand_series(&mut rng, &field, nvars, prec, 4, 6);
        let res = divide_oracle(&f, &g).unwrap();
        let fdeg = f.deg_x(DegX::Xn).unwrap_or(0).max(s);
        if let Some(qd) = res.q.deg_x(DegX::Xn) {
            assert!(qd <= fdeg - s, "deg q = {qd} too large");
        }
        if let Some(rd) = res.r.deg_x(DegX::Xn) {
            assert!(rd < s);
        }
    }
}

/// select_weights output always re-certifies under the independent checker,
/// and matches divide's internal use.
#[test]
fn selected_weights_recertify() {
    let mut rng = rng(2222);
    for _ in 0..120 {
        let field = [f7(), qq()][rng.random_range(0..2)];
        let nvars = rng.random_range(1..=3);
        let prec = rng.random_range(2..=6);
        let s = rng.random_range(0..=3);
        let g = rand_distinguished(&mut rng, &field, nvars, prec, s);
        let (c, got_s) = select_weights(&g, &lin1()).unwrap();
        assert_eq!(got_s, s);
        assert!(weights_certify(&g, &lin1(), &c, s).unwrap());
        // explicit weights reproduce the auto result
        let f = rand_series(&mut rng, &field, nvars, prec, 3, 5);
        let auto = divide(&f, &g, &lin1(), None).unwrap();
        let manual = divide(&f, &g, &lin1(), Some(c)).unwrap();
        assert_eq!((auto.q, auto.r), (manual.q, manual.r));
    }
}

/// The weighted norm of a product never exceeds the certified slice bound
/// used by the contraction: ||tau(z)|| <= ||z|| / p^(c_n s).
#[test]
fn tau_contracts_weighted_norm() {
    let mut rng = rng(3333);
    for _ in 0..200 {
        let field = [f7(), qq()][rng.random_range(0..2)];
        let nvars = rng.random_range(1..=2);
        let prec = rng.random_range(2..=5);
        let s = rng.random_range(0..=3);
        let z = rand_series(&mut rng, &field, nvars, prec, 4, 6);
        let c = rand_weights(&mut rng, nvars);
        let cns = c.last() * BigRational::from_integer(BigInt::from(s));
        let nz = norm_weighted(&z, &lin1(), &c).unwrap();
        let nt = norm_weighted(&z.tau(s), &lin1(), &c).unwrap();
        match (nt, nz) {
            (NormExp::Zero, _) => {}
            (NormExp::Exp(_), NormExp::Zero) => unreachable!("tau of zero is zero"),
            (NormExp::Exp(t), NormExp::Exp(z)) => assert!(t <= z - cns),
        }
    }
}
