//! Constructive one-X-variable factorization: strip the Y-power, prepare to
//! a Weierstrass polynomial, factor it mod Y, Hensel-lift the coprime
//! blocks, and search repeated blocks for divisors level by level.
//!
//! Completeness is guaranteed exactly when the mod-Y image is squarefree.
//! Splitting a repeated block is an exhaustive search over finite fields
//! (within a node budget) and explores only unperturbed divisors over the
//! rationals; a block that admits no divisor is reported with an explicit
//! status carrying the working precision. That status is evidence of
//! irreducibility at this precision, never a proof.

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeSet;

use crate::error::Error;
use crate::field::{FieldDesc, FieldElem};
use crate::growth::GrowthFn;
use crate::series::{DegX, Monomial, Series};
use crate::unipoly::UniPoly;
use crate::weierstrass::{divide_oracle, prepare};

/// Node budget for the repeated-block divisor search.
const SPLIT_SEARCH_BUDGET: u64 = 500_000;
/// Largest integer we are willing to enumerate divisors of.
const DIVISOR_ENUM_CAP: u64 = 1_000_000_000_000;
/// Candidate cap for the degree-d integer factor search.
const FACTOR_SEARCH_CAP: u128 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorStatus {
    /// Produced by coprime Hensel lifting (or a split down to an
    /// irreducible mod-Y image); genuinely irreducible over `F[[Y]][X]`.
    LiftedCoprime,
    /// Repeated mod-Y block that the divisor search could not split; the
    /// reason records the working precision.
    UnsplitBlock(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorEntry {
    pub series: Series,
    pub multiplicity: u32,
    pub status: FactorStatus,
}

/// f = unit * Y^y_power * prod(factor^multiplicity) mod Y^prec, exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Series,
    pub y_power: u32,
    pub factors: Vec<FactorEntry>,
}

/// Split off the maximal Y-power: f = Y^d * h with h mod Y != 0.
/// The quotient h is known modulo Y^(prec - d).
pub fn strip_y_power(f: &Series) -> Result<(u32, Series), Error> {
    let d = f.ord_y().ok_or(Error::ZeroSeries)?;
    let h = f.div_y_pow(d)?;
    debug_assert!(!h.reduce_mod_y().is_zero());
    Ok((d, h))
}

/// Irreducible factorization of w mod Y over the coefficient field, with a
/// leading unit so that unit * prod(q^m) is exactly w mod Y. Exhaustive and
/// provably complete within the documented desk-scale bounds: F_p with
/// p <= 31 and degree <= 12, or the rationals with degree <= 6.
pub fn factor_mod_y(w: &Series) -> Result<(FieldElem, Vec<(UniPoly, u32)>), Error> {
    if w.nvars() != 1 {
        return Err(Error::ArityMismatch {
            expected: 1,
            got: w.nvars(),
        });
    }
    let poly = UniPoly::from_series_mod_y(w)?;
    if poly.is_zero() {
        return Err(Error::ZeroSeries);
    }
    let deg = poly.degree().unwrap() as u32;
    match w.field() {
        FieldDesc::Prime(p) => {
            if *p > 31 {
                return Err(Error::UnsupportedField(
                    "exhaustive mod-Y factorization supports F_p with p <= 31".into(),
                ));
            }
            if deg > 12 {
                return Err(Error::DegreeTooLarge {
                    degree: deg,
                    max: 12,
                });
            }
        }
        FieldDesc::Rationals => {
            if deg > 6 {
                return Err(Error::DegreeTooLarge {
                    degree: deg,
                    max: 6,
                });
            }
        }
    }
    let (unit, monic) = poly.monic();
    let factors = match w.field() {
        FieldDesc::Prime(p) => factor_fp(monic, *p),
        FieldDesc::Rationals => factor_rationals(monic)?,
    };
    let mut prod = UniPoly::constant(*w.field(), unit.clone());
    for (q, m) in &factors {
        prod = prod.mul(&q.pow(*m));
    }
    assert_eq!(prod, poly, "mod-Y factor product check");
    Ok((unit, factors))
}

// Exhaustive trial division by all monic polynomials in ascending degree;
// any divisor found is of minimal degree, hence irreducible.
fn factor_fp(monic: UniPoly, p: u64) -> Vec<(UniPoly, u32)> {
    let field = *monic.field();
    let mut out: Vec<(UniPoly, u32)> = Vec::new();
    let mut rem = monic;
    let mut d = 1usize;
    while rem.degree().unwrap_or(0) >= 2 * d {
        let mut counter = vec![0u64; d];
        'enumeration: loop {
            let mut coeffs: Vec<FieldElem> =
                counter.iter().map(|&c| field.from_i64(c as i64)).collect();
            coeffs.push(field.one());
            let q = UniPoly::new(field, coeffs);
            let mut mult = 0u32;
            while rem.is_divisible_by(&q) {
                rem = rem.divmod(&q).expect("nonzero divisor").0;
                mult += 1;
            }
            if mult > 0 {
                out.push((q, mult));
                if rem.degree().unwrap_or(0) < 2 * d {
                    break 'enumeration;
                }
            }
            // increment the base-p counter
            let mut i = 0;
            loop {
                if i == d {
                    break 'enumeration;
                }
                counter[i] += 1;
                if counter[i] < p {
                    break;
                }
                counter[i] = 0;
                i += 1;
            }
        }
        d += 1;
    }
    if rem.degree().unwrap_or(0) >= 1 {
        out.push((rem, 1));
    }
    out
}

fn big_to_rat(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

// Primitive integer coefficient vector of a rational polynomial: clear
// denominators, divide by the content, normalize the leading sign.
fn clear_denominators(p: &UniPoly) -> Vec<BigInt> {
    let rat = |c: &FieldElem| match c {
        FieldElem::Rat(r) => r.clone(),
        FieldElem::Fp(_) => unreachable!("rational-field helper"),
    };
    let mut lcm = BigInt::one();
    for c in p.coeffs() {
        lcm = lcm.lcm(rat(c).denom());
    }
    let mut ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (rat(c) * big_to_rat(&lcm)).to_integer())
        .collect();
    let mut content = BigInt::zero();
    for v in &ints {
        content = content.gcd(v);
    }
    if !content.is_zero() && !content.is_one() {
        for v in &mut ints {
            *v /= &content;
        }
    }
    if ints.last().is_some_and(|v| v.is_negative()) {
        for v in &mut ints {
            *v = -v.clone();
        }
    }
    ints
}

// Positive divisors by trial division, guarded by a hard size cap.
fn checked_divisors(n: &BigInt) -> Result<Vec<BigInt>, Error> {
    let n = n.abs();
    let small = n
        .to_u64()
        .filter(|v| *v <= DIVISOR_ENUM_CAP)
        .ok_or_else(|| {
            Error::UnsupportedField(
                "rational coefficients too large for the exhaustive factor search".into(),
            )
        })?;
    assert!(small > 0, "divisors of zero requested");
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= small {
        if small % d == 0 {
            out.push(BigInt::from(d));
            if d != small / d {
                out.push(BigInt::from(small / d));
            }
        }
        d += 1;
    }
    out.sort();
    Ok(out)
}

fn rational_root_candidates(p: &UniPoly) -> Result<Vec<BigRational>, Error> {
    let ints = clear_denominators(p);
    let a0 = &ints[0];
    let am = ints.last().expect("nonzero polynomial");
    let mut set: BTreeSet<BigRational> = BTreeSet::new();
    for num in checked_divisors(a0)? {
        for den in checked_divisors(am)? {
            let r = BigRational::new(num.clone(), den.clone());
            set.insert(-&r);
            set.insert(r);
        }
    }
    Ok(set.into_iter().collect())
}

// Complete search for a monic rational factor of degree d, via primitive
// integer candidates: the leading coefficient divides lc, the constant
// divides the constant term, and the middle coefficients obey the
// Landau-Mignotte bound binom(d,j) * ceil(||P||_2).
fn find_integer_factor(rem: &UniPoly, d: usize) -> Result<Option<UniPoly>, Error> {
    let field = *rem.field();
    let ints = clear_denominators(rem);
    let a0 = &ints[0];
    let am = ints.last().expect("nonzero polynomial");
    let norm_sq: BigInt = ints.iter().map(|v| v * v).sum();
    let b = norm_sq.sqrt() + 1;
    let lead_divs = checked_divisors(am)?;
    let const_divs = checked_divisors(a0)?;

    let mut bounds: Vec<i64> = Vec::new();
    let mut size: u128 = (lead_divs.len() as u128) * (const_divs.len() as u128) * 2;
    for j in 1..d {
        let bj: BigInt = binomial(BigInt::from(d), BigInt::from(j)) * &b;
        let bj = bj.to_i64().ok_or_else(|| {
            Error::UnsupportedField(
                "rational coefficients too large for the exhaustive factor search".into(),
            )
        })?;
        size = size.saturating_mul(2 * bj as u128 + 1);
        bounds.push(bj);
    }
    if size > FACTOR_SEARCH_CAP {
        return Err(Error::UnsupportedField(
            "exhaustive rational factor search space exceeds the desk-scale cap".into(),
        ));
    }

    for lead in &lead_divs {
        for c0 in &const_divs {
            for sign in [1i64, -1] {
                let constant = c0 * BigInt::from(sign);
                // odometer over the middle coefficients, each in [-bj, bj]
                let mut mids: Vec<i64> = bounds.iter().map(|b| -b).collect();
                loop {
                    let mut coeffs: Vec<FieldElem> = Vec::with_capacity(d + 1);
                    coeffs.push(FieldElem::Rat(big_to_rat(&constant)));
                    for m in &mids {
                        coeffs.push(FieldElem::Rat(big_to_rat(&BigInt::from(*m))));
                    }
                    coeffs.push(FieldElem::Rat(big_to_rat(lead)));
                    let cand = UniPoly::new(field, coeffs);
                    debug_assert_eq!(cand.degree(), Some(d));
                    let (_, monic_cand) = cand.monic();
                    if rem.is_divisible_by(&monic_cand) {
                        return Ok(Some(monic_cand));
                    }
                    let mut i = 0;
                    while i < mids.len() {
                        mids[i] += 1;
                        if mids[i] <= bounds[i] {
                            break;
                        }
                        mids[i] = -bounds[i];
                        i += 1;
                    }
                    if i == mids.len() {
                        break;
                    }
                }
            }
        }
    }
    Ok(None)
}

// Rational-root extraction plus the bounded integer factor search; complete
// for monic inputs of degree <= 6.
fn factor_rationals(monic: UniPoly) -> Result<Vec<(UniPoly, u32)>, Error> {
    let field = *monic.field();
    let mut raw: Vec<UniPoly> = Vec::new();
    let mut rem = monic;

    // X^m factor
    while rem.degree().unwrap_or(0) >= 1 && field.is_zero(&rem.coeff(0)) {
        let x = UniPoly::x_pow(field, 1);
        rem = rem.divmod(&x).expect("nonzero divisor").0;
        raw.push(x);
    }

    // rational roots: candidates divide the cleared constant and leading terms
    'roots: while rem.degree().unwrap_or(0) >= 2 {
        for r in rational_root_candidates(&rem)? {
            let lin = UniPoly::new(field, vec![FieldElem::Rat(-r.clone()), field.one()]);
            if rem.is_divisible_by(&lin) {
                rem = rem.divmod(&lin).expect("nonzero divisor").0;
                raw.push(lin);
                continue 'roots;
            }
        }
        break;
    }

    // rootless degree 2 or 3 is irreducible; degrees 4..6 need the
    // quadratic/cubic factor search
    'factors: while rem.degree().unwrap_or(0) >= 4 {
        let deg = rem.degree().unwrap();
        for d in 2..=deg / 2 {
            if let Some(fac) = find_integer_factor(&rem, d)? {
                rem = rem.divmod(&fac).expect("nonzero divisor").0;
                raw.push(fac);
                continue 'factors;
            }
        }
        break;
    }

    if rem.degree().unwrap_or(0) >= 1 {
        raw.push(rem);
    }

    // group equal factors into multiplicities
    let mut out: Vec<(UniPoly, u32)> = Vec::new();
    for f in raw {
        match out.iter_mut().find(|(g, _)| *g == f) {
            Some((_, m)) => *m += 1,
            None => out.push((f, 1)),
        }
    }
    Ok(out)
}

fn unipoly_levels_to_series(levels: &[UniPoly], field: FieldDesc, prec: u32) -> Series {
    let mut terms = Vec::new();
    for (j, p) in levels.iter().enumerate() {
        for (i, c) in p.coeffs().iter().enumerate() {
            terms.push((Monomial::new(vec![i as u32], j as u32), c.clone()));
        }
    }
    Series::from_terms(field, 1, prec, terms)
}

fn series_y_levels(s: &Series) -> Result<Vec<UniPoly>, Error> {
    (0..s.prec())
        .map(|j| UniPoly::from_series_mod_y(&s.y_slice(j)))
        .collect()
}

/// Hensel lifting: given monic w with w mod Y = a0 * b0 for coprime monic
/// a0, b0, produce the unique monic A, B with A mod Y = a0, B mod Y = b0 and
/// A*B = w mod Y^prec. Each Y-level solves the Bezout identity of (a0, b0);
/// the product is re-verified before returning.
pub fn hensel_lift(w: &Series, a0: &UniPoly, b0: &UniPoly) -> Result<(Series, Series), Error> {
    if w.nvars() != 1 {
        return Err(Error::ArityMismatch {
            expected: 1,
            got: w.nvars(),
        });
    }
    if !a0.is_monic() || !b0.is_monic() {
        return Err(Error::NotMonic);
    }
    let field = *w.field();
    let prec = w.prec();
    let s = w.deg_x(DegX::Total).ok_or(Error::ZeroSeries)?;
    // monic in X: the X^s coefficient is exactly 1
    let lead = w.xn_coeff(s);
    if lead != Series::one(field, 1, prec) {
        return Err(Error::NotMonic);
    }
    let w_lev = series_y_levels(w)?;
    if a0.mul(b0) != w_lev[0] {
        return Err(Error::InvalidParameter(
            "a0 * b0 does not equal w mod Y".into(),
        ));
    }
    let (g, _u, v) = a0.egcd(b0);
    if g != UniPoly::one(field) {
        return Err(Error::NotCoprime);
    }

    let mut a_lev = vec![a0.clone()];
    let mut b_lev = vec![b0.clone()];
    for j in 1..prec as usize {
        let mut e = w_lev[j].clone();
        for i in 1..j {
            e = e.sub(&a_lev[i].mul(&b_lev[j - i]));
        }
        // a_j = (v*e) mod a0 keeps deg a_j < deg a0; b_j is then exact
        let (_, aj) = v.mul(&e).divmod(a0)?;
        let (bj, r) = e.sub(&b0.mul(&aj)).divmod(a0)?;
        assert!(r.is_zero(), "Hensel level {j} failed to divide out");
        a_lev.push(aj);
        b_lev.push(bj);
    }
    let a = unipoly_levels_to_series(&a_lev, field, prec);
    let b = unipoly_levels_to_series(&b_lev, field, prec);
    assert_eq!(a.mul(&b)?, *w, "Hensel product check");
    Ok((a, b))
}

enum SearchResult {
    Found(Vec<UniPoly>),
    NotFound { deepest_fail: usize },
    BudgetExceeded,
}

// Level-by-level divisor search inside a repeated block B with
// B mod Y = phi^e: look for monic D with D mod Y = phi^a (a <= e-a).
// Level j solves Q_j*phi^a + D_j*phi^(e-a) = E_j; consistency means
// phi^a | E_j, and then D_j is a free parameter of degree < a*deg(phi).
// Over F_p all parameter vectors are enumerated (exhaustive up to the node
// budget); over the rationals only the zero parameter is explored, which
// still finds every unperturbed divisor and keeps level-1 failures sound.
fn search_divisor(
    b_lev: &[UniPoly],
    phi_a: &UniPoly,
    phi_e2a: &UniPoly,
    a_deg: usize,
    d_lev: &mut Vec<UniPoly>,
    q_lev: &mut Vec<UniPoly>,
    budget: &mut u64,
) -> Result<SearchResult, Error> {
    let j = d_lev.len();
    if j == b_lev.len() {
        return Ok(SearchResult::Found(d_lev.clone()));
    }
    if *budget == 0 {
        return Ok(SearchResult::BudgetExceeded);
    }
    *budget -= 1;

    let mut e = b_lev[j].clone();
    for i in 1..j {
        e = e.sub(&q_lev[i].mul(&d_lev[j - i]));
    }
    let (e_div, r) = e.divmod(phi_a)?;
    if !r.is_zero() {
        return Ok(SearchResult::NotFound { deepest_fail: j });
    }

    let field = *phi_a.field();
    let mut deepest = j;
    let candidates: Box<dyn Iterator<Item = UniPoly>> = match field {
        FieldDesc::Rationals => Box::new(std::iter::once(UniPoly::zero(field))),
        FieldDesc::Prime(p) => {
            let total = (p as u128).pow(a_deg as u32);
            Box::new((0..total).map(move |mut idx| {
                let mut coeffs = Vec::with_capacity(a_deg);
                for _ in 0..a_deg {
                    coeffs.push(field.from_i64((idx % p as u128) as i64));
                    idx /= p as u128;
                }
                UniPoly::new(field, coeffs)
            }))
        }
    };
    for dj in candidates {
        let qj = e_div.sub(&dj.mul(phi_e2a));
        d_lev.push(dj);
        q_lev.push(qj);
        let res = search_divisor(b_lev, phi_a, phi_e2a, a_deg, d_lev, q_lev, budget)?;
        d_lev.pop();
        q_lev.pop();
        match res {
            SearchResult::Found(d) => return Ok(SearchResult::Found(d)),
            SearchResult::BudgetExceeded => return Ok(SearchResult::BudgetExceeded),
            SearchResult::NotFound { deepest_fail } => deepest = deepest.max(deepest_fail),
        }
    }
    Ok(SearchResult::NotFound {
        deepest_fail: deepest,
    })
}

enum BlockSearch {
    Found(Series),
    Exhausted,
    Budget,
    RationalLimited,
}

fn find_block_divisor(
    block: &Series,
    phi: &UniPoly,
    a: u32,
    e: u32,
    budget: &mut u64,
) -> Result<BlockSearch, Error> {
    let field = *block.field();
    let b_lev = series_y_levels(block)?;
    let phi_a = phi.pow(a);
    let phi_e2a = phi.pow(e - 2 * a);
    let a_deg = phi_a.degree().expect("phi is nonconstant");
    let mut d_lev = vec![phi_a.clone()];
    let mut q_lev = vec![phi.pow(e - a)];
    match search_divisor(
        &b_lev, &phi_a, &phi_e2a, a_deg, &mut d_lev, &mut q_lev, budget,
    )? {
        SearchResult::Found(levels) => {
            let d = unipoly_levels_to_series(&levels, field, block.prec());
            let check = divide_oracle(block, &d)?;
            assert!(check.r.is_zero(), "divisor search returned a non-divisor");
            Ok(BlockSearch::Found(d))
        }
        SearchResult::BudgetExceeded => Ok(BlockSearch::Budget),
        SearchResult::NotFound { deepest_fail } => {
            if field == FieldDesc::Rationals && deepest_fail > 1 {
                Ok(BlockSearch::RationalLimited)
            } else {
                Ok(BlockSearch::Exhausted)
            }
        }
    }
}

fn split_block(
    block: &Series,
    phi: &UniPoly,
    e: u32,
    budget: &mut u64,
) -> Result<Vec<FactorEntry>, Error> {
    if e == 1 {
        return Ok(vec![FactorEntry {
            series: block.clone(),
            multiplicity: 1,
            status: FactorStatus::LiftedCoprime,
        }]);
    }
    let mut budget_hit = false;
    let mut rational_limited = false;
    for a in 1..=e / 2 {
        match find_block_divisor(block, phi, a, e, budget)? {
            BlockSearch::Found(d) => {
                let q = divide_oracle(block, &d)?.q;
                let mut out = split_block(&d, phi, a, budget)?;
                out.extend(split_block(&q, phi, e - a, budget)?);
                return Ok(out);
            }
            BlockSearch::Budget => budget_hit = true,
            BlockSearch::RationalLimited => rational_limited = true,
            BlockSearch::Exhausted => {}
        }
    }
    let mut reason = format!("no divisor found at precision {}", block.prec());
    if budget_hit {
        reason.push_str(" (search budget exceeded)");
    } else if rational_limited {
        reason.push_str(" (rational search explores only unperturbed divisors)");
    }
    Ok(vec![FactorEntry {
        series: block.clone(),
        multiplicity: 1,
        status: FactorStatus::UnsplitBlock(reason),
    }])
}

/// Full pipeline for one X variable: strip Y^d, prepare, factor mod Y,
/// Hensel-lift the coprime blocks, attempt to split repeated blocks, and
/// enforce the product reconstruction before returning.
pub fn factor_series(f: &Series, lam: &GrowthFn) -> Result<Factorization, Error> {
    if f.nvars() != 1 {
        return Err(Error::ArityMismatch {
            expected: 1,
            got: f.nvars(),
        });
    }
    let (y_power, h) = strip_y_power(f)?;
    let prep = prepare(&h, lam)?;
    let (_unit_modulo_y, blocks) = factor_mod_y(&prep.omega)?;

    // peel the pairwise-coprime blocks off omega one Hensel lift at a time
    let mut lifted: Vec<(UniPoly, u32, Series)> = Vec::new();
    let mut rem = prep.omega.clone();
    for idx in 0..blocks.len() {
        let (phi, e) = &blocks[idx];
        if idx + 1 == blocks.len() {
            lifted.push((phi.clone(), *e, rem.clone()));
        } else {
            let a0 = phi.pow(*e);
            let mut b0 = UniPoly::one(*f.field());
            for (p, m) in &blocks[idx + 1..] {
                b0 = b0.mul(&p.pow(*m));
            }
            let (a_ser, b_ser) = hensel_lift(&rem, &a0, &b0)?;
            lifted.push((phi.clone(), *e, a_ser));
            rem = b_ser;
        }
    }

    let mut budget = SPLIT_SEARCH_BUDGET;
    let mut entries: Vec<FactorEntry> = Vec::new();
    for (phi, e, block) in &lifted {
        entries.extend(split_block(block, phi, *e, &mut budget)?);
    }

    // merge equal factors into multiplicities, then order canonically
    let mut merged: Vec<FactorEntry> = Vec::new();
    for entry in entries {
        match merged
            .iter_mut()
            .find(|m| m.series == entry.series && m.status == entry.status)
        {
            Some(m) => m.multiplicity += entry.multiplicity,
            None => merged.push(entry),
        }
    }
    merged.sort_by(|a, b| {
        a.series
            .to_string()
            .cmp(&b.series.to_string())
            .then_with(|| a.multiplicity.cmp(&b.multiplicity))
    });

    let fact = Factorization {
        unit: prep.unit,
        y_power,
        factors: merged,
    };

    let mut prod = fact.unit.clone();
    for entry in &fact.factors {
        prod = prod.mul(&entry.series.pow(entry.multiplicity)?)?;
    }
    assert_eq!(
        prod.mul_y_pow(y_power),
        *f,
        "factorization product reconstruction"
    );
    Ok(fact)
}
