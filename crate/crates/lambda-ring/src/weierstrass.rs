//! Weierstrass machinery: distinguished detection, unit inversion, division
//! by contraction iteration, an independent level-by-level division oracle,
//! preparation, and free-module coordinate reduction.
//!
//! Division ships with two permanently independent algorithms. `divide` runs
//! the norm-contraction fixed point; `divide_oracle` runs the classical
//! polynomial Euclidean algorithm one Y-level at a time. Uniqueness of
//! division makes their outputs identical, which turns every comparison into
//! a self-check of the whole kernel.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::error::Error;
use crate::growth::GrowthFn;
use crate::norm::{norm_weighted, select_weights, NormExp, Weights};
use crate::series::{DegX, Monomial, Series};

/// Outcome of a Weierstrass division f = q*g + r with deg_{Xn}(r) < s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisionResult {
    pub q: Series,
    pub r: Series,
    pub s: u32,
    /// Contraction steps used; 0 for the level-by-level oracle.
    pub iterations: u32,
    /// Weights backing the contraction certificate; absent for the oracle.
    pub weights_used: Option<Weights>,
}

/// Weierstrass factorization g = unit * omega.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preparation {
    pub omega: Series,
    pub unit: Series,
    pub s: u32,
}

/// X_n-distinguished test: Some(s) iff g mod Y is a unitary polynomial in
/// X_n of degree s, i.e. its X_n^s coefficient is a nonzero field constant
/// and no higher X_n-power survives mod Y.
pub fn is_distinguished(g: &Series) -> Option<u32> {
    let red = g.reduce_mod_y();
    if red.is_zero() {
        return None;
    }
    let s = red.deg_x(DegX::Xn).expect("nonzero series");
    let lead = red.xn_coeff(s);
    let constant = Monomial::constant(g.nvars());
    if lead.num_terms() == 1 && !g.field().is_zero(&lead.coeff(&constant)) {
        Some(s)
    } else {
        None
    }
}

/// Invert a unit f (a nonzero constant c0 mod Y) via the geometric series
/// f^{-1} = c0^{-1} (1 + g + g^2 + ...) with g = 1 - c0^{-1} f; since
/// ord_Y(g) >= 1 the sum has at most prec terms.
pub fn invert_unit(f: &Series) -> Result<Series, Error> {
    let red = f.reduce_mod_y();
    let constant = Monomial::constant(f.nvars());
    if red.num_terms() != 1 || f.field().is_zero(&red.coeff(&constant)) {
        return Err(Error::NotAUnit);
    }
    let c0 = red.coeff(&constant);
    let c0_inv = f.field().inv(&c0)?;
    let one = Series::one(*f.field(), f.nvars(), f.prec());
    let g = one.sub(&f.scale(&c0_inv))?;
    if g.is_zero() {
        return Ok(Series::constant(*f.field(), f.nvars(), f.prec(), c0_inv));
    }
    let mut acc = one.clone();
    for _ in 1..f.prec() {
        acc = one.add(&g.mul(&acc)?)?;
    }
    Ok(acc.scale(&c0_inv))
}

/// Weierstrass division by the contraction fixed point of the proof of the
/// division theorem: with u = tau(g) (a unit) and h = alpha(g) * u^{-1},
/// iterate M <- tau(f) - tau(h*M) from M0 = tau(f) until exact
/// stabilization, then q = M * u^{-1} and r = f - q*g.
///
/// The weighted norm certifies termination: each step multiplies the
/// correction norm by p^e_rho with e_rho = exp||h|| - c_n*s < 0, and any
/// nonzero series mod Y^N has exponent >= -lambda(N-1), so the number of
/// steps is at most ceil((exp||tau(f)|| + lambda(N-1)) / (-e_rho)) + 1.
/// Exceeding that bound is a kernel bug, not an input condition.
pub fn divide(
    f: &Series,
    g: &Series,
    lam: &GrowthFn,
    weights: Option<Weights>,
) -> Result<DivisionResult, Error> {
    f.check_compat(g)?;
    let s = is_distinguished(g).ok_or(Error::NotDistinguished)?;
    let prec = f.prec().min(g.prec());
    let f = f.truncate(prec)?;
    let g = g.truncate(prec)?;

    let c = match weights {
        Some(w) => {
            if w.len() != f.nvars() {
                return Err(Error::ArityMismatch {
                    expected: f.nvars(),
                    got: w.len(),
                });
            }
            w
        }
        None => select_weights(&g, lam)?.0,
    };

    let u = g.tau(s);
    let u_inv = invert_unit(&u)?;
    let h = g.alpha(s).mul(&u_inv)?;

    let cns = c.last() * BigRational::from_integer(BigInt::from(s));
    let e_rho = match norm_weighted(&h, lam, &c)? {
        NormExp::Zero => None,
        NormExp::Exp(eh) => {
            if eh >= cns {
                return Err(Error::ContractionViolated);
            }
            Some(eh - cns)
        }
    };

    let tf = f.tau(s);
    let budget: u64 = match (&e_rho, norm_weighted(&tf, lam, &c)?) {
        (None, _) | (_, NormExp::Zero) => 1,
        (Some(e_rho), NormExp::Exp(etf)) => {
            let room = etf + lam.eval(prec - 1)?;
            debug_assert!(!room.is_negative());
            let steps = (room / -e_rho).ceil();
            steps
                .to_integer()
                .to_u64()
                .unwrap_or(u64::MAX)
                .saturating_add(1)
        }
    };

    let mut m = tf.clone();
    let mut iterations: u32 = 0;
    loop {
        let next = tf.sub(&h.mul(&m)?.tau(s))?;
        iterations += 1;
        if next == m {
            break;
        }
        if u64::from(iterations) > budget {
            return Err(Error::IterationBudgetExceeded);
        }
        m = next;
    }

    let q = m.mul(&u_inv)?;
    let r = f.sub(&q.mul(&g)?)?;
    debug_assert!(r.deg_x(DegX::Xn).is_none_or(|d| d < s));
    Ok(DivisionResult {
        q,
        r,
        s,
        iterations,
        weights_used: Some(c),
    })
}

// Division with remainder by g0 in X_n over F[X_1..X_{n-1}], for Y-free
// series; g0 has X_n-degree s with an invertible constant leading
// coefficient, so ordinary polynomial division applies.
fn xn_divmod(dividend: &Series, g0: &Series, s: u32) -> Result<(Series, Series), Error> {
    let constant = Monomial::constant(g0.nvars());
    let c0 = g0.xn_coeff(s).coeff(&constant);
    let c0_inv = g0.field().inv(&c0)?;
    let mut rem = dividend.clone();
    let mut quo = Series::zero(*dividend.field(), dividend.nvars(), dividend.prec());
    while let Some(deg) = rem.deg_x(DegX::Xn) {
        if deg < s || rem.is_zero() {
            break;
        }
        let lead = rem.xn_coeff(deg);
        let qt = lead.scale(&c0_inv).xn_mul_pow(deg - s);
        quo = quo.add(&qt)?;
        rem = rem.sub(&qt.mul(g0)?)?;
    }
    Ok((quo, rem))
}

/// Independent division algorithm: write f and g as polynomials over `F[X]`
/// one Y-level at a time and divide by the unit-leading-coefficient level
/// g mod Y with the polynomial Euclidean algorithm. Division uniqueness
/// makes the result identical to [`divide`] on every valid input.
pub fn divide_oracle(f: &Series, g: &Series) -> Result<DivisionResult, Error> {
    f.check_compat(g)?;
    let s = is_distinguished(g).ok_or(Error::NotDistinguished)?;
    let prec = f.prec().min(g.prec());
    let f = f.truncate(prec)?;
    let g = g.truncate(prec)?;

    let f_lev: Vec<Series> = (0..prec).map(|j| f.y_slice(j)).collect();
    let g_lev: Vec<Series> = (0..prec).map(|j| g.y_slice(j)).collect();
    let g0 = &g_lev[0];

    let mut q_lev: Vec<Series> = Vec::with_capacity(prec as usize);
    let mut r_lev: Vec<Series> = Vec::with_capacity(prec as usize);
    for j in 0..prec as usize {
        let mut d = f_lev[j].clone();
        for i in 0..j {
            if !q_lev[i].is_zero() && !g_lev[j - i].is_zero() {
                d = d.sub(&q_lev[i].mul(&g_lev[j - i])?)?;
            }
        }
        let (qj, rj) = xn_divmod(&d, g0, s)?;
        q_lev.push(qj);
        r_lev.push(rj);
    }

    let assemble = |levels: &[Series]| -> Series {
        let mut terms = Vec::new();
        for (j, lev) in levels.iter().enumerate() {
            for (m, c) in lev.terms() {
                terms.push((Monomial::new(m.mu.clone(), j as u32), c.clone()));
            }
        }
        Series::from_terms(*f.field(), f.nvars(), prec, terms)
    };

    Ok(DivisionResult {
        q: assemble(&q_lev),
        r: assemble(&r_lev),
        s,
        iterations: 0,
        weights_used: None,
    })
}

/// Weierstrass preparation: divide X_n^s by g, set omega = X_n^s - r and
/// e = q^{-1}; then g = e * omega with omega a monic distinguished
/// polynomial of degree s. The quotient q is a unit because omega mod Y and
/// g mod Y share the X_n-degree s.
pub fn prepare(g: &Series, lam: &GrowthFn) -> Result<Preparation, Error> {
    let s = is_distinguished(g).ok_or(Error::NotDistinguished)?;
    let xns = Series::var_pow(*g.field(), g.nvars(), g.prec(), g.nvars() - 1, s);
    let div = divide(&xns, g, lam, None)?;
    let omega = xns.sub(&div.r)?;
    let unit = invert_unit(&div.q)?;
    debug_assert_eq!(is_distinguished(&omega), Some(s));
    Ok(Preparation { omega, unit, s })
}

/// True when omega is a Weierstrass polynomial: monic in X_n of degree s
/// (leading coefficient exactly 1, no X_n-power above s anywhere).
pub fn is_weierstrass_poly(omega: &Series) -> Option<u32> {
    let s = is_distinguished(omega)?;
    if omega.deg_x(DegX::Xn) != Some(s) {
        return None;
    }
    let lead = omega.xn_coeff(s);
    let one = Series::one(*omega.field(), omega.nvars(), omega.prec());
    if lead == one {
        Some(s)
    } else {
        None
    }
}

/// Coordinates of f in the free module `Y^d F[X;Y,lambda] / Y^d omega` with
/// basis {Y^d, Y^d X_n, ..., Y^d X_n^{s-1}}: divide f by omega, expand the
/// remainder in powers of X_n and factor Y^d out of each coordinate.
pub fn reduce_mod_omega(f: &Series, omega: &Series, d: u32) -> Result<Vec<Series>, Error> {
    f.check_compat(omega)?;
    let s = is_weierstrass_poly(omega).ok_or(Error::NotWeierstrass)?;
    if d > 0 {
        if let Some(ord) = f.ord_y() {
            if ord < d {
                return Err(Error::NotDivisibleByYd { d });
            }
        }
        if d >= f.prec() {
            return Err(Error::PrecisionUnderflow);
        }
    }
    let div = divide_oracle(f, omega)?;
    (0..s).map(|i| div.r.xn_coeff(i).div_y_pow(d)).collect()
}
