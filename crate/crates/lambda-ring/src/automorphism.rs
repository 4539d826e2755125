//! Variable-change automorphisms that turn suitable series into
//! X_n-distinguished form.
//!
//! The maps fix Y and substitute X_i -> X_i + X_j^d, expanded exactly by the
//! binomial theorem with coefficients taken in the coefficient field (they
//! may vanish in characteristic p, which is correct behaviour, not a bug).

use num_bigint::BigInt;
use num_integer::binomial;

use crate::error::Error;
use crate::field::FieldElem;
use crate::series::{DegX, Monomial, Series};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AutoMapKind {
    /// X_i -> X_i + X_j^d (0-based indices, i != j, d >= 1).
    Elementary { i: usize, j: usize, d: u32 },
    /// Simultaneous X_i -> X_i + X_n^{d_i} for i < n, with the recurrence
    /// d_n = 1, d_{n-j} = 1 + t * (d_n + ... + d_{n-j+1}).
    Distinguishing {
        d: Vec<u32>,
        t: u32,
        nu: Vec<u32>,
        s: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutoMap {
    pub kind: AutoMapKind,
    pub direction: Direction,
}

impl AutoMap {
    pub fn elementary(i: usize, j: usize, d: u32) -> Result<Self, Error> {
        if i == j {
            return Err(Error::InvalidParameter(
                "elementary substitution needs distinct variables".into(),
            ));
        }
        if d < 1 {
            return Err(Error::InvalidParameter(
                "elementary substitution needs d >= 1".into(),
            ));
        }
        Ok(AutoMap {
            kind: AutoMapKind::Elementary { i, j, d },
            direction: Direction::Forward,
        })
    }

    /// The same map with the opposite substitution sign.
    pub fn inverse(&self) -> AutoMap {
        AutoMap {
            kind: self.kind.clone(),
            direction: match self.direction {
                Direction::Forward => Direction::Inverse,
                Direction::Inverse => Direction::Forward,
            },
        }
    }

    /// Predicted distinguished degree (distinguishing maps only).
    pub fn predicted_degree(&self) -> Option<u32> {
        match &self.kind {
            AutoMapKind::Distinguishing { s, .. } => Some(*s),
            AutoMapKind::Elementary { .. } => None,
        }
    }
}

/// Build the distinguishing automorphism for f: nu is the lex-maximal
/// multidegree among Y-free terms, t the total X-degree of f mod Y, the
/// exponents d_i follow the recurrence, and sigma(f) is distinguished of
/// degree s = sum d_i nu_i. Requires a Y-free term with positive
/// X_n-exponent when n >= 2; for n = 1 any f with f mod Y != 0 yields the
/// identity substitution.
pub fn build_sigma(f: &Series) -> Result<AutoMap, Error> {
    let n = f.nvars();
    let red = f.reduce_mod_y();
    if red.is_zero() {
        return Err(Error::HypothesisFails);
    }
    if n >= 2 && red.terms().all(|(m, _)| m.mu[n - 1] == 0) {
        return Err(Error::HypothesisFails);
    }
    let nu = red
        .terms()
        .map(|(m, _)| m.mu.clone())
        .max()
        .expect("nonzero mod-Y part");
    let t = red.deg_x(DegX::Total).expect("nonzero mod-Y part");

    // d_n = 1, then d_{n-j} = 1 + t * (sum of the later d's)
    let mut d = vec![0u64; n];
    d[n - 1] = 1;
    let mut tail: u64 = 1;
    for j in 1..n {
        let i = n - 1 - j;
        d[i] = (t as u64)
            .checked_mul(tail)
            .and_then(|x| x.checked_add(1))
            .ok_or(Error::DegreeOverflow)?;
        tail = tail.checked_add(d[i]).ok_or(Error::DegreeOverflow)?;
    }
    let mut s: u64 = 0;
    for (di, &ni) in d.iter().zip(&nu) {
        s = di
            .checked_mul(ni as u64)
            .and_then(|x| x.checked_add(s))
            .ok_or(Error::DegreeOverflow)?;
    }
    let d: Vec<u32> = d
        .into_iter()
        .map(|v| u32::try_from(v).map_err(|_| Error::DegreeOverflow))
        .collect::<Result<_, _>>()?;
    let s = u32::try_from(s).map_err(|_| Error::DegreeOverflow)?;
    Ok(AutoMap {
        kind: AutoMapKind::Distinguishing { d, t, nu, s },
        direction: Direction::Forward,
    })
}

fn binom_elem(f: &Series, e: u32, l: u32) -> FieldElem {
    let b = binomial(BigInt::from(e), BigInt::from(l));
    f.field().from_bigint(&b)
}

// X_i -> X_i + sign * X_j^d, expanded term by term.
fn substitute(f: &Series, i: usize, j: usize, d: u32, negative: bool) -> Result<Series, Error> {
    let mut out: Vec<(Monomial, FieldElem)> = Vec::new();
    for (m, c) in f.terms() {
        let e = m.mu[i];
        if e == 0 {
            out.push((m.clone(), c.clone()));
            continue;
        }
        for l in 0..=e {
            let mut mu = m.mu.clone();
            mu[i] = e - l;
            let bump = (d as u64) * (l as u64);
            let nj = (mu[j] as u64)
                .checked_add(bump)
                .filter(|v| *v <= u32::MAX as u64)
                .ok_or(Error::DegreeOverflow)?;
            mu[j] = nj as u32;
            let mut coef = f.field().mul(c, &binom_elem(f, e, l));
            if negative && l % 2 == 1 {
                coef = f.field().neg(&coef);
            }
            out.push((Monomial::new(mu, m.k), coef));
        }
    }
    Ok(Series::from_terms(*f.field(), f.nvars(), f.prec(), out))
}

// The proof's dominance inequality: any Y-free multidegree mu that is
// lexicographically below nu with every component <= t satisfies
// sum d_i mu_i < s. This holds for arbitrary ring elements, so it is safe
// to assert on any input the map is applied to.
#[cfg(debug_assertions)]
fn debug_check_lex_dominance(f: &Series, d: &[u32], t: u32, nu: &[u32], s: u32) {
    for (m, _) in f.terms() {
        if m.k != 0 || m.mu.as_slice() == nu {
            continue;
        }
        if m.mu.iter().any(|&e| e > t) || m.mu.as_slice() >= nu {
            continue;
        }
        let weighted: u64 = d
            .iter()
            .zip(&m.mu)
            .map(|(&di, &mi)| di as u64 * mi as u64)
            .sum();
        debug_assert!(
            weighted < s as u64,
            "lex-dominance violated for mu = {:?}",
            m.mu
        );
    }
}

/// Apply the substitution exactly, truncated to f's precision. For a
/// distinguishing map built from f, the image is X_n-distinguished of the
/// predicted degree.
pub fn apply_map(map: &AutoMap, f: &Series) -> Result<Series, Error> {
    let negative = map.direction == Direction::Inverse;
    match &map.kind {
        AutoMapKind::Elementary { i, j, d } => {
            if *i >= f.nvars() || *j >= f.nvars() {
                return Err(Error::ArityMismatch {
                    expected: f.nvars(),
                    got: i.max(j) + 1,
                });
            }
            substitute(f, *i, *j, *d, negative)
        }
        AutoMapKind::Distinguishing { d, t, nu, s } => {
            let n = f.nvars();
            if d.len() != n {
                return Err(Error::ArityMismatch {
                    expected: n,
                    got: d.len(),
                });
            }
            #[cfg(debug_assertions)]
            if map.direction == Direction::Forward {
                debug_check_lex_dominance(f, d, *t, nu, *s);
            }
            #[cfg(not(debug_assertions))]
            let _ = (t, nu, s);
            let mut acc = f.clone();
            for (i, &di) in d[..n - 1].iter().enumerate() {
                acc = substitute(&acc, i, n - 1, di, negative)?;
            }
            Ok(acc)
        }
    }
}
