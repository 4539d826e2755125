//! Text input: series expressions, growth-function specs, field specs and
//! weight lists.
//!
//! Series grammar (whitespace-insensitive):
//!
//! ```text
//! series := sign? term (sign term)*
//! sign   := '+' | '-'
//! term   := (coeff | factor) ('*' factor)*
//! coeff  := nat ('/' nat)?       -- the fraction form only over Q
//! factor := ('X' index? | 'Y') ('^' nat)?
//! ```
//!
//! `X` abbreviates `X1` when there is a single X variable. Terms with a
//! Y-exponent at or above the precision are rejected rather than silently
//! truncated.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::Error;
use crate::field::{FieldDesc, FieldElem};
use crate::growth::GrowthFn;
use crate::norm::Weights;
use crate::series::{Monomial, Series};

/// Cap on any single parsed exponent.
pub const MAX_EXPONENT: u32 = 1_000_000;
/// Cap on the length of a digit run.
const MAX_DIGITS: usize = 10_000;

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::SyntaxError {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn digits(&mut self) -> Result<&'a str, Error> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        if self.pos - start > MAX_DIGITS {
            return Err(Error::SyntaxError {
                pos: start,
                msg: "number too long".into(),
            });
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits"))
    }

    fn nat_u32(&mut self, what: &str) -> Result<u32, Error> {
        let start = self.pos;
        let digits = self.digits()?;
        let v: u64 = digits.parse().map_err(|_| Error::SyntaxError {
            pos: start,
            msg: format!("{what} too large"),
        })?;
        if v > MAX_EXPONENT as u64 {
            return Err(Error::SyntaxError {
                pos: start,
                msg: format!("{what} exceeds the cap {MAX_EXPONENT}"),
            });
        }
        Ok(v as u32)
    }
}

// coeff := nat ('/' nat)?, interpreted in the field.
fn parse_coeff(cur: &mut Cursor, field: &FieldDesc) -> Result<FieldElem, Error> {
    let start = cur.pos;
    let num_digits = cur.digits()?;
    let num: BigInt = num_digits.parse().expect("digit run");
    if cur.peek() == Some(b'/') {
        cur.bump();
        let den_start = cur.pos;
        let den_digits = cur.digits()?;
        let den: BigInt = den_digits.parse().expect("digit run");
        match field {
            FieldDesc::Prime(_) => Err(Error::CoefficientParseError {
                pos: start,
                msg: "fraction coefficients need the rational field; prime-field \
                      coefficients are decimal residues"
                    .into(),
            }),
            FieldDesc::Rationals => {
                if den.is_zero() {
                    return Err(Error::CoefficientParseError {
                        pos: den_start,
                        msg: "zero denominator".into(),
                    });
                }
                Ok(FieldElem::Rat(BigRational::new(num, den)))
            }
        }
    } else {
        Ok(field.from_bigint(&num))
    }
}

// factor := ('X' index? | 'Y') ('^' nat)?; accumulates into (mu, k).
fn parse_factor(cur: &mut Cursor, nvars: usize, mu: &mut [u32], k: &mut u32) -> Result<(), Error> {
    let var_pos = cur.pos;
    let which = cur.bump().ok_or_else(|| cur.err("expected a variable"))?;
    let slot: &mut u32 = match which {
        b'X' => {
            if cur.peek().is_some_and(|b| b.is_ascii_digit()) {
                let idx_pos = cur.pos;
                let idx: usize = cur.digits()?.parse().map_err(|_| Error::SyntaxError {
                    pos: idx_pos,
                    msg: "variable index too large".into(),
                })?;
                if idx < 1 || idx > nvars {
                    return Err(Error::SyntaxError {
                        pos: idx_pos,
                        msg: format!("variable X{idx} outside X1..X{nvars}"),
                    });
                }
                &mut mu[idx - 1]
            } else if nvars == 1 {
                &mut mu[0]
            } else {
                return Err(Error::SyntaxError {
                    pos: var_pos,
                    msg: format!("X needs an index between 1 and {nvars}"),
                });
            }
        }
        b'Y' => k,
        other => {
            return Err(Error::SyntaxError {
                pos: var_pos,
                msg: format!("unexpected character '{}'", other as char),
            });
        }
    };
    let exp = if cur.peek() == Some(b'^') {
        cur.bump();
        cur.nat_u32("exponent")?
    } else {
        1
    };
    let exp_pos = cur.pos;
    *slot = slot.checked_add(exp).ok_or(Error::SyntaxError {
        pos: exp_pos,
        msg: "exponent overflow".into(),
    })?;
    if *slot > MAX_EXPONENT {
        return Err(Error::SyntaxError {
            pos: exp_pos,
            msg: format!("exponent exceeds the cap {MAX_EXPONENT}"),
        });
    }
    Ok(())
}

/// Parse a series expression into canonical form. Errors carry byte
/// positions; Y-exponents at or above `prec` are an error, not a silent
/// truncation.
pub fn parse_series(
    text: &str,
    field: &FieldDesc,
    nvars: usize,
    prec: u32,
) -> Result<Series, Error> {
    if nvars < 1 {
        return Err(Error::InvalidParameter(
            "need at least one X variable".into(),
        ));
    }
    if prec < 1 {
        return Err(Error::InvalidParameter(
            "precision must be at least 1".into(),
        ));
    }
    let mut cur = Cursor::new(text);
    let mut terms: Vec<(Monomial, FieldElem)> = Vec::new();
    cur.skip_ws();
    if cur.peek().is_none() {
        return Err(cur.err("empty series expression"));
    }
    let mut negate = match cur.peek() {
        Some(b'-') => {
            cur.bump();
            true
        }
        Some(b'+') => {
            cur.bump();
            false
        }
        _ => false,
    };
    loop {
        cur.skip_ws();
        let mut mu = vec![0u32; nvars];
        let mut k = 0u32;
        let mut coeff = match cur.peek() {
            Some(b) if b.is_ascii_digit() => {
                let c = parse_coeff(&mut cur, field)?;
                cur.skip_ws();
                while cur.peek() == Some(b'*') {
                    cur.bump();
                    cur.skip_ws();
                    parse_factor(&mut cur, nvars, &mut mu, &mut k)?;
                    cur.skip_ws();
                }
                c
            }
            Some(b'X') | Some(b'Y') => {
                parse_factor(&mut cur, nvars, &mut mu, &mut k)?;
                cur.skip_ws();
                while cur.peek() == Some(b'*') {
                    cur.bump();
                    cur.skip_ws();
                    parse_factor(&mut cur, nvars, &mut mu, &mut k)?;
                    cur.skip_ws();
                }
                field.one()
            }
            _ => return Err(cur.err("expected a coefficient or a variable")),
        };
        if k >= prec {
            return Err(Error::YExponentExceedsPrecision { k, prec });
        }
        if negate {
            coeff = field.neg(&coeff);
        }
        terms.push((Monomial::new(mu, k), coeff));

        cur.skip_ws();
        match cur.peek() {
            None => break,
            Some(b'+') => {
                cur.bump();
                negate = false;
            }
            Some(b'-') => {
                cur.bump();
                negate = true;
            }
            Some(other) => {
                return Err(cur.err(format!("unexpected character '{}'", other as char)));
            }
        }
    }
    Ok(Series::from_terms(*field, nvars, prec, terms))
}

/// Parse an exact rational: `a`, `a/b` or `-a/b`.
pub fn parse_ratio(text: &str) -> Result<BigRational, Error> {
    let mut cur = Cursor::new(text.trim());
    let negative = if cur.peek() == Some(b'-') {
        cur.bump();
        true
    } else {
        false
    };
    let num: BigInt = cur.digits()?.parse().expect("digit run");
    let den: BigInt = if cur.peek() == Some(b'/') {
        cur.bump();
        let pos = cur.pos;
        let d: BigInt = cur.digits()?.parse().expect("digit run");
        if d.is_zero() {
            return Err(Error::CoefficientParseError {
                pos,
                msg: "zero denominator".into(),
            });
        }
        d
    } else {
        BigInt::from(1)
    };
    if cur.peek().is_some() {
        return Err(cur.err("trailing characters after rational"));
    }
    let r = BigRational::new(num, den);
    Ok(if negative { -r } else { r })
}

/// Growth-function spec: `linear:a`, `pow:a`, `exp:b` or `table:v0,v1,...`.
pub fn parse_lambda_spec(text: &str) -> Result<GrowthFn, Error> {
    let (family, arg) = text.split_once(':').ok_or_else(|| Error::SyntaxError {
        pos: 0,
        msg: "growth spec needs the form family:args".into(),
    })?;
    match family {
        "linear" => GrowthFn::linear(parse_ratio(arg)?),
        "pow" => {
            let a: u32 = arg.trim().parse().map_err(|_| Error::SyntaxError {
                pos: family.len() + 1,
                msg: "pow needs an integer exponent".into(),
            })?;
            GrowthFn::power(a)
        }
        "exp" => {
            let b: u32 = arg.trim().parse().map_err(|_| Error::SyntaxError {
                pos: family.len() + 1,
                msg: "exp needs an integer base".into(),
            })?;
            GrowthFn::exponential(b)
        }
        "table" => {
            let values = arg
                .split(',')
                .map(parse_ratio)
                .collect::<Result<Vec<_>, _>>()?;
            GrowthFn::table(values)
        }
        other => Err(Error::SyntaxError {
            pos: 0,
            msg: format!("unknown growth family '{other}'"),
        }),
    }
}

/// Field spec: `Q` or `Fp:<p>`.
pub fn parse_field_spec(text: &str) -> Result<FieldDesc, Error> {
    if text == "Q" {
        return Ok(FieldDesc::rationals());
    }
    if let Some(p) = text.strip_prefix("Fp:") {
        let p: u64 = p.trim().parse().map_err(|_| Error::SyntaxError {
            pos: 3,
            msg: "Fp needs an integer modulus".into(),
        })?;
        return FieldDesc::prime(p);
    }
    Err(Error::SyntaxError {
        pos: 0,
        msg: "field spec must be Q or Fp:<prime>".into(),
    })
}

/// Comma-separated positive rationals.
pub fn parse_weights(text: &str) -> Result<Weights, Error> {
    let values = text
        .split(',')
        .map(parse_ratio)
        .collect::<Result<Vec<_>, _>>()?;
    Weights::new(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldDesc {
        FieldDesc::rationals()
    }

    #[test]
    fn aliases_x_in_one_variable() {
        let a = parse_series("X1 - Y", &q(), 1, 4).unwrap();
        let b = parse_series("X - Y", &q(), 1, 4).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "X - Y");
    }

    #[test]
    fn parses_fractions_over_q() {
        let a = parse_series("1/2*X^2*Y^3 + 3", &q(), 1, 4).unwrap();
        assert_eq!(a.num_terms(), 2);
        assert_eq!(a.to_string(), "3 + 1/2*X^2*Y^3");
    }

    #[test]
    fn rejects_y_exponent_at_precision() {
        assert_eq!(
            parse_series("X1^2*Y^9", &q(), 1, 4),
            Err(Error::YExponentExceedsPrecision { k: 9, prec: 4 })
        );
        assert_eq!(
            parse_series("Y^4", &q(), 1, 4),
            Err(Error::YExponentExceedsPrecision { k: 4, prec: 4 })
        );
    }

    #[test]
    fn rejects_fractions_over_fp() {
        let f7 = FieldDesc::prime(7).unwrap();
        assert!(matches!(
            parse_series("1/2*X", &f7, 1, 4),
            Err(Error::CoefficientParseError { .. })
        ));
        // residues reduce mod p
        let a = parse_series("15*X", &f7, 1, 4).unwrap();
        assert_eq!(a.to_string(), "X");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_series("X1 + @", &q(), 2, 4) {
            Err(Error::SyntaxError { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(parse_series("", &q(), 1, 4).is_err());
        assert!(parse_series("2X", &q(), 1, 4).is_err()); // implicit product
        assert!(parse_series("X3", &q(), 2, 4).is_err()); // unknown variable
        assert!(parse_series("X", &q(), 2, 4).is_err()); // ambiguous alias
        assert!(parse_series("X^9999999", &q(), 1, 4).is_err()); // exponent cap
    }

    #[test]
    fn duplicate_monomials_accumulate() {
        let a = parse_series("X + X", &q(), 1, 4).unwrap();
        assert_eq!(a.to_string(), "2*X");
        let b = parse_series("X - X", &q(), 1, 4).unwrap();
        assert!(b.is_zero());
        let c = parse_series("X*X*Y*Y^2", &q(), 1, 4).unwrap();
        assert_eq!(c.to_string(), "X^2*Y^3");
    }

    #[test]
    fn zero_denominator_is_a_coefficient_error() {
        assert!(matches!(
            parse_series("1/0*X", &q(), 1, 4),
            Err(Error::CoefficientParseError { .. })
        ));
        assert!(matches!(
            parse_ratio("1/0"),
            Err(Error::CoefficientParseError { .. })
        ));
    }

    #[test]
    fn zero_literal() {
        let z = parse_series("0", &q(), 1, 4).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.to_string(), "0");
    }

    #[test]
    fn leading_sign() {
        let a = parse_series("-X + Y", &q(), 1, 4).unwrap();
        assert_eq!(a.to_string(), "-X + Y");
        let b = parse_series("-1/2", &q(), 1, 4).unwrap();
        assert_eq!(b.to_string(), "-1/2");
    }

    #[test]
    fn render_parse_round_trip() {
        for text in [
            "X - Y",
            "1 + X*Y + X^2*Y^2",
            "-1/2*X + 3*Y^2",
            "2 + X1^3*X2*Y^2",
            "0",
        ] {
            let nvars = if text.contains("X1") { 2 } else { 1 };
            let a = parse_series(text, &q(), nvars, 6).unwrap();
            let again = parse_series(&a.to_string(), &q(), nvars, 6).unwrap();
            assert_eq!(a, again);
        }
    }

    #[test]
    fn lambda_specs() {
        assert!(matches!(
            parse_lambda_spec("linear:1").unwrap(),
            GrowthFn::Linear(_)
        ));
        assert!(matches!(
            parse_lambda_spec("linear:3/2").unwrap(),
            GrowthFn::Linear(_)
        ));
        assert!(matches!(
            parse_lambda_spec("pow:2").unwrap(),
            GrowthFn::Power(2)
        ));
        assert!(matches!(
            parse_lambda_spec("exp:2").unwrap(),
            GrowthFn::Exponential(2)
        ));
        assert!(matches!(
            parse_lambda_spec("table:0,1,2,4").unwrap(),
            GrowthFn::Table(_)
        ));
        assert!(parse_lambda_spec("linear:0").is_err());
        assert!(parse_lambda_spec("cubic:1").is_err());
        assert!(parse_lambda_spec("linear").is_err());
    }

    #[test]
    fn field_specs() {
        assert_eq!(parse_field_spec("Q").unwrap(), FieldDesc::rationals());
        assert_eq!(
            parse_field_spec("Fp:7").unwrap(),
            FieldDesc::prime(7).unwrap()
        );
        assert!(parse_field_spec("Fp:6").is_err());
        assert!(parse_field_spec("R").is_err());
    }

    #[test]
    fn weight_lists() {
        let w = parse_weights("1,1/2").unwrap();
        assert_eq!(w.len(), 2);
        assert!(parse_weights("1,0").is_err());
        assert!(parse_weights("1,-1").is_err());
        assert!(parse_weights("").is_err());
    }
}
