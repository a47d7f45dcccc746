//! Text grammar for polynomials (whitespace-insensitive):
//!
//! ```text
//! poly   := ['-'] term (('+' | '-') term)*
//! term   := coeff ('*' factor)* | factor ('*' factor)*
//! factor := 'x' INDEX ('^' NAT)?
//! coeff  := INT | INT '/' INT
//! ```
//!
//! Variables are 1-based (`x1`, `x2`, …). Example: `2*x1^2*x2^3 - x1`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::{ExponentVector, Polynomial};
use crate::scalar::{Field, Scalar};

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<&'a str> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected digits"));
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits"))
    }

    fn small(&mut self, what: &str) -> Result<u32> {
        let at = self.pos;
        self.digits()?
            .parse::<u32>()
            .map_err(|_| Error::parse(at, format!("{what} out of range")))
    }
}

/// Parses `text` as a polynomial in `nvars` variables over `field`.
pub fn parse_polynomial(text: &str, field: Field, nvars: usize) -> Result<Polynomial> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut cur = Cursor {
        bytes: compact.as_bytes(),
        pos: 0,
    };
    if cur.peek().is_none() {
        return Err(Error::parse(0, "empty polynomial"));
    }
    let mut terms = Vec::new();
    let mut negative = cur.eat(b'-');
    loop {
        let (mut c, e) = parse_term(&mut cur, field, nvars)?;
        if negative {
            c = -c;
        }
        terms.push((c, e));
        if cur.eat(b'+') {
            negative = false;
        } else if cur.eat(b'-') {
            negative = true;
        } else {
            break;
        }
    }
    if let Some(ch) = cur.peek() {
        return Err(Error::parse(cur.pos, format!("unexpected {:?}", ch as char)));
    }
    Polynomial::from_terms(field, nvars, terms)
}

fn parse_term(cur: &mut Cursor<'_>, field: Field, nvars: usize) -> Result<(Scalar, ExponentVector)> {
    let mut exps = vec![0u32; nvars];
    let mut coeff = field.one();
    match cur.peek() {
        Some(b'0'..=b'9') => {
            let at = cur.pos;
            let num: BigInt = cur.digits()?.parse().expect("digits");
            coeff = if cur.eat(b'/') {
                let den: BigInt = cur.digits()?.parse().expect("digits");
                field
                    .from_ratio(&num, &den)
                    .map_err(|_| Error::parse(at, "zero denominator"))?
            } else {
                field.from_bigint(&num)
            };
            while cur.eat(b'*') {
                parse_factor(cur, &mut exps)?;
            }
        }
        Some(b'x') => {
            parse_factor(cur, &mut exps)?;
            while cur.eat(b'*') {
                parse_factor(cur, &mut exps)?;
            }
        }
        _ => return Err(Error::parse(cur.pos, "expected a coefficient or a variable")),
    }
    Ok((coeff, ExponentVector::from(exps)))
}

fn parse_factor(cur: &mut Cursor<'_>, exps: &mut [u32]) -> Result<()> {
    let at = cur.pos;
    if !cur.eat(b'x') {
        return Err(Error::parse(at, "expected a variable x<INDEX>"));
    }
    let index = cur.small("variable index")? as usize;
    if index == 0 || index > exps.len() {
        return Err(Error::VariableOutOfRange {
            index,
            nvars: exps.len(),
        });
    }
    let power = if cur.eat(b'^') { cur.small("exponent")? } else { 1 };
    exps[index - 1] += power;
    Ok(())
}

/// Largest variable index mentioned in `text` (0 when there is none).
pub fn max_variable_index(text: &str) -> usize {
    let bytes = text.as_bytes();
    let mut best = 0;
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'x' {
            let start = i + 1;
            let mut j = start;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            if let Ok(k) = text[start..j].parse::<usize>() {
                best = best.max(k);
            }
            i = j;
        } else {
            i += 1;
        }
    }
    best
}

/// Comma-separated nonnegative integers, e.g. `2,3`.
pub fn parse_u32_list(text: &str) -> Result<Vec<u32>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| Error::Invalid(format!("bad integer {s:?} in list {text:?}")))
        })
        .collect()
}

/// Comma-separated scalars, e.g. `1,3,4,5,9` or `1/2,-1/2`.
pub fn parse_scalar_list(text: &str, field: Field) -> Result<Vec<Scalar>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(|s| field.parse_scalar(s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_grammar_example() {
        let q = Field::Rationals;
        let f = parse_polynomial("2*x1^2*x2^3 - x1", q, 2).unwrap();
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f.coefficient(&ExponentVector::new(&[2, 3])), q.from_i64(2));
        assert_eq!(f.coefficient(&ExponentVector::new(&[1, 0])), q.from_i64(-1));
        assert_eq!(f.to_string(), "2*x1^2*x2^3 - x1");
    }

    #[test]
    fn whitespace_and_fractions() {
        let q = Field::Rationals;
        let a = parse_polynomial(" 1 / 2 * x 2 ^ 2 +3", q, 2).unwrap();
        let b = parse_polynomial("1/2*x2^2+3", q, 2).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "1/2*x2^2 + 3");
        let c = parse_polynomial("-x1*x1 + x1^2", q, 1).unwrap();
        assert!(c.is_zero());
        assert_eq!(c.to_string(), "0");
    }

    #[test]
    fn prime_field_reduction() {
        let f5 = Field::prime(5).unwrap();
        let f = parse_polynomial("7*x1 - 1", f5, 1).unwrap();
        assert_eq!(f.to_string(), "2*x1 + 4");
    }

    #[test]
    fn rejects_malformed_input() {
        let q = Field::Rationals;
        assert!(parse_polynomial("", q, 1).is_err());
        assert!(parse_polynomial("x0", q, 1).is_err());
        assert!(parse_polynomial("x3", q, 2).is_err());
        assert!(parse_polynomial("2x1", q, 1).is_err());
        assert!(parse_polynomial("x1 +", q, 1).is_err());
        assert!(parse_polynomial("1/0*x1", q, 1).is_err());
        assert!(parse_polynomial("x1^", q, 1).is_err());
    }

    #[test]
    fn variable_index_scan() {
        assert_eq!(max_variable_index("x1^2*x12 + x3"), 12);
        assert_eq!(max_variable_index("7"), 0);
    }

    #[test]
    fn list_helpers() {
        assert_eq!(parse_u32_list("2, 3").unwrap(), vec![2, 3]);
        let f11 = Field::prime(11).unwrap();
        let v = parse_scalar_list("1,-1", f11).unwrap();
        assert_eq!(v[1], f11.from_i64(10));
        assert!(parse_scalar_list("", f11).unwrap().is_empty());
    }

    proptest! {
        #[test]
        fn display_reparses(
            terms in prop::collection::vec((-9i64..9, 1i64..4, prop::collection::vec(0u32..4, 3)), 0..6),
            rational in any::<bool>(),
        ) {
            let field = if rational { Field::Rationals } else { Field::prime(13).unwrap() };
            let f = Polynomial::from_terms(
                field,
                3,
                terms.into_iter().map(|(n, d, e)| {
                    (field.from_ratio(&n.into(), &d.into()).unwrap(), ExponentVector::from(e))
                }),
            ).unwrap();
            let text = f.to_string();
            prop_assert_eq!(parse_polynomial(&text, field, 3).unwrap(), f);
        }
    }
}
