//! Canonical text for reduced forms: `sum( (num)/(den) * TAG + ... )`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::basis::BasisFunction;
use super::poly::{Poly, RationalFunction};
use crate::error::{Error, Result};

pub(crate) fn format_terms(terms: &[(RationalFunction, BasisFunction)]) -> String {
    let body: Vec<String> = terms.iter().map(|(r, b)| format!("{r} * {b}")).collect();
    format!("sum( {} )", body.join(" + "))
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

struct Cursor<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.s[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.s[self.pos..].chars().next().map_or(0, char::len_utf8);
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.s[self.pos..].starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(parse_err(format!("expected {tok:?} at byte {}", self.pos)))
        }
    }

    /// Contents of a balanced `( … )` group.
    fn group(&mut self) -> Result<&'a str> {
        self.expect("(")?;
        let start = self.pos;
        let mut depth = 1;
        for (i, ch) in self.s[start..].char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        self.pos = start + i + 1;
                        return Ok(&self.s[start..start + i]);
                    }
                }
                _ => {}
            }
        }
        Err(parse_err("unbalanced parentheses"))
    }

    fn ident(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        let len = self.s[start..]
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(self.s.len() - start);
        self.pos += len;
        &self.s[start..start + len]
    }
}

fn parse_number(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || parse_err(format!("bad coefficient {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Parses `3*z^2 - z + 1` style polynomials (coefficients may be `p/q`).
pub(crate) fn parse_poly(s: &str) -> Result<Poly> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(parse_err("empty polynomial"));
    }
    let mut coeffs: Vec<BigRational> = Vec::new();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let negative = rest.starts_with('-');
        if rest.starts_with(['+', '-']) {
            rest = &rest[1..];
        }
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let term = &rest[..end];
        rest = &rest[end..];
        let (coef, power) = match term.find('z') {
            None => (parse_number(term)?, 0usize),
            Some(zpos) => {
                let coef = match term[..zpos].strip_suffix('*') {
                    Some(c) => parse_number(c)?,
                    None if zpos == 0 => BigRational::from_integer(1.into()),
                    None => return Err(parse_err(format!("bad term {term:?}"))),
                };
                let power = match &term[zpos + 1..] {
                    "" => 1,
                    p => p
                        .strip_prefix('^')
                        .and_then(|p| p.parse().ok())
                        .ok_or_else(|| parse_err(format!("bad exponent in {term:?}")))?,
                };
                (coef, power)
            }
        };
        if coeffs.len() <= power {
            coeffs.resize(power + 1, BigRational::zero());
        }
        coeffs[power] += if negative { -coef } else { coef };
    }
    Ok(Poly::new(coeffs))
}

pub(crate) fn parse_terms(s: &str) -> Result<Vec<(RationalFunction, BasisFunction)>> {
    let mut cur = Cursor { s, pos: 0 };
    cur.expect("sum")?;
    let body = cur.group()?;
    cur.skip_ws();
    if cur.pos != s.len() {
        return Err(parse_err("trailing input after sum( … )"));
    }
    let mut cur = Cursor { s: body, pos: 0 };
    let mut terms = Vec::new();
    cur.skip_ws();
    if cur.pos == body.len() {
        return Ok(terms);
    }
    loop {
        let num = parse_poly(cur.group()?)?;
        cur.expect("/")?;
        let den = parse_poly(cur.group()?)?;
        cur.expect("*")?;
        let basis: BasisFunction = cur.ident().parse()?;
        terms.push((RationalFunction::new(num, den)?, basis));
        cur.skip_ws();
        if cur.pos == body.len() {
            return Ok(terms);
        }
        cur.expect("+")?;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_parse() {
        assert_eq!(parse_poly("3*z^2 - z + 1").unwrap(), Poly::from_ints(&[1, -1, 3]));
        assert_eq!(parse_poly("-z").unwrap(), Poly::from_ints(&[0, -1]));
        assert_eq!(parse_poly("0").unwrap(), Poly::zero());
        assert_eq!(parse_poly("1/2*z + z").unwrap(), parse_poly("3/2*z").unwrap());
        assert!(parse_poly("2*y").is_err());
        assert!(parse_poly("z^x").is_err());
        assert!(parse_poly("").is_err());
    }

    #[test]
    fn terms_round_trip() {
        let r = RationalFunction::new(Poly::from_ints(&[-6, 6]), Poly::from_ints(&[0, 1])).unwrap();
        let one = RationalFunction::new(Poly::one(), Poly::one()).unwrap();
        let terms = vec![(r, BasisFunction::One), (one, BasisFunction::EllipticK)];
        let text = format_terms(&terms);
        assert_eq!(text, "sum( (6*z - 6)/(z) * ONE + (1)/(1) * KHAT )");
        assert_eq!(parse_terms(&text).unwrap(), terms);
        assert_eq!(parse_terms("sum( )").unwrap(), vec![]);
        assert!(parse_terms("sum( (1)/(0) * ONE )").is_err());
        assert!(parse_terms("sum( (1)/(1) * WHAT )").is_err());
        assert!(parse_terms("sum( (1)/(1) * ONE ) extra").is_err());
    }
}
