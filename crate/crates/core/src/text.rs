//! Small recursive-descent parser for polynomial expressions over `Q(i)`.
//!
//! Shared by the text formats of scalars, rank-one polynomials and tensor
//! slot factors. Grammar:
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' digits]
//! atom   := digits ['/' digits] | 'i' | ident | '(' expr ')'
//! ```

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::exact::{LinComb, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(pos: usize, msg: impl Into<String>) -> Self {
        ParseError { pos, msg: msg.into() }
    }
}

/// Polynomial over named variables, keyed by exponent vectors.
pub type ExprPoly = LinComb<Vec<u32>>;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [&'a str],
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: &str) -> Result<T, ParseError> {
        Err(ParseError::new(self.pos, msg))
    }

    fn constant(&self, c: Scalar) -> ExprPoly {
        LinComb::term(vec![0; self.vars.len()], c)
    }

    fn digits(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(core::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn expr(&mut self) -> Result<ExprPoly, ParseError> {
        let mut acc = LinComb::zero();
        let mut sign = Scalar::ONE;
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                sign = -Scalar::ONE;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc.add_scaled(&t, &sign);
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = Scalar::ONE;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -Scalar::ONE;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ExprPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = mul(&acc, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<ExprPoly, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e: u32 = self.digits()?.parse().map_err(|_| ParseError::new(self.pos, "exponent too large"))?;
            let mut acc = self.constant(Scalar::ONE);
            for _ in 0..e {
                acc = mul(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ExprPoly, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits()?;
                let mut lit = num.to_string();
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let den = self.digits()?;
                    lit.push('/');
                    lit.push_str(den);
                }
                let r: Rational = lit.parse().map_err(|_| ParseError::new(self.pos, "invalid number"))?;
                Ok(self.constant(Scalar::from(r)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = core::str::from_utf8(&self.src[start..self.pos]).unwrap();
                if name == "i" {
                    return Ok(self.constant(Scalar::I));
                }
                match self.vars.iter().position(|v| *v == name) {
                    Some(idx) => {
                        let mut e = vec![0; self.vars.len()];
                        e[idx] = 1;
                        Ok(LinComb::basis(e))
                    }
                    None => Err(ParseError::new(start, alloc::format!("unknown variable '{name}'"))),
                }
            }
            _ => self.err("unexpected token"),
        }
    }
}

pub fn mul(a: &ExprPoly, b: &ExprPoly) -> ExprPoly {
    let mut out = LinComb::zero();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            out.add_term(e, ca * cb);
        }
    }
    out
}

/// Parses a polynomial expression in the given variables.
pub fn parse_poly(src: &str, vars: &[&str]) -> Result<ExprPoly, ParseError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, vars };
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

pub fn parse_scalar(src: &str) -> Result<Scalar, ParseError> {
    let e = parse_poly(src, &[])?;
    Ok(e.coeff(&Vec::new()))
}

/// Coefficient rendering inside a product: parenthesised when it has both a
/// real and an imaginary part. Returns `(negative, magnitude text)`.
pub(crate) fn split_sign(c: &Scalar) -> (bool, String) {
    if c.im.is_zero() {
        return (c.re.is_negative(), c.re.abs().to_string());
    }
    if c.re.is_zero() {
        let mag = Scalar::new(Rational::ZERO, c.im.abs());
        return (c.im.is_negative(), mag.to_string());
    }
    (false, alloc::format!("({c})"))
}

/// Writes `sum coeff*monomial` with ` + ` / ` - ` joins. `monomials` yields
/// the rendered monomial (empty for the constant term) in output order.
pub(crate) fn write_sum<'a>(
    f: &mut core::fmt::Formatter<'_>,
    terms: impl Iterator<Item = (String, &'a Scalar)>,
) -> core::fmt::Result {
    let mut first = true;
    for (mono, c) in terms {
        let (neg, mag) = split_sign(c);
        let body = if mono.is_empty() {
            mag
        } else if mag == "1" {
            mono
        } else {
            alloc::format!("{mag}*{mono}")
        };
        match (first, neg) {
            (true, false) => f.write_str(&body)?,
            (true, true) => write!(f, "-{body}")?,
            (false, false) => write!(f, " + {body}")?,
            (false, true) => write!(f, " - {body}")?,
        }
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_polynomials() {
        let p = parse_poly("3*s^2*t - 1/2", &["s", "t"]).unwrap();
        assert_eq!(p.coeff(&vec![2, 1]), Scalar::int(3));
        assert_eq!(p.coeff(&vec![0, 0]), Scalar::ratio(-1, 2));
        assert_eq!(p.len(), 2);
        let q = parse_poly("(s+1)^2", &["s"]).unwrap();
        assert_eq!(q.coeff(&vec![1]), Scalar::int(2));
        let c = parse_poly("(1+2*i)*s", &["s"]).unwrap();
        assert_eq!(c.coeff(&vec![1]), Scalar::gaussian(1, 2));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_poly("", &["s"]).is_err());
        assert!(parse_poly("3*x", &["s"]).is_err());
        assert!(parse_poly("3 +", &["s"]).is_err());
        assert!(parse_poly("(s", &["s"]).is_err());
        assert!(parse_scalar("1/0").is_err());
    }
}
