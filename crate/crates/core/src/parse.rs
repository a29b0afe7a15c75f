//! Parser for the polynomial text grammar shared by germ files and reports.
//!
//! Terms are joined by `+`/`-`; a term is an optional rational coefficient
//! (`3`, `3/2`, `-1/4`) `*`-separated from powers `x<i>^<e>` (`^1` optional).
//! Whitespace is ignored. `y<i>` is accepted as an alias for `x<i>` so that
//! target-side expressions read naturally.
//!
//! Example: `x1^2 + 3/2*x1*x2 - x2^3`.

use num_traits::One;

use crate::error::{ParseError, Result};
use crate::monomial::Monomial;
use crate::poly::{JetPoly, Q};

struct Scanner<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str) -> Self {
        Scanner {
            src: src.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn advance(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.advance();
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.advance();
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> std::result::Result<i64, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.advance();
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<i64>()
            .map_err(|_| self.err("number too large"))
    }

    fn rational(&mut self) -> std::result::Result<Q, ParseError> {
        let num = self.integer()?;
        if self.eat(b'/') {
            let den = self.integer()?;
            if den == 0 {
                return Err(self.err("zero denominator"));
            }
            Ok(Q::new(num.into(), den.into()))
        } else {
            Ok(Q::from_integer(num.into()))
        }
    }
}

/// Parse a polynomial in `n` variables as a jet of the given order.
/// Terms whose degree exceeds the order are an error, not a silent truncation.
pub fn parse_poly(src: &str, n: usize, order: u32) -> Result<JetPoly> {
    let mut sc = Scanner::new(src);
    let mut terms: Vec<(Monomial, Q)> = Vec::new();
    sc.skip_ws();
    if sc.peek().is_none() {
        return Err(sc.err("empty polynomial").into());
    }
    let mut sign = Q::one();
    if sc.eat(b'-') {
        sign = -sign;
    } else {
        sc.eat(b'+');
    }
    loop {
        sc.skip_ws();
        let (m, c) = parse_term(&mut sc, n, order)?;
        terms.push((m, sign * c));
        sc.skip_ws();
        match sc.peek() {
            None => break,
            Some(b'+') => {
                sc.advance();
                sign = Q::one();
            }
            Some(b'-') => {
                sc.advance();
                sign = -Q::one();
            }
            Some(c) => return Err(sc.err(format!("unexpected character `{}`", c as char)).into()),
        }
    }
    JetPoly::from_terms(n, order, terms)
}

fn parse_term(
    sc: &mut Scanner<'_>,
    n: usize,
    order: u32,
) -> std::result::Result<(Monomial, Q), ParseError> {
    let mut coeff = Q::one();
    let mut exponents = vec![0u32; n];
    let mut saw_factor = false;

    loop {
        sc.skip_ws();
        match sc.peek() {
            Some(c) if c.is_ascii_digit() => {
                if saw_factor {
                    return Err(sc.err("coefficient must come first in a term"));
                }
                coeff = sc.rational()?;
                saw_factor = true;
            }
            Some(b'x') | Some(b'y') => {
                sc.advance();
                let i = sc.integer()? as usize;
                if i == 0 || i > n {
                    return Err(sc.err(format!(
                        "variable index {} out of range 1..={}",
                        i, n
                    )));
                }
                sc.skip_ws();
                let e = if sc.eat(b'^') {
                    sc.skip_ws();
                    let e = sc.integer()?;
                    if e < 1 {
                        return Err(sc.err("exponent must be at least 1"));
                    }
                    e as u32
                } else {
                    1
                };
                exponents[i - 1] += e;
                saw_factor = true;
            }
            _ => return Err(sc.err("expected a coefficient or a variable")),
        }
        sc.skip_ws();
        if !sc.eat(b'*') {
            break;
        }
    }
    if !saw_factor {
        return Err(sc.err("empty term"));
    }
    let m = Monomial::new(exponents);
    if m.degree() > order {
        return Err(sc.err(format!(
            "term of degree {} exceeds jet order {}",
            m.degree(),
            order
        )));
    }
    Ok((m, coeff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q_ratio;

    #[test]
    fn grammar_example() {
        let p = parse_poly("x1^2 + 3/2*x1*x2 - x2^3", 2, 3).unwrap();
        assert_eq!(p.coeff(&Monomial::new(vec![2, 0])), q_ratio(1, 1));
        assert_eq!(p.coeff(&Monomial::new(vec![1, 1])), q_ratio(3, 2));
        assert_eq!(p.coeff(&Monomial::new(vec![0, 3])), q_ratio(-1, 1));
    }

    #[test]
    fn y_alias_and_whitespace() {
        let a = parse_poly("y1 * y2 ^ 2", 2, 3).unwrap();
        let b = parse_poly("x1*x2^2", 2, 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn leading_sign_and_constants() {
        let p = parse_poly("-1/4 + x1", 1, 1).unwrap();
        assert_eq!(p.constant_term(), q_ratio(-1, 4));
    }

    #[test]
    fn like_terms_collect() {
        let p = parse_poly("x1 + x1 - 2*x1", 1, 2).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn error_positions() {
        let e = parse_poly("x1 + x3", 2, 3).unwrap_err();
        match e {
            crate::error::Error::Parse(pe) => {
                assert_eq!(pe.line, 1);
                assert!(pe.col >= 6);
                assert!(pe.msg.contains("out of range"));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn degree_beyond_order_is_an_error() {
        assert!(parse_poly("x1^4", 1, 3).is_err());
    }
}
