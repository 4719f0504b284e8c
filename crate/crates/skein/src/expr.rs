//! The textual expression language for module elements.
//!
//! Linear combinations are sums of terms; a term is an optional coefficient in
//! braces followed by a juxtaposed sequence of factors, read inner to outer:
//!
//! ```text
//! {-A^3}*l x(5) + {1}*x(2) l^2 x(2)
//! ```
//!
//! Factors are `l` (optionally `l^n`), `x(m)`, the empty diagram `1`, and the
//! polynomial macros `Q(n)`, `P(n)`, `P(n,k)`, `t(n)`, `t(n,k)`. A macro
//! expands to its disk polynomial and is spliced into the word at the position
//! where it appears; `t` is an alias for `P`, since an `n`-arrow circle over
//! `k` one-arrow circles reduces to exactly `P_{n,k}`.
//!
//! [`ModuleElement`]'s `Display` prints in this same language, and
//! `parse(print(e)) == e`.

use crate::laurent::{Laurent, ParseError};
use crate::polyfam::{ppoly_k, qpoly};
use crate::word::ModuleElement;

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner { bytes: text.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        Some(b)
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        match self.peek() {
            Some(found) if found == b => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(ParseError::new(self.pos, format!("expected '{}'", b as char))),
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.bytes.get(self.pos) == Some(&b'-') || self.bytes.get(self.pos) == Some(&b'+') {
            self.pos += 1;
        }
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| ParseError::new(start, "expected an integer"))
    }

    fn uint(&mut self) -> Result<u32, ParseError> {
        let start = self.pos;
        let n = self.int()?;
        u32::try_from(n).map_err(|_| ParseError::new(start, "expected a non-negative integer"))
    }
}

/// Parse an expression into a module element (in canonical form).
pub fn parse(text: &str) -> Result<ModuleElement, ParseError> {
    let mut s = Scanner::new(text);
    let mut out = ModuleElement::zero();
    if s.peek().is_none() {
        return Err(ParseError::new(s.pos, "empty expression"));
    }
    let mut first = true;
    loop {
        let mut sign = Laurent::one();
        match s.peek() {
            None => break,
            Some(b'+') => {
                s.bump();
            }
            Some(b'-') => {
                sign = -Laurent::one();
                s.bump();
            }
            Some(_) if first => {}
            Some(_) => return Err(ParseError::new(s.pos, "expected '+' or '-'")),
        }
        let term = parse_term(&mut s)?;
        out.add_scaled(&term, &sign);
        first = false;
        if s.peek().is_none() {
            break;
        }
    }
    Ok(out)
}

fn parse_term(s: &mut Scanner) -> Result<ModuleElement, ParseError> {
    let mut coeff = Laurent::one();
    let mut saw_anything = false;
    if s.peek() == Some(b'{') {
        s.bump();
        let start = s.pos;
        let mut depth = 0usize;
        while let Some(&b) = s.bytes.get(s.pos) {
            if b == b'{' {
                depth += 1;
            } else if b == b'}' {
                if depth == 0 {
                    break;
                }
                depth -= 1;
            }
            s.pos += 1;
        }
        if s.bytes.get(s.pos) != Some(&b'}') {
            return Err(ParseError::new(s.pos, "unterminated coefficient"));
        }
        let inner = std::str::from_utf8(&s.bytes[start..s.pos]).unwrap();
        coeff = Laurent::parse(inner)
            .map_err(|e| ParseError::new(start + e.pos, e.msg))?;
        s.pos += 1; // closing brace
        if s.peek() == Some(b'*') {
            s.bump();
        }
        saw_anything = true;
    }
    let mut elem = ModuleElement::term(crate::word::GammaWord::empty(), coeff);
    loop {
        match s.peek() {
            Some(b'l') => {
                s.bump();
                let n = if s.peek() == Some(b'^') {
                    s.bump();
                    s.uint()?
                } else {
                    1
                };
                elem = elem.append_lambda(n);
            }
            Some(b'x') => {
                s.bump();
                s.expect(b'(')?;
                let m = s.int()?;
                s.expect(b')')?;
                elem = elem.append_x(m);
            }
            Some(b'1') => {
                s.bump();
            }
            Some(b'0') => {
                // the zero element, so Display output always re-parses
                s.bump();
                elem = ModuleElement::zero();
            }
            Some(b'Q') => {
                s.bump();
                s.expect(b'(')?;
                let n = s.int()?;
                s.expect(b')')?;
                elem = elem.append_poly(&qpoly(n));
            }
            Some(b'P') | Some(b't') => {
                s.bump();
                s.expect(b'(')?;
                let n = s.int()?;
                let k = if s.peek() == Some(b',') {
                    s.bump();
                    s.uint()?
                } else {
                    0
                };
                s.expect(b')')?;
                elem = elem.append_poly(&ppoly_k(n, k));
            }
            _ => break,
        }
        saw_anything = true;
    }
    if !saw_anything {
        return Err(ParseError::new(s.pos, "expected a term"));
    }
    Ok(elem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyfam::ppoly;
    use crate::word::GammaWord;

    fn lp(text: &str) -> Laurent {
        Laurent::parse(text).unwrap()
    }

    #[test]
    fn parses_plain_words() {
        assert_eq!(parse("x(2)").unwrap(), ModuleElement::from_word(GammaWord::x(2)));
        assert_eq!(
            parse("l^3").unwrap(),
            ModuleElement::from_word(GammaWord::lambda_power(3))
        );
        assert_eq!(parse("1").unwrap(), ModuleElement::from_word(GammaWord::empty()));
        assert_eq!(
            parse("x(5) l^2 x(0)").unwrap(),
            ModuleElement::from_word(GammaWord::from_parts(vec![0, 2, 0], vec![5, 0]))
        );
    }

    #[test]
    fn parses_linear_combinations() {
        let e = parse("{-A^3}*l x(5) + {1}*x(2) l^2 x(2)").unwrap();
        let mut expected =
            ModuleElement::term(GammaWord::from_parts(vec![1, 0], vec![5]), lp("-A^3"));
        expected.add_term(GammaWord::from_parts(vec![0, 2, 0], vec![2, 2]), lp("1"));
        assert_eq!(e, expected);
        // leading minus and coefficient-only terms
        let e = parse("-x(1) + {A^2}").unwrap();
        let mut expected = ModuleElement::term(GammaWord::x(1), lp("-1"));
        expected.add_term(GammaWord::empty(), lp("A^2"));
        assert_eq!(e, expected);
    }

    #[test]
    fn macros_expand_through_the_polynomial_families() {
        assert_eq!(
            parse("P(1)").unwrap(),
            ModuleElement::term(GammaWord::lambda_power(1), lp("-A^3"))
        );
        assert_eq!(parse("t(0)").unwrap(), ModuleElement::term(GammaWord::empty(), lp("-A^2-A^-2")));
        // x(1) P(1) splices after x(1)
        assert_eq!(
            parse("x(1) P(1)").unwrap(),
            ModuleElement::from_word(GammaWord::x(1)).append_poly(&ppoly(1))
        );
        // t(n,k) goes through P_{n,k}
        assert_eq!(parse("t(0,1)").unwrap(), parse("P(0,1)").unwrap());
        assert_eq!(
            parse("Q(3)").unwrap(),
            parse("l^2 + {-1}").unwrap()
        );
    }

    #[test]
    fn print_parse_fixed_point() {
        for text in [
            "{A}*x(1) l + {-A^2}*x(0)",
            "{1+A^-4}*1 + {-A^-4}*l",
            "{-A^3}*x(2)",
            "0",
            "{2A^-1}*x(-3) l^4 x(0) x(0)",
        ] {
            let e = parse(text).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap(), e, "through {text:?}");
        }
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in ["", "x(", "x)", "{A", "x(1) +", "l^-2", "y(3)", "Q(1,2) extra("] {
            assert!(parse(bad).is_err(), "accepted {bad:?}");
        }
        // position points into the coefficient
        let err = parse("{A^} * x(1)").unwrap_err();
        assert!(err.pos >= 1);
    }
}
