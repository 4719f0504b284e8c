//! Exact arithmetic in the coefficient ring `Z[A, A^-1]`.
//!
//! Every skein-theoretic quantity in this crate is a Laurent polynomial in the
//! bracket variable `A` with integer coefficients. [`Laurent`] stores the term
//! map exponent -> coefficient with no zero coefficients, so structural
//! equality is ring equality and printing is canonical (ascending exponent).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;

/// An element of `Z[A, A^-1]` in canonical form.
///
/// Coefficients are arbitrary precision: chains of rewriting rules multiply
/// coefficients together, and identity checks must stay exact at any depth.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    /// exponent of `A` -> nonzero coefficient
    terms: BTreeMap<i64, BigInt>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Laurent::monomial(1, 0)
    }

    /// `coeff * A^exp`; a zero coefficient yields the zero polynomial.
    pub fn monomial(coeff: impl Into<BigInt>, exp: i64) -> Self {
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if coeff != BigInt::ZERO {
            terms.insert(exp, coeff);
        }
        Laurent { terms }
    }

    /// The constant polynomial `n`.
    pub fn int(n: impl Into<BigInt>) -> Self {
        Laurent::monomial(n, 0)
    }

    /// `A^exp`.
    pub fn a_pow(exp: i64) -> Self {
        Laurent::monomial(1, exp)
    }

    /// `-A^2 - A^-2`, the value of a disjoint trivial circle.
    pub fn circle() -> Self {
        Laurent::monomial(-1, 2) + Laurent::monomial(-1, -2)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| *c == BigInt::from(1))
    }

    /// Terms in ascending exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    fn add_term(&mut self, exp: i64, coeff: &BigInt) {
        if *coeff == BigInt::ZERO {
            return;
        }
        let entry = self.terms.entry(exp).or_default();
        *entry += coeff;
        if *entry == BigInt::ZERO {
            self.terms.remove(&exp);
        }
    }

    /// Parse the textual form produced by `Display`.
    ///
    /// Grammar: `poly := term (('+'|'-') term)*` with
    /// `term := int? ('A' ('^' int)?)?`, whitespace ignored, `0` the zero
    /// polynomial.
    pub fn parse(text: &str) -> Result<Laurent, ParseError> {
        let bytes = text.as_bytes();
        let mut pos = 0usize;
        let mut out = Laurent::zero();

        fn skip_ws(bytes: &[u8], pos: &mut usize) {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        }
        fn digits(bytes: &[u8], pos: &mut usize) -> Option<BigInt> {
            let start = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            if *pos == start {
                return None;
            }
            // ASCII digits always parse
            Some(
                std::str::from_utf8(&bytes[start..*pos])
                    .unwrap()
                    .parse()
                    .unwrap(),
            )
        }
        fn signed_int(bytes: &[u8], pos: &mut usize) -> Result<BigInt, ParseError> {
            skip_ws(bytes, pos);
            let mut neg = false;
            if *pos < bytes.len() && (bytes[*pos] == b'+' || bytes[*pos] == b'-') {
                neg = bytes[*pos] == b'-';
                *pos += 1;
                skip_ws(bytes, pos);
            }
            let d = digits(bytes, pos)
                .ok_or_else(|| ParseError::new(*pos, "expected an integer"))?;
            Ok(if neg { -d } else { d })
        }

        skip_ws(bytes, &mut pos);
        if pos == bytes.len() {
            return Err(ParseError::new(pos, "empty polynomial"));
        }
        let mut first = true;
        loop {
            skip_ws(bytes, &mut pos);
            if pos == bytes.len() {
                if first {
                    return Err(ParseError::new(pos, "expected a term"));
                }
                break;
            }
            let mut sign = BigInt::from(1);
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -sign;
                }
                pos += 1;
            } else if !first {
                return Err(ParseError::new(pos, "expected '+' or '-'"));
            }
            skip_ws(bytes, &mut pos);
            let coeff = digits(bytes, &mut pos);
            skip_ws(bytes, &mut pos);
            let exp = if pos < bytes.len() && bytes[pos] == b'A' {
                pos += 1;
                skip_ws(bytes, &mut pos);
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    Some(signed_int(bytes, &mut pos)?)
                } else {
                    Some(BigInt::from(1))
                }
            } else {
                None
            };
            let coeff = match (coeff, &exp) {
                (Some(c), _) => c,
                (None, Some(_)) => BigInt::from(1),
                (None, None) => return Err(ParseError::new(pos, "expected a term")),
            };
            let exp: i64 = match exp {
                Some(e) => i64::try_from(e)
                    .map_err(|_| ParseError::new(pos, "exponent out of range"))?,
                None => 0,
            };
            out.add_term(exp, &(sign * coeff));
            first = false;
        }
        Ok(out)
    }
}

/// A syntax error with the byte offset where it was detected.
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

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let one = BigInt::from(1);
        for (i, (exp, coeff)) in self.terms.iter().enumerate() {
            let neg = coeff < &BigInt::ZERO;
            if neg {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            let abs = if neg { -coeff.clone() } else { coeff.clone() };
            if *exp == 0 {
                write!(f, "{abs}")?;
            } else {
                if abs != one {
                    write!(f, "{abs}")?;
                }
                write!(f, "A")?;
                if *exp != 1 {
                    write!(f, "^{exp}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, rhs: &Laurent) {
        for (exp, coeff) in &rhs.terms {
            self.add_term(*exp, coeff);
        }
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Laurent {
    type Output = Laurent;
    fn add(mut self, rhs: Laurent) -> Laurent {
        self += &rhs;
        self
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (exp, coeff) in &rhs.terms {
            out.add_term(*exp, &-coeff.clone());
        }
        out
    }
}

impl Sub for Laurent {
    type Output = Laurent;
    fn sub(self, rhs: Laurent) -> Laurent {
        &self - &rhs
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        -&self
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

impl Mul for Laurent {
    type Output = Laurent;
    fn mul(self, rhs: Laurent) -> Laurent {
        &self * &rhs
    }
}
