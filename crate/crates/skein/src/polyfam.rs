//! Polynomials in the disk generator and the three families `Q_n`, `P_n`,
//! `P_{n,k}`.
//!
//! A crossingless diagram inside a disk reduces to a polynomial in the
//! one-arrow circle `l` with [`Laurent`] coefficients. The families computed
//! here are the disk values of the standard curve configurations:
//!
//! * `Q_n`: the Chebyshev-like integer family with `Q_0 = 0`, `Q_1 = 1`,
//!   `Q_{n+2} = l Q_{n+1} - Q_n` and `Q_{-n} = -Q_n`;
//! * `P_n`: the value of a circle carrying `n` arrows, with `P_0 = -A^2-A^-2`,
//!   `P_1 = -A^3 l` and `P_n = A l P_{n-1} - A^2 P_{n-2}`;
//! * `P_{n,k}`: the value of an `n`-arrow circle enclosing `k` one-arrow
//!   circles, with `P_{n,0} = P_n` and
//!   `P_{n,k} = A P_{n+1,k-1} + A^-1 P_{n-1,k-1}`.

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use crate::laurent::Laurent;

/// A polynomial in `l` with `Z[A,A^-1]` coefficients, in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LambdaPoly {
    /// degree in `l` -> nonzero Laurent coefficient
    coeffs: BTreeMap<u32, Laurent>,
}

impl LambdaPoly {
    pub fn zero() -> Self {
        LambdaPoly::default()
    }

    pub fn one() -> Self {
        LambdaPoly::constant(Laurent::one())
    }

    pub fn constant(c: Laurent) -> Self {
        LambdaPoly::monomial(c, 0)
    }

    /// `c * l^deg`.
    pub fn monomial(c: Laurent, deg: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(deg, c);
        }
        LambdaPoly { coeffs }
    }

    /// The variable `l`.
    pub fn lambda() -> Self {
        LambdaPoly::monomial(Laurent::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, deg: u32) -> Laurent {
        self.coeffs.get(&deg).cloned().unwrap_or_else(Laurent::zero)
    }

    /// Terms in ascending degree.
    pub fn iter(&self) -> impl Iterator<Item = (u32, &Laurent)> {
        self.coeffs.iter().map(|(d, c)| (*d, c))
    }

    pub fn scale(&self, r: &Laurent) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        for (d, c) in &self.coeffs {
            out.add_term(*d, c * r);
        }
        out
    }

    fn add_term(&mut self, deg: u32, c: Laurent) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(deg).or_insert_with(Laurent::zero);
        *entry += &c;
        if entry.is_zero() {
            self.coeffs.remove(&deg);
        }
    }
}

impl Add for &LambdaPoly {
    type Output = LambdaPoly;
    fn add(self, rhs: &LambdaPoly) -> LambdaPoly {
        let mut out = self.clone();
        for (d, c) in &rhs.coeffs {
            out.add_term(*d, c.clone());
        }
        out
    }
}

impl Add for LambdaPoly {
    type Output = LambdaPoly;
    fn add(self, rhs: LambdaPoly) -> LambdaPoly {
        &self + &rhs
    }
}

impl Sub for &LambdaPoly {
    type Output = LambdaPoly;
    fn sub(self, rhs: &LambdaPoly) -> LambdaPoly {
        self + &-rhs
    }
}

impl Sub for LambdaPoly {
    type Output = LambdaPoly;
    fn sub(self, rhs: LambdaPoly) -> LambdaPoly {
        &self - &rhs
    }
}

impl Neg for &LambdaPoly {
    type Output = LambdaPoly;
    fn neg(self) -> LambdaPoly {
        self.scale(&-Laurent::one())
    }
}

impl Neg for LambdaPoly {
    type Output = LambdaPoly;
    fn neg(self) -> LambdaPoly {
        -&self
    }
}

impl Mul for &LambdaPoly {
    type Output = LambdaPoly;
    fn mul(self, rhs: &LambdaPoly) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        for (d1, c1) in &self.coeffs {
            for (d2, c2) in &rhs.coeffs {
                out.add_term(d1 + d2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LambdaPoly {
    type Output = LambdaPoly;
    fn mul(self, rhs: LambdaPoly) -> LambdaPoly {
        &self * &rhs
    }
}

impl fmt::Display for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (deg, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            if *deg > 0 {
                write!(f, "*l^{deg}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn q_memo() -> &'static Mutex<HashMap<i64, LambdaPoly>> {
    static MEMO: OnceLock<Mutex<HashMap<i64, LambdaPoly>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

fn pk_memo() -> &'static Mutex<HashMap<(i64, u32), LambdaPoly>> {
    static MEMO: OnceLock<Mutex<HashMap<(i64, u32), LambdaPoly>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `Q_n`, memoized for both signs of `n`.
pub fn qpoly(n: i64) -> LambdaPoly {
    if n < 0 {
        return -qpoly(-n);
    }
    if let Some(q) = q_memo().lock().unwrap().get(&n) {
        return q.clone();
    }
    let mut prev = LambdaPoly::zero(); // Q_0
    let mut cur = LambdaPoly::one(); // Q_1
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &(&LambdaPoly::lambda() * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    q_memo().lock().unwrap().insert(n, cur.clone());
    cur
}

/// `P_n`, the disk value of an `n`-arrow circle, for any integer `n`.
///
/// Computed through the closed form `P_n = -A^{n+2} Q_{n+1} + A^{n-2} Q_{n-1}`,
/// which agrees with the degree-two recurrence in both directions.
pub fn ppoly(n: i64) -> LambdaPoly {
    let lead = qpoly(n + 1).scale(&-Laurent::a_pow(n + 2));
    let tail = qpoly(n - 1).scale(&Laurent::a_pow(n - 2));
    &lead + &tail
}

/// `P_{n,k}`, the disk value of an `n`-arrow circle over `k` one-arrow
/// circles; memoized on `(n, k)`.
pub fn ppoly_k(n: i64, k: u32) -> LambdaPoly {
    if k == 0 {
        return ppoly(n);
    }
    if let Some(p) = pk_memo().lock().unwrap().get(&(n, k)) {
        return p.clone();
    }
    let up = ppoly_k(n + 1, k - 1).scale(&Laurent::a_pow(1));
    let down = ppoly_k(n - 1, k - 1).scale(&Laurent::a_pow(-1));
    let out = &up + &down;
    pk_memo().lock().unwrap().insert((n, k), out.clone());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(text: &str) -> Laurent {
        Laurent::parse(text).unwrap()
    }

    fn a_lam(c: &str, deg: u32) -> LambdaPoly {
        LambdaPoly::monomial(lp(c), deg)
    }

    #[test]
    fn q_base_cases_and_negation() {
        assert!(qpoly(0).is_zero());
        assert_eq!(qpoly(1), LambdaPoly::one());
        assert_eq!(qpoly(2), LambdaPoly::lambda());
        // Q_3 = l^2 - 1, so Q_{-3} = 1 - l^2
        assert_eq!(qpoly(-3), &LambdaPoly::one() - &a_lam("1", 2));
    }

    #[test]
    fn q_degree_and_leading_coefficient() {
        for n in 1..=15i64 {
            let q = qpoly(n);
            assert_eq!(q.degree(), Some((n - 1) as u32));
            assert!(q.coeff((n - 1) as u32).is_one());
            assert_eq!(qpoly(-n), -qpoly(n));
        }
    }

    #[test]
    fn p_base_cases() {
        assert_eq!(ppoly(0), LambdaPoly::constant(lp("-A^2-A^-2")));
        assert_eq!(ppoly(1), a_lam("-A^3", 1));
        assert_eq!(ppoly(-1), a_lam("-A^-3", 1));
        // P_{-2} = 1 + A^-4 - A^-4 l^2
        assert_eq!(
            ppoly(-2),
            &LambdaPoly::constant(lp("1+A^-4")) - &a_lam("A^-4", 2)
        );
        // P_2 = -A^4 l^2 + A^4 + 1
        assert_eq!(
            ppoly(2),
            &LambdaPoly::constant(lp("A^4+1")) + &a_lam("-A^4", 2)
        );
    }

    #[test]
    fn p_recurrence_matches_closed_form() {
        // P_n = A l P_{n-1} - A^2 P_{n-2}, run across both signs
        for n in -12..=12i64 {
            let lhs = ppoly(n);
            let rhs = &(&LambdaPoly::lambda() * &ppoly(n - 1)).scale(&Laurent::a_pow(1))
                - &ppoly(n - 2).scale(&Laurent::a_pow(2));
            assert_eq!(lhs, rhs, "recurrence fails at n = {n}");
        }
    }

    #[test]
    fn pk_base_and_first_steps() {
        for n in -5..=5i64 {
            assert_eq!(ppoly_k(n, 0), ppoly(n));
        }
        // P_{0,1} = A P_1 + A^-1 P_{-1} = (-A^4 - A^-4) l
        assert_eq!(ppoly_k(0, 1), a_lam("-A^4-A^-4", 1));
        // P_{-1,1} = A P_0 + A^-1 P_{-2}
        let expected = &ppoly(0).scale(&Laurent::a_pow(1)) + &ppoly(-2).scale(&Laurent::a_pow(-1));
        assert_eq!(ppoly_k(-1, 1), expected);
    }

    #[test]
    fn pk_satisfies_lambda_recurrence() {
        // P_{n,k} = A l P_{n-1,k} - A^2 P_{n-2,k} is not how ppoly_k is
        // computed, so this cross-checks the two recurrences against each
        // other.
        for n in -10..=10i64 {
            for k in 1..=8u32 {
                let lhs = ppoly_k(n, k);
                let rhs = &(&LambdaPoly::lambda() * &ppoly_k(n - 1, k)).scale(&Laurent::a_pow(1))
                    - &ppoly_k(n - 2, k).scale(&Laurent::a_pow(2));
                assert_eq!(lhs, rhs, "fails at n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn lambda_arithmetic_examples() {
        // l * Q_2 - Q_1 = Q_3
        let q3 = &(&LambdaPoly::lambda() * &qpoly(2)) - &qpoly(1);
        assert_eq!(q3, qpoly(3));
        assert_eq!(ppoly(1).scale(&lp("-A^-3")), LambdaPoly::lambda());
        assert_eq!(&LambdaPoly::zero() + &ppoly(0), ppoly(0));
    }

    #[test]
    fn display_style() {
        assert_eq!(ppoly(1).to_string(), "(-A^3)*l^1");
        assert_eq!(ppoly(0).to_string(), "(-A^-2-A^2)");
        assert_eq!(LambdaPoly::zero().to_string(), "0");
    }
}
