//! The two normal-form engines.
//!
//! [`Space::Annulus`] rewrites any word onto the basis `Sigma_c`; the
//! fibered-torus engine [`Space::FiberedTorus`] extends the same rule set with
//! the two handle-slide rules and lands on `Sigma'_nu`, `nu = floor(beta/2)`.
//!
//! Rule dispatch is anchored at the right end of the word: strip the maximal
//! trailing run of `x(a)` (where `a` is `c` or `nu`), then dispatch on the
//! preceding generator and the guards. With that anchoring exactly one rule
//! matches any word outside the basis, so the rewriting function is
//! deterministic. Evaluation is memoized structural recursion with an explicit
//! in-progress set for cycle detection and a caller-supplied fuel bound; the
//! rule system has no written termination measure, so fuel turns a hypothetical
//! loop into a diagnosable error instead of a hang.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::laurent::Laurent;
use crate::polyfam::ppoly_k;
use crate::word::{splice, GammaWord, ModuleElement};

/// Which module the engine reduces into.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Space {
    /// Reduce onto `Sigma_c` inside the thickened annulus.
    Annulus { c: i64 },
    /// Reduce onto `Sigma'_nu` inside the `(beta,2)`-fibered torus.
    FiberedTorus { beta: i64, nu: i64 },
}

impl Space {
    pub fn annulus(c: i64) -> Self {
        Space::Annulus { c }
    }

    pub fn fibered(beta: i64) -> Self {
        Space::FiberedTorus { beta, nu: beta.div_euclid(2) }
    }

    /// The distinguished index: `c` for the annulus, `nu` for the torus.
    pub fn anchor(&self) -> i64 {
        match self {
            Space::Annulus { c } => *c,
            Space::FiberedTorus { nu, .. } => *nu,
        }
    }

    /// Is `w` already a basis word of this space?
    pub fn in_basis(&self, w: &GammaWord) -> bool {
        match self {
            Space::Annulus { c } => w.in_sigma_c(*c),
            Space::FiberedTorus { nu, .. } => w.in_sigma_prime(*nu),
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Annulus { c } => write!(f, "annulus c={c}"),
            Space::FiberedTorus { beta, nu } => write!(f, "fibered beta={beta} nu={nu}"),
        }
    }
}

/// Labels of the rewriting cases. `B` is the basis fixed point; `J` and `K`
/// only fire in the torus engine.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RuleLabel {
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
    J,
    K,
}

impl fmt::Display for RuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ch = match self {
            RuleLabel::B => 'b',
            RuleLabel::C => 'c',
            RuleLabel::D => 'd',
            RuleLabel::E => 'e',
            RuleLabel::F => 'f',
            RuleLabel::G => 'g',
            RuleLabel::H => 'h',
            RuleLabel::I => 'i',
            RuleLabel::J => 'j',
            RuleLabel::K => 'k',
        };
        write!(f, "{ch}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReduceError {
    /// The fuel bound ran out. The rule system is expected to terminate on
    /// every input, so this signals a transcription bug (or a bound that is
    /// genuinely too small for an enormous word).
    #[error("fuel exhausted after {0} rule applications")]
    FuelExhausted(u64),
    /// A word's reduction recursively required itself.
    #[error("cyclic reduction at word {0}")]
    CycleDetected(GammaWord),
}

/// One recorded rewriting step: `input` was expanded by `rule` into `output`
/// (a one-step expansion, not the fully reduced value).
#[derive(Clone, Debug)]
pub struct TraceStep {
    pub rule: RuleLabel,
    pub input: GammaWord,
    pub output: ModuleElement,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rule={} in={} out={}", self.rule, self.input, self.output)
    }
}

/// Audit log of a reduction: replaying the steps as substitutions reproduces
/// the normal form.
#[derive(Clone, Debug, Default)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
    pub fuel_used: u64,
}

impl ReductionTrace {
    /// Re-apply the recorded one-step expansions as substitutions until no
    /// recorded word remains. Substitution order does not matter, so repeated
    /// passes converge to the reduction's output.
    pub fn replay(&self, start: &ModuleElement) -> ModuleElement {
        let table: HashMap<&GammaWord, &ModuleElement> =
            self.steps.iter().map(|s| (&s.input, &s.output)).collect();
        let mut cur = start.clone();
        loop {
            let mut next = ModuleElement::zero();
            let mut changed = false;
            for (w, c) in cur.iter() {
                match table.get(w) {
                    Some(rhs) => {
                        next.add_scaled(rhs, c);
                        changed = true;
                    }
                    None => next.add_term(w.clone(), c.clone()),
                }
            }
            if !changed {
                return next;
            }
            cur = next;
        }
    }
}

pub const DEFAULT_FUEL: u64 = 1_000_000;

/// Compute the one-step expansion of `w`, or `None` when `w` is a basis word
/// of `space` (the fixed-point case).
pub fn step_rule(space: Space, w: &GammaWord) -> Option<(RuleLabel, ModuleElement)> {
    if space.in_basis(w) {
        return None;
    }
    let a = space.anchor();
    let a_pow = Laurent::a_pow;

    // Torus-only rules fire exactly on the Sigma_nu shapes outside Sigma'_nu.
    if let Space::FiberedTorus { nu, .. } = space {
        if w.in_sigma_c(nu) {
            let xs = w.xs();
            if xs[0] == nu + 1 {
                // (j)  x(nu+1) l^n x(nu)^k  ->  -A^3 x(nu) l^n x(nu)^k
                let mut new_xs = xs.to_vec();
                new_xs[0] = nu;
                let out = ModuleElement::term(
                    GammaWord::from_parts(w.lambda().to_vec(), new_xs),
                    Laurent::monomial(-1, 3),
                );
                return Some((RuleLabel::J, out));
            }
            // (k)  x(nu) l^n x(nu)^k  ->  A^-1 P_{-1,n} x(nu)^{k-1}
            //                             - A^-2 P_{0,n} x(nu)^{k-1},  k >= 1
            let n = w.lambda()[1];
            let k = xs.len() - 1;
            let tail = GammaWord::from_parts(vec![0; k], vec![nu; k - 1]);
            let mut out = splice(&tail, 0, &ppoly_k(-1, n)).scaled(&a_pow(-1));
            out.add_scaled(&splice(&tail, 0, &ppoly_k(0, n)), &-a_pow(-2));
            return Some((RuleLabel::K, out));
        }
    }

    let xs = w.xs();
    let lam = w.lambda();
    let k_total = xs.len();
    debug_assert!(k_total > 0, "pure l-words are always basis words");

    // maximal trailing run of x(a): r factors with zero l-runs after each
    let mut r = 0usize;
    while r < k_total && xs[k_total - 1 - r] == a && lam[k_total - r] == 0 {
        r += 1;
    }
    let p = k_total - r;

    if p == 0 {
        // w = l^{n0} x(a)^r with n0 >= 1, read as l^{n0} x(a) x(a)^{r-1}:
        // (g)  ->  A l^{n0-1} x(a+1) x(a)^{r-1} + A^-1 l^{n0-1} x(a-1) x(a)^{r-1}
        let n0 = lam[0];
        debug_assert!(n0 >= 1 && r >= 1);
        let build = |m: i64| {
            let mut lambda = vec![0u32; r + 1];
            lambda[0] = n0 - 1;
            let mut new_xs = vec![a; r];
            new_xs[0] = m;
            GammaWord::from_parts(lambda, new_xs)
        };
        let mut out = ModuleElement::term(build(a + 1), a_pow(1));
        out.add_term(build(a - 1), a_pow(-1));
        return Some((RuleLabel::G, out));
    }

    if p == 1 {
        let n0 = lam[0];
        let m = xs[0];
        let nmid = lam[1];
        let build = |m_new: i64, nmid_new: u32, n0_new: u32| {
            let mut lambda = vec![0u32; k_total + 1];
            lambda[0] = n0_new;
            lambda[1] = nmid_new;
            let mut new_xs = xs.to_vec();
            new_xs[0] = m_new;
            GammaWord::from_parts(lambda, new_xs)
        };
        if n0 >= 1 {
            // (g)  l^n x(m) l^n' x(a)^r
            //      -> A l^{n-1} x(m+1) l^n' x(a)^r + A^-1 l^{n-1} x(m-1) l^n' x(a)^r
            let mut out = ModuleElement::term(build(m + 1, nmid, n0 - 1), a_pow(1));
            out.add_term(build(m - 1, nmid, n0 - 1), a_pow(-1));
            return Some((RuleLabel::G, out));
        }
        if m > a + 1 {
            // (h)  x(m) l^n x(a)^r -> A x(m-1) l^{n+1} x(a)^r - A^2 x(m-2) l^n x(a)^r
            let mut out = ModuleElement::term(build(m - 1, nmid + 1, 0), a_pow(1));
            out.add_term(build(m - 2, nmid, 0), -a_pow(2));
            return Some((RuleLabel::H, out));
        }
        // (i)  x(m) l^n x(a)^r -> A^-1 x(m+1) l^{n+1} x(a)^r - A^-2 x(m+2) l^n x(a)^r
        debug_assert!(m < a);
        let mut out = ModuleElement::term(build(m + 1, nmid + 1, 0), a_pow(-1));
        out.add_term(build(m + 2, nmid, 0), -a_pow(-2));
        return Some((RuleLabel::I, out));
    }

    // p >= 2: the word ends w' x(m) l^n x(a)^r with w' containing an x-factor.
    let m = xs[p - 1];
    let n = lam[p];

    if n >= 1 {
        // (c)  -> A w' x(m-1) l^{n-1} x(a)^r + A^-1 w' x(m+1) l^{n-1} x(a)^r
        let build = |m_new: i64| {
            let mut lambda = lam.to_vec();
            lambda[p] = n - 1;
            let mut new_xs = xs.to_vec();
            new_xs[p - 1] = m_new;
            GammaWord::from_parts(lambda, new_xs)
        };
        let mut out = ModuleElement::term(build(m - 1), a_pow(1));
        out.add_term(build(m + 1), a_pow(-1));
        return Some((RuleLabel::C, out));
    }

    if m == a + 1 {
        // (f)  w'' x(mm) l^nn x(a+1) x(a)^r
        //      -> -A^-1 w'' l P_{a-mm,nn} x(a)^r
        //         + 2 w'' P_{a-1-mm,nn} x(a)^r
        //         + A^-2 w'' x(mm+1) l^nn x(a)^{r+1}
        let mm = xs[p - 2];
        let nn = lam[p - 1];
        // base word for the spliced terms: drop x(mm) and x(a+1), keep the run
        let collapsed = |extra: u32| {
            let mut lambda: Vec<u32> = lam[..p - 1].to_vec();
            let seam = lambda.pop().unwrap();
            lambda.push(seam + extra);
            lambda.extend(std::iter::repeat(0).take(r));
            let mut new_xs: Vec<i64> = xs[..p - 2].to_vec();
            new_xs.extend(std::iter::repeat(a).take(r));
            GammaWord::from_parts(lambda, new_xs)
        };
        let gap = p - 2;
        let mut out = splice(&collapsed(1), gap, &ppoly_k(a - mm, nn)).scaled(&-a_pow(-1));
        out.add_scaled(&splice(&collapsed(0), gap, &ppoly_k(a - 1 - mm, nn)), &Laurent::int(2));
        let mut third_xs = xs.to_vec();
        third_xs[p - 2] = mm + 1;
        third_xs[p - 1] = a;
        out.add_term(GammaWord::from_parts(lam.to_vec(), third_xs), a_pow(-2));
        return Some((RuleLabel::F, out));
    }

    let build = |m_new: i64, bump: u32| {
        let mut lambda = lam.to_vec();
        lambda[p - 1] += bump;
        let mut new_xs = xs.to_vec();
        new_xs[p - 1] = m_new;
        GammaWord::from_parts(lambda, new_xs)
    };
    if m > a + 1 {
        // (d)  -> A^-1 w' l x(m-1) x(a)^r - A^-2 w' x(m-2) x(a)^r
        let mut out = ModuleElement::term(build(m - 1, 1), a_pow(-1));
        out.add_term(build(m - 2, 0), -a_pow(-2));
        Some((RuleLabel::D, out))
    } else {
        // (e)  -> A w' l x(m+1) x(a)^r - A^2 w' x(m+2) x(a)^r
        debug_assert!(m < a);
        let mut out = ModuleElement::term(build(m + 1, 1), a_pow(1));
        out.add_term(build(m + 2, 0), -a_pow(2));
        Some((RuleLabel::E, out))
    }
}

/// A reduction engine with a memo table shared across calls.
///
/// A `Reducer` is a pure function of its space: concurrent or repeated calls
/// return equal values, and sharing one across many reductions only saves
/// re-deriving common subwords.
pub struct Reducer {
    space: Space,
    fuel_limit: u64,
    fuel_used: u64,
    memo: HashMap<GammaWord, ModuleElement>,
    tracing: bool,
    steps: Vec<TraceStep>,
}

impl Reducer {
    pub fn new(space: Space) -> Self {
        Reducer::with_fuel(space, DEFAULT_FUEL)
    }

    pub fn with_fuel(space: Space, fuel_limit: u64) -> Self {
        Reducer {
            space,
            fuel_limit,
            fuel_used: 0,
            memo: HashMap::new(),
            tracing: false,
            steps: Vec::new(),
        }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    /// Rule applications consumed so far (across all calls).
    pub fn fuel_used(&self) -> u64 {
        self.fuel_used
    }

    pub fn set_tracing(&mut self, on: bool) {
        self.tracing = on;
    }

    pub fn take_trace(&mut self) -> ReductionTrace {
        ReductionTrace { steps: std::mem::take(&mut self.steps), fuel_used: self.fuel_used }
    }

    /// Linear extension of the word reduction.
    pub fn reduce(&mut self, e: &ModuleElement) -> Result<ModuleElement, ReduceError> {
        let mut out = ModuleElement::zero();
        for (w, c) in e.iter() {
            let nf = self.reduce_word(w)?;
            out.add_scaled(&nf, c);
        }
        Ok(out)
    }

    /// Reduce a single word to its normal form.
    pub fn reduce_word(&mut self, w: &GammaWord) -> Result<ModuleElement, ReduceError> {
        if let Some(nf) = self.memo.get(w) {
            return Ok(nf.clone());
        }

        struct Frame {
            word: GammaWord,
            rhs: Vec<(Laurent, GammaWord)>,
            next: usize,
            acc: ModuleElement,
        }

        let mut in_progress: HashSet<GammaWord> = HashSet::new();
        let mut stack: Vec<Frame> = Vec::new();

        // Expand a word in place: basis words go straight to the memo table,
        // reducible words open a frame.
        macro_rules! open {
            ($word:expr) => {{
                let word: GammaWord = $word;
                match step_rule(self.space, &word) {
                    None => {
                        self.memo.insert(word.clone(), ModuleElement::from_word(word));
                    }
                    Some((rule, rhs)) => {
                        if self.fuel_used >= self.fuel_limit {
                            return Err(ReduceError::FuelExhausted(self.fuel_used));
                        }
                        self.fuel_used += 1;
                        if self.tracing {
                            self.steps.push(TraceStep {
                                rule,
                                input: word.clone(),
                                output: rhs.clone(),
                            });
                        }
                        let rhs: Vec<(Laurent, GammaWord)> =
                            rhs.iter().map(|(t, c)| (c.clone(), t.clone())).collect();
                        in_progress.insert(word.clone());
                        stack.push(Frame { word, rhs, next: 0, acc: ModuleElement::zero() });
                    }
                }
            }};
        }

        open!(w.clone());
        while let Some(top) = stack.last_mut() {
            if top.next < top.rhs.len() {
                let (coeff, child) = &top.rhs[top.next];
                if let Some(nf) = self.memo.get(child) {
                    let coeff = coeff.clone();
                    let nf = nf.clone();
                    let top = stack.last_mut().unwrap();
                    top.acc.add_scaled(&nf, &coeff);
                    top.next += 1;
                } else if in_progress.contains(child) {
                    return Err(ReduceError::CycleDetected(child.clone()));
                } else {
                    let child = child.clone();
                    open!(child);
                }
            } else {
                let done = stack.pop().unwrap();
                in_progress.remove(&done.word);
                self.memo.insert(done.word, done.acc);
            }
        }
        Ok(self.memo.get(w).cloned().unwrap())
    }
}

/// Reduce onto `Sigma_c`.
pub fn reduce_c(e: &ModuleElement, c: i64, fuel: u64) -> Result<ModuleElement, ReduceError> {
    Reducer::with_fuel(Space::annulus(c), fuel).reduce(e)
}

/// Reduce onto `Sigma'_nu` with `nu = floor(beta/2)`.
pub fn reduce_nu(e: &ModuleElement, beta: i64, fuel: u64) -> Result<ModuleElement, ReduceError> {
    Reducer::with_fuel(Space::fibered(beta), fuel).reduce(e)
}

/// The alternate strategy used for confluence testing: repeatedly pick the
/// first reducible word in canonical term order and apply one rule to it,
/// with no memoization. The normal form must agree with [`Reducer`].
pub fn reduce_stepwise(
    e: &ModuleElement,
    space: Space,
    fuel: u64,
) -> Result<ModuleElement, ReduceError> {
    let mut cur = e.clone();
    let mut used = 0u64;
    loop {
        let target = cur
            .iter()
            .find_map(|(w, c)| step_rule(space, w).map(|(_, rhs)| (w.clone(), c.clone(), rhs)));
        let Some((w, c, rhs)) = target else {
            return Ok(cur);
        };
        if used >= fuel {
            return Err(ReduceError::FuelExhausted(used));
        }
        used += 1;
        cur.remove(&w);
        cur.add_scaled(&rhs, &c);
    }
}

/// Outcome of comparing two sides of an identity under one engine.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub equal: bool,
    pub lhs_nf: ModuleElement,
    pub rhs_nf: ModuleElement,
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.equal {
            write!(f, "equal: {}", self.lhs_nf)
        } else {
            write!(f, "NOT equal: lhs={} rhs={}", self.lhs_nf, self.rhs_nf)
        }
    }
}

/// Do `lhs` and `rhs` have the same normal form in `space`?
pub fn check_identity(
    lhs: &ModuleElement,
    rhs: &ModuleElement,
    space: Space,
    fuel: u64,
) -> Result<IdentityReport, ReduceError> {
    let mut engine = Reducer::with_fuel(space, fuel);
    let lhs_nf = engine.reduce(lhs)?;
    let rhs_nf = engine.reduce(rhs)?;
    Ok(IdentityReport { equal: lhs_nf == rhs_nf, lhs_nf, rhs_nf })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyfam::ppoly;

    fn lp(text: &str) -> Laurent {
        Laurent::parse(text).unwrap()
    }

    fn reduce_word_c(w: GammaWord, c: i64) -> ModuleElement {
        Reducer::new(Space::annulus(c)).reduce_word(&w).unwrap()
    }

    #[test]
    fn basis_words_are_fixed() {
        for c in [-2, 0, 3] {
            let w = GammaWord::lambda_power(5);
            assert_eq!(reduce_word_c(w.clone(), c), ModuleElement::from_word(w));
            // x(c) l^2 x(c) x(c) and x(c+1) l x(c)
            let w = GammaWord::from_parts(vec![0, 2, 0, 0], vec![c, c, c]);
            assert_eq!(reduce_word_c(w.clone(), c), ModuleElement::from_word(w));
            let w = GammaWord::from_parts(vec![0, 1, 0], vec![c + 1, c]);
            assert_eq!(reduce_word_c(w.clone(), c), ModuleElement::from_word(w));
        }
    }

    #[test]
    fn single_h_step() {
        // x(c+2) -> A x(c+1) l - A^2 x(c)
        for c in [-2, 0, 3] {
            let got = reduce_word_c(GammaWord::x(c + 2), c);
            let mut expected =
                ModuleElement::term(GammaWord::from_parts(vec![0, 1], vec![c + 1]), lp("A"));
            expected.add_term(GammaWord::x(c), lp("-A^2"));
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn g_then_i_composition() {
        // l x(c) -> (A - A^-3) x(c+1) + A^-2 x(c) l
        for c in [-2, 0, 3] {
            let w = GammaWord::from_parts(vec![1, 0], vec![c]);
            let got = reduce_word_c(w, c);
            let mut expected = ModuleElement::term(GammaWord::x(c + 1), lp("A-A^-3"));
            expected.add_term(GammaWord::from_parts(vec![0, 1], vec![c]), lp("A^-2"));
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn torus_rule_j() {
        // x(nu+1) -> -A^3 x(nu)
        for beta in [3, 5, 7] {
            let nu = beta / 2;
            let got = Reducer::new(Space::fibered(beta))
                .reduce_word(&GammaWord::x(nu + 1))
                .unwrap();
            assert_eq!(got, ModuleElement::term(GammaWord::x(nu), lp("-A^3")));
        }
    }

    #[test]
    fn torus_rule_k() {
        // x(nu) x(nu) -> (1 + A^-4) 1 - A^-4 l
        for beta in [3, 5, 7] {
            let nu = beta / 2;
            let w = GammaWord::from_parts(vec![0, 0, 0], vec![nu, nu]);
            let got = Reducer::new(Space::fibered(beta)).reduce_word(&w).unwrap();
            let mut expected = ModuleElement::term(GammaWord::empty(), lp("1+A^-4"));
            expected.add_term(GammaWord::lambda_power(1), lp("-A^-4"));
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn torus_basis_fixed() {
        let mut r = Reducer::new(Space::fibered(5));
        let w = GammaWord::lambda_power(3);
        assert_eq!(r.reduce_word(&w).unwrap(), ModuleElement::from_word(w));
        let w = GammaWord::from_parts(vec![0, 4], vec![2]);
        assert_eq!(r.reduce_word(&w).unwrap(), ModuleElement::from_word(w));
    }

    #[test]
    fn reduction_is_idempotent() {
        let mut r = Reducer::new(Space::annulus(0));
        let w = GammaWord::from_parts(vec![2, 1, 0, 3], vec![4, -3, 2]);
        let once = r.reduce_word(&w).unwrap();
        let twice = r.reduce(&once).unwrap();
        assert_eq!(once, twice);
        assert!(once.words().all(|t| t.in_sigma_c(0)));
    }

    #[test]
    fn check_identity_on_omega5_instance() {
        // A x(2) + A^-1 x(1) P_1  =  A x(0) P_0 + A^-1 x(0), any c
        for c in [-2, 0, 3] {
            let lhs = {
                let mut e = ModuleElement::term(GammaWord::x(2), lp("A"));
                e.add_scaled(
                    &ModuleElement::from_word(GammaWord::x(1)).append_poly(&ppoly(1)),
                    &lp("A^-1"),
                );
                e
            };
            let rhs = {
                let mut e = ModuleElement::from_word(GammaWord::x(0))
                    .append_poly(&ppoly(0))
                    .scaled(&lp("A"));
                e.add_term(GammaWord::x(0), lp("A^-1"));
                e
            };
            let report =
                check_identity(&lhs, &rhs, Space::annulus(c), DEFAULT_FUEL).unwrap();
            assert!(report.equal, "c = {c}: {report}");
        }
    }

    #[test]
    fn identical_inputs_are_equal() {
        let e = ModuleElement::from_word(GammaWord::from_parts(vec![1, 2], vec![5]));
        let report = check_identity(&e, &e, Space::annulus(0), DEFAULT_FUEL).unwrap();
        assert!(report.equal);
    }

    #[test]
    fn fuel_exhaustion_is_reported() {
        let w = GammaWord::from_parts(vec![0, 0, 0, 0], vec![9, -9, 9]);
        let err = Reducer::with_fuel(Space::annulus(0), 3).reduce_word(&w).unwrap_err();
        assert!(matches!(err, ReduceError::FuelExhausted(3)));
    }

    #[test]
    fn stepwise_strategy_agrees() {
        let space = Space::annulus(1);
        let mut e = ModuleElement::from_word(GammaWord::from_parts(vec![1, 0, 2], vec![4, -2]));
        e.add_term(GammaWord::from_parts(vec![0, 1, 0], vec![3, 3]), lp("-A^5"));
        let memoized = Reducer::new(space).reduce(&e).unwrap();
        let stepwise = reduce_stepwise(&e, space, DEFAULT_FUEL).unwrap();
        assert_eq!(memoized, stepwise);
    }

    #[test]
    fn trace_replays_to_the_output() {
        let space = Space::fibered(7);
        let mut r = Reducer::new(space);
        r.set_tracing(true);
        let w = GammaWord::from_parts(vec![1, 2, 0], vec![6, 3]);
        let nf = r.reduce_word(&w).unwrap();
        let trace = r.take_trace();
        assert!(!trace.steps.is_empty());
        assert_eq!(trace.replay(&ModuleElement::from_word(w)), nf);
    }
}
