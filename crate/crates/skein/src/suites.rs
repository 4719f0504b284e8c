//! The verification suites: identity grids, randomized normal-form checks,
//! diagram oracles, move invariance, and strategy confluence.
//!
//! Everything here is exact; a check either holds on its whole grid or
//! reports the failing instances. The `verify` and `fuzz` commands and the
//! acceptance tests all drive these functions, so the grids live in one
//! place.

use std::fmt;

use rand::prelude::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{
    apply_move, embed_word, psi_with, resolve_recursive, resolve_states, skein_triple,
    state_windings, Event, Move, PipelineOptions, SliceDiagram,
};
use crate::laurent::Laurent;
use crate::polyfam::{ppoly, ppoly_k, qpoly, LambdaPoly};
use crate::reduce::{reduce_stepwise, Reducer, Space};
use crate::word::{GammaWord, ModuleElement};

/// Outcome of one named check.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub instances: u64,
    pub failures: u64,
}

impl Check {
    pub fn pass(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} ({} instances{})",
            if self.pass() { "PASS" } else { "FAIL" },
            self.name,
            self.instances,
            if self.pass() {
                String::new()
            } else {
                format!(", {} failures", self.failures)
            }
        )
    }
}

/// A named bundle of checks.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(Check::pass)
    }

    pub fn instances(&self) -> u64 {
        self.checks.iter().map(|c| c.instances).sum()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            writeln!(f, "{check}")?;
        }
        Ok(())
    }
}

struct Tally {
    name: String,
    instances: u64,
    failures: u64,
}

impl Tally {
    fn new(name: impl Into<String>) -> Self {
        Tally { name: name.into(), instances: 0, failures: 0 }
    }

    fn record(&mut self, ok: bool) {
        self.instances += 1;
        if !ok {
            self.failures += 1;
        }
    }

    fn done(self) -> Check {
        Check { name: self.name, instances: self.instances, failures: self.failures }
    }
}

// ---------------------------------------------------------------------------
// polynomial family suite

/// Recurrences and closed forms of the `Q`, `P`, `P_{n,k}` families.
pub fn polys_suite() -> SuiteReport {
    let a = Laurent::a_pow;
    let lambda = LambdaPoly::lambda;

    let mut rec = Tally::new("P-family degree-two recurrence, n in [-12,12]");
    for n in -12..=12i64 {
        let lhs = ppoly(n);
        let rhs = &(&lambda() * &ppoly(n - 1)).scale(&a(1)) - &ppoly(n - 2).scale(&a(2));
        rec.record(lhs == rhs);
    }

    let mut step = Tally::new("P_{n,k} ladder recurrence, n in [-10,10], k in [1,8]");
    for n in -10..=10i64 {
        for k in 1..=8u32 {
            let lhs = ppoly_k(n, k);
            let rhs = &ppoly_k(n + 1, k - 1).scale(&a(1)) + &ppoly_k(n - 1, k - 1).scale(&a(-1));
            step.record(lhs == rhs);
        }
    }

    let mut cross = Tally::new("P_{n,k} lambda recurrence cross-check, same grid");
    for n in -10..=10i64 {
        for k in 1..=8u32 {
            let lhs = ppoly_k(n, k);
            let rhs =
                &(&lambda() * &ppoly_k(n - 1, k)).scale(&a(1)) - &ppoly_k(n - 2, k).scale(&a(2));
            cross.record(lhs == rhs);
        }
    }

    let mut closed = Tally::new("closed form matches the recurrence, n in [-12,12]");
    for n in -12..=12i64 {
        // ppoly computes the closed form, so re-derive by pure recursion
        let by_recursion = if n >= 2 {
            let mut prev = ppoly(0);
            let mut cur = ppoly(1);
            for _ in 1..n {
                let next = &(&lambda() * &cur).scale(&a(1)) - &prev.scale(&a(2));
                prev = cur;
                cur = next;
            }
            cur
        } else if n <= -1 {
            let mut above = ppoly(1);
            let mut cur = ppoly(0);
            for _ in 0..-n {
                // the recurrence run backward: A^2 P_{n-2} = A l P_{n-1} - P_n
                let next = (&(&lambda() * &cur).scale(&a(1)) - &above).scale(&a(-2));
                above = cur;
                cur = next;
            }
            cur
        } else {
            ppoly(n)
        };
        closed.record(ppoly(n) == by_recursion);
    }

    let mut qfam = Tally::new("Q-family degree, leading coefficient, antisymmetry, |n| <= 15");
    for n in 1..=15i64 {
        let q = qpoly(n);
        let ok = q.degree() == Some((n - 1) as u32)
            && q.coeff((n - 1) as u32).is_one()
            && qpoly(-n) == -q.clone();
        qfam.record(ok);
    }
    qfam.record(qpoly(0).is_zero());

    SuiteReport {
        name: "polys".into(),
        checks: vec![rec.done(), step.done(), cross.done(), closed.done(), qfam.done()],
    }
}

// ---------------------------------------------------------------------------
// word-level identity grids

/// One factor of an assembled word.
#[derive(Clone)]
enum Part {
    X(i64),
    Lam(u32),
    Poly(LambdaPoly),
}

/// Build `w1 . parts . w2` as a module element, splicing polynomial parts at
/// the position where they occur.
fn sandwich(w1: &GammaWord, parts: &[Part], w2: &GammaWord) -> ModuleElement {
    let mut elem = ModuleElement::from_word(w1.clone());
    for part in parts {
        elem = match part {
            Part::X(m) => elem.append_x(*m),
            Part::Lam(n) => elem.append_lambda(*n),
            Part::Poly(p) => elem.append_poly(p),
        };
    }
    elem.append_word(w2)
}

/// The fixed ambient pool around an anchor index `a`.
fn ambient_pool(a: i64) -> Vec<GammaWord> {
    vec![
        GammaWord::empty(),
        GammaWord::lambda_power(2),
        GammaWord::x(a),
        GammaWord::from_parts(vec![0, 1], vec![a + 1]),
        GammaWord::from_parts(vec![0, 0, 0], vec![a, a]),
        GammaWord::x(a + 2),
        GammaWord::from_parts(vec![1, 1], vec![a - 1]),
        GammaWord::from_parts(vec![0, 0, 0], vec![a + 1, a - 1]),
    ]
}

/// Deterministic subset of pool pairs, used on the larger grids.
fn pool_pairs(pool: &[GammaWord]) -> Vec<(GammaWord, GammaWord)> {
    (0..pool.len())
        .map(|i| (pool[i].clone(), pool[(3 * i + 1) % pool.len()].clone()))
        .collect()
}

fn identity_holds(engine: &mut Reducer, lhs: &ModuleElement, rhs: &ModuleElement) -> bool {
    match (engine.reduce(lhs), engine.reduce(rhs)) {
        (Ok(l), Ok(r)) => l == r,
        _ => false,
    }
}

/// The annulus-engine identity grids for one value of `c`.
pub fn annulus_suite(c: i64) -> SuiteReport {
    let a = Laurent::a_pow;
    let pool = ambient_pool(c);
    let pairs = pool_pairs(&pool);
    let mut engine = Reducer::new(Space::annulus(c));
    let mut checks = Vec::new();

    // local two-step relations: x(m) = A l x(m+1) - A^2 x(m+2)
    //                       and x(m) = A x(m-1) l - A^2 x(m-2)
    let mut shift_up = Tally::new(format!("index shift upward, c={c}"));
    let mut shift_down = Tally::new(format!("index shift downward, c={c}"));
    for m in c - 4..=c + 4 {
        for w1 in &pool {
            for w2 in &pool {
                let base = sandwich(w1, &[Part::X(m)], w2);
                let up = {
                    let mut e = sandwich(w1, &[Part::Lam(1), Part::X(m + 1)], w2).scaled(&a(1));
                    e.add_scaled(&sandwich(w1, &[Part::X(m + 2)], w2), &-a(2));
                    e
                };
                shift_up.record(identity_holds(&mut engine, &base, &up));
                let down = {
                    let mut e = sandwich(w1, &[Part::X(m - 1), Part::Lam(1)], w2).scaled(&a(1));
                    e.add_scaled(&sandwich(w1, &[Part::X(m - 2)], w2), &-a(2));
                    e
                };
                shift_down.record(identity_holds(&mut engine, &base, &down));
            }
        }
    }
    checks.push(shift_up.done());
    checks.push(shift_down.done());

    // telescoped forms through the Q family, both orders of x and Q
    let mut tele_r = Tally::new(format!("Q-telescoped shift, x before Q, c={c}"));
    let mut tele_l = Tally::new(format!("Q-telescoped shift, Q before x, c={c}"));
    for m in c - 4..=c + 4 {
        for k in c - 4..=c + 4 {
            for (w1, w2) in &pairs {
                let base = sandwich(w1, &[Part::X(m)], w2);
                let rhs = {
                    let mut e = sandwich(w1, &[Part::X(k), Part::Poly(qpoly(m - k - 1))], w2)
                        .scaled(&-a(m - k));
                    e.add_scaled(
                        &sandwich(w1, &[Part::X(k + 1), Part::Poly(qpoly(m - k))], w2),
                        &a(m - k - 1),
                    );
                    e
                };
                tele_r.record(identity_holds(&mut engine, &base, &rhs));
                let rhs = {
                    let mut e = sandwich(w1, &[Part::Poly(qpoly(m - k - 1)), Part::X(k)], w2)
                        .scaled(&-a(k - m));
                    e.add_scaled(
                        &sandwich(w1, &[Part::Poly(qpoly(m - k)), Part::X(k + 1)], w2),
                        &a(k - m + 1),
                    );
                    e
                };
                tele_l.record(identity_holds(&mut engine, &base, &rhs));
            }
        }
    }
    checks.push(tele_r.done());
    checks.push(tele_l.done());

    // the three arrow-across-crossing exchange identities
    let mut ex1 = Tally::new(format!("exchange: strand against a circle, c={c}"));
    let mut ex2 = Tally::new(format!("exchange: circle against a strand, c={c}"));
    let mut ex3 = Tally::new(format!("exchange: strand pair closing up, c={c}"));
    let small_pairs: Vec<_> = pairs.iter().take(4).cloned().collect();
    for m in -5..=5i64 {
        for n in -5..=5i64 {
            for k in 0..=4u32 {
                for (w1, w2) in &small_pairs {
                    // A l^k x(m+n) + A^-1 x(m) P_{n,k}
                    //   = A x(m-1) P_{n-1,k} + A^-1 l^k x(m+n-2)
                    let lhs = {
                        let mut e =
                            sandwich(w1, &[Part::Lam(k), Part::X(m + n)], w2).scaled(&a(1));
                        e.add_scaled(
                            &sandwich(w1, &[Part::X(m), Part::Poly(ppoly_k(n, k))], w2),
                            &a(-1),
                        );
                        e
                    };
                    let rhs = {
                        let mut e =
                            sandwich(w1, &[Part::X(m - 1), Part::Poly(ppoly_k(n - 1, k))], w2)
                                .scaled(&a(1));
                        e.add_scaled(
                            &sandwich(w1, &[Part::Lam(k), Part::X(m + n - 2)], w2),
                            &a(-1),
                        );
                        e
                    };
                    ex1.record(identity_holds(&mut engine, &lhs, &rhs));

                    // A P_{n,k} x(m) + A^-1 x(m-n) l^k
                    //   = A x(m-n-2) l^k + A^-1 P_{n+1,k} x(m-1)
                    let lhs = {
                        let mut e = sandwich(w1, &[Part::Poly(ppoly_k(n, k)), Part::X(m)], w2)
                            .scaled(&a(1));
                        e.add_scaled(&sandwich(w1, &[Part::X(m - n), Part::Lam(k)], w2), &a(-1));
                        e
                    };
                    let rhs = {
                        let mut e =
                            sandwich(w1, &[Part::X(m - n - 2), Part::Lam(k)], w2).scaled(&a(1));
                        e.add_scaled(
                            &sandwich(w1, &[Part::Poly(ppoly_k(n + 1, k)), Part::X(m - 1)], w2),
                            &a(-1),
                        );
                        e
                    };
                    ex2.record(identity_holds(&mut engine, &lhs, &rhs));

                    // A P_{n-m,k} + A^-1 x(m) l^k x(n)
                    //   = A x(m-1) l^k x(n+1) + A^-1 P_{n-m+2,k}
                    let lhs = {
                        let mut e =
                            sandwich(w1, &[Part::Poly(ppoly_k(n - m, k))], w2).scaled(&a(1));
                        e.add_scaled(
                            &sandwich(w1, &[Part::X(m), Part::Lam(k), Part::X(n)], w2),
                            &a(-1),
                        );
                        e
                    };
                    let rhs = {
                        let mut e =
                            sandwich(w1, &[Part::X(m - 1), Part::Lam(k), Part::X(n + 1)], w2)
                                .scaled(&a(1));
                        e.add_scaled(
                            &sandwich(w1, &[Part::Poly(ppoly_k(n - m + 2, k))], w2),
                            &a(-1),
                        );
                        e
                    };
                    ex3.record(identity_holds(&mut engine, &lhs, &rhs));
                }
            }
        }
    }
    checks.push(ex1.done());
    checks.push(ex2.done());
    checks.push(ex3.done());

    // collapse of P_{c-m} against a leading x(c+1)
    let mut collapse = Tally::new(format!("P against x(c+1) collapse, c={c}"));
    for m in c - 4..=c + 4 {
        for k in 0..=4usize {
            for w1 in &pool {
                let run: Vec<Part> = std::iter::repeat(Part::X(c)).take(k).collect();
                let with = |front: Vec<Part>| {
                    let mut parts = front;
                    parts.extend(run.iter().cloned());
                    sandwich(w1, &parts, &GammaWord::empty())
                };
                let lhs = with(vec![Part::Poly(ppoly(c - m)), Part::X(c + 1)]);
                let rhs = {
                    let mut e = {
                        let mut parts = vec![Part::Poly(ppoly(c - m + 1))];
                        parts.extend(std::iter::repeat(Part::X(c)).take(k + 1));
                        sandwich(w1, &parts, &GammaWord::empty()).scaled(&a(-2))
                    };
                    e.add_scaled(&with(vec![Part::X(m + 1)]), &-a(-2));
                    e.add_scaled(&with(vec![Part::X(m - 1)]), &Laurent::one());
                    e
                };
                collapse.record(identity_holds(&mut engine, &lhs, &rhs));
            }
        }
    }
    checks.push(collapse.done());

    SuiteReport { name: format!("annulus c={c}"), checks }
}

/// The fibered-torus identity grids for one beta.
pub fn torus_suite(beta: i64) -> SuiteReport {
    let a = Laurent::a_pow;
    let nu = beta.div_euclid(2);
    let space = Space::fibered(beta);
    let pool = ambient_pool(nu);
    let mut engine = Reducer::new(space);
    let mut checks = Vec::new();

    let one = GammaWord::empty();
    let xnu_run = |lead: i64, n: u32, k: usize| {
        let mut parts = vec![Part::X(lead), Part::Lam(n)];
        parts.extend(std::iter::repeat(Part::X(nu)).take(k));
        sandwich(&one, &parts, &one)
    };

    // handle slide on the leading index
    let mut slide1 = Tally::new(format!("handle slide x(nu+1) -> -A^3 x(nu), beta={beta}"));
    for n in 0..=4u32 {
        for k in 0..=3usize {
            let lhs = xnu_run(nu + 1, n, k);
            let rhs = xnu_run(nu, n, k).scaled(&-a(3));
            slide1.record(identity_holds(&mut engine, &lhs, &rhs));
        }
    }
    checks.push(slide1.done());

    // handle slide collapsing one parallel copy
    let mut slide2 = Tally::new(format!("handle slide collapses a copy, beta={beta}"));
    for n in 0..=4u32 {
        for k in 1..=3usize {
            let lhs = xnu_run(nu, n, k);
            let tail: Vec<Part> = std::iter::repeat(Part::X(nu)).take(k - 1).collect();
            let with_poly = |p: LambdaPoly| {
                let mut parts = vec![Part::Poly(p)];
                parts.extend(tail.iter().cloned());
                sandwich(&one, &parts, &one)
            };
            let mut rhs = with_poly(ppoly_k(-1, n)).scaled(&a(-1));
            rhs.add_scaled(&with_poly(ppoly_k(0, n)), &-a(-2));
            slide2.record(identity_holds(&mut engine, &lhs, &rhs));
        }
    }
    checks.push(slide2.done());

    // slid circles: P_{m,n} w - A P_{m-1,n} w - A^-1 x(nu+1) l^n x(m+nu) w = 0
    let mut slid_t = Tally::new(format!("slid circle relation, beta={beta}"));
    for m in nu - 4..=nu + 4 {
        for n in 0..=4u32 {
            for w in &pool {
                let mut e = sandwich(&one, &[Part::Poly(ppoly_k(m, n))], w);
                e.add_scaled(&sandwich(&one, &[Part::Poly(ppoly_k(m - 1, n))], w), &-a(1));
                e.add_scaled(
                    &sandwich(&one, &[Part::X(nu + 1), Part::Lam(n), Part::X(m + nu)], w),
                    &-a(-1),
                );
                let nf = engine.reduce(&e);
                slid_t.record(matches!(nf, Ok(v) if v.is_zero()));
            }
        }
    }
    checks.push(slid_t.done());

    // slid strands: l^n x(m) w - A l^n x(m+1) w - A^-1 x(nu+1) P_{m-nu,n} w = 0
    let mut slid_x = Tally::new(format!("slid strand relation, beta={beta}"));
    for m in nu - 4..=nu + 4 {
        for n in 0..=4u32 {
            for w in &pool {
                let mut e = sandwich(&one, &[Part::Lam(n), Part::X(m)], w);
                e.add_scaled(&sandwich(&one, &[Part::Lam(n), Part::X(m + 1)], w), &-a(1));
                e.add_scaled(
                    &sandwich(&one, &[Part::X(nu + 1), Part::Poly(ppoly_k(m - nu, n))], w),
                    &-a(-1),
                );
                let nf = engine.reduce(&e);
                slid_x.record(matches!(nf, Ok(v) if v.is_zero()));
            }
        }
    }
    checks.push(slid_x.done());

    // the slide also applies under a trailing x(nu+1)
    let mut inner = Tally::new(format!("slide under a trailing x(nu+1), beta={beta}"));
    for n in 0..=4u32 {
        for k in 0..=3usize {
            let shape = |lead: i64| {
                let mut parts = vec![Part::X(lead), Part::Lam(n), Part::X(nu + 1)];
                parts.extend(std::iter::repeat(Part::X(nu)).take(k));
                sandwich(&one, &parts, &one)
            };
            let lhs = shape(nu + 1);
            let rhs = shape(nu).scaled(&-a(3));
            inner.record(identity_holds(&mut engine, &lhs, &rhs));
        }
    }
    checks.push(inner.done());

    SuiteReport { name: format!("torus beta={beta}"), checks }
}

// ---------------------------------------------------------------------------
// randomized word suites

/// Parameters for random word generation.
#[derive(Clone, Copy, Debug)]
pub struct WordGen {
    pub max_x: usize,
    pub index_window: i64,
    pub max_run: u32,
}

impl Default for WordGen {
    fn default() -> Self {
        WordGen { max_x: 6, index_window: 8, max_run: 5 }
    }
}

/// A random word around the anchor of `space`.
pub fn random_word(rng: &mut ChaCha8Rng, space: Space, gen: &WordGen) -> GammaWord {
    let anchor = space.anchor();
    let k = rng.random_range(0..=gen.max_x);
    let xs: Vec<i64> = (0..k)
        .map(|_| anchor + rng.random_range(-gen.index_window..=gen.index_window))
        .collect();
    let lambda: Vec<u32> = (0..=k).map(|_| rng.random_range(0..=gen.max_run)).collect();
    GammaWord::from_parts(lambda, xs)
}

/// Normal-form contract: random words reduce within the fuel bound, land in
/// the basis, and reduction is idempotent.
pub fn normal_form_suite(space: Space, words: usize, fuel: u64, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gen = WordGen::default();
    let mut fuel_ok = Tally::new(format!("fuel below {fuel} [{space}]"));
    let mut closure = Tally::new(format!("image lies in the basis [{space}]"));
    let mut idem = Tally::new(format!("reduction is idempotent [{space}]"));
    for _ in 0..words {
        let w = random_word(&mut rng, space, &gen);
        let mut engine = Reducer::with_fuel(space, fuel);
        match engine.reduce_word(&w) {
            Err(_) => {
                fuel_ok.record(false);
                closure.record(false);
                idem.record(false);
            }
            Ok(nf) => {
                fuel_ok.record(true);
                closure.record(nf.words().all(|t| space.in_basis(t)));
                let again = Reducer::with_fuel(space, fuel).reduce(&nf);
                idem.record(matches!(again, Ok(v) if v == nf));
            }
        }
    }
    SuiteReport {
        name: format!("normal-form contract [{space}]"),
        checks: vec![fuel_ok.done(), closure.done(), idem.done()],
    }
}

/// Confluence: the memoized right-anchored engine and the stepwise strategy
/// must produce identical normal forms.
pub fn confluence_suite(space: Space, cases: usize, fuel: u64, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gen = WordGen { max_x: 5, index_window: 6, max_run: 4 };
    let mut agree = Tally::new(format!("strategies agree [{space}]"));
    for _ in 0..cases {
        let w = random_word(&mut rng, space, &gen);
        let e = ModuleElement::from_word(w);
        let memoized = Reducer::with_fuel(space, fuel).reduce(&e);
        let stepwise = reduce_stepwise(&e, space, fuel);
        agree.record(matches!((memoized, stepwise), (Ok(a), Ok(b)) if a == b));
    }
    SuiteReport { name: format!("confluence [{space}]"), checks: vec![agree.done()] }
}

// ---------------------------------------------------------------------------
// diagram suites

/// A random valid slice diagram with bounded crossing count.
pub fn random_diagram(
    rng: &mut ChaCha8Rng,
    max_events: usize,
    max_crossings: usize,
) -> SliceDiagram {
    let base = rng.random_range(0..=2u32);
    let mut events = Vec::new();
    let mut n = base;
    let mut crossings = 0usize;
    let steps = rng.random_range(0..=max_events);
    for _ in 0..steps {
        let mut options: Vec<u8> = vec![0]; // a cap is always possible
        if n >= 2 {
            options.push(1);
            if crossings < max_crossings {
                options.push(2);
                options.push(2);
            }
        }
        if n >= 1 {
            options.push(3);
            options.push(3);
        }
        match *options.choose(rng).unwrap() {
            0 => {
                let i = rng.random_range(1..=n + 1);
                events.push(Event::Cap(i));
                n += 2;
            }
            1 => {
                let i = rng.random_range(1..=n - 1);
                events.push(Event::Cup(i));
                n -= 2;
            }
            2 => {
                let i = rng.random_range(1..=n - 1);
                events.push(if rng.random_bool(0.5) {
                    Event::CrossPos(i)
                } else {
                    Event::CrossNeg(i)
                });
                crossings += 1;
            }
            _ => {
                let i = rng.random_range(1..=n);
                let s = if rng.random_bool(0.5) { 1 } else { -1 };
                events.push(Event::Arrow(i, s));
            }
        }
    }
    while n > base {
        let i = rng.random_range(1..=n - 1);
        events.push(Event::Cup(i));
        n -= 2;
    }
    while n < base {
        let i = rng.random_range(1..=n + 1);
        events.push(Event::Cap(i));
        n += 2;
    }
    let d = SliceDiagram::new(base, events);
    debug_assert!(d.validate().is_ok());
    d
}

/// A random applicable move on `d`, or `None` after bounded retries.
pub fn random_move(rng: &mut ChaCha8Rng, d: &SliceDiagram) -> Option<(Move, SliceDiagram)> {
    for _ in 0..40 {
        let at = rng.random_range(0..=d.events.len());
        let strands = d.strands_before(at);
        let mv = match rng.random_range(0..6u8) {
            0 if strands >= 1 => Move::FramedKinkPair { at, pos: rng.random_range(1..=strands) },
            1 if strands >= 2 => Move::R2 { at, pos: rng.random_range(1..=strands - 1) },
            2 => Move::R3 { at },
            3 if strands >= 1 => Move::ArrowCancel {
                at,
                pos: rng.random_range(1..=strands),
                sign: if rng.random_bool(0.5) { 1 } else { -1 },
            },
            4 => Move::ArrowSlide { at },
            5 => Move::EventCommute { at },
            _ => continue,
        };
        if let Ok(next) = apply_move(d, mv) {
            return Some((mv, next));
        }
    }
    None
}

/// Full-enumeration vs recursive-skein oracle, plus winding sanity, on random
/// diagrams.
pub fn oracle_suite(cases: usize, max_crossings: usize, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut oracle = Tally::new("state enumeration equals skein recursion");
    let mut winding = Tally::new("windings lie in {0, 1}");
    for _ in 0..cases {
        let d = random_diagram(&mut rng, 14, max_crossings);
        let by_states = resolve_states(&d);
        let by_skein = resolve_recursive(&d);
        oracle.record(matches!((by_states, by_skein), (Ok(a), Ok(b)) if a == b));
        let mask = if d.crossing_count() == 0 {
            0
        } else {
            rng.random::<u64>() & ((1u64 << d.crossing_count()) - 1)
        };
        let ws = state_windings(&d, mask).unwrap();
        winding.record(ws.iter().all(|&w| w == 0 || w == 1));
    }
    SuiteReport { name: "diagram oracle".into(), checks: vec![oracle.done(), winding.done()] }
}

/// Skein-triple linearity of the pipelines on random crossings.
pub fn skein_linearity_suite(cases: usize, seed: u64, spaces: &[Space]) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let opts = PipelineOptions::default();
    let mut checks: Vec<Tally> =
        spaces.iter().map(|s| Tally::new(format!("skein linearity [{s}]"))).collect();
    let mut done = 0usize;
    while done < cases {
        let d = random_diagram(&mut rng, 12, 6);
        let crossings: Vec<usize> = d
            .events
            .iter()
            .enumerate()
            .filter(|(_, e)| matches!(e, Event::CrossPos(_) | Event::CrossNeg(_)))
            .map(|(i, _)| i)
            .collect();
        let Some(&at) = crossings.as_slice().choose(&mut rng) else {
            continue;
        };
        let (dp, d0, dinf) = skein_triple(&d, at).unwrap();
        for (space, tally) in spaces.iter().zip(checks.iter_mut()) {
            let lhs = psi_with(&dp, *space, &opts);
            let rhs = psi_with(&d0, *space, &opts).and_then(|e0| {
                psi_with(&dinf, *space, &opts).map(|einf| {
                    let mut e = e0.scaled(&Laurent::a_pow(1));
                    e.add_scaled(&einf, &Laurent::a_pow(-1));
                    e
                })
            });
            tally.record(matches!((lhs, rhs), (Ok(a), Ok(b)) if a == b));
        }
        done += 1;
    }
    SuiteReport {
        name: "skein linearity".into(),
        checks: checks.into_iter().map(Tally::done).collect(),
    }
}

/// Pipeline invariance under random applicable moves.
pub fn move_invariance_suite(cases: usize, seed: u64, spaces: &[Space]) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let opts = PipelineOptions::default();
    let mut checks: Vec<Tally> =
        spaces.iter().map(|s| Tally::new(format!("move invariance [{s}]"))).collect();
    let mut done = 0usize;
    while done < cases {
        let d = random_diagram(&mut rng, 10, 4);
        let Some((_mv, moved)) = random_move(&mut rng, &d) else {
            continue;
        };
        for (space, tally) in spaces.iter().zip(checks.iter_mut()) {
            let before = psi_with(&d, *space, &opts);
            let after = psi_with(&moved, *space, &opts);
            tally.record(matches!((before, after), (Ok(a), Ok(b)) if a == b));
        }
        done += 1;
    }
    SuiteReport {
        name: "move invariance".into(),
        checks: checks.into_iter().map(Tally::done).collect(),
    }
}

/// Disjoint arrowless circles scale the pipeline by `-A^2 - A^-2`.
pub fn trivial_circle_suite(cases: usize, seed: u64, c: i64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let opts = PipelineOptions::default();
    let mut tally = Tally::new(format!("disjoint circle factor, c={c}"));
    for _ in 0..cases {
        let d = random_diagram(&mut rng, 10, 4);
        let mut with_circle = d.clone();
        let pos = rng.random_range(1..=d.base_strands + 1);
        with_circle.events.push(Event::Cap(pos));
        with_circle.events.push(Event::Cup(pos));
        let lhs = psi_with(&with_circle, Space::annulus(c), &opts);
        let rhs = psi_with(&d, Space::annulus(c), &opts).map(|e| e.scaled(&Laurent::circle()));
        tally.record(matches!((lhs, rhs), (Ok(a), Ok(b)) if a == b));
    }
    SuiteReport { name: "trivial circle".into(), checks: vec![tally.done()] }
}

// ---------------------------------------------------------------------------
// basis witnesses

/// All basis words of `Sigma_c` with `l`-power and copy count up to `bound`.
pub fn sigma_c_words(c: i64, bound: u32) -> Vec<GammaWord> {
    let mut words = Vec::new();
    for n in 0..=bound {
        words.push(GammaWord::lambda_power(n));
    }
    for eps in 0..=1i64 {
        for n in 0..=bound {
            for k in 0..=bound as usize {
                let mut lambda = vec![0u32; k + 2];
                lambda[1] = n;
                let mut xs = vec![c; k + 1];
                xs[0] = c + eps;
                words.push(GammaWord::from_parts(lambda, xs));
            }
        }
    }
    words
}

/// All basis words of `Sigma'_nu` with `l`-power up to `bound`.
pub fn sigma_prime_words(nu: i64, bound: u32) -> Vec<GammaWord> {
    let mut words = Vec::new();
    for n in 0..=bound {
        words.push(GammaWord::lambda_power(n));
        words.push(GammaWord::from_parts(vec![0, n], vec![nu]));
    }
    words
}

/// Basis witnesses: embedding a basis word and running the pipeline is the
/// identity, and changing basis back and forth is the identity.
pub fn witness_suite(cs: &[i64], betas: &[i64], bound: u32, prime_bound: u32) -> SuiteReport {
    let opts = PipelineOptions::default();
    let mut checks = Vec::new();

    for &c in cs {
        let mut tally = Tally::new(format!("pipeline fixes the basis, c={c}"));
        for w in sigma_c_words(c, bound) {
            let (d, coeff) = embed_word(&w);
            let ok = match psi_with(&d, Space::annulus(c), &opts) {
                Ok(nf) => nf.scaled(&coeff) == ModuleElement::from_word(w),
                Err(_) => false,
            };
            tally.record(ok);
        }
        checks.push(tally.done());
    }

    for &beta in betas {
        let nu = beta.div_euclid(2);
        let mut tally = Tally::new(format!("pipeline fixes the basis, beta={beta}"));
        for w in sigma_prime_words(nu, prime_bound) {
            let (d, coeff) = embed_word(&w);
            let ok = match psi_with(&d, Space::fibered(beta), &opts) {
                Ok(nf) => nf.scaled(&coeff) == ModuleElement::from_word(w),
                Err(_) => false,
            };
            tally.record(ok);
        }
        checks.push(tally.done());
    }

    for &c1 in cs {
        for delta in [-3i64, 3] {
            let c2 = c1 + delta;
            let mut tally = Tally::new(format!("basis change round trip, {c1} -> {c2} -> {c1}"));
            let mut to = Reducer::new(Space::annulus(c2));
            let mut back = Reducer::new(Space::annulus(c1));
            for w in sigma_c_words(c1, bound) {
                let ok = to
                    .reduce(&ModuleElement::from_word(w.clone()))
                    .and_then(|mid| back.reduce(&mid))
                    .map(|nf| nf == ModuleElement::from_word(w))
                    .unwrap_or(false);
                tally.record(ok);
            }
            checks.push(tally.done());
        }
    }

    SuiteReport { name: "basis witnesses".into(), checks }
}

/// Printed normal forms re-parse and re-reduce to themselves.
pub fn print_parse_suite(space: Space, cases: usize, fuel: u64, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gen = WordGen { max_x: 4, index_window: 5, max_run: 3 };
    let mut tally = Tally::new(format!("printed normal forms are fixed points [{space}]"));
    for _ in 0..cases {
        let w = random_word(&mut rng, space, &gen);
        let ok = Reducer::with_fuel(space, fuel)
            .reduce(&ModuleElement::from_word(w))
            .ok()
            .and_then(|nf| {
                let back = crate::expr::parse(&nf.to_string()).ok()?;
                let again = Reducer::with_fuel(space, fuel).reduce(&back).ok()?;
                Some(back == nf && again == nf)
            })
            .unwrap_or(false);
        tally.record(ok);
    }
    SuiteReport { name: "print/parse".into(), checks: vec![tally.done()] }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polys_suite_passes() {
        let report = polys_suite();
        assert!(report.all_pass(), "{report}");
    }

    #[test]
    fn random_words_reduce_and_stay_reduced() {
        let report = normal_form_suite(Space::annulus(0), 200, 100_000, 11);
        assert!(report.all_pass(), "{report}");
        let report = normal_form_suite(Space::fibered(5), 200, 100_000, 12);
        assert!(report.all_pass(), "{report}");
    }

    #[test]
    fn strategies_agree_on_samples() {
        let report = confluence_suite(Space::annulus(-1), 60, 1_000_000, 21);
        assert!(report.all_pass(), "{report}");
        let report = confluence_suite(Space::fibered(7), 60, 1_000_000, 22);
        assert!(report.all_pass(), "{report}");
    }

    #[test]
    fn random_diagrams_agree_with_the_oracle() {
        let report = oracle_suite(60, 6, 31);
        assert!(report.all_pass(), "{report}");
    }

    #[test]
    fn random_moves_are_invariant() {
        let spaces = [Space::annulus(0), Space::fibered(5)];
        let report = move_invariance_suite(60, 41, &spaces);
        assert!(report.all_pass(), "{report}");
    }

    #[test]
    fn witnesses_on_a_small_bound() {
        let report = witness_suite(&[0], &[5], 2, 3);
        assert!(report.all_pass(), "{report}");
    }
}

#[cfg(test)]
mod scratch {
    use super::*;

    #[test]
    #[ignore]
    fn measure_fuel_profile() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let gen = WordGen::default();
        for space in [Space::annulus(0), Space::fibered(5)] {
            let mut max_fuel = 0u64;
            let mut total = 0u64;
            let t0 = std::time::Instant::now();
            for _ in 0..300 {
                let w = random_word(&mut rng, space, &gen);
                let mut engine = Reducer::with_fuel(space, 10_000_000);
                engine.reduce_word(&w).unwrap();
                max_fuel = max_fuel.max(engine.fuel_used());
                total += engine.fuel_used();
            }
            println!(
                "[{space}] 300 words: max fuel {max_fuel}, avg {}, {:?}",
                total / 300,
                t0.elapsed()
            );
        }
    }
}
