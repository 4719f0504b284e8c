//! Concrete arrow diagrams in the annulus, with crossings.
//!
//! A [`SliceDiagram`] records a diagram as a sequence of elementary events
//! read around the `S^1` direction of the annulus: births (`cap`), deaths
//! (`cup`), crossings, and arrow marks, acting on strands numbered from the
//! inner boundary. Closure glues position `j` at the end to position `j` at
//! the start.
//!
//! [`resolve_states`] expands every crossing by a Kauffman marker and traces
//! each smoothed picture into a [`CrosslessDiagram`]: the essential curves
//! (those winding around the annulus) with their net arrow counts, and per
//! annular region a nesting forest of trivial circles. [`to_gamma`] interprets
//! that data as a word with disk polynomials spliced into the gaps, and
//! [`psi_c`] / [`phi_beta`] finish with the matching reduction engine.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::laurent::{Laurent, ParseError};
use crate::polyfam::{ppoly_k, LambdaPoly};
use crate::reduce::{self, ReduceError, Reducer, Space};
use crate::word::{splice, GammaWord, ModuleElement};

/// One elementary event. Positions are 1-based from the inner boundary.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Event {
    /// Birth of an adjacent strand pair at positions `i`, `i+1`.
    Cap(u32),
    /// Death of the adjacent strand pair at positions `i`, `i+1`.
    Cup(u32),
    /// Positive crossing of strands `i`, `i+1`.
    CrossPos(u32),
    /// Negative crossing of strands `i`, `i+1`.
    CrossNeg(u32),
    /// An arrow on strand `i`; the sign is taken along the `S^1` direction.
    Arrow(u32, i8),
}

impl Event {
    fn is_crossing(&self) -> bool {
        matches!(self, Event::CrossPos(_) | Event::CrossNeg(_))
    }
}

/// A diagram in slice form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SliceDiagram {
    /// Strand count at the radial cut (start = end).
    pub base_strands: u32,
    pub events: Vec<Event>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("strand count mismatch at event {at:?}: expected {expected}, found {found}")]
    StrandCountMismatch { at: Option<usize>, expected: u32, found: u32 },
    #[error("event {at} is out of range for the current strand count")]
    EventOutOfRange { at: usize },
    #[error("diagram has {crossings} crossings, over the limit of {limit}")]
    CrossingLimitExceeded { crossings: usize, limit: usize },
    #[error("event {at} is not a crossing")]
    NotACrossing { at: usize },
    #[error("move not applicable: {0}")]
    MoveNotApplicable(String),
}

/// Errors from the full diagram-to-normal-form pipelines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PipelineError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
}

impl SliceDiagram {
    pub fn new(base_strands: u32, events: Vec<Event>) -> Self {
        SliceDiagram { base_strands, events }
    }

    pub fn crossing_count(&self) -> usize {
        self.events.iter().filter(|e| e.is_crossing()).count()
    }

    /// Check both shape invariants: every event fits the running strand
    /// count, and the count returns to `base_strands` for the closure.
    pub fn validate(&self) -> Result<(), DiagramError> {
        let mut n = self.base_strands;
        for (at, ev) in self.events.iter().enumerate() {
            match *ev {
                Event::Cap(i) => {
                    if i == 0 || i > n + 1 {
                        return Err(DiagramError::EventOutOfRange { at });
                    }
                    n += 2;
                }
                Event::Cup(i) => {
                    if n < 2 {
                        return Err(DiagramError::StrandCountMismatch {
                            at: Some(at),
                            expected: 2,
                            found: n,
                        });
                    }
                    if i == 0 || i + 1 > n {
                        return Err(DiagramError::EventOutOfRange { at });
                    }
                    n -= 2;
                }
                Event::CrossPos(i) | Event::CrossNeg(i) => {
                    if i == 0 || i + 1 > n {
                        return Err(DiagramError::EventOutOfRange { at });
                    }
                }
                Event::Arrow(i, _) => {
                    if i == 0 || i > n {
                        return Err(DiagramError::EventOutOfRange { at });
                    }
                }
            }
        }
        if n != self.base_strands {
            return Err(DiagramError::StrandCountMismatch {
                at: None,
                expected: self.base_strands,
                found: n,
            });
        }
        Ok(())
    }

    /// Strand count just before event `at` (or after all events when `at`
    /// equals the event count).
    pub fn strands_before(&self, at: usize) -> u32 {
        let mut n = self.base_strands;
        for ev in &self.events[..at.min(self.events.len())] {
            match ev {
                Event::Cap(_) => n += 2,
                Event::Cup(_) => n -= 2,
                _ => {}
            }
        }
        n
    }

    /// Parse the line-oriented diagram format.
    ///
    /// ```text
    /// strands <k>
    /// cap <i> | cup <i> | x+ <i> | x- <i> | a+ <i> | a- <i>
    /// ```
    ///
    /// Blank lines and lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<SliceDiagram, ParseError> {
        let mut base: Option<u32> = None;
        let mut events = Vec::new();
        let mut offset = 0usize;
        for line in text.lines() {
            let start = offset;
            offset += line.len() + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let head = parts.next().unwrap();
            let arg = parts
                .next()
                .ok_or_else(|| ParseError::new(start, "missing argument"))?;
            if parts.next().is_some() {
                return Err(ParseError::new(start, "trailing tokens"));
            }
            let n: u32 = arg
                .parse()
                .map_err(|_| ParseError::new(start, "expected a non-negative integer"))?;
            match head {
                "strands" => {
                    if base.is_some() {
                        return Err(ParseError::new(start, "duplicate strands line"));
                    }
                    base = Some(n);
                }
                _ => {
                    if base.is_none() {
                        return Err(ParseError::new(start, "expected a strands line first"));
                    }
                    let ev = match head {
                        "cap" => Event::Cap(n),
                        "cup" => Event::Cup(n),
                        "x+" => Event::CrossPos(n),
                        "x-" => Event::CrossNeg(n),
                        "a+" => Event::Arrow(n, 1),
                        "a-" => Event::Arrow(n, -1),
                        _ => return Err(ParseError::new(start, format!("unknown event '{head}'"))),
                    };
                    events.push(ev);
                }
            }
        }
        let base = base.ok_or_else(|| ParseError::new(0, "missing strands line"))?;
        Ok(SliceDiagram::new(base, events))
    }
}

impl fmt::Display for SliceDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "strands {}", self.base_strands)?;
        for ev in &self.events {
            match ev {
                Event::Cap(i) => writeln!(f, "cap {i}")?,
                Event::Cup(i) => writeln!(f, "cup {i}")?,
                Event::CrossPos(i) => writeln!(f, "x+ {i}")?,
                Event::CrossNeg(i) => writeln!(f, "x- {i}")?,
                Event::Arrow(i, s) => writeln!(f, "a{} {i}", if *s > 0 { '+' } else { '-' })?,
            }
        }
        Ok(())
    }
}

/// A trivial circle with its net arrow count and the circles nested directly
/// inside it. Children are kept sorted, so equality is isotopy of the nest.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CircleNode {
    pub net: i64,
    pub children: Vec<CircleNode>,
}

/// A crossingless diagram: essential curve nets (inner to outer) and, for
/// each of the `k + 1` annular regions, the forest of trivial circles.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CrosslessDiagram {
    pub essential: Vec<i64>,
    pub regions: Vec<Vec<CircleNode>>,
}

/// Formal sum of crossingless diagrams with Laurent coefficients.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct StateSum {
    terms: BTreeMap<CrosslessDiagram, Laurent>,
}

impl StateSum {
    pub fn zero() -> Self {
        StateSum::default()
    }

    pub fn add_term(&mut self, d: CrosslessDiagram, c: Laurent) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(d) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &StateSum, r: &Laurent) {
        for (d, c) in &other.terms {
            self.add_term(d.clone(), c * r);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CrosslessDiagram, &Laurent)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

// ---------------------------------------------------------------------------
// curve tracing

#[derive(Clone, Copy)]
enum Smoothed {
    Cap(u32),
    Cup(u32),
    /// Strands pass straight through (also used for arrow events).
    Straight(Option<(u32, i8)>),
    /// Strands `i`, `i+1` turn back toward each other.
    Turnback(u32),
}

/// One traced closed curve of a smoothed diagram.
#[derive(Clone, Debug)]
struct TracedCurve {
    /// 0 for a trivial circle, 1 for an essential curve.
    winding: i64,
    /// Net arrow count in the canonical orientation.
    net: i64,
    /// Occupied slots `(interval, position)`, 0-based.
    slots: Vec<(usize, u32)>,
}

/// Trace all closed curves of a crossingless (already smoothed) event list.
///
/// Orientation conventions: essential curves run in the positive `S^1`
/// direction; a trivial circle is oriented so that its innermost arc runs in
/// the positive `S^1` direction. An arrow's recorded sign counts relative to
/// the positive `S^1` direction of its strand, so a traversal against it
/// flips the contribution.
fn trace(base: u32, evs: &[Smoothed]) -> Vec<TracedCurve> {
    let t = evs.len();
    let mut counts = Vec::with_capacity(t + 1);
    counts.push(base);
    for ev in evs {
        let n = *counts.last().unwrap();
        counts.push(match ev {
            Smoothed::Cap(_) => n + 2,
            Smoothed::Cup(_) => n - 2,
            _ => n,
        });
    }
    let mut offsets = Vec::with_capacity(t + 1);
    let mut total = 0usize;
    for &n in &counts {
        offsets.push(total);
        total += n as usize;
    }
    let seg = |i: usize, p: u32| offsets[i] + p as usize;
    let bot = |s: usize| 2 * s;
    let top = |s: usize| 2 * s + 1;

    let mut partner = vec![usize::MAX; 2 * total];
    let mut arrow_exit = vec![0i64; 2 * total];
    let mut closure_exit = vec![0i64; 2 * total];

    for (i, ev) in evs.iter().enumerate() {
        let n = counts[i];
        let mut pair = |a: usize, b: usize| {
            partner[a] = b;
            partner[b] = a;
        };
        match *ev {
            Smoothed::Cap(j) => {
                let j0 = j - 1;
                pair(bot(seg(i + 1, j0)), bot(seg(i + 1, j0 + 1)));
                for p in 0..n {
                    let q = if p >= j0 { p + 2 } else { p };
                    pair(top(seg(i, p)), bot(seg(i + 1, q)));
                }
            }
            Smoothed::Cup(j) => {
                let j0 = j - 1;
                pair(top(seg(i, j0)), top(seg(i, j0 + 1)));
                for p in 0..n {
                    if p == j0 || p == j0 + 1 {
                        continue;
                    }
                    let q = if p > j0 + 1 { p - 2 } else { p };
                    pair(top(seg(i, p)), bot(seg(i + 1, q)));
                }
            }
            Smoothed::Turnback(j) => {
                let j0 = j - 1;
                pair(top(seg(i, j0)), top(seg(i, j0 + 1)));
                pair(bot(seg(i + 1, j0)), bot(seg(i + 1, j0 + 1)));
                for p in 0..n {
                    if p == j0 || p == j0 + 1 {
                        continue;
                    }
                    pair(top(seg(i, p)), bot(seg(i + 1, p)));
                }
            }
            Smoothed::Straight(arrow) => {
                for p in 0..n {
                    pair(top(seg(i, p)), bot(seg(i + 1, p)));
                }
                if let Some((j, s)) = arrow {
                    let j0 = j - 1;
                    arrow_exit[top(seg(i, j0))] += s as i64;
                    arrow_exit[bot(seg(i + 1, j0))] -= s as i64;
                }
            }
        }
    }
    for p in 0..counts[t] {
        partner[top(seg(t, p))] = bot(seg(0, p));
        partner[bot(seg(0, p))] = top(seg(t, p));
        closure_exit[top(seg(t, p))] = 1;
        closure_exit[bot(seg(0, p))] = -1;
    }

    let mut seg_home = vec![(0usize, 0u32); total];
    for (i, &n) in counts.iter().enumerate() {
        for p in 0..n {
            seg_home[seg(i, p)] = (i, p);
        }
    }

    let mut visited = vec![false; total];
    let mut curves = Vec::new();
    for start in 0..total {
        if visited[start] {
            continue;
        }
        let mut slots: Vec<(usize, u32, bool)> = Vec::new();
        let mut arrows = 0i64;
        let mut wind = 0i64;
        let mut cur = start;
        let mut entered_bottom = true;
        loop {
            visited[cur] = true;
            let (i, p) = seg_home[cur];
            slots.push((i, p, entered_bottom));
            let exit = if entered_bottom { top(cur) } else { bot(cur) };
            arrows += arrow_exit[exit];
            wind += closure_exit[exit];
            let nxt = partner[exit];
            let nxt_seg = nxt / 2;
            entered_bottom = nxt % 2 == 0;
            if nxt_seg == start {
                break;
            }
            cur = nxt_seg;
        }
        assert!(
            wind.abs() <= 1,
            "traced a curve with winding {wind}; slice encodings are planar"
        );
        let flip = if wind != 0 {
            wind < 0
        } else {
            let &(_, _, up) = slots.iter().min_by_key(|(i, p, _)| (*p, *i)).unwrap();
            !up
        };
        curves.push(TracedCurve {
            winding: wind.abs(),
            net: if flip { -arrows } else { arrows },
            slots: slots.into_iter().map(|(i, p, _)| (i, p)).collect(),
        });
    }
    curves
}

/// Number of `other`-slots strictly below `slot` at the same interval, mod 2.
/// Odd parity means `slot` lies outside `other`.
fn below_parity(other: &TracedCurve, slot: (usize, u32)) -> bool {
    other
        .slots
        .iter()
        .filter(|(i, p)| *i == slot.0 && *p < slot.1)
        .count()
        % 2
        == 1
}

fn rep_slot(c: &TracedCurve) -> (usize, u32) {
    let &(i, p) = c.slots.iter().min_by_key(|(i, p)| (*p, *i)).unwrap();
    (i, p)
}

/// Assemble traced curves into a crossingless diagram, deleting arrowless
/// circles with nothing inside. Returns the diagram and the number of circles
/// deleted; each deletion contributes a factor `-A^2 - A^-2` to the caller.
fn assemble(curves: &[TracedCurve]) -> (CrosslessDiagram, u32) {
    let essential: Vec<&TracedCurve> = curves.iter().filter(|c| c.winding != 0).collect();
    let trivial: Vec<&TracedCurve> = curves.iter().filter(|c| c.winding == 0).collect();

    let mut ess_sorted: Vec<(usize, &TracedCurve)> = essential
        .iter()
        .map(|&e| {
            let inside = essential
                .iter()
                .filter(|&&f| !std::ptr::eq(f, e) && below_parity(f, rep_slot(e)))
                .count();
            (inside, e)
        })
        .collect();
    ess_sorted.sort_by_key(|(idx, _)| *idx);
    let essential_nets: Vec<i64> = ess_sorted.iter().map(|(_, e)| e.net).collect();

    // region index and nesting depth of every trivial circle
    let info: Vec<(usize, usize)> = trivial
        .iter()
        .map(|&tc| {
            let rep = rep_slot(tc);
            let region = essential.iter().filter(|&&e| below_parity(e, rep)).count();
            let depth = trivial
                .iter()
                .filter(|&&y| !std::ptr::eq(y, tc) && below_parity(y, rep))
                .count();
            (region, depth)
        })
        .collect();

    // parent of a depth-d circle: the unique enclosing circle of depth d - 1
    let parent: Vec<Option<usize>> = (0..trivial.len())
        .map(|i| {
            let (_, depth) = info[i];
            if depth == 0 {
                return None;
            }
            (0..trivial.len()).find(|&j| {
                j != i && info[j].1 == depth - 1 && below_parity(trivial[j], rep_slot(trivial[i]))
            })
        })
        .collect();

    fn build(
        trivial: &[&TracedCurve],
        children_of: &[Vec<usize>],
        members: &[usize],
    ) -> Vec<CircleNode> {
        let mut nodes: Vec<CircleNode> = members
            .iter()
            .map(|&i| CircleNode {
                net: trivial[i].net,
                children: build(trivial, children_of, &children_of[i]),
            })
            .collect();
        nodes.sort();
        nodes
    }

    let mut children_of: Vec<Vec<usize>> = vec![Vec::new(); trivial.len()];
    for (i, p) in parent.iter().enumerate() {
        if let Some(p) = p {
            children_of[*p].push(i);
        }
    }

    let mut regions = Vec::with_capacity(essential_nets.len() + 1);
    let mut deletions = 0u32;
    for g in 0..=essential_nets.len() {
        let roots: Vec<usize> = (0..trivial.len())
            .filter(|&i| info[i] == (g, 0))
            .collect();
        let forest = prune(build(&trivial, &children_of, &roots), &mut deletions);
        regions.push(forest);
    }
    (CrosslessDiagram { essential: essential_nets, regions }, deletions)
}

/// Remove arrowless circles with nothing inside, cascading upward.
fn prune(nodes: Vec<CircleNode>, deletions: &mut u32) -> Vec<CircleNode> {
    let mut out = Vec::new();
    for node in nodes {
        let children = prune(node.children, deletions);
        if node.net == 0 && children.is_empty() {
            *deletions += 1;
        } else {
            out.push(CircleNode { net: node.net, children });
        }
    }
    out.sort();
    out
}

fn smooth_events(events: &[Event], mask: u64) -> Vec<Smoothed> {
    let mut bit = 0u32;
    events
        .iter()
        .map(|ev| match *ev {
            Event::Cap(i) => Smoothed::Cap(i),
            Event::Cup(i) => Smoothed::Cup(i),
            Event::Arrow(i, s) => Smoothed::Straight(Some((i, s))),
            Event::CrossPos(i) | Event::CrossNeg(i) => {
                let positive_marker = mask >> bit & 1 == 1;
                bit += 1;
                // the A-smoothing of a positive crossing turns the strands
                // back; for a negative crossing it is the straight one
                let turnback_on_positive = matches!(ev, Event::CrossPos(_));
                if positive_marker == turnback_on_positive {
                    Smoothed::Turnback(i)
                } else {
                    Smoothed::Straight(None)
                }
            }
        })
        .collect()
}

fn state_term(d: &SliceDiagram, mask: u64, crossings: u32) -> (CrosslessDiagram, Laurent) {
    let evs = smooth_events(&d.events, mask);
    let curves = trace(d.base_strands, &evs);
    let (cd, deletions) = assemble(&curves);
    let marker_weight = 2 * mask.count_ones() as i64 - crossings as i64;
    let mut coeff = Laurent::a_pow(marker_weight);
    for _ in 0..deletions {
        coeff = coeff * Laurent::circle();
    }
    (cd, coeff)
}

/// Windings of the curves of one smoothed state, for sanity checks.
pub fn state_windings(d: &SliceDiagram, mask: u64) -> Result<Vec<i64>, DiagramError> {
    d.validate()?;
    let evs = smooth_events(&d.events, mask);
    Ok(trace(d.base_strands, &evs).iter().map(|c| c.winding).collect())
}

pub const DEFAULT_CROSSING_LIMIT: usize = 20;

/// Resolve every Kauffman state of `d` by full enumeration.
pub fn resolve_states(d: &SliceDiagram) -> Result<StateSum, DiagramError> {
    resolve_states_with(d, DEFAULT_CROSSING_LIMIT)
}

/// Full state enumeration with an explicit crossing cap (the state count is
/// `2^crossings`). Larger inputs distribute states across threads; the
/// accumulation is associative and commutative, so chunk order cannot change
/// the sum.
pub fn resolve_states_with(d: &SliceDiagram, limit: usize) -> Result<StateSum, DiagramError> {
    d.validate()?;
    let crossings = d.crossing_count();
    if crossings > limit {
        return Err(DiagramError::CrossingLimitExceeded { crossings, limit });
    }
    let states = 1u64 << crossings;
    if crossings >= 10 {
        let sum = (0..states)
            .into_par_iter()
            .fold(StateSum::zero, |mut acc, mask| {
                let (cd, coeff) = state_term(d, mask, crossings as u32);
                acc.add_term(cd, coeff);
                acc
            })
            .reduce(StateSum::zero, |mut a, b| {
                a.add_scaled(&b, &Laurent::one());
                a
            });
        Ok(sum)
    } else {
        let mut sum = StateSum::zero();
        for mask in 0..states {
            let (cd, coeff) = state_term(d, mask, crossings as u32);
            sum.add_term(cd, coeff);
        }
        Ok(sum)
    }
}

/// Resolve by the recursive skein relation instead: expand one crossing at a
/// time into its two smoothings. Must agree with [`resolve_states`] term for
/// term; the pair is the oracle check on the state machinery.
pub fn resolve_recursive(d: &SliceDiagram) -> Result<StateSum, DiagramError> {
    d.validate()?;
    fn go(d: &SliceDiagram) -> StateSum {
        match d.events.iter().position(|e| e.is_crossing()) {
            None => {
                let evs = smooth_events(&d.events, 0);
                let curves = trace(d.base_strands, &evs);
                let (cd, deletions) = assemble(&curves);
                let mut coeff = Laurent::one();
                for _ in 0..deletions {
                    coeff = coeff * Laurent::circle();
                }
                let mut sum = StateSum::zero();
                sum.add_term(cd, coeff);
                sum
            }
            Some(at) => {
                let (d0, dinf) = smooth_at(d, at);
                let mut sum = StateSum::zero();
                sum.add_scaled(&go(&d0), &Laurent::a_pow(1));
                sum.add_scaled(&go(&dinf), &Laurent::a_pow(-1));
                sum
            }
        }
    }
    Ok(go(d))
}

/// The two smoothings of the crossing at `at`, as event-list edits: the
/// A-smoothing first, then the `A^-1`-smoothing.
fn smooth_at(d: &SliceDiagram, at: usize) -> (SliceDiagram, SliceDiagram) {
    let i = match d.events[at] {
        Event::CrossPos(i) | Event::CrossNeg(i) => i,
        _ => unreachable!("smooth_at on a non-crossing"),
    };
    let edit = |mid: &[Event]| {
        let mut events = d.events[..at].to_vec();
        events.extend_from_slice(mid);
        events.extend_from_slice(&d.events[at + 1..]);
        SliceDiagram::new(d.base_strands, events)
    };
    let turnback = edit(&[Event::Cup(i), Event::Cap(i)]);
    let straight = edit(&[]);
    match d.events[at] {
        Event::CrossPos(_) => (turnback, straight),
        _ => (straight, turnback),
    }
}

/// The skein triple at a crossing: `d` with that crossing made positive, its
/// A-smoothing, and its `A^-1`-smoothing, all as event-list edits.
pub fn skein_triple(
    d: &SliceDiagram,
    at: usize,
) -> Result<(SliceDiagram, SliceDiagram, SliceDiagram), DiagramError> {
    let i = match d.events.get(at) {
        Some(Event::CrossPos(i)) | Some(Event::CrossNeg(i)) => *i,
        _ => return Err(DiagramError::NotACrossing { at }),
    };
    let mut plus = d.clone();
    plus.events[at] = Event::CrossPos(i);
    let (d0, dinf) = smooth_at(&plus, at);
    Ok((plus, d0, dinf))
}

/// Interpret a state sum in the word module: essential curves become
/// `x`-generators and each region's circle forest reduces bottom-up to a disk
/// polynomial spliced into the corresponding gap. A circle with net `n` over
/// contents `sum_j c_j l^j` contributes `sum_j c_j P_{n,j}`; disjoint
/// siblings multiply.
pub fn to_gamma(sum: &StateSum) -> ModuleElement {
    fn node_poly(node: &CircleNode) -> LambdaPoly {
        let mut content = LambdaPoly::one();
        for child in &node.children {
            content = &content * &node_poly(child);
        }
        let mut out = LambdaPoly::zero();
        for (deg, c) in content.iter() {
            out = &out + &ppoly_k(node.net, deg).scale(c);
        }
        out
    }

    let mut out = ModuleElement::zero();
    for (cd, coeff) in sum.iter() {
        let k = cd.essential.len();
        let skeleton = GammaWord::from_parts(vec![0; k + 1], cd.essential.clone());
        let mut elem = ModuleElement::from_word(skeleton);
        for (gap, forest) in cd.regions.iter().enumerate() {
            if forest.is_empty() {
                continue;
            }
            let mut poly = LambdaPoly::one();
            for root in forest {
                poly = &poly * &node_poly(root);
            }
            let mut next = ModuleElement::zero();
            for (w, c) in elem.iter() {
                next.add_scaled(&splice(w, gap, &poly), c);
            }
            elem = next;
        }
        out.add_scaled(&elem, coeff);
    }
    out
}

/// Pipeline knobs shared by [`psi_c`] and [`phi_beta`].
#[derive(Clone, Copy, Debug)]
pub struct PipelineOptions {
    pub fuel: u64,
    pub crossing_limit: usize,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions { fuel: reduce::DEFAULT_FUEL, crossing_limit: DEFAULT_CROSSING_LIMIT }
    }
}

/// Full annulus pipeline: resolve states, interpret, reduce onto `Sigma_c`.
pub fn psi_c(d: &SliceDiagram, c: i64) -> Result<ModuleElement, PipelineError> {
    psi_with(d, Space::annulus(c), &PipelineOptions::default())
}

/// Full torus pipeline onto `Sigma'_nu`, `nu = floor(beta/2)`.
pub fn phi_beta(d: &SliceDiagram, beta: i64) -> Result<ModuleElement, PipelineError> {
    psi_with(d, Space::fibered(beta), &PipelineOptions::default())
}

/// The pipeline with an explicit target space and options.
pub fn psi_with(
    d: &SliceDiagram,
    space: Space,
    opts: &PipelineOptions,
) -> Result<ModuleElement, PipelineError> {
    let sum = resolve_states_with(d, opts.crossing_limit)?;
    let elem = to_gamma(&sum);
    let nf = Reducer::with_fuel(space, opts.fuel).reduce(&elem)?;
    Ok(nf)
}

/// Render a word as a crossingless diagram whose pipeline image is
/// `coefficient * w`. Every `l`-factor is drawn as a one-arrow circle, which
/// is why the compensating coefficient is `(-A^-3)` per `l`.
pub fn embed_word(w: &GammaWord) -> (SliceDiagram, Laurent) {
    let k = w.x_count() as u32;
    let mut events = Vec::new();
    let mut lambdas = 0i64;
    for (gap, &run) in w.lambda().iter().enumerate() {
        for _ in 0..run {
            let at = gap as u32 + 1;
            events.push(Event::Cap(at));
            events.push(Event::Arrow(at, 1));
            events.push(Event::Cup(at));
            lambdas += 1;
        }
    }
    for (j, &m) in w.xs().iter().enumerate() {
        let sign = if m >= 0 { 1 } else { -1 };
        for _ in 0..m.unsigned_abs() {
            events.push(Event::Arrow(j as u32 + 1, sign));
        }
    }
    let coeff = Laurent::monomial(if lambdas % 2 == 0 { 1 } else { -1 }, -3 * lambdas);
    (SliceDiagram::new(k, events), coeff)
}

// ---------------------------------------------------------------------------
// moves

/// Local moves that preserve the skein class. Insertion-style moves toggle:
/// applying the same move at the image site undoes the insertion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    /// Insert (or remove) a pair of opposite kinks on the strand at `pos`.
    FramedKinkPair { at: usize, pos: u32 },
    /// Insert (or remove) a canceling crossing pair at `pos`.
    R2 { at: usize, pos: u32 },
    /// Slide the triple of same-sign crossings starting at `at` across the
    /// middle strand (the braid relation).
    R3 { at: usize },
    /// Insert (or remove) an adjacent pair of opposite arrows at `pos`.
    ArrowCancel { at: usize, pos: u32, sign: i8 },
    /// Slide the arrow adjacent to event `at` over a birth or death extremum
    /// on its own arc, which flips the recorded sign.
    ArrowSlide { at: usize },
    /// Swap the two adjacent events at `at` when their supports are disjoint.
    EventCommute { at: usize },
}

fn not_applicable(reason: impl Into<String>) -> DiagramError {
    DiagramError::MoveNotApplicable(reason.into())
}

/// Apply a move; the result represents the same skein class.
pub fn apply_move(d: &SliceDiagram, mv: Move) -> Result<SliceDiagram, DiagramError> {
    let mut out = d.clone();
    match mv {
        Move::FramedKinkPair { at, pos } => {
            let kink = kink_pair_events(pos);
            if at <= out.events.len() && out.events[at..].starts_with(&kink) {
                out.events.drain(at..at + kink.len());
            } else {
                if at > out.events.len() || pos == 0 || pos > out.strands_before(at) {
                    return Err(not_applicable("no strand at the kink site"));
                }
                out.events.splice(at..at, kink);
            }
        }
        Move::R2 { at, pos } => {
            let inverse_pair = |a: &Event, b: &Event| {
                matches!((a, b),
                    (Event::CrossPos(i), Event::CrossNeg(j)) if *i == pos && *j == pos)
                    || matches!((a, b),
                    (Event::CrossNeg(i), Event::CrossPos(j)) if *i == pos && *j == pos)
            };
            if at + 1 < out.events.len() && inverse_pair(&out.events[at], &out.events[at + 1]) {
                out.events.drain(at..at + 2);
            } else {
                if at > out.events.len() || pos == 0 || pos + 1 > out.strands_before(at) {
                    return Err(not_applicable("no adjacent strand pair at the R2 site"));
                }
                out.events
                    .splice(at..at, [Event::CrossPos(pos), Event::CrossNeg(pos)]);
            }
        }
        Move::R3 { at } => {
            if at + 3 > out.events.len() {
                return Err(not_applicable("R3 needs three events"));
            }
            let window = [out.events[at], out.events[at + 1], out.events[at + 2]];
            let swapped = match window {
                [Event::CrossPos(a), Event::CrossPos(b), Event::CrossPos(c)]
                    if a == c && (b == a + 1 || a == b + 1) =>
                {
                    [Event::CrossPos(b), Event::CrossPos(a), Event::CrossPos(b)]
                }
                [Event::CrossNeg(a), Event::CrossNeg(b), Event::CrossNeg(c)]
                    if a == c && (b == a + 1 || a == b + 1) =>
                {
                    [Event::CrossNeg(b), Event::CrossNeg(a), Event::CrossNeg(b)]
                }
                _ => return Err(not_applicable("events do not form a braid triple")),
            };
            out.events[at..at + 3].copy_from_slice(&swapped);
        }
        Move::ArrowCancel { at, pos, sign } => {
            let cancels = |a: &Event, b: &Event| {
                matches!((a, b), (Event::Arrow(i, s), Event::Arrow(j, t))
                    if *i == pos && *j == pos && *s == -*t)
            };
            if at + 1 < out.events.len() && cancels(&out.events[at], &out.events[at + 1]) {
                out.events.drain(at..at + 2);
            } else {
                if at > out.events.len() || pos == 0 || pos > out.strands_before(at) || sign == 0 {
                    return Err(not_applicable("no strand at the arrow site"));
                }
                out.events
                    .splice(at..at, [Event::Arrow(pos, sign), Event::Arrow(pos, -sign)]);
            }
        }
        Move::ArrowSlide { at } => {
            if at + 1 >= out.events.len() {
                return Err(not_applicable("nothing to slide across"));
            }
            let (a, b) = (out.events[at], out.events[at + 1]);
            let (na, nb) = slide_pair(a, b)
                .ok_or_else(|| not_applicable("the arrow does not meet the neighboring event"))?;
            out.events[at] = na;
            out.events[at + 1] = nb;
        }
        Move::EventCommute { at } => {
            if at + 1 >= out.events.len() {
                return Err(not_applicable("nothing to commute with"));
            }
            let (e1, e2) = (out.events[at], out.events[at + 1]);
            let (n1, n2) =
                commute_pair(e1, e2).ok_or_else(|| not_applicable("events are not disjoint"))?;
            out.events[at] = n1;
            out.events[at + 1] = n2;
        }
    }
    out.validate()
        .map_err(|e| not_applicable(format!("result invalid: {e}")))?;
    Ok(out)
}

fn kink_pair_events(pos: u32) -> Vec<Event> {
    vec![
        Event::Cap(pos),
        Event::CrossPos(pos),
        Event::Cup(pos + 1),
        Event::Cap(pos),
        Event::CrossNeg(pos),
        Event::Cup(pos + 1),
    ]
}

/// Slide an arrow over a neighboring birth or death extremum on its own arc,
/// flipping the recorded sign with the traversal direction. Arcs end at
/// crossings, so an arrow never slides through one; that interaction is
/// covered by word-level identities, not by a diagram move.
fn slide_pair(a: Event, b: Event) -> Option<(Event, Event)> {
    let other_leg = |i: u32, p: u32| if p == i { i + 1 } else { i };
    match (a, b) {
        (Event::Cap(i), Event::Arrow(p, s)) if p == i || p == i + 1 => {
            Some((a, Event::Arrow(other_leg(i, p), -s)))
        }
        (Event::Arrow(p, s), Event::Cup(i)) if p == i || p == i + 1 => {
            Some((Event::Arrow(other_leg(i, p), -s), b))
        }
        _ => None,
    }
}

/// Positions a strand-level event touches, in its own interval's numbering.
fn footprint(e: Event) -> Vec<u32> {
    match e {
        Event::Cap(_) => vec![],
        Event::Cup(i) | Event::CrossPos(i) | Event::CrossNeg(i) => vec![i, i + 1],
        Event::Arrow(i, _) => vec![i],
    }
}

/// Re-express `e2` (given after `e1`) in the coordinates before `e1`.
/// `None` when `e2` touches strands `e1` creates, or the pair interacts.
fn unshift_through(e1: Event, e2: Event) -> Option<Event> {
    let map_pos = |p: u32| -> Option<u32> {
        match e1 {
            Event::Cap(j) => {
                if p < j {
                    Some(p)
                } else if p <= j + 1 {
                    None
                } else {
                    Some(p - 2)
                }
            }
            Event::Cup(j) => Some(if p < j { p } else { p + 2 }),
            _ => Some(p),
        }
    };
    if matches!(
        e1,
        Event::Arrow(..) | Event::CrossPos(_) | Event::CrossNeg(_)
    ) {
        let f1 = footprint(e1);
        let f2 = footprint(e2);
        if f2.iter().any(|p| f1.contains(p)) {
            return None;
        }
        // a cap landing between a crossing's strands does not commute
        if let (Event::CrossPos(a) | Event::CrossNeg(a), Event::Cap(j)) = (e1, e2) {
            if j == a + 1 {
                return None;
            }
        }
    }
    remap(e2, map_pos)
}

/// Re-express `e1` in the coordinates after `e2_first`.
fn shift_through(e2_first: Event, e1: Event) -> Option<Event> {
    let map_pos = |p: u32| -> Option<u32> {
        match e2_first {
            Event::Cap(j) => Some(if p >= j { p + 2 } else { p }),
            Event::Cup(j) => {
                if p < j {
                    Some(p)
                } else if p <= j + 1 {
                    None
                } else {
                    Some(p - 2)
                }
            }
            _ => Some(p),
        }
    };
    remap(e1, map_pos)
}

/// Translate an event through a position map. Strand pairs (cup, crossing)
/// translate both legs, so straddling a created or deleted pair fails rather
/// than silently shifting one leg.
fn remap(e: Event, map_pos: impl Fn(u32) -> Option<u32>) -> Option<Event> {
    Some(match e {
        Event::Cap(i) => Event::Cap(map_pos(i)?),
        Event::Cup(i) => {
            let (a, b) = (map_pos(i)?, map_pos(i + 1)?);
            debug_assert_eq!(b, a + 1);
            Event::Cup(a)
        }
        Event::CrossPos(i) => {
            let (a, b) = (map_pos(i)?, map_pos(i + 1)?);
            debug_assert_eq!(b, a + 1);
            Event::CrossPos(a)
        }
        Event::CrossNeg(i) => {
            let (a, b) = (map_pos(i)?, map_pos(i + 1)?);
            debug_assert_eq!(b, a + 1);
            Event::CrossNeg(a)
        }
        Event::Arrow(i, s) => Event::Arrow(map_pos(i)?, s),
    })
}

fn commute_pair(e1: Event, e2: Event) -> Option<(Event, Event)> {
    let e2_first = unshift_through(e1, e2)?;
    let e1_second = shift_through(e2_first, e1)?;
    Some((e2_first, e1_second))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(text: &str) -> Laurent {
        Laurent::parse(text).unwrap()
    }

    fn essential_only(nets: &[i64]) -> CrosslessDiagram {
        CrosslessDiagram {
            essential: nets.to_vec(),
            regions: vec![Vec::new(); nets.len() + 1],
        }
    }

    #[test]
    fn validate_examples() {
        assert!(SliceDiagram::new(1, vec![]).validate().is_ok());
        assert!(SliceDiagram::new(0, vec![Event::Cap(1), Event::Cup(1)]).validate().is_ok());
        let err = SliceDiagram::new(1, vec![Event::Cup(1)]).validate().unwrap_err();
        assert!(matches!(err, DiagramError::StrandCountMismatch { .. }));
        let err = SliceDiagram::new(1, vec![Event::Arrow(2, 1)]).validate().unwrap_err();
        assert!(matches!(err, DiagramError::EventOutOfRange { at: 0 }));
        let err = SliceDiagram::new(2, vec![Event::Cup(1)]).validate().unwrap_err();
        assert!(matches!(err, DiagramError::StrandCountMismatch { at: None, .. }));
    }

    #[test]
    fn one_arrow_circle_resolves_to_net_one() {
        let d = SliceDiagram::new(0, vec![Event::Cap(1), Event::Arrow(1, 1), Event::Cup(1)]);
        let sum = resolve_states(&d).unwrap();
        assert_eq!(sum.len(), 1);
        let (cd, c) = sum.iter().next().unwrap();
        assert!(c.is_one());
        assert_eq!(cd.essential, Vec::<i64>::new());
        assert_eq!(cd.regions, vec![vec![CircleNode { net: 1, children: vec![] }]]);
    }

    #[test]
    fn kink_gives_framing_factor() {
        let d = SliceDiagram::new(1, vec![Event::Cap(1), Event::CrossPos(1), Event::Cup(2)]);
        let sum = resolve_states(&d).unwrap();
        assert_eq!(sum.len(), 1);
        let (cd, c) = sum.iter().next().unwrap();
        assert_eq!(*cd, essential_only(&[0]));
        assert_eq!(*c, lp("-A^3"));
        let d = SliceDiagram::new(1, vec![Event::Cap(1), Event::CrossNeg(1), Event::Cup(2)]);
        let sum = resolve_states(&d).unwrap();
        assert_eq!(*sum.iter().next().unwrap().1, lp("-A^-3"));
    }

    #[test]
    fn opposite_arrows_leave_a_removable_circle() {
        let d = SliceDiagram::new(
            0,
            vec![Event::Cap(1), Event::Arrow(1, 1), Event::Arrow(1, -1), Event::Cup(1)],
        );
        let sum = resolve_states(&d).unwrap();
        assert_eq!(sum.len(), 1);
        let (cd, c) = sum.iter().next().unwrap();
        assert_eq!(*cd, essential_only(&[]));
        assert_eq!(*c, Laurent::circle());
    }

    #[test]
    fn nested_circles_nest() {
        // circle net 0 enclosing a one-arrow circle
        let d = SliceDiagram::new(
            0,
            vec![
                Event::Cap(1),
                Event::Cap(2),
                Event::Arrow(2, 1),
                Event::Cup(2),
                Event::Cup(1),
            ],
        );
        let sum = resolve_states(&d).unwrap();
        let (cd, c) = sum.iter().next().unwrap();
        assert!(c.is_one());
        assert_eq!(
            cd.regions,
            vec![vec![CircleNode {
                net: 0,
                children: vec![CircleNode { net: 1, children: vec![] }],
            }]]
        );
        // interpretation: inner is P_1 = -A^3 l, outer then -A^3 P_{0,1}
        let elem = to_gamma(&sum);
        let expected = splice(&GammaWord::empty(), 0, &ppoly_k(0, 1)).scaled(&lp("-A^3"));
        assert_eq!(elem, expected);
    }

    #[test]
    fn region_assignment_uses_essential_curves() {
        // an arrowed circle inside x(1), and one outside
        let d = SliceDiagram::new(
            1,
            vec![
                Event::Arrow(1, 1),
                Event::Cap(1),
                Event::Arrow(1, 1),
                Event::Cup(1),
                Event::Cap(2),
                Event::Arrow(2, 1),
                Event::Cup(2),
            ],
        );
        let sum = resolve_states(&d).unwrap();
        let (cd, c) = sum.iter().next().unwrap();
        assert!(c.is_one());
        assert_eq!(cd.essential, vec![1]);
        let leaf = CircleNode { net: 1, children: vec![] };
        assert_eq!(cd.regions, vec![vec![leaf.clone()], vec![leaf]]);
    }

    #[test]
    fn to_gamma_basic_examples() {
        let mut sum = StateSum::zero();
        sum.add_term(essential_only(&[0]), Laurent::one());
        assert_eq!(to_gamma(&sum), ModuleElement::from_word(GammaWord::x(0)));

        let mut sum = StateSum::zero();
        sum.add_term(
            CrosslessDiagram {
                essential: vec![],
                regions: vec![vec![CircleNode { net: 1, children: vec![] }]],
            },
            Laurent::one(),
        );
        assert_eq!(
            to_gamma(&sum),
            ModuleElement::term(GammaWord::lambda_power(1), lp("-A^3"))
        );
    }

    #[test]
    fn state_sum_matches_recursion_on_small_examples() {
        let kink = SliceDiagram::new(1, vec![Event::Cap(1), Event::CrossPos(1), Event::Cup(2)]);
        assert_eq!(resolve_states(&kink).unwrap(), resolve_recursive(&kink).unwrap());
        let d = SliceDiagram::new(
            2,
            vec![Event::CrossPos(1), Event::Arrow(1, 1), Event::CrossNeg(1)],
        );
        assert_eq!(resolve_states(&d).unwrap(), resolve_recursive(&d).unwrap());
    }

    #[test]
    fn skein_triple_shapes() {
        let kink = SliceDiagram::new(1, vec![Event::Cap(1), Event::CrossPos(1), Event::Cup(2)]);
        let (dp, d0, dinf) = skein_triple(&kink, 1).unwrap();
        assert_eq!(dp, kink);
        d0.validate().unwrap();
        dinf.validate().unwrap();
        // D_0 keeps the circle, D_inf is the bare strand
        let s0 = resolve_states(&d0).unwrap();
        assert_eq!(*s0.iter().next().unwrap().1, Laurent::circle());
        let sinf = resolve_states(&dinf).unwrap();
        assert!(sinf.iter().next().unwrap().1.is_one());
        assert!(matches!(
            skein_triple(&kink, 0),
            Err(DiagramError::NotACrossing { at: 0 })
        ));
    }

    #[test]
    fn psi_on_embedded_words_is_identity() {
        for c in [-2i64, 0, 3] {
            for w in [
                GammaWord::lambda_power(2),
                GammaWord::x(c),
                GammaWord::from_parts(vec![0, 3, 0], vec![c + 1, c]),
            ] {
                let (d, coeff) = embed_word(&w);
                let nf = psi_c(&d, c).unwrap().scaled(&coeff);
                assert_eq!(nf, ModuleElement::from_word(w.clone()), "w = {w}, c = {c}");
            }
        }
    }

    #[test]
    fn embed_word_examples() {
        let (d, coeff) = embed_word(&GammaWord::x(3));
        assert_eq!(d.base_strands, 1);
        assert_eq!(d.events.len(), 3);
        assert!(coeff.is_one());
        let (_, coeff) = embed_word(&GammaWord::lambda_power(1));
        assert_eq!(coeff, lp("-A^-3"));
        // l^2 x(0): two circles inside an arrowless core curve
        let w = GammaWord::from_parts(vec![2, 0], vec![0]);
        let (d, coeff) = embed_word(&w);
        assert_eq!(coeff, lp("A^-6"));
        assert_eq!(d.base_strands, 1);
    }

    #[test]
    fn phi_on_arrowed_core_matches_handle_slide() {
        for beta in [3i64, 5, 7] {
            let nu = beta / 2;
            let (d, coeff) = embed_word(&GammaWord::x(nu + 1));
            assert!(coeff.is_one());
            let nf = phi_beta(&d, beta).unwrap();
            assert_eq!(nf, ModuleElement::term(GammaWord::x(nu), lp("-A^3")));
        }
    }

    #[test]
    fn kink_pipeline_scales_by_framing() {
        for c in [-2i64, 0, 3] {
            let kink =
                SliceDiagram::new(1, vec![Event::Cap(1), Event::CrossPos(1), Event::Cup(2)]);
            let bare = SliceDiagram::new(1, vec![]);
            let lhs = psi_c(&kink, c).unwrap();
            let rhs = psi_c(&bare, c).unwrap().scaled(&lp("-A^3"));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn crossing_limit_is_enforced() {
        let d = SliceDiagram::new(2, vec![Event::CrossPos(1); 3]);
        assert!(matches!(
            resolve_states_with(&d, 2),
            Err(DiagramError::CrossingLimitExceeded { crossings: 3, limit: 2 })
        ));
    }

    #[test]
    fn r2_insert_then_delete_roundtrips() {
        let d = SliceDiagram::new(2, vec![Event::Arrow(1, 1)]);
        let inserted = apply_move(&d, Move::R2 { at: 0, pos: 1 }).unwrap();
        assert_eq!(inserted.crossing_count(), 2);
        let removed = apply_move(&inserted, Move::R2 { at: 0, pos: 1 }).unwrap();
        assert_eq!(removed, d);
    }

    #[test]
    fn arrow_cancel_removes_adjacent_pair() {
        let d = SliceDiagram::new(1, vec![Event::Arrow(1, 1), Event::Arrow(1, -1)]);
        let out = apply_move(&d, Move::ArrowCancel { at: 0, pos: 1, sign: 1 }).unwrap();
        assert!(out.events.is_empty());
    }

    #[test]
    fn kink_pair_is_psi_invariant() {
        let d = SliceDiagram::new(1, vec![Event::Arrow(1, 1)]);
        let kinked = apply_move(&d, Move::FramedKinkPair { at: 1, pos: 1 }).unwrap();
        for c in [-1i64, 2] {
            assert_eq!(psi_c(&d, c).unwrap(), psi_c(&kinked, c).unwrap());
        }
        let back = apply_move(&kinked, Move::FramedKinkPair { at: 1, pos: 1 }).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn commute_handles_renumbering() {
        // [cap 1, arrow 4] over base 2 = [arrow 2, cap 1]
        let d = SliceDiagram::new(2, vec![Event::Cap(1), Event::Arrow(4, 1), Event::Cup(1)]);
        let out = apply_move(&d, Move::EventCommute { at: 0 }).unwrap();
        assert_eq!(out.events[0], Event::Arrow(2, 1));
        assert_eq!(out.events[1], Event::Cap(1));
        for c in [0i64, 3] {
            assert_eq!(psi_c(&d, c).unwrap(), psi_c(&out, c).unwrap());
        }
    }

    #[test]
    fn commute_rejects_interacting_pairs() {
        // crossing uses the cap's strands
        let d = SliceDiagram::new(0, vec![Event::Cap(1), Event::CrossPos(1), Event::Cup(1)]);
        assert!(apply_move(&d, Move::EventCommute { at: 0 }).is_err());
        // cup straddling a cap leg
        let d = SliceDiagram::new(
            2,
            vec![Event::Cap(2), Event::Cup(1), Event::Cap(1), Event::Cup(2)],
        );
        assert!(apply_move(&d, Move::EventCommute { at: 0 }).is_err());
    }

    #[test]
    fn arrow_does_not_slide_through_a_crossing() {
        // an arc ends at a crossing; pushing an arrow through is a different
        // relation entirely, so the move must refuse
        let d = SliceDiagram::new(
            2,
            vec![Event::Arrow(1, 1), Event::CrossPos(1), Event::Arrow(2, -1)],
        );
        assert!(apply_move(&d, Move::ArrowSlide { at: 0 }).is_err());
        assert!(apply_move(&d, Move::ArrowSlide { at: 1 }).is_err());
    }

    #[test]
    fn arrow_slide_over_extremum_flips_sign() {
        let d = SliceDiagram::new(0, vec![Event::Cap(1), Event::Arrow(1, 1), Event::Cup(1)]);
        let out = apply_move(&d, Move::ArrowSlide { at: 0 }).unwrap();
        assert_eq!(out.events[1], Event::Arrow(2, -1));
        assert_eq!(resolve_states(&d).unwrap(), resolve_states(&out).unwrap());
    }

    #[test]
    fn r3_toggles_between_braid_words() {
        let d = SliceDiagram::new(
            3,
            vec![Event::CrossPos(1), Event::CrossPos(2), Event::CrossPos(1)],
        );
        let out = apply_move(&d, Move::R3 { at: 0 }).unwrap();
        assert_eq!(
            out.events,
            vec![Event::CrossPos(2), Event::CrossPos(1), Event::CrossPos(2)]
        );
        for c in [0i64, 2] {
            assert_eq!(psi_c(&d, c).unwrap(), psi_c(&out, c).unwrap());
        }
        assert_eq!(apply_move(&out, Move::R3 { at: 0 }).unwrap(), d);
    }

    #[test]
    fn skein_linearity_on_the_kink() {
        let kink = SliceDiagram::new(1, vec![Event::Cap(1), Event::CrossPos(1), Event::Cup(2)]);
        let (dp, d0, dinf) = skein_triple(&kink, 1).unwrap();
        for c in [-2i64, 0, 3] {
            let lhs = psi_c(&dp, c).unwrap();
            let mut rhs = psi_c(&d0, c).unwrap().scaled(&lp("A"));
            rhs.add_scaled(&psi_c(&dinf, c).unwrap(), &lp("A^-1"));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn diagram_format_roundtrip() {
        let d = SliceDiagram::new(
            2,
            vec![
                Event::Cap(2),
                Event::CrossPos(1),
                Event::Arrow(3, -1),
                Event::CrossNeg(2),
                Event::Cup(3),
            ],
        );
        let text = d.to_string();
        assert_eq!(SliceDiagram::parse(&text).unwrap(), d);
        assert!(SliceDiagram::parse("cap 1").is_err());
        assert!(SliceDiagram::parse("strands 1\nzap 3").is_err());
    }

    #[test]
    fn windings_stay_in_range() {
        let d = SliceDiagram::new(
            2,
            vec![Event::CrossPos(1), Event::Cap(2), Event::CrossNeg(2), Event::Cup(1)],
        );
        for mask in 0..4 {
            for w in state_windings(&d, mask).unwrap() {
                assert!(w == 0 || w == 1);
            }
        }
    }
}
