//! The Hamilton-cycle stepper for the middle levels graph Q_{2n+1}(n,n+1)
//! and a resumable iterator around it.
//!
//! One step looks at the last bit of the current vertex x = x^- b. For
//! b = 0 the stepper follows the path of x^- forward (consulting the flip
//! selection when x^- is a first vertex); at a last vertex it flips b to 1.
//! For b = 1 it walks the mirrored copy of the paths backward via rev_inv;
//! at a first vertex it flips b back to 0. With the canonical flip policy
//! the traversal is a Hamilton cycle; with flips disabled it traces the
//! plain 2-factor, one cycle per plane tree.

use alloc::vec::Vec;

use crate::bitseq::{classify_bits, BitString, LatticeClass};
use crate::error::{Error, Result};
use crate::flipsel;
use crate::lazyview::LazyView;
use crate::paths::{step_fast_core, Direction};

/// Whether the stepper consults the flip selection at first vertices.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FlipPolicy {
    /// Never flip: traces the 2-factor of disjoint cycles.
    Never,
    /// Canonical flip selection: traces the Hamilton cycle.
    Canonical,
}

/// Instrumentation counters for amortization and complexity checks.
#[derive(Clone, Copy, Debug)]
pub struct StepStats {
    pub steps: u64,
    /// Steps that invoked the flip selection.
    pub flip_checks: u64,
    /// Minimum number of cheap steps strictly between two flip checks;
    /// `u64::MAX` until two checks have happened.
    pub min_cheap_gap: u64,
    /// Work units: descent iterations, linear scans and instrumented flip
    /// selection effort.
    pub basic_ops: u64,
    last_check_step: Option<u64>,
}

impl Default for StepStats {
    fn default() -> Self {
        StepStats {
            steps: 0,
            flip_checks: 0,
            min_cheap_gap: u64::MAX,
            basic_ops: 0,
            last_check_step: None,
        }
    }
}

fn validate_vertex(n: usize, x: &BitString) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidArgument("n must be at least 1"));
    }
    if x.len() != 2 * n + 1 {
        return Err(Error::InvalidArgument("vertex must have length 2n+1"));
    }
    let w = x.weight();
    if w != n && w != n + 1 {
        return Err(Error::InvalidArgument("vertex weight must be n or n+1"));
    }
    Ok(())
}

/// One stepper move on `cur`, in place. Returns the index of the changed
/// bit. `ws` is scratch reused across calls.
fn step_in_place(
    n: usize,
    cur: &mut BitString,
    flip: &mut bool,
    policy: FlipPolicy,
    ws: &mut LazyView,
    stats: &mut StepStats,
) -> Result<usize> {
    let l = 2 * n;
    let last = cur.bit(l);
    let prefix_weight: usize = cur.bits()[..l].iter().map(|&b| b as usize).sum();
    let cls = classify_bits(&cur.bits()[..l]);
    stats.basic_ops += l as u64;
    let changed;
    if last == 0 {
        if cls == LatticeClass::Eq0 && prefix_weight == n {
            // first vertex of a path: (re)decide the flip state
            let state = match policy {
                FlipPolicy::Never => false,
                FlipPolicy::Canonical => {
                    stats.flip_checks += 1;
                    if let Some(prev) = stats.last_check_step {
                        let gap = stats.steps - prev - 1;
                        if gap < stats.min_cheap_gap {
                            stats.min_cheap_gap = gap;
                        }
                    }
                    stats.last_check_step = Some(stats.steps);
                    let first = cur.prefix(l);
                    flipsel::is_flip_vertex_counted(n, &first, &mut stats.basic_ops)?
                }
            };
            ws.reinit(&cur.bits()[..l])?;
            stats.basic_ops += l as u64;
            let idx = step_fast_core(ws, n, n, Direction::Next, state, &mut stats.basic_ops)?;
            cur.flip_bit(idx);
            *flip = state;
            changed = idx;
        } else if cls == LatticeClass::Minus && prefix_weight == n {
            // last vertex of a path: cross to the mirrored copy
            cur.set_bit(l, 1);
            *flip = false;
            changed = l;
        } else {
            ws.reinit(&cur.bits()[..l])?;
            stats.basic_ops += l as u64;
            let idx = step_fast_core(ws, n, n, Direction::Next, *flip, &mut stats.basic_ops)?;
            cur.flip_bit(idx);
            changed = idx;
        }
    } else if cls == LatticeClass::Eq0 && prefix_weight == n {
        // first vertex seen from the mirrored side: cross back
        cur.set_bit(l, 0);
        *flip = false;
        changed = l;
    } else {
        // walk the rev_inv image of the paths backward; a flip of bit i
        // there is a flip of bit l-1-i here
        ws.reinit_rev_inv(&cur.bits()[..l])?;
        stats.basic_ops += l as u64;
        let idx = step_fast_core(ws, n, n, Direction::Prev, false, &mut stats.basic_ops)?;
        cur.flip_bit(l - 1 - idx);
        *flip = false;
        changed = l - 1 - idx;
    }
    stats.steps += 1;
    Ok(changed)
}

/// Initial flip state for a walk starting at `x`: walk the path of x^-
/// backward to its first vertex and ask the flip selection there. At most
/// 4n-2 backward steps.
fn initial_flip(
    n: usize,
    x: &BitString,
    policy: FlipPolicy,
    ws: &mut LazyView,
    ops: &mut u64,
) -> Result<bool> {
    if x.bit(2 * n) != 0 || policy == FlipPolicy::Never {
        return Ok(false);
    }
    let mut y = x.prefix(2 * n);
    let mut walked = 0usize;
    while !(classify_bits(y.bits()) == LatticeClass::Eq0 && y.weight() == n) {
        ws.reinit(y.bits())?;
        let idx = step_fast_core(ws, n, n, Direction::Prev, false, ops)?;
        y.flip_bit(idx);
        walked += 1;
        if walked > 4 * n {
            return Err(Error::Domain("backward walk failed to reach a first vertex"));
        }
    }
    flipsel::is_flip_vertex_counted(n, &y, ops)
}

/// Resumable generator state: k calls of [`CycleIterator::advance`] followed
/// by l-k more produce the same stream as l calls.
#[derive(Clone, Debug)]
pub struct CycleIterator {
    n: usize,
    current: BitString,
    flip: bool,
    policy: FlipPolicy,
    ws: LazyView,
    stats: StepStats,
    last_changed: Option<usize>,
}

impl CycleIterator {
    /// Starts a canonical Hamilton-cycle walk at `x`; costs O(n^2) once for
    /// the backward initialization walk.
    pub fn new(n: usize, x: &BitString) -> Result<CycleIterator> {
        CycleIterator::with_policy(n, x, FlipPolicy::Canonical)
    }

    pub fn with_policy(n: usize, x: &BitString, policy: FlipPolicy) -> Result<CycleIterator> {
        validate_vertex(n, x)?;
        let mut stats = StepStats::default();
        let mut ws = LazyView::new(&x.prefix(2 * n))?;
        let flip = initial_flip(n, x, policy, &mut ws, &mut stats.basic_ops)?;
        Ok(CycleIterator {
            n,
            current: x.clone(),
            flip,
            policy,
            ws,
            stats,
            last_changed: None,
        })
    }

    /// One step along the cycle; returns the new current vertex.
    pub fn advance(&mut self) -> Result<&BitString> {
        let changed = step_in_place(
            self.n,
            &mut self.current,
            &mut self.flip,
            self.policy,
            &mut self.ws,
            &mut self.stats,
        )?;
        self.last_changed = Some(changed);
        Ok(&self.current)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn current(&self) -> &BitString {
        &self.current
    }

    pub fn flip_state(&self) -> bool {
        self.flip
    }

    /// Index of the bit changed by the latest step.
    pub fn last_changed_bit(&self) -> Option<usize> {
        self.last_changed
    }

    pub fn stats(&self) -> &StepStats {
        self.stats_ref()
    }

    fn stats_ref(&self) -> &StepStats {
        &self.stats
    }

    /// Persistent heap footprint of the generator state.
    pub fn heap_bytes(&self) -> usize {
        self.current.bits().len() + self.ws.heap_bytes()
    }
}

impl Iterator for CycleIterator {
    type Item = BitString;

    fn next(&mut self) -> Option<BitString> {
        Some(
            self.advance()
                .expect("stepper invariants hold after validation")
                .clone(),
        )
    }
}

/// One Hamilton-cycle step: the successor of `x` and the updated flip
/// state. The two differ in exactly one bit and the weight alternates
/// between n and n+1.
pub fn ham_cycle_flip(n: usize, x: &BitString, flip: bool) -> Result<(BitString, bool)> {
    ham_cycle_flip_with_policy(n, x, flip, FlipPolicy::Canonical)
}

pub fn ham_cycle_flip_with_policy(
    n: usize,
    x: &BitString,
    flip: bool,
    policy: FlipPolicy,
) -> Result<(BitString, bool)> {
    validate_vertex(n, x)?;
    let mut cur = x.clone();
    let mut state = flip;
    let mut ws = LazyView::new(&x.prefix(2 * n))?;
    let mut stats = StepStats::default();
    step_in_place(n, &mut cur, &mut state, policy, &mut ws, &mut stats)?;
    Ok((cur, state))
}

/// The `count` successors of `x` on the Hamilton cycle. For
/// count = N = 2 C(2n+1, n) the output visits every vertex exactly once
/// and ends at `x`. Time O(n^2 + n count), space O(n) plus the output.
pub fn ham_cycle(n: usize, x: &BitString, count: usize) -> Result<Vec<BitString>> {
    if count < 1 {
        return Err(Error::InvalidArgument("count must be at least 1"));
    }
    let mut it = CycleIterator::new(n, x)?;
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push(it.advance()?.clone());
    }
    Ok(out)
}
