//! The recursive neighbor oracle defining the oriented path sets that
//! partition Q_{2n}(n,n+1).
//!
//! For a vertex x of Q_{2n}(k,k+1), `paths_step` returns the neighbor of x
//! on the path containing x, towards the path's first vertex (`Prev`) or
//! last vertex (`Next`). With `flip = false` the paths have first vertices
//! D_{2n}^{=0}(k) and last vertices D_{2n}^-(k); for k = n they are disjoint
//! and cover every vertex. With `flip = true` the paired paths visit the
//! same vertices but connect the end vertices the other way, which is what
//! lets the cycle stepper merge cycles.
//!
//! Two implementations are kept permanently: a literal recursive reference
//! (O(n^2) per call) and an O(n) iterative descent over a [`LazyView`]. The
//! reference is the oracle the fast path is tested against.

use alloc::vec;
use alloc::vec::Vec;

use crate::bitseq::{BitString, LatticeClass};
use crate::error::{Error, Result};
use crate::lazyview::LazyView;

/// Search direction along an oriented path.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Direction {
    Prev,
    Next,
}

impl Direction {
    pub fn opposite(self) -> Direction {
        match self {
            Direction::Prev => Direction::Next,
            Direction::Next => Direction::Prev,
        }
    }
}

/// One neighbor query: a vertex of Q_{2n}(k,k+1) with n <= k <= 2n-1.
#[derive(Clone, Debug)]
pub struct PathQuery {
    pub n: usize,
    pub k: usize,
    pub x: BitString,
    pub dir: Direction,
    pub flip: bool,
}

impl PathQuery {
    pub fn new(n: usize, k: usize, x: BitString, dir: Direction, flip: bool) -> Self {
        PathQuery { n, k, x, dir, flip }
    }
}

const ERR_FIRST: Error = Error::Domain("previous neighbor undefined at a first path vertex");
const ERR_LAST: Error = Error::Domain("next neighbor undefined at a last path vertex");
const ERR_OFF_PATH: Error = Error::Domain("query does not lie on any path");

fn validate(q: &PathQuery) -> Result<()> {
    if q.n < 1 || q.k < q.n || q.k >= 2 * q.n {
        return Err(Error::InvalidArgument("need 1 <= n <= k <= 2n-1"));
    }
    if q.x.len() != 2 * q.n {
        return Err(Error::InvalidArgument("vertex must have length 2n"));
    }
    let w = q.x.weight();
    if w != q.k && w != q.k + 1 {
        return Err(Error::InvalidArgument("vertex weight must be k or k+1"));
    }
    let cls = q.x.classify();
    if q.dir == Direction::Prev && cls == LatticeClass::Eq0 && w == q.k {
        return Err(ERR_FIRST);
    }
    if q.dir == Direction::Next && cls == LatticeClass::Minus && w == q.k {
        return Err(ERR_LAST);
    }
    Ok(())
}

/// Base path ((1,0),(1,1),(0,1)) in Q_2(1,2): returns the bit to flip.
fn base_step_p2(b0: u8, b1: u8, dir: Direction) -> Result<usize> {
    use Direction::*;
    match (b0, b1, dir) {
        (1, 0, Next) => Ok(1),
        (1, 1, Next) => Ok(0),
        (1, 1, Prev) => Ok(1),
        (0, 1, Prev) => Ok(0),
        (1, 0, Prev) => Err(ERR_FIRST),
        (0, 1, Next) => Err(ERR_LAST),
        _ => Err(ERR_OFF_PATH),
    }
}

/// Flipped base paths in Q_4(2,3):
/// R  = ((1,1,0,0),(1,1,1,0),(0,1,1,0)) and
/// R' = ((1,0,1,0),(1,0,1,1),(0,0,1,1),(0,1,1,1),(0,1,0,1),(1,1,0,1),(1,0,0,1)).
fn base_step_flip4(b: [u8; 4], dir: Direction) -> Result<usize> {
    use Direction::*;
    match (b, dir) {
        ([1, 1, 0, 0], Next) => Ok(2),
        ([1, 1, 0, 0], Prev) => Err(ERR_FIRST),
        ([1, 1, 1, 0], Next) => Ok(0),
        ([1, 1, 1, 0], Prev) => Ok(2),
        ([0, 1, 1, 0], Next) => Err(ERR_LAST),
        ([0, 1, 1, 0], Prev) => Ok(0),
        ([1, 0, 1, 0], Next) => Ok(3),
        ([1, 0, 1, 0], Prev) => Err(ERR_FIRST),
        ([1, 0, 1, 1], Next) => Ok(0),
        ([1, 0, 1, 1], Prev) => Ok(3),
        ([0, 0, 1, 1], Next) => Ok(1),
        ([0, 0, 1, 1], Prev) => Ok(0),
        ([0, 1, 1, 1], Next) => Ok(2),
        ([0, 1, 1, 1], Prev) => Ok(1),
        ([0, 1, 0, 1], Next) => Ok(0),
        ([0, 1, 0, 1], Prev) => Ok(2),
        ([1, 1, 0, 1], Next) => Ok(1),
        ([1, 1, 0, 1], Prev) => Ok(0),
        ([1, 0, 0, 1], Next) => Err(ERR_LAST),
        ([1, 0, 0, 1], Prev) => Ok(1),
        _ => Err(ERR_OFF_PATH),
    }
}

fn in_set(x: &BitString, cls: LatticeClass, weight: usize) -> bool {
    x.weight() == weight && x.classify() == cls
}

/// Literal recursive reference implementation, O(n^2) per call.
fn step_ref(n: usize, k: usize, x: &BitString, dir: Direction, flip: bool) -> Result<BitString> {
    use Direction::*;
    if k < n || k >= 2 * n {
        // reachable only through off-path queries
        return Err(ERR_OFF_PATH);
    }
    if n == 1 {
        let pos = base_step_p2(x.bit(0), x.bit(1), dir)?;
        let mut out = x.clone();
        out.flip_bit(pos);
        return Ok(out);
    }
    if n == 2 && k == 2 && flip {
        let pos = base_step_flip4([x.bit(0), x.bit(1), x.bit(2), x.bit(3)], dir)?;
        let mut out = x.clone();
        out.flip_bit(pos);
        return Ok(out);
    }
    let l = 2 * n;
    let (b1, b2) = (x.bit(l - 2), x.bit(l - 1));
    let xm = x.prefix(l - 2);
    let tail = BitString::from_bits(&[b1, b2]);
    if k > n {
        let inner = step_ref(n - 1, k - (b1 + b2) as usize, &xm, dir, flip)?;
        return Ok(inner.concat(&tail));
    }
    // k == n: act on or below the last two bits
    match (b1, b2) {
        (1, 0) => Ok(step_ref(n - 1, n - 1, &xm, dir, flip)?.concat(&tail)),
        (0, 0) => {
            if in_set(&xm, LatticeClass::Gt0, n) {
                Ok(xm.concat(&BitString::from_bits(&[0, 1])))
            } else {
                Ok(step_ref(n - 1, n, &xm, dir, flip)?.concat(&tail))
            }
        }
        (0, 1) => {
            if in_set(&xm, LatticeClass::Eq0, n - 1)
                || (in_set(&xm, LatticeClass::Minus, n - 1) && dir == Next)
            {
                Ok(xm.concat(&BitString::from_bits(&[1, 1])))
            } else if in_set(&xm, LatticeClass::Gt0, n) && dir == Prev {
                Ok(xm.concat(&BitString::from_bits(&[0, 0])))
            } else {
                // flip is reset here: interior edges of these subpaths are
                // traversed unflipped
                Ok(step_ref(n - 1, n - 1, &xm, dir, false)?.concat(&tail))
            }
        }
        (1, 1) => {
            if (in_set(&xm, LatticeClass::Eq0, n - 1) && dir == Next)
                || (in_set(&xm, LatticeClass::Minus, n - 1) && dir == Prev)
            {
                Ok(xm.concat(&BitString::from_bits(&[0, 1])))
            } else {
                let conj = xm.pi_perm()?.rev_inv();
                let inner = step_ref(n - 1, n - 1, &conj, dir.opposite(), flip)?;
                Ok(inner.pi_perm()?.rev_inv().concat(&tail))
            }
        }
        _ => unreachable!(),
    }
}

/// Iterative descent over a lazy view. Returns the index of the single bit
/// the step flips, resolved to the view's base string. O(n) total: each
/// level costs O(1) and there are at most n levels.
pub(crate) fn step_fast_core(
    v: &mut LazyView,
    n: usize,
    k: usize,
    dir: Direction,
    flip: bool,
    ops: &mut u64,
) -> Result<usize> {
    use Direction::*;
    let mut m = n;
    let mut k = k;
    let mut dir = dir;
    let mut flip = flip;
    loop {
        *ops += 1;
        if k < m || k >= 2 * m {
            return Err(ERR_OFF_PATH);
        }
        if m == 1 {
            let pos = base_step_p2(v.bit(0)?, v.bit(1)?, dir)?;
            return Ok(v.base_index_of(pos));
        }
        if m == 2 && k == 2 && flip {
            let b = [v.bit(0)?, v.bit(1)?, v.bit(2)?, v.bit(3)?];
            let pos = base_step_flip4(b, dir)?;
            return Ok(v.base_index_of(pos));
        }
        let l = 2 * m;
        let b1 = v.bit(l - 2)?;
        let b2 = v.bit(l - 1)?;
        let p1 = v.base_index_of(l - 2);
        let p2 = v.base_index_of(l - 1);
        v.drop_last_two()?;
        if k > m {
            k -= (b1 + b2) as usize;
            m -= 1;
            continue;
        }
        match (b1, b2) {
            (1, 0) => {
                k = m - 1;
                m -= 1;
            }
            (0, 0) => {
                if v.classify() == LatticeClass::Gt0 && v.weight() == m {
                    return Ok(p2);
                }
                k = m;
                m -= 1;
            }
            (0, 1) => {
                let cls = v.classify();
                let w = v.weight();
                if cls == LatticeClass::Eq0 && w == m - 1 {
                    return Ok(p1);
                }
                if cls == LatticeClass::Minus && w == m - 1 && dir == Next {
                    return Ok(p1);
                }
                if cls == LatticeClass::Gt0 && w == m && dir == Prev {
                    return Ok(p2);
                }
                k = m - 1;
                m -= 1;
                flip = false;
            }
            (1, 1) => {
                let cls = v.classify();
                let w = v.weight();
                if cls == LatticeClass::Eq0 && w == m - 1 && dir == Next {
                    return Ok(p1);
                }
                if cls == LatticeClass::Minus && w == m - 1 && dir == Prev {
                    return Ok(p1);
                }
                v.apply_revpi();
                dir = dir.opposite();
                k = m - 1;
                m -= 1;
            }
            _ => unreachable!(),
        }
    }
}

/// Reference implementation of the neighbor oracle.
///
/// Errors with a domain error when `dir` points off the end of the path
/// (`Prev` at a first vertex, `Next` at a last vertex) and for queries that
/// lie on no path; the cycle-level callers never issue such queries.
pub fn paths_step(q: &PathQuery) -> Result<BitString> {
    validate(q)?;
    step_ref(q.n, q.k, &q.x, q.dir, q.flip)
}

/// Production implementation; identical output to [`paths_step`] in O(n)
/// time per call.
pub fn paths_step_fast(q: &PathQuery) -> Result<BitString> {
    paths_step_fast_counted(q, &mut 0)
}

/// As [`paths_step_fast`], accumulating a work measure (view scan plus
/// descent operations) into `ops`.
pub fn paths_step_fast_counted(q: &PathQuery, ops: &mut u64) -> Result<BitString> {
    validate(q)?;
    let mut v = LazyView::new(&q.x)?;
    let idx = step_fast_core(&mut v, q.n, q.k, q.dir, q.flip, ops)?;
    *ops += v.op_count();
    let mut out = q.x.clone();
    out.flip_bit(idx);
    Ok(out)
}

/// The full oriented path starting at `x0` in D_{2n}^{=0}(n), walked with
/// `Next` until its last vertex in D_{2n}^-(n). The edge count is
/// 2|x_l| + 2 <= 4n - 2, where x0 = (1) x_l (0) x_r splits at the first
/// return to height 0.
pub fn path_from_first(n: usize, x0: &BitString, flip: bool) -> Result<Vec<BitString>> {
    if n < 1 || x0.len() != 2 * n || !in_set(x0, LatticeClass::Eq0, n) {
        return Err(Error::InvalidArgument(
            "path start must lie in D_{2n}^{=0}(n)",
        ));
    }
    let mut cur = x0.clone();
    let mut out = vec![cur.clone()];
    let mut ops = 0;
    for _ in 0..4 * n {
        let mut v = LazyView::new(&cur)?;
        let idx = step_fast_core(&mut v, n, n, Direction::Next, flip, &mut ops)?;
        cur.flip_bit(idx);
        out.push(cur.clone());
        if in_set(&cur, LatticeClass::Minus, n) {
            return Ok(out);
        }
    }
    Err(Error::Domain("path walk failed to reach a last vertex"))
}
