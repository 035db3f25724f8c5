//! A constant-time-updatable view of a bitstring under two operations:
//! dropping the last two logical bits and applying `rev_inv . pi_perm`.
//!
//! The trick is that the composite `rev_inv . pi_perm` acts very simply on a
//! string decomposed as (head bit | interior bit pairs | tail bit): the head
//! and tail swap (complemented) and the pairs reverse their order
//! (complemented, internal order kept). Dropping the last two logical bits
//! removes the tail and splits the last pair, whose first bit becomes the
//! new tail. So the view stores two single-bit references, a window of
//! still-live pairs over the never-mutated base string, and one parity; no
//! bit of the base is ever moved.
//!
//! On top of that the view maintains the counters c0, c1 and, for every
//! interior pair (x_{2i}, x_{2i+1}), one of four height-indexed counter
//! families keyed by the pair's bit values. Those make the lattice-path
//! membership tests O(1): classification reads a constant number of counter
//! entries. Every operation except [`LazyView::new`] is O(1).

use alloc::vec::Vec;
use core::mem;

use crate::bitseq::{BitString, LatticeClass};
use crate::error::{Error, Result};

/// A single bit of the base string plus a pending-complement flag.
#[derive(Clone, Copy, Debug)]
struct BitRef {
    idx: usize,
    comp: bool,
}

impl BitRef {
    fn flipped(self) -> BitRef {
        BitRef {
            idx: self.idx,
            comp: !self.comp,
        }
    }
}

/// One height-indexed counter family. Entry for height level `v` lives at
/// physical slot `v + off`; transforms only rebias `off`, so a live pair
/// stays in the slot it was given by the initial scan. Reads outside the
/// allocated range are 0 by definition.
#[derive(Clone, Debug, Default)]
struct PairCounts {
    counts: Vec<u32>,
    off: i64,
}

impl PairCounts {
    fn get(&self, level: i64) -> u32 {
        let p = level + self.off;
        if p < 0 || p as usize >= self.counts.len() {
            0
        } else {
            self.counts[p as usize]
        }
    }

    fn inc(&mut self, level: i64) {
        let p = (level + self.off) as usize;
        self.counts[p] += 1;
    }

    fn dec(&mut self, level: i64) {
        let p = level + self.off;
        assert!(
            p >= 0 && (p as usize) < self.counts.len() && self.counts[p as usize] > 0,
            "pair counter underflow"
        );
        self.counts[p as usize] -= 1;
    }
}

fn sign(bit: u8) -> i64 {
    if bit == 1 {
        1
    } else {
        -1
    }
}

/// See the module docs. The logical string it represents is recovered by
/// [`LazyView::materialize`]; all queries resolve through the window and
/// parity without touching more than O(1) state.
#[derive(Clone, Debug)]
pub struct LazyView {
    base: Vec<u8>,
    head: BitRef,
    tail: BitRef,
    /// Live window of original pair indices; pair j covers base bits
    /// (2j-1, 2j), 1 <= j <= len/2 - 1.
    blk_lo: usize,
    blk_hi: usize,
    /// Odd number of pending rev_inv applications. Since the two transforms
    /// are only ever applied together, this also tells whether live pairs
    /// read complemented and in reversed order.
    rev_parity: bool,
    /// Odd number of pending pi_perm applications; always equals
    /// `rev_parity` (the view only exposes the composite).
    pi_parity: bool,
    c0: u32,
    c1: u32,
    /// Counter families indexed by pair content b1 * 2 + b2 (current logical
    /// reading).
    pairs: [PairCounts; 4],
    op_count: u64,
}

impl LazyView {
    /// Builds a view whose logical string equals `x`. O(n): one scan
    /// populates all counters. Requires even length >= 2.
    pub fn new(x: &BitString) -> Result<LazyView> {
        let mut v = LazyView {
            base: Vec::new(),
            head: BitRef { idx: 0, comp: false },
            tail: BitRef { idx: 0, comp: false },
            blk_lo: 0,
            blk_hi: 0,
            rev_parity: false,
            pi_parity: false,
            c0: 0,
            c1: 0,
            pairs: Default::default(),
            op_count: 0,
        };
        v.reinit(x.bits())?;
        Ok(v)
    }

    /// Re-initializes in place from raw bits, reusing allocations.
    pub fn reinit(&mut self, bits: &[u8]) -> Result<()> {
        if !bits.len().is_multiple_of(2) || bits.len() < 2 {
            return Err(Error::InvalidArgument("view requires even length >= 2"));
        }
        self.base.clear();
        self.base.extend_from_slice(bits);
        self.rescan();
        Ok(())
    }

    /// Re-initializes from the `rev_inv` image of `bits` without needing the
    /// caller to materialize it.
    pub fn reinit_rev_inv(&mut self, bits: &[u8]) -> Result<()> {
        if !bits.len().is_multiple_of(2) || bits.len() < 2 {
            return Err(Error::InvalidArgument("view requires even length >= 2"));
        }
        self.base.clear();
        self.base.extend(bits.iter().rev().map(|&b| b ^ 1));
        self.rescan();
        Ok(())
    }

    /// One linear scan of `self.base` populating window and counters.
    fn rescan(&mut self) {
        let l = self.base.len();
        let m = l / 2;
        self.head = BitRef { idx: 0, comp: false };
        self.tail = BitRef { idx: l - 1, comp: false };
        self.blk_lo = 1;
        self.blk_hi = m;
        self.rev_parity = false;
        self.pi_parity = false;
        self.c1 = self.base.iter().map(|&b| b as u32).sum();
        self.c0 = l as u32 - self.c1;
        let slots = 2 * l + 2;
        for fam in &mut self.pairs {
            fam.counts.clear();
            fam.counts.resize(slots, 0);
            fam.off = l as i64;
        }
        // level of pair j is the mean of the heights at its odd boundaries
        let mut h_odd = sign(self.base[0]);
        for j in 1..m {
            let b1 = self.base[2 * j - 1];
            let b2 = self.base[2 * j];
            let h_next = h_odd + sign(b1) + sign(b2);
            let level = (h_odd + h_next) / 2;
            self.pairs[(b1 * 2 + b2) as usize].inc(level);
            h_odd = h_next;
        }
        self.op_count += l as u64;
    }

    /// Logical length.
    pub fn len(&self) -> usize {
        2 + 2 * (self.blk_hi - self.blk_lo)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of 1-bits of the logical string.
    pub fn weight(&self) -> usize {
        self.c1 as usize
    }

    /// Final height c1 - c0 of the logical string as a lattice path.
    pub fn end_height(&self) -> i64 {
        self.c1 as i64 - self.c0 as i64
    }

    /// Running count of primitive operations; `new`/`reinit` contribute the
    /// scanned length, every other operation a size-independent constant.
    pub fn op_count(&self) -> u64 {
        self.op_count
    }

    fn resolve(&self, i: usize) -> BitRef {
        let l = self.len();
        debug_assert!(i < l);
        if i == 0 {
            self.head
        } else if i == l - 1 {
            self.tail
        } else {
            let k = (i - 1) / 2;
            let within = (i - 1) % 2;
            let j = if self.rev_parity {
                self.blk_hi - 1 - k
            } else {
                self.blk_lo + k
            };
            BitRef {
                idx: 2 * j - 1 + within,
                comp: self.rev_parity,
            }
        }
    }

    fn bit_unchecked(&self, i: usize) -> u8 {
        let r = self.resolve(i);
        self.base[r.idx] ^ r.comp as u8
    }

    /// Bit `i` of the logical string, O(1).
    pub fn bit(&mut self, i: usize) -> Result<u8> {
        if i >= self.len() {
            return Err(Error::InvalidArgument("logical bit index out of range"));
        }
        self.op_count += 1;
        Ok(self.bit_unchecked(i))
    }

    /// Index into the original base string holding logical bit `i`. Used to
    /// translate a flip position back through the pending transforms.
    pub(crate) fn base_index_of(&self, i: usize) -> usize {
        self.resolve(i).idx
    }

    /// Applies `rev_inv . pi_perm` to the logical string, O(1).
    pub fn apply_revpi(&mut self) {
        self.op_count += 1;
        let h_end = self.end_height();
        mem::swap(&mut self.c0, &mut self.c1);
        self.pairs.swap(0b00, 0b11);
        self.pairs.swap(0b01, 0b10);
        for fam in &mut self.pairs {
            fam.off += h_end;
        }
        let old_head = self.head;
        self.head = self.tail.flipped();
        self.tail = old_head.flipped();
        self.rev_parity = !self.rev_parity;
        self.pi_parity = !self.pi_parity;
    }

    /// Removes the last two logical bits, O(1). Requires length >= 4.
    pub fn drop_last_two(&mut self) -> Result<()> {
        let l = self.len();
        if l < 4 {
            return Err(Error::Underflow("cannot shrink a view below length 2"));
        }
        self.op_count += 1;
        let b_tail = self.bit_unchecked(l - 1);
        let b2 = self.bit_unchecked(l - 2);
        let b1 = self.bit_unchecked(l - 3);
        // heights after l-1 and l-3 bits give the dying pair's level
        let h_end = self.end_height();
        let h1 = h_end - sign(b_tail);
        let h3 = h1 - sign(b2) - sign(b1);
        self.pairs[(b1 * 2 + b2) as usize].dec((h1 + h3) / 2);
        for b in [b2, b_tail] {
            if b == 1 {
                self.c1 -= 1;
            } else {
                self.c0 -= 1;
            }
        }
        self.tail = self.resolve(l - 3);
        if self.rev_parity {
            self.blk_lo += 1;
        } else {
            self.blk_hi -= 1;
        }
        Ok(())
    }

    /// Lattice-path class of the logical string, O(1) from the counters.
    ///
    /// Visits to height -1 happen only at odd positions; every odd position
    /// except the last is the left boundary of exactly one interior pair, so
    /// summing the four families at the boundary-height -1 levels plus a
    /// last-bit check counts them exactly. Touches of height 0 happen only
    /// at even positions, i.e. pair middles, counted the same way.
    pub fn classify(&mut self) -> LatticeClass {
        self.op_count += 1;
        let l = self.len();
        let h_end = self.end_height();
        let last = self.bit_unchecked(l - 1);
        let visits_minus_one = self.pairs[0b01].get(-1)
            + self.pairs[0b10].get(-1)
            + self.pairs[0b00].get(-2)
            + self.pairs[0b11].get(0)
            + u32::from(h_end - sign(last) == -1);
        if visits_minus_one == 0 {
            let touches_zero = h_end == 0
                || self.pairs[0b00].get(0)
                    + self.pairs[0b11].get(0)
                    + self.pairs[0b01].get(1)
                    + self.pairs[0b10].get(-1)
                    > 0;
            if touches_zero {
                LatticeClass::Eq0
            } else {
                LatticeClass::Gt0
            }
        } else if visits_minus_one == 1 {
            LatticeClass::Minus
        } else {
            LatticeClass::None
        }
    }

    /// Resolves window and parities into a plain bitstring, O(n).
    pub fn materialize(&self) -> BitString {
        let mut out = BitString::with_capacity(self.len());
        for i in 0..self.len() {
            out.push(self.bit_unchecked(i));
        }
        out
    }

    /// Heap footprint of this view in bytes (capacities, not lengths).
    pub fn heap_bytes(&self) -> usize {
        self.base.capacity()
            + self
                .pairs
                .iter()
                .map(|f| f.counts.capacity() * mem::size_of::<u32>())
                .sum::<usize>()
    }
}
