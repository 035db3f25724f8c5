//! Bitstrings, the involutions `rev_inv` and `pi_perm`, and classification
//! of bitstrings viewed as lattice paths (1 = upstep, 0 = downstep).

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// A finite 0/1 sequence. Bits are indexed from 0; the external text form
/// writes bit 0 leftmost.
///
/// The derived `Ord` is elementwise with 0 < 1, which for equal lengths is
/// exactly the lexicographic order used for canonical orbit representatives.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BitString {
    bits: Vec<u8>,
}

/// Which lattice-path family a bitstring falls in.
///
/// With heights h_j after j steps (h_0 = 0):
/// - `Eq0`: never below 0 and some h_j = 0 for j >= 1 (the empty string
///   counts as `Eq0` by convention),
/// - `Gt0`: never below 0 and no h_j = 0 for j >= 1,
/// - `Minus`: exactly one j >= 1 with h_j = -1,
/// - `None`: everything else.
///
/// Membership in the weighted sets additionally fixes the number of
/// upsteps; callers pair `classify` with a weight check.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum LatticeClass {
    Eq0,
    Minus,
    Gt0,
    None,
}

impl BitString {
    pub fn new() -> Self {
        BitString { bits: Vec::new() }
    }

    pub fn with_capacity(cap: usize) -> Self {
        BitString {
            bits: Vec::with_capacity(cap),
        }
    }

    /// Builds from a slice of 0/1 values.
    ///
    /// Panics if a value other than 0 or 1 appears; use `from_str` for
    /// untrusted input.
    pub fn from_bits(bits: &[u8]) -> Self {
        assert!(bits.iter().all(|&b| b <= 1), "bits must be 0 or 1");
        BitString {
            bits: bits.to_vec(),
        }
    }

    /// The string 1^ones 0^zeros.
    pub fn ones_then_zeros(ones: usize, zeros: usize) -> Self {
        let mut bits = Vec::with_capacity(ones + zeros);
        bits.resize(ones, 1);
        bits.resize(ones + zeros, 0);
        BitString { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bit(&self, i: usize) -> u8 {
        self.bits[i]
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// Number of 1-bits.
    pub fn weight(&self) -> usize {
        self.bits.iter().map(|&b| b as usize).sum()
    }

    pub fn push(&mut self, bit: u8) {
        debug_assert!(bit <= 1);
        self.bits.push(bit);
    }

    pub fn set_bit(&mut self, i: usize, bit: u8) {
        debug_assert!(bit <= 1);
        self.bits[i] = bit;
    }

    pub fn flip_bit(&mut self, i: usize) {
        self.bits[i] ^= 1;
    }

    /// Concatenation.
    pub fn concat(&self, other: &BitString) -> BitString {
        let mut bits = Vec::with_capacity(self.len() + other.len());
        bits.extend_from_slice(&self.bits);
        bits.extend_from_slice(&other.bits);
        BitString { bits }
    }

    pub fn prefix(&self, len: usize) -> BitString {
        BitString {
            bits: self.bits[..len].to_vec(),
        }
    }

    /// Reverses the bit order and inverts every bit. Self-inverse.
    pub fn rev_inv(&self) -> BitString {
        let bits = self.bits.iter().rev().map(|&b| b ^ 1).collect();
        BitString { bits }
    }

    /// Swaps all adjacent interior bit pairs: with 1-based bits x_1..x_{2n},
    /// the result is (x_1, x_3, x_2, x_5, x_4, ..., x_{2n-1}, x_{2n-2},
    /// x_{2n}). Self-inverse; commutes with `rev_inv`. Requires even length.
    pub fn pi_perm(&self) -> Result<BitString> {
        if !self.len().is_multiple_of(2) {
            return Err(Error::InvalidArgument("pi_perm requires even length"));
        }
        let mut bits = self.bits.clone();
        pi_perm_in_place(&mut bits);
        Ok(BitString { bits })
    }

    /// Lattice-path classification; see [`LatticeClass`].
    pub fn classify(&self) -> LatticeClass {
        classify_bits(&self.bits)
    }

    /// Final height c1 - c0 of the lattice path.
    pub fn end_height(&self) -> i64 {
        2 * self.weight() as i64 - self.len() as i64
    }

    /// True iff this is a Dyck word: balanced and never below 0.
    pub fn is_dyck(&self) -> bool {
        self.len().is_multiple_of(2)
            && 2 * self.weight() == self.len()
            && self.classify() == LatticeClass::Eq0
    }
}

/// In-place `pi_perm` on a raw bit slice (length must be even).
pub(crate) fn pi_perm_in_place(bits: &mut [u8]) {
    debug_assert!(bits.len().is_multiple_of(2));
    let mut i = 1;
    while i + 2 < bits.len() {
        bits.swap(i, i + 1);
        i += 2;
    }
}

/// `classify` on a raw bit slice.
pub fn classify_bits(bits: &[u8]) -> LatticeClass {
    if bits.is_empty() {
        return LatticeClass::Eq0;
    }
    let mut h: i64 = 0;
    let mut min = 0i64;
    let mut visits_minus_one = 0u64;
    let mut touches_zero = false;
    for &b in bits {
        h += if b == 1 { 1 } else { -1 };
        if h == 0 {
            touches_zero = true;
        } else if h == -1 {
            visits_minus_one += 1;
        }
        if h < min {
            min = h;
        }
    }
    if min >= 0 {
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

/// Membership in the weighted family D_len(k) variants: class plus weight.
pub fn in_class(bits: &BitString, class: LatticeClass, weight: usize) -> bool {
    bits.weight() == weight && bits.classify() == class
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::with_capacity(self.len());
        for &b in &self.bits {
            s.push(if b == 1 { '1' } else { '0' });
        }
        f.write_str(&s)
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(0),
                '1' => bits.push(1),
                _ => return Err(Error::InvalidArgument("bitstring may contain only 0 and 1")),
            }
        }
        Ok(BitString { bits })
    }
}
