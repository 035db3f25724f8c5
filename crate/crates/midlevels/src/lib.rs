//! Middle levels Gray codes: cyclic listings of all bitstrings of length
//! 2n+1 with weight n or n+1 in which consecutive strings differ in exactly
//! one bit. Equivalently, Hamilton cycles in the middle levels graph
//! Q_{2n+1}(n,n+1).
//!
//! The generator produces the next vertex in amortized O(n) time using O(n)
//! space. The crate is `no_std` (it only needs `alloc`); all IO lives in the
//! companion CLI crate.
//!
//! The layers, bottom to top:
//!
//! - [`bitseq`]: bitstrings, the involutions `rev_inv` and `pi_perm`, and
//!   lattice-path classification.
//! - [`lazyview`]: a constant-time-updatable view of a bitstring under
//!   "drop last two bits" and "apply rev_inv after pi_perm".
//! - [`paths`]: the recursive neighbor oracle for the path sets that
//!   partition Q_{2n}(n,n+1).
//! - [`trees`]: ordered rooted trees as Dyck words, rotation, the local
//!   rewrites `tau1`/`tau2`, and the bijection `h`.
//! - [`flipsel`]: the selection predicates deciding which path pairs get
//!   flipped so the 2-factor becomes a single Hamilton cycle.
//! - [`hamcycle`]: the cycle stepper and a resumable iterator.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bitseq;
pub mod error;
pub mod flipsel;
pub mod hamcycle;
pub mod lazyview;
pub mod paths;
pub mod trees;

pub use bitseq::{BitString, LatticeClass};
pub use error::{Error, Result};
pub use hamcycle::{ham_cycle, ham_cycle_flip, CycleIterator, FlipPolicy};
pub use lazyview::LazyView;
pub use paths::{path_from_first, paths_step, paths_step_fast, Direction, PathQuery};
pub use trees::{PlaneTreeKey, RootedTree, TauClass};
