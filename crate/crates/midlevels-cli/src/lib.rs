//! Companion crate to `midlevels`: desk-scale brute-force ground truth
//! (graph construction, cycle verification, 2-factor extraction, the
//! auxiliary plane-tree graphs and their spanning-tree check) plus the
//! command-line front end.

pub mod cli;
pub mod oracle;
