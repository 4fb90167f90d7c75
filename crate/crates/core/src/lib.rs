//! Certified constructions on partition polytopes and odd-covers of graphs.
//!
//! Everything here is `no_std` with `alloc`. Constructions return
//! certificates that the caller can re-check with the verifiers in
//! [`perm`] and [`oracles`]; none of them should be trusted unchecked.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod graph;
pub mod oddcover;
pub mod oracles;
pub mod perm;
pub mod polycycle;
pub mod resolve;
