//! Exact permutation-group and incidence-structure machinery for building
//! 1-designs from finite simple groups.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, reports and
//! the command-line front end live in the `designforge` companion crate.
//!
//! Layout:
//! - [`perm`], [`group`], [`action`]: permutations, base and strong
//!   generating sets, orbits, stabilizers, centralizers and classes.
//! - [`gf`]: arithmetic in GF(p^k).
//! - [`atlas`]: concrete groups (alternating, symmetric, PSL(2,q) on the
//!   projective line, PGL(2,q) inside PSL(2,q^2), stabilizers, normalizers).
//! - [`design`]: incidence structures, t-design tallies, duals, reductions.
//! - [`construct`]: the stabilizer-orbit and conjugacy-class constructions.
//! - [`aut`]: design automorphism groups, lift tests, quotient checks.
//! - [`cases`]: end-to-end verifiers for the Mathieu, PSL(2,q^2) and
//!   small alternating-group case studies.

#![no_std]

extern crate alloc;

pub mod action;
pub mod atlas;
pub mod aut;
pub mod cases;
pub mod construct;
pub mod design;
pub mod error;
pub mod gf;
pub mod group;
pub mod perm;
pub mod util;

pub use error::{Error, Result};
pub use group::PermGroup;
pub use perm::Permutation;
