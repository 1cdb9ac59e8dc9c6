//! Exact enumeration of well-rounded sublattices of planar arithmetic lattices.
//!
//! A planar lattice is well-rounded (WR) when its minimal vectors contain a
//! basis. For integral WR lattices every similarity class is captured by an
//! integer 4-tuple `(p, r, q, D)` with `p^2 + D*r^2 = q^2`, and the WR
//! sublattices of a fixed lattice are parameterized by integer quadratic
//! forms. This crate implements that machinery with exact big-integer
//! arithmetic: Gauss-Lagrange reduction, class enumeration, sublattice
//! generation with Hermite-normal-form deduplication, Dirichlet partial sums,
//! and an independent brute-force oracle to cross-check every count.
//!
//! The crate is `no_std` (with `alloc`); IO and the command-line front end
//! live in the companion `wrlat` binary crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod arith;
pub mod classes;
pub mod lattice;
pub mod oracle;
pub mod reduction;
pub mod sublattices;
pub mod zeta;

mod error;

pub use error::{Error, Result};
pub use lattice::{ClassTuple, GramMatrix, Hnf, MNParam, Mat2};

pub use lattice::{gram_of, hnf_canonicalize, sublattice_gram};
pub use reduction::{
    gauss_reduce, is_similar, is_wr, minimal_pairs, minimum, similarity_class_of,
};
