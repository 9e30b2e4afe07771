//! Verification toolkit for the mirror of an orbifold del Pezzo surface with
//! a single 1/k(1,1) point.
//!
//! The crate is split by subject:
//!
//! - [`cqs`]: cyclic quotient singularity arithmetic (Hirzebruch–Jung
//!   expansions, special I-series, handle and core schedules).
//! - [`lattice`]: the fiber homology lattice with its intersection form and
//!   the named vanishing-cycle classes.
//! - [`mutation`]: exceptional sequences, mutations, left duals, Seifert
//!   Gram matrices and the six-step braid script.
//! - [`quiver`]: quivers with relations, hom-space dimensions and the
//!   structure-constant normalization.
//! - [`lg`]: Landau–Ginzburg numerics (critical points, branch points, root
//!   tracking, Sturm counts, gradient bounds, lattice-point counts).
//! - [`report`]: named verification suites producing JSON reports.

#![allow(clippy::needless_range_loop)]

pub mod cqs;
pub mod lattice;
pub mod lg;
pub mod mutation;
pub mod quiver;
pub mod report;
