//! Exact counting of integral flows in networks.
//!
//! The counting core evaluates vector partition functions of network
//! configurations as signed sums of iterated residues over an exact
//! rational coefficient ring. Around it sit:
//!
//! * [`algebra`] — arbitrary-precision rationals, sparse multivariate
//!   polynomials, Laurent tables, truncated series, exact linear algebra
//!   and an exact simplex solver;
//! * [`network`] — the network data model, the reduction of capacitated or
//!   cyclic networks to acyclic uncapacitated form, and the embedding into
//!   a root-system multiplicity representation;
//! * [`residue`] — deformation, special-permutation enumeration, the
//!   residue engine, and the four outputs (count, volume, chamber
//!   polynomial, Ehrhart polynomial);
//! * [`chambers`] — enumeration of the chamber complex of a vector
//!   configuration via minimal non-face transversals and wall reflexions;
//! * [`oracle`] — an independent brute-force flow enumerator used as
//!   ground truth in tests;
//! * [`pipeline`] — network-level orchestration (validate, reduce, split
//!   into components, embed, compute).
//!
//! All arithmetic in the computational core is exact; no floating point
//! is used anywhere in a result path.

pub mod algebra;
pub mod chambers;
mod error;
pub mod network;
pub mod oracle;
pub mod pipeline;
pub mod residue;

pub use algebra::{IneqSystem, Int, LaurentTable, Poly, Rat};
pub use error::Error;
pub use network::{ExcessVector, Network, RootConfiguration};
pub use residue::{
    chamber_polynomial, count, ehrhart_polynomial, kostant_count, kostant_count_with_stats,
    transportation_count, volume, volume_polynomial,
};

/// Convenience result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
