//! The chamber complex of a vector configuration.
//!
//! The cone spanned by a configuration is subdivided by the common
//! refinement of all simplicial cones on basic subsets of the vectors. A
//! chamber is identified combinatorially with the maximal set of basic
//! subsets whose cones share an interior point. One initial chamber (the
//! lexicographic one) is found through minimal non-face transversals;
//! every other chamber is reached by reflexions across essential interior
//! walls, detected by exact LP redundancy removal.

mod complex;
mod transversal;
mod walls;

pub use complex::{
    chamber_inequalities, chambers_to_json, enumerate_chambers, essential_walls,
    lexicographic_chamber, locate_chamber, reflexion, regular_interior_point, witness_point,
    CombinatorialChamber, OrientedWall,
};
pub use transversal::{minimal_nonfaces, minimal_transversals};
pub use walls::{enumerate_walls, lex_tope_positions, Wall};

use crate::algebra::{int, rank, Rat};
use crate::network::RootConfiguration;
use crate::{Error, Result};

/// A spanning list of distinct nonzero integer vectors in R^r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorConfig {
    dim: usize,
    vectors: Vec<Vec<i64>>,
}

impl VectorConfig {
    pub fn new(dim: usize, vectors: Vec<Vec<i64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("configuration dimension is zero".into()));
        }
        for v in &vectors {
            if v.len() != dim {
                return Err(Error::InvalidInput("vector length mismatch".into()));
            }
            if v.iter().all(|&x| x == 0) {
                return Err(Error::InvalidInput("zero vector in configuration".into()));
            }
        }
        let mut seen = vectors.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != vectors.len() {
            return Err(Error::InvalidInput("duplicate configuration vectors".into()));
        }
        let rows: Vec<Vec<Rat>> = vectors
            .iter()
            .map(|v| v.iter().map(|&x| int(x)).collect())
            .collect();
        if rank(&rows, dim) != dim {
            return Err(Error::InvalidInput(
                "configuration does not span the space".into(),
            ));
        }
        Ok(VectorConfig { dim, vectors })
    }

    /// The distinct columns of a network configuration, in the scan order
    /// of its multiplicity matrix.
    pub fn from_root_configuration(cfg: &RootConfiguration) -> Result<Self> {
        VectorConfig::new(cfg.rank(), cfg.delta_plus())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &[Vec<i64>] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}
