//! Regularization of excess vectors.
//!
//! The special-permutation conditions test signs of subset sums, which
//! must not vanish. The deformation
//!
//! ```text
//!   def(a) = a + eps * (sum of configuration vectors)
//!              + eps^2 * (e_1 + ... + e_r - r e_{r+1}),   eps = 1/(2 m r^2)
//! ```
//!
//! with m the maximum multiplicity is small enough to keep an integer
//! vector inside its cell while making every subset sum nonzero. It is
//! applied unconditionally, whether or not `a` is already regular, so
//! there is a single code path.

use num_traits::Zero;

use crate::algebra::{int, rat, Rat};
use crate::network::{ExcessVector, RootConfiguration};
use crate::{Error, Result};

/// A regular rational excess vector: no nonempty subset of the first r
/// entries sums to zero.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformedVector {
    entries: Vec<Rat>,
}

impl DeformedVector {
    /// Wrap a rational vector, asserting regularity and zero sum.
    pub fn new(entries: Vec<Rat>) -> Result<Self> {
        let total: Rat = entries.iter().sum();
        if !total.is_zero() {
            return Err(Error::InvalidInput(
                "deformed vector must sum to zero".into(),
            ));
        }
        let v = DeformedVector { entries };
        if let Some(subset) = v.zero_subset() {
            return Err(Error::Internal(format!(
                "deformed vector is not regular: subset {subset:?} sums to zero"
            )));
        }
        Ok(v)
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    /// Rank of the ambient configuration (entries minus one).
    pub fn rank(&self) -> usize {
        self.entries.len() - 1
    }

    /// A nonempty subset of {0..r-1} with zero sum, if one exists.
    fn zero_subset(&self) -> Option<Vec<usize>> {
        let r = self.rank();
        // 2^r - 1 subsets; r stays small (single digits) in practice.
        for mask in 1u64..(1u64 << r) {
            let mut sum = Rat::zero();
            for (i, entry) in self.entries.iter().enumerate().take(r) {
                if mask & (1 << i) != 0 {
                    sum += entry;
                }
            }
            if sum.is_zero() {
                return Some((0..r).filter(|i| mask & (1 << i) != 0).collect());
            }
        }
        None
    }
}

/// True when all prefix sums a_1 + ... + a_i, i = 1..r, are nonnegative;
/// this is membership in the cone spanned by the full positive system,
/// and a necessary condition for any flow to exist.
pub fn check_in_cone(a: &[i64]) -> bool {
    let mut prefix: i128 = 0;
    for &v in &a[..a.len().saturating_sub(1)] {
        prefix += v as i128;
        if prefix < 0 {
            return false;
        }
    }
    true
}

/// The standard deformation of `a` for the configuration `cfg`.
pub fn deform(cfg: &RootConfiguration, a: &ExcessVector) -> Result<DeformedVector> {
    let r = cfg.rank();
    if r == 0 {
        return DeformedVector::new(vec![Rat::zero()]);
    }
    let m = cfg.max_mult().max(1) as i64;
    let epsilon = rat(1, 2 * m * (r * r) as i64);
    deform_with_epsilon(cfg, a, &epsilon)
}

/// Deformation with an explicit epsilon; exposed so tests can verify that
/// shrinking epsilon never changes a count.
pub fn deform_with_epsilon(
    cfg: &RootConfiguration,
    a: &ExcessVector,
    epsilon: &Rat,
) -> Result<DeformedVector> {
    if a.len() != cfg.node_count() {
        return Err(Error::InvalidInput("deform: arity mismatch".into()));
    }
    let r = cfg.rank();
    let column_sum = cfg.column_sum();
    let eps2 = epsilon * epsilon;
    let entries: Vec<Rat> = (0..=r)
        .map(|i| {
            let tilt = if i < r { int(1) } else { int(-(r as i64)) };
            int(a.entries()[i]) + epsilon * int(column_sum[i]) + &eps2 * tilt
        })
        .collect();
    DeformedVector::new(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::sign_of;

    #[test]
    fn cone_membership_by_prefix_sums() {
        assert!(check_in_cone(&[1, 0, -1]));
        assert!(!check_in_cone(&[-1, 0, 1]));
        assert!(check_in_cone(&[6, 8, -5, -9]));
    }

    #[test]
    fn worked_deformation_on_the_complete_graph() {
        // r = 3, m = 1, eps = 1/18, column sum (3, 1, -1, -3).
        let cfg = RootConfiguration::complete(4);
        let a = ExcessVector::new(vec![1, 0, -1, 0]).unwrap();
        let d = deform(&cfg, &a).unwrap();
        assert_eq!(
            d.entries(),
            &[rat(379, 324), rat(19, 324), rat(-341, 324), rat(-57, 324)]
        );
    }

    #[test]
    fn zero_vector_deformation_on_the_triangle() {
        // r = 2, m = 1, eps = 1/8; column sum (2, 0, -2).
        let cfg = RootConfiguration::complete(3);
        let a = ExcessVector::new(vec![0, 0, 0]).unwrap();
        let d = deform(&cfg, &a).unwrap();
        let eps = rat(1, 8);
        let eps2 = &eps * &eps;
        assert_eq!(
            d.entries(),
            &[
                &eps * int(2) + &eps2,
                eps2.clone(),
                &eps * int(-2) - &eps2 * int(2),
            ]
        );
    }

    #[test]
    fn regular_vectors_keep_their_prefix_signs() {
        let cfg = RootConfiguration::complete(3);
        let a = ExcessVector::new(vec![1, 2, -3]).unwrap();
        let d = deform(&cfg, &a).unwrap();
        let mut p_int = 0i64;
        let mut p_rat = Rat::zero();
        for i in 0..2 {
            p_int += a.entries()[i];
            p_rat += &d.entries()[i];
            assert_eq!(sign_of(&int(p_int)), sign_of(&p_rat));
        }
    }

    #[test]
    fn deformation_sums_to_zero_and_is_regular() {
        let cfg = RootConfiguration::bipartite(2, 3);
        let a = ExcessVector::new(vec![3, 4, -2, -2, -3]).unwrap();
        let d = deform(&cfg, &a).unwrap();
        let total: Rat = d.entries().iter().sum();
        assert!(total.is_zero());
    }

    #[test]
    fn irregular_input_is_rejected_by_the_wrapper() {
        let v = vec![int(1), int(-1), int(0)];
        assert!(matches!(
            DeformedVector::new(v),
            Err(Error::Internal(_))
        ));
    }
}
