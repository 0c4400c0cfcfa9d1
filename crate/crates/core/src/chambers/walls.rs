//! Walls of a vector configuration and their index partitions.

use num_traits::Zero;

use crate::algebra::{canonical_normal, int, kernel_basis, rank, Int, Rat};
use crate::{Error, Result};

use super::VectorConfig;

/// A hyperplane spanned by r-1 independent configuration vectors. The
/// normal is canonical (primitive, positive first nonzero entry), so the
/// pos/neg split is well defined relative to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    normal: Vec<Int>,
    zeros: Vec<usize>,
    pos: Vec<usize>,
    neg: Vec<usize>,
}

impl Wall {
    /// Build the wall with the given (canonicalized) normal, classifying
    /// every configuration vector.
    pub(crate) fn from_normal(cfg: &VectorConfig, normal: Vec<Int>) -> Wall {
        let normal = canonical_normal(&normal);
        let mut zeros = Vec::new();
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for (i, v) in cfg.vectors().iter().enumerate() {
            let d = dot(&normal, v);
            if d.is_zero() {
                zeros.push(i);
            } else if d > Int::zero() {
                pos.push(i);
            } else {
                neg.push(i);
            }
        }
        Wall { normal, zeros, pos, neg }
    }

    pub fn normal(&self) -> &[Int] {
        &self.normal
    }

    pub fn zeros(&self) -> &[usize] {
        &self.zeros
    }

    pub fn pos(&self) -> &[usize] {
        &self.pos
    }

    pub fn neg(&self) -> &[usize] {
        &self.neg
    }

    /// A wall is interior when the configuration has vectors strictly on
    /// both sides.
    pub fn is_interior(&self) -> bool {
        !self.pos.is_empty() && !self.neg.is_empty()
    }
}

pub(crate) fn dot(normal: &[Int], v: &[i64]) -> Int {
    normal
        .iter()
        .zip(v)
        .map(|(n, &x)| n * Int::from(x))
        .sum()
}

pub(crate) fn dot_rat(normal: &[Int], v: &[Rat]) -> Rat {
    normal
        .iter()
        .zip(v)
        .map(|(n, x)| Rat::from_integer(n.clone()) * x)
        .sum()
}

/// All distinct walls: hyperplanes spanned by (r-1)-subsets of rank r-1,
/// deduplicated by canonical normal. By convention a rank-1 configuration
/// has no walls.
pub fn enumerate_walls(cfg: &VectorConfig) -> Vec<Wall> {
    let r = cfg.dim();
    if r <= 1 {
        return Vec::new();
    }
    let n = cfg.vectors().len();
    let mut normals: Vec<Vec<Int>> = Vec::new();
    let mut subset: Vec<usize> = Vec::new();
    collect_normals(cfg, n, r, 0, &mut subset, &mut normals);
    normals.sort();
    normals.dedup();
    normals
        .into_iter()
        .map(|nrm| Wall::from_normal(cfg, nrm))
        .collect()
}

fn collect_normals(
    cfg: &VectorConfig,
    n: usize,
    r: usize,
    start: usize,
    subset: &mut Vec<usize>,
    out: &mut Vec<Vec<Int>>,
) {
    if subset.len() == r - 1 {
        let rows: Vec<Vec<Rat>> = subset
            .iter()
            .map(|&i| cfg.vectors()[i].iter().map(|&x| int(x)).collect())
            .collect();
        if rank(&rows, r) != r - 1 {
            return;
        }
        let kernel = kernel_basis(&rows, r);
        debug_assert_eq!(kernel.len(), 1);
        let normal: Vec<Int> = kernel[0].iter().map(|x| x.numer().clone()).collect();
        out.push(canonical_normal(&normal));
        return;
    }
    for i in start..n {
        subset.push(i);
        collect_normals(cfg, n, r, i + 1, subset, out);
        subset.pop();
    }
}

/// For each wall, the side containing the lexicographic direction
/// `phi_1 + eps phi_2 + eps^2 phi_3 + ...`: the sign of the first nonzero
/// dot product decides, and the returned set lists the configuration
/// indices strictly on that side.
pub fn lex_tope_positions(cfg: &VectorConfig, walls: &[Wall]) -> Result<Vec<Vec<usize>>> {
    walls
        .iter()
        .map(|w| {
            let side = cfg
                .vectors()
                .iter()
                .map(|v| dot(w.normal(), v))
                .find(|d| !d.is_zero())
                .ok_or_else(|| {
                    Error::Internal("lexicographic direction lies on a wall".into())
                })?;
            Ok(if side > Int::zero() {
                w.pos().to_vec()
            } else {
                w.neg().to_vec()
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chambers::VectorConfig;

    fn a2() -> VectorConfig {
        // Ordered (a, b, c) = ((1,-1), (1,0), (0,1)).
        VectorConfig::new(2, vec![vec![1, -1], vec![1, 0], vec![0, 1]]).unwrap()
    }

    #[test]
    fn rank_two_root_system_has_three_walls() {
        let walls = enumerate_walls(&a2());
        assert_eq!(walls.len(), 3);
    }

    #[test]
    fn rank_three_root_system_has_seven_walls() {
        let cfg = VectorConfig::new(
            3,
            vec![
                vec![1, -1, 0],
                vec![1, 0, -1],
                vec![1, 0, 0],
                vec![0, 1, -1],
                vec![0, 1, 0],
                vec![0, 0, 1],
            ],
        )
        .unwrap();
        assert_eq!(enumerate_walls(&cfg).len(), 7);
    }

    #[test]
    fn rank_one_has_no_walls() {
        let cfg = VectorConfig::new(1, vec![vec![1]]).unwrap();
        assert!(enumerate_walls(&cfg).is_empty());
    }

    #[test]
    fn lexicographic_sides_of_the_rank_two_walls() {
        let cfg = a2();
        let walls = enumerate_walls(&cfg);
        let sides = lex_tope_positions(&cfg, &walls).unwrap();
        let mut labeled: Vec<(Vec<i64>, Vec<usize>)> = walls
            .iter()
            .zip(&sides)
            .map(|(w, s)| {
                let n: Vec<i64> = w
                    .normal()
                    .iter()
                    .map(|x| i64::try_from(x.clone()).unwrap())
                    .collect();
                (n, s.clone())
            })
            .collect();
        labeled.sort();
        // wall through (0,1): normal (1,0), side of phi_a: pos {a,b}
        // wall through (1,-1): normal (1,1), first nonzero dot is phi_b: {b,c}
        // wall through (1,0): normal (0,1), first nonzero dot is phi_a (<0): {a}
        assert_eq!(
            labeled,
            vec![
                (vec![0, 1], vec![0]),
                (vec![1, 0], vec![0, 1]),
                (vec![1, 1], vec![1, 2]),
            ]
        );
    }
}
