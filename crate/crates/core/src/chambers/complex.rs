//! Chamber construction, essential walls, reflexions and enumeration.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::algebra::{
    format_rat, int, lp_max, rank, simplex_max, solve_square, IneqSystem, Int, Rat,
    SimplexOutcome,
};
use crate::{Error, Result};

use super::transversal::{minimal_nonfaces, minimal_transversals};
use super::walls::{dot, dot_rat, enumerate_walls, lex_tope_positions, Wall};
use super::VectorConfig;

/// A chamber as the canonical sorted set of basic subsets whose cones
/// contain it. Basic subsets are sorted index vectors; the list itself is
/// sorted, so equal chambers compare equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CombinatorialChamber {
    basics: Vec<Vec<usize>>,
}

impl CombinatorialChamber {
    pub(crate) fn from_sets(sets: impl IntoIterator<Item = BTreeSet<usize>>) -> Self {
        let mut basics: Vec<Vec<usize>> = sets
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect();
        basics.sort();
        basics.dedup();
        CombinatorialChamber { basics }
    }

    pub fn basics(&self) -> &[Vec<usize>] {
        &self.basics
    }

    pub fn len(&self) -> usize {
        self.basics.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basics.is_empty()
    }

    pub fn contains(&self, basic: &[usize]) -> bool {
        self.basics.iter().any(|b| b == basic)
    }
}

/// A wall supporting a facet of a chamber, oriented so the chamber lies
/// on the side `inward_normal . x >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedWall {
    pub wall: Wall,
    pub inward_normal: Vec<Int>,
}

impl OrientedWall {
    pub fn is_interior(&self) -> bool {
        self.wall.is_interior()
    }

    /// Configuration indices strictly on the chamber's side.
    pub fn near_side(&self, cfg: &VectorConfig) -> Vec<usize> {
        side_indices(cfg, &self.inward_normal, true)
    }

    /// Configuration indices strictly on the far side.
    pub fn far_side(&self, cfg: &VectorConfig) -> Vec<usize> {
        side_indices(cfg, &self.inward_normal, false)
    }
}

fn side_indices(cfg: &VectorConfig, normal: &[Int], positive: bool) -> Vec<usize> {
    cfg.vectors()
        .iter()
        .enumerate()
        .filter(|(_, v)| {
            let d = dot(normal, v);
            if positive {
                d.is_positive()
            } else {
                d.is_negative()
            }
        })
        .map(|(i, _)| i)
        .collect()
}

fn basic_is_independent(cfg: &VectorConfig, indices: &BTreeSet<usize>) -> bool {
    let rows: Vec<Vec<Rat>> = indices
        .iter()
        .map(|&i| cfg.vectors()[i].iter().map(|&x| int(x)).collect())
        .collect();
    rank(&rows, cfg.dim()) == indices.len()
}

/// The chamber containing the lexicographic direction
/// `phi_1 + eps phi_2 + ...`: minimal transversals of the minimal
/// non-faces of the lexicographic tope. Each transversal is guaranteed to
/// be a basic subset; this is asserted.
pub fn lexicographic_chamber(cfg: &VectorConfig) -> Result<CombinatorialChamber> {
    let r = cfg.dim();
    if r == 1 {
        // No walls exist by convention; every vector on the side of the
        // first one spans a cone containing the lexicographic ray.
        let sign0 = cfg.vectors()[0][0].signum();
        let sets = cfg
            .vectors()
            .iter()
            .enumerate()
            .filter(|(_, v)| v[0].signum() == sign0)
            .map(|(i, _)| BTreeSet::from([i]));
        return Ok(CombinatorialChamber::from_sets(sets));
    }
    let walls = enumerate_walls(cfg);
    let positions = lex_tope_positions(cfg, &walls)?;
    let polarized: Vec<BTreeSet<usize>> = positions
        .into_iter()
        .map(|p| p.into_iter().collect())
        .collect();
    let nonfaces = minimal_nonfaces(&polarized);
    let transversals = minimal_transversals(&nonfaces);
    for t in &transversals {
        if t.len() != cfg.dim() || !basic_is_independent(cfg, t) {
            return Err(Error::Internal(format!(
                "minimal transversal {t:?} is not a basic subset"
            )));
        }
    }
    Ok(CombinatorialChamber::from_sets(transversals))
}

/// Facet inequalities of the intersection of the chamber's cones: for
/// each basic subset and each omitted generator, the inward normal of the
/// facet spanned by the rest. Deduplicated; redundant rows remain.
pub fn chamber_inequalities(cfg: &VectorConfig, chamber: &CombinatorialChamber) -> IneqSystem {
    let r = cfg.dim();
    let mut system = IneqSystem::new(r);
    for basic in chamber.basics() {
        for &omitted in basic {
            let facet_rows: Vec<Vec<Rat>> = basic
                .iter()
                .filter(|&&g| g != omitted)
                .map(|&g| cfg.vectors()[g].iter().map(|&x| int(x)).collect())
                .collect();
            let kernel = crate::algebra::kernel_basis(&facet_rows, r);
            debug_assert_eq!(kernel.len(), 1, "facet of a basic subset spans r-1 dims");
            let mut normal: Vec<Int> = kernel[0].iter().map(|x| x.numer().clone()).collect();
            if dot(&normal, &cfg.vectors()[omitted]).is_negative() {
                for v in &mut normal {
                    *v = -v.clone();
                }
            }
            system.push(&normal);
        }
    }
    system
}

/// An interior point of the chamber: the exact Chebyshev-style LP that
/// maximizes the minimum slack of the inequality system, normalized by
/// capping the total slack at one.
pub fn witness_point(cfg: &VectorConfig, chamber: &CombinatorialChamber) -> Result<Vec<Rat>> {
    let system = chamber_inequalities(cfg, chamber);
    let r = cfg.dim();
    if system.is_empty() {
        return Err(Error::Internal("chamber with no inequalities".into()));
    }
    // Variables (x_1..x_r, s): maximize s subject to
    //   -n_k . x + s <= 0  for every row, and  sum_k n_k . x <= 1.
    let mut a: Vec<Vec<Rat>> = Vec::new();
    let mut b: Vec<Rat> = Vec::new();
    let mut total = vec![Rat::zero(); r];
    for row in system.rows() {
        let mut constraint: Vec<Rat> = row
            .iter()
            .map(|v| -Rat::from_integer(v.clone()))
            .collect();
        constraint.push(Rat::from_integer(Int::from(1)));
        a.push(constraint);
        b.push(Rat::zero());
        for (t, v) in total.iter_mut().zip(row) {
            *t += Rat::from_integer(v.clone());
        }
    }
    total.push(Rat::zero());
    a.push(total);
    b.push(Rat::from_integer(Int::from(1)));
    let mut objective = vec![Rat::zero(); r];
    objective.push(Rat::from_integer(Int::from(1)));
    match simplex_max(&a, &b, &objective)? {
        SimplexOutcome::Optimal { value, point } => {
            if !value.is_positive() {
                return Err(Error::Internal(
                    "chamber has empty interior: zero Chebyshev slack".into(),
                ));
            }
            Ok(point[..r].to_vec())
        }
        SimplexOutcome::Unbounded => Err(Error::Internal("capped slack LP unbounded".into())),
    }
}

/// A witness point nudged off every wall of the configuration, staying
/// strictly inside the chamber. Needed wherever a chamber point must be
/// regular (no wall passes through it), since a wall may legitimately
/// cross a chamber's interior.
pub fn regular_interior_point(
    cfg: &VectorConfig,
    chamber: &CombinatorialChamber,
) -> Result<Vec<Rat>> {
    let base = witness_point(cfg, chamber)?;
    let walls = enumerate_walls(cfg);
    let system = chamber_inequalities(cfg, chamber);
    let regular = |p: &[Rat]| walls.iter().all(|w| !dot_rat(w.normal(), p).is_zero());
    let inside = |p: &[Rat]| {
        system
            .rows()
            .iter()
            .all(|row| dot_rat(row, p).is_positive())
    };
    if regular(&base) && inside(&base) {
        return Ok(base);
    }
    // Perturb lexicographically: base + d e_1 + d^2 e_2 + ... stays off
    // every wall for all small d except finitely many, and inside the
    // chamber for d small enough.
    let mut delta = crate::algebra::rat(1, 2);
    for _ in 0..200 {
        let mut point = base.clone();
        let mut power = delta.clone();
        for slot in point.iter_mut() {
            *slot += &power;
            power = &power * &delta;
        }
        if regular(&point) && inside(&point) {
            return Ok(point);
        }
        delta = &delta / int(2);
    }
    Err(Error::Internal("could not find a regular interior point".into()))
}

/// Essential walls of a chamber: candidate rows pass the necessary
/// combinatorial conditions first, then survive exact LP redundancy
/// removal. Each survivor supports a facet of the chamber.
pub fn essential_walls(
    cfg: &VectorConfig,
    chamber: &CombinatorialChamber,
) -> Result<Vec<OrientedWall>> {
    let system = chamber_inequalities(cfg, chamber);
    let mut rows: Vec<Vec<Int>> = system.rows().to_vec();
    rows.retain(|row| passes_necessary_conditions(cfg, chamber, row));

    // Drop redundant rows one at a time, re-testing against the survivors.
    let mut keep: Vec<bool> = vec![true; rows.len()];
    for i in 0..rows.len() {
        let mut reduced = IneqSystem::new(cfg.dim());
        for (j, row) in rows.iter().enumerate() {
            if j != i && keep[j] {
                reduced.push(row);
            }
        }
        let objective: Vec<Rat> = rows[i]
            .iter()
            .map(|v| -Rat::from_integer(v.clone()))
            .collect();
        // The row n.x >= 0 is redundant iff max -n.x over the others,
        // capped at 1, stays at 0.
        if lp_max(&objective, &reduced)?.is_zero() {
            keep[i] = false;
        }
    }

    Ok(rows
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(row, _)| OrientedWall {
            wall: Wall::from_normal(cfg, row.clone()),
            inward_normal: row,
        })
        .collect())
}

/// Necessary conditions for a row's wall to be essential: every basic
/// subset is facet- or cut-classified, some subset realizes a facet, and
/// wall bases extend consistently to one side only.
fn passes_necessary_conditions(
    cfg: &VectorConfig,
    chamber: &CombinatorialChamber,
    row: &[Int],
) -> bool {
    let r = cfg.dim();
    let classify = |i: usize| dot(row, &cfg.vectors()[i]);
    let mut facet_bases: Vec<BTreeSet<usize>> = Vec::new();
    let mut has_facet = false;
    for basic in chamber.basics() {
        let zeros: BTreeSet<usize> = basic
            .iter()
            .copied()
            .filter(|&i| classify(i).is_zero())
            .collect();
        if zeros.len() == r - 1 {
            has_facet = true;
            if !facet_bases.contains(&zeros) {
                facet_bases.push(zeros);
            }
            continue;
        }
        let has_pos = basic.iter().any(|&i| classify(i).is_positive());
        let has_neg = basic.iter().any(|&i| classify(i).is_negative());
        if !(has_pos && has_neg) {
            return false; // condition 1: neither facet nor cut
        }
    }
    if !has_facet {
        return false; // condition 2
    }
    // Condition 3: every wall basis extends into the chamber on exactly
    // the near side.
    let near = side_indices(cfg, row, true);
    let far = side_indices(cfg, row, false);
    for nu in &facet_bases {
        for &i in &far {
            let mut sigma: Vec<usize> = nu.iter().copied().chain([i]).collect();
            sigma.sort();
            if chamber.contains(&sigma) {
                return false;
            }
        }
        let mut any_near = false;
        let mut all_near = true;
        for &i in &near {
            let mut sigma: Vec<usize> = nu.iter().copied().chain([i]).collect();
            sigma.sort();
            if chamber.contains(&sigma) {
                any_near = true;
            } else {
                all_near = false;
            }
        }
        if any_near && !all_near {
            return false;
        }
    }
    true
}

/// Cross to the adjacent chamber through an essential interior wall:
/// keep the basics cut by the wall, and re-extend every wall basis with
/// the far-side indices instead of the near-side ones.
pub fn reflexion(
    cfg: &VectorConfig,
    chamber: &CombinatorialChamber,
    wall: &OrientedWall,
) -> Result<CombinatorialChamber> {
    let essentials = essential_walls(cfg, chamber)?;
    if !essentials
        .iter()
        .any(|w| w.wall.normal() == wall.wall.normal())
    {
        return Err(Error::InvalidInput(
            "reflexion requires an essential wall of the chamber".into(),
        ));
    }
    if !wall.is_interior() {
        return Err(Error::InvalidInput(
            "reflexion requires an interior wall".into(),
        ));
    }
    Ok(reflect_unchecked(cfg, chamber, wall))
}

fn reflect_unchecked(
    cfg: &VectorConfig,
    chamber: &CombinatorialChamber,
    wall: &OrientedWall,
) -> CombinatorialChamber {
    let r = cfg.dim();
    let normal = &wall.inward_normal;
    let classify = |i: usize| dot(normal, &cfg.vectors()[i]);
    let far = wall.far_side(cfg);
    let mut next: Vec<BTreeSet<usize>> = Vec::new();
    let mut wall_bases: Vec<BTreeSet<usize>> = Vec::new();
    for basic in chamber.basics() {
        let zeros: BTreeSet<usize> = basic
            .iter()
            .copied()
            .filter(|&i| classify(i).is_zero())
            .collect();
        if zeros.len() == r - 1 {
            if !wall_bases.contains(&zeros) {
                wall_bases.push(zeros);
            }
        } else {
            next.push(basic.iter().copied().collect());
        }
    }
    for nu in &wall_bases {
        for &i in &far {
            let mut sigma = nu.clone();
            sigma.insert(i);
            next.push(sigma);
        }
    }
    CombinatorialChamber::from_sets(next)
}

/// All chambers, by depth-first search over essential interior wall
/// reflexions starting from the lexicographic chamber. Output is
/// discovery order; the wall ordering inside a chamber follows the
/// canonical normal order, so the result is deterministic.
pub fn enumerate_chambers(cfg: &VectorConfig) -> Result<Vec<CombinatorialChamber>> {
    let first = lexicographic_chamber(cfg)?;
    let mut discovered: Vec<CombinatorialChamber> = vec![first.clone()];
    let mut seen: BTreeSet<Vec<Vec<usize>>> = BTreeSet::from([first.basics().to_vec()]);
    let mut stack = vec![first];
    while let Some(chamber) = stack.pop() {
        let mut walls = essential_walls(cfg, &chamber)?;
        walls.sort_by(|a, b| a.wall.normal().cmp(b.wall.normal()));
        for wall in walls.iter().filter(|w| w.is_interior()) {
            let neighbor = reflect_unchecked(cfg, &chamber, wall);
            if seen.insert(neighbor.basics().to_vec()) {
                discovered.push(neighbor.clone());
                stack.push(neighbor);
            }
        }
    }
    Ok(discovered)
}

/// The chamber containing a regular point of the cone, by scanning all
/// basic subsets with exact linear solves.
pub fn locate_chamber(cfg: &VectorConfig, point: &[Rat]) -> Result<CombinatorialChamber> {
    let r = cfg.dim();
    if point.len() != r {
        return Err(Error::InvalidInput("point dimension mismatch".into()));
    }
    for wall in enumerate_walls(cfg) {
        if dot_rat(wall.normal(), point).is_zero() {
            return Err(Error::InvalidInput(
                "point lies on a wall; locate needs a regular point".into(),
            ));
        }
    }
    let n = cfg.len();
    let mut basics: Vec<BTreeSet<usize>> = Vec::new();
    let mut subset = Vec::new();
    scan_basics(cfg, n, r, 0, &mut subset, point, &mut basics);
    if basics.is_empty() {
        return Err(Error::InvalidInput(
            "point is outside the configuration cone".into(),
        ));
    }
    Ok(CombinatorialChamber::from_sets(basics))
}

fn scan_basics(
    cfg: &VectorConfig,
    n: usize,
    r: usize,
    start: usize,
    subset: &mut Vec<usize>,
    point: &[Rat],
    out: &mut Vec<BTreeSet<usize>>,
) {
    if subset.len() == r {
        // Columns of the candidate basis.
        let matrix: Vec<Vec<Rat>> = (0..r)
            .map(|row| subset.iter().map(|&i| int(cfg.vectors()[i][row])).collect())
            .collect();
        if let Some(coords) = solve_square(&matrix, point) {
            if coords.iter().all(|c| c.is_positive()) {
                out.push(subset.iter().copied().collect());
            }
        }
        return;
    }
    for i in start..n {
        subset.push(i);
        scan_basics(cfg, n, r, i + 1, subset, point, out);
        subset.pop();
    }
}

/// Serialize a chamber list: an array of chambers, each with its basic
/// subsets as 1-based configuration indices and an exact rational witness
/// point.
pub fn chambers_to_json(
    cfg: &VectorConfig,
    chambers: &[CombinatorialChamber],
) -> Result<String> {
    let mut items = Vec::with_capacity(chambers.len());
    for chamber in chambers {
        let witness = witness_point(cfg, chamber)?;
        let basics: Vec<Vec<usize>> = chamber
            .basics()
            .iter()
            .map(|b| b.iter().map(|i| i + 1).collect())
            .collect();
        let witness: Vec<String> = witness.iter().map(format_rat).collect();
        items.push(serde_json::json!({ "basics": basics, "witness": witness }));
    }
    serde_json::to_string(&items).map_err(|e| Error::Internal(format!("chamber JSON: {e}")))
}
