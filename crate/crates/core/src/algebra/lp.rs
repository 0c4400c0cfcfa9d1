//! Exact rational linear programming.
//!
//! A dense tableau simplex over `BigRational` with Bland's least-index
//! anti-cycling rule. Cone systems are degenerate by construction (every
//! constraint is tight at the origin), so anti-cycling is not optional
//! here. Problems are small: redundancy tests and interior-point searches
//! on chamber inequality systems.

use num_traits::{One, Signed, Zero};

use super::linalg::canonical_primitive;
use super::rational::{Int, Rat};
use crate::Error;

/// A homogeneous system of inequalities `normal . x >= 0`.
///
/// Normals are kept primitive (gcd 1); the sign of a normal is semantic
/// (it picks the half-space), so rows are deduplicated only when exactly
/// equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IneqSystem {
    rows: Vec<Vec<Int>>,
    dim: usize,
}

impl IneqSystem {
    pub fn new(dim: usize) -> Self {
        IneqSystem { rows: Vec::new(), dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<Int>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Insert `normal . x >= 0`, reduced to primitive form; exact
    /// duplicates are dropped.
    pub fn push(&mut self, normal: &[Int]) {
        assert_eq!(normal.len(), self.dim, "normal length mismatch");
        if normal.iter().all(|v| v.is_zero()) {
            return;
        }
        let mut row = normal.to_vec();
        let gcd = row
            .iter()
            .fold(Int::zero(), |acc, v| num_integer::Integer::gcd(&acc, v));
        if !gcd.is_one() {
            for v in &mut row {
                *v = &*v / &gcd;
            }
        }
        if !self.rows.contains(&row) {
            self.rows.push(row);
        }
    }

    /// The system without row `skip`.
    pub fn without_row(&self, skip: usize) -> IneqSystem {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != skip)
            .map(|(_, r)| r.clone())
            .collect();
        IneqSystem { rows, dim: self.dim }
    }
}

/// Outcome of a simplex run.
#[derive(Clone, Debug, PartialEq)]
pub enum SimplexOutcome {
    Optimal { value: Rat, point: Vec<Rat> },
    Unbounded,
}

/// Maximize `objective . x` over the homogeneous cone `system` with the
/// extra cap `objective . x <= 1`.
///
/// The origin is always feasible, so the optimum exists and equals 0 when
/// the objective is nonpositive over the cone (the inequality
/// `objective . x <= 0` is implied by the system) and 1 otherwise.
pub fn lp_max(objective: &[Rat], system: &IneqSystem) -> Result<Rat, Error> {
    if objective.len() != system.dim() {
        return Err(Error::InvalidInput(format!(
            "objective has {} entries, system dimension is {}",
            objective.len(),
            system.dim()
        )));
    }
    // rows `n . x >= 0` become `-n . x <= 0`; cap `objective . x <= 1`.
    let mut a: Vec<Vec<Rat>> = system
        .rows()
        .iter()
        .map(|r| r.iter().map(|v| -Rat::from_integer(v.clone())).collect())
        .collect();
    let mut b = vec![Rat::zero(); a.len()];
    a.push(objective.to_vec());
    b.push(Rat::one());
    match simplex_max(&a, &b, objective)? {
        SimplexOutcome::Optimal { value, .. } => Ok(value),
        SimplexOutcome::Unbounded => Err(Error::Internal(
            "capped cone LP cannot be unbounded".into(),
        )),
    }
}

/// Maximize `c . x` subject to `a x <= b` with `x` free and `b >= 0`
/// (the origin is a feasible start, so no phase-1 is needed).
///
/// Free variables are split into nonnegative pairs; Bland's rule picks the
/// lowest-index entering and leaving columns, which guarantees
/// termination on degenerate systems.
pub fn simplex_max(a: &[Vec<Rat>], b: &[Rat], c: &[Rat]) -> Result<SimplexOutcome, Error> {
    let m = a.len();
    let d = c.len();
    if b.len() != m || a.iter().any(|row| row.len() != d) {
        return Err(Error::InvalidInput("LP dimension mismatch".into()));
    }
    if b.iter().any(|v| v.is_negative()) {
        return Err(Error::InvalidInput(
            "simplex_max requires nonnegative right-hand sides".into(),
        ));
    }

    // Columns: 2d split variables (x = u - w), then m slacks.
    let ncols = 2 * d + m;
    let mut tableau: Vec<Vec<Rat>> = Vec::with_capacity(m + 1);
    for (row, rhs) in a.iter().zip(b) {
        let mut t = Vec::with_capacity(ncols + 1);
        for v in row {
            t.push(v.clone());
        }
        for v in row {
            t.push(-v.clone());
        }
        for _ in 0..m {
            t.push(Rat::zero());
        }
        t.push(rhs.clone());
        tableau.push(t);
    }
    for (i, row) in tableau.iter_mut().enumerate() {
        row[2 * d + i] = Rat::one();
    }
    // Objective row holds the negated reduced costs of a max problem.
    let mut zrow = Vec::with_capacity(ncols + 1);
    for v in c {
        zrow.push(-v.clone());
    }
    for v in c {
        zrow.push(v.clone());
    }
    for _ in 0..=m {
        zrow.push(Rat::zero());
    }
    let mut basis: Vec<usize> = (0..m).map(|i| 2 * d + i).collect();

    loop {
        // Bland: entering column = lowest index with negative z entry.
        let entering = (0..ncols).find(|&j| zrow[j].is_negative());
        let Some(col) = entering else {
            // Optimal; read off the solution.
            let mut x = vec![Rat::zero(); d];
            for (i, &bv) in basis.iter().enumerate() {
                let val = tableau[i][ncols].clone();
                if bv < d {
                    x[bv] += val;
                } else if bv < 2 * d {
                    x[bv - d] -= val;
                }
            }
            let value = zrow[ncols].clone();
            return Ok(SimplexOutcome::Optimal { value, point: x });
        };
        // Ratio test, ties broken by lowest basis index.
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..m {
            if !tableau[i][col].is_positive() {
                continue;
            }
            let ratio = &tableau[i][ncols] / &tableau[i][col];
            let better = match &leave {
                None => true,
                Some((best_i, best)) => {
                    ratio < *best || (ratio == *best && basis[i] < basis[*best_i])
                }
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((row, _)) = leave else {
            return Ok(SimplexOutcome::Unbounded);
        };
        // Pivot.
        let pivot = tableau[row][col].clone();
        for v in tableau[row].iter_mut() {
            *v = &*v / &pivot;
        }
        for i in 0..m {
            if i == row || tableau[i][col].is_zero() {
                continue;
            }
            let f = tableau[i][col].clone();
            for j in 0..=ncols {
                let v = &tableau[i][j] - &f * &tableau[row][j];
                tableau[i][j] = v;
            }
        }
        if !zrow[col].is_zero() {
            let f = zrow[col].clone();
            for j in 0..=ncols {
                let v = &zrow[j] - &f * &tableau[row][j];
                zrow[j] = v;
            }
        }
        basis[row] = col;
    }
}

/// Canonical (sign-free) form of a hyperplane normal: primitive with
/// positive first nonzero entry.
pub fn canonical_normal(normal: &[Int]) -> Vec<Int> {
    canonical_primitive(normal)
}
