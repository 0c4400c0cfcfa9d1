//! The counting core.
//!
//! For a configuration with multiplicities `m[i][j]` over r+1 nodes and an
//! excess vector `a`, the number of integral flows is a signed sum of
//! iterated residues of
//!
//! ```text
//!             (1+z_1)^{a_1+t_1} ... (1+z_r)^{a_r+t_r}
//!   f(a)(z) = ----------------------------------------------------
//!             z_1^{m[1][r+1]} ... z_r^{m[r][r+1]} prod (z_i-z_j)^{m[i][j]}
//! ```
//!
//! taken over the special permutations of a regularized excess vector.
//! Replacing the numerator by truncated exponentials `e^{a_i z_i}` turns
//! the same sum into the polytope volume; keeping the exponents symbolic
//! yields the chamber counting polynomial, and substituting `a = t*d`
//! the Ehrhart polynomial in `t`.

mod deform;
mod engine;
mod factors;
mod specperm;

pub use deform::{check_in_cone, deform, deform_with_epsilon, DeformedVector};
pub use engine::{iterated_residue, ResidueEvaluation};
pub use factors::{FactorSystem, NumFactor};
pub use specperm::{special_permutations, SpecialPermutation};

use num_traits::{One, Signed, Zero};

use crate::algebra::{int, lcm_of_denominators, Poly, Rat};
use crate::network::{ExcessVector, RootConfiguration};
use crate::{Error, Int, Result};

/// Statistics returned alongside a count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountStats {
    pub value: Int,
    /// Number of special permutations summed (0 when outside the cone).
    pub sp_size: usize,
    /// Times an accumulated pole order exceeded the a-priori estimate.
    /// Informational only; the exact per-step truncation is always used.
    pub pole_bound_flags: usize,
}

fn validate_arity(cfg: &RootConfiguration, a: &ExcessVector) -> Result<()> {
    if a.len() != cfg.node_count() {
        return Err(Error::InvalidInput(format!(
            "excess vector has {} entries for {} nodes",
            a.len(),
            cfg.node_count()
        )));
    }
    Ok(())
}

/// Number of integral flows with excesses `a`; zero outside the cone.
pub fn count(cfg: &RootConfiguration, a: &ExcessVector) -> Result<Int> {
    count_with_stats(cfg, a, 1).map(|s| s.value)
}

/// As [`count`], with permutation statistics and optional parallelism
/// over the per-permutation residues.
pub fn count_with_stats(
    cfg: &RootConfiguration,
    a: &ExcessVector,
    parallelism: usize,
) -> Result<CountStats> {
    validate_arity(cfg, a)?;
    if !check_in_cone(a.entries()) {
        return Ok(CountStats { value: Int::zero(), sp_size: 0, pole_bound_flags: 0 });
    }
    if cfg.rank() == 0 {
        return Ok(CountStats { value: Int::from(1), sp_size: 1, pole_bound_flags: 0 });
    }
    let deformed = deform(cfg, a)?;
    let perms = special_permutations(&deformed);
    let sp_size = perms.len();
    let fs = FactorSystem::count_mode(cfg, a);
    let eval = sum_residues(&fs, &perms, parallelism)?;
    let total = eval.value;
    if !total.denom().is_one() {
        return Err(Error::Internal(format!(
            "count is not an integer: {total}"
        )));
    }
    if total.is_negative() {
        return Err(Error::Internal(format!("count is negative: {total}")));
    }
    Ok(CountStats {
        value: total.numer().clone(),
        sp_size,
        pole_bound_flags: eval.pole_bound_flags,
    })
}

/// Volume of the flow polytope in the lattice normalization (the leading
/// Ehrhart coefficient). Accepts any rational excess vector in the cone.
pub fn volume_rational(cfg: &RootConfiguration, a: &[Rat]) -> Result<Rat> {
    if a.len() != cfg.node_count() {
        return Err(Error::InvalidInput(format!(
            "excess vector has {} entries for {} nodes",
            a.len(),
            cfg.node_count()
        )));
    }
    let total: Rat = a.iter().sum();
    if !total.is_zero() {
        return Err(Error::InvalidInput("excesses must sum to zero".into()));
    }
    // Scale to an integer vector first: the regularizing deformation is
    // calibrated for integer inputs, and volume is homogeneous of degree
    // N - r, so the scale factor divides back out exactly.
    let scale = lcm_of_denominators(a);
    let scale_rat = Rat::from_integer(scale.clone());
    let scaled: Vec<i64> = a
        .iter()
        .map(|x| {
            let v = x * &scale_rat;
            i64::try_from(v.numer().clone())
                .map_err(|_| Error::InvalidInput("scaled excess exceeds i64".into()))
        })
        .collect::<Result<_>>()?;
    let av = ExcessVector::new(scaled)?;

    if !check_in_cone(av.entries()) {
        return Ok(Rat::zero());
    }
    let degree = cfg.arc_count() - cfg.rank();
    if cfg.rank() == 0 {
        return Ok(int(1));
    }
    let deformed = deform(cfg, &av)?;
    let perms = special_permutations(&deformed);
    let fs = FactorSystem::volume_mode(cfg, &av);
    let eval = sum_residues(&fs, &perms, 1)?;
    let mut result = eval.value;
    for _ in 0..degree {
        result = result / &scale_rat;
    }
    if result.is_negative() {
        return Err(Error::Internal(format!("volume is negative: {result}")));
    }
    Ok(result)
}

/// Volume at an integer excess vector.
pub fn volume(cfg: &RootConfiguration, a: &ExcessVector) -> Result<Rat> {
    validate_arity(cfg, a)?;
    let rats: Vec<Rat> = a.entries().iter().map(|&v| int(v)).collect();
    volume_rational(cfg, &rats)
}

/// The volume polynomial in `a1..ar` on the chamber determined by `a`:
/// homogeneous of degree N - r, and equal to the top homogeneous part of
/// the counting polynomial on the same chamber.
pub fn volume_polynomial(cfg: &RootConfiguration, a: &ExcessVector) -> Result<Poly> {
    validate_arity(cfg, a)?;
    if !check_in_cone(a.entries()) {
        return Err(Error::InvalidInput(
            "volume polynomial needs a point inside the cone".into(),
        ));
    }
    if cfg.rank() == 0 {
        return Ok(Poly::one());
    }
    let deformed = deform(cfg, a)?;
    let perms = special_permutations(&deformed);
    let fs = FactorSystem::volume_symbolic_mode(cfg);
    Ok(sum_residues(&fs, &perms, 1)?.value)
}

/// The counting polynomial in `a1..ar` on the chamber determined by `a`.
/// Evaluating it at any integer point in the closure of that chamber
/// gives the flow count there.
pub fn chamber_polynomial(cfg: &RootConfiguration, a: &ExcessVector) -> Result<Poly> {
    validate_arity(cfg, a)?;
    if !check_in_cone(a.entries()) {
        return Err(Error::InvalidInput(
            "chamber polynomial needs a point inside the cone".into(),
        ));
    }
    if cfg.rank() == 0 {
        return Ok(Poly::one());
    }
    let deformed = deform(cfg, a)?;
    let perms = special_permutations(&deformed);
    let fs = FactorSystem::symbolic_mode(cfg);
    Ok(sum_residues(&fs, &perms, 1)?.value)
}

/// The Ehrhart polynomial in `t` along `direction`: its value at a
/// nonnegative integer t is the flow count for excesses t*direction.
pub fn ehrhart_polynomial(cfg: &RootConfiguration, direction: &ExcessVector) -> Result<Poly> {
    validate_arity(cfg, direction)?;
    if !check_in_cone(direction.entries()) {
        return Err(Error::InvalidInput(
            "Ehrhart direction must lie inside the cone".into(),
        ));
    }
    if cfg.rank() == 0 {
        return Ok(Poly::one());
    }
    let deformed = deform(cfg, direction)?;
    let perms = special_permutations(&deformed);
    let fs = FactorSystem::ehrhart_mode(cfg, direction);
    let poly = sum_residues(&fs, &perms, 1)?.value;
    debug_assert_eq!(poly.eval(&[Rat::zero()]), int(1), "empty dilation has one point");
    Ok(poly)
}

/// Flow count of the complete graph on `a.len()` nodes (the partition
/// function of the full positive root system).
pub fn kostant_count(excesses: &[i64]) -> Result<Int> {
    kostant_count_with_stats(excesses, 1).map(|s| s.value)
}

pub fn kostant_count_with_stats(excesses: &[i64], parallelism: usize) -> Result<CountStats> {
    if excesses.len() < 2 {
        return Err(Error::InvalidInput("need at least two nodes".into()));
    }
    let cfg = RootConfiguration::complete(excesses.len());
    let a = ExcessVector::new(excesses.to_vec())?;
    count_with_stats(&cfg, &a, parallelism)
}

/// Lattice points of the transportation polytope with the given margins,
/// via the complete bipartite configuration. Column nodes have no
/// outgoing arcs, so their numerator exponents are `-c_j - 1`.
pub fn transportation_count(rows: &[i64], cols: &[i64]) -> Result<Int> {
    transportation_count_with_stats(rows, cols, 1).map(|s| s.value)
}

pub fn transportation_count_with_stats(
    rows: &[i64],
    cols: &[i64],
    parallelism: usize,
) -> Result<CountStats> {
    if rows.is_empty() || cols.is_empty() {
        return Err(Error::InvalidInput("margins must be nonempty".into()));
    }
    if rows.iter().any(|&d| d < 0) || cols.iter().any(|&c| c < 0) {
        return Err(Error::InvalidInput("margins must be nonnegative".into()));
    }
    let rsum: i128 = rows.iter().map(|&d| d as i128).sum();
    let csum: i128 = cols.iter().map(|&c| c as i128).sum();
    if rsum != csum {
        return Err(Error::InvalidInput(format!(
            "row margins sum to {rsum}, column margins to {csum}"
        )));
    }
    let cfg = RootConfiguration::bipartite(rows.len(), cols.len());
    let entries: Vec<i64> = rows
        .iter()
        .copied()
        .chain(cols.iter().map(|&c| -c))
        .collect();
    let a = ExcessVector::new(entries)?;
    count_with_stats(&cfg, &a, parallelism)
}

/// Signed sum of per-permutation residues. The summation order is fixed
/// (lexicographic in the permutation list) so runs are reproducible;
/// exact arithmetic makes the order mathematically irrelevant.
pub(crate) fn sum_residues<C>(
    fs: &FactorSystem<C>,
    perms: &[SpecialPermutation],
    parallelism: usize,
) -> Result<ResidueEvaluation<C>>
where
    C: crate::algebra::Coefficient,
{
    let evaluate = |w: &SpecialPermutation| -> Result<ResidueEvaluation<C>> {
        let mut eval = iterated_residue(fs, w)?;
        if w.sign() < 0 {
            eval.value = eval.value.scale(&int(-1));
        }
        Ok(eval)
    };

    let parts: Vec<ResidueEvaluation<C>> = if parallelism > 1 && perms.len() > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(parallelism)
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
        pool.install(|| {
            use rayon::prelude::*;
            perms.par_iter().map(evaluate).collect::<Result<Vec<_>>>()
        })?
    } else {
        perms.iter().map(evaluate).collect::<Result<Vec<_>>>()?
    };

    let mut total = C::zero();
    let mut flags = 0;
    for part in parts {
        total.add_assign_ref(&part.value);
        flags += part.pole_bound_flags;
    }
    Ok(ResidueEvaluation { value: total, pole_bound_flags: flags })
}
