//! The factored integrand fed to the residue engine.
//!
//! Denominator data (monomial poles and difference poles) comes straight
//! from a configuration's multiplicities; the numerator factor per
//! variable depends on the output being computed.

use crate::algebra::{binomial_series, int, Coefficient, Poly, Rat};
use crate::network::{ExcessVector, RootConfiguration};

/// Numerator factor in one variable `v`.
#[derive(Clone, Debug)]
pub enum NumFactor<C> {
    /// `(1 + v)^e` with exponent `e` in the coefficient ring (an integer
    /// for numeric counts, a degree-one polynomial for symbolic ones).
    Binomial(C),
    /// Truncated exponential `e^{c v}`; used for volumes, where only the
    /// top homogeneous degree survives the residue anyway.
    Exponential(C),
}

impl<C: Coefficient> NumFactor<C> {
    /// Series coefficients up to `order` inclusive.
    pub fn series(&self, order: usize) -> Vec<C> {
        match self {
            NumFactor::Binomial(e) => binomial_series(e, order),
            NumFactor::Exponential(c) => {
                let mut out = Vec::with_capacity(order + 1);
                out.push(C::one());
                for k in 1..=order {
                    let next = out.last().unwrap().mul_ref(c).div_int(k as u64);
                    out.push(next);
                }
                out
            }
        }
    }
}

/// Everything the engine needs: per variable the monomial pole order and
/// numerator factor, per pair the difference-pole multiplicity.
#[derive(Clone, Debug)]
pub struct FactorSystem<C> {
    r: usize,
    /// pole[i] = multiplicity of the arc i -> sink (the z_i pole order).
    pole: Vec<u32>,
    /// diff[i][j] for i < j < r: multiplicity of (z_i - z_j).
    diff: Vec<Vec<u32>>,
    num: Vec<NumFactor<C>>,
    max_mult: u32,
}

impl<C: Coefficient> FactorSystem<C> {
    fn denominators(cfg: &RootConfiguration) -> (usize, Vec<u32>, Vec<Vec<u32>>, u32) {
        let r = cfg.rank();
        let pole: Vec<u32> = (0..r).map(|i| cfg.mult(i, r)).collect();
        let diff: Vec<Vec<u32>> = (0..r)
            .map(|i| (0..r).map(|j| if i < j { cfg.mult(i, j) } else { 0 }).collect())
            .collect();
        (r, pole, diff, cfg.max_mult().max(1))
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn pole(&self, v: usize) -> u32 {
        self.pole[v]
    }

    pub fn diff_mult(&self, a: usize, b: usize) -> u32 {
        let (lo, hi) = (a.min(b), a.max(b));
        self.diff[lo][hi]
    }

    pub fn numerator(&self, v: usize) -> &NumFactor<C> {
        &self.num[v]
    }

    pub fn max_mult(&self) -> u32 {
        self.max_mult
    }

    /// Direct construction, used by tests that build one-off integrands.
    pub fn from_parts(
        r: usize,
        pole: Vec<u32>,
        diff: Vec<Vec<u32>>,
        num: Vec<NumFactor<C>>,
        max_mult: u32,
    ) -> Self {
        assert!(pole.len() == r && diff.len() == r && num.len() == r);
        FactorSystem { r, pole, diff, num, max_mult }
    }
}

impl FactorSystem<Rat> {
    /// Integer numerator exponents a_i + t_i: the counting integrand.
    pub fn count_mode(cfg: &RootConfiguration, a: &ExcessVector) -> Self {
        let (r, pole, diff, max_mult) = Self::denominators(cfg);
        let num = (0..r)
            .map(|i| NumFactor::Binomial(int(a.entries()[i] + cfg.t()[i])))
            .collect();
        FactorSystem { r, pole, diff, num, max_mult }
    }

    /// Exponential numerators e^{a_i z_i}: the volume integrand.
    pub fn volume_mode(cfg: &RootConfiguration, a: &ExcessVector) -> Self {
        let (r, pole, diff, max_mult) = Self::denominators(cfg);
        let num = (0..r)
            .map(|i| NumFactor::Exponential(int(a.entries()[i])))
            .collect();
        FactorSystem { r, pole, diff, num, max_mult }
    }
}

impl FactorSystem<Poly> {
    /// Symbolic numerator exponents `a_i + t_i` over variables a1..ar:
    /// the chamber-polynomial integrand.
    pub fn symbolic_mode(cfg: &RootConfiguration) -> Self {
        let (r, pole, diff, max_mult) = Self::denominators(cfg);
        let vars: Vec<String> = (1..=r).map(|i| format!("a{i}")).collect();
        let num = (0..r)
            .map(|i| {
                let e = Poly::variable(vars.clone(), i).add_rat(&int(cfg.t()[i]));
                NumFactor::Binomial(e)
            })
            .collect();
        FactorSystem { r, pole, diff, num, max_mult }
    }

    /// Exponential numerators with symbolic rates a1..ar: the volume
    /// integrand kept as a polynomial in the excess parameters.
    pub fn volume_symbolic_mode(cfg: &RootConfiguration) -> Self {
        let (r, pole, diff, max_mult) = Self::denominators(cfg);
        let vars: Vec<String> = (1..=r).map(|i| format!("a{i}")).collect();
        let num = (0..r)
            .map(|i| NumFactor::Exponential(Poly::variable(vars.clone(), i)))
            .collect();
        FactorSystem { r, pole, diff, num, max_mult }
    }

    /// Exponents `d_i t + t_i` in the single variable t: the Ehrhart
    /// integrand along direction d.
    pub fn ehrhart_mode(cfg: &RootConfiguration, direction: &ExcessVector) -> Self {
        let (r, pole, diff, max_mult) = Self::denominators(cfg);
        let vars = vec!["t".to_string()];
        let num = (0..r)
            .map(|i| {
                let e = Poly::variable(vars.clone(), 0)
                    .scale_rat(&int(direction.entries()[i]))
                    .add_rat(&int(cfg.t()[i]));
                NumFactor::Binomial(e)
            })
            .collect();
        FactorSystem { r, pole, diff, num, max_mult }
    }
}
