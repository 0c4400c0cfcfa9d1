//! Coefficient-ring abstraction for the residue engine.
//!
//! Residues are computed either over plain rationals (numeric counts and
//! volumes) or over polynomials in excess parameters (chamber and Ehrhart
//! polynomials). The engine is generic over this trait so both run through
//! the same code path.

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rational::{Int, Rat};

pub trait Coefficient: Clone + PartialEq + Send + Sync + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    /// Multiply by a rational scalar.
    fn scale(&self, by: &Rat) -> Self;
    /// `self - k` for the falling-factorial recurrence.
    fn sub_int(&self, k: u64) -> Self;
    /// Exact division by a positive integer.
    fn div_int(&self, k: u64) -> Self;
}

impl Coefficient for Rat {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn scale(&self, by: &Rat) -> Self {
        self * by
    }

    fn sub_int(&self, k: u64) -> Self {
        self - Rat::from_integer(Int::from(k))
    }

    fn div_int(&self, k: u64) -> Self {
        self / Rat::from_integer(Int::from(k))
    }
}

impl Coefficient for Poly {
    fn zero() -> Self {
        Poly::zero()
    }

    fn one() -> Self {
        Poly::one()
    }

    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }

    fn add_assign_ref(&mut self, other: &Self) {
        self.add_assign_poly(other);
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self.mul_poly(other)
    }

    fn scale(&self, by: &Rat) -> Self {
        self.scale_rat(by)
    }

    fn sub_int(&self, k: u64) -> Self {
        self.sub_rat(&Rat::from_integer(Int::from(k)))
    }

    fn div_int(&self, k: u64) -> Self {
        self.scale_rat(&Rat::new(Int::from(1), Int::from(k)))
    }
}
