//! Truncated one-variable series used by the residue steps.
//!
//! Two families appear when a factor is expanded about the variable being
//! eliminated: binomial series of `(1+v)^e` (with `e` an integer or a
//! polynomial in excess parameters) and the expansion of a difference pole
//! `(1-u)^{-m}`.

use super::coeff::Coefficient;
use super::rational::{Int, Rat};

/// Coefficients `c_0..c_order` of `(1+v)^e`, with
/// `c_k = e(e-1)...(e-k+1)/k!`. Exact for any exponent of the coefficient
/// ring; when `e` is a polynomial, `c_k` has degree `k`.
pub fn binomial_series<C: Coefficient>(exponent: &C, order: usize) -> Vec<C> {
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(C::one());
    for k in 1..=order {
        let prev = coeffs.last().unwrap();
        let next = prev
            .mul_ref(&exponent.sub_int((k - 1) as u64))
            .div_int(k as u64);
        coeffs.push(next);
    }
    coeffs
}

/// Coefficients of `(1-u)^{-mult}`: entry `k` is `C(mult-1+k, k)`.
pub fn geometric_pole_series(mult: u32, order: usize) -> Vec<Rat> {
    assert!(mult >= 1, "pole multiplicity must be positive");
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut current = Rat::from_integer(Int::from(1));
    coeffs.push(current.clone());
    for k in 1..=order as u64 {
        current = current * Rat::new(Int::from(mult as u64 - 1 + k), Int::from(k));
        coeffs.push(current.clone());
    }
    coeffs
}

/// Product of two truncated series, truncated at `order`.
pub fn mul_truncated<C: Coefficient>(a: &[C], b: &[C], order: usize) -> Vec<C> {
    let mut out = vec![C::zero(); order + 1];
    for (i, ai) in a.iter().enumerate().take(order + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if i + j > order {
                break;
            }
            out[i + j].add_assign_ref(&ai.mul_ref(bj));
        }
    }
    out
}
