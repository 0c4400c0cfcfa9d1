//! Finite-support Laurent polynomials in several `z`-variables.
//!
//! The residue engine's state between elimination steps. Exponent vectors
//! have one slot per original variable (slots of eliminated variables stay
//! zero); entries may be negative. No zero coefficient is stored.

use std::collections::BTreeMap;

use super::coeff::Coefficient;

#[derive(Clone, PartialEq, Debug)]
pub struct LaurentTable<C> {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, C>,
}

impl<C: Coefficient> LaurentTable<C> {
    pub fn zero(nvars: usize) -> Self {
        LaurentTable { nvars, terms: BTreeMap::new() }
    }

    /// The constant table 1.
    pub fn one(nvars: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; nvars], C::one());
        LaurentTable { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Vec<i32>, C)> {
        self.terms.into_iter()
    }

    /// Accumulate `coeff * z^exp`, dropping the entry if it cancels.
    pub fn add_term(&mut self, exp: Vec<i32>, coeff: &C) {
        debug_assert_eq!(exp.len(), self.nvars);
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(entry) => {
                entry.add_assign_ref(coeff);
                if entry.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, coeff.clone());
            }
        }
    }

    /// Smallest exponent of variable `var` over the support, or None for
    /// the zero table.
    pub fn min_exponent(&self, var: usize) -> Option<i32> {
        self.terms.keys().map(|e| e[var]).min()
    }

    /// The scalar value of a fully reduced table (all exponents zero).
    /// Returns None when any variable survives.
    pub fn into_scalar(mut self) -> Option<C> {
        if self.terms.is_empty() {
            return Some(C::zero());
        }
        if self.terms.len() == 1 {
            let key = self.terms.keys().next().unwrap().clone();
            if key.iter().all(|&e| e == 0) {
                return self.terms.remove(&key);
            }
        }
        None
    }
}
