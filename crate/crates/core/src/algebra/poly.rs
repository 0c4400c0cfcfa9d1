//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms map exponent vectors to nonzero coefficients; no zero coefficient
//! is ever stored. A polynomial with an empty variable list is a constant
//! and unifies with any variable list on the fly, which is what lets
//! constants act as the ring identity inside the generic residue engine.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::rational::{Int, Rat};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { vars: Vec::new(), terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(value: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(Vec::new(), value);
        }
        Poly { vars: Vec::new(), terms }
    }

    /// Zero polynomial over a fixed variable list.
    pub fn zero_in(vars: Vec<String>) -> Self {
        Poly { vars, terms: BTreeMap::new() }
    }

    pub fn constant_in(vars: Vec<String>, value: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(vec![0; vars.len()], value);
        }
        Poly { vars, terms }
    }

    /// The monomial `vars[idx]`.
    pub fn variable(vars: Vec<String>, idx: usize) -> Self {
        assert!(idx < vars.len(), "variable index out of range");
        let mut exp = vec![0u32; vars.len()];
        exp[idx] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exp, Rat::one());
        Poly { vars, terms }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Some(value) when the polynomial has no variable dependence.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(Rat::zero());
        }
        if self.terms.len() == 1 {
            let (exp, c) = self.terms.iter().next().unwrap();
            if exp.iter().all(|&e| e == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    fn lift_to(&self, vars: &[String]) -> Poly {
        debug_assert!(self.vars.is_empty());
        let value = self.terms.get(&Vec::new()).cloned();
        let mut terms = BTreeMap::new();
        if let Some(v) = value {
            terms.insert(vec![0; vars.len()], v);
        }
        Poly { vars: vars.to_vec(), terms }
    }

    /// Bring two polynomials onto a common variable list. Only constants
    /// may be promoted; mixing two distinct nonempty lists is a bug.
    fn unified(&self, other: &Poly) -> (Poly, Poly) {
        if self.vars == other.vars {
            (self.clone(), other.clone())
        } else if self.vars.is_empty() {
            (self.lift_to(&other.vars), other.clone())
        } else if other.vars.is_empty() {
            (self.clone(), other.lift_to(&self.vars))
        } else {
            panic!(
                "polynomial variable mismatch: {:?} vs {:?}",
                self.vars, other.vars
            );
        }
    }

    pub fn add_assign_poly(&mut self, other: &Poly) {
        let (mut a, b) = self.unified(other);
        for (exp, c) in b.terms {
            let entry = a.terms.entry(exp).or_insert_with(Rat::zero);
            *entry += c;
            if entry.is_zero() {
                // remove below; BTreeMap entry API cannot delete in place
            }
        }
        a.terms.retain(|_, c| !c.is_zero());
        *self = a;
    }

    pub fn add_poly(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign_poly(other);
        out
    }

    pub fn sub_poly(&self, other: &Poly) -> Poly {
        self.add_poly(&other.neg())
    }

    pub fn mul_poly(&self, other: &Poly) -> Poly {
        let (a, b) = self.unified(other);
        let mut terms: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let exp: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let entry = terms.entry(exp).or_insert_with(Rat::zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Poly { vars: a.vars, terms }
    }

    pub fn neg(&self) -> Poly {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect();
        Poly { vars: self.vars.clone(), terms }
    }

    pub fn scale_rat(&self, by: &Rat) -> Poly {
        if by.is_zero() {
            return Poly::zero_in(self.vars.clone());
        }
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), c * by)).collect();
        Poly { vars: self.vars.clone(), terms }
    }

    pub fn add_rat(&self, value: &Rat) -> Poly {
        self.add_poly(&Poly::constant(value.clone()))
    }

    pub fn sub_rat(&self, value: &Rat) -> Poly {
        self.add_rat(&-value)
    }

    /// Evaluate at a point given in variable order.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.vars.len(), "evaluation arity mismatch");
        let mut acc = Rat::zero();
        for (exp, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(exp) {
                for _ in 0..e {
                    term *= x;
                }
            }
            acc += term;
        }
        acc
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .max()
            .unwrap_or(0)
    }

    /// Terms of exact total degree `d`.
    pub fn homogeneous_part(&self, d: usize) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.iter().map(|&x| x as usize).sum::<usize>() == d)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        Poly { vars: self.vars.clone(), terms }
    }

    /// Coefficient of `var^k` for univariate polynomials.
    pub fn coeff_univar(&self, k: u32) -> Rat {
        assert!(self.vars.len() <= 1, "coeff_univar needs a univariate polynomial");
        if self.vars.is_empty() {
            return if k == 0 {
                self.as_constant().unwrap()
            } else {
                Rat::zero()
            };
        }
        self.terms.get(&vec![k]).cloned().unwrap_or_else(Rat::zero)
    }

    fn ordered_terms(&self) -> Vec<(&Vec<u32>, &Rat)> {
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by(|(ea, _), (eb, _)| {
            let da: u32 = ea.iter().sum();
            let db: u32 = eb.iter().sum();
            db.cmp(&da).then_with(|| eb.cmp(ea))
        });
        items
    }
}

/// Canonical rendering: terms in descending total degree, ties broken by
/// descending lexicographic exponent order. Fractional coefficients are
/// parenthesized so the output stays unambiguous under `*`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let one = Rat::one();
        for (i, (exp, coeff)) in self.ordered_terms().into_iter().enumerate() {
            let neg = coeff.is_negative();
            let mag = coeff.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let monomial: Vec<String> = exp
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    if e == 1 {
                        self.vars[v].clone()
                    } else {
                        format!("{}^{}", self.vars[v], e)
                    }
                })
                .collect();
            let coeff_str = if mag.denom().is_one() {
                mag.numer().to_string()
            } else {
                format!("({}/{})", mag.numer(), mag.denom())
            };
            if monomial.is_empty() {
                write!(f, "{coeff_str}")?;
            } else if mag == one {
                write!(f, "{}", monomial.join("*"))?;
            } else {
                write!(f, "{}*{}", coeff_str, monomial.join("*"))?;
            }
        }
        Ok(())
    }
}

impl From<Rat> for Poly {
    fn from(value: Rat) -> Self {
        Poly::constant(value)
    }
}

impl From<i64> for Poly {
    fn from(value: i64) -> Self {
        Poly::constant(Rat::from_integer(Int::from(value)))
    }
}
