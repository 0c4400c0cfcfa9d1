//! Exact arithmetic substrate.
//!
//! Everything here is exact: scalars are arbitrary-precision rationals,
//! polynomials and Laurent tables store rational coefficients sparsely,
//! and the linear-algebra and LP routines never round. All values are
//! immutable after construction and safe to share across threads.

mod coeff;
mod laurent;
mod linalg;
mod lp;
mod poly;
mod rational;
mod series;

pub use coeff::Coefficient;
pub use laurent::LaurentTable;
pub use linalg::{kernel_basis, rank, solve_square};
pub use lp::{canonical_normal, lp_max, simplex_max, IneqSystem, SimplexOutcome};
pub use poly::Poly;
pub use rational::{
    format_rat, int, lcm_of_denominators, parse_rat, rat, sign_of, Int, Rat,
};
pub use series::{binomial_series, geometric_pole_series, mul_truncated};
