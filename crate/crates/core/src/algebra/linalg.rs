//! Exact linear algebra over the rationals.
//!
//! Kernel bases are computed by fraction-free (Bareiss-style) elimination
//! on integer-scaled rows, so intermediate values stay integral. Output
//! vectors are scaled to primitive integer form with positive leading
//! entry.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{lcm_of_denominators, Int, Rat};

/// Clear denominators of a rational row and divide out the content.
/// Returns the zero row unchanged.
fn primitive_int_row(row: &[Rat]) -> Vec<Int> {
    let lcm = lcm_of_denominators(row);
    let ints: Vec<Int> = row
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    let mut gcd = Int::zero();
    for v in &ints {
        gcd = gcd.gcd(v);
    }
    if gcd.is_zero() || gcd.is_one() {
        return ints;
    }
    ints.iter().map(|v| v / &gcd).collect()
}

/// Normalize an integer vector to primitive form with positive first
/// nonzero entry.
pub(crate) fn canonical_primitive(vector: &[Int]) -> Vec<Int> {
    let mut gcd = Int::zero();
    for v in vector {
        gcd = gcd.gcd(v);
    }
    if gcd.is_zero() {
        return vector.to_vec();
    }
    let mut out: Vec<Int> = vector.iter().map(|v| v / &gcd).collect();
    if let Some(first) = out.iter().find(|v| !v.is_zero()) {
        if first.is_negative() {
            for v in &mut out {
                *v = -v.clone();
            }
        }
    }
    out
}

/// Row echelon form by fraction-free elimination; returns (echelon rows,
/// pivot column per row).
fn integer_echelon(rows: &[Vec<Rat>], ncols: usize) -> (Vec<Vec<Int>>, Vec<usize>) {
    let mut mat: Vec<Vec<Int>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), ncols, "row length mismatch");
            primitive_int_row(r)
        })
        .filter(|r| r.iter().any(|v| !v.is_zero()))
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0usize;
    for col in 0..ncols {
        let pivot_row = (row..mat.len()).find(|&i| !mat[i][col].is_zero());
        let Some(p) = pivot_row else { continue };
        mat.swap(row, p);
        let pivot = mat[row][col].clone();
        for i in 0..mat.len() {
            if i == row || mat[i][col].is_zero() {
                continue;
            }
            let factor = mat[i][col].clone();
            for c in 0..ncols {
                let v = &mat[i][c] * &pivot - &mat[row][c] * &factor;
                mat[i][c] = v;
            }
            mat[i] = canonical_primitive(&mat[i]);
        }
        pivots.push(col);
        row += 1;
        if row == mat.len() {
            break;
        }
    }
    mat.truncate(row);
    (mat, pivots)
}

/// Rank of a rational matrix.
pub fn rank(rows: &[Vec<Rat>], ncols: usize) -> usize {
    integer_echelon(rows, ncols).1.len()
}

/// Exact basis of the null space `{x : rows * x = 0}`; empty when the
/// kernel is trivial. Basis vectors are primitive integer vectors (as
/// rationals) with positive leading entry.
pub fn kernel_basis(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let (echelon, pivots) = integer_echelon(rows, ncols);
    let free_cols: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &free in &free_cols {
        // Solve with the free column set to 1 and other free columns 0.
        // Pivot entries come from back substitution over rationals.
        let mut x = vec![Rat::zero(); ncols];
        x[free] = Rat::one();
        for (i, &pc) in pivots.iter().enumerate().rev() {
            let mut acc = Rat::zero();
            for c in (pc + 1)..ncols {
                if !echelon[i][c].is_zero() {
                    acc += Rat::from_integer(echelon[i][c].clone()) * &x[c];
                }
            }
            x[pc] = -acc / Rat::from_integer(echelon[i][pc].clone());
        }
        let ints = canonical_primitive(&primitive_int_row(&x));
        basis.push(ints.into_iter().map(Rat::from_integer).collect());
    }
    basis
}

/// Solve a square system `a * x = b` exactly; None when singular.
pub fn solve_square(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = b.len();
    assert!(a.len() == n && a.iter().all(|r| r.len() == n), "not square");
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for c in col..=n {
            m[col][c] = &m[col][c] / &p;
        }
        for i in 0..n {
            if i == col || m[i][col].is_zero() {
                continue;
            }
            let f = m[i][col].clone();
            for c in col..=n {
                let v = &m[i][c] - &f * &m[col][c];
                m[i][c] = v;
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}
