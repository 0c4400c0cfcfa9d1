//! Special permutations: the index set of the residue sum.
//!
//! A permutation w of {1..r} contributes if and only if the sign of each
//! prefix sum d[w(1)] + ... + d[w(i)] matches the ordering of w(i) and
//! w(i+1): positive forces an ascent, negative a descent. The set is
//! built by prefix recursion so only matching permutations are ever
//! materialized; it is usually a tiny fraction of r!.

use num_traits::Signed;

use crate::algebra::Rat;

use super::deform::DeformedVector;

/// A permutation together with its descent count and sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialPermutation {
    /// 0-based images: perm[i] is the variable eliminated at position i.
    perm: Vec<usize>,
    descents: usize,
}

impl SpecialPermutation {
    pub fn new(perm: Vec<usize>) -> Self {
        let descents = perm.windows(2).filter(|w| w[0] > w[1]).count();
        SpecialPermutation { perm, descents }
    }

    /// Identity on r elements.
    pub fn identity(r: usize) -> Self {
        SpecialPermutation::new((0..r).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn descents(&self) -> usize {
        self.descents
    }

    pub fn sign(&self) -> i32 {
        if self.descents % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// All special permutations of a regular vector, in lexicographic order.
pub fn special_permutations(d: &DeformedVector) -> Vec<SpecialPermutation> {
    let r = d.rank();
    let mut out = Vec::new();
    if r == 0 {
        out.push(SpecialPermutation::new(Vec::new()));
        return out;
    }
    let entries = &d.entries()[..r];
    let mut prefix = Vec::with_capacity(r);
    let mut used = vec![false; r];
    extend(entries, &mut prefix, &mut used, &Rat::from_integer(0.into()), &mut out);
    out
}

fn extend(
    entries: &[Rat],
    prefix: &mut Vec<usize>,
    used: &mut [bool],
    sum: &Rat,
    out: &mut Vec<SpecialPermutation>,
) {
    let r = entries.len();
    if prefix.len() == r {
        out.push(SpecialPermutation::new(prefix.clone()));
        return;
    }
    // The prefix-sum sign constrains the next element relative to the
    // last one: positive sum forces an ascent, negative a descent. The
    // vector is regular, so the sum is never zero once the prefix is
    // nonempty.
    let constraint = prefix.last().map(|&last| (last, sum.is_positive()));
    for next in 0..r {
        if used[next] {
            continue;
        }
        if let Some((last, ascending)) = constraint {
            if ascending != (last < next) {
                continue;
            }
        }
        used[next] = true;
        prefix.push(next);
        let new_sum = sum + &entries[next];
        extend(entries, prefix, used, &new_sum, out);
        prefix.pop();
        used[next] = false;
    }
}
