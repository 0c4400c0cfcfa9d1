//! Minimal non-faces and minimal transversals (hitting sets).

use std::collections::BTreeSet;

/// Inclusion-minimal members of a family of index sets, deduplicated, in
/// a deterministic order (by size, then contents).
pub fn minimal_nonfaces(family: &[BTreeSet<usize>]) -> Vec<BTreeSet<usize>> {
    let mut out: Vec<BTreeSet<usize>> = Vec::new();
    for candidate in family {
        if out.iter().any(|kept| kept.is_subset(candidate)) {
            continue;
        }
        out.retain(|kept| !candidate.is_subset(kept));
        out.push(candidate.clone());
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out.dedup();
    out
}

/// Inclusion-minimal transversals of a family: minimal sets meeting every
/// member. Built by incremental product with subsumption pruning, so the
/// working set stays an antichain.
pub fn minimal_transversals(family: &[BTreeSet<usize>]) -> Vec<BTreeSet<usize>> {
    let family = minimal_nonfaces(family);
    let mut current: Vec<BTreeSet<usize>> = vec![BTreeSet::new()];
    for member in &family {
        let mut next: Vec<BTreeSet<usize>> = Vec::new();
        for partial in &current {
            if !partial.is_disjoint(member) {
                insert_minimal(&mut next, partial.clone());
                continue;
            }
            for &item in member {
                let mut extended = partial.clone();
                extended.insert(item);
                insert_minimal(&mut next, extended);
            }
        }
        current = next;
    }
    current.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    current
}

fn insert_minimal(antichain: &mut Vec<BTreeSet<usize>>, candidate: BTreeSet<usize>) {
    if antichain.iter().any(|kept| kept.is_subset(&candidate)) {
        return;
    }
    antichain.retain(|kept| !candidate.is_subset(kept));
    antichain.push(candidate);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(items: &[usize]) -> BTreeSet<usize> {
        items.iter().copied().collect()
    }

    #[test]
    fn minimalize_drops_supersets() {
        let family = vec![set(&[1, 2]), set(&[0]), set(&[0, 1])];
        assert_eq!(minimal_nonfaces(&family), vec![set(&[0]), set(&[1, 2])]);
    }

    #[test]
    fn singleton_family_is_its_own_minimalization() {
        let family = vec![set(&[3, 4])];
        assert_eq!(minimal_nonfaces(&family), family);
    }

    #[test]
    fn incomparable_sets_are_both_kept() {
        let family = vec![set(&[0, 1]), set(&[1, 2])];
        assert_eq!(minimal_nonfaces(&family), family);
    }

    #[test]
    fn transversals_of_the_worked_family() {
        // {{a},{b,c}} with a=0, b=1, c=2: transversals {a,b} and {a,c}.
        let family = vec![set(&[0]), set(&[1, 2])];
        assert_eq!(
            minimal_transversals(&family),
            vec![set(&[0, 1]), set(&[0, 2])]
        );
    }

    #[test]
    fn transversals_hit_every_member_and_are_minimal() {
        let family = vec![set(&[0, 1]), set(&[1, 2]), set(&[2, 3]), set(&[0, 3])];
        let ts = minimal_transversals(&family);
        for t in &ts {
            for f in &family {
                assert!(!t.is_disjoint(f));
            }
            // dropping any element breaks some member
            for &x in t {
                let mut smaller = t.clone();
                smaller.remove(&x);
                assert!(family.iter().any(|f| smaller.is_disjoint(f)));
            }
        }
        // the diagonal pairs {1,3} and {0,2} are the smallest hitters
        assert!(ts.contains(&set(&[1, 3])));
        assert!(ts.contains(&set(&[0, 2])));
    }
}
