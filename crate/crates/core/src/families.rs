//! The built-in group families used by `report`.

use crate::group::{Atom, GroupSpec};

/// Invariant-factor lists `d1 | d2 | ... | dk` with product `n`, ordered by
/// number of factors and then lexicographically. `n = 1` gives `[[1]]`.
pub fn abelian_invariant_factors(n: usize) -> Vec<Vec<usize>> {
    if n == 1 {
        return vec![vec![1]];
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    extend_chains(n, 2, &mut current, &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn extend_chains(rest: usize, min: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if rest == 1 {
        out.push(current.clone());
        return;
    }
    for d in min..=rest {
        if rest % d != 0 || current.last().is_some_and(|&last| d % last != 0) {
            continue;
        }
        // every later factor is a multiple of d
        if (rest / d) % d != 0 && rest != d {
            continue;
        }
        current.push(d);
        extend_chains(rest / d, d, current, out);
        current.pop();
    }
}

/// Groups of order `1..=max_order`: abelian groups, dihedral groups of order
/// at least 6 and dicyclic groups of order at least 8, grouped by order.
pub fn builtin_specs(max_order: usize) -> Vec<GroupSpec> {
    let mut specs = Vec::new();
    for n in 1..=max_order {
        for factors in abelian_invariant_factors(n) {
            specs.push(GroupSpec::cyclic(&factors).expect("positive factors"));
        }
        if n >= 6 && n % 2 == 0 {
            specs.push(GroupSpec::new(vec![Atom::Dihedral(n)]).expect("valid dihedral order"));
        }
        if n >= 8 && n % 4 == 0 {
            specs.push(GroupSpec::new(vec![Atom::Dicyclic(n)]).expect("valid dicyclic order"));
        }
    }
    specs
}
