#![allow(dead_code)]

use seqgroup::group::{build_group, FiniteGroup};
use seqgroup::seq::PropertyKind;

pub fn group(spec: &str) -> FiniteGroup {
    build_group(&spec.parse().unwrap()).unwrap()
}

/// Groups of order at most 24 used by the suites: the built-in families plus
/// a few mixed products.
pub fn suite_specs(max_order: usize) -> Vec<String> {
    let mut specs: Vec<String> = seqgroup::families::builtin_specs(max_order)
        .iter()
        .map(|s| s.to_string())
        .collect();
    for extra in ["Z2xD6", "Z3xD6", "Z2xQ8", "Z4xD6", "Z3xQ8", "D6xZ4", "Z2xD8", "Z2xZ2xZ3", "Q12xZ2"] {
        let g = group(extra);
        if g.order() <= max_order {
            specs.push(extra.to_owned());
        }
    }
    specs
}

/// Brute-force Hall-Paige: the Sylow 2-subgroup is trivial or not cyclic,
/// i.e. the order is odd or no element has order `2^a` where `2^a || n`.
pub fn sylow_oracle(g: &FiniteGroup) -> bool {
    let n = g.order();
    if n % 2 == 1 {
        return true;
    }
    let two_part = 1usize << n.trailing_zeros();
    let id = g.identity();
    !g.elements().any(|a| {
        let mut x = a;
        let mut k = 1;
        while x != id {
            x = g.mul(x, a);
            k += 1;
        }
        k == two_part
    })
}

fn counts_exact(xs: &[usize], allowed: &[bool], k: usize, n: usize) -> bool {
    let mut c = vec![0usize; n];
    for &x in xs {
        if !allowed[x] {
            return false;
        }
        c[x] += 1;
    }
    (0..n).all(|x| c[x] == if allowed[x] { k } else { 0 })
}

/// The defining conditions, written directly from the glossary, for A = G.
pub fn holds(g: &FiniteGroup, kind: PropertyKind, s: &[usize]) -> bool {
    use PropertyKind::*;
    let n = g.order();
    let id = g.identity();
    let m = s.len();
    if m == 0 {
        return false;
    }
    let mut allowed = vec![true; n];
    if kind.drops_identity() {
        allowed[id] = false;
    }
    let k = kind.multiplicity();
    if !counts_exact(s, &allowed, k, n) {
        return false;
    }
    let quotient = |a: usize, b: usize| g.mul(g.inv(a), b);
    match kind {
        Sequencing | DoubleSequencing | SymmetricSequencing | TwoSequencing => {
            if s[0] != id {
                return false;
            }
            let mut b = vec![s[0]];
            b.extend(s.windows(2).map(|w| quotient(w[0], w[1])));
            match kind {
                TwoSequencing => {
                    let mut c = vec![0usize; n];
                    b.iter().for_each(|&x| c[x] += 1);
                    (0..n).all(|x| {
                        if g.mul(x, x) == id {
                            c[x] == 1
                        } else {
                            c[x] + c[g.inv(x)] == 2
                        }
                    })
                }
                SymmetricSequencing => {
                    counts_exact(&b, &allowed, 1, n) && (1..m).all(|j| g.mul(b[j], b[m - j]) == id)
                }
                _ => counts_exact(&b, &allowed, k, n),
            }
        }
        RSequencing | DoubleRSequencing => {
            let d: Vec<usize> = (0..m).map(|i| quotient(s[(i + m - 1) % m], s[i])).collect();
            counts_exact(&d, &allowed, k, n)
        }
        Harmonious | DoubleHarmonious | RHarmonious | DoubleRHarmonious | SymmetricHarmonious => {
            let d: Vec<usize> = (0..m).map(|i| g.mul(s[(i + m - 1) % m], s[i])).collect();
            if !counts_exact(&d, &allowed, k, n) {
                return false;
            }
            kind != SymmetricHarmonious || (s[0] == id && (1..m).all(|i| g.mul(s[i], s[m - i]) == id))
        }
        PartialHarmonious | PartialRSequencing => unreachable!("complete kinds only"),
    }
}

/// In-place lexicographic successor of a multiset permutation.
pub fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Unpruned enumeration of every arrangement of the term multiset for `kind`
/// on A = G, in lexicographic order; returns the first that [`holds`].
pub fn naive_first(g: &FiniteGroup, kind: PropertyKind) -> Option<Vec<usize>> {
    use PropertyKind::*;
    let id = g.identity();
    let k = kind.multiplicity();
    let mut pool: Vec<usize> = g
        .elements()
        .filter(|&x| !(kind.drops_identity() && x == id))
        .flat_map(|x| std::iter::repeat(x).take(k))
        .collect();
    if pool.is_empty() {
        return None;
    }
    let fixed_first = matches!(
        kind,
        Sequencing | DoubleSequencing | SymmetricSequencing | TwoSequencing | SymmetricHarmonious
    );
    let mut s = Vec::with_capacity(pool.len());
    if fixed_first {
        let pos = pool.iter().position(|&x| x == id).unwrap();
        pool.remove(pos);
        s.push(id);
    }
    let head = s.len();
    s.extend_from_slice(&pool);
    loop {
        if holds(g, kind, &s) {
            return Some(s);
        }
        if !next_permutation(&mut s[head..]) {
            return None;
        }
    }
}

/// The 18-term DR-sequencing of Z2 x Z5 from the worked example, as (K, H).
pub const Z2XZ5_SEQUENCE: [(usize, usize); 18] = [
    (1, 1), (1, 4), (0, 2), (0, 3), (1, 3), (1, 2), (0, 4), (0, 1), (1, 0),
    (0, 1), (1, 4), (1, 2), (0, 3), (1, 3), (0, 2), (0, 4), (1, 1), (1, 0),
];

/// Its displayed consecutive differences, starting with g_m^-1 g_1.
pub const Z2XZ5_QUOTIENTS: [(usize, usize); 18] = [
    (0, 1), (0, 3), (1, 3), (0, 1), (1, 0), (0, 4), (1, 2), (0, 2), (1, 4),
    (1, 1), (1, 3), (0, 3), (1, 1), (1, 0), (1, 4), (0, 2), (1, 2), (0, 4),
];

/// The symmetric sequencing generator of Z4 x Z3 from the worked example.
/// The display puts the Z3 coordinate on top; these tuples are (K, H).
pub const Z4XZ3_SEQUENCE: [(usize, usize); 12] = [
    (0, 0), (1, 0), (3, 1), (2, 2), (2, 1), (3, 2), (1, 2), (0, 1), (0, 2), (1, 1), (3, 0), (2, 0),
];

pub const Z4XZ3_BAR: [(usize, usize); 12] = [
    (0, 0), (1, 0), (2, 1), (3, 1), (0, 2), (1, 1), (2, 0), (3, 2), (0, 1), (1, 2), (2, 2), (3, 0),
];

pub fn tuple_labels(pairs: &[(usize, usize)]) -> Vec<String> {
    pairs.iter().map(|(a, b)| format!("({a},{b})")).collect()
}
