//! Finite groups held as explicit Cayley tables.
//!
//! Groups are built from a [`GroupSpec`], a direct product of cyclic,
//! dihedral and dicyclic atoms. Element indices follow a fixed canonical
//! order per family so that labels and search traces are reproducible:
//!
//! - `Z<n>`: `0, 1, ..., n-1`, labelled by the residue.
//! - `D<n>` (order `n = 2k`): `r0..r{k-1}, sr0..sr{k-1}` with `s r = r^-1 s`.
//! - `Dic<n>` / `Q<n>` (order `n = 4k`): `a0..a{2k-1}, ba0..ba{2k-1}` from
//!   `<a, b | a^2k = 1, b^2 = a^k, b^-1 a b = a^-1>`.
//! - products: lexicographic tuples, first factor most significant, labelled
//!   `(l1,l2,...)`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index of an element in its group's Cayley table.
pub type Element = usize;

pub const DEFAULT_ORDER_CAP: usize = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("invalid atom {atom}: {rule}")]
    Constraint { atom: String, rule: &'static str },
    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),
    #[error("element {element} is out of range for a group of order {order}")]
    OutOfRange { element: usize, order: usize },
    #[error("subset is not a subgroup")]
    NotSubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
}

/// One factor of a [`GroupSpec`]. The parameter is always the atom's order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Atom {
    Cyclic(usize),
    Dihedral(usize),
    Dicyclic(usize),
}

impl Atom {
    pub fn order(self) -> usize {
        match self {
            Atom::Cyclic(n) | Atom::Dihedral(n) | Atom::Dicyclic(n) => n,
        }
    }

    fn validate(self) -> Result<(), GroupError> {
        let rule = match self {
            Atom::Cyclic(n) if n < 1 => Some("cyclic order must be at least 1"),
            Atom::Dihedral(n) if n < 2 || n % 2 != 0 => {
                Some("dihedral order must be even and at least 2")
            }
            Atom::Dicyclic(n) if n < 4 || n % 4 != 0 => {
                Some("dicyclic order must be a positive multiple of 4")
            }
            _ => None,
        };
        match rule {
            Some(rule) => Err(GroupError::Constraint {
                atom: self.to_string(),
                rule,
            }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Cyclic(n) => write!(f, "Z{n}"),
            Atom::Dihedral(n) => write!(f, "D{n}"),
            Atom::Dicyclic(n) => write!(f, "Q{n}"),
        }
    }
}

/// A direct product of atoms, e.g. `Z2xZ5` or `Q8`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct GroupSpec {
    factors: Vec<Atom>,
}

impl GroupSpec {
    pub fn new(factors: Vec<Atom>) -> Result<Self, GroupError> {
        if factors.is_empty() {
            return Err(GroupError::Syntax {
                position: 0,
                message: "a group spec needs at least one atom".into(),
            });
        }
        for atom in &factors {
            atom.validate()?;
        }
        Ok(Self { factors })
    }

    pub fn cyclic(orders: &[usize]) -> Result<Self, GroupError> {
        Self::new(orders.iter().map(|&n| Atom::Cyclic(n)).collect())
    }

    pub fn factors(&self) -> &[Atom] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.factors
            .iter()
            .fold(1usize, |acc, a| acc.saturating_mul(a.order()))
    }

    /// The cyclic orders when every atom is cyclic.
    pub fn cyclic_orders(&self) -> Option<Vec<usize>> {
        self.factors
            .iter()
            .map(|a| match a {
                Atom::Cyclic(n) => Some(*n),
                _ => None,
            })
            .collect()
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, atom) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "{atom}")?;
        }
        Ok(())
    }
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_group_spec(s)
    }
}

impl TryFrom<String> for GroupSpec {
    type Error = GroupError;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        parse_group_spec(&value)
    }
}

impl From<GroupSpec> for String {
    fn from(spec: GroupSpec) -> Self {
        spec.to_string()
    }
}

/// Parses `atom ("x" atom)*` with atoms `Z<n>`, `D<n>`, `Dic<n>` and `Q<n>`.
pub fn parse_group_spec(text: &str) -> Result<GroupSpec, GroupError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut factors = Vec::new();
    loop {
        let (kind, after): (fn(usize) -> Atom, usize) = if text[pos..].starts_with("Dic") {
            (Atom::Dicyclic, pos + 3)
        } else {
            match bytes.get(pos) {
                Some(b'Z') => (Atom::Cyclic, pos + 1),
                Some(b'D') => (Atom::Dihedral, pos + 1),
                Some(b'Q') => (Atom::Dicyclic, pos + 1),
                Some(_) => {
                    return Err(GroupError::Syntax {
                        position: pos,
                        message: "expected an atom: Z<n>, D<n>, Dic<n> or Q<n>".into(),
                    })
                }
                None => {
                    return Err(GroupError::Syntax {
                        position: pos,
                        message: "unexpected end of input, expected an atom".into(),
                    })
                }
            }
        };
        let digits_end = after
            + bytes[after..]
                .iter()
                .take_while(|b| b.is_ascii_digit())
                .count();
        if digits_end == after {
            return Err(GroupError::Syntax {
                position: after,
                message: "expected the atom order".into(),
            });
        }
        let n: usize = text[after..digits_end]
            .parse()
            .map_err(|_| GroupError::Syntax {
                position: after,
                message: "atom order does not fit in an integer".into(),
            })?;
        let atom = kind(n);
        atom.validate()?;
        factors.push(atom);
        pos = digits_end;
        match bytes.get(pos) {
            None => break,
            Some(b'x') => pos += 1,
            Some(_) => {
                return Err(GroupError::Syntax {
                    position: pos,
                    message: "expected 'x' between atoms".into(),
                })
            }
        }
    }
    GroupSpec::new(factors)
}

#[derive(Debug, Clone, Copy)]
pub struct GroupConfig {
    /// Largest order that will be constructed.
    pub order_cap: usize,
    /// Largest order for which associativity is checked on all triples.
    pub assoc_cap: usize,
}

impl Default for GroupConfig {
    fn default() -> Self {
        Self {
            order_cap: DEFAULT_ORDER_CAP,
            assoc_cap: DEFAULT_ORDER_CAP,
        }
    }
}

/// A finite group as an explicit multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<Element>,
    identity: Element,
    inverses: Vec<Element>,
    labels: Vec<String>,
    spec: Option<GroupSpec>,
}

impl FiniteGroup {
    /// Validates a row-major table (`table[a * n + b] = a * b`).
    pub fn from_table(
        table: Vec<Element>,
        labels: Vec<String>,
        config: &GroupConfig,
    ) -> Result<Self, GroupError> {
        let n = labels.len();
        if n == 0 {
            return Err(GroupError::InvalidTable("empty group".into()));
        }
        if n > config.order_cap {
            return Err(GroupError::OrderCap {
                order: n,
                cap: config.order_cap,
            });
        }
        if table.len() != n * n {
            return Err(GroupError::InvalidTable(format!(
                "expected {} entries, got {}",
                n * n,
                table.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&x| x >= n) {
            return Err(GroupError::InvalidTable(format!("entry {bad} out of range")));
        }
        // latin square
        let mut seen = vec![false; n];
        for a in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for b in 0..n {
                let x = table[a * n + b];
                if std::mem::replace(&mut seen[x], true) {
                    return Err(GroupError::InvalidTable(format!("row {a} repeats {x}")));
                }
            }
        }
        for b in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for a in 0..n {
                let x = table[a * n + b];
                if std::mem::replace(&mut seen[x], true) {
                    return Err(GroupError::InvalidTable(format!("column {b} repeats {x}")));
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e * n + a] == a && table[a * n + e] == a))
            .ok_or_else(|| GroupError::InvalidTable("no identity element".into()))?;
        let mut inverses = vec![0; n];
        for a in 0..n {
            inverses[a] = (0..n)
                .find(|&b| table[a * n + b] == identity)
                .ok_or_else(|| GroupError::InvalidTable(format!("{a} has no inverse")))?;
            if table[inverses[a] * n + a] != identity {
                return Err(GroupError::InvalidTable(format!("{a} has no two-sided inverse")));
            }
        }
        if n <= config.assoc_cap {
            for a in 0..n {
                for b in 0..n {
                    let ab = table[a * n + b];
                    for c in 0..n {
                        if table[ab * n + c] != table[a * n + table[b * n + c]] {
                            return Err(GroupError::InvalidTable(format!(
                                "not associative at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        }
        let mut unique = BTreeSet::new();
        if let Some(dup) = labels.iter().find(|l| !unique.insert(l.as_str())) {
            return Err(GroupError::InvalidTable(format!("duplicate label {dup}")));
        }
        Ok(Self {
            order: n,
            table,
            identity,
            inverses,
            labels,
            spec: None,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Element {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: Element) -> Element {
        self.inverses[a]
    }

    /// `a^-1 b`
    #[inline]
    pub fn left_quotient(&self, a: Element, b: Element) -> Element {
        self.mul(self.inverses[a], b)
    }

    pub fn pow(&self, a: Element, k: i64) -> Element {
        let base = if k < 0 { self.inv(a) } else { a };
        (0..k.unsigned_abs()).fold(self.identity, |acc, _| self.mul(acc, base))
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.order
    }

    pub fn label(&self, a: Element) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn find_label(&self, label: &str) -> Option<Element> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn spec(&self) -> Option<&GroupSpec> {
        self.spec.as_ref()
    }

    pub fn table(&self) -> &[Element] {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn check(&self, a: Element) -> Result<Element, GroupError> {
        if a < self.order {
            Ok(a)
        } else {
            Err(GroupError::OutOfRange {
                element: a,
                order: self.order,
            })
        }
    }

    /// Product of `elems` taken left to right.
    pub fn product_of(&self, elems: impl IntoIterator<Item = Element>) -> Element {
        elems
            .into_iter()
            .fold(self.identity, |acc, x| self.mul(acc, x))
    }
}

fn cyclic_table(n: usize) -> (Vec<Element>, Vec<String>) {
    let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
    (table, (0..n).map(|i| i.to_string()).collect())
}

fn dihedral_table(n: usize) -> (Vec<Element>, Vec<String>) {
    let k = n / 2;
    // r^i -> i, s r^i -> k + i
    let mul = |a: usize, b: usize| -> usize {
        let (sa, ia) = (a >= k, a % k);
        let (sb, ib) = (b >= k, b % k);
        match (sa, sb) {
            (false, false) => (ia + ib) % k,
            (false, true) => k + (ib + k - ia) % k,
            (true, false) => k + (ia + ib) % k,
            (true, true) => (ib + k - ia) % k,
        }
    };
    let table = (0..n * n).map(|i| mul(i / n, i % n)).collect();
    let labels = (0..k)
        .map(|i| format!("r{i}"))
        .chain((0..k).map(|i| format!("sr{i}")))
        .collect();
    (table, labels)
}

fn dicyclic_table(n: usize) -> (Vec<Element>, Vec<String>) {
    let k = n / 4;
    let h = 2 * k;
    // a^i -> i, b a^i -> h + i
    let mul = |x: usize, y: usize| -> usize {
        let (bx, i) = (x >= h, x % h);
        let (by, j) = (y >= h, y % h);
        match (bx, by) {
            (false, false) => (i + j) % h,
            (false, true) => h + (j + h - i) % h,
            (true, false) => h + (i + j) % h,
            (true, true) => (k + j + h - i) % h,
        }
    };
    let table = (0..n * n).map(|i| mul(i / n, i % n)).collect();
    let labels = (0..h)
        .map(|i| format!("a{i}"))
        .chain((0..h).map(|i| format!("ba{i}")))
        .collect();
    (table, labels)
}

fn product_tables(parts: &[(Vec<Element>, Vec<String>)]) -> (Vec<Element>, Vec<String>) {
    if parts.len() == 1 {
        return parts[0].clone();
    }
    let orders: Vec<usize> = parts.iter().map(|p| p.1.len()).collect();
    let n: usize = orders.iter().product();
    let digits = |mut x: usize| -> Vec<usize> {
        let mut d = vec![0; orders.len()];
        for (slot, &m) in d.iter_mut().zip(&orders).rev() {
            *slot = x % m;
            x /= m;
        }
        d
    };
    let all_digits: Vec<Vec<usize>> = (0..n).map(digits).collect();
    let mut table = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            let mut idx = 0;
            for (f, &m) in orders.iter().enumerate() {
                let (x, y) = (all_digits[a][f], all_digits[b][f]);
                idx = idx * m + parts[f].0[x * m + y];
            }
            table[a * n + b] = idx;
        }
    }
    let labels = all_digits
        .iter()
        .map(|d| {
            let inner: Vec<&str> = d
                .iter()
                .enumerate()
                .map(|(f, &x)| parts[f].1[x].as_str())
                .collect();
            format!("({})", inner.join(","))
        })
        .collect();
    (table, labels)
}

pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup, GroupError> {
    build_group_with(spec, &GroupConfig::default())
}

pub fn build_group_with(spec: &GroupSpec, config: &GroupConfig) -> Result<FiniteGroup, GroupError> {
    let order = spec.order();
    if order > config.order_cap {
        return Err(GroupError::OrderCap {
            order,
            cap: config.order_cap,
        });
    }
    let parts: Vec<_> = spec
        .factors()
        .iter()
        .map(|atom| match *atom {
            Atom::Cyclic(n) => cyclic_table(n),
            Atom::Dihedral(n) => dihedral_table(n),
            Atom::Dicyclic(n) => dicyclic_table(n),
        })
        .collect();
    let (table, labels) = product_tables(&parts);
    let mut group = FiniteGroup::from_table(table, labels, config)?;
    group.spec = Some(spec.clone());
    Ok(group)
}

/// Direct product with lexicographic indexing and flat tuple labels.
pub fn direct_product(groups: &[&FiniteGroup]) -> Result<FiniteGroup, GroupError> {
    let parts: Vec<_> = groups
        .iter()
        .map(|g| (g.table.clone(), g.labels.clone()))
        .collect();
    let (table, labels) = product_tables(&parts);
    let specs: Option<Vec<&GroupSpec>> = groups.iter().map(|g| g.spec()).collect();
    if let Some(specs) = &specs {
        let spec = GroupSpec {
            factors: specs.iter().flat_map(|s| s.factors.iter().copied()).collect(),
        };
        if let Ok(group) = build_group(&spec) {
            return Ok(group);
        }
    }
    let mut group = FiniteGroup::from_table(table, labels, &GroupConfig::default())?;
    group.spec = specs.map(|s| GroupSpec {
        factors: s.iter().flat_map(|s| s.factors.iter().copied()).collect(),
    });
    Ok(group)
}

/// A set of elements of one group, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subset {
    order: usize,
    members: Vec<Element>,
}

impl Subset {
    pub fn new(
        group: &FiniteGroup,
        members: impl IntoIterator<Item = Element>,
    ) -> Result<Self, GroupError> {
        let set: BTreeSet<Element> = members.into_iter().collect();
        if let Some(&bad) = set.iter().find(|&&x| x >= group.order) {
            return Err(GroupError::OutOfRange {
                element: bad,
                order: group.order,
            });
        }
        Ok(Self {
            order: group.order,
            members: set.into_iter().collect(),
        })
    }

    pub fn full(group: &FiniteGroup) -> Self {
        Self {
            order: group.order,
            members: group.elements().collect(),
        }
    }

    pub fn group_order(&self) -> usize {
        self.order
    }

    pub fn members(&self) -> &[Element] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, a: Element) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    pub fn without(&self, a: Element) -> Self {
        Self {
            order: self.order,
            members: self.members.iter().copied().filter(|&x| x != a).collect(),
        }
    }

    pub fn mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.order];
        for &m in &self.members {
            mask[m] = true;
        }
        mask
    }
}

pub fn element_order(group: &FiniteGroup, a: Element) -> usize {
    let mut x = a;
    let mut d = 1;
    while x != group.identity {
        x = group.mul(x, a);
        d += 1;
    }
    d
}

/// Closure of `generators` under multiplication.
pub fn generated_subgroup(group: &FiniteGroup, generators: &[Element]) -> Subset {
    let mut seen = vec![false; group.order];
    seen[group.identity] = true;
    let mut queue = VecDeque::from([group.identity]);
    while let Some(x) = queue.pop_front() {
        for &s in generators {
            let y = group.mul(x, s);
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    Subset {
        order: group.order,
        members: (0..group.order).filter(|&x| seen[x]).collect(),
    }
}

pub fn commutator_subgroup(group: &FiniteGroup) -> Subset {
    let mut commutators = BTreeSet::new();
    for a in group.elements() {
        for b in group.elements() {
            let ab = group.mul(a, b);
            let ba = group.mul(b, a);
            commutators.insert(group.left_quotient(ba, ab));
        }
    }
    let gens: Vec<Element> = commutators.into_iter().collect();
    generated_subgroup(group, &gens)
}

pub fn is_subgroup(group: &FiniteGroup, n: &Subset) -> bool {
    n.contains(group.identity)
        && n.iter()
            .all(|a| n.iter().all(|b| n.contains(group.mul(a, b))))
}

pub fn is_normal(group: &FiniteGroup, n: &Subset) -> bool {
    n.iter().all(|x| {
        group
            .elements()
            .all(|g| n.contains(group.mul(group.mul(g, x), group.inv(g))))
    })
}

/// A quotient group together with the projection onto it.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: FiniteGroup,
    pub projection: Vec<Element>,
}

/// `G/N` on left cosets; coset `i` is labelled by its smallest element.
pub fn quotient_group(group: &FiniteGroup, normal: &Subset) -> Result<Quotient, GroupError> {
    if normal.group_order() != group.order() || !is_subgroup(group, normal) {
        return Err(GroupError::NotSubgroup);
    }
    if !is_normal(group, normal) {
        return Err(GroupError::NotNormal);
    }
    let mut projection = vec![usize::MAX; group.order];
    let mut reps = Vec::new();
    for g in group.elements() {
        if projection[g] == usize::MAX {
            let idx = reps.len();
            reps.push(g);
            for x in normal.iter() {
                projection[group.mul(g, x)] = idx;
            }
        }
    }
    let q = reps.len();
    let mut table = vec![0; q * q];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            table[i * q + j] = projection[group.mul(a, b)];
        }
    }
    let labels = reps.iter().map(|&r| format!("[{}]", group.label(r))).collect();
    let quotient = FiniteGroup::from_table(table, labels, &GroupConfig::default())?;
    Ok(Quotient {
        group: quotient,
        projection,
    })
}

/// The projection `G -> G/[G,G]`.
#[derive(Debug, Clone)]
pub struct AbelianizationMap {
    pub commutator: Subset,
    pub quotient: FiniteGroup,
    pub projection: Vec<Element>,
}

impl AbelianizationMap {
    pub fn project(&self, a: Element) -> Element {
        self.projection[a]
    }

    /// `∑X`: image of the product of `elems` (order-independent).
    pub fn sum(&self, elems: impl IntoIterator<Item = Element>) -> Element {
        elems
            .into_iter()
            .fold(self.quotient.identity(), |acc, x| {
                self.quotient.mul(acc, self.projection[x])
            })
    }
}

pub fn abelianization(group: &FiniteGroup) -> AbelianizationMap {
    let commutator = commutator_subgroup(group);
    let Quotient {
        group: quotient,
        projection,
    } = quotient_group(group, &commutator).expect("commutator subgroup is normal");
    AbelianizationMap {
        commutator,
        quotient,
        projection,
    }
}

pub fn subset_sum(map: &AbelianizationMap, subset: &Subset) -> Element {
    map.sum(subset.iter())
}

/// `P(G) = p[G,G]` where `p` is the product of all elements in index order.
pub fn product_coset(group: &FiniteGroup) -> Subset {
    let p = group.product_of(group.elements());
    let commutator = commutator_subgroup(group);
    Subset {
        order: group.order,
        members: commutator
            .iter()
            .map(|c| group.mul(p, c))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect(),
    }
}

/// The unique involution, when there is exactly one.
pub fn binary_involution(group: &FiniteGroup) -> Option<Element> {
    let mut involutions = group
        .elements()
        .filter(|&a| a != group.identity && group.mul(a, a) == group.identity);
    match (involutions.next(), involutions.next()) {
        (Some(i), None) => Some(i),
        _ => None,
    }
}

pub fn is_binary(group: &FiniteGroup) -> bool {
    binary_involution(group).is_some()
}

/// The product of all elements lies in the commutator subgroup; equivalent to
/// the Sylow 2-subgroups being trivial or non-cyclic.
pub fn hall_paige(group: &FiniteGroup) -> bool {
    let map = abelianization(group);
    map.sum(group.elements()) == map.quotient.identity()
}

pub fn is_elementary_abelian_2(group: &FiniteGroup) -> bool {
    group.is_abelian()
        && group
            .elements()
            .all(|a| group.mul(a, a) == group.identity)
}

/// Label -> element lookup table.
pub fn label_index(group: &FiniteGroup) -> HashMap<&str, Element> {
    group
        .labels()
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FiniteGroup {
        build_group(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn parses_atoms() {
        let spec = parse_group_spec("Z2xZ5").unwrap();
        assert_eq!(spec.factors(), &[Atom::Cyclic(2), Atom::Cyclic(5)]);
        assert_eq!(parse_group_spec("Q8").unwrap().factors(), &[Atom::Dicyclic(8)]);
        assert_eq!(parse_group_spec("Dic12").unwrap().factors(), &[Atom::Dicyclic(12)]);
        assert_eq!(parse_group_spec("D10xZ3").unwrap().to_string(), "D10xZ3");
        assert_eq!(parse_group_spec("Dic8").unwrap().to_string(), "Q8");
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(matches!(
            parse_group_spec("D7"),
            Err(GroupError::Constraint { rule, .. }) if rule.contains("dihedral order must be even")
        ));
        assert!(matches!(parse_group_spec("Dic6"), Err(GroupError::Constraint { .. })));
        assert!(matches!(parse_group_spec("Z0"), Err(GroupError::Constraint { .. })));
        assert_eq!(
            parse_group_spec("Z2*Z3"),
            Err(GroupError::Syntax {
                position: 2,
                message: "expected 'x' between atoms".into()
            })
        );
        assert!(matches!(parse_group_spec("Z2x"), Err(GroupError::Syntax { position: 3, .. })));
        assert!(matches!(parse_group_spec("Zx"), Err(GroupError::Syntax { position: 1, .. })));
        assert!(matches!(parse_group_spec(""), Err(GroupError::Syntax { position: 0, .. })));
        assert!(matches!(parse_group_spec("A5"), Err(GroupError::Syntax { position: 0, .. })));
    }

    #[test]
    fn order_cap_is_enforced() {
        let spec: GroupSpec = "Z16xZ17".parse().unwrap();
        assert_eq!(
            build_group(&spec),
            Err(GroupError::OrderCap { order: 272, cap: 256 })
        );
    }

    #[test]
    fn cyclic_and_klein() {
        let z4 = g("Z4");
        assert_eq!(z4.mul(1, 3), 0);
        let v = g("Z2xZ2");
        assert!(v.elements().skip(1).all(|a| element_order(&v, a) == 2));
        assert_eq!(v.label(3), "(1,1)");
        assert!(g("Z1").order() == 1);
    }

    #[test]
    fn quaternion_structure() {
        let q8 = g("Q8");
        assert_eq!(q8.order(), 8);
        let invols: Vec<_> = q8
            .elements()
            .filter(|&a| element_order(&q8, a) == 2)
            .collect();
        assert_eq!(invols, vec![2]); // a^2
        let b = q8.find_label("ba0").unwrap();
        assert_eq!(element_order(&q8, b), 4);
        assert!(!q8.is_abelian());
        assert_eq!(binary_involution(&q8), Some(2));
    }

    #[test]
    fn dihedral_relations() {
        let d8 = g("D8");
        let r = d8.find_label("r1").unwrap();
        let s = d8.find_label("sr0").unwrap();
        assert_eq!(element_order(&d8, r), 4);
        assert_eq!(element_order(&d8, s), 2);
        // s r s = r^-1
        assert_eq!(d8.mul(d8.mul(s, r), s), d8.inv(r));
        assert_eq!(d8.mul(s, r), d8.find_label("sr1").unwrap());
    }

    #[test]
    fn element_orders() {
        assert_eq!(element_order(&g("Z4"), 2), 2);
        let z = g("Z2xZ5");
        assert_eq!(element_order(&z, z.find_label("(1,1)").unwrap()), 10);
    }

    #[test]
    fn commutators() {
        assert_eq!(commutator_subgroup(&g("Z6")).members(), &[0]);
        let q8 = g("Q8");
        assert_eq!(commutator_subgroup(&q8).members(), &[0, 2]);
        assert_eq!(commutator_subgroup(&g("D8")).len(), 2);
        assert_eq!(commutator_subgroup(&g("D6")).len(), 3);
    }

    #[test]
    fn abelianizations() {
        let z5 = abelianization(&g("Z5"));
        assert_eq!(z5.quotient.order(), 5);
        let q8 = g("Q8");
        let ab = abelianization(&q8);
        assert_eq!(ab.quotient.order(), 4);
        assert!(is_elementary_abelian_2(&ab.quotient));
        assert_eq!(abelianization(&g("D6")).quotient.order(), 2);
    }

    #[test]
    fn subset_sums() {
        let z4 = g("Z4");
        let ab = abelianization(&z4);
        assert_eq!(subset_sum(&ab, &Subset::full(&z4)), 2);
        let q8 = g("Q8");
        let ab = abelianization(&q8);
        assert_eq!(subset_sum(&ab, &Subset::full(&q8)), ab.quotient.identity());
        assert_eq!(
            subset_sum(&ab, &Subset::new(&q8, [0]).unwrap()),
            ab.quotient.identity()
        );
    }

    #[test]
    fn product_cosets() {
        assert_eq!(product_coset(&g("Z4")).members(), &[2]);
        assert_eq!(product_coset(&g("Z5")).members(), &[0]);
        let d6 = g("D6");
        let coset = product_coset(&d6);
        assert_eq!(coset.members(), &[3, 4, 5]);
    }

    #[test]
    fn binary_and_hall_paige() {
        assert_eq!(binary_involution(&g("Z4")), Some(2));
        assert!(!is_binary(&g("Z2xZ2")));
        assert!(hall_paige(&g("Z3")));
        assert!(!hall_paige(&g("Z4")));
        assert!(hall_paige(&g("Q8")));
        assert!(hall_paige(&g("Z2xZ2")));
        assert!(!hall_paige(&g("D6")));
    }

    #[test]
    fn elementary_abelian() {
        assert!(is_elementary_abelian_2(&g("Z2xZ2")));
        assert!(is_elementary_abelian_2(&g("Z2xZ2xZ2")));
        assert!(!is_elementary_abelian_2(&g("Z4")));
    }

    #[test]
    fn quotients() {
        let z4 = g("Z4");
        let q = quotient_group(&z4, &Subset::new(&z4, [0, 2]).unwrap()).unwrap();
        assert_eq!(q.group.order(), 2);
        let q8 = g("Q8");
        let centre = generated_subgroup(&q8, &[2]);
        let q = quotient_group(&q8, &centre).unwrap();
        assert_eq!(q.group.order(), 4);
        assert!(q.group.elements().all(|a| element_order(&q.group, a) <= 2));
        let z6 = g("Z6");
        let q = quotient_group(&z6, &Subset::new(&z6, [0]).unwrap()).unwrap();
        assert_eq!(q.group.order(), 6);
        assert!(q.group.elements().all(|a| element_order(&q.group, a) == element_order(&z6, a)));
    }

    #[test]
    fn quotient_errors() {
        let z4 = g("Z4");
        assert!(matches!(
            quotient_group(&z4, &Subset::new(&z4, [0, 1]).unwrap()),
            Err(GroupError::NotSubgroup)
        ));
        let d6 = g("D6");
        let reflection = generated_subgroup(&d6, &[3]);
        assert!(matches!(quotient_group(&d6, &reflection), Err(GroupError::NotNormal)));
    }

    #[test]
    fn rejects_non_group_tables() {
        let cfg = GroupConfig::default();
        // Latin square without associativity: the loop of order 5 below
        let t = vec![
            0, 1, 2, 3, 4, //
            1, 0, 3, 4, 2, //
            2, 4, 0, 1, 3, //
            3, 2, 4, 0, 1, //
            4, 3, 1, 2, 0,
        ];
        let labels = (0..5).map(|i| i.to_string()).collect();
        assert!(matches!(
            FiniteGroup::from_table(t, labels, &cfg),
            Err(GroupError::InvalidTable(_))
        ));
        let labels = (0..2).map(|i| i.to_string()).collect();
        assert!(FiniteGroup::from_table(vec![0, 1, 1, 1], labels, &cfg).is_err());
    }

    #[test]
    fn product_labels_and_specs() {
        let a = g("Z2");
        let b = g("D6");
        let p = direct_product(&[&a, &b]).unwrap();
        assert_eq!(p.order(), 12);
        assert_eq!(p.label(4), "(0,sr1)");
        assert_eq!(p.spec().unwrap().to_string(), "Z2xD6");
    }
}
