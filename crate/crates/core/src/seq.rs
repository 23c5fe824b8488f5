//! Derived sequences and verifiers for the sequencing properties.
//!
//! For a sequence `g_1..g_m` write `q_i = g_{i-1}^-1 g_i` and
//! `p_i = g_{i-1} g_i` with the cyclic convention `g_0 = g_m`. Then
//!
//! - [`bar_seq`] is `g_1, q_2, ..., q_m` (linear quotients),
//! - [`check_seq`] is `q_1, ..., q_m` (cyclic quotients),
//! - [`hat_seq`] is `p_1, ..., p_m` (cyclic products).
//!
//! Positions in reports are 1-based.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{Element, FiniteGroup, Subset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeqError {
    #[error("a sequence needs at least one term")]
    Empty,
    #[error("term {element} at position {position} is outside a group of order {order}")]
    OutOfRange {
        position: usize,
        element: Element,
        order: usize,
    },
    #[error("kind {0} is a partial kind; use verify_partial")]
    PartialKind(PropertyKind),
    #[error("kind {0} is not a partial kind")]
    NotPartialKind(PropertyKind),
    #[error("the subset without the identity is empty")]
    EmptyWithoutIdentity,
    #[error("subset belongs to a group of order {subset}, not {group}")]
    SubsetMismatch { subset: usize, group: usize },
    #[error("|B| must be |A| - 1 (|A| = {a}, |B| = {b})")]
    RainbowSize { a: usize, b: usize },
    #[error("unknown property kind {0:?}")]
    UnknownKind(String),
}

/// An ordered list of element indices, never empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seq(Vec<Element>);

impl Seq {
    pub fn new(terms: Vec<Element>) -> Result<Self, SeqError> {
        if terms.is_empty() {
            return Err(SeqError::Empty);
        }
        Ok(Self(terms))
    }

    /// Like [`Seq::new`] but also range-checks the terms against `group`.
    pub fn in_group(group: &FiniteGroup, terms: Vec<Element>) -> Result<Self, SeqError> {
        let seq = Self::new(terms)?;
        seq.check_range(group)?;
        Ok(seq)
    }

    pub fn terms(&self) -> &[Element] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn into_terms(self) -> Vec<Element> {
        self.0
    }

    pub fn labels<'g>(&self, group: &'g FiniteGroup) -> Vec<&'g str> {
        self.0.iter().map(|&x| group.label(x)).collect()
    }

    fn check_range(&self, group: &FiniteGroup) -> Result<(), SeqError> {
        match self.0.iter().position(|&x| x >= group.order()) {
            Some(i) => Err(SeqError::OutOfRange {
                position: i + 1,
                element: self.0[i],
                order: group.order(),
            }),
            None => Ok(()),
        }
    }
}

impl std::ops::Index<usize> for Seq {
    type Output = Element;

    fn index(&self, i: usize) -> &Element {
        &self.0[i]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PropertyKind {
    Sequencing,
    DoubleSequencing,
    RSequencing,
    DoubleRSequencing,
    SymmetricSequencing,
    TwoSequencing,
    Harmonious,
    DoubleHarmonious,
    RHarmonious,
    DoubleRHarmonious,
    SymmetricHarmonious,
    PartialHarmonious,
    PartialRSequencing,
}

impl PropertyKind {
    pub const ALL: [PropertyKind; 13] = [
        PropertyKind::Sequencing,
        PropertyKind::DoubleSequencing,
        PropertyKind::RSequencing,
        PropertyKind::DoubleRSequencing,
        PropertyKind::SymmetricSequencing,
        PropertyKind::TwoSequencing,
        PropertyKind::Harmonious,
        PropertyKind::DoubleHarmonious,
        PropertyKind::RHarmonious,
        PropertyKind::DoubleRHarmonious,
        PropertyKind::SymmetricHarmonious,
        PropertyKind::PartialHarmonious,
        PropertyKind::PartialRSequencing,
    ];

    /// Every kind except the two partial ones.
    pub const COMPLETE: [PropertyKind; 11] = [
        PropertyKind::Sequencing,
        PropertyKind::DoubleSequencing,
        PropertyKind::RSequencing,
        PropertyKind::DoubleRSequencing,
        PropertyKind::SymmetricSequencing,
        PropertyKind::TwoSequencing,
        PropertyKind::Harmonious,
        PropertyKind::DoubleHarmonious,
        PropertyKind::RHarmonious,
        PropertyKind::DoubleRHarmonious,
        PropertyKind::SymmetricHarmonious,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PropertyKind::Sequencing => "sequencing",
            PropertyKind::DoubleSequencing => "double-sequencing",
            PropertyKind::RSequencing => "r-sequencing",
            PropertyKind::DoubleRSequencing => "double-r-sequencing",
            PropertyKind::SymmetricSequencing => "symmetric-sequencing",
            PropertyKind::TwoSequencing => "two-sequencing",
            PropertyKind::Harmonious => "harmonious",
            PropertyKind::DoubleHarmonious => "double-harmonious",
            PropertyKind::RHarmonious => "r-harmonious",
            PropertyKind::DoubleRHarmonious => "double-r-harmonious",
            PropertyKind::SymmetricHarmonious => "symmetric-harmonious",
            PropertyKind::PartialHarmonious => "partial-harmonious",
            PropertyKind::PartialRSequencing => "partial-r-sequencing",
        }
    }

    pub fn is_partial(self) -> bool {
        matches!(
            self,
            PropertyKind::PartialHarmonious | PropertyKind::PartialRSequencing
        )
    }

    /// Kinds whose terms range over `A \ {1}`.
    pub fn drops_identity(self) -> bool {
        matches!(
            self,
            PropertyKind::RSequencing
                | PropertyKind::DoubleRSequencing
                | PropertyKind::RHarmonious
                | PropertyKind::DoubleRHarmonious
                | PropertyKind::PartialRSequencing
        )
    }

    /// Required multiplicity of each element.
    pub fn multiplicity(self) -> usize {
        match self {
            PropertyKind::DoubleSequencing
            | PropertyKind::DoubleRSequencing
            | PropertyKind::DoubleHarmonious
            | PropertyKind::DoubleRHarmonious => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for PropertyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PropertyKind {
    type Err = SeqError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "dr-sequencing" {
            return Ok(PropertyKind::DoubleRSequencing);
        }
        PropertyKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| SeqError::UnknownKind(s.to_string()))
    }
}

pub fn bar_seq(group: &FiniteGroup, s: &Seq) -> Seq {
    let t = s.terms();
    let mut out = Vec::with_capacity(t.len());
    out.push(t[0]);
    out.extend(t.windows(2).map(|w| group.left_quotient(w[0], w[1])));
    Seq(out)
}

pub fn check_seq(group: &FiniteGroup, s: &Seq) -> Seq {
    let t = s.terms();
    let m = t.len();
    Seq((0..m)
        .map(|i| group.left_quotient(t[(i + m - 1) % m], t[i]))
        .collect())
}

pub fn hat_seq(group: &FiniteGroup, s: &Seq) -> Seq {
    let t = s.terms();
    let m = t.len();
    Seq((0..m).map(|i| group.mul(t[(i + m - 1) % m], t[i])).collect())
}

/// Prefix products `s_1, s_1 s_2, ...`; inverts [`bar_seq`].
pub fn prefix_products(group: &FiniteGroup, s: &Seq) -> Seq {
    let mut acc = group.identity();
    Seq(s
        .terms()
        .iter()
        .map(|&x| {
            acc = group.mul(acc, x);
            acc
        })
        .collect())
}

/// Why a multiset membership test `s ∈ P_k(A)` failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "problem", rename_all = "kebab-case")]
pub enum MultisetFailure {
    NotInSet { position: usize, element: Element },
    Excess { position: usize, element: Element },
    Missing { element: Element },
}

fn multiset_failure(terms: &[Element], set: &Subset, k: usize) -> Option<MultisetFailure> {
    let mut counts = vec![0usize; set.group_order()];
    for (i, &x) in terms.iter().enumerate() {
        if !set.contains(x) {
            return Some(MultisetFailure::NotInSet {
                position: i + 1,
                element: x,
            });
        }
        counts[x] += 1;
        if counts[x] > k {
            return Some(MultisetFailure::Excess {
                position: i + 1,
                element: x,
            });
        }
    }
    set.iter()
        .find(|&x| counts[x] < k)
        .map(|element| MultisetFailure::Missing { element })
}

/// `s ∈ P_k(A)`: every element of `A` exactly `k` times and nothing else.
pub fn is_pk(s: &Seq, set: &Subset, k: usize) -> bool {
    s.terms().iter().all(|&x| x < set.group_order()) && multiset_failure(s.terms(), set, k).is_none()
}

/// The first violated clause of a definition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "clause", rename_all = "kebab-case")]
pub enum Failure {
    Terms(MultisetFailure),
    FirstTerm { found: Element },
    Derived(MultisetFailure),
    /// `b_i b_{m+2-i} != 1`
    DerivedSymmetry { position: usize, mirror: usize },
    /// `s_{1+i} s_{1+n-i} != 1`
    TermSymmetry { position: usize, mirror: usize },
    PairCount {
        element: Element,
        expected: usize,
        found: usize,
    },
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn ms(f: &mut fmt::Formatter<'_>, what: &str, m: &MultisetFailure) -> fmt::Result {
            match m {
                MultisetFailure::NotInSet { position, element } => write!(
                    f,
                    "{what}: element {element} at position {position} is not in the set"
                ),
                MultisetFailure::Excess { position, element } => write!(
                    f,
                    "{what}: element {element} at position {position} occurs too often"
                ),
                MultisetFailure::Missing { element } => {
                    write!(f, "{what}: element {element} occurs too rarely")
                }
            }
        }
        match self {
            Failure::Terms(m) => ms(f, "terms", m),
            Failure::Derived(m) => ms(f, "derived sequence", m),
            Failure::FirstTerm { found } => {
                write!(f, "first term is {found}, not the identity")
            }
            Failure::DerivedSymmetry { position, mirror } => write!(
                f,
                "derived terms at positions {position} and {mirror} are not mutually inverse"
            ),
            Failure::TermSymmetry { position, mirror } => write!(
                f,
                "terms at positions {position} and {mirror} are not mutually inverse"
            ),
            Failure::PairCount {
                element,
                expected,
                found,
            } => write!(
                f,
                "quotients hit the class of {element} {found} times, expected {expected}"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub failure: Option<Failure>,
    pub derived: Seq,
}

impl VerifyReport {
    fn new(failure: Option<Failure>, derived: Seq) -> Self {
        Self {
            pass: failure.is_none(),
            failure,
            derived,
        }
    }
}

fn check_subset(group: &FiniteGroup, set: &Subset) -> Result<(), SeqError> {
    if set.group_order() != group.order() {
        return Err(SeqError::SubsetMismatch {
            subset: set.group_order(),
            group: group.order(),
        });
    }
    Ok(())
}

/// Checks the literal definition of `kind` for `s` over `set`.
pub fn verify(
    group: &FiniteGroup,
    set: &Subset,
    kind: PropertyKind,
    s: &Seq,
) -> Result<VerifyReport, SeqError> {
    use PropertyKind::*;
    check_subset(group, set)?;
    s.check_range(group)?;
    if kind.is_partial() {
        return Err(SeqError::PartialKind(kind));
    }
    let id = group.identity();
    let owned;
    let set = if kind.drops_identity() {
        owned = set.without(id);
        if owned.is_empty() {
            return Err(SeqError::EmptyWithoutIdentity);
        }
        &owned
    } else {
        set
    };
    let k = kind.multiplicity();
    let terms = s.terms();
    let m = terms.len();

    let derived = match kind {
        Sequencing | DoubleSequencing | SymmetricSequencing | TwoSequencing => bar_seq(group, s),
        RSequencing | DoubleRSequencing => check_seq(group, s),
        _ => hat_seq(group, s),
    };

    let mut failure = multiset_failure(terms, set, k).map(Failure::Terms);
    let needs_identity_first = matches!(
        kind,
        Sequencing | DoubleSequencing | SymmetricSequencing | TwoSequencing | SymmetricHarmonious
    );
    if failure.is_none() && needs_identity_first && terms[0] != id {
        failure = Some(Failure::FirstTerm { found: terms[0] });
    }
    if failure.is_none() {
        failure = match kind {
            TwoSequencing => pair_count_failure(group, set, derived.terms()),
            _ => multiset_failure(derived.terms(), set, k).map(Failure::Derived),
        };
    }
    if failure.is_none() && kind == SymmetricSequencing {
        // b_i b_{m+2-i} = 1 for 2 <= i <= m (i = 1 wraps onto b_1 = 1)
        let b = derived.terms();
        failure = (2..=m)
            .find(|&i| group.mul(b[i - 1], b[m + 1 - i]) != id)
            .map(|i| Failure::DerivedSymmetry {
                position: i,
                mirror: m + 2 - i,
            });
    }
    if failure.is_none() && kind == SymmetricHarmonious {
        failure = (1..m)
            .find(|&i| group.mul(terms[i], terms[m - i]) != id)
            .map(|i| Failure::TermSymmetry {
                position: i + 1,
                mirror: m - i + 1,
            });
    }
    Ok(VerifyReport::new(failure, derived))
}

fn pair_count_failure(group: &FiniteGroup, set: &Subset, b: &[Element]) -> Option<Failure> {
    let id = group.identity();
    let mut counts = vec![0usize; group.order()];
    for &x in b {
        counts[x] += 1;
    }
    set.iter().find_map(|g| {
        let inv = group.inv(g);
        let (expected, found) = if group.mul(g, g) != id {
            (2, counts[g] + counts[inv])
        } else {
            (1, counts[g])
        };
        (expected != found).then_some(Failure::PairCount {
            element: g,
            expected,
            found,
        })
    })
}

/// Number of quotient positions accounted for by the terrace counts of `b`:
/// involutions once, non-involution classes `{g, g^-1}` twice.
pub fn two_sequencing_positions(group: &FiniteGroup, set: &Subset, b: &Seq) -> usize {
    let id = group.identity();
    let mut counted = vec![false; group.order()];
    let mut total = 0;
    for g in set.iter() {
        if counted[g] {
            continue;
        }
        let inv = group.inv(g);
        counted[g] = true;
        counted[inv] = true;
        total += b
            .terms()
            .iter()
            .filter(|&&x| x == g || (group.mul(g, g) != id && x == inv))
            .count();
    }
    total
}

/// Checks the partial definitions on a linear sequence; `Err` carries the
/// violated clause as a [`Failure`].
pub fn partial_failure(
    group: &FiniteGroup,
    set: &Subset,
    kind: PropertyKind,
    s: &Seq,
) -> Result<Option<Failure>, SeqError> {
    check_subset(group, set)?;
    s.check_range(group)?;
    let id = group.identity();
    let owned;
    let (set, quotients) = match kind {
        PropertyKind::PartialHarmonious => (set, false),
        PropertyKind::PartialRSequencing => {
            owned = set.without(id);
            (&owned, true)
        }
        other => return Err(SeqError::NotPartialKind(other)),
    };
    let terms = s.terms();
    let mut seen = vec![false; group.order()];
    for (i, &x) in terms.iter().enumerate() {
        if !set.contains(x) {
            return Ok(Some(Failure::Terms(MultisetFailure::NotInSet {
                position: i + 1,
                element: x,
            })));
        }
        if std::mem::replace(&mut seen[x], true) {
            return Ok(Some(Failure::Terms(MultisetFailure::Excess {
                position: i + 1,
                element: x,
            })));
        }
    }
    seen.iter_mut().for_each(|s| *s = false);
    for (i, w) in terms.windows(2).enumerate() {
        let d = if quotients {
            group.left_quotient(w[0], w[1])
        } else {
            group.mul(w[0], w[1])
        };
        if quotients && !set.contains(d) {
            return Ok(Some(Failure::Derived(MultisetFailure::NotInSet {
                position: i + 2,
                element: d,
            })));
        }
        if std::mem::replace(&mut seen[d], true) {
            return Ok(Some(Failure::Derived(MultisetFailure::Excess {
                position: i + 2,
                element: d,
            })));
        }
    }
    Ok(None)
}

pub fn verify_partial(
    group: &FiniteGroup,
    set: &Subset,
    kind: PropertyKind,
    s: &Seq,
) -> Result<bool, SeqError> {
    Ok(partial_failure(group, set, kind, s)?.is_none())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sign {
    /// adjacent products `g_i g_{i+1}`
    Plus,
    /// adjacent quotients `g_i^-1 g_{i+1}`
    Minus,
}

impl Sign {
    #[inline]
    pub fn apply(self, group: &FiniteGroup, a: Element, b: Element) -> Element {
        match self {
            Sign::Plus => group.mul(a, b),
            Sign::Minus => group.left_quotient(a, b),
        }
    }
}

/// Rainbow Hamilton sequence in `K±[A; B]`: `s` orders `A` and its `|A|-1`
/// adjacent products (or quotients) are exactly `B`.
pub fn verify_rainbow(
    group: &FiniteGroup,
    a: &Subset,
    b: &Subset,
    sign: Sign,
    s: &Seq,
) -> Result<bool, SeqError> {
    check_subset(group, a)?;
    check_subset(group, b)?;
    if b.len() + 1 != a.len() {
        return Err(SeqError::RainbowSize {
            a: a.len(),
            b: b.len(),
        });
    }
    s.check_range(group)?;
    let terms = s.terms();
    if multiset_failure(terms, a, 1).is_some() {
        return Ok(false);
    }
    let adjacent: Vec<Element> = terms
        .windows(2)
        .map(|w| sign.apply(group, w[0], w[1]))
        .collect();
    Ok(multiset_failure(&adjacent, b, 1).is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;

    fn g(s: &str) -> FiniteGroup {
        build_group(&s.parse().unwrap()).unwrap()
    }

    fn seq(t: &[usize]) -> Seq {
        Seq::new(t.to_vec()).unwrap()
    }

    fn full(group: &FiniteGroup) -> Subset {
        Subset::full(group)
    }

    #[test]
    fn derived_sequences() {
        let z4 = g("Z4");
        let z5 = g("Z5");
        let z3 = g("Z3");
        assert_eq!(bar_seq(&z4, &seq(&[0, 1, 3, 2])).terms(), &[0, 1, 2, 3]);
        assert_eq!(bar_seq(&z5, &seq(&[0, 1, 4, 2, 3])).terms(), &[0, 1, 3, 3, 1]);
        assert_eq!(bar_seq(&z5, &seq(&[0])).terms(), &[0]);
        assert_eq!(check_seq(&z5, &seq(&[1, 2, 4, 3])).terms(), &[3, 1, 2, 4]);
        assert_eq!(check_seq(&z3, &seq(&[1, 2])).terms(), &[2, 1]);
        assert_eq!(check_seq(&z3, &seq(&[2])).terms(), &[0]);
        assert_eq!(hat_seq(&z3, &seq(&[0, 1, 2])).terms(), &[2, 1, 0]);
        assert_eq!(hat_seq(&z5, &seq(&[0, 1, 2, 3, 4])).terms(), &[4, 1, 3, 0, 2]);
        assert_eq!(hat_seq(&z5, &seq(&[0])).terms(), &[0]);
    }

    #[test]
    fn pk_membership() {
        let z3 = g("Z3");
        assert!(is_pk(&seq(&[0, 1, 2]), &full(&z3), 1));
        assert!(is_pk(&seq(&[1, 2, 1, 2]), &Subset::new(&z3, [1, 2]).unwrap(), 2));
        assert!(!is_pk(&seq(&[0, 1, 1]), &full(&z3), 1));
    }

    #[test]
    fn verify_examples() {
        use PropertyKind::*;
        let z4 = g("Z4");
        assert!(verify(&z4, &full(&z4), Sequencing, &seq(&[0, 1, 3, 2])).unwrap().pass);
        let z5 = g("Z5");
        assert!(verify(&z5, &full(&z5), TwoSequencing, &seq(&[0, 1, 4, 2, 3])).unwrap().pass);
        let z3 = g("Z3");
        assert!(verify(&z3, &full(&z3), Harmonious, &seq(&[0, 1, 2])).unwrap().pass);
        assert!(verify(&z5, &full(&z5), SymmetricHarmonious, &seq(&[0, 1, 2, 3, 4])).unwrap().pass);
        let z2 = g("Z2");
        let r = verify(&z2, &full(&z2), DoubleRSequencing, &seq(&[1, 1])).unwrap();
        assert!(!r.pass);
        assert_eq!(
            r.failure,
            Some(Failure::Derived(MultisetFailure::NotInSet { position: 1, element: 0 }))
        );
    }

    #[test]
    fn r_harmonious_z3_fails_for_both_orderings() {
        let z3 = g("Z3");
        for s in [[1, 2], [2, 1]] {
            let r = verify(&z3, &full(&z3), PropertyKind::RHarmonious, &seq(&s)).unwrap();
            assert!(matches!(r.failure, Some(Failure::Derived(MultisetFailure::NotInSet { element: 0, .. }))));
        }
    }

    #[test]
    fn failure_clause_order() {
        use PropertyKind::*;
        let z4 = g("Z4");
        // terms fail before the first-term clause
        let r = verify(&z4, &full(&z4), Sequencing, &seq(&[1, 1, 3, 2])).unwrap();
        assert_eq!(
            r.failure,
            Some(Failure::Terms(MultisetFailure::Excess { position: 2, element: 1 }))
        );
        let r = verify(&z4, &full(&z4), Sequencing, &seq(&[1, 0, 3, 2])).unwrap();
        assert_eq!(r.failure, Some(Failure::FirstTerm { found: 1 }));
        let r = verify(&z4, &full(&z4), Sequencing, &seq(&[0, 1, 2, 3])).unwrap();
        assert_eq!(
            r.failure,
            Some(Failure::Derived(MultisetFailure::Excess { position: 3, element: 1 }))
        );
        // a sequencing of Z8 whose quotients are not symmetric
        let z8 = g("Z8");
        let s = seq(&[0, 1, 6, 5, 3, 7, 2, 4]);
        assert!(verify(&z8, &full(&z8), Sequencing, &s).unwrap().pass);
        let r = verify(&z8, &full(&z8), SymmetricSequencing, &s).unwrap();
        assert!(matches!(r.failure, Some(Failure::DerivedSymmetry { position: 2, mirror: 8 })));
        let r = verify(&z8, &full(&z8), Sequencing, &seq(&[0, 1, 2])).unwrap();
        assert_eq!(r.failure, Some(Failure::Terms(MultisetFailure::Missing { element: 3 })));
    }

    #[test]
    fn verify_errors() {
        let z3 = g("Z3");
        let one = Subset::new(&z3, [0]).unwrap();
        assert_eq!(
            verify(&z3, &one, PropertyKind::RSequencing, &seq(&[0])),
            Err(SeqError::EmptyWithoutIdentity)
        );
        assert_eq!(
            verify(&z3, &full(&z3), PropertyKind::PartialHarmonious, &seq(&[0])),
            Err(SeqError::PartialKind(PropertyKind::PartialHarmonious))
        );
        assert!(matches!(
            verify(&z3, &full(&z3), PropertyKind::Harmonious, &seq(&[0, 7])),
            Err(SeqError::OutOfRange { position: 2, .. })
        ));
    }

    #[test]
    fn partial_examples() {
        use PropertyKind::*;
        let z5 = g("Z5");
        let w = full(&z5);
        assert!(verify_partial(&z5, &w, PartialHarmonious, &seq(&[1, 2, 4, 3])).unwrap());
        assert!(!verify_partial(&z5, &w, PartialHarmonious, &seq(&[1, 4, 2, 3])).unwrap());
        assert!(verify_partial(&z5, &w, PartialHarmonious, &seq(&[0])).unwrap());
        assert!(verify_partial(&z5, &w, PartialRSequencing, &seq(&[1, 2, 4])).unwrap());
        assert!(!verify_partial(&z5, &w, PartialRSequencing, &seq(&[0, 2])).unwrap());
        // quotients 1, 1 repeat
        assert!(!verify_partial(&z5, &w, PartialRSequencing, &seq(&[1, 2, 3])).unwrap());
        assert_eq!(
            verify_partial(&z5, &w, Harmonious, &seq(&[0])),
            Err(SeqError::NotPartialKind(Harmonious))
        );
    }

    #[test]
    fn rainbow_examples() {
        let z5 = g("Z5");
        let a = Subset::new(&z5, [0, 1, 2, 3]).unwrap();
        let b = Subset::new(&z5, [1, 2, 4]).unwrap();
        assert!(verify_rainbow(&z5, &a, &b, Sign::Minus, &seq(&[0, 1, 3, 2])).unwrap());
        assert!(!verify_rainbow(&z5, &a, &b, Sign::Plus, &seq(&[0, 1, 3, 2])).unwrap());
        let x = Subset::new(&z5, [3]).unwrap();
        let empty = Subset::new(&z5, []).unwrap();
        assert!(verify_rainbow(&z5, &x, &empty, Sign::Plus, &seq(&[3])).unwrap());
        assert_eq!(
            verify_rainbow(&z5, &a, &a, Sign::Plus, &seq(&[0])),
            Err(SeqError::RainbowSize { a: 4, b: 4 })
        );
    }

    #[test]
    fn kind_names_round_trip() {
        for k in PropertyKind::ALL {
            assert_eq!(k.name().parse::<PropertyKind>().unwrap(), k);
            assert_eq!(serde_json::to_string(&k).unwrap(), format!("\"{}\"", k.name()));
        }
        assert_eq!("dr-sequencing".parse::<PropertyKind>().unwrap(), PropertyKind::DoubleRSequencing);
        assert!("terrace".parse::<PropertyKind>().is_err());
    }

    #[test]
    fn two_sequencing_position_count() {
        let z5 = g("Z5");
        let s = seq(&[0, 1, 4, 2, 3]);
        let b = bar_seq(&z5, &s);
        assert_eq!(two_sequencing_positions(&z5, &full(&z5), &b), 5);
    }

    #[test]
    fn two_sequencing_quotients_may_repeat() {
        let z5 = g("Z5");
        let s = seq(&[0, 1, 4, 2, 3]);
        let b = bar_seq(&z5, &s);
        assert_eq!(b.terms(), &[0, 1, 3, 3, 1]);
        assert!(verify(&z5, &full(&z5), PropertyKind::TwoSequencing, &s).unwrap().pass);
        assert!(!verify(&z5, &full(&z5), PropertyKind::Sequencing, &s).unwrap().pass);
    }
}
