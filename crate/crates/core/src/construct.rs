//! Explicit constructions of symmetric harmonious sequences, symmetric
//! sequencings of `K x H` and DR-sequencings of abelian groups.
//!
//! All indices are 0-based. Product groups are indexed lexicographically, so
//! `(k, h)` in `K x H` is element `k * |H| + h`.

use serde::Serialize;
use thiserror::Error;

use crate::group::{
    build_group, element_order, Atom, Element, FiniteGroup, GroupError, GroupSpec, Subset,
    DEFAULT_ORDER_CAP,
};
use crate::search::{
    search_property, search_property_ordered, CandidateOrder, SearchBudget, SearchError, Verdict,
};
use crate::seq::{bar_seq, check_seq, verify, PropertyKind, Seq, SeqError};

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error("group order {0} is even; an odd order is required")]
    EvenOrder(usize),
    #[error("group order {0} is too small for this construction")]
    TooSmall(usize),
    #[error("Z2 has no DR-sequencing")]
    CyclicTwo,
    #[error("2^{k} exceeds the order cap {cap}")]
    Cap { k: u32, cap: usize },
    #[error("{input} fails {kind}: {failure}")]
    Precondition {
        input: &'static str,
        kind: PropertyKind,
        failure: String,
    },
    #[error("{0} is not a product of cyclic factors")]
    NotCyclicFactors(String),
    #[error("{0} is not of the form Z_(2^k) x H with |H| odd")]
    NotBinaryAbelianShape(String),
    #[error("search for a {kind} of {group} ended {verdict}")]
    SearchFailed {
        kind: PropertyKind,
        group: String,
        verdict: Verdict,
    },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Seq(#[from] SeqError),
    #[error(transparent)]
    Search(#[from] SearchError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceSeq {
    pub name: String,
    pub group: String,
    pub terms: Vec<String>,
}

impl TraceSeq {
    fn new(name: &str, group: &FiniteGroup, seq: &Seq) -> Self {
        Self {
            name: name.to_owned(),
            group: group_name(group),
            terms: labels(group, seq),
        }
    }
}

/// Index bookkeeping at one output position.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct IndexEntry {
    pub i: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<i8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionTrace {
    pub construction: &'static str,
    pub group: String,
    pub inputs: Vec<TraceSeq>,
    pub indices: Vec<IndexEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch: Option<&'static str>,
    pub output: Vec<String>,
    pub derived: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inner: Option<Box<ConstructionTrace>>,
}

fn group_name(group: &FiniteGroup) -> String {
    group
        .spec()
        .map(|s| s.to_string())
        .unwrap_or_else(|| format!("<order {}>", group.order()))
}

fn labels(group: &FiniteGroup, seq: &Seq) -> Vec<String> {
    seq.labels(group).into_iter().map(str::to_owned).collect()
}

fn require(
    group: &FiniteGroup,
    input: &'static str,
    kind: PropertyKind,
    seq: &Seq,
) -> Result<(), ConstructError> {
    let report = verify(group, &Subset::full(group), kind, seq)?;
    match report.failure {
        None => Ok(()),
        Some(failure) => Err(ConstructError::Precondition {
            input,
            kind,
            failure: failure.to_string(),
        }),
    }
}

fn pair(h_order: usize, k: Element, h: Element) -> Element {
    k * h_order + h
}

/// A symmetric harmonious sequence of an odd-order group: the powers of an
/// element of order `|H|` when `H` is cyclic, otherwise the first one found
/// by exhaustive search.
pub fn symmetric_harmonious_construct(h: &FiniteGroup) -> Result<Seq, ConstructError> {
    let n = h.order();
    if n % 2 == 0 {
        return Err(ConstructError::EvenOrder(n));
    }
    if let Some(a) = h.elements().find(|&a| element_order(h, a) == n) {
        return Ok(Seq::new((0..n as i64).map(|i| h.pow(a, i)).collect())?);
    }
    let report = search_property(
        h,
        &Subset::full(h),
        PropertyKind::SymmetricHarmonious,
        &SearchBudget::exhaustive(),
    )?;
    report.witness.ok_or(ConstructError::SearchFailed {
        kind: PropertyKind::SymmetricHarmonious,
        group: group_name(h),
        verdict: report.verdict,
    })
}

/// `0, 1, -1, 2, -2, ..., n/2` in `Z_n`, `n = 2^k`.
pub fn symmetric_sequencing_pow2(k: u32) -> Result<Seq, ConstructError> {
    let cap = DEFAULT_ORDER_CAP;
    if k == 0 || k >= usize::BITS || (1usize << k) > cap {
        return Err(ConstructError::Cap { k, cap });
    }
    let n = 1usize << k;
    let mut terms = vec![0];
    for j in 1..n / 2 {
        terms.push(j);
        terms.push(n - j);
    }
    terms.push(n / 2);
    Ok(Seq::new(terms)?)
}

/// The symmetric sequencing generator of `K x H` built from a sequence of `K`
/// with symmetric bar sequence and a symmetric harmonious sequence of `H`.
pub fn symmetric_sequencing_product(
    k: &FiniteGroup,
    kseq: &Seq,
    h: &FiniteGroup,
    hseq: &Seq,
) -> Result<(FiniteGroup, Seq, ConstructionTrace), ConstructError> {
    require(k, "k-sequence", PropertyKind::SymmetricSequencing, kseq)?;
    if h.order() % 2 == 0 {
        return Err(ConstructError::EvenOrder(h.order()));
    }
    require(h, "h-sequence", PropertyKind::SymmetricHarmonious, hseq)?;
    let g = crate::group::direct_product(&[k, h])?;
    let (n, m) = (k.order(), h.order());
    let alpha = hseq.terms();
    let mut terms = Vec::with_capacity(n * m);
    let mut indices = Vec::with_capacity(n * m);
    for i in 0..n * m {
        let (q, r) = (i / n, i % n);
        let s: i64 = if r % 2 == 0 { 1 } else { -1 };
        let kidx = if q % 2 == 0 { r } else { n - 1 - r };
        let aidx = if r < n / 2 { q } else { (q + 1) % m };
        terms.push(pair(m, kseq[kidx], h.pow(alpha[aidx], s)));
        indices.push(IndexEntry {
            i,
            q: Some(q),
            r: Some(r),
            s: Some(s as i8),
            j: Some(kidx),
            ..IndexEntry::default()
        });
    }
    let seq = Seq::new(terms)?;
    let trace = ConstructionTrace {
        construction: "symmetric-sequencing-product",
        group: group_name(&g),
        inputs: vec![TraceSeq::new("k", k, kseq), TraceSeq::new("h", h, hseq)],
        indices,
        alpha: None,
        branch: None,
        output: labels(&g, &seq),
        derived: labels(&g, &bar_seq(&g, &seq)),
        inner: None,
    };
    Ok((g, seq, trace))
}

/// The bar sequence of [`symmetric_sequencing_product`] predicted term by
/// term from the inputs: position `qn + r` holds `(kbar_r, eta)` with
/// `eta = a_q^2` for `r = 0`, `a_q^(2s)` for `0 < r < n/2`,
/// `a_q^s a_(q+1)^s` for `r = n/2` and `a_(q+1)^(2s)` for `r > n/2`.
pub fn predicted_product_bar(k: &FiniteGroup, kseq: &Seq, h: &FiniteGroup, hseq: &Seq) -> Seq {
    let (n, m) = (k.order(), h.order());
    let kbar = bar_seq(k, kseq);
    let alpha = hseq.terms();
    let terms = (0..n * m)
        .map(|i| {
            let (q, r) = (i / n, i % n);
            let s: i64 = if r % 2 == 0 { 1 } else { -1 };
            let (a, b) = (alpha[q], alpha[(q + 1) % m]);
            let eta = if r == 0 {
                h.pow(a, 2)
            } else if 2 * r < n {
                h.pow(a, 2 * s)
            } else if 2 * r == n {
                h.mul(h.pow(a, s), h.pow(b, s))
            } else {
                h.pow(b, 2 * s)
            };
            pair(m, kbar[r], eta)
        })
        .collect();
    Seq::new(terms).expect("n * m > 0")
}

/// A DR-sequencing of `Z2 x H` for `|H|` odd and at least 3, from a
/// symmetric harmonious sequence of `H`.
pub fn dr_sequencing_z2xh(
    h: &FiniteGroup,
    hseq: &Seq,
) -> Result<(FiniteGroup, Seq, ConstructionTrace), ConstructError> {
    let n = h.order();
    if n % 2 == 0 {
        return Err(ConstructError::EvenOrder(n));
    }
    if n == 1 {
        return Err(ConstructError::TooSmall(n));
    }
    require(h, "h-sequence", PropertyKind::SymmetricHarmonious, hseq)?;
    let z2 = build_group(&GroupSpec::cyclic(&[2])?)?;
    let g = crate::group::direct_product(&[&z2, h])?;
    let len = 4 * n - 2;
    let mut terms = Vec::with_capacity(len);
    let mut indices = Vec::with_capacity(len);
    for i in 0..len {
        let (j, block) = if i <= 2 * n - 2 {
            (i / 2 + 1, 0)
        } else if i <= 3 * n - 3 {
            (i.div_ceil(2) + 1, 1)
        } else {
            (i.div_ceil(2) + 1, 2)
        };
        let j = j % n;
        let hj = hseq[j];
        let hi = h.inv(hj);
        let (k, x) = match (block, i % 4) {
            (0, 0) => (1, hj),
            (0, 1) => (1, hi),
            (0, 2) => (0, hj),
            (0, _) => (0, hi),
            (1, 1) => (0, hj),
            (1, 2) => (1, hi),
            (1, 3) => (1, hj),
            (1, _) => (0, hi),
            (_, 1) => (1, hj),
            (_, 2) => (0, hi),
            (_, 3) => (0, hj),
            (_, _) => (1, hi),
        };
        terms.push(pair(n, k, x));
        indices.push(IndexEntry {
            i,
            j: Some(j),
            case: Some((4 * block + i % 4) as u8),
            ..IndexEntry::default()
        });
    }
    let seq = Seq::new(terms)?;
    let trace = ConstructionTrace {
        construction: "dr-sequencing-z2xh",
        group: group_name(&g),
        inputs: vec![TraceSeq::new("h", h, hseq)],
        indices,
        alpha: None,
        branch: None,
        output: labels(&g, &seq),
        derived: labels(&g, &check_seq(&g, &seq)),
        inner: None,
    };
    Ok((g, seq, trace))
}

/// Splits a cyclic factor list with exactly one even factor `2^k o` into
/// `k`, the odd factors of `H = Z_o x (other factors)`, and the position of
/// the even factor.
fn split_binary(factors: &[usize]) -> Option<(u32, Vec<usize>, usize)> {
    let even: Vec<usize> = (0..factors.len()).filter(|&i| factors[i] % 2 == 0).collect();
    if even.len() != 1 {
        return None;
    }
    let pos = even[0];
    let f = factors[pos];
    let k = f.trailing_zeros();
    let odd = f >> k;
    let mut h = Vec::new();
    if odd > 1 {
        h.push(odd);
    }
    h.extend(factors.iter().enumerate().filter(|&(i, &x)| i != pos && x > 1).map(|(_, &x)| x));
    Some((k, h, pos))
}

/// Maps `Z_(2^k) x H` (with `H` as built by [`split_binary`]) onto the group
/// given by `factors`.
fn embedding(factors: &[usize], k: u32, pos: usize) -> Vec<Element> {
    let two = 1usize << k;
    let f = factors[pos];
    let odd = f >> k;
    let mut h_orders = Vec::new();
    if odd > 1 {
        h_orders.push(odd);
    }
    let others: Vec<usize> = (0..factors.len()).filter(|&i| i != pos && factors[i] > 1).collect();
    h_orders.extend(others.iter().map(|&i| factors[i]));
    let h_order: usize = h_orders.iter().product();
    let target = |coords: &[usize]| -> Element {
        coords
            .iter()
            .zip(factors)
            .fold(0, |acc, (&c, &m)| acc * m + c)
    };
    (0..two * h_order)
        .map(|x| {
            let a = x / h_order;
            let mut rest = x % h_order;
            let mut h_digits = vec![0; h_orders.len()];
            for (slot, &m) in h_digits.iter_mut().zip(&h_orders).rev() {
                *slot = rest % m;
                rest /= m;
            }
            let mut coords = vec![0; factors.len()];
            let b = if odd > 1 { h_digits[0] } else { 0 };
            coords[pos] = (0..f)
                .find(|&c| c % two == a && c % odd == b % odd)
                .expect("CRT residue exists");
            let offset = usize::from(odd > 1);
            for (t, &i) in others.iter().enumerate() {
                coords[i] = h_digits[offset + t];
            }
            target(&coords)
        })
        .collect()
}

/// `p` when every nontrivial factor equals the same prime `p`.
fn elementary_prime(factors: &[usize]) -> Option<usize> {
    let mut nontrivial = factors.iter().copied().filter(|&f| f > 1);
    let p = nontrivial.next()?;
    let prime = (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0);
    (prime && nontrivial.all(|f| f == p)).then_some(p)
}

/// The powers `1, x, x^2, ...` of a primitive element of `GF(p^k)`, read as
/// coordinate vectors of `Z_p^k` in the element order of `factors`.
fn field_powers(factors: &[usize], p: usize) -> Vec<Element> {
    let k = factors.iter().filter(|&&f| f > 1).count();
    let q = p.pow(k as u32);
    let one = {
        let mut v = vec![0; k];
        v[0] = 1;
        v
    };
    // multiply by x modulo the monic polynomial x^k + f[k-1] x^(k-1) + ... + f[0]
    let times_x = |v: &[usize], f: &[usize]| -> Vec<usize> {
        let top = v[k - 1];
        (0..k)
            .map(|j| {
                let shifted = if j == 0 { 0 } else { v[j - 1] };
                (shifted + p * p - top * f[j] % p) % p
            })
            .collect()
    };
    let primitive = (0..q).find_map(|code| {
        let f: Vec<usize> = (0..k).map(|j| code / p.pow(j as u32) % p).collect();
        if f[0] == 0 {
            return None;
        }
        let mut v = one.clone();
        for i in 1..q {
            v = times_x(&v, &f);
            if v == one {
                return (i == q - 1).then_some(f);
            }
        }
        None
    });
    let f = primitive.expect("every finite field has a primitive element");
    let mut v = one;
    let mut out = Vec::with_capacity(q - 1);
    for _ in 0..q - 1 {
        out.push(v.iter().rev().fold(0, |acc, &c| acc * p + c));
        v = times_x(&v, &f);
    }
    out
}

/// An R-sequencing of a non-binary abelian group: field powers for
/// elementary abelian groups, otherwise the first of a fixed series of
/// searches that succeeds.
fn r_sequencing_abelian(
    group: &FiniteGroup,
    factors: &[usize],
    spec: &GroupSpec,
) -> Result<(Seq, &'static str), ConstructError> {
    let full = Subset::full(group);
    if let Some(p) = elementary_prime(factors) {
        let seq = Seq::new(field_powers(factors, p))?;
        require(group, "field powers", PropertyKind::RSequencing, &seq)?;
        return Ok((seq, "doubled-field-powers"));
    }
    let kind = PropertyKind::RSequencing;
    let search = |order, budget: SearchBudget, prefix: &[Element]| {
        search_property_ordered(group, &full, kind, &budget, order, prefix)
    };
    let report = search(CandidateOrder::Ascending, SearchBudget::nodes(2_000_000), &[])?;
    if report.verdict == Verdict::Refuted {
        return Err(ConstructError::SearchFailed {
            kind,
            group: spec.to_string(),
            verdict: report.verdict,
        });
    }
    if let Some(r) = report.witness {
        return Ok((r, "doubled-r-sequencing"));
    }
    for first in group.elements().filter(|&x| x != group.identity()) {
        let report = search(CandidateOrder::ByDerived, SearchBudget::nodes(200_000), &[first])?;
        if let Some(r) = report.witness {
            return Ok((r, "doubled-r-sequencing"));
        }
    }
    let report = search(CandidateOrder::Ascending, SearchBudget::exhaustive(), &[])?;
    match report.witness {
        Some(r) => Ok((r, "doubled-r-sequencing")),
        None => Err(ConstructError::SearchFailed {
            kind,
            group: spec.to_string(),
            verdict: report.verdict,
        }),
    }
}

/// A DR-sequencing of the abelian group with the given cyclic factors.
pub fn dr_sequencing_abelian(
    factors: &[usize],
) -> Result<(FiniteGroup, Seq, ConstructionTrace), ConstructError> {
    let spec = GroupSpec::cyclic(factors)?;
    let group = build_group(&spec)?;
    let order = group.order();
    if order == 2 {
        return Err(ConstructError::CyclicTwo);
    }
    if order == 1 {
        return Err(ConstructError::TooSmall(1));
    }
    let Some((k, h_factors, pos)) = split_binary(factors) else {
        let (r, branch) = r_sequencing_abelian(&group, factors, &spec)?;
        let mut terms = r.terms().to_vec();
        terms.extend_from_slice(r.terms());
        let seq = Seq::new(terms)?;
        let trace = ConstructionTrace {
            construction: "dr-sequencing-abelian",
            group: spec.to_string(),
            inputs: vec![TraceSeq::new("r-sequencing", &group, &r)],
            indices: Vec::new(),
            alpha: None,
            branch: Some(branch),
            output: labels(&group, &seq),
            derived: labels(&group, &check_seq(&group, &seq)),
            inner: None,
        };
        return Ok((group, seq, trace));
    };
    let h_spec = if h_factors.is_empty() {
        GroupSpec::cyclic(&[1])?
    } else {
        GroupSpec::cyclic(&h_factors)?
    };
    let h = build_group(&h_spec)?;
    let hseq = symmetric_harmonious_construct(&h)?;
    let embed = embedding(factors, k, pos);
    let map = |s: &Seq| Seq::new(s.terms().iter().map(|&x| embed[x]).collect());

    if k == 1 {
        let (_, inner_seq, inner) = dr_sequencing_z2xh(&h, &hseq)?;
        let seq = map(&inner_seq)?;
        let trace = ConstructionTrace {
            construction: "dr-sequencing-abelian",
            group: spec.to_string(),
            inputs: vec![TraceSeq::new("h", &h, &hseq)],
            indices: Vec::new(),
            alpha: None,
            branch: Some("z2xh"),
            output: labels(&group, &seq),
            derived: labels(&group, &check_seq(&group, &seq)),
            inner: Some(Box::new(inner)),
        };
        return Ok((group, seq, trace));
    }

    let kgroup = build_group(&GroupSpec::new(vec![Atom::Cyclic(1 << k)])?)?;
    let kseq = symmetric_sequencing_pow2(k)?;
    let (_, g, inner) = symmetric_sequencing_product(&kgroup, &kseq, &h, &hseq)?;
    let g = map(&g)?;
    let alpha = 1 + order / 2;
    let head = &g.terms()[1..];
    let mut terms = head.to_vec();
    terms.extend(head.iter().map(|&x| group.pow(x, alpha as i64)));
    let seq = Seq::new(terms)?;
    let trace = ConstructionTrace {
        construction: "dr-sequencing-abelian",
        group: spec.to_string(),
        inputs: vec![
            TraceSeq::new("k", &kgroup, &kseq),
            TraceSeq::new("h", &h, &hseq),
            TraceSeq::new("g", &group, &g),
        ],
        indices: Vec::new(),
        alpha: Some(alpha),
        branch: Some("symmetric-sequencing-doubling"),
        output: labels(&group, &seq),
        derived: labels(&group, &check_seq(&group, &seq)),
        inner: Some(Box::new(inner)),
    };
    Ok((group, seq, trace))
}

/// The symmetric sequencing generator for `Z_(2^k) x H` given as a spec
/// whose first factor is `Z_(2^k)` and whose remaining factors have odd order.
pub fn symmetric_sequencing_for_spec(
    spec: &GroupSpec,
) -> Result<(FiniteGroup, Seq, ConstructionTrace), ConstructError> {
    let shape = || ConstructError::NotBinaryAbelianShape(spec.to_string());
    let (first, rest) = spec.factors().split_first().ok_or_else(shape)?;
    let Atom::Cyclic(two) = *first else {
        return Err(shape());
    };
    if !two.is_power_of_two() || two < 2 || rest.iter().any(|a| a.order() % 2 == 0) {
        return Err(shape());
    }
    let kgroup = build_group(&GroupSpec::new(vec![*first])?)?;
    let kseq = symmetric_sequencing_pow2(two.trailing_zeros())?;
    let h_spec = if rest.is_empty() {
        GroupSpec::cyclic(&[1])?
    } else {
        GroupSpec::new(rest.to_vec())?
    };
    let h = build_group(&h_spec)?;
    let hseq = symmetric_harmonious_construct(&h)?;
    let (_, seq, trace) = symmetric_sequencing_product(&kgroup, &kseq, &h, &hseq)?;
    Ok((build_group(spec)?, seq, trace))
}
