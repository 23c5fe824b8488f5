//! Deterministic pruned backtracking over Cayley tables.
//!
//! Every complete property is compiled into a [`Plan`]: a multiset of terms,
//! a multiset (or class-count table) for the derived sequence, the derived
//! operation, and optional fixed endpoints and mirror constraints. A single
//! depth-first [`Engine`] then places terms position by position, trying
//! candidates in ascending element index, so the first witness found is the
//! lexicographically first one.
//!
//! Pruning, in order of cost:
//! - per-position availability of the term and of the derived element;
//! - mirror constraints (`b_i b_{m+2-i} = 1`, `s_{1+i} s_{1+n-i} = 1`) are
//!   reserved when the first half is placed and forced in the second half;
//! - for cyclic kinds, the abelianization sum of the derived multiset must
//!   match that of the terms (checked once at the root);
//! - for every homomorphism onto `Z2`, the number of odd derived elements
//!   still needed must be realisable by the parity changes along the
//!   remaining path.

use std::fmt;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::group::{
    abelianization, generated_subgroup, product_coset, quotient_group, Element, FiniteGroup,
    Subset,
};
use crate::seq::{verify, verify_rainbow, PropertyKind, Seq, SeqError, Sign};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("malformed budget: {0}")]
    Budget(&'static str),
    #[error("kind {0} cannot be searched directly")]
    PartialKind(PropertyKind),
    #[error("kind {0} is not a partial kind")]
    NotPartialKind(PropertyKind),
    #[error("the subset without the identity is empty")]
    EmptyWithoutIdentity,
    #[error("|B| must be |A| - 1 (|A| = {a}, |B| = {b})")]
    RainbowSize { a: usize, b: usize },
    #[error("the endpoints must differ")]
    SameEndpoints,
    #[error("endpoint {0} is not in A")]
    EndpointOutside(Element),
    #[error("g^2 is the identity for g = {0}")]
    SquareIsIdentity(Element),
    #[error("invalid prefix: {0}")]
    InvalidPrefix(String),
    #[error(transparent)]
    Seq(#[from] SeqError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct SearchBudget {
    pub max_nodes: Option<u64>,
    pub max_millis: Option<u64>,
    pub exhaustive: bool,
}

impl SearchBudget {
    pub fn exhaustive() -> Self {
        Self {
            max_nodes: None,
            max_millis: None,
            exhaustive: true,
        }
    }

    pub fn nodes(max_nodes: u64) -> Self {
        Self {
            max_nodes: Some(max_nodes),
            max_millis: None,
            exhaustive: false,
        }
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if self.exhaustive && (self.max_nodes.is_some() || self.max_millis.is_some()) {
            return Err(SearchError::Budget("an exhaustive search takes no limits"));
        }
        if !self.exhaustive && self.max_nodes.is_none() && self.max_millis.is_none() {
            return Err(SearchError::Budget(
                "a bounded search needs a node or time limit",
            ));
        }
        if self.max_nodes == Some(0) || self.max_millis == Some(0) {
            return Err(SearchError::Budget("limits must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Found,
    Refuted,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Found => "found",
            Verdict::Refuted => "refuted",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// What a search looked for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    Property(PropertyKind),
    Rainbow(Sign),
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Objective::Property(k) => write!(f, "{k}"),
            Objective::Rainbow(Sign::Plus) => f.write_str("rainbow-plus"),
            Objective::Rainbow(Sign::Minus) => f.write_str("rainbow-minus"),
        }
    }
}

impl Serialize for Objective {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub kind: Objective,
    pub verdict: Verdict,
    pub witness: Option<Seq>,
    pub nodes_explored: u64,
    pub elapsed_millis: u64,
    pub subset: Vec<Element>,
}

impl PropertyReport {
    /// The report with its wall-clock field zeroed, for byte comparisons.
    pub fn without_timing(&self) -> Self {
        Self {
            elapsed_millis: 0,
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Closure {
    /// derived_1 = s_1 (the quotient sequences with a leading identity)
    FirstTerm,
    /// derived_1 = op(s_m, s_1)
    Cyclic,
    /// derived_1 does not exist (rainbow sequences)
    Open,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mirror {
    None,
    /// derived terms at 0-based positions `j` and `m - j` are inverse
    Derived,
    /// terms at 0-based positions `i` and `m - i` are inverse
    Terms,
}

/// Order in which the engine tries candidates for a free position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CandidateOrder {
    /// ascending element index; the witness is the lexicographically first
    #[default]
    Ascending,
    /// ascending index of the derived element the candidate would produce
    ByDerived,
}

const UNBOUNDED: u32 = u32::MAX / 2;

/// A property compiled for the engine.
#[derive(Debug, Clone)]
struct Plan {
    len: usize,
    term_cap: Vec<u8>,
    op: Sign,
    closure: Closure,
    class_of: Vec<usize>,
    class_cap: Vec<u32>,
    first: Option<Element>,
    last: Option<Element>,
    mirror: Mirror,
    order: CandidateOrder,
}

impl Plan {
    fn standard(
        group: &FiniteGroup,
        terms: &Subset,
        k: u8,
        op: Sign,
        closure: Closure,
        first: Option<Element>,
        mirror: Mirror,
    ) -> Self {
        let n = group.order();
        let mut term_cap = vec![0u8; n];
        let mut class_cap = vec![0u32; n];
        for x in terms.iter() {
            term_cap[x] = k;
            class_cap[x] = k as u32;
        }
        Plan {
            len: terms.len() * k as usize,
            term_cap,
            op,
            closure,
            class_of: (0..n).collect(),
            class_cap,
            first,
            last: None,
            mirror,
            order: CandidateOrder::Ascending,
        }
    }

    fn for_kind(group: &FiniteGroup, set: &Subset, kind: PropertyKind) -> Result<Self, SearchError> {
        use PropertyKind::*;
        let id = group.identity();
        let owned;
        let set = if kind.drops_identity() {
            owned = set.without(id);
            if owned.is_empty() {
                return Err(SearchError::EmptyWithoutIdentity);
            }
            &owned
        } else {
            set
        };
        let k = kind.multiplicity() as u8;
        let plan = match kind {
            Sequencing | DoubleSequencing => {
                Plan::standard(group, set, k, Sign::Minus, Closure::FirstTerm, Some(id), Mirror::None)
            }
            SymmetricSequencing => Plan::standard(
                group,
                set,
                1,
                Sign::Minus,
                Closure::FirstTerm,
                Some(id),
                Mirror::Derived,
            ),
            RSequencing | DoubleRSequencing => {
                Plan::standard(group, set, k, Sign::Minus, Closure::Cyclic, None, Mirror::None)
            }
            Harmonious | DoubleHarmonious | RHarmonious | DoubleRHarmonious => {
                Plan::standard(group, set, k, Sign::Plus, Closure::Cyclic, None, Mirror::None)
            }
            SymmetricHarmonious => Plan::standard(
                group,
                set,
                1,
                Sign::Plus,
                Closure::Cyclic,
                Some(id),
                Mirror::Terms,
            ),
            TwoSequencing => {
                let mut plan =
                    Plan::standard(group, set, 1, Sign::Minus, Closure::FirstTerm, Some(id), Mirror::None);
                // class of g is {g, g^-1}, indexed by its smaller member
                let n = group.order();
                plan.class_of = (0..n).map(|g| g.min(group.inv(g))).collect();
                plan.class_cap = vec![UNBOUNDED; n];
                for g in set.iter() {
                    let cap = if group.mul(g, g) == id { 1 } else { 2 };
                    plan.class_cap[plan.class_of[g]] = cap;
                }
                for g in 0..n {
                    if g != plan.class_of[g] {
                        plan.class_cap[g] = 0;
                    }
                }
                plan
            }
            PartialHarmonious | PartialRSequencing => return Err(SearchError::PartialKind(kind)),
        };
        Ok(plan)
    }

    fn has_unbounded_class(&self) -> bool {
        self.class_cap.iter().any(|&c| c >= UNBOUNDED)
    }

    /// Abelianization necessary condition for cyclic plans.
    fn sums_consistent(&self, group: &FiniteGroup) -> bool {
        if self.closure != Closure::Cyclic || self.has_unbounded_class() {
            return true;
        }
        let ab = abelianization(group);
        let q = &ab.quotient;
        let mut term_sum = q.identity();
        let mut derived_sum = q.identity();
        for x in group.elements() {
            for _ in 0..self.term_cap[x] {
                term_sum = q.mul(term_sum, ab.project(x));
            }
            if self.class_of[x] == x {
                for _ in 0..self.class_cap[x] {
                    derived_sum = q.mul(derived_sum, ab.project(x));
                }
            }
        }
        match self.op {
            Sign::Plus => derived_sum == q.mul(term_sum, term_sum),
            Sign::Minus => derived_sum == q.identity(),
        }
    }
}

/// Characters `G -> Z2`, as "odd" indicator vectors (at most 15).
fn index_two_characters(group: &FiniteGroup) -> Vec<Vec<bool>> {
    let squares: Vec<Element> = group.elements().map(|a| group.mul(a, a)).collect();
    let s = generated_subgroup(group, &squares);
    if s.len() == group.order() {
        return Vec::new();
    }
    let q = quotient_group(group, &s).expect("the square subgroup is normal");
    let qg = &q.group;
    let mut coords: Vec<Option<u32>> = vec![None; qg.order()];
    coords[qg.identity()] = Some(0);
    let mut rank = 0;
    for x in qg.elements() {
        if coords[x].is_some() || rank >= 32 {
            continue;
        }
        let bit = 1u32 << rank;
        rank += 1;
        let span: Vec<(Element, u32)> = qg
            .elements()
            .filter_map(|y| coords[y].map(|c| (y, c)))
            .collect();
        for (y, c) in span {
            coords[qg.mul(y, x)] = Some(c | bit);
        }
    }
    let masks = ((1u64 << rank.min(4)) - 1).min(15) as u32;
    (1..=masks)
        .map(|f| {
            group
                .elements()
                .map(|e| (coords[q.projection[e]].unwrap() & f).count_ones() % 2 == 1)
                .collect()
        })
        .collect()
}

struct Parity {
    odd: Vec<bool>,
    odd_terms: u32,
    even_terms: u32,
    odd_derived: u32,
}

#[derive(Debug, Clone, Copy, Default)]
struct Undo {
    term_taken: bool,
    class: Option<usize>,
    reserved_term: Option<Element>,
    reserved_class: Option<usize>,
    closure_class: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Found,
    Exhausted,
    Aborted,
}

struct Limits<'s> {
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
    shared_nodes: Option<&'s AtomicU64>,
    cancel: Option<(&'s AtomicUsize, usize)>,
}

struct Engine<'a> {
    group: &'a FiniteGroup,
    plan: &'a Plan,
    term_left: Vec<u8>,
    class_left: Vec<u32>,
    seq: Vec<Element>,
    derived: Vec<Element>,
    undo: Vec<Undo>,
    parity: Vec<Parity>,
    nodes: u64,
    limits: Limits<'a>,
    aborted: bool,
}

impl<'a> Engine<'a> {
    fn new(group: &'a FiniteGroup, plan: &'a Plan, characters: &[Vec<bool>], limits: Limits<'a>) -> Self {
        let parity = if plan.mirror == Mirror::None && plan.last.is_none() && !plan.has_unbounded_class() {
            characters
                .iter()
                .map(|odd| {
                    let mut p = Parity {
                        odd: odd.clone(),
                        odd_terms: 0,
                        even_terms: 0,
                        odd_derived: 0,
                    };
                    for x in group.elements() {
                        let t = plan.term_cap[x] as u32;
                        if odd[x] {
                            p.odd_terms += t;
                        } else {
                            p.even_terms += t;
                        }
                        if plan.class_of[x] == x && odd[x] {
                            p.odd_derived += plan.class_cap[x];
                        }
                    }
                    p
                })
                .collect()
        } else {
            Vec::new()
        };
        Engine {
            group,
            plan,
            term_left: plan.term_cap.clone(),
            class_left: plan.class_cap.clone(),
            seq: Vec::with_capacity(plan.len),
            derived: Vec::with_capacity(plan.len),
            undo: Vec::with_capacity(plan.len),
            parity,
            nodes: 0,
            limits,
            aborted: false,
        }
    }

    fn take_term(&mut self, x: Element) -> bool {
        if self.term_left[x] == 0 {
            return false;
        }
        self.term_left[x] -= 1;
        for p in &mut self.parity {
            if p.odd[x] {
                p.odd_terms -= 1;
            } else {
                p.even_terms -= 1;
            }
        }
        true
    }

    fn give_term(&mut self, x: Element) {
        self.term_left[x] += 1;
        for p in &mut self.parity {
            if p.odd[x] {
                p.odd_terms += 1;
            } else {
                p.even_terms += 1;
            }
        }
    }

    fn take_class(&mut self, d: Element) -> Option<usize> {
        let c = self.plan.class_of[d];
        if self.class_left[c] == 0 {
            return None;
        }
        self.class_left[c] -= 1;
        for p in &mut self.parity {
            if p.odd[c] {
                p.odd_derived -= 1;
            }
        }
        Some(c)
    }

    fn give_class(&mut self, c: usize) {
        self.class_left[c] += 1;
        for p in &mut self.parity {
            if p.odd[c] {
                p.odd_derived += 1;
            }
        }
    }

    fn restore(&mut self, u: Undo, term: Element) {
        if let Some(c) = u.closure_class {
            self.give_class(c);
        }
        if let Some(c) = u.reserved_class {
            self.give_class(c);
        }
        if let Some(c) = u.class {
            self.give_class(c);
        }
        if let Some(t) = u.reserved_term {
            self.give_term(t);
        }
        if u.term_taken {
            self.give_term(term);
        }
    }

    /// The single admissible candidate at position `p`, if forced.
    fn forced(&self, p: usize) -> Option<Element> {
        let m = self.plan.len;
        if p == 0 {
            return self.plan.first;
        }
        if p == m - 1 && self.plan.last.is_some() {
            return self.plan.last;
        }
        match self.plan.mirror {
            Mirror::Terms if p > m - p => Some(self.group.inv(self.seq[m - p])),
            Mirror::Derived if p > m - p => {
                let d = self.group.inv(self.derived[m - p]);
                Some(self.group.mul(self.seq[p - 1], d))
            }
            _ => None,
        }
    }

    /// The `i`-th candidate for a free position `p`.
    #[inline]
    fn candidate(&self, p: usize, i: usize) -> Element {
        if p == 0 || self.plan.order == CandidateOrder::Ascending {
            return i;
        }
        let prev = self.seq[p - 1];
        match self.plan.op {
            Sign::Minus => self.group.mul(prev, i),
            Sign::Plus => self.group.left_quotient(prev, i),
        }
    }

    fn push(&mut self, c: Element) -> bool {
        let g = self.group;
        let m = self.plan.len;
        let p = self.seq.len();
        let mut u = Undo::default();
        let mirror_second_half = p >= 1 && p > m - p;

        // term
        let term_reserved = self.plan.mirror == Mirror::Terms && mirror_second_half;
        if !term_reserved {
            if !self.take_term(c) {
                return false;
            }
            u.term_taken = true;
        }
        if self.plan.mirror == Mirror::Terms && p >= 1 && !mirror_second_half {
            let ci = g.inv(c);
            if p == m - p {
                if ci != c {
                    self.restore(u, c);
                    return false;
                }
            } else if self.take_term(ci) {
                u.reserved_term = Some(ci);
            } else {
                self.restore(u, c);
                return false;
            }
        }

        // derived
        let d = if p == 0 {
            match self.plan.closure {
                Closure::FirstTerm => Some(c),
                _ => None,
            }
        } else {
            Some(self.plan.op.apply(g, self.seq[p - 1], c))
        };
        if let Some(d) = d {
            let derived_reserved = self.plan.mirror == Mirror::Derived && mirror_second_half;
            if derived_reserved {
                if d != g.inv(self.derived[m - p]) {
                    self.restore(u, c);
                    return false;
                }
            } else {
                match self.take_class(d) {
                    Some(cl) => u.class = Some(cl),
                    None => {
                        self.restore(u, c);
                        return false;
                    }
                }
                if self.plan.mirror == Mirror::Derived && p >= 1 {
                    let di = g.inv(d);
                    if p == m - p {
                        if di != d {
                            self.restore(u, c);
                            return false;
                        }
                    } else {
                        match self.take_class(di) {
                            Some(cl) => u.reserved_class = Some(cl),
                            None => {
                                self.restore(u, c);
                                return false;
                            }
                        }
                    }
                }
            }
        }

        // cyclic closure at the last position
        if p == m - 1 && self.plan.closure == Closure::Cyclic {
            let first = if p == 0 { c } else { self.seq[0] };
            let d0 = self.plan.op.apply(g, c, first);
            match self.take_class(d0) {
                Some(cl) => u.closure_class = Some(cl),
                None => {
                    self.restore(u, c);
                    return false;
                }
            }
        }

        self.seq.push(c);
        self.derived.push(d.unwrap_or(usize::MAX));
        self.undo.push(u);
        true
    }

    fn pop(&mut self) {
        let c = self.seq.pop().expect("pop on empty sequence");
        self.derived.pop();
        let u = self.undo.pop().expect("undo stack in sync");
        self.restore(u, c);
    }

    fn feasible(&self) -> bool {
        let p = self.seq.len();
        if p == 0 || p == self.plan.len {
            return true;
        }
        let last = self.seq[p - 1];
        self.parity.iter().all(|par| {
            let p0 = par.odd[last];
            match self.plan.closure {
                Closure::Cyclic => {
                    cyclic_parity_ok(p0, par.odd[self.seq[0]], par.even_terms, par.odd_terms, par.odd_derived)
                }
                _ => open_parity_ok(p0, par.even_terms, par.odd_terms, par.odd_derived),
            }
        })
    }

    fn over_budget(&mut self) -> bool {
        if self.aborted {
            return true;
        }
        if let Some(max) = self.limits.max_nodes {
            let used = match self.limits.shared_nodes {
                Some(shared) if self.nodes % 1024 == 0 => shared.fetch_add(1024, Ordering::Relaxed) + 1024,
                Some(shared) => shared.load(Ordering::Relaxed),
                None => self.nodes,
            };
            if used >= max {
                self.aborted = true;
                return true;
            }
        }
        if self.nodes % 1024 == 0 {
            if let Some(deadline) = self.limits.deadline {
                if Instant::now() >= deadline {
                    self.aborted = true;
                    return true;
                }
            }
            if let Some((best, mine)) = self.limits.cancel {
                if best.load(Ordering::Relaxed) < mine {
                    self.aborted = true;
                    return true;
                }
            }
        }
        false
    }

    fn dfs(&mut self) -> Outcome {
        let p = self.seq.len();
        if p == self.plan.len {
            return Outcome::Found;
        }
        let n = self.group.order();
        let (lo, hi) = match self.forced(p) {
            Some(c) => (c, c + 1),
            None => (0, n),
        };
        let forced = hi - lo == 1 && self.forced(p).is_some();
        let hold_back = if p + 1 < self.plan.len { self.plan.last } else { None };
        for i in lo..hi {
            let c = if forced { i } else { self.candidate(p, i) };
            if Some(c) == hold_back {
                continue;
            }
            if self.over_budget() {
                return Outcome::Aborted;
            }
            if self.push(c) {
                self.nodes += 1;
                if self.feasible() {
                    match self.dfs() {
                        Outcome::Found => return Outcome::Found,
                        Outcome::Aborted => {
                            self.pop();
                            return Outcome::Aborted;
                        }
                        Outcome::Exhausted => {}
                    }
                }
                self.pop();
            }
        }
        Outcome::Exhausted
    }

    /// All feasible prefixes of length `depth`, in lexicographic order.
    fn frontier(&mut self, depth: usize, out: &mut Vec<Vec<Element>>) {
        let p = self.seq.len();
        if p == depth || p == self.plan.len {
            out.push(self.seq.clone());
            return;
        }
        let (lo, hi) = match self.forced(p) {
            Some(c) => (c, c + 1),
            None => (0, self.group.order()),
        };
        let forced = hi - lo == 1 && self.forced(p).is_some();
        let hold_back = if p + 1 < self.plan.len { self.plan.last } else { None };
        for i in lo..hi {
            let c = if forced { i } else { self.candidate(p, i) };
            if Some(c) == hold_back {
                continue;
            }
            if self.push(c) {
                self.nodes += 1;
                if self.feasible() {
                    self.frontier(depth, out);
                }
                self.pop();
            }
        }
    }
}

/// A cycle through the current last term and back to the first term.
fn cyclic_parity_ok(p0: bool, pf: bool, even: u32, odd: u32, needed: u32) -> bool {
    let et = even + u32::from(!p0) + u32::from(!pf);
    let ot = odd + u32::from(p0) + u32::from(pf);
    if p0 == pf {
        let (same, other) = if p0 { (ot, et) } else { (et, ot) };
        let max = 2 * other.min(same - 1);
        let min = if other == 0 { 0 } else { 2 };
        needed % 2 == 0 && needed >= min && needed <= max
    } else {
        let max = 2 * et.min(ot) - 1;
        needed % 2 == 1 && needed <= max
    }
}

/// An open path starting at the current last term.
fn open_parity_ok(p0: bool, even: u32, odd: u32, needed: u32) -> bool {
    let (a, b) = if p0 { (odd + 1, even) } else { (even + 1, odd) };
    let (min, max) = if b == 0 {
        (0, 0)
    } else if b >= a {
        (1, 2 * a - 1)
    } else {
        (1, 2 * b)
    };
    needed >= min && needed <= max
}

struct RunResult {
    verdict: Verdict,
    witness: Option<Vec<Element>>,
    nodes: u64,
}

fn deadline(budget: &SearchBudget, start: Instant) -> Option<Instant> {
    budget
        .max_millis
        .map(|ms| start + Duration::from_millis(ms))
}

fn run_plan(
    group: &FiniteGroup,
    plan: &Plan,
    prefix: &[Element],
    budget: &SearchBudget,
    start: Instant,
    jobs: usize,
) -> RunResult {
    let refuted = RunResult {
        verdict: Verdict::Refuted,
        witness: None,
        nodes: 0,
    };
    if plan.len == 0 || !plan.sums_consistent(group) {
        return refuted;
    }
    let characters = index_two_characters(group);
    let limits = Limits {
        max_nodes: budget.max_nodes,
        deadline: deadline(budget, start),
        shared_nodes: None,
        cancel: None,
    };
    let mut engine = Engine::new(group, plan, &characters, limits);
    for &x in prefix {
        if !engine.push(x) {
            return refuted;
        }
    }
    if !engine.feasible() {
        return refuted;
    }
    if jobs <= 1 {
        let outcome = engine.dfs();
        return RunResult {
            verdict: match outcome {
                Outcome::Found => Verdict::Found,
                Outcome::Exhausted => Verdict::Refuted,
                Outcome::Aborted => Verdict::Inconclusive,
            },
            witness: (outcome == Outcome::Found).then(|| engine.seq.clone()),
            nodes: engine.nodes,
        };
    }
    run_parallel(group, plan, &characters, engine, budget, start, jobs)
}

fn run_parallel(
    group: &FiniteGroup,
    plan: &Plan,
    characters: &[Vec<bool>],
    mut engine: Engine<'_>,
    budget: &SearchBudget,
    start: Instant,
    jobs: usize,
) -> RunResult {
    let base = engine.seq.len();
    let mut prefixes = Vec::new();
    let mut depth = base;
    while depth < plan.len {
        depth += 1;
        prefixes.clear();
        engine.frontier(depth, &mut prefixes);
        if prefixes.len() >= 4 * jobs || depth >= base + 3 {
            break;
        }
    }
    let frontier_nodes = engine.nodes;
    if prefixes.is_empty() {
        return RunResult {
            verdict: Verdict::Refuted,
            witness: None,
            nodes: frontier_nodes,
        };
    }
    let best = AtomicUsize::new(usize::MAX);
    let shared = AtomicU64::new(frontier_nodes);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    let results: Vec<(Outcome, bool, Option<Vec<Element>>, u64)> = pool.install(|| {
        prefixes
            .par_iter()
            .enumerate()
            .map(|(idx, prefix)| {
                if best.load(Ordering::Relaxed) < idx {
                    return (Outcome::Aborted, true, None, 0);
                }
                let limits = Limits {
                    max_nodes: budget.max_nodes,
                    deadline: deadline(budget, start),
                    shared_nodes: Some(&shared),
                    cancel: Some((&best, idx)),
                };
                let mut worker = Engine::new(group, plan, characters, limits);
                for &x in prefix {
                    let ok = worker.push(x);
                    debug_assert!(ok, "frontier prefixes replay");
                }
                let outcome = worker.dfs();
                let cancelled = outcome == Outcome::Aborted && best.load(Ordering::Relaxed) < idx;
                if outcome == Outcome::Found {
                    best.fetch_min(idx, Ordering::Relaxed);
                }
                let witness = (outcome == Outcome::Found).then(|| worker.seq.clone());
                (outcome, cancelled, witness, worker.nodes)
            })
            .collect()
    });
    let nodes = frontier_nodes + results.iter().map(|r| r.3).sum::<u64>();
    if let Some((_, _, witness, _)) = results.iter().find(|r| r.0 == Outcome::Found) {
        return RunResult {
            verdict: Verdict::Found,
            witness: witness.clone(),
            nodes,
        };
    }
    let any_budget_abort = results.iter().any(|r| r.0 == Outcome::Aborted && !r.1);
    RunResult {
        verdict: if any_budget_abort {
            Verdict::Inconclusive
        } else {
            Verdict::Refuted
        },
        witness: None,
        nodes,
    }
}

fn report(
    kind: Objective,
    result: RunResult,
    set: &Subset,
    start: Instant,
) -> PropertyReport {
    PropertyReport {
        kind,
        verdict: result.verdict,
        witness: result.witness.map(|w| Seq::new(w).expect("witnesses are non-empty")),
        nodes_explored: result.nodes,
        elapsed_millis: start.elapsed().as_millis() as u64,
        subset: set.members().to_vec(),
    }
}

/// Decides `kind` on `set` by exhaustive (or budgeted) search.
pub fn search_property(
    group: &FiniteGroup,
    set: &Subset,
    kind: PropertyKind,
    budget: &SearchBudget,
) -> Result<PropertyReport, SearchError> {
    search_property_jobs(group, set, kind, budget, 1)
}

/// [`search_property`] restricted to witnesses starting with `prefix`, trying
/// candidates in the given order. With [`CandidateOrder::ByDerived`] the
/// witness need not be lexicographically first.
pub fn search_property_ordered(
    group: &FiniteGroup,
    set: &Subset,
    kind: PropertyKind,
    budget: &SearchBudget,
    order: CandidateOrder,
    prefix: &[Element],
) -> Result<PropertyReport, SearchError> {
    budget.validate()?;
    if kind.is_partial() {
        return Err(SearchError::PartialKind(kind));
    }
    let start = Instant::now();
    let mut plan = Plan::for_kind(group, set, kind)?;
    plan.order = order;
    let result = run_plan(group, &plan, prefix, budget, start, 1);
    Ok(report(Objective::Property(kind), result, set, start))
}

/// [`search_property`] with the first branching level split over `jobs`
/// threads. The verdict and witness match the sequential search for an
/// exhaustive budget; `nodes_explored` does not.
pub fn search_property_jobs(
    group: &FiniteGroup,
    set: &Subset,
    kind: PropertyKind,
    budget: &SearchBudget,
    jobs: usize,
) -> Result<PropertyReport, SearchError> {
    budget.validate()?;
    if kind.is_partial() {
        return Err(SearchError::PartialKind(kind));
    }
    let start = Instant::now();
    let plan = Plan::for_kind(group, set, kind)?;
    let result = run_plan(group, &plan, &[], budget, start, jobs);
    let report = report(Objective::Property(kind), result, set, start);
    if let Some(w) = &report.witness {
        debug_assert!(verify(group, set, kind, w).map(|r| r.pass).unwrap_or(false));
    }
    Ok(report)
}

/// Completes a partial harmonious sequence (partial R-sequencing) `prefix` to
/// a harmonious sequence (R-sequencing generator) in `set`.
pub fn extend_partial(
    group: &FiniteGroup,
    set: &Subset,
    kind: PropertyKind,
    prefix: &Seq,
    budget: &SearchBudget,
) -> Result<PropertyReport, SearchError> {
    budget.validate()?;
    let full_kind = match kind {
        PropertyKind::PartialHarmonious => PropertyKind::Harmonious,
        PropertyKind::PartialRSequencing => PropertyKind::RSequencing,
        other => return Err(SearchError::NotPartialKind(other)),
    };
    if let Some(failure) = crate::seq::partial_failure(group, set, kind, prefix)? {
        return Err(SearchError::InvalidPrefix(failure.to_string()));
    }
    let start = Instant::now();
    let plan = Plan::for_kind(group, set, full_kind)?;
    let result = run_plan(group, &plan, prefix.terms(), budget, start, 1);
    Ok(report(Objective::Property(full_kind), result, set, start))
}

/// Searches `K±[A; B]` for a rainbow Hamilton sequence from `x` to `y`.
pub fn rainbow_search(
    group: &FiniteGroup,
    a: &Subset,
    b: &Subset,
    sign: Sign,
    x: Element,
    y: Element,
    budget: &SearchBudget,
) -> Result<PropertyReport, SearchError> {
    budget.validate()?;
    if b.len() + 1 != a.len() {
        return Err(SearchError::RainbowSize {
            a: a.len(),
            b: b.len(),
        });
    }
    if x == y {
        return Err(SearchError::SameEndpoints);
    }
    for e in [x, y] {
        if !a.contains(e) {
            return Err(SearchError::EndpointOutside(e));
        }
    }
    let start = Instant::now();
    let n = group.order();
    let mut term_cap = vec![0u8; n];
    a.iter().for_each(|e| term_cap[e] = 1);
    let mut class_cap = vec![0u32; n];
    b.iter().for_each(|e| class_cap[e] = 1);
    let plan = Plan {
        len: a.len(),
        term_cap,
        op: sign,
        closure: Closure::Open,
        class_of: (0..n).collect(),
        class_cap,
        first: Some(x),
        last: Some(y),
        mirror: Mirror::None,
        order: CandidateOrder::Ascending,
    };
    let result = run_plan(group, &plan, &[], budget, start, 1);
    let report = report(Objective::Rainbow(sign), result, a, start);
    if let Some(w) = &report.witness {
        debug_assert!(verify_rainbow(group, a, b, sign, w).unwrap_or(false));
    }
    Ok(report)
}

/// Builds a terrace from a rainbow sequence in `K-[G \ {1}; G \ {1, g^-1}]`
/// from `g` to `g^2`, prefixed with the identity.
pub fn two_sequencing_via_rainbow(
    group: &FiniteGroup,
    g: Element,
    budget: &SearchBudget,
) -> Result<PropertyReport, SearchError> {
    let id = group.identity();
    let g2 = group.mul(g, g);
    if g2 == id {
        return Err(SearchError::SquareIsIdentity(g));
    }
    let full = Subset::full(group);
    let a = full.without(id);
    let c = a.without(group.inv(g));
    let mut rep = rainbow_search(group, &a, &c, Sign::Minus, g, g2, budget)?;
    rep.kind = Objective::Property(PropertyKind::TwoSequencing);
    rep.subset = full.members().to_vec();
    if let Some(w) = rep.witness.take() {
        let mut terms = vec![id];
        terms.extend_from_slice(w.terms());
        let seq = Seq::new(terms)?;
        debug_assert!(verify(group, &full, PropertyKind::TwoSequencing, &seq)?.pass);
        rep.witness = Some(seq);
    }
    Ok(rep)
}

/// How the identity of `P(G)` may be certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuperReading {
    /// `h = g_m` for a sequencing generator, or `h = 1` with an R-sequencing.
    #[default]
    IdentityViaRSequencing,
    /// Only `h = g_m` for a sequencing generator.
    EndpointOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuperBranch {
    Sequencing,
    RSequencing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuperEntry {
    pub h: Element,
    pub verdict: Verdict,
    pub branch: Option<SuperBranch>,
    pub witness: Option<Seq>,
    pub nodes_explored: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupersequenceReport {
    pub verdict: Verdict,
    pub reading: SuperReading,
    pub entries: Vec<SuperEntry>,
    pub elapsed_millis: u64,
}

pub fn supersequenceable_check(
    group: &FiniteGroup,
    budget: &SearchBudget,
    reading: SuperReading,
) -> Result<SupersequenceReport, SearchError> {
    budget.validate()?;
    let start = Instant::now();
    let id = group.identity();
    let full = Subset::full(group);
    let mut entries = Vec::new();
    for h in product_coset(group).iter() {
        let entry = if group.order() == 1 {
            SuperEntry {
                h,
                verdict: Verdict::Found,
                branch: Some(SuperBranch::Sequencing),
                witness: Some(Seq::new(vec![id])?),
                nodes_explored: 0,
            }
        } else if h != id {
            let c = full.without(id);
            let rep = rainbow_search(group, &full, &c, Sign::Minus, id, h, budget)?;
            SuperEntry {
                h,
                verdict: rep.verdict,
                branch: (rep.verdict == Verdict::Found).then_some(SuperBranch::Sequencing),
                witness: rep.witness,
                nodes_explored: rep.nodes_explored,
            }
        } else if reading == SuperReading::IdentityViaRSequencing {
            let rep = search_property(group, &full, PropertyKind::RSequencing, budget)?;
            SuperEntry {
                h,
                verdict: rep.verdict,
                branch: (rep.verdict == Verdict::Found).then_some(SuperBranch::RSequencing),
                witness: rep.witness,
                nodes_explored: rep.nodes_explored,
            }
        } else {
            // g_1 = 1 and distinct terms rule out g_m = 1
            SuperEntry {
                h,
                verdict: Verdict::Refuted,
                branch: None,
                witness: None,
                nodes_explored: 0,
            }
        };
        entries.push(entry);
    }
    let verdict = if entries.iter().all(|e| e.verdict == Verdict::Found) {
        Verdict::Found
    } else if entries.iter().any(|e| e.verdict == Verdict::Refuted) {
        Verdict::Refuted
    } else {
        Verdict::Inconclusive
    };
    Ok(SupersequenceReport {
        verdict,
        reading,
        entries,
        elapsed_millis: start.elapsed().as_millis() as u64,
    })
}

/// `2∑W = 0` in the abelianization.
pub fn two_sum_zero(group: &FiniteGroup, w: &Subset) -> bool {
    let ab = abelianization(group);
    let s = ab.sum(w.iter());
    ab.quotient.mul(s, s) == ab.quotient.identity()
}
