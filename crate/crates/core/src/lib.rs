//! Group sequencings: construction, verification and exhaustive search.
//!
//! Groups are explicit Cayley tables ([`group::FiniteGroup`]) built from
//! specs such as `Z2xZ5`, `D10` or `Q8`. A [`seq::Seq`] is a list of element
//! indices; [`seq::verify`] decides every property kind, [`construct`] holds
//! the explicit constructions and [`search`] the backtracking engine.

pub mod cli;
pub mod construct;
pub mod families;
pub mod group;
pub mod search;
pub mod seq;
pub mod seqfile;

pub use group::{build_group, parse_group_spec, Element, FiniteGroup, GroupError, GroupSpec, Subset};
pub use search::{PropertyReport, SearchBudget, Verdict};
pub use seq::{verify, PropertyKind, Seq, VerifyReport};
