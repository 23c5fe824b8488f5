//! Sequence interchange files.
//!
//! A sequence file is a JSON object with exactly two fields, written by
//! [`write_seq_file`] as two-space indented JSON followed by a newline:
//!
//! ```text
//! {
//!   "group": "Z4xZ3",
//!   "terms": [
//!     "(0,0)",
//!     "(1,0)"
//!   ]
//! }
//! ```
//!
//! `group` is a canonical group spec and `terms` are element labels of that
//! group. Unknown fields and unknown labels are rejected.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{build_group, label_index, FiniteGroup, GroupError, GroupSpec};
use crate::seq::{Seq, SeqError};

#[derive(Debug, Error)]
pub enum SeqFileError {
    #[error("malformed sequence file: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Seq(#[from] SeqError),
    #[error("unknown element label {label:?} at position {position} for group {group}")]
    UnknownLabel {
        label: String,
        position: usize,
        group: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeqFile {
    pub group: String,
    pub terms: Vec<String>,
}

impl SeqFile {
    pub fn from_seq(group: &FiniteGroup, spec: &GroupSpec, seq: &Seq) -> Self {
        Self {
            group: spec.to_string(),
            terms: seq.labels(group).into_iter().map(str::to_owned).collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("plain strings serialize");
        text.push('\n');
        text
    }
}

/// A parsed sequence file with its group built.
#[derive(Debug, Clone)]
pub struct LoadedSeq {
    pub spec: GroupSpec,
    pub group: FiniteGroup,
    pub seq: Seq,
}

pub fn write_seq_file(group: &FiniteGroup, spec: &GroupSpec, seq: &Seq) -> String {
    SeqFile::from_seq(group, spec, seq).to_text()
}

pub fn read_seq_file(text: &str) -> Result<LoadedSeq, SeqFileError> {
    let file: SeqFile = serde_json::from_str(text)?;
    let spec: GroupSpec = file.group.parse()?;
    let group = build_group(&spec)?;
    let seq = {
        let index = label_index(&group);
        let terms = file
            .terms
            .iter()
            .enumerate()
            .map(|(i, label)| {
                index
                    .get(label.as_str())
                    .copied()
                    .ok_or_else(|| SeqFileError::UnknownLabel {
                        label: label.clone(),
                        position: i + 1,
                        group: spec.to_string(),
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Seq::new(terms)?
    };
    Ok(LoadedSeq { spec, group, seq })
}
