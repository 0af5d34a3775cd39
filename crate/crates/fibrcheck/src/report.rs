//! Serializable run report.

use serde::{Deserialize, Serialize};

use crate::obstruct::{AggregateVerdict, ObstructionVerdict, Status};
use crate::polymat::PolySerial;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PresentationMeta {
    pub name: String,
    pub generators: usize,
    pub relators: usize,
    pub genus: u32,
    /// SHA-256 of the input file bytes.
    pub hash: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct VerdictRecord {
    pub status: String,
    pub criterion: String,
    pub lhs_degree: Option<i64>,
    pub rhs_degree: i64,
    pub reason: String,
}

impl VerdictRecord {
    pub fn from_verdict(v: &ObstructionVerdict) -> VerdictRecord {
        VerdictRecord {
            status: status_text(v.status).into(),
            criterion: v.criterion.label().into(),
            lhs_degree: v.lhs,
            rhs_degree: v.rhs,
            reason: v.reason.clone(),
        }
    }
}

pub fn status_text(s: Status) -> &'static str {
    match s {
        Status::Obstructed => "obstructed",
        Status::Consistent => "consistent",
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct OrdinaryRecord {
    pub polynomial: PolySerial,
    pub degree: Option<i64>,
    pub monic: bool,
    pub verdict: VerdictRecord,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct WitnessRecord {
    pub group: String,
    pub hom_index: usize,
    /// Image table of each generator (zero-based).
    pub images: Vec<Vec<usize>>,
    pub prime: u32,
    pub representation: String,
    pub dim: usize,
    pub delta0: PolySerial,
    pub delta1: PolySerial,
    pub delta2: PolySerial,
    pub degrees: [Option<i64>; 3],
    pub div_phi_g: Option<u64>,
    pub verdict: VerdictRecord,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SkippedRecord {
    pub group: String,
    pub prime: u32,
    pub representation: String,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupSearchRecord {
    pub group: String,
    pub homs_found: usize,
    pub complete: bool,
    pub from_cache: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AggregateRecord {
    pub status: String,
    pub note: String,
    pub conclusion: String,
}

impl AggregateRecord {
    pub fn new(v: &AggregateVerdict, conclusion: String) -> AggregateRecord {
        AggregateRecord { status: status_text(v.status).into(), note: v.note.clone(), conclusion }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Report {
    pub presentation: PresentationMeta,
    pub mode: String,
    pub ordinary: OrdinaryRecord,
    pub searches: Vec<GroupSearchRecord>,
    pub witnesses: Vec<WitnessRecord>,
    pub skipped: Vec<SkippedRecord>,
    pub incomplete_search: bool,
    pub aggregate: AggregateRecord,
    /// Wall-clock duration; the one field excluded from determinism.
    pub timing_ms: u64,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}
