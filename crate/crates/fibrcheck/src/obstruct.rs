//! Degree criteria on the order polynomials and verdict aggregation.

use thiserror::Error;

use crate::groups::TargetGroup;
use crate::polymat::LaurentPoly;
use crate::twisted::{DeltaSet, RepKind, Representation};

/// `2g − 2` of the fiber class for a 0-surgery with declared genus.
pub fn thurston_norm(genus: u32) -> i64 {
    2 * genus as i64 - 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Criterion {
    Baseline,
    RegularFp,
    PermutationFp,
}

impl Criterion {
    pub fn label(&self) -> &'static str {
        match self {
            Criterion::Baseline => "baseline",
            Criterion::RegularFp => "regular",
            Criterion::PermutationFp => "permutation",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Obstructed,
    Consistent,
}

/// Outcome of one degree test. `lhs` is `deg Δ_1` (`None` for `Δ_1 = 0`),
/// `rhs` the degree the criterion expects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionVerdict {
    pub status: Status,
    pub lhs: Option<i64>,
    pub rhs: i64,
    pub reason: String,
    pub criterion: Criterion,
}

#[derive(Clone, Debug)]
pub struct CriterionInput {
    pub thurston_norm: i64,
    pub deltas: DeltaSet,
    pub rep: Representation,
    pub group: TargetGroup,
    pub div_phi_g: Option<u64>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ObstructError {
    #[error("prime divides the group order; the permutation criterion does not apply")]
    CoprimalityViolated,
    #[error("criterion applied to the wrong representation kind")]
    WrongRepresentation,
}

/// Monic-and-degree test on the ordinary (integer) polynomial: the `|G| = 1`
/// specialization of the degree criteria.
pub fn baseline_check(delta: &LaurentPoly, genus: u32) -> ObstructionVerdict {
    let lhs = delta.degree();
    let rhs = 2 * genus as i64;
    let monic = delta.is_monic();
    let (status, reason) = match (monic, lhs) {
        (true, Some(d)) if d == rhs => (Status::Consistent, "monic with expected degree".into()),
        (false, _) => (Status::Obstructed, "ordinary polynomial is not monic".into()),
        (_, d) => (
            Status::Obstructed,
            format!("ordinary degree {} differs from {}", degree_text(d), rhs),
        ),
    };
    ObstructionVerdict { status, lhs, rhs, reason, criterion: Criterion::Baseline }
}

/// Regular-representation test: `Δ_1 ≠ 0` and
/// `deg Δ_1 = |G|·norm + 2·div φ_G`. No coprimality hypothesis.
pub fn regular_criterion(input: &CriterionInput) -> Result<ObstructionVerdict, ObstructError> {
    if input.rep.kind != RepKind::Regular {
        return Err(ObstructError::WrongRepresentation);
    }
    let div = input.div_phi_g.expect("div phi required for the regular criterion") as i64;
    let rhs = input.group.order() as i64 * input.thurston_norm + 2 * div;
    Ok(degree_verdict(input.deltas.degrees.1, rhs, Criterion::RegularFp))
}

/// Permutation-representation test under `gcd(p, |G|) = 1`: `Δ_1 ≠ 0` and
/// `deg Δ_1 = dim·norm + deg Δ_0 + deg Δ_2`.
pub fn permutation_criterion(input: &CriterionInput) -> Result<ObstructionVerdict, ObstructError> {
    if input.rep.kind != RepKind::PermutationNatural {
        return Err(ObstructError::WrongRepresentation);
    }
    if !input.rep.coprime {
        return Err(ObstructError::CoprimalityViolated);
    }
    let (d0, d1, d2) = input.deltas.degrees;
    let (Some(d0), Some(d2)) = (d0, d2) else {
        // Δ_0 vanishes only when coker d1 has positive rank, impossible for
        // nontrivial φ on a connected complex
        return Ok(ObstructionVerdict {
            status: Status::Obstructed,
            lhs: d1,
            rhs: 0,
            reason: "order of H_0 vanishes".into(),
            criterion: Criterion::PermutationFp,
        });
    };
    let rhs = input.rep.dim as i64 * input.thurston_norm + d0 + d2;
    Ok(degree_verdict(d1, rhs, Criterion::PermutationFp))
}

fn degree_text(d: Option<i64>) -> String {
    match d {
        Some(d) => d.to_string(),
        None => "-inf".into(),
    }
}

fn degree_verdict(lhs: Option<i64>, rhs: i64, criterion: Criterion) -> ObstructionVerdict {
    match lhs {
        None => ObstructionVerdict {
            status: Status::Obstructed,
            lhs,
            rhs,
            reason: "twisted polynomial vanishes".into(),
            criterion,
        },
        Some(d) if d == rhs => ObstructionVerdict {
            status: Status::Consistent,
            lhs,
            rhs,
            reason: "degree matches".into(),
            criterion,
        },
        Some(d) => ObstructionVerdict {
            status: Status::Obstructed,
            lhs,
            rhs,
            reason: format!("degree {} differs from {}", d, rhs),
            criterion,
        },
    }
}

/// Combined verdict over all evaluated criteria.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AggregateVerdict {
    pub status: Status,
    pub note: String,
}

/// One failed necessary condition obstructs; an empty list is vacuously
/// consistent and flagged as such.
pub fn aggregate(verdicts: &[ObstructionVerdict]) -> AggregateVerdict {
    if verdicts.is_empty() {
        return AggregateVerdict {
            status: Status::Consistent,
            note: "no homomorphisms found; vacuously no obstruction".into(),
        };
    }
    let obstructed = verdicts.iter().filter(|v| v.status == Status::Obstructed).count();
    if obstructed > 0 {
        AggregateVerdict {
            status: Status::Obstructed,
            note: format!("{} of {} criteria obstructed", obstructed, verdicts.len()),
        }
    } else {
        AggregateVerdict { status: Status::Consistent, note: "no obstruction found".into() }
    }
}
