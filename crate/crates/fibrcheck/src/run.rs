//! Orchestration: load, search, compute, judge, report.

use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::cache::{Cache, CachedSearch};
use crate::groups::{
    div_phi_g, enumerate_epimorphisms, GroupError, GroupHom, SearchLimits, TargetGroup,
};
use crate::obstruct::{
    aggregate, baseline_check, permutation_criterion, regular_criterion, thurston_norm,
    CriterionInput, ObstructError, ObstructionVerdict, Status,
};
use crate::report::{
    AggregateRecord, GroupSearchRecord, OrdinaryRecord, PresentationMeta, Report, SkippedRecord,
    VerdictRecord, WitnessRecord,
};
use crate::twisted::{
    build_complex, delta_set, ordinary_alexander, RepKind, Representation, TwistedError,
};
use crate::words::{abelianization_phi, surgery_presentation, Phi, Presentation, PresentationError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Symplectic,
    Fibered,
}

impl Mode {
    pub fn parse(s: &str) -> Option<Mode> {
        match s {
            "symplectic" => Some(Mode::Symplectic),
            "fibered" => Some(Mode::Fibered),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Mode::Symplectic => "symplectic",
            Mode::Fibered => "fibered",
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub input_path: PathBuf,
    pub groups: Vec<TargetGroup>,
    pub primes: Vec<u32>,
    pub mode: Mode,
    pub max_homs: usize,
    /// 0 picks the rayon default.
    pub workers: usize,
    pub cache_path: Option<PathBuf>,
    pub out_path: Option<PathBuf>,
    /// Regular-representation computations run only for groups up to this
    /// order (the regular rep of a group of order n is n-dimensional).
    pub regular_max_order: u64,
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("presentation: {0}")]
    Presentation(#[from] PresentationError),
    #[error("computation: {0}")]
    Twisted(#[from] TwistedError),
    #[error("criterion: {0}")]
    Obstruct(#[from] ObstructError),
    #[error("group: {0}")]
    Group(#[from] GroupError),
    #[error("the presentation must declare a genus")]
    GenusRequired,
    #[error("genus 0 is out of scope (0-surgery on the unknot)")]
    GenusZero,
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("at least one target group is required")]
    NoGroups,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

struct Task<'a> {
    group: TargetGroup,
    hom_index: usize,
    hom: &'a GroupHom,
    prime: u32,
    kind: RepKind,
    div: Option<u64>,
}

fn run_task(
    task: &Task,
    surg: &Presentation,
    phi: &Phi,
    norm: i64,
) -> Result<(WitnessRecord, ObstructionVerdict), RunError> {
    let rep = match task.kind {
        RepKind::PermutationNatural => Representation::permutation_natural(task.prime, task.group),
        RepKind::Regular => Representation::regular(task.prime, task.group),
        RepKind::Trivial => Representation::trivial(task.prime),
    };
    let complex = build_complex(surg, task.hom, &rep, phi)?;
    let deltas = delta_set(&complex);
    let input = CriterionInput {
        thurston_norm: norm,
        deltas: deltas.clone(),
        rep: rep.clone(),
        group: task.group,
        div_phi_g: task.div,
    };
    let verdict = match task.kind {
        RepKind::PermutationNatural => permutation_criterion(&input)?,
        RepKind::Regular => regular_criterion(&input)?,
        RepKind::Trivial => unreachable!("trivial representation is not scheduled"),
    };
    let record = WitnessRecord {
        group: task.group.name(),
        hom_index: task.hom_index,
        images: task.hom.images.iter().map(|p| p.images().to_vec()).collect(),
        prime: task.prime,
        representation: task.kind.label().into(),
        dim: rep.dim,
        delta0: deltas.delta0.serialized(),
        delta1: deltas.delta1.serialized(),
        delta2: deltas.delta2.serialized(),
        degrees: [deltas.degrees.0, deltas.degrees.1, deltas.degrees.2],
        div_phi_g: task.div,
        verdict: VerdictRecord::from_verdict(&verdict),
    };
    Ok((record, verdict))
}

fn conclusion(mode: Mode, status: Status) -> String {
    match (mode, status) {
        (Mode::Symplectic, Status::Obstructed) => {
            "S^1 x N admits no symplectic structure (N assumed irreducible; \
             0-surgeries on nontrivial knots are irreducible)"
                .into()
        }
        (Mode::Fibered, Status::Obstructed) => "N does not fiber over the circle".into(),
        (_, Status::Consistent) => {
            "no obstruction found; the tests are necessary conditions only".into()
        }
    }
}

pub fn run_analyze(config: &RunConfig) -> Result<Report, RunError> {
    let started = Instant::now();
    if config.groups.is_empty() {
        return Err(RunError::NoGroups);
    }
    for &p in &config.primes {
        if !is_prime(p) {
            return Err(RunError::NotPrime(p));
        }
    }

    let bytes = std::fs::read(&config.input_path)
        .map_err(|source| RunError::Io { path: config.input_path.clone(), source })?;
    let hash = format!("{:x}", Sha256::digest(&bytes));
    let pres = crate::words::load_presentation(&bytes)?;
    let genus = pres.genus.ok_or(RunError::GenusRequired)?;
    if genus == 0 {
        return Err(RunError::GenusZero);
    }
    let norm = thurston_norm(genus);

    let ordinary = ordinary_alexander(&pres)?;
    let baseline = baseline_check(&ordinary, genus);
    log::info!("{}: ordinary polynomial degree {:?}", pres.name, ordinary.degree());

    let surg = surgery_presentation(&pres)?;
    let phi = abelianization_phi(&surg)?;

    let mut cache = config.cache_path.as_deref().map(Cache::load);
    let limits = SearchLimits { max_homs: config.max_homs, wall_clock: None };
    let mut searches = Vec::new();
    let mut groups_homs: Vec<(TargetGroup, CachedSearch)> = Vec::new();
    let mut incomplete = false;
    for &group in &config.groups {
        let cached = cache
            .as_ref()
            .and_then(|c| c.get(&hash, group, config.max_homs));
        let (found, from_cache) = match cached {
            Some(found) => (found, true),
            None => {
                log::info!("searching epimorphisms onto {}", group.name());
                let out = enumerate_epimorphisms(&surg, group, limits);
                let found = CachedSearch { homs: out.homs, complete: out.complete };
                if let Some(c) = cache.as_mut() {
                    c.put(&hash, group, config.max_homs, &found);
                }
                (found, false)
            }
        };
        incomplete |= !found.complete;
        searches.push(GroupSearchRecord {
            group: group.name(),
            homs_found: found.homs.len(),
            complete: found.complete,
            from_cache,
        });
        groups_homs.push((group, found));
    }
    if let Some(c) = cache.as_mut() {
        if let Err(e) = c.save() {
            log::warn!("cannot write cache: {}", e);
        }
    }

    let mut tasks = Vec::new();
    let mut skipped = Vec::new();
    for (group, found) in &groups_homs {
        for &prime in &config.primes {
            let coprime = {
                let r = Representation::permutation_natural(prime, *group);
                r.coprime
            };
            if !coprime {
                skipped.push(SkippedRecord {
                    group: group.name(),
                    prime,
                    representation: RepKind::PermutationNatural.label().into(),
                    reason: "prime divides the group order".into(),
                });
            }
            for (hom_index, hom) in found.homs.iter().enumerate() {
                if coprime {
                    tasks.push(Task {
                        group: *group,
                        hom_index,
                        hom,
                        prime,
                        kind: RepKind::PermutationNatural,
                        div: None,
                    });
                }
                if group.order() <= config.regular_max_order {
                    tasks.push(Task {
                        group: *group,
                        hom_index,
                        hom,
                        prime,
                        kind: RepKind::Regular,
                        div: Some(div_phi_g(hom, &phi)?),
                    });
                }
            }
        }
    }

    log::info!("{} twisted computations scheduled", tasks.len());
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .expect("thread pool");
    let results: Result<Vec<_>, RunError> = pool.install(|| {
        tasks
            .par_iter()
            .map(|t| run_task(t, &surg, &phi, norm))
            .collect()
    });
    let results = results?;

    let mut verdicts = vec![baseline.clone()];
    let mut witnesses = Vec::with_capacity(results.len());
    for (record, verdict) in results {
        witnesses.push(record);
        verdicts.push(verdict);
    }
    let agg = aggregate(&verdicts);

    let report = Report {
        presentation: PresentationMeta {
            name: pres.name.clone(),
            generators: pres.generators.len(),
            relators: pres.relators.len(),
            genus,
            hash,
        },
        mode: config.mode.label().into(),
        ordinary: OrdinaryRecord {
            polynomial: ordinary.serialized(),
            degree: ordinary.degree(),
            monic: ordinary.is_monic(),
            verdict: VerdictRecord::from_verdict(&baseline),
        },
        searches,
        witnesses,
        skipped,
        incomplete_search: incomplete,
        aggregate: AggregateRecord::new(&agg, conclusion(config.mode, agg.status)),
        timing_ms: started.elapsed().as_millis() as u64,
    };

    if let Some(out) = &config.out_path {
        std::fs::write(out, report.to_json())
            .map_err(|source| RunError::Io { path: out.clone(), source })?;
    }
    Ok(report)
}

/// Process exit code for a finished report: 10 = obstructed, 0 = consistent.
pub fn exit_code(report: &Report) -> i32 {
    if report.aggregate.status == "obstructed" {
        10
    } else {
        0
    }
}
