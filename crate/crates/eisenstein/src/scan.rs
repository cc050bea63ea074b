//! Norm-bounded search for norm-perfect elements, with resumable
//! checkpoints.
//!
//! The search walks one representative per associate class: the cells
//! (a, b) with a > b ≥ 0 and norm ≤ bound. That is sound because σ*
//! discards units and norms are associate-invariant, so the predicates are
//! constant on each class; it also cuts the work six-fold. Cells are visited
//! in row-major order (a ascending, then b), which is what the checkpoint
//! cursor records; the final report is re-sorted into (norm, a, b) order, so
//! a resumed run emits byte-identical output to an uninterrupted one.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor::PrimeFactorization;
use crate::int::EisensteinInt;
use crate::primes::Effort;
use crate::sigma::divisor_report_with;

pub const CHECKPOINT_FORMAT_VERSION: u32 = 1;
pub const DEFAULT_CHECKPOINT_EVERY: usize = 10_000;

/// Which search a checkpoint belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanMode {
    Mersenne,
    NormPerfect,
}

/// Progress marker: the last fully processed position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScanCursor {
    Exponent { exponent: u64 },
    Cell { a: i64, b: i64 },
}

/// One output row: the subject, its verdicts, and supporting data. Rows are
/// also written for candidates whose factorization exceeded the effort
/// bound, flagged by `verdicts["skipped"]` and an error message.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub subject: String,
    pub verdicts: BTreeMap<String, bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factorization: Option<PrimeFactorization>,
    pub norms: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ReportRecord {
    pub fn is_skipped(&self) -> bool {
        self.error.is_some()
    }

    pub fn is_hit(&self) -> bool {
        self.verdicts.get("norm_perfect").copied().unwrap_or(false)
    }

    fn sort_key(&self) -> (BigUint, EisensteinInt) {
        let norm: BigUint = self
            .norms
            .get("subject")
            .and_then(|s| s.parse().ok())
            .unwrap_or_default();
        let subject: EisensteinInt =
            self.subject.parse().unwrap_or_else(|_| EisensteinInt::zero());
        (norm, subject)
    }
}

/// Resumable state of a bounded search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanCheckpoint {
    pub format_version: u32,
    pub mode: ScanMode,
    pub bound: u64,
    pub cursor: Option<ScanCursor>,
    pub candidates_examined: u64,
    pub found: Vec<ReportRecord>,
}

impl ScanCheckpoint {
    fn fresh(mode: ScanMode, bound: u64) -> Self {
        ScanCheckpoint {
            format_version: CHECKPOINT_FORMAT_VERSION,
            mode,
            bound,
            cursor: None,
            candidates_examined: 0,
            found: Vec::new(),
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let data = fs::read_to_string(path)?;
        Ok(serde_json::from_str(&data)?)
    }

    /// Write to a sibling temporary file, then rename into place, so a kill
    /// mid-write never corrupts the previous checkpoint.
    pub fn save_atomic(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_string(self)?)?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    fn validate(&self, mode: ScanMode, bound: u64) -> Result<()> {
        if self.format_version != CHECKPOINT_FORMAT_VERSION {
            return Err(Error::Checkpoint(format!(
                "format version {} not supported (expected {})",
                self.format_version, CHECKPOINT_FORMAT_VERSION
            )));
        }
        if self.mode != mode {
            return Err(Error::Checkpoint(format!(
                "checkpoint mode {:?} does not match this scan",
                self.mode
            )));
        }
        if self.bound != bound {
            return Err(Error::Checkpoint(format!(
                "checkpoint bound {} does not match requested bound {}",
                self.bound, bound
            )));
        }
        Ok(())
    }
}

pub struct ScanOptions {
    pub checkpoint: Option<PathBuf>,
    pub resume: bool,
    /// Checkpoint cadence, in candidates.
    pub checkpoint_every: usize,
    /// Worker threads for candidate evaluation; 0 or 1 runs serially.
    pub workers: usize,
    pub effort: Effort,
    /// Stop (with a checkpoint) after this many candidates in this run.
    /// Used to exercise kill/resume behaviour.
    pub stop_after: Option<u64>,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            checkpoint: None,
            resume: false,
            checkpoint_every: DEFAULT_CHECKPOINT_EVERY,
            workers: 0,
            effort: Effort::default(),
            stop_after: None,
        }
    }
}

/// Result of a scan run. `completed` is false when the run stopped early via
/// `stop_after`; resume from the checkpoint to continue.
#[derive(Clone, Debug)]
pub struct ScanOutcome {
    pub records: Vec<ReportRecord>,
    pub candidates_examined: u64,
    pub completed: bool,
}

impl ScanOutcome {
    pub fn hits(&self) -> usize {
        self.records.iter().filter(|r| r.is_hit()).count()
    }

    pub fn skipped(&self) -> usize {
        self.records.iter().filter(|r| r.is_skipped()).count()
    }
}

/// All sector representatives with norm ≤ bound, in row-major order.
pub(crate) fn region_cells(bound: u64) -> impl Iterator<Item = (i64, i64)> {
    let bound_i = bound as i128;
    // norm(a, b) ≥ (3/4)·a² on the sector, so a stays below √(4·bound/3)
    let a_max = (4.0 * bound as f64 / 3.0).sqrt() as i64 + 2;
    (1..=a_max)
        .flat_map(|a| (0..a).map(move |b| (a, b)))
        .filter(move |&(a, b)| cell_norm(a, b) <= bound_i)
}

pub(crate) fn cell_norm(a: i64, b: i64) -> i128 {
    let (a, b) = (a as i128, b as i128);
    a * a - a * b + b * b
}

/// Evaluate one candidate cell; None when it is neither a hit nor skipped.
fn evaluate_cell(a: i64, b: i64, effort: &Effort) -> Option<ReportRecord> {
    let x = EisensteinInt::new(a, b);
    match divisor_report_with(&x, effort) {
        Ok(report) => {
            if !report.is_norm_perfect {
                return None;
            }
            let factorization = crate::factor::factor_with(&x, effort).ok();
            let mut verdicts = BTreeMap::new();
            verdicts.insert("perfect".to_string(), report.is_perfect);
            verdicts.insert("norm_perfect".to_string(), true);
            let mut norms = BTreeMap::new();
            norms.insert("subject".to_string(), report.norm_subject.to_string());
            norms.insert("sigma_star".to_string(), report.norm_sigma.to_string());
            Some(ReportRecord {
                subject: x.to_string(),
                verdicts,
                factorization,
                norms,
                error: None,
            })
        }
        Err(err) => {
            let mut verdicts = BTreeMap::new();
            verdicts.insert("skipped".to_string(), true);
            let mut norms = BTreeMap::new();
            norms.insert("subject".to_string(), x.norm().to_string());
            Some(ReportRecord {
                subject: x.to_string(),
                verdicts,
                factorization: None,
                norms,
                error: Some(err.to_string()),
            })
        }
    }
}

/// Run (or resume) the norm-perfect scan up to `max_norm`.
pub fn scan_norm_perfect(max_norm: u64, opts: &ScanOptions) -> Result<ScanOutcome> {
    assert!(max_norm >= 1, "the bound must be positive");
    let mut state = match (&opts.checkpoint, opts.resume) {
        (Some(path), true) if path.exists() => {
            let checkpoint = ScanCheckpoint::load(path)?;
            checkpoint.validate(ScanMode::NormPerfect, max_norm)?;
            checkpoint
        }
        _ => ScanCheckpoint::fresh(ScanMode::NormPerfect, max_norm),
    };
    let resume_cursor = match state.cursor {
        None => None,
        Some(ScanCursor::Cell { a, b }) => Some((a, b)),
        Some(ScanCursor::Exponent { .. }) => {
            return Err(Error::Checkpoint(
                "checkpoint cursor is an exponent, not a cell".to_string(),
            ))
        }
    };

    let pool = if opts.workers > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(opts.workers)
                .build()
                .map_err(|e| Error::Checkpoint(format!("worker pool: {e}")))?,
        )
    } else {
        None
    };

    // Row-major order makes "resume after the cursor" a prefix drop.
    let mut cells =
        region_cells(max_norm).skip_while(move |&cell| match resume_cursor {
            None => false,
            Some(cursor) => cell <= cursor,
        });

    let mut processed_this_run: u64 = 0;
    let mut completed = false;
    loop {
        let remaining = opts
            .stop_after
            .map(|limit| limit.saturating_sub(processed_this_run));
        if remaining == Some(0) {
            break;
        }
        let mut batch_size = opts.checkpoint_every.max(1);
        if let Some(rem) = remaining {
            batch_size = batch_size.min(rem as usize);
        }
        let batch: Vec<(i64, i64)> = cells.by_ref().take(batch_size).collect();
        if batch.is_empty() {
            completed = true;
            break;
        }

        let results: Vec<Option<ReportRecord>> = match &pool {
            Some(pool) => pool.install(|| {
                batch
                    .par_iter()
                    .map(|&(a, b)| evaluate_cell(a, b, &opts.effort))
                    .collect()
            }),
            None => batch
                .iter()
                .map(|&(a, b)| evaluate_cell(a, b, &opts.effort))
                .collect(),
        };
        state.found.extend(results.into_iter().flatten());
        state.candidates_examined += batch.len() as u64;
        processed_this_run += batch.len() as u64;
        let &(a, b) = batch.last().expect("batch is nonempty");
        state.cursor = Some(ScanCursor::Cell { a, b });

        if let Some(path) = &opts.checkpoint {
            state.save_atomic(path)?;
        }
    }

    if completed {
        if let Some(path) = &opts.checkpoint {
            state.save_atomic(path)?;
        }
    }

    let mut records = state.found;
    records.sort_by(|x, y| x.sort_key().cmp(&y.sort_key()));
    Ok(ScanOutcome {
        records,
        candidates_examined: state.candidates_examined,
        completed,
    })
}
