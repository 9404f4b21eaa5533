//! Counterexample searches: exhaustive enumeration (optionally with
//! symmetry reduction), uniform random sampling, and the (p, q)-restricted
//! degree-profile scan with exact realizability filtering.
//!
//! # Determinism and sharding
//!
//! Each mode's work is indexed by a single cursor (Z-subset rank, sample
//! index, or prefix index) and cut into fixed-size chunks that depend only
//! on the configuration, never on the worker count. Workers process whole
//! chunks; results merge in chunk order. Counters are sums and violation
//! lists concatenate in cursor order, so a report is a pure function of
//! `(n, mode, seed)` no matter how many workers ran it or how the
//! scheduler interleaved them.
//!
//! # Checkpoints
//!
//! With a checkpoint path configured, the cursor and partial counters are
//! flushed to a JSON file every 2^20 processed items or every 10 seconds,
//! whichever comes first, and a resumed run continues from the stored
//! cursor after verifying the file belongs to the same configuration
//! (hash-identified). An interrupted-and-resumed run produces the same
//! report as an uninterrupted one. Symmetry-reduced runs keep a class
//! table that is not checkpointable; they refuse checkpoint paths.

pub mod canonical;
pub mod checkpoint;
mod exhaustive;
pub mod profile;
pub mod random;

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::combinatorics::binomial_checked;
use crate::error::{Error, Result};
use crate::kn::CompleteGraph;

use canonical::CanonicalContext;
use checkpoint::{read_checkpoint, write_checkpoint, Checkpoint};

pub use profile::for_each_profile;
pub use random::sample_theorem_partition;

/// A found counterexample, as a partition text line. Self-certifying:
/// feeding the line back through the theorem checker reproduces the
/// failed bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationRecord {
    pub partition: String,
}

/// Mergeable partial result of a chunk of work.
#[derive(Clone, Debug, Default)]
pub struct Accum {
    pub partitions_checked: u64,
    pub profiles_checked: u64,
    pub relaxation_violations: u64,
    pub realizable_violations: u64,
    pub realizable_profiles: Option<u64>,
    pub violations: Vec<ViolationRecord>,
    pub class_counts: Option<HashMap<Vec<u8>, u64>>,
}

impl Accum {
    pub fn merge(&mut self, other: Accum) {
        self.partitions_checked += other.partitions_checked;
        self.profiles_checked += other.profiles_checked;
        self.relaxation_violations += other.relaxation_violations;
        self.realizable_violations += other.realizable_violations;
        self.realizable_profiles = match (self.realizable_profiles, other.realizable_profiles) {
            (None, None) => None,
            (a, b) => Some(a.unwrap_or(0) + b.unwrap_or(0)),
        };
        self.violations.extend(other.violations);
        if let Some(theirs) = other.class_counts {
            let mine = self.class_counts.get_or_insert_with(HashMap::new);
            for (key, count) in theirs {
                *mine.entry(key).or_insert(0) += count;
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive {
        use_symmetry: bool,
    },
    Random {
        samples: u64,
        seed: u64,
    },
    Profile {
        p: usize,
        q: usize,
        /// Run the realizability decision on every enumerated profile (not
        /// just violating ones) and report the census. Disables subtree
        /// pruning; intended for small n.
        realize_all: bool,
    },
}

impl SearchMode {
    fn name(&self) -> &'static str {
        match self {
            SearchMode::Exhaustive { .. } => "exhaustive",
            SearchMode::Random { .. } => "random",
            SearchMode::Profile { .. } => "profile",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub n: usize,
    pub mode: SearchMode,
    pub workers: usize,
    pub checkpoint_path: Option<PathBuf>,
    /// Override the documented size caps.
    pub force: bool,
    /// Stop (with a checkpoint) after this many work batches; testing hook
    /// for the resume contract.
    pub stop_after_batches: Option<u64>,
}

impl SearchConfig {
    pub fn new(n: usize, mode: SearchMode) -> Self {
        SearchConfig {
            n,
            mode,
            workers: std::thread::available_parallelism()
                .map(|p| p.get())
                .unwrap_or(1),
            checkpoint_path: None,
            force: false,
            stop_after_batches: None,
        }
    }

    /// The deterministic identity of this run (worker count and checkpoint
    /// location excluded).
    pub fn canonical_string(&self) -> String {
        let mode = match &self.mode {
            SearchMode::Exhaustive { use_symmetry } => {
                format!("exhaustive symmetry={use_symmetry}")
            }
            SearchMode::Random { samples, seed } => {
                format!("random samples={samples} seed={seed}")
            }
            SearchMode::Profile { p, q, realize_all } => {
                format!("profile p={p} q={q} realize_all={realize_all}")
            }
        };
        format!("stz-search-v1 n={} {mode}", self.n)
    }

    pub fn checkpoint_id(&self) -> String {
        let digest = Sha256::digest(self.canonical_string().as_bytes());
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Deterministic search result. Wall time and worker count live outside
/// this struct so that identical configurations serialize byte-identically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub n: usize,
    pub mode: String,
    pub use_symmetry: Option<bool>,
    pub p: Option<usize>,
    pub q: Option<usize>,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
    pub partitions_checked: u64,
    pub profiles_checked: u64,
    pub classes_checked: Option<u64>,
    pub class_size_total: Option<u64>,
    pub relaxation_violations: Option<u64>,
    pub realizable_violations: Option<u64>,
    pub realizable_profiles: Option<u64>,
    pub vacuous: bool,
    pub vacuous_reason: Option<String>,
    pub violations: Vec<ViolationRecord>,
    pub checkpoint_id: String,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub report: SearchReport,
    /// True when `stop_after_batches` cut the run short (checkpoint written).
    pub interrupted: bool,
    /// True when the run continued from (or replayed) an existing checkpoint.
    pub resumed: bool,
    pub wall_time: Duration,
}

/// Spec'd convenience: exhaustive verification with default options.
pub fn exhaustive_search(n: usize, use_symmetry: bool) -> Result<SearchReport> {
    run_search(&SearchConfig::new(
        n,
        SearchMode::Exhaustive { use_symmetry },
    ))
    .map(|outcome| outcome.report)
}

/// Spec'd convenience: seeded random sampling with default options.
pub fn random_search(n: usize, samples: u64, seed: u64) -> Result<SearchReport> {
    run_search(&SearchConfig::new(n, SearchMode::Random { samples, seed }))
        .map(|outcome| outcome.report)
}

/// Spec'd convenience: profile scan with default options.
pub fn profile_search(n: usize, p: usize, q: usize) -> Result<SearchReport> {
    run_search(&SearchConfig::new(
        n,
        SearchMode::Profile {
            p,
            q,
            realize_all: false,
        },
    ))
    .map(|outcome| outcome.report)
}

enum JobKind {
    Exhaustive(exhaustive::ExhaustiveJob),
    Random(random::RandomJob),
    Profile(profile::ProfileJob),
}

impl JobKind {
    fn process(&self, start: u128, end: u128) -> Accum {
        match self {
            JobKind::Exhaustive(job) => exhaustive::process_range(job, start, end),
            JobKind::Random(job) => random::process_range(job, start, end),
            JobKind::Profile(job) => profile::process_range(job, start, end),
        }
    }
}

const EXHAUSTIVE_CAP_PLAIN: usize = 7;
const EXHAUSTIVE_CAP_SYMMETRY: usize = 8;
const PROFILE_CAP: usize = 15;
const CHECKPOINT_ITEM_CADENCE: u64 = 1 << 20;
const CHECKPOINT_TIME_CADENCE: Duration = Duration::from_secs(10);

pub fn run_search(config: &SearchConfig) -> Result<SearchOutcome> {
    let started = Instant::now();
    let n = config.n;
    if n < 3 {
        return Err(Error::Domain(format!("need n >= 3, got {n}")));
    }
    let graph = CompleteGraph::new(n)?;
    let checkpoint_id = config.checkpoint_id();

    // Mode validation, caps, and vacuous short-circuits.
    let job = match &config.mode {
        SearchMode::Exhaustive { use_symmetry } => {
            let cap = if *use_symmetry {
                EXHAUSTIVE_CAP_SYMMETRY
            } else {
                EXHAUSTIVE_CAP_PLAIN
            };
            if n > cap && !config.force {
                return Err(Error::Refused(format!(
                    "exhaustive search{} is capped at n = {cap} (the partition \
                     count grows as C(m, n-3) * 2^(m-n+3)); pass force to \
                     override, or use random/profile mode",
                    if *use_symmetry { " with symmetry" } else { "" },
                )));
            }
            if graph.edge_count() - (n - 3) >= 64 {
                return Err(Error::Refused(format!(
                    "free-edge count {} exceeds the 63-bit sweep limit",
                    graph.edge_count() - (n - 3)
                )));
            }
            if *use_symmetry && config.checkpoint_path.is_some() {
                return Err(Error::Refused(
                    "symmetry-reduced runs keep an in-memory class table and \
                     cannot checkpoint; drop the checkpoint or the symmetry flag"
                        .into(),
                ));
            }
            let canonical = if *use_symmetry {
                Some(Arc::new(CanonicalContext::new(n)?))
            } else {
                None
            };
            JobKind::Exhaustive(exhaustive::ExhaustiveJob::new(graph, canonical))
        }
        SearchMode::Random { samples, seed } => {
            if *samples == 0 {
                return Err(Error::Domain("need at least one sample".into()));
            }
            let total_z_sets = binomial_checked(graph.edge_count() as u64, (n - 3) as u64)?;
            JobKind::Random(random::RandomJob {
                graph,
                seed: *seed,
                total_z_sets,
            })
        }
        SearchMode::Profile { p, q, realize_all } => {
            if p < q {
                return Err(Error::Domain(format!(
                    "profile search expects p >= q; swap the arguments ({p}, {q})"
                )));
            }
            if n > PROFILE_CAP && !config.force {
                return Err(Error::Refused(format!(
                    "profile search is capped at n = {PROFILE_CAP}; pass force to override"
                )));
            }
            let vacuous_reason = if p + q > n {
                Some(format!(
                    "p + q = {} exceeds n = {n}: no such profile",
                    p + q
                ))
            } else if (p * q) as i64 > n as i64 - 3 {
                Some(format!(
                    "p*q = {} > n-3 = {}: every P-Q pair forces a distinct Z edge, \
                     so no partition can have these zero-set sizes",
                    p * q,
                    n - 3
                ))
            } else {
                None
            };
            if let Some(reason) = vacuous_reason {
                let mut report = empty_report(config, &checkpoint_id);
                report.vacuous = true;
                report.vacuous_reason = Some(reason);
                report.relaxation_violations = Some(0);
                report.realizable_violations = Some(0);
                return Ok(SearchOutcome {
                    report,
                    interrupted: false,
                    resumed: false,
                    wall_time: started.elapsed(),
                });
            }
            JobKind::Profile(profile::ProfileJob::new(n, *p, *q, *realize_all))
        }
    };

    let total_units: u128 = match &job {
        JobKind::Exhaustive(_) => binomial_checked(graph.edge_count() as u64, (n - 3) as u64)?,
        JobKind::Random(job) => {
            let SearchMode::Random { samples, .. } = config.mode else {
                unreachable!()
            };
            let _ = job;
            samples as u128
        }
        JobKind::Profile(job) => job.prefixes.len() as u128,
    };
    // Partitions swept per unit, for checkpoint cadence accounting.
    let unit_weight: u64 = match &job {
        JobKind::Exhaustive(_) => 1u64 << (graph.edge_count() - (n - 3)),
        _ => 1,
    };
    let chunk = chunk_size(&job, total_units);

    // Resume.
    let mut accum = Accum::default();
    let mut cursor: u128 = 0;
    let mut resumed = false;
    if let Some(path) = &config.checkpoint_path {
        if path.exists() {
            let saved = read_checkpoint(path, &checkpoint_id)?;
            cursor = saved.cursor_value()?;
            if cursor > total_units {
                return Err(Error::Checkpoint(format!(
                    "checkpoint cursor {cursor} exceeds total work {total_units}"
                )));
            }
            accum = saved.into_accum();
            resumed = true;
        }
    }

    let mut batches = 0u64;
    let mut interrupted = false;
    let mut items_since_flush = 0u64;
    let mut last_flush = Instant::now();
    while cursor < total_units {
        if let Some(limit) = config.stop_after_batches {
            if batches >= limit {
                interrupted = true;
                break;
            }
        }
        // One batch: up to workers * 4 chunks, pulled by a small pool.
        let mut ranges = Vec::new();
        let mut probe = cursor;
        while probe < total_units && ranges.len() < config.workers.max(1) * 4 {
            let end = (probe + chunk).min(total_units);
            ranges.push((probe, end));
            probe = end;
        }
        let results: Vec<Mutex<Option<Accum>>> = ranges.iter().map(|_| Mutex::new(None)).collect();
        let next = AtomicUsize::new(0);
        let pool = config.workers.max(1).min(ranges.len());
        std::thread::scope(|scope| {
            for _ in 0..pool {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= ranges.len() {
                        break;
                    }
                    let (s, e) = ranges[i];
                    let part = job.process(s, e);
                    *results[i].lock().unwrap() = Some(part);
                });
            }
        });
        for cell in results {
            let part = cell.into_inner().unwrap().expect("chunk completed");
            accum.merge(part);
        }
        let units_done: u128 = ranges.iter().map(|(s, e)| e - s).sum();
        cursor = probe;
        batches += 1;
        items_since_flush += units_done as u64 * unit_weight;

        if let Some(path) = &config.checkpoint_path {
            if items_since_flush >= CHECKPOINT_ITEM_CADENCE
                || last_flush.elapsed() >= CHECKPOINT_TIME_CADENCE
            {
                let snapshot = Checkpoint::assemble(
                    &checkpoint_id,
                    &config.canonical_string(),
                    cursor,
                    total_units,
                    false,
                    &accum,
                );
                write_checkpoint(path, &snapshot)?;
                items_since_flush = 0;
                last_flush = Instant::now();
            }
        }
    }

    if let Some(path) = &config.checkpoint_path {
        let snapshot = Checkpoint::assemble(
            &checkpoint_id,
            &config.canonical_string(),
            cursor,
            total_units,
            cursor == total_units,
            &accum,
        );
        write_checkpoint(path, &snapshot)?;
    }

    let mut report = empty_report(config, &checkpoint_id);
    report.partitions_checked = accum.partitions_checked;
    report.profiles_checked = accum.profiles_checked;
    if matches!(config.mode, SearchMode::Exhaustive { use_symmetry: true }) {
        let classes = accum.class_counts.as_ref().expect("symmetry run");
        report.classes_checked = Some(classes.len() as u64);
        report.class_size_total = Some(classes.values().sum());
    }
    if let SearchMode::Profile { .. } = config.mode {
        report.relaxation_violations = Some(accum.relaxation_violations);
        report.realizable_violations = Some(accum.realizable_violations);
        report.realizable_profiles = accum.realizable_profiles;
    }
    report.violations = accum.violations;

    Ok(SearchOutcome {
        report,
        interrupted,
        resumed,
        wall_time: started.elapsed(),
    })
}

fn empty_report(config: &SearchConfig, checkpoint_id: &str) -> SearchReport {
    let (use_symmetry, p, q, samples, seed) = match &config.mode {
        SearchMode::Exhaustive { use_symmetry } => (Some(*use_symmetry), None, None, None, None),
        SearchMode::Random { samples, seed } => (None, None, None, Some(*samples), Some(*seed)),
        SearchMode::Profile { p, q, .. } => (None, Some(*p), Some(*q), None, None),
    };
    SearchReport {
        n: config.n,
        mode: config.mode.name().to_string(),
        use_symmetry,
        p,
        q,
        samples,
        seed,
        partitions_checked: 0,
        profiles_checked: 0,
        classes_checked: None,
        class_size_total: None,
        relaxation_violations: None,
        realizable_violations: None,
        realizable_profiles: None,
        vacuous: false,
        vacuous_reason: None,
        violations: Vec::new(),
        checkpoint_id: checkpoint_id.to_string(),
    }
}

/// Chunk sizes depend only on the job shape, never on worker count.
fn chunk_size(job: &JobKind, total_units: u128) -> u128 {
    match job {
        JobKind::Exhaustive(job) => {
            let n = job.graph.n();
            let sweep = 1u128 << (job.graph.edge_count() - (n - 3));
            let by_items = (CHECKPOINT_ITEM_CADENCE as u128 / sweep).max(1);
            by_items.min((total_units / 64).max(1))
        }
        JobKind::Random(_) => 4096,
        JobKind::Profile(_) => (total_units / 4096).max(1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_counts_are_closed_form() {
        let r4 = exhaustive_search(4, false).unwrap();
        assert_eq!(r4.partitions_checked, 192);
        assert!(r4.violations.is_empty());

        let r5 = exhaustive_search(5, false).unwrap();
        assert_eq!(r5.partitions_checked, 11_520);
        assert!(r5.violations.is_empty());
    }

    #[test]
    fn symmetry_conserves_counts() {
        for (n, expected) in [(4usize, 192u64), (5, 11_520)] {
            let report = exhaustive_search(n, true).unwrap();
            assert_eq!(report.partitions_checked, expected);
            assert_eq!(report.class_size_total, Some(expected));
            let classes = report.classes_checked.unwrap();
            assert!(classes > 0 && classes < expected);
            assert!(report.violations.is_empty());
        }
    }

    #[test]
    fn caps_are_refused_without_force() {
        assert!(matches!(
            exhaustive_search(9, false),
            Err(Error::Refused(_))
        ));
        assert!(matches!(profile_search(16, 2, 1), Err(Error::Refused(_))));
    }

    #[test]
    fn random_is_deterministic_and_worker_independent() {
        let mut config = SearchConfig::new(
            10,
            SearchMode::Random {
                samples: 2000,
                seed: 42,
            },
        );
        config.workers = 1;
        let a = run_search(&config).unwrap().report;
        config.workers = 7;
        let b = run_search(&config).unwrap().report;
        assert_eq!(a, b);
        assert_eq!(a.partitions_checked, 2000);
        assert!(a.violations.is_empty());
    }

    #[test]
    fn profile_vacuous_cases_report_reasons() {
        let report = profile_search(10, 4, 4).unwrap();
        assert!(report.vacuous);
        assert!(report.vacuous_reason.unwrap().contains("p*q"));
        assert_eq!(report.profiles_checked, 0);
    }

    #[test]
    fn profile_order_requires_p_at_least_q() {
        assert!(matches!(profile_search(8, 1, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn profile_search_accepts_zero_zero() {
        let report = profile_search(6, 0, 0).unwrap();
        assert!(!report.vacuous);
        assert!(report.profiles_checked > 0);
        assert_eq!(report.realizable_violations, Some(0));
    }

    #[test]
    fn small_profile_search_finds_no_realizable_violations() {
        let report = profile_search(6, 2, 1).unwrap();
        assert!(!report.vacuous);
        assert!(report.profiles_checked > 0);
        assert_eq!(report.realizable_violations, Some(0));
        assert!(report.violations.is_empty());
    }

    #[test]
    fn checkpoint_resume_reproduces_the_full_report() {
        let dir = std::env::temp_dir().join(format!("stz-ck-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("exhaustive6.json");
        let _ = std::fs::remove_file(&path);

        let mode = SearchMode::Exhaustive {
            use_symmetry: false,
        };
        let mut uninterrupted = SearchConfig::new(6, mode.clone());
        uninterrupted.workers = 2;
        let want = run_search(&uninterrupted).unwrap().report;

        let mut stopper = SearchConfig::new(6, mode.clone());
        stopper.workers = 2;
        stopper.checkpoint_path = Some(path.clone());
        stopper.stop_after_batches = Some(1);
        let first = run_search(&stopper).unwrap();
        assert!(first.interrupted);

        let mut resume = SearchConfig::new(6, mode);
        resume.workers = 3;
        resume.checkpoint_path = Some(path.clone());
        let second = run_search(&resume).unwrap();
        assert!(second.resumed);
        assert!(!second.interrupted);
        assert_eq!(second.report, want);
        let _ = std::fs::remove_file(&path);
    }

    #[test]
    fn checkpoint_for_other_config_is_rejected() {
        let dir = std::env::temp_dir().join(format!("stz-ck2-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("mismatch.json");
        let _ = std::fs::remove_file(&path);

        let mut a = SearchConfig::new(
            5,
            SearchMode::Exhaustive {
                use_symmetry: false,
            },
        );
        a.checkpoint_path = Some(path.clone());
        run_search(&a).unwrap();

        let mut b = SearchConfig::new(
            6,
            SearchMode::Exhaustive {
                use_symmetry: false,
            },
        );
        b.checkpoint_path = Some(path.clone());
        assert!(matches!(run_search(&b), Err(Error::Checkpoint(_))));
        let _ = std::fs::remove_file(&path);
    }
}
