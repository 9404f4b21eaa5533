//! `stz` — command-line front end for the incidence toolkit.
//!
//! Subcommands: `verify`, `search`, `sharpness`, `orient`, `expansion`.
//! Every run prints one JSON object per result with three top-level keys:
//! `config` (the deterministic effective configuration), `meta` (timestamp,
//! wall time, worker count — everything excluded from determinism
//! comparisons), and `report`. With `--output` the same objects are
//! appended to a JSONL ledger file.
//!
//! Exit codes: 0 = completed, nothing found; 1 = a violation or refuted
//! certificate was found (witness printed); 2 = usage or input error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use stz_core::incidence::{check_incidence_bound, incidence_sums, structural_facts};
use stz_core::kn::{EdgePartition, PartitionMode};
use stz_core::orient::{
    build_line_graph, enumerate_eulerian_orientations, eulerian_orientation, expansion_condition,
    is_strongly_k_connected, line_graph_bridge_report, validate_certified, validate_refuted,
    Digraph, PairPolicy, Verdict,
};
use stz_core::search::{run_search, SearchConfig, SearchMode};
use stz_core::sharpness::{sharp_family, verify_sharpness};

#[derive(Parser)]
#[command(
    name = "stz",
    about = "Incidence checks for three-class edge partitions of complete graphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    global: GlobalArgs,
}

#[derive(Args)]
struct GlobalArgs {
    /// Append results (JSONL, one object per line) to this ledger file.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Output format on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads (defaults to available parallelism). Reports are
    /// worker-count independent.
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Seed for randomized subcommands (search --mode random, orient
    /// sampling, expansion sampling).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Checkpoint file for resumable searches.
    #[arg(long, global = true)]
    checkpoint: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Jsonl,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check partition files: incidence report plus structural facts.
    Verify {
        /// Partition text files (`n=<n> labels=<STZ string>`, one per line).
        files: Vec<PathBuf>,
    },
    /// Hunt for counterexamples to the incidence bound.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Zeros in s (profile mode).
        #[arg(long)]
        p: Option<usize>,
        /// Zeros in t (profile mode).
        #[arg(long)]
        q: Option<usize>,
        /// Sample count (random mode).
        #[arg(long)]
        samples: Option<u64>,
        /// Canonical-form symmetry reduction (exhaustive mode).
        #[arg(long)]
        symmetry: bool,
        /// Decide realizability for every profile, not only violating ones.
        #[arg(long)]
        realize_all: bool,
        /// Override documented size caps.
        #[arg(long)]
        force: bool,
        /// Stop after this many work batches (testing aid for resume).
        #[arg(long, hide = true)]
        stop_after_batches: Option<u64>,
    },
    /// Build and verify the |Z| = n-2 family where the bound fails.
    Sharpness {
        #[arg(long)]
        n: usize,
        /// Also write the family partition in text format.
        #[arg(long)]
        emit_partition: Option<PathBuf>,
    },
    /// Generate Eulerian orientations of J(n,2) and certify connectivity.
    Orient {
        #[arg(long)]
        n: usize,
        /// Number of sampled orientations.
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Connectivity target; defaults to n-2.
        #[arg(long)]
        k: Option<usize>,
        /// Enumerate every Eulerian orientation instead of sampling.
        #[arg(long)]
        enumerate: bool,
        /// Cap for enumeration.
        #[arg(long, default_value_t = 100_000)]
        cap: usize,
        /// Directory for orientation files (omit to skip writing).
        #[arg(long)]
        emit_orientations: Option<PathBuf>,
    },
    /// Check the neighborhood-expansion condition on J(n,2).
    Expansion {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        size_cap: usize,
        /// Random sets per size beyond the exhaustive cap (0 = none).
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exhaustive,
    Random,
    Profile,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(found_violation) => {
            if found_violation {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

/// Emitted record: `config` and `report` are deterministic; everything
/// run-specific sits in `meta`.
fn emit(
    global: &GlobalArgs,
    config: serde_json::Value,
    report: impl Serialize,
    started: Instant,
    workers: Option<usize>,
) -> anyhow::Result<()> {
    let timestamp = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let object = json!({
        "config": config,
        "meta": {
            "unix_time_secs": timestamp,
            "wall_time_ms": started.elapsed().as_millis() as u64,
            "workers": workers,
        },
        "report": serde_json::to_value(&report)?,
    });
    let line = serde_json::to_string(&object)?;
    match global.format {
        Format::Json | Format::Jsonl => println!("{line}"),
        Format::Text => print_text(&object),
    }
    if let Some(path) = &global.output {
        let mut file = std::fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .with_context(|| format!("opening ledger {}", path.display()))?;
        writeln!(file, "{line}")?;
    }
    Ok(())
}

/// Human-only rendering; unversioned, scripts should parse the JSON.
fn print_text(object: &serde_json::Value) {
    if let Some(config) = object.get("config") {
        println!("# run {config}");
    }
    if let Some(report) = object.get("report") {
        println!(
            "{}",
            serde_json::to_string_pretty(report).unwrap_or_default()
        );
    }
}

fn dispatch(cli: Cli) -> anyhow::Result<bool> {
    let workers = cli.global.workers.unwrap_or_else(|| {
        std::thread::available_parallelism()
            .map(|p| p.get())
            .unwrap_or(1)
    });
    match cli.command {
        Command::Verify { files } => cmd_verify(&cli.global, files),
        Command::Search {
            n,
            mode,
            p,
            q,
            samples,
            symmetry,
            realize_all,
            force,
            stop_after_batches,
        } => {
            let mode = match mode {
                Mode::Exhaustive => SearchMode::Exhaustive {
                    use_symmetry: symmetry,
                },
                Mode::Random => SearchMode::Random {
                    samples: samples.ok_or_else(|| anyhow!("random mode needs --samples"))?,
                    seed: cli.global.seed,
                },
                Mode::Profile => SearchMode::Profile {
                    p: p.ok_or_else(|| anyhow!("profile mode needs --p"))?,
                    q: q.ok_or_else(|| anyhow!("profile mode needs --q"))?,
                    realize_all,
                },
            };
            let mut config = SearchConfig::new(n, mode);
            config.workers = workers;
            config.checkpoint_path = cli.global.checkpoint.clone();
            config.force = force;
            config.stop_after_batches = stop_after_batches;
            cmd_search(&cli.global, config, workers)
        }
        Command::Sharpness { n, emit_partition } => cmd_sharpness(&cli.global, n, emit_partition),
        Command::Orient {
            n,
            count,
            k,
            enumerate,
            cap,
            emit_orientations,
        } => cmd_orient(
            &cli.global,
            n,
            count,
            cli.global.seed,
            k,
            enumerate,
            cap,
            emit_orientations,
        ),
        Command::Expansion {
            n,
            k,
            size_cap,
            samples,
        } => cmd_expansion(&cli.global, n, k, size_cap, samples, cli.global.seed),
    }
}

fn cmd_verify(global: &GlobalArgs, files: Vec<PathBuf>) -> anyhow::Result<bool> {
    if files.is_empty() {
        return Err(anyhow!("verify needs at least one partition file"));
    }
    let mut violation_found = false;
    for path in files {
        let text = std::fs::read_to_string(&path)
            .with_context(|| format!("reading {}", path.display()))?;
        for (idx, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let started = Instant::now();
            let partition = EdgePartition::parse_line(line, idx + 1)
                .with_context(|| format!("{}", path.display()))?;
            let config = json!({
                "subcommand": "verify",
                "file": path.display().to_string(),
                "line": idx + 1,
                "n": partition.n(),
            });
            match partition.mode() {
                PartitionMode::Theorem => {
                    let incidence = check_incidence_bound(&partition)?;
                    let structure = structural_facts(&partition)?;
                    if !incidence.bound_holds {
                        violation_found = true;
                        eprintln!("violation witness: {}", partition.to_line());
                    }
                    let report = json!({
                        "mode": "theorem",
                        "incidence": incidence,
                        "structure": structure,
                    });
                    emit(global, config, report, started, None)?;
                }
                PartitionMode::General => {
                    // Not a theorem-mode partition; report the sums and
                    // whether this instance violates the min bound.
                    let sums = incidence_sums(&partition.degree_profile());
                    let report = json!({
                        "mode": "general",
                        "note": format!(
                            "|Z| = {} differs from n-3 = {}; incidence bound not asserted",
                            partition.class_size(stz_core::kn::Label::Z),
                            partition.n() - 3
                        ),
                        "i_st": sums.i_st,
                        "i_zt": sums.i_zt,
                        "i_zs": sums.i_zs,
                        "violates_min_bound": sums.i_st < sums.i_zt.min(sums.i_zs),
                        "bridge": line_graph_bridge_report(&partition)?,
                    });
                    emit(global, config, report, started, None)?;
                }
            }
        }
    }
    Ok(violation_found)
}

fn cmd_search(global: &GlobalArgs, config: SearchConfig, workers: usize) -> anyhow::Result<bool> {
    let started = Instant::now();
    let config_json = json!({
        "subcommand": "search",
        "identity": config.canonical_string(),
        "n": config.n,
        "force": config.force,
        "checkpoint": config.checkpoint_path.as_ref().map(|p| p.display().to_string()),
    });
    let outcome = run_search(&config)?;
    let found = !outcome.report.violations.is_empty();
    for v in &outcome.report.violations {
        eprintln!("violation witness: {}", v.partition);
    }
    emit(global, config_json, &outcome.report, started, Some(workers))?;
    if outcome.interrupted {
        eprintln!(
            "stopped after {} batches; resume with the same --checkpoint",
            config.stop_after_batches.unwrap_or(0)
        );
    }
    Ok(found)
}

fn cmd_sharpness(
    global: &GlobalArgs,
    n: usize,
    emit_partition: Option<PathBuf>,
) -> anyhow::Result<bool> {
    let started = Instant::now();
    let report = verify_sharpness(n)?;
    if let Some(path) = &emit_partition {
        let partition = sharp_family(n)?;
        std::fs::write(path, format!("{}\n", partition.to_line()))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let config = json!({
        "subcommand": "sharpness",
        "n": n,
        "emit_partition": emit_partition.map(|p| p.display().to_string()),
    });
    emit(global, config, report, started, None)?;
    Ok(false)
}

#[allow(clippy::too_many_arguments)]
fn cmd_orient(
    global: &GlobalArgs,
    n: usize,
    count: usize,
    seed: u64,
    k: Option<usize>,
    enumerate: bool,
    cap: usize,
    emit_orientations: Option<PathBuf>,
) -> anyhow::Result<bool> {
    let started = Instant::now();
    let lg = build_line_graph(n)?;
    let k = k.unwrap_or(n - 2);
    if k > n - 2 {
        return Err(anyhow!(
            "k = {k} exceeds the orientation out-degree n-2 = {}; no Eulerian \
             orientation of {} can reach it",
            n - 2,
            lg.id()
        ));
    }
    if let Some(dir) = &emit_orientations {
        std::fs::create_dir_all(dir)?;
    }

    let orientations = if enumerate {
        let enumerated = enumerate_eulerian_orientations(&lg, cap);
        if enumerated.truncated {
            eprintln!("enumeration truncated at cap = {cap}");
        }
        enumerated.orientations
    } else {
        (0..count)
            .map(|i| eulerian_orientation(&lg, seed.wrapping_add(i as u64)))
            .collect()
    };

    let mut any_refuted = false;
    for (idx, orientation) in orientations.iter().enumerate() {
        let cert = is_strongly_k_connected(lg.graph(), orientation, k, PairPolicy::AllPairs)?;
        let dg = Digraph::from_orientation(lg.graph(), orientation);
        match cert.verdict {
            Verdict::Certified => {
                validate_certified(&dg, &cert).map_err(|e| anyhow!("certificate check: {e}"))?
            }
            Verdict::Refuted => {
                validate_refuted(&dg, &cert).map_err(|e| anyhow!("refutation check: {e}"))?;
                any_refuted = true;
            }
        }
        if let Some(dir) = &emit_orientations {
            let path = dir.join(format!("orientation-{idx:04}.txt"));
            std::fs::write(&path, orientation.to_file_string())?;
        }
        let config = json!({
            "subcommand": "orient",
            "graph": lg.id(),
            "n": n,
            "k": k,
            "index": idx,
            "enumerate": enumerate,
            "seed": if enumerate { None } else { Some(seed) },
        });
        let bits: String = orientation
            .bits()
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect();
        let report = json!({
            "orientation": bits,
            "certificate": cert,
        });
        emit(global, config, report, started, None)?;
    }
    Ok(any_refuted)
}

fn cmd_expansion(
    global: &GlobalArgs,
    n: usize,
    k: usize,
    size_cap: usize,
    samples: usize,
    seed: u64,
) -> anyhow::Result<bool> {
    let started = Instant::now();
    let lg = build_line_graph(n)?;
    let report = expansion_condition(lg.graph(), &lg.id(), k, size_cap, samples, seed)?;
    let config = json!({
        "subcommand": "expansion",
        "graph": lg.id(),
        "n": n,
        "k": k,
        "size_cap": size_cap,
        "samples": samples,
        "seed": seed,
    });
    let all_ok = report.all_satisfied;
    emit(global, config, report, started, None)?;
    Ok(!all_ok)
}
