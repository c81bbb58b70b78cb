//! Command-line front end for the homrec library.
//!
//! Exit codes across all subcommands: 0 when a witness is found or the
//! answer is positive, 1 when the instance is infeasible or the answer
//! is negative, 2 on malformed input, exceeded budgets, or verification
//! mismatches. Output is byte-identical across repeated runs on the
//! same input, except for the optional `--timings` field.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use homrec::brute::{brute_solve, find_all_on_n, read_manifest, write_manifest, BruteOptions};
use homrec::counting::{Budget, DEFAULT_STEP_BUDGET};
use homrec::degseq::{havel_hakimi_realize, is_graphic, DegreeSequence};
use homrec::graph::{
    check_constraints, parse_graph, serialize_graph, ConstraintReport, CountMode, Graph,
    PatternConstraint,
};
use homrec::reductions::{
    blocking_colouring_exists, circuit_to_constraints, coloring_to_constraints, colors_to_four,
    parse_circuit, verify_reduction, VerifyReport,
};
use homrec::solver::{
    parse_star_file, solve_star_hom, solve_star_partial, solve_star_sub, vector_from_pairs,
    BuildVectorError, DpStats, SolveOutcome,
};
use homrec::stars::StarCountVector;

/// Environment variable overriding the default step budget; the
/// `--budget` flag overrides both.
const BUDGET_ENV: &str = "HOMREC_BUDGET";

// ---------------------------------------------------------------------------
// Argument structure
// ---------------------------------------------------------------------------

#[derive(Parser)]
#[command(
    name = "homrec",
    version,
    about = "Reconstruct graphs from counting constraints, brute-check tiny instances, \
             and compile hardness reductions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reconstruct a graph from star homomorphism or subgraph counts.
    SolveStars(SolveStarsArgs),
    /// Exhaustively search for a graph satisfying a constraint manifest.
    Brute(BruteArgs),
    /// Count occurrences of a pattern graph in a target graph.
    Count(CountArgs),
    /// Decide whether a degree sequence is graphic.
    CheckDegseq(SeqArgs),
    /// Realize a graphic degree sequence as a concrete graph.
    HavelHakimi(HavelArgs),
    /// Compile a problem instance into a constraint manifest.
    Reduce(ReduceArgs),
}

#[derive(Args)]
struct OutputArgs {
    /// Emit a machine-readable JSON report instead of plain text.
    #[arg(long)]
    json: bool,
    /// Include wall-clock timing in the JSON report (non-deterministic).
    #[arg(long, requires = "json")]
    timings: bool,
}

#[derive(Args)]
struct SolveStarsArgs {
    /// Star-count file: `mode hom|sub`, then `star <j> <count>` lines.
    #[arg(long)]
    constraints: PathBuf,
    /// Also write the witness graph to this file.
    #[arg(long)]
    emit_graph: Option<PathBuf>,
    /// Also print the witness degree sequence (as a `#` comment line).
    #[arg(long)]
    emit_degseq: bool,
    /// Step budget for counting work (overrides HOMREC_BUDGET).
    #[arg(long)]
    budget: Option<u64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct BruteArgs {
    /// Constraint manifest directory.
    #[arg(long)]
    manifest: PathBuf,
    /// Vertex-count cap for the search (default 8).
    #[arg(long)]
    max_n: Option<usize>,
    /// Also report how many satisfying graphs exist on the witness's
    /// vertex count, up to isomorphism (plain instances only).
    #[arg(long)]
    up_to_iso: bool,
    /// Step budget for counting work (overrides HOMREC_BUDGET).
    #[arg(long)]
    budget: Option<u64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct CountArgs {
    /// Pattern graph file.
    #[arg(long)]
    pattern: PathBuf,
    /// Target graph file.
    #[arg(long)]
    target: PathBuf,
    /// Counting mode.
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// Step budget for counting work (overrides HOMREC_BUDGET).
    #[arg(long)]
    budget: Option<u64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Hom,
    Sub,
}

#[derive(Args)]
struct SeqArgs {
    /// Comma-separated degree sequence, e.g. `3,3,2,2,0`.
    #[arg(long)]
    seq: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct HavelArgs {
    /// Comma-separated degree sequence, e.g. `3,3,2,2,0`.
    #[arg(long)]
    seq: String,
    /// Also write the realized graph to this file.
    #[arg(long)]
    emit_graph: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ReduceArgs {
    #[command(subcommand)]
    kind: ReduceKind,
}

#[derive(Subcommand)]
enum ReduceKind {
    /// Boolean circuit satisfiability, over coloured patterns.
    Circuit(ReduceCommon),
    /// Blocked 3-colouring extension, over labelled patterns.
    Coloring(ReduceCommon),
    /// Compress a coloured manifest to the four-colour palette.
    Colors4(ReduceCommon),
}

#[derive(Args)]
struct ReduceCommon {
    /// Input instance: circuit file, graph file, or manifest directory.
    #[arg(long)]
    input: PathBuf,
    /// Output manifest directory.
    #[arg(long)]
    out: PathBuf,
    /// Brute-check the compiled list against the source instance
    /// (exit 2 on disagreement).
    #[arg(long)]
    verify: bool,
    /// Vertex-count cap for the verification search (default 8).
    #[arg(long)]
    max_n: Option<usize>,
    /// Step budget for counting work (overrides HOMREC_BUDGET).
    #[arg(long)]
    budget: Option<u64>,
    #[command(flatten)]
    output: OutputArgs,
}

// ---------------------------------------------------------------------------
// Entry point and shared helpers
// ---------------------------------------------------------------------------

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::SolveStars(args) => cmd_solve_stars(args),
        Command::Brute(args) => cmd_brute(args),
        Command::Count(args) => cmd_count(args),
        Command::CheckDegseq(args) => cmd_check_degseq(args),
        Command::HavelHakimi(args) => cmd_havel_hakimi(args),
        Command::Reduce(args) => match args.kind {
            ReduceKind::Circuit(common) => cmd_reduce_circuit(common),
            ReduceKind::Coloring(common) => cmd_reduce_coloring(common),
            ReduceKind::Colors4(common) => cmd_reduce_colors4(common),
        },
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn effective_budget(flag: Option<u64>) -> anyhow::Result<u64> {
    if let Some(limit) = flag {
        return Ok(limit);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(raw) => raw
            .parse::<u64>()
            .with_context(|| format!("{BUDGET_ENV} must be an unsigned integer, got {raw:?}")),
        Err(_) => Ok(DEFAULT_STEP_BUDGET),
    }
}

fn read_graph_file(path: &PathBuf) -> anyhow::Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_graph(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Re-check an about-to-be-emitted witness against the originating
/// constraints; emitting an unverified witness would be an internal bug.
fn recheck_witness(
    witness: &Graph,
    constraints: &[PatternConstraint],
    budget_limit: u64,
) -> anyhow::Result<ConstraintReport> {
    let mut budget = Budget::new(budget_limit);
    let report =
        check_constraints(witness, constraints, &mut budget).context("re-checking the witness")?;
    if !report.all_satisfied() {
        bail!("internal error: solver produced a witness violating its constraints");
    }
    Ok(report)
}

fn counts_json(constraints: &[PatternConstraint], report: &ConstraintReport) -> Value {
    let rows: Vec<Value> = constraints
        .iter()
        .zip(&report.entries)
        .enumerate()
        .map(|(index, (c, entry))| {
            json!({
                "index": index,
                "pattern_vertices": c.pattern().vertex_count(),
                "mode": c.mode().as_str(),
                "required": entry.required.to_string(),
                "actual": entry.actual.to_string(),
            })
        })
        .collect();
    Value::Array(rows)
}

fn dp_stats_json(stats: &DpStats) -> Value {
    json!({
        "lookups": stats.lookups,
        "hits": stats.hits,
        "entries": stats.entries,
        "hit_rate": stats.hit_rate(),
    })
}

fn emit_json(mut value: Value, output: &OutputArgs, started: Instant) {
    if output.timings {
        value["timing_ms"] = json!(started.elapsed().as_secs_f64() * 1e3);
    }
    println!(
        "{}",
        serde_json::to_string_pretty(&value).expect("report serializes")
    );
}

// ---------------------------------------------------------------------------
// solve-stars
// ---------------------------------------------------------------------------

fn star_constraints(vector: &StarCountVector) -> Vec<PatternConstraint> {
    vector
        .slots()
        .iter()
        .enumerate()
        .filter_map(|(j, slot)| {
            slot.as_ref().map(|count| match vector.mode() {
                CountMode::Hom => PatternConstraint::hom(Graph::star(j), count.clone()),
                CountMode::Sub => PatternConstraint::sub(Graph::star(j), count.clone()),
            })
        })
        .collect()
}

fn cmd_solve_stars(args: SolveStarsArgs) -> anyhow::Result<u8> {
    let budget_limit = effective_budget(args.budget)?;
    let text = fs::read_to_string(&args.constraints)
        .with_context(|| format!("reading {}", args.constraints.display()))?;
    let (mode, pairs) = parse_star_file(&text)
        .with_context(|| format!("parsing {}", args.constraints.display()))?;

    let started = Instant::now();
    let vector = match vector_from_pairs(mode, &pairs) {
        Ok(vector) => Some(vector),
        // Two different counts requested for the same star: nothing
        // satisfies both, so the instance is infeasible as stated.
        Err(BuildVectorError::Conflict { .. }) => None,
        Err(err @ BuildVectorError::Empty) => return Err(err.into()),
    };
    let outcome: Option<SolveOutcome> = match &vector {
        None => None,
        Some(vector) if vector.is_fully_specified() => Some(match mode {
            CountMode::Hom => solve_star_hom(vector)?,
            CountMode::Sub => solve_star_sub(vector)?,
        }),
        Some(vector) => Some(solve_star_partial(vector)?),
    };

    let witness = outcome.as_ref().and_then(|o| o.witness.as_ref());
    let report_json = |witness_block: Value, counts: Value| {
        json!({
            "command": "solve-stars",
            "mode": mode.as_str(),
            "verdict": if witness.is_some() { "feasible" } else { "infeasible" },
            "witness": witness_block,
            "counts": counts,
            "dp_stats": outcome.as_ref().map(|o| dp_stats_json(&o.stats)).unwrap_or(Value::Null),
        })
    };

    match witness {
        Some(w) => {
            let constraints = star_constraints(vector.as_ref().expect("witness implies vector"));
            let report = recheck_witness(&w.graph, &constraints, budget_limit)?;
            let graph_text = serialize_graph(&w.graph);
            if let Some(path) = &args.emit_graph {
                fs::write(path, &graph_text)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            if args.output.json {
                emit_json(
                    report_json(
                        json!({
                            "graph": graph_text,
                            "degree_sequence": w.degrees.to_string(),
                        }),
                        counts_json(&constraints, &report),
                    ),
                    &args.output,
                    started,
                );
            } else {
                if args.emit_degseq {
                    println!("# degseq {}", w.degrees);
                }
                print!("{graph_text}");
            }
            Ok(0)
        }
        None => {
            if args.output.json {
                emit_json(report_json(Value::Null, Value::Null), &args.output, started);
            } else {
                println!("INFEASIBLE");
            }
            Ok(1)
        }
    }
}

// ---------------------------------------------------------------------------
// brute
// ---------------------------------------------------------------------------

fn cmd_brute(args: BruteArgs) -> anyhow::Result<u8> {
    let budget_limit = effective_budget(args.budget)?;
    let constraints = read_manifest(&args.manifest)
        .with_context(|| format!("reading manifest {}", args.manifest.display()))?;
    let options = BruteOptions {
        n_max: args.max_n.unwrap_or(BruteOptions::default().n_max),
        step_budget: budget_limit,
    };

    let started = Instant::now();
    let outcome = brute_solve(&constraints, &options)?;

    match &outcome.witness {
        Some(witness) => {
            let report = recheck_witness(witness, &constraints, budget_limit)?;
            let witness_classes = if args.up_to_iso {
                let mut budget = Budget::new(budget_limit);
                let classes =
                    find_all_on_n(&constraints, witness.vertex_count(), true, &mut budget)
                        .context("isomorphism-reduced sweep")?;
                Some(classes.len())
            } else {
                None
            };
            let graph_text = serialize_graph(witness);
            if args.output.json {
                emit_json(
                    json!({
                        "command": "brute",
                        "verdict": "feasible",
                        "witness": graph_text,
                        "counts": counts_json(&constraints, &report),
                        "searched_bound": outcome.searched_bound,
                        "witness_classes": witness_classes,
                    }),
                    &args.output,
                    started,
                );
            } else {
                if let Some(classes) = witness_classes {
                    println!(
                        "# satisfying graphs on n = {}, up to isomorphism: {}",
                        witness.vertex_count(),
                        classes
                    );
                }
                print!("{graph_text}");
            }
            Ok(0)
        }
        None => {
            if args.output.json {
                emit_json(
                    json!({
                        "command": "brute",
                        "verdict": "infeasible",
                        "witness": Value::Null,
                        "counts": Value::Null,
                        "searched_bound": outcome.searched_bound,
                        "witness_classes": Value::Null,
                    }),
                    &args.output,
                    started,
                );
            } else {
                println!("INFEASIBLE (exhausted n ≤ {})", outcome.searched_bound);
            }
            Ok(1)
        }
    }
}

// ---------------------------------------------------------------------------
// count / check-degseq / havel-hakimi
// ---------------------------------------------------------------------------

fn cmd_count(args: CountArgs) -> anyhow::Result<u8> {
    let budget_limit = effective_budget(args.budget)?;
    let pattern = read_graph_file(&args.pattern)?;
    let target = read_graph_file(&args.target)?;
    let mut budget = Budget::new(budget_limit);
    let started = Instant::now();
    let (mode, count) = match args.mode {
        ModeArg::Hom => (
            "hom",
            homrec::counting::count_homomorphisms(&pattern, &target, &mut budget)?,
        ),
        ModeArg::Sub => (
            "sub",
            homrec::counting::count_subgraph_copies(&pattern, &target, &mut budget)?,
        ),
    };
    if args.output.json {
        emit_json(
            json!({
                "command": "count",
                "mode": mode,
                "count": count.to_string(),
            }),
            &args.output,
            started,
        );
    } else {
        println!("{count}");
    }
    Ok(0)
}

fn cmd_check_degseq(args: SeqArgs) -> anyhow::Result<u8> {
    let seq = DegreeSequence::parse(&args.seq)?;
    let graphic = is_graphic(&seq);
    if args.output.json {
        emit_json(
            json!({
                "command": "check-degseq",
                "sequence": seq.to_string(),
                "verdict": if graphic { "graphic" } else { "not-graphic" },
            }),
            &args.output,
            Instant::now(),
        );
    } else if graphic {
        println!("GRAPHIC");
    } else {
        println!("NOT GRAPHIC");
    }
    Ok(u8::from(!graphic))
}

fn cmd_havel_hakimi(args: HavelArgs) -> anyhow::Result<u8> {
    let seq = DegreeSequence::parse(&args.seq)?;
    let started = Instant::now();
    match havel_hakimi_realize(&seq) {
        Ok(graph) => {
            let graph_text = serialize_graph(&graph);
            if let Some(path) = &args.emit_graph {
                fs::write(path, &graph_text)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            if args.output.json {
                emit_json(
                    json!({
                        "command": "havel-hakimi",
                        "sequence": seq.to_string(),
                        "verdict": "graphic",
                        "witness": graph_text,
                    }),
                    &args.output,
                    started,
                );
            } else {
                print!("{graph_text}");
            }
            Ok(0)
        }
        Err(_) => {
            if args.output.json {
                emit_json(
                    json!({
                        "command": "havel-hakimi",
                        "sequence": seq.to_string(),
                        "verdict": "not-graphic",
                        "witness": Value::Null,
                    }),
                    &args.output,
                    started,
                );
            } else {
                println!("NOT GRAPHIC");
            }
            Ok(1)
        }
    }
}

// ---------------------------------------------------------------------------
// reduce
// ---------------------------------------------------------------------------

fn verify_json(report: &VerifyReport) -> Value {
    json!({
        "expected_satisfiable": report.expected_satisfiable,
        "satisfiable": report.satisfiable,
        "matches": report.matches,
        "searched_bound": report.searched_bound,
    })
}

/// Shared tail of the reduce subcommands: write the manifest, report,
/// and turn a verification mismatch into an error (exit 2).
fn finish_reduce(
    kind: &str,
    common: &ReduceCommon,
    constraints: Vec<PatternConstraint>,
    verify: Option<VerifyReport>,
    started: Instant,
) -> anyhow::Result<u8> {
    write_manifest(&common.out, &constraints)
        .with_context(|| format!("writing manifest {}", common.out.display()))?;
    if common.output.json {
        emit_json(
            json!({
                "command": format!("reduce-{kind}"),
                "constraints": constraints.len(),
                "out": common.out.display().to_string(),
                "verify": verify.as_ref().map(verify_json).unwrap_or(Value::Null),
            }),
            &common.output,
            started,
        );
    } else {
        println!(
            "wrote {} constraints to {}",
            constraints.len(),
            common.out.display()
        );
        if let Some(report) = &verify {
            println!(
                "verify: expected {}, brute search {} (n ≤ {}): {}",
                if report.expected_satisfiable {
                    "satisfiable"
                } else {
                    "unsatisfiable"
                },
                if report.satisfiable {
                    "satisfiable"
                } else {
                    "unsatisfiable"
                },
                report.searched_bound,
                if report.matches { "MATCH" } else { "MISMATCH" },
            );
        }
    }
    match &verify {
        Some(report) if !report.matches => {
            bail!("verification mismatch: the compiled constraints disagree with the instance")
        }
        _ => Ok(0),
    }
}

fn brute_options(common: &ReduceCommon, budget_limit: u64) -> BruteOptions {
    BruteOptions {
        n_max: common.max_n.unwrap_or(BruteOptions::default().n_max),
        step_budget: budget_limit,
    }
}

fn cmd_reduce_circuit(common: ReduceCommon) -> anyhow::Result<u8> {
    let budget_limit = effective_budget(common.budget)?;
    let text = fs::read_to_string(&common.input)
        .with_context(|| format!("reading {}", common.input.display()))?;
    let circuit =
        parse_circuit(&text).with_context(|| format!("parsing {}", common.input.display()))?;
    let started = Instant::now();
    let constraints = circuit_to_constraints(&circuit);
    let verify = if common.verify {
        let options = brute_options(&common, budget_limit);
        let needed = 4 + circuit.node_count();
        if needed > options.n_max {
            bail!(
                "verification needs vertex bound {} for this circuit; raise --max-n",
                needed
            );
        }
        let expected = circuit.truth_table_satisfiable().is_some();
        Some(verify_reduction(&constraints, expected, &options)?)
    } else {
        None
    };
    finish_reduce("circuit", &common, constraints, verify, started)
}

fn cmd_reduce_coloring(common: ReduceCommon) -> anyhow::Result<u8> {
    let budget_limit = effective_budget(common.budget)?;
    let graph = read_graph_file(&common.input)?;
    let started = Instant::now();
    let constraints = coloring_to_constraints(&graph)?;
    let verify = if common.verify {
        let mut budget = Budget::new(budget_limit);
        let expected = blocking_colouring_exists(&graph, &mut budget)?;
        Some(verify_reduction(
            &constraints,
            expected,
            &brute_options(&common, budget_limit),
        )?)
    } else {
        None
    };
    finish_reduce("coloring", &common, constraints, verify, started)
}

fn cmd_reduce_colors4(common: ReduceCommon) -> anyhow::Result<u8> {
    let budget_limit = effective_budget(common.budget)?;
    let input_constraints = read_manifest(&common.input)
        .with_context(|| format!("reading manifest {}", common.input.display()))?;
    let started = Instant::now();
    let constraints = colors_to_four(&input_constraints)?;
    let verify = if common.verify {
        let options = brute_options(&common, budget_limit);
        // Ground truth: does the original many-colour instance have a
        // witness within the same search bound?
        let expected = brute_solve(&input_constraints, &options)?.witness.is_some();
        Some(verify_reduction(&constraints, expected, &options)?)
    } else {
        None
    };
    finish_reduce("colors4", &common, constraints, verify, started)
}
