//! The `rainbow` command line.
//!
//! Every subcommand writes JSON (CSV for `experiment`) to `--out` or to
//! stdout, draws all randomness from `--seed` and never prints timings, so
//! identical invocations give identical bytes. Diagnostics go to stderr at
//! the level named by `RAINBOW_LOG` (`error`, `info` or `debug`).
//!
//! Exit codes: 0 success, 1 verification failure or refutation, 2 budget
//! exhaustion, 3 invalid input.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::colouring::{
    generate_circle_factorization, generate_random_factorization, verify_colouring, verify_decomposition,
    verify_factorization, DecompositionCheck, Edge, EdgeColouredKn, EdgeSet, InstanceJson,
};
use crate::error::{invalid, Error, Result};
use crate::hypermatch::{
    check_gamma_perfect, degree_stats, greedy_matching, nibble_matching, random_regular_hypergraph, DegreeStats,
    GammaCheck, Hypergraph, MatchingReport,
};
use crate::pipeline::absorber::{AbsorberAudit, ColourAbsorberConfig, EdgeAbsorberConfig};
use crate::pipeline::strategy::first_failure;
use crate::pipeline::{
    build_colour_absorber_demo, build_edge_absorber_demo, default_params, exact_decompose, isomorphic_decompose,
    run_strategy, DecomposeOutcome, PipelineParams, StepReport,
};
use crate::rmbg::{is_robustly_matchable, regularize, search_rmbg, Mode, Rmbg, Verdict};
use crate::trees::{canonical_form, TreeShape};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_INVALID: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "rainbow", about = "Rainbow spanning tree decompositions of 1-factorized complete graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a 1-factorization of K_n.
    Gen(GenArgs),
    /// Check a 1-factorization, and optionally a decomposition of it.
    Verify(VerifyArgs),
    /// Exact search for a decomposition into rainbow spanning trees.
    Decompose(DecomposeArgs),
    /// Robustly matchable bipartite graphs.
    #[command(subcommand)]
    Rmbg(RmbgCommand),
    /// Hypergraph matchings.
    #[command(subcommand)]
    Nibble(NibbleCommand),
    /// Build a toy absorber and audit it exhaustively.
    AbsorberDemo(AbsorberArgs),
    /// Instrumented run of the ten-step strategy.
    Strategy(StrategyArgs),
    /// Run a seed grid and export a CSV table.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Circle,
    Random,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "random")]
    pub method: Method,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub instance: PathBuf,
    #[arg(long)]
    pub decomposition: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[arg(long)]
    pub instance: PathBuf,
    /// Tree file; every part must be isomorphic to it.
    #[arg(long)]
    pub isomorphic_to: Option<PathBuf>,
    #[arg(long, default_value = "60s", value_parser = parse_budget)]
    pub budget: Duration,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum RmbgCommand {
    /// Search for an RMBG(3m, 2m, 2m) with bounded maximum degree.
    Search {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        max_degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Candidates to try.
        #[arg(long, default_value_t = 2000)]
        budget: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check robust matchability of an RMBG file.
    Verify {
        file: PathBuf,
        /// Check this many random subsets instead of all of them.
        #[arg(long)]
        sampled: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extend to a (4d, 3d)-regular supergraph.
    Regularize {
        file: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum NibbleCommand {
    /// Nibble matching of a hypergraph file or of a generated one.
    Run(NibbleArgs),
}

#[derive(Debug, Args)]
pub struct NibbleArgs {
    /// Hypergraph file; without it a random near-regular one is generated.
    #[arg(long)]
    pub hypergraph: Option<PathBuf>,
    #[arg(long, default_value_t = 3000)]
    pub vertices: usize,
    #[arg(long, default_value_t = 3)]
    pub uniformity: usize,
    #[arg(long, default_value_t = 30)]
    pub degree: usize,
    #[arg(long, default_value_t = 3)]
    pub max_codegree: usize,
    #[arg(long, default_value_t = 0.1)]
    pub bite: f64,
    #[arg(long, default_value_t = 60)]
    pub rounds: usize,
    /// Also report whether the matching is gamma-perfect.
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AbsorberKind {
    Edge,
    Colour,
}

#[derive(Debug, Args)]
pub struct AbsorberArgs {
    #[arg(long, value_enum)]
    pub kind: AbsorberKind,
    /// Number of matchings for `edge`, `s` for `colour`.
    #[arg(long, default_value_t = 2)]
    pub scale: usize,
    /// Matching size.
    #[arg(long, default_value_t = 4)]
    pub size: usize,
    /// RMBG parameter of the edge absorber.
    #[arg(long, default_value_t = 1)]
    pub m: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StrategyArgs {
    #[arg(long)]
    pub n: Option<usize>,
    /// Parameter file; the shipped defaults otherwise.
    #[arg(long)]
    pub params: Option<PathBuf>,
    /// Instance file; a random factorization of K_n otherwise.
    #[arg(long)]
    pub instance: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExperimentTask {
    /// Exact decomposition of random factorizations of K_n.
    Decompose,
    /// Nibble against greedy on random hypergraphs.
    Nibble,
    /// First failing step of the strategy run.
    Strategy,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[arg(long, value_enum)]
    pub task: ExperimentTask,
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    /// Number of runs; run `i` uses seed `seed + i`.
    #[arg(long, default_value_t = 10)]
    pub runs: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "10s", value_parser = parse_budget)]
    pub budget: Duration,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_budget(s: &str) -> std::result::Result<Duration, String> {
    let d = humantime::parse_duration(s).map_err(|e| e.to_string())?;
    if d.is_zero() {
        return Err("budget must be positive".into());
    }
    Ok(d)
}

/// A command's result: what to print and the exit code.
#[derive(Debug)]
pub struct Output {
    pub body: String,
    pub code: i32,
}

impl Output {
    fn json<T: Serialize>(value: &T, code: i32) -> Result<Self> {
        let mut body = serde_json::to_string_pretty(value)?;
        body.push('\n');
        Ok(Output { body, code })
    }
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidArgument(_) | Error::InvalidInstance(_) | Error::Io(_) | Error::Json(_) => EXIT_INVALID,
        Error::Budget(_) | Error::RetryExhausted { .. } | Error::NotFound(_) => EXIT_BUDGET,
        _ => EXIT_FAILED,
    }
}

/// Decomposition file written by `decompose`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionFile {
    pub n: usize,
    pub status: String,
    pub nodes: u64,
    /// Present when every part must match a given tree.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<String>,
    pub parts: Vec<Vec<Edge>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<DecompositionCheck>,
    pub note: String,
}

impl DecompositionFile {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let f: DecompositionFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        f.edge_sets()?;
        Ok(f)
    }

    pub fn edge_sets(&self) -> Result<Vec<EdgeSet>> {
        self.parts.iter().map(|p| EdgeSet::from_edges(self.n, p.iter().copied())).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub n: usize,
    pub factorization_valid: bool,
    pub violations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionCheck>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RmbgVerifyReport {
    pub parts: [usize; 3],
    pub edges: usize,
    pub max_degree: usize,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NibbleRunReport {
    pub vertices: usize,
    pub edges: usize,
    pub degrees: DegreeStats,
    pub nibble: MatchingReport,
    pub greedy: MatchingReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_check: Option<GammaCheck>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AbsorberReport {
    pub demo: serde_json::Value,
    pub completions: AbsorberAudit,
    pub absorption: AbsorberAudit,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrategyReport {
    pub params: PipelineParams,
    pub first_failure: Option<u8>,
    pub steps: Vec<StepReport>,
}

fn load_instance(path: &Path) -> Result<EdgeColouredKn> {
    let g = EdgeColouredKn::load(path)?;
    let bad = verify_factorization(&g);
    if let Some(v) = bad.first() {
        return Err(Error::InvalidInstance(format!("{}: {v}", path.display())));
    }
    Ok(g)
}

pub fn execute(cmd: &Command) -> Result<Output> {
    match cmd {
        Command::Gen(a) => {
            let g = match a.method {
                Method::Circle => generate_circle_factorization(a.n)?,
                Method::Random => generate_random_factorization(a.n, a.seed)?,
            };
            Output::json(&g.to_json(), EXIT_OK)
        }
        Command::Verify(a) => {
            let raw: InstanceJson = serde_json::from_str(&std::fs::read_to_string(&a.instance)?)?;
            let violations: Vec<String> = verify_colouring(raw.n, &raw.colours).iter().map(ToString::to_string).collect();
            let decomposition = match &a.decomposition {
                Some(_) if !violations.is_empty() => None,
                Some(p) => {
                    let g = EdgeColouredKn::from_json(raw.clone())?;
                    let f = DecompositionFile::load(p)?;
                    if f.n != g.n() {
                        return Err(invalid(format!("decomposition is for n = {}, instance has n = {}", f.n, g.n())));
                    }
                    Some(verify_decomposition(&g, &f.edge_sets()?))
                }
                None => None,
            };
            let ok = violations.is_empty() && decomposition.as_ref().map_or(true, |d| d.valid);
            let report = VerifyReport { n: raw.n, factorization_valid: violations.is_empty(), violations, decomposition };
            Output::json(&report, if ok { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Decompose(a) => decompose(a),
        Command::Rmbg(c) => rmbg(c),
        Command::Nibble(NibbleCommand::Run(a)) => nibble(a),
        Command::AbsorberDemo(a) => absorber(a),
        Command::Strategy(a) => strategy(a),
        Command::Experiment(a) => experiment(a),
    }
}

fn decompose(a: &DecomposeArgs) -> Result<Output> {
    let g = load_instance(&a.instance)?;
    let shape = a.isomorphic_to.as_ref().map(TreeShape::load).transpose()?;
    log::info!("decompose n = {} with budget {:?}", g.n(), a.budget);
    let outcome = match &shape {
        Some(t) => isomorphic_decompose(&g, t, a.budget, a.seed)?,
        None => exact_decompose(&g, a.budget, a.seed)?,
    };
    let (status, code, note) = match &outcome {
        DecomposeOutcome::Found { .. } => ("found", EXIT_OK, "decomposition found and re-verified".to_string()),
        DecomposeOutcome::Refuted { .. } => {
            ("refuted", EXIT_FAILED, "complete search: no such decomposition exists".to_string())
        }
        DecomposeOutcome::Exhausted { .. } => {
            ("exhausted", EXIT_BUDGET, format!("budget of {} ran out; nothing is claimed", humantime::format_duration(a.budget)))
        }
    };
    let parts: Vec<EdgeSet> = outcome.parts().map(<[EdgeSet]>::to_vec).unwrap_or_default();
    let verification = outcome.parts().map(|p| verify_decomposition(&g, p));
    let file = DecompositionFile {
        n: g.n(),
        status: status.into(),
        nodes: outcome.nodes(),
        shape: shape.as_ref().map(canonical_form),
        parts: parts.iter().map(EdgeSet::to_vec).collect(),
        verification,
        note,
    };
    Output::json(&file, code)
}

fn rmbg(c: &RmbgCommand) -> Result<Output> {
    match c {
        RmbgCommand::Search { m, max_degree, seed, budget, .. } => {
            let h = search_rmbg(*m, *max_degree, *seed, *budget)?;
            Output::json(&h.to_json(), EXIT_OK)
        }
        RmbgCommand::Verify { file, sampled, seed, .. } => {
            let h = Rmbg::load(file)?;
            let mode = match sampled {
                Some(draws) => Mode::Sampled { draws: *draws, seed: *seed },
                None => Mode::Exhaustive,
            };
            let verdict = is_robustly_matchable(&h, mode)?;
            let code = if verdict.is_refuted() { EXIT_FAILED } else { EXIT_OK };
            let report = RmbgVerifyReport {
                parts: [h.x_size(), h.y_size(), h.z_size()],
                edges: h.edge_count(),
                max_degree: h.max_degree(),
                verdict,
            };
            Output::json(&report, code)
        }
        RmbgCommand::Regularize { file, d, seed, .. } => {
            let h = Rmbg::load(file)?;
            Output::json(&regularize(&h, *d, *seed)?.to_json(), EXIT_OK)
        }
    }
}

fn nibble(a: &NibbleArgs) -> Result<Output> {
    let h = match &a.hypergraph {
        Some(p) => Hypergraph::load(p)?,
        None => random_regular_hypergraph(a.vertices, a.uniformity, a.degree, a.max_codegree, a.seed)?,
    };
    let nib = nibble_matching(&h, a.bite, a.rounds, a.seed)?;
    let greedy = greedy_matching(&h, a.seed);
    let gamma_check = a.gamma.map(|g| check_gamma_perfect(&h, &nib.matching, g)).transpose()?;
    log::info!("nibble coverage {:.4}, greedy {:.4}", nib.coverage, greedy.coverage);
    let code = if gamma_check.as_ref().map_or(true, |c| c.perfect) { EXIT_OK } else { EXIT_FAILED };
    let report = NibbleRunReport {
        vertices: h.vertex_count(),
        edges: h.edges().len(),
        degrees: degree_stats(&h),
        nibble: nib,
        greedy,
        gamma_check,
    };
    Output::json(&report, code)
}

fn absorber(a: &AbsorberArgs) -> Result<Output> {
    let demo = match a.kind {
        AbsorberKind::Edge => build_edge_absorber_demo(
            &EdgeAbsorberConfig { matchings: a.scale, matching_size: a.size, m: a.m },
            a.seed,
        )?,
        AbsorberKind::Colour => build_colour_absorber_demo(
            &ColourAbsorberConfig { s: a.scale, reservoir: 2 * a.scale, matching_size: a.size },
            a.seed,
        )?,
    };
    let completions = demo.audit_completions();
    let absorption = demo.audit_absorption();
    let passed = completions.passed() && absorption.passed();
    let report = AbsorberReport { demo: demo.summary_json(), completions, absorption, passed };
    Output::json(&report, if passed { EXIT_OK } else { EXIT_FAILED })
}

fn strategy(a: &StrategyArgs) -> Result<Output> {
    let mut params = match &a.params {
        Some(p) => PipelineParams::load(p)?,
        None => default_params(),
    };
    let g = match &a.instance {
        Some(p) => load_instance(p)?,
        None => generate_random_factorization(a.n.unwrap_or(params.n), a.seed)?,
    };
    if a.n.is_some_and(|n| n != g.n()) {
        return Err(invalid(format!("--n {} disagrees with the instance size {}", a.n.unwrap(), g.n())));
    }
    params.n = g.n();
    params.validate()?;
    let steps = run_strategy(&g, &params, a.seed);
    // failures are data; the exit code only reflects whether the run happened
    Output::json(&StrategyReport { params, first_failure: first_failure(&steps), steps }, EXIT_OK)
}

/// One CSV row of `experiment`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub index: u64,
    pub seed: u64,
    pub outcome: String,
    /// Search nodes, nibble coverage or the first failing step.
    pub value: f64,
    /// Greedy coverage for the nibble task, otherwise 0.
    pub baseline: f64,
}

fn experiment(a: &ExperimentArgs) -> Result<Output> {
    if a.runs == 0 {
        return Err(invalid("need at least one run"));
    }
    let rows: Vec<Result<ExperimentRow>> = (0..a.runs)
        .into_par_iter()
        .map(|index| {
            let seed = a.seed.wrapping_add(index);
            let row = |outcome: &str, value: f64, baseline: f64| ExperimentRow {
                index,
                seed,
                outcome: outcome.into(),
                value,
                baseline,
            };
            Ok(match a.task {
                ExperimentTask::Decompose => {
                    let g = generate_random_factorization(a.n, seed)?;
                    let out = exact_decompose(&g, a.budget, seed)?;
                    let name = match out {
                        DecomposeOutcome::Found { .. } => "found",
                        DecomposeOutcome::Refuted { .. } => "refuted",
                        DecomposeOutcome::Exhausted { .. } => "exhausted",
                    };
                    row(name, out.nodes() as f64, 0.0)
                }
                ExperimentTask::Nibble => {
                    let h = random_regular_hypergraph(a.n, 3, 30, 3, seed)?;
                    let nib = nibble_matching(&h, 0.1, 60, seed)?;
                    let greedy = greedy_matching(&h, seed);
                    let name = if nib.gamma_effective < greedy.gamma_effective { "beats_greedy" } else { "no_gain" };
                    row(name, nib.coverage, greedy.coverage)
                }
                ExperimentTask::Strategy => {
                    let g = generate_random_factorization(a.n, seed)?;
                    let steps = run_strategy(&g, &PipelineParams::published_defaults(a.n), seed);
                    match first_failure(&steps) {
                        Some(s) => row("failed", s as f64, 0.0),
                        None => row("completed", 0.0, 0.0),
                    }
                }
            })
        })
        .collect();
    let rows: Vec<ExperimentRow> = rows.into_iter().collect::<Result<_>>()?;
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in &rows {
        w.serialize(r).map_err(|e| Error::Internal(e.to_string()))?;
    }
    let body = String::from_utf8(w.into_inner().map_err(|e| Error::Internal(e.to_string()))?)
        .map_err(|e| Error::Internal(e.to_string()))?;
    let mut tally: BTreeMap<&str, usize> = BTreeMap::new();
    for r in &rows {
        *tally.entry(&r.outcome).or_default() += 1;
    }
    log::info!("experiment outcomes: {tally:?}");
    Ok(Output { body, code: EXIT_OK })
}

fn out_path(cmd: &Command) -> Option<&Path> {
    let p = match cmd {
        Command::Gen(a) => &a.out,
        Command::Verify(a) => &a.out,
        Command::Decompose(a) => &a.out,
        Command::Rmbg(RmbgCommand::Search { out, .. })
        | Command::Rmbg(RmbgCommand::Verify { out, .. })
        | Command::Rmbg(RmbgCommand::Regularize { out, .. }) => out,
        Command::Nibble(NibbleCommand::Run(a)) => &a.out,
        Command::AbsorberDemo(a) => &a.out,
        Command::Strategy(a) => &a.out,
        Command::Experiment(a) => &a.out,
    };
    p.as_deref()
}

fn init_logging() {
    let level = match std::env::var("RAINBOW_LOG").as_deref() {
        Ok("debug") => log::LevelFilter::Debug,
        Ok("info") => log::LevelFilter::Info,
        _ => log::LevelFilter::Error,
    };
    // a second call in the same process (tests) is harmless
    let _ = env_logger::Builder::new().filter_level(level).format_timestamp(None).target(env_logger::Target::Stderr).try_init();
}

/// Parses `argv`, runs the command and writes its output. Returns the exit code.
pub fn run<I, T>(argv: I, stdout: &mut impl Write, stderr: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    init_logging();
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let out = execute(&cli.command).and_then(|o| {
        match out_path(&cli.command) {
            Some(p) => std::fs::write(p, &o.body)?,
            None => stdout.write_all(o.body.as_bytes())?,
        }
        Ok(o.code)
    });
    match out {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}
