//! End-to-end tuning: analyze, gate, check loops, search, emit, report.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::analysis::{
    build_genome_map, check_all, gate, load_profile, GateDecision, GenomeMap, Oracle, OracleError,
    ParallelizabilityVerdict, ProfileError, DEFAULT_GATE_THRESHOLD,
};
use crate::emit::{AnnotatedSource, EmitError};
use crate::evaluation::{
    CommandEvaluator, CommandEvaluatorConfig, CostModel, EvalError, Evaluator, ModelError, PlanningContext,
    SimulatedEvaluator,
};
use crate::ga::{run_ga, GaConfig, GaError, GenerationStats, Genome};
use crate::scalar::Scalar;
use crate::source::{build_loop_tree, extract_accesses, parse_named, LoopId, ParseError};
use crate::transfer::{DataDirective, PlanError};

/// Where measurements come from: `sim:<cost-model.json>` or `cmd:<commands.json>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvaluatorSpec {
    Sim(PathBuf),
    Cmd(PathBuf),
}

impl FromStr for EvaluatorSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.split_once(':') {
            Some(("sim", p)) if !p.is_empty() => Ok(EvaluatorSpec::Sim(p.into())),
            Some(("cmd", p)) if !p.is_empty() => Ok(EvaluatorSpec::Cmd(p.into())),
            _ => Err(format!("evaluator must be `sim:<path>` or `cmd:<path>`, got `{s}`")),
        }
    }
}

impl std::fmt::Display for EvaluatorSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EvaluatorSpec::Sim(p) => write!(f, "sim:{}", p.display()),
            EvaluatorSpec::Cmd(p) => write!(f, "cmd:{}", p.display()),
        }
    }
}

/// Contents of a `cmd:` evaluator file. Without a `workdir` a fresh temporary
/// directory is used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommandSpec {
    pub compile_cmd: String,
    pub run_cmd: String,
    #[serde(default)]
    pub workdir: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct PipelineConfig<T> {
    pub source: PathBuf,
    pub profile: PathBuf,
    pub evaluator: EvaluatorSpec,
    pub ga: GaConfig<T>,
    pub gate_threshold: u64,
    pub oracle: Oracle,
    pub out: Option<PathBuf>,
    pub report: Option<PathBuf>,
}

impl<T: Scalar> PipelineConfig<T> {
    pub fn new(source: impl Into<PathBuf>, profile: impl Into<PathBuf>, evaluator: EvaluatorSpec) -> Self {
        PipelineConfig {
            source: source.into(),
            profile: profile.into(),
            evaluator,
            ga: GaConfig::default(),
            gate_threshold: DEFAULT_GATE_THRESHOLD,
            oracle: Oracle::BuiltIn,
            out: None,
            report: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PipelineStatus {
    Completed,
    GateReject,
    NoOffloadableLoops,
}

impl PipelineStatus {
    pub fn exit_code(self) -> i32 {
        match self {
            PipelineStatus::Completed => 0,
            PipelineStatus::GateReject => exit_codes::GATE_REJECT,
            PipelineStatus::NoOffloadableLoops => exit_codes::NO_OFFLOADABLE_LOOPS,
        }
    }
}

pub mod exit_codes {
    pub const IO: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const PARSE: i32 = 10;
    pub const PROFILE: i32 = 11;
    pub const GATE_REJECT: i32 = 12;
    pub const NO_OFFLOADABLE_LOOPS: i32 = 13;
    pub const EVALUATOR: i32 = 14;
    pub const ORACLE: i32 = 15;
}

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error("evaluator: {0}")]
    Evaluator(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Plan(#[from] PlanError),
    #[error(transparent)]
    Emit(#[from] EmitError),
}

impl PipelineError {
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Io { .. } | PipelineError::Plan(_) | PipelineError::Emit(_) => exit_codes::IO,
            PipelineError::Parse(_) => exit_codes::PARSE,
            PipelineError::Profile(_) => exit_codes::PROFILE,
            PipelineError::Evaluator(_) => exit_codes::EVALUATOR,
            PipelineError::Oracle(_) => exit_codes::ORACLE,
            PipelineError::Config(_) => exit_codes::USAGE,
        }
    }

    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            PipelineError::Io { .. } => "io-error",
            PipelineError::Parse(_) => "parse-error",
            PipelineError::Profile(_) => "profile-error",
            PipelineError::Evaluator(_) => "evaluator-failure",
            PipelineError::Oracle(_) => "oracle-failure",
            PipelineError::Config(_) => "config-error",
            PipelineError::Plan(_) => "plan-error",
            PipelineError::Emit(_) => "emit-error",
        }
    }
}

impl From<ModelError> for PipelineError {
    fn from(e: ModelError) -> Self {
        PipelineError::Evaluator(e.to_string())
    }
}

impl From<EvalError> for PipelineError {
    fn from(e: EvalError) -> Self {
        PipelineError::Evaluator(e.to_string())
    }
}

impl From<GaError> for PipelineError {
    fn from(e: GaError) -> Self {
        match e {
            GaError::Eval(e) => e.into(),
            GaError::Config(m) => PipelineError::Config(m),
            other => PipelineError::Evaluator(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportConfig<T> {
    pub source: String,
    pub profile: String,
    pub evaluator: String,
    pub population: usize,
    pub effective_population: Option<usize>,
    pub generations: usize,
    pub crossover_rate: T,
    pub mutation_rate: T,
    pub timeout_seconds: T,
    pub penalty_seconds: T,
    pub fitness_exponent: T,
    pub seed: u64,
    pub gate_threshold: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportBest<T> {
    pub genome: Genome,
    pub seconds: T,
    pub fitness: T,
    pub offloaded_loops: Vec<LoopId>,
    pub directives: Vec<DataDirective>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report<T> {
    pub status: PipelineStatus,
    pub config: ReportConfig<T>,
    pub gate: GateDecision,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdicts: Option<Vec<ParallelizabilityVerdict>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genome_map: Option<GenomeMap>,
    pub generations: Vec<GenerationStats<T>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub best: Option<ReportBest<T>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evaluations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invalid_skipped: Option<usize>,
}

impl<T: Scalar> Report<T> {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone)]
pub struct PipelineOutcome<T> {
    pub status: PipelineStatus,
    pub report: Report<T>,
    pub annotated: Option<AnnotatedSource>,
}

enum LoadedEvaluator<T> {
    Sim(CostModel<T>),
    Cmd(CommandSpec),
}

fn load_evaluator<T: Scalar>(spec: &EvaluatorSpec) -> Result<LoadedEvaluator<T>, PipelineError> {
    match spec {
        EvaluatorSpec::Sim(path) => Ok(LoadedEvaluator::Sim(CostModel::load(path)?)),
        EvaluatorSpec::Cmd(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| PipelineError::Evaluator(format!("{}: {e}", path.display())))?;
            let spec: CommandSpec = serde_json::from_str(&text)
                .map_err(|e| PipelineError::Evaluator(format!("{}: {e}", path.display())))?;
            if spec.compile_cmd.trim().is_empty() || spec.run_cmd.trim().is_empty() {
                return Err(PipelineError::Evaluator(format!(
                    "{}: compile and run commands must be non-empty",
                    path.display()
                )));
            }
            Ok(LoadedEvaluator::Cmd(spec))
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), PipelineError> {
    std::fs::write(path, text).map_err(|source| PipelineError::Io { path: path.to_path_buf(), source })
}

/// Run the whole flow and write the requested artifacts.
///
/// Inputs, including the evaluator file, are all loaded before anything is
/// written, so a failing run leaves no partial report. A gate rejection or a
/// program without offloadable loops still writes the report.
pub fn run_pipeline<T: Scalar>(config: &PipelineConfig<T>) -> Result<PipelineOutcome<T>, PipelineError> {
    config.ga.validate().map_err(|e| PipelineError::Config(e.to_string()))?;

    let text = std::fs::read_to_string(&config.source)
        .map_err(|source| PipelineError::Io { path: config.source.clone(), source })?;
    let program = parse_named(&config.source.display().to_string(), &text)?;
    let tree = build_loop_tree(&program);
    let accesses = extract_accesses(&program);
    let profile = load_profile(&config.profile, &tree)?;
    let loaded = load_evaluator::<T>(&config.evaluator)?;
    if let LoadedEvaluator::Sim(model) = &loaded {
        model.check_covers(&tree)?;
    }

    let ga = &config.ga;
    let mut report = Report {
        status: PipelineStatus::Completed,
        config: ReportConfig {
            source: config.source.display().to_string(),
            profile: config.profile.display().to_string(),
            evaluator: config.evaluator.to_string(),
            population: ga.population,
            effective_population: None,
            generations: ga.generations,
            crossover_rate: ga.crossover_rate,
            mutation_rate: ga.mutation_rate,
            timeout_seconds: ga.timeout_seconds,
            penalty_seconds: ga.penalty_seconds,
            fitness_exponent: ga.fitness_exponent,
            seed: ga.rng_seed,
            gate_threshold: config.gate_threshold,
        },
        gate: gate(&tree, &profile, config.gate_threshold),
        verdicts: None,
        genome_map: None,
        generations: Vec::new(),
        best: None,
        evaluations: None,
        invalid_skipped: None,
    };

    let finish = |report: Report<T>, annotated: Option<AnnotatedSource>| -> Result<PipelineOutcome<T>, PipelineError> {
        if let (Some(path), Some(a)) = (&config.out, &annotated) {
            write_file(path, &a.text)?;
        }
        if let Some(path) = &config.report {
            write_file(path, &report.to_json())?;
        }
        Ok(PipelineOutcome { status: report.status, report, annotated })
    };

    if !report.gate.pass {
        report.status = PipelineStatus::GateReject;
        return finish(report, None);
    }

    let verdicts = check_all(&program, &tree, &accesses, &config.oracle)?;
    report.verdicts = Some(verdicts.clone());
    let map = match build_genome_map(&verdicts) {
        Ok(map) => map,
        Err(_) => {
            report.status = PipelineStatus::NoOffloadableLoops;
            return finish(report, None);
        }
    };
    report.genome_map = Some(map.clone());
    report.config.effective_population = Some(ga.effective_population(map.len()));

    let context = PlanningContext { program, tree, accesses, map, profile };
    let _workdir_guard;
    let evaluator: Box<dyn Evaluator<T>> = match loaded {
        LoadedEvaluator::Sim(model) => Box::new(SimulatedEvaluator::new(context.clone(), model)?),
        LoadedEvaluator::Cmd(spec) => {
            let workdir = match spec.workdir {
                Some(dir) => dir,
                None => {
                    let dir = tempfile::tempdir()
                        .map_err(|e| PipelineError::Evaluator(format!("cannot create workdir: {e}")))?;
                    let path = dir.path().to_path_buf();
                    _workdir_guard = dir;
                    path
                }
            };
            let cmd = CommandEvaluatorConfig {
                timeout_seconds: ga.timeout_seconds,
                penalty_seconds: ga.penalty_seconds,
                ..CommandEvaluatorConfig::new(spec.compile_cmd, spec.run_cmd, workdir)
            };
            Box::new(CommandEvaluator::new(context.clone(), cmd))
        }
    };

    let result = run_ga(ga, &context.tree, &context.map, evaluator.as_ref())?;
    let best = &result.best;
    let plan = context.plan(&best.genome)?;
    let annotated = context.emit(&best.genome, &plan)?;

    report.generations = result.history.clone();
    report.evaluations = Some(result.evaluations);
    report.invalid_skipped = Some(result.invalid_skipped);
    report.best = Some(ReportBest {
        genome: best.genome.clone(),
        seconds: best.seconds,
        fitness: best.fitness,
        offloaded_loops: best.genome.selected_loops(&context.map),
        directives: plan.directives,
    });
    finish(report, Some(annotated))
}
