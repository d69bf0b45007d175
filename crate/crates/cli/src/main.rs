use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use offload_core::analysis::{build_genome_map, check_all, gate, load_profile, Oracle, DEFAULT_GATE_THRESHOLD};
use offload_core::evaluation::PlanningContext;
use offload_core::pipeline::{exit_codes, run_pipeline, EvaluatorSpec, PipelineConfig, PipelineError};
use offload_core::source::{build_loop_tree, extract_accesses, parse_named, LoopTree, Program, VarAccess};
use offload_core::{directive_exec_counts, GaConfigF64, Genome, GenomeMap};

#[derive(Parser)]
#[command(name = "offload-tune", version, about = "Search GPU offload patterns for loops of a C program")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dump the loop tree and classified variable accesses.
    Analyze {
        #[arg(long)]
        source: PathBuf,
    },
    /// Apply the loop-count gate to a profile.
    Gate {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        profile: PathBuf,
        #[arg(long, default_value_t = DEFAULT_GATE_THRESHOLD)]
        gate_threshold: u64,
    },
    /// Per-loop parallelizability verdicts and the resulting genome map.
    Check {
        #[command(flatten)]
        program: ProgramArgs,
    },
    /// Transfer plan for one genome.
    PlanTransfers {
        #[command(flatten)]
        program: ProgramArgs,
        #[arg(long)]
        genome: Genome,
        /// Add per-directive execution counts from this profile.
        #[arg(long)]
        profile: Option<PathBuf>,
    },
    /// Annotated source for one genome.
    Emit {
        #[command(flatten)]
        program: ProgramArgs,
        #[arg(long)]
        genome: Genome,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Full pipeline: gate, check, search, emit and report.
    Tune(TuneArgs),
}

#[derive(Args)]
struct ProgramArgs {
    #[arg(long)]
    source: PathBuf,
    /// Compile command with a `{src}` placeholder; replaces the built-in checker.
    #[arg(long)]
    oracle_cmd: Option<String>,
}

#[derive(Args)]
struct TuneArgs {
    #[command(flatten)]
    program: ProgramArgs,
    #[arg(long)]
    profile: PathBuf,
    /// `sim:<cost-model.json>` or `cmd:<commands.json>`.
    #[arg(long)]
    evaluator: EvaluatorSpec,
    #[arg(long, default_value_t = 30)]
    pop: usize,
    #[arg(long, default_value_t = 20)]
    gens: usize,
    #[arg(long, default_value_t = 0.9)]
    pc: f64,
    #[arg(long, default_value_t = 0.05)]
    pm: f64,
    #[arg(long, default_value_t = 180.0)]
    timeout: f64,
    #[arg(long, default_value_t = 1000.0)]
    penalty: f64,
    #[arg(long, default_value_t = DEFAULT_GATE_THRESHOLD)]
    gate_threshold: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Annotated source of the best pattern.
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON search report.
    #[arg(long)]
    report: Option<PathBuf>,
}

impl ProgramArgs {
    fn oracle(&self) -> Oracle {
        match &self.oracle_cmd {
            Some(cmd) => Oracle::External { compile_cmd: cmd.clone() },
            None => Oracle::BuiltIn,
        }
    }
}

struct Loaded {
    program: Program,
    tree: LoopTree,
    accesses: Vec<VarAccess>,
}

fn load(source: &Path) -> Result<Loaded, PipelineError> {
    let text =
        std::fs::read_to_string(source).map_err(|e| PipelineError::Io { path: source.to_path_buf(), source: e })?;
    let program = parse_named(&source.display().to_string(), &text)?;
    let tree = build_loop_tree(&program);
    let accesses = extract_accesses(&program);
    Ok(Loaded { program, tree, accesses })
}

fn genome_map(l: &Loaded, args: &ProgramArgs) -> Result<GenomeMap, PipelineError> {
    let verdicts = check_all(&l.program, &l.tree, &l.accesses, &args.oracle())?;
    build_genome_map(&verdicts).map_err(|e| PipelineError::Config(e.to_string()))
}

fn check_genome(genome: &Genome, map: &GenomeMap) -> Result<(), PipelineError> {
    if genome.len() == map.len() {
        Ok(())
    } else {
        Err(PipelineError::Config(format!(
            "genome has {} bits but the program has {} offloadable loops",
            genome.len(),
            map.len()
        )))
    }
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json value serializes"));
}

fn write_out(path: &Path, text: &str) -> Result<(), PipelineError> {
    std::fs::write(path, text).map_err(|e| PipelineError::Io { path: path.to_path_buf(), source: e })
}

fn run(cli: Cli) -> Result<i32, PipelineError> {
    match cli.command {
        Command::Analyze { source } => {
            let l = load(&source)?;
            let functions: Vec<&str> = l.program.functions.iter().map(|f| f.name.as_str()).collect();
            print_json(&json!({ "functions": functions, "loops": l.tree.nodes, "accesses": l.accesses }));
            Ok(0)
        }
        Command::Gate { source, profile, gate_threshold } => {
            let l = load(&source)?;
            let profile = load_profile(&profile, &l.tree)?;
            let decision = gate(&l.tree, &profile, gate_threshold);
            print_json(&json!({ "gate": decision }));
            Ok(if decision.pass { 0 } else { exit_codes::GATE_REJECT })
        }
        Command::Check { program } => {
            let l = load(&program.source)?;
            let verdicts = check_all(&l.program, &l.tree, &l.accesses, &program.oracle())?;
            let map = build_genome_map(&verdicts).ok();
            let genes = map.as_ref().map_or(0, GenomeMap::len);
            print_json(&json!({ "verdicts": verdicts, "genome_map": map, "gene_length": genes }));
            Ok(if map.is_some() { 0 } else { exit_codes::NO_OFFLOADABLE_LOOPS })
        }
        Command::PlanTransfers { program, genome, profile } => {
            let l = load(&program.source)?;
            let map = genome_map(&l, &program)?;
            check_genome(&genome, &map)?;
            let profile = profile.map(|p| load_profile(p, &l.tree)).transpose()?;
            let ctx = PlanningContext {
                program: l.program,
                tree: l.tree,
                accesses: l.accesses,
                map,
                profile: profile.clone().unwrap_or_default(),
            };
            let plan = ctx.plan(&genome)?;
            match profile {
                None => println!("{}", plan.to_json()),
                Some(p) => {
                    let counts: Vec<_> = directive_exec_counts(&plan, &ctx.tree, &p)
                        .into_iter()
                        .map(|(d, n)| json!({ "target_loop": d.target_loop, "clause": d.clause, "vars": d.vars, "exec_count": n }))
                        .collect();
                    print_json(&json!({ "directives": counts }));
                }
            }
            Ok(0)
        }
        Command::Emit { program, genome, out } => {
            let l = load(&program.source)?;
            let map = genome_map(&l, &program)?;
            check_genome(&genome, &map)?;
            let ctx = PlanningContext {
                program: l.program,
                tree: l.tree,
                accesses: l.accesses,
                map,
                profile: Default::default(),
            };
            let annotated = ctx.emit(&genome, &ctx.plan(&genome)?)?;
            match out {
                Some(path) => write_out(&path, &annotated.text)?,
                None => print!("{}", annotated.text),
            }
            Ok(0)
        }
        Command::Tune(args) => {
            let oracle = args.program.oracle();
            let config = PipelineConfig {
                ga: GaConfigF64 {
                    population: args.pop,
                    generations: args.gens,
                    crossover_rate: args.pc,
                    mutation_rate: args.pm,
                    timeout_seconds: args.timeout,
                    penalty_seconds: args.penalty,
                    rng_seed: args.seed,
                    ..GaConfigF64::default()
                },
                gate_threshold: args.gate_threshold,
                oracle,
                out: args.out,
                report: args.report,
                ..PipelineConfig::new(args.program.source, args.profile, args.evaluator)
            };
            let outcome = run_pipeline(&config)?;
            let code = outcome.status.exit_code();
            if code != 0 {
                let reason = serde_json::to_value(outcome.status).expect("status serializes");
                eprintln!("{}", json!({ "status": reason }));
            }
            if config.report.is_none() {
                print!("{}", outcome.report.to_json());
            }
            Ok(code)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("{}", json!({ "error": e.kind(), "message": e.to_string() }));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
