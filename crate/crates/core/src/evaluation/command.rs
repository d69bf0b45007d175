use std::os::unix::process::CommandExt;
use std::path::{Path, PathBuf};
use std::process::{Child, Command, ExitStatus, Stdio};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::{shell_quote, EvalError, Evaluator, Measurement, MeasurementStatus, PlanningContext};
use crate::ga::Genome;
use crate::scalar::Scalar;

/// External build-and-run measurement.
///
/// `compile_cmd` may use `{src}` and `{bin}`; `run_cmd` may use `{bin}`. Both
/// are run through `sh -c` with `workdir` as the working directory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct CommandEvaluatorConfig<T> {
    pub compile_cmd: String,
    pub run_cmd: String,
    pub timeout_seconds: T,
    pub workdir: PathBuf,
    /// Time reported for failed builds, failed runs and timeouts.
    pub penalty_seconds: T,
}

impl<T: Scalar> CommandEvaluatorConfig<T> {
    pub fn new(compile_cmd: impl Into<String>, run_cmd: impl Into<String>, workdir: impl Into<PathBuf>) -> Self {
        CommandEvaluatorConfig {
            compile_cmd: compile_cmd.into(),
            run_cmd: run_cmd.into(),
            timeout_seconds: T::of(180.0),
            workdir: workdir.into(),
            penalty_seconds: T::of(1000.0),
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.compile_cmd.trim().is_empty() || self.run_cmd.trim().is_empty() {
            return Err("compile and run commands must be non-empty".into());
        }
        if !self.timeout_seconds.gt_zero() {
            return Err("timeout must be positive".into());
        }
        Ok(())
    }
}

const POLL: Duration = Duration::from_millis(5);

fn spawn(command: &str, workdir: &Path) -> Result<Child, EvalError> {
    Command::new("sh")
        .arg("-c")
        .arg(command)
        .current_dir(workdir)
        .stdin(Stdio::null())
        .stdout(Stdio::null())
        .stderr(Stdio::null())
        .process_group(0)
        .spawn()
        .map_err(|source| EvalError::Spawn { command: command.to_string(), source })
}

fn kill_group(child: &mut Child) {
    // SAFETY: plain syscall on the group we created; a stale pid only yields ESRCH.
    unsafe {
        libc::kill(-(child.id() as libc::pid_t), libc::SIGKILL);
    }
    let _ = child.wait();
}

enum Outcome {
    Exited(ExitStatus, Duration),
    TimedOut,
}

fn run_with_timeout(command: &str, workdir: &Path, timeout: Option<Duration>) -> Result<Outcome, EvalError> {
    let start = Instant::now();
    let mut child = spawn(command, workdir)?;
    loop {
        let waited =
            child.try_wait().map_err(|source| EvalError::Io { context: format!("waiting for `{command}`"), source })?;
        let elapsed = start.elapsed();
        if let Some(status) = waited {
            return Ok(match timeout {
                Some(t) if elapsed > t => Outcome::TimedOut,
                _ => Outcome::Exited(status, elapsed),
            });
        }
        if timeout.is_some_and(|t| elapsed > t) {
            kill_group(&mut child);
            return Ok(Outcome::TimedOut);
        }
        std::thread::sleep(POLL);
    }
}

/// Compile `source` and time one run of the result.
///
/// A failing build or run is `Invalid`; a run longer than the timeout is
/// killed together with its process group and reported as `Timeout`. Build
/// time is not measured.
pub fn command_evaluate<T: Scalar>(
    config: &CommandEvaluatorConfig<T>,
    source: &Path,
) -> Result<Measurement<T>, EvalError> {
    let stem = source.file_stem().and_then(|s| s.to_str()).unwrap_or("candidate");
    let bin = config.workdir.join(format!("{stem}.bin"));
    let fill = |cmd: &str| cmd.replace("{src}", &shell_quote(source)).replace("{bin}", &shell_quote(&bin));
    let penalty = |status| Measurement::penalty(status, config.penalty_seconds);

    match run_with_timeout(&fill(&config.compile_cmd), &config.workdir, None)? {
        Outcome::Exited(s, _) if s.success() => {}
        _ => return Ok(penalty(MeasurementStatus::Invalid)),
    }
    let timeout = Duration::from_secs_f64(config.timeout_seconds.to_f64_lossy());
    Ok(match run_with_timeout(&fill(&config.run_cmd), &config.workdir, Some(timeout))? {
        Outcome::TimedOut => penalty(MeasurementStatus::Timeout),
        Outcome::Exited(s, _) if !s.success() => penalty(MeasurementStatus::Invalid),
        Outcome::Exited(_, elapsed) => {
            let secs = T::of(elapsed.as_secs_f64().max(1e-9));
            if secs > config.timeout_seconds {
                penalty(MeasurementStatus::Timeout)
            } else {
                Measurement::measured(secs)
            }
        }
    })
}

/// Plans, emits and writes the annotated source for each genome, then runs
/// [`command_evaluate`] on it. Evaluations are serialized.
#[derive(Debug, Clone)]
pub struct CommandEvaluator<T> {
    pub context: PlanningContext,
    pub config: CommandEvaluatorConfig<T>,
}

impl<T: Scalar> CommandEvaluator<T> {
    pub fn new(context: PlanningContext, config: CommandEvaluatorConfig<T>) -> Self {
        CommandEvaluator { context, config }
    }
}

impl<T: Scalar> Evaluator<T> for CommandEvaluator<T> {
    fn evaluate(&self, genome: &Genome) -> Result<Measurement<T>, EvalError> {
        let plan = self.context.plan(genome)?;
        let annotated = self.context.emit(genome, &plan)?;
        let path = self.config.workdir.join(format!("candidate_{genome}.c"));
        std::fs::write(&path, &annotated.text)
            .map_err(|source| EvalError::Io { context: format!("writing {}", path.display()), source })?;
        command_evaluate(&self.config, &path)
    }

    fn concurrent(&self) -> bool {
        false
    }
}
