mod common;

use std::path::{Path, PathBuf};

use offload_core::pipeline::{
    exit_codes, run_pipeline, CommandSpec, EvaluatorSpec, PipelineConfig, PipelineError, PipelineStatus,
};

use common::{brute_force, fixtures, load_dir};

fn config(dir: &str, out: &Path) -> PipelineConfig<f64> {
    let root = fixtures().join(dir);
    let mut c = PipelineConfig::new(
        root.join("program.c"),
        root.join("profile.json"),
        EvaluatorSpec::Sim(root.join("model.json")),
    );
    c.out = Some(out.join("best.c"));
    c.report = Some(out.join("report.json"));
    c
}

fn report_json(out: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap()
}

#[test]
fn gate_reject_writes_a_report_and_skips_the_search() {
    let out = tempfile::tempdir().unwrap();
    // the hottest loop runs 100,000 iterations, below the default threshold
    let outcome = run_pipeline(&config("two_loops", out.path())).unwrap();
    assert_eq!(outcome.status, PipelineStatus::GateReject);
    assert_eq!(outcome.status.exit_code(), exit_codes::GATE_REJECT);
    assert!(outcome.annotated.is_none());
    assert!(!out.path().join("best.c").exists());
    let r = report_json(out.path());
    assert_eq!(r["status"], "gate-reject");
    assert_eq!(r["gate"]["pass"], false);
    assert_eq!(r["gate"]["max_total_iterations"], 100000);
    assert_eq!(r["generations"], serde_json::json!([]));
}

#[test]
fn two_loop_search_matches_enumeration() {
    let out = tempfile::tempdir().unwrap();
    let mut c = config("two_loops", out.path());
    c.gate_threshold = 1000;
    let outcome = run_pipeline(&c).unwrap();
    assert_eq!(outcome.status, PipelineStatus::Completed);

    let f = load_dir("two_loops");
    let (genome, seconds) = brute_force(&f);
    let best = outcome.report.best.as_ref().unwrap();
    assert_eq!(best.genome, genome);
    assert_eq!(best.seconds, seconds);
    assert_eq!(best.offloaded_loops, vec![0]);

    let annotated = std::fs::read_to_string(out.path().join("best.c")).unwrap();
    assert_eq!(annotated, outcome.annotated.unwrap().text);
    assert!(annotated.contains("    #pragma acc data copyin(b) copyout(a)\n    #pragma acc kernels\n    for"));
    let r = report_json(out.path());
    assert_eq!(r["best"]["genome"], "10");
    assert_eq!(r["config"]["effective_population"], 2);
    assert_eq!(r["generations"].as_array().unwrap().len(), 20);
}

#[test]
fn no_offloadable_loops() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("p.c");
    std::fs::write(
        &src,
        "void f(float a[100]) {\n    for (int i = 1; i < 100; i++) {\n        a[i] = a[i - 1];\n    }\n}\n",
    )
    .unwrap();
    let profile = dir.path().join("profile.json");
    std::fs::write(&profile, r#"{"loops":[{"id":0,"entry_count":1,"total_iterations":20000000}]}"#).unwrap();
    let model = dir.path().join("model.json");
    std::fs::write(
        &model,
        r#"{"loops":{"0":{"cpu_us_per_iter":1.0,"gpu_speedup":2.0,"kernel_launch_us":1.0}},"transfer_fixed_us":0.0,"transfer_us_per_kib":0.0}"#,
    )
    .unwrap();
    let mut c = PipelineConfig::<f64>::new(&src, &profile, EvaluatorSpec::Sim(model));
    c.report = Some(dir.path().join("report.json"));
    let outcome = run_pipeline(&c).unwrap();
    assert_eq!(outcome.status, PipelineStatus::NoOffloadableLoops);
    assert_eq!(outcome.status.exit_code(), exit_codes::NO_OFFLOADABLE_LOOPS);
    let r = report_json(dir.path());
    assert_eq!(r["verdicts"][0]["reason"], "LoopCarriedDependence");
    assert!(r.get("best").is_none() || r["best"].is_null());
}

#[test]
fn missing_cost_model_is_an_evaluator_failure_without_report() {
    let out = tempfile::tempdir().unwrap();
    let mut c = config("search/s1_stencil", out.path());
    c.evaluator = EvaluatorSpec::Sim(PathBuf::from("/nonexistent/model.json"));
    let err = run_pipeline(&c).unwrap_err();
    assert!(matches!(err, PipelineError::Evaluator(_)), "{err}");
    assert_eq!(err.exit_code(), exit_codes::EVALUATOR);
    assert!(!out.path().join("report.json").exists());
    assert!(!out.path().join("best.c").exists());
}

#[test]
fn input_errors_have_distinct_codes() {
    let out = tempfile::tempdir().unwrap();
    let dir = tempfile::tempdir().unwrap();

    let bad_src = dir.path().join("bad.c");
    std::fs::write(&bad_src, "int main() { int *p; }").unwrap();
    let mut c = config("search/s1_stencil", out.path());
    c.source = bad_src;
    assert_eq!(run_pipeline(&c).unwrap_err().exit_code(), exit_codes::PARSE);

    let bad_profile = dir.path().join("profile.json");
    std::fs::write(&bad_profile, r#"{"loops":[]}"#).unwrap();
    let mut c = config("search/s1_stencil", out.path());
    c.profile = bad_profile;
    assert_eq!(run_pipeline(&c).unwrap_err().exit_code(), exit_codes::PROFILE);

    let mut c = config("search/s1_stencil", out.path());
    c.ga.population = 1;
    assert_eq!(run_pipeline(&c).unwrap_err().exit_code(), exit_codes::USAGE);

    let mut c = config("search/s1_stencil", out.path());
    c.source = dir.path().join("missing.c");
    assert_eq!(run_pipeline(&c).unwrap_err().exit_code(), exit_codes::IO);

    let mut c = config("search/s1_stencil", out.path());
    c.oracle = offload_core::analysis::Oracle::External { compile_cmd: "true".into() };
    c.ga.generations = 2;
    assert_eq!(run_pipeline(&c).unwrap().status, PipelineStatus::Completed);
    assert_eq!(report_json(out.path())["status"], "completed");
}

#[test]
fn command_evaluator_runs_through_the_pipeline() {
    let out = tempfile::tempdir().unwrap();
    let spec = CommandSpec { compile_cmd: "cp {src} {bin}".into(), run_cmd: "test -s {bin}".into(), workdir: None };
    let spec_path = out.path().join("cmd.json");
    std::fs::write(&spec_path, serde_json::to_string(&spec).unwrap()).unwrap();
    let mut c = config("two_loops", out.path());
    c.gate_threshold = 1;
    c.evaluator = EvaluatorSpec::Cmd(spec_path);
    c.ga.generations = 2;
    let outcome = run_pipeline(&c).unwrap();
    assert_eq!(outcome.status, PipelineStatus::Completed);
    let best = outcome.report.best.unwrap();
    assert!(best.seconds > 0.0 && best.seconds < c.ga.timeout_seconds);
}

#[test]
fn identical_inputs_give_identical_artifacts() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    run_pipeline(&config("search/s3_mixed", a.path())).unwrap();
    run_pipeline(&config("search/s3_mixed", b.path())).unwrap();
    for file in ["report.json", "best.c"] {
        assert_eq!(std::fs::read(a.path().join(file)).unwrap(), std::fs::read(b.path().join(file)).unwrap(), "{file}");
    }
}
