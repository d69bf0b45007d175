#![allow(dead_code)]

pub mod gen;

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::Mutex;

use offload_core::analysis::{build_genome_map, check_all, load_profile, GenomeMap, Oracle};
use offload_core::evaluation::{EvalError, Evaluator, Measurement, PlanningContext, SimulatedEvaluator};
use offload_core::source::{build_loop_tree, extract_accesses, parse_named, LoopTree};
use offload_core::{simulate_time, CostModel, Genome, LoopId};

pub const SMALL_FIXTURES: [&str; 5] = ["s1_stencil", "s2_matrix", "s3_mixed", "s4_wide", "s5_deep"];

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("fixtures")
}

pub fn read(rel: &str) -> String {
    let path = fixtures().join(rel);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub struct Fixture {
    pub name: String,
    pub context: PlanningContext,
    pub model: CostModel<f64>,
}

impl Fixture {
    pub fn evaluator(&self) -> SimulatedEvaluator<f64> {
        SimulatedEvaluator::new(self.context.clone(), self.model.clone()).unwrap()
    }

    pub fn seconds(&self, genome: &Genome) -> f64 {
        let c = &self.context;
        let plan = c.plan(genome).unwrap();
        simulate_time(&self.model, genome, &c.map, &c.tree, &c.profile, &plan).unwrap().seconds
    }
}

/// Program, profile and cost model from `dir` (relative to the fixture root).
pub fn load_dir(dir: &str) -> Fixture {
    let root = fixtures().join(dir);
    let text = std::fs::read_to_string(root.join("program.c")).unwrap();
    let program = parse_named("program.c", &text).unwrap();
    let tree = build_loop_tree(&program);
    let accesses = extract_accesses(&program);
    let profile = load_profile(root.join("profile.json"), &tree).unwrap();
    let verdicts = check_all(&program, &tree, &accesses, &Oracle::BuiltIn).unwrap();
    let map = build_genome_map(&verdicts).unwrap();
    let model = CostModel::load(root.join("model.json")).unwrap();
    Fixture { name: dir.to_string(), context: PlanningContext { program, tree, accesses, map, profile }, model }
}

pub fn search_fixture(name: &str) -> Fixture {
    load_dir(&format!("search/{name}"))
}

/// Lowest simulated time over every valid genome, by plain enumeration.
pub fn brute_force(f: &Fixture) -> (Genome, f64) {
    let c = &f.context;
    Genome::enumerate(c.map.len())
        .filter(|g| g.is_valid(&c.tree, &c.map))
        .map(|g| {
            let s = f.seconds(&g);
            (g, s)
        })
        .fold(None, |best: Option<(Genome, f64)>, (g, s)| match best {
            Some((_, b)) if b <= s => best,
            _ => Some((g, s)),
        })
        .expect("the all-zero genome is always valid")
}

/// Wraps an evaluator and records every genome it is asked to measure.
pub struct Counting<E> {
    pub inner: E,
    pub calls: Mutex<Vec<Genome>>,
}

impl<E> Counting<E> {
    pub fn new(inner: E) -> Self {
        Counting { inner, calls: Mutex::new(Vec::new()) }
    }

    pub fn calls(&self) -> Vec<Genome> {
        self.calls.lock().unwrap().clone()
    }

    /// Calls per distinct genome.
    pub fn histogram(&self) -> HashMap<Genome, usize> {
        let mut h = HashMap::new();
        for g in self.calls() {
            *h.entry(g).or_insert(0) += 1;
        }
        h
    }
}

impl<E: Evaluator<f64>> Evaluator<f64> for Counting<E> {
    fn evaluate(&self, genome: &Genome) -> Result<Measurement<f64>, EvalError> {
        self.calls.lock().unwrap().push(genome.clone());
        self.inner.evaluate(genome)
    }

    fn concurrent(&self) -> bool {
        self.inner.concurrent()
    }
}

/// `(loop_id, reason)` pairs from the `// expect <id> <Reason>` header of a corpus file.
pub fn expected_verdicts(text: &str) -> Vec<(usize, String)> {
    text.lines()
        .filter_map(|l| l.strip_prefix("// expect "))
        .map(|rest| {
            let mut it = rest.split_whitespace();
            let id = it.next().unwrap().parse().unwrap();
            (id, it.next().unwrap().to_string())
        })
        .collect()
}

pub fn corpus_files(dir: &str) -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(fixtures().join(dir)).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    files
}

/// Clears any selected loop nested under an earlier selected one.
pub fn repair(bits: &[bool], tree: &LoopTree, map: &GenomeMap) -> Genome {
    let mut kept: Vec<LoopId> = Vec::new();
    let mut out = vec![false; map.len()];
    for (gene, &on) in bits.iter().enumerate().take(map.len()) {
        let id = map.loop_at(gene);
        if on && !kept.iter().any(|&k| tree.is_ancestor(k, id)) {
            kept.push(id);
            out[gene] = true;
        }
    }
    Genome::from_bits(out)
}
