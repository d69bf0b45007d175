//! Per-loop parallelizability verdicts.
//!
//! The built-in oracle is deliberately conservative: only canonical counted
//! `for` loops qualify, every scalar reduction is rejected, and any array
//! subscript it cannot prove iteration-private is treated as a loop-carried
//! dependence. The external oracle instead inserts a single
//! `#pragma acc kernels` before the loop and asks a real compiler.

use std::collections::{BTreeMap, HashSet};
use std::process::{Command, Stdio};

use rayon::prelude::*;
use serde::Serialize;

use crate::emit;
use crate::source::{
    is_canonical, Assign, AssignOp, BinOp, Expr, ExprKind, ForInit, ForLoop, LoopId, LoopKind, LoopTree, Program, Stmt,
    StmtKind, VarAccess,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VerdictReason {
    NotCanonicalFor,
    LoopCarriedDependence,
    ScalarReduction,
    ExternalCompileError,
    Eligible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ParallelizabilityVerdict {
    pub loop_id: LoopId,
    pub eligible: bool,
    pub reason: VerdictReason,
}

impl ParallelizabilityVerdict {
    fn new(loop_id: LoopId, reason: VerdictReason) -> Self {
        ParallelizabilityVerdict { loop_id, eligible: reason == VerdictReason::Eligible, reason }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Oracle {
    BuiltIn,
    /// Shell command with a `{src}` placeholder; exit status 0 means the loop is eligible.
    External {
        compile_cmd: String,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error("loop {0} is not part of the program")]
    UnknownLoop(LoopId),
    #[error("cannot prepare trial source for loop {loop_id}: {message}")]
    Trial { loop_id: LoopId, message: String },
    #[error("cannot spawn compile command for loop {loop_id}: {source}")]
    Spawn { loop_id: LoopId, source: std::io::Error },
}

pub fn check_parallelizable(
    program: &Program,
    tree: &LoopTree,
    loop_id: LoopId,
    accesses: &[VarAccess],
    oracle: &Oracle,
) -> Result<ParallelizabilityVerdict, OracleError> {
    let node = tree.get(loop_id).ok_or(OracleError::UnknownLoop(loop_id))?;
    match oracle {
        Oracle::BuiltIn => {
            let arrays: HashSet<&str> =
                accesses.iter().filter(|a| a.function == node.function && a.is_array).map(|a| a.var.as_str()).collect();
            let reason = match (node.kind, find_for(program, loop_id)) {
                (LoopKind::For, Some(f)) => builtin_reason(f, &arrays),
                _ => VerdictReason::NotCanonicalFor,
            };
            Ok(ParallelizabilityVerdict::new(loop_id, reason))
        }
        Oracle::External { compile_cmd } => external_trial(program, tree, loop_id, compile_cmd),
    }
}

/// Verdicts for every loop, ordered by loop id. External trials run concurrently.
pub fn check_all(
    program: &Program,
    tree: &LoopTree,
    accesses: &[VarAccess],
    oracle: &Oracle,
) -> Result<Vec<ParallelizabilityVerdict>, OracleError> {
    let check = |id| check_parallelizable(program, tree, id, accesses, oracle);
    match oracle {
        Oracle::BuiltIn => (0..tree.len()).map(check).collect(),
        Oracle::External { .. } => {
            let results: Vec<_> = (0..tree.len()).into_par_iter().map(check).collect();
            results.into_iter().collect()
        }
    }
}

/// Source text with exactly one `#pragma acc kernels` line before `loop_id`.
pub fn kernels_trial_source(program: &Program, tree: &LoopTree, loop_id: LoopId) -> Result<String, emit::EmitError> {
    let mut lines = BTreeMap::new();
    lines.insert(loop_id, vec![emit::KERNELS_LINE.to_string()]);
    Ok(emit::insert_before_loops(program, tree, &lines)?.text)
}

fn external_trial(
    program: &Program,
    tree: &LoopTree,
    loop_id: LoopId,
    compile_cmd: &str,
) -> Result<ParallelizabilityVerdict, OracleError> {
    let trial_err = |message: String| OracleError::Trial { loop_id, message };
    let text = kernels_trial_source(program, tree, loop_id).map_err(|e| trial_err(e.to_string()))?;
    let dir = tempfile::tempdir().map_err(|e| trial_err(e.to_string()))?;
    let src = dir.path().join(format!("trial_{loop_id}.c"));
    std::fs::write(&src, text).map_err(|e| trial_err(e.to_string()))?;
    let cmd = compile_cmd.replace("{src}", &crate::evaluation::shell_quote(&src));
    let status = Command::new("sh")
        .arg("-c")
        .arg(&cmd)
        .current_dir(dir.path())
        .stdin(Stdio::null())
        .stdout(Stdio::null())
        .stderr(Stdio::null())
        .status()
        .map_err(|source| OracleError::Spawn { loop_id, source })?;
    let reason = if status.success() { VerdictReason::Eligible } else { VerdictReason::ExternalCompileError };
    Ok(ParallelizabilityVerdict::new(loop_id, reason))
}

pub(crate) fn find_for(program: &Program, loop_id: LoopId) -> Option<&ForLoop> {
    fn in_stmt(s: &Stmt, id: LoopId) -> Option<&ForLoop> {
        match &s.kind {
            StmtKind::For(f) if f.loop_id == id => Some(f),
            StmtKind::For(f) => in_stmt(&f.body, id),
            StmtKind::While { body, .. } | StmtKind::DoWhile { body, .. } => in_stmt(body, id),
            StmtKind::If { then_branch, else_branch, .. } => {
                in_stmt(then_branch, id).or_else(|| else_branch.as_deref().and_then(|e| in_stmt(e, id)))
            }
            StmtKind::Block(ss) => ss.iter().find_map(|s| in_stmt(s, id)),
            _ => None,
        }
    }
    program.functions.iter().flat_map(|f| f.body.iter()).find_map(|s| in_stmt(s, loop_id))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EvKind {
    Ref,
    Set,
    Define,
}

/// One variable event inside a loop body, in execution order.
#[derive(Debug)]
struct Event<'a> {
    var: &'a str,
    kind: EvKind,
    /// 0 when the enclosing statement runs exactly once per iteration.
    depth: usize,
    /// `None` for a whole-array use (call argument) or a scalar.
    subscripts: Option<&'a [Expr]>,
    /// Set by a compound assignment or by `v = ... v ...`.
    self_update: bool,
}

struct Collector<'a, 'b> {
    arrays: &'b HashSet<&'b str>,
    events: Vec<Event<'a>>,
    inner_counters: HashSet<&'a str>,
    has_return: bool,
}

impl<'a> Collector<'a, '_> {
    fn push(&mut self, var: &'a str, kind: EvKind, depth: usize, subscripts: Option<&'a [Expr]>) {
        self.events.push(Event { var, kind, depth, subscripts, self_update: false });
    }

    fn expr(&mut self, e: &'a Expr, depth: usize) {
        match &e.kind {
            ExprKind::Ident(v) => self.push(v, EvKind::Ref, depth, None),
            ExprKind::Int(_) | ExprKind::Float(_) => {}
            ExprKind::Index { base, indices } => {
                for i in indices {
                    self.expr(i, depth);
                }
                self.push(base, EvKind::Ref, depth, Some(indices));
            }
            ExprKind::Call { args, .. } => self.args(args, depth),
            ExprKind::Unary { operand, .. } => self.expr(operand, depth),
            ExprKind::Binary { lhs, rhs, .. } => {
                self.expr(lhs, depth);
                self.expr(rhs, depth);
            }
        }
    }

    fn args(&mut self, args: &'a [Expr], depth: usize) {
        for a in args {
            match &a.kind {
                ExprKind::Ident(v) if self.arrays.contains(v.as_str()) => {
                    self.push(v, EvKind::Ref, depth, None);
                    self.push(v, EvKind::Set, depth, None);
                }
                _ => self.expr(a, depth),
            }
        }
    }

    fn assign(&mut self, a: &'a Assign, depth: usize) {
        for i in &a.target.indices {
            self.expr(i, depth);
        }
        let reads_self =
            a.op != AssignOp::Assign || (a.target.indices.is_empty() && mentions(&a.value, &a.target.name));
        if a.op != AssignOp::Assign {
            let subs = (!a.target.indices.is_empty()).then_some(a.target.indices.as_slice());
            self.push(&a.target.name, EvKind::Ref, depth, subs);
        }
        self.expr(&a.value, depth);
        let subs = (!a.target.indices.is_empty()).then_some(a.target.indices.as_slice());
        self.events.push(Event {
            var: &a.target.name,
            kind: EvKind::Set,
            depth,
            subscripts: subs,
            self_update: reads_self,
        });
    }

    fn stmt(&mut self, s: &'a Stmt, depth: usize) {
        match &s.kind {
            StmtKind::Decl(ds) => {
                for d in ds {
                    for e in d.dims.iter().flatten() {
                        self.expr(e, depth);
                    }
                    if let Some(e) = &d.init {
                        self.expr(e, depth);
                    }
                    self.push(&d.name, EvKind::Define, depth, None);
                }
            }
            StmtKind::Assign(a) => self.assign(a, depth),
            StmtKind::If { cond, then_branch, else_branch } => {
                self.expr(cond, depth);
                self.stmt(then_branch, depth + 1);
                if let Some(e) = else_branch {
                    self.stmt(e, depth + 1);
                }
            }
            StmtKind::For(f) => {
                match &f.init {
                    Some(ForInit::Decl(d)) => {
                        if let Some(e) = &d.init {
                            self.expr(e, depth);
                        }
                        self.push(&d.name, EvKind::Define, depth, None);
                        self.inner_counters.insert(&d.name);
                    }
                    Some(ForInit::Assign(a)) => {
                        self.assign(a, depth);
                        if a.target.indices.is_empty() {
                            self.inner_counters.insert(&a.target.name);
                        }
                    }
                    None => {}
                }
                if let Some(c) = &f.cond {
                    self.expr(c, depth + 1);
                }
                self.stmt(&f.body, depth + 1);
                if let Some(st) = &f.step {
                    self.assign(st, depth + 1);
                }
            }
            StmtKind::While { cond, body, .. } => {
                self.expr(cond, depth + 1);
                self.stmt(body, depth + 1);
            }
            StmtKind::DoWhile { body, cond, .. } => {
                self.stmt(body, depth + 1);
                self.expr(cond, depth + 1);
            }
            StmtKind::Call { args, .. } => self.args(args, depth),
            StmtKind::Return(e) => {
                self.has_return = true;
                if let Some(e) = e {
                    self.expr(e, depth);
                }
            }
            StmtKind::Block(ss) => {
                for s in ss {
                    self.stmt(s, depth);
                }
            }
            StmtKind::Empty => {}
        }
    }
}

fn mentions(e: &Expr, var: &str) -> bool {
    match &e.kind {
        ExprKind::Ident(v) => v == var,
        ExprKind::Int(_) | ExprKind::Float(_) => false,
        ExprKind::Index { base, indices } => base == var || indices.iter().any(|i| mentions(i, var)),
        ExprKind::Call { args, .. } => args.iter().any(|a| mentions(a, var)),
        ExprKind::Unary { operand, .. } => mentions(operand, var),
        ExprKind::Binary { lhs, rhs, .. } => mentions(lhs, var) || mentions(rhs, var),
    }
}

/// `counter + c` as `Some(c)`.
fn counter_offset(e: &Expr, counter: &str) -> Option<i64> {
    let is_counter = |e: &Expr| matches!(&e.kind, ExprKind::Ident(v) if v == counter);
    match &e.kind {
        ExprKind::Ident(v) if v == counter => Some(0),
        ExprKind::Binary { op: BinOp::Add, lhs, rhs } => match (&lhs.kind, &rhs.kind) {
            (_, ExprKind::Int(c)) if is_counter(lhs) => Some(*c),
            (ExprKind::Int(c), _) if is_counter(rhs) => Some(*c),
            _ => None,
        },
        ExprKind::Binary { op: BinOp::Sub, lhs, rhs } => match &rhs.kind {
            ExprKind::Int(c) if is_counter(lhs) => Some(-*c),
            _ => None,
        },
        _ => None,
    }
}

fn builtin_reason(f: &ForLoop, arrays: &HashSet<&str>) -> VerdictReason {
    use VerdictReason::*;
    if !is_canonical(f) {
        return NotCanonicalFor;
    }
    let counter = match &f.init {
        Some(ForInit::Decl(d)) => d.name.as_str(),
        Some(ForInit::Assign(a)) => a.target.name.as_str(),
        None => unreachable!("canonical loops have an initializer"),
    };
    let mut c = Collector { arrays, events: Vec::new(), inner_counters: HashSet::new(), has_return: false };
    c.stmt(&f.body, 0);
    if c.has_return {
        return NotCanonicalFor;
    }

    // The trip count must be fixed on entry.
    let mut bound_vars = Vec::new();
    if let Some(Expr { kind: ExprKind::Binary { rhs, .. }, .. }) = &f.cond {
        collect_idents(rhs, &mut bound_vars);
    }
    let writes_any = |v: &str| c.events.iter().any(|e| e.var == v && e.kind == EvKind::Set);
    if writes_any(counter) || bound_vars.iter().any(|v| writes_any(v)) {
        return NotCanonicalFor;
    }

    let defined_inside: HashSet<&str> = c.events.iter().filter(|e| e.kind == EvKind::Define).map(|e| e.var).collect();

    let mut written: Vec<&str> = Vec::new();
    for e in &c.events {
        if e.kind == EvKind::Set && !written.contains(&e.var) {
            written.push(e.var);
        }
    }

    let mut reason = Eligible;
    for v in written {
        if defined_inside.contains(v) || c.inner_counters.contains(v) {
            continue;
        }
        let evs: Vec<&Event> = c.events.iter().filter(|e| e.var == v).collect();
        let verdict = if arrays.contains(v) { array_verdict(&evs, counter) } else { scalar_verdict(&evs) };
        // a dependence outranks a reduction when both are present
        match verdict {
            LoopCarriedDependence => return LoopCarriedDependence,
            ScalarReduction => reason = ScalarReduction,
            _ => {}
        }
    }
    reason
}

fn collect_idents(e: &Expr, out: &mut Vec<String>) {
    match &e.kind {
        ExprKind::Ident(v) => out.push(v.clone()),
        ExprKind::Int(_) | ExprKind::Float(_) => {}
        ExprKind::Index { base, indices } => {
            out.push(base.clone());
            indices.iter().for_each(|i| collect_idents(i, out));
        }
        ExprKind::Call { args, .. } => args.iter().for_each(|a| collect_idents(a, out)),
        ExprKind::Unary { operand, .. } => collect_idents(operand, out),
        ExprKind::Binary { lhs, rhs, .. } => {
            collect_idents(lhs, out);
            collect_idents(rhs, out);
        }
    }
}

fn scalar_verdict(evs: &[&Event]) -> VerdictReason {
    if evs.iter().any(|e| e.kind == EvKind::Set && e.self_update) {
        return VerdictReason::ScalarReduction;
    }
    // privatizable only if every iteration writes it before any read
    match evs.first() {
        Some(e) if e.kind == EvKind::Set && e.depth == 0 => VerdictReason::Eligible,
        _ => VerdictReason::LoopCarriedDependence,
    }
}

fn array_verdict(evs: &[&Event], counter: &str) -> VerdictReason {
    // (dimension, offset) of the counter in every write must agree
    let mut slot: Option<(usize, i64)> = None;
    for e in evs.iter().filter(|e| e.kind == EvKind::Set) {
        let Some(subs) = e.subscripts else {
            return VerdictReason::LoopCarriedDependence;
        };
        let found = subs.iter().enumerate().find_map(|(d, s)| counter_offset(s, counter).map(|c| (d, c)));
        match (found, slot) {
            (None, _) => return VerdictReason::LoopCarriedDependence,
            (Some(f), None) => slot = Some(f),
            (Some(f), Some(s)) if f != s => return VerdictReason::LoopCarriedDependence,
            _ => {}
        }
    }
    let (dim, offset) = slot.expect("array is written at least once");
    for e in evs.iter().filter(|e| e.kind == EvKind::Ref) {
        let same_cell = e
            .subscripts
            .and_then(|subs| subs.get(dim))
            .and_then(|s| counter_offset(s, counter))
            .is_some_and(|c| c == offset);
        if !same_cell {
            return VerdictReason::LoopCarriedDependence;
        }
    }
    VerdictReason::Eligible
}
