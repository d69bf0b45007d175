//! Directive insertion.
//!
//! Each annotated loop gets up to two lines directly above it, indented like
//! the loop header: a `#pragma acc data` line carrying the clauses in the
//! fixed order `copy`, `copyin`, `copyout`, then `#pragma acc kernels` if the
//! loop itself is offloaded. Nothing else in the text changes.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::analysis::GenomeMap;
use crate::ga::Genome;
use crate::source::{LoopId, LoopTree, Program};
use crate::transfer::{Clause, TransferPlan};

pub const KERNELS_LINE: &str = "#pragma acc kernels";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InsertedLine {
    /// 1-based line number in the annotated text.
    pub line_no: usize,
    pub content: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnnotatedSource {
    pub text: String,
    pub inserted_lines: Vec<InsertedLine>,
}

impl AnnotatedSource {
    /// The text with every inserted line removed.
    pub fn strip_inserted(&self) -> String {
        let drop: BTreeSet<usize> = self.inserted_lines.iter().map(|l| l.line_no).collect();
        self.text.split_inclusive('\n').enumerate().filter(|(i, _)| !drop.contains(&(i + 1))).map(|(_, l)| l).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EmitError {
    #[error("directive targets loop {0}, which is not in the loop tree")]
    PlanMismatch(LoopId),
    #[error("loop {0} does not start its own line; a directive cannot be placed before it")]
    LoopNotAtLineStart(LoopId),
    #[error("genome has {got} genes but the genome map has {want}")]
    GenomeLength { got: usize, want: usize },
}

pub fn emit_annotated(
    program: &Program,
    tree: &LoopTree,
    genome: &Genome,
    map: &GenomeMap,
    plan: &TransferPlan,
) -> Result<AnnotatedSource, EmitError> {
    if genome.len() != map.len() {
        return Err(EmitError::GenomeLength { got: genome.len(), want: map.len() });
    }
    let mut per_target: BTreeMap<LoopId, BTreeMap<Clause, BTreeSet<&str>>> = BTreeMap::new();
    for d in &plan.directives {
        if tree.get(d.target_loop).is_none() {
            return Err(EmitError::PlanMismatch(d.target_loop));
        }
        per_target
            .entry(d.target_loop)
            .or_default()
            .entry(d.clause)
            .or_default()
            .extend(d.vars.iter().map(String::as_str));
    }
    let selected: BTreeSet<LoopId> = genome.selected_loops(map).into_iter().collect();

    let mut lines: BTreeMap<LoopId, Vec<String>> = BTreeMap::new();
    for (target, clauses) in per_target {
        lines.entry(target).or_default().push(data_line(clauses));
    }
    for id in selected {
        lines.entry(id).or_default().push(KERNELS_LINE.to_string());
    }
    insert_before_loops(program, tree, &lines)
}

/// Directives from different regions can meet at one target; a variable
/// moving both ways there is written once, as `copy`.
fn data_line(mut clauses: BTreeMap<Clause, BTreeSet<&str>>) -> String {
    let copyin = clauses.remove(&Clause::Copyin).unwrap_or_default();
    let copyout = clauses.remove(&Clause::Copyout).unwrap_or_default();
    let mut copy = clauses.remove(&Clause::Copy).unwrap_or_default();
    copy.extend(copyin.intersection(&copyout).copied());
    let copyin: BTreeSet<&str> = copyin.difference(&copy).copied().collect();
    let copyout: BTreeSet<&str> = copyout.difference(&copy).copied().collect();

    let mut line = String::from("#pragma acc data");
    for (name, vars) in [("copy", copy), ("copyin", copyin), ("copyout", copyout)] {
        if !vars.is_empty() {
            let list: Vec<&str> = vars.into_iter().collect();
            line.push_str(&format!(" {name}({})", list.join(",")));
        }
    }
    line
}

/// Insert `lines[loop]` above each loop, in order, with the loop's indentation.
pub fn insert_before_loops(
    program: &Program,
    tree: &LoopTree,
    lines: &BTreeMap<LoopId, Vec<String>>,
) -> Result<AnnotatedSource, EmitError> {
    let text = &program.source_text;
    let mut sites: Vec<(usize, usize, &str, &Vec<String>)> = Vec::new();
    for (&id, content) in lines {
        let node = tree.get(id).ok_or(EmitError::PlanMismatch(id))?;
        let at = node.span.start;
        let line_start = program.line_start(at);
        let indent = &text[line_start..at];
        if !indent.chars().all(|c| c == ' ' || c == '\t') {
            return Err(EmitError::LoopNotAtLineStart(id));
        }
        sites.push((line_start, node.header_pos.line as usize, indent, content));
    }
    sites.sort_by_key(|s| s.0);

    let mut out = String::with_capacity(text.len() + 64 * sites.len());
    let mut inserted = Vec::new();
    let mut copied = 0;
    for (line_start, orig_line, indent, content) in sites {
        out.push_str(&text[copied..line_start]);
        copied = line_start;
        for l in content {
            inserted.push(InsertedLine { line_no: orig_line + inserted.len(), content: format!("{indent}{l}") });
            out.push_str(indent);
            out.push_str(l);
            out.push('\n');
        }
    }
    out.push_str(&text[copied..]);
    Ok(AnnotatedSource { text: out, inserted_lines: inserted })
}
