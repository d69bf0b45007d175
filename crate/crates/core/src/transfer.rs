//! Data-transfer planning for one offload pattern.
//!
//! For every offloaded region `G` and every variable `v` it touches:
//!
//! * host-to-device (`copyin`) is needed when the host side of the function
//!   sets or defines `v` and `G` reads it;
//! * device-to-host (`copyout`) is needed when `G` sets `v` and the host
//!   side reads, sets or defines it.
//!
//! "Host side" means outside every offloaded region of the pattern. Each
//! directive is placed before the outermost loop of the unbroken chain
//! `G, parent(G), ...` whose subtree holds no host-side blocker for `v`
//! (sets/defines for `copyin`; any access for `copyout`). A variable needing
//! both directions is emitted once as `copy` at the inner of the two targets.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::analysis::{GenomeMap, Profile};
use crate::ga::Genome;
use crate::source::{AccessKind, LoopId, LoopTree, Program, SourcePos, VarAccess};

/// Ordered as emitted: `copy`, `copyin`, `copyout`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Clause {
    Copy,
    Copyin,
    Copyout,
}

impl Clause {
    pub fn as_str(self) -> &'static str {
        match self {
            Clause::Copy => "copy",
            Clause::Copyin => "copyin",
            Clause::Copyout => "copyout",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct DataDirective {
    /// The directive line goes immediately before this loop.
    pub target_loop: LoopId,
    pub clause: Clause,
    /// Sorted, duplicate-free, non-empty.
    pub vars: Vec<String>,
    #[serde(skip)]
    pub origin_region: LoopId,
}

/// Why a variable got the clause it did.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransferNote {
    pub var: String,
    pub origin_region: LoopId,
    pub clause: Clause,
    pub target_loop: LoopId,
    /// First host-side access that made the transfer necessary.
    pub trigger: SourcePos,
    /// Host-side access that stopped hoisting one level further up, if any.
    pub blocked_by: Option<SourcePos>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct TransferPlan {
    pub directives: Vec<DataDirective>,
    pub notes: Vec<TransferNote>,
}

impl TransferPlan {
    /// Same clauses with every directive moved back to its own region loop.
    pub fn unhoisted(&self) -> TransferPlan {
        let mut directives: Vec<DataDirective> =
            self.directives.iter().map(|d| DataDirective { target_loop: d.origin_region, ..d.clone() }).collect();
        sort_directives(&mut directives);
        TransferPlan { directives, notes: self.notes.clone() }
    }

    /// `{"directives":[{"target_loop":3,"clause":"copyin","vars":["b","c"]}]}`
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Dump<'a> {
            directives: &'a [DataDirective],
        }
        serde_json::to_string(&Dump { directives: &self.directives }).expect("plan serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PlanError {
    #[error("invalid genome: offloaded loops {outer} and {inner} are nested")]
    InvalidGenome { outer: LoopId, inner: LoopId },
    #[error("genome has {got} genes but the genome map has {want}")]
    GenomeLength { got: usize, want: usize },
}

/// First pair of selected loops in ancestor/descendant relation, if any.
pub fn nested_selection(tree: &LoopTree, selected: &[LoopId]) -> Option<(LoopId, LoopId)> {
    for &inner in selected {
        if let Some(outer) = tree.ancestors(inner).find(|a| selected.contains(a)) {
            return Some((outer, inner));
        }
    }
    None
}

pub fn plan_transfers(
    _program: &Program,
    tree: &LoopTree,
    accesses: &[VarAccess],
    genome: &Genome,
    map: &GenomeMap,
) -> Result<TransferPlan, PlanError> {
    if genome.len() != map.len() {
        return Err(PlanError::GenomeLength { got: genome.len(), want: map.len() });
    }
    let selected = genome.selected_loops(map);
    if let Some((outer, inner)) = nested_selection(tree, &selected) {
        return Err(PlanError::InvalidGenome { outer, inner });
    }
    let on_host = |a: &VarAccess| !selected.iter().any(|&g| a.within(g));

    let mut grouped: BTreeMap<(LoopId, Clause, LoopId), BTreeSet<String>> = BTreeMap::new();
    let mut notes = Vec::new();
    for &region in &selected {
        let node = tree.node(region);
        let in_fn: Vec<&VarAccess> = accesses.iter().filter(|a| a.function == node.function).collect();
        let counters: BTreeSet<&str> =
            tree.subtree(region).iter().filter_map(|&l| tree.node(l).counter.as_deref()).collect();
        let inside: Vec<&VarAccess> = in_fn.iter().copied().filter(|a| a.within(region)).collect();
        let local: BTreeSet<&str> =
            inside.iter().filter(|a| a.kind == AccessKind::Define).map(|a| a.var.as_str()).collect();
        let vars: BTreeSet<&str> =
            inside.iter().map(|a| a.var.as_str()).filter(|v| !counters.contains(v) && !local.contains(v)).collect();

        for v in vars {
            let host: Vec<&VarAccess> = in_fn.iter().copied().filter(|a| a.var == v && on_host(a)).collect();
            let read_inside = inside.iter().any(|a| a.var == v && a.kind == AccessKind::Ref);
            let set_inside = inside.iter().any(|a| a.var == v && a.kind == AccessKind::Set);

            let writes = |a: &&VarAccess| matches!(a.kind, AccessKind::Set | AccessKind::Define);
            let any = |_: &&VarAccess| true;
            let copyin = read_inside
                .then(|| host.iter().find(|a| writes(a)))
                .flatten()
                .map(|trigger| (trigger, hoist(tree, region, &host, writes)));
            let copyout = set_inside
                .then(|| host.iter().find(|a| any(a)))
                .flatten()
                .map(|trigger| (trigger, hoist(tree, region, &host, any)));

            let mut add = |clause, trigger: &VarAccess, (target, blocked_by): (LoopId, Option<SourcePos>)| {
                grouped.entry((target, clause, region)).or_default().insert(v.to_string());
                notes.push(TransferNote {
                    var: v.to_string(),
                    origin_region: region,
                    clause,
                    target_loop: target,
                    trigger: trigger.pos.clone(),
                    blocked_by,
                });
            };
            match (copyin, copyout) {
                (Some((tin, hin)), Some((_, hout))) => {
                    // both targets lie on the chain above the region; keep the deeper one
                    let inner = if tree.is_ancestor(hin.0, hout.0) { hout } else { hin };
                    add(Clause::Copy, tin, inner);
                }
                (Some((t, h)), None) => add(Clause::Copyin, t, h),
                (None, Some((t, h))) => add(Clause::Copyout, t, h),
                (None, None) => {}
            }
        }
    }

    let mut directives: Vec<DataDirective> = grouped
        .into_iter()
        .map(|((target_loop, clause, origin_region), vars)| DataDirective {
            target_loop,
            clause,
            vars: vars.into_iter().collect(),
            origin_region,
        })
        .collect();
    sort_directives(&mut directives);
    Ok(TransferPlan { directives, notes })
}

/// Highest loop of the unbroken chain above `region` free of `blocks` accesses.
fn hoist(
    tree: &LoopTree,
    region: LoopId,
    host: &[&VarAccess],
    blocks: impl Fn(&&VarAccess) -> bool,
) -> (LoopId, Option<SourcePos>) {
    let mut target = region;
    for anc in tree.ancestors(region) {
        if let Some(b) = host.iter().find(|a| blocks(a) && a.within(anc)) {
            return (target, Some(b.pos.clone()));
        }
        target = anc;
    }
    (target, None)
}

fn sort_directives(ds: &mut [DataDirective]) {
    ds.sort_by(|a, b| {
        (a.target_loop, a.clause, &a.vars[0], a.origin_region).cmp(&(
            b.target_loop,
            b.clause,
            &b.vars[0],
            b.origin_region,
        ))
    });
}

/// A directive placed before loop `L` runs once per entry into `L`.
pub fn directive_exec_counts(plan: &TransferPlan, _tree: &LoopTree, profile: &Profile) -> BTreeMap<DataDirective, u64> {
    plan.directives.iter().map(|d| (d.clone(), profile.entry_count(d.target_loop))).collect()
}
