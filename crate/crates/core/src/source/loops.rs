//! Loop discovery and nesting.

use serde::Serialize;

use super::ast::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LoopKind {
    For,
    While,
    #[serde(rename = "dowhile")]
    DoWhile,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LoopNode {
    pub loop_id: LoopId,
    pub kind: LoopKind,
    pub parent: Option<LoopId>,
    pub children: Vec<LoopId>,
    pub function: String,
    pub header_pos: SourcePos,
    #[serde(skip)]
    pub span: Span,
    /// Counted loop: `i = e; i < e | i <= e; i++ | ++i | i += c`.
    pub canonical: bool,
    /// Variable assigned by a for-loop initializer, canonical or not.
    pub counter: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LoopTree {
    pub nodes: Vec<LoopNode>,
}

impl LoopTree {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn get(&self, id: LoopId) -> Option<&LoopNode> {
        self.nodes.get(id)
    }

    pub fn node(&self, id: LoopId) -> &LoopNode {
        &self.nodes[id]
    }

    /// Proper ancestors of `id`, nearest first.
    pub fn ancestors(&self, id: LoopId) -> impl Iterator<Item = LoopId> + '_ {
        std::iter::successors(self.nodes[id].parent, move |p| self.nodes[*p].parent)
    }

    /// Ancestor chain from outermost loop down to `id` itself.
    pub fn path_to(&self, id: LoopId) -> Vec<LoopId> {
        let mut path: Vec<LoopId> = self.ancestors(id).collect();
        path.reverse();
        path.push(id);
        path
    }

    /// True when `anc` is a proper ancestor of `desc`.
    pub fn is_ancestor(&self, anc: LoopId, desc: LoopId) -> bool {
        self.ancestors(desc).any(|a| a == anc)
    }

    /// `id` and every loop nested inside it, in id order.
    pub fn subtree(&self, id: LoopId) -> Vec<LoopId> {
        let mut out = vec![id];
        let mut i = 0;
        while i < out.len() {
            out.extend(self.nodes[out[i]].children.iter().copied());
            i += 1;
        }
        out.sort_unstable();
        out
    }

    pub fn roots(&self) -> impl Iterator<Item = &LoopNode> {
        self.nodes.iter().filter(|n| n.parent.is_none())
    }
}

pub fn build_loop_tree(program: &Program) -> LoopTree {
    let mut nodes: Vec<LoopNode> = Vec::new();
    for f in &program.functions {
        let mut stack = Vec::new();
        for s in &f.body {
            visit(program, &f.name, s, &mut stack, &mut nodes);
        }
    }
    nodes.sort_by_key(|n| n.loop_id);
    debug_assert!(nodes.iter().enumerate().all(|(i, n)| n.loop_id == i));
    LoopTree { nodes }
}

fn visit(program: &Program, function: &str, stmt: &Stmt, stack: &mut Vec<LoopId>, nodes: &mut Vec<LoopNode>) {
    let (kind, canonical, counter, bodies): (LoopKind, bool, Option<String>, Vec<&Stmt>) = match &stmt.kind {
        StmtKind::For(f) => (LoopKind::For, is_canonical(f), init_var(f).map(str::to_string), vec![&f.body]),
        StmtKind::While { body, .. } => (LoopKind::While, false, None, vec![body]),
        StmtKind::DoWhile { body, .. } => (LoopKind::DoWhile, false, None, vec![body]),
        StmtKind::If { then_branch, else_branch, .. } => {
            visit(program, function, then_branch, stack, nodes);
            if let Some(e) = else_branch {
                visit(program, function, e, stack, nodes);
            }
            return;
        }
        StmtKind::Block(stmts) => {
            for s in stmts {
                visit(program, function, s, stack, nodes);
            }
            return;
        }
        _ => return,
    };
    let id = stmt.kind.loop_id().expect("loop statement carries an id");
    let parent = stack.last().copied();
    if let Some(p) = parent {
        let pnode = nodes.iter_mut().find(|n| n.loop_id == p).expect("parent visited first");
        pnode.children.push(id);
    }
    nodes.push(LoopNode {
        loop_id: id,
        kind,
        parent,
        children: Vec::new(),
        function: function.to_string(),
        header_pos: program.pos_of(stmt.span.start),
        span: stmt.span,
        canonical,
        counter,
    });
    stack.push(id);
    for b in bodies {
        visit(program, function, b, stack, nodes);
    }
    stack.pop();
}

fn init_var(f: &ForLoop) -> Option<&str> {
    match &f.init {
        Some(ForInit::Decl(d)) if d.init.is_some() && !d.is_array() => Some(&d.name),
        Some(ForInit::Assign(a)) if a.target.indices.is_empty() => Some(&a.target.name),
        _ => None,
    }
}

pub(crate) fn is_canonical(f: &ForLoop) -> bool {
    let counter = match &f.init {
        Some(ForInit::Decl(d)) if d.init.is_some() && !d.is_array() => &d.name,
        Some(ForInit::Assign(a)) if a.op == AssignOp::Assign && a.target.indices.is_empty() => &a.target.name,
        _ => return false,
    };
    let cond_ok = matches!(
        &f.cond,
        Some(Expr { kind: ExprKind::Binary { op: BinOp::Lt | BinOp::Le, lhs, .. }, .. })
            if matches!(&lhs.kind, ExprKind::Ident(n) if n == counter)
    );
    let step_ok = matches!(
        &f.step,
        Some(Assign { target, op: AssignOp::Add, value: Expr { kind: ExprKind::Int(c), .. }, .. })
            if target.indices.is_empty() && target.name == *counter && *c > 0
    );
    cond_ok && step_ok
}
