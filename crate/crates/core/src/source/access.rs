//! Define / Set / Ref classification of every variable occurrence.

use std::collections::HashMap;

use serde::Serialize;

use super::ast::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AccessKind {
    Define,
    Set,
    Ref,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VarAccess {
    pub var: String,
    pub is_array: bool,
    pub kind: AccessKind,
    pub pos: SourcePos,
    /// Byte offset of the occurrence in the source text.
    pub offset: usize,
    /// Enclosing loops, outermost first.
    pub loop_path: Vec<LoopId>,
    pub function: String,
}

impl VarAccess {
    pub fn within(&self, loop_id: LoopId) -> bool {
        self.loop_path.contains(&loop_id)
    }
}

pub fn extract_accesses(program: &Program) -> Vec<VarAccess> {
    let mut out = Vec::new();
    for f in &program.functions {
        let mut w =
            Walker { program, function: &f.name, scopes: vec![HashMap::new()], loops: Vec::new(), out: &mut out };
        for p in &f.params {
            w.decl(p);
        }
        w.scopes.push(HashMap::new());
        for s in &f.body {
            w.stmt(s);
        }
    }
    out
}

struct Walker<'a> {
    program: &'a Program,
    function: &'a str,
    scopes: Vec<HashMap<String, bool>>,
    loops: Vec<LoopId>,
    out: &'a mut Vec<VarAccess>,
}

impl Walker<'_> {
    fn is_array(&self, name: &str) -> bool {
        self.scopes.iter().rev().find_map(|s| s.get(name).copied()).unwrap_or(false)
    }

    fn record(&mut self, var: &str, kind: AccessKind, at: Span) {
        self.out.push(VarAccess {
            var: var.to_string(),
            is_array: self.is_array(var),
            kind,
            pos: self.program.pos_of(at.start),
            offset: at.start,
            loop_path: self.loops.clone(),
            function: self.function.to_string(),
        });
    }

    fn decl(&mut self, d: &Decl) {
        self.scopes.last_mut().unwrap().insert(d.name.clone(), d.is_array());
        self.record(&d.name, AccessKind::Define, d.name_span);
        for e in d.dims.iter().flatten() {
            self.expr(e);
        }
        if let Some(e) = &d.init {
            self.expr(e);
        }
    }

    fn assign(&mut self, a: &Assign) {
        let at = a.target.span;
        self.record(&a.target.name, AccessKind::Set, at);
        if a.op.is_compound() {
            self.record(&a.target.name, AccessKind::Ref, at);
        }
        for e in &a.target.indices {
            self.expr(e);
        }
        self.expr(&a.value);
    }

    fn scoped(&mut self, s: &Stmt) {
        self.scopes.push(HashMap::new());
        self.stmt(s);
        self.scopes.pop();
    }

    fn stmt(&mut self, s: &Stmt) {
        match &s.kind {
            StmtKind::Decl(ds) => {
                for d in ds {
                    self.decl(d);
                }
            }
            StmtKind::Assign(a) => self.assign(a),
            StmtKind::If { cond, then_branch, else_branch } => {
                self.expr(cond);
                self.scoped(then_branch);
                if let Some(e) = else_branch {
                    self.scoped(e);
                }
            }
            StmtKind::For(f) => {
                self.loops.push(f.loop_id);
                self.scopes.push(HashMap::new());
                match &f.init {
                    Some(ForInit::Decl(d)) => self.decl(d),
                    Some(ForInit::Assign(a)) => self.assign(a),
                    None => {}
                }
                if let Some(c) = &f.cond {
                    self.expr(c);
                }
                if let Some(st) = &f.step {
                    self.assign(st);
                }
                self.scoped(&f.body);
                self.scopes.pop();
                self.loops.pop();
            }
            StmtKind::While { cond, body, loop_id } => {
                self.loops.push(*loop_id);
                self.expr(cond);
                self.scoped(body);
                self.loops.pop();
            }
            StmtKind::DoWhile { body, cond, loop_id } => {
                self.loops.push(*loop_id);
                self.scoped(body);
                self.expr(cond);
                self.loops.pop();
            }
            StmtKind::Call { args, .. } => self.call_args(args),
            StmtKind::Return(e) => {
                if let Some(e) = e {
                    self.expr(e);
                }
            }
            StmtKind::Block(stmts) => {
                self.scopes.push(HashMap::new());
                for s in stmts {
                    self.stmt(s);
                }
                self.scopes.pop();
            }
            StmtKind::Empty => {}
        }
    }

    // An array passed whole to a call may be read or written by the callee.
    fn call_args(&mut self, args: &[Expr]) {
        for a in args {
            match &a.kind {
                ExprKind::Ident(name) if self.is_array(name) => {
                    self.record(name, AccessKind::Ref, a.span);
                    self.record(name, AccessKind::Set, a.span);
                }
                _ => self.expr(a),
            }
        }
    }

    fn expr(&mut self, e: &Expr) {
        match &e.kind {
            ExprKind::Ident(name) => self.record(name, AccessKind::Ref, e.span),
            ExprKind::Int(_) | ExprKind::Float(_) => {}
            ExprKind::Index { base, indices } => {
                self.record(base, AccessKind::Ref, e.span);
                for i in indices {
                    self.expr(i);
                }
            }
            ExprKind::Call { args, .. } => self.call_args(args),
            ExprKind::Unary { operand, .. } => self.expr(operand),
            ExprKind::Binary { lhs, rhs, .. } => {
                self.expr(lhs);
                self.expr(rhs);
            }
        }
    }
}
