use std::sync::Arc;

use serde::Serialize;

/// Identifier of a loop statement, assigned in pre-order over the program text.
pub type LoopId = usize;

/// Half-open byte range into the program's source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn to(self, other: Span) -> Span {
        Span::new(self.start.min(other.start), self.end.max(other.end))
    }

    pub fn contains(&self, other: &Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }
}

/// 1-based line/column position in a named source file.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SourcePos {
    pub file: Arc<str>,
    pub line: u32,
    pub col: u32,
}

impl std::fmt::Display for SourcePos {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarType {
    Void,
    Int,
    Float,
    Double,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Program {
    pub file: Arc<str>,
    pub functions: Vec<Function>,
    pub source_text: String,
    pub(crate) line_starts: Vec<usize>,
}

impl Program {
    /// Line/column of a byte offset into `source_text`.
    pub fn pos_of(&self, offset: usize) -> SourcePos {
        let line = match self.line_starts.binary_search(&offset) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        let start = self.line_starts[line];
        let col = self.source_text[start..offset].chars().count() + 1;
        SourcePos { file: self.file.clone(), line: line as u32 + 1, col: col as u32 }
    }

    /// Byte offset of the start of the line containing `offset`.
    pub fn line_start(&self, offset: usize) -> usize {
        match self.line_starts.binary_search(&offset) {
            Ok(i) => self.line_starts[i],
            Err(i) => self.line_starts[i - 1],
        }
    }

    pub fn function(&self, name: &str) -> Option<&Function> {
        self.functions.iter().find(|f| f.name == name)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Function {
    pub name: String,
    pub return_type: ScalarType,
    pub params: Vec<Decl>,
    pub body: Vec<Stmt>,
    pub span: Span,
}

/// A declared variable: scalar when `dims` is empty, otherwise a 1-D or 2-D array.
/// Array parameters may leave a dimension unsized (`a[]`).
#[derive(Debug, Clone, PartialEq)]
pub struct Decl {
    pub name: String,
    pub ty: ScalarType,
    pub dims: Vec<Option<Expr>>,
    pub init: Option<Expr>,
    pub span: Span,
    pub name_span: Span,
}

impl Decl {
    pub fn is_array(&self) -> bool {
        !self.dims.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Stmt {
    pub kind: StmtKind,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StmtKind {
    Decl(Vec<Decl>),
    Assign(Assign),
    If { cond: Expr, then_branch: Box<Stmt>, else_branch: Option<Box<Stmt>> },
    For(Box<ForLoop>),
    While { cond: Expr, body: Box<Stmt>, loop_id: LoopId },
    DoWhile { body: Box<Stmt>, cond: Expr, loop_id: LoopId },
    Call { name: String, args: Vec<Expr> },
    Return(Option<Expr>),
    Block(Vec<Stmt>),
    Empty,
}

impl StmtKind {
    pub fn loop_id(&self) -> Option<LoopId> {
        match self {
            StmtKind::For(f) => Some(f.loop_id),
            StmtKind::While { loop_id, .. } | StmtKind::DoWhile { loop_id, .. } => Some(*loop_id),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ForLoop {
    pub init: Option<ForInit>,
    pub cond: Option<Expr>,
    pub step: Option<Assign>,
    pub body: Box<Stmt>,
    pub loop_id: LoopId,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ForInit {
    Decl(Decl),
    Assign(Assign),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssignOp {
    Assign,
    Add,
    Sub,
    Mul,
    Div,
}

impl AssignOp {
    pub fn is_compound(self) -> bool {
        self != AssignOp::Assign
    }
}

/// `target op value`. Increments and decrements are stored as `+= 1` / `-= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Assign {
    pub target: LValue,
    pub op: AssignOp,
    pub value: Expr,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LValue {
    pub name: String,
    pub indices: Vec<Expr>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Ident(String),
    Int(i64),
    Float(f64),
    Index { base: String, indices: Vec<Expr> },
    Call { name: String, args: Vec<Expr> },
    Unary { op: UnaryOp, operand: Box<Expr> },
    Binary { op: BinOp, lhs: Box<Expr>, rhs: Box<Expr> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryOp {
    Neg,
    Plus,
    Not,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Rem,
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
    And,
    Or,
}
