use std::collections::HashSet;

use super::ast::*;
use super::lexer::{Tok, Token};

pub(crate) struct ParseFailure {
    pub offset: usize,
    pub message: String,
}

type PResult<T> = Result<T, ParseFailure>;

pub(crate) struct Parser {
    toks: Vec<Token>,
    at: usize,
    next_loop: LoopId,
    scopes: Vec<HashSet<String>>,
}

impl Parser {
    pub(crate) fn new(toks: Vec<Token>) -> Self {
        Parser { toks, at: 0, next_loop: 0, scopes: Vec::new() }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    fn peek_at(&self, n: usize) -> &Tok {
        let i = (self.at + n).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn span(&self) -> Span {
        self.toks[self.at].span
    }

    fn prev_span(&self) -> Span {
        self.toks[self.at.saturating_sub(1)].span
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(ParseFailure { offset: self.span().start, message: message.into() })
    }

    fn unexpected<T>(&self, wanted: &str) -> PResult<T> {
        if let Tok::Unsupported(k) = self.peek() {
            return self.fail(format!("unsupported construct `{k}`"));
        }
        self.fail(format!("expected {wanted}, found {}", self.peek().describe()))
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok, wanted: &str) -> PResult<Span> {
        if *self.peek() == tok {
            Ok(self.bump().span)
        } else {
            self.unexpected(wanted)
        }
    }

    fn ident(&mut self) -> PResult<(String, Span)> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                let sp = self.bump().span;
                Ok((name, sp))
            }
            _ => self.unexpected("identifier"),
        }
    }

    fn type_kw(&self) -> Option<ScalarType> {
        match self.peek() {
            Tok::KwInt => Some(ScalarType::Int),
            Tok::KwFloat => Some(ScalarType::Float),
            Tok::KwDouble => Some(ScalarType::Double),
            Tok::KwVoid => Some(ScalarType::Void),
            _ => None,
        }
    }

    fn declare(&mut self, name: &str, at: Span) -> PResult<()> {
        let scope = self.scopes.last_mut().expect("declaration outside any scope");
        if !scope.insert(name.to_string()) {
            return Err(ParseFailure {
                offset: at.start,
                message: format!("`{name}` is declared twice in the same scope"),
            });
        }
        Ok(())
    }

    pub(crate) fn translation_unit(&mut self) -> PResult<Vec<Function>> {
        let mut functions: Vec<Function> = Vec::new();
        while *self.peek() != Tok::Eof {
            let start = self.span();
            let f = self.function()?;
            if functions.iter().any(|g| g.name == f.name) {
                return Err(ParseFailure {
                    offset: start.start,
                    message: format!("function `{}` defined twice", f.name),
                });
            }
            functions.push(f);
        }
        Ok(functions)
    }

    fn function(&mut self) -> PResult<Function> {
        let start = self.span();
        let Some(ret) = self.type_kw() else {
            return self.unexpected("function definition");
        };
        self.bump();
        let (name, _) = self.ident()?;
        self.expect(Tok::LParen, "`(`")?;
        self.scopes.push(HashSet::new());
        let mut params = Vec::new();
        if *self.peek() == Tok::KwVoid && *self.peek_at(1) == Tok::RParen {
            self.bump();
        }
        if *self.peek() != Tok::RParen {
            loop {
                let p = self.param()?;
                if params.iter().any(|q: &Decl| q.name == p.name) {
                    return Err(ParseFailure {
                        offset: p.name_span.start,
                        message: format!("duplicate parameter `{}`", p.name),
                    });
                }
                self.declare(&p.name, p.name_span)?;
                params.push(p);
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
        }
        self.expect(Tok::RParen, "`)`")?;
        if *self.peek() != Tok::LBrace {
            return self.unexpected("`{`");
        }
        let body = self.block()?;
        self.scopes.pop();
        let StmtKind::Block(stmts) = body.kind else { unreachable!() };
        Ok(Function { name, return_type: ret, params, body: stmts, span: start.to(body.span) })
    }

    fn param(&mut self) -> PResult<Decl> {
        let start = self.span();
        let ty = match self.type_kw() {
            Some(ScalarType::Void) | None => return self.unexpected("parameter type"),
            Some(t) => t,
        };
        self.bump();
        let (name, name_span) = self.ident()?;
        let mut dims = Vec::new();
        while self.eat(&Tok::LBracket) {
            if self.eat(&Tok::RBracket) {
                dims.push(None);
            } else {
                dims.push(Some(self.expr()?));
                self.expect(Tok::RBracket, "`]`")?;
            }
        }
        if dims.len() > 2 {
            return Err(ParseFailure {
                offset: name_span.start,
                message: "arrays of more than two dimensions are not supported".into(),
            });
        }
        Ok(Decl { name, ty, dims, init: None, span: start.to(self.prev_span()), name_span })
    }

    fn block(&mut self) -> PResult<Stmt> {
        let start = self.expect(Tok::LBrace, "`{`")?;
        self.scopes.push(HashSet::new());
        let mut stmts = Vec::new();
        while *self.peek() != Tok::RBrace {
            if *self.peek() == Tok::Eof {
                return self.unexpected("`}`");
            }
            stmts.push(self.stmt()?);
        }
        let end = self.bump().span;
        self.scopes.pop();
        Ok(Stmt { kind: StmtKind::Block(stmts), span: start.to(end) })
    }

    /// Loop and `if` bodies get their own scope even when they are a single statement.
    fn scoped_stmt(&mut self) -> PResult<Stmt> {
        self.scopes.push(HashSet::new());
        let s = self.stmt();
        self.scopes.pop();
        s
    }

    fn stmt(&mut self) -> PResult<Stmt> {
        let start = self.span();
        match self.peek().clone() {
            Tok::LBrace => self.block(),
            Tok::Semi => {
                self.bump();
                Ok(Stmt { kind: StmtKind::Empty, span: start })
            }
            Tok::KwInt | Tok::KwFloat | Tok::KwDouble => {
                let decls = self.declaration()?;
                let end = self.expect(Tok::Semi, "`;`")?;
                Ok(Stmt { kind: StmtKind::Decl(decls), span: start.to(end) })
            }
            Tok::KwIf => {
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let cond = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                let then_branch = Box::new(self.scoped_stmt()?);
                let else_branch = if self.eat(&Tok::KwElse) { Some(Box::new(self.scoped_stmt()?)) } else { None };
                let end = self.prev_span();
                Ok(Stmt { kind: StmtKind::If { cond, then_branch, else_branch }, span: start.to(end) })
            }
            Tok::KwFor => self.for_loop(),
            Tok::KwWhile => {
                self.bump();
                let loop_id = self.fresh_loop();
                self.expect(Tok::LParen, "`(`")?;
                let cond = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                let body = Box::new(self.scoped_stmt()?);
                Ok(Stmt { kind: StmtKind::While { cond, body, loop_id }, span: start.to(self.prev_span()) })
            }
            Tok::KwDo => {
                self.bump();
                let loop_id = self.fresh_loop();
                let body = Box::new(self.scoped_stmt()?);
                self.expect(Tok::KwWhile, "`while`")?;
                self.expect(Tok::LParen, "`(`")?;
                let cond = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                let end = self.expect(Tok::Semi, "`;`")?;
                Ok(Stmt { kind: StmtKind::DoWhile { body, cond, loop_id }, span: start.to(end) })
            }
            Tok::KwReturn => {
                self.bump();
                let value = if *self.peek() == Tok::Semi { None } else { Some(self.expr()?) };
                let end = self.expect(Tok::Semi, "`;`")?;
                Ok(Stmt { kind: StmtKind::Return(value), span: start.to(end) })
            }
            Tok::Ident(_) | Tok::PlusPlus | Tok::MinusMinus => {
                let kind = self.simple()?;
                let end = self.expect(Tok::Semi, "`;`")?;
                Ok(Stmt { kind, span: start.to(end) })
            }
            _ => self.unexpected("statement"),
        }
    }

    fn fresh_loop(&mut self) -> LoopId {
        let id = self.next_loop;
        self.next_loop += 1;
        id
    }

    fn for_loop(&mut self) -> PResult<Stmt> {
        let start = self.expect(Tok::KwFor, "`for`")?;
        let loop_id = self.fresh_loop();
        self.expect(Tok::LParen, "`(`")?;
        self.scopes.push(HashSet::new());
        let init = match self.peek() {
            Tok::Semi => None,
            Tok::KwInt | Tok::KwFloat | Tok::KwDouble => {
                let mut decls = self.declaration()?;
                if decls.len() != 1 {
                    return self.fail("only one declaration is allowed in a for-loop header");
                }
                Some(ForInit::Decl(decls.remove(0)))
            }
            _ => match self.simple()? {
                StmtKind::Assign(a) => Some(ForInit::Assign(a)),
                _ => return self.fail("expected an assignment in for-loop initializer"),
            },
        };
        self.expect(Tok::Semi, "`;`")?;
        let cond = if *self.peek() == Tok::Semi { None } else { Some(self.expr()?) };
        self.expect(Tok::Semi, "`;`")?;
        let step = if *self.peek() == Tok::RParen {
            None
        } else {
            match self.simple()? {
                StmtKind::Assign(a) => Some(a),
                _ => return self.fail("expected an assignment in for-loop step"),
            }
        };
        self.expect(Tok::RParen, "`)`")?;
        let body = Box::new(self.scoped_stmt()?);
        self.scopes.pop();
        Ok(Stmt {
            kind: StmtKind::For(Box::new(ForLoop { init, cond, step, body, loop_id })),
            span: start.to(self.prev_span()),
        })
    }

    fn declaration(&mut self) -> PResult<Vec<Decl>> {
        let ty = self.type_kw().expect("caller checked for a type keyword");
        let type_span = self.bump().span;
        let mut decls = Vec::new();
        loop {
            let (name, name_span) = self.ident()?;
            let mut dims = Vec::new();
            while self.eat(&Tok::LBracket) {
                dims.push(Some(self.expr()?));
                self.expect(Tok::RBracket, "`]`")?;
            }
            if dims.len() > 2 {
                return Err(ParseFailure {
                    offset: name_span.start,
                    message: "arrays of more than two dimensions are not supported".into(),
                });
            }
            let init = if self.eat(&Tok::Assign) {
                if !dims.is_empty() {
                    return self.fail("array initializers are not supported");
                }
                Some(self.expr()?)
            } else {
                None
            };
            self.declare(&name, name_span)?;
            let start = if decls.is_empty() { type_span } else { name_span };
            decls.push(Decl { name, ty, dims, init, span: start.to(self.prev_span()), name_span });
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        Ok(decls)
    }

    /// Assignment, increment/decrement or call, without the trailing `;`.
    fn simple(&mut self) -> PResult<StmtKind> {
        let start = self.span();
        if matches!(self.peek(), Tok::PlusPlus | Tok::MinusMinus) {
            let op_tok = self.bump();
            let target = self.lvalue()?;
            let op = if op_tok.tok == Tok::PlusPlus { AssignOp::Add } else { AssignOp::Sub };
            let value = Expr { kind: ExprKind::Int(1), span: op_tok.span };
            return Ok(StmtKind::Assign(Assign { target, op, value, span: start.to(self.prev_span()) }));
        }
        if matches!(self.peek(), Tok::Ident(_)) && *self.peek_at(1) == Tok::LParen {
            let (name, _) = self.ident()?;
            let args = self.call_args()?;
            return Ok(StmtKind::Call { name, args });
        }
        let target = self.lvalue()?;
        let op = match self.peek() {
            Tok::Assign => AssignOp::Assign,
            Tok::PlusAssign => AssignOp::Add,
            Tok::MinusAssign => AssignOp::Sub,
            Tok::StarAssign => AssignOp::Mul,
            Tok::SlashAssign => AssignOp::Div,
            Tok::PlusPlus | Tok::MinusMinus => {
                let op_tok = self.bump();
                let op = if op_tok.tok == Tok::PlusPlus { AssignOp::Add } else { AssignOp::Sub };
                let value = Expr { kind: ExprKind::Int(1), span: op_tok.span };
                return Ok(StmtKind::Assign(Assign { target, op, value, span: start.to(op_tok.span) }));
            }
            _ => return self.unexpected("assignment operator"),
        };
        self.bump();
        let value = self.expr()?;
        Ok(StmtKind::Assign(Assign { target, op, value, span: start.to(self.prev_span()) }))
    }

    fn lvalue(&mut self) -> PResult<LValue> {
        let (name, sp) = self.ident()?;
        let indices = self.subscripts()?;
        Ok(LValue { name, indices, span: sp.to(self.prev_span()) })
    }

    fn subscripts(&mut self) -> PResult<Vec<Expr>> {
        let mut indices = Vec::new();
        while self.eat(&Tok::LBracket) {
            indices.push(self.expr()?);
            self.expect(Tok::RBracket, "`]`")?;
        }
        Ok(indices)
    }

    fn call_args(&mut self) -> PResult<Vec<Expr>> {
        self.expect(Tok::LParen, "`(`")?;
        let mut args = Vec::new();
        if *self.peek() != Tok::RParen {
            loop {
                args.push(self.expr()?);
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
        }
        self.expect(Tok::RParen, "`)`")?;
        Ok(args)
    }

    pub(crate) fn expr(&mut self) -> PResult<Expr> {
        self.binary(0)
    }

    fn binop(&self) -> Option<(BinOp, u8)> {
        Some(match self.peek() {
            Tok::OrOr => (BinOp::Or, 0),
            Tok::AndAnd => (BinOp::And, 1),
            Tok::EqEq => (BinOp::Eq, 2),
            Tok::NotEq => (BinOp::Ne, 2),
            Tok::Lt => (BinOp::Lt, 3),
            Tok::Le => (BinOp::Le, 3),
            Tok::Gt => (BinOp::Gt, 3),
            Tok::Ge => (BinOp::Ge, 3),
            Tok::Plus => (BinOp::Add, 4),
            Tok::Minus => (BinOp::Sub, 4),
            Tok::Star => (BinOp::Mul, 5),
            Tok::Slash => (BinOp::Div, 5),
            Tok::Percent => (BinOp::Rem, 5),
            _ => return None,
        })
    }

    // precedence climbing, all binary operators left-associative
    fn binary(&mut self, min_prec: u8) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        while let Some((op, prec)) = self.binop() {
            if prec < min_prec {
                break;
            }
            self.bump();
            let rhs = self.binary(prec + 1)?;
            let span = lhs.span.to(rhs.span);
            lhs = Expr { kind: ExprKind::Binary { op, lhs: Box::new(lhs), rhs: Box::new(rhs) }, span };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Expr> {
        let start = self.span();
        let op = match self.peek() {
            Tok::Minus => UnaryOp::Neg,
            Tok::Plus => UnaryOp::Plus,
            Tok::Bang => UnaryOp::Not,
            _ => return self.primary(),
        };
        self.bump();
        let operand = self.unary()?;
        let span = start.to(operand.span);
        Ok(Expr { kind: ExprKind::Unary { op, operand: Box::new(operand) }, span })
    }

    fn primary(&mut self) -> PResult<Expr> {
        let start = self.span();
        match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                Ok(Expr { kind: ExprKind::Int(v), span: start })
            }
            Tok::Float(v) => {
                self.bump();
                Ok(Expr { kind: ExprKind::Float(v), span: start })
            }
            Tok::LParen => {
                self.bump();
                let mut e = self.expr()?;
                let end = self.expect(Tok::RParen, "`)`")?;
                e.span = start.to(end);
                Ok(e)
            }
            Tok::Ident(name) => {
                self.bump();
                if *self.peek() == Tok::LParen {
                    let args = self.call_args()?;
                    return Ok(Expr { kind: ExprKind::Call { name, args }, span: start.to(self.prev_span()) });
                }
                if *self.peek() == Tok::LBracket {
                    let indices = self.subscripts()?;
                    return Ok(Expr {
                        kind: ExprKind::Index { base: name, indices },
                        span: start.to(self.prev_span()),
                    });
                }
                Ok(Expr { kind: ExprKind::Ident(name), span: start })
            }
            _ => self.unexpected("expression"),
        }
    }
}
