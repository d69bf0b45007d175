//! Parsing of the C subset, loop discovery and variable-access classification.
//!
//! The accepted language is a translation unit of functions over `int`,
//! `float` and `double` scalars and 1-D/2-D arrays, with declarations,
//! assignments (`= += -= *= /=`, `++`, `--`), `if`/`else`, `for`, `while`,
//! `do`-`while`, call statements, `return` and blocks. Pointers, `goto` and
//! the preprocessor are rejected; `#pragma` lines are skipped.

mod access;
mod ast;
mod lexer;
mod loops;
mod parser;

use std::sync::Arc;

pub use access::{extract_accesses, AccessKind, VarAccess};
pub use ast::*;
pub use loops::{build_loop_tree, LoopKind, LoopNode, LoopTree};

pub(crate) use loops::is_canonical;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{pos}: {message}")]
pub struct ParseError {
    pub pos: SourcePos,
    pub message: String,
}

/// Parse `text` as the anonymous file `<input>`.
pub fn parse(text: &str) -> Result<Program, ParseError> {
    parse_named("<input>", text)
}

pub fn parse_named(file: &str, text: &str) -> Result<Program, ParseError> {
    let mut line_starts = vec![0];
    line_starts.extend(text.match_indices('\n').map(|(i, _)| i + 1));
    let mut program =
        Program { file: Arc::from(file), functions: Vec::new(), source_text: text.to_string(), line_starts };
    let fail = |program: &Program, offset: usize, message: String| ParseError { pos: program.pos_of(offset), message };
    let toks = lexer::tokenize(text).map_err(|(o, m)| fail(&program, o, m))?;
    let mut p = parser::Parser::new(toks);
    program.functions = p.translation_unit().map_err(|e| fail(&program, e.offset, e.message))?;
    Ok(program)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn accesses_of(text: &str) -> Vec<(String, AccessKind, Vec<LoopId>)> {
        let p = parse(text).unwrap();
        extract_accesses(&p).into_iter().map(|a| (a.var, a.kind, a.loop_path)).collect()
    }

    #[test]
    fn minimal_program() {
        let p = parse("int main(){int i; for(i=0;i<10;i++){}}").unwrap();
        assert_eq!(p.functions.len(), 1);
        let t = build_loop_tree(&p);
        assert_eq!(t.len(), 1);
        assert_eq!(t.nodes[0].loop_id, 0);
        assert!(t.nodes[0].canonical);
        assert_eq!(t.nodes[0].kind, LoopKind::For);
    }

    #[test]
    fn empty_input() {
        assert!(parse("").unwrap().functions.is_empty());
        assert!(parse("  // nothing\n").unwrap().functions.is_empty());
    }

    #[test]
    fn goto_rejected_at_token() {
        let err = parse("int main(){goto L;}").unwrap_err();
        assert_eq!((err.pos.line, err.pos.col), (1, 12));
        assert!(err.message.contains("goto"), "{}", err.message);
    }

    #[test]
    fn pointers_rejected() {
        assert!(parse("int main(){int *p;}").is_err());
        assert!(parse("void f(double *a){}").is_err());
    }

    #[test]
    fn duplicate_function_and_param() {
        assert!(parse("int f(){} int f(){}").is_err());
        assert!(parse("int f(int a, int a){}").is_err());
        assert!(parse("int f(){int x; int x;}").is_err());
        // shadowing in an inner block is fine
        assert!(parse("int f(){int x; {int x;}}").is_ok());
    }

    #[test]
    fn sibling_loops() {
        let p = parse("void f(){int i; for(i=0;i<3;i++){} for(i=0;i<3;i++){}}").unwrap();
        let t = build_loop_tree(&p);
        assert_eq!(t.nodes.iter().map(|n| n.parent).collect::<Vec<_>>(), vec![None, None]);
    }

    #[test]
    fn nested_loops() {
        let p = parse("void f(){int i,j; for(i=0;i<3;i++){ for(j=0;j<3;j++){} }}").unwrap();
        let t = build_loop_tree(&p);
        assert_eq!(t.nodes[0].parent, None);
        assert_eq!(t.nodes[1].parent, Some(0));
        assert_eq!(t.nodes[0].children, vec![1]);
    }

    #[test]
    fn while_with_inner_for() {
        let p = parse("void f(int c){int i; while(c){ for(i=0;i<3;i++){} c = c - 1; }}").unwrap();
        let t = build_loop_tree(&p);
        assert_eq!(t.nodes[0].kind, LoopKind::While);
        assert!(!t.nodes[0].canonical);
        assert_eq!(t.nodes[1].kind, LoopKind::For);
        assert_eq!(t.nodes[1].parent, Some(0));
    }

    #[test]
    fn canonical_forms() {
        let canon = |hdr: &str| {
            let src = format!("void f(int n){{int i; for({hdr}){{}}}}");
            build_loop_tree(&parse(&src).unwrap()).nodes[0].canonical
        };
        assert!(canon("i=0;i<n;i++"));
        assert!(canon("i=0;i<=n;++i"));
        assert!(canon("i=1;i<n;i+=2"));
        assert!(canon("int k=0;k<n;k++"));
        assert!(!canon("i=0;i>n;i++"));
        assert!(!canon("i=n;i<n;i--"));
        assert!(!canon("i=0;n>i;i++"));
        assert!(!canon(";i<n;i++"));
        assert!(!canon("i=0;i<n;i=i+1"));
    }

    #[test]
    fn do_while_loop() {
        let p = parse("void f(int n){ do { n -= 1; } while (n > 0); }").unwrap();
        let t = build_loop_tree(&p);
        assert_eq!(t.nodes[0].kind, LoopKind::DoWhile);
    }

    #[test]
    fn classify_indexed_assignment() {
        use AccessKind::*;
        let acc = accesses_of("void f(double a[10], double b[10]){int i; for(i=0;i<10;i++){ a[i] = b[i] + 1; }}");
        let body: Vec<_> = acc.iter().filter(|(_, _, p)| *p == vec![0]).skip(4).collect();
        let mut got: Vec<(String, AccessKind)> = body.iter().map(|(v, k, _)| (v.clone(), *k)).collect();
        got.sort();
        let mut want =
            vec![("a".to_string(), Set), ("i".to_string(), Ref), ("i".to_string(), Ref), ("b".to_string(), Ref)];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn classify_top_level_decl() {
        let acc = accesses_of("int main(){int x;}");
        assert_eq!(acc, vec![("x".to_string(), AccessKind::Define, vec![])]);
    }

    #[test]
    fn compound_assignment_is_set_and_ref() {
        use AccessKind::*;
        let p = parse("void f(double a[4]){ double s; int i; s += a[i]; }").unwrap();
        let acc = extract_accesses(&p);
        let tail: Vec<_> = acc[3..].iter().map(|a| (a.var.as_str(), a.kind)).collect();
        assert_eq!(tail, vec![("s", Set), ("s", Ref), ("a", Ref), ("i", Ref)]);
        assert_eq!(acc[3].pos, acc[4].pos);
    }

    #[test]
    fn array_call_argument_is_ref_and_set() {
        let p = parse("void g(double x[4]){} void f(){ double a[4]; g(a); }").unwrap();
        let acc = extract_accesses(&p);
        let a: Vec<_> = acc.iter().filter(|x| x.var == "a").map(|x| x.kind).collect();
        assert_eq!(a, vec![AccessKind::Define, AccessKind::Ref, AccessKind::Set]);
    }

    #[test]
    fn pragma_lines_are_ignored() {
        let plain = "void f(){int i;\n  for(i=0;i<3;i++){}\n}";
        let annotated = "void f(){int i;\n  #pragma acc kernels\n  for(i=0;i<3;i++){}\n}";
        let a = build_loop_tree(&parse(plain).unwrap());
        let b = build_loop_tree(&parse(annotated).unwrap());
        assert_eq!(a.len(), b.len());
        assert_eq!(a.nodes[0].canonical, b.nodes[0].canonical);
    }

    #[test]
    fn positions_are_one_based() {
        let p = parse("int f(){\n  int i;\n  for(i=0;i<2;i++){}\n}").unwrap();
        let t = build_loop_tree(&p);
        assert_eq!((t.nodes[0].header_pos.line, t.nodes[0].header_pos.col), (3, 3));
    }
}
