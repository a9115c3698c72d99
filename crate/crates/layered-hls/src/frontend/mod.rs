//! Frontend for the Cyber behavioral DSL: lexing, parsing, pragma
//! extraction, and semantic validation.
//!
//! The grammar is published in `docs/grammar.ebnf`. Programs are a C subset:
//! typed functions over fixed-width signed integers and arrays, `for` loops
//! with compile-time bounds, `if`/`else`, assignment, arithmetic and
//! comparisons, and calls. Synthesis directives ride in `/* Cyber ... */`
//! comments and attach to the function definition that follows them.

pub mod ast;
pub mod lexer;
pub mod parser;

use std::collections::{HashMap, HashSet};

use ast::*;

#[derive(Debug, Clone, thiserror::Error)]
pub enum FrontendError {
    #[error("{span}: syntax error: {msg}")]
    Syntax { span: Span, msg: String },
    #[error("{span}: {msg}")]
    Semantic { span: Span, msg: String },
    #[error("{span}: pragma error: {msg}")]
    Pragma { span: Span, msg: String },
}

impl FrontendError {
    pub fn syntax(span: Span, msg: impl Into<String>) -> Self {
        FrontendError::Syntax { span, msg: msg.into() }
    }

    pub fn semantic(span: Span, msg: impl Into<String>) -> Self {
        FrontendError::Semantic { span, msg: msg.into() }
    }

    pub fn pragma(span: Span, msg: impl Into<String>) -> Self {
        FrontendError::Pragma { span, msg: msg.into() }
    }
}

/// Parses and validates a complete program.
///
/// The entry function is the only function when there is exactly one,
/// otherwise the function named `main`.
pub fn parse(source: &str) -> Result<BehaviorProgram, FrontendError> {
    let tokens = lexer::lex(source)?;
    let functions = parser::Parser::new(tokens).parse_program()?;
    let entry = validate(&functions)?;
    Ok(BehaviorProgram { functions, entry })
}

/// Scans raw source text for well-formed `/* Cyber ... */` directives in
/// source order. Works on arbitrary text; block comments whose first word is
/// not exactly `Cyber` are skipped, malformed Cyber directives are errors.
pub fn extract_pragmas(source: &str) -> Result<Vec<(Span, Pragma)>, FrontendError> {
    let bytes = source.as_bytes();
    let mut out = Vec::new();
    let mut i = 0usize;
    let mut line = 1u32;
    let mut col = 1u32;
    while i < bytes.len() {
        match bytes[i] {
            b'\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            b'/' if bytes.get(i + 1) == Some(&b'/') => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            b'/' if bytes.get(i + 1) == Some(&b'*') => {
                let span = Span::new(line, col);
                // Unterminated comments end the scan; parse() reports them.
                let mut j = i + 2;
                let mut l = line;
                let mut c = col + 2;
                let text_start = j;
                let mut found = None;
                while j + 1 < bytes.len() {
                    if bytes[j] == b'*' && bytes[j + 1] == b'/' {
                        found = Some(j);
                        break;
                    }
                    if bytes[j] == b'\n' {
                        l += 1;
                        c = 1;
                    } else {
                        c += 1;
                    }
                    j += 1;
                }
                let Some(end) = found else { break };
                let text = String::from_utf8_lossy(&bytes[text_start..end]).into_owned();
                if text.split_whitespace().next() == Some("Cyber") {
                    out.push((span, lexer::parse_pragma(&text, span)?));
                }
                i = end + 2;
                line = l;
                col = c + 2;
            }
            _ => {
                i += 1;
                col += 1;
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Semantic validation
// ---------------------------------------------------------------------------

#[derive(Clone, Copy)]
struct VarInfo {
    ty: SignalType,
    is_loop_var: bool,
}

struct Validator<'a> {
    functions: &'a HashMap<String, &'a FunctionDef>,
    scopes: Vec<HashMap<String, VarInfo>>,
}

fn validate(functions: &[FunctionDef]) -> Result<String, FrontendError> {
    if functions.is_empty() {
        return Err(FrontendError::semantic(
            Span::new(1, 1),
            "program defines no functions",
        ));
    }
    let mut table: HashMap<String, &FunctionDef> = HashMap::new();
    for f in functions {
        if table.insert(f.name.clone(), f).is_some() {
            return Err(FrontendError::semantic(
                f.span,
                format!("duplicate function `{}`", f.name),
            ));
        }
    }

    let entry = if functions.len() == 1 {
        functions[0].name.clone()
    } else {
        match table.get("main") {
            Some(_) => "main".to_string(),
            None => {
                return Err(FrontendError::semantic(
                    functions[0].span,
                    "a program with several functions must define `main`",
                ));
            }
        }
    };

    for f in functions {
        validate_signature(f)?;
        let mut v = Validator { functions: &table, scopes: Vec::new() };
        v.validate_body(f)?;
    }

    let entry_fn = table[&entry];
    if entry_fn.ret.kind == TypeKind::Void {
        return Err(FrontendError::semantic(
            entry_fn.span,
            "entry function must return a value",
        ));
    }
    if entry_fn.is_operator() {
        return Err(FrontendError::semantic(
            entry_fn.span,
            "entry function cannot be an operator",
        ));
    }

    check_recursion(functions, &table)?;
    Ok(entry)
}

fn validate_signature(f: &FunctionDef) -> Result<(), FrontendError> {
    if f.ret.is_array() {
        return Err(FrontendError::semantic(
            f.span,
            "array return types are not supported",
        ));
    }
    let mut seen = HashSet::new();
    for p in &f.params {
        if p.ty.kind == TypeKind::Void {
            return Err(FrontendError::semantic(p.span, "parameters cannot be void"));
        }
        if !seen.insert(p.name.clone()) {
            return Err(FrontendError::semantic(
                p.span,
                format!("duplicate parameter `{}`", p.name),
            ));
        }
    }
    let mut operators = 0;
    let mut shares = 0;
    for pragma in &f.pragmas {
        match pragma.kind {
            PragmaKind::FuncOperator => operators += 1,
            PragmaKind::ShareName => shares += 1,
        }
        if operators > 1 || shares > 1 {
            return Err(FrontendError::pragma(
                pragma.span,
                format!("duplicate pragma on function `{}`", f.name),
            ));
        }
    }
    if f.share_name().is_some() && !f.is_operator() {
        return Err(FrontendError::semantic(
            f.span,
            format!("share name on `{}` requires `func = operator`", f.name),
        ));
    }
    Ok(())
}

impl<'a> Validator<'a> {
    fn lookup(&self, name: &str) -> Option<VarInfo> {
        self.scopes.iter().rev().find_map(|s| s.get(name).copied())
    }

    fn declare(&mut self, name: &str, info: VarInfo, span: Span) -> Result<(), FrontendError> {
        let scope = self.scopes.last_mut().expect("scope stack is never empty here");
        if scope.insert(name.to_string(), info).is_some() {
            return Err(FrontendError::semantic(
                span,
                format!("`{}` is already declared in this scope", name),
            ));
        }
        Ok(())
    }

    fn validate_body(&mut self, f: &FunctionDef) -> Result<(), FrontendError> {
        let mut params = HashMap::new();
        for p in &f.params {
            params.insert(p.name.clone(), VarInfo { ty: p.ty, is_loop_var: false });
        }
        self.scopes.push(params);

        let non_void = f.ret.kind != TypeKind::Void;
        match f.body.last() {
            Some(Stmt::Return { value, span }) => {
                if non_void && value.is_none() {
                    return Err(FrontendError::semantic(
                        *span,
                        format!("`{}` must return a value", f.name),
                    ));
                }
                if !non_void && value.is_some() {
                    return Err(FrontendError::semantic(
                        *span,
                        format!("void function `{}` cannot return a value", f.name),
                    ));
                }
            }
            _ if non_void => {
                return Err(FrontendError::semantic(
                    f.span,
                    format!("`{}` must end with a return statement", f.name),
                ));
            }
            _ => {}
        }

        let last = f.body.len().saturating_sub(1);
        for (i, s) in f.body.iter().enumerate() {
            if matches!(s, Stmt::Return { .. }) && i != last {
                return Err(FrontendError::semantic(
                    s.span(),
                    "return must be the final statement of a function",
                ));
            }
            self.validate_stmt(s, i == last)?;
        }
        self.scopes.pop();
        Ok(())
    }

    fn validate_stmt(&mut self, s: &Stmt, return_allowed: bool) -> Result<(), FrontendError> {
        match s {
            Stmt::Decl { name, ty, init, span } => {
                if ty.kind == TypeKind::Void {
                    return Err(FrontendError::semantic(*span, "variables cannot be void"));
                }
                if let Some(e) = init {
                    if ty.is_array() {
                        return Err(FrontendError::semantic(
                            *span,
                            "array declarations cannot have initializers; assign elements",
                        ));
                    }
                    self.validate_expr(e)?;
                }
                self.declare(name, VarInfo { ty: *ty, is_loop_var: false }, *span)
            }
            Stmt::Assign { target, value, span } => {
                let info = self.lookup(target.name()).ok_or_else(|| {
                    FrontendError::semantic(
                        target.span(),
                        format!("unknown identifier `{}`", target.name()),
                    )
                })?;
                if info.is_loop_var {
                    return Err(FrontendError::semantic(
                        *span,
                        format!("loop variable `{}` cannot be reassigned", target.name()),
                    ));
                }
                match target {
                    LValue::Var(name, tspan) => {
                        if info.ty.is_array() {
                            return Err(FrontendError::semantic(
                                *tspan,
                                format!("array `{}` must be assigned element-wise", name),
                            ));
                        }
                    }
                    LValue::Elem(name, idx, tspan) => {
                        if !info.ty.is_array() {
                            return Err(FrontendError::semantic(
                                *tspan,
                                format!("`{}` is not an array", name),
                            ));
                        }
                        self.validate_const_shape(idx, "array index")?;
                    }
                }
                self.validate_expr(value)
            }
            Stmt::For { var_ty, var, from, cond_op: _, bound, step, body, span } => {
                self.validate_const_shape(from, "loop bound")?;
                self.validate_const_shape(bound, "loop bound")?;
                if let LoopStep::AddConst(e) = step {
                    self.validate_const_shape(e, "loop step")?;
                }
                self.scopes.push(HashMap::new());
                match var_ty {
                    Some(ty) => {
                        if ty.kind == TypeKind::Void || ty.is_array() {
                            return Err(FrontendError::semantic(
                                *span,
                                "loop variables must be scalar integers",
                            ));
                        }
                        self.declare(var, VarInfo { ty: *ty, is_loop_var: true }, *span)?;
                    }
                    None => {
                        let info = self.lookup(var).ok_or_else(|| {
                            FrontendError::semantic(
                                *span,
                                format!("unknown identifier `{}`", var),
                            )
                        })?;
                        if info.ty.is_array() {
                            return Err(FrontendError::semantic(
                                *span,
                                "loop variables must be scalar integers",
                            ));
                        }
                        // Shadow the outer variable as an immutable loop counter.
                        self.declare(var, VarInfo { ty: info.ty, is_loop_var: true }, *span)?;
                    }
                }
                for inner in body {
                    if matches!(inner, Stmt::Return { .. }) {
                        return Err(FrontendError::semantic(
                            inner.span(),
                            "return is not allowed inside a loop body",
                        ));
                    }
                    self.validate_stmt(inner, false)?;
                }
                self.scopes.pop();
                Ok(())
            }
            Stmt::If { cond, then_body, else_body, .. } => {
                self.validate_expr(cond)?;
                for arm in [then_body, else_body] {
                    self.scopes.push(HashMap::new());
                    for inner in arm {
                        if matches!(inner, Stmt::Return { .. }) {
                            return Err(FrontendError::semantic(
                                inner.span(),
                                "return is not allowed inside a branch",
                            ));
                        }
                        self.validate_stmt(inner, false)?;
                    }
                    self.scopes.pop();
                }
                Ok(())
            }
            Stmt::Return { value, span } => {
                if !return_allowed {
                    return Err(FrontendError::semantic(
                        *span,
                        "return must be the final statement of a function",
                    ));
                }
                if let Some(e) = value {
                    self.validate_expr(e)?;
                }
                Ok(())
            }
        }
    }

    fn validate_expr(&self, e: &Expr) -> Result<(), FrontendError> {
        match e {
            Expr::IntLit(..) => Ok(()),
            Expr::Var(name, span) => {
                let info = self.lookup(name).ok_or_else(|| {
                    FrontendError::semantic(*span, format!("unknown identifier `{}`", name))
                })?;
                if info.ty.is_array() {
                    return Err(FrontendError::semantic(
                        *span,
                        format!("array `{}` can only be indexed or passed whole to a call", name),
                    ));
                }
                Ok(())
            }
            Expr::Elem(name, idx, span) => {
                let info = self.lookup(name).ok_or_else(|| {
                    FrontendError::semantic(*span, format!("unknown identifier `{}`", name))
                })?;
                if !info.ty.is_array() {
                    return Err(FrontendError::semantic(
                        *span,
                        format!("`{}` is not an array", name),
                    ));
                }
                self.validate_const_shape(idx, "array index")
            }
            Expr::Neg(inner, _) => self.validate_expr(inner),
            Expr::Binary(_, lhs, rhs, _) => {
                self.validate_expr(lhs)?;
                self.validate_expr(rhs)
            }
            Expr::Call(name, args, span) => {
                let callee = self.functions.get(name).ok_or_else(|| {
                    FrontendError::semantic(*span, format!("unknown function `{}`", name))
                })?;
                if callee.ret.kind == TypeKind::Void {
                    return Err(FrontendError::semantic(
                        *span,
                        format!("void function `{}` has no value", name),
                    ));
                }
                for a in args {
                    // A bare array name is legal as a whole-array argument.
                    if let Expr::Var(vname, vspan) = a {
                        let info = self.lookup(vname).ok_or_else(|| {
                            FrontendError::semantic(
                                *vspan,
                                format!("unknown identifier `{}`", vname),
                            )
                        })?;
                        if info.ty.is_array() {
                            continue;
                        }
                    }
                    self.validate_expr(a)?;
                }
                Ok(())
            }
        }
    }

    /// Loop bounds and array indices must be compile-time constants: literals
    /// and enclosing loop variables combined with arithmetic.
    fn validate_const_shape(&self, e: &Expr, what: &str) -> Result<(), FrontendError> {
        match e {
            Expr::IntLit(..) => Ok(()),
            Expr::Var(name, span) => match self.lookup(name) {
                Some(info) if info.is_loop_var => Ok(()),
                Some(_) => Err(FrontendError::semantic(
                    *span,
                    format!("non-constant {}: `{}` is not a loop variable", what, name),
                )),
                None => Err(FrontendError::semantic(
                    *span,
                    format!("unknown identifier `{}`", name),
                )),
            },
            Expr::Neg(inner, _) => self.validate_const_shape(inner, what),
            Expr::Binary(op, lhs, rhs, span) => {
                if op.is_comparison() {
                    return Err(FrontendError::semantic(
                        *span,
                        format!("non-constant {}: comparisons are not allowed here", what),
                    ));
                }
                self.validate_const_shape(lhs, what)?;
                self.validate_const_shape(rhs, what)
            }
            Expr::Elem(_, _, span) | Expr::Call(_, _, span) => Err(FrontendError::semantic(
                *span,
                format!("non-constant {}", what),
            )),
        }
    }
}

fn check_recursion(
    functions: &[FunctionDef],
    table: &HashMap<String, &FunctionDef>,
) -> Result<(), FrontendError> {
    fn calls_in(stmts: &[Stmt], out: &mut Vec<(String, Span)>) {
        fn walk_expr(e: &Expr, out: &mut Vec<(String, Span)>) {
            match e {
                Expr::Call(name, args, span) => {
                    out.push((name.clone(), *span));
                    for a in args {
                        walk_expr(a, out);
                    }
                }
                Expr::Neg(inner, _) => walk_expr(inner, out),
                Expr::Binary(_, l, r, _) => {
                    walk_expr(l, out);
                    walk_expr(r, out);
                }
                Expr::Elem(_, idx, _) => walk_expr(idx, out),
                _ => {}
            }
        }
        for s in stmts {
            match s {
                Stmt::Decl { init: Some(e), .. } => walk_expr(e, out),
                Stmt::Assign { value, .. } => walk_expr(value, out),
                Stmt::For { body, .. } => calls_in(body, out),
                Stmt::If { cond, then_body, else_body, .. } => {
                    walk_expr(cond, out);
                    calls_in(then_body, out);
                    calls_in(else_body, out);
                }
                Stmt::Return { value: Some(e), .. } => walk_expr(e, out),
                _ => {}
            }
        }
    }

    // DFS over the call graph; a back edge is recursion.
    fn visit(
        name: &str,
        table: &HashMap<String, &FunctionDef>,
        visiting: &mut HashSet<String>,
        done: &mut HashSet<String>,
    ) -> Result<(), FrontendError> {
        if done.contains(name) {
            return Ok(());
        }
        visiting.insert(name.to_string());
        let f = table[name];
        let mut calls = Vec::new();
        calls_in(&f.body, &mut calls);
        for (callee, span) in calls {
            if !table.contains_key(&callee) {
                continue; // reported during expression validation
            }
            if visiting.contains(&callee) {
                return Err(FrontendError::semantic(
                    span,
                    format!("recursive call to `{}` is not supported", callee),
                ));
            }
            visit(&callee, table, visiting, done)?;
        }
        visiting.remove(name);
        done.insert(name.to_string());
        Ok(())
    }

    let mut done = HashSet::new();
    for f in functions {
        visit(&f.name, table, &mut HashSet::new(), &mut done)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_two_param_function() {
        let p = parse("int8 f(int8 a, int8 b) { int8 c = a + b; return c; }").unwrap();
        assert_eq!(p.functions.len(), 1);
        assert_eq!(p.entry, "f");
        let f = &p.functions[0];
        assert_eq!(f.params.len(), 2);
        assert_eq!(f.body.len(), 2);
        assert_eq!(f.ret, SignalType::scalar(TypeKind::Int8));
    }

    #[test]
    fn pragma_attaches_to_following_function() {
        let src = "/* Cyber func = operator */\n/* Cyber share name = CTX0 */\nint16 conv(int16 p[9], int16 k[9]) { return p[0] * k[0]; }\nint16 main(int16 p[9]) { int16 k[9]; k[0] = 1; return conv(p, k); }";
        let p = parse(src).unwrap();
        let conv = p.function("conv").unwrap();
        assert!(conv.is_operator());
        assert_eq!(conv.share_name(), Some("CTX0"));
        assert!(!p.function("main").unwrap().is_operator());
        assert_eq!(p.entry, "main");
    }

    #[test]
    fn pragma_attachment_is_positional() {
        let a = "/* Cyber func = operator */\nint8 f(int8 a) { return a; }\nint8 g(int8 a) { return a; }\nint8 main(int8 a) { return f(a) + g(a); }";
        let b = "int8 f(int8 a) { return a; }\n/* Cyber func = operator */\nint8 g(int8 a) { return a; }\nint8 main(int8 a) { return f(a) + g(a); }";
        let pa = parse(a).unwrap();
        let pb = parse(b).unwrap();
        assert!(pa.function("f").unwrap().is_operator());
        assert!(!pa.function("g").unwrap().is_operator());
        assert!(!pb.function("f").unwrap().is_operator());
        assert!(pb.function("g").unwrap().is_operator());
    }

    #[test]
    fn dangling_pragma_is_an_error() {
        let err = parse("int8 f(int8 a) { return a; }\n/* Cyber func = operator */").unwrap_err();
        assert!(matches!(err, FrontendError::Pragma { .. }), "{err}");
        let err =
            parse("int8 f(int8 a) { /* Cyber func = operator */ return a; }").unwrap_err();
        assert!(matches!(err, FrontendError::Pragma { .. }), "{err}");
    }

    #[test]
    fn empty_source_is_rejected() {
        assert!(parse("").is_err());
        assert!(parse("// nothing here\n").is_err());
    }

    #[test]
    fn errors_carry_line_and_column() {
        let err = parse("int8 f(int8 a) {\n  a = ;\n}").unwrap_err();
        let msg = err.to_string();
        assert!(msg.starts_with("2:7:"), "unexpected position in {msg:?}");
    }

    #[test]
    fn recursion_is_rejected() {
        let err = parse("int8 f(int8 a) { return f(a); }").unwrap_err();
        assert!(err.to_string().contains("recursive"), "{err}");
        let err = parse(
            "int8 f(int8 a) { return g(a); }\nint8 g(int8 a) { return f(a); }\nint8 main(int8 a) { return f(a); }",
        )
        .unwrap_err();
        assert!(err.to_string().contains("recursive"), "{err}");
    }

    #[test]
    fn entry_selection_requires_main() {
        let err = parse("int8 f(int8 a) { return a; }\nint8 g(int8 a) { return a; }").unwrap_err();
        assert!(err.to_string().contains("main"), "{err}");
    }

    #[test]
    fn unknown_identifier_and_function() {
        let err = parse("int8 f(int8 a) { return b; }").unwrap_err();
        assert!(err.to_string().contains("unknown identifier `b`"), "{err}");
        let err = parse("int8 f(int8 a) { return g(a); }").unwrap_err();
        assert!(err.to_string().contains("unknown function `g`"), "{err}");
    }

    #[test]
    fn void_misuse_is_rejected() {
        let err = parse("void g(int8 a) { }\nint8 main(int8 a) { return g(a); }").unwrap_err();
        assert!(err.to_string().contains("void"), "{err}");
        let err = parse("int8 f(void a) { return 0; }").unwrap_err();
        assert!(err.to_string().contains("void"), "{err}");
    }

    #[test]
    fn loop_variable_is_immutable() {
        let err = parse(
            "int8 f(int8 a) { int8 s = 0; for (int8 i = 0; i < 3; i++) { i = 2; } return s; }",
        )
        .unwrap_err();
        assert!(err.to_string().contains("loop variable"), "{err}");
    }

    #[test]
    fn non_constant_loop_bound_is_rejected() {
        let err = parse(
            "int8 f(int8 a) { int8 s = 0; for (int8 i = 0; i < a; i++) { s = s + i; } return s; }",
        )
        .unwrap_err();
        assert!(err.to_string().contains("non-constant loop bound"), "{err}");
    }

    #[test]
    fn share_name_requires_operator() {
        let err = parse(
            "/* Cyber share name = CTX0 */\nint8 f(int8 a) { return a; }\nint8 main(int8 a) { return f(a); }",
        )
        .unwrap_err();
        assert!(err.to_string().contains("share name"), "{err}");
    }

    #[test]
    fn early_return_is_rejected() {
        let err =
            parse("int8 f(int8 a) { if (a < 0) { return 0; } return a; }").unwrap_err();
        assert!(err.to_string().contains("return"), "{err}");
    }

    #[test]
    fn extract_pragmas_scans_in_source_order() {
        let src = "// /* Cyber func = operator */ in a line comment is ignored\n/* Cyber func = operator */ int16 conv(int16 p[9]) { return p[0]; }\n/* Cyber share name = ROW */\n";
        let pragmas = extract_pragmas(src).unwrap();
        assert_eq!(pragmas.len(), 2);
        assert_eq!(pragmas[0].1.kind, PragmaKind::FuncOperator);
        assert_eq!(pragmas[0].0.line, 2);
        assert_eq!(pragmas[1].1.kind, PragmaKind::ShareName);
        assert_eq!(pragmas[1].1.name.as_deref(), Some("ROW"));
    }

    #[test]
    fn extract_pragmas_rejects_malformed_directives() {
        let err = extract_pragmas("/* Cyber share = ROW */").unwrap_err();
        assert!(matches!(err, FrontendError::Pragma { .. }), "{err}");
        // Non-Cyber block comments are skipped by the standalone scanner.
        assert_eq!(extract_pragmas("/* Cybernetics notes */").unwrap().len(), 0);
    }

    #[test]
    fn round_trip_through_pretty_printer() {
        let src = "/* Cyber func = operator */\nint16 conv(int16 p[9], int16 k[9]) {\n    int16 acc = 0;\n    for (int8 i = 0; i < 9; i++) {\n        acc = acc + p[i] * k[i];\n    }\n    return acc;\n}\nint16 main(int16 p[9]) {\n    int16 k[9];\n    k[0] = -1;\n    if (p[0] < 4) {\n        k[1] = 2;\n    } else {\n        k[1] = 0 - 2;\n    }\n    return conv(p, k);\n}\n";
        let p1 = parse(src).unwrap();
        let printed = ast::pretty_program(&p1);
        let p2 = parse(&printed).unwrap();
        assert_eq!(ast::pretty_program(&p2), printed);
        assert_eq!(p1.functions.len(), p2.functions.len());
    }
}
