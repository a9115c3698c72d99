//! Abstract syntax for the Cyber behavioral DSL.
//!
//! Programs are a flat list of typed functions; exactly one of them is the
//! entry point whose parameters become input ports and whose return value
//! becomes the output port of the synthesized design.

use std::fmt;

/// Source position, 1-based line and column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub line: u32,
    pub col: u32,
}

impl Span {
    pub fn new(line: u32, col: u32) -> Self {
        Span { line, col }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// Scalar signal kinds supported by the datapath.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TypeKind {
    Int8,
    Int12,
    Int14,
    Int16,
    Void,
}

impl TypeKind {
    /// Bit width of the kind; `None` for void.
    pub fn width(self) -> Option<u32> {
        match self {
            TypeKind::Int8 => Some(8),
            TypeKind::Int12 => Some(12),
            TypeKind::Int14 => Some(14),
            TypeKind::Int16 => Some(16),
            TypeKind::Void => None,
        }
    }

    /// Narrowest kind whose range contains `v`, used for literal widths.
    pub fn fitting(v: i64) -> TypeKind {
        for kind in [TypeKind::Int8, TypeKind::Int12, TypeKind::Int14, TypeKind::Int16] {
            let w = kind.width().unwrap();
            let lo = -(1i64 << (w - 1));
            let hi = (1i64 << (w - 1)) - 1;
            if v >= lo && v <= hi {
                return kind;
            }
        }
        TypeKind::Int16
    }
}

impl fmt::Display for TypeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TypeKind::Int8 => "int8",
            TypeKind::Int12 => "int12",
            TypeKind::Int14 => "int14",
            TypeKind::Int16 => "int16",
            TypeKind::Void => "void",
        };
        f.write_str(s)
    }
}

/// A signal type: scalar kind plus optional array length (arrays of scalars only).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignalType {
    pub kind: TypeKind,
    pub array_len: Option<u32>,
}

impl SignalType {
    pub fn scalar(kind: TypeKind) -> Self {
        SignalType { kind, array_len: None }
    }

    pub fn array(kind: TypeKind, len: u32) -> Self {
        SignalType { kind, array_len: Some(len) }
    }

    pub fn is_array(&self) -> bool {
        self.array_len.is_some()
    }

    pub fn width(&self) -> Option<u32> {
        self.kind.width()
    }
}

impl fmt::Display for SignalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.array_len {
            Some(n) => write!(f, "{}[{}]", self.kind, n),
            None => write!(f, "{}", self.kind),
        }
    }
}

/// Synthesis directives attached to function definitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PragmaKind {
    /// `/* Cyber func = operator */` — compile the function as a reusable macro block.
    FuncOperator,
    /// `/* Cyber share name = NAME */` — co-bind all calls carrying NAME to one unit.
    ShareName,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pragma {
    pub kind: PragmaKind,
    /// Share name for `ShareName`, absent for `FuncOperator`.
    pub name: Option<String>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Param {
    pub name: String,
    pub ty: SignalType,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FunctionDef {
    pub name: String,
    pub params: Vec<Param>,
    pub ret: SignalType,
    pub body: Vec<Stmt>,
    pub pragmas: Vec<Pragma>,
    pub span: Span,
}

impl FunctionDef {
    pub fn is_operator(&self) -> bool {
        self.pragmas.iter().any(|p| p.kind == PragmaKind::FuncOperator)
    }

    pub fn share_name(&self) -> Option<&str> {
        self.pragmas
            .iter()
            .find(|p| p.kind == PragmaKind::ShareName)
            .and_then(|p| p.name.as_deref())
    }

    /// Signature string used for macro lookup and netlist unit kinds,
    /// e.g. `conv(int16[9],int16[9])->int16`.
    pub fn signature(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|p| p.ty.to_string()).collect();
        format!("{}({})->{}", self.name, params.join(","), self.ret)
    }
}

/// A parsed program plus the name of its entry function.
#[derive(Debug, Clone, PartialEq)]
pub struct BehaviorProgram {
    pub functions: Vec<FunctionDef>,
    pub entry: String,
}

impl BehaviorProgram {
    pub fn function(&self, name: &str) -> Option<&FunctionDef> {
        self.functions.iter().find(|f| f.name == name)
    }

    pub fn entry_function(&self) -> &FunctionDef {
        self.function(&self.entry).expect("entry function exists by construction")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Lt,
    Le,
    Eq,
    Ne,
    Ge,
    Gt,
}

impl BinOp {
    pub fn is_comparison(self) -> bool {
        matches!(self, BinOp::Lt | BinOp::Le | BinOp::Eq | BinOp::Ne | BinOp::Ge | BinOp::Gt)
    }

    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Lt => "<",
            BinOp::Le => "<=",
            BinOp::Eq => "==",
            BinOp::Ne => "!=",
            BinOp::Ge => ">=",
            BinOp::Gt => ">",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    IntLit(i64, Span),
    Var(String, Span),
    /// Array element access; the index must be a compile-time constant.
    Elem(String, Box<Expr>, Span),
    /// Unary minus.
    Neg(Box<Expr>, Span),
    Binary(BinOp, Box<Expr>, Box<Expr>, Span),
    Call(String, Vec<Expr>, Span),
}

impl Expr {
    pub fn span(&self) -> Span {
        match self {
            Expr::IntLit(_, s)
            | Expr::Var(_, s)
            | Expr::Elem(_, _, s)
            | Expr::Neg(_, s)
            | Expr::Binary(_, _, _, s)
            | Expr::Call(_, _, s) => *s,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LValue {
    Var(String, Span),
    Elem(String, Box<Expr>, Span),
}

impl LValue {
    pub fn name(&self) -> &str {
        match self {
            LValue::Var(n, _) | LValue::Elem(n, _, _) => n,
        }
    }

    pub fn span(&self) -> Span {
        match self {
            LValue::Var(_, s) | LValue::Elem(_, _, s) => *s,
        }
    }
}

/// Loop step clause: `i++` or `i = i + <const>`.
#[derive(Debug, Clone, PartialEq)]
pub enum LoopStep {
    Increment,
    AddConst(Expr),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Stmt {
    Decl {
        name: String,
        ty: SignalType,
        init: Option<Expr>,
        span: Span,
    },
    Assign {
        target: LValue,
        value: Expr,
        span: Span,
    },
    For {
        /// `Some` when the loop variable is declared inline (`for (int8 i = 0; ...)`).
        var_ty: Option<SignalType>,
        var: String,
        from: Expr,
        cond_op: BinOp,
        bound: Expr,
        step: LoopStep,
        body: Vec<Stmt>,
        span: Span,
    },
    If {
        cond: Expr,
        then_body: Vec<Stmt>,
        else_body: Vec<Stmt>,
        span: Span,
    },
    Return {
        value: Option<Expr>,
        span: Span,
    },
}

impl Stmt {
    pub fn span(&self) -> Span {
        match self {
            Stmt::Decl { span, .. }
            | Stmt::Assign { span, .. }
            | Stmt::For { span, .. }
            | Stmt::If { span, .. }
            | Stmt::Return { span, .. } => *span,
        }
    }
}

// ---------------------------------------------------------------------------
// Canonical pretty-printer. Reparsing its output yields a structurally
// identical program (spans aside), which both the round-trip tests and the
// macro body digest rely on.
// ---------------------------------------------------------------------------

pub fn pretty_program(p: &BehaviorProgram) -> String {
    let mut out = String::new();
    for (i, f) in p.functions.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        pretty_function(f, &mut out);
    }
    out
}

pub fn pretty_function(f: &FunctionDef, out: &mut String) {
    for pragma in &f.pragmas {
        match pragma.kind {
            PragmaKind::FuncOperator => out.push_str("/* Cyber func = operator */\n"),
            PragmaKind::ShareName => {
                out.push_str(&format!(
                    "/* Cyber share name = {} */\n",
                    pragma.name.as_deref().unwrap_or("")
                ));
            }
        }
    }
    let params: Vec<String> = f
        .params
        .iter()
        .map(|p| match p.ty.array_len {
            Some(n) => format!("{} {}[{}]", p.ty.kind, p.name, n),
            None => format!("{} {}", p.ty.kind, p.name),
        })
        .collect();
    out.push_str(&format!("{} {}({}) {{\n", f.ret, f.name, params.join(", ")));
    for s in &f.body {
        pretty_stmt(s, 1, out);
    }
    out.push_str("}\n");
}

fn indent(depth: usize, out: &mut String) {
    for _ in 0..depth {
        out.push_str("    ");
    }
}

fn pretty_stmt(s: &Stmt, depth: usize, out: &mut String) {
    indent(depth, out);
    match s {
        Stmt::Decl { name, ty, init, .. } => {
            let decl = match ty.array_len {
                Some(n) => format!("{} {}[{}]", ty.kind, name, n),
                None => format!("{} {}", ty.kind, name),
            };
            match init {
                Some(e) => out.push_str(&format!("{} = {};\n", decl, pretty_expr(e))),
                None => out.push_str(&format!("{};\n", decl)),
            }
        }
        Stmt::Assign { target, value, .. } => {
            out.push_str(&format!("{} = {};\n", pretty_lvalue(target), pretty_expr(value)));
        }
        Stmt::For { var_ty, var, from, cond_op, bound, step, body, .. } => {
            let init = match var_ty {
                Some(ty) => format!("{} {} = {}", ty.kind, var, pretty_expr(from)),
                None => format!("{} = {}", var, pretty_expr(from)),
            };
            let step_s = match step {
                LoopStep::Increment => format!("{}++", var),
                LoopStep::AddConst(e) => format!("{} = {} + {}", var, var, pretty_expr(e)),
            };
            out.push_str(&format!(
                "for ({}; {} {} {}; {}) {{\n",
                init,
                var,
                cond_op.symbol(),
                pretty_expr(bound),
                step_s
            ));
            for inner in body {
                pretty_stmt(inner, depth + 1, out);
            }
            indent(depth, out);
            out.push_str("}\n");
        }
        Stmt::If { cond, then_body, else_body, .. } => {
            out.push_str(&format!("if ({}) {{\n", pretty_expr(cond)));
            for inner in then_body {
                pretty_stmt(inner, depth + 1, out);
            }
            indent(depth, out);
            if else_body.is_empty() {
                out.push_str("}\n");
            } else {
                out.push_str("} else {\n");
                for inner in else_body {
                    pretty_stmt(inner, depth + 1, out);
                }
                indent(depth, out);
                out.push_str("}\n");
            }
        }
        Stmt::Return { value, .. } => match value {
            Some(e) => out.push_str(&format!("return {};\n", pretty_expr(e))),
            None => out.push_str("return;\n"),
        },
    }
}

fn pretty_lvalue(l: &LValue) -> String {
    match l {
        LValue::Var(n, _) => n.clone(),
        LValue::Elem(n, idx, _) => format!("{}[{}]", n, pretty_expr(idx)),
    }
}

/// Precedence levels: comparisons < additive < multiplicative < unary/primary.
fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Binary(op, ..) if op.is_comparison() => 0,
        Expr::Binary(BinOp::Add | BinOp::Sub, ..) => 1,
        Expr::Binary(BinOp::Mul | BinOp::Div, ..) => 2,
        Expr::Neg(..) => 3,
        _ => 4,
    }
}

pub fn pretty_expr(e: &Expr) -> String {
    match e {
        Expr::IntLit(v, _) => v.to_string(),
        Expr::Var(n, _) => n.clone(),
        Expr::Elem(n, idx, _) => format!("{}[{}]", n, pretty_expr(idx)),
        Expr::Neg(inner, _) => {
            if prec(inner) < 3 {
                format!("-({})", pretty_expr(inner))
            } else {
                format!("-{}", pretty_expr(inner))
            }
        }
        Expr::Binary(op, lhs, rhs, _) => {
            let my = prec(e);
            let l = if prec(lhs) < my {
                format!("({})", pretty_expr(lhs))
            } else {
                pretty_expr(lhs)
            };
            // Right operand needs parens at equal precedence too: `a - (b - c)`.
            let r = if prec(rhs) <= my {
                format!("({})", pretty_expr(rhs))
            } else {
                pretty_expr(rhs)
            };
            format!("{} {} {}", l, op.symbol(), r)
        }
        Expr::Call(name, args, _) => {
            let args: Vec<String> = args.iter().map(pretty_expr).collect();
            format!("{}({})", name, args.join(", "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_fitting_widths() {
        assert_eq!(TypeKind::fitting(0), TypeKind::Int8);
        assert_eq!(TypeKind::fitting(-128), TypeKind::Int8);
        assert_eq!(TypeKind::fitting(127), TypeKind::Int8);
        assert_eq!(TypeKind::fitting(128), TypeKind::Int12);
        assert_eq!(TypeKind::fitting(-2048), TypeKind::Int12);
        assert_eq!(TypeKind::fitting(2048), TypeKind::Int14);
        assert_eq!(TypeKind::fitting(8192), TypeKind::Int16);
        assert_eq!(TypeKind::fitting(-32768), TypeKind::Int16);
    }

    #[test]
    fn signature_format() {
        let f = FunctionDef {
            name: "conv".into(),
            params: vec![
                Param {
                    name: "p".into(),
                    ty: SignalType::array(TypeKind::Int16, 9),
                    span: Span::new(1, 1),
                },
                Param {
                    name: "k".into(),
                    ty: SignalType::array(TypeKind::Int16, 9),
                    span: Span::new(1, 1),
                },
            ],
            ret: SignalType::scalar(TypeKind::Int16),
            body: vec![],
            pragmas: vec![],
            span: Span::new(1, 1),
        };
        assert_eq!(f.signature(), "conv(int16[9],int16[9])->int16");
    }

    #[test]
    fn pretty_expr_parenthesizes_by_precedence() {
        let s = Span::new(1, 1);
        // (a + b) * c
        let e = Expr::Binary(
            BinOp::Mul,
            Box::new(Expr::Binary(
                BinOp::Add,
                Box::new(Expr::Var("a".into(), s)),
                Box::new(Expr::Var("b".into(), s)),
                s,
            )),
            Box::new(Expr::Var("c".into(), s)),
            s,
        );
        assert_eq!(pretty_expr(&e), "(a + b) * c");
        // a - (b - c) keeps the right-hand parens
        let e2 = Expr::Binary(
            BinOp::Sub,
            Box::new(Expr::Var("a".into(), s)),
            Box::new(Expr::Binary(
                BinOp::Sub,
                Box::new(Expr::Var("b".into(), s)),
                Box::new(Expr::Var("c".into(), s)),
                s,
            )),
            s,
        );
        assert_eq!(pretty_expr(&e2), "a - (b - c)");
    }
}
