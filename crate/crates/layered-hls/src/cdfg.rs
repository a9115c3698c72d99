//! Control/data-flow graph construction.
//!
//! Elaboration fully unrolls loops, inlines every non-operator call, and
//! either preserves operator calls as `MacroCall` nodes or inlines them too,
//! depending on the synthesis condition. The result is a pure dataflow DAG:
//! node ids increase along data dependencies, so the edge list is acyclic by
//! construction.
//!
//! Width discipline (shared bit-for-bit with the golden interpreter):
//! - every variable holds a value of exactly its declared width; the root
//!   node of an assigned expression is pinned to the destination width, and
//!   reusing a node of a different width materializes an `Add(x, 0)`
//!   conversion node at the destination width;
//! - intermediate expression nodes take the max of their operand widths,
//!   capped at 16;
//! - `Write` nodes mask to the output port width;
//! - every node's result wraps to its width in two's complement.

use std::collections::HashMap;
use std::fmt;

use crate::frontend::ast::*;

/// Hard ceiling on loop trips, independent of the node cap, so that empty
/// non-terminating loops still fail.
const MAX_TRIPS: u64 = 1 << 20;

/// Default elaboration cap in nodes.
pub const DEFAULT_EXPANSION_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    Lt,
    Le,
    Eq,
    Ne,
    Ge,
    Gt,
}

impl Relation {
    pub fn eval(self, a: i64, b: i64) -> i64 {
        let r = match self {
            Relation::Lt => a < b,
            Relation::Le => a <= b,
            Relation::Eq => a == b,
            Relation::Ne => a != b,
            Relation::Ge => a >= b,
            Relation::Gt => a > b,
        };
        r as i64
    }

    pub fn mnemonic(self) -> &'static str {
        match self {
            Relation::Lt => "lt",
            Relation::Le => "le",
            Relation::Eq => "eq",
            Relation::Ne => "ne",
            Relation::Ge => "ge",
            Relation::Gt => "gt",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DfgOp {
    Add,
    Sub,
    Mul,
    Div,
    Cmp(Relation),
    /// Operands: (select, value-if-nonzero, value-if-zero).
    Mux,
    Const(i64),
    /// Reads the named input port.
    Read(String),
    /// Latches the named output port; the single operand is the value.
    Write(String),
    /// Preserved call to an operator function; the string is the callee name.
    MacroCall(String),
}

impl DfgOp {
    /// Dump/netlist mnemonic.
    pub fn mnemonic(&self) -> String {
        match self {
            DfgOp::Add => "add".into(),
            DfgOp::Sub => "sub".into(),
            DfgOp::Mul => "mul".into(),
            DfgOp::Div => "div".into(),
            DfgOp::Cmp(r) => r.mnemonic().into(),
            DfgOp::Mux => "mux".into(),
            DfgOp::Const(v) => format!("const:{}", v),
            DfgOp::Read(p) => format!("read:{}", p),
            DfgOp::Write(p) => format!("write:{}", p),
            DfgOp::MacroCall(n) => format!("call:{}", n),
        }
    }

    /// Compute nodes occupy a functional unit for their latency; wiring
    /// nodes (Const/Read/Write) are free connections or register latches.
    pub fn is_compute(&self) -> bool {
        !matches!(self, DfgOp::Const(_) | DfgOp::Read(_) | DfgOp::Write(_))
    }
}

#[derive(Debug, Clone)]
pub struct DfgNode {
    pub id: NodeId,
    pub op: DfgOp,
    /// Output width in bits (8/12/14/16); for Write, the truncation width.
    pub width: u32,
    /// 1 for fine-grained compute, 0 for wiring, macro latency for MacroCall
    /// (a placeholder 1 until the database resolves it).
    pub latency: u32,
    /// Width pinned by a declared destination rather than the max-of-operands
    /// rule. `infer_widths` leaves pinned widths alone.
    pub pinned: bool,
    /// Share name inherited from the callee's pragma (MacroCall only).
    pub share_name: Option<String>,
    /// Full callee signature, e.g. `conv(int16[9],int16[9])->int16`
    /// (MacroCall only).
    pub signature: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub src: NodeId,
    pub dst: NodeId,
    pub idx: u32,
}

/// A scalarized port: array parameters appear as `name[0]`, `name[1]`, ...
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Port {
    pub name: String,
    pub width: u32,
}

#[derive(Debug, Clone)]
pub struct DataFlowGraph {
    pub name: String,
    pub nodes: Vec<DfgNode>,
    pub edges: Vec<Edge>,
    /// Operand node ids per node, indexed by operand position.
    pub operands: Vec<Vec<NodeId>>,
    pub inputs: Vec<Port>,
    pub output: Port,
}

impl DataFlowGraph {
    pub fn node(&self, id: NodeId) -> &DfgNode {
        &self.nodes[id.0 as usize]
    }

    pub fn operands_of(&self, id: NodeId) -> &[NodeId] {
        &self.operands[id.0 as usize]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn count_if(&self, pred: impl Fn(&DfgOp) -> bool) -> usize {
        self.nodes.iter().filter(|n| pred(&n.op)).count()
    }

    /// Nodes that are not program I/O boundary (Read/Write).
    pub fn non_io_count(&self) -> usize {
        self.count_if(|op| !matches!(op, DfgOp::Read(_) | DfgOp::Write(_)))
    }

    pub fn compute_nodes(&self) -> impl Iterator<Item = &DfgNode> {
        self.nodes.iter().filter(|n| n.op.is_compute())
    }

    /// Resolves MacroCall latencies; `lookup` maps a signature to a latency.
    pub fn apply_macro_latencies(
        &mut self,
        mut lookup: impl FnMut(&str) -> Option<u32>,
    ) -> Result<(), String> {
        for n in &mut self.nodes {
            if let DfgOp::MacroCall(_) = n.op {
                let sig = n.signature.as_deref().expect("macro calls carry a signature");
                match lookup(sig) {
                    Some(lat) => n.latency = lat.max(1),
                    None => return Err(sig.to_string()),
                }
            }
        }
        Ok(())
    }

    /// Structural sanity: dense operand indices, per-op arity, forward edges.
    pub fn validate(&self) -> Result<(), CdfgError> {
        for (i, ops) in self.operands.iter().enumerate() {
            let node = &self.nodes[i];
            let arity: Option<usize> = match &node.op {
                DfgOp::Add | DfgOp::Sub | DfgOp::Mul | DfgOp::Div | DfgOp::Cmp(_) => Some(2),
                DfgOp::Mux => Some(3),
                DfgOp::Write(_) => Some(1),
                DfgOp::Const(_) | DfgOp::Read(_) => Some(0),
                DfgOp::MacroCall(_) => None,
            };
            if let Some(a) = arity {
                if ops.len() != a {
                    return Err(CdfgError::Width {
                        msg: format!("{} has {} operands, expected {}", node.id, ops.len(), a),
                    });
                }
            }
            for &src in ops {
                if src.0 as usize >= i {
                    return Err(CdfgError::Width {
                        msg: format!("edge {} -> {} is not forward", src, node.id),
                    });
                }
            }
        }
        let mut counts = vec![0usize; self.nodes.len()];
        for e in &self.edges {
            counts[e.dst.0 as usize] += 1;
        }
        for (i, ops) in self.operands.iter().enumerate() {
            if counts[i] != ops.len() {
                return Err(CdfgError::Width {
                    msg: format!("n{} operand slots do not match its edges", i),
                });
            }
        }
        Ok(())
    }

    /// Text dump for debugging and the synth artifacts.
    pub fn dump(&self) -> String {
        let mut out = format!("graph {}\n", self.name);
        for n in &self.nodes {
            out.push_str(&format!("node {} {} w={}\n", n.id.0, n.op.mnemonic(), n.width));
        }
        for e in &self.edges {
            out.push_str(&format!("edge {} {} {}\n", e.src.0, e.dst.0, e.idx));
        }
        out
    }
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum CdfgError {
    #[error("graph expansion exceeded the {cap}-node cap")]
    ExpansionLimit { cap: usize },
    #[error("{span}: {msg}")]
    Inline { span: Span, msg: String },
    #[error("width error: {msg}")]
    Width { msg: String },
    #[error("{span}: {msg}")]
    Elaboration { span: Span, msg: String },
}

/// How to treat calls to operator-annotated functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MacroHandling {
    /// Keep them as MacroCall nodes (Operator condition).
    Preserve,
    /// Elaborate their bodies like any other call (Frra/Flat conditions).
    Inline,
}

/// Builds the dataflow graph of the program's entry function.
pub fn build_cdfg(
    program: &BehaviorProgram,
    handling: MacroHandling,
    cap: usize,
) -> Result<DataFlowGraph, CdfgError> {
    let entry = program.entry_function();
    build(program, entry, handling, cap, false)
}

/// Builds the standalone graph of one function (used when registering it as
/// a macro block). Operator calls inside the body are rejected.
pub fn build_function_graph(
    program: &BehaviorProgram,
    func_name: &str,
    cap: usize,
) -> Result<DataFlowGraph, CdfgError> {
    let func = program.function(func_name).ok_or_else(|| CdfgError::Inline {
        span: Span::new(1, 1),
        msg: format!("unknown function `{}`", func_name),
    })?;
    build(program, func, MacroHandling::Inline, cap, true)
}

/// Recomputes the max-of-operands rule for unpinned nodes and checks that
/// every width is a legal signal width. Idempotent: construction already
/// applies the same rule.
pub fn infer_widths(graph: &mut DataFlowGraph) -> Result<(), CdfgError> {
    for i in 0..graph.nodes.len() {
        if !graph.nodes[i].pinned && graph.nodes[i].op.is_compute() {
            let w = graph.operands[i]
                .iter()
                .map(|&src| graph.nodes[src.0 as usize].width)
                .max()
                .unwrap_or(8)
                .min(16);
            graph.nodes[i].width = w;
        }
        let w = graph.nodes[i].width;
        if !matches!(w, 8 | 12 | 14 | 16) {
            return Err(CdfgError::Width {
                msg: format!("{} has width {}", graph.nodes[i].id, w),
            });
        }
    }
    Ok(())
}

/// Wraps `v` to `w` bits, two's complement.
pub fn mask_to_width(v: i64, w: u32) -> i64 {
    let shift = 64 - w;
    (v << shift) >> shift
}

// ---------------------------------------------------------------------------
// Elaboration
// ---------------------------------------------------------------------------

#[derive(Clone)]
enum Binding {
    Scalar(Option<NodeId>, u32),
    Array(Vec<Option<NodeId>>, u32),
    Loop(i64),
}

struct Elaborator<'p> {
    program: &'p BehaviorProgram,
    handling: MacroHandling,
    cap: usize,
    nodes: Vec<DfgNode>,
    edges: Vec<Edge>,
    operands: Vec<Vec<NodeId>>,
    scopes: Vec<HashMap<String, Binding>>,
}

fn build(
    program: &BehaviorProgram,
    entry: &FunctionDef,
    handling: MacroHandling,
    cap: usize,
    inside_operator: bool,
) -> Result<DataFlowGraph, CdfgError> {
    let mut el = Elaborator {
        program,
        handling,
        cap,
        nodes: Vec::new(),
        edges: Vec::new(),
        operands: Vec::new(),
        scopes: vec![HashMap::new()],
    };

    let mut inputs = Vec::new();
    for p in &entry.params {
        let w = p.ty.width().expect("validated: params are not void");
        match p.ty.array_len {
            None => {
                let id = el.push_node(DfgOp::Read(p.name.clone()), w, true, 0);
                inputs.push(Port { name: p.name.clone(), width: w });
                el.scopes[0].insert(p.name.clone(), Binding::Scalar(Some(id), w));
            }
            Some(len) => {
                let mut elems = Vec::with_capacity(len as usize);
                for i in 0..len {
                    let port = format!("{}[{}]", p.name, i);
                    let id = el.push_node(DfgOp::Read(port.clone()), w, true, 0);
                    inputs.push(Port { name: port, width: w });
                    elems.push(Some(id));
                }
                el.scopes[0].insert(p.name.clone(), Binding::Array(elems, w));
            }
        }
    }

    let result = el.run_body(&entry.body, entry, inside_operator)?;
    let ret_w = entry.ret.width().expect("validated: entry returns a value");
    let result = result.ok_or_else(|| CdfgError::Elaboration {
        span: entry.span,
        msg: format!("`{}` finished without returning a value", entry.name),
    })?;
    let write = el.push_node(DfgOp::Write("y".into()), ret_w, true, 0);
    el.push_edge(result, write, 0);

    let graph = DataFlowGraph {
        name: entry.name.clone(),
        nodes: el.nodes,
        edges: el.edges,
        operands: el.operands,
        inputs,
        output: Port { name: "y".into(), width: ret_w },
    };
    graph.validate()?;
    Ok(graph)
}

impl<'p> Elaborator<'p> {
    fn push_node(&mut self, op: DfgOp, width: u32, pinned: bool, latency: u32) -> NodeId {
        let id = NodeId(self.nodes.len() as u32);
        self.nodes.push(DfgNode {
            id,
            op,
            width,
            latency,
            pinned,
            share_name: None,
            signature: None,
        });
        self.operands.push(Vec::new());
        id
    }

    fn push_edge(&mut self, src: NodeId, dst: NodeId, idx: u32) {
        self.edges.push(Edge { src, dst, idx });
        let slots = &mut self.operands[dst.0 as usize];
        debug_assert_eq!(slots.len() as u32, idx, "operand indices are filled in order");
        slots.push(src);
    }

    fn check_cap(&self, span: Span) -> Result<(), CdfgError> {
        let _ = span;
        if self.nodes.len() > self.cap {
            return Err(CdfgError::ExpansionLimit { cap: self.cap });
        }
        Ok(())
    }

    fn lookup(&self, name: &str) -> Option<&Binding> {
        self.scopes.iter().rev().find_map(|s| s.get(name))
    }

    fn lookup_mut(&mut self, name: &str) -> Option<&mut Binding> {
        self.scopes.iter_mut().rev().find_map(|s| s.get_mut(name))
    }

    fn width_of(&self, id: NodeId) -> u32 {
        self.nodes[id.0 as usize].width
    }

    /// Compile-time evaluation of loop bounds and array indices.
    fn const_eval(&self, e: &Expr) -> Result<i64, CdfgError> {
        match e {
            Expr::IntLit(v, _) => Ok(*v),
            Expr::Var(name, span) => match self.lookup(name) {
                Some(Binding::Loop(v)) => Ok(*v),
                _ => Err(CdfgError::Elaboration {
                    span: *span,
                    msg: format!("`{}` is not a compile-time constant", name),
                }),
            },
            Expr::Neg(inner, _) => Ok(-self.const_eval(inner)?),
            Expr::Binary(op, l, r, span) => {
                let a = self.const_eval(l)?;
                let b = self.const_eval(r)?;
                match op {
                    BinOp::Add => Ok(a + b),
                    BinOp::Sub => Ok(a - b),
                    BinOp::Mul => Ok(a * b),
                    BinOp::Div => {
                        if b == 0 {
                            Err(CdfgError::Elaboration {
                                span: *span,
                                msg: "division by zero in a constant expression".into(),
                            })
                        } else {
                            Ok(a / b)
                        }
                    }
                    _ => Err(CdfgError::Elaboration {
                        span: *span,
                        msg: "comparison in a constant expression".into(),
                    }),
                }
            }
            other => Err(CdfgError::Elaboration {
                span: other.span(),
                msg: "expression is not a compile-time constant".into(),
            }),
        }
    }

    /// Elaborates a function body minus its trailing return; returns the
    /// return value node if the body ends in `return <expr>`.
    fn run_body(
        &mut self,
        body: &[Stmt],
        func: &FunctionDef,
        inside_operator: bool,
    ) -> Result<Option<NodeId>, CdfgError> {
        let mut result = None;
        for s in body {
            if let Stmt::Return { value, .. } = s {
                if let Some(e) = value {
                    let (id, _pinnable) = self.eval_expr(e, inside_operator)?;
                    let ret_w = func.ret.width().expect("non-void checked by caller");
                    // The return value is masked by the consumer (Write node
                    // or caller-side coercion), so the root keeps its width.
                    let _ = ret_w;
                    result = Some(id);
                }
            } else {
                self.elab_stmt(s, inside_operator)?;
            }
        }
        Ok(result)
    }

    fn elab_stmt(&mut self, s: &Stmt, inside_operator: bool) -> Result<(), CdfgError> {
        match s {
            Stmt::Decl { name, ty, init, span } => {
                let w = ty.width().expect("validated: no void variables");
                let binding = match ty.array_len {
                    Some(len) => Binding::Array(vec![None; len as usize], w),
                    None => match init {
                        Some(e) => {
                            let id = self.eval_coerced(e, w, inside_operator)?;
                            Binding::Scalar(Some(id), w)
                        }
                        None => Binding::Scalar(None, w),
                    },
                };
                self.scopes
                    .last_mut()
                    .expect("scope stack is never empty")
                    .insert(name.clone(), binding);
                self.check_cap(*span)
            }
            Stmt::Assign { target, value, span } => {
                match target {
                    LValue::Var(name, _) => {
                        let w = match self.lookup(name) {
                            Some(Binding::Scalar(_, w)) => *w,
                            _ => unreachable!("validated: scalar assignment target"),
                        };
                        let id = self.eval_coerced(value, w, inside_operator)?;
                        match self.lookup_mut(name) {
                            Some(Binding::Scalar(slot, _)) => *slot = Some(id),
                            _ => unreachable!(),
                        }
                    }
                    LValue::Elem(name, idx_expr, tspan) => {
                        let idx = self.const_eval(idx_expr)?;
                        let (len, w) = match self.lookup(name) {
                            Some(Binding::Array(elems, w)) => (elems.len() as i64, *w),
                            _ => unreachable!("validated: array element target"),
                        };
                        if idx < 0 || idx >= len {
                            return Err(CdfgError::Elaboration {
                                span: *tspan,
                                msg: format!("index {} out of bounds for `{}[{}]`", idx, name, len),
                            });
                        }
                        let id = self.eval_coerced(value, w, inside_operator)?;
                        match self.lookup_mut(name) {
                            Some(Binding::Array(elems, _)) => elems[idx as usize] = Some(id),
                            _ => unreachable!(),
                        }
                    }
                }
                self.check_cap(*span)
            }
            Stmt::For { var_ty: _, var, from, cond_op, bound, step, body, span } => {
                let from_v = self.const_eval(from)?;
                let bound_v = self.const_eval(bound)?;
                let step_v = match step {
                    LoopStep::Increment => 1,
                    LoopStep::AddConst(e) => self.const_eval(e)?,
                };
                let holds = |cur: i64| match cond_op {
                    BinOp::Lt => cur < bound_v,
                    BinOp::Le => cur <= bound_v,
                    BinOp::Gt => cur > bound_v,
                    BinOp::Ge => cur >= bound_v,
                    BinOp::Ne => cur != bound_v,
                    _ => unreachable!("parser restricts loop comparisons"),
                };
                let mut cur = from_v;
                let mut trips = 0u64;
                while holds(cur) {
                    trips += 1;
                    if trips > MAX_TRIPS {
                        return Err(CdfgError::ExpansionLimit { cap: self.cap });
                    }
                    let mut scope = HashMap::new();
                    scope.insert(var.clone(), Binding::Loop(cur));
                    self.scopes.push(scope);
                    for inner in body {
                        self.elab_stmt(inner, inside_operator)?;
                    }
                    self.merge_scope_into_parent();
                    cur += step_v;
                    self.check_cap(*span)?;
                }
                // The loop variable's exit value stays visible when it was
                // declared outside the loop.
                if self.lookup(var).is_some() {
                    if let Some(Binding::Loop(v)) = self.lookup_mut(var) {
                        *v = cur;
                    }
                }
                Ok(())
            }
            Stmt::If { cond, then_body, else_body, span } => {
                let (cond_id, _) = self.eval_expr(cond, inside_operator)?;
                let base = self.scopes.clone();

                for inner in then_body {
                    self.elab_stmt(inner, inside_operator)?;
                }
                let then_scopes = std::mem::replace(&mut self.scopes, base.clone());

                for inner in else_body {
                    self.elab_stmt(inner, inside_operator)?;
                }
                let else_scopes = std::mem::replace(&mut self.scopes, base);

                self.merge_branches(cond_id, then_scopes, else_scopes)?;
                self.check_cap(*span)
            }
            Stmt::Return { .. } => unreachable!("validated: return is the final statement"),
        }
    }

    /// Drops the innermost scope (loop-body locals go out of scope; writes to
    /// outer variables already went through `lookup_mut`).
    fn merge_scope_into_parent(&mut self) {
        self.scopes.pop();
    }

    /// If-conversion: for every variable whose binding differs between the
    /// two arms, insert a Mux selecting on the condition.
    fn merge_branches(
        &mut self,
        cond: NodeId,
        then_scopes: Vec<HashMap<String, Binding>>,
        else_scopes: Vec<HashMap<String, Binding>>,
    ) -> Result<(), CdfgError> {
        for level in 0..self.scopes.len() {
            let names: Vec<String> = self.scopes[level].keys().cloned().collect();
            for name in names {
                let t = then_scopes[level].get(&name).cloned();
                let e = else_scopes[level].get(&name).cloned();
                let (Some(t), Some(e)) = (t, e) else { continue };
                let merged = match (t, e) {
                    (Binding::Scalar(a, w), Binding::Scalar(b, _)) => {
                        Binding::Scalar(self.merge_values(cond, a, b, w)?, w)
                    }
                    (Binding::Array(a, w), Binding::Array(b, _)) => {
                        let mut elems = Vec::with_capacity(a.len());
                        for (av, bv) in a.into_iter().zip(b.into_iter()) {
                            elems.push(self.merge_values(cond, av, bv, w)?);
                        }
                        Binding::Array(elems, w)
                    }
                    (other, _) => other, // loop constants are immutable in arms
                };
                self.scopes[level].insert(name, merged);
            }
        }
        Ok(())
    }

    fn merge_values(
        &mut self,
        cond: NodeId,
        a: Option<NodeId>,
        b: Option<NodeId>,
        width: u32,
    ) -> Result<Option<NodeId>, CdfgError> {
        match (a, b) {
            (Some(x), Some(y)) if x == y => Ok(Some(x)),
            (Some(x), Some(y)) => {
                let mux = self.push_node(DfgOp::Mux, width, true, 1);
                self.push_edge(cond, mux, 0);
                self.push_edge(x, mux, 1);
                self.push_edge(y, mux, 2);
                Ok(Some(mux))
            }
            // Assigned on one path only: unusable afterwards (conservative).
            _ => Ok(None),
        }
    }

    /// Evaluates `e` and conforms the result to `width`: pins a fresh root,
    /// shares an equal-width node, or inserts an `Add(x, 0)` conversion.
    fn eval_coerced(
        &mut self,
        e: &Expr,
        width: u32,
        inside_operator: bool,
    ) -> Result<NodeId, CdfgError> {
        let (id, pinnable) = self.eval_expr(e, inside_operator)?;
        Ok(self.coerce(id, width, pinnable))
    }

    fn coerce(&mut self, id: NodeId, width: u32, pinnable: bool) -> NodeId {
        if self.width_of(id) == width {
            return id;
        }
        if pinnable {
            let n = &mut self.nodes[id.0 as usize];
            n.width = width;
            n.pinned = true;
            if let DfgOp::Const(v) = n.op {
                n.op = DfgOp::Const(mask_to_width(v, width));
            }
            return id;
        }
        let zero = self.push_node(DfgOp::Const(0), width, true, 0);
        let conv = self.push_node(DfgOp::Add, width, true, 1);
        self.push_edge(id, conv, 0);
        self.push_edge(zero, conv, 1);
        conv
    }

    /// Returns the node and whether it is a fresh root that a destination
    /// may still pin to another width.
    fn eval_expr(
        &mut self,
        e: &Expr,
        inside_operator: bool,
    ) -> Result<(NodeId, bool), CdfgError> {
        match e {
            Expr::IntLit(v, _) => {
                let w = TypeKind::fitting(*v).width().unwrap();
                let id = self.push_node(DfgOp::Const(mask_to_width(*v, w)), w, false, 0);
                Ok((id, true))
            }
            Expr::Var(name, span) => match self.lookup(name).cloned() {
                Some(Binding::Scalar(Some(id), _)) => Ok((id, false)),
                Some(Binding::Scalar(None, _)) => Err(CdfgError::Elaboration {
                    span: *span,
                    msg: format!("`{}` is used before it is assigned", name),
                }),
                Some(Binding::Loop(v)) => {
                    let w = TypeKind::fitting(v).width().unwrap();
                    let id = self.push_node(DfgOp::Const(mask_to_width(v, w)), w, false, 0);
                    Ok((id, true))
                }
                Some(Binding::Array(..)) => unreachable!("validated: no bare array reads"),
                None => unreachable!("validated: identifiers resolve"),
            },
            Expr::Elem(name, idx_expr, span) => {
                let idx = self.const_eval(idx_expr)?;
                match self.lookup(name).cloned() {
                    Some(Binding::Array(elems, _)) => {
                        if idx < 0 || idx >= elems.len() as i64 {
                            return Err(CdfgError::Elaboration {
                                span: *span,
                                msg: format!(
                                    "index {} out of bounds for `{}[{}]`",
                                    idx,
                                    name,
                                    elems.len()
                                ),
                            });
                        }
                        match elems[idx as usize] {
                            Some(id) => Ok((id, false)),
                            None => Err(CdfgError::Elaboration {
                                span: *span,
                                msg: format!(
                                    "`{}[{}]` is used before it is assigned",
                                    name, idx
                                ),
                            }),
                        }
                    }
                    _ => unreachable!("validated: element access on arrays"),
                }
            }
            Expr::Neg(inner, span) => {
                // -x lowers to Sub(0, x).
                let (x, _) = self.eval_expr(inner, inside_operator)?;
                let w = self.width_of(x);
                let zero = self.push_node(DfgOp::Const(0), w, false, 0);
                let sub = self.push_node(DfgOp::Sub, w, false, 1);
                self.push_edge(zero, sub, 0);
                self.push_edge(x, sub, 1);
                self.check_cap(*span)?;
                Ok((sub, true))
            }
            Expr::Binary(op, l, r, span) => {
                let (a, _) = self.eval_expr(l, inside_operator)?;
                let (b, _) = self.eval_expr(r, inside_operator)?;
                let w = self.width_of(a).max(self.width_of(b)).min(16);
                let dfg_op = match op {
                    BinOp::Add => DfgOp::Add,
                    BinOp::Sub => DfgOp::Sub,
                    BinOp::Mul => DfgOp::Mul,
                    BinOp::Div => DfgOp::Div,
                    BinOp::Lt => DfgOp::Cmp(Relation::Lt),
                    BinOp::Le => DfgOp::Cmp(Relation::Le),
                    BinOp::Eq => DfgOp::Cmp(Relation::Eq),
                    BinOp::Ne => DfgOp::Cmp(Relation::Ne),
                    BinOp::Ge => DfgOp::Cmp(Relation::Ge),
                    BinOp::Gt => DfgOp::Cmp(Relation::Gt),
                };
                let id = self.push_node(dfg_op, w, false, 1);
                self.push_edge(a, id, 0);
                self.push_edge(b, id, 1);
                self.check_cap(*span)?;
                Ok((id, true))
            }
            Expr::Call(name, args, span) => self.eval_call(name, args, *span, inside_operator),
        }
    }

    fn eval_call(
        &mut self,
        name: &str,
        args: &[Expr],
        span: Span,
        inside_operator: bool,
    ) -> Result<(NodeId, bool), CdfgError> {
        let callee = self
            .program
            .function(name)
            .expect("validated: functions resolve")
            .clone();
        if args.len() != callee.params.len() {
            return Err(CdfgError::Inline {
                span,
                msg: format!(
                    "`{}` takes {} arguments, got {}",
                    name,
                    callee.params.len(),
                    args.len()
                ),
            });
        }

        let preserve = callee.is_operator()
            && self.handling == MacroHandling::Preserve
            && !inside_operator;
        if callee.is_operator() && inside_operator {
            return Err(CdfgError::Inline {
                span,
                msg: format!("nested operator call to `{}` is not supported", name),
            });
        }

        // Evaluate arguments in order; arrays pass whole, by value.
        let mut scalar_args: Vec<Option<NodeId>> = Vec::new();
        let mut array_args: Vec<Option<Vec<Option<NodeId>>>> = Vec::new();
        for (arg, param) in args.iter().zip(&callee.params) {
            let pw = param.ty.width().unwrap();
            match param.ty.array_len {
                Some(len) => {
                    let Expr::Var(aname, aspan) = arg else {
                        return Err(CdfgError::Inline {
                            span: arg.span(),
                            msg: format!("argument for `{}` must be an array variable", param.name),
                        });
                    };
                    let binding = self.lookup(aname).cloned();
                    match binding {
                        Some(Binding::Array(elems, w))
                            if elems.len() == len as usize && w == pw =>
                        {
                            array_args.push(Some(elems));
                            scalar_args.push(None);
                        }
                        Some(Binding::Array(elems, _)) => {
                            return Err(CdfgError::Inline {
                                span: *aspan,
                                msg: format!(
                                    "`{}` has type {}[{}], expected {}",
                                    aname,
                                    "int",
                                    elems.len(),
                                    param.ty
                                ),
                            });
                        }
                        _ => {
                            return Err(CdfgError::Inline {
                                span: *aspan,
                                msg: format!("`{}` is not an array", aname),
                            });
                        }
                    }
                }
                None => {
                    if matches!(arg, Expr::Var(n, _) if matches!(self.lookup(n), Some(Binding::Array(..))))
                    {
                        return Err(CdfgError::Inline {
                            span: arg.span(),
                            msg: format!("array passed where scalar `{}` expected", param.name),
                        });
                    }
                    let id = self.eval_coerced(arg, pw, inside_operator)?;
                    scalar_args.push(Some(id));
                    array_args.push(None);
                }
            }
        }

        if preserve {
            let ret_w = callee.ret.width().ok_or_else(|| CdfgError::Inline {
                span,
                msg: format!("operator `{}` must return a value", name),
            })?;
            let call = self.push_node(DfgOp::MacroCall(name.to_string()), ret_w, true, 1);
            self.nodes[call.0 as usize].share_name = callee.share_name().map(str::to_string);
            self.nodes[call.0 as usize].signature = Some(callee.signature());
            let mut idx = 0u32;
            for (i, param) in callee.params.iter().enumerate() {
                match param.ty.array_len {
                    Some(_) => {
                        let elems = array_args[i].as_ref().unwrap();
                        for (j, elem) in elems.iter().enumerate() {
                            let src = elem.ok_or_else(|| CdfgError::Elaboration {
                                span,
                                msg: format!(
                                    "`{}[{}]` is not fully assigned before the call",
                                    param.name, j
                                ),
                            })?;
                            self.push_edge(src, call, idx);
                            idx += 1;
                        }
                    }
                    None => {
                        self.push_edge(scalar_args[i].unwrap(), call, idx);
                        idx += 1;
                    }
                }
            }
            self.check_cap(span)?;
            return Ok((call, false));
        }

        // Inline: fresh scope frame holding only the parameters.
        let mut frame = HashMap::new();
        for (i, param) in callee.params.iter().enumerate() {
            let w = param.ty.width().unwrap();
            let binding = match param.ty.array_len {
                Some(_) => Binding::Array(array_args[i].clone().unwrap(), w),
                None => Binding::Scalar(scalar_args[i], w),
            };
            frame.insert(param.name.clone(), binding);
        }
        let saved = std::mem::replace(&mut self.scopes, vec![frame]);
        let body_is_operator = inside_operator || callee.is_operator();
        let result = self.run_body(&callee.body, &callee, body_is_operator);
        self.scopes = saved;
        let result = result?;

        let ret_w = callee.ret.width().expect("validated: value calls are non-void");
        let id = result.ok_or_else(|| CdfgError::Elaboration {
            span,
            msg: format!("`{}` finished without returning a value", name),
        })?;
        // The return value behaves like an assignment to the return slot.
        let id = self.coerce(id, ret_w, false);
        Ok((id, false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse;

    fn graph_of(src: &str) -> DataFlowGraph {
        let p = parse(src).unwrap();
        let mut g = build_cdfg(&p, MacroHandling::Preserve, DEFAULT_EXPANSION_CAP).unwrap();
        infer_widths(&mut g).unwrap();
        g
    }

    #[test]
    fn sum_of_products_structure() {
        let g = graph_of("int8 f(int8 a, int8 b, int8 c, int8 d) { return (a * b) + (c * d); }");
        assert_eq!(g.count_if(|op| matches!(op, DfgOp::Mul)), 2);
        assert_eq!(g.count_if(|op| matches!(op, DfgOp::Add)), 1);
        assert_eq!(g.count_if(|op| matches!(op, DfgOp::Read(_))), 4);
        assert_eq!(g.count_if(|op| matches!(op, DfgOp::Write(_))), 1);
        assert_eq!(g.node_count(), 8);
    }

    #[test]
    fn loop_unrolls_into_a_dependence_chain() {
        let g = graph_of(
            "int8 f(int8 a[3]) { int8 s = 0; for (int8 i = 0; i < 3; i++) { s = s + a[i]; } return s; }",
        );
        assert_eq!(g.count_if(|op| matches!(op, DfgOp::Add)), 3);
        // Each Add consumes the previous one: a chain, not a tree.
        let adds: Vec<&DfgNode> =
            g.nodes.iter().filter(|n| matches!(n.op, DfgOp::Add)).collect();
        for pair in adds.windows(2) {
            assert!(g.operands_of(pair[1].id).contains(&pair[0].id));
        }
    }

    #[test]
    fn zero_trip_loop_adds_nothing() {
        let g = graph_of(
            "int8 f(int8 a[3]) { int8 s = 0; for (int8 i = 3; i < 3; i++) { s = s + a[i]; } return s; }",
        );
        assert_eq!(g.count_if(|op| matches!(op, DfgOp::Add)), 0);
    }

    #[test]
    fn intermediate_widths_take_operand_max() {
        // Exhaustive over width pairs: (aW1 * bW2) stays an intermediate
        // because the enclosing Add is the pinned assignment root.
        let widths = [("int8", 8u32), ("int12", 12), ("int14", 14), ("int16", 16)];
        for (t1, w1) in widths {
            for (t2, w2) in widths {
                let src = format!(
                    "int16 f({t1} a, {t2} b) {{ int16 r = (a * b) + 0; return r; }}"
                );
                let g = graph_of(&src);
                let mul = g.nodes.iter().find(|n| matches!(n.op, DfgOp::Mul)).unwrap();
                assert_eq!(mul.width, w1.max(w2), "widths {w1} x {w2}");
            }
        }
    }

    #[test]
    fn assignment_pins_the_root_width() {
        let g = graph_of("int12 f(int16 a, int16 b) { int12 x = a * b; return x; }");
        let mul = g.nodes.iter().find(|n| matches!(n.op, DfgOp::Mul)).unwrap();
        assert_eq!(mul.width, 12);
        assert!(mul.pinned);
        // The Write still records the output truncation width.
        let write = g.nodes.iter().find(|n| matches!(n.op, DfgOp::Write(_))).unwrap();
        assert_eq!(write.width, 12);
    }

    #[test]
    fn width_mismatch_on_variable_reuse_inserts_a_conversion() {
        let g = graph_of("int8 f(int16 a) { int8 x = a; return x; }");
        // a(16) copied into x(8): Add(a, 0) at width 8.
        let conv = g.nodes.iter().find(|n| matches!(n.op, DfgOp::Add)).unwrap();
        assert_eq!(conv.width, 8);
    }

    #[test]
    fn infer_widths_is_idempotent() {
        let p = parse("int16 f(int8 a, int16 b) { int16 r = (a + a) * b; return r; }").unwrap();
        let mut g = build_cdfg(&p, MacroHandling::Preserve, DEFAULT_EXPANSION_CAP).unwrap();
        infer_widths(&mut g).unwrap();
        let widths: Vec<u32> = g.nodes.iter().map(|n| n.width).collect();
        infer_widths(&mut g).unwrap();
        let again: Vec<u32> = g.nodes.iter().map(|n| n.width).collect();
        assert_eq!(widths, again);
    }

    #[test]
    fn if_else_merges_through_a_mux() {
        let g = graph_of(
            "int8 f(int8 a) { int8 x = 0; if (a < 2) { x = a; } else { x = 7; } return x; }",
        );
        assert_eq!(g.count_if(|op| matches!(op, DfgOp::Mux)), 1);
        assert_eq!(g.count_if(|op| matches!(op, DfgOp::Cmp(_))), 1);
        let mux = g.nodes.iter().find(|n| matches!(n.op, DfgOp::Mux)).unwrap();
        assert_eq!(g.operands_of(mux.id).len(), 3);
    }

    #[test]
    fn untouched_variables_are_not_muxed() {
        let g = graph_of(
            "int8 f(int8 a) { int8 x = 1; int8 y = 2; if (a < 2) { x = a; } else { x = 7; } return y; }",
        );
        assert_eq!(g.count_if(|op| matches!(op, DfgOp::Mux)), 1);
    }

    #[test]
    fn operator_calls_become_macro_nodes() {
        let src = "/* Cyber func = operator */\nint16 conv(int16 p[9], int16 k[9]) { int16 acc = 0; for (int8 i = 0; i < 9; i++) { acc = acc + p[i] * k[i]; } return acc; }\nint16 main(int16 p[9]) { int16 k[9]; for (int8 i = 0; i < 9; i++) { k[i] = 1; } return conv(p, k); }";
        let p = parse(src).unwrap();
        let g = build_cdfg(&p, MacroHandling::Preserve, DEFAULT_EXPANSION_CAP).unwrap();
        assert_eq!(g.count_if(|op| matches!(op, DfgOp::MacroCall(_))), 1);
        let call = g.nodes.iter().find(|n| matches!(n.op, DfgOp::MacroCall(_))).unwrap();
        assert_eq!(g.operands_of(call.id).len(), 18);
        assert_eq!(call.signature.as_deref(), Some("conv(int16[9],int16[9])->int16"));

        // The same program inlined has no macro nodes and 9 Mul.
        let g = build_cdfg(&p, MacroHandling::Inline, DEFAULT_EXPANSION_CAP).unwrap();
        assert_eq!(g.count_if(|op| matches!(op, DfgOp::MacroCall(_))), 0);
        assert_eq!(g.count_if(|op| matches!(op, DfgOp::Mul)), 9);
    }

    #[test]
    fn helper_functions_inline_transparently() {
        let g = graph_of(
            "int8 mac(int8 a, int8 b, int8 c) { return a + b * c; }\nint8 main(int8 x, int8 y) { return mac(x, y, y); }",
        );
        assert_eq!(g.count_if(|op| matches!(op, DfgOp::Mul)), 1);
        assert_eq!(g.count_if(|op| matches!(op, DfgOp::Add)), 1);
        assert_eq!(g.count_if(|op| matches!(op, DfgOp::MacroCall(_))), 0);
    }

    #[test]
    fn nested_operator_calls_are_rejected() {
        let src = "/* Cyber func = operator */\nint8 inner(int8 a) { return a + 1; }\n/* Cyber func = operator */\nint8 outer(int8 a) { return inner(a) + 1; }\nint8 main(int8 a) { return outer(a); }";
        let p = parse(src).unwrap();
        let err = build_cdfg(&p, MacroHandling::Preserve, DEFAULT_EXPANSION_CAP).unwrap_err();
        assert!(matches!(err, CdfgError::Inline { .. }), "{err}");
        assert!(err.to_string().contains("nested operator"), "{err}");
    }

    #[test]
    fn arity_mismatch_is_an_inline_error() {
        let src = "int8 f(int8 a, int8 b) { return a + b; }\nint8 main(int8 a) { return f(a); }";
        let p = parse(src).unwrap();
        let err = build_cdfg(&p, MacroHandling::Inline, DEFAULT_EXPANSION_CAP).unwrap_err();
        assert!(matches!(err, CdfgError::Inline { .. }), "{err}");
    }

    #[test]
    fn expansion_cap_trips() {
        let src = "int8 f(int8 a) { int8 s = 0; for (int16 i = 0; i < 300; i++) { s = s + a; } return s; }";
        let p = parse(src).unwrap();
        let err = build_cdfg(&p, MacroHandling::Inline, 64).unwrap_err();
        assert!(matches!(err, CdfgError::ExpansionLimit { .. }), "{err}");
    }

    #[test]
    fn use_before_assignment_is_reported() {
        let src = "int8 f(int8 a) { int8 x; return x + a; }";
        let p = parse(src).unwrap();
        let err = build_cdfg(&p, MacroHandling::Inline, DEFAULT_EXPANSION_CAP).unwrap_err();
        assert!(err.to_string().contains("before it is assigned"), "{err}");
    }

    #[test]
    fn graph_edges_point_forward() {
        let g = graph_of(
            "int16 f(int16 a, int16 b) { int16 x = a * b; if (x < 0) { x = 0 - x; } return x; }",
        );
        g.validate().unwrap();
        for e in &g.edges {
            assert!(e.src < e.dst);
        }
    }

    #[test]
    fn negation_lowers_to_sub_from_zero() {
        let g = graph_of("int8 f(int8 a) { return -a; }");
        assert_eq!(g.count_if(|op| matches!(op, DfgOp::Sub)), 1);
        // Literal negation folds in the parser instead.
        let g = graph_of("int8 f(int8 a) { return a + -3; }");
        assert_eq!(g.count_if(|op| matches!(op, DfgOp::Sub)), 0);
        assert_eq!(g.count_if(|op| matches!(op, DfgOp::Const(-3))), 1);
    }

    #[test]
    fn dump_lists_nodes_then_edges() {
        let g = graph_of("int8 f(int8 a) { return a + 1; }");
        let dump = g.dump();
        assert!(dump.starts_with("graph f\n"));
        assert!(dump.contains("node 0 read:a w=8"));
        assert!(dump.contains("edge 0 2 0"));
    }
}
