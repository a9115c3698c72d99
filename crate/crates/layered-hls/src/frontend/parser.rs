//! Recursive-descent parser producing a `BehaviorProgram`.

use super::ast::*;
use super::lexer::{Token, TokenKind};
use super::FrontendError;

pub struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    pub fn new(tokens: Vec<Token>) -> Self {
        Parser { tokens, pos: 0 }
    }

    fn peek(&self) -> &TokenKind {
        &self.tokens[self.pos].kind
    }

    fn span(&self) -> Span {
        self.tokens[self.pos].span
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, kind: TokenKind, what: &str) -> Result<Token, FrontendError> {
        if self.peek() == &kind {
            Ok(self.bump())
        } else {
            Err(FrontendError::syntax(
                self.span(),
                format!("expected {}, found {}", what, describe(self.peek())),
            ))
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<(String, Span), FrontendError> {
        let span = self.span();
        match self.peek().clone() {
            TokenKind::Ident(name) => {
                self.bump();
                Ok((name, span))
            }
            other => Err(FrontendError::syntax(
                span,
                format!("expected {}, found {}", what, describe(&other)),
            )),
        }
    }

    /// program := { pragma* function }
    pub fn parse_program(&mut self) -> Result<Vec<FunctionDef>, FrontendError> {
        let mut functions = Vec::new();
        loop {
            let mut pragmas = Vec::new();
            while let TokenKind::Pragma(p) = self.peek().clone() {
                pragmas.push(p);
                self.bump();
            }
            if self.peek() == &TokenKind::Eof {
                if let Some(p) = pragmas.first() {
                    return Err(FrontendError::pragma(
                        p.span,
                        "pragma is not attached to a function definition",
                    ));
                }
                return Ok(functions);
            }
            let mut f = self.parse_function()?;
            f.pragmas = pragmas;
            functions.push(f);
        }
    }

    fn parse_type_kind(&mut self) -> Result<(TypeKind, Span), FrontendError> {
        let span = self.span();
        let kind = match self.peek() {
            TokenKind::KwInt8 => TypeKind::Int8,
            TokenKind::KwInt12 => TypeKind::Int12,
            TokenKind::KwInt14 => TypeKind::Int14,
            TokenKind::KwInt16 => TypeKind::Int16,
            TokenKind::KwVoid => TypeKind::Void,
            other => {
                return Err(FrontendError::syntax(
                    span,
                    format!("expected a type, found {}", describe(other)),
                ));
            }
        };
        self.bump();
        Ok((kind, span))
    }

    fn parse_array_suffix(&mut self) -> Result<Option<u32>, FrontendError> {
        if self.peek() != &TokenKind::LBracket {
            return Ok(None);
        }
        self.bump();
        let span = self.span();
        let len = match self.peek() {
            TokenKind::Int(v) => *v,
            other => {
                return Err(FrontendError::syntax(
                    span,
                    format!("expected an array length literal, found {}", describe(other)),
                ));
            }
        };
        self.bump();
        if len < 1 {
            return Err(FrontendError::semantic(span, "array length must be at least 1"));
        }
        self.expect(TokenKind::RBracket, "`]`")?;
        Ok(Some(len as u32))
    }

    fn parse_function(&mut self) -> Result<FunctionDef, FrontendError> {
        let (ret_kind, fspan) = self.parse_type_kind()?;
        let ret_len = self.parse_array_suffix()?;
        let (name, _) = self.expect_ident("a function name")?;
        self.expect(TokenKind::LParen, "`(`")?;
        let mut params = Vec::new();
        if self.peek() != &TokenKind::RParen {
            loop {
                let (kind, pspan) = self.parse_type_kind()?;
                let (pname, _) = self.expect_ident("a parameter name")?;
                let plen = self.parse_array_suffix()?;
                params.push(Param {
                    name: pname,
                    ty: SignalType { kind, array_len: plen },
                    span: pspan,
                });
                if self.peek() == &TokenKind::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect(TokenKind::RParen, "`)`")?;
        self.expect(TokenKind::LBrace, "`{`")?;
        let body = self.parse_block_body()?;
        Ok(FunctionDef {
            name,
            params,
            ret: SignalType { kind: ret_kind, array_len: ret_len },
            body,
            pragmas: Vec::new(),
            span: fspan,
        })
    }

    /// Statements up to and including the closing `}`.
    fn parse_block_body(&mut self) -> Result<Vec<Stmt>, FrontendError> {
        let mut stmts = Vec::new();
        loop {
            match self.peek() {
                TokenKind::RBrace => {
                    self.bump();
                    return Ok(stmts);
                }
                TokenKind::Eof => {
                    return Err(FrontendError::syntax(self.span(), "expected `}`, found end of input"));
                }
                TokenKind::Pragma(p) => {
                    return Err(FrontendError::pragma(
                        p.span,
                        "pragma is not attached to a function definition",
                    ));
                }
                _ => stmts.push(self.parse_stmt()?),
            }
        }
    }

    fn parse_stmt(&mut self) -> Result<Stmt, FrontendError> {
        let span = self.span();
        match self.peek().clone() {
            TokenKind::KwInt8 | TokenKind::KwInt12 | TokenKind::KwInt14 | TokenKind::KwInt16
            | TokenKind::KwVoid => {
                let (kind, _) = self.parse_type_kind()?;
                let (name, _) = self.expect_ident("a variable name")?;
                let len = self.parse_array_suffix()?;
                let ty = SignalType { kind, array_len: len };
                let init = if self.peek() == &TokenKind::Assign {
                    self.bump();
                    Some(self.parse_expr()?)
                } else {
                    None
                };
                self.expect(TokenKind::Semi, "`;`")?;
                Ok(Stmt::Decl { name, ty, init, span })
            }
            TokenKind::KwFor => self.parse_for(),
            TokenKind::KwIf => self.parse_if(),
            TokenKind::KwReturn => {
                self.bump();
                let value = if self.peek() == &TokenKind::Semi {
                    None
                } else {
                    Some(self.parse_expr()?)
                };
                self.expect(TokenKind::Semi, "`;`")?;
                Ok(Stmt::Return { value, span })
            }
            TokenKind::Ident(_) => {
                let target = self.parse_lvalue()?;
                self.expect(TokenKind::Assign, "`=`")?;
                let value = self.parse_expr()?;
                self.expect(TokenKind::Semi, "`;`")?;
                Ok(Stmt::Assign { target, value, span })
            }
            other => Err(FrontendError::syntax(
                span,
                format!("expected a statement, found {}", describe(&other)),
            )),
        }
    }

    fn parse_lvalue(&mut self) -> Result<LValue, FrontendError> {
        let (name, span) = self.expect_ident("an assignment target")?;
        if self.peek() == &TokenKind::LBracket {
            self.bump();
            let idx = self.parse_expr()?;
            self.expect(TokenKind::RBracket, "`]`")?;
            Ok(LValue::Elem(name, Box::new(idx), span))
        } else {
            Ok(LValue::Var(name, span))
        }
    }

    /// for := "for" "(" [type] ident "=" expr ";" ident relop expr ";" step ")" "{" ... "}"
    fn parse_for(&mut self) -> Result<Stmt, FrontendError> {
        let span = self.span();
        self.bump(); // for
        self.expect(TokenKind::LParen, "`(`")?;
        let var_ty = match self.peek() {
            TokenKind::KwInt8 | TokenKind::KwInt12 | TokenKind::KwInt14 | TokenKind::KwInt16 => {
                let (kind, _) = self.parse_type_kind()?;
                Some(SignalType::scalar(kind))
            }
            _ => None,
        };
        let (var, _) = self.expect_ident("a loop variable")?;
        self.expect(TokenKind::Assign, "`=`")?;
        let from = self.parse_expr()?;
        self.expect(TokenKind::Semi, "`;`")?;
        let (cond_var, cond_span) = self.expect_ident("the loop variable")?;
        if cond_var != var {
            return Err(FrontendError::syntax(
                cond_span,
                format!("loop condition must test `{}`", var),
            ));
        }
        let cond_op = match self.peek() {
            TokenKind::Lt => BinOp::Lt,
            TokenKind::Le => BinOp::Le,
            TokenKind::Gt => BinOp::Gt,
            TokenKind::Ge => BinOp::Ge,
            TokenKind::Ne => BinOp::Ne,
            other => {
                return Err(FrontendError::syntax(
                    self.span(),
                    format!("expected a loop comparison, found {}", describe(other)),
                ));
            }
        };
        self.bump();
        let bound = self.parse_expr()?;
        self.expect(TokenKind::Semi, "`;`")?;
        let (step_var, step_span) = self.expect_ident("the loop variable")?;
        if step_var != var {
            return Err(FrontendError::syntax(
                step_span,
                format!("loop step must update `{}`", var),
            ));
        }
        let step = match self.peek().clone() {
            TokenKind::PlusPlus => {
                self.bump();
                LoopStep::Increment
            }
            TokenKind::Assign => {
                self.bump();
                let (base, base_span) = self.expect_ident("the loop variable")?;
                if base != var {
                    return Err(FrontendError::syntax(
                        base_span,
                        format!("loop step must have the form `{0}++` or `{0} = {0} + <step>`", var),
                    ));
                }
                self.expect(TokenKind::Plus, "`+`")?;
                let inc = self.parse_expr()?;
                LoopStep::AddConst(inc)
            }
            other => {
                return Err(FrontendError::syntax(
                    self.span(),
                    format!("expected `++` or `=`, found {}", describe(&other)),
                ));
            }
        };
        self.expect(TokenKind::RParen, "`)`")?;
        self.expect(TokenKind::LBrace, "`{`")?;
        let body = self.parse_block_body()?;
        Ok(Stmt::For { var_ty, var, from, cond_op, bound, step, body, span })
    }

    fn parse_if(&mut self) -> Result<Stmt, FrontendError> {
        let span = self.span();
        self.bump(); // if
        self.expect(TokenKind::LParen, "`(`")?;
        let cond = self.parse_expr()?;
        self.expect(TokenKind::RParen, "`)`")?;
        self.expect(TokenKind::LBrace, "`{`")?;
        let then_body = self.parse_block_body()?;
        let else_body = if self.peek() == &TokenKind::KwElse {
            self.bump();
            self.expect(TokenKind::LBrace, "`{`")?;
            self.parse_block_body()?
        } else {
            Vec::new()
        };
        Ok(Stmt::If { cond, then_body, else_body, span })
    }

    /// expr := additive [ relop additive ] — comparison is non-associative.
    pub fn parse_expr(&mut self) -> Result<Expr, FrontendError> {
        let lhs = self.parse_additive()?;
        let op = match self.peek() {
            TokenKind::Lt => Some(BinOp::Lt),
            TokenKind::Le => Some(BinOp::Le),
            TokenKind::EqEq => Some(BinOp::Eq),
            TokenKind::Ne => Some(BinOp::Ne),
            TokenKind::Ge => Some(BinOp::Ge),
            TokenKind::Gt => Some(BinOp::Gt),
            _ => None,
        };
        if let Some(op) = op {
            let span = self.span();
            self.bump();
            let rhs = self.parse_additive()?;
            return Ok(Expr::Binary(op, Box::new(lhs), Box::new(rhs), span));
        }
        Ok(lhs)
    }

    fn parse_additive(&mut self) -> Result<Expr, FrontendError> {
        let mut lhs = self.parse_multiplicative()?;
        loop {
            let op = match self.peek() {
                TokenKind::Plus => BinOp::Add,
                TokenKind::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            let span = self.span();
            self.bump();
            let rhs = self.parse_multiplicative()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs), span);
        }
    }

    fn parse_multiplicative(&mut self) -> Result<Expr, FrontendError> {
        let mut lhs = self.parse_unary()?;
        loop {
            let op = match self.peek() {
                TokenKind::Star => BinOp::Mul,
                TokenKind::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            let span = self.span();
            self.bump();
            let rhs = self.parse_unary()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs), span);
        }
    }

    fn parse_unary(&mut self) -> Result<Expr, FrontendError> {
        if self.peek() == &TokenKind::Minus {
            let span = self.span();
            self.bump();
            let inner = self.parse_unary()?;
            // Fold a negated literal so kernel constants stay single tokens.
            if let Expr::IntLit(v, _) = inner {
                if -v < -32768 {
                    return Err(FrontendError::syntax(span, "integer literal exceeds the int16 range"));
                }
                return Ok(Expr::IntLit(-v, span));
            }
            return Ok(Expr::Neg(Box::new(inner), span));
        }
        self.parse_primary()
    }

    fn parse_primary(&mut self) -> Result<Expr, FrontendError> {
        let span = self.span();
        match self.peek().clone() {
            TokenKind::Int(v) => {
                self.bump();
                Ok(Expr::IntLit(v, span))
            }
            TokenKind::LParen => {
                self.bump();
                let e = self.parse_expr()?;
                self.expect(TokenKind::RParen, "`)`")?;
                Ok(e)
            }
            TokenKind::Ident(name) => {
                self.bump();
                match self.peek() {
                    TokenKind::LParen => {
                        self.bump();
                        let mut args = Vec::new();
                        if self.peek() != &TokenKind::RParen {
                            loop {
                                args.push(self.parse_expr()?);
                                if self.peek() == &TokenKind::Comma {
                                    self.bump();
                                } else {
                                    break;
                                }
                            }
                        }
                        self.expect(TokenKind::RParen, "`)`")?;
                        Ok(Expr::Call(name, args, span))
                    }
                    TokenKind::LBracket => {
                        self.bump();
                        let idx = self.parse_expr()?;
                        self.expect(TokenKind::RBracket, "`]`")?;
                        Ok(Expr::Elem(name, Box::new(idx), span))
                    }
                    _ => Ok(Expr::Var(name, span)),
                }
            }
            other => Err(FrontendError::syntax(
                span,
                format!("expected an expression, found {}", describe(&other)),
            )),
        }
    }
}

fn describe(kind: &TokenKind) -> String {
    match kind {
        TokenKind::Ident(n) => format!("identifier `{}`", n),
        TokenKind::Int(v) => format!("literal `{}`", v),
        TokenKind::KwInt8 => "`int8`".into(),
        TokenKind::KwInt12 => "`int12`".into(),
        TokenKind::KwInt14 => "`int14`".into(),
        TokenKind::KwInt16 => "`int16`".into(),
        TokenKind::KwVoid => "`void`".into(),
        TokenKind::KwFor => "`for`".into(),
        TokenKind::KwIf => "`if`".into(),
        TokenKind::KwElse => "`else`".into(),
        TokenKind::KwReturn => "`return`".into(),
        TokenKind::LParen => "`(`".into(),
        TokenKind::RParen => "`)`".into(),
        TokenKind::LBrace => "`{`".into(),
        TokenKind::RBrace => "`}`".into(),
        TokenKind::LBracket => "`[`".into(),
        TokenKind::RBracket => "`]`".into(),
        TokenKind::Semi => "`;`".into(),
        TokenKind::Comma => "`,`".into(),
        TokenKind::Assign => "`=`".into(),
        TokenKind::Plus => "`+`".into(),
        TokenKind::PlusPlus => "`++`".into(),
        TokenKind::Minus => "`-`".into(),
        TokenKind::Star => "`*`".into(),
        TokenKind::Slash => "`/`".into(),
        TokenKind::Lt => "`<`".into(),
        TokenKind::Le => "`<=`".into(),
        TokenKind::EqEq => "`==`".into(),
        TokenKind::Ne => "`!=`".into(),
        TokenKind::Ge => "`>=`".into(),
        TokenKind::Gt => "`>`".into(),
        TokenKind::Pragma(_) => "a Cyber pragma".into(),
        TokenKind::Eof => "end of input".into(),
    }
}
