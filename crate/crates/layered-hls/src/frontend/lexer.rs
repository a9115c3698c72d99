//! Hand-rolled lexer for the Cyber DSL.
//!
//! `//` starts a line comment. `/* ... */` is reserved for Cyber pragma
//! directives: a block comment whose first word is exactly `Cyber` lexes into
//! a pragma token (malformed directives are errors), and any other block
//! comment is rejected so the pragma syntax stays unambiguous.

use super::ast::{Pragma, PragmaKind, Span};
use super::FrontendError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    Int(i64),
    KwInt8,
    KwInt12,
    KwInt14,
    KwInt16,
    KwVoid,
    KwFor,
    KwIf,
    KwElse,
    KwReturn,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Semi,
    Comma,
    Assign,
    Plus,
    PlusPlus,
    Minus,
    Star,
    Slash,
    Lt,
    Le,
    EqEq,
    Ne,
    Ge,
    Gt,
    Pragma(Pragma),
    Eof,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
}

pub fn lex(source: &str) -> Result<Vec<Token>, FrontendError> {
    let bytes = source.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0usize;
    let mut line = 1u32;
    let mut col = 1u32;

    macro_rules! push {
        ($kind:expr, $span:expr, $len:expr) => {{
            tokens.push(Token { kind: $kind, span: $span });
            i += $len;
            col += $len as u32;
        }};
    }

    while i < bytes.len() {
        let b = bytes[i];
        let span = Span::new(line, col);
        match b {
            b'\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            b' ' | b'\t' | b'\r' => {
                i += 1;
                col += 1;
            }
            b'/' if bytes.get(i + 1) == Some(&b'/') => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            b'/' if bytes.get(i + 1) == Some(&b'*') => {
                let (pragma_text, end, end_line, end_col) =
                    scan_block_comment(bytes, i, line, col)
                        .ok_or_else(|| FrontendError::syntax(span, "unterminated block comment"))?;
                let first_word = pragma_text.split_whitespace().next().unwrap_or("");
                if first_word == "Cyber" {
                    let pragma = parse_pragma(&pragma_text, span)?;
                    tokens.push(Token { kind: TokenKind::Pragma(pragma), span });
                } else {
                    return Err(FrontendError::syntax(
                        span,
                        "block comments are reserved for Cyber directives; use // for comments",
                    ));
                }
                i = end;
                line = end_line;
                col = end_col;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text = &source[start..i];
                let value: i64 = text
                    .parse()
                    .map_err(|_| FrontendError::syntax(span, "integer literal out of range"))?;
                if value > 32767 {
                    return Err(FrontendError::syntax(
                        span,
                        "integer literal exceeds the int16 range",
                    ));
                }
                col += (i - start) as u32;
                tokens.push(Token { kind: TokenKind::Int(value), span });
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                let text = &source[start..i];
                let kind = match text {
                    "int8" => TokenKind::KwInt8,
                    "int12" => TokenKind::KwInt12,
                    "int14" => TokenKind::KwInt14,
                    "int16" => TokenKind::KwInt16,
                    "void" => TokenKind::KwVoid,
                    "for" => TokenKind::KwFor,
                    "if" => TokenKind::KwIf,
                    "else" => TokenKind::KwElse,
                    "return" => TokenKind::KwReturn,
                    _ => TokenKind::Ident(text.to_string()),
                };
                col += (i - start) as u32;
                tokens.push(Token { kind, span });
            }
            b'(' => push!(TokenKind::LParen, span, 1),
            b')' => push!(TokenKind::RParen, span, 1),
            b'{' => push!(TokenKind::LBrace, span, 1),
            b'}' => push!(TokenKind::RBrace, span, 1),
            b'[' => push!(TokenKind::LBracket, span, 1),
            b']' => push!(TokenKind::RBracket, span, 1),
            b';' => push!(TokenKind::Semi, span, 1),
            b',' => push!(TokenKind::Comma, span, 1),
            b'+' if bytes.get(i + 1) == Some(&b'+') => push!(TokenKind::PlusPlus, span, 2),
            b'+' => push!(TokenKind::Plus, span, 1),
            b'-' => push!(TokenKind::Minus, span, 1),
            b'*' => push!(TokenKind::Star, span, 1),
            b'/' => push!(TokenKind::Slash, span, 1),
            b'<' if bytes.get(i + 1) == Some(&b'=') => push!(TokenKind::Le, span, 2),
            b'<' => push!(TokenKind::Lt, span, 1),
            b'>' if bytes.get(i + 1) == Some(&b'=') => push!(TokenKind::Ge, span, 2),
            b'>' => push!(TokenKind::Gt, span, 1),
            b'=' if bytes.get(i + 1) == Some(&b'=') => push!(TokenKind::EqEq, span, 2),
            b'=' => push!(TokenKind::Assign, span, 1),
            b'!' if bytes.get(i + 1) == Some(&b'=') => push!(TokenKind::Ne, span, 2),
            _ => {
                return Err(FrontendError::syntax(
                    span,
                    format!("unexpected character `{}`", b as char),
                ));
            }
        }
    }
    tokens.push(Token { kind: TokenKind::Eof, span: Span::new(line, col) });
    Ok(tokens)
}

/// Returns the comment interior, the byte index just past `*/`, and the
/// line/col there. `None` when the comment never terminates.
fn scan_block_comment(
    bytes: &[u8],
    start: usize,
    mut line: u32,
    mut col: u32,
) -> Option<(String, usize, u32, u32)> {
    let mut i = start + 2;
    col += 2;
    let text_start = i;
    while i + 1 < bytes.len() {
        if bytes[i] == b'*' && bytes[i + 1] == b'/' {
            let text = String::from_utf8_lossy(&bytes[text_start..i]).into_owned();
            return Some((text, i + 2, line, col + 2));
        }
        if bytes[i] == b'\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
        i += 1;
    }
    None
}

/// Parses the interior of a `/* Cyber ... */` comment. Whitespace between
/// words is one-or-more spaces; spaces around `=` are optional.
pub(super) fn parse_pragma(text: &str, span: Span) -> Result<Pragma, FrontendError> {
    // Normalize `=` so `func=operator` and `func = operator` tokenize alike.
    let normalized = text.replace('=', " = ");
    let words: Vec<&str> = normalized.split_whitespace().collect();
    match words.as_slice() {
        ["Cyber", "func", "=", "operator"] => {
            Ok(Pragma { kind: PragmaKind::FuncOperator, name: None, span })
        }
        ["Cyber", "share", "name", "=", name] if is_ident(name) => Ok(Pragma {
            kind: PragmaKind::ShareName,
            name: Some((*name).to_string()),
            span,
        }),
        _ => Err(FrontendError::pragma(
            span,
            format!(
                "unrecognized Cyber directive `{}`; expected `func = operator` or `share name = NAME`",
                text.trim()
            ),
        )),
    }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexes_operators_and_idents() {
        let toks = lex("x12 = a + b * 3;").unwrap();
        let kinds: Vec<&TokenKind> = toks.iter().map(|t| &t.kind).collect();
        assert!(matches!(kinds[0], TokenKind::Ident(n) if n == "x12"));
        assert!(matches!(kinds[1], TokenKind::Assign));
        assert!(matches!(kinds[5], TokenKind::Star));
        assert!(matches!(kinds[6], TokenKind::Int(3)));
        assert!(matches!(kinds.last().unwrap(), TokenKind::Eof));
    }

    #[test]
    fn tracks_line_and_column() {
        let toks = lex("a\n  b").unwrap();
        assert_eq!(toks[0].span, Span::new(1, 1));
        assert_eq!(toks[1].span, Span::new(2, 3));
    }

    #[test]
    fn pragma_tokens_with_flexible_spacing() {
        for src in [
            "/* Cyber func = operator */",
            "/* Cyber func=operator */",
            "/* Cyber  func =operator */",
        ] {
            let toks = lex(src).unwrap();
            assert!(
                matches!(
                    &toks[0].kind,
                    TokenKind::Pragma(Pragma { kind: PragmaKind::FuncOperator, .. })
                ),
                "failed on {:?}",
                src
            );
        }
        let toks = lex("/* Cyber share name = CTX0 */").unwrap();
        match &toks[0].kind {
            TokenKind::Pragma(p) => {
                assert_eq!(p.kind, PragmaKind::ShareName);
                assert_eq!(p.name.as_deref(), Some("CTX0"));
            }
            other => panic!("expected pragma, got {:?}", other),
        }
    }

    #[test]
    fn malformed_directive_is_a_pragma_error() {
        let err = lex("/* Cyber func = banana */").unwrap_err();
        assert!(err.to_string().contains("Cyber directive"));
    }

    #[test]
    fn plain_block_comment_is_rejected() {
        let err = lex("/* not a directive */").unwrap_err();
        assert!(err.to_string().contains("reserved for Cyber directives"));
    }

    #[test]
    fn line_comments_are_skipped() {
        let toks = lex("a // trailing /* Cyber junk */\nb").unwrap();
        assert_eq!(toks.len(), 3); // a, b, eof
    }

    #[test]
    fn oversized_literal_is_rejected() {
        assert!(lex("40000").is_err());
        assert!(lex("32767").is_ok());
    }
}
