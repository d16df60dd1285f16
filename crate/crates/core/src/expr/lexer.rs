use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::ExprError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Number,
    Identifier,
    Operator,
    Paren,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    /// Byte offset of the first character in the source.
    pub offset: usize,
}

pub fn tokenize(source: &str) -> Result<Vec<Token>, ExprError> {
    let bytes = source.as_bytes();
    let mut tokens = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos];
        let start = pos;
        let kind = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                pos += 1;
                continue;
            }
            b'0'..=b'9' => {
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if pos < bytes.len() && bytes[pos] == b'.' {
                    pos += 1;
                    let frac = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if pos == frac {
                        return Err(ExprError::Syntax {
                            offset: pos,
                            message: "expected digits after decimal point".to_string(),
                        });
                    }
                }
                TokenKind::Number
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_') {
                    pos += 1;
                }
                TokenKind::Identifier
            }
            b'+' | b'-' | b'*' | b'/' | b'^' => {
                pos += 1;
                TokenKind::Operator
            }
            b'(' | b')' => {
                pos += 1;
                TokenKind::Paren
            }
            _ => {
                let ch = source[start..].chars().next().unwrap_or('\u{fffd}');
                return Err(ExprError::Syntax {
                    offset: start,
                    message: alloc::format!("unexpected character `{ch}`"),
                });
            }
        };
        tokens.push(Token { kind, lexeme: source[start..pos].to_string(), offset: start });
    }
    Ok(tokens)
}
