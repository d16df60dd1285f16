use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::lexer::{tokenize, Token, TokenKind};
use super::{BinOp, ExprError, ExprNode, Func};
use crate::rational;

/// Parses an expression. `^` binds tightest and is right-associative,
/// then unary minus, then `*` `/`, then `+` `-`.
pub fn parse(source: &str) -> Result<ExprNode, ExprError> {
    let tokens = tokenize(source)?;
    if tokens.is_empty() {
        return Err(ExprError::Empty);
    }
    let mut parser = Parser { tokens, pos: 0, end: source.len() };
    let node = parser.expr()?;
    if let Some(tok) = parser.peek() {
        return Err(ExprError::Syntax {
            offset: tok.offset,
            message: alloc::format!("unexpected `{}`", tok.lexeme),
        });
    }
    Ok(node)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn at(&self, lexeme: &str) -> bool {
        self.peek().is_some_and(|t| t.kind != TokenKind::Identifier && t.lexeme == lexeme)
    }

    fn offset(&self) -> usize {
        self.peek().map_or(self.end, |t| t.offset)
    }

    fn error(&self, message: impl Into<String>) -> ExprError {
        ExprError::Syntax { offset: self.offset(), message: message.into() }
    }

    fn expect(&mut self, lexeme: &str) -> Result<(), ExprError> {
        if self.at(lexeme) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(alloc::format!("expected `{lexeme}`")))
        }
    }

    fn expr(&mut self) -> Result<ExprNode, ExprError> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.at("+") {
                BinOp::Add
            } else if self.at("-") {
                BinOp::Sub
            } else {
                return Ok(lhs);
            };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = ExprNode::binary(op, lhs, rhs);
        }
    }

    fn term(&mut self) -> Result<ExprNode, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.at("*") {
                BinOp::Mul
            } else if self.at("/") {
                BinOp::Div
            } else {
                return Ok(lhs);
            };
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = ExprNode::binary(op, lhs, rhs);
        }
    }

    fn unary(&mut self) -> Result<ExprNode, ExprError> {
        if self.at("-") {
            self.pos += 1;
            return Ok(ExprNode::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<ExprNode, ExprError> {
        let base = self.primary()?;
        if self.at("^") {
            self.pos += 1;
            let exp = self.unary()?;
            return Ok(ExprNode::binary(BinOp::Pow, base, exp));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<ExprNode, ExprError> {
        let Some(tok) = self.peek().cloned() else {
            return Err(self.error("unexpected end of input"));
        };
        match tok.kind {
            TokenKind::Number => {
                self.pos += 1;
                let value = rational::parse_decimal(&tok.lexeme)
                    .ok_or_else(|| ExprError::Syntax { offset: tok.offset, message: "bad number".to_string() })?;
                Ok(ExprNode::Const(value))
            }
            TokenKind::Identifier => {
                self.pos += 1;
                let is_call = self.at("(");
                match (Func::from_name(&tok.lexeme), is_call) {
                    (Some(func), true) => {
                        self.pos += 1;
                        let arg = self.expr()?;
                        self.expect(")")?;
                        Ok(ExprNode::Call(func, Box::new(arg)))
                    }
                    (Some(_), false) => Err(self.error(alloc::format!("expected `(` after `{}`", tok.lexeme))),
                    (None, true) => Err(ExprError::UnknownFunction { name: tok.lexeme, offset: tok.offset }),
                    (None, false) => Ok(ExprNode::Var(tok.lexeme)),
                }
            }
            _ if tok.lexeme == "(" => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(")")?;
                Ok(inner)
            }
            _ => Err(ExprError::Syntax {
                offset: tok.offset,
                message: alloc::format!("unexpected `{}`", tok.lexeme),
            }),
        }
    }
}
