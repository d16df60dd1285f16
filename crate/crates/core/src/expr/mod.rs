//! Arithmetic expressions: lexing, parsing, printing, lowering to exact
//! polynomials and floating-point evaluation.
//!
//! Grammar (whitespace between tokens is ignored):
//!
//! ```text
//! expr    = term { ("+" | "-") term } ;
//! term    = unary { ("*" | "/") unary } ;
//! unary   = "-" unary | power ;
//! power   = primary [ "^" unary ] ;
//! primary = number | ident | func "(" expr ")" | "(" expr ")" ;
//! number  = digit { digit } [ "." digit { digit } ] ;
//! ident   = letter { letter | digit | "_" } ;
//! func    = "sin" | "cos" | "tan" | "exp" | "ln" | "abs" ;
//! ```

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Signed;

use crate::rational::{self, Rational};

mod eval;
mod lexer;
mod lower;
mod parser;

pub use eval::{eval_float, FloatEvaluator};
pub use lexer::{tokenize, Token, TokenKind};
pub use lower::{lower_inferred, lower_to_polynomial};
pub use parser::parse;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExprError {
    #[error("empty expression")]
    Empty,
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown function `{name}` at byte {offset}")]
    UnknownFunction { name: String, offset: usize },
    #[error("not a polynomial: {0}")]
    NonPolynomial(String),
    #[error("variable `{0}` is not registered")]
    UnregisteredVariable(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("variable `{0}` is unbound")]
    UnboundVariable(String),
    #[error("domain error in `{expr}`: {reason}")]
    Domain { expr: Box<ExprNode>, reason: &'static str },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => " + ",
            BinOp::Sub => " - ",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Exp,
    Ln,
    Abs,
}

impl Func {
    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "exp" => Func::Exp,
            "ln" => Func::Ln,
            "abs" => Func::Abs,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Abs => "abs",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprNode {
    Const(Rational),
    Var(String),
    Neg(Box<ExprNode>),
    Binary(BinOp, Box<ExprNode>, Box<ExprNode>),
    Call(Func, Box<ExprNode>),
}

impl ExprNode {
    pub fn binary(op: BinOp, lhs: ExprNode, rhs: ExprNode) -> ExprNode {
        ExprNode::Binary(op, Box::new(lhs), Box::new(rhs))
    }

    /// Variable names in order of first occurrence.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            ExprNode::Const(_) => {}
            ExprNode::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            ExprNode::Neg(a) | ExprNode::Call(_, a) => a.collect_vars(out),
            ExprNode::Binary(_, a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            ExprNode::Binary(BinOp::Add | BinOp::Sub, ..) => 1,
            ExprNode::Binary(BinOp::Mul | BinOp::Div, ..) => 2,
            ExprNode::Neg(_) => 3,
            ExprNode::Binary(BinOp::Pow, ..) => 4,
            ExprNode::Const(c) if c.is_negative() => 3,
            _ => 5,
        }
    }
}

fn write_wrapped(f: &mut fmt::Formatter<'_>, e: &ExprNode, wrap: bool) -> fmt::Result {
    if wrap {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

/// Prints with the minimal parentheses that make `parse` rebuild the same
/// tree.
impl fmt::Display for ExprNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprNode::Const(c) => match rational::to_decimal(c) {
                Some(text) => f.write_str(&text),
                None => write!(f, "({c})"),
            },
            ExprNode::Var(v) => f.write_str(v),
            ExprNode::Neg(a) => {
                f.write_str("-")?;
                write_wrapped(f, a, a.precedence() < 3)
            }
            ExprNode::Call(func, a) => write!(f, "{}({a})", func.name()),
            ExprNode::Binary(op, a, b) => {
                let (wrap_a, wrap_b) = match op {
                    BinOp::Add | BinOp::Sub => (a.precedence() < 1, b.precedence() <= 1),
                    BinOp::Mul | BinOp::Div => (a.precedence() < 2, b.precedence() <= 2),
                    BinOp::Pow => (a.precedence() < 5, b.precedence() < 3),
                };
                write_wrapped(f, a, wrap_a)?;
                f.write_str(op.symbol())?;
                write_wrapped(f, b, wrap_b)
            }
        }
    }
}
