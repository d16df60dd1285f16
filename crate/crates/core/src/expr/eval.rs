use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::{BinOp, ExprError, ExprNode, Func};
use crate::rational;

/// Evaluates `e` in double precision with variables bound by `point`.
///
/// Division by zero, logarithms of nonpositive numbers and any
/// non-finite intermediate result are reported as domain errors.
pub fn eval_float(e: &ExprNode, point: &BTreeMap<String, f64>) -> Result<f64, ExprError> {
    let vars: Vec<String> = e.variables();
    let values: Vec<f64> = vars
        .iter()
        .map(|v| point.get(v).copied().ok_or_else(|| ExprError::UnboundVariable(v.clone())))
        .collect::<Result<_, _>>()?;
    FloatEvaluator::new(e, &vars)?.eval(&values)
}

/// An expression with variables resolved to positions and constants
/// rounded to `f64`, for repeated evaluation.
#[derive(Debug, Clone)]
pub struct FloatEvaluator<'a> {
    root: Node<'a>,
    arity: usize,
}

#[derive(Debug, Clone)]
enum Node<'a> {
    Const(f64),
    Var(usize),
    Neg(Box<Node<'a>>),
    Binary(BinOp, Box<Node<'a>>, Box<Node<'a>>, &'a ExprNode),
    Call(Func, Box<Node<'a>>, &'a ExprNode),
}

impl<'a> FloatEvaluator<'a> {
    /// Binds the variables of `e` to positions in `vars`.
    pub fn new(e: &'a ExprNode, vars: &[String]) -> Result<Self, ExprError> {
        Ok(FloatEvaluator { root: compile(e, vars)?, arity: vars.len() })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn eval(&self, values: &[f64]) -> Result<f64, ExprError> {
        assert_eq!(values.len(), self.arity, "one value per variable");
        eval_node(&self.root, values)
    }
}

fn compile<'a>(e: &'a ExprNode, vars: &[String]) -> Result<Node<'a>, ExprError> {
    Ok(match e {
        ExprNode::Const(c) => Node::Const(rational::to_f64(c)),
        ExprNode::Var(v) => Node::Var(
            vars.iter()
                .position(|name| name == v)
                .ok_or_else(|| ExprError::UnboundVariable(v.clone()))?,
        ),
        ExprNode::Neg(a) => Node::Neg(Box::new(compile(a, vars)?)),
        ExprNode::Binary(op, a, b) => {
            Node::Binary(*op, Box::new(compile(a, vars)?), Box::new(compile(b, vars)?), e)
        }
        ExprNode::Call(f, a) => Node::Call(*f, Box::new(compile(a, vars)?), e),
    })
}

fn domain(e: &ExprNode, reason: &'static str) -> ExprError {
    ExprError::Domain { expr: Box::new(e.clone()), reason }
}

fn finite(value: f64, e: &ExprNode) -> Result<f64, ExprError> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(domain(e, "result is not finite"))
    }
}

fn eval_node(node: &Node<'_>, values: &[f64]) -> Result<f64, ExprError> {
    match node {
        Node::Const(c) => Ok(*c),
        Node::Var(i) => Ok(values[*i]),
        Node::Neg(a) => Ok(-eval_node(a, values)?),
        Node::Binary(op, a, b, src) => {
            let x = eval_node(a, values)?;
            let y = eval_node(b, values)?;
            let v = match op {
                BinOp::Add => x + y,
                BinOp::Sub => x - y,
                BinOp::Mul => x * y,
                BinOp::Div => {
                    if y == 0.0 {
                        return Err(domain(src, "division by zero"));
                    }
                    x / y
                }
                BinOp::Pow => libm::pow(x, y),
            };
            finite(v, src)
        }
        Node::Call(f, a, src) => {
            let x = eval_node(a, values)?;
            let v = match f {
                Func::Sin => libm::sin(x),
                Func::Cos => libm::cos(x),
                Func::Tan => libm::tan(x),
                Func::Exp => libm::exp(x),
                Func::Abs => libm::fabs(x),
                Func::Ln => {
                    if x <= 0.0 {
                        return Err(domain(src, "logarithm of a nonpositive number"));
                    }
                    libm::log(x)
                }
            };
            finite(v, src)
        }
    }
}
