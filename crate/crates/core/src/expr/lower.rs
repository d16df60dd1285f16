use alloc::format;
use alloc::string::String;

use num_traits::{ToPrimitive, Zero};

use super::{BinOp, ExprError, ExprNode};
use crate::poly::Polynomial;

/// Expands a polynomial expression over the registry `vars`.
///
/// Accepts `+ - *`, unary minus, `^` with a nonnegative integer literal
/// exponent and division by a nonzero constant.
pub fn lower_to_polynomial(e: &ExprNode, vars: &[String]) -> Result<Polynomial, ExprError> {
    let template = Polynomial::zero(vars.iter().cloned())
        .map_err(|err| ExprError::NonPolynomial(format!("{err}")))?;
    lower(e, &template)
}

/// Lowers with the variables inferred in order of first occurrence.
pub fn lower_inferred(e: &ExprNode) -> Result<Polynomial, ExprError> {
    lower_to_polynomial(e, &e.variables())
}

fn lower(e: &ExprNode, template: &Polynomial) -> Result<Polynomial, ExprError> {
    Ok(match e {
        ExprNode::Const(c) => template.constant_like(c.clone()),
        ExprNode::Var(name) => {
            let i = template
                .var_index(name)
                .ok_or_else(|| ExprError::UnregisteredVariable(name.clone()))?;
            template.variable_like(i).expect("index from registry")
        }
        ExprNode::Neg(a) => -&lower(a, template)?,
        ExprNode::Call(func, _) => {
            return Err(ExprError::NonPolynomial(format!("function call `{}`", func.name())))
        }
        ExprNode::Binary(op, a, b) => match op {
            BinOp::Add => &lower(a, template)? + &lower(b, template)?,
            BinOp::Sub => &lower(a, template)? - &lower(b, template)?,
            BinOp::Mul => &lower(a, template)? * &lower(b, template)?,
            BinOp::Div => {
                let den = lower(b, template)?;
                if !den.is_constant() {
                    return Err(ExprError::NonPolynomial(format!("division by non-constant `{b}`")));
                }
                let den = den.constant_term();
                if den.is_zero() {
                    return Err(ExprError::DivisionByZero);
                }
                lower(a, template)?.scale(&den.recip())
            }
            BinOp::Pow => {
                let exp = match b.as_ref() {
                    ExprNode::Const(c) if c.is_integer() => c.to_integer().to_u32(),
                    _ => None,
                };
                let exp = exp.ok_or_else(|| {
                    ExprError::NonPolynomial(format!("exponent `{b}` is not a nonnegative integer literal"))
                })?;
                lower(a, template)?.pow(exp)
            }
        },
    })
}
