//! Expression evaluation with exact step accounting.
//!
//! Every expression node costs exactly one step on top of its operands'
//! steps, so a successful evaluation's step count equals the number of
//! nodes in the expression. Error detection is strict: a failure anywhere
//! in a subexpression makes the whole evaluation fail, and an error
//! outcome carries no value and no steps.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::ast::{BinOp, Expr};
use crate::value::{Value, VarEnv};

/// The result triple of an evaluation. When `ok` is false, `value` is
/// `NIL` and `steps` is 0; callers cannot distinguish error causes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalOutcome {
    pub ok: bool,
    pub value: Value,
    pub steps: u64,
}

impl EvalOutcome {
    fn success(value: Value, steps: u64) -> EvalOutcome {
        EvalOutcome {
            ok: true,
            value,
            steps,
        }
    }

    fn error() -> EvalOutcome {
        EvalOutcome {
            ok: false,
            value: Value::nil(),
            steps: 0,
        }
    }
}

/// Evaluate `x` under `vars`. `status` gates evaluation: when false the
/// result is immediately an error outcome.
pub fn exeval(x: &Expr, status: bool, vars: &VarEnv) -> EvalOutcome {
    if !status {
        return EvalOutcome::error();
    }
    match x {
        Expr::Var(name) => match vars.lookup(name) {
            Some(value) => EvalOutcome::success(value.clone(), 1),
            None => EvalOutcome::error(),
        },
        Expr::Lit(value) => EvalOutcome::success(value.clone(), 1),
        Expr::Binary(op, lhs, rhs) => {
            let a = exeval(lhs, status, vars);
            let b = exeval(rhs, status, vars);
            if !(a.ok && b.ok) {
                return EvalOutcome::error();
            }
            match (a.value.as_int(), b.value.as_int()) {
                (Some(x), Some(y)) => match apply(*op, x, y) {
                    Some(value) => EvalOutcome::success(value, 1 + a.steps + b.steps),
                    None => EvalOutcome::error(),
                },
                // Arithmetic and relational operators apply to integers only.
                _ => EvalOutcome::error(),
            }
        }
        Expr::Len(arg) => {
            let a = exeval(arg, status, vars);
            if !a.ok {
                return EvalOutcome::error();
            }
            match a.value.as_list() {
                Some(items) => {
                    EvalOutcome::success(Value::int(items.len() as i64), 1 + a.steps)
                }
                None => EvalOutcome::error(),
            }
        }
        Expr::Ind(index, list) => {
            let a = exeval(index, status, vars);
            let b = exeval(list, status, vars);
            if !(a.ok && b.ok) {
                return EvalOutcome::error();
            }
            let (i, items) = match (a.value.as_int(), b.value.as_list()) {
                (Some(i), Some(items)) => (i, items),
                _ => return EvalOutcome::error(),
            };
            if i.is_negative() {
                return EvalOutcome::error();
            }
            match i.to_usize().and_then(|i| items.get(i)) {
                Some(item) => EvalOutcome::success(item.clone(), 1 + a.steps + b.steps),
                None => EvalOutcome::error(),
            }
        }
    }
}

fn apply(op: BinOp, x: &BigInt, y: &BigInt) -> Option<Value> {
    let value = match op {
        BinOp::Add => Value::Int(x + y),
        BinOp::Sub => Value::Int(x - y),
        BinOp::Mul => Value::Int(x * y),
        BinOp::Div => {
            if y.is_zero() {
                return None;
            }
            Value::Int(x.div_floor(y))
        }
        BinOp::Eq => Value::from_bool(x == y),
        BinOp::Lt => Value::from_bool(x < y),
        BinOp::Le => Value::from_bool(x <= y),
        BinOp::Gt => Value::from_bool(x > y),
        BinOp::Ge => Value::from_bool(x >= y),
    };
    Some(value)
}
