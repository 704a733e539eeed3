//! Printing: program text for ASTs, and the interpreter's outcome triple.
//!
//! Program text uses lower case and round-trips through the parser.
//! Outcome triples use the upper-case alist layout the interpreter's
//! transcripts are recorded in.

use std::fmt::Write;

use crate::ast::{Expr, Stmt};
use crate::interp::RunOutcome;
use crate::value::{Sym, Value};

pub fn print_expr(expr: &Expr) -> String {
    match expr {
        Expr::Var(s) => format!("(var {})", lower(s)),
        Expr::Lit(v) => format!("(lit . {v})"),
        Expr::Binary(op, lhs, rhs) => {
            format!("({} {} {})", op.token(), print_expr(lhs), print_expr(rhs))
        }
        Expr::Len(e) => format!("(len {})", print_expr(e)),
        Expr::Ind(i, l) => format!("(ind {} {})", print_expr(i), print_expr(l)),
    }
}

pub fn print_stmt(stmt: &Stmt) -> String {
    match stmt {
        Stmt::Skip => "(skip)".to_string(),
        Stmt::Assign(target, rhs) => {
            format!("(assign (var {}) {})", lower(target), print_expr(rhs))
        }
        Stmt::Return(rhs) => format!("(return {})", print_expr(rhs)),
        Stmt::IfElse(test, then_branch, else_branch) => format!(
            "(if-else {} {} {})",
            print_expr(test),
            print_stmt(then_branch),
            print_stmt(else_branch)
        ),
        Stmt::While(test, body) => {
            format!("(while {} {})", print_expr(test), print_stmt(body))
        }
        Stmt::Seq(first, second) => {
            format!("(seq {} {})", print_stmt(first), print_stmt(second))
        }
    }
}

fn lower(s: &Sym) -> String {
    s.as_str().to_ascii_lowercase()
}

/// Render one alist binding, upper case, collapsing a list value into the
/// pair: `(LOW . 4)`, `(LST 0 1 3 5 7 9 10)`, `(X)` for a `NIL` value.
fn render_binding(name: &Sym, value: &Value) -> String {
    match value.as_list() {
        Some(items) => {
            let mut out = format!("({name}");
            for item in items {
                out.push(' ');
                out.push_str(&render_atom(item));
            }
            out.push(')');
            out
        }
        None => format!("({name} . {})", render_atom(value)),
    }
}

fn render_atom(value: &Value) -> String {
    match value {
        Value::Int(n) => n.to_string(),
        Value::Sym(s) => s.as_str().to_string(),
        // Lists are flat, so a list can only appear at the binding level.
        Value::List(_) => render_binding(&Sym::new(""), value),
    }
}

/// Render a run outcome in the transcript layout:
///
/// ```text
/// (RETURNED ((LOW . 4)
///            (HIGH . 4)
///            (MID . 4)
///            (RESULT . 4))
///           77)
/// ```
///
/// An empty environment renders on one line as `(OK NIL 0)`.
pub fn render_outcome(outcome: &RunOutcome) -> String {
    let status = outcome.status.to_string();
    if outcome.vars.is_empty() {
        return format!("({status} NIL {})", outcome.steps);
    }
    let vars_indent = " ".repeat(status.len() + 3);
    let steps_indent = " ".repeat(status.len() + 2);
    let mut out = format!("({status} (");
    for (i, (name, value)) in outcome.vars.iter().enumerate() {
        if i > 0 {
            out.push('\n');
            out.push_str(&vars_indent);
        }
        out.push_str(&render_binding(name, value));
    }
    out.push(')');
    let _ = write!(out, "\n{}{})", steps_indent, outcome.steps);
    out
}
