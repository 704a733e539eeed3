//! Abstract syntax for the expression and statement sublanguages.

use crate::value::{Sym, Value};

/// The nine binary operators. `Div` is floor division (rounds toward
/// negative infinity); the comparisons and `Eq` apply to integers only
/// and yield `T`/`NIL`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Eq,
    Add,
    Sub,
    Mul,
    Div,
    Lt,
    Le,
    Gt,
    Ge,
}

impl BinOp {
    pub const ALL: [BinOp; 9] = [
        BinOp::Eq,
        BinOp::Add,
        BinOp::Sub,
        BinOp::Mul,
        BinOp::Div,
        BinOp::Lt,
        BinOp::Le,
        BinOp::Gt,
        BinOp::Ge,
    ];

    pub fn token(self) -> &'static str {
        match self {
            BinOp::Eq => "==",
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "//",
            BinOp::Lt => "<",
            BinOp::Le => "<=",
            BinOp::Gt => ">",
            BinOp::Ge => ">=",
        }
    }

    pub fn from_token(tok: &str) -> Option<BinOp> {
        BinOp::ALL.iter().copied().find(|op| op.token() == tok)
    }
}

/// An expression. Exactly the forms of the expression sublanguage:
/// variable, literal, the nine binary operators, list length, and list
/// indexing. No other operator is representable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Var(Sym),
    Lit(Value),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Len(Box<Expr>),
    Ind(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn var(name: &str) -> Expr {
        Expr::Var(Sym::new(name))
    }

    pub fn lit(value: impl Into<Value>) -> Expr {
        Expr::Lit(value.into())
    }

    pub fn binary(op: BinOp, lhs: Expr, rhs: Expr) -> Expr {
        Expr::Binary(op, Box::new(lhs), Box::new(rhs))
    }

    pub fn len(arg: Expr) -> Expr {
        Expr::Len(Box::new(arg))
    }

    pub fn ind(index: Expr, list: Expr) -> Expr {
        Expr::Ind(Box::new(index), Box::new(list))
    }
}

/// A statement: one of the six statement forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    Skip,
    Assign(Sym, Expr),
    Return(Expr),
    IfElse(Expr, Box<Stmt>, Box<Stmt>),
    While(Expr, Box<Stmt>),
    Seq(Box<Stmt>, Box<Stmt>),
}

impl Stmt {
    pub fn assign(target: &str, rhs: Expr) -> Stmt {
        Stmt::Assign(Sym::new(target), rhs)
    }

    pub fn ret(rhs: Expr) -> Stmt {
        Stmt::Return(rhs)
    }

    pub fn if_else(test: Expr, then_branch: Stmt, else_branch: Stmt) -> Stmt {
        Stmt::IfElse(test, Box::new(then_branch), Box::new(else_branch))
    }

    pub fn while_loop(test: Expr, body: Stmt) -> Stmt {
        Stmt::While(test, Box::new(body))
    }

    pub fn seq(first: Stmt, second: Stmt) -> Stmt {
        Stmt::Seq(Box::new(first), Box::new(second))
    }

    /// Right-associated sequence of one or more statements:
    /// `seqn(a, b, c)` is `seq(a, seq(b, c))`.
    pub fn seqn(stmts: Vec<Stmt>) -> Stmt {
        let mut it = stmts.into_iter().rev();
        let last = it.next().expect("seqn of at least one statement");
        it.fold(last, |acc, s| Stmt::seq(s, acc))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seqn_associates_to_the_right() {
        let s = Stmt::seqn(vec![Stmt::Skip, Stmt::Skip, Stmt::ret(Expr::lit(0))]);
        assert_eq!(
            s,
            Stmt::seq(Stmt::Skip, Stmt::seq(Stmt::Skip, Stmt::ret(Expr::lit(0))))
        );
    }

    #[test]
    fn op_tokens_round_trip() {
        for op in BinOp::ALL {
            assert_eq!(BinOp::from_token(op.token()), Some(op));
        }
        assert_eq!(BinOp::from_token("%"), None);
    }
}
