//! A small imperative language with an exact step-counting operational
//! semantics, plus the machinery to check asymptotic bound claims about
//! its programs empirically.
//!
//! The pieces:
//!
//! - [`value`], [`ast`], [`parser`], [`printer`]: values, abstract
//!   syntax, and a bidirectional concrete syntax in parenthesized,
//!   dotted-pair form.
//! - [`eval`]: expression evaluation returning `(ok, value, steps)` with
//!   strict error propagation; every node costs exactly one step.
//! - [`interp`]: the clocked big-step interpreter returning
//!   `(status, vars, steps)`; the clock decrements on loop re-entry and
//!   guarantees termination.
//! - [`programs`]: binary search (two conditional orderings) and linear
//!   search as AST templates.
//! - [`oracle`]: recursive reference searches, the exact hit/miss step
//!   laws, and full-outcome agreement checking between the two routes.
//! - [`complexity`]: worst-case sweeps over structured probe sets,
//!   bound checking `steps <= c * g(n)` for sampled `n >= n0`, witness
//!   search, and bound-class classification. Verdicts are evidence over
//!   the sampled sizes, never proofs of the unbounded claim.
//! - [`cli`]: the `steplang` command-line tool over all of the above.

pub mod ast;
pub mod cli;
pub mod complexity;
pub mod eval;
pub mod interp;
pub mod oracle;
pub mod parser;
pub mod printer;
pub mod programs;
pub mod value;

pub use ast::{BinOp, Expr, Stmt};
pub use eval::{exeval, EvalOutcome};
pub use interp::{run, run_program, RunOutcome, RunStatus};
pub use value::{Sym, Value, VarEnv};
