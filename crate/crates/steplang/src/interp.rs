//! The clocked big-step interpreter for statements.
//!
//! `run` threads a status through execution: `OK` means keep going,
//! `RETURNED` means a `return` stored its value into `RESULT`, and
//! `ERROR`/`TIMED-OUT` abort. The `count` clock decrements only when a
//! `while` loop re-enters, so it bounds the total number of loop
//! re-tests across the whole program and guarantees termination; when it
//! reaches zero the outcome is `TIMED-OUT` with the variables and steps
//! as of that point.
//!
//! Step charges: `skip` is free; `assign` and `return` cost one plus
//! their expression; each `if-else` dispatch and each `while` test costs
//! one plus the test expression; `seq` adds nothing of its own.

use std::fmt;

use crate::ast::Stmt;
use crate::eval::exeval;
use crate::value::{Sym, VarEnv};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RunStatus {
    Ok,
    Returned,
    Error,
    TimedOut,
}

impl fmt::Display for RunStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RunStatus::Ok => "OK",
            RunStatus::Returned => "RETURNED",
            RunStatus::Error => "ERROR",
            RunStatus::TimedOut => "TIMED-OUT",
        })
    }
}

/// The result triple of a run: final status, final variable alist, and
/// the exact number of steps charged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutcome {
    pub status: RunStatus,
    pub vars: VarEnv,
    pub steps: u64,
}

fn run_error(vars: VarEnv) -> RunOutcome {
    RunOutcome {
        status: RunStatus::Error,
        vars,
        steps: 0,
    }
}

/// Execute `stmt`. A non-`OK` incoming status passes through unchanged;
/// a zero clock times out before any dispatch.
pub fn run(stmt: &Stmt, status: RunStatus, vars: VarEnv, steps: u64, count: u64) -> RunOutcome {
    if status != RunStatus::Ok {
        return RunOutcome {
            status,
            vars,
            steps,
        };
    }
    if count == 0 {
        return RunOutcome {
            status: RunStatus::TimedOut,
            vars,
            steps,
        };
    }
    match stmt {
        Stmt::Skip => RunOutcome {
            status: RunStatus::Ok,
            vars,
            steps,
        },
        Stmt::Assign(target, rhs) => {
            let e = exeval(rhs, true, &vars);
            if !e.ok {
                return run_error(vars);
            }
            let mut vars = vars;
            vars.store(target.clone(), e.value);
            RunOutcome {
                status: RunStatus::Ok,
                vars,
                steps: steps + 1 + e.steps,
            }
        }
        Stmt::Return(rhs) => {
            let e = exeval(rhs, true, &vars);
            if !e.ok {
                return run_error(vars);
            }
            let mut vars = vars;
            vars.store(Sym::result(), e.value);
            RunOutcome {
                status: RunStatus::Returned,
                vars,
                steps: steps + 1 + e.steps,
            }
        }
        Stmt::Seq(first, second) => {
            let o = run(first, status, vars, steps, count);
            run(second, o.status, o.vars, o.steps, count)
        }
        Stmt::IfElse(test, then_branch, else_branch) => {
            let t = exeval(test, true, &vars);
            if !t.ok {
                return run_error(vars);
            }
            let branch = if t.value.is_truthy() {
                then_branch
            } else {
                else_branch
            };
            run(branch, status, vars, steps + 1 + t.steps, count)
        }
        Stmt::While(test, body) => {
            // Iterative form of the tail recursion: re-running the loop
            // with a decremented clock is exactly one more turn here.
            let mut vars = vars;
            let mut steps = steps;
            let mut count = count;
            loop {
                let t = exeval(test, true, &vars);
                if !t.ok {
                    return run_error(vars);
                }
                if !t.value.is_truthy() {
                    return RunOutcome {
                        status: RunStatus::Ok,
                        vars,
                        steps: steps + 1 + t.steps,
                    };
                }
                let o = run(body, RunStatus::Ok, vars, steps + 1 + t.steps, count);
                if o.status != RunStatus::Ok {
                    return o;
                }
                vars = o.vars;
                steps = o.steps;
                count -= 1;
                if count == 0 {
                    return RunOutcome {
                        status: RunStatus::TimedOut,
                        vars,
                        steps,
                    };
                }
            }
        }
    }
}

/// Run a statement from an `OK` status with zero prior steps.
pub fn run_program(stmt: &Stmt, vars: VarEnv, count: u64) -> RunOutcome {
    run(stmt, RunStatus::Ok, vars, 0, count)
}
