//! Recursive reference implementations of binary search and the exact
//! step laws that predict the interpreter's behavior on the
//! [`binarysearch`](crate::programs::binarysearch) program.
//!
//! The laws decompose the program's cost table: initialization charges 7
//! steps, every completed loop iteration charges 26, a final hit
//! iteration charges 18, and a final failing loop test plus the miss
//! return charge 6. With `calls` counting completed iterations (equal to
//! the recursive call count of [`recursive_bs_helper`]), that gives
//! `25 + 26*calls` for hits and `13 + 26*calls` for misses. The miss
//! intercept comes from this cost decomposition of the program text
//! itself and is cross-validated against direct execution by
//! [`verify_agreement`]; the agreement check compares full outcomes, so
//! any drift between the two routes is caught at the smallest failing
//! input.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::ast::{Expr, Stmt};
use crate::interp::{run_program, RunOutcome, RunStatus};
use crate::programs::{binarysearch, canonical_list, probe_values};
use crate::value::{Sym, Value, VarEnv};

/// Integer logarithm by halving: 0 for 0, else `1 + log2(n / 2)`. For
/// n >= 1 this equals `floor(lg n) + 1`, one more than the conventional
/// integer log; the bound witnesses in this crate are chosen against
/// this definition, so it is kept as-is.
pub fn log2(n: u64) -> u64 {
    if n == 0 {
        0
    } else {
        1 + log2(n / 2)
    }
}

/// Steps the interpreter takes when the key is found after `calls`
/// completed iterations.
pub fn hit_law_steps(calls: u64) -> u64 {
    25 + 26 * calls
}

/// Steps the interpreter takes when the key is absent after `calls`
/// completed iterations. Holds for the empty list too (`calls` = 0).
pub fn miss_law_steps(calls: u64) -> u64 {
    13 + 26 * calls
}

/// The trace of a recursive binary search: whether the key was found,
/// the final values of the search bounds and midpoint, and how many
/// recursive calls were made. `mid` is `None` until the first midpoint
/// is computed, which can only survive to the end on empty input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BSTrace {
    pub success: bool,
    pub low: i64,
    pub mid: Option<i64>,
    pub high: i64,
    pub calls: u64,
}

fn element_at(lst: &[BigInt], idx: i64) -> Option<&BigInt> {
    usize::try_from(idx).ok().and_then(|i| lst.get(i))
}

/// Recursive binary search for `key` in `lst[low..=high]`, threading the
/// search locals and the call count through the recursion.
pub fn recursive_bs_helper(
    key: &BigInt,
    lst: &[BigInt],
    low: i64,
    mid: Option<i64>,
    high: i64,
    calls: u64,
) -> BSTrace {
    if high < low || low < 0 {
        return BSTrace {
            success: false,
            low,
            mid,
            high,
            calls,
        };
    }
    let newmid = (low + high).div_euclid(2);
    // Out-of-range probes compare as against an absent (nil) element:
    // never equal, and less-than coerces the absent side to 0.
    let (hit, go_lower) = match element_at(lst, newmid) {
        Some(elem) => (key == elem, key < elem),
        None => (false, key.is_negative()),
    };
    if hit {
        BSTrace {
            success: true,
            low,
            mid: Some(newmid),
            high,
            calls,
        }
    } else if go_lower {
        recursive_bs_helper(key, lst, low, Some(newmid), newmid - 1, calls + 1)
    } else {
        recursive_bs_helper(key, lst, newmid + 1, Some(newmid), high, calls + 1)
    }
}

/// Recursive binary search: the found index, or -1.
pub fn recursive_bs(key: &BigInt, lst: &[BigInt]) -> i64 {
    let trace = recursive_bs_helper(key, lst, 0, None, lst.len() as i64 - 1, 0);
    if trace.success {
        trace.mid.expect("a successful trace has a midpoint")
    } else {
        -1
    }
}

/// The simpler recursion with no locals threaded through. Returns the
/// same result as [`recursive_bs`].
pub fn recursive_bs2_helper(key: &BigInt, lst: &[BigInt], low: i64, high: i64) -> i64 {
    if high < low || low < 0 {
        return -1;
    }
    let newmid = (low + high).div_euclid(2);
    let (hit, go_lower) = match element_at(lst, newmid) {
        Some(elem) => (key == elem, key < elem),
        None => (false, key.is_negative()),
    };
    if hit {
        newmid
    } else if go_lower {
        recursive_bs2_helper(key, lst, low, newmid - 1)
    } else {
        recursive_bs2_helper(key, lst, newmid + 1, high)
    }
}

pub fn recursive_bs2(key: &BigInt, lst: &[BigInt]) -> i64 {
    recursive_bs2_helper(key, lst, 0, lst.len() as i64 - 1)
}

/// True when every element is an integer (the empty list qualifies).
pub fn number_list(v: &Value) -> bool {
    match v.as_list() {
        Some(items) => items.iter().all(|x| matches!(x, Value::Int(_))),
        None => false,
    }
}

/// True when the list is a nondecreasing integer list.
pub fn sorted(v: &Value) -> bool {
    let Some(items) = v.as_list() else {
        return false;
    };
    items.windows(2).all(|w| match (w[0].as_int(), w[1].as_int()) {
        (Some(a), Some(b)) => a <= b,
        _ => false,
    })
}

/// Predict the full interpreter outcome of running the binary search
/// program over `(var key)`/`(var lst)` on `vars` extended with these
/// inputs, without running the interpreter: the final status, the stores
/// of `LOW`, `HIGH`, `MID` (omitted while no midpoint was computed), and
/// `RESULT` in that order, and the step count given by the hit/miss
/// laws.
pub fn predicted_outcome(keyval: &BigInt, lstval: &[BigInt], vars: &VarEnv) -> RunOutcome {
    let trace = recursive_bs_helper(keyval, lstval, 0, None, lstval.len() as i64 - 1, 0);
    let mut vars = vars.clone();
    vars.store(Sym::new("low"), Value::int(trace.low));
    vars.store(Sym::new("high"), Value::int(trace.high));
    if let Some(mid) = trace.mid {
        vars.store(Sym::new("mid"), Value::int(mid));
    }
    let (result, steps) = if trace.success {
        (
            trace.mid.expect("a successful trace has a midpoint"),
            hit_law_steps(trace.calls),
        )
    } else {
        (-1, miss_law_steps(trace.calls))
    };
    vars.store(Sym::result(), Value::int(result));
    RunOutcome {
        status: RunStatus::Returned,
        vars,
        steps,
    }
}

/// How a checked program disagreed with the predictions.
#[derive(Clone, Debug)]
pub enum Mismatch {
    /// Interpreter outcome differs from [`predicted_outcome`].
    Outcome {
        expected: Box<RunOutcome>,
        actual: Box<RunOutcome>,
    },
    /// The two recursive searches disagree on the result.
    RecursiveResult { bs: i64, bs2: i64 },
    /// The interpreter's `RESULT` differs from the recursive result.
    InterpreterResult {
        recursive: i64,
        interpreter: Option<Value>,
    },
}

/// The minimal failing case of an agreement check: smallest list length
/// first, then smallest probe.
#[derive(Clone, Debug)]
pub struct AgreementFailure {
    pub n: u64,
    pub probe: BigInt,
    pub mismatch: Mismatch,
}

/// Number of (length, probe) cases an agreement check covered.
#[derive(Clone, Copy, Debug)]
pub struct AgreementReport {
    pub cases: u64,
}

/// Check `program` (over `(var key)`/`(var lst)`) against the predicted
/// outcomes, and the two recursive searches against each other, for
/// every canonical list of length 0..=`max_n` and every probe covering
/// each element, each gap, and both sentinels. Returns the minimal
/// counterexample on disagreement.
pub fn verify_agreement_with(
    program: &Stmt,
    max_n: u64,
) -> Result<AgreementReport, Box<AgreementFailure>> {
    let mut cases = 0;
    for n in 0..=max_n {
        let lst = canonical_list(n);
        let lst_value = Value::list(lst.iter().cloned().map(Value::Int).collect());
        for probe in probe_values(n) {
            cases += 1;
            let fail = |mismatch| {
                Box::new(AgreementFailure {
                    n,
                    probe: probe.clone(),
                    mismatch,
                })
            };
            let vars: VarEnv = [
                (Sym::new("key"), Value::Int(probe.clone())),
                (Sym::new("lst"), lst_value.clone()),
            ]
            .into_iter()
            .collect();
            let expected = predicted_outcome(&probe, &lst, &vars);
            let actual = run_program(program, vars, n + 2);
            if actual != expected {
                return Err(fail(Mismatch::Outcome {
                    expected: Box::new(expected),
                    actual: Box::new(actual),
                }));
            }
            let bs = recursive_bs(&probe, &lst);
            let bs2 = recursive_bs2(&probe, &lst);
            if bs != bs2 {
                return Err(fail(Mismatch::RecursiveResult { bs, bs2 }));
            }
            let interp_result = actual_result(&expected);
            if interp_result != Some(Value::int(bs)) {
                return Err(fail(Mismatch::InterpreterResult {
                    recursive: bs,
                    interpreter: interp_result,
                }));
            }
        }
    }
    Ok(AgreementReport { cases })
}

fn actual_result(outcome: &RunOutcome) -> Option<Value> {
    outcome.vars.lookup(&Sym::result()).cloned()
}

/// [`verify_agreement_with`] applied to the binary search program.
pub fn verify_agreement(max_n: u64) -> Result<AgreementReport, Box<AgreementFailure>> {
    verify_agreement_with(&binarysearch(Expr::var("key"), Expr::var("lst")), max_n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().copied().map(BigInt::from).collect()
    }

    #[test]
    fn log2_unfolds_by_halving() {
        assert_eq!(log2(0), 0);
        assert_eq!(log2(1), 1);
        assert_eq!(log2(8), 4);
        assert_eq!(log2(26), 5);
        assert_eq!(log2(4096), 13);
    }

    #[test]
    fn log2_is_monotone_and_shifts_under_doubling() {
        for n in 1..2000u64 {
            assert!(log2(n) <= log2(n + 1));
            assert_eq!(log2(2 * n), 1 + log2(n));
        }
    }

    #[test]
    fn helper_traces_a_hit() {
        let lst = ints(&[0, 1, 2, 3, 4, 5, 6, 7]);
        let trace = recursive_bs_helper(&BigInt::from(4), &lst, 0, None, 7, 0);
        assert_eq!(
            trace,
            BSTrace {
                success: true,
                low: 4,
                mid: Some(4),
                high: 4,
                calls: 2,
            }
        );
    }

    #[test]
    fn helper_returns_inputs_when_range_is_empty() {
        let lst = ints(&[1, 2, 3]);
        let trace = recursive_bs_helper(&BigInt::from(2), &lst, 5, Some(2), 3, 7);
        assert_eq!(
            trace,
            BSTrace {
                success: false,
                low: 5,
                mid: Some(2),
                high: 3,
                calls: 7,
            }
        );
    }

    #[test]
    fn helper_traces_a_miss_in_three_calls() {
        let lst = ints(&[0, 1, 3, 5, 7, 9, 10]);
        let trace = recursive_bs_helper(&BigInt::from(4), &lst, 0, None, 6, 0);
        assert!(!trace.success);
        assert_eq!(trace.calls, 3);
        assert_eq!((trace.low, trace.mid, trace.high), (3, Some(2), 2));
    }

    #[test]
    fn recursive_bs_finds_and_misses() {
        let sorted07 = ints(&[0, 1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(recursive_bs(&BigInt::from(4), &sorted07), 4);
        let gappy = ints(&[0, 1, 3, 5, 7, 9, 10]);
        assert_eq!(recursive_bs(&BigInt::from(4), &gappy), -1);
        assert_eq!(recursive_bs(&BigInt::from(4), &[]), -1);
    }

    #[test]
    fn both_recursions_agree_on_these_inputs() {
        let sorted07 = ints(&[0, 1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(recursive_bs2(&BigInt::from(4), &sorted07), 4);
        let gappy = ints(&[0, 1, 3, 5, 7, 9, 10]);
        assert_eq!(recursive_bs2(&BigInt::from(4), &gappy), -1);
        assert_eq!(recursive_bs2(&BigInt::from(4), &[]), -1);
    }

    #[test]
    fn sortedness_and_number_lists() {
        let good = Value::list(vec![
            Value::int(0),
            Value::int(1),
            Value::int(3),
            Value::int(5),
        ]);
        assert!(sorted(&good) && number_list(&good));
        let bad = Value::list(vec![Value::int(1), Value::int(0)]);
        assert!(!sorted(&bad) && number_list(&bad));
        let dup = Value::list(vec![Value::int(1), Value::int(1)]);
        assert!(sorted(&dup));
        assert!(sorted(&Value::nil()) && number_list(&Value::nil()));
        let symbols = Value::list(vec![Value::t()]);
        assert!(!number_list(&symbols));
        assert!(!number_list(&Value::int(3)));
    }

    #[test]
    fn predicted_outcome_matches_the_recorded_hit_run() {
        let lst = ints(&[0, 1, 2, 3, 4, 5, 6, 7]);
        let out = predicted_outcome(&BigInt::from(4), &lst, &VarEnv::new());
        assert_eq!(out.status, RunStatus::Returned);
        assert_eq!(out.steps, 77);
        assert_eq!(out.vars.lookup(&Sym::result()), Some(&Value::int(4)));
    }

    #[test]
    fn predicted_outcome_matches_the_recorded_miss_run() {
        let lst = ints(&[0, 1, 3, 5, 7, 9, 10]);
        let vars: VarEnv = [
            (Sym::new("key"), Value::int(4)),
            (
                Sym::new("lst"),
                Value::list(lst.iter().cloned().map(Value::Int).collect()),
            ),
        ]
        .into_iter()
        .collect();
        let out = predicted_outcome(&BigInt::from(4), &lst, &vars);
        assert_eq!(out.steps, 91);
        assert_eq!(out.vars.lookup(&Sym::result()), Some(&Value::int(-1)));
    }

    #[test]
    fn predicted_outcome_on_empty_input_omits_mid() {
        let out = predicted_outcome(&BigInt::from(0), &[], &VarEnv::new());
        assert_eq!(out.steps, miss_law_steps(0));
        assert_eq!(out.steps, 13);
        assert!(out.vars.lookup(&Sym::new("mid")).is_none());
        let names: Vec<&str> = out.vars.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, ["LOW", "HIGH", "RESULT"]);
    }

    #[test]
    fn call_count_is_bounded_by_log2() {
        for n in 1..=256u64 {
            let lst = canonical_list(n);
            for probe in probe_values(n) {
                let trace =
                    recursive_bs_helper(&probe, &lst, 0, None, lst.len() as i64 - 1, 0);
                assert!(
                    trace.calls <= log2(n),
                    "n = {n}, probe = {probe}: {} > {}",
                    trace.calls,
                    log2(n)
                );
            }
        }
    }

    #[test]
    fn agreement_holds_at_small_scale() {
        let report = verify_agreement(8).expect("agreement");
        // Lengths 0..=8 with 2n+1 probes each.
        assert_eq!(report.cases, (0..=8u64).map(|n| 2 * n + 1).sum::<u64>());
    }

    #[test]
    fn agreement_check_catches_a_cost_mutation() {
        // Pad the program with a costing statement: the harness must
        // report the smallest case.
        let padded = Stmt::seq(
            Stmt::assign("pad", Expr::lit(0)),
            binarysearch(Expr::var("key"), Expr::var("lst")),
        );
        let failure = verify_agreement_with(&padded, 4).unwrap_err();
        assert_eq!(failure.n, 0);
        assert_eq!(failure.probe, BigInt::from(-1));
        assert!(matches!(failure.mismatch, Mismatch::Outcome { .. }));
    }
}
