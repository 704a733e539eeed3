//! The built-in search programs as AST templates, parameterized by key
//! and list expressions, plus the canonical inputs the sweep harness
//! feeds them.

use num_bigint::BigInt;

use crate::ast::{BinOp, Expr, Stmt};
use crate::value::{Sym, Value, VarEnv};

/// Iterative binary search. `key` and `lst` are spliced in as
/// expressions, so callers can pass literals or `(var ...)` references:
///
/// ```text
/// (seqn (assign (var low) (lit . 0))
///       (assign (var high) (- (len lst) (lit . 1)))
///       (while (<= (var low) (var high))
///         (seq (assign (var mid) (// (+ (var low) (var high)) (lit . 2)))
///              (if-else (== key (ind (var mid) lst))
///                       (return (var mid))
///                       (if-else (< key (ind (var mid) lst))
///                                (assign (var high) (- (var mid) (lit . 1)))
///                                (assign (var low) (+ (var mid) (lit . 1)))))))
///       (return (lit . -1)))
/// ```
pub fn binarysearch(key: Expr, lst: Expr) -> Stmt {
    Stmt::seqn(vec![
        Stmt::assign("low", Expr::lit(0)),
        Stmt::assign(
            "high",
            Expr::binary(BinOp::Sub, Expr::len(lst.clone()), Expr::lit(1)),
        ),
        Stmt::while_loop(
            Expr::binary(BinOp::Le, Expr::var("low"), Expr::var("high")),
            Stmt::seq(
                Stmt::assign(
                    "mid",
                    Expr::binary(
                        BinOp::Div,
                        Expr::binary(BinOp::Add, Expr::var("low"), Expr::var("high")),
                        Expr::lit(2),
                    ),
                ),
                Stmt::if_else(
                    Expr::binary(
                        BinOp::Eq,
                        key.clone(),
                        Expr::ind(Expr::var("mid"), lst.clone()),
                    ),
                    Stmt::ret(Expr::var("mid")),
                    Stmt::if_else(
                        Expr::binary(BinOp::Lt, key, Expr::ind(Expr::var("mid"), lst)),
                        Stmt::assign(
                            "high",
                            Expr::binary(BinOp::Sub, Expr::var("mid"), Expr::lit(1)),
                        ),
                        Stmt::assign(
                            "low",
                            Expr::binary(BinOp::Add, Expr::var("mid"), Expr::lit(1)),
                        ),
                    ),
                ),
            ),
        ),
        Stmt::ret(Expr::lit(-1)),
    ])
}

/// Binary search with the conditional re-ordered: the `<` test comes
/// first, then the `==` test, with `low = mid + 1` in the final else.
/// Functionally identical to [`binarysearch`], but taking the upper half
/// costs more steps per iteration than taking the lower half, because it
/// evaluates one extra test.
pub fn binarysearch_alt(key: Expr, lst: Expr) -> Stmt {
    Stmt::seqn(vec![
        Stmt::assign("low", Expr::lit(0)),
        Stmt::assign(
            "high",
            Expr::binary(BinOp::Sub, Expr::len(lst.clone()), Expr::lit(1)),
        ),
        Stmt::while_loop(
            Expr::binary(BinOp::Le, Expr::var("low"), Expr::var("high")),
            Stmt::seq(
                Stmt::assign(
                    "mid",
                    Expr::binary(
                        BinOp::Div,
                        Expr::binary(BinOp::Add, Expr::var("low"), Expr::var("high")),
                        Expr::lit(2),
                    ),
                ),
                Stmt::if_else(
                    Expr::binary(
                        BinOp::Lt,
                        key.clone(),
                        Expr::ind(Expr::var("mid"), lst.clone()),
                    ),
                    Stmt::assign(
                        "high",
                        Expr::binary(BinOp::Sub, Expr::var("mid"), Expr::lit(1)),
                    ),
                    Stmt::if_else(
                        Expr::binary(BinOp::Eq, key, Expr::ind(Expr::var("mid"), lst)),
                        Stmt::ret(Expr::var("mid")),
                        Stmt::assign(
                            "low",
                            Expr::binary(BinOp::Add, Expr::var("mid"), Expr::lit(1)),
                        ),
                    ),
                ),
            ),
        ),
        Stmt::ret(Expr::lit(-1)),
    ])
}

/// Linear scan returning the index of the first occurrence of `key`, or
/// -1 when it is absent:
///
/// ```text
/// (seqn (assign (var i) (lit . 0))
///       (while (< (var i) (len lst))
///         (seq (if-else (== key (ind (var i) lst))
///                       (return (var i))
///                       (skip))
///              (assign (var i) (+ (var i) (lit . 1)))))
///       (return (lit . -1)))
/// ```
pub fn linear_search(key: Expr, lst: Expr) -> Stmt {
    Stmt::seqn(vec![
        Stmt::assign("i", Expr::lit(0)),
        Stmt::while_loop(
            Expr::binary(BinOp::Lt, Expr::var("i"), Expr::len(lst.clone())),
            Stmt::seq(
                Stmt::if_else(
                    Expr::binary(BinOp::Eq, key, Expr::ind(Expr::var("i"), lst)),
                    Stmt::ret(Expr::var("i")),
                    Stmt::Skip,
                ),
                Stmt::assign("i", Expr::binary(BinOp::Add, Expr::var("i"), Expr::lit(1))),
            ),
        ),
        Stmt::ret(Expr::lit(-1)),
    ])
}

/// A named program template plus its canonical sweep inputs.
#[derive(Clone, Copy)]
pub struct ProgramFamily {
    pub name: &'static str,
    build: fn(Expr, Expr) -> Stmt,
}

pub const FAMILIES: [ProgramFamily; 3] = [
    ProgramFamily {
        name: "binarysearch",
        build: binarysearch,
    },
    ProgramFamily {
        name: "binarysearch-alt",
        build: binarysearch_alt,
    },
    ProgramFamily {
        name: "linear-search",
        build: linear_search,
    },
];

impl ProgramFamily {
    pub fn by_name(name: &str) -> Option<&'static ProgramFamily> {
        FAMILIES.iter().find(|f| f.name == name)
    }

    pub fn build(&self, key: Expr, lst: Expr) -> Stmt {
        (self.build)(key, lst)
    }

    /// The family program over environment variables `key` and `lst`.
    pub fn program(&self) -> Stmt {
        self.build(Expr::var("key"), Expr::var("lst"))
    }

    /// Environment for one probe run: `KEY` bound to the probe, `LST`
    /// bound to the canonical list of length `n`.
    pub fn input_env(&self, n: u64, probe: &BigInt) -> VarEnv {
        [
            (Sym::new("key"), Value::Int(probe.clone())),
            (Sym::new("lst"), canonical_list_value(n)),
        ]
        .into_iter()
        .collect()
    }
}

/// The canonical sorted input of length `n`: `0, 2, 4, ..., 2(n-1)`.
/// Elements are distinct and every gap holds an odd integer, so misses
/// between any two elements are probeable.
pub fn canonical_list(n: u64) -> Vec<BigInt> {
    (0..n).map(|i| BigInt::from(2 * i)).collect()
}

pub fn canonical_list_value(n: u64) -> Value {
    Value::list(canonical_list(n).into_iter().map(Value::Int).collect())
}

/// The probe set for the canonical list of length `n`: every integer in
/// `[-1, 2(n-1)+1]`, which is every element (the hits) plus every gap
/// value, one value below the minimum, and one above the maximum (the
/// misses). 2n+1 probes in ascending order.
pub fn probe_values(n: u64) -> Vec<BigInt> {
    let lo: i64 = -1;
    let hi: i64 = 2 * (n as i64) - 1;
    (lo..=hi).map(BigInt::from).collect()
}
