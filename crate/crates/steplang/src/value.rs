//! Runtime values and the variable environment.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

/// An interned-style identifier. Symbols are ASCII case-insensitive and
/// canonicalized to upper case, so `low`, `Low` and `LOW` all name the
/// same symbol.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sym(String);

impl Sym {
    pub fn new(name: &str) -> Sym {
        Sym(name.to_ascii_uppercase())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The reserved name a `return` statement stores into.
    pub fn result() -> Sym {
        Sym::new("result")
    }

    pub fn nil() -> Sym {
        Sym::new("nil")
    }

    pub fn t() -> Sym {
        Sym::new("t")
    }

    pub fn is_nil(&self) -> bool {
        self.0 == "NIL"
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Sym {
    fn from(name: &str) -> Sym {
        Sym::new(name)
    }
}

/// A runtime datum: an arbitrary-precision integer, a symbol, or a flat
/// list of integers and symbols.
///
/// The symbol `NIL` and the empty list are identified: they compare equal,
/// and both are the only falsey values. The symbol `T` is the canonical
/// true value produced by comparisons.
#[derive(Clone, Debug)]
pub enum Value {
    Int(BigInt),
    Sym(Sym),
    List(Arc<Vec<Value>>),
}

impl Value {
    pub fn int(n: impl Into<BigInt>) -> Value {
        Value::Int(n.into())
    }

    pub fn sym(name: &str) -> Value {
        Value::Sym(Sym::new(name))
    }

    pub fn list(items: Vec<Value>) -> Value {
        Value::List(Arc::new(items))
    }

    pub fn nil() -> Value {
        Value::Sym(Sym::nil())
    }

    pub fn t() -> Value {
        Value::Sym(Sym::t())
    }

    /// Canonical truth value for a comparison result: `T` or `NIL`.
    pub fn from_bool(b: bool) -> Value {
        if b {
            Value::t()
        } else {
            Value::nil()
        }
    }

    pub fn is_nil(&self) -> bool {
        match self {
            Value::Sym(s) => s.is_nil(),
            Value::List(items) => items.is_empty(),
            Value::Int(_) => false,
        }
    }

    /// Everything except `NIL`/the empty list is truthy (including 0).
    pub fn is_truthy(&self) -> bool {
        !self.is_nil()
    }

    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            Value::Int(n) => Some(n),
            _ => None,
        }
    }

    /// View this value as a list. `NIL` is the empty list.
    pub fn as_list(&self) -> Option<&[Value]> {
        match self {
            Value::List(items) => Some(items),
            Value::Sym(s) if s.is_nil() => Some(&[]),
            _ => None,
        }
    }
}

impl PartialEq for Value {
    fn eq(&self, other: &Value) -> bool {
        match (self, other) {
            (Value::Int(a), Value::Int(b)) => a == b,
            (Value::Sym(a), Value::Sym(b)) => a == b,
            (Value::List(a), Value::List(b)) => a == b,
            // NIL and the empty list are the same value.
            (Value::Sym(s), Value::List(items)) | (Value::List(items), Value::Sym(s)) => {
                s.is_nil() && items.is_empty()
            }
            _ => false,
        }
    }
}

impl Eq for Value {}

impl From<i64> for Value {
    fn from(n: i64) -> Value {
        Value::int(n)
    }
}

impl From<BigInt> for Value {
    fn from(n: BigInt) -> Value {
        Value::Int(n)
    }
}

impl fmt::Display for Value {
    /// Program-text rendering: lower-case symbols, `nil` for the empty list.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(n) => write!(f, "{n}"),
            Value::Sym(s) => f.write_str(&s.as_str().to_ascii_lowercase()),
            Value::List(items) if items.is_empty() => f.write_str("nil"),
            Value::List(items) => {
                f.write_str("(")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{item}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// An ordered association of variable names to values.
///
/// Lookup returns the first binding of a name; storing an existing name
/// replaces that first binding in place, and storing a new name appends
/// at the end. Binding order is observable in printed outcomes, so
/// equality on environments is order-sensitive.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VarEnv(Vec<(Sym, Value)>);

impl VarEnv {
    pub fn new() -> VarEnv {
        VarEnv(Vec::new())
    }

    pub fn lookup(&self, name: &Sym) -> Option<&Value> {
        self.0.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn is_defined(&self, name: &Sym) -> bool {
        self.lookup(name).is_some()
    }

    pub fn store(&mut self, name: Sym, value: Value) {
        match self.0.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = value,
            None => self.0.push((name, value)),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Sym, Value)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<(Sym, Value)> for VarEnv {
    fn from_iter<I: IntoIterator<Item = (Sym, Value)>>(iter: I) -> VarEnv {
        let mut env = VarEnv::new();
        for (name, value) in iter {
            env.store(name, value);
        }
        env
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nil_and_empty_list_are_identified() {
        assert_eq!(Value::nil(), Value::list(vec![]));
        assert_eq!(Value::list(vec![]), Value::sym("NIL"));
        assert!(!Value::nil().is_truthy());
        assert!(!Value::list(vec![]).is_truthy());
        assert_ne!(Value::sym("t"), Value::list(vec![]));
    }

    #[test]
    fn zero_is_truthy() {
        assert!(Value::int(0).is_truthy());
        assert!(Value::t().is_truthy());
        assert!(Value::list(vec![Value::int(1)]).is_truthy());
    }

    #[test]
    fn symbols_are_case_insensitive() {
        assert_eq!(Sym::new("low"), Sym::new("LOW"));
        assert_eq!(Sym::new("Mid").as_str(), "MID");
    }

    #[test]
    fn env_lookup_finds_first_binding() {
        let env: VarEnv = [
            (Sym::new("x"), Value::int(1)),
            (Sym::new("y"), Value::int(2)),
        ]
        .into_iter()
        .collect();
        assert_eq!(env.lookup(&Sym::new("X")), Some(&Value::int(1)));
        assert_eq!(env.lookup(&Sym::new("z")), None);
    }

    #[test]
    fn env_store_replaces_in_place_and_appends_new() {
        let mut env = VarEnv::new();
        env.store(Sym::new("a"), Value::int(1));
        env.store(Sym::new("b"), Value::int(2));
        env.store(Sym::new("a"), Value::int(9));
        let names: Vec<&str> = env.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, ["A", "B"]);
        assert_eq!(env.lookup(&Sym::new("a")), Some(&Value::int(9)));
    }

    #[test]
    fn display_uses_program_text_conventions() {
        assert_eq!(Value::int(-3).to_string(), "-3");
        assert_eq!(Value::sym("FOO").to_string(), "foo");
        assert_eq!(Value::list(vec![]).to_string(), "nil");
        let lst = Value::list(vec![Value::int(0), Value::int(1), Value::sym("t")]);
        assert_eq!(lst.to_string(), "(0 1 t)");
    }
}
