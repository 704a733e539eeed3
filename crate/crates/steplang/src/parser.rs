//! Concrete syntax: a reader for the parenthesized, dotted-pair program
//! form, plus lowering into [`Expr`], [`Stmt`], [`Value`], and [`VarEnv`].
//!
//! The reader accepts `;` line comments anywhere whitespace is allowed,
//! and treats `(a . (b c))` and `(a b c)` as the same form. `(seqn s1
//! ... sk)` is surface sugar eliminated here; the AST has only binary
//! `seq`.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::ast::{BinOp, Expr, Stmt};
use crate::value::{Sym, Value, VarEnv};

/// Line/column of a token, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("{pos}: {message}")]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
}

impl ParseError {
    fn new(pos: Pos, message: impl Into<String>) -> ParseError {
        ParseError {
            pos,
            message: message.into(),
        }
    }
}

pub type ParseResult<T> = Result<T, ParseError>;

/// Maximum paren nesting the reader accepts. Deeper input is rejected
/// with a diagnostic instead of exhausting the stack.
const MAX_DEPTH: usize = 500;

// ---------------------------------------------------------------------
// Reader: text -> s-expression forms
// ---------------------------------------------------------------------

/// A read form. Proper lists have `tail: None`; a dotted atom tail is
/// kept in `tail`. A dotted list tail is spliced into `items` while
/// reading, so equivalently written forms read identically.
#[derive(Debug)]
enum Form {
    Int(BigInt, Pos),
    Sym(String, Pos),
    List {
        items: Vec<Form>,
        tail: Option<Box<Form>>,
        pos: Pos,
    },
}

impl Form {
    fn pos(&self) -> Pos {
        match self {
            Form::Int(_, p) | Form::Sym(_, p) => *p,
            Form::List { pos, .. } => *pos,
        }
    }
}

struct Reader<'a> {
    src: &'a [u8],
    at: usize,
    line: u32,
    col: u32,
}

impl<'a> Reader<'a> {
    fn new(src: &'a str) -> Reader<'a> {
        Reader {
            src: src.as_bytes(),
            at: 0,
            line: 1,
            col: 1,
        }
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            col: self.col,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.at).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.at += 1;
        if b == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(b)
    }

    fn skip_trivia(&mut self) {
        while let Some(b) = self.peek() {
            if b.is_ascii_whitespace() {
                self.bump();
            } else if b == b';' {
                while let Some(b) = self.peek() {
                    if b == b'\n' {
                        break;
                    }
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    fn is_atom_byte(b: u8) -> bool {
        !b.is_ascii_whitespace() && b != b'(' && b != b')' && b != b';'
    }

    fn read_atom(&mut self) -> ParseResult<Form> {
        let pos = self.pos();
        let start = self.at;
        while let Some(b) = self.peek() {
            if Self::is_atom_byte(b) {
                self.bump();
            } else {
                break;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.at])
            .map_err(|_| ParseError::new(pos, "invalid UTF-8 in atom"))?;
        // A token that looks numeric must be an integer; rationals and
        // decimals are not part of the language.
        let numeric_intent = {
            let rest = text.strip_prefix(['+', '-']).unwrap_or(text);
            rest.starts_with(|c: char| c.is_ascii_digit() || c == '.') && text != "."
        };
        if numeric_intent {
            match text.parse::<BigInt>() {
                Ok(n) => Ok(Form::Int(n, pos)),
                Err(_) => Err(ParseError::new(
                    pos,
                    format!("`{text}` is not an integer literal"),
                )),
            }
        } else {
            Ok(Form::Sym(text.to_string(), pos))
        }
    }

    fn read_form(&mut self, depth: usize) -> ParseResult<Form> {
        if depth > MAX_DEPTH {
            return Err(ParseError::new(self.pos(), "form nesting too deep"));
        }
        self.skip_trivia();
        let pos = self.pos();
        match self.peek() {
            None => Err(ParseError::new(pos, "unexpected end of input")),
            Some(b')') => Err(ParseError::new(pos, "unexpected `)`")),
            Some(b'(') => {
                self.bump();
                let mut items = Vec::new();
                let mut tail = None;
                loop {
                    self.skip_trivia();
                    match self.peek() {
                        None => {
                            return Err(ParseError::new(
                                self.pos(),
                                "unterminated list (missing `)`)",
                            ))
                        }
                        Some(b')') => {
                            self.bump();
                            break;
                        }
                        _ => {
                            if self.dot_ahead() {
                                let dot_pos = self.pos();
                                self.bump(); // the `.`
                                if items.is_empty() {
                                    return Err(ParseError::new(
                                        dot_pos,
                                        "`.` with no preceding element",
                                    ));
                                }
                                let t = self.read_form(depth + 1)?;
                                self.skip_trivia();
                                if self.peek() != Some(b')') {
                                    return Err(ParseError::new(
                                        self.pos(),
                                        "expected `)` after dotted tail",
                                    ));
                                }
                                self.bump();
                                tail = Some(t);
                                break;
                            }
                            items.push(self.read_form(depth + 1)?);
                        }
                    }
                }
                // Normalize cons equivalences: a nil tail makes the list
                // proper; a list tail splices.
                match tail {
                    None => Ok(Form::List {
                        items,
                        tail: None,
                        pos,
                    }),
                    Some(Form::Sym(s, _)) if s.eq_ignore_ascii_case("nil") => Ok(Form::List {
                        items,
                        tail: None,
                        pos,
                    }),
                    Some(Form::List {
                        items: tail_items,
                        tail: tail_tail,
                        ..
                    }) => {
                        items.extend(tail_items);
                        Ok(Form::List {
                            items,
                            tail: tail_tail,
                            pos,
                        })
                    }
                    Some(atom) => Ok(Form::List {
                        items,
                        tail: Some(Box::new(atom)),
                        pos,
                    }),
                }
            }
            Some(_) => {
                let atom = self.read_atom()?;
                if let Form::Sym(s, p) = &atom {
                    if s == "." {
                        return Err(ParseError::new(*p, "unexpected `.`"));
                    }
                }
                Ok(atom)
            }
        }
    }

    /// True when the next token is a standalone `.`.
    fn dot_ahead(&self) -> bool {
        if self.peek() != Some(b'.') {
            return false;
        }
        match self.src.get(self.at + 1) {
            None => true,
            Some(&b) => !Self::is_atom_byte(b),
        }
    }

    /// Read exactly one form followed by trivia and end of input.
    fn read_single(&mut self) -> ParseResult<Form> {
        let form = self.read_form(0)?;
        self.skip_trivia();
        if self.peek().is_some() {
            return Err(ParseError::new(self.pos(), "trailing input after form"));
        }
        Ok(form)
    }
}

// ---------------------------------------------------------------------
// Lowering: forms -> Value / Expr / Stmt / VarEnv
// ---------------------------------------------------------------------

fn lower_value(form: &Form) -> ParseResult<Value> {
    match form {
        Form::Int(n, _) => Ok(Value::Int(n.clone())),
        Form::Sym(s, _) => Ok(Value::Sym(Sym::new(s))),
        Form::List {
            tail: Some(t), ..
        } => Err(ParseError::new(
            t.pos(),
            "literal lists must be proper lists",
        )),
        Form::List { items, .. } => {
            let mut out = Vec::with_capacity(items.len());
            for item in items {
                match item {
                    Form::Int(n, _) => out.push(Value::Int(n.clone())),
                    Form::Sym(s, _) => out.push(Value::Sym(Sym::new(s))),
                    Form::List { pos, .. } => {
                        return Err(ParseError::new(
                            *pos,
                            "list elements must be integers or symbols",
                        ))
                    }
                }
            }
            Ok(Value::list(out))
        }
    }
}

fn head_sym<'f>(items: &'f [Form], pos: Pos) -> ParseResult<(&'f str, Pos)> {
    match items.first() {
        Some(Form::Sym(s, p)) => Ok((s.as_str(), *p)),
        Some(other) => Err(ParseError::new(other.pos(), "operator must be a symbol")),
        None => Err(ParseError::new(pos, "empty form")),
    }
}

fn expect_arity(op: &str, items: &[Form], n: usize, pos: Pos) -> ParseResult<()> {
    if items.len() - 1 != n {
        return Err(ParseError::new(
            pos,
            format!("`{op}` takes {n} argument(s), got {}", items.len() - 1),
        ));
    }
    Ok(())
}

fn lower_expr(form: &Form) -> ParseResult<Expr> {
    let (items, tail, pos) = match form {
        Form::List { items, tail, pos } => (items, tail, *pos),
        other => {
            return Err(ParseError::new(
                other.pos(),
                "expected an expression form in parentheses",
            ))
        }
    };
    let (head, head_pos) = head_sym(items, pos)?;

    if let Some(t) = tail {
        // The only dotted expression form is an atom literal.
        if head.eq_ignore_ascii_case("lit") && items.len() == 1 {
            return Ok(Expr::Lit(lower_value(t)?));
        }
        return Err(ParseError::new(t.pos(), "unexpected dotted tail"));
    }

    if head.eq_ignore_ascii_case("var") {
        expect_arity("var", items, 1, pos)?;
        match &items[1] {
            Form::Sym(s, _) => Ok(Expr::Var(Sym::new(s))),
            other => Err(ParseError::new(other.pos(), "variable name must be a symbol")),
        }
    } else if head.eq_ignore_ascii_case("lit") {
        // `(lit . (v0 ... vk))` reads as this proper list: a list literal.
        let mut out = Vec::with_capacity(items.len() - 1);
        for item in &items[1..] {
            match lower_value(item)? {
                v @ (Value::Int(_) | Value::Sym(_)) => out.push(v),
                Value::List(_) => {
                    return Err(ParseError::new(
                        item.pos(),
                        "list elements must be integers or symbols",
                    ))
                }
            }
        }
        Ok(Expr::Lit(Value::list(out)))
    } else if head.eq_ignore_ascii_case("len") {
        expect_arity("len", items, 1, pos)?;
        Ok(Expr::len(lower_expr(&items[1])?))
    } else if head.eq_ignore_ascii_case("ind") {
        expect_arity("ind", items, 2, pos)?;
        Ok(Expr::ind(lower_expr(&items[1])?, lower_expr(&items[2])?))
    } else if let Some(op) = BinOp::from_token(head) {
        expect_arity(head, items, 2, pos)?;
        Ok(Expr::binary(
            op,
            lower_expr(&items[1])?,
            lower_expr(&items[2])?,
        ))
    } else {
        Err(ParseError::new(
            head_pos,
            format!("unknown expression operator `{head}`"),
        ))
    }
}

fn lower_stmt(form: &Form) -> ParseResult<Stmt> {
    let (items, tail, pos) = match form {
        Form::List { items, tail, pos } => (items, tail, *pos),
        other => {
            return Err(ParseError::new(
                other.pos(),
                "expected a statement form in parentheses",
            ))
        }
    };
    if let Some(t) = tail {
        return Err(ParseError::new(t.pos(), "unexpected dotted tail"));
    }
    let (head, head_pos) = head_sym(items, pos)?;

    if head.eq_ignore_ascii_case("skip") {
        expect_arity("skip", items, 0, pos)?;
        Ok(Stmt::Skip)
    } else if head.eq_ignore_ascii_case("assign") {
        expect_arity("assign", items, 2, pos)?;
        match lower_expr(&items[1])? {
            Expr::Var(name) => Ok(Stmt::Assign(name, lower_expr(&items[2])?)),
            _ => Err(ParseError::new(
                items[1].pos(),
                "assign target must be a variable, written (var s)",
            )),
        }
    } else if head.eq_ignore_ascii_case("return") {
        expect_arity("return", items, 1, pos)?;
        Ok(Stmt::Return(lower_expr(&items[1])?))
    } else if head.eq_ignore_ascii_case("if-else") {
        expect_arity("if-else", items, 3, pos)?;
        Ok(Stmt::if_else(
            lower_expr(&items[1])?,
            lower_stmt(&items[2])?,
            lower_stmt(&items[3])?,
        ))
    } else if head.eq_ignore_ascii_case("while") {
        expect_arity("while", items, 2, pos)?;
        Ok(Stmt::while_loop(lower_expr(&items[1])?, lower_stmt(&items[2])?))
    } else if head.eq_ignore_ascii_case("seq") {
        expect_arity("seq", items, 2, pos)?;
        Ok(Stmt::seq(lower_stmt(&items[1])?, lower_stmt(&items[2])?))
    } else if head.eq_ignore_ascii_case("seqn") {
        if items.len() < 3 {
            return Err(ParseError::new(
                pos,
                format!("`seqn` takes at least 2 statements, got {}", items.len() - 1),
            ));
        }
        let stmts = items[1..]
            .iter()
            .map(lower_stmt)
            .collect::<ParseResult<Vec<_>>>()?;
        Ok(Stmt::seqn(stmts))
    } else {
        Err(ParseError::new(
            head_pos,
            format!("unknown statement operator `{head}`"),
        ))
    }
}

// ---------------------------------------------------------------------
// Public entry points
// ---------------------------------------------------------------------

/// Parse a single expression form.
pub fn parse_expr(text: &str) -> ParseResult<Expr> {
    lower_expr(&Reader::new(text).read_single()?)
}

/// Parse a single statement form.
pub fn parse_stmt(text: &str) -> ParseResult<Stmt> {
    lower_stmt(&Reader::new(text).read_single()?)
}

/// Parse a single value form (an integer, symbol, or flat list).
pub fn parse_value(text: &str) -> ParseResult<Value> {
    lower_value(&Reader::new(text).read_single()?)
}

/// Parse a variable alist such as `((key . 4) (lst . (0 1 3 5 7 9 10)))`.
/// Empty input, `nil`, and `()` all denote the empty environment.
pub fn parse_env(text: &str) -> ParseResult<VarEnv> {
    let mut reader = Reader::new(text);
    reader.skip_trivia();
    if reader.peek().is_none() {
        return Ok(VarEnv::new());
    }
    let form = reader.read_single()?;
    let items = match &form {
        Form::Sym(s, _) if s.eq_ignore_ascii_case("nil") => return Ok(VarEnv::new()),
        Form::List {
            items,
            tail: None,
            ..
        } => items,
        other => {
            return Err(ParseError::new(
                other.pos(),
                "environment must be an alist of (name . value) pairs",
            ))
        }
    };
    let mut env = VarEnv::new();
    for binding in items {
        let (bitems, btail, bpos) = match binding {
            Form::List { items, tail, pos } => (items, tail, *pos),
            other => {
                return Err(ParseError::new(
                    other.pos(),
                    "environment binding must be a (name . value) pair",
                ))
            }
        };
        let name = match bitems.first() {
            Some(Form::Sym(s, _)) => Sym::new(s),
            _ => {
                return Err(ParseError::new(bpos, "binding name must be a symbol"));
            }
        };
        let value = match btail {
            Some(t) => {
                if bitems.len() != 1 {
                    return Err(ParseError::new(bpos, "malformed binding"));
                }
                lower_value(t)?
            }
            None => {
                // `(name v0 v1 ...)` is `(name . (v0 v1 ...))`: a list value.
                let mut out = Vec::with_capacity(bitems.len() - 1);
                for item in &bitems[1..] {
                    match lower_value(item)? {
                        v @ (Value::Int(_) | Value::Sym(_)) => out.push(v),
                        Value::List(_) => {
                            return Err(ParseError::new(
                                item.pos(),
                                "list elements must be integers or symbols",
                            ))
                        }
                    }
                }
                Value::list(out)
            }
        };
        env.store(name, value);
    }
    Ok(env)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::Expr;

    #[test]
    fn parses_atomic_statement_forms() {
        assert_eq!(parse_stmt("(skip)"), Ok(Stmt::Skip));
    }

    #[test]
    fn seqn_desugars_right_associatively() {
        let s = parse_stmt("(seqn (skip) (skip) (return (lit . 0)))").unwrap();
        assert_eq!(
            s,
            Stmt::seq(Stmt::Skip, Stmt::seq(Stmt::Skip, Stmt::ret(Expr::lit(0))))
        );
    }

    #[test]
    fn assign_target_must_be_a_variable() {
        let err = parse_stmt("(assign (lit . 3) (lit . 4))").unwrap_err();
        assert!(err.message.contains("assign target"), "{err}");
    }

    #[test]
    fn parses_nested_arithmetic() {
        let e = parse_expr("(+ (var x) (* (var y) (lit . 10)))").unwrap();
        assert_eq!(
            e,
            Expr::binary(
                BinOp::Add,
                Expr::var("x"),
                Expr::binary(BinOp::Mul, Expr::var("y"), Expr::lit(10)),
            )
        );
    }

    #[test]
    fn parses_list_literals_in_both_notations() {
        let expected = Expr::lit(Value::list(vec![
            Value::int(0),
            Value::int(1),
            Value::int(2),
        ]));
        assert_eq!(parse_expr("(lit . (0 1 2))").unwrap(), expected);
        assert_eq!(parse_expr("(lit 0 1 2)").unwrap(), expected);
        assert_eq!(parse_expr("(lit . nil)").unwrap(), Expr::lit(Value::list(vec![])));
    }

    #[test]
    fn dotted_atom_literal_differs_from_singleton_list() {
        assert_eq!(parse_expr("(lit . 0)").unwrap(), Expr::lit(0));
        assert_eq!(
            parse_expr("(lit 0)").unwrap(),
            Expr::lit(Value::list(vec![Value::int(0)]))
        );
    }

    #[test]
    fn ind_is_binary() {
        let err = parse_expr("(ind (var i))").unwrap_err();
        assert!(err.message.contains("2 argument"), "{err}");
    }

    #[test]
    fn negative_literals_are_permitted() {
        assert_eq!(parse_expr("(lit . -1)").unwrap(), Expr::lit(-1));
    }

    #[test]
    fn non_integer_numerals_are_rejected() {
        assert!(parse_expr("(lit . 3.5)").is_err());
        assert!(parse_expr("(lit . 1/2)").is_err());
    }

    #[test]
    fn unknown_operators_are_rejected_with_position() {
        let err = parse_expr("(% (lit . 1) (lit . 2))").unwrap_err();
        assert_eq!(err.pos, Pos { line: 1, col: 2 });
    }

    #[test]
    fn comments_and_whitespace_are_trivia() {
        let s = parse_stmt("; a program\n(seq (skip) ; inner\n     (skip))").unwrap();
        assert_eq!(s, Stmt::seq(Stmt::Skip, Stmt::Skip));
    }

    #[test]
    fn trailing_input_is_an_error() {
        assert!(parse_stmt("(skip) (skip)").is_err());
    }

    #[test]
    fn parses_environments() {
        let env = parse_env("((key . 4) (lst . (0 1 3 5 7 9 10)))").unwrap();
        assert_eq!(env.lookup(&Sym::new("key")), Some(&Value::int(4)));
        let lst = env.lookup(&Sym::new("lst")).unwrap();
        assert_eq!(lst.as_list().unwrap().len(), 7);
        assert_eq!(parse_env("").unwrap(), VarEnv::new());
        assert_eq!(parse_env("nil").unwrap(), VarEnv::new());
        assert_eq!(parse_env("()").unwrap(), VarEnv::new());
    }

    #[test]
    fn env_list_values_read_in_either_notation() {
        let a = parse_env("((lst . (0 1)))").unwrap();
        let b = parse_env("((lst 0 1))").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn deep_nesting_is_rejected_not_crashed() {
        let mut s = String::new();
        for _ in 0..4000 {
            s.push('(');
        }
        assert!(parse_expr(&s).is_err());
    }
}
