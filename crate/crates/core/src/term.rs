//! De Bruijn λ-terms: representation, size, canonical text form and parsing.
//!
//! Variables are 0-based de Bruijn indices. Terminal constants are single
//! characters that cannot be confused with the rest of the grammar:
//!
//! ```text
//! term := index | const | 'C' index | 'λ' '.' term | '(' term (' ' term)* ')'
//! ```
//!
//! An abstraction body is always a single term, so `λ.λ.(1 (1 0))` is C(2)
//! and `(λ.0 a)` applies the identity to `a`. `C<n>` is read as the Church
//! numeral for `n`. A parenthesised single term is accepted as grouping.

use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    Const(char),
    Abs(Arc<Term>),
    App(Arc<Term>, Arc<Term>),
}

/// Shared leaf swapped into nodes while they are torn down.
fn leaf() -> Arc<Term> {
    static LEAF: OnceLock<Arc<Term>> = OnceLock::new();
    LEAF.get_or_init(|| Arc::new(Term::Var(0))).clone()
}

impl Term {
    fn is_leaf(&self) -> bool {
        matches!(self, Term::Var(_) | Term::Const(_))
    }

    /// Moves out uniquely owned compound children; leaves drop in place.
    fn take_children(&mut self, out: &mut Vec<Arc<Term>>) {
        let mut take = |child: &mut Arc<Term>| {
            if !child.is_leaf() && Arc::strong_count(child) == 1 {
                out.push(std::mem::replace(child, leaf()));
            }
        };
        match self {
            Term::Abs(b) => take(b),
            Term::App(f, a) => {
                take(f);
                take(a);
            }
            Term::Var(_) | Term::Const(_) => {}
        }
    }
}

// Church numerals are long right spines; dropping them recursively would
// blow the stack on test threads.
impl Drop for Term {
    fn drop(&mut self) {
        let mut pending = Vec::new();
        self.take_children(&mut pending);
        while let Some(child) = pending.pop() {
            if let Ok(mut node) = Arc::try_unwrap(child) {
                node.take_children(&mut pending);
            }
        }
    }
}

/// True for characters usable as terminal constants.
pub fn is_terminal_symbol(c: char) -> bool {
    !(c == 'λ'
        || c == '\\'
        || c == '.'
        || c == '('
        || c == ')'
        || c.is_ascii_digit()
        || c.is_whitespace()
        || c.is_control())
}

impl Term {
    pub fn var(index: usize) -> Term {
        Term::Var(index)
    }

    /// Panics if `c` is not a terminal symbol.
    pub fn constant(c: char) -> Term {
        assert!(is_terminal_symbol(c), "{c:?} is not a terminal symbol");
        Term::Const(c)
    }

    pub fn abs(body: Term) -> Term {
        Term::Abs(Arc::new(body))
    }

    pub fn app(fun: Term, arg: Term) -> Term {
        Term::App(Arc::new(fun), Arc::new(arg))
    }

    /// Left-associated application `(head a1 a2 ...)`.
    pub fn apps(head: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(head, Term::app)
    }

    /// Wraps `self` in `count` abstractions.
    pub fn abs_n(self, count: usize) -> Term {
        (0..count).fold(self, |t, _| Term::abs(t))
    }

    /// Number of symbols: variables and constants count 1, each abstraction
    /// and application adds 1.
    pub fn size(&self) -> usize {
        let mut total = 0;
        let mut stack = Vec::new();
        let mut cur = Some(self);
        while let Some(t) = cur {
            total += 1;
            cur = match t {
                Term::Var(_) | Term::Const(_) => stack.pop(),
                Term::Abs(b) => Some(&**b),
                Term::App(f, a) => {
                    stack.push(&**f);
                    Some(&**a)
                }
            };
        }
        total
    }

    pub fn is_closed(&self) -> bool {
        let mut stack = vec![(self, 0usize)];
        while let Some((t, depth)) = stack.pop() {
            match t {
                Term::Var(i) => {
                    if *i >= depth {
                        return false;
                    }
                }
                Term::Const(_) => {}
                Term::Abs(b) => stack.push((b, depth + 1)),
                Term::App(f, a) => {
                    stack.push((f, depth));
                    stack.push((a, depth));
                }
            }
        }
        true
    }

    /// If the term has the exact shape `λ.λ.(1 (1 … (1 0)))`, the numeral.
    pub fn as_church(&self) -> Option<u64> {
        let Term::Abs(outer) = self else { return None };
        let Term::Abs(body) = &**outer else {
            return None;
        };
        let mut n = 0u64;
        let mut cur: &Term = body;
        loop {
            match cur {
                Term::Var(0) => return Some(n),
                Term::App(f, x) if matches!(**f, Term::Var(1)) => {
                    n += 1;
                    cur = x;
                }
                _ => return None,
            }
        }
    }

    /// Head and arguments of an application spine.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut head = self;
        while let Term::App(f, a) = head {
            args.push(&**a);
            head = f;
        }
        args.reverse();
        (head, args)
    }

    /// Canonical text; with `sugar`, Church numerals print as `C<n>`.
    pub fn to_text(&self, sugar: bool) -> String {
        let mut out = String::new();
        write_term(&mut out, self, sugar);
        out
    }
}

fn write_term(out: &mut String, t: &Term, sugar: bool) {
    if sugar {
        if let Some(n) = t.as_church() {
            out.push('C');
            out.push_str(&n.to_string());
            return;
        }
    }
    match t {
        Term::Var(i) => out.push_str(&i.to_string()),
        Term::Const(c) => out.push(*c),
        Term::Abs(b) => {
            out.push_str("λ.");
            write_term(out, b, sugar);
        }
        Term::App(..) => {
            let (head, args) = t.spine();
            out.push('(');
            // A head abstraction applied directly to another abstraction is
            // grouped so that the two `λ.` prefixes never sit side by side.
            let group_head = matches!(head, Term::Abs(_)) && matches!(args[0], Term::Abs(_));
            if group_head {
                out.push('(');
                write_term(out, head, sugar);
                out.push(')');
            } else {
                write_term(out, head, sugar);
            }
            for a in args {
                out.push(' ');
                write_term(out, a, sugar);
            }
            out.push(')');
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(false))
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(false))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected character {0:?}")]
    Unexpected(char),
    #[error("expected '.' after λ")]
    ExpectedDot,
    #[error("index does not fit in a machine word")]
    IndexOverflow,
    #[error("empty parentheses")]
    Empty,
    #[error("trailing input")]
    Trailing,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at character {position}: {kind}")]
pub struct ParseError {
    /// Character offset (not byte offset) into the input.
    pub position: usize,
    pub kind: ParseErrorKind,
}

pub fn parse(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    p.skip_ws();
    let t = p.term()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(ParseErrorKind::Trailing));
    }
    Ok(t)
}

impl std::str::FromStr for Term {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            position: self.pos,
            kind,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn index(&mut self) -> Result<usize, ParseError> {
        let start = self.pos;
        let mut value: usize = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(d as usize))
                .ok_or(ParseError {
                    position: start,
                    kind: ParseErrorKind::IndexOverflow,
                })?;
            self.pos += 1;
        }
        Ok(value)
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let c = self
            .peek()
            .ok_or(self.error(ParseErrorKind::UnexpectedEnd))?;
        match c {
            '0'..='9' => Ok(Term::Var(self.index()?)),
            'λ' | '\\' => {
                self.pos += 1;
                if self.peek() != Some('.') {
                    return Err(self.error(ParseErrorKind::ExpectedDot));
                }
                self.pos += 1;
                Ok(Term::abs(self.term()?))
            }
            '(' => {
                self.pos += 1;
                self.skip_ws();
                if self.peek() == Some(')') {
                    return Err(self.error(ParseErrorKind::Empty));
                }
                let mut acc = self.term()?;
                loop {
                    self.skip_ws();
                    match self.peek() {
                        Some(')') => {
                            self.pos += 1;
                            return Ok(acc);
                        }
                        Some(_) => {
                            let arg = self.term()?;
                            acc = Term::app(acc, arg);
                        }
                        None => return Err(self.error(ParseErrorKind::UnexpectedEnd)),
                    }
                }
            }
            'C' if self
                .chars
                .get(self.pos + 1)
                .is_some_and(char::is_ascii_digit) =>
            {
                self.pos += 1;
                let start = self.pos;
                let n = self.index()?;
                let n = u64::try_from(n).map_err(|_| ParseError {
                    position: start,
                    kind: ParseErrorKind::IndexOverflow,
                })?;
                Ok(crate::numerals::church(n))
            }
            c if is_terminal_symbol(c) => {
                self.pos += 1;
                Ok(Term::Const(c))
            }
            c => Err(self.error(ParseErrorKind::Unexpected(c))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerals::church;

    fn v(i: usize) -> Term {
        Term::var(i)
    }

    #[test]
    fn size_rules() {
        assert_eq!(v(0).size(), 1);
        assert_eq!(Term::constant('a').size(), 1);
        assert_eq!(Term::abs(v(0)).size(), 2);
        assert_eq!(Term::app(v(0), v(1)).size(), 3);
        assert_eq!(church(500).size(), 1003);
    }

    #[test]
    fn parses_numeral_and_identity_application() {
        let two = parse("λ.λ.(1 (1 0))").unwrap();
        assert_eq!(
            two,
            Term::abs(Term::abs(Term::app(v(1), Term::app(v(1), v(0)))))
        );
        assert_eq!(two, church(2));
        assert_eq!(
            parse("(λ.0 a)").unwrap(),
            Term::app(Term::abs(v(0)), Term::constant('a'))
        );
    }

    #[test]
    fn rejects_ill_formed() {
        let e = parse("λ.)").unwrap_err();
        assert_eq!(e.position, 2);
        assert_eq!(e.kind, ParseErrorKind::Unexpected(')'));
        assert_eq!(parse("λ0").unwrap_err().kind, ParseErrorKind::ExpectedDot);
        assert_eq!(
            parse("(0 1").unwrap_err().kind,
            ParseErrorKind::UnexpectedEnd
        );
        assert_eq!(parse("()").unwrap_err().kind, ParseErrorKind::Empty);
        assert_eq!(parse("0 1").unwrap_err().kind, ParseErrorKind::Trailing);
        assert_eq!(
            parse("99999999999999999999999").unwrap_err().kind,
            ParseErrorKind::IndexOverflow
        );
    }

    #[test]
    fn prints_flattened_spines() {
        assert_eq!(church(2).to_string(), "λ.λ.(1 (1 0))");
        let t = Term::abs(Term::apps(v(0), [v(0), v(0)]));
        assert_eq!(t.to_string(), "λ.(0 0 0)");
        assert_eq!(
            Term::app(Term::abs(v(0)), Term::constant('a')).to_string(),
            "(λ.0 a)"
        );
    }

    #[test]
    fn head_abstraction_applied_to_abstraction_is_grouped() {
        let t = Term::app(Term::abs(v(0)), church(1));
        assert_eq!(t.to_string(), "((λ.0) λ.λ.(1 0))");
        assert_eq!(parse(&t.to_string()).unwrap(), t);
        assert_eq!(t.to_text(true), "((λ.0) C1)");
    }

    #[test]
    fn sugar_round_trips() {
        let t = Term::apps(crate::numerals::add_comb(), [church(2), church(10)]);
        let s = t.to_text(true);
        assert_eq!(s, "((λ.λ.λ.λ.(3 1 (2 1 0))) C2 C10)");
        assert_eq!(parse(&s).unwrap(), t);
        assert_eq!(parse("C0").unwrap(), church(0));
    }

    #[test]
    fn capital_c_without_digits_is_a_constant() {
        assert_eq!(
            parse("(C a)").unwrap(),
            Term::app(Term::Const('C'), Term::Const('a'))
        );
    }

    #[test]
    fn closedness() {
        assert!(church(3).is_closed());
        assert!(!v(0).is_closed());
        assert!(!Term::abs(v(1)).is_closed());
        assert!(Term::constant('a').is_closed());
    }

    #[test]
    fn deep_terms_drop_without_overflow() {
        let t = church(200_000);
        assert_eq!(t.size(), 400_003);
        drop(t);
    }
}
