//! Church numerals, the arithmetic combinators, and the binary baseline.

use std::sync::{Arc, OnceLock, RwLock};

use crate::term::{parse, Term};

/// Bodies `f^k x` shared between numerals, up to this `k`.
const SHARED_SPINE: usize = 1 << 16;

fn spine() -> &'static RwLock<Vec<Arc<Term>>> {
    static SPINE: OnceLock<RwLock<Vec<Arc<Term>>>> = OnceLock::new();
    SPINE.get_or_init(|| RwLock::new(vec![Arc::new(Term::var(0))]))
}

fn body(n: usize) -> Arc<Term> {
    if let Some(b) = spine().read().expect("spine lock").get(n) {
        return b.clone();
    }
    let mut cache = spine().write().expect("spine lock");
    let f = Arc::new(Term::var(1));
    while cache.len() <= n.min(SHARED_SPINE) {
        let next = Arc::new(Term::App(f.clone(), cache[cache.len() - 1].clone()));
        cache.push(next);
    }
    let mut b = cache[cache.len() - 1].clone();
    drop(cache);
    for _ in SHARED_SPINE..n {
        b = Arc::new(Term::App(f.clone(), b));
    }
    b
}

/// `λ.λ.(1 (1 … (1 0)))` with `n` applications; size `2n + 3`.
pub fn church(n: u64) -> Term {
    let n = usize::try_from(n).expect("numeral fits in memory");
    Term::Abs(Arc::new(Term::Abs(body(n))))
}

/// A numeral value paired with its unary term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChurchNumeral {
    pub value: u64,
    pub term: Term,
}

impl ChurchNumeral {
    pub fn new(value: u64) -> ChurchNumeral {
        ChurchNumeral {
            value,
            term: church(value),
        }
    }

    pub fn size(&self) -> usize {
        self.term.size()
    }
}

fn golden(cell: &'static OnceLock<Term>, text: &str) -> Term {
    cell.get_or_init(|| parse(text).expect("golden combinator parses"))
        .clone()
}

pub const ADD_TEXT: &str = "λ.λ.λ.λ.(3 1 (2 1 0))";
pub const MUL_TEXT: &str = "λ.λ.λ.λ.(3 (2 1) 0)";
pub const EXP_TEXT: &str = "λ.λ.λ.λ.(2 3 1 0)";
pub const SUCC_TEXT: &str = "λ.λ.λ.(1 (2 1 0))";

/// λpqfx. p f (q f x)
pub fn add_comb() -> Term {
    static CELL: OnceLock<Term> = OnceLock::new();
    golden(&CELL, ADD_TEXT)
}

/// λpqfx. p (q f) x
pub fn mul_comb() -> Term {
    static CELL: OnceLock<Term> = OnceLock::new();
    golden(&CELL, MUL_TEXT)
}

/// λpqfx. q p f x
pub fn exp_comb() -> Term {
    static CELL: OnceLock<Term> = OnceLock::new();
    golden(&CELL, EXP_TEXT)
}

/// λpfx. f (p f x)
pub fn succ_comb() -> Term {
    static CELL: OnceLock<Term> = OnceLock::new();
    golden(&CELL, SUCC_TEXT)
}

/// λpfx. p p … p f x with `copies` occurrences of `p`; applied to C(φ) it
/// yields the tetration of φ of height `copies`.
///
/// Panics if `copies` is zero.
pub fn tet_comb(copies: usize) -> Term {
    assert!(copies >= 1, "tetration combinator needs at least one copy");
    let spine = std::iter::repeat_n(Term::var(2), copies - 1).chain([Term::var(1), Term::var(0)]);
    Term::apps(Term::var(2), spine).abs_n(3)
}

/// Binary baseline: a single abstraction `λpfx.M` applied to C(2).
///
/// Reading the digits of `n` most significant first, the iterated function
/// starts as `f`; each further digit doubles it with `p g` (p = C(2)) and a
/// 1 digit then composes one more `f`, written `λy. f (p g y)`. The body is
/// the final function applied to `x`. `n <= 1` returns the plain numeral.
pub fn binary_church(n: u64) -> Term {
    if n <= 1 {
        return church(n);
    }
    // g always lives directly under λp.λf.λx: p = 2, f = 1.
    let top = 63 - n.leading_zeros();
    let mut g = Term::var(1);
    for bit in (0..top).rev() {
        if (n >> bit) & 1 == 1 {
            // λy. f (p g y)
            let g_up = crate::reduce::shift(&g, 1, 0).expect("upward shift");
            let doubled = Term::apps(Term::var(3), [g_up, Term::var(0)]);
            g = Term::abs(Term::app(Term::var(2), doubled));
        } else {
            g = Term::app(Term::var(2), g);
        }
    }
    let body = Term::app(g, Term::var(0));
    Term::app(body.abs_n(3), church(2))
}

/// Size of [`binary_church`] without building the term.
pub fn binary_church_size(n: u64) -> usize {
    if n <= 1 {
        return 2 * n as usize + 3;
    }
    let top = (63 - n.leading_zeros()) as usize;
    let ones = n.count_ones() as usize - 1;
    let zeros = top - ones;
    // g starts at 1; a 0 digit adds 2, a 1 digit adds 7; then body, binders,
    // argument C(2) and the outer application
    1 + 2 * zeros + 7 * ones + 2 + 3 + 7 + 1
}
