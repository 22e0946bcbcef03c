//! Translation of an RTP decomposition into one folded function part applied
//! to C(φ).
//!
//! The output has the shape `(λp.λf.λx.BODY) C(φ)`. Inside BODY every literal
//! φ is the variable `p`, so the term only ever mentions one numeral.
//!
//! Sub-expressions translate in two modes:
//!
//! * numeral mode (`Num`, `Exp`): a term denoting a Church numeral. A literal
//!   is `p`; `Exp(b, e)` is `(e' b')`, which makes a tower of height `i` the
//!   spine `p p … p`.
//! * function mode (`Add`, `Mul`): a term denoting `f^k` for the current `f`.
//!   `Add(l, r)` binds a fresh `y` and is `λy. L (R y)`; `Mul(l, r)` is
//!   `l' (R f)`, where a compound right side is first closed into a numeral
//!   `λf'.λx'. (r'' x')`.
//!
//! The top level threads `x` through the sum and ends with the remainder
//! `f (f … (f x))`.
//!
//! Variable indices are computed from the actual binder depth rather than
//! from a closed-form formula, so arbitrarily deep Add/Mul nesting stays
//! correct.

use thiserror::Error;

use crate::numerals::church;
use crate::rtp::{count_ops, Expr, RtpDecomposition};
use crate::term::Term;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("literal {found} differs from the base {phi}")]
    LeafMismatch { phi: u64, found: u64 },
    #[error("{0} cannot appear where a numeral is expected")]
    NotNumeral(String),
    #[error("decomposition does not add up: eval(expr) + r != n")]
    Inconsistent,
}

/// `(function_part argument_part)` with `argument_part = C(φ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationResult {
    pub term: Term,
    pub phi: u64,
    pub r: u64,
    pub function_part: Term,
    pub argument_part: Term,
}

impl TranslationResult {
    pub fn size(&self) -> usize {
        self.term.size()
    }

    pub fn function_part_size(&self) -> usize {
        self.function_part.size()
    }
}

/// Binder bookkeeping. Levels count from the outermost binder (`p` is 0).
#[derive(Clone, Copy)]
struct Ctx {
    depth: usize,
    f_level: usize,
}

const P_LEVEL: usize = 0;

impl Ctx {
    fn top() -> Ctx {
        Ctx {
            depth: 3,
            f_level: 1,
        }
    }

    fn var(self, level: usize) -> Term {
        Term::var(self.depth - 1 - level)
    }

    fn p(self) -> Term {
        self.var(P_LEVEL)
    }

    fn f(self) -> Term {
        self.var(self.f_level)
    }

    /// Under one more binder; `f` unchanged.
    fn bind(self) -> Ctx {
        Ctx {
            depth: self.depth + 1,
            ..self
        }
    }

    /// Under `λf'.λx'`, with `f'` as the new `f`.
    fn bind_numeral(self) -> Ctx {
        Ctx {
            depth: self.depth + 2,
            f_level: self.depth,
        }
    }
}

fn is_compound(e: &Expr) -> bool {
    matches!(e, Expr::Add(..) | Expr::Mul(..))
}

fn numeral(ctx: Ctx, e: &Expr) -> Result<Term, TranslateError> {
    match e {
        Expr::Num(_) => Ok(ctx.p()),
        Expr::Exp(base, pow) => Ok(Term::app(numeral(ctx, pow)?, numeral(ctx, base)?)),
        other => Err(TranslateError::NotNumeral(format!("{other}"))),
    }
}

/// `L` such that `L z` is `f^l z`.
fn add_left(ctx: Ctx, l: &Expr) -> Result<Term, TranslateError> {
    if is_compound(l) {
        function(ctx, l)
    } else {
        Ok(Term::app(numeral(ctx, l)?, ctx.f()))
    }
}

fn function(ctx: Ctx, e: &Expr) -> Result<Term, TranslateError> {
    match e {
        Expr::Add(l, r) => {
            let inner = ctx.bind();
            let y = Term::var(0);
            let left = add_left(inner, l)?;
            let right = if is_compound(r) {
                Term::app(function(inner, r)?, y)
            } else {
                Term::apps(numeral(inner, r)?, [inner.f(), y])
            };
            Ok(Term::abs(Term::app(left, right)))
        }
        Expr::Mul(l, r) => {
            let right = if is_compound(r) {
                let inner = ctx.bind_numeral();
                Term::app(function(inner, r)?, Term::var(0)).abs_n(2)
            } else {
                numeral(ctx, r)?
            };
            Ok(Term::app(numeral(ctx, l)?, Term::app(right, ctx.f())))
        }
        other => Err(TranslateError::NotNumeral(format!("{other}"))),
    }
}

fn remainder(ctx: Ctx, r: u64) -> Term {
    let x = ctx.var(2);
    (0..r).fold(x, |acc, _| Term::app(ctx.f(), acc))
}

fn top_level(ctx: Ctx, e: &Expr, r: u64) -> Result<Term, TranslateError> {
    match e {
        Expr::Add(l, rest) => Ok(Term::app(add_left(ctx, l)?, top_level(ctx, rest, r)?)),
        Expr::Mul(..) => Ok(Term::app(function(ctx, e)?, remainder(ctx, r))),
        _ => Ok(Term::apps(numeral(ctx, e)?, [ctx.f(), remainder(ctx, r)])),
    }
}

fn check_leaves(d: &RtpDecomposition) -> Result<(), TranslateError> {
    match d.expr.leaves().into_iter().find(|&v| v != d.phi) {
        Some(found) => Err(TranslateError::LeafMismatch { phi: d.phi, found }),
        None => Ok(()),
    }
}

/// Translates `T_φ[n̄] + r` into `(λpfx.M) C(φ)`.
pub fn translate(d: &RtpDecomposition) -> Result<TranslationResult, TranslateError> {
    check_leaves(d)?;
    match crate::rtp::eval(&d.expr) {
        Ok(v)
            if d.n
                .checked_sub(d.r)
                .is_some_and(|m| v == num_bigint::BigUint::from(m)) => {}
        _ => return Err(TranslateError::Inconsistent),
    }
    let body = top_level(Ctx::top(), &d.expr, d.r)?;
    let function_part = body.abs_n(3);
    let argument_part = church(d.phi);
    Ok(TranslationResult {
        term: Term::app(function_part.clone(), argument_part.clone()),
        phi: d.phi,
        r: d.r,
        function_part,
        argument_part,
    })
}

fn numeral_size(e: &Expr) -> usize {
    match e {
        Expr::Num(_) => 1,
        Expr::Exp(b, p) => numeral_size(b) + numeral_size(p) + 1,
        // not reachable for RTP output; mirrors the shape error of `numeral`
        Expr::Add(..) | Expr::Mul(..) => usize::MAX / 4,
    }
}

fn add_left_size(l: &Expr) -> usize {
    if is_compound(l) {
        function_size(l)
    } else {
        numeral_size(l) + 2
    }
}

fn function_size(e: &Expr) -> usize {
    match e {
        Expr::Add(l, r) => {
            let right = if is_compound(r) {
                function_size(r) + 2
            } else {
                numeral_size(r) + 4
            };
            2 + add_left_size(l) + right
        }
        Expr::Mul(l, r) => {
            let right = if is_compound(r) {
                function_size(r) + 4
            } else {
                numeral_size(r)
            };
            numeral_size(l) + right + 3
        }
        Expr::Num(_) | Expr::Exp(..) => usize::MAX / 4,
    }
}

fn top_level_size(e: &Expr, r: u64) -> usize {
    let rem = 2 * r as usize + 1;
    match e {
        Expr::Add(l, rest) => add_left_size(l) + top_level_size(rest, r) + 1,
        Expr::Mul(..) => function_size(e) + rem + 1,
        _ => numeral_size(e) + rem + 3,
    }
}

/// Size of the function part `translate` would build, computed from the
/// expression shape alone.
pub fn function_part_size_of(expr: &Expr, r: u64) -> usize {
    top_level_size(expr, r) + 3
}

/// Size of the full translated term, computed from the expression shape.
pub fn translated_size(d: &RtpDecomposition) -> usize {
    function_part_size_of(&d.expr, d.r) + 2 * d.phi as usize + 3 + 1
}

/// `10·N_a + 5·N_m + 2·N_e + 2φ + 2r + 12`.
pub fn size_bound(d: &RtpDecomposition) -> u64 {
    let ops = count_ops(&d.expr);
    10 * ops.adds as u64 + 5 * ops.muls as u64 + 2 * ops.exps as u64 + 2 * d.phi + 2 * d.r + 12
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduce::church_value;
    use crate::rtp::rtp;

    const REFERENCE_200: &str =
        "((λ.λ.λ.(2 2 2 (λ.λ.(λ.(5 5 (5 2) (5 5 2 0)) 0) 1) (2 2 (2 1) 0))) λ.λ.(1 (1 0)))";

    #[test]
    fn reference_term_for_200() {
        let t = translate(&rtp(200, 2).unwrap()).unwrap();
        assert_eq!(t.term.to_string(), REFERENCE_200);
        assert_eq!(t.size(), 49);
        assert_eq!(t.function_part_size(), 41);
        assert_eq!(church_value(&t.term, 1000), Ok(200));
    }

    #[test]
    fn remainder_is_appended_for_201() {
        let t = translate(&rtp(201, 2).unwrap()).unwrap();
        assert_eq!(
            t.term.to_string(),
            REFERENCE_200.replace("(2 2 (2 1) 0)", "(2 2 (2 1) (1 0))")
        );
        assert_eq!(t.size(), 51);
        assert_eq!(church_value(&t.term, 1000), Ok(201));
    }

    #[test]
    fn small_translations() {
        let t = translate(&rtp(3, 2).unwrap()).unwrap();
        assert_eq!(t.term.to_string(), "((λ.λ.λ.(2 1 (1 0))) λ.λ.(1 (1 0)))");
        assert_eq!(church_value(&t.term, 100), Ok(3));
        let t = translate(&rtp(9, 3).unwrap()).unwrap();
        assert_eq!(t.term.to_text(true), "((λ.λ.λ.(2 (2 1) 0)) C3)");
        assert_eq!(t.size(), 20);
    }

    #[test]
    fn shape_invariants() {
        let t = translate(&rtp(1000, 3).unwrap()).unwrap();
        assert_eq!(
            t.size(),
            t.function_part_size() + t.argument_part.size() + 1
        );
        assert_eq!(t.argument_part, church(3));
        let Term::App(f, a) = &t.term else {
            panic!("not an application")
        };
        assert_eq!(**f, t.function_part);
        assert_eq!(**a, t.argument_part);
        // three binders, then the body
        let mut body = &t.function_part;
        for _ in 0..3 {
            let Term::Abs(b) = body else {
                panic!("missing binder")
            };
            body = b;
        }
        assert!(!matches!(body, Term::Abs(_)));
    }

    #[test]
    fn bound_for_single_literal_is_attained() {
        // Num(φ) with r = 0 gives exactly 2φ + 12, equal to the bound
        for phi in 2..20 {
            let d = rtp(phi, phi).unwrap();
            let size = translate(&d).unwrap().size() as u64;
            assert_eq!(size, 2 * phi + 12);
            assert_eq!(size_bound(&d), 2 * phi + 12);
        }
    }

    #[test]
    fn half_split_size() {
        // n = φ + φ + r with φ = ⌊n/2⌋: 2φ + 16 + 2r
        for n in 9..200u64 {
            let phi = n / 2;
            let d = rtp(n, phi).unwrap();
            assert_eq!(d.expr, Expr::add(Expr::Num(phi), Expr::Num(phi)));
            let size = translate(&d).unwrap().size() as u64;
            assert_eq!(size, 2 * phi + 16 + 2 * d.r, "n = {n}");
        }
    }

    #[test]
    fn rejects_foreign_shapes() {
        let d = RtpDecomposition {
            n: 5,
            phi: 2,
            r: 0,
            expr: Expr::add(Expr::Num(2), Expr::Num(3)),
        };
        assert_eq!(
            translate(&d),
            Err(TranslateError::LeafMismatch { phi: 2, found: 3 })
        );
        let d = RtpDecomposition {
            n: 5,
            phi: 2,
            r: 0,
            expr: Expr::Num(2),
        };
        assert_eq!(translate(&d), Err(TranslateError::Inconsistent));
        let d = RtpDecomposition {
            n: 16,
            phi: 2,
            r: 0,
            expr: Expr::exp(Expr::add(Expr::Num(2), Expr::Num(2)), Expr::Num(2)),
        };
        assert!(matches!(translate(&d), Err(TranslateError::NotNumeral(_))));
    }

    #[test]
    fn analytic_size_matches_built_term() {
        for n in 2..400u64 {
            for phi in 2..=n.min(40) {
                let d = rtp(n, phi).unwrap();
                let t = translate(&d).unwrap();
                assert_eq!(translated_size(&d), t.size(), "n = {n}, φ = {phi}");
                assert_eq!(function_part_size_of(&d.expr, d.r), t.function_part_size());
            }
        }
    }
}
