//! β-reduction. Two independent routes decide whether a term denotes a
//! numeral: syntactic normal-order normalization with a step budget, and a
//! call-by-value environment machine that runs a term against a native
//! successor and zero.

use std::rc::Rc;
use std::sync::Arc;

use thiserror::Error;

use crate::term::Term;

pub const DEFAULT_FUEL: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("shift would make index {index} negative")]
    NegativeIndex { index: usize },
    #[error("fuel must allow at least one step")]
    ZeroFuel,
}

/// β-contraction budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fuel(u64);

impl Fuel {
    pub fn new(max_steps: u64) -> Result<Fuel, ReduceError> {
        if max_steps == 0 {
            Err(ReduceError::ZeroFuel)
        } else {
            Ok(Fuel(max_steps))
        }
    }

    pub fn max_steps(self) -> u64 {
        self.0
    }
}

impl Default for Fuel {
    fn default() -> Self {
        Fuel(DEFAULT_FUEL)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalizeOutcome {
    Normal { term: Term, steps: u64 },
    Exhausted { partial: Term, steps: u64 },
}

impl NormalizeOutcome {
    pub fn steps(&self) -> u64 {
        match self {
            NormalizeOutcome::Normal { steps, .. } | NormalizeOutcome::Exhausted { steps, .. } => {
                *steps
            }
        }
    }

    pub fn normal_form(&self) -> Option<&Term> {
        match self {
            NormalizeOutcome::Normal { term, .. } => Some(term),
            NormalizeOutcome::Exhausted { .. } => None,
        }
    }
}

/// Adds `delta` to every free variable at or above `cutoff`.
pub fn shift(t: &Term, delta: isize, cutoff: usize) -> Result<Term, ReduceError> {
    fn go(t: &Arc<Term>, delta: isize, cutoff: usize) -> Result<Arc<Term>, ReduceError> {
        Ok(match &**t {
            Term::Var(i) if *i >= cutoff => {
                let shifted = *i as isize + delta;
                if shifted < 0 {
                    return Err(ReduceError::NegativeIndex { index: *i });
                }
                Arc::new(Term::Var(shifted as usize))
            }
            Term::Var(_) | Term::Const(_) => t.clone(),
            Term::Abs(b) => Arc::new(Term::Abs(go(b, delta, cutoff + 1)?)),
            Term::App(f, a) => Arc::new(Term::App(go(f, delta, cutoff)?, go(a, delta, cutoff)?)),
        })
    }
    if delta == 0 {
        return Ok(t.clone());
    }
    Ok((*go(&Arc::new(t.clone()), delta, cutoff)?).clone())
}

/// Largest free index + 1, or 0 for a closed term.
fn free_bound(t: &Term) -> usize {
    match t {
        Term::Var(i) => i + 1,
        Term::Const(_) => 0,
        Term::Abs(b) => free_bound(b).saturating_sub(1),
        Term::App(f, a) => free_bound(f).max(free_bound(a)),
    }
}

fn shift_up(t: &Arc<Term>, delta: usize, cutoff: usize) -> Arc<Term> {
    match &**t {
        Term::Var(i) if *i >= cutoff => Arc::new(Term::Var(i + delta)),
        Term::Var(_) | Term::Const(_) => t.clone(),
        Term::Abs(b) => Arc::new(Term::Abs(shift_up(b, delta, cutoff + 1))),
        Term::App(f, a) => Arc::new(Term::App(
            shift_up(f, delta, cutoff),
            shift_up(a, delta, cutoff),
        )),
    }
}

struct Substitution<'a> {
    arg: &'a Arc<Term>,
    arg_closed: bool,
}

impl Substitution<'_> {
    fn arg_at(&self, depth: usize) -> Arc<Term> {
        if self.arg_closed || depth == 0 {
            self.arg.clone()
        } else {
            shift_up(self.arg, depth, 0)
        }
    }

    fn go(&self, t: &Arc<Term>, depth: usize) -> Arc<Term> {
        match &**t {
            Term::Var(k) if *k == depth => self.arg_at(depth),
            Term::Var(k) if *k > depth => Arc::new(Term::Var(k - 1)),
            Term::Var(_) | Term::Const(_) => t.clone(),
            Term::Abs(b) => Arc::new(Term::Abs(self.go(b, depth + 1))),
            Term::App(f, a) => Arc::new(Term::App(self.go(f, depth), self.go(a, depth))),
        }
    }
}

fn subst_arc(body: &Arc<Term>, arg: &Arc<Term>) -> Arc<Term> {
    let s = Substitution {
        arg,
        arg_closed: free_bound(arg) == 0,
    };
    s.go(body, 0)
}

/// `body[0 := arg]` with the remaining free indices of `body` lowered by one.
pub fn substitute(body: &Term, arg: &Term) -> Term {
    let body = Arc::new(body.clone());
    let arg = Arc::new(arg.clone());
    (*subst_arc(&body, &arg)).clone()
}

struct Normalizer {
    steps: u64,
    max_steps: u64,
    exhausted: bool,
}

impl Normalizer {
    /// Head-reduces to weak head normal form; returns head and arguments.
    fn whnf(&mut self, t: Arc<Term>) -> (Arc<Term>, Vec<Arc<Term>>) {
        // args stored in reverse so the next argument is at the end
        let mut args: Vec<Arc<Term>> = Vec::new();
        let mut head = t;
        loop {
            match &*head {
                Term::App(f, a) => {
                    args.push(a.clone());
                    let f = f.clone();
                    head = f;
                }
                Term::Abs(body) if !args.is_empty() => {
                    if self.steps >= self.max_steps {
                        self.exhausted = true;
                        break;
                    }
                    let arg = args.pop().expect("non-empty");
                    let next = subst_arc(body, &arg);
                    self.steps += 1;
                    head = next;
                }
                _ => break,
            }
        }
        args.reverse();
        (head, args)
    }

    fn nf(&mut self, t: Arc<Term>) -> Arc<Term> {
        if self.exhausted {
            return t;
        }
        let (head, args) = self.whnf(t);
        let head = match &*head {
            Term::Abs(body) if args.is_empty() => Arc::new(Term::Abs(self.nf(body.clone()))),
            _ => head,
        };
        args.into_iter()
            .fold(head, |acc, a| Arc::new(Term::App(acc, self.nf(a))))
    }
}

/// Leftmost-outermost reduction to β-normal form.
pub fn normalize(t: &Term, fuel: Fuel) -> NormalizeOutcome {
    let mut n = Normalizer {
        steps: 0,
        max_steps: fuel.max_steps(),
        exhausted: false,
    };
    let result = (*n.nf(Arc::new(t.clone()))).clone();
    if n.exhausted {
        NormalizeOutcome::Exhausted {
            partial: result,
            steps: n.steps,
        }
    } else {
        NormalizeOutcome::Normal {
            term: result,
            steps: n.steps,
        }
    }
}

/// True if `t` contains no β-redex.
pub fn is_normal(t: &Term) -> bool {
    let mut stack = vec![t];
    while let Some(t) = stack.pop() {
        match t {
            Term::App(f, a) => {
                if matches!(**f, Term::Abs(_)) {
                    return false;
                }
                stack.push(f);
                stack.push(a);
            }
            Term::Abs(b) => stack.push(b),
            Term::Var(_) | Term::Const(_) => {}
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChurchValueError {
    #[error("term is not a Church numeral")]
    NotANumeral,
    #[error("more than {limit} successor applications")]
    LimitExceeded { limit: u64 },
    #[error("evaluation budget of {steps} steps exhausted")]
    BudgetExhausted { steps: u64 },
    #[error("term is not closed")]
    Open,
}

#[derive(Clone)]
enum Value {
    Closure(Arc<Term>, Env),
    Succ,
    Nat(u64),
    Opaque,
}

type Env = Option<Rc<EnvNode>>;

struct EnvNode {
    value: Value,
    next: Env,
}

fn lookup(env: &Env, mut index: usize) -> Option<Value> {
    let mut cur = env.as_ref();
    while let Some(node) = cur {
        if index == 0 {
            return Some(node.value.clone());
        }
        index -= 1;
        cur = node.next.as_ref();
    }
    None
}

enum Frame {
    EvalArg(Arc<Term>, Env),
    Call(Value),
    ApplyTo(Value),
    /// `t f` must be an abstraction; rejects `λf.f`, which is only
    /// η-equivalent to C(1).
    ExpectClosure,
}

/// Decodes the numeral denoted by `t` by applying it to a native successor
/// and zero under call-by-value. Fails if more than `limit` successor
/// applications occur.
pub fn church_value(t: &Term, limit: u64) -> Result<u64, ChurchValueError> {
    if !t.is_closed() {
        return Err(ChurchValueError::Open);
    }
    let budget = limit.saturating_mul(64).saturating_add(1_000_000);
    let mut steps = 0u64;
    let mut succs = 0u64;
    let mut stack = vec![
        Frame::ApplyTo(Value::Nat(0)),
        Frame::ExpectClosure,
        Frame::ApplyTo(Value::Succ),
    ];

    enum State {
        Eval(Arc<Term>, Env),
        Return(Value),
    }
    let mut state = State::Eval(Arc::new(t.clone()), None);
    loop {
        state = match state {
            State::Eval(term, env) => match &*term {
                Term::Var(i) => State::Return(lookup(&env, *i).ok_or(ChurchValueError::Open)?),
                Term::Const(_) => State::Return(Value::Opaque),
                Term::Abs(b) => State::Return(Value::Closure(b.clone(), env)),
                Term::App(f, a) => {
                    stack.push(Frame::EvalArg(a.clone(), env.clone()));
                    State::Eval(f.clone(), env)
                }
            },
            State::Return(v) => match stack.pop() {
                None => {
                    return match v {
                        Value::Nat(n) => Ok(n),
                        _ => Err(ChurchValueError::NotANumeral),
                    }
                }
                Some(Frame::EvalArg(a, env)) => {
                    stack.push(Frame::Call(v));
                    State::Eval(a, env)
                }
                Some(Frame::Call(fun)) => apply(fun, v, &mut succs, limit)?,
                Some(Frame::ApplyTo(arg)) => apply(v, arg, &mut succs, limit)?,
                Some(Frame::ExpectClosure) => match v {
                    Value::Closure(..) => State::Return(v),
                    _ => return Err(ChurchValueError::NotANumeral),
                },
            },
        };
        steps += 1;
        if steps > budget {
            return Err(ChurchValueError::BudgetExhausted { steps: budget });
        }
    }

    fn apply(
        fun: Value,
        arg: Value,
        succs: &mut u64,
        limit: u64,
    ) -> Result<State, ChurchValueError> {
        match (fun, arg) {
            (Value::Closure(body, env), arg) => Ok(State::Eval(
                body,
                Some(Rc::new(EnvNode {
                    value: arg,
                    next: env,
                })),
            )),
            (Value::Succ, Value::Nat(k)) => {
                *succs += 1;
                if *succs > limit {
                    return Err(ChurchValueError::LimitExceeded { limit });
                }
                Ok(State::Return(Value::Nat(k + 1)))
            }
            _ => Err(ChurchValueError::NotANumeral),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerals::church;
    use crate::term::parse;

    fn v(i: usize) -> Term {
        Term::var(i)
    }

    #[test]
    fn shift_examples() {
        assert_eq!(shift(&v(0), 1, 0).unwrap(), v(1));
        assert_eq!(shift(&Term::abs(v(0)), 1, 0).unwrap(), Term::abs(v(0)));
        assert_eq!(shift(&Term::abs(v(1)), 2, 0).unwrap(), Term::abs(v(3)));
        assert_eq!(
            shift(&v(0), -1, 0).unwrap_err(),
            ReduceError::NegativeIndex { index: 0 }
        );
        assert_eq!(shift(&v(0), -1, 1).unwrap(), v(0));
    }

    #[test]
    fn substitute_examples() {
        let a = Term::constant('a');
        assert_eq!(substitute(&v(0), &a), a);
        assert_eq!(substitute(&v(1), &a), v(0));
        assert_eq!(substitute(&Term::abs(v(1)), &a), Term::abs(a.clone()));
        // open argument is shifted under the binder
        assert_eq!(substitute(&Term::abs(v(1)), &v(0)), Term::abs(v(1)));
    }

    #[test]
    fn normalize_examples() {
        let out = normalize(&church(5), Fuel::default());
        assert_eq!(
            out,
            NormalizeOutcome::Normal {
                term: church(5),
                steps: 0
            }
        );
        let id_a = Term::app(Term::abs(v(0)), Term::constant('a'));
        let out = normalize(&id_a, Fuel::default());
        assert_eq!(
            out,
            NormalizeOutcome::Normal {
                term: Term::constant('a'),
                steps: 1
            }
        );
    }

    #[test]
    fn exhaustion_is_reported() {
        let omega = parse("(λ.(0 0) λ.(0 0))").unwrap();
        let out = normalize(&omega, Fuel::new(50).unwrap());
        match out {
            NormalizeOutcome::Exhausted { partial, steps } => {
                assert_eq!(steps, 50);
                assert_eq!(partial, omega);
            }
            other => panic!("expected exhaustion, got {other:?}"),
        }
        assert_eq!(Fuel::new(0), Err(ReduceError::ZeroFuel));
    }

    #[test]
    fn normal_order_skips_divergent_argument() {
        // (λ.λ.0) Ω  →  λ.0
        let t = parse("(λ.λ.0 (λ.(0 0) λ.(0 0)))").unwrap();
        let out = normalize(&t, Fuel::new(100).unwrap());
        assert_eq!(out.normal_form(), Some(&Term::abs(v(0))));
        assert_eq!(out.steps(), 1);
    }

    #[test]
    fn church_value_examples() {
        assert_eq!(church_value(&church(0), 10), Ok(0));
        assert_eq!(church_value(&church(201), 1000), Ok(201));
        assert_eq!(
            church_value(&church(201), 200),
            Err(ChurchValueError::LimitExceeded { limit: 200 })
        );
        assert_eq!(
            church_value(&Term::abs(v(0)), 10),
            Err(ChurchValueError::NotANumeral)
        );
        assert_eq!(church_value(&v(0), 10), Err(ChurchValueError::Open));
        assert_eq!(
            church_value(&Term::constant('a'), 10),
            Err(ChurchValueError::NotANumeral)
        );
    }

    #[test]
    fn church_value_of_large_power_tower() {
        // C2 C2 C2 C2 = 2^16 as a numeral built by exponentiation
        let t = parse("λ.λ.(C2 C2 C2 C2 1 0)").unwrap();
        assert_eq!(church_value(&t, 1 << 20), Ok(65536));
    }

    #[test]
    fn is_normal_detects_redexes() {
        assert!(is_normal(&church(3)));
        assert!(!is_normal(&parse("(λ.0 a)").unwrap()));
    }
}
