//! Tetration, super-logarithm, numerical expressions and recursive
//! tetrational partitioning (RTP).
//!
//! RTP writes `n̄ = n − (n mod φ)` as a sum of tetration towers of φ:
//!
//! ```text
//! n̄ = ᵏφ·p_k + … + ¹φ·p_1,        0 ≤ p_i < ⁽ⁱ⁺¹⁾φ
//! ```
//!
//! with the coefficients chosen greedily from the top. Each `p_i` splits into
//! `p̄_i = p_i − (p_i mod φ)`, partitioned again by the same rule, plus
//! `p_i mod φ` explicit copies of the tower. Every literal in the result is φ.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

/// Default ceiling on the bit length of exact intermediate values.
pub const DEFAULT_MAX_BITS: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RtpError {
    #[error("base {phi} is out of range for n = {n} (need 2 <= phi <= n)")]
    BaseOutOfRange { n: u64, phi: u64 },
    #[error("base must be at least 2, got {0}")]
    BaseTooSmall(u64),
    #[error("value exceeds the magnitude cap of {max_bits} bits")]
    MagnitudeCap { max_bits: u64 },
    #[error("n must be at least 1")]
    Zero,
}

/// Numerical expression over naturals. Also the functional form consumed by
/// the λ-term translator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Num(u64),
    Add(Arc<Expr>, Arc<Expr>),
    Mul(Arc<Expr>, Arc<Expr>),
    Exp(Arc<Expr>, Arc<Expr>),
}

#[allow(clippy::should_implement_trait)]
impl Expr {
    pub fn num(v: u64) -> Expr {
        Expr::Num(v)
    }

    pub fn add(l: Expr, r: Expr) -> Expr {
        Expr::Add(Arc::new(l), Arc::new(r))
    }

    pub fn mul(l: Expr, r: Expr) -> Expr {
        Expr::Mul(Arc::new(l), Arc::new(r))
    }

    pub fn exp(base: Expr, pow: Expr) -> Expr {
        Expr::Exp(Arc::new(base), Arc::new(pow))
    }

    /// Right-nested tower `φ^(φ^(…^φ))` with `height` copies of φ.
    pub fn tower(phi: u64, height: u32) -> Expr {
        assert!(height >= 1, "tower height must be positive");
        let mut e = Expr::Num(phi);
        for _ in 1..height {
            e = Expr::exp(Expr::Num(phi), e);
        }
        e
    }

    /// Right-nested sum of `parts`; `None` when empty.
    pub fn sum(parts: Vec<Expr>) -> Option<Expr> {
        parts.into_iter().rev().reduce(|acc, e| Expr::add(e, acc))
    }

    /// If this is a right-nested tower of identical literals, `(φ, height)`.
    pub fn as_tower(&self) -> Option<(u64, u32)> {
        match self {
            Expr::Num(v) => Some((*v, 1)),
            Expr::Exp(b, p) => match (&**b, p.as_tower()) {
                (Expr::Num(v), Some((w, h))) if *v == w => Some((*v, h + 1)),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn leaves(&self) -> Vec<u64> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(e) = stack.pop() {
            match e {
                Expr::Num(v) => out.push(*v),
                Expr::Add(l, r) | Expr::Mul(l, r) | Expr::Exp(l, r) => {
                    stack.push(r);
                    stack.push(l);
                }
            }
        }
        out
    }
}

/// Exact tetration `ⁱφ`: 1 for `i = 0`, else `φ^(⁽ⁱ⁻¹⁾φ)`.
pub fn tetration(phi: u64, i: u32) -> Result<BigUint, RtpError> {
    tetration_capped(phi, i, DEFAULT_MAX_BITS)
}

pub fn tetration_capped(phi: u64, i: u32, max_bits: u64) -> Result<BigUint, RtpError> {
    let base = BigUint::from(phi);
    let mut acc = BigUint::one();
    for _ in 0..i {
        acc = checked_pow(&base, &acc, max_bits)?;
    }
    Ok(acc)
}

fn checked_pow(base: &BigUint, exp: &BigUint, max_bits: u64) -> Result<BigUint, RtpError> {
    let cap = RtpError::MagnitudeCap { max_bits };
    if base.bits() <= 1 {
        // 0 or 1
        return Ok(if exp.bits() == 0 {
            BigUint::one()
        } else {
            base.clone()
        });
    }
    let e = exp.to_u64().ok_or(cap.clone())?;
    // the result has more than e * (bits(base) - 1) bits
    if e.checked_mul(base.bits() - 1).is_none_or(|b| b > max_bits) {
        return Err(cap);
    }
    let e = u32::try_from(e).map_err(|_| cap)?;
    Ok(base.pow(e))
}

/// Tower value as a machine word, `None` on overflow.
fn tower_u64(phi: u64, i: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..i {
        acc = phi.checked_pow(u32::try_from(acc).ok()?)?;
    }
    Some(acc)
}

/// Largest `k` with `ᵏφ ≤ n`.
pub fn slog(phi: u64, n: u64) -> Result<u32, RtpError> {
    if phi < 2 {
        return Err(RtpError::BaseTooSmall(phi));
    }
    if n == 0 {
        return Err(RtpError::Zero);
    }
    let mut k = 0;
    while tower_u64(phi, k + 1).is_some_and(|t| t <= n) {
        k += 1;
    }
    Ok(k)
}

pub fn eval(e: &Expr) -> Result<BigUint, RtpError> {
    eval_capped(e, DEFAULT_MAX_BITS)
}

pub fn eval_capped(e: &Expr, max_bits: u64) -> Result<BigUint, RtpError> {
    let v = match e {
        Expr::Num(v) => BigUint::from(*v),
        Expr::Add(l, r) => eval_capped(l, max_bits)? + eval_capped(r, max_bits)?,
        Expr::Mul(l, r) => eval_capped(l, max_bits)? * eval_capped(r, max_bits)?,
        Expr::Exp(b, p) => checked_pow(
            &eval_capped(b, max_bits)?,
            &eval_capped(p, max_bits)?,
            max_bits,
        )?,
    };
    if v.bits() > max_bits {
        return Err(RtpError::MagnitudeCap { max_bits });
    }
    Ok(v)
}

/// Operation counts `(additions, multiplications, exponentiations)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OpCounts {
    pub adds: usize,
    pub muls: usize,
    pub exps: usize,
}

pub fn count_ops(e: &Expr) -> OpCounts {
    let mut c = OpCounts::default();
    let mut stack = vec![e];
    while let Some(e) = stack.pop() {
        match e {
            Expr::Num(_) => {}
            Expr::Add(l, r) => {
                c.adds += 1;
                stack.extend([&**l, &**r]);
            }
            Expr::Mul(l, r) => {
                c.muls += 1;
                stack.extend([&**l, &**r]);
            }
            Expr::Exp(l, r) => {
                c.exps += 1;
                stack.extend([&**l, &**r]);
            }
        }
    }
    c
}

/// One partitioning step of a multiple of φ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coefficient {
    /// Tower height `i`.
    pub height: u32,
    /// Greedy coefficient `p_i`.
    pub p: u64,
}

/// Result of RTP for `n` with base φ: `n = eval(expr) + r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RtpDecomposition {
    pub n: u64,
    pub phi: u64,
    pub r: u64,
    pub expr: Expr,
}

impl RtpDecomposition {
    /// `n − r`.
    pub fn n_bar(&self) -> u64 {
        self.n - self.r
    }

    pub fn ops(&self) -> OpCounts {
        count_ops(&self.expr)
    }
}

/// Greedy coefficients of `m` over towers of φ, highest first. Heights with
/// a zero coefficient are omitted.
pub fn greedy_coefficients(phi: u64, m: u64) -> Vec<Coefficient> {
    let k = slog(phi, m).expect("phi >= 2 and m >= 1");
    let mut rest = m;
    let mut out = Vec::new();
    for height in (1..=k).rev() {
        let tower = tower_u64(phi, height).expect("tower <= m");
        let p = rest / tower;
        rest -= p * tower;
        assert!(
            tower_u64(phi, height + 1).is_none_or(|next| p < next),
            "coefficient bound violated"
        );
        if p > 0 {
            out.push(Coefficient { height, p });
        }
    }
    assert_eq!(rest, 0, "{m} is not a multiple of {phi}");
    out
}

/// Partition of a positive multiple `m` of φ.
fn partition(phi: u64, m: u64) -> Expr {
    debug_assert!(m >= phi && m.is_multiple_of(phi));
    if m <= phi {
        return Expr::Num(phi);
    }
    let terms = greedy_coefficients(phi, m)
        .into_iter()
        .map(|Coefficient { height, p }| {
            let copies = p % phi;
            let p_bar = p - copies;
            let mut parts = Vec::with_capacity(copies as usize + 1);
            if p_bar > 0 {
                parts.push(Expr::mul(Expr::tower(phi, height), partition(phi, p_bar)));
            }
            parts.extend((0..copies).map(|_| Expr::tower(phi, height)));
            Expr::sum(parts).expect("p > 0 yields at least one part")
        })
        .collect();
    Expr::sum(terms).expect("m > 0 yields at least one term")
}

/// Recursive tetrational partitioning of `n` with base `phi`.
pub fn rtp(n: u64, phi: u64) -> Result<RtpDecomposition, RtpError> {
    if n == 0 {
        return Err(RtpError::Zero);
    }
    if phi < 2 || phi > n {
        return Err(RtpError::BaseOutOfRange { n, phi });
    }
    let r = n % phi;
    let expr = partition(phi, n - r);
    Ok(RtpDecomposition { n, phi, r, expr })
}

// Diagnostic notation: towers of height ≥ 2 print as `φ↑↑i`.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn prec(e: &Expr) -> u8 {
            match e {
                Expr::Add(..) => 1,
                Expr::Mul(..) => 2,
                Expr::Exp(..) => 3,
                Expr::Num(_) => 4,
            }
        }
        fn child(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
            if prec(e) < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        }
        if let Some((phi, h)) = self.as_tower() {
            if h >= 2 {
                return write!(f, "{phi}↑↑{h}");
            }
        }
        match self {
            Expr::Num(v) => write!(f, "{v}"),
            Expr::Add(l, r) => {
                child(f, l, 1)?;
                f.write_str("+")?;
                child(f, r, 1)
            }
            Expr::Mul(l, r) => {
                child(f, l, 2)?;
                f.write_str("·")?;
                child(f, r, 3)
            }
            Expr::Exp(b, p) => {
                child(f, b, 4)?;
                f.write_str("^")?;
                child(f, p, 3)
            }
        }
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => write!(f, "Num({v})"),
            Expr::Add(l, r) => write!(f, "Add({l:?}, {r:?})"),
            Expr::Mul(l, r) => write!(f, "Mul({l:?}, {r:?})"),
            Expr::Exp(l, r) => write!(f, "Exp({l:?}, {r:?})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> Expr {
        Expr::Num(v)
    }

    /// ²2³·(²2²·2+²2²)+²2²·2
    pub(crate) fn expr_200() -> Expr {
        let t2 = Expr::tower(2, 2);
        let t3 = Expr::tower(2, 3);
        Expr::add(
            Expr::mul(t3, Expr::add(Expr::mul(t2.clone(), n(2)), t2.clone())),
            Expr::mul(t2, n(2)),
        )
    }

    #[test]
    fn tetration_values() {
        assert_eq!(tetration(2, 4).unwrap(), BigUint::from(65536u32));
        assert_eq!(tetration(7, 0).unwrap(), BigUint::one());
        assert_eq!(tetration(2, 3).unwrap(), BigUint::from(16u32));
        assert_eq!(tetration(3, 2).unwrap(), BigUint::from(27u32));
        assert_eq!(tetration(2, 5).unwrap().bits(), 65537);
        assert!(matches!(
            tetration(3, 4),
            Err(RtpError::MagnitudeCap { .. })
        ));
        assert_eq!(tetration(1, 9).unwrap(), BigUint::one());
    }

    #[test]
    fn slog_values() {
        assert_eq!(slog(2, 16), Ok(3));
        assert_eq!(slog(2, 200), Ok(3));
        assert_eq!(slog(2, 1), Ok(0));
        assert_eq!(slog(2, 15), Ok(2));
        assert_eq!(slog(2, u64::MAX), Ok(4));
        assert_eq!(slog(1, 5), Err(RtpError::BaseTooSmall(1)));
    }

    #[test]
    fn eval_values() {
        assert_eq!(eval(&expr_200()).unwrap(), BigUint::from(200u32));
        assert_eq!(eval(&n(7)).unwrap(), BigUint::from(7u32));
        assert_eq!(
            eval(&Expr::exp(n(2), n(10))).unwrap(),
            BigUint::from(1024u32)
        );
        assert!(eval(&Expr::tower(10, 4)).is_err());
    }

    #[test]
    fn rtp_201_base_2() {
        let d = rtp(201, 2).unwrap();
        assert_eq!(d.r, 1);
        assert_eq!(d.n_bar(), 200);
        assert_eq!(d.expr, expr_200());
        assert_eq!(d.expr.to_string(), "2↑↑3·(2↑↑2·2+2↑↑2)+2↑↑2·2");
    }

    #[test]
    fn rtp_small_examples() {
        let d = rtp(9, 3).unwrap();
        assert_eq!((d.r, &d.expr), (0, &Expr::mul(n(3), n(3))));
        let d = rtp(5, 2).unwrap();
        assert_eq!((d.r, &d.expr), (1, &Expr::exp(n(2), n(2))));
        let d = rtp(3, 2).unwrap();
        assert_eq!((d.r, &d.expr), (1, &n(2)));
        // 15 = 3·3 + 3 + 3 with the explicit copies nested to the right
        let d = rtp(15, 3).unwrap();
        assert_eq!(
            d.expr,
            Expr::add(Expr::mul(n(3), n(3)), Expr::add(n(3), n(3)))
        );
    }

    #[test]
    fn rtp_rejects_bad_bases() {
        assert_eq!(rtp(10, 1), Err(RtpError::BaseOutOfRange { n: 10, phi: 1 }));
        assert_eq!(
            rtp(10, 11),
            Err(RtpError::BaseOutOfRange { n: 10, phi: 11 })
        );
        assert_eq!(rtp(0, 2), Err(RtpError::Zero));
        assert_eq!(rtp(7, 7).unwrap().expr, n(7));
    }

    #[test]
    fn op_counts() {
        assert_eq!(count_ops(&n(3)), OpCounts::default());
        assert_eq!(
            count_ops(&Expr::exp(n(2), Expr::exp(n(2), n(2)))),
            OpCounts {
                adds: 0,
                muls: 0,
                exps: 2
            }
        );
        // counted by hand on the tree above: two sums, three products and
        // five exponentiation nodes (one tower of height 3, three of height 2)
        assert_eq!(
            count_ops(&expr_200()),
            OpCounts {
                adds: 2,
                muls: 3,
                exps: 5
            }
        );
    }

    #[test]
    fn greedy_coefficients_of_200() {
        assert_eq!(
            greedy_coefficients(2, 200),
            vec![
                Coefficient { height: 3, p: 12 },
                Coefficient { height: 2, p: 2 }
            ]
        );
    }
}
