//! Choosing the base φ that minimises the translated term, and the recursive
//! chain that compacts the remaining argument numeral C(φ*).

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use crate::numerals::church;
use crate::rtp::rtp;
use crate::term::Term;
use crate::translate::{translate, translated_size, TranslationResult};

/// The recursive chain stops once φ* is at most this.
pub const RECURSION_THRESHOLD: u64 = 8;

/// Smallest possible translated size for base φ: a three-binder function
/// part around `p f x`, plus C(φ) and the application.
fn size_floor(phi: u64) -> usize {
    8 + 2 * phi as usize + 3 + 1
}

/// Best base for `n`, or `None` when the plain numeral is smallest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinChoice {
    pub phi_star: Option<u64>,
    pub size: usize,
}

/// Searches every φ in `[2, n − 1]` with sizes computed from the
/// decomposition shape. Ties go to the smallest φ; the plain numeral loses
/// ties. Candidates whose size floor cannot beat the incumbent are skipped.
pub fn search_min(n: u64) -> MinChoice {
    assert!(n >= 1, "n must be positive");
    let mut best: Option<(u64, usize)> = None;
    for phi in 2..n {
        if let Some((_, size)) = best {
            if size_floor(phi) >= size {
                break;
            }
        }
        let d = rtp(n, phi).expect("2 <= phi < n");
        let size = translated_size(&d);
        if best.is_none_or(|(_, s)| size < s) {
            best = Some((phi, size));
        }
    }
    let plain = 2 * n as usize + 3;
    match best {
        Some((phi, size)) if size < plain => MinChoice {
            phi_star: Some(phi),
            size,
        },
        _ => MinChoice {
            phi_star: None,
            size: plain,
        },
    }
}

/// Same search without pruning; every candidate's term is built and measured.
pub fn search_min_exhaustive(n: u64) -> MinChoice {
    assert!(n >= 1, "n must be positive");
    let mut choice = MinChoice {
        phi_star: None,
        size: church(n).size(),
    };
    let mut best_rtp: Option<(u64, usize)> = None;
    for phi in 2..n {
        let size = translate(&rtp(n, phi).expect("2 <= phi < n"))
            .expect("RTP output translates")
            .size();
        if best_rtp.is_none_or(|(_, s)| size < s) {
            best_rtp = Some((phi, size));
        }
    }
    if let Some((phi, size)) = best_rtp {
        if size < choice.size {
            choice = MinChoice {
                phi_star: Some(phi),
                size,
            };
        }
    }
    choice
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Compacted {
    Plain(Term),
    Rtp(TranslationResult),
}

/// The single-stage minimum for `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinCompaction {
    pub n: u64,
    pub result: Compacted,
}

impl MinCompaction {
    pub fn phi_star(&self) -> Option<u64> {
        match &self.result {
            Compacted::Plain(_) => None,
            Compacted::Rtp(t) => Some(t.phi),
        }
    }

    pub fn term(&self) -> &Term {
        match &self.result {
            Compacted::Plain(t) => t,
            Compacted::Rtp(t) => &t.term,
        }
    }

    pub fn size(&self) -> usize {
        self.term().size()
    }

    pub fn translation(&self) -> Option<&TranslationResult> {
        match &self.result {
            Compacted::Plain(_) => None,
            Compacted::Rtp(t) => Some(t),
        }
    }
}

/// One link `(λpfx.M_i) ·` of the recursive chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stage {
    /// Value this stage produces.
    pub n: u64,
    pub phi_star: u64,
    pub function_part: Term,
    pub r: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompactionResult {
    pub n: u64,
    pub stages: Vec<Stage>,
    /// Plain numeral the chain bottoms out in.
    pub tail: u64,
    pub final_term: Term,
    pub final_size: usize,
}

/// Memoised searches, shareable across threads.
#[derive(Debug, Default)]
pub struct Compactor {
    memo: RwLock<HashMap<u64, MinChoice>>,
}

impl Compactor {
    pub fn new() -> Compactor {
        Compactor::default()
    }

    /// Process-wide instance used by the free functions.
    pub fn global() -> &'static Compactor {
        static GLOBAL: OnceLock<Compactor> = OnceLock::new();
        GLOBAL.get_or_init(Compactor::new)
    }

    pub fn choice(&self, n: u64) -> MinChoice {
        if let Some(c) = self.memo.read().expect("memo lock").get(&n) {
            return *c;
        }
        let c = search_min(n);
        self.memo.write().expect("memo lock").insert(n, c);
        c
    }

    pub fn compact_min(&self, n: u64) -> MinCompaction {
        let result = match self.choice(n).phi_star {
            None => Compacted::Plain(church(n)),
            Some(phi) => Compacted::Rtp(
                translate(&rtp(n, phi).expect("phi in range")).expect("RTP output translates"),
            ),
        };
        MinCompaction { n, result }
    }

    /// Size of the recursive result without building terms.
    pub fn recursive_size(&self, n: u64) -> usize {
        let mut total = 0;
        let mut current = n;
        loop {
            let c = self.choice(current);
            match c.phi_star {
                None => return total + c.size,
                Some(phi) => {
                    // everything except the C(φ) argument
                    total += c.size - (2 * phi as usize + 3);
                    if phi <= RECURSION_THRESHOLD || self.choice(phi).phi_star.is_none() {
                        return total + 2 * phi as usize + 3;
                    }
                    current = phi;
                }
            }
        }
    }

    pub fn compact_recursive(&self, n: u64) -> CompactionResult {
        let mut stages = Vec::new();
        let mut current = n;
        loop {
            let m = self.compact_min(current);
            let Compacted::Rtp(t) = m.result else { break };
            stages.push(Stage {
                n: current,
                phi_star: t.phi,
                function_part: t.function_part,
                r: t.r,
            });
            current = t.phi;
            // C(φ*) is replaced only when its own minimum is strictly smaller,
            // which `compact_min` returning a plain numeral rules out
            if current <= RECURSION_THRESHOLD {
                break;
            }
        }
        let final_term = stages.iter().rev().fold(church(current), |acc, s| {
            Term::app(s.function_part.clone(), acc)
        });
        let final_size = final_term.size();
        CompactionResult {
            n,
            stages,
            tail: current,
            final_term,
            final_size,
        }
    }
}

pub fn compact_min(n: u64) -> MinCompaction {
    Compactor::global().compact_min(n)
}

pub fn compact_recursive(n: u64) -> CompactionResult {
    Compactor::global().compact_recursive(n)
}

pub fn function_part_size(t: &TranslationResult) -> usize {
    t.function_part_size()
}
