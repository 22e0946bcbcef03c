//! Compact λ-terms for Church numerals.
//!
//! A natural number `n` is decomposed by recursive tetrational partitioning
//! (RTP) into towers of a single base φ, the decomposition is translated into
//! one folded abstraction applied to C(φ), and φ is chosen to minimise the
//! result. The argument C(φ*) can itself be compacted, giving a short chain of
//! abstractions that β-reduces to C(n).
//!
//! ```
//! use church_compact::{compact_recursive, church_value};
//!
//! let r = compact_recursive(1000);
//! assert!(r.final_size < 2 * 1000 + 3);
//! assert_eq!(church_value(&r.final_term, 1000), Ok(1000));
//! ```

pub mod bench;
pub mod compact;
pub mod numerals;
pub mod reduce;
pub mod rtp;
pub mod term;
pub mod translate;

pub use compact::{compact_min, compact_recursive, CompactionResult, Compactor, MinCompaction};
pub use numerals::{binary_church, church};
pub use reduce::{church_value, normalize, Fuel, NormalizeOutcome};
pub use rtp::{rtp, Expr, RtpDecomposition};
pub use term::{parse, Term};
pub use translate::{translate, TranslationResult};
