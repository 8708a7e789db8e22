//! Digit-restricted binary partition functions and Stern's diatomic sequence.
//!
//! Three engines compute the same values along unrelated code paths:
//!
//! - [`oracle`]: coefficients of a truncated product of digit polynomials.
//! - [`sequences`]: halving recurrences evaluated through a worklist memo.
//! - [`fast_eval`]: constant-window descent over the bits of the index.
//!
//! [`verify`] pits them against each other and reads/writes OEIS b-files;
//! [`cli`] is the command-line front end.

pub mod cli;
pub mod error;
pub mod fast_eval;
pub mod oracle;
pub mod sequences;
pub mod types;
pub mod verify;

pub use error::{Error, Result};
pub use fast_eval::{eval_any, sigma_triple_descent, stern_pair_descent, SigmaTriple, SternPair};
pub use oracle::{gf_counts, CountTable};
pub use sequences::{b, bprime, digit_count, hatb, sigma, stern, SequenceMemo};
pub use types::{Count, DigitBound, Index, SequenceKind};
