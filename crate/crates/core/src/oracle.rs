//! Ground-truth representation counts from generating functions.
//!
//! The number of ways to write `n = sum e_i 2^i` with every digit `e_i` in
//! `0..=d` is the coefficient of `x^n` in
//!
//! ```text
//!   prod_{i >= 0} (1 + x^(2^i) + x^(2*2^i) + ... + x^(d*2^i))
//! ```
//!
//! Factors with `2^i > n` contribute only their constant term, so the product
//! truncated to degree `max_n` needs just the factors with `2^i <= max_n`.
//! Nothing here uses a halving recurrence.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::types::{Count, DigitBound};

/// Largest `max_n` accepted by [`gf_counts`].
pub const DEFAULT_TABLE_CAP: u64 = 1 << 22;

/// Representation counts for every `n` in `0..=max_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    digit_bound: DigitBound,
    counts: Vec<Count>,
}

impl CountTable {
    pub fn digit_bound(&self) -> DigitBound {
        self.digit_bound
    }

    pub fn max_n(&self) -> u64 {
        self.counts.len() as u64 - 1
    }

    pub fn get(&self, n: u64) -> Option<&Count> {
        usize::try_from(n).ok().and_then(|n| self.counts.get(n))
    }

    pub fn counts(&self) -> &[Count] {
        &self.counts
    }

    pub fn into_counts(self) -> Vec<Count> {
        self.counts
    }
}

impl std::ops::Index<u64> for CountTable {
    type Output = Count;

    fn index(&self, n: u64) -> &Count {
        &self.counts[n as usize]
    }
}

/// Coefficients `0..=max_n` of the digit-polynomial product, with the default
/// table cap.
pub fn gf_counts(d: DigitBound, max_n: u64) -> Result<CountTable> {
    gf_counts_with_cap(d, max_n, DEFAULT_TABLE_CAP)
}

pub fn gf_counts_with_cap(d: DigitBound, max_n: u64, cap: u64) -> Result<CountTable> {
    if max_n > cap || usize::try_from(max_n).is_err() {
        return Err(Error::OracleBoundExceeded {
            requested: max_n,
            cap,
        });
    }
    let mut poly = vec![Count::zero(); max_n as usize + 1];
    poly[0] = Count::one();

    let mut stride: u64 = 1;
    while stride <= max_n {
        multiply_by_digit_factor(&mut poly, d, stride);
        stride <<= 1;
    }
    Ok(CountTable {
        digit_bound: d,
        counts: poly,
    })
}

/// `poly *= 1 + x^s + x^(2s) + ... + x^(ds)`, truncated to `poly.len()` terms.
///
/// Sweeps degrees downwards so every read sees the pre-multiplication value.
pub(crate) fn multiply_by_digit_factor(poly: &mut [Count], d: DigitBound, stride: u64) {
    let d = u64::from(d.get());
    for n in (0..poly.len()).rev() {
        let mut acc = Count::zero();
        for e in 1..=d {
            let Some(shift) = e.checked_mul(stride) else {
                break;
            };
            if shift > n as u64 {
                break;
            }
            acc += &poly[n - shift as usize];
        }
        poly[n] += acc;
    }
}
