//! Memoized halving recurrences for every sequence.
//!
//! Each value at index `n` is either a base case or a small non-negative
//! linear combination of values at indices near `n / 2`. Evaluation walks an
//! explicit worklist instead of recursing, so indices with many thousands of
//! bits never grow the call stack. Starting from `k`, the indices touched at
//! depth `j` stay within a few positions of `k >> j`, so a fresh memo holds
//! `O(bits(k))` entries (`O(d * bits(k))` for digit bound `d`).
//!
//! Indices below zero contribute 0 (they are dropped from the combination).

use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::types::{Count, DigitBound, Index, SequenceKind};

/// `sum coeff * value(index)`
type Terms = Vec<(BigUint, u32)>;

enum Rule {
    Base(u32),
    Combine(Terms),
}

/// `n - by`, or `None` when negative.
fn minus(n: &BigUint, by: u64) -> Option<BigUint> {
    let by = BigUint::from(by);
    (n >= &by).then(|| n - by)
}

fn rule(kind: SequenceKind, n: &BigUint) -> Rule {
    let one = BigUint::one();
    let (k, odd) = (n >> 1u32, n.is_odd());
    match kind {
        SequenceKind::BPrime => {
            if n.is_zero() {
                Rule::Base(1)
            } else if odd {
                // b'(2k+1) = b'(2k)
                Rule::Combine(vec![(n - &one, 1)])
            } else {
                // b'(2k) = b'(k) + b'(k-1) + b'(k-2)
                Rule::Combine(
                    (0..3)
                        .filter_map(|i| minus(&k, i).map(|m| (m, 1)))
                        .collect(),
                )
            }
        }
        SequenceKind::DigitCount(d) => {
            if n.is_zero() {
                Rule::Base(1)
            } else {
                Rule::Combine(digit_terms(d, &k, odd))
            }
        }
        SequenceKind::B => {
            if n.is_zero() {
                Rule::Base(1)
            } else if n.is_one() {
                Rule::Base(2)
            } else if odd {
                // b(2k+1) = 2b(k) + b(k-1)
                Rule::Combine(vec![(&k - &one, 1), (k, 2)])
            } else {
                // b(2k) = 2b(k-1) + b(k)
                Rule::Combine(vec![(&k - &one, 2), (k, 1)])
            }
        }
        SequenceKind::HatB => {
            if n.is_zero() {
                Rule::Base(0)
            } else if n.is_one() {
                Rule::Base(1)
            } else if odd {
                // hb(2k+1) = 2hb(k) + hb(k+1)
                Rule::Combine(vec![(&k + &one, 1), (k, 2)])
            } else {
                // hb(2k) = 2hb(k) + hb(k-1)
                Rule::Combine(vec![(&k - &one, 1), (k, 2)])
            }
        }
        SequenceKind::Stern => {
            if n.is_zero() {
                Rule::Base(0)
            } else if n.is_one() {
                Rule::Base(1)
            } else if odd {
                Rule::Combine(vec![(&k + &one, 1), (k, 1)])
            } else {
                Rule::Combine(vec![(k, 1)])
            }
        }
        SequenceKind::Sigma => {
            if n.is_zero() {
                Rule::Base(0)
            } else if n.is_one() {
                Rule::Base(1)
            } else if odd {
                // sigma(2k+1) = sum_{0<=j<=k} (s(2j) + s(2j+1)) = 2 sigma(k) + sigma(k+1)
                Rule::Combine(vec![(&k + &one, 1), (k, 2)])
            } else {
                // sigma(2k) = sum_{1<=j<=k} (s(2j-1) + s(2j)) = 2 sigma(k) + sigma(k-1)
                Rule::Combine(vec![(&k - &one, 1), (k, 2)])
            }
        }
    }
}

/// Representations of `2k` (or `2k+1`) split by the lowest digit `e`, which
/// must share the parity of the target; the remaining digits represent
/// `(2k - e) / 2` (or `(2k + 1 - e) / 2`).
fn digit_terms(d: DigitBound, k: &BigUint, odd: bool) -> Terms {
    let d = u64::from(d.get());
    let first = u64::from(odd);
    (first..=d)
        .step_by(2)
        .filter_map(|e| minus(k, e / 2).map(|m| (m, 1)))
        .collect()
}

/// A memo table for one sequence. Reusing it across calls amortizes work,
/// e.g. when walking a contiguous range.
#[derive(Debug, Clone)]
pub struct SequenceMemo {
    kind: SequenceKind,
    cache: HashMap<BigUint, Count>,
}

impl SequenceMemo {
    pub fn new(kind: SequenceKind) -> Self {
        SequenceMemo {
            kind,
            cache: HashMap::new(),
        }
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    /// Number of memoized entries.
    pub fn len(&self) -> usize {
        self.cache.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cache.is_empty()
    }

    pub fn clear(&mut self) {
        self.cache.clear();
    }

    pub fn get(&mut self, k: &Index) -> Count {
        self.eval(k.value())
    }

    pub fn get_u64(&mut self, k: u64) -> Count {
        self.eval(&BigUint::from(k))
    }

    /// Values at `0..=last`, in order.
    pub fn table(&mut self, last: u64) -> Vec<Count> {
        (0..=last).map(|n| self.get_u64(n)).collect()
    }

    fn eval(&mut self, target: &BigUint) -> Count {
        if let Some(v) = self.cache.get(target) {
            return v.clone();
        }
        // Each frame keeps its combination once expanded, so a node's rule is
        // built only once.
        let mut stack: Vec<(BigUint, Option<Terms>)> = vec![(target.clone(), None)];
        while let Some((top, expanded)) = stack.last_mut() {
            if self.cache.contains_key(top) {
                stack.pop();
                continue;
            }
            if let Some(terms) = expanded {
                let mut acc = Count::zero();
                for (i, c) in terms.iter() {
                    let v = &self.cache[i];
                    if *c == 1 {
                        acc += v;
                    } else {
                        acc += v * *c;
                    }
                }
                let (top, _) = stack.pop().expect("non-empty");
                self.cache.insert(top, acc);
                continue;
            }
            match rule(self.kind, top) {
                Rule::Base(v) => {
                    let (top, _) = stack.pop().expect("non-empty");
                    self.cache.insert(top, Count::from(v));
                }
                Rule::Combine(terms) => {
                    let missing: Vec<_> = terms
                        .iter()
                        .filter(|(i, _)| !self.cache.contains_key(i))
                        .map(|(i, _)| (i.clone(), None))
                        .collect();
                    *expanded = Some(terms);
                    stack.extend(missing);
                }
            }
        }
        self.cache[target].clone()
    }
}

/// Value of `kind` at `k` from a fresh memo.
pub fn evaluate(kind: SequenceKind, k: &Index) -> Count {
    SequenceMemo::new(kind).get(k)
}

/// Sixth binary partition function: representations of `k` with digits
/// `0..=5`.
pub fn bprime(k: &Index) -> Count {
    evaluate(SequenceKind::BPrime, k)
}

/// `b(k) = bprime(2k)`.
pub fn b(k: &Index) -> Count {
    evaluate(SequenceKind::B, k)
}

/// `hatb(0) = 0`, `hatb(k) = b(k - 1)`.
pub fn hatb(k: &Index) -> Count {
    evaluate(SequenceKind::HatB, k)
}

/// Stern's diatomic sequence.
pub fn stern(k: &Index) -> Count {
    evaluate(SequenceKind::Stern, k)
}

/// `sigma(k) = stern(0) + ... + stern(k)`.
pub fn sigma(k: &Index) -> Count {
    evaluate(SequenceKind::Sigma, k)
}

/// Representations of `k` with digits `0..=d`.
pub fn digit_count(d: DigitBound, k: &Index) -> Count {
    evaluate(SequenceKind::DigitCount(d), k)
}
