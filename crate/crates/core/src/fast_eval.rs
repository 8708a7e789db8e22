//! Single-index evaluation in `O(bits(k))` big-integer steps.
//!
//! Both engines read the bits of `k` from the most significant end and keep a
//! constant window of consecutive sequence values. Appending bit `0` to the
//! prefix `m` moves to `2m`, appending `1` moves to `2m + 1`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::sequences;
use crate::types::{Count, DigitBound, Index, SequenceKind};

/// `(stern(k), stern(k + 1))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SternPair {
    pub lo: Count,
    pub hi: Count,
}

/// `(sigma(k - 1), sigma(k), sigma(k + 1))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaTriple {
    pub prev: Count,
    pub cur: Count,
    pub next: Count,
}

/// Work done by one descent.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DescentStats {
    /// Window transitions (one per consumed bit).
    pub steps: u64,
    /// Big-integer additions and doublings.
    pub big_ops: u64,
}

pub fn stern_pair_descent(k: &Index) -> SternPair {
    stern_pair_descent_counted(k).0
}

pub fn stern_pair_descent_counted(k: &Index) -> (SternPair, DescentStats) {
    let mut stats = DescentStats::default();
    let (mut lo, mut hi) = (Count::zero(), Count::one());
    for i in (0..k.bits()).rev() {
        if k.bit(i) {
            // (s(2m+1), s(2m+2)) = (s(m) + s(m+1), s(m+1))
            lo += &hi;
        } else {
            // (s(2m), s(2m+1)) = (s(m), s(m) + s(m+1))
            hi += &lo;
        }
        stats.steps += 1;
        stats.big_ops += 1;
    }
    (SternPair { lo, hi }, stats)
}

/// Rejects `k = 0`, where `sigma(-1)` would be needed.
pub fn sigma_triple_descent(k: &Index) -> Result<SigmaTriple> {
    sigma_triple_descent_counted(k).map(|(t, _)| t)
}

pub fn sigma_triple_descent_counted(k: &Index) -> Result<(SigmaTriple, DescentStats)> {
    if k.is_zero() {
        return Err(Error::InvalidArgument(
            "sigma triple descent needs k >= 1".into(),
        ));
    }
    let mut stats = DescentStats::default();
    let mut t = SigmaTriple {
        prev: Count::zero(),
        cur: Count::one(),
        next: Count::from(2u32),
    };
    for i in (0..k.bits() - 1).rev() {
        let twice_cur: Count = &t.cur << 1u32;
        t = if k.bit(i) {
            // sigma(2m), sigma(2m+1), sigma(2m+2)
            let next = (&t.next << 1u32) + &t.cur;
            SigmaTriple {
                prev: &twice_cur + &t.prev,
                cur: &twice_cur + &t.next,
                next,
            }
        } else {
            // sigma(2m-1), sigma(2m), sigma(2m+1); sigma(2m-1) is the odd
            // rule applied to 2(m-1)+1.
            let prev = (&t.prev << 1u32) + &t.cur;
            SigmaTriple {
                prev,
                cur: &twice_cur + &t.prev,
                next: &twice_cur + &t.next,
            }
        };
        stats.steps += 1;
        stats.big_ops += 5;
    }
    Ok((t, stats))
}

fn sigma_at(k: &Index) -> Count {
    if k.is_zero() {
        Count::zero()
    } else {
        sigma_triple_descent(k).expect("k >= 1").cur
    }
}

/// Evaluates any sequence through the descent engines:
///
/// - `hatb(k) = sigma(k)`
/// - `b(k) = hatb(k + 1) = sigma(k + 1)`
/// - `bprime(k) = bprime(2 floor(k/2)) = b(floor(k/2)) = sigma(floor(k/2) + 1)`
///
/// Digit bounds other than 5 have no descent and fall back to the memoized
/// recurrence.
pub fn eval_any(kind: SequenceKind, k: &Index) -> Count {
    match kind {
        SequenceKind::Stern => stern_pair_descent(k).lo,
        SequenceKind::Sigma | SequenceKind::HatB => sigma_at(k),
        SequenceKind::B => sigma_at(&k.succ()),
        SequenceKind::BPrime => sigma_at(&k.half().succ()),
        SequenceKind::DigitCount(d) if d == DigitBound::SIX => sigma_at(&k.half().succ()),
        SequenceKind::DigitCount(d) => sequences::digit_count(d, k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::SequenceMemo;

    fn c(v: u64) -> Count {
        Count::from(v)
    }

    fn pair(lo: u64, hi: u64) -> SternPair {
        SternPair {
            lo: c(lo),
            hi: c(hi),
        }
    }

    #[test]
    fn stern_pair_examples() {
        assert_eq!(stern_pair_descent(&Index::zero()), pair(0, 1));
        assert_eq!(stern_pair_descent(&Index::from(5u64)), pair(3, 2));
        assert_eq!(stern_pair_descent(&Index::from(16u64)), pair(1, 5));
    }

    #[test]
    fn sigma_triple_examples() {
        let t = sigma_triple_descent(&Index::from(1u64)).unwrap();
        assert_eq!((t.prev, t.cur, t.next), (c(0), c(1), c(2)));
        let t = sigma_triple_descent(&Index::from(16u64)).unwrap();
        assert_eq!((t.prev, t.cur, t.next), (c(40), c(41), c(46)));
        assert!(sigma_triple_descent(&Index::zero()).is_err());
    }

    #[test]
    fn sigma_triple_at_two_pow_twenty() {
        let k = Index::pow2(20);
        let t = sigma_triple_descent(&k).unwrap();
        let mut memo = SequenceMemo::new(SequenceKind::Sigma);
        assert_eq!(t.prev, memo.get(&k.pred().unwrap()));
        assert_eq!(t.cur, memo.get(&k));
        assert_eq!(t.next, memo.get(&k.succ()));
    }

    #[test]
    fn eval_any_examples() {
        assert_eq!(eval_any(SequenceKind::HatB, &Index::from(17u64)), c(46));
        assert_eq!(eval_any(SequenceKind::BPrime, &Index::from(9u64)), c(8));
        assert_eq!(eval_any(SequenceKind::Stern, &Index::zero()), c(0));
        assert_eq!(eval_any(SequenceKind::Sigma, &Index::zero()), c(0));
        assert_eq!(eval_any(SequenceKind::B, &Index::zero()), c(1));
        assert_eq!(eval_any(SequenceKind::BPrime, &Index::zero()), c(1));
    }

    #[test]
    fn pair_agrees_with_memo_up_to_4096() {
        let mut memo = SequenceMemo::new(SequenceKind::Stern);
        let s = memo.table(4097);
        for k in 0..=4096u64 {
            let p = stern_pair_descent(&Index::from(k));
            assert_eq!(p.lo, s[k as usize], "k = {k}");
            assert_eq!(p.hi, s[k as usize + 1], "k = {k}");
        }
    }

    #[test]
    fn triple_agrees_with_memo_up_to_4096() {
        let mut memo = SequenceMemo::new(SequenceKind::Sigma);
        let s = memo.table(4097);
        for k in 1..=4096u64 {
            let t = sigma_triple_descent(&Index::from(k)).unwrap();
            let k = k as usize;
            assert_eq!((&t.prev, &t.cur, &t.next), (&s[k - 1], &s[k], &s[k + 1]));
        }
    }

    #[test]
    fn op_counts_track_bit_length() {
        for k in [1u64, 2, 3, 17, 1 << 40, u64::MAX] {
            let k = Index::from(k);
            let (_, ps) = stern_pair_descent_counted(&k);
            assert_eq!(ps.steps, k.bits());
            assert_eq!(ps.big_ops, k.bits());
            let (_, ts) = sigma_triple_descent_counted(&k).unwrap();
            assert_eq!(ts.steps, k.bits() - 1);
            assert_eq!(ts.big_ops, 5 * (k.bits() - 1));
        }
        let (_, ps) = stern_pair_descent_counted(&Index::zero());
        assert_eq!(ps, DescentStats::default());
    }

    #[test]
    fn sigma_gaps_are_stern_values() {
        for k in [1u64, 2, 99, 1 << 33, (1 << 50) + 12345] {
            let k = Index::from(k);
            let t = sigma_triple_descent(&k).unwrap();
            assert_eq!(&t.next - &t.cur, stern_pair_descent(&k).hi);
            assert_eq!(&t.cur - &t.prev, stern_pair_descent(&k).lo);
        }
    }
}
