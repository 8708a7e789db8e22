//! Identity checks over index ranges, and OEIS b-file I/O.
//!
//! Every check compares two code paths that share no recurrence: the
//! generating-function oracle against the halving recurrences, running sums
//! of Stern values against the sigma recurrence, or the memoized recurrences
//! against the bit descent.

use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use num_bigint::{BigUint, RandBigInt};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fast_eval::{eval_any, stern_pair_descent};
use crate::oracle::{gf_counts_with_cap, DEFAULT_TABLE_CAP};
use crate::sequences::SequenceMemo;
use crate::types::{Count, DigitBound, Index, SequenceKind};

/// Indices per work unit when a range check is split across threads.
pub const DEFAULT_CHUNK: u64 = 4096;

/// The 18 leading terms shared by `hatb` and `sigma`.
pub const ABSTRACT_TERMS: [u32; 18] = [
    0, 1, 2, 4, 5, 8, 10, 13, 14, 18, 21, 26, 28, 33, 36, 40, 41, 46,
];

/// [`ABSTRACT_TERMS`] in b-file form.
pub const ABSTRACT_PREFIX_BFILE: &str = "0 0\n1 1\n2 2\n3 4\n4 5\n5 8\n6 10\n7 13\n8 14\n\
9 18\n10 21\n11 26\n12 28\n13 33\n14 36\n15 40\n16 41\n17 46\n";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub index: Index,
    pub expected: Count,
    pub actual: Count,
    /// Which sub-identity failed, for multi-part checks.
    pub note: Option<String>,
}

impl Mismatch {
    fn new(index: impl Into<Index>, expected: Count, actual: Count) -> Self {
        Mismatch {
            index: index.into(),
            expected,
            actual,
            note: None,
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Outcome of one check. `passed()` holds exactly when there is no mismatch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    /// Inclusive index range; `None` for a vacuous check.
    pub range: Option<(Index, Index)>,
    pub first_failure: Option<Mismatch>,
    /// Seed of the pseudo-random index stream, when one was used.
    pub seed: Option<u64>,
}

impl CheckReport {
    fn new(name: impl Into<String>, range: Option<(Index, Index)>) -> Self {
        CheckReport {
            name: name.into(),
            range,
            first_failure: None,
            seed: None,
        }
    }

    fn over(name: impl Into<String>, lo: impl Into<Index>, hi: impl Into<Index>) -> Self {
        Self::new(name, Some((lo.into(), hi.into())))
    }

    fn failing(mut self, failure: Option<Mismatch>) -> Self {
        self.first_failure = failure;
        self
    }

    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// `PASS name [lo,hi]`, followed on failure by `at n=..: expected .., got ..`.
impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}", self.name)?;
        match &self.range {
            Some((lo, hi)) => write!(f, " [{lo},{hi}]")?,
            None => f.write_str(" [empty]")?,
        }
        if let Some(seed) = self.seed {
            write!(f, " seed={seed}")?;
        }
        if let Some(m) = &self.first_failure {
            write!(f, " at n={}", m.index)?;
            if let Some(note) = &m.note {
                write!(f, " ({note})")?;
            }
            write!(f, ": expected {}, got {}", m.expected, m.actual)?;
        }
        Ok(())
    }
}

/// Smallest index in `lo..=hi` at which `probe` reports a mismatch.
///
/// The range is cut into `chunk`-sized pieces checked in parallel; each piece
/// stops at its own first failure and the merge keeps the lowest piece, so
/// the answer does not depend on `chunk`.
pub fn first_failure_in<F>(lo: u64, hi: u64, chunk: u64, probe: F) -> Option<Mismatch>
where
    F: Fn(u64) -> Option<Mismatch> + Sync,
{
    if lo > hi {
        return None;
    }
    let chunk = chunk.max(1);
    let pieces = (hi - lo) / chunk + 1;
    (0..pieces).into_par_iter().find_map_first(|p| {
        let start = lo + p * chunk;
        let end = start.saturating_add(chunk - 1).min(hi);
        (start..=end).find_map(&probe)
    })
}

fn compare(n: u64, expected: &Count, actual: &Count) -> Option<Mismatch> {
    (expected != actual).then(|| Mismatch::new(n, expected.clone(), actual.clone()))
}

/// Running sums `sigma(0..=last)` taken straight from Stern values.
fn sigma_by_summation(stern: &[Count]) -> Vec<Count> {
    let mut acc = Count::zero();
    stern
        .iter()
        .map(|s| {
            acc += s;
            acc.clone()
        })
        .collect()
}

/// `hatb(k) == sigma(k)` for `0 <= k <= limit`, with `hatb` from its own
/// recurrence and `sigma` summed term by term from Stern's sequence.
pub fn check_main_identity(limit: u64) -> CheckReport {
    let hatb = SequenceMemo::new(SequenceKind::HatB).table(limit);
    let stern = SequenceMemo::new(SequenceKind::Stern).table(limit);
    let sigma = sigma_by_summation(&stern);
    let failure = first_failure_in(0, limit, DEFAULT_CHUNK, |n| {
        compare(n, &sigma[n as usize], &hatb[n as usize])
    });
    CheckReport::over("hatb==sigma", 0u64, limit).failing(failure)
}

/// `bprime(2k + 1) == bprime(2k)` for `0 <= k <= limit`.
pub fn check_halving(limit: u64) -> CheckReport {
    check_halving_with_cap(limit, DEFAULT_TABLE_CAP)
}

/// As [`check_halving`]. Pairs with `2k + 1 <= cap` are read from the oracle;
/// beyond it the odd side comes from the digit-split recurrence (odd lowest
/// digit) and the even side from the `bprime` recurrence.
pub fn check_halving_with_cap(limit: u64, cap: u64) -> CheckReport {
    let report = CheckReport::over("bprime-halving", 0u64, limit);
    let oracle_top = cap.saturating_sub(1) / 2;
    let oracle_last = limit.min(oracle_top);
    if cap >= 1 {
        let table = gf_counts_with_cap(DigitBound::SIX, 2 * oracle_last + 1, cap)
            .expect("bound checked against cap");
        let failure = first_failure_in(0, oracle_last, DEFAULT_CHUNK, |k| {
            compare(k, &table[2 * k], &table[2 * k + 1])
        });
        if failure.is_some() || oracle_last == limit {
            return report.failing(failure);
        }
    }
    let first = if cap >= 1 { oracle_last + 1 } else { 0 };
    let mut odd = SequenceMemo::new(SequenceKind::DigitCount(DigitBound::SIX));
    let mut even = SequenceMemo::new(SequenceKind::BPrime);
    let failure = (first..=limit).find_map(|k| {
        let e = even.get_u64(2 * k);
        let o = odd.get_u64(2 * k + 1);
        compare(k, &e, &o)
    });
    report.failing(failure)
}

/// Replays each step of the proof for `1 <= j, k <= limit`:
///
/// - `l(j)  = s(2j-1) + s(2j) = 2 s(j) + s(j-1)`
/// - `l'(j) = s(2j) + s(2j+1) = 2 s(j) + s(j+1)`
/// - `sigma(2k) = sum_{1<=j<=k} l(j)`, `sigma(2k+1) = sum_{0<=j<=k} l'(j)`,
///   and the closed recurrences they telescope into
/// - `bprime(2k) = 2 bprime(k-1) + bprime(k)` (k even) or
///   `2 bprime(k-1) + bprime(k-2)` (k odd)
/// - `hatb(2k) = 2 hatb(k) + hatb(k-1)`, `hatb(2k+1) = 2 hatb(k) + hatb(k+1)`
///
/// Stern values come from their recurrence, sigma from running sums, and
/// `bprime`/`hatb` from the oracle table, so no identity is checked against
/// itself.
pub fn replay_proof(limit: u64) -> Result<CheckReport> {
    replay_proof_with_cap(limit, DEFAULT_TABLE_CAP)
}

pub fn replay_proof_with_cap(limit: u64, cap: u64) -> Result<CheckReport> {
    if limit == 0 {
        return Err(Error::InvalidArgument(
            "proof replay needs limit >= 1".into(),
        ));
    }
    let oracle_bound = limit.checked_mul(4).ok_or(Error::OracleBoundExceeded {
        requested: u64::MAX,
        cap,
    })?;
    let bprime = gf_counts_with_cap(DigitBound::SIX, oracle_bound, cap)?.into_counts();
    let report = CheckReport::over("proof-replay", 1u64, limit);

    let s = SequenceMemo::new(SequenceKind::Stern).table(2 * limit + 1);
    let sigma = sigma_by_summation(&s);
    let at = |v: &[Count], i: u64| v[i as usize].clone();
    // bprime with zero below the origin
    let bp = |i: i64| -> Count {
        if i < 0 {
            Count::zero()
        } else {
            bprime[i as usize].clone()
        }
    };
    // hatb(0) = 0, hatb(k) = bprime(2k - 2)
    let hb = |k: u64| -> Count {
        if k == 0 {
            Count::zero()
        } else {
            bprime[(2 * k - 2) as usize].clone()
        }
    };

    let mut ell_sum = Count::zero();
    let mut ell_prime_sum = at(&s, 0) + at(&s, 1);
    let ell_prime_0 = Count::from(2u32) * at(&s, 0) + at(&s, 1);
    if ell_prime_0 != ell_prime_sum {
        let m = Mismatch::new(0u64, ell_prime_sum, ell_prime_0).with_note("l'(j) two forms");
        return Ok(report.failing(Some(m)));
    }
    for j in 1..=limit {
        let two_s = Count::from(2u32) * at(&s, j);

        let ell = at(&s, 2 * j - 1) + at(&s, 2 * j);
        let ell_alt = &two_s + at(&s, j - 1);
        if ell != ell_alt {
            let m = Mismatch::new(j, ell, ell_alt).with_note("l(j) two forms");
            return Ok(report.failing(Some(m)));
        }
        let ell_prime = at(&s, 2 * j) + at(&s, 2 * j + 1);
        let ell_prime_alt = &two_s + at(&s, j + 1);
        if ell_prime != ell_prime_alt {
            let m = Mismatch::new(j, ell_prime, ell_prime_alt).with_note("l'(j) two forms");
            return Ok(report.failing(Some(m)));
        }

        ell_sum += &ell;
        ell_prime_sum += &ell_prime;
        let k = j;
        let checks = [
            (
                at(&sigma, 2 * k),
                ell_sum.clone(),
                "sigma(2k) as sum of l(j)",
            ),
            (
                at(&sigma, 2 * k),
                Count::from(2u32) * at(&sigma, k) + at(&sigma, k - 1),
                "sigma(2k) recurrence",
            ),
            (
                at(&sigma, 2 * k + 1),
                ell_prime_sum.clone(),
                "sigma(2k+1) as sum of l'(j)",
            ),
            (
                at(&sigma, 2 * k + 1),
                Count::from(2u32) * at(&sigma, k) + at(&sigma, k + 1),
                "sigma(2k+1) recurrence",
            ),
        ];
        for (expected, actual, note) in checks {
            if expected != actual {
                return Ok(report.failing(Some(Mismatch::new(k, expected, actual).with_note(note))));
            }
        }

        let ki = k as i64;
        let (rhs, note) = if k % 2 == 0 {
            (
                Count::from(2u32) * bp(ki - 1) + bp(ki),
                "bprime(2k), k even",
            )
        } else {
            (
                Count::from(2u32) * bp(ki - 1) + bp(ki - 2),
                "bprime(2k), k odd",
            )
        };
        if bp(2 * ki) != rhs {
            return Ok(report.failing(Some(Mismatch::new(k, bp(2 * ki), rhs).with_note(note))));
        }

        let even = Count::from(2u32) * hb(k) + hb(k - 1);
        if hb(2 * k) != even {
            let m = Mismatch::new(k, hb(2 * k), even).with_note("hatb(2k) recurrence");
            return Ok(report.failing(Some(m)));
        }
        let odd = Count::from(2u32) * hb(k) + hb(k + 1);
        if hb(2 * k + 1) != odd {
            let m = Mismatch::new(k, hb(2 * k + 1), odd).with_note("hatb(2k+1) recurrence");
            return Ok(report.failing(Some(m)));
        }
    }
    Ok(report)
}

/// Sequences compared by [`cross_engines`]. Hyperbinary counts have no
/// descent of their own; they are checked against `stern(n + 1)`.
pub const CROSS_KINDS: [SequenceKind; 7] = [
    SequenceKind::BPrime,
    SequenceKind::B,
    SequenceKind::HatB,
    SequenceKind::Stern,
    SequenceKind::Sigma,
    SequenceKind::DigitCount(DigitBound::SIX),
    SequenceKind::DigitCount(DigitBound::HYPERBINARY),
];

/// Deterministic sample of `count` indices, each of at most `max_bits` bits.
pub fn random_indices(count: usize, max_bits: u64, seed: u64) -> Vec<Index> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let bits = rng.gen_range(1..=max_bits);
            Index::from(rng.gen_biguint(bits))
        })
        .collect()
}

/// `2^n - 1`, `2^n`, `2^n + 1` for `0 <= n <= max_bits`.
pub fn structured_indices(max_bits: u64) -> Vec<Index> {
    let mut out = Vec::new();
    for n in 0..=max_bits {
        let p = Index::pow2(n);
        if let Some(below) = p.pred() {
            out.push(below);
        }
        out.push(p.succ());
        out.push(p);
    }
    out
}

fn engines_disagree(kind: SequenceKind, k: &Index) -> Option<Mismatch> {
    let fast = eval_any(kind, k);
    let reference = match kind {
        SequenceKind::DigitCount(d) if d == DigitBound::HYPERBINARY => stern_pair_descent(k).hi,
        _ => SequenceMemo::new(kind).get(k),
    };
    (fast != reference).then(|| Mismatch {
        index: k.clone(),
        expected: reference,
        actual: fast,
        note: Some(kind.to_string()),
    })
}

/// Descent engines against memoized recurrences on random and structured
/// indices; the first disagreement in generation order is reported.
pub fn cross_engines(sample_count: usize, max_bits: u64, seed: u64) -> Result<CheckReport> {
    if sample_count == 0 || max_bits == 0 {
        return Err(Error::InvalidArgument(
            "cross-engine check needs samples >= 1 and max bits >= 1".into(),
        ));
    }
    let mut indices = random_indices(sample_count, max_bits, seed);
    indices.extend(structured_indices(max_bits));
    let failure = indices.par_iter().find_map_first(|k| {
        CROSS_KINDS
            .iter()
            .find_map(|&kind| engines_disagree(kind, k))
    });
    let mut report =
        CheckReport::over("cross-engines", Index::zero(), Index::pow2(max_bits).succ())
            .failing(failure);
    report.seed = Some(seed);
    Ok(report)
}

/// One b-file line: `n value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFileRecord {
    pub n: Index,
    pub value: Count,
}

impl fmt::Display for BFileRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.n, self.value)
    }
}

impl FromStr for BFileRecord {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let bad = || Error::BFileParse {
            line: 0,
            content: line.to_string(),
        };
        let mut parts = line.split_whitespace();
        let (Some(n), Some(value), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(bad());
        };
        let n: Index = n.parse().map_err(|_| bad())?;
        let value: Index = value.parse().map_err(|_| bad())?;
        Ok(BFileRecord {
            n,
            value: value.into_inner(),
        })
    }
}

/// Records for `from..=to`, ascending, from the descent engines.
pub fn emit_bfile(
    kind: SequenceKind,
    from: &Index,
    to: &Index,
) -> Result<impl Iterator<Item = BFileRecord>> {
    if from > to {
        return Err(Error::InvalidArgument(format!(
            "empty range: from {from} > to {to}"
        )));
    }
    let to = to.clone();
    let mut next = Some(from.clone());
    Ok(std::iter::from_fn(move || {
        let n = next.take()?;
        if n < to {
            next = Some(n.succ());
        }
        let value = eval_any(kind, &n);
        Some(BFileRecord { n, value })
    }))
}

pub fn write_bfile<W, I>(out: &mut W, records: I) -> Result<()>
where
    W: Write,
    I: IntoIterator<Item = BFileRecord>,
{
    for r in records {
        writeln!(out, "{r}")?;
    }
    Ok(())
}

/// Parses b-file text, skipping `#` comments and blank lines.
pub fn parse_bfile<R: BufRead>(input: R) -> Result<Vec<BFileRecord>> {
    let mut out = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let record = trimmed.parse().map_err(|_| Error::BFileParse {
            line: i + 1,
            content: line.clone(),
        })?;
        out.push(record);
    }
    Ok(out)
}

/// Recomputes every record and reports the first mismatch.
pub fn compare_bfile<I>(kind: SequenceKind, records: I) -> CheckReport
where
    I: IntoIterator<Item = BFileRecord>,
{
    let mut range: Option<(Index, Index)> = None;
    let mut failure = None;
    for r in records {
        range = Some(match range {
            None => (r.n.clone(), r.n.clone()),
            Some((lo, hi)) => (lo.min(r.n.clone()), hi.max(r.n.clone())),
        });
        if failure.is_none() {
            let expected = eval_any(kind, &r.n);
            if expected != r.value {
                failure = Some(Mismatch {
                    index: r.n,
                    expected,
                    actual: r.value,
                    note: None,
                });
            }
        }
    }
    CheckReport::new(format!("bfile({kind})"), range).failing(failure)
}

pub fn abstract_prefix_records() -> Vec<BFileRecord> {
    ABSTRACT_TERMS
        .iter()
        .enumerate()
        .map(|(n, &v)| BFileRecord {
            n: Index::from(n as u64),
            value: BigUint::from(v),
        })
        .collect()
}

/// Compares `hatb` and `sigma` against the embedded prefix.
pub fn selftest() -> Vec<CheckReport> {
    let records = parse_bfile(ABSTRACT_PREFIX_BFILE.as_bytes()).expect("embedded b-file parses");
    [SequenceKind::HatB, SequenceKind::Sigma]
        .into_iter()
        .map(|kind| compare_bfile(kind, records.clone()))
        .collect()
}
