//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use binpart_core::fast_eval::{sigma_triple_descent_counted, stern_pair_descent};
use binpart_core::oracle::gf_counts;
use binpart_core::sequences::SequenceMemo;
use binpart_core::types::{Count, DigitBound, Index, SequenceKind};
use binpart_core::verify::{
    self, compare_bfile, emit_bfile, parse_bfile, write_bfile, ABSTRACT_PREFIX_BFILE,
    ABSTRACT_TERMS,
};

type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let t = Instant::now();
    let mut o = f();
    let elapsed = t.elapsed();
    o.detail = format!("{} ({:.2}s)", o.detail, elapsed.as_secs_f64());
    if let Some(limit) = limit {
        if elapsed > limit {
            o.ok = false;
            o.detail = format!("{} exceeds {:?}", o.detail, limit);
        }
    }
    o
}

fn abstract_prefix() -> Outcome {
    let want: Vec<Count> = ABSTRACT_TERMS.iter().map(|&v| Count::from(v)).collect();
    let hatb = SequenceMemo::new(SequenceKind::HatB).table(17);
    let sigma = SequenceMemo::new(SequenceKind::Sigma).table(17);
    outcome(
        hatb == want && sigma == want,
        "hatb(0..=17) and sigma(0..=17) equal the 18 reference terms",
    )
}

fn main_identity() -> Outcome {
    let r = verify::check_main_identity(1 << 16);
    outcome(r.passed(), r.to_string())
}

fn oracle_vs_recurrence() -> Outcome {
    let n_max = 1u64 << 15;
    let table = gf_counts(DigitBound::SIX, n_max).expect("within cap");
    let memo = SequenceMemo::new(SequenceKind::BPrime).table(n_max);
    let first_bad = (0..=n_max as usize).find(|&n| table.counts()[n] != memo[n]);
    outcome(
        first_bad.is_none(),
        match first_bad {
            None => format!("gf_counts(5, {n_max}) == bprime on [0,{n_max}]"),
            Some(n) => format!("mismatch at n={n}"),
        },
    )
}

fn halving() -> Outcome {
    let r = verify::check_halving(1 << 15);
    outcome(r.passed(), r.to_string())
}

fn replay() -> Outcome {
    match verify::replay_proof(1 << 14) {
        Ok(r) => outcome(r.passed(), r.to_string()),
        Err(e) => outcome(false, e.to_string()),
    }
}

fn engine_agreement() -> Outcome {
    let r = verify::cross_engines(1000, 256, 42).expect("valid arguments");
    if !r.passed() {
        return outcome(false, r.to_string());
    }
    let k = Index::pow2(9999).succ();
    let t = Instant::now();
    let (_, stats) = sigma_triple_descent_counted(&k).expect("k >= 1");
    let elapsed = t.elapsed();
    let budget = 6 * k.bits();
    let ok = elapsed < Duration::from_secs(1) && stats.big_ops <= budget;
    outcome(
        ok,
        format!(
            "{r}; triple descent at 2^9999+1: {} big ops (budget {budget}) in {:.3}s",
            stats.big_ops,
            elapsed.as_secs_f64()
        ),
    )
}

fn hyperbinary() -> Outcome {
    let n_max = 1u64 << 14;
    let d = DigitBound::HYPERBINARY;
    let oracle = gf_counts(d, n_max).expect("within cap");
    let counts = SequenceMemo::new(SequenceKind::DigitCount(d)).table(n_max);
    if let Some(n) = (0..=n_max as usize).find(|&n| counts[n] != oracle.counts()[n]) {
        return outcome(false, format!("digit_count(2, {n}) disagrees with oracle"));
    }
    let mut stern = SequenceMemo::new(SequenceKind::Stern);
    match (0..=n_max).find(|&n| counts[n as usize] != stern.get_u64(n + 1)) {
        None => outcome(
            true,
            format!("digit_count(2, n) == stern(n+1) on [0,{n_max}], oracle-validated"),
        ),
        Some(n) => outcome(false, format!("digit_count(2, {n}) != stern({})", n + 1)),
    }
}

fn bfile_round_trip() -> Outcome {
    let to = Index::from(1u64 << 10);
    for kind in SequenceKind::NAMED {
        let emitted: Vec<_> = emit_bfile(kind, &Index::zero(), &to).unwrap().collect();
        let mut text = Vec::new();
        write_bfile(&mut text, emitted.clone()).unwrap();
        let parsed = parse_bfile(text.as_slice()).unwrap();
        if parsed != emitted {
            return outcome(false, format!("{kind}: parse(emit) lost information"));
        }
        let r = compare_bfile(kind, parsed);
        if !r.passed() {
            return outcome(false, r.to_string());
        }
    }
    let mut prefix = Vec::new();
    write_bfile(
        &mut prefix,
        emit_bfile(SequenceKind::HatB, &Index::zero(), &Index::from(17u64)).unwrap(),
    )
    .unwrap();
    if prefix != ABSTRACT_PREFIX_BFILE.as_bytes() {
        return outcome(false, "emitted hatb prefix differs from embedded b-file");
    }
    let reference = parse_bfile(ABSTRACT_PREFIX_BFILE.as_bytes()).unwrap();
    for kind in [SequenceKind::HatB, SequenceKind::Sigma] {
        let r = compare_bfile(kind, reference.clone());
        if !r.passed() {
            return outcome(false, r.to_string());
        }
    }
    // structured spot check on the descent engine used by emit_bfile
    if stern_pair_descent(&Index::pow2(1 << 10)).lo != Count::from(1u32) {
        return outcome(false, "stern(2^1024) != 1");
    }
    outcome(
        true,
        "five sequences on [0,1024]; embedded prefix byte-exact",
    )
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        (
            "1 abstract prefix",
            Some(Duration::from_secs(1)),
            abstract_prefix,
        ),
        (
            "2 main identity at 2^16",
            Some(Duration::from_secs(30)),
            main_identity,
        ),
        (
            "3 oracle vs recurrence at 2^15",
            Some(Duration::from_secs(60)),
            oracle_vs_recurrence,
        ),
        ("4 halving at 2^15", None, halving),
        ("5 proof replay at 2^14", None, replay),
        ("6 engine agreement", None, engine_agreement),
        ("7 hyperbinary cross-check at 2^14", None, hyperbinary),
        ("8 b-file round trip", None, bfile_round_trip),
    ];
    let mut failed = 0;
    for (name, limit, f) in criteria {
        let o = timed(limit, f);
        println!(
            "{} criterion {name}: {}",
            if o.ok { "PASS" } else { "FAIL" },
            o.detail
        );
        failed += usize::from(!o.ok);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
