"""Smoke test for the binpart extension module.

Build and install first:
    pip install maturin
    maturin build --release -m crates/python/Cargo.toml -o target/wheels
    pip install --force-reinstall target/wheels/binpart-*.whl
"""

import binpart

TERMS = [0, 1, 2, 4, 5, 8, 10, 13, 14, 18, 21, 26, 28, 33, 36, 40, 41, 46]


def main():
    assert list(binpart.ABSTRACT_TERMS) == TERMS
    assert [binpart.hatb(k) for k in range(18)] == TERMS
    assert [binpart.sigma(k) for k in range(18)] == TERMS
    assert [binpart.eval("hatb", k) for k in range(18)] == TERMS

    assert binpart.bprime(8) == 8
    assert binpart.b(5) == 10
    assert binpart.stern(5) == 3
    assert binpart.digit_count(2, 4) == 3
    assert binpart.eval("digitcount", 4, digit_bound=2) == 3
    assert binpart.eval("digitcount:5", 9) == binpart.bprime(9) == 8

    assert binpart.stern(2**64) == 1
    assert binpart.stern_pair(16) == (1, 5)
    assert binpart.sigma_triple(16) == (40, 41, 46)
    big = 2**300 + 12345
    assert binpart.eval("sigma", big) == binpart.sigma(big)

    assert binpart.gf_counts(3, 4) == [1, 1, 2, 2, 3]

    for report in (
        binpart.check_main_identity(4096),
        binpart.check_halving(2048),
        binpart.replay_proof(1024),
        binpart.cross_engines(20, 64, seed=1),
    ):
        assert report, str(report)
        print(report)

    text = binpart.emit_bfile("hatb", 0, 17)
    assert text == binpart.ABSTRACT_PREFIX_BFILE
    assert binpart.compare_bfile("sigma", text).passed

    bad = text.replace("17 46", "17 47")
    report = binpart.compare_bfile("hatb", bad)
    assert not report
    assert report.first_failure == (17, 46, 47, None)

    assert all(binpart.selftest())

    for call in (
        lambda: binpart.sigma_triple(0),
        lambda: binpart.eval("fib", 3),
        lambda: binpart.digit_count(0, 3),
        lambda: binpart.gf_counts(5, 100, cap=10),
        lambda: binpart.replay_proof(0),
    ):
        try:
            call()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    try:
        binpart.stern(-1)
    except (OverflowError, ValueError, TypeError):
        pass
    else:
        raise AssertionError("negative index accepted")

    print("python smoke test OK")


if __name__ == "__main__":
    main()
