"""Acceptance suite.

One test per criterion, run at the stated scale and tolerance; each prints a
single PASS/FAIL line (visible with -s or in failure output).  Criterion 14
invokes the CLI selftest twice under different thread settings and compares
bytes.  Runtime caps are asserted with generous mechanical margins.
"""

import subprocess
import sys
import time

from ilab import acceptance

from test_cli import subprocess_env


def report(criterion: int, result: dict, elapsed: float, cap: float):
    status = "PASS" if result["passed"] else "FAIL"
    print(f"[acceptance] criterion {criterion:2d}: {status} "
          f"({result['name']}, {elapsed:.2f}s)")
    assert result["passed"], result
    assert elapsed < cap, f"criterion {criterion} exceeded its {cap}s budget"


def run(criterion: int, fn, cap: float, **kwargs):
    t0 = time.time()
    result = fn(**kwargs)
    report(criterion, result, time.time() - t0, cap)


def test_criterion_1_intersectivity():
    run(1, acceptance.check_1_intersectivity, cap=5)


def test_criterion_2_gauss_magnitude():
    run(2, acceptance.check_2_gauss, cap=30)


def test_criterion_3_exact_vanishing():
    run(3, acceptance.check_3_vanishing, cap=60)


def test_criterion_4_crt_factorization():
    run(4, acceptance.check_4_crt, cap=60)


def test_criterion_5_content_bound():
    run(5, acceptance.check_5_content, cap=120)


def test_criterion_6_preimage():
    run(6, acceptance.check_6_preimage, cap=60)


def test_criterion_7_brun():
    run(7, acceptance.check_7_brun, cap=60)


def test_criterion_8_major_arc():
    run(8, acceptance.check_8_major_arc, cap=120)


def test_criterion_9_arc_machinery():
    run(9, acceptance.check_9_arcs, cap=120)


def test_criterion_10_density_increment():
    run(10, acceptance.check_10_increment, cap=30)


def test_criterion_11_verify_oracle():
    run(11, acceptance.check_11_verify_oracle, cap=60)


def test_criterion_12_modular_search():
    run(12, acceptance.check_12_modular, cap=120)


def test_criterion_13_trivial_construction():
    run(13, acceptance.check_13_trivial, cap=30)


def test_criterion_14_selftest_determinism():
    t0 = time.time()
    outputs = []
    for threads in ("1", "8"):
        proc = subprocess.run(
            [sys.executable, "-m", "ilab", "selftest", "--quick"],
            capture_output=True,
            text=True,
            env=subprocess_env(ILAB_THREADS=threads),
        )
        assert proc.returncode == 0, proc.stderr
        outputs.append(proc.stdout)
    elapsed = time.time() - t0
    identical = outputs[0] == outputs[1]
    status = "PASS" if identical else "FAIL"
    print(f"[acceptance] criterion 14: {status} (selftest determinism, {elapsed:.2f}s)")
    assert identical
    assert elapsed < 600
