"""One test per acceptance criterion.  Each prints a single PASS/FAIL line."""

import dataclasses
import subprocess
import sys
import time

from conftest import ACCEPTANCE_LINES
from prcat import corpus as K
from prcat import laws as L
from prcat import muwhile as M


def report(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def timed(fn, *args):
    t = time.perf_counter()
    r = fn(*args)
    return r, time.perf_counter() - t


def summary(r: L.SuiteResult, secs=None) -> str:
    s = f"passed={r.passed} failed={r.failed} indeterminate={r.indeterminate}"
    if secs is not None:
        s += f" time={secs:.1f}s"
    if r.failures:
        s += f" first_failure={r.failures[0]!r}"
    return s


def clean(r: L.SuiteResult) -> bool:
    return r.failed == 0 and r.indeterminate == 0 and r.passed > 0


def test_criterion_1_arithmetic_oracles():
    r, secs = timed(L.arith_oracles, 0, 1000)
    report(1, clean(r) and secs < 10, summary(r, secs))


def test_criterion_2_arithmetic_laws():
    r, secs = timed(L.arithmetic_laws, 0, 500)
    report(2, clean(r) and r.passed >= 19 and secs < 10, summary(r, secs))


def test_criterion_3_godement_fourman():
    r = L.godement_fourman(0, 50, 200, 6)
    report(3, clean(r) and r.passed >= 150, summary(r))


def test_criterion_4_goodstein():
    r = L.goodstein(0, 100, 200)
    report(4, clean(r) and r.passed >= 125, summary(r))


def test_criterion_5_freyd():
    r = L.freyd(0, 20, 200)
    # 20 satisfied instances plus two deliberately broken ones reported vacuous
    report(5, clean(r) and r.passed == 22, summary(r))


def test_criterion_6_partiality():
    r = L.partiality(0, 20, 100, 100_000)
    report(6, clean(r), summary(r))


def test_criterion_7_iteration():
    r, secs = timed(L.iteration, 0, 10, 100, 20, 10**6)
    report(7, clean(r) and r.passed == 1000 and secs < 60, summary(r, secs))


def test_criterion_8_closure():
    r = L.closure(0, 20, 100)
    probes, unknown = r.notes["probes"], r.notes["indeterminate_probes"]
    ok = r.failed == 0 and probes >= 20 * 2 * 100 and unknown <= 0.05 * probes
    report(8, ok, summary(r) + f" probes={probes} indeterminate_probes={unknown}")


def test_criterion_9_mu():
    r = L.mu_suite(0, 200, 100_000)
    # 200 ceiling-sqrt probes plus the minimality and inclusion instances
    report(9, clean(r) and r.passed > 200, summary(r))


def test_criterion_10_church():
    corpus = K.flat_partial_maps()
    r = L.church(0, 100, 10**6)
    probes, unknown = r.notes["probes"], r.notes["indeterminate_probes"]
    has = {"partial-sub", "halving", "succ"} <= set(corpus)
    ok = clean(r) and len(corpus) >= 10 and has and unknown <= 0.05 * probes
    report(10, ok, summary(r) + f" maps={len(corpus)} probes={probes} indeterminate_probes={unknown}")


def while_depth(p) -> int:
    if isinstance(p, M.While):
        return 1 + while_depth(p.body)
    kids = (getattr(p, f.name) for f in dataclasses.fields(p))
    return max((while_depth(k) for k in kids if isinstance(k, M.LoopProgram)), default=0)


def test_criterion_11_normalization():
    progs = K.loop_programs()
    nested = [n for n, p in progs.items() if while_depth(p) >= 2]
    r, secs = timed(L.normalization, 0, 200, 10**6)
    ok = clean(r) and len(progs) >= 15 and nested and secs < 120
    report(11, ok, summary(r, secs) + f" programs={len(progs)} nested={','.join(nested)}")


def test_criterion_12_while():
    r = L.while_suite(0, 200, 100_000)
    report(12, clean(r), summary(r))


def test_criterion_13_selftest_determinism():
    cmd = [sys.executable, "-m", "prcat.cli", "selftest", "--json", "--seed", "7"]
    procs = [subprocess.Popen(cmd, stdout=subprocess.PIPE) for _ in range(2)]
    outs = [p.communicate()[0] for p in procs]
    ok = outs[0] == outs[1] and outs[0].count(b"\n") == len(L.SUITE_NAMES)
    report(13, ok, f"bytes={len(outs[0])} identical={outs[0] == outs[1]}")
