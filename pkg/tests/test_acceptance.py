"""Acceptance suite: one test per criterion, each reporting a PASS/FAIL line.

The lines are printed as the test runs (visible with ``-s``) and again in the
terminal summary via ``conftest.py``.
"""
import itertools
import json
import subprocess
import sys
import time
from pathlib import Path

import pytest

from oracles import brute_lengths_imag
from orderscope.abelian import parse_group
from orderscope.localmonoid import UNBOUNDED, LocalState, condition_b, local_context
from orderscope.ordercore import order_context
from orderscope.quadfield import QuadField
from orderscope.transfer import (beta, compare_lengths, consistency_violations, decide,
                                 is_R_atom, lengths_in_order, oracle_check, r_elements,
                                 verify_T1)
from orderscope.zerosum import davenport, is_atom, length_set, parse_sequence

RESULTS: dict[int, bool] = {}
SWEEP = list(itertools.product((-6, -5, -3, -2, -1, 2, 3, 5, 6, 7, 10, 13), (2, 3, 4, 5)))
GOLDEN = Path(__file__).parent / "golden"


def report(n: int, failures: list[str]):
    RESULTS[n] = not failures
    print(f"criterion {n}: {'PASS' if not failures else 'FAIL'}")
    assert not failures, "\n".join(failures[:20])


def test_criterion_1_verdicts_agree_with_verifiers():
    failures = []
    for d, f in SWEEP:
        o = order_context(d, f)
        v = decide(o)
        r = oracle_check(o, 400, v)
        if not r["agrees"]:
            failures.append(f"d={d} f={f}: {v.verdict} disagrees with verifiers {r}")
        elif v.is_transfer_krull and (r["t2"]["witness"] or not r["t1"]["holds"]):
            failures.append(f"d={d} f={f}: positive verdict with a witness")
    report(1, failures)


def test_criterion_2_named_fixtures():
    failures = []
    # Z[sqrt 5]
    o = order_context(5, 2)
    if not decide(o).is_transfer_krull:
        failures.append("d=5 f=2 not transfer Krull")
    c = compare_lengths(o, 400)
    if not (c["ok"] and c["all_singletons"]):
        failures.append(f"d=5 f=2 length comparison {c}")
    # Z[3i]
    v = decide(order_context(-1, 3))
    if v.is_transfer_krull or v.condition_a.holds or v.condition_a.witness is None:
        failures.append("d=-1 f=3 lacks a residue witness")
    if verify_T1(order_context(-1, 3))["holds"]:
        failures.append("d=-1 f=3 passes the surjectivity check")
    # Z[2i]
    o = order_context(-1, 2)
    if decide(o).is_transfer_krull:
        failures.append("d=-1 f=2 marked transfer Krull")
    L = lengths_in_order(o, o.field(8))
    if L != {2, 3} or L != brute_lengths_imag(-1, 2, (8, 0)):
        failures.append(f"d=-1 f=2 L(8) = {sorted(L)}")
    # Z[2 sqrt 2]
    v = decide(order_context(2, 2))
    w = v.condition_b.witness
    if v.is_transfer_krull or v.branch != 1 or w is None or w.valuation != 2:
        failures.append("d=2 f=2 lacks the valuation-2 local witness")
    # frozen golden reports
    for d, f in [(5, 2), (-1, 3), (-1, 2), (2, 2)]:
        g = json.loads((GOLDEN / f"analyze_d{d}f{f}.json").read_text())
        v = decide(order_context(d, f))
        if g["verdict"] != v.verdict or g["condition_a"] != v.condition_a.to_dict() \
                or g["condition_b"] != v.condition_b.to_dict():
            failures.append(f"golden report for d={d} f={f} drifted")
    report(2, failures)


def test_criterion_3_zero_sum_engine():
    failures = []
    cases = [(str(n), n) for n in range(2, 13)] + [("2,2", 3), ("3,3", 5)]
    for group, expected in cases:
        t = time.perf_counter()
        got = davenport(parse_group(group))
        elapsed = time.perf_counter() - t
        if got != expected or elapsed >= 60:
            failures.append(f"D({group}) = {got} in {elapsed:.1f}s")
    S = parse_sequence(parse_group("3"), "(1)x4 (2)x4")
    if length_set(S) != {3, 4}:
        failures.append(f"L((1)^4 (2)^4) = {length_set(S)}")
    report(3, failures)


def _rank_one_violations(l):
    out = []
    atoms, profile = l.local_atoms()
    (alpha,) = l.alpha
    if profile is UNBOUNDED or max(profile) >= 2 * alpha:
        out.append(f"atom valuations {profile} reach 2*alpha = {2 * alpha}")
    for v in range(l.cap + 1):
        for q in range(len(l.quotient_reps)):
            s = LocalState((v,), q)
            member = l.is_member(s)
            if v == 0 and member != l.is_unit(s):
                out.append(f"valuation-0 state {q} is a non-unit member")
            if v >= alpha and not member:
                out.append(f"state ({v},{q}) above alpha is not absorbed")
    return out


def test_criterion_4_structural_invariants():
    failures = []
    for d in (-5, -1, 10):
        K = QuadField(d)
        xs = r_elements(K, 200)
        for x in xs:
            if is_R_atom(K, x) != is_atom(beta(K, x)):
                failures.append(f"d={d}: atom mismatch at {x}")
        for x, y in itertools.product(xs, repeat=2):
            if abs(x.norm() * y.norm()) <= 200 and beta(K, x * y) != beta(K, x) * beta(K, y):
                failures.append(f"d={d}: beta not multiplicative at {x}, {y}")
    for d, f in SWEEP:
        o = order_context(d, f)
        for p in sorted({p for p in (2, 3, 5) if f % p == 0}):
            l = local_context(o, p)
            if l.rank == 1:
                failures += [f"d={d} f={f} p={p}: {m}" for m in _rank_one_violations(l)]
            else:
                s = l.large_atom(10)
                if s is None or max(s.valuations) <= 10 or not l.is_atom_state(s):
                    failures.append(f"d={d} f={f} p={p}: no atom beyond valuation 10")
        failures += [f"d={d} f={f}: {m}" for m in consistency_violations(o)]
    report(4, failures)


def _cli(*argv):
    p = subprocess.run([sys.executable, "-m", "orderscope", *argv], capture_output=True,
                       timeout=600)
    return p.returncode, p.stdout


def test_criterion_5_determinism():
    failures = []
    commands = [
        ("analyze", "--d=-5", "--f=2", "--json", "--verify", "--norm-bound", "200"),
        ("zerosum", "--group", "3,3", "--davenport", "--json"),
        ("verify-t2", "--d=5", "--f=4", "--norm-bound", "200", "--json"),
        ("lengths", "--d=-1", "--f=2", "--element", "8", "--json"),
    ]
    for argv in commands:
        a, b = _cli(*argv), _cli(*argv)
        if a != b or a[0] != 0:
            failures.append(f"{' '.join(argv)} not reproducible")
    sweep = ("sweep", "--d=-6..13", "--f=2..5", "--json", "--verify", "--norm-bound", "100")
    serial = _cli(*sweep)
    parallel = _cli(*sweep, "--jobs", "4")
    if serial != parallel or serial[0] != 0:
        failures.append("parallel sweep differs from serial sweep")
    if serial != _cli(*sweep):
        failures.append("serial sweep not reproducible")
    report(5, failures)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-s", "-q"]))
