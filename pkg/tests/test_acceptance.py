"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line in ``conftest.ACCEPTANCE``; the lines are
printed at the end of the pytest run.  ``python3 tests/test_acceptance.py``
runs the same checks without pytest.
"""

from __future__ import annotations

import sys
import time
from collections import Counter

import pytest

import conftest
from conftest import cay
from vosper.audit import classify_literal_discrepancy, enumerate_and_audit
from vosper.bits import mask_of
from vosper.cayley import classify_superconnected_cayley, classify_vosperian_cayley
from vosper.connectivity import connectivity_profile, is_k_separable
from vosper.groups import make_cyclic
from vosper.oracle import (
    connectivity_bruteforce,
    kappa_k_bruteforce,
    superconnected_by_definition,
    vosperian_by_definition,
)
from vosper.suites import SuiteResult, run_suite
from vosper.symmetry import is_irreducible


def record(number: int, ok: bool, detail: str) -> None:
    conftest.ACCEPTANCE[number] = (ok, detail)
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")


def timed_suites(*names: str) -> tuple[list[SuiteResult], float]:
    start = time.perf_counter()
    results = [run_suite(n) for n in names]
    return results, time.perf_counter() - start


def suite_detail(results: list[SuiteResult], elapsed: float) -> str:
    parts = [f"{r.name}: {r.checked} checks, {r.violations} violations" for r in results]
    return "; ".join(parts) + f" ({elapsed:.1f}s)"


_AUDIT: dict[str, object] = {}


@pytest.fixture(scope="module")
def audit10():
    if "records" not in _AUDIT:
        start = time.perf_counter()
        _AUDIT["records"] = enumerate_and_audit(10, use_oracle=True)
        _AUDIT["elapsed"] = time.perf_counter() - start
    return _AUDIT["records"], _AUDIT["elapsed"]


def test_criterion_01_vosperian_three_way_agreement(audit10):
    records, elapsed = audit10
    bad = [
        r
        for r in records
        if not (r.vosperian_thm == r.vosperian_decider == r.vosperian_oracle)
    ]
    # Name every disagreement; the |V|-3 clause is already built into the oracle.
    kinds = Counter(
        classify_literal_discrepancy(cay(r.group, r.subset)) for r in bad
    )
    ok = not bad and elapsed < 600
    detail = (
        f"{len(records)} instances, {len(bad)} disagreements {dict(kinds)}, {elapsed:.1f}s"
    )
    record(1, ok, detail)
    assert not bad, detail
    assert elapsed < 600


def test_criterion_02_superconnected_three_way_agreement(audit10):
    records, elapsed = audit10
    aperiodic = [r for r in records if r.aperiodic]
    bad = [
        r
        for r in aperiodic
        if not (r.superconn_thm == r.superconn_decider == r.superconn_oracle)
    ]
    ok = not bad and elapsed < 900
    record(2, ok, f"{len(aperiodic)} aperiodic instances, {len(bad)} disagreements")
    assert not bad
    assert elapsed < 900


def test_criterion_03_arc_transitive_characterisation():
    results, elapsed = timed_suites("thm4")
    ok = all(r.passed for r in results) and results[0].checked > 0
    record(3, ok, suite_detail(results, elapsed))
    assert ok, results[0].failures


def test_criterion_04_duality():
    results, elapsed = timed_suites("duality")
    ok = all(r.passed for r in results) and elapsed < 120
    record(4, ok, suite_detail(results, elapsed))
    assert all(r.passed for r in results), results[0].failures
    assert elapsed < 120


def test_criterion_05_connectivity_bounds():
    results, elapsed = timed_suites("bounds")
    ok = all(r.passed for r in results)
    record(5, ok, suite_detail(results, elapsed))
    assert ok, results[0].failures


def test_criterion_06_twins():
    results, elapsed = timed_suites("lemma1", "lemma5")
    ok = all(r.passed for r in results)
    record(6, ok, suite_detail(results, elapsed))
    assert ok, [r.failures for r in results]


def test_criterion_07_sumsets():
    results, elapsed = timed_suites("lemma4", "lemmaAP")
    ok = all(r.passed for r in results) and elapsed < 120
    record(7, ok, suite_detail(results, elapsed))
    assert all(r.passed for r in results), [r.failures for r in results]
    assert elapsed < 120


def test_criterion_08_coprogression_growth():
    results, elapsed = timed_suites("eq2")
    ok = all(r.passed for r in results) and results[0].checked > 0
    record(8, ok, suite_detail(results, elapsed))
    assert ok, results[0].failures


def test_criterion_09_algorithm_equivalence():
    results, elapsed = timed_suites("equivalence")
    ok = all(r.passed for r in results)
    record(9, ok, suite_detail(results, elapsed))
    assert ok, results[0].failures


# (label, group, subset, frozen values).  Every value is first recomputed by
# the brute-force oracles, then by the production code.
NAMED = [
    ("C5", "Z5", [1], {"kappa": 1, "kappa2": 1, "vosperian": False, "superconnected": True}),
    ("K5", "Z5", [1, 2, 3, 4], {"kappa": 4, "separable2": False, "vosperian": True}),
    (
        "Cay(Z7,{1,2,3})",
        "Z7",
        [1, 2, 3],
        {
            "kappa": 3,
            "kappa2": 3,
            "vosperian": False,
            "condition": "cond_iii",
            "superconnected": True,
            "via": "coprogression",
        },
    ),
    (
        "Cay(Z4,{1,3})",
        "Z4",
        [1, 3],
        {"irreducible": False, "vosperian": False, "superconnected": True},
    ),
]


def oracle_values(group: str, subset: list[int]) -> dict:
    d = cay(group, subset)
    return {
        "kappa": connectivity_bruteforce(d),
        "kappa2": kappa_k_bruteforce(d, 2),
        "separable2": kappa_k_bruteforce(d, 2) is not None,
        "vosperian": vosperian_by_definition(d),
        "superconnected": superconnected_by_definition(d),
        "irreducible": is_irreducible(d),
    }


def production_values(group: str, subset: list[int]) -> dict:
    d = cay(group, subset)
    g, s = make_cyclic(d.n), mask_of(subset)
    p = connectivity_profile(d)
    v = classify_vosperian_cayley(g, s)
    out = {
        "kappa": p.kappa,
        "kappa2": p.kappa2,
        "separable2": is_k_separable(d, 2),
        "vosperian": p.vosperian,
        "superconnected": p.superconnected,
        "irreducible": is_irreducible(d),
        "condition": v.condition,
    }
    try:
        out["via"] = classify_superconnected_cayley(g, s).via
    except ValueError:
        out["via"] = None
    return out


def test_criterion_10_named_instances():
    mismatches = []
    for label, group, subset, frozen in NAMED:
        oracle = oracle_values(group, subset)
        prod = production_values(group, subset)
        for key, want in frozen.items():
            if key in oracle and oracle[key] != want:
                mismatches.append(f"{label} {key}: frozen {want}, oracle {oracle[key]}")
            if prod[key] != want:
                mismatches.append(f"{label} {key}: frozen {want}, computed {prod[key]}")
    detail = "all named values confirmed" if not mismatches else "; ".join(mismatches)
    record(10, not mismatches, detail)
    assert not mismatches, detail


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
