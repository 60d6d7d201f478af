"""Quantified property suites run by ``vosper verify``.

Every suite returns a :class:`SuiteResult` listing each violated instance.
Randomised suites draw from ``random.Random(seed)`` so a fixed seed gives a
fixed corpus and byte-identical reports.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator, Optional

import numpy as np

from .audit import classify_literal_discrepancy, enumerate_and_audit, generating_subsets
from .bits import fmt, mask_of
from .cayley import (
    ARC_TRANSITIVE_EXCLUDED,
    classify_arc_transitive,
    classify_vosperian_cayley,
    coprogression_growth_holds,
    corollary_gcd_check,
    superconnecting_coprogression,
)
from .connectivity import (
    is_vosperian,
    isoperimetric_connectivity,
    k_fragments,
    vertex_connectivity,
)
from .digraph import Digraph, boundary, cayley_digraph, exterior, is_strongly_connected, reverse
from .groups import (
    FiniteGroup,
    is_aperiodic,
    is_left_periodic,
    minkowski_product,
    small_group_catalog,
)
from .oracle import connectivity_bruteforce, kappa_k_bruteforce, vosperian_by_definition
from .symmetry import is_arc_transitive, is_irreducible, is_vertex_transitive, twin_classes

DEFAULT_SEED = 42
MAX_REPORTED = 25


@dataclass
class SuiteResult:
    name: str
    seed: Optional[int] = None
    checked: int = 0
    violations: int = 0
    failures: list[str] = field(default_factory=list)
    findings: dict[str, int] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def check(self, ok: bool, message: Callable[[], str] | str) -> bool:
        self.checked += 1
        if not ok:
            self.violations += 1
            if len(self.failures) < MAX_REPORTED:
                self.failures.append(message() if callable(message) else message)
        return ok

    def finding(self, name: str) -> None:
        self.findings[name] = self.findings.get(name, 0) + 1

    def as_dict(self) -> dict:
        return {
            "suite": self.name,
            "seed": self.seed,
            "passed": self.passed,
            "checked": self.checked,
            "violations": self.violations,
            "failures": list(self.failures),
            "findings": dict(sorted(self.findings.items())),
            "notes": list(self.notes),
        }


# -- corpora -------------------------------------------------------------------


@lru_cache(maxsize=None)
def _catalog(max_order: int) -> tuple[FiniteGroup, ...]:
    return tuple(small_group_catalog(max_order))


@lru_cache(maxsize=None)
def _generating(g: FiniteGroup) -> tuple[int, ...]:
    return tuple(generating_subsets(g))


def catalog_cayley(max_order: int = 12) -> Iterator[tuple[FiniteGroup, int, Digraph]]:
    """Every ``Cay(G, S)`` with ``S`` generating and identity-free."""
    for g in _catalog(max_order):
        for s in _generating(g):
            yield g, s, cayley_digraph(g, s)


def random_strong_digraph(rng: random.Random, n: int) -> Digraph:
    """Arcs kept independently with a random density, resampled until strong."""
    p = rng.uniform(0.15, 0.6)
    while True:
        succ = [
            mask_of(v for v in range(n) if v != u and rng.random() < p) for u in range(n)
        ]
        d = Digraph.from_successors(succ, f"rand-strong(n={n})")
        if is_strongly_connected(d):
            return d


def _derangement(rng: random.Random, n: int) -> list[int]:
    while True:
        p = list(range(n))
        rng.shuffle(p)
        if all(p[i] != i for i in range(n)):
            return p


def random_regular_digraph(rng: random.Random, n: int, deg: int) -> Digraph:
    """Union of arc-disjoint derangements, resampled until strong.  Degrees
    above ``(n-1)/2`` are built as the complement of the low-degree case."""
    flip = 2 * deg > n - 1
    steps = n - 1 - deg if flip else deg
    while True:
        succ = [0] * n
        ok = True
        for _ in range(steps):
            for _ in range(50):
                p = _derangement(rng, n)
                if all(not succ[i] >> p[i] & 1 for i in range(n)):
                    break
            else:
                ok = False
                break
            for i in range(n):
                succ[i] |= 1 << p[i]
        if not ok:
            continue
        if flip:
            full = (1 << n) - 1
            succ = [full & ~succ[i] & ~(1 << i) for i in range(n)]
        d = Digraph.from_successors(succ, f"rand-regular(n={n},d={deg})")
        if is_strongly_connected(d):
            return d


def random_strong_corpus(seed: int, count: int = 200, max_n: int = 12) -> list[Digraph]:
    rng = random.Random(seed)
    return [random_strong_digraph(rng, rng.randint(2, max_n)) for _ in range(count)]


def random_regular_corpus(seed: int, count: int = 500, max_n: int = 10) -> list[Digraph]:
    rng = random.Random(seed + 1)
    out = []
    for _ in range(count):
        n = rng.randint(3, max_n)
        out.append(random_regular_digraph(rng, n, rng.randint(1, n - 2)))
    return out


def _describe(d: Digraph) -> str:
    return d.label or d.to_edge_list().replace("\n", " ")


# -- suites ----------------------------------------------------------------------


def suite_duality(seed: int = DEFAULT_SEED, max_order: int = 12) -> SuiteResult:
    """``κ_k(Γ) = κ_k(Γ⁻)`` for k = 1, 2, and every 2-fragment ``X`` has
    ``∂⁻(∇X) = ∂X`` and ``∇⁻(∇X) = X``."""
    res = SuiteResult("duality", seed)
    corpus = random_strong_corpus(seed)
    corpus += [d for _, _, d in catalog_cayley(max_order)]
    for d in corpus:
        rev = reverse(d)
        for k in (1, 2):
            a, b = isoperimetric_connectivity(d, k), isoperimetric_connectivity(rev, k)
            res.check(a == b, lambda: f"{_describe(d)}: kappa_{k} {a} vs reverse {b}")
        if isoperimetric_connectivity(d, 2) is None:
            continue
        for f in k_fragments(d, 2):
            y = exterior(d, f.x)
            res.check(
                boundary(rev, y) == f.boundary and exterior(rev, y) == f.x,
                lambda: f"{_describe(d)}: fragment {fmt(f.x)} breaks duality",
            )
    res.notes.append(f"{len(corpus)} digraphs ({len(corpus) - 200} Cayley)")
    return res


def suite_bounds(seed: int = DEFAULT_SEED, max_order: int = 12) -> SuiteResult:
    """Vertex-transitive: ``κ > d/2``; arc-transitive: ``κ = d``.  Symmetric
    connection sets additionally get the ``κ > 2d/3`` check."""
    res = SuiteResult("bounds", seed)
    vt = 0
    for g, s, d in catalog_cayley(max_order):
        deg = s.bit_count()
        kappa = vertex_connectivity(d, vertex_transitive=True)
        res.check(2 * kappa > deg, lambda: f"{d}: kappa={kappa} not > d/2")
        if s == g.inverse_set(s):
            res.check(3 * kappa > 2 * deg, lambda: f"{d}: symmetric, kappa={kappa} not > 2d/3")
        if is_arc_transitive(d):
            res.check(kappa == deg, lambda: f"{d}: arc-transitive, kappa={kappa} != d={deg}")
    for d in random_regular_corpus(seed):
        if not is_vertex_transitive(d):
            continue
        vt += 1
        deg = d.succ[0].bit_count()
        kappa = vertex_connectivity(d)
        res.check(2 * kappa > deg, lambda: f"{_describe(d)}: kappa={kappa} not > d/2")
        if is_arc_transitive(d):
            res.check(kappa == deg, lambda: f"{_describe(d)}: arc-transitive, kappa != d")
    res.notes.append(f"{vt} vertex-transitive random regular digraphs included")
    return res


def suite_lemma1(max_order: int = 12) -> SuiteResult:
    """Twins exist iff ``S`` is left-periodic; irreducible iff aperiodic.
    Runs over every identity-free ``S``, generating or not."""
    res = SuiteResult("lemma1")
    for g in _catalog(max_order):
        for s in range(1, g.full + 1):
            if s >> g.identity & 1:
                continue
            d = cayley_digraph(g, s)
            twins = not twin_classes(d).is_discrete()
            res.check(
                twins == is_left_periodic(g, s),
                lambda: f"{d}: twins={twins}, left-periodic={not twins}",
            )
            irr = is_irreducible(d)
            res.check(irr == is_aperiodic(g, s), lambda: f"{d}: irreducible={irr}")
    return res


def _lemma5_checks(res: SuiteResult, d: Digraph) -> None:
    n = d.n
    deg = d.succ[0].bit_count()
    for dd in (d, reverse(d)):
        classes = twin_classes(dd).classes
        union = 0
        for c in classes:
            res.check(not union & c, lambda: f"{dd}: twin classes overlap")
            union |= c
        res.check(union == dd.full, lambda: f"{dd}: twin classes do not cover V")
        sizes = {c.bit_count() for c in classes}
        res.check(len(sizes) == 1, lambda: f"{dd}: unequal twin class sizes {sorted(sizes)}")
        w = min(sizes)
        res.check(n % w == 0 and deg % w == 0, lambda: f"{dd}: |W|={w} vs n={n}, d={deg}")
        # Predecessor sets are unions of twin classes.
        for v in range(n):
            p = dd.pred[v]
            res.check(
                all(not c & p or c & p == c for c in classes),
                lambda: f"{dd}: pred({v}) splits a twin class",
            )
    if math.gcd(n, deg) == 1:
        res.check(is_irreducible(d), lambda: f"{d}: gcd(n,d)=1 but reducible")


def suite_lemma5(seed: int = DEFAULT_SEED, max_order: int = 12) -> SuiteResult:
    """Twin classes of vertex-transitive digraphs: a partition into equal
    classes whose size divides ``|V|`` and ``d``."""
    res = SuiteResult("lemma5", seed)
    for _, _, d in catalog_cayley(max_order):
        _lemma5_checks(res, d)
    for d in random_regular_corpus(seed):
        if is_vertex_transitive(d):
            _lemma5_checks(res, d)
    return res


def suite_lemma4(seed: int = DEFAULT_SEED, pairs: int = 10_000, max_order: int = 12) -> SuiteResult:
    """``|A| + |B| > |G|`` forces ``AB = G``."""
    res = SuiteResult("lemma4", seed)
    rng = random.Random(seed)
    groups = [g for g in _catalog(max_order) if g.order > 1]
    for _ in range(pairs):
        g = rng.choice(groups)
        n = g.order
        a_size = rng.randint(1, n)
        b_size = rng.randint(n - a_size + 1, n)
        a = mask_of(rng.sample(range(n), a_size))
        b = mask_of(rng.sample(range(n), b_size))
        res.check(
            minkowski_product(g, a, b) == g.full,
            lambda: f"{g.label}: A={fmt(a)} B={fmt(b)} gives AB != G",
        )
    return res


def _rot(x: np.ndarray, t: int, n: int) -> np.ndarray:
    t %= n
    if t == 0:
        return x
    full = np.uint64((1 << n) - 1)
    return ((x << np.uint64(t)) | (x >> np.uint64(n - t))) & full


def _is_progression(a: np.ndarray, r: int, n: int) -> np.ndarray:
    """Whether each mask is ``{c, c+r, ..., c+(m-1)r}`` in ``Z_n`` (r a unit)."""
    heads = a & ~_rot(a, r, n)
    return (np.bitwise_count(heads) == 1) | (a == np.uint64((1 << n) - 1))


def _ap_check_masks(res: SuiteResult, n: int, r: int, a: np.ndarray) -> int:
    """Check every ``B = {0, r, ..., (L-1)r}`` with ``L >= 2`` against masks ``a``."""
    qualifying = 0
    sizes = np.bitwise_count(a).astype(np.int64)
    prog = _is_progression(a, r, n)
    ab = a.copy()
    for length in range(2, n):
        ab = ab | _rot(a, r * (length - 1), n)
        hit = (np.bitwise_count(ab).astype(np.int64) == sizes + length - 1) & (
            sizes + length - 1 < n
        ) & (sizes > 0)
        qualifying += int(hit.sum())
        bad = hit & ~prog
        count = int(bad.sum())
        res.checked += int(hit.sum())
        if count:
            res.violations += count
            for m in np.nonzero(bad)[0][: MAX_REPORTED - len(res.failures)]:
                res.failures.append(f"Z{n}, r={r}, |B|={length}: A={fmt(int(a[m]))} not a progression")
    return qualifying


def suite_lemma_ap(
    seed: int = DEFAULT_SEED, exhaustive_max: int = 20, max_order: int = 30, samples: int = 20_000
) -> SuiteResult:
    """``|AB| = |A| + |B| - 1 < |G|`` with ``B`` a ratio-r progression of
    length at least 2 in a cyclic group forces ``A`` to be one as well.

    Translating ``B`` only translates ``AB``, so ``B`` starts at 0.  Small
    orders are exhaustive over every ``A``; larger orders are sampled with a
    mix of uniform sets and perturbed progressions.
    """
    res = SuiteResult("lemmaAP", seed)
    rng = np.random.default_rng(seed)
    qualifying = 0
    for n in range(3, max_order + 1):
        units = [r for r in range(1, n) if math.gcd(r, n) == 1]
        if n <= exhaustive_max:
            a = np.arange(1, 1 << n, dtype=np.uint64)
            ratios = units if n <= 16 else [1]
        else:
            a = _ap_samples(rng, n, samples)
            ratios = units
        for r in ratios:
            qualifying += _ap_check_masks(res, n, r, a)
    res.notes.append(f"{qualifying} qualifying (A, B) pairs; exhaustive up to order {exhaustive_max}")
    res.notes.append("B of length 1 is excluded: then |AB| = |A| for every A")
    return res


def _ap_samples(rng: np.random.Generator, n: int, count: int) -> np.ndarray:
    full = (1 << n) - 1
    bits = rng.random((count, n)) < rng.random((count, 1))
    weights = (1 << np.arange(n, dtype=np.uint64)).astype(np.uint64)
    uniform = (bits.astype(np.uint64) * weights).sum(axis=1, dtype=np.uint64)
    # Intervals with one element flipped: near misses for the progression test.
    starts = rng.integers(0, n, count)
    lengths = rng.integers(1, n, count)
    flips = rng.integers(0, n, count)
    near = []
    for s, ln, f in zip(starts, lengths, flips):
        iv = sum(1 << ((int(s) + j) % n) for j in range(int(ln)))
        near.append((iv ^ (1 << int(f))) & full)
    out = np.concatenate([uniform, np.array(near, dtype=np.uint64)])
    return out[out != 0]


def suite_thm4(max_order: int = 12) -> SuiteResult:
    """Arc-transitive Cayley digraphs in range: vosperian iff irreducible.
    The coprime-order corollary is recorded alongside, not asserted."""
    res = SuiteResult("thm4")
    in_range = 0
    for _, s, d in catalog_cayley(max_order):
        deg = s.bit_count()
        if deg in ARC_TRANSITIVE_EXCLUDED or deg > d.n - 4:
            cor = corollary_gcd_check(d) if deg not in (2, 4, 6) else None
            if cor is not None and not is_vosperian(d):
                res.finding(f"coprime corollary predicts vosperian, fails at degree {deg}")
            continue
        if not is_arc_transitive(d):
            continue
        in_range += 1
        pred = classify_arc_transitive(d)
        actual = is_vosperian(d)
        res.check(pred == actual, lambda: f"{d}: predicted {pred}, vosperian={actual}")
        cor = corollary_gcd_check(d)
        if cor is not None and cor != actual:
            res.finding(f"coprime corollary predicts vosperian, fails at degree {deg}")
    res.notes.append(f"{in_range} arc-transitive instances in range")
    return res


def _audit_suite(name: str, max_order: int, pick) -> SuiteResult:
    res = SuiteResult(name)
    for rec in enumerate_and_audit(max_order, use_oracle=True):
        picked = pick(rec)
        if picked is None:
            continue
        ok, findings = picked
        res.check(ok, lambda: f"{rec.group} S={list(rec.subset)}: {'; '.join(rec.failures)}")
        for f in findings:
            res.finding(f)
    return res


def suite_thm6(max_order: int = 10) -> SuiteResult:
    """Classifier, κ_2 decider and literal definition agree on vosperianity."""

    def pick(rec):
        ok = rec.vosperian_thm == rec.vosperian_decider == rec.vosperian_oracle
        return ok, [f for f in rec.findings if f.startswith("literal-definition")]

    return _audit_suite("thm6", max_order, pick)


def suite_thm7(max_order: int = 10) -> SuiteResult:
    """Classifier, decider and definition agree on superconnectivity (aperiodic S)."""

    def pick(rec):
        if not rec.aperiodic:
            return None
        ok = rec.superconn_thm == rec.superconn_decider == rec.superconn_oracle
        return ok, []

    return _audit_suite("thm7", max_order, pick)


def suite_exercise_kappa2(seed: int = DEFAULT_SEED, max_order: int = 10) -> SuiteResult:
    """The κ_2 characterisation of vosperianity against the literal definition,
    on Cayley digraphs and on random regular digraphs."""
    res = SuiteResult("exercise-kappa2", seed)
    corpus = [d for _, _, d in catalog_cayley(max_order)] + random_regular_corpus(seed)
    for d in corpus:
        a, b = is_vosperian(d), vosperian_by_definition(d)
        res.check(a == b, lambda: f"{_describe(d)}: kappa2 decider {a}, definition {b}")
        if a != b:
            res.finding(classify_literal_discrepancy(d))
    return res


def suite_eq2(max_order: int = 12) -> SuiteResult:
    """Every coprogression witness emitted with ``|S| <= |G| - 4`` grows by
    exactly two under ``{1, r}``."""
    res = SuiteResult("eq2")
    for g in _catalog(max_order):
        for s in _generating(g):
            verdict = classify_vosperian_cayley(g, s)
            emitted = [verdict.coprogression_witness, superconnecting_coprogression(g, s)]
            for w in emitted:
                if w is None:
                    continue
                res.check(
                    s.bit_count() <= g.order - 4 and coprogression_growth_holds(g, s, w),
                    lambda: f"{g.label} S={fmt(s)}: r={w.ratio} breaks |{{1,r}}S~| = |S|+2",
                )
    return res


def suite_equivalence(seed: int = DEFAULT_SEED, max_n: int = 10) -> SuiteResult:
    """Flow connectivity and subset-scan κ_k against the brute-force oracles;
    the merged-pair flow route for κ_k is checked too."""
    res = SuiteResult("equivalence", seed)
    corpus = [d for _, _, d in catalog_cayley(max_n)]
    corpus += [d for d in random_strong_corpus(seed) if d.n <= max_n]
    corpus += random_regular_corpus(seed, max_n=max_n)
    for d in corpus:
        a, b = vertex_connectivity(d), connectivity_bruteforce(d)
        res.check(a == b, lambda: f"{_describe(d)}: flow kappa {a}, brute force {b}")
        for k in (1, 2):
            want = kappa_k_bruteforce(d, k)
            for method in ("exhaustive", "flow"):
                got = isoperimetric_connectivity(d, k, method=method)
                res.check(
                    got == want,
                    lambda: f"{_describe(d)}: kappa_{k} {method} {got}, brute force {want}",
                )
    res.notes.append(f"{len(corpus)} digraphs with n <= {max_n}")
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "duality": suite_duality,
    "bounds": suite_bounds,
    "lemma1": suite_lemma1,
    "lemma4": suite_lemma4,
    "lemma5": suite_lemma5,
    "lemmaAP": suite_lemma_ap,
    "thm4": suite_thm4,
    "thm6": suite_thm6,
    "thm7": suite_thm7,
    "exercise-kappa2": suite_exercise_kappa2,
    "eq2": suite_eq2,
    "equivalence": suite_equivalence,
}

SEEDED = {"duality", "bounds", "lemma4", "lemma5", "lemmaAP", "exercise-kappa2", "equivalence"}


def run_suite(name: str, seed: int = DEFAULT_SEED) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(name)
    fn = SUITES[name]
    return fn(seed) if name in SEEDED else fn()
