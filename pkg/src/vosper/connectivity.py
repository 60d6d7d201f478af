"""Vertex connectivity, isoperimetric connectivities and fragments, and the
vosperian / superconnected deciders built on them.

Exhaustive subset scans are vectorised with numpy: ``Γ(X)`` for every ``X`` is
assembled from two lookup tables (low and high vertex halves), so a scan costs
``2^n`` word operations rather than ``2^n`` Python iterations.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Literal, Optional

import numpy as np

from .bits import canonical_key, fmt, iter_members, members
from .digraph import (
    Digraph,
    boundary,
    degree_profile,
    exterior,
    is_strongly_connected,
    reverse,
)
from .errors import PreconditionError

Sign = Literal["positive", "negative"]

# Above this, kappa_k switches from subset scanning to merged-pair vertex cuts.
EXHAUSTIVE_LIMIT = 20
# Hard ceiling for anything that must enumerate all subsets.
SCAN_CEILING = 28
_LOW_BITS = 16


@dataclass(frozen=True)
class Fragment:
    x: int
    boundary: int
    exterior: int
    k: int
    sign: Sign = "positive"

    @property
    def size(self) -> int:
        return self.x.bit_count()

    def as_dict(self) -> dict:
        return {
            "set": members(self.x),
            "boundary": members(self.boundary),
            "exterior": members(self.exterior),
            "k": self.k,
            "sign": self.sign,
        }

    def __str__(self) -> str:
        return f"{fmt(self.x)} ∂={fmt(self.boundary)} ∇={fmt(self.exterior)}"


@dataclass(frozen=True)
class ConnectivityProfile:
    kappa: int
    kappa2: Optional[int]
    degree: int
    vosperian: bool
    superconnected: bool
    witness_fragment: Optional[Fragment] = None
    witness_cutset: Optional[int] = None

    def as_dict(self) -> dict:
        return {
            "kappa": self.kappa,
            "kappa2": self.kappa2,
            "degree": self.degree,
            "vosperian": self.vosperian,
            "superconnected": self.superconnected,
            "witness_fragment": self.witness_fragment.as_dict() if self.witness_fragment else None,
            "witness_cutset": members(self.witness_cutset) if self.witness_cutset is not None else None,
        }


# -- vertex cuts via max flow ------------------------------------------------


def min_vertex_separator(d: Digraph, sources: int, sinks: int) -> Optional[tuple[int, int]]:
    """Smallest ``T`` disjoint from both terminal sets such that no path in
    ``V \\ T`` leads from ``sources`` to ``sinks``.

    Returns ``(|T|, T)``, or ``None`` when an arc joins the terminal sets
    directly (no separator exists).  Menger via unit vertex capacities on the
    split digraph, augmenting along BFS paths.
    """
    if sources & sinks:
        raise ValueError("terminal sets overlap")
    if d.out_neighbourhood(sources) & sinks:
        return None
    n = d.n
    src, snk = 2 * n, 2 * n + 1
    big = n + 1
    cap: list[dict[int, int]] = [{} for _ in range(2 * n + 2)]

    def add(a: int, b: int, c: int) -> None:
        cap[a][b] = cap[a].get(b, 0) + c
        cap[b].setdefault(a, 0)

    terminals = sources | sinks
    for v in range(n):
        add(2 * v, 2 * v + 1, big if terminals >> v & 1 else 1)
        for w in iter_members(d.succ[v]):
            add(2 * v + 1, 2 * w, big)
    for s in iter_members(sources):
        add(src, 2 * s, big)
    for t in iter_members(sinks):
        add(2 * t + 1, snk, big)

    flow = 0
    while True:
        parent = {src: src}
        queue = deque([src])
        while queue and snk not in parent:
            a = queue.popleft()
            for b, c in cap[a].items():
                if c > 0 and b not in parent:
                    parent[b] = a
                    queue.append(b)
        if snk not in parent:
            break
        b = snk
        while b != src:
            a = parent[b]
            cap[a][b] -= 1
            cap[b][a] += 1
            b = a
        flow += 1
    cut = 0
    for v in range(n):
        if 2 * v in parent and 2 * v + 1 not in parent:
            cut |= 1 << v
    return flow, cut


def minimum_cutset(d: Digraph, vertex_transitive: bool = False) -> tuple[int, Optional[int]]:
    """``(κ, T)`` with ``T`` a minimum cutset, or ``(n-1, None)`` if none exists.

    Only pairs ``(x, y)`` with ``x`` among the first ``κ+1`` vertices are
    examined: a minimum cutset misses one of them, and that vertex is cut off
    from, or cannot be reached from, some other survivor.  For a
    vertex-transitive digraph (the caller vouches) ``x = 0`` suffices.
    """
    n = d.n
    best, best_cut = max(n - 1, 0), None
    last = 0 if vertex_transitive else n - 1
    x = 0
    while x <= last and x <= best:
        bx = 1 << x
        for y in range(n):
            if y == x:
                continue
            by = 1 << y
            for a, b in ((bx, by), (by, bx)):
                res = min_vertex_separator(d, a, b)
                if res is not None and res[0] < best:
                    best, best_cut = res
        x += 1
    return best, best_cut


def vertex_connectivity(d: Digraph, vertex_transitive: bool = False) -> int:
    """Minimum cutset size, with ``min(∅) = |V| - 1``."""
    return minimum_cutset(d, vertex_transitive)[0]


# -- exhaustive subset scans -------------------------------------------------


def _gamma_table(succ: tuple[int, ...], offset: int, count: int) -> np.ndarray:
    """``table[m] = Γ({offset + i : bit i of m})`` for ``m < 2**count``."""
    table = np.zeros(1 << count, dtype=np.uint64)
    for i in range(count):
        half = 1 << i
        table[half : 2 * half] = table[:half] | np.uint64(succ[offset + i])
    return table


def _scan(d: Digraph) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Yield ``(X, Γ(X))`` arrays covering every subset ``X`` of ``V``."""
    n = d.n
    if n > SCAN_CEILING:
        raise PreconditionError(f"subset scan refused for n={n} > {SCAN_CEILING}")
    low = min(n, _LOW_BITS)
    high = n - low
    gamma_low = _gamma_table(d.succ, 0, low)
    gamma_high = _gamma_table(d.succ, low, high)
    base = np.arange(1 << low, dtype=np.uint64)
    for h in range(1 << high):
        hi = np.uint64(h << low)
        yield base | hi, gamma_low | gamma_high[h]


def _separation_sizes(d: Digraph, xs: np.ndarray, gam: np.ndarray):
    full = np.uint64(d.full)
    xsize = np.bitwise_count(xs)
    bsize = np.bitwise_count(gam & ~xs)
    esize = np.bitwise_count(full & ~(xs | gam))
    return xsize, bsize, esize


def _kappa_k_scan(d: Digraph, k: int) -> Optional[int]:
    best = None
    for xs, gam in _scan(d):
        xsize, bsize, esize = _separation_sizes(d, xs, gam)
        ok = (xsize >= k) & (esize >= k)
        if ok.any():
            m = int(bsize[ok].min())
            best = m if best is None else min(best, m)
    return best


def _kappa_k_flow(d: Digraph, k: int) -> Optional[int]:
    """Minimum over disjoint k-sets ``X0``, ``Y0`` of the ``X0 -> Y0`` vertex cut.

    A separator ``T`` yields ``X`` = everything reachable from ``X0`` off ``T``,
    with ``∂X ⊆ T`` and ``Y0 ⊆ ∇X``; conversely ``∂X`` separates any k-subset
    of ``X`` from any k-subset of ``∇X``.
    """
    best = None
    for xs in itertools.combinations(range(d.n), k):
        a = sum(1 << v for v in xs)
        rest = [v for v in range(d.n) if not a >> v & 1]
        for ys in itertools.combinations(rest, k):
            b = sum(1 << v for v in ys)
            res = min_vertex_separator(d, a, b)
            if res is not None and (best is None or res[0] < best):
                best = res[0]
    return best


def isoperimetric_connectivity(
    d: Digraph, k: int, method: Literal["auto", "exhaustive", "flow"] = "auto"
) -> Optional[int]:
    """``κ_k``: least ``|∂X|`` over ``X`` with ``min(|X|, |∇X|) >= k``.

    ``None`` when the digraph is not k-separable.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if method == "auto":
        method = "exhaustive" if d.n <= EXHAUSTIVE_LIMIT else "flow"
    if method == "exhaustive":
        return _kappa_k_scan(d, k)
    if method == "flow":
        return _kappa_k_flow(d, k)
    raise ValueError(f"unknown method {method!r}")


def is_k_separable(d: Digraph, k: int) -> bool:
    return isoperimetric_connectivity(d, k) is not None


def k_fragments(d: Digraph, k: int, sign: Sign = "positive") -> list[Fragment]:
    """All ``X`` achieving ``κ_k``, ordered by (size, member tuple).

    Negative fragments are the fragments of the reverse digraph.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if sign not in ("positive", "negative"):
        raise ValueError(f"bad sign {sign!r}")
    g = reverse(d) if sign == "negative" else d
    chunks = []
    best = None
    for xs, gam in _scan(g):
        xsize, bsize, esize = _separation_sizes(g, xs, gam)
        ok = (xsize >= k) & (esize >= k)
        if not ok.any():
            continue
        m = int(bsize[ok].min())
        if best is None or m < best:
            best, chunks = m, []
        if m == best:
            chunks.append(xs[ok & (bsize == m)])
    if best is None:
        raise PreconditionError(f"{d} is not {k}-separable")
    found = [int(x) for c in chunks for x in c]
    found.sort(key=canonical_key)
    return [Fragment(x, boundary(g, x), exterior(g, x), k, sign) for x in found]


def k_atoms(d: Digraph, k: int, sign: Sign = "positive") -> list[Fragment]:
    frags = k_fragments(d, k, sign)
    smallest = frags[0].size
    return [f for f in frags if f.size == smallest]


# -- deciders ----------------------------------------------------------------


def _require_regular_connected(d: Digraph) -> int:
    regular, deg = degree_profile(d)
    if not regular:
        raise PreconditionError(f"{d} is not regular")
    if not is_strongly_connected(d):
        raise PreconditionError(f"{d} is not strongly connected")
    return deg


def is_vosperian(d: Digraph) -> bool:
    """Not 2-separable, or ``κ_2 >= d + 1``."""
    deg = _require_regular_connected(d)
    k2 = isoperimetric_connectivity(d, 2)
    return k2 is None or k2 >= deg + 1


def nontrivial_small_cutset(
    d: Digraph, min_cut: Optional[tuple[int, Optional[int]]] = None
) -> Optional[int]:
    """A cutset of size at most the degree that is neither some ``Γ(x)`` nor
    some ``Γ⁻(x)``; ``None`` when the digraph is superconnected.

    Successor and predecessor sets have exactly ``d`` elements, so any cutset
    smaller than ``d`` is a witness.  When ``κ = d`` the cutsets of size ``d``
    are exactly the boundaries of 1-fragments.  ``min_cut`` may pass in a
    precomputed :func:`minimum_cutset` result.
    """
    deg = _require_regular_connected(d)
    kappa, cut = minimum_cutset(d) if min_cut is None else min_cut
    if cut is None or kappa > deg:
        return None
    if kappa < deg:
        return cut
    trivial = set(d.succ) | set(d.pred)
    if d.n <= SCAN_CEILING:
        for xs, gam in _scan(d):
            xsize, bsize, esize = _separation_sizes(d, xs, gam)
            hit = (xsize >= 1) & (esize >= 1) & (bsize == deg)
            for i in np.nonzero(hit)[0]:
                t = int(gam[i]) & ~int(xs[i])
                if t not in trivial:
                    return t
        return None
    for combo in itertools.combinations(range(d.n), deg):
        t = sum(1 << v for v in combo)
        if t not in trivial and not is_strongly_connected(d, d.full & ~t):
            return t
    return None


def is_superconnected(d: Digraph) -> bool:
    return nontrivial_small_cutset(d) is None


def connectivity_profile(d: Digraph, vertex_transitive: bool = False) -> ConnectivityProfile:
    deg = _require_regular_connected(d)
    min_cut = minimum_cutset(d, vertex_transitive)
    kappa = min_cut[0]
    kappa2 = isoperimetric_connectivity(d, 2)
    witness = k_atoms(d, 2)[0] if kappa2 is not None and d.n <= SCAN_CEILING else None
    cut = nontrivial_small_cutset(d, min_cut)
    return ConnectivityProfile(
        kappa=kappa,
        kappa2=kappa2,
        degree=deg,
        vosperian=kappa2 is None or kappa2 >= deg + 1,
        superconnected=cut is None,
        witness_fragment=witness,
        witness_cutset=cut,
    )
