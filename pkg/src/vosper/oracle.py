"""Definition-level brute force.

Everything here is deliberately naive: adjacency is turned into Python sets,
reachability is a plain DFS, and candidate sets are enumerated with
``itertools.combinations``.  No pruning beyond early exit, so each function
can be checked against the definitions by reading it.  These are the
reference answers the fast paths are tested against.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .bits import members
from .digraph import Digraph
from .errors import BudgetExceeded, PreconditionError


@dataclass(frozen=True)
class OracleBudget:
    max_vertices: int = 14
    max_cutset_size: int = 14

    def __post_init__(self) -> None:
        if self.max_vertices < 1 or self.max_cutset_size < 1:
            raise ValueError("budget caps must be positive")

    def check(self, d: Digraph, cutset_size: int = 0) -> None:
        if d.n > self.max_vertices:
            raise BudgetExceeded(f"{d.n} vertices exceeds oracle budget {self.max_vertices}")
        if cutset_size > self.max_cutset_size:
            raise BudgetExceeded(
                f"cutset size {cutset_size} exceeds oracle budget {self.max_cutset_size}"
            )


DEFAULT_BUDGET = OracleBudget()


def _adjacency(d: Digraph) -> list[set[int]]:
    return [set(members(s)) for s in d.succ]


def _reach(adj: list[set[int]], start: int, allowed: set[int]) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w in allowed and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def _components(adj: list[set[int]], allowed: set[int]) -> list[set[int]]:
    reach = {v: _reach(adj, v, allowed) for v in allowed}
    comps: list[set[int]] = []
    for v in sorted(allowed):
        if any(v in c for c in comps):
            continue
        comps.append({w for w in reach[v] if v in reach[w]})
    return comps


def _is_cutset(adj: list[set[int]], n: int, t: tuple[int, ...]) -> bool:
    rest = set(range(n)) - set(t)
    return len(_components(adj, rest)) > 1


def _degree(d: Digraph, adj: list[set[int]]) -> int:
    outs = {len(a) for a in adj}
    ins = {sum(1 for u in range(d.n) if v in adj[u]) for v in range(d.n)}
    if len(outs | ins) != 1:
        raise PreconditionError(f"{d} is not regular")
    if len(_components(adj, set(range(d.n)))) > 1:
        raise PreconditionError(f"{d} is not strongly connected")
    return outs.pop()


def vosperian_by_definition(d: Digraph, budget: OracleBudget = DEFAULT_BUDGET) -> bool:
    """Every cutset ``T`` with ``|T| <= d`` and ``|T| != |V| - 3`` leaves exactly
    two strongly connected components, one of them a single vertex."""
    budget.check(d)
    adj = _adjacency(d)
    deg = _degree(d, adj)
    budget.check(d, deg)
    vertices = range(d.n)
    for size in range(deg + 1):
        if size == d.n - 3:
            continue
        for t in combinations(vertices, size):
            comps = _components(adj, set(vertices) - set(t))
            if len(comps) == 1:
                continue
            if len(comps) != 2 or min(len(c) for c in comps) != 1:
                return False
    return True


def literal_definition_violations(
    d: Digraph, budget: OracleBudget = DEFAULT_BUDGET
) -> list[tuple[tuple[int, ...], list[set[int]]]]:
    """Every cutset breaking the vosperian definition, with its components."""
    budget.check(d)
    adj = _adjacency(d)
    deg = _degree(d, adj)
    out = []
    for size in range(deg + 1):
        if size == d.n - 3:
            continue
        for t in combinations(range(d.n), size):
            comps = _components(adj, set(range(d.n)) - set(t))
            if len(comps) > 1 and (len(comps) != 2 or min(len(c) for c in comps) != 1):
                out.append((t, comps))
    return out


def superconnected_by_definition(d: Digraph, budget: OracleBudget = DEFAULT_BUDGET) -> bool:
    """Every cutset ``T`` with ``|T| <= d`` is ``Γ(x)`` or ``Γ⁻(x)`` for some ``x``."""
    budget.check(d)
    adj = _adjacency(d)
    deg = _degree(d, adj)
    budget.check(d, deg)
    trivial = [adj[x] for x in range(d.n)]
    trivial += [{u for u in range(d.n) if x in adj[u]} for x in range(d.n)]
    for size in range(deg + 1):
        for t in combinations(range(d.n), size):
            if _is_cutset(adj, d.n, t) and set(t) not in trivial:
                return False
    return True


def kappa_k_bruteforce(
    d: Digraph, k: int, budget: OracleBudget = DEFAULT_BUDGET
) -> Optional[int]:
    """Exact ``κ_k`` over all ``2^n`` subsets, ``None`` if not k-separable."""
    if k < 1:
        raise ValueError("k must be >= 1")
    budget.check(d)
    adj = _adjacency(d)
    vertices = set(range(d.n))
    best = None
    for size in range(k, d.n + 1):
        for xs in combinations(range(d.n), size):
            x = set(xs)
            gamma = set().union(*(adj[v] for v in x))
            ext = vertices - x - gamma
            if len(ext) >= k:
                b = len(gamma - x)
                if best is None or b < best:
                    best = b
    return best


def connectivity_bruteforce(d: Digraph, budget: OracleBudget = DEFAULT_BUDGET) -> int:
    """Least cutset size, ``|V| - 1`` when no cutset exists."""
    budget.check(d)
    adj = _adjacency(d)
    for size in range(d.n + 1):
        for t in combinations(range(d.n), size):
            if _is_cutset(adj, d.n, t):
                return size
    return max(d.n - 1, 0)
