"""Automorphisms, transitivity, twin classes and blocks of imprimitivity.

Automorphisms are found by plain backtracking: vertices are assigned in an
order that keeps each new vertex adjacent to already-placed ones, and the
candidate images are cut down with bitmask constraints (arcs to and from every
placed vertex must be mirrored) plus colour refinement classes.  The full
group is described by a strong generating set along the base ``0, 1, ..., n-1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .bits import canonical_key, iter_members, mask_of
from .digraph import Digraph, reverse
from .errors import PreconditionError

AUTOMORPHISM_CAP = 16
# Refuse to list group elements beyond this many; generators are still returned.
ELEMENT_LIMIT = 200_000

Perm = tuple[int, ...]


@dataclass(frozen=True)
class AutomorphismSet:
    """Automorphisms of a digraph.

    ``perms`` lists every element of the group when ``complete`` is true and
    only ``generators`` otherwise.  ``order`` is always exact.
    """

    perms: tuple[Perm, ...]
    complete: bool
    order: int
    generators: tuple[Perm, ...]


@dataclass(frozen=True)
class TwinPartition:
    classes: tuple[int, ...]

    @property
    def sizes(self) -> list[int]:
        return [c.bit_count() for c in self.classes]

    def is_discrete(self) -> bool:
        return all(c.bit_count() == 1 for c in self.classes)


def _check_cap(d: Digraph) -> None:
    if d.n > AUTOMORPHISM_CAP:
        raise PreconditionError(f"automorphism search capped at n <= {AUTOMORPHISM_CAP}")


def colour_refinement(d: Digraph) -> list[int]:
    """Stable colouring by degree pattern; automorphisms preserve the classes."""
    colours = [0] * d.n
    count = 1
    while True:
        sigs = [
            (
                colours[v],
                tuple(sorted(colours[w] for w in iter_members(d.succ[v]))),
                tuple(sorted(colours[w] for w in iter_members(d.pred[v]))),
            )
            for v in range(d.n)
        ]
        index = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [index[s] for s in sigs]
        if len(index) == count:
            return new
        colours, count = new, len(index)


def _search_order(d: Digraph, start: Sequence[int]) -> list[int]:
    order = list(start)
    placed = mask_of(order)
    links = [d.succ[v] | d.pred[v] for v in range(d.n)]
    while len(order) < d.n:
        v = max(
            (v for v in range(d.n) if not placed >> v & 1),
            key=lambda v: ((links[v] & placed).bit_count(), -v),
        )
        order.append(v)
        placed |= 1 << v
    return order


def find_automorphism(
    d: Digraph, prescribed: Sequence[tuple[int, int]], colours: Optional[list[int]] = None
) -> Optional[Perm]:
    """An automorphism sending each ``u`` to ``w`` for ``(u, w)`` in ``prescribed``."""
    n = d.n
    if colours is None:
        colours = colour_refinement(d)
    classes: dict[int, int] = {}
    for v, c in enumerate(colours):
        classes[c] = classes.get(c, 0) | 1 << v
    order = _search_order(d, [u for u, _ in prescribed])
    fixed = [w for _, w in prescribed]
    succ, pred = d.succ, d.pred
    f = [-1] * n

    def extend(i: int, used: int) -> Optional[Perm]:
        if i == n:
            return tuple(f)
        v = order[i]
        cand = classes[colours[v]] & ~used
        if i < len(fixed):
            cand &= 1 << fixed[i]
        for j in range(i):
            u = order[j]
            fu = f[u]
            cand &= succ[fu] if succ[u] >> v & 1 else ~succ[fu]
            cand &= pred[fu] if pred[u] >> v & 1 else ~pred[fu]
            if not cand:
                return None
        for w in iter_members(cand):
            f[v] = w
            found = extend(i + 1, used | 1 << w)
            if found is not None:
                return found
        f[v] = -1
        return None

    return extend(0, 0)


def _orbit(point: int, gens: Sequence[Perm]) -> int:
    seen = 1 << point
    frontier = [point]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = g[x]
                if not seen >> y & 1:
                    seen |= 1 << y
                    nxt.append(y)
        frontier = nxt
    return seen


@lru_cache(maxsize=512)
def strong_generators(d: Digraph) -> tuple[tuple[Perm, ...], tuple[int, ...]]:
    """Generators and basic orbit sizes along the base ``0..n-1``.

    Levels are processed deepest first so the generators of the pointwise
    stabiliser of ``0..i`` are already known when level ``i`` is searched.
    """
    _check_cap(d)
    n = d.n
    colours = colour_refinement(d)
    gens: list[Perm] = []
    sizes = [1] * n
    for i in reversed(range(n)):
        prefix = [(j, j) for j in range(i)]
        orbit = _orbit(i, gens)
        for t in range(i, n):
            if orbit >> t & 1 or colours[t] != colours[i]:
                continue
            g = find_automorphism(d, prefix + [(i, t)], colours)
            if g is not None:
                gens.append(g)
                orbit = _orbit(i, gens)
        sizes[i] = orbit.bit_count()
    return tuple(gens), tuple(sizes)


def _close(gens: Sequence[Perm], n: int) -> list[Perm]:
    identity = tuple(range(n))
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[p[x]] for x in range(n))
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return sorted(seen)


def automorphisms(d: Digraph, limit: int = ELEMENT_LIMIT) -> AutomorphismSet:
    gens, sizes = strong_generators(d)
    order = math.prod(sizes)
    if order <= limit:
        return AutomorphismSet(tuple(_close(gens, d.n)), True, order, gens)
    return AutomorphismSet(gens, False, order, gens)


def is_automorphism(d: Digraph, f: Sequence[int]) -> bool:
    if sorted(f) != list(range(d.n)):
        return False
    return all(
        mask_of(f[w] for w in iter_members(d.succ[x])) == d.succ[f[x]] for x in range(d.n)
    )


def is_vertex_transitive(d: Digraph) -> bool:
    _check_cap(d)
    if d.n <= 1:
        return True
    colours = colour_refinement(d)
    if len(set(colours)) > 1:
        return False
    gens: list[Perm] = []
    orbit = 1
    for t in range(1, d.n):
        if orbit >> t & 1:
            continue
        g = find_automorphism(d, [(0, t)], colours)
        if g is None:
            return False
        gens.append(g)
        orbit = _orbit(0, gens)
    return True


def is_arc_transitive(d: Digraph) -> bool:
    """Every arc is the image of the first arc under some automorphism."""
    _check_cap(d)
    arcs = d.arcs()
    if not arcs:
        raise PreconditionError("arc-transitivity needs at least one arc")
    colours = colour_refinement(d)
    x0, y0 = arcs[0]
    gens: list[Perm] = []
    orbit = {(x0, y0)}
    for x, y in arcs:
        if (x, y) in orbit:
            continue
        g = find_automorphism(d, [(x0, x), (y0, y)], colours)
        if g is None:
            return False
        gens.append(g)
        frontier = list(orbit)
        while frontier:
            nxt = []
            for a, b in frontier:
                for h in gens:
                    arc = (h[a], h[b])
                    if arc not in orbit:
                        orbit.add(arc)
                        nxt.append(arc)
            frontier = nxt
    return True


def twin_classes(d: Digraph) -> TwinPartition:
    """Vertices grouped by identical successor sets."""
    groups: dict[int, int] = {}
    for v in range(d.n):
        groups[d.succ[v]] = groups.get(d.succ[v], 0) | 1 << v
    return TwinPartition(tuple(sorted(groups.values(), key=lambda c: c & -c)))


def is_irreducible(d: Digraph) -> bool:
    """No twin pair and no anti-twin pair."""
    return twin_classes(d).is_discrete() and twin_classes(reverse(d)).is_discrete()


def minimal_block(n: int, gens: Sequence[Perm], seed: int) -> int:
    """Smallest block of imprimitivity containing ``seed`` (union-find closure)."""
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pts = list(iter_members(seed))
    if not pts:
        raise ValueError("empty seed")
    first = pts[0]
    queue = []
    for p in pts[1:]:
        if find(p) != find(first):
            parent[find(p)] = find(first)
            queue.append((first, p))
    while queue:
        a, b = queue.pop()
        for g in gens:
            ga, gb = find(g[a]), find(g[b])
            if ga != gb:
                parent[gb] = ga
                queue.append((g[a], g[b]))
    root = find(first)
    return mask_of(v for v in range(n) if find(v) == root)


def blocks_containing(d: Digraph, v: int) -> list[int]:
    """Every block containing ``v``, from ``{v}`` up to ``V``.

    A block is the join of the minimal blocks of the pairs ``{v, w}`` it
    contains, so closing those pair blocks under joins gives all of them.
    """
    gens, _ = strong_generators(d)
    n = d.n
    found = {1 << v, d.full}
    frontier = {minimal_block(n, gens, (1 << v) | (1 << w)) for w in range(n) if w != v}
    while frontier:
        found |= frontier
        nxt = set()
        for a in frontier:
            for b in list(found):
                j = minimal_block(n, gens, a | b)
                if j not in found:
                    nxt.add(j)
        frontier = nxt
    return sorted(found, key=canonical_key)


def is_block(d: Digraph, b: int, perms: Sequence[Perm]) -> bool:
    for f in perms:
        img = mask_of(f[x] for x in iter_members(b))
        if img != b and img & b:
            return False
    return True
