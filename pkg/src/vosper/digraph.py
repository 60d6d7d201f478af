"""Loop-free digraphs on vertices ``0..n-1`` with bitmask adjacency, and the
boundary / exterior calculus on vertex sets."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

from .bits import fmt, full_mask, iter_members, lowest
from .errors import ParseError, PreconditionError
from .groups import FiniteGroup


class DigraphError(PreconditionError):
    """Invalid digraph construction (loops, out-of-range vertices)."""


@dataclass(frozen=True)
class Digraph:
    n: int
    succ: tuple[int, ...]
    pred: tuple[int, ...]
    label: str = ""

    def __post_init__(self) -> None:
        if len(self.succ) != self.n or len(self.pred) != self.n:
            raise DigraphError("adjacency length does not match n")
        full = full_mask(self.n)
        for v in range(self.n):
            if self.succ[v] >> v & 1:
                raise DigraphError(f"loop at vertex {v}")
            if self.succ[v] & ~full:
                raise DigraphError(f"arc from {v} leaves the vertex range")

    @classmethod
    def from_successors(cls, succ: Iterable[int], label: str = "") -> Digraph:
        succ = tuple(succ)
        n = len(succ)
        pred = [0] * n
        for u, s in enumerate(succ):
            for v in iter_members(s):
                if v >= n:
                    raise DigraphError(f"vertex {v} out of range")
                pred[v] |= 1 << u
        return cls(n, succ, tuple(pred), label)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def full(self) -> int:
        return full_mask(self.n)

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.succ[u] >> v & 1)

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in self.vertices for v in iter_members(self.succ[u])]

    def num_arcs(self) -> int:
        return sum(s.bit_count() for s in self.succ)

    def out_neighbourhood(self, x: int) -> int:
        """``Γ(X)``: union of the successor sets of ``X``."""
        out = 0
        succ = self.succ
        for v in iter_members(x):
            out |= succ[v]
        return out

    def to_edge_list(self) -> str:
        arcs = self.arcs()
        lines = [f"{self.n} {len(arcs)}"] + [f"{u} {v}" for u, v in arcs]
        return "\n".join(lines) + "\n"

    def __str__(self) -> str:
        return self.label or f"digraph(n={self.n})"


def from_edge_list(n: int, arcs: Iterable[tuple[int, int]], label: str = "") -> Digraph:
    if n < 0:
        raise DigraphError("negative vertex count")
    succ = [0] * n
    for u, v in arcs:
        if not (0 <= u < n and 0 <= v < n):
            raise DigraphError(f"arc ({u}, {v}) out of range for n={n}")
        if u == v:
            raise DigraphError(f"loop arc at {u}")
        succ[u] |= 1 << v
    return Digraph.from_successors(succ, label)


def parse_edge_list(text: str, label: str = "") -> Digraph:
    """Parse the ``n m`` header followed by ``m`` lines of ``u v``."""
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows:
        raise ParseError("empty edge list")
    try:
        n, m = (int(t) for t in rows[0])
        arcs = [(int(u), int(v)) for u, v in rows[1:]]
    except ValueError as exc:
        raise ParseError(f"malformed edge list: {exc}") from exc
    if len(arcs) != m:
        raise ParseError(f"header announces {m} arcs, found {len(arcs)}")
    try:
        return from_edge_list(n, arcs, label)
    except DigraphError as exc:
        raise ParseError(str(exc)) from exc


def read_edge_list(path: str | Path) -> Digraph:
    path = Path(path)
    return parse_edge_list(path.read_text(), label=path.stem)


def cayley_digraph(g: FiniteGroup, s: int, label: str | None = None) -> Digraph:
    """``Cay(G, S)``: arcs ``x -> xs`` for every ``s`` in ``S``."""
    if s >> g.identity & 1:
        raise DigraphError("identity in the connection set would create loops")
    if s & ~g.full:
        raise DigraphError("connection set has elements outside the group")
    succ = tuple(g.left_translate(x, s) for x in g.elements)
    if label is None:
        label = f"Cay({g.label},{fmt(s)})"
    return Digraph.from_successors(succ, label)


def reverse(d: Digraph) -> Digraph:
    label = d.label[:-1] if d.label.endswith("⁻") else d.label + "⁻"
    return Digraph(d.n, d.pred, d.succ, label)


def boundary(d: Digraph, x: int) -> int:
    """``∂(X) = Γ(X) \\ X``."""
    return d.out_neighbourhood(x) & ~x


def exterior(d: Digraph, x: int) -> int:
    """``∇(X) = V \\ (X ∪ Γ(X))``."""
    return d.full & ~(x | d.out_neighbourhood(x))


def _closure(adj: tuple[int, ...], start: int, within: int) -> int:
    seen = frontier = start & within
    while frontier:
        nxt = 0
        for v in iter_members(frontier):
            nxt |= adj[v]
        frontier = nxt & within & ~seen
        seen |= frontier
    return seen


def reachable(d: Digraph, start: int, within: Optional[int] = None) -> int:
    """Vertices reachable from ``start`` by paths inside ``within``."""
    return _closure(d.succ, start, d.full if within is None else within)


def is_strongly_connected(d: Digraph, within: Optional[int] = None) -> bool:
    """Sets with at most one vertex count as strongly connected."""
    w = d.full if within is None else within
    if w.bit_count() <= 1:
        return True
    v = 1 << lowest(w)
    return _closure(d.succ, v, w) == w and _closure(d.pred, v, w) == w


def strongly_connected_components(d: Digraph, within: Optional[int] = None) -> list[int]:
    """Components of the subdigraph induced on ``within``, ordered by least vertex."""
    rest = d.full if within is None else within
    comps = []
    while rest:
        v = rest & -rest
        comp = _closure(d.succ, v, rest) & _closure(d.pred, v, rest)
        comps.append(comp)
        rest &= ~comp
    return comps


def degree_profile(d: Digraph) -> tuple[bool, Optional[int]]:
    """``(True, k)`` iff every in- and out-degree equals ``k``."""
    degrees = {s.bit_count() for s in d.succ} | {p.bit_count() for p in d.pred}
    if len(degrees) == 1:
        return True, degrees.pop()
    if d.n == 0:
        return True, 0
    return False, None
