"""Finite groups as explicit multiplication tables, plus the subset algebra
(Minkowski products, stabilizers, subgroups, coprogressions) used by the
Cayley digraph classifiers.

Elements are the indices ``0..n-1``.  Subsets of a group are ``int`` bitmasks
(see :mod:`vosper.bits`).
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Optional, Sequence

from .bits import full_mask, iter_members, mask_of, members
from .errors import ParseError, PreconditionError

CATALOG_MAX_ORDER = 12

# Number of isomorphism classes of groups of order 1..12.
GROUP_COUNTS = (1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5)


class GroupError(PreconditionError):
    """Invalid group table or constructor argument."""


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by its Cayley table.

    ``mul[x][y]`` is the index of the product ``xy``.  The table is checked to
    be a Latin square with a two-sided identity and inverses on construction;
    associativity is O(n^3) and only checked by :meth:`check_associative`.
    """

    order: int
    mul: tuple[tuple[int, ...], ...]
    identity: int
    inv: tuple[int, ...]
    label: str = ""

    def __post_init__(self) -> None:
        n = self.order
        if n < 1:
            raise GroupError("group order must be positive")
        if len(self.mul) != n or any(len(row) != n for row in self.mul):
            raise GroupError(f"{self.label}: table is not {n}x{n}")
        everything = set(range(n))
        for x in range(n):
            if set(self.mul[x]) != everything:
                raise GroupError(f"{self.label}: row {x} is not a permutation")
            if {self.mul[y][x] for y in range(n)} != everything:
                raise GroupError(f"{self.label}: column {x} is not a permutation")
        e = self.identity
        for x in range(n):
            if self.mul[e][x] != x or self.mul[x][e] != x:
                raise GroupError(f"{self.label}: {e} is not an identity")
            if self.mul[x][self.inv[x]] != e:
                raise GroupError(f"{self.label}: bad inverse for {x}")

    @classmethod
    def from_table(cls, table: Sequence[Sequence[int]], label: str = "") -> FiniteGroup:
        """Build a group from a raw table, locating identity and inverses."""
        n = len(table)
        mul = tuple(tuple(int(v) for v in row) for row in table)
        identity = next(
            (e for e in range(n) if all(mul[e][x] == x for x in range(n))), None
        )
        if identity is None:
            raise GroupError(f"{label}: no identity element")
        inv = []
        for x in range(n):
            y = next((y for y in range(n) if mul[x][y] == identity), None)
            if y is None:
                raise GroupError(f"{label}: {x} has no inverse")
            inv.append(y)
        g = cls(n, mul, identity, tuple(inv), label)
        if not g.check_associative():
            raise GroupError(f"{label}: table is not associative")
        return g

    def check_associative(self) -> bool:
        m = self.mul
        r = range(self.order)
        return all(m[m[x][y]][z] == m[x][m[y][z]] for x in r for y in r for z in r)

    @property
    def elements(self) -> range:
        return range(self.order)

    @property
    def full(self) -> int:
        return full_mask(self.order)

    @cached_property
    def is_abelian(self) -> bool:
        m = self.mul
        return all(m[x][y] == m[y][x] for x in self.elements for y in self.elements)

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != self.identity:
            y = self.mul[y][x]
            k += 1
        return k

    @cached_property
    def is_cyclic(self) -> bool:
        return any(self.element_order(x) == self.order for x in self.elements)

    def power(self, x: int, k: int) -> int:
        y = self.identity
        if k < 0:
            x, k = self.inv[x], -k
        for _ in range(k):
            y = self.mul[y][x]
        return y

    def left_translate(self, x: int, s: int) -> int:
        """The set ``xS``."""
        row = self.mul[x]
        out = 0
        for y in iter_members(s):
            out |= 1 << row[y]
        return out

    def right_translate(self, s: int, x: int) -> int:
        """The set ``Sx``."""
        m = self.mul
        out = 0
        for y in iter_members(s):
            out |= 1 << m[y][x]
        return out

    def inverse_set(self, s: int) -> int:
        out = 0
        for y in iter_members(s):
            out |= 1 << self.inv[y]
        return out

    def with_identity(self, s: int) -> int:
        """``S ∪ {1}``."""
        return s | (1 << self.identity)

    @cached_property
    def subgroups(self) -> tuple[int, ...]:
        return tuple(enumerate_subgroups(self))

    def __str__(self) -> str:
        return self.label or f"G{self.order}"


# -- constructors ------------------------------------------------------------


def make_cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic group order must be >= 1")
    mul = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    inv = tuple((-i) % n for i in range(n))
    return FiniteGroup(n, mul, 0, inv, f"Z{n}")


def make_dihedral(m: int) -> FiniteGroup:
    """Dihedral group of order ``2m``; element ``i + m*f`` is ``r^i s^f``."""
    if m < 1:
        raise GroupError("dihedral parameter must be >= 1")
    n = 2 * m

    def prod(x: int, y: int) -> int:
        i, f = x % m, x // m
        j, g = y % m, y // m
        k = (i - j) % m if f else (i + j) % m
        return k + m * ((f + g) % 2)

    mul = tuple(tuple(prod(x, y) for y in range(n)) for x in range(n))
    return FiniteGroup.from_table(mul, f"D{m}")


def make_dicyclic(m: int, label: str | None = None) -> FiniteGroup:
    """Dicyclic group of order ``4m``: a^(2m) = 1, x^2 = a^m, x a x^-1 = a^-1."""
    if m < 2:
        raise GroupError("dicyclic parameter must be >= 2")
    q = 2 * m
    n = 2 * q

    def prod(x: int, y: int) -> int:
        i, f = x % q, x // q
        j, g = y % q, y // q
        if not f:
            return (i + j) % q + q * g
        if not g:
            return (i - j) % q + q
        return (i - j + m) % q

    mul = tuple(tuple(prod(x, y) for y in range(n)) for x in range(n))
    return FiniteGroup.from_table(mul, label or f"Dic{m}")


def make_quaternion() -> FiniteGroup:
    return make_dicyclic(2, "Q8")


def make_alternating4() -> FiniteGroup:
    perms = [p for p in itertools.permutations(range(4)) if _parity(p) == 0]
    index = {p: i for i, p in enumerate(perms)}
    mul = [[index[tuple(p[q[k]] for k in range(4))] for q in perms] for p in perms]
    return FiniteGroup.from_table(mul, "A4")


def _parity(p: Sequence[int]) -> int:
    return sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j]) % 2


def make_direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """Componentwise product; ``(x, y)`` has index ``x*|h| + y``."""
    nh = h.order
    n = g.order * nh
    mul = tuple(
        tuple(
            g.mul[x // nh][y // nh] * nh + h.mul[x % nh][y % nh] for y in range(n)
        )
        for x in range(n)
    )
    inv = tuple(g.inv[x // nh] * nh + h.inv[x % nh] for x in range(n))
    identity = g.identity * nh + h.identity
    return FiniteGroup(n, mul, identity, inv, f"{g.label}x{h.label}")


def _catalog_specs() -> dict[int, list[str]]:
    return {
        1: ["Z1"],
        2: ["Z2"],
        3: ["Z3"],
        4: ["Z4", "Z2xZ2"],
        5: ["Z5"],
        6: ["Z6", "D3"],
        7: ["Z7"],
        8: ["Z8", "Z4xZ2", "Z2xZ2xZ2", "D4", "Q8"],
        9: ["Z9", "Z3xZ3"],
        10: ["Z10", "D5"],
        11: ["Z11"],
        12: ["Z12", "Z6xZ2", "D6", "A4", "Dic3"],
    }


def small_group_catalog(max_order: int) -> list[FiniteGroup]:
    """One group per isomorphism class, for every order up to ``max_order``."""
    if max_order > CATALOG_MAX_ORDER:
        raise PreconditionError(f"catalog only covers orders <= {CATALOG_MAX_ORDER}")
    specs = _catalog_specs()
    return [parse_group_spec(s) for n in range(1, max_order + 1) for s in specs[n]]


_TOKEN = re.compile(r"^(Z|D|Dic)(\d+)$|^(Q8|A4)$")


def parse_group_spec(spec: str) -> FiniteGroup:
    """Parse ``Z<n>``, ``D<m>``, ``Dic<m>``, ``Q8``, ``A4`` and ``x``-products.

    A path to a JSON file ``{"label": ..., "table": [[...], ...]}`` is also
    accepted for groups outside the catalog.
    """
    try:
        return _parse_group_spec(spec.strip())
    except (OSError, ValueError, KeyError, TypeError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad group spec {spec!r}: {exc}") from exc


def _parse_group_spec(spec: str) -> FiniteGroup:
    if spec.endswith(".json"):
        data = json.loads(Path(spec).read_text())
        return FiniteGroup.from_table(data["table"], data.get("label", Path(spec).stem))
    if not spec:
        raise ParseError("empty group spec")
    factors = []
    for token in spec.split("x"):
        m = _TOKEN.match(token)
        if not m:
            raise ParseError(f"cannot parse group factor {token!r}")
        if m.group(3) == "Q8":
            factors.append(make_quaternion())
        elif m.group(3) == "A4":
            factors.append(make_alternating4())
        else:
            kind, k = m.group(1), int(m.group(2))
            if kind == "Z":
                factors.append(make_cyclic(k))
            elif kind == "D":
                factors.append(make_dihedral(k))
            else:
                factors.append(make_dicyclic(k))
    g = factors[0]
    for h in factors[1:]:
        g = make_direct_product(g, h)
    return g


def parse_subset(text: str, order: int) -> int:
    """Parse a comma-separated list of element indices."""
    text = text.strip()
    if not text:
        return 0
    try:
        items = [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise ParseError(f"bad subset {text!r}") from exc
    for i in items:
        if not 0 <= i < order:
            raise ParseError(f"element {i} out of range for order {order}")
    return mask_of(items)


# -- subset algebra ----------------------------------------------------------


def minkowski_product(g: FiniteGroup, a: int, b: int) -> int:
    """``AB = {xy : x in A, y in B}``."""
    out = 0
    for x in iter_members(a):
        out |= g.left_translate(x, b)
    return out


def subgroup_generated(g: FiniteGroup, s: int) -> int:
    h = 1 << g.identity
    frontier = h
    gens = members(s)
    while frontier:
        new = 0
        for x in iter_members(frontier):
            for y in gens:
                new |= 1 << g.mul[x][y]
        frontier = new & ~h
        h |= new
    # Finite, so closure under products already contains inverses.
    return h


def is_subgroup(g: FiniteGroup, h: int) -> bool:
    if not h >> g.identity & 1:
        return False
    return minkowski_product(g, h, h) == h and g.inverse_set(h) == h


def enumerate_subgroups(g: FiniteGroup) -> list[int]:
    """All subgroups, as joins of cyclic subgroups, sorted by (size, members)."""
    cyclic = {subgroup_generated(g, 1 << x) for x in g.elements}
    found = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        new = set()
        for h in frontier:
            for c in cyclic:
                j = subgroup_generated(g, h | c)
                if j not in found:
                    new.add(j)
        found |= new
        frontier = new
    return sorted(found, key=lambda h: (h.bit_count(), members(h)))


def left_stabilizer(g: FiniteGroup, s: int) -> int:
    """``{x : xS = S}``."""
    return mask_of(x for x in g.elements if g.left_translate(x, s) == s)


def is_left_periodic(g: FiniteGroup, s: int) -> bool:
    return left_stabilizer(g, s) != 1 << g.identity


def is_aperiodic(g: FiniteGroup, s: int) -> bool:
    """Neither ``S`` nor ``S^-1`` is fixed by a non-identity left translation."""
    return not is_left_periodic(g, s) and not is_left_periodic(g, g.inverse_set(s))


@dataclass(frozen=True)
class CoprogressionWitness:
    """``G \\ X = [a, ra, r^2 a, ...]`` with ratio ``r`` and anchor ``a``."""

    ratio: int
    anchor: int
    complement: tuple[int, ...]

    def as_dict(self) -> dict:
        return {"r": self.ratio, "a": self.anchor, "complement": list(self.complement)}


def _progression(g: FiniteGroup, r: int, a: int, length: int) -> list[int]:
    out = [a]
    for _ in range(length - 1):
        out.append(g.mul[r][out[-1]])
    return out


def _coprogression_for(g: FiniteGroup, comp: int, r: int) -> Optional[CoprogressionWitness]:
    heads = comp & ~g.left_translate(r, comp)
    if heads.bit_count() == 1:
        anchor = heads.bit_length() - 1
    elif heads == 0:
        # rC = C: only a single full <r>-coset can still be a progression.
        anchor = (comp & -comp).bit_length() - 1
    else:
        return None
    k = comp.bit_count()
    prog = _progression(g, r, anchor, k)
    if len(set(prog)) == k and mask_of(prog) == comp:
        return CoprogressionWitness(r, anchor, tuple(prog))
    return None


def right_coprogressions(g: FiniteGroup, s_tilde: int) -> list[CoprogressionWitness]:
    """Every ratio ``r != 1`` making ``s_tilde`` a right r-coprogression."""
    comp = g.full & ~s_tilde
    if not comp:
        raise PreconditionError("coprogression needs a nonempty complement")
    out = []
    for r in g.elements:
        if r == g.identity:
            continue
        w = _coprogression_for(g, comp, r)
        if w is not None:
            out.append(w)
    return out


def detect_right_coprogression(g: FiniteGroup, s_tilde: int) -> Optional[CoprogressionWitness]:
    """The witness with the smallest ratio index, or ``None``."""
    comp = g.full & ~s_tilde
    if not comp:
        raise PreconditionError("coprogression needs a nonempty complement")
    for r in g.elements:
        if r == g.identity:
            continue
        w = _coprogression_for(g, comp, r)
        if w is not None:
            return w
    return None


def order_statistics(g: FiniteGroup) -> tuple[bool, tuple[int, ...]]:
    """Cheap isomorphism invariant: abelian flag plus sorted element orders."""
    return g.is_abelian, tuple(sorted(g.element_order(x) for x in g.elements))
