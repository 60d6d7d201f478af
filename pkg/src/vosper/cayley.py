"""Algebraic classifiers for Cayley digraphs and arc-transitive digraphs.

Each classifier returns a verdict carrying a witness that can be re-checked
from scratch with :func:`verify_vosperian_verdict` and friends.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Optional

from .bits import members
from .digraph import Digraph, degree_profile, is_strongly_connected
from .errors import PreconditionError
from .groups import (
    CoprogressionWitness,
    FiniteGroup,
    detect_right_coprogression,
    is_aperiodic,
    minkowski_product,
    right_coprogressions,
    subgroup_generated,
)
from .symmetry import is_arc_transitive, is_irreducible

Condition = Literal["none", "cond_i", "cond_ii", "cond_iii"]

# Degrees excluded by the arc-transitive characterisation.
ARC_TRANSITIVE_EXCLUDED = frozenset({1, 2, 4, 6})
# Degrees excluded by the coprime-order corollary.
GCD_EXCLUDED = frozenset({2, 4, 6})


@dataclass(frozen=True)
class VosperianVerdict:
    vosperian: bool
    condition: Condition = "none"
    subgroup_witness: Optional[tuple[int, int]] = None  # (H mask, a)
    coprogression_witness: Optional[CoprogressionWitness] = None

    def witness_dict(self) -> Optional[dict]:
        if self.subgroup_witness is not None:
            h, a = self.subgroup_witness
            return {"H": members(h), "a": a}
        if self.coprogression_witness is not None:
            return self.coprogression_witness.as_dict()
        return None

    def as_dict(self) -> dict:
        return {
            "vosperian": self.vosperian,
            "condition": self.condition,
            "witness": self.witness_dict(),
        }


@dataclass(frozen=True)
class SuperconnVerdict:
    superconnected: bool
    via: Literal["vosperian", "coprogression", "none"]
    witness: Optional[CoprogressionWitness] = None

    def as_dict(self) -> dict:
        return {
            "superconnected": self.superconnected,
            "via": self.via,
            "witness": self.witness.as_dict() if self.witness else None,
        }


@dataclass(frozen=True)
class HalfOrderVerdict:
    superconnected: bool
    branch: Literal["vosperian", "progression", "none"]
    ratio: Optional[int] = None


def _check_connection_set(g: FiniteGroup, s: int) -> None:
    if s >> g.identity & 1:
        raise PreconditionError("connection set contains the identity")
    if s & ~g.full:
        raise PreconditionError("connection set has elements outside the group")
    if subgroup_generated(g, s) != g.full:
        raise PreconditionError("connection set does not generate the group")


def _coset_pair(g: FiniteGroup, h: int, a: int, side: str) -> int:
    """``H ∪ Ha`` (side ``right``) or ``H ∪ aH`` (side ``left``)."""
    if side == "right":
        return h | g.right_translate(h, a)
    return h | g.left_translate(a, h)


def cond_i_holds(g: FiniteGroup, s: int, h: int, a: int) -> bool:
    """``|(H ∪ Ha)S̃| <= min(|G| - 2, |H ∪ Ha| + |S|)`` with ``|H| >= 2``."""
    if h.bit_count() < 2:
        return False
    x = _coset_pair(g, h, a, "right")
    lhs = minkowski_product(g, x, g.with_identity(s)).bit_count()
    return lhs <= min(g.order - 2, x.bit_count() + s.bit_count())


def cond_ii_holds(g: FiniteGroup, s: int, h: int, a: int) -> bool:
    """``|S̃(H ∪ aH)| <= min(|G| - 2, |H ∪ aH| + |S|)`` with ``|H| >= 2``.

    ``|H ∪ aH| = |H ∪ Ha|`` for every subgroup, so the bound uses the left form.
    """
    if h.bit_count() < 2:
        return False
    x = _coset_pair(g, h, a, "left")
    lhs = minkowski_product(g, g.with_identity(s), x).bit_count()
    return lhs <= min(g.order - 2, x.bit_count() + s.bit_count())


def _first_cond_i(g: FiniteGroup, s: int) -> Optional[tuple[int, int]]:
    for h in g.subgroups:
        if h.bit_count() < 2:
            continue
        for a in g.elements:
            if cond_i_holds(g, s, h, a):
                return h, a
    return None


def classify_vosperian_cayley(g: FiniteGroup, s: int) -> VosperianVerdict:
    """Decide vosperianity of ``Cay(G, S)`` from the group structure alone.

    Conditions are tried in the order (i), (ii), (iii) and the first hit is
    reported.  Condition (ii) is condition (i) for ``S⁻¹`` (the reverse
    digraph): ``((H ∪ Ha)S̃⁻¹)⁻¹ = S̃(H ∪ a⁻¹H)``, so the dual witness ``(H, a)``
    is reported as ``(H, a⁻¹)`` in the left-coset form.
    """
    _check_connection_set(g, s)
    hit = _first_cond_i(g, s)
    if hit is not None:
        return VosperianVerdict(False, "cond_i", subgroup_witness=hit)
    hit = _first_cond_i(g, g.inverse_set(s))
    if hit is not None:
        h, a = hit
        return VosperianVerdict(False, "cond_ii", subgroup_witness=(h, g.inv[a]))
    if s.bit_count() <= g.order - 4:
        w = detect_right_coprogression(g, g.with_identity(s))
        if w is not None:
            return VosperianVerdict(False, "cond_iii", coprogression_witness=w)
    return VosperianVerdict(True)


def verify_vosperian_verdict(g: FiniteGroup, s: int, v: VosperianVerdict) -> bool:
    """Recheck a verdict's witness from the definitions."""
    if v.vosperian:
        return v.condition == "none" and v.subgroup_witness is None
    if v.condition in ("cond_i", "cond_ii"):
        if v.subgroup_witness is None:
            return False
        h, a = v.subgroup_witness
        if minkowski_product(g, h, h) != h or not h >> g.identity & 1:
            return False
        check = cond_i_holds if v.condition == "cond_i" else cond_ii_holds
        return check(g, s, h, a)
    if v.condition == "cond_iii":
        w = v.coprogression_witness
        return (
            w is not None
            and s.bit_count() <= g.order - 4
            and verify_coprogression(g, g.with_identity(s), w)
        )
    return False


def verify_coprogression(g: FiniteGroup, x: int, w: CoprogressionWitness) -> bool:
    """``G \\ X`` is exactly ``[a, ra, r²a, ...]`` recomputed from ``(r, a)``."""
    comp = g.full & ~x
    if w.ratio == g.identity:
        return False
    prog = [w.anchor]
    for _ in range(comp.bit_count() - 1):
        prog.append(g.mul[w.ratio][prog[-1]])
    return (
        tuple(prog) == w.complement
        and len(set(prog)) == len(prog)
        and sum(1 << p for p in prog) == comp
    )


def superconnecting_coprogression(g: FiniteGroup, s: int) -> Optional[CoprogressionWitness]:
    """A ratio ``r`` with ``S̃`` a right r-coprogression, ``r⁻¹ ∉ S`` and
    ``|S| <= |G| - 4``; the smallest such ``r``."""
    if s.bit_count() > g.order - 4:
        return None
    for w in right_coprogressions(g, g.with_identity(s)):
        if not s >> g.inv[w.ratio] & 1:
            return w
    return None


def classify_superconnected_cayley(g: FiniteGroup, s: int) -> SuperconnVerdict:
    """Superconnectivity of an irreducible ``Cay(G, S)``.

    Periodic connection sets are outside the characterisation and rejected.
    """
    _check_connection_set(g, s)
    if not is_aperiodic(g, s):
        raise PreconditionError("connection set is periodic; use the brute-force decider")
    if classify_vosperian_cayley(g, s).vosperian:
        return SuperconnVerdict(True, "vosperian")
    w = superconnecting_coprogression(g, s)
    if w is not None:
        return SuperconnVerdict(True, "coprogression", w)
    return SuperconnVerdict(False, "none")


def classify_arc_transitive(d: Digraph) -> Optional[bool]:
    """Vosperianity prediction for a strongly connected arc-transitive digraph:
    irreducibility, when the degree is at most ``|V| - 4`` and not in
    {1, 2, 4, 6}; ``None`` outside that range."""
    if not is_strongly_connected(d):
        raise PreconditionError(f"{d} is not strongly connected")
    if not is_arc_transitive(d):
        raise PreconditionError(f"{d} is not arc-transitive")
    _, deg = degree_profile(d)
    if deg is None or deg > d.n - 4 or deg in ARC_TRANSITIVE_EXCLUDED:
        return None
    return is_irreducible(d)


def corollary_gcd_check(d: Digraph) -> Optional[bool]:
    """``True`` (predicted vosperian) for a strongly connected arc-transitive
    digraph of degree outside {2, 4, 6} that is coprime to the order;
    ``None`` when those hypotheses fail."""
    regular, deg = degree_profile(d)
    if not regular or deg is None or deg == 0:
        return None
    if deg in GCD_EXCLUDED or math.gcd(d.n, deg) != 1:
        return None
    if not is_strongly_connected(d) or not is_arc_transitive(d):
        return None
    return True


def power_progression_ratio(g: FiniteGroup, s: int) -> Optional[int]:
    """Smallest ``r`` with ``S = {r, r², ..., r^|S|}``, if any."""
    k = s.bit_count()
    for r in g.elements:
        prog = 0
        y = g.identity
        for _ in range(k):
            y = g.mul[y][r]
            prog |= 1 << y
        if prog == s:
            return r
    return None


def corollary_half_order_check(g: FiniteGroup, s: int) -> Optional[HalfOrderVerdict]:
    """For aperiodic generating ``S`` with ``|S| <= |G|/2``: superconnected iff
    vosperian or ``G`` is cyclic and ``S`` is a power progression."""
    try:
        _check_connection_set(g, s)
    except PreconditionError:
        return None
    if not is_aperiodic(g, s) or 2 * s.bit_count() > g.order:
        return None
    if classify_vosperian_cayley(g, s).vosperian:
        return HalfOrderVerdict(True, "vosperian")
    r = power_progression_ratio(g, s) if g.is_cyclic else None
    if r is not None:
        return HalfOrderVerdict(True, "progression", r)
    return HalfOrderVerdict(False, "none")


def coprogression_growth_holds(g: FiniteGroup, s: int, w: CoprogressionWitness) -> bool:
    """``|{1, r}S̃| = |S| + 2`` for the ratio of a coprogression witness."""
    pair = (1 << g.identity) | (1 << w.ratio)
    return minkowski_product(g, pair, g.with_identity(s)).bit_count() == s.bit_count() + 2
