"""Allocation maps between Swiss cheeses.

A map sends each region of the source (its discs and the outer complement)
to a region of the target.  It is stored as an integer array indexed by
source disc; entry ``k >= 0`` names target disc ``k`` and :data:`COMPLEMENT`
names the complement of the target's outer disc.  The source complement
always goes to the target complement and is not stored.

Maps that pass :func:`check_axioms` certify that the target set is a subset
of the source set and that the radius margin does not decrease.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .cheese import SwissCheese
from .errors import CompositionError, InvalidInputError
from .geometry import DEFAULT_TOL, check_tol

COMPLEMENT = -1


class AllocationMap:
    __slots__ = ("source", "target", "assignment")

    def __init__(self, source: SwissCheese, target: SwissCheese, assignment):
        a = np.array(assignment, dtype=np.int64).reshape(-1)
        if a.shape[0] != len(source):
            raise InvalidInputError(
                f"assignment has {a.shape[0]} entries for {len(source)} source discs")
        if ((a < COMPLEMENT) | (a >= len(target))).any():
            raise InvalidInputError("assignment refers to a non-existent target disc")
        a.setflags(write=False)
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "assignment", a)

    def __setattr__(self, name, value):
        raise AttributeError("AllocationMap is immutable")

    def __call__(self, region: int) -> int:
        if region == COMPLEMENT:
            return COMPLEMENT
        return int(self.assignment[region])

    def __eq__(self, other):
        if not isinstance(other, AllocationMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and np.array_equal(self.assignment, other.assignment))

    __hash__ = None

    @property
    def surjective(self) -> bool:
        hit = np.zeros(len(self.target), dtype=bool)
        hit[self.assignment[self.assignment >= 0]] = True
        return bool(hit.all())

    def __repr__(self):
        return (f"AllocationMap({len(self.source)} -> {len(self.target)} discs, "
                f"assignment={self.assignment.tolist()})")


def identity_map(c: SwissCheese) -> AllocationMap:
    return AllocationMap(c, c, np.arange(len(c)))


def compose(f: AllocationMap, g: AllocationMap) -> AllocationMap:
    """The map ``g o f`` (apply ``f`` first).  ``f.target`` must equal ``g.source``."""
    if f.target is not g.source and f.target != g.source:
        raise CompositionError("cannot compose: f.target differs from g.source")
    fa = f.assignment
    ga = g.assignment
    out = np.where(fa >= 0, ga[np.maximum(fa, 0)] if len(ga) else COMPLEMENT, COMPLEMENT)
    return AllocationMap(f.source, g.target, out)


def compose_all(c: SwissCheese, maps) -> AllocationMap:
    """Compose ``maps`` in order, starting from the identity on ``c``."""
    return reduce(compose, maps, identity_map(c))


def g_set(f: AllocationMap) -> frozenset:
    """Source discs sent to the target complement."""
    return frozenset(int(i) for i in np.flatnonzero(f.assignment == COMPLEMENT))


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of checking (A1)-(A3) for one map.

    ``a1`` lists source regions not contained in their image, ``a2`` is
    ``sum over G(f) of r(D) - (r(outer) - r(target outer))`` and ``a3[k]``
    is ``sum over preimage of target disc k of r(D) - r(E_k)``.
    """

    a1: tuple
    a2: float
    a3: tuple
    surjective: bool
    passed: bool


def check_axioms(f: AllocationMap, tol: float = DEFAULT_TOL) -> AxiomReport:
    tol = check_tol(tol)
    src, tgt = f.source, f.target
    a = f.assignment
    big, small = src.outer, tgt.outer
    a1 = []

    # complement -> complement is admissible iff target outer is inside source outer
    dx = small.center.x - big.center.x
    dy = small.center.y - big.center.y
    if not math.sqrt(dx * dx + dy * dy) + small.radius <= big.radius + tol:
        a1.append(COMPLEMENT)

    to_disc = a >= 0
    ok = np.ones(len(src), dtype=bool)
    if to_disc.any():
        idx = a[to_disc]
        ex = src.x[to_disc] - tgt.x[idx]
        ey = src.y[to_disc] - tgt.y[idx]
        ok[to_disc] = np.sqrt(ex * ex + ey * ey) + src.r[to_disc] <= tgt.r[idx] + tol
    to_comp = ~to_disc
    if to_comp.any():
        ex = src.x[to_comp] - small.center.x
        ey = src.y[to_comp] - small.center.y
        ok[to_comp] = np.sqrt(ex * ex + ey * ey) >= src.r[to_comp] + small.radius - tol
    a1.extend(int(i) for i in np.flatnonzero(~ok))

    a2 = math.fsum(src.r[to_comp].tolist()) - (big.radius - small.radius)
    covered = np.bincount(a[to_disc], weights=src.r[to_disc], minlength=len(tgt))
    a3 = tuple(float(v) for v in covered - tgt.r)

    surjective = f.surjective
    passed = (not a1 and a2 >= -tol and all(s >= -tol for s in a3) and surjective)
    return AxiomReport(tuple(a1), float(a2), a3, surjective, passed)


def assignment_to_dict(f: AllocationMap) -> dict:
    return {
        "complement": "complement",
        "discs": ["complement" if k == COMPLEMENT else int(k) for k in f.assignment.tolist()],
    }


def assignment_from_dict(obj) -> list:
    """Parse the JSON assignment into a list of ints (``COMPLEMENT`` for "complement")."""
    if not isinstance(obj, dict) or obj.get("complement") != "complement":
        raise InvalidInputError("assignment must map 'complement' to 'complement'")
    discs = obj.get("discs")
    if not isinstance(discs, list):
        raise InvalidInputError("assignment 'discs' must be a list")
    out = []
    for v in discs:
        if v == "complement":
            out.append(COMPLEMENT)
        elif isinstance(v, int) and not isinstance(v, bool) and v >= 0:
            out.append(v)
        else:
            raise InvalidInputError(f"bad assignment entry {v!r}")
    return out
