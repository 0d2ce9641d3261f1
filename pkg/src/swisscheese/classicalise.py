"""Turn a finite Swiss cheese with positive radius margin into a classical one.

The engine repeatedly finds the first classicality violation and removes it
with one of two moves, each of which drops exactly one disc:

* merge: two discs with touching closures are replaced by the smallest disc
  containing both, placed at the lower of the two indices;
* shrink: a disc whose closure leaves the open outer disc is deleted and the
  outer disc is replaced by the largest closed disc inside it that avoids
  the deleted disc.

Overlapping pairs are handled before poke-outs, both in index order.  Every
move comes with an allocation map, and the composite map certifies the
result.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from . import _kernels
from .allocation import (
    COMPLEMENT,
    AllocationMap,
    assignment_from_dict,
    assignment_to_dict,
    compose_all,
)
from .cheese import (
    OverlapPair,
    PokesOut,
    SwissCheese,
    cheese_from_dict,
    cheese_to_dict,
    delta,
    poking_out,
)
from .errors import HypothesisError, InvalidInputError, PreconditionError
from .geometry import (
    DEFAULT_TOL,
    check_tol,
    closure_inside_interior,
    closures_intersect,
    merge_discs,
    shrink_outer,
)

Violation = Union[OverlapPair, PokesOut]


@dataclass(frozen=True, eq=False)
class Step:
    violation: Violation
    before: SwissCheese
    after: SwissCheese
    map: AllocationMap

    @property
    def kind(self) -> str:
        return "merge" if isinstance(self.violation, OverlapPair) else "shrink"


@dataclass(frozen=True, eq=False)
class Trace:
    steps: tuple
    overall: AllocationMap

    def __len__(self):
        return len(self.steps)


def _require_normalized(c: SwissCheese):
    if (c.r <= 0.0).any():
        raise PreconditionError("cheese must be normalised (no zero-radius discs)")


def find_violation(c: SwissCheese, tol: float = DEFAULT_TOL) -> Optional[Violation]:
    """First classicality violation: overlap pairs (lexicographic), then poke-outs."""
    tol = check_tol(tol)
    if len(c) >= 2:
        i, j = _kernels.first_overlap(
            np.ascontiguousarray(c.x), np.ascontiguousarray(c.y),
            np.ascontiguousarray(c.r), tol)
        if i >= 0:
            return OverlapPair(int(i), int(j))
    bad = poking_out(c, tol)
    return bad[0] if bad else None


def _merge(c: SwissCheese, i: int, j: int, tol: float) -> Step:
    lo, hi = min(i, j), max(i, j)
    merged = merge_discs(c.disc(i), c.disc(j), tol)
    xyr = np.delete(c.xyr, hi, axis=0)
    xyr[lo] = (merged.center.x, merged.center.y, merged.radius)
    after = SwissCheese._trusted(c.outer, xyr)

    n = len(c)
    assignment = np.arange(n)
    assignment[hi + 1:] -= 1
    assignment[[i, j]] = lo
    return Step(OverlapPair(lo, hi), c, after, AllocationMap(c, after, assignment))


def _shrink(c: SwissCheese, i: int) -> Step:
    d = c.disc(i)
    # with delta > 0 we have r(D_i) < r(outer), so the move is well defined
    assert d.radius < c.outer.radius, "shrink called on a disc at least as large as the outer disc"
    outer = shrink_outer(c.outer, d)
    after = SwissCheese._trusted(outer, np.delete(c.xyr, i, axis=0))

    n = len(c)
    assignment = np.arange(n)
    assignment[i + 1:] -= 1
    assignment[i] = COMPLEMENT
    return Step(PokesOut(i), c, after, AllocationMap(c, after, assignment))


def step_merge(c: SwissCheese, i: int, j: int, tol: float = DEFAULT_TOL) -> Step:
    """Replace discs ``i`` and ``j`` by their merged disc (at index ``min(i, j)``)."""
    tol = check_tol(tol)
    _require_normalized(c)
    n = len(c)
    if not (0 <= i < n and 0 <= j < n) or i == j:
        raise PreconditionError(f"step_merge needs two distinct indices below {n}")
    if not closures_intersect(c.disc(i), c.disc(j), tol):
        raise PreconditionError(f"closures of discs {i} and {j} do not intersect")
    return _merge(c, i, j, tol)


def step_shrink(c: SwissCheese, i: int, tol: float = DEFAULT_TOL) -> Step:
    """Delete disc ``i`` and shrink the outer disc away from it."""
    tol = check_tol(tol)
    _require_normalized(c)
    if not 0 <= i < len(c):
        raise PreconditionError(f"disc index {i} out of range")
    if closure_inside_interior(c.disc(i), c.outer, tol):
        raise PreconditionError(f"disc {i} already lies inside the open outer disc")
    if not delta(c) > 0.0:
        raise HypothesisError("shrink needs a strictly positive radius margin")
    return _shrink(c, i)


def classicalise(c: SwissCheese, tol: float = DEFAULT_TOL):
    """Return ``(classical_cheese, trace)``.

    Needs a normalised cheese with ``delta(c) > 0``.  Terminates after at
    most ``len(c)`` moves since each move removes one disc.
    """
    tol = check_tol(tol)
    _require_normalized(c)
    if not delta(c) > 0.0:
        raise HypothesisError(
            f"classicalisation requires delta(D) > 0, got delta = {delta(c)!r}")

    steps = []
    current = c
    budget = len(c)
    while True:
        v = find_violation(current, tol)
        if v is None:
            break
        if len(steps) >= budget:  # pragma: no cover - would be a logic error
            raise AssertionError("classicalisation exceeded one move per disc")
        if isinstance(v, OverlapPair):
            step = _merge(current, v.i, v.j, tol)
        else:
            step = _shrink(current, v.i)
        steps.append(step)
        current = step.after
    overall = compose_all(c, [s.map for s in steps])
    return current, Trace(tuple(steps), overall)


# --------------------------------------------------------------------------
# trace JSON
# --------------------------------------------------------------------------

def trace_to_dict(trace: Trace) -> dict:
    steps = []
    for s in trace.steps:
        v = s.violation
        indices = [v.i, v.j] if isinstance(v, OverlapPair) else [v.i]
        steps.append({"kind": s.kind, "indices": indices, "after": cheese_to_dict(s.after)})
    return {"steps": steps, "overall": assignment_to_dict(trace.overall)}


def replay_trace(source: SwissCheese, obj):
    """Rebuild the step maps recorded in a trace JSON object.

    Returns ``(steps, overall)`` where ``steps`` holds :class:`Step` objects
    whose ``after`` cheeses are the recorded ones (not recomputed) and whose
    maps follow the documented index bookkeeping, and ``overall`` is the
    recorded overall map.  Nothing is checked here beyond structure; use
    :func:`swisscheese.allocation.check_axioms` on the result.
    """
    if not isinstance(obj, dict) or not isinstance(obj.get("steps"), list):
        raise InvalidInputError("trace JSON needs a 'steps' list")
    steps = []
    current = source
    for k, rec in enumerate(obj["steps"]):
        if not isinstance(rec, dict):
            raise InvalidInputError(f"steps[{k}] must be an object")
        kind = rec.get("kind")
        idx = rec.get("indices")
        if not isinstance(idx, list) or not all(
                isinstance(t, int) and not isinstance(t, bool) for t in idx):
            raise InvalidInputError(f"steps[{k}].indices must be a list of integers")
        after = cheese_from_dict(rec.get("after"))
        n = len(current)
        assignment = np.arange(n)
        if kind == "merge" and len(idx) == 2:
            i, j = idx
            if not (0 <= i < n and 0 <= j < n and i != j):
                raise InvalidInputError(f"steps[{k}]: bad merge indices {idx}")
            lo, hi = min(i, j), max(i, j)
            assignment[hi + 1:] -= 1
            assignment[[i, j]] = lo
            v = OverlapPair(lo, hi)
        elif kind == "shrink" and len(idx) == 1:
            i, = idx
            if not 0 <= i < n:
                raise InvalidInputError(f"steps[{k}]: bad shrink index {i}")
            assignment[i + 1:] -= 1
            assignment[i] = COMPLEMENT
            v = PokesOut(i)
        else:
            raise InvalidInputError(f"steps[{k}]: unknown step {kind!r} with indices {idx}")
        steps.append(Step(v, current, after, AllocationMap(current, after, assignment)))
        current = after
    overall = AllocationMap(source, current, assignment_from_dict(obj.get("overall")))
    return steps, overall
