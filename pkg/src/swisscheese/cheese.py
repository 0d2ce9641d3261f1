"""Swiss cheese data model, radius margin, classicality and carpet reports.

A Swiss cheese is a closed outer disc together with a finite, ordered list of
open discs; the associated set is the outer disc minus the union of the open
discs.  Disc data lives in a read-only ``(n, 3)`` array of ``(x, y, r)`` rows
so that the array kernels can consume it without copying.
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from . import _kernels
from .errors import InvalidInputError
from .geometry import (
    DEFAULT_TOL,
    ClosedDisc,
    OpenDisc,
    Point,
    check_tol,
    point_in_closed_disc,
    point_in_open_disc,
)


class SwissCheese:
    """Outer closed disc plus an ordered tuple of removed open discs.

    Instances are immutable and compare structurally (exact float equality).
    """

    __slots__ = ("outer", "_xyr", "_hash")

    def __init__(self, outer: ClosedDisc, discs: Iterable[OpenDisc] = ()):
        if not isinstance(outer, ClosedDisc):
            raise InvalidInputError("outer must be a ClosedDisc")
        rows = []
        for d in discs:
            if not isinstance(d, OpenDisc):
                raise InvalidInputError(f"expected OpenDisc, got {d!r}")
            rows.append((d.center.x, d.center.y, d.radius))
        xyr = np.array(rows, dtype=np.float64).reshape(-1, 3)
        self._init(outer, xyr)

    def _init(self, outer, xyr):
        xyr.setflags(write=False)
        object.__setattr__(self, "outer", outer)
        object.__setattr__(self, "_xyr", xyr)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def from_arrays(cls, outer: ClosedDisc, xyr) -> "SwissCheese":
        """Build from an ``(n, 3)`` array of ``(x, y, r)`` rows (copied, validated)."""
        xyr = np.array(xyr, dtype=np.float64).reshape(-1, 3)
        if not np.isfinite(xyr).all():
            raise InvalidInputError("disc data must be finite")
        if (xyr[:, 2] < 0.0).any():
            raise InvalidInputError("disc radii must be >= 0")
        obj = cls.__new__(cls)
        obj._init(outer, xyr)
        return obj

    @classmethod
    def _trusted(cls, outer, xyr):
        # internal fast path: xyr is a fresh array produced by library code
        obj = cls.__new__(cls)
        obj._init(outer, xyr)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("SwissCheese is immutable")

    @property
    def xyr(self) -> np.ndarray:
        return self._xyr

    @property
    def x(self) -> np.ndarray:
        return self._xyr[:, 0]

    @property
    def y(self) -> np.ndarray:
        return self._xyr[:, 1]

    @property
    def r(self) -> np.ndarray:
        return self._xyr[:, 2]

    @property
    def discs(self) -> tuple:
        return tuple(OpenDisc(Point(x, y), r) for x, y, r in self._xyr.tolist())

    def disc(self, i: int) -> OpenDisc:
        x, y, r = self._xyr[i].tolist()
        return OpenDisc(Point(x, y), r)

    def __len__(self):
        return self._xyr.shape[0]

    def __eq__(self, other):
        if not isinstance(other, SwissCheese):
            return NotImplemented
        if self is other:
            return True
        return self.outer == other.outer and np.array_equal(self._xyr, other._xyr)

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.outer, self._xyr.tobytes())))
        return self._hash

    def __repr__(self):
        o = self.outer
        return (f"SwissCheese(outer=cdisc(({o.center.x}, {o.center.y}), {o.radius}), "
                f"n_discs={len(self)})")


# --------------------------------------------------------------------------
# basic operations
# --------------------------------------------------------------------------

def normalize(c: SwissCheese) -> SwissCheese:
    """Drop zero-radius (empty) discs, keeping the order of the rest."""
    keep = c.r > 0.0
    if keep.all():
        return c
    return SwissCheese._trusted(c.outer, c.xyr[keep].copy())


def radius_sum(c: SwissCheese) -> float:
    return math.fsum(c.r.tolist())


def delta(c: SwissCheese) -> float:
    """Radius margin: outer radius minus the sum of the removed radii."""
    return c.outer.radius - radius_sum(c)


def contains_point(c: SwissCheese, p) -> bool:
    """Membership in X = outer minus the union of the open discs."""
    p = Point.of(p)
    if not point_in_closed_disc(p, c.outer):
        return False
    return not any(point_in_open_disc(p, d) for d in c.discs)


def contains_points(c: SwissCheese, px, py) -> np.ndarray:
    """Vectorised :func:`contains_point` over coordinate arrays."""
    px = np.ascontiguousarray(px, dtype=np.float64)
    py = np.ascontiguousarray(py, dtype=np.float64)
    o = c.outer
    return _kernels.points_in_cheese(
        px, py, np.ascontiguousarray(c.x), np.ascontiguousarray(c.y),
        np.ascontiguousarray(c.r), o.center.x, o.center.y, o.radius)


# --------------------------------------------------------------------------
# classicality
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class OverlapPair:
    i: int
    j: int


@dataclass(frozen=True)
class PokesOut:
    i: int


@dataclass(frozen=True)
class RadiusSumUnbounded:
    pass


class Verdict(str, enum.Enum):
    CLASSICAL = "classical"
    SEMICLASSICAL_ONLY = "semiclassical-only"
    NEITHER = "neither"


@dataclass(frozen=True)
class ClassicalityReport:
    verdict: Verdict
    violations: tuple
    radius_sum: float
    delta: float


def _outer_distances(c: SwissCheese) -> np.ndarray:
    dx = c.x - c.outer.center.x
    dy = c.y - c.outer.center.y
    return np.sqrt(dx * dx + dy * dy)


def _pair_distances(c: SwissCheese) -> np.ndarray:
    dx = c.x[:, None] - c.x[None, :]
    dy = c.y[:, None] - c.y[None, :]
    return np.sqrt(dx * dx + dy * dy)


def overlap_pairs(c: SwissCheese, tol: float = DEFAULT_TOL) -> list:
    """All pairs i < j with intersecting closures, lexicographically."""
    if len(c) < 2:
        return []
    hit = _kernels._overlap_matrix(c.x, c.y, c.r, check_tol(tol))
    return [OverlapPair(int(i), int(j)) for i, j in np.argwhere(hit)]


def poking_out(c: SwissCheese, tol: float = DEFAULT_TOL) -> list:
    """Indices of discs whose closure is not inside the outer interior."""
    bad = ~(_outer_distances(c) + c.r < c.outer.radius - check_tol(tol))
    return [PokesOut(int(i)) for i in np.flatnonzero(bad)]


def is_semiclassical(c: SwissCheese, tol: float = DEFAULT_TOL) -> bool:
    """Open discs pairwise disjoint and each closure inside the outer disc (tol-tangency allowed)."""
    tol = check_tol(tol)
    if not math.isfinite(radius_sum(c)):
        return False
    if not (_outer_distances(c) + c.r <= c.outer.radius + tol).all():
        return False
    if len(c) < 2:
        return True
    d = _pair_distances(c)
    ok = d >= c.r[:, None] + c.r[None, :] - tol
    ok |= (c.r[:, None] <= 0.0) | (c.r[None, :] <= 0.0)
    np.fill_diagonal(ok, True)
    return bool(ok.all())


def classify(c: SwissCheese, tol: float = DEFAULT_TOL) -> ClassicalityReport:
    """Classical / semiclassical-only / neither, with the classical violations.

    Classical means every pair of closures is separated (``d >= r_i + r_j +
    tol``) and every closure sits in the open outer disc (``d + r < R -
    tol``).  Violations are listed overlap pairs first, lexicographically,
    then poke-outs by index.
    """
    tol = check_tol(tol)
    violations = overlap_pairs(c, tol) + poking_out(c, tol)
    s = radius_sum(c)
    if not math.isfinite(s):
        violations.append(RadiusSumUnbounded())
    if not violations:
        verdict = Verdict.CLASSICAL
    elif is_semiclassical(c, tol):
        verdict = Verdict.SEMICLASSICAL_ONLY
    else:
        verdict = Verdict.NEITHER
    return ClassicalityReport(verdict, tuple(violations), s, c.outer.radius - s)


def is_classical(c: SwissCheese, tol: float = DEFAULT_TOL) -> bool:
    return classify(c, tol).verdict is Verdict.CLASSICAL


@dataclass(frozen=True)
class CarpetReport:
    """Finitely checkable part of Whyburn's carpet criterion.

    Empty interior is not decided; ``area_deficit`` (outer area minus removed
    area, signed) is only a heuristic for it.
    """

    pairwise_disjoint_closures: bool
    closures_inside_interior: bool
    max_disc_radius: float
    area_deficit: float


def whyburn_report(c: SwissCheese, tol: float = DEFAULT_TOL) -> CarpetReport:
    tol = check_tol(tol)
    r = c.r
    return CarpetReport(
        pairwise_disjoint_closures=not overlap_pairs(c, tol),
        closures_inside_interior=not poking_out(c, tol),
        max_disc_radius=float(r.max()) if len(c) else 0.0,
        area_deficit=math.pi * c.outer.radius ** 2 - math.pi * math.fsum((r * r).tolist()),
    )


# --------------------------------------------------------------------------
# JSON
# --------------------------------------------------------------------------

def _num(v):
    if not math.isfinite(v):
        raise InvalidInputError("cannot serialise non-finite number")
    return float(v)


def _disc_dict(x, y, r):
    return {"cx": _num(x), "cy": _num(y), "r": _num(r)}


def cheese_to_dict(c: SwissCheese) -> dict:
    o = c.outer
    return {
        "outer": _disc_dict(o.center.x, o.center.y, o.radius),
        "discs": [_disc_dict(x, y, r) for x, y, r in c.xyr.tolist()],
    }


def _read_disc(obj, where):
    if not isinstance(obj, dict):
        raise InvalidInputError(f"{where}: expected an object with cx, cy, r")
    try:
        vals = [obj[k] for k in ("cx", "cy", "r")]
    except KeyError as exc:
        raise InvalidInputError(f"{where}: missing key {exc}") from None
    for v in vals:
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise InvalidInputError(f"{where}: coordinates must be numbers")
    return tuple(float(v) for v in vals)


def cheese_from_dict(obj) -> SwissCheese:
    if not isinstance(obj, dict) or "outer" not in obj:
        raise InvalidInputError("cheese JSON needs an 'outer' disc")
    ox, oy, orad = _read_disc(obj["outer"], "outer")
    discs = obj.get("discs", [])
    if not isinstance(discs, list):
        raise InvalidInputError("'discs' must be a list")
    rows = [_read_disc(d, f"discs[{k}]") for k, d in enumerate(discs)]
    return SwissCheese.from_arrays(ClosedDisc(Point(ox, oy), orad), rows)


def dumps(obj, indent: Optional[int] = None) -> str:
    """Deterministic JSON text (shortest round-trip floats, key order kept)."""
    return json.dumps(obj, indent=indent, allow_nan=False, ensure_ascii=True)


def cheese_to_json(c: SwissCheese, indent: Optional[int] = None) -> str:
    return dumps(cheese_to_dict(c), indent=indent)


def cheese_from_json(text: str) -> SwissCheese:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"malformed JSON: {exc}") from None
    return cheese_from_dict(obj)

