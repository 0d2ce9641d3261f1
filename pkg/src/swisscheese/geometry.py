"""Disc primitives, tolerance-aware predicates, and the merge / shrink moves.

All comparisons are in binary64.  Predicates that classify configurations
take a slack ``tol`` (default :data:`DEFAULT_TOL`); point membership is exact.
Distances are always ``sqrt(dx*dx + dy*dy)`` so that the scalar predicates
here agree bit for bit with the array kernels.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Number

from .errors import InvalidInputError, PreconditionError

DEFAULT_TOL = 1e-9


def check_tol(tol: float) -> float:
    tol = float(tol)
    if not (math.isfinite(tol) and 0.0 < tol < 1.0):
        raise InvalidInputError(f"tolerance must satisfy 0 < tol < 1, got {tol!r}")
    return tol


def _finite(value, what):
    if isinstance(value, bool) or not isinstance(value, Number):
        raise InvalidInputError(f"{what} must be a real number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise InvalidInputError(f"{what} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        object.__setattr__(self, "x", _finite(self.x, "x"))
        object.__setattr__(self, "y", _finite(self.y, "y"))

    @classmethod
    def of(cls, z) -> "Point":
        """Coerce a Point, a complex/real number or an (x, y) pair."""
        if isinstance(z, Point):
            return z
        if isinstance(z, complex):
            return cls(z.real, z.imag)
        if isinstance(z, Number) and not isinstance(z, bool):
            return cls(float(z), 0.0)
        try:
            x, y = z
        except (TypeError, ValueError):
            raise InvalidInputError(f"cannot interpret {z!r} as a point") from None
        return cls(x, y)

    def __complex__(self):
        return complex(self.x, self.y)


@dataclass(frozen=True)
class OpenDisc:
    """Open disc; radius 0 stands for the empty set."""

    center: Point
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", Point.of(self.center))
        r = _finite(self.radius, "radius")
        if r < 0.0:
            raise InvalidInputError(f"radius must be >= 0, got {r!r}")
        object.__setattr__(self, "radius", r)


@dataclass(frozen=True)
class ClosedDisc:
    center: Point
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", Point.of(self.center))
        r = _finite(self.radius, "radius")
        if r <= 0.0:
            raise InvalidInputError(f"closed disc radius must be > 0, got {r!r}")
        object.__setattr__(self, "radius", r)


def disc(center, radius) -> OpenDisc:
    """``disc(-0.25, 1.75)`` or ``disc(0.5+0.5j, 1/6)``."""
    return OpenDisc(Point.of(center), radius)


def cdisc(center, radius) -> ClosedDisc:
    return ClosedDisc(Point.of(center), radius)


def distance(a: Point, b: Point) -> float:
    dx = a.x - b.x
    dy = a.y - b.y
    return math.sqrt(dx * dx + dy * dy)


def closures_intersect(a: OpenDisc, b: OpenDisc, tol: float = DEFAULT_TOL) -> bool:
    """True iff both discs are non-empty and ``d < r_a + r_b + tol``."""
    tol = check_tol(tol)
    if a.radius <= 0.0 or b.radius <= 0.0:
        return False
    return distance(a.center, b.center) < a.radius + b.radius + tol


def closure_inside_interior(inner: OpenDisc, outer: ClosedDisc,
                            tol: float = DEFAULT_TOL) -> bool:
    """True iff ``d + r_inner < r_outer - tol``."""
    tol = check_tol(tol)
    return distance(inner.center, outer.center) + inner.radius < outer.radius - tol


def point_in_open_disc(p, d: OpenDisc) -> bool:
    p = Point.of(p)
    dx = p.x - d.center.x
    dy = p.y - d.center.y
    return dx * dx + dy * dy < d.radius * d.radius


def point_in_closed_disc(p, d: ClosedDisc) -> bool:
    p = Point.of(p)
    dx = p.x - d.center.x
    dy = p.y - d.center.y
    return dx * dx + dy * dy <= d.radius * d.radius


def _order_key(d: OpenDisc):
    return (d.radius, d.center.x, d.center.y)


def merge_discs(e: OpenDisc, e2: OpenDisc, tol: float = DEFAULT_TOL) -> OpenDisc:
    """Smallest open disc containing ``e | e2``.

    The two discs must have intersecting closures (within ``tol``).  The
    result has radius at most ``r(e) + r(e2)`` (plus ``tol/2`` when the
    closures are only tol-close).  Arguments are put in a canonical order
    first, so ``merge_discs(a, b) == merge_discs(b, a)`` exactly.
    """
    if not closures_intersect(e, e2, tol):
        raise PreconditionError("merge_discs needs discs whose closures intersect")
    a, b = sorted((e, e2), key=_order_key)
    d = distance(a.center, b.center)
    # a has the smaller (or equal) radius after sorting
    if d + a.radius <= b.radius:
        return b
    r = (d + a.radius + b.radius) / 2.0
    t = (r - a.radius) / d
    cx = a.center.x + t * (b.center.x - a.center.x)
    cy = a.center.y + t * (b.center.y - a.center.y)
    return OpenDisc(Point(cx, cy), r)


def shrink_outer(h: ClosedDisc, e: OpenDisc) -> ClosedDisc:
    """Largest closed disc inside ``h`` that misses the open disc ``e``.

    When ``closure(e)`` misses ``h`` (or only touches it from outside),
    ``h`` is returned unchanged.  Otherwise the new disc is internally
    tangent to ``h`` on the far side from ``e`` and externally tangent to
    ``e``; its radius is ``(d + r(h) - r(e)) / 2``, which is at least
    ``r(h) - r(e)`` whenever ``closure(e)`` is not inside ``int(h)``.
    Concentric input shifts the result along +x.
    """
    d = distance(h.center, e.center)
    if d + h.radius <= e.radius:
        raise PreconditionError("shrink_outer: the removed disc swallows the outer disc")
    if e.radius <= 0.0 or d >= h.radius + e.radius:
        return h
    r = min((d + h.radius - e.radius) / 2.0, h.radius)
    if d > 0.0:
        ux = (h.center.x - e.center.x) / d
        uy = (h.center.y - e.center.y) / d
    else:
        ux, uy = 1.0, 0.0
    shift = h.radius - r
    return ClosedDisc(Point(h.center.x + shift * ux, h.center.y + shift * uy), r)
