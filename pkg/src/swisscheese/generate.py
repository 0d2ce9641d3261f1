"""Deterministic Swiss cheese generators.

Random cheeses use :class:`SplitMix64` and only correctly rounded IEEE
operations (no transcendental calls; disc points come from rejection
sampling), so a seed produces the same bytes on every platform.
"""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .cheese import SwissCheese
from .errors import InvalidInputError
from .geometry import ClosedDisc, Point, cdisc

MAX_CARPET_LEVELS = 6
_MASK64 = (1 << 64) - 1


class SplitMix64:
    """The splitmix64 generator (Steele, Lea & Flood), 64-bit state.

    >>> g = SplitMix64(1234567)
    >>> [g.next_u64() for _ in range(3)]
    [6457827717110365317, 3203168211198807973, 9817491932198370423]
    """

    def __init__(self, seed: int):
        if isinstance(seed, bool) or not isinstance(seed, int):
            raise InvalidInputError(f"seed must be an integer, got {seed!r}")
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / 9007199254740992.0)

    def in_unit_disc(self):
        while True:
            u = 2.0 * self.random() - 1.0
            v = 2.0 * self.random() - 1.0
            if u * u + v * v < 1.0:
                return u, v


# --------------------------------------------------------------------------
# carpet
# --------------------------------------------------------------------------

def _survives(m: int, n: int) -> bool:
    # cell (m, n) of the 3^(k-1) grid lies in an earlier removed square iff
    # some base-3 digit position has digit 1 in both indices
    while m or n:
        if m % 3 == 1 and n % 3 == 1:
            return False
        m //= 3
        n //= 3
    return True


def carpet_discs_exact(levels: int):
    """Exact ``(cx, cy, r)`` Fractions of the discs inscribed in the removed squares.

    Level ``k`` removes the middle square of every surviving cell of side
    ``3**-(k-1)``; the disc inscribed in it has radius ``3**-k / 2``.  Order:
    by level, then ``m``, then ``n``.
    """
    _check_levels(levels)
    out = []
    for k in range(1, levels + 1):
        side = Fraction(1, 3 ** k)
        for m in range(3 ** (k - 1)):
            for n in range(3 ** (k - 1)):
                if _survives(m, n):
                    out.append((side * (3 * m + Fraction(3, 2)),
                                side * (3 * n + Fraction(3, 2)),
                                side / 2))
    return out


def _check_levels(levels):
    if isinstance(levels, bool) or not isinstance(levels, int):
        raise InvalidInputError(f"levels must be an integer, got {levels!r}")
    if not 0 <= levels <= MAX_CARPET_LEVELS:
        raise InvalidInputError(f"levels must be in 0..{MAX_CARPET_LEVELS}, got {levels}")


def carpet_cheese(levels: int) -> SwissCheese:
    """Discs inscribed in the carpet's removed squares, inside the circumscribed disc of the unit square."""
    rows = [(float(x), float(y), float(r)) for x, y, r in carpet_discs_exact(levels)]
    outer = ClosedDisc(Point(0.5, 0.5), math.sqrt(2.0) / 2.0)
    return SwissCheese.from_arrays(outer, rows)


# --------------------------------------------------------------------------
# random
# --------------------------------------------------------------------------

def random_cheese(count: int, seed: int, radius_budget: float = 0.5,
                  overlap_bias: float = 0.0) -> SwissCheese:
    """Seeded random cheese in the closed unit disc with radius sum ``radius_budget``.

    Radii are the spacings of ``count - 1`` sorted uniforms scaled by the
    budget (a flat Dirichlet split).  Each centre is uniform in the unit
    disc, except that with probability ``overlap_bias`` it is drawn inside
    the disc of radius ``r_j + r_new`` around a uniformly chosen earlier
    disc ``j``, which forces the two closures to meet.
    """
    if isinstance(count, bool) or not isinstance(count, int) or count < 0:
        raise InvalidInputError(f"count must be a non-negative integer, got {count!r}")
    radius_budget = float(radius_budget)
    overlap_bias = float(overlap_bias)
    if not 0.0 < radius_budget < 1.0:
        raise InvalidInputError("radius_budget must lie in (0, 1)")
    if not 0.0 <= overlap_bias <= 1.0:
        raise InvalidInputError("overlap_bias must lie in [0, 1]")

    rng = SplitMix64(seed)
    cuts = sorted(rng.random() for _ in range(max(count - 1, 0)))
    bounds = [0.0] + cuts + [1.0]
    radii = [radius_budget * (bounds[k + 1] - bounds[k]) for k in range(count)]

    xyr = np.zeros((count, 3))
    for k in range(count):
        if k > 0 and rng.random() < overlap_bias:
            j = min(int(rng.random() * k), k - 1)
            reach = xyr[j, 2] + radii[k]
            u, v = rng.in_unit_disc()
            xyr[k] = (xyr[j, 0] + reach * u, xyr[j, 1] + reach * v, radii[k])
        else:
            u, v = rng.in_unit_disc()
            xyr[k] = (u, v, radii[k])
    return SwissCheese.from_arrays(cdisc(0.0, 1.0), xyr)


# --------------------------------------------------------------------------
# adversarial families
# --------------------------------------------------------------------------

def nested_tower(n: int) -> SwissCheese:
    """Concentric discs of radii 1, 1/2, ..., 2**-(n-1) inside cdisc(0, 4)."""
    _check_n(n)
    return SwissCheese.from_arrays(cdisc(0.0, 4.0), [(0.0, 0.0, 0.5 ** k) for k in range(n)])


def tangent_chain(n: int) -> SwissCheese:
    """Unit discs centred at 0, 2, 4, ... (consecutive closures touch), outer margin 1."""
    _check_n(n)
    return SwissCheese.from_arrays(cdisc(float(n - 1), float(n + 1)),
                                   [(2.0 * k, 0.0, 1.0) for k in range(n)])


def protruding_fan(n: int) -> SwissCheese:
    """``n`` discs centred on the boundary of cdisc(0, 2) at equal angles.

    Radius is ``min(0.25, 1/n)``, so the margin is at least 1.
    """
    _check_n(n)
    r = min(0.25, 1.0 / n)
    rows = [(2.0 * math.cos(2.0 * math.pi * k / n), 2.0 * math.sin(2.0 * math.pi * k / n), r)
            for k in range(n)]
    return SwissCheese.from_arrays(cdisc(0.0, 2.0), rows)


ADVERSARIAL = {"nested": nested_tower, "tangent": tangent_chain, "fan": protruding_fan}


def adversarial_cheese(kind: str, n: int) -> SwissCheese:
    try:
        make = ADVERSARIAL[kind]
    except KeyError:
        raise InvalidInputError(f"unknown adversarial kind {kind!r}") from None
    return make(n)


def _check_n(n):
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InvalidInputError(f"n must be a positive integer, got {n!r}")
