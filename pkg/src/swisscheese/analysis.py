"""Boundary chains, trapezoidal contour integrals and the annihilation check.

The boundary chain of a cheese is its outer circle (positively oriented)
followed by every removed circle (negatively oriented).  For a classical
cheese, integrating a rational function whose poles all sit inside removed
discs or outside the outer disc over this chain gives zero; a pole inside
the cheese set leaves ``2*pi*i`` times its residue.

The trapezoidal rule on a circle converges geometrically for analytic
integrands, with error governed by the ratio of the circle radius to the
distance of the nearest singularity.  :func:`aliasing_estimate` exposes that
error model so callers can refuse unresolvable configurations instead of
reporting noise.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from numbers import Number
from typing import Iterable, Optional

import numpy as np

from . import _kernels
from .cheese import SwissCheese, is_classical
from .errors import InvalidInputError, PreconditionError, QuadratureError
from .geometry import DEFAULT_TOL, Point, check_tol

TWO_PI = 2.0 * math.pi
MIN_NODES = 16
MAX_AUTO_NODES = 1 << 18


def _as_complex(z) -> complex:
    if isinstance(z, Point):
        return complex(z)
    if isinstance(z, Number) and not isinstance(z, bool):
        z = complex(z)
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise InvalidInputError("complex value must be finite")
        return z
    raise InvalidInputError(f"expected a number or Point, got {z!r}")


@dataclass(frozen=True)
class OrientedCircle:
    center: complex
    radius: float
    orientation: int = 1

    def __post_init__(self):
        object.__setattr__(self, "center", _as_complex(self.center))
        r = float(self.radius)
        if not (math.isfinite(r) and r > 0.0):
            raise InvalidInputError("circle radius must be finite and > 0")
        object.__setattr__(self, "radius", r)
        if self.orientation not in (1, -1):
            raise InvalidInputError("orientation must be +1 or -1")


@dataclass(frozen=True)
class Chain:
    """Formal sum of oriented circles; ``+`` concatenates."""

    circles: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "circles", tuple(self.circles))

    def __add__(self, other: "Chain") -> "Chain":
        return Chain(self.circles + other.circles)

    def __len__(self):
        return len(self.circles)

    def __iter__(self):
        return iter(self.circles)

    def arrays(self):
        cx = np.array([c.center.real for c in self.circles], dtype=np.float64)
        cy = np.array([c.center.imag for c in self.circles], dtype=np.float64)
        rho = np.array([c.radius for c in self.circles], dtype=np.float64)
        sign = np.array([float(c.orientation) for c in self.circles], dtype=np.float64)
        return cx, cy, rho, sign


@dataclass(frozen=True)
class PoleTerm:
    """``coef / (z - pole) ** order``."""

    pole: complex
    order: int = 1
    coef: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "pole", _as_complex(self.pole))
        object.__setattr__(self, "coef", _as_complex(self.coef))
        if isinstance(self.order, bool) or not isinstance(self.order, int) or self.order < 1:
            raise InvalidInputError("pole order must be an integer >= 1")


@dataclass(frozen=True)
class RationalFunction:
    """Polynomial part (ascending powers of z) plus a sum of pole terms."""

    poly: tuple = ()
    poles: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "poly", tuple(_as_complex(a) for a in self.poly))
        terms = tuple(self.poles)
        if not all(isinstance(t, PoleTerm) for t in terms):
            raise InvalidInputError("poles must be PoleTerm instances")
        object.__setattr__(self, "poles", terms)

    @classmethod
    def simple_pole(cls, pole, coef=1.0) -> "RationalFunction":
        return cls((), (PoleTerm(pole, 1, coef),))

    @property
    def degree(self) -> int:
        return len(self.poly) - 1

    def __call__(self, z):
        z = np.asarray(z, dtype=np.complex128)
        val = np.zeros_like(z)
        for a in reversed(self.poly):
            val = val * z + a
        for t in self.poles:
            val = val + t.coef / (z - t.pole) ** t.order
        return val

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        n = max(len(self.poly), len(other.poly))
        a = list(self.poly) + [0j] * (n - len(self.poly))
        b = list(other.poly) + [0j] * (n - len(other.poly))
        return RationalFunction(tuple(x + y for x, y in zip(a, b)), self.poles + other.poles)

    def __mul__(self, k):
        k = _as_complex(k)
        return RationalFunction(tuple(k * a for a in self.poly),
                                tuple(PoleTerm(t.pole, t.order, k * t.coef) for t in self.poles))

    __rmul__ = __mul__

    def _arrays(self):
        poly = np.array(self.poly, dtype=np.complex128)
        poles = np.array([t.pole for t in self.poles], dtype=np.complex128)
        orders = np.array([t.order for t in self.poles], dtype=np.int64)
        coefs = np.array([t.coef for t in self.poles], dtype=np.complex128)
        return poly, poles, orders, coefs


def boundary_chain(c: SwissCheese) -> Chain:
    o = c.outer
    circles = [OrientedCircle(complex(o.center.x, o.center.y), o.radius, 1)]
    circles += [OrientedCircle(complex(x, y), r, -1) for x, y, r in c.xyr.tolist()]
    return Chain(tuple(circles))


def total_variation(ch: Chain) -> float:
    """Arc-length mass of the chain, ``2*pi*sum(radius)``."""
    return TWO_PI * math.fsum(c.radius for c in ch)


def _check_clear(ch: Chain, points: Iterable[complex], tol: float, what: str):
    if not len(ch):
        return
    cx, cy, rho, _ = ch.arrays()
    for p in points:
        gap = np.abs(np.hypot(p.real - cx, p.imag - cy) - rho)
        if (gap <= tol).any():
            k = int(np.argmin(gap))
            raise QuadratureError(
                f"{what} {p!r} lies within {tol:g} of circle {k} of the chain")


def _check_nodes(nodes) -> int:
    if isinstance(nodes, bool) or not isinstance(nodes, (int, np.integer)) or nodes < MIN_NODES:
        raise InvalidInputError(f"nodes must be an integer >= {MIN_NODES}, got {nodes!r}")
    return int(nodes)


def aliasing_estimate(ch: Chain, f: RationalFunction, nodes: int) -> float:
    """Leading-order trapezoidal error for ``f`` over ``ch`` with ``nodes`` points per circle.

    For a pole of order ``m`` at distance ``s`` from the centre of a circle of
    radius ``rho`` the aliased Laurent coefficient is of size
    ``2*pi*|coef| * binom(N+m, m-1) * q**(N-m+1) * max(s, rho)**(1-m)`` with
    ``q = min(s, rho) / max(s, rho)``.  The polynomial part is integrated
    exactly while ``degree + 1 < nodes``.
    """
    nodes = _check_nodes(nodes)
    if not len(ch):
        return 0.0
    if f.degree + 1 >= nodes:
        return math.inf
    cx, cy, rho, _ = ch.arrays()
    total = 0.0
    for t in f.poles:
        s = np.hypot(t.pole.real - cx, t.pole.imag - cy)
        far = np.maximum(s, rho)
        q = np.minimum(s, rho) / far
        m = t.order
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            qn = q ** nodes
            lead = q ** max(nodes - m + 1, 0) * float(min(math.comb(nodes + m, m - 1), 10 ** 300))
            scale = far ** (1 - m) if m > 1 else 1.0
            est = TWO_PI * abs(t.coef) * lead * scale / (1.0 - qn)
        est = np.where(np.isfinite(est), est, np.inf)
        total += float(est.sum())
    return total


def _integrate_raw(ch: Chain, f: RationalFunction, nodes: int):
    cx, cy, rho, sign = ch.arrays()
    poly, poles, orders, coefs = f._arrays()
    value, maxabs = _kernels.chain_integral(
        cx, cy, rho, sign, _kernels.unit_roots(nodes), poly, poles, orders, coefs)
    return complex(value), float(maxabs)


def integrate(ch: Chain, f: RationalFunction, nodes: int = 256,
              tol: float = DEFAULT_TOL) -> complex:
    """Trapezoidal rule with ``nodes`` equispaced points on every circle.

    Raises :class:`QuadratureError` when a pole lies within ``tol`` of a
    circle of the chain.
    """
    nodes = _check_nodes(nodes)
    tol = check_tol(tol)
    _check_clear(ch, (t.pole for t in f.poles), tol, "pole")
    return _integrate_raw(ch, f, nodes)[0]


def winding_number(ch: Chain, p, nodes: Optional[int] = None,
                   tol: float = DEFAULT_TOL) -> int:
    """Index of ``p`` with respect to ``ch``, from the integral of ``dz/(z-p)``.

    With ``nodes=None`` the node count is the smallest power of two (from
    16) whose predicted aliasing error is below 1e-6 turns.  A rounding
    residual of 0.01 or more raises :class:`QuadratureError`.
    """
    p = _as_complex(p)
    tol = check_tol(tol)
    _check_clear(ch, (p,), tol, "point")
    f = RationalFunction.simple_pole(p)
    if nodes is None:
        nodes = MIN_NODES
        while aliasing_estimate(ch, f, nodes) > TWO_PI * 1e-6 and nodes < MAX_AUTO_NODES:
            nodes *= 2
    nodes = _check_nodes(nodes)
    w = _integrate_raw(ch, f, nodes)[0] / (TWO_PI * 1j)
    k = round(w.real)
    if abs(w - k) >= 0.01:
        raise QuadratureError(
            f"winding number residual {abs(w - k):.3g} too large; increase nodes")
    return int(k)


@dataclass(frozen=True)
class AnnihilationReport:
    value: complex
    admissible: bool
    passed: bool
    threshold: float
    max_modulus: float
    total_variation: float
    aliasing: float


def is_admissible(c: SwissCheese, f: RationalFunction) -> bool:
    """Every pole strictly inside a removed disc or strictly outside the outer disc."""
    o = c.outer
    for t in f.poles:
        dx = t.pole.real - o.center.x
        dy = t.pole.imag - o.center.y
        if dx * dx + dy * dy > o.radius * o.radius:
            continue
        ex = t.pole.real - c.x
        ey = t.pole.imag - c.y
        if not (ex * ex + ey * ey < c.r * c.r).any():
            return False
    return True


def annihilation_test(c: SwissCheese, f: RationalFunction, nodes: int = 512,
                      tol: float = DEFAULT_TOL) -> AnnihilationReport:
    """Integrate ``f`` against the boundary measure of a classical cheese.

    ``passed`` is true unless ``f`` is admissible and ``|value|`` exceeds
    ``tol * max(1, total_variation) * max_modulus``, where ``max_modulus``
    is the largest ``|f|`` seen at the quadrature nodes.  Inadmissible
    functions (a pole inside the cheese set) are reported with their
    nonzero value.  Configurations the rule cannot resolve at this node
    count (pole within ``tol`` of a circle, or predicted aliasing above the
    threshold) raise :class:`QuadratureError`.
    """
    nodes = _check_nodes(nodes)
    tol = check_tol(tol)
    if not is_classical(c, tol):
        raise PreconditionError("annihilation_test needs a classical cheese")
    ch = boundary_chain(c)
    _check_clear(ch, (t.pole for t in f.poles), tol, "pole")
    value, maxabs = _integrate_raw(ch, f, nodes)
    tv = total_variation(ch)
    threshold = tol * max(1.0, tv) * maxabs
    alias = aliasing_estimate(ch, f, nodes)
    if alias > threshold:
        raise QuadratureError(
            f"predicted quadrature error {alias:.3g} exceeds the pass threshold "
            f"{threshold:.3g} at nodes={nodes}; a pole is too close to a contour")
    admissible = is_admissible(c, f)
    passed = (not admissible) or abs(value) <= threshold
    return AnnihilationReport(value, admissible, passed, threshold, maxabs, tv, alias)


# --------------------------------------------------------------------------
# rational-function JSON
# --------------------------------------------------------------------------

def _pair(v, where):
    if (not isinstance(v, list) or len(v) != 2
            or not all(isinstance(a, (int, float)) and not isinstance(a, bool) for a in v)):
        raise InvalidInputError(f"{where}: expected [re, im]")
    return complex(float(v[0]), float(v[1]))


def rational_from_dict(obj) -> RationalFunction:
    if not isinstance(obj, dict):
        raise InvalidInputError("rational function JSON must be an object")
    poly = obj.get("poly", [])
    poles = obj.get("poles", [])
    if not isinstance(poly, list) or not isinstance(poles, list):
        raise InvalidInputError("'poly' and 'poles' must be lists")
    coeffs = tuple(_pair(v, f"poly[{k}]") for k, v in enumerate(poly))
    terms = []
    for k, t in enumerate(poles):
        if not isinstance(t, dict):
            raise InvalidInputError(f"poles[{k}] must be an object")
        order = t.get("order", 1)
        if isinstance(order, bool) or not isinstance(order, int):
            raise InvalidInputError(f"poles[{k}].order must be an integer")
        terms.append(PoleTerm(_pair(t.get("p"), f"poles[{k}].p"), order,
                              _pair(t.get("coef", [1.0, 0.0]), f"poles[{k}].coef")))
    return RationalFunction(coeffs, tuple(terms))


def rational_to_dict(f: RationalFunction) -> dict:
    return {
        "poly": [[a.real, a.imag] for a in f.poly],
        "poles": [{"p": [t.pole.real, t.pole.imag], "order": t.order,
                   "coef": [t.coef.real, t.coef.imag]} for t in f.poles],
    }


def rational_from_json(text: str) -> RationalFunction:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"malformed JSON: {exc}") from None
    return rational_from_dict(obj)
