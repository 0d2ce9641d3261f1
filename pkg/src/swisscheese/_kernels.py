"""Hot inner loops.

Every kernel exists twice: a plain-loop version that numba compiles with
``@njit`` and a vectorised numpy version.  Both evaluate the same floating
point expressions in the same order, so the geometric verdicts agree bit for
bit.  Quadrature sums may differ in the last ulp (numpy uses pairwise
summation).

Set ``CHEESE_NUMBA=0`` in the environment to force the numpy path; it is also
used automatically when numba is not importable.
"""
import math
import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None

_FLAG = os.environ.get("CHEESE_NUMBA", "1").strip().lower()
USE_NUMBA = numba is not None and _FLAG not in ("0", "false", "no", "off")


# --------------------------------------------------------------------------
# first overlapping pair (lexicographic), used by the classicalisation loop
# --------------------------------------------------------------------------

def _first_overlap_loop(x, y, r, tau):
    n = x.shape[0]
    for i in range(n):
        if r[i] <= 0.0:
            continue
        for j in range(i + 1, n):
            if r[j] <= 0.0:
                continue
            dx = x[i] - x[j]
            dy = y[i] - y[j]
            if math.sqrt(dx * dx + dy * dy) < r[i] + r[j] + tau:
                return i, j
    return -1, -1


def _overlap_matrix(x, y, r, tau):
    dx = x[:, None] - x[None, :]
    dy = y[:, None] - y[None, :]
    d = np.sqrt(dx * dx + dy * dy)
    hit = d < r[:, None] + r[None, :] + tau
    hit &= (r[:, None] > 0.0) & (r[None, :] > 0.0)
    return np.triu(hit, k=1)


def _first_overlap_np(x, y, r, tau):
    if x.shape[0] < 2:
        return -1, -1
    idx = np.argwhere(_overlap_matrix(x, y, r, tau))
    if idx.shape[0] == 0:
        return -1, -1
    return int(idx[0, 0]), int(idx[0, 1])


# --------------------------------------------------------------------------
# membership of many points in X = outer \ union(discs)
# --------------------------------------------------------------------------

def _points_in_cheese_loop(px, py, x, y, r, ox, oy, orad):
    m = px.shape[0]
    n = x.shape[0]
    out = np.zeros(m, dtype=np.bool_)
    r2 = orad * orad
    for k in range(m):
        dx = px[k] - ox
        dy = py[k] - oy
        if dx * dx + dy * dy > r2:
            continue
        inside = True
        for i in range(n):
            ex = px[k] - x[i]
            ey = py[k] - y[i]
            if ex * ex + ey * ey < r[i] * r[i]:
                inside = False
                break
        out[k] = inside
    return out


def _points_in_cheese_np(px, py, x, y, r, ox, oy, orad, chunk=4096):
    dx = px - ox
    dy = py - oy
    out = dx * dx + dy * dy <= orad * orad
    if x.shape[0] == 0:
        return out
    r2 = r * r
    for s in range(0, px.shape[0], chunk):
        ex = px[s:s + chunk, None] - x[None, :]
        ey = py[s:s + chunk, None] - y[None, :]
        hole = (ex * ex + ey * ey < r2[None, :]).any(axis=1)
        out[s:s + chunk] &= ~hole
    return out


# --------------------------------------------------------------------------
# trapezoidal contour integral of a rational function over a chain
# --------------------------------------------------------------------------

def _chain_integral_loop(cx, cy, rho, sign, roots, poly, poles, orders, coefs):
    n = roots.shape[0]
    h = 2.0 * math.pi / n
    total = 0j
    maxabs = 0.0
    for c in range(cx.shape[0]):
        center = complex(cx[c], cy[c])
        acc = 0j
        for k in range(n):
            w = roots[k]
            z = center + rho[c] * w
            val = 0j
            for q in range(poly.shape[0] - 1, -1, -1):
                val = val * z + poly[q]
            for q in range(poles.shape[0]):
                inv = 1.0 / (z - poles[q])
                term = inv
                for _ in range(orders[q] - 1):
                    term *= inv
                val += coefs[q] * term
            a = abs(val)
            if a > maxabs:
                maxabs = a
            acc += val * w
        total += sign[c] * 1j * rho[c] * h * acc
    return total, maxabs


def _chain_integral_np(cx, cy, rho, sign, roots, poly, poles, orders, coefs):
    n = roots.shape[0]
    h = 2.0 * math.pi / n
    total = 0j
    maxabs = 0.0
    for c in range(cx.shape[0]):
        z = complex(cx[c], cy[c]) + rho[c] * roots
        val = np.zeros(n, dtype=np.complex128)
        for q in range(poly.shape[0] - 1, -1, -1):
            val = val * z + poly[q]
        for q in range(poles.shape[0]):
            # integer powers by repeated products (complex pow is slow under numba)
            inv = 1.0 / (z - poles[q])
            term = inv
            for _ in range(orders[q] - 1):
                term = term * inv
            val += coefs[q] * term
        if n:
            maxabs = max(maxabs, float(np.abs(val).max()))
        total += sign[c] * 1j * rho[c] * h * complex((val * roots).sum())
    return total, maxabs


NUMPY = {
    "first_overlap": _first_overlap_np,
    "points_in_cheese": _points_in_cheese_np,
    "chain_integral": _chain_integral_np,
}

if numba is not None:
    NUMBA = {
        "first_overlap": numba.njit(cache=True)(_first_overlap_loop),
        "points_in_cheese": numba.njit(cache=True)(_points_in_cheese_loop),
        "chain_integral": numba.njit(cache=True)(_chain_integral_loop),
    }
else:  # pragma: no cover
    NUMBA = None

_ACTIVE = NUMBA if USE_NUMBA else NUMPY
BACKEND = "numba" if USE_NUMBA else "numpy"

first_overlap = _ACTIVE["first_overlap"]
points_in_cheese = _ACTIVE["points_in_cheese"]
chain_integral = _ACTIVE["chain_integral"]


def unit_roots(n):
    """Nodes exp(2*pi*i*k/n), k = 0..n-1, shared by both backends."""
    theta = (2.0 * np.pi / n) * np.arange(n)
    return np.cos(theta) + 1j * np.sin(theta)
