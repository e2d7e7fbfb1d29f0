"""Central finite-difference stencils.

Second-order stencils are the plain central differences; fourth- and
sixth-order ones are their Richardson extrapolations, written out explicitly.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .errors import StencilOutOfDomain

_FIRST = {
    2: ((-1, -0.5), (1, 0.5)),
    4: ((-2, 1 / 12), (-1, -8 / 12), (1, 8 / 12), (2, -1 / 12)),
    6: ((-3, -1 / 60), (-2, 3 / 20), (-1, -3 / 4), (1, 3 / 4), (2, -3 / 20), (3, 1 / 60)),
}
_SECOND = {
    2: ((-1, 1.0), (0, -2.0), (1, 1.0)),
    4: ((-2, -1 / 12), (-1, 16 / 12), (0, -30 / 12), (1, 16 / 12), (2, -1 / 12)),
    6: ((-3, 1 / 90), (-2, -3 / 20), (-1, 3 / 2), (0, -49 / 18), (1, 3 / 2), (2, -3 / 20),
        (3, 1 / 90)),
}


def _shift(x: np.ndarray, axis: int, delta: float) -> np.ndarray:
    y = np.array(x, dtype=float, copy=True)
    y[axis] += delta
    return y


def _check(points, inside: Callable[[np.ndarray], bool] | None):
    if inside is None:
        return
    for p in points:
        if not inside(p):
            raise StencilOutOfDomain(f"stencil point {np.asarray(p).tolist()} leaves the domain")


def partial(f, x, axis: int, h: float, order: int = 4, inside=None) -> np.ndarray:
    """d f / d x[axis] at ``x`` for array-valued ``f``."""
    x = np.asarray(x, dtype=float)
    pts = [(_shift(x, axis, m * h), c) for m, c in _FIRST[order]]
    _check([p for p, _ in pts], inside)
    return sum(c * np.asarray(f(p)) for p, c in pts) / h


def partial2(f, x, axis: int, h: float, order: int = 4, inside=None, f0=None) -> np.ndarray:
    """Second derivative along a single axis."""
    x = np.asarray(x, dtype=float)
    pts = [(_shift(x, axis, m * h), c) for m, c in _SECOND[order]]
    _check([p for p, _ in pts], inside)
    total = 0.0
    for (p, c), (m, _) in zip(pts, _SECOND[order]):
        val = f0 if (m == 0 and f0 is not None) else f(p)
        total = total + c * np.asarray(val)
    return total / h**2


def mixed(f, x, a: int, b: int, h: float, order: int = 4, inside=None) -> np.ndarray:
    """Mixed partial d^2 f / dx[a] dx[b], a != b, as nested first-derivative stencils."""
    return partial(lambda y: partial(f, y, b, h, order, inside), x, a, h, order, inside)


def jacobian(f, x, h: float, order: int = 4, inside=None) -> np.ndarray:
    """Stack of partials; leading axis indexes the differentiation variable."""
    x = np.asarray(x, dtype=float)
    return np.stack([partial(f, x, i, h, order, inside) for i in range(x.size)])


def hessian(f, x, h: float, order: int = 4, inside=None) -> np.ndarray:
    """Full symmetric second-derivative array, shape (n, n, *f.shape)."""
    x = np.asarray(x, dtype=float)
    f0 = f(x)
    n = x.size
    out = np.empty((n, n) + np.shape(f0))
    for i in range(n):
        out[i, i] = partial2(f, x, i, h, order, inside, f0=f0)
        for j in range(i + 1, n):
            out[i, j] = out[j, i] = mixed(f, x, i, j, h, order, inside)
    return out
