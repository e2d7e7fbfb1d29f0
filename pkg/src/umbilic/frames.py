"""Induced geometry of an immersed spacelike surface: tangent frame, first
fundamental form, orthonormal and null normal frames, and the normal Hodge dual."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

from . import numerics
from .errors import FrameDegeneracy, NotNormal, NotSpacelike, OutOfChart, StencilOutOfDomain
from .geometry import SpacetimeModel, _metric, sharp

TAU_PD = 1e-10
TAU_FRAME = {"analytic": 1e-8, "fd": 1e-4}

Gauge = Union[float, Callable[[float, float], float]]


def _levi_civita() -> np.ndarray:
    eps = np.zeros((4, 4, 4, 4))
    for perm in itertools.permutations(range(4)):
        inversions = sum(1 for i in range(4) for j in range(i + 1, 4) if perm[i] > perm[j])
        eps[perm] = -1.0 if inversions % 2 else 1.0
    return eps


_EPS = _levi_civita()


@dataclass(frozen=True)
class SurfaceModel:
    """Immersion (u, v) -> chart coordinates.

    ``jacobian(u, v)`` returns the rows d Phi/du, d Phi/dv (shape (2, 4)) and
    ``hessian(u, v)`` the second derivatives (shape (2, 2, 4)). Missing
    derivatives are taken by central differences: second order with ``step``
    for the Jacobian, fourth order (Richardson) with ``hessian_step`` for the
    Hessian.
    """

    name: str
    immersion: Callable[[float, float], np.ndarray]
    jacobian: Callable[[float, float], np.ndarray] | None = None
    hessian: Callable[[float, float], np.ndarray] | None = None
    domain: Callable[[float, float], bool] | None = None
    u_range: tuple[float, float] = (0.0, 1.0)
    v_range: tuple[float, float] = (0.0, 1.0)
    step: float = 1e-5
    hessian_step: float = 1e-3
    params: dict = field(default_factory=dict)

    @property
    def path(self) -> str:
        return "analytic" if self.jacobian is not None and self.hessian is not None else "fd"

    def inside(self, uv) -> bool:
        if self.domain is None:
            return True
        return bool(self.domain(float(uv[0]), float(uv[1])))

    def point(self, uv) -> np.ndarray:
        return np.asarray(self.immersion(float(uv[0]), float(uv[1])), dtype=float)

    def tangents(self, uv) -> np.ndarray:
        if self.jacobian is not None:
            return np.asarray(self.jacobian(float(uv[0]), float(uv[1])), dtype=float)
        return numerics.jacobian(self.point, np.asarray(uv, dtype=float), self.step, order=2,
                                 inside=self.inside)

    def second_derivatives(self, uv) -> np.ndarray:
        if self.hessian is not None:
            return np.asarray(self.hessian(float(uv[0]), float(uv[1])), dtype=float)
        return numerics.hessian(self.point, np.asarray(uv, dtype=float), self.hessian_step,
                                order=4, inside=self.inside)


@dataclass(frozen=True)
class TangentFrame:
    uv: tuple[float, float]
    x: np.ndarray
    metric: np.ndarray
    raw: np.ndarray  # rows dPhi/du, dPhi/dv
    e: np.ndarray  # rows e1, e2, orthonormal
    gbar: np.ndarray
    to_orthonormal: np.ndarray  # e_a = sum_i to_orthonormal[i, a] raw_i
    orientation: int = 1

    def tangential_part(self, v) -> np.ndarray:
        gv = self.metric @ v
        return (self.e @ gv) @ self.e


@dataclass(frozen=True)
class NormalFrame:
    u: np.ndarray
    n: np.ndarray
    l: np.ndarray
    k: np.ndarray
    beta: float = 0.0
    orientation: int = 1

    def vectors(self) -> dict[str, np.ndarray]:
        return {"l": self.l, "k": self.k, "u": self.u, "n": self.n}

    def null_coords(self, vec, g) -> tuple[float, float]:
        """(a, b) with vec = a l + b k for a normal vector."""
        return -float(vec @ g @ self.k), -float(vec @ g @ self.l)

    def from_null(self, a: float, b: float) -> np.ndarray:
        return a * self.l + b * self.k


def tangent_frame_at(surface: SurfaceModel, spacetime: SpacetimeModel, uv,
                     _x=None, _g=None) -> TangentFrame:
    uv = (float(uv[0]), float(uv[1]))
    if not surface.inside(uv):
        raise OutOfChart(f"{surface.name}: parameters {uv} outside the surface domain")
    x = surface.point(uv) if _x is None else _x
    g = _metric(spacetime, x) if _g is None else _g
    raw = surface.tangents(uv)
    gbar = raw @ g @ raw.T
    E, F, G = gbar[0, 0], 0.5 * (gbar[0, 1] + gbar[1, 0]), gbar[1, 1]
    min_eig = 0.5 * (E + G) - np.hypot(0.5 * (E - G), F)
    if not min_eig >= TAU_PD:
        raise NotSpacelike(f"{surface.name}: induced metric not positive definite at {uv}")
    # Gram-Schmidt, e_a = sum_i to_on[i, a] raw_i
    a = 1.0 / np.sqrt(E)
    wn = np.sqrt(G - F * F / E)
    to_on = np.array([[a, -F / (E * wn)], [0.0, 1.0 / wn]])
    e = to_on.T @ raw
    return TangentFrame(uv, x, g, raw, e, gbar, to_on)


def _gauge_value(gauge: Gauge, uv) -> float:
    return float(gauge(uv[0], uv[1])) if callable(gauge) else float(gauge)


def boost(frame: NormalFrame, beta: float) -> NormalFrame:
    """Apply l -> e^beta l, k -> e^-beta k (equivalently the u, n boost)."""
    ch, sh = np.cosh(beta), np.sinh(beta)
    u = ch * frame.u + sh * frame.n
    n = sh * frame.u + ch * frame.n
    return NormalFrame(u, n, np.exp(beta) * frame.l, np.exp(-beta) * frame.k,
                       frame.beta + beta, frame.orientation)


def normal_frame_at(surface: SurfaceModel, spacetime: SpacetimeModel, uv,
                    gauge: Gauge = 0.0, tangent: TangentFrame | None = None) -> NormalFrame:
    """Canonical normal frame boosted by ``gauge``.

    u is the normalized normal projection of the future reference vector; n is
    fixed by orthogonality and det[e1, e2, u, n] > 0 in chart components, which
    makes star(u) = n.
    """
    tf = tangent if tangent is not None else tangent_frame_at(surface, spacetime, uv)
    g = tf.metric
    t = sharp(spacetime.future_covector(tf.x), g)
    p = t - tf.tangential_part(t)
    norm2 = p @ g @ p
    if not norm2 < -TAU_PD:
        raise FrameDegeneracy(f"{surface.name}: future vector has no timelike normal part at {tf.uv}")
    u = p / np.sqrt(-norm2)
    nflat = np.sqrt(abs(np.linalg.det(g))) * np.einsum("bcde,c,d,e->b", _EPS, tf.e[0], tf.e[1], u)
    n = np.linalg.solve(g, nflat)
    nn = n @ g @ n
    if not nn > TAU_PD:
        raise FrameDegeneracy(f"{surface.name}: normal space lost rank at {tf.uv}")
    n = n / np.sqrt(nn)
    if np.linalg.det(np.stack([tf.e[0], tf.e[1], u, n])) < 0:
        n = -n
    s2 = np.sqrt(2.0)
    frame = NormalFrame(u, n, (u + n) / s2, (u - n) / s2)
    beta = _gauge_value(gauge, tf.uv)
    return boost(frame, beta) if beta != 0.0 else frame


def hodge_perp(vec, frame: NormalFrame, tangent: TangentFrame, tol: float = 1e-8) -> np.ndarray:
    """star(N) = (i_N eps_perp)^sharp: star u = n, star n = u, star l = l, star k = -k."""
    vec = np.asarray(vec, dtype=float)
    g = tangent.metric
    tang = np.abs(tangent.e @ g @ vec)
    if np.max(tang) > tol * (1.0 + np.max(np.abs(vec))):
        raise NotNormal(f"vector has tangential components {tang.tolist()}")
    a, b = frame.null_coords(vec, g)
    return a * frame.l - b * frame.k


def frame_completeness_residual(tangent: TangentFrame, frame: NormalFrame) -> float:
    g = tangent.metric
    fl = {name: g @ v for name, v in
          (("u", frame.u), ("n", frame.n), ("e1", tangent.e[0]), ("e2", tangent.e[1]))}
    rebuilt = (-np.outer(fl["u"], fl["u"]) + np.outer(fl["n"], fl["n"])
               + np.outer(fl["e1"], fl["e1"]) + np.outer(fl["e2"], fl["e2"]))
    return float(np.max(np.abs(rebuilt - g)))


def check_stencil(surface: SurfaceModel, uv, h: float, reach: int = 2):
    for du, dv in ((reach * h, 0), (-reach * h, 0), (0, reach * h), (0, -reach * h)):
        if not surface.inside((uv[0] + du, uv[1] + dv)):
            raise StencilOutOfDomain(f"{surface.name}: stencil around {tuple(uv)} leaves the domain")
