"""Shape tensor and the extrinsic objects built from it: Weingarten operators,
mean curvature vector, shears and the G field, Casorati operator, and the
normal connection one-form with its curvature.

All 2x2 operators are expressed in the orthonormal tangent basis (e1, e2), where
self-adjointness with respect to the induced metric is plain symmetry.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DegenerateInducedMetric, FrameBranchCut
from .frames import (
    Gauge,
    NormalFrame,
    SurfaceModel,
    TangentFrame,
    check_stencil,
    normal_frame_at,
    tangent_frame_at,
)
from .geometry import SpacetimeModel, _metric, christoffel_at

TAU_EXT = {"analytic": 1e-8, "fd": 1e-4}
TAU_GAUGE = {"analytic": 1e-7, "fd": 1e-3}
CONNECTION_STEP = 1e-3
SQRT2 = np.sqrt(2.0)


def sym_eig2(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form eigen-decomposition of a symmetric 2x2 matrix.

    Eigenvalues are returned in descending order; the columns of the second
    result are the matching unit eigenvectors. At a double eigenvalue the
    basis is (e1, e2).
    """
    p, q, r = a[0, 0], 0.5 * (a[0, 1] + a[1, 0]), a[1, 1]
    mid = 0.5 * (p + r)
    rad = np.hypot(0.5 * (p - r), q)
    theta = 0.5 * np.arctan2(2.0 * q, p - r)
    c, s = np.cos(theta), np.sin(theta)
    return np.array([mid + rad, mid - rad]), np.array([[c, -s], [s, c]])


def shear2(a: np.ndarray) -> float:
    """(tr A)^2 - 4 det A, evaluated without cancellation."""
    return float((a[0, 0] - a[1, 1]) ** 2 + (a[0, 1] + a[1, 0]) ** 2)


@dataclass(frozen=True)
class ShapeTensor:
    K_l: np.ndarray
    K_k: np.ndarray
    II: np.ndarray  # II[a, b] as a normal 4-vector, orthonormal tangent basis
    K_u: np.ndarray
    K_n: np.ndarray

    def reconstruct_null(self, frame: NormalFrame) -> np.ndarray:
        return -self.K_k[..., None] * frame.l - self.K_l[..., None] * frame.k

    def reconstruct_on(self, frame: NormalFrame) -> np.ndarray:
        return -self.K_u[..., None] * frame.u + self.K_n[..., None] * frame.n


@dataclass(frozen=True)
class WeingartenPair:
    """Null Weingarten operators A_l and A_k.

    Eigen-data follow the naming used throughout: ``nu`` for A_l and
    ``lam`` for A_k, both in descending order.
    """

    A_l: np.ndarray
    A_k: np.ndarray

    @cached_property
    def eig_l(self):
        return sym_eig2(self.A_l)

    @cached_property
    def eig_k(self):
        return sym_eig2(self.A_k)

    @property
    def nu(self) -> np.ndarray:
        return self.eig_l[0]

    @property
    def lam(self) -> np.ndarray:
        return self.eig_k[0]

    def along(self, a: float, b: float) -> np.ndarray:
        """A_N for N = a l + b k (linearity in N)."""
        return a * self.A_l + b * self.A_k

    @property
    def A_u(self) -> np.ndarray:
        return (self.A_l + self.A_k) / SQRT2

    @property
    def A_n(self) -> np.ndarray:
        return (self.A_l - self.A_k) / SQRT2

    def boosted(self, beta: float) -> "WeingartenPair":
        return WeingartenPair(np.exp(beta) * self.A_l, np.exp(-beta) * self.A_k)


@dataclass(frozen=True)
class MeanCurvatureData:
    H: np.ndarray | None
    star_H: np.ndarray | None
    theta_l: float
    theta_k: float
    theta_u: float
    theta_n: float
    gHH: float

    @property
    def null_coords(self) -> tuple[float, float]:
        return -self.theta_k, -self.theta_l

    @property
    def star_null_coords(self) -> tuple[float, float]:
        return -self.theta_k, self.theta_l


@dataclass(frozen=True)
class GData:
    sigma_l: float
    sigma_k: float
    sigma_u: float
    sigma_n: float
    G: np.ndarray | None
    star_G: np.ndarray | None
    G_on: np.ndarray | None  # sigma_u u - sigma_n n, equal to G only at commuting points
    sign_convention: str = "nonnegative roots"

    @property
    def null_coords(self) -> tuple[float, float]:
        return self.sigma_k, self.sigma_l


@dataclass(frozen=True)
class CasoratiData:
    B: np.ndarray
    trB: float
    detB: float
    J: np.ndarray | None


@dataclass(frozen=True)
class NormalConnectionData:
    s: np.ndarray  # components on (d/du, d/dv)
    ds_uv: float  # ds(d/du, d/dv)
    ds: float  # ds(e1, e2)
    gauge: float
    step: float


@dataclass(frozen=True)
class ExtrinsicState:
    uv: tuple[float, float]
    path: str
    tangent: TangentFrame
    frame: NormalFrame
    christoffel: np.ndarray
    shape: ShapeTensor
    pair: WeingartenPair
    mean: MeanCurvatureData
    gfield: GData
    casorati: CasoratiData
    connection: NormalConnectionData | None

    @property
    def beta(self) -> float:
        return self.frame.beta

    @property
    def metric(self) -> np.ndarray:
        return self.tangent.metric

    def weingarten_along(self, vec) -> np.ndarray:
        return weingarten_along(self.pair, vec, self.frame, self.metric)

    @property
    def canonical_pair(self) -> WeingartenPair:
        """The pair expressed in the un-boosted (beta = 0) null frame."""
        return self.pair.boosted(-self.beta)


def shape_at(surface: SurfaceModel, spacetime: SpacetimeModel, uv,
             tangent: TangentFrame, frame: NormalFrame, gamma: np.ndarray) -> ShapeTensor:
    """K_N(e_a, e_b) = g(N, II(e_a, e_b)) with -II(X, Y) = (nabla_X Y)^perp."""
    raw = tangent.raw
    hess = surface.second_derivatives(uv)
    cov = hess + np.einsum("abc,ib,jc->ija", gamma, raw, raw)
    g = tangent.metric
    proj_t = np.einsum("ija,ab,cb,cd->ijd", cov, g, tangent.e, tangent.e)
    ii_coord = -(cov - proj_t)
    T = tangent.to_orthonormal
    ii = np.einsum("ia,jb,ijx->abx", T, T, ii_coord)
    ii = 0.5 * (ii + np.transpose(ii, (1, 0, 2)))

    def K(vec):
        return np.einsum("abx,xy,y->ab", ii, g, vec)

    return ShapeTensor(K(frame.l), K(frame.k), ii, K(frame.u), K(frame.n))


def weingarten_at(shape: ShapeTensor, gbar_on: np.ndarray | None = None) -> WeingartenPair:
    """A_N = gbar^{-1} K_N; in the orthonormal basis gbar is the identity."""
    if gbar_on is None:
        return WeingartenPair(shape.K_l.copy(), shape.K_k.copy())
    if np.linalg.eigvalsh(gbar_on)[0] <= 0:
        raise DegenerateInducedMetric("induced metric is not positive definite")
    inv = np.linalg.inv(gbar_on)
    return WeingartenPair(inv @ shape.K_l, inv @ shape.K_k)


def weingarten_along(pair: WeingartenPair, vec, frame: NormalFrame, g) -> np.ndarray:
    a, b = frame.null_coords(vec, g)
    return pair.along(a, b)


def mean_curvature_at(pair: WeingartenPair, frame: NormalFrame | None = None) -> MeanCurvatureData:
    tl, tk = float(np.trace(pair.A_l)), float(np.trace(pair.A_k))
    H = star_H = None
    if frame is not None:
        H = -tk * frame.l - tl * frame.k
        star_H = -tk * frame.l + tl * frame.k
    return MeanCurvatureData(H, star_H, tl, tk, (tl + tk) / SQRT2, (tl - tk) / SQRT2,
                             -2.0 * tl * tk)


def g_field_at(pair: WeingartenPair, frame: NormalFrame | None = None) -> GData:
    sl, sk = np.sqrt(shear2(pair.A_l)), np.sqrt(shear2(pair.A_k))
    su, sn = np.sqrt(shear2(pair.A_u)), np.sqrt(shear2(pair.A_n))
    G = star_G = G_on = None
    if frame is not None:
        G = sk * frame.l + sl * frame.k
        star_G = sk * frame.l - sl * frame.k
        G_on = su * frame.u - sn * frame.n
    return GData(float(sl), float(sk), float(su), float(sn), G, star_G, G_on)


def casorati_at(pair: WeingartenPair, shape: ShapeTensor | None = None,
                g: np.ndarray | None = None) -> CasoratiData:
    """B = -{A_k, A_l}; J is computed from the shape tensor when it is given."""
    B = -(pair.A_k @ pair.A_l + pair.A_l @ pair.A_k)
    J = None
    if shape is not None and g is not None:
        J = np.einsum("iax,xy,iby->ab", shape.II, g, shape.II)
    return CasoratiData(B, float(np.trace(B)), float(np.linalg.det(B)), J)


def _frame_cache(surface, spacetime, gauge):
    """(tangent frame, normal frame) as a function of surface parameters,
    memoized on the exact point so overlapping stencils share evaluations."""
    cache: dict = {}

    def frames(uv):
        key = (float(uv[0]), float(uv[1]))
        if key not in cache:
            tf = tangent_frame_at(surface, spacetime, key)
            cache[key] = (tf, normal_frame_at(surface, spacetime, key, gauge, tangent=tf))
        return cache[key]
    return frames


def _one_form(surface, spacetime, uv, gauge, h, axes=(0, 1), frames=None) -> np.ndarray:
    """s(d_i) = -g(k, nabla_i l) for the requested coordinate directions."""
    frames = _frame_cache(surface, spacetime, gauge) if frames is None else frames
    tf, frame = frames(uv)
    gamma = christoffel_at(spacetime, tf.x)
    out = np.zeros(2)
    for i in axes:
        pts = {}
        for m in (-2, -1, 1, 2):
            p = list(uv)
            p[i] += m * h
            pts[m] = frames(p)[1].l
        span = np.linalg.norm(pts[1] - pts[-1])
        if span > 0.5 * (np.linalg.norm(frame.l) + 1.0):
            raise FrameBranchCut(f"{surface.name}: null frame jumps across the stencil at {tuple(uv)}")
        dl = (-pts[2] + 8 * pts[1] - 8 * pts[-1] + pts[-2]) / (12 * h)
        cov = dl + np.einsum("abc,b,c->a", gamma, tf.raw[i], frame.l)
        out[i] = -float(frame.k @ tf.metric @ cov)
    return out


def normal_connection_at(surface: SurfaceModel, spacetime: SpacetimeModel, uv,
                         gauge: Gauge = 0.0, h: float = CONNECTION_STEP,
                         tangent: TangentFrame | None = None) -> NormalConnectionData:
    """s and ds(e1, e2) by nested fourth-order central differences."""
    uv = (float(uv[0]), float(uv[1]))
    check_stencil(surface, uv, h, reach=4)
    tf = tangent if tangent is not None else tangent_frame_at(surface, spacetime, uv)
    frames = _frame_cache(surface, spacetime, gauge)
    s = _one_form(surface, spacetime, uv, gauge, h, frames=frames)
    coeffs = {-2: 1 / 12, -1: -8 / 12, 1: 8 / 12, 2: -1 / 12}
    du_sv = sum(c * _one_form(surface, spacetime, (uv[0] + m * h, uv[1]), gauge, h, (1,), frames)[1]
                for m, c in coeffs.items()) / h
    dv_su = sum(c * _one_form(surface, spacetime, (uv[0], uv[1] + m * h), gauge, h, (0,), frames)[0]
                for m, c in coeffs.items()) / h
    ds_uv = float(du_sv - dv_su)
    beta = float(gauge(*uv)) if callable(gauge) else float(gauge)
    return NormalConnectionData(s, ds_uv, ds_uv * float(np.linalg.det(tf.to_orthonormal)), beta, h)


def extrinsic_state(surface: SurfaceModel, spacetime: SpacetimeModel, uv, gauge: Gauge = 0.0,
                    connection: bool = True) -> ExtrinsicState:
    """Every point-wise extrinsic object at surface parameters ``uv``."""
    uv = (float(uv[0]), float(uv[1]))
    x = surface.point(uv)
    g = _metric(spacetime, x)
    tf = tangent_frame_at(surface, spacetime, uv, _x=x, _g=g)
    frame = normal_frame_at(surface, spacetime, uv, gauge, tangent=tf)
    gamma = christoffel_at(spacetime, x)
    shape = shape_at(surface, spacetime, uv, tf, frame, gamma)
    pair = weingarten_at(shape)
    path = "analytic" if surface.path == spacetime.path == "analytic" else "fd"
    conn = normal_connection_at(surface, spacetime, uv, gauge, tangent=tf) if connection else None
    return ExtrinsicState(uv, path, tf, frame, gamma, shape, pair,
                          mean_curvature_at(pair, frame), g_field_at(pair, frame),
                          casorati_at(pair, shape, g), conn)
