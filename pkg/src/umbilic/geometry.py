"""Point-wise ambient geometry of a 4-dimensional Lorentzian chart.

Conventions (see docs/conventions.md):

* signature (-,+,+,+);
* ``christoffel[a, b, c]`` is Gamma^a_{bc};
* ``R(W,Z,X,Y) = g(W, R(X,Y)Z)`` with ``R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y]``,
  stored fully covariant as ``riemann[a, b, c, d] = R_{abcd}`` so that
  ``R(W,Z,X,Y) = W^a Z^b X^c Y^d R_{abcd}``;
* ``Ric_{bd} = R^a_{bad}``, ``S = g^{bd} Ric_{bd}``.

With these, a space of constant curvature K has R_{abcd} = K (g_ac g_bd - g_ad g_bc).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from . import numerics
from .errors import DegenerateMetric, OutOfChart

DET_TOL = 1e-12

# Tolerances for ambient-curvature residuals, per differentiation path.
TAU_GEO = {"analytic": 1e-9, "fd": 1e-4}


@dataclass(frozen=True)
class SpacetimeModel:
    """Closed-form metric plus everything needed to differentiate it.

    ``future`` returns a covector whose sharp is a future-pointing timelike
    vector; it defaults to ``-dx^0``. ``ckv`` optionally returns ``(xi, phi)``
    for an integrable conformal Killing vector with
    ``2 phi g(v, w) = g(nabla_v xi, w) + g(nabla_w xi, v)``.
    """

    name: str
    metric: Callable[[np.ndarray], np.ndarray]
    christoffel: Callable[[np.ndarray], np.ndarray] | None = None
    domain: Callable[[np.ndarray], bool] | None = None
    future: Callable[[np.ndarray], np.ndarray] | None = None
    strategy: str = "analytic"
    fd_step: float = 1e-5
    curvature_step: float = 5e-4
    constant_curvature: float | None = None
    conformally_flat: bool = False
    ckv: Callable[[np.ndarray], tuple[np.ndarray, float]] | None = None
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.strategy not in ("analytic", "fd"):
            raise ValueError(f"unknown differentiation strategy {self.strategy!r}")

    @property
    def path(self) -> str:
        """'analytic' when analytic Christoffels are used, else 'fd'."""
        if self.strategy == "analytic" and self.christoffel is not None:
            return "analytic"
        return "fd"

    def with_strategy(self, strategy: str, fd_step: float | None = None) -> "SpacetimeModel":
        return replace(self, strategy=strategy, fd_step=fd_step or self.fd_step)

    def inside(self, x) -> bool:
        return True if self.domain is None else bool(self.domain(np.asarray(x, dtype=float)))

    def future_covector(self, x) -> np.ndarray:
        if self.future is not None:
            return np.asarray(self.future(x), dtype=float)
        return np.array([-1.0, 0.0, 0.0, 0.0])


@dataclass(frozen=True)
class CurvatureBundle:
    metric: np.ndarray
    christoffel: np.ndarray
    riemann: np.ndarray
    ricci: np.ndarray
    scalar: float
    weyl: np.ndarray

    @property
    def inverse_metric(self) -> np.ndarray:
        return np.linalg.inv(self.metric)


def _metric(model: SpacetimeModel, x: np.ndarray) -> np.ndarray:
    if not model.inside(x):
        raise OutOfChart(f"{model.name}: point {x.tolist()} outside chart domain")
    with np.errstate(divide="ignore", invalid="ignore"):
        g = np.asarray(model.metric(x), dtype=float)
        bad = not np.all(np.isfinite(g)) or abs(np.linalg.det(g)) < DET_TOL
    if bad:
        raise DegenerateMetric(f"{model.name}: degenerate metric at {x.tolist()}")
    return g


def metric_at(model: SpacetimeModel, x) -> np.ndarray:
    """Metric components at ``x``; checks chart domain, degeneracy and signature."""
    x = np.asarray(x, dtype=float)
    g = _metric(model, x)
    eig = np.linalg.eigvalsh(0.5 * (g + g.T))
    if not (eig[0] < 0 < eig[1]):
        raise DegenerateMetric(f"{model.name}: metric at {x.tolist()} is not Lorentzian")
    return g


def christoffel_from_metric_derivs(g: np.ndarray, dg: np.ndarray) -> np.ndarray:
    """Gamma^a_{bc} from g and dg[c, a, b] = d_c g_{ab}."""
    # lowered[d, b, c] = Gamma_{dbc}
    lowered = 0.5 * (np.transpose(dg, (1, 0, 2)) + np.transpose(dg, (1, 2, 0)) - dg)
    return np.einsum("ad,dbc->abc", np.linalg.inv(g), lowered)


def christoffel_at(model: SpacetimeModel, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if model.path == "analytic":
        if not model.inside(x):
            raise OutOfChart(f"{model.name}: point {x.tolist()} outside chart domain")
        return np.asarray(model.christoffel(x), dtype=float)
    g = _metric(model, x)
    dg = numerics.jacobian(lambda y: _metric(model, y), x, model.fd_step, order=2,
                           inside=model.inside)
    return christoffel_from_metric_derivs(g, dg)


def riemann_from_christoffel(gamma: np.ndarray, dgamma: np.ndarray) -> np.ndarray:
    """R^a_{bcd} with dgamma[e, a, b, c] = d_e Gamma^a_{bc}."""
    r = np.einsum("cadb->abcd", dgamma) - np.einsum("dacb->abcd", dgamma)
    r += np.einsum("ace,edb->abcd", gamma, gamma)
    r -= np.einsum("ade,ecb->abcd", gamma, gamma)
    return r


def weyl_tensor(g: np.ndarray, riemann: np.ndarray, ricci: np.ndarray, scalar: float) -> np.ndarray:
    """C(v,w,y,z) = R(v,w,y,z) + S/6 (g_vy g_wz - g_vz g_wy)
    - 1/2 [Ric_vy g_wz - Ric_vz g_wy - Ric_wy g_vz + Ric_wz g_vy]."""
    gg = np.einsum("ac,bd->abcd", g, g) - np.einsum("ad,bc->abcd", g, g)
    rg = (np.einsum("ac,bd->abcd", ricci, g) - np.einsum("ad,bc->abcd", ricci, g)
          - np.einsum("bc,ad->abcd", ricci, g) + np.einsum("bd,ac->abcd", ricci, g))
    return riemann + scalar / 6.0 * gg - 0.5 * rg


def curvature_at(model: SpacetimeModel, x) -> CurvatureBundle:
    x = np.asarray(x, dtype=float)
    g = _metric(model, x)
    gamma = christoffel_at(model, x)
    dgamma = numerics.jacobian(lambda y: christoffel_at(model, y), x, model.curvature_step,
                               order=6, inside=model.inside)
    rup = riemann_from_christoffel(gamma, dgamma)
    riemann = np.einsum("ae,ebcd->abcd", g, rup)
    ricci = np.einsum("abad->bd", rup)
    ricci = 0.5 * (ricci + ricci.T)
    scalar = float(np.einsum("bd,bd->", np.linalg.inv(g), ricci))
    return CurvatureBundle(g, gamma, riemann, ricci, scalar,
                           weyl_tensor(g, riemann, ricci, scalar))


def flat(v, g) -> np.ndarray:
    return np.asarray(g) @ np.asarray(v, dtype=float)


def sharp(omega, g) -> np.ndarray:
    g = np.asarray(g)
    if abs(np.linalg.det(g)) < DET_TOL:
        raise DegenerateMetric("cannot raise an index with a degenerate metric")
    return np.linalg.solve(g, np.asarray(omega, dtype=float))


def symmetry_residuals(bundle: CurvatureBundle) -> dict[str, float]:
    """Maximum violation of each algebraic identity of the curvature bundle."""
    r = bundle.riemann
    ginv = bundle.inverse_metric
    bianchi = r + np.einsum("acdb->abcd", r) + np.einsum("adbc->abcd", r)
    traces = [
        np.einsum("ac,abcd->bd", ginv, bundle.weyl),
        np.einsum("ad,abcd->bc", ginv, bundle.weyl),
        np.einsum("bc,abcd->ad", ginv, bundle.weyl),
    ]
    gam = bundle.christoffel
    return {
        "antisym_first": float(np.max(np.abs(r + np.einsum("abcd->bacd", r)))),
        "antisym_last": float(np.max(np.abs(r + np.einsum("abcd->abdc", r)))),
        "pair": float(np.max(np.abs(r - np.einsum("abcd->cdab", r)))),
        "bianchi": float(np.max(np.abs(bianchi))),
        "weyl_trace": float(max(np.max(np.abs(t)) for t in traces)),
        "christoffel_sym": float(np.max(np.abs(gam - np.einsum("abc->acb", gam)))),
    }


def constant_curvature_tensor(g: np.ndarray, k: float) -> np.ndarray:
    return k * (np.einsum("ac,bd->abcd", g, g) - np.einsum("ad,bc->abcd", g, g))
