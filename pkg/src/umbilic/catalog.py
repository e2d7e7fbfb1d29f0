"""Closed-form spacetimes and surfaces with analytic derivatives and known
ground truth, plus operator-level synthetic Weingarten pairs.

Every expected value carries a provenance note naming the independent route
by which it can be re-derived.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import ConfigError
from .extrinsic import WeingartenPair
from .frames import SurfaceModel
from .geometry import SpacetimeModel

ETA = np.diag([-1.0, 1.0, 1.0, 1.0])


# ---------------------------------------------------------------- spacetimes


def _conformal_christoffel(grad_w: np.ndarray, eta: np.ndarray) -> np.ndarray:
    """Gamma for g = e^{2w} eta with constant eta: d^a_b w_c + d^a_c w_b - eta_bc eta^ad w_d."""
    n = len(grad_w)
    delta = np.eye(n)
    up = np.linalg.inv(eta) @ grad_w
    return (np.einsum("ab,c->abc", delta, grad_w) + np.einsum("ac,b->abc", delta, grad_w)
            - np.einsum("bc,a->abc", eta, up))


def minkowski() -> SpacetimeModel:
    return SpacetimeModel(
        name="minkowski",
        metric=lambda x: ETA.copy(),
        christoffel=lambda x: np.zeros((4, 4, 4)),
        constant_curvature=0.0,
        conformally_flat=True,
        ckv=lambda x: (np.array([1.0, 0.0, 0.0, 0.0]), 0.0),
    )


def schwarzschild(M: float = 1.0) -> SpacetimeModel:
    """Exterior chart (t, r, theta, phi); r = 2M is kept in the domain so the
    horizon surfaces as a degenerate metric rather than a chart violation."""

    def metric(x):
        f = 1.0 - 2.0 * M / x[1]
        return np.diag([-f, 1.0 / f, x[1] ** 2, (x[1] * np.sin(x[2])) ** 2])

    def christoffel(x):
        r, th = x[1], x[2]
        f = 1.0 - 2.0 * M / r
        s, c = np.sin(th), np.cos(th)
        G = np.zeros((4, 4, 4))
        G[0, 0, 1] = G[0, 1, 0] = M / (r * r * f)
        G[1, 0, 0] = M * f / (r * r)
        G[1, 1, 1] = -M / (r * r * f)
        G[1, 2, 2] = -r * f
        G[1, 3, 3] = -r * f * s * s
        G[2, 1, 2] = G[2, 2, 1] = 1.0 / r
        G[2, 3, 3] = -s * c
        G[3, 1, 3] = G[3, 3, 1] = 1.0 / r
        G[3, 2, 3] = G[3, 3, 2] = c / s
        return G

    return SpacetimeModel(
        name="schwarzschild",
        metric=metric,
        christoffel=christoffel,
        domain=lambda x: x[1] >= 2.0 * M and 0.0 < x[2] < np.pi,
        ckv=lambda x: (np.array([1.0, 0.0, 0.0, 0.0]), 0.0),
        params={"M": M},
    )


def de_sitter(K: float = 0.25) -> SpacetimeModel:
    """Constant curvature K > 0 in the conformally flat chart g = eta / Omega^2,
    Omega = 1 + K eta(x, x) / 4."""

    def omega(x):
        return 1.0 + 0.25 * K * (x @ ETA @ x)

    def metric(x):
        return ETA / omega(x) ** 2

    def christoffel(x):
        return _conformal_christoffel(-0.5 * K * (ETA @ x) / omega(x), ETA)

    return SpacetimeModel(
        name="de-sitter",
        metric=metric,
        christoffel=christoffel,
        domain=lambda x: omega(x) > 0.05,
        constant_curvature=K,
        conformally_flat=True,
        params={"K": K},
    )


def flrw(p: float = 2.0) -> SpacetimeModel:
    """g = a(eta)^2 (-d eta^2 + dx^2 + dy^2 + dz^2), a = eta^p.

    xi = d/d eta is an integrable conformal Killing vector with phi = a'/a = p / eta.
    """

    def metric(x):
        return x[0] ** (2 * p) * ETA

    def christoffel(x):
        return _conformal_christoffel(np.array([p / x[0], 0.0, 0.0, 0.0]), ETA)

    return SpacetimeModel(
        name="flrw",
        metric=metric,
        christoffel=christoffel,
        domain=lambda x: x[0] > 0.05,
        conformally_flat=True,
        ckv=lambda x: (np.array([1.0, 0.0, 0.0, 0.0]), p / x[0]),
        params={"p": p},
    )


def static_product(A: float = 0.3, L: float = 1.0, cx: float = 0.4) -> SpacetimeModel:
    """R x Sigma with g = -dt^2 + e^{2w} (dx^2 + dy^2 + dz^2) and a Gaussian bump
    w = A exp(-|x - c|^2 / L^2) centred off the origin at c = (cx, 0, 0)."""
    center = np.array([cx, 0.0, 0.0])

    def w_and_grad(x):
        d = x[1:] - center
        w = A * np.exp(-(d @ d) / L**2)
        return w, -2.0 * w * d / L**2

    def metric(x):
        w, _ = w_and_grad(x)
        return np.diag([-1.0] + [np.exp(2 * w)] * 3)

    def christoffel(x):
        _, dw = w_and_grad(x)
        G = np.zeros((4, 4, 4))
        G[1:, 1:, 1:] = _conformal_christoffel(dw, np.eye(3))
        return G

    return SpacetimeModel(
        name="static-product",
        metric=metric,
        christoffel=christoffel,
        ckv=lambda x: (np.array([1.0, 0.0, 0.0, 0.0]), 0.0),
        params={"A": A, "L": L, "cx": cx},
    )


# ------------------------------------------------------------------ surfaces

_THETA_DOMAIN = (0.0, np.pi)
_PHI_DOMAIN = (0.0, 2.0 * np.pi)


def _open_theta(u, v):
    return 0.0 < u < np.pi


def sphere(r: float = 1.0, t0: float = 0.0, tilt: float = 0.0,
           center=(0.0, 0.0, 0.0), transform: np.ndarray | None = None,
           name: str = "sphere") -> SurfaceModel:
    """Round sphere of radius r in the chart slice x^0 = t0 + tilt * (z - z_c),
    optionally mapped by a constant linear ``transform`` (e.g. a boost)."""
    c0 = np.asarray(center, dtype=float)
    T = np.eye(4) if transform is None else np.asarray(transform, dtype=float)

    def phi(u, v):
        st, ct, sp, cp = np.sin(u), np.cos(u), np.sin(v), np.cos(v)
        p = np.array([t0 + tilt * r * ct, c0[0] + r * st * cp, c0[1] + r * st * sp, c0[2] + r * ct])
        return T @ p

    def jac(u, v):
        st, ct, sp, cp = np.sin(u), np.cos(u), np.sin(v), np.cos(v)
        du = np.array([-tilt * r * st, r * ct * cp, r * ct * sp, -r * st])
        dv = np.array([0.0, -r * st * sp, r * st * cp, 0.0])
        return np.stack([du, dv]) @ T.T

    def hess(u, v):
        st, ct, sp, cp = np.sin(u), np.cos(u), np.sin(v), np.cos(v)
        uu = np.array([-tilt * r * ct, -r * st * cp, -r * st * sp, -r * ct])
        uv = np.array([0.0, -r * ct * sp, r * ct * cp, 0.0])
        vv = np.array([0.0, -r * st * cp, -r * st * sp, 0.0])
        return np.stack([np.stack([uu, uv]), np.stack([uv, vv])]) @ T.T

    return SurfaceModel(name, phi, jac, hess, _open_theta, _THETA_DOMAIN, _PHI_DOMAIN,
                        params={"r": r, "t0": t0, "tilt": tilt})


def boost_matrix(velocity: float) -> np.ndarray:
    """Lorentz boost mixing x^0 and x^3."""
    gam = 1.0 / np.sqrt(1.0 - velocity**2)
    B = np.eye(4)
    B[0, 0] = B[3, 3] = gam
    B[0, 3] = B[3, 0] = gam * velocity
    return B


def torus(R: float = 2.0, a: float = 0.5, t0: float = 0.0, name: str = "torus") -> SurfaceModel:
    """(R + a cos u) embedding in the slice x^0 = t0; u meridian, v longitude."""

    def phi(u, v):
        rho = R + a * np.cos(u)
        return np.array([t0, rho * np.cos(v), rho * np.sin(v), a * np.sin(u)])

    def jac(u, v):
        su, cu, sv, cv = np.sin(u), np.cos(u), np.sin(v), np.cos(v)
        rho = R + a * cu
        return np.array([[0.0, -a * su * cv, -a * su * sv, a * cu],
                         [0.0, -rho * sv, rho * cv, 0.0]])

    def hess(u, v):
        su, cu, sv, cv = np.sin(u), np.cos(u), np.sin(v), np.cos(v)
        rho = R + a * cu
        uu = np.array([0.0, -a * cu * cv, -a * cu * sv, -a * su])
        uv = np.array([0.0, a * su * sv, -a * su * cv, 0.0])
        vv = np.array([0.0, -rho * cv, -rho * sv, 0.0])
        return np.stack([np.stack([uu, uv]), np.stack([uv, vv])])

    return SurfaceModel(name, phi, jac, hess, None, (0.0, 2 * np.pi), (0.0, 2 * np.pi),
                        params={"R": R, "a": a, "t0": t0})


def quadratic_graph(p, q, t0: float = 0.0, z0: float = 0.0, half_width: float = 0.5,
                    name: str = "graph") -> SurfaceModel:
    """(x, y) -> (t0 + X.p.X / 2, x, y, z0 + X.q.X / 2) with X = (x, y)."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)

    def phi(u, v):
        X = np.array([u, v])
        return np.array([t0 + 0.5 * X @ p @ X, u, v, z0 + 0.5 * X @ q @ X])

    def jac(u, v):
        X = np.array([u, v])
        dp, dq = p @ X, q @ X
        return np.array([[dp[0], 1.0, 0.0, dq[0]], [dp[1], 0.0, 1.0, dq[1]]])

    def hess(u, v):
        out = np.zeros((2, 2, 4))
        out[:, :, 0] = p
        out[:, :, 3] = q
        return out

    w = half_width
    return SurfaceModel(name, phi, jac, hess, None, (-w, w), (-w, w),
                        params={"p": p.tolist(), "q": q.tolist()})


def helicoid(c: float = 0.5) -> SurfaceModel:
    """Minimal helicoid (0, u cos v, u sin v, c v) in a t = 0 slice."""

    def phi(u, v):
        return np.array([0.0, u * np.cos(v), u * np.sin(v), c * v])

    def jac(u, v):
        return np.array([[0.0, np.cos(v), np.sin(v), 0.0],
                         [0.0, -u * np.sin(v), u * np.cos(v), c]])

    def hess(u, v):
        uv = np.array([0.0, -np.sin(v), np.cos(v), 0.0])
        vv = np.array([0.0, -u * np.cos(v), -u * np.sin(v), 0.0])
        return np.stack([np.stack([np.zeros(4), uv]), np.stack([uv, vv])])

    return SurfaceModel("helicoid", phi, jac, hess, None, (-1.0, 1.0), (0.0, 2 * np.pi),
                        params={"c": c})


def r_sphere(r: float = 4.0, eps: float = 0.0, delta: float = 0.0,
             name: str = "rsphere") -> SurfaceModel:
    """Schwarzschild surface t = eps sin^2(u) cos(2v), r = r0 + delta sin^2(u) sin(2v),
    (theta, phi) = (u, v).

    The wobbles are quadrupolar: a dipole displacement of a round sphere is
    umbilical to first order and would leave the Weingarten operators almost
    commuting. eps = delta = 0 is the round sphere of the static slice.
    """

    def phi(u, v):
        s2 = np.sin(u) ** 2
        return np.array([eps * s2 * np.cos(2 * v), r + delta * s2 * np.sin(2 * v), u, v])

    def jac(u, v):
        s2, d2 = np.sin(u) ** 2, np.sin(2 * u)
        c2v, s2v = np.cos(2 * v), np.sin(2 * v)
        return np.array([[eps * d2 * c2v, delta * d2 * s2v, 1.0, 0.0],
                         [-2 * eps * s2 * s2v, 2 * delta * s2 * c2v, 0.0, 1.0]])

    def hess(u, v):
        s2, d2, dd2 = np.sin(u) ** 2, np.sin(2 * u), 2 * np.cos(2 * u)
        c2v, s2v = np.cos(2 * v), np.sin(2 * v)
        uu = np.array([eps * dd2 * c2v, delta * dd2 * s2v, 0.0, 0.0])
        uv = np.array([-2 * eps * d2 * s2v, 2 * delta * d2 * c2v, 0.0, 0.0])
        vv = np.array([-4 * eps * s2 * c2v, -4 * delta * s2 * s2v, 0.0, 0.0])
        return np.stack([np.stack([uu, uv]), np.stack([uv, vv])])

    return SurfaceModel(name, phi, jac, hess, _open_theta, _THETA_DOMAIN, _PHI_DOMAIN,
                        params={"r": r, "eps": eps, "delta": delta})


# ------------------------------------------------------------------- catalog


@dataclass(frozen=True)
class SurfaceFamily:
    name: str
    build: Callable[..., SurfaceModel]
    defaults: dict = field(default_factory=dict)
    expected: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)
    tabulated: tuple = ()


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    build: Callable[..., SpacetimeModel]
    defaults: dict
    surfaces: dict
    note: str = ""

    def spacetime(self, **params) -> SpacetimeModel:
        return self.build(**{**self.defaults, **params})

    def surface(self, name: str, **params) -> SurfaceModel:
        if name not in self.surfaces:
            raise ConfigError(f"surface {name!r} not available for {self.name}; "
                              f"choose from {sorted(self.surfaces)}")
        fam = self.surfaces[name]
        unknown = set(params) - set(fam.defaults)
        if unknown:
            raise ConfigError(f"unknown parameters {sorted(unknown)} for surface {name!r}")
        return fam.build(**{**fam.defaults, **params})


_TU = {"umbilical_status": "TotallyUmbilical", "totally_umbilical": True}
_SPHERE_PROV = "closed form: round sphere in a conformally flat slice is totally umbilical (G = 0)"
_GRAPH_P = [[0.2, 0.0], [0.0, 0.0]]
_GRAPH_Q = [[0.0, 0.1], [0.1, 0.0]]
_GRAPH_PROV = ("brute-force normal-circle scan: no normal direction with trace-free A_N = 0 "
               "(second fundamental forms along t and z have non-commuting eigenbases)")


def _graph_noncommuting(cf=0.1, ch=0.1):
    return quadratic_graph([[2 * cf, 0.0], [0.0, 0.0]], [[0.0, ch], [ch, 0.0]],
                           name="graph-noncommuting")


def _null_graph(c1=1.0, c2=0.5):
    p = [[2 * c1, 0.0], [0.0, 2 * c2]]
    return quadratic_graph(p, p, half_width=0.3, name="null-graph")


def catalog() -> list[CatalogEntry]:
    mink_surfaces = {
        "plane": SurfaceFamily(
            "plane", lambda: quadratic_graph(np.zeros((2, 2)), np.zeros((2, 2)), name="plane"),
            {}, {**_TU, "totally_geodesic": True, "minimal": True},
            {"totally_geodesic": "trivial: flat plane in flat slice, II = 0"}),
        "sphere": SurfaceFamily(
            "sphere", lambda r: sphere(r), {"r": 1.0},
            {**_TU, "pseudo_umbilical": True, "ortho_umbilical": True, "H_causal": "Spacelike",
             "joint": "TotallyUmbilicalCase"},
            {"umbilical_status": _SPHERE_PROV, "H_causal": "closed form H = (2/r) n"}),
        "torus": SurfaceFamily(
            "torus", lambda R, a: torus(R, a), {"R": 2.0, "a": 0.5},
            {"umbilical_status": "UniqueDirection", "causal_character": "Timelike",
             "ortho_umbilical": True, "pseudo_umbilical": False, "joint": "NotBoth"},
            {"umbilical_status": "closed form: A_u = 0, A_n = diag(k1, k2), k1 != k2",
             "causal_character": "closed form: g(H,H) - 2 tr B = -(k1 - k2)^2 < 0",
             "ortho_umbilical": "static-slice example: II = K n"}),
        "boosted-sphere": SurfaceFamily(
            "boosted-sphere", lambda r, v: sphere(r, transform=boost_matrix(v), name="boosted-sphere"),
            {"r": 1.0, "v": 0.6}, {**_TU, "pseudo_umbilical": True},
            {"umbilical_status": "Lorentz invariance of the totally umbilical sphere"}),
        "graph-noncommuting": SurfaceFamily(
            "graph-noncommuting", _graph_noncommuting, {"cf": 0.1, "ch": 0.1},
            {"umbilical_status": "None"}, {"umbilical_status": _GRAPH_PROV},
            tabulated=((0.3, 0.4), (-0.2, 0.1), (0.45, -0.35))),
        "helicoid": SurfaceFamily(
            "helicoid", helicoid, {"c": 0.5},
            {"minimal": True, "pseudo_umbilical": None, "ortho_umbilical": None},
            {"minimal": "classical minimal surface of the Euclidean slice"}),
        "null-graph": SurfaceFamily(
            "null-graph", _null_graph, {"c1": 1.0, "c2": 0.5},
            {"H_causal": "Null", "pseudo_umbilical": True, "ortho_umbilical": True,
             "joint": "NullHSubgeodesicMOTSCase"},
            {"joint": "closed form: II = -f_ij (d_t + d_z) is null-valued, so g(H,H) = 0 and B = 0"}),
        "tilted-sphere": SurfaceFamily(
            "tilted-sphere", lambda r, tilt: sphere(r, tilt=tilt, name="tilted-sphere"),
            {"r": 1.0, "tilt": 0.3}, {}, {}),
    }
    schw_surfaces = {
        "rsphere": SurfaceFamily(
            "rsphere", lambda r: r_sphere(r), {"r": 4.0},
            {**_TU, "ortho_umbilical": True, "H_causal": "Spacelike"},
            {"umbilical_status": "spherical symmetry: A_u = 0 and A_n = f^(1/2)/r 1"}),
        "wobbly": SurfaceFamily(
            "wobbly", lambda r, eps, delta: r_sphere(r, eps, delta, name="wobbly"),
            {"r": 5.0, "eps": 0.3, "delta": 0.4}, {}, {}),
    }
    ds_surfaces = {
        "sphere": SurfaceFamily(
            "sphere", lambda r: sphere(r), {"r": 1.0}, {**_TU, "pseudo_umbilical": True},
            {"umbilical_status": _SPHERE_PROV}),
        "graph-noncommuting": SurfaceFamily(
            "graph-noncommuting", _graph_noncommuting, {"cf": 0.1, "ch": 0.1},
            {"umbilical_status": "None"},
            {"umbilical_status": "conformal invariance of the trace-free Weingarten parts"},
            tabulated=((0.3, 0.4),)),
    }
    flrw_surfaces = {
        "eta-sphere": SurfaceFamily(
            "eta-sphere", lambda r, eta0: sphere(r, t0=eta0, name="eta-sphere"),
            {"r": 1.0, "eta0": 1.0}, {**_TU}, {"umbilical_status": _SPHERE_PROV}),
        "eta-torus": SurfaceFamily(
            "eta-torus", lambda R, a, eta0: torus(R, a, t0=eta0, name="eta-torus"),
            {"R": 2.0, "a": 0.5, "eta0": 1.0},
            {"umbilical_status": "UniqueDirection", "causal_character": "Timelike"},
            {"umbilical_status": "conformal Killing construction: A_xi proportional to 1"}),
        "tilted-sphere": SurfaceFamily(
            "tilted-sphere", lambda r, tilt, eta0: sphere(r, t0=eta0, tilt=tilt, name="tilted-sphere"),
            {"r": 0.5, "tilt": 0.3, "eta0": 1.0}, {}, {}),
    }
    static_prov = "product example: II = K M for slice surfaces, hence ortho-umbilical"
    static_surfaces = {
        "sphere": SurfaceFamily(
            "sphere", lambda r: sphere(r), {"r": 1.0},
            {"ortho_umbilical": True, "umbilical_status": "TotallyUmbilical"},
            {"ortho_umbilical": static_prov,
             "umbilical_status": "umbilicity in Sigma is conformally invariant and Sigma is conformally flat"}),
        "torus": SurfaceFamily(
            "torus", lambda R, a: torus(R, a), {"R": 2.0, "a": 0.5},
            {"ortho_umbilical": True, "umbilical_status": "UniqueDirection"},
            {"ortho_umbilical": static_prov}),
        "graph": SurfaceFamily(
            "graph", lambda: quadratic_graph(np.zeros((2, 2)), [[0.6, 0.2], [0.2, -0.2]], name="graph"),
            {}, {"ortho_umbilical": True}, {"ortho_umbilical": static_prov}),
        "tilted-sphere": SurfaceFamily(
            "tilted-sphere", lambda r, tilt: sphere(r, tilt=tilt, name="tilted-sphere"),
            {"r": 1.0, "tilt": 0.3}, {}, {}),
    }
    return [
        CatalogEntry("minkowski", minkowski, {}, mink_surfaces, "flat; space form K = 0"),
        CatalogEntry("schwarzschild", schwarzschild, {"M": 1.0}, schw_surfaces,
                     "vacuum, not conformally flat"),
        CatalogEntry("de-sitter", de_sitter, {"K": 0.25}, ds_surfaces, "space form K > 0"),
        CatalogEntry("flrw", flrw, {"p": 2.0}, flrw_surfaces,
                     "conformally flat, CKV d/d eta"),
        CatalogEntry("static-product", static_product, {"A": 0.3, "L": 1.0, "cx": 0.4},
                     static_surfaces, "R x Sigma with curved Sigma"),
    ]


def get_entry(name: str) -> CatalogEntry:
    for entry in catalog():
        if entry.name == name:
            return entry
    raise ConfigError(f"unknown spacetime {name!r}; choose from {[e.name for e in catalog()]}")


def parse_token(token: str) -> tuple[str, dict[str, float]]:
    """'name:key=val,key=val' -> (name, {key: float(val)})."""
    name, _, rest = token.partition(":")
    params: dict[str, float] = {}
    if rest:
        for item in rest.split(","):
            key, sep, val = item.partition("=")
            if not sep or not key:
                raise ConfigError(f"malformed parameter {item!r} in {token!r}")
            try:
                params[key.strip()] = float(val)
            except ValueError:
                raise ConfigError(f"non-numeric value {val!r} for {key!r} in {token!r}") from None
    if not name:
        raise ConfigError(f"empty name in {token!r}")
    return name.strip(), params


# --------------------------------------------------------- synthetic operators

SYNTHETIC_MODES = ("commuting", "noncommuting", "minimal-noncommuting-B-identity", "nullH-B0")


def _rot(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def synthetic_weingarten(seed: int, mode: str = "commuting") -> WeingartenPair:
    """Operator-level fixtures that satisfy their defining property by construction.

    * ``commuting``: diag pairs conjugated by one shared rotation;
    * ``noncommuting``: eigenbases rotated against each other by an angle in
      [0.2, pi/2 - 0.2] with eigenvalue gaps of at least 0.5;
    * ``minimal-noncommuting-B-identity``: trace-free, anticommuting to a
      multiple of 1 but not commuting (Pauli-type pair);
    * ``nullH-B0``: A_l = 0 and A_k with non-zero trace, so H is null, B = 0.
    """
    rng = np.random.default_rng(seed)
    if mode == "commuting":
        R = _rot(rng.uniform(0, np.pi))
        dl, dk = rng.uniform(-2, 2, 2), rng.uniform(-2, 2, 2)
        return WeingartenPair(R @ np.diag(dl) @ R.T, R @ np.diag(dk) @ R.T)
    if mode == "noncommuting":
        base = rng.uniform(0, np.pi)
        offset = rng.uniform(0.2, np.pi / 2 - 0.2)
        Rl, Rk = _rot(base), _rot(base + offset)

        def spread():
            m = rng.uniform(-1.5, 1.5)
            gap = rng.uniform(0.5, 2.0)
            return np.diag([m + gap / 2, m - gap / 2])

        return WeingartenPair(Rl @ spread() @ Rl.T, Rk @ spread() @ Rk.T)
    if mode == "minimal-noncommuting-B-identity":
        a, b = rng.uniform(0.3, 2.0, 2)
        R = _rot(rng.uniform(0, np.pi))
        sx = np.array([[0.0, 1.0], [1.0, 0.0]])
        sz = np.array([[1.0, 0.0], [0.0, -1.0]])
        return WeingartenPair(R @ (a * sz) @ R.T, R @ (b * sx) @ R.T)
    if mode == "nullH-B0":
        M = rng.uniform(-1, 1, (2, 2))
        Ak = M + M.T + np.diag([1.0, 1.0]) * rng.uniform(0.5, 1.5)
        return WeingartenPair(np.zeros((2, 2)), Ak)
    raise ValueError(f"unknown synthetic mode {mode!r}")
