"""Residual checks of the curvature identities satisfied by spacelike surfaces.

Each check returns the absolute difference of the two sides, evaluated on
the orthonormal tangent frame and the null/orthonormal normal frames.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import numerics
from .classify import TAU_CLS, ortho_kappa, scale_of, umbilic_residual
from .errors import NotConformallyFlat, NotSpaceForm, SurfaceNotOrthogonal
from .extrinsic import ExtrinsicState
from .frames import SurfaceModel, check_stencil, hodge_perp
from .geometry import CurvatureBundle, SpacetimeModel, _metric, christoffel_at

TAU_VER = {"analytic": 1e-8, "fd": 1e-4}
BRIOSCHI_STEP = 8e-3
WEYL_TOL = 1e-6
FRAME_NAMES = ("l", "k", "u", "n")


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    tol: float
    passed: bool
    detail: dict = field(default_factory=dict)


def _check(name, value, tol, passed=None, **detail) -> Check:
    value = float(value)
    return Check(name, value, tol, bool(value < tol) if passed is None else bool(passed), detail)


# ---------------------------------------------------------- intrinsic curvature


def induced_metric_fn(surface: SurfaceModel, spacetime: SpacetimeModel):
    def gbar(uv):
        raw = surface.tangents(uv)
        return raw @ _metric(spacetime, surface.point(uv)) @ raw.T
    return gbar


def gaussian_curvature_intrinsic(surface: SurfaceModel, spacetime: SpacetimeModel, uv,
                                 h: float = BRIOSCHI_STEP) -> float:
    """K(S) from the induced metric alone, via the Brioschi formula.

    First and second derivatives of E, F, G are sixth-order central
    differences in the surface parameters; the wide step keeps round-off low
    near coordinate poles where (EG - F^2)^2 is small.
    """
    uv = np.asarray(uv, dtype=float)
    check_stencil(surface, uv, h, reach=3)
    f = induced_metric_fn(surface, spacetime)
    g0 = f(uv)
    d1 = numerics.jacobian(f, uv, h, order=6)
    E, F, G = g0[0, 0], g0[0, 1], g0[1, 1]
    Eu, Ev = d1[0, 0, 0], d1[1, 0, 0]
    Fu, Fv = d1[0, 0, 1], d1[1, 0, 1]
    Gu, Gv = d1[0, 1, 1], d1[1, 1, 1]
    Evv = numerics.partial2(lambda p: f(p)[0, 0], uv, 1, h, order=6, f0=E)
    Guu = numerics.partial2(lambda p: f(p)[1, 1], uv, 0, h, order=6, f0=G)
    Fuv = numerics.mixed(lambda p: f(p)[0, 1], uv, 0, 1, h, order=6)
    m1 = np.array([[-0.5 * Evv + Fuv - 0.5 * Guu, 0.5 * Eu, Fu - 0.5 * Ev],
                   [Fv - 0.5 * Gu, E, F],
                   [0.5 * Gv, F, G]])
    m2 = np.array([[0.0, 0.5 * Ev, 0.5 * Gu],
                   [0.5 * Ev, E, F],
                   [0.5 * Gu, F, G]])
    return float((np.linalg.det(m1) - np.linalg.det(m2)) / (E * G - F * F) ** 2)


# ------------------------------------------------------------------ helpers


def _R(curv: CurvatureBundle, w, z, x, y) -> float:
    return float(np.einsum("abcd,a,b,c,d->", curv.riemann, w, z, x, y))


def _C(curv: CurvatureBundle, w, z, x, y) -> float:
    return float(np.einsum("abcd,a,b,c,d->", curv.weyl, w, z, x, y))


def ambient_gauss_terms(state: ExtrinsicState, curv: CurvatureBundle) -> dict:
    """S, Ric(l, k) and R(l, k, l, k) in the frame of ``state``."""
    l, k = state.frame.l, state.frame.k
    return {
        "S": curv.scalar,
        "Ric_lk": float(l @ curv.ricci @ k),
        "R_lklk": _R(curv, l, k, l, k),
    }


def _ds_form(state: ExtrinsicState, i: int, j: int) -> float:
    if i == j:
        return 0.0
    return state.connection.ds if (i, j) == (0, 1) else -state.connection.ds


# ------------------------------------------------------------------- checks


def check_gauss(state: ExtrinsicState, curv: CurvatureBundle, K_S: float,
                tol: float | None = None) -> Check:
    """2 K(S) = S + 4 Ric(l,k) - 2 R(l,k,l,k) + g(H,H) - tr B."""
    tol = TAU_VER[state.path] if tol is None else tol
    t = ambient_gauss_terms(state, curv)
    rhs = t["S"] + 4.0 * t["Ric_lk"] - 2.0 * t["R_lklk"] + state.mean.gHH - state.casorati.trB
    return _check("gauss", abs(2.0 * K_S - rhs), tol, lhs=2.0 * K_S, rhs=rhs, **t)


def ricci_terms(state: ExtrinsicState, curv: CurvatureBundle):
    """Yield (labels, R(M,N,X,Y), g([A_N,A_M]Y,X), ds(X,Y) g(*N,M)) over the frame lists."""
    vecs = state.frame.vectors()
    g = state.metric
    A = {name: state.weingarten_along(v) for name, v in vecs.items()}
    star = {name: hodge_perp(v, state.frame, state.tangent) for name, v in vecs.items()}
    e = state.tangent.e
    for m in FRAME_NAMES:
        for n in FRAME_NAMES:
            comm = A[n] @ A[m] - A[m] @ A[n]
            gsn = float(star[n] @ g @ vecs[m])
            for i in range(2):
                for j in range(2):
                    lhs = _R(curv, vecs[m], vecs[n], e[i], e[j])
                    yield (m, n, i, j), lhs, float(comm[i, j]), _ds_form(state, i, j) * gsn


def check_ricci(state: ExtrinsicState, curv: CurvatureBundle, tol: float | None = None) -> Check:
    """R(M,N,X,Y) = g([A_N,A_M]Y, X) + ds(X,Y) g(*N, M), maximized over frame choices."""
    tol = TAU_VER[state.path] if tol is None else tol
    worst, where = 0.0, None
    for lab, lhs, comm, dsterm in ricci_terms(state, curv):
        r = abs(lhs - comm - dsterm)
        if r >= worst:
            worst, where = r, lab
    return _check("ricci", worst, tol, frames=where)


def check_theorem2(state: ExtrinsicState, curv: CurvatureBundle, umbilical_exists: bool,
                   tol: float | None = None, tol_cls: float | None = None) -> Check:
    """R(M,N,X,Y) = ds(X,Y) g(*N, M) must hold exactly when an umbilical direction exists.

    ``value`` is the largest violation over the frame lists; the maximizing
    frame pair is recorded. At umbilical points the violation may exceed the
    tolerance only by the commutator size the classifier accepts as zero,
    ``tol_cls * scale**2``; elsewhere the identity must fail by at least the
    commutator term less the tolerance.
    """
    tol = TAU_VER[state.path] if tol is None else tol
    tol_cls = TAU_CLS[state.path] if tol_cls is None else tol_cls
    worst, where, comm_max = 0.0, None, 0.0
    for lab, lhs, comm, dsterm in ricci_terms(state, curv):
        r = abs(lhs - dsterm)
        comm_max = max(comm_max, abs(comm))
        if r >= worst:
            worst, where = r, lab
    if umbilical_exists:
        passed = worst < tol + tol_cls * scale_of(state.canonical_pair) ** 2
    else:
        passed = worst >= max(comm_max - tol, tol)
    return _check("theorem2", worst, tol, passed=passed, frames=where,
                  identity_holds=worst < tol, commutator_term=comm_max,
                  umbilical=umbilical_exists)


def perp_curvature_residual(state: ExtrinsicState, curv: CurvatureBundle) -> float:
    """max |g(M, R(X,Y)N) - g(M, C(X,Y)N)| over normal M, N and tangent X, Y."""
    vecs = state.frame.vectors()
    e = state.tangent.e
    worst = 0.0
    for m in ("u", "n"):
        for n in ("u", "n"):
            for i in range(2):
                for j in range(2):
                    a = _R(curv, vecs[m], vecs[n], e[i], e[j])
                    b = _C(curv, vecs[m], vecs[n], e[i], e[j])
                    worst = max(worst, abs(a - b))
    return worst


def weyl_max(curv: CurvatureBundle) -> float:
    return float(np.max(np.abs(curv.weyl)))


def check_corollary1(spacetime: SpacetimeModel, state: ExtrinsicState, curv: CurvatureBundle,
                     umbilical_exists: bool, tol: float | None = None) -> Check:
    """In conformally flat spacetimes an umbilical direction exists iff ds = 0."""
    tol = TAU_VER[state.path] if tol is None else tol
    cmax = weyl_max(curv)
    if cmax > WEYL_TOL * (1.0 + float(np.max(np.abs(curv.riemann)))):
        claim = "claimed" if spacetime.conformally_flat else "detected"
        raise NotConformallyFlat(f"{spacetime.name}: max|C| = {cmax:.3e} ({claim} conformally flat)")
    ds = abs(state.connection.ds)
    return _check("corollary1", ds, tol, passed=((ds < tol) == umbilical_exists),
                  weyl_max=cmax, perp_identity=perp_curvature_residual(state, curv),
                  umbilical=umbilical_exists)


def check_space_form(state: ExtrinsicState, curv: CurvatureBundle, K_S: float,
                     K_const: float | None, tol: float | None = None,
                     tol_cls: float | None = None) -> Check:
    """Ortho-umbilical points: K(S) = K + g(H,H) det(kappa), together with the
    general form 2K(S) = S + 4 Ric(l,k) - 2 R(l,k,l,k) + 2 g(H,H) det(kappa)
    and vanishing normal curvature."""
    tol = TAU_VER[state.path] if tol is None else tol
    if K_const is None:
        raise NotSpaceForm("spacetime has no declared constant curvature")
    tol_cls = TAU_CLS[state.path] if tol_cls is None else tol_cls
    ok = ortho_kappa(state.pair, tol_cls, reference=state.canonical_pair)
    gHH = state.mean.gHH
    space_form = abs(K_S - (K_const + gHH * ok.det))
    t = ambient_gauss_terms(state, curv)
    general = abs(2.0 * K_S - (t["S"] + 4.0 * t["Ric_lk"] - 2.0 * t["R_lklk"] + 2.0 * gHH * ok.det))
    ds = abs(state.connection.ds) if state.connection is not None else 0.0
    worst = max(space_form, general, ds)
    return _check("space_form", worst, tol, space_form=space_form, general=general, ds=ds,
                  det_kappa=ok.det, trB_residual=ok.trB_residual)


def check_ckv_construction(spacetime: SpacetimeModel, state: ExtrinsicState,
                           tol: float | None = None) -> Check:
    """Surfaces inside a hypersurface orthogonal to an integrable conformal
    Killing vector xi (L_xi g = 2 phi g) have A_xi = phi 1.

    Also reports |A_xi + phi 1| for comparison with the opposite sign.
    """
    tol = TAU_VER[state.path] if tol is None else tol
    if spacetime.ckv is None:
        raise NotSpaceForm(f"{spacetime.name} declares no conformal Killing vector")
    xi, phi = spacetime.ckv(state.tangent.x)
    xi = np.asarray(xi, dtype=float)
    g = state.metric
    tang = np.abs(state.tangent.e @ g @ xi)
    if np.max(tang) > max(tol, 1e-8) * (1.0 + np.linalg.norm(xi)):
        raise SurfaceNotOrthogonal(f"g(xi, e_i) = {tang.tolist()} at {state.uv}")
    A_xi = state.weingarten_along(xi)
    eye = np.eye(2)
    minus = float(np.linalg.norm(A_xi - phi * eye))
    plus = float(np.linalg.norm(A_xi + phi * eye))
    a, b = state.frame.null_coords(xi, g)
    umb = umbilic_residual(state.pair, a, b)
    return _check("ckv", max(minus, umb), tol, A_xi_minus_phi=minus, A_xi_plus_phi=plus,
                  phi=float(phi), umbilic_residual=umb)


def ckv_equation_residual(spacetime: SpacetimeModel, x, h: float = 1e-4) -> float:
    """max |(L_xi g)_ab - 2 phi g_ab| by central differences of g and xi."""
    x = np.asarray(x, dtype=float)
    g = _metric(spacetime, x)
    xi, phi = spacetime.ckv(x)
    dg = numerics.jacobian(lambda y: _metric(spacetime, y), x, h, order=4)
    dxi = numerics.jacobian(lambda y: np.asarray(spacetime.ckv(y)[0], dtype=float), x, h, order=4)
    lie = (np.einsum("c,cab->ab", xi, dg) + np.einsum("cb,ac->ab", g, dxi)
           + np.einsum("ac,bc->ab", g, dxi))
    return float(np.max(np.abs(lie - 2.0 * phi * g)))


def christoffel_cross_check(spacetime: SpacetimeModel, x) -> float:
    """max |Gamma_analytic - Gamma_fd| at x."""
    a = christoffel_at(spacetime, x)
    b = christoffel_at(spacetime.with_strategy("fd"), x)
    return float(np.max(np.abs(a - b)))


# -------------------------------------------------------------------- report


@dataclass(frozen=True)
class ResidualReport:
    K_S: float
    checks: dict  # name -> Check (only applicable ones)
    skipped: dict  # name -> reason

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def value(self, name: str) -> float | None:
        c = self.checks.get(name)
        return None if c is None else c.value


def verify_point(spacetime: SpacetimeModel, surface: SurfaceModel, state: ExtrinsicState,
                 curv: CurvatureBundle, umbilical_exists: bool, ortho: bool | None,
                 tol: float | None = None, tol_cls: float | None = None,
                 K_S: float | None = None) -> ResidualReport:
    """Run every applicable identity check at one point.

    ``K_S`` may be passed in when already known; it depends on the induced
    metric only, not on the normal frame.
    """
    if K_S is None:
        K_S = gaussian_curvature_intrinsic(surface, spacetime, state.uv)
    checks, skipped = {}, {}
    checks["gauss"] = check_gauss(state, curv, K_S, tol)
    checks["ricci"] = check_ricci(state, curv, tol)
    checks["theorem2"] = check_theorem2(state, curv, umbilical_exists, tol, tol_cls)
    try:
        checks["corollary1"] = check_corollary1(spacetime, state, curv, umbilical_exists, tol)
    except NotConformallyFlat as exc:
        if spacetime.conformally_flat:
            raise
        skipped["corollary1"] = str(exc)
    if spacetime.constant_curvature is not None and ortho:
        checks["space_form"] = check_space_form(state, curv, K_S, spacetime.constant_curvature,
                                                tol, tol_cls)
    else:
        skipped["space_form"] = "not an ortho-umbilical point of a space form"
    if spacetime.ckv is not None:
        try:
            checks["ckv"] = check_ckv_construction(spacetime, state, tol)
        except SurfaceNotOrthogonal as exc:
            skipped["ckv"] = str(exc)
    else:
        skipped["ckv"] = "no conformal Killing vector"
    return ResidualReport(K_S, checks, skipped)

