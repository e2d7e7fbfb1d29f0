from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from umbilic import numerics
from umbilic.catalog import de_sitter, flrw, minkowski, schwarzschild, static_product
from umbilic.errors import DegenerateMetric, OutOfChart, StencilOutOfDomain
from umbilic.geometry import (
    SpacetimeModel,
    christoffel_at,
    constant_curvature_tensor,
    curvature_at,
    metric_at,
    sharp,
    symmetry_residuals,
)
from umbilic.verify import christoffel_cross_check

finite = st.floats(-0.8, 0.8)


# ------------------------------------------------------------------ stencils


@pytest.mark.parametrize("order,tol", [(2, 1e-6), (4, 1e-11), (6, 1e-12)])
def test_first_derivative_orders(order, tol):
    f = lambda x: np.array([np.sin(x[0]) * np.exp(x[1])])
    x = np.array([0.3, -0.2])
    d = numerics.jacobian(f, x, 1e-3, order=order)
    assert np.allclose(d[:, 0], [np.cos(0.3) * np.exp(-0.2), np.sin(0.3) * np.exp(-0.2)], atol=tol)


@pytest.mark.parametrize("order", [2, 4, 6])
def test_hessian_exact_on_quadratics(order):
    f = lambda x: np.array([3 * x[0] ** 2 - 2 * x[0] * x[1] + 0.5 * x[1] ** 2])
    h = numerics.hessian(f, np.array([0.7, 1.1]), 1e-2, order=order)[..., 0]
    assert np.allclose(h, [[6.0, -2.0], [-2.0, 1.0]], atol=1e-9)


def test_stencil_leaving_domain_raises():
    with pytest.raises(StencilOutOfDomain):
        numerics.partial(lambda x: x, np.array([0.0]), 0, 0.1, inside=lambda p: p[0] >= 0)


# ----------------------------------------------------------------- metrics


def test_minkowski_is_flat():
    c = curvature_at(minkowski(), [0.1, 0.2, 0.3, 0.4])
    assert np.max(np.abs(c.riemann)) == 0.0
    assert c.scalar == 0.0


def test_horizon_and_interior_errors():
    s = schwarzschild(1.0)
    with pytest.raises(DegenerateMetric):
        metric_at(s, [0.0, 2.0, 1.0, 0.0])
    with pytest.raises(OutOfChart):
        metric_at(s, [0.0, 1.5, 1.0, 0.0])
    with pytest.raises(OutOfChart):
        christoffel_at(s, [0.0, 3.0, 0.0, 0.0])


def test_riemannian_metric_is_rejected():
    euclid = SpacetimeModel("euclid", metric=lambda x: np.eye(4))
    with pytest.raises(DegenerateMetric):
        metric_at(euclid, np.zeros(4))


def test_sharp_refuses_degenerate_metric():
    with pytest.raises(DegenerateMetric):
        sharp([1.0, 0, 0, 0], np.diag([0.0, 1, 1, 1]))


@pytest.mark.parametrize("model,x", [
    (schwarzschild(), [0.0, 3.7, 1.1, 0.4]),
    (de_sitter(), [0.3, 0.5, -0.4, 0.2]),
    (flrw(), [1.3, 0.2, 0.1, -0.5]),
    (static_product(), [0.0, 0.5, -0.3, 0.2]),
])
def test_analytic_christoffel_matches_finite_differences(model, x):
    assert christoffel_cross_check(model, x) < 1e-8


def test_schwarzschild_vacuum_and_tidal_field():
    M, r = 1.0, 4.0
    c = curvature_at(schwarzschild(M), [0.0, r, 0.9, 0.3])
    assert np.max(np.abs(c.ricci)) < 1e-9
    # Kretschmann scalar 48 M^2 / r^6
    ginv = c.inverse_metric
    up = np.einsum("ae,bf,cg,dh,efgh->abcd", ginv, ginv, ginv, ginv, c.riemann)
    assert np.einsum("abcd,abcd->", up, c.riemann) == pytest.approx(48 * M**2 / r**6, rel=1e-8)
    # radial tidal component in the static orthonormal frame
    f = 1 - 2 * M / r
    u = np.array([1 / np.sqrt(f), 0, 0, 0])
    n = np.array([0, np.sqrt(f), 0, 0])
    R_unun = np.einsum("abcd,a,b,c,d->", c.riemann, u, n, u, n)
    assert R_unun == pytest.approx(-2 * M / r**3, rel=1e-8)
    # vacuum: Weyl equals Riemann
    assert np.max(np.abs(c.weyl - c.riemann)) < 1e-9


@given(finite, finite, finite, finite)
def test_de_sitter_has_constant_curvature(t, x, y, z):
    K = 0.25
    c = curvature_at(de_sitter(K), [t, x, y, z])
    assert np.max(np.abs(c.riemann - constant_curvature_tensor(c.metric, K))) < 1e-8
    assert c.scalar == pytest.approx(12 * K, abs=1e-8)
    assert np.max(np.abs(c.weyl)) < 1e-8


@given(st.floats(0.6, 2.0), finite, finite, finite)
def test_flrw_scalar_curvature(eta, x, y, z):
    # S = 6 a'' / a^3 in conformal time; a = eta^p
    p = 2.0
    c = curvature_at(flrw(p), [eta, x, y, z])
    expected = 6 * p * (p - 1) * eta ** (-2 * p - 2)
    assert c.scalar == pytest.approx(expected, rel=1e-8)
    assert np.max(np.abs(c.weyl)) < 1e-8 * (1 + np.max(np.abs(c.riemann)))


@given(finite, finite, finite, finite)
def test_curvature_symmetries(t, x, y, z):
    for model, pt in ((static_product(), [t, x, y, z]), (schwarzschild(), [t, 3 + x, 1.5 + y, z])):
        res = symmetry_residuals(curvature_at(model, pt))
        assert res["christoffel_sym"] < 1e-12
        scale = 1 + np.max(np.abs(curvature_at(model, pt).riemann))
        for key in ("antisym_first", "antisym_last", "pair", "bianchi", "weyl_trace"):
            assert res[key] < 1e-8 * scale, key


def test_static_product_is_not_conformally_flat():
    c = curvature_at(static_product(), [0.0, 0.3, 0.2, -0.1])
    assert np.max(np.abs(c.weyl)) > 1e-3


def test_finite_difference_strategy_agrees():
    model = de_sitter().with_strategy("fd", 1e-5)
    assert model.path == "fd"
    c = curvature_at(model, [0.2, 0.1, 0.3, -0.2])
    assert np.max(np.abs(c.riemann - constant_curvature_tensor(c.metric, 0.25))) < 1e-4


def test_unknown_strategy_rejected():
    with pytest.raises(ValueError):
        SpacetimeModel("x", metric=lambda x: np.eye(4), strategy="symbolic")
