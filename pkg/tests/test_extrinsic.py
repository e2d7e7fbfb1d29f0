from __future__ import annotations

from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from umbilic.catalog import (
    de_sitter,
    flrw,
    minkowski,
    quadratic_graph,
    r_sphere,
    schwarzschild,
    sphere,
    static_product,
    torus,
)
from umbilic.errors import FrameBranchCut, StencilOutOfDomain
from umbilic.extrinsic import (
    WeingartenPair,
    casorati_at,
    extrinsic_state,
    g_field_at,
    mean_curvature_at,
    normal_connection_at,
    shear2,
    sym_eig2,
)

sym2 = st.lists(st.floats(-3, 3), min_size=3, max_size=3).map(
    lambda v: np.array([[v[0], v[1]], [v[1], v[2]]]))


@given(sym2)
def test_sym_eig2(a):
    w, V = sym_eig2(a)
    assert w[0] >= w[1]
    assert np.allclose(V.T @ V, np.eye(2), atol=1e-12)
    assert np.allclose(a @ V, V * w, atol=1e-10)
    assert shear2(a) == pytest.approx((w[0] - w[1]) ** 2, abs=1e-9)


def test_sphere_operators():
    r = 1.7
    s = extrinsic_state(sphere(r), minkowski(), (1.0, 2.0))
    c = 1 / (np.sqrt(2) * r)
    assert np.allclose(s.pair.A_l, c * np.eye(2), atol=1e-12)
    assert np.allclose(s.pair.A_k, -c * np.eye(2), atol=1e-12)
    assert np.allclose(s.mean.H, 2 / r * s.frame.n, atol=1e-12)
    assert s.mean.gHH == pytest.approx(4 / r**2)
    assert np.allclose(s.casorati.B, np.eye(2) / r**2, atol=1e-12)
    assert s.gfield.sigma_l == pytest.approx(0.0, abs=1e-12)
    assert abs(s.connection.ds) < 1e-8


def test_torus_operators():
    R, a = 2.0, 0.5
    u, v = 0.8, 1.3  # u: tube angle, v: axial angle
    s = extrinsic_state(torus(R, a), minkowski(), (u, v))
    k1, k2 = 1 / a, np.cos(u) / (R + a * np.cos(u))
    assert np.allclose(sorted(np.abs(np.linalg.eigvalsh(s.pair.A_n))), sorted([abs(k1), abs(k2)]))
    assert np.allclose(s.pair.A_u, 0.0, atol=1e-12)
    assert s.mean.gHH == pytest.approx((k1 + k2) ** 2)
    assert s.casorati.trB == pytest.approx(k1**2 + k2**2)


@pytest.mark.parametrize("surface,spacetime,uv", [
    (torus(), minkowski(), (0.4, 2.2)),
    (r_sphere(5.0, 0.3, 0.4), schwarzschild(), (1.1, 0.6)),
    (quadratic_graph([[0.2, 0.1], [0.1, -0.3]], [[0.0, 0.2], [0.2, 0.1]]), de_sitter(), (0.1, -0.2)),
    (sphere(0.5, t0=1.0, tilt=0.3), flrw(), (1.9, 4.0)),
])
def test_trace_identities(surface, spacetime, uv):
    s = extrinsic_state(surface, spacetime, uv)
    g = s.metric
    # H is the trace of II, computed directly from the shape tensor
    H_direct = s.shape.II[0, 0] + s.shape.II[1, 1]
    assert np.allclose(s.mean.H, H_direct, atol=1e-10)
    assert s.mean.gHH == pytest.approx(H_direct @ g @ H_direct, abs=1e-10)
    # tr B = g(II, II)
    assert s.casorati.trB == pytest.approx(np.trace(s.casorati.J), abs=1e-10)
    # II decomposes along the null frame
    assert np.allclose(s.shape.II, s.shape.reconstruct_null(s.frame), atol=1e-10)
    assert np.allclose(s.shape.II, s.shape.reconstruct_on(s.frame), atol=1e-10)
    # star H and H are orthogonal with opposite norms
    assert s.mean.H @ g @ s.mean.star_H == pytest.approx(0.0, abs=1e-10)
    assert s.mean.star_H @ g @ s.mean.star_H == pytest.approx(-s.mean.gHH, abs=1e-10)
    # shears in the two frames
    gd = s.gfield
    assert gd.G @ g @ gd.G == pytest.approx(-2 * gd.sigma_l * gd.sigma_k, abs=1e-10)
    assert np.allclose(s.pair.A_l, s.shape.K_l)


@given(st.floats(-2, 2))
def test_boost_covariance(beta):
    surf, st_ = r_sphere(5.0, 0.3, 0.4), schwarzschild()
    base = extrinsic_state(surf, st_, (1.1, 0.6), connection=False)
    b = extrinsic_state(surf, st_, (1.1, 0.6), beta, connection=False)
    assert np.allclose(b.pair.A_l, np.exp(beta) * base.pair.A_l, atol=1e-10)
    assert np.allclose(b.pair.A_k, np.exp(-beta) * base.pair.A_k, atol=1e-10)
    assert np.allclose(b.mean.H, base.mean.H, atol=1e-10)
    assert np.allclose(b.gfield.G, base.gfield.G, atol=1e-10)
    assert np.allclose(b.casorati.B, base.casorati.B, atol=1e-10)
    assert np.allclose(b.canonical_pair.A_l, base.pair.A_l, atol=1e-10)


def test_connection_gauge_transformation():
    # s' = s + d beta for a position-dependent boost; ds is unchanged
    surf, st_ = r_sphere(5.0, 0.3, 0.4), schwarzschild()
    uv = (1.1, 0.6)
    gauge = lambda u, v: 0.4 * np.sin(u) + 0.3 * v * v
    c0 = normal_connection_at(surf, st_, uv)
    c1 = normal_connection_at(surf, st_, uv, gauge)
    dbeta = np.array([0.4 * np.cos(uv[0]), 0.6 * uv[1]])
    assert np.allclose(c1.s - c0.s, dbeta, atol=1e-8)
    assert c1.ds == pytest.approx(c0.ds, abs=1e-7)
    assert abs(c0.ds) > 1e-4


def test_connection_vanishes_on_static_slice():
    c = normal_connection_at(torus(), static_product(), (0.4, 2.2))
    assert np.allclose(c.s, 0.0, atol=1e-9)
    assert abs(c.ds) < 1e-8


def test_connection_stencil_must_fit():
    with pytest.raises(StencilOutOfDomain):
        normal_connection_at(sphere(), minkowski(), (0.001, 1.0))


def test_gauge_jump_is_a_branch_cut():
    gauge = lambda u, v: 0.0 if u < 1.0 else 40.0
    with pytest.raises(FrameBranchCut):
        normal_connection_at(sphere(), minkowski(), (1.0005, 1.0), gauge)


def test_operators_without_frame():
    pair = WeingartenPair(np.diag([1.0, 2.0]), np.diag([-0.5, 0.5]))
    m = mean_curvature_at(pair)
    assert m.H is None and m.gHH == pytest.approx(0.0)
    gd = g_field_at(pair)
    assert gd.G is None and gd.sigma_l == pytest.approx(1.0)
    B = casorati_at(pair).B
    assert np.allclose(B, np.diag([1.0, -2.0]))


def test_finite_difference_path_agrees():
    s = sphere(1.5, tilt=0.3)
    fd = replace(s, jacobian=None, hessian=None)
    a = extrinsic_state(s, de_sitter(), (1.2, 0.4))
    b = extrinsic_state(fd, de_sitter().with_strategy("fd"), (1.2, 0.4))
    assert a.path == "analytic" and b.path == "fd"
    assert np.allclose(a.pair.A_l, b.pair.A_l, atol=1e-4)
    assert np.allclose(a.pair.A_k, b.pair.A_k, atol=1e-4)
    assert a.connection.ds == pytest.approx(b.connection.ds, abs=1e-4)
