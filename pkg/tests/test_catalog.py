from __future__ import annotations

import numpy as np
import pytest

from umbilic import numerics
from umbilic.catalog import SYNTHETIC_MODES, catalog, get_entry, parse_token, synthetic_weingarten
from umbilic.classify import commutator
from umbilic.errors import ConfigError
from umbilic.pipeline import RunConfig, run
from umbilic.verify import christoffel_cross_check

FIXTURES = [(e.name, s) for e in catalog() for s in e.surfaces]


def _interior_points(surface, n=3):
    (u0, u1), (v0, v1) = surface.u_range, surface.v_range
    for fu in np.linspace(0.2, 0.8, n):
        for fv in np.linspace(0.15, 0.85, n):
            yield u0 + fu * (u1 - u0), v0 + fv * (v1 - v0)


@pytest.mark.parametrize("st,sf", FIXTURES)
def test_fixture_expectations(st, sf):
    rep = run(RunConfig(st, sf, (6, 6), "classify"))
    s = rep["summary"]
    assert s["expectation_failures"] == {}
    assert s["tabulated_ok"]


@pytest.mark.parametrize("st,sf", FIXTURES)
def test_surface_derivatives_match_differences(st, sf):
    surface = get_entry(st).surface(sf)
    for uv in _interior_points(surface):
        x = np.array(uv)
        jac = numerics.jacobian(surface.point, x, 1e-4, order=6)
        hess = numerics.hessian(surface.point, x, 1e-3, order=6)
        assert np.allclose(surface.tangents(uv), jac, atol=1e-8)
        assert np.allclose(surface.second_derivatives(uv), hess, atol=1e-6)


@pytest.mark.parametrize("st,sf", FIXTURES)
def test_spacetime_christoffels_match_differences(st, sf):
    e = get_entry(st)
    surface, spacetime = e.surface(sf), e.spacetime()
    for uv in _interior_points(surface, 2):
        assert christoffel_cross_check(spacetime, surface.point(uv)) < 1e-7


def test_every_expectation_has_a_known_flag():
    keys = {"minimal", "totally_geodesic", "totally_umbilical", "pseudo_umbilical", "ortho_umbilical",
            "dim_first_normal", "H_causal", "H_orientation", "umbilical_status", "causal_character",
            "joint"}
    for e in catalog():
        for fam in e.surfaces.values():
            assert set(fam.expected) <= keys, (e.name, fam.name)
            assert set(fam.provenance) <= set(fam.expected) | {"totally_geodesic"}


@pytest.mark.parametrize("mode", SYNTHETIC_MODES)
def test_synthetic_modes(mode):
    for seed in range(50):
        pair = synthetic_weingarten(seed, mode)
        assert np.allclose(pair.A_l, pair.A_l.T) and np.allclose(pair.A_k, pair.A_k.T)
        _, c = commutator(pair)
        if mode in ("commuting", "nullH-B0"):
            assert c < 1e-12
        else:
            assert c > 0.1
        again = synthetic_weingarten(seed, mode)
        assert np.array_equal(pair.A_l, again.A_l) and np.array_equal(pair.A_k, again.A_k)


def test_unknown_synthetic_mode():
    with pytest.raises(ValueError):
        synthetic_weingarten(0, "random")


@pytest.mark.parametrize("token,expected", [
    ("minkowski", ("minkowski", {})),
    ("schwarzschild:M=2", ("schwarzschild", {"M": 2.0})),
    ("torus:R=3,a=0.25", ("torus", {"R": 3.0, "a": 0.25})),
])
def test_parse_token(token, expected):
    assert parse_token(token) == expected


@pytest.mark.parametrize("token", ["torus:R", "torus:R=x", ":R=1", "torus:=1"])
def test_parse_token_rejects_malformed(token):
    with pytest.raises(ConfigError):
        parse_token(token)


def test_unknown_names_and_parameters():
    with pytest.raises(ConfigError):
        get_entry("kerr")
    e = get_entry("minkowski")
    with pytest.raises(ConfigError):
        e.surface("cylinder")
    with pytest.raises(ConfigError):
        e.surface("sphere", radius=2.0)
    assert e.surface("sphere", r=2.0).params["r"] == 2.0
