import math

import numpy as np
import pytest

from quonlib import parastat
from quonlib.parastat import (DimensionBudgetError, build_green,
                              check_trilinear, check_vacuum_conditions,
                              gentile_demo, max_occupancy)


def test_build_validation():
    with pytest.raises(ValueError):
        build_green("bogus", 2, 2)
    with pytest.raises(ValueError):
        build_green("parabose", 2, 2)  # missing cap
    with pytest.raises(DimensionBudgetError):
        build_green("parafermi", 4, 4)  # 2^16 sites worth of dimension


def test_parafermi_p1_is_fermi():
    r = build_green("parafermi", 1, 2)
    for k in range(2):
        a = r.annihilators[k]
        assert np.allclose(a @ a, 0)
        assert np.allclose(a @ r.creator(k) + r.creator(k) @ a, np.eye(r.dim))
    a0, a1 = r.annihilators[0], r.annihilators[1]
    assert np.allclose(a0 @ a1 + a1 @ a0, 0)


def test_parabose_p1_is_bose_below_cap():
    r = build_green("parabose", 1, 1, cap=4)
    a = r.annihilators[0]
    comm = a @ r.creator(0) - r.creator(0) @ a
    mask = r.protected_mask(headroom=2)
    assert np.allclose((comm - np.eye(r.dim))[:, mask], 0)


def test_cross_component_relations():
    # parafermi: distinct components commute; parabose: anticommute
    rf = build_green("parafermi", 2, 1)
    b0 = rf.components[(0, 0)]
    b1 = rf.components[(1, 0)]
    assert np.allclose(b0 @ b1 - b1 @ b0, 0)
    rb = build_green("parabose", 2, 1, cap=2)
    c0 = rb.components[(0, 0)]
    c1 = rb.components[(1, 0)]
    assert np.allclose(c0 @ c1 + c1 @ c0, 0)


def test_trilinear_parafermi():
    for p in (1, 2):
        rep = check_trilinear(build_green("parafermi", p, 2))
        assert rep["exact"]
        assert rep["max_residual"] <= 1e-12


def test_trilinear_parabose_protected():
    rep = check_trilinear(build_green("parabose", 2, 2, cap=3))
    assert rep["exact"]
    assert rep["protected_only"]


def test_vacuum_constant_is_order():
    for kind, kwargs in (("parafermi", {}), ("parabose", {"cap": 2})):
        for p in (1, 2):
            rep = check_vacuum_conditions(build_green(kind, p, 2, **kwargs))
            assert rep["pass"]
            assert all(c == pytest.approx(p) for c in
                       rep["one_particle_constant"].values())


def test_parafermi_occupancy_bound():
    # at most p quanta fit in any totally symmetric state
    r = build_green("parafermi", 2, 3)
    assert max_occupancy(r, (0, 0)) > 1e-6
    assert max_occupancy(r, (0, 0, 0)) <= 1e-12
    assert max_occupancy(r, (0, 1, 2)) <= 1e-12
    assert max_occupancy(r, (0, 1, 2), symmetric=False) > 1e-6


def test_parabose_antisymmetric_bound():
    r = build_green("parabose", 2, 3, cap=2)
    assert max_occupancy(r, (0, 1), symmetric=False) > 1e-6
    assert max_occupancy(r, (0, 1, 2), symmetric=False) <= 1e-12


def test_gentile_demo_quarter_turn():
    rep = gentile_demo(math.pi / 4)
    assert rep["gentile_allowed_norm_sq"] == pytest.approx(0.75)
    assert rep["gentile_forbidden_norm_sq"] == pytest.approx(0.25)
    assert rep["parafermi_sector_vanishes"]


def test_gentile_demo_trivial_rotation():
    rep = gentile_demo(0.0)
    # everything sits in the forbidden triple-occupancy pattern
    assert rep["gentile_allowed_norm_sq"] == pytest.approx(0.0)
    assert rep["parafermi_sector_vanishes"]


def test_gentile_allowed_formula():
    for theta in (0.3, 0.8, 1.2):
        rep = gentile_demo(theta)
        want = 1 - math.cos(theta) ** 6 - math.sin(theta) ** 6
        assert rep["gentile_allowed_norm_sq"] == pytest.approx(want)


def test_projected_state_symmetrizes():
    r = build_green("parafermi", 2, 2)
    v1 = parastat._projected_state(r, (0, 1), symmetric=True)
    v2 = parastat._projected_state(r, (1, 0), symmetric=True)
    assert np.allclose(v1, v2)
