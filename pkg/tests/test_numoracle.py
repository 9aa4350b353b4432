"""Finite-difference oracle on closed-form coordinate charts."""

import time

import numpy as np
import pytest

from statman.errors import DomainError, StructuralError
from statman.fixtures import FIXTURES
from statman.frame_algebra import curvature
from statman.numoracle import (
    chart,
    convergence_ratio,
    cross_validate,
    fd_bracket,
    fd_connection,
    fd_curvature,
    fd_sectional,
    sample_points,
)


def test_bracket_kenmotsu():
    v = fd_bracket("kenmotsu5d", 0, 4, (0, 0, 0, 0, 1.0))
    assert np.allclose(v, [np.exp(-1), 0, 0, 0, 0], atol=1e-7)


def test_bracket_hyperbolic():
    assert np.allclose(fd_bracket("hyperbolic2", 0, 1, (0.0, 1.0)), [-1.0, 0.0], atol=1e-7)


def test_connection_flat2():
    assert np.allclose(fd_connection("flat2-einstein", "nabla", 0, 0, (0.0, 0.0)),
                       fd_connection("flat2-einstein", "nabla", 0, 0, (0.3, -0.2)), atol=1e-9)


def _frame_value(name, conn, i, j, k, x, assign):
    fx = chart(name)
    v = fd_curvature(name, conn, i, j, k, x, assign=assign)
    p = {kk: float(vv) for kk, vv in (assign or {}).items()}
    return v @ np.linalg.inv(fx.frame(np.asarray(x, float), p))


def test_curvature_flat3():
    w = _frame_value("flat3-einstein", "nabla", 0, 1, 1, (0.1, 0.2, -0.1), {"b": 2})
    assert np.allclose(w, [1.0, 0.0, 0.0], atol=1e-5)


def test_curvature_kenmotsu_matches_engine(loaded):
    M = loaded["kenmotsu5d"].M
    ex = curvature(M, "nabla").entries[0][4][4]
    ex = np.array([c.evaluate_float({"a": 0.0}) for c in ex])
    w = _frame_value("kenmotsu5d", "nabla", 0, 4, 4, (0.1, 0.0, 0.2, -0.3, 1.0), {"a": 0})
    assert np.allclose(w, ex, atol=1e-5)
    assert np.allclose(w, [-1, 0, 0, 0, 0], atol=1e-5)


def test_curvature_hyperbolic_nabla_vanishes():
    assert np.allclose(fd_curvature("hyperbolic2", "nabla", 0, 1, 0, (0.1, 1.2)), 0.0, atol=1e-5)


def test_sectional_kenmotsu():
    assert fd_sectional("kenmotsu5d", 0, 4, (0, 0, 0, 0, 1.0)) == pytest.approx(-1.0, abs=1e-5)


@pytest.mark.parametrize("name", FIXTURES)
def test_cross_validate_passes(name):
    rep = cross_validate(name)
    assert rep.passed, [c.claim for c in rep.checks if not c.ok]
    keys = {c.claim for c in rep.checks}
    assert {"brackets", "connection[levi_civita]", "connection[nabla_star]", "ricci[statistical]"} <= keys


def test_cross_validate_at_other_parameter():
    assert cross_validate("kenmotsu5d", points=4, assign={"a": 1}).passed
    assert cross_validate("flat3-einstein", points=4, assign={"b": -1}).passed


def test_corrupted_table_is_caught():
    rep = cross_validate("kenmotsu5d", corrupt=(0, 0, 4, 0.01))
    assert not rep.passed
    bad = [c for c in rep.checks if c.claim == "connection[nabla]"][0]
    assert bad.verdict == "fail" and "(e1,e1,xi)" in bad.detail


def test_convergence_is_second_order():
    assert 3.5 <= convergence_ratio("hyperbolic2") <= 4.5


def test_boundary_and_shape_errors():
    with pytest.raises(DomainError):
        fd_bracket("hyperbolic2", 0, 1, (0.0, 0.5))
    with pytest.raises(DomainError):
        fd_bracket("hyperbolic2", 0, 1, (0.0, 1.0, 2.0))
    with pytest.raises(StructuralError):
        chart("nowhere")
    with pytest.raises(StructuralError):
        fd_curvature("hyperbolic2", "nope", 0, 1, 0, (0.0, 1.0))


def test_sampling_is_deterministic():
    a = sample_points("kenmotsu5d", 10)
    b = sample_points("kenmotsu5d", 10)
    assert np.array_equal(a, b)
    lo, hi = chart("kenmotsu5d").box()
    assert np.all(a > lo) and np.all(a < hi)


def test_reports_are_reproducible():
    from statman.report import emit

    assert emit(cross_validate("hyperbolic2", points=3), "machine") == emit(cross_validate("hyperbolic2", points=3),
                                                                            "machine")


def test_runtime_budget():
    t = time.perf_counter()
    for name in FIXTURES:
        cross_validate(name)
    assert time.perf_counter() - t < 30.0
