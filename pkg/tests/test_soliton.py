"""Soliton pencil solver, classification and the ambient eta-Ricci audit."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from statman.dsl.model import load
from statman.errors import StructuralError
from statman.fixtures import FIXTURES
from statman.frame_algebra import BilinearForm, ricci_of
from statman.ring import Poly, RingQuotient
from statman.soliton import (
    KINDS,
    SOURCES,
    SolitonProblem,
    audit_ambient_theorems,
    classify,
    einstein_check,
    soliton_residual,
    solve_pencil,
    solve_soliton,
)


def test_eta_ricci_statistical(kenmotsu):
    sol = solve_soliton(kenmotsu.M, SolitonProblem("eta-ricci", kenmotsu.contact.xi, "statistical", kenmotsu.contact))
    assert sol.consistent
    assert sol.lam == RingQuotient(Poly.const(3, ("a",)))
    assert sol.omega == RingQuotient(Poly.const(1, ("a",)))


def test_quasi_yamabe_statistical(kenmotsu):
    sol = solve_soliton(kenmotsu.M, SolitonProblem("quasi_yamabe", kenmotsu.contact.xi, "statistical", kenmotsu.contact))
    assert sol.consistent
    assert sol.lam.evaluate({}) == -21 and sol.omega.evaluate({}) == 1


def test_hyperbolic_steady(loaded):
    sol = solve_soliton(loaded["hyperbolic2"].M, SolitonProblem("ricci"))
    assert sol.consistent and sol.lam.is_zero()
    assert classify(sol.lam) == "steady"


def test_flat3_einstein_and_class(loaded):
    M = loaded["flat3-einstein"].M
    ein = einstein_check(M, ricci_of(M))
    b = Poly.var("b", ("b",))
    assert ein.kind == "einstein" and ein.c1.as_poly() == b * b * Fraction(1, 2)
    assert str(ein) == "einstein(1/2*b^2)"
    assert classify(ein.c1, {"b": 2}) == "expanding"


def test_eta_einstein_kenmotsu_nabla(kenmotsu):
    M, ct = kenmotsu.M, kenmotsu.contact
    ein = einstein_check(M, ricci_of(M), ct)
    assert str(ein) == "eta_einstein(-a - 4, 5*a)"


def test_classify_conventions():
    assert classify(Fraction(-1)) == "shrinking"
    assert classify(Fraction(2)) == "expanding"
    assert classify(Fraction(-1), convention="yamabe") == "expanding"
    with pytest.raises(StructuralError):
        classify(1, convention="nope")


def test_unknown_kind_and_source():
    with pytest.raises(StructuralError):
        SolitonProblem("gradient")
    with pytest.raises(StructuralError):
        SolitonProblem("ricci", ricci_source="levi")


def _combos():
    out = []
    for name in FIXTURES:
        has_eta = load(name).contact is not None
        for kind in KINDS:
            if kind in ("eta_ricci", "quasi_yamabe") and not has_eta:
                continue  # these kinds need eta
            out.extend((name, kind, source) for source in SOURCES)
    return out


@pytest.mark.parametrize("name,kind,source", _combos())
def test_round_trip_residual_is_zero(loaded, name, kind, source):
    L = loaded[name]
    ct = L.contact
    for V in (None,) + ((ct.xi,) if ct is not None else ()):
        prob = SolitonProblem(kind, V, source, ct)
        sol = solve_soliton(L.M, prob)
        if sol.consistent:
            res = soliton_residual(L.M, prob, sol.lam, sol.omega if sol.omega is not None else 0)
            assert res.is_zero()


def _form(vals, params=()):
    n = len(vals)
    return BilinearForm(tuple(tuple(Poly.const(vals[i][j], params) for j in range(n)) for i in range(n)))


pencil_coef = st.fractions(-10, 10, max_denominator=5)


@given(pencil_coef, pencil_coef)
def test_pencil_recovers_known_coefficients(lam, om):
    g = _form([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    ee = _form([[0, 0, 0], [0, 0, 0], [0, 0, 1]])
    A = (g.scale(lam) + ee.scale(om)).scale(-1)
    sol = solve_pencil(A, [g, ee])
    assert sol.consistent
    assert sol.coefficients[0].evaluate({}) == lam
    assert sol.coefficients[1].evaluate({}) == om


def test_pencil_inconsistent_and_singular():
    g = _form([[1, 0], [0, 1]])
    A = _form([[1, 0], [0, 2]])
    assert not solve_pencil(A, [g]).consistent
    with pytest.raises(StructuralError):
        solve_pencil(A, [g, g.scale(2)])


def test_ambient_audit_verdicts(kenmotsu):
    rep = audit_ambient_theorems(kenmotsu.M, "nabla", kenmotsu.contact, "statistical", {"a": 0})
    v = {c.claim: c.verdict for c in rep.all_checks()}
    assert v["solve"] == "pass"
    assert v["ricci_form"] == v["ricci_operator"] == v["scalar"] == "match"
    assert v["eigenvalue"] == "mismatch"
    shifted = audit_ambient_theorems(kenmotsu.M, "nabla", kenmotsu.contact, "statistical", {"a": 0}, omega_shift=1)
    w = {c.claim: c.verdict for c in shifted.all_checks()}
    for k in ("ricci_form", "ricci_operator", "eigenvalue", "scalar"):
        assert w[k] != v[k]


def test_ambient_audit_rejects_even_dimension(loaded):
    L = loaded["hyperbolic2"]
    with pytest.raises(StructuralError):
        audit_ambient_theorems(L.M, "nabla", None)
