"""Induced structures, umbilicity, Gauss equations and the submanifold soliton audits."""

from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from statman.dsl.model import build
from statman.dsl.parser import parse
from statman.errors import ClosureError, StructuralError
from statman.frame_algebra import levi_civita
from statman.submanifold import (
    audit_submanifold_soliton_theorems,
    concircular_check,
    duality_check,
    gauss_check,
    induce,
    phi_decompose,
    tangential_split_audit,
    umbilicity,
)

HEISENBERG = """
manifold "heis"
dim 3
frame x y z
metric diag(1, 1, 1)
bracket [x, y] = z
"""


def test_invariant_totally_geodesic(kenmotsu):
    sub = induce(kenmotsu.M, "nabla", ("e1", "e3", "xi"))
    u = umbilicity(sub)
    assert "totally_geodesic" in u and "minimal" in u
    assert phi_decompose(sub, kenmotsu.contact).kind == "invariant"
    g = gauss_check(sub)
    assert g.passed and g.data["corrections"] == 0


def test_xi_normal_umbilical(kenmotsu):
    M = kenmotsu.M
    sub = induce(M, "nabla", ("e1", "e2", "e3", "e4"))
    u = umbilicity(sub)
    assert "totally_umbilical" in u and "totally_geodesic" not in u
    assert u.H == -M.basis(4) and u.H_star == -M.basis(4)
    g = gauss_check(sub)
    assert g.passed and g.data["corrections"] > 0


def test_phi_kinds(kenmotsu):
    ct = kenmotsu.contact
    assert phi_decompose(induce(kenmotsu.M, "nabla", ("e1", "e2", "xi")), ct).kind == "anti_invariant"
    assert phi_decompose(induce(kenmotsu.M, "nabla", ("e1", "e2", "e3", "xi")), ct).kind == "generic"


@pytest.mark.parametrize("tangent", [("e1", "e3", "xi"), ("e1", "e2", "e3", "e4"), ("e2", "xi"), ("e4",)])
def test_duality_of_shape_operators(kenmotsu, tangent):
    assert duality_check(induce(kenmotsu.M, "nabla", tangent)).passed


def test_gauss_detects_perturbed_h(kenmotsu):
    sub = induce(kenmotsu.M, "nabla", ("e1", "e2", "e3", "e4"))
    h = [list(r) for r in sub.h]
    h[0][1] = h[0][1] + kenmotsu.M.basis(4)
    bad = replace(sub, h=tuple(tuple(r) for r in h))
    assert not gauss_check(bad).passed


def _lc(M):
    return levi_civita(M)


def test_not_closed():
    M = build(parse(HEISENBERG)).M
    with pytest.raises(ClosureError):
        induce(M, _lc(M), ("x", "y"))
    sub = induce(M, _lc(M), ("x", "y"), strict=False)
    assert not sub.closure_ok and sub.induced is None
    with pytest.raises(ClosureError):
        sub.require_closed()


def test_non_orthogonal_tangent_rejected():
    doc = parse('manifold "skew"\ndim 2\nframe x y\nmetric\n  (x, x) = 2\n  (x, y) = 1\n  (y, y) = 2\n')
    M = build(doc).M
    with pytest.raises(StructuralError):
        induce(M, _lc(M), ("x",))


def test_concircular_xi(kenmotsu):
    M = kenmotsu.M
    assert concircular_check(M, "nabla", M.basis(4)) is None
    mu = concircular_check(M.subs({"a": 1}), "nabla", M.basis(4).subs({"a": 1}))
    assert mu is not None and mu == 1


def test_tangential_split(kenmotsu):
    sub = induce(kenmotsu.M, "nabla", ("e1", "e3", "xi"))
    rep = tangential_split_audit(sub, kenmotsu.contact, assign={"a": 0})
    assert rep.data["xi"] == "tangent" and rep.passed
    sub2 = induce(kenmotsu.M, "nabla", ("e1", "e2", "e3", "e4"))
    rep2 = tangential_split_audit(sub2, kenmotsu.contact, assign={"a": 0})
    assert rep2.data["xi"] == "normal" and rep2.passed


def test_tangent_soliton_audit(kenmotsu):
    sub = induce(kenmotsu.M, "nabla", ("e1", "e3", "xi"))
    rep = audit_submanifold_soliton_theorems(sub, kenmotsu.contact, "statistical", {"a": 0})
    v = {c.claim: c.verdict for c in rep.all_checks()}
    assert v["lambda_relation[s=ambient]"] == "match"
    assert v["lambda_relation[s=sub]"] == "mismatch"
    assert v["ricci_xi[s=sub]"] == v["ricci_xi[s=ambient]"] == "mismatch"
    assert rep.find("lambda_rederived").value == "-a + 1"


def test_normal_soliton_audit(kenmotsu):
    sub = induce(kenmotsu.M, "nabla", ("e1", "e2", "e3", "e4"))
    rep = audit_submanifold_soliton_theorems(sub, kenmotsu.contact, "statistical", {"a": 0})
    v = {c.claim: c.verdict for c in rep.all_checks()}
    assert v["lie_xi_normal"] == "mismatch"
    assert v["lambda_minus_beta"] == "mismatch" and v["lambda_minus_beta[L=0]"] == "match"
    assert str(rep.data["lambda"]) == "-1"


def test_quasi_yamabe_along_xi(kenmotsu):
    sub = induce(kenmotsu.M, "nabla", ("e1", "e3", "xi"))
    rep = audit_submanifold_soliton_theorems(sub, kenmotsu.contact, "statistical", {"a": 1}, v=kenmotsu.contact.xi)
    assert rep.find("quasi_yamabe_vT").value == "lambda = -7, omega = 1"
    assert rep.find("quasi_yamabe_minimal").verdict == "mismatch"


frame_subsets = st.sets(st.sampled_from(["e1", "e2", "e3", "e4", "xi"]), min_size=1, max_size=4)


@given(frame_subsets)
@settings(max_examples=25, deadline=None)
def test_gauss_and_duality_hold_for_every_subframe(kenmotsu, T):
    order = ["e1", "e2", "e3", "e4", "xi"]
    sub = induce(kenmotsu.M, "nabla", tuple(sorted(T, key=order.index)))
    assert gauss_check(sub).passed
    assert duality_check(sub).passed
