"""Almost contact and Kenmotsu statistical checks, K decomposition, warped construction."""

from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from statman.errors import StructuralError
from statman.frame_algebra import Connection, DifferenceTensor, FramePresentation
from statman.ring import Poly
from statman.structures import (
    ContactTriple,
    HolomorphicBase,
    audit_curvature_identities,
    audit_ricci_forms,
    beta_of,
    check_almost_contact,
    check_kenmotsu_statistical,
    decompose_K,
    rho_formulas,
    warp_kenmotsu,
)


def test_kenmotsu_structure_passes_symbolically(kenmotsu):
    M, ct = kenmotsu.M, kenmotsu.contact
    ac = check_almost_contact(M, ct)
    ks = check_kenmotsu_statistical(M, "nabla", ct)
    assert ac.passed and ks.passed
    assert all(c.value in ("0", "") or "=pass" in c.value for c in ks.all_checks())


def test_beta_is_the_parameter(kenmotsu):
    assert beta_of(kenmotsu.M, "nabla", kenmotsu.contact) == Poly.var("a", ("a",))


def test_broken_phi_fails(kenmotsu):
    M, ct = kenmotsu.M, kenmotsu.contact
    rows = [list(r) for r in ct.phi]
    rows[2] = list(rows[0])  # phi e3 = e3 breaks phi^2 = -I
    bad = ContactTriple(rows, ct.xi)
    rep = check_almost_contact(M, bad)
    assert not rep.passed
    assert rep.find("phi_squared").verdict == "fail"


def test_non_kenmotsu_connection_fails(kenmotsu):
    M, ct = kenmotsu.M, kenmotsu.contact
    gam = [[list(r) for r in plane] for plane in M.connection("nabla").gamma]
    a = Poly.var("a", M.parameters)
    # adding a e1 to nabla_{e1} e1 keeps torsion zero but breaks K(E, phi F) = -phi K(E, F)
    gam[0][0][0] = gam[0][0][0] + a
    M2 = M.with_connections(nabla=Connection(gam))
    assert not check_kenmotsu_statistical(M2, "nabla", ct).passed


def test_decompose_K(kenmotsu):
    dec, rep = decompose_K(kenmotsu.M, "nabla", kenmotsu.contact)
    assert rep.passed
    assert dec.A_part.is_zero()
    xi = kenmotsu.M.basis(4)
    assert dec.Theta(xi, xi) == Poly.var("a", ("a",))


def test_curvature_identities_pick_reversed_sign(kenmotsu):
    rep = audit_curvature_identities(kenmotsu.M, "nabla", kenmotsu.contact, {"a": 0})
    assert rep.data["holding_conventions"] == ["reversed"]
    assert rep.find("convention").value == "reversed"
    for item in ("item_i", "item_ii", "item_v"):
        assert rep.find(f"{item}[reversed]").verdict == "match"
        assert rep.find(f"{item}[standard]").verdict == "mismatch"
    assert rep.find("item_iv[standard]").verdict == "match"
    # symbolic residual shows the a-coefficient
    assert "a" in rep.find("item_i[standard]").value


def test_ricci_forms_with_c_minus_one(kenmotsu):
    rep = audit_ricci_forms(kenmotsu.M, "nabla", kenmotsu.contact, -1)
    assert rep.find("ricci_form").verdict == "match"
    assert rep.data["rho1"] == -4 or str(rep.data["rho1"]) == "-4"


@given(st.fractions(-5, 5, max_denominator=3), st.integers(1, 4))
def test_rho_formulas_sum(c, s):
    r1, r2 = rho_formulas(c, s)
    # at xi the Ricci form gives rho1 + rho2 = -2s for every c
    assert r1 + r2 == -2 * s


def _flat_base():
    z = Poly.zero(("a",))
    n = 4
    br = [[[z] * n for _ in range(n)] for _ in range(n)]
    metric = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    B = FramePresentation("R4", ("e1", "e2", "e3", "e4"), ("a",), metric, br)
    J = [[0] * 4 for _ in range(4)]
    J[0][2], J[1][3], J[2][0], J[3][1] = 1, 1, -1, -1
    return B, J


def test_warp_reproduces_fixture(kenmotsu):
    B, J = _flat_base()
    res = warp_kenmotsu(HolomorphicBase(B, J), Poly.var("a", ("a",)))
    assert res.report.passed
    W, M = res.presentation, kenmotsu.M
    assert W.frame == M.frame
    assert W.brackets == M.brackets
    assert W.connection("nabla").gamma == M.connection("nabla").gamma
    assert res.contact.phi == kenmotsu.contact.phi


@given(st.integers(-3, 3), st.integers(-3, 3))
@settings(max_examples=20, deadline=None)
def test_warp_with_holomorphic_base_tensor_is_kenmotsu(p, q):
    # K_base(E, F) built from a J-anti-invariant totally symmetric cubic form on C^2
    B, J = _flat_base()
    z = Poly.zero(("a",))
    K = [[[z] * 4 for _ in range(4)] for _ in range(4)]
    # Re(dz1^3)-type tensor: C(e1,e1,e1) = p, C(e1,e3,e3) = -p, plus the imaginary part scaled by q
    vals = {(0, 0, 0): p, (0, 2, 2): -p, (2, 2, 2): -q, (0, 0, 2): q}
    for (i, j, k), v in vals.items():
        for a, b, c in set(permutations((i, j, k))):
            K[a][b][c] = Poly.const(v, ("a",))
    base = HolomorphicBase(B, J, DifferenceTensor(K))
    res = warp_kenmotsu(base, Fraction(1))
    assert res.report.find("holomorphic_base").verdict == "pass"
    assert res.report.passed


def test_holomorphic_base_rejects_bad_J():
    B, J = _flat_base()
    J[0][2] = 2
    with pytest.raises(StructuralError):
        HolomorphicBase(B, J)
