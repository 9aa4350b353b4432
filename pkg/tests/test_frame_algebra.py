"""Frame engine: Koszul, duality and curvature against the sympy oracle, plus invariants."""

from fractions import Fraction
from itertools import product

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import curvature as o_curvature
from oracles import dual as o_dual
from oracles import koszul, ricci as o_ricci, sym, tables
from statman.errors import DomainError, StructuralError
from statman.fixtures import FIXTURES
from statman.frame_algebra import (
    Connection,
    FramePresentation,
    check_statistical,
    constant_curvature_check,
    curvature,
    dual_connection,
    levi_civita,
    lie_derivative_metric,
    ricci,
    ricci_of,
    scalar,
    sectional,
    statistical_curvature,
)
from statman.ring import Poly


def _same(engine, oracle, params):
    return all(sp.expand(sym(p, params) - q) == 0 for p, q in zip(_flat(engine), _flat(oracle)))


def _flat(t):
    if isinstance(t, (list, tuple)):
        for x in t:
            yield from _flat(x)
    else:
        yield t


@pytest.mark.parametrize("name", FIXTURES)
def test_levi_civita_matches_koszul_oracle(loaded, name):
    M = loaded[name].M
    assert _same(levi_civita(M).gamma, koszul(M), M.parameters)


@pytest.mark.parametrize("name", FIXTURES)
def test_dual_matches_oracle(loaded, name):
    M = loaded[name].M
    _, _, G = tables(M)
    assert _same(dual_connection(M).gamma, o_dual(M, G), M.parameters)


@pytest.mark.parametrize("name", FIXTURES)
@pytest.mark.parametrize("sign", ["standard", "reversed"])
def test_curvature_and_ricci_match_oracle(loaded, name, sign):
    M = loaded[name].M
    _, _, G = tables(M)
    R = o_curvature(M, G, 1 if sign == "standard" else -1)
    eng = curvature(M, "nabla", sign)
    assert _same(eng.entries, R, M.parameters)
    assert _same(ricci(eng, M).entries, o_ricci(R), M.parameters)


def test_hyperbolic_levi_civita_values(loaded):
    M = loaded["hyperbolic2"].M
    lc = levi_civita(M)
    E1, E2 = M.basis(0), M.basis(1)
    assert lc.apply(E1, E1) == E2
    assert lc.apply(E1, E2) == -E1
    assert lc.apply(E2, E1).is_zero() and lc.apply(E2, E2).is_zero()


def test_kenmotsu_curvature_component(kenmotsu):
    M = kenmotsu.M
    a = Poly.var("a", M.parameters)
    e1, xi = M.basis(0), M.basis(4)
    assert curvature(M).apply(e1, xi, xi) == e1.scale(a - 1)


def test_kenmotsu_statistical_sectional(kenmotsu):
    M = kenmotsu.M
    S = statistical_curvature(curvature(M), curvature(M, dual_connection(M)))
    assert sectional(M, S, M.basis(0), M.basis(4)).evaluate({"a": 0}) == -1


def test_sectional_rejects_degenerate_plane(kenmotsu):
    M = kenmotsu.M
    with pytest.raises(DomainError):
        sectional(M, curvature(M), M.basis(0), M.basis(0).scale(2))


@pytest.mark.parametrize("name", FIXTURES)
def test_duality_invariants(loaded, name):
    M = loaded[name].M
    nab = M.connection("nabla")
    star = dual_connection(M, nab)
    assert dual_connection(M, star).gamma == nab.gamma
    R, Rs = curvature(M, nab), curvature(M, star)
    S = statistical_curvature(R, Rs)
    for i, j, k, l in product(range(M.dim), repeat=4):
        assert S.entries[i][j][k][l] * 2 == R.entries[i][j][k][l] + Rs.entries[i][j][k][l]
    if check_statistical(M, nab).passed:
        lc = levi_civita(M)
        for i, j, k in product(range(M.dim), repeat=3):
            assert (nab.gamma[i][j][k] + star.gamma[i][j][k]) * Fraction(1, 2) == lc.gamma[i][j][k]
        for i in range(M.dim):
            assert lie_derivative_metric(M, M.basis(i), nab).agrees


def test_levi_civita_first_bianchi(loaded):
    for L in loaded.values():
        M = L.M
        R = curvature(M, levi_civita(M))
        for i, j, k in product(range(M.dim), repeat=3):
            s = R.apply(M.basis(i), M.basis(j), M.basis(k)) + R.apply(M.basis(j), M.basis(k), M.basis(i)) \
                + R.apply(M.basis(k), M.basis(i), M.basis(j))
            assert s.is_zero()


def test_statistical_verdicts(loaded):
    assert check_statistical(loaded["hyperbolic2"].M).passed
    assert check_statistical(loaded["kenmotsu5d"].M).passed
    assert check_statistical(loaded["flat3-einstein"].M).passed
    rep = check_statistical(loaded["flat2-einstein"].M)
    assert not rep.passed
    assert rep.find("codazzi").verdict == "fail"


def test_constant_curvature_examples(loaded):
    b = Poly.var("b", ("b",))
    M3 = loaded["flat3-einstein"].M
    assert constant_curvature_check(M3, curvature(M3)).as_poly() == b * b * Fraction(1, 4)
    M2 = loaded["flat2-einstein"].M
    assert constant_curvature_check(M2, curvature(M2)) is None
    assert constant_curvature_check(M2, curvature(M2, "nabla_star_printed")).as_poly() == -1


def test_scalar_values(loaded, kenmotsu):
    M = kenmotsu.M
    assert scalar(ricci_of(M, "nabla", "statistical"), M) == -20
    M2 = loaded["flat2-einstein"].M
    assert scalar(ricci_of(M2, "nabla_star_printed"), M2) == -2


def test_reversed_sign_negates(kenmotsu):
    M = kenmotsu.M
    assert curvature(M, "nabla", "reversed").entries == curvature(M, "nabla").negated().entries


def test_singular_metric_rejected():
    with pytest.raises(StructuralError):
        FramePresentation("bad", ("x", "y"), (), ((1, 1), (1, 1)), (((0, 0), (0, 0)), ((0, 0), (0, 0))))


def test_jacobi_violation_rejected():
    n = 3
    z = Poly.zero(())
    c = [[[z] * n for _ in range(n)] for _ in range(n)]
    one = Poly.one(())
    # [e1,e2]=e1, [e2,e3]=e2, [e1,e3]=e3 violates Jacobi
    for (i, j, k) in ((0, 1, 0), (1, 2, 1), (0, 2, 2)):
        c[i][j][k] = one
        c[j][i][k] = -one
    with pytest.raises(StructuralError):
        FramePresentation("bad", ("e1", "e2", "e3"), (), tuple(tuple(int(i == j) for j in range(3)) for i in range(3)), c)


# --- property tests on random statistical structures -----------------------

cubic_entry = st.integers(-3, 3)


def _abelian(n, conn=None):
    z = Poly.zero(())
    br = [[[z] * n for _ in range(n)] for _ in range(n)]
    metric = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    return FramePresentation("random", tuple(f"e{i}" for i in range(n)), (), metric, br,
                             {"nabla": conn} if conn else {})


@st.composite
def cubic_forms(draw, n=3):
    """Totally symmetric C_ijk on an orthonormal frame."""
    vals = {}
    for i in range(n):
        for j in range(i, n):
            for k in range(j, n):
                vals[(i, j, k)] = draw(cubic_entry)
    return [[[Poly.const(vals[tuple(sorted((i, j, k)))]) for k in range(n)] for j in range(n)] for i in range(n)]


@given(cubic_forms())
@settings(max_examples=30, deadline=None)
def test_symmetric_cubic_form_gives_statistical_structure(C):
    # on an abelian orthonormal frame Levi-Civita vanishes, so nabla = K with K^k_ij = C_ijk
    M = _abelian(3, Connection(C))
    assert check_statistical(M).passed
    star = dual_connection(M)
    assert all(star.gamma[i][j][k] == -C[i][j][k] for i, j, k in product(range(3), repeat=3))
    R, Rs = curvature(M), curvature(M, star)
    # curvature of the dual is minus the adjoint of R: g(R*(X,Y)Z,W) = -g(Z, R(X,Y)W)
    for i, j, k, l in product(range(3), repeat=4):
        assert Rs.entries[i][j][k][l] == -R.entries[i][j][l][k]


@given(st.lists(st.integers(-2, 2), min_size=27, max_size=27))
@settings(max_examples=30, deadline=None)
def test_dual_is_involution_for_any_connection(vals):
    G = [[[Poly.const(vals[9 * i + 3 * j + k]) for k in range(3)] for j in range(3)] for i in range(3)]
    M = _abelian(3, Connection(G))
    assert dual_connection(M, dual_connection(M)).gamma == M.connection("nabla").gamma
