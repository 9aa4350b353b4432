"""Finite-difference oracle on coordinate charts of the built-in fixtures.

Every quantity here is computed in floating point from closed-form chart
data (metric, frame fields, coordinate Christoffel symbols) with central
differences, and compared against the exact frame-algebra engine evaluated
at a parameter assignment.  The two code paths share no algebra: the engine
never sees coordinates, and the oracle never reads structure constants or
the engine's curvature formula.

Index conventions (coordinates)::

    frame(x)[a, mu]       mu-th coordinate component of e_a
    metric(x)[mu, nu]     g(d_mu, d_nu)
    christoffel(x)[r, n, m] = Gamma^m_{rn}, i.e. nabla_{d_r} d_n = Gamma^m_{rn} d_m
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable

import numpy as np
from scipy.stats import qmc

from .errors import DomainError, StructuralError
from .fixtures import DEFAULT_ASSIGNMENT, FIXTURES
from .frame_algebra import Connection, curvature, dual_connection, levi_civita, ricci_of
from .report import Check, Report, verdict

DEFAULT_STEP = 1e-4
DEFAULT_TOL = 1e-5
SEED = 0


@dataclass(frozen=True)
class ChartFixture:
    """Closed-form coordinate data for one built-in fixture.

    ``connections`` maps a connection name of the linked presentation to its
    coordinate Christoffel evaluator.  Evaluators take ``(x, params)``.
    """

    name: str
    dim: int
    lower: tuple
    upper: tuple
    metric: Callable
    frame: Callable
    connections: dict = field(default_factory=dict)
    presentation: str = ""

    def box(self):
        return np.asarray(self.lower, float), np.asarray(self.upper, float)


# --- chart definitions -------------------------------------------------------


def _warped_chart(name: str, m: int = 4) -> ChartFixture:
    """``e^{2v} |dx|^2 + dv^2`` on ``R^m x (0.5, 1.5)`` with ``e_i = e^{-v} d_i`` and ``xi = d_v``."""
    n = m + 1

    def metric(x, p):
        g = np.eye(n)
        g[:m, :m] *= np.exp(2 * x[m])
        return g

    def frame(x, p):
        F = np.eye(n)
        F[:m, :m] *= np.exp(-x[m])
        return F

    def levi_civita_chart(x, p):
        G = np.zeros((n, n, n))
        for i in range(m):
            G[i, i, m] = -np.exp(2 * x[m])
            G[i, m, i] = G[m, i, i] = 1.0
        return G

    def with_vv(c):
        def ev(x, p):
            G = levi_civita_chart(x, p)
            G[m, m, m] = c * p.get("a", 0.0)
            return G

        return ev

    return ChartFixture(
        name,
        n,
        (-1.0,) * m + (0.5,),
        (1.0,) * m + (1.5,),
        metric,
        frame,
        {"nabla": with_vv(1.0), "levi_civita_printed": levi_civita_chart, "nabla_star_printed": with_vv(-2.0)},
        name,
    )


def _hyperbolic_chart() -> ChartFixture:
    def metric(x, p):
        return np.eye(2) / x[1] ** 2

    def frame(x, p):
        return np.eye(2) * x[1]

    def nabla(x, p):
        G = np.zeros((2, 2, 2))
        G[0, 0, 1] = 2.0 / x[1]
        G[1, 1, 1] = 1.0 / x[1]
        return G

    return ChartFixture("hyperbolic2", 2, (-1.0, 0.5), (1.0, 2.0), metric, frame, {"nabla": nabla}, "hyperbolic2")


def _flat2_chart() -> ChartFixture:
    def const(sign):
        def ev(x, p):
            G = np.zeros((2, 2, 2))
            G[0, 0, 1] = -1.0
            G[0, 1, 0] = G[1, 0, 0] = sign
            return G

        return ev

    return ChartFixture(
        "flat2-einstein",
        2,
        (-1.0, -1.0),
        (1.0, 1.0),
        lambda x, p: np.eye(2),
        lambda x, p: np.eye(2),
        {"nabla": const(1.0), "nabla_star_printed": const(-1.0)},
        "flat2-einstein",
    )


def _flat3_chart() -> ChartFixture:
    def nabla(x, p):
        b = p.get("b", 0.0)
        G = np.zeros((3, 3, 3))
        G[0, 0, 0] = b
        G[1, 1, 0] = G[2, 2, 0] = b / 2
        G[0, 1, 1] = G[1, 0, 1] = b / 2
        G[0, 2, 2] = G[2, 0, 2] = b / 2
        return G

    return ChartFixture(
        "flat3-einstein", 3, (-1.0,) * 3, (1.0,) * 3, lambda x, p: np.eye(3), lambda x, p: np.eye(3), {"nabla": nabla},
        "flat3-einstein",
    )


CHARTS = {
    "kenmotsu5d": _warped_chart("kenmotsu5d"),
    "kenmotsu5d-sub-invariant": _warped_chart("kenmotsu5d-sub-invariant"),
    "hyperbolic2": _hyperbolic_chart(),
    "flat2-einstein": _flat2_chart(),
    "flat3-einstein": _flat3_chart(),
}
assert set(CHARTS) == set(FIXTURES)


def chart(name) -> ChartFixture:
    if isinstance(name, ChartFixture):
        return name
    try:
        return CHARTS[name]
    except KeyError:
        raise StructuralError(f"no chart for {name!r}; charts exist for {', '.join(sorted(CHARTS))}") from None


# --- finite differences -------------------------------------------------------


def _check_point(fx: ChartFixture, x, step, depth=1):
    lo, hi = fx.box()
    x = np.asarray(x, float)
    margin = 2 * step * depth
    if x.shape != (fx.dim,):
        raise DomainError(f"point has shape {x.shape}, chart {fx.name} has dimension {fx.dim}")
    if np.any(x - margin < lo) or np.any(x + margin > hi):
        raise DomainError(f"point {x.tolist()} is within {margin:g} of the boundary of the {fx.name} box")
    return x


def _d(fn, x, step):
    """Central differences: ``out[r, ...] = d_r fn(x)``."""
    out = []
    for r in range(len(x)):
        e = np.zeros_like(x)
        e[r] = step
        out.append((fn(x + e) - fn(x - e)) / (2 * step))
    return np.stack(out)


def _gram_ok(fx, x, p):
    F = fx.frame(x, p)
    if abs(np.linalg.det(F @ F.T)) < 1e-8:
        raise DomainError(f"frame of {fx.name} degenerates at {x.tolist()}")
    return F


def _lc_christoffel(fx, p, step):
    """Levi-Civita Christoffels from finite differences of the metric."""

    def ev(x):
        g = fx.metric(x, p)
        dg = _d(lambda y: fx.metric(y, p), x, step)  # dg[r, n, m] = d_r g_nm
        gi = np.linalg.inv(g)
        # Gamma_{rn,l} = (d_r g_nl + d_n g_rl - d_l g_rn) / 2
        low = 0.5 * (dg + np.transpose(dg, (1, 0, 2)) - np.transpose(dg, (1, 2, 0)))
        return np.einsum("rnl,lm->rnm", low, gi)

    return ev


def _dual_christoffel(fx, base, p, step):
    """Conjugate connection from ``d_r g(d_n, d_m) = g(nabla_r d_n, d_m) + g(d_n, nabla*_r d_m)``."""

    def ev(x):
        g = fx.metric(x, p)
        dg = _d(lambda y: fx.metric(y, p), x, step)
        G = base(x)
        # low[r, n, m] = d_r g_nm - g(nabla_r d_m, d_n) = g(nabla*_r d_n, d_m)
        low = dg - np.einsum("rml,ln->rnm", G, g)
        return np.einsum("rnm,mk->rnk", low, np.linalg.inv(g))

    return ev


def _christoffel(fx: ChartFixture, name: str, p, step):
    if name in fx.connections:
        f = fx.connections[name]
        return lambda x: f(x, p)
    if name == "levi_civita":
        return _lc_christoffel(fx, p, step)
    if name in ("nabla_star", "nabla*"):
        return _dual_christoffel(fx, _christoffel(fx, "nabla", p, step), p, step)
    raise StructuralError(f"chart {fx.name} has no connection {name!r}")


def _riemann(G, x, step):
    """``Rc[r, s, n, m]``: m-component of R(d_r, d_s) d_n (standard sign)."""
    dG = _d(G, x, step)  # dG[q, r, n, m] = d_q Gamma^m_{rn}
    G0 = G(x)
    t1 = np.transpose(dG, (0, 1, 2, 3))  # d_r Gamma^m_{sn} -> index [r, s, n, m]
    t2 = np.transpose(dG, (1, 0, 2, 3))
    quad = np.einsum("snl,rlm->rsnm", G0, G0)
    return t1 - t2 + quad - np.transpose(quad, (1, 0, 2, 3))


def _params(fx, assign):
    base = dict(DEFAULT_ASSIGNMENT.get(fx.presentation, {}))
    if assign:
        base.update(assign)
    return {k: float(v) for k, v in base.items()}


def fd_bracket(fixture, i: int, j: int, point, step: float = DEFAULT_STEP, assign=None) -> np.ndarray:
    """Coordinate components of ``[e_i, e_j]`` by central differences of the frame fields."""
    fx = chart(fixture)
    p = _params(fx, assign)
    x = _check_point(fx, point, step)
    F = _gram_ok(fx, x, p)
    dF = _d(lambda y: fx.frame(y, p), x, step)  # dF[r, a, mu]
    return F[i] @ dF[:, j, :] - F[j] @ dF[:, i, :]


def fd_connection(fixture, name: str, i: int, j: int, point, step: float = DEFAULT_STEP, assign=None) -> np.ndarray:
    """Coordinate components of ``nabla_{e_i} e_j``."""
    fx = chart(fixture)
    p = _params(fx, assign)
    x = _check_point(fx, point, step)
    F = _gram_ok(fx, x, p)
    dF = _d(lambda y: fx.frame(y, p), x, step)
    G = _christoffel(fx, name, p, step)(x)
    return F[i] @ dF[:, j, :] + np.einsum("r,n,rnm->m", F[i], F[j], G)


def fd_curvature(fixture, connection_name: str, i: int, j: int, k: int, point, step: float = DEFAULT_STEP,
                 assign=None) -> np.ndarray:
    """Coordinate components of ``R(e_i, e_j) e_k`` via nested central differences."""
    fx = chart(fixture)
    p = _params(fx, assign)
    x = _check_point(fx, point, step, depth=2)
    F = _gram_ok(fx, x, p)
    Rc = _riemann(_christoffel(fx, connection_name, p, step), x, step)
    return np.einsum("r,s,n,rsnm->m", F[i], F[j], F[k], Rc)


def _frame_curvature(fx, name, p, x, step):
    F = fx.frame(x, p)
    Rc = _riemann(_christoffel(fx, name, p, step), x, step)
    Rv = np.einsum("ar,bs,cn,rsnm->abcm", F, F, F, Rc)
    return Rv @ np.linalg.inv(F)  # frame components [a, b, c, l]


def fd_sectional(fixture, i: int, j: int, point, source: str = "statistical", step: float = DEFAULT_STEP,
                 assign=None) -> float:
    """Sectional curvature of the plane ``(e_i, e_j)`` for ``nabla``, ``nabla_star`` or their average."""
    fx = chart(fixture)
    p = _params(fx, assign)
    x = _check_point(fx, point, step, depth=2)
    F = _gram_ok(fx, x, p)
    parts = {"nabla": ("nabla",), "nabla_star": ("nabla_star",), "statistical": ("nabla", "nabla_star")}[source]
    R = sum(_frame_curvature(fx, nm, p, x, step) for nm in parts) / len(parts)
    g = F @ fx.metric(x, p) @ F.T
    num = R[i, j, j] @ g[:, i]
    return float(num / (g[i, i] * g[j, j] - g[i, j] ** 2))


# --- exact side ------------------------------------------------------------------


def _float_array(nested, p):
    return np.vectorize(lambda q: q.evaluate_float(p), otypes=[float])(np.array(nested, dtype=object))


def sample_points(fixture, count: int = 10, seed: int = SEED, margin: float = 1e-2) -> np.ndarray:
    """Halton points (scrambled, fixed seed) inside the chart box shrunk by ``margin``."""
    fx = chart(fixture)
    lo, hi = fx.box()
    u = qmc.Halton(d=fx.dim, scramble=True, seed=seed).random(count)
    return qmc.scale(u, lo + margin, hi - margin)


def _scaled_dev(fd, ex):
    """Deviation relative to the magnitude of the exact value, floored at unit scale."""
    return float(np.max(np.abs(fd - ex)) / max(float(np.max(np.abs(ex), initial=0.0)), 1.0))


def _worst(fd, ex, tol, labels):
    bad = np.argwhere(np.abs(fd - ex) > tol * max(float(np.max(np.abs(ex), initial=0.0)), 1.0))
    return [labels(tuple(int(t) for t in idx)) for idx in bad[:6]]


def cross_validate(fixture, points: int = 10, step: float = DEFAULT_STEP, tol: float = DEFAULT_TOL, assign=None,
                   seed: int = SEED, corrupt=None) -> Report:
    """Compare chart finite differences against the exact engine at ``points`` Halton points.

    ``corrupt=(i, j, k, delta)`` perturbs the exact ``nabla`` coefficient
    ``Gamma^k_{ij}`` before comparison (negative control).
    """
    from .dsl.model import load

    fx = chart(fixture)
    if not fx.presentation:
        raise StructuralError(f"chart {fx.name} is not linked to a presentation")
    M = load(fx.presentation).M
    p = _params(fx, assign)
    passign = {k: v for k, v in p.items() if k in M.parameters}
    names = [n for n in fx.connections if n in M.connections]
    if corrupt is not None:
        i, j, k, delta = corrupt
        gam = [[list(row) for row in plane] for plane in M.connection("nabla").gamma]
        gam[i][j][k] = gam[i][j][k] + Fraction(delta).limit_denominator(10**6)
        M = M.with_connections(nabla=Connection(gam, M.connection("nabla").role))
    frame = M.frame
    n = M.dim
    br = _float_array(M.brackets, passign)
    conns = {nm: _float_array(M.connection(nm).gamma, passign) for nm in names}
    derived = {"levi_civita": _float_array(levi_civita(M).gamma, passign),
               "nabla_star": _float_array(dual_connection(M, "nabla").gamma, passign)}
    curv = {nm: _float_array(curvature(M, nm).entries, passign) for nm in names}
    ric_s = _float_array(ricci_of(M, "nabla", "statistical").entries, passign)

    rep = Report(f"numerical cross-validation: {fx.name}")
    rep.data.update({"points": points, "step": step, "tol": tol, "seed": seed})
    if p:
        rep.data["assignment"] = ", ".join(f"{k}={v:g}" for k, v in sorted(p.items()))
    if corrupt is not None:
        rep.data["corrupted"] = f"Gamma[{frame[corrupt[0]]}][{frame[corrupt[1]]}][{frame[corrupt[2]]}] += {corrupt[3]}"

    dev = {}
    offenders = {}

    def record(key, fd, ex, labels):
        d = _scaled_dev(fd, ex)
        dev[key] = max(dev.get(key, 0.0), d)
        if d > tol:
            offenders.setdefault(key, [])
            for lab in _worst(fd, ex, tol, labels):
                if lab not in offenders[key]:
                    offenders[key].append(lab)

    tri = lambda t: f"({frame[t[0]]},{frame[t[1]]},{frame[t[2]]})"  # noqa: E731
    quad = lambda t: f"({frame[t[0]]},{frame[t[1]]},{frame[t[2]]},{frame[t[3]]})"  # noqa: E731
    pair = lambda t: f"({frame[t[0]]},{frame[t[1]]})"  # noqa: E731

    for x in sample_points(fx, points, seed):
        F = _gram_ok(fx, x, p)
        Finv = np.linalg.inv(F)
        gF = F @ fx.metric(x, p) @ F.T
        record("frame_metric", gF, np.array(M.metric, dtype=float), pair)
        dF = _d(lambda y: fx.frame(y, p), x, step)
        # brackets and connection actions in frame components
        fd_br = np.zeros((n, n, n))
        for i, j in product(range(n), repeat=2):
            fd_br[i, j] = (F[i] @ dF[:, j, :] - F[j] @ dF[:, i, :]) @ Finv
        record("brackets", fd_br, br, tri)
        for nm in names + sorted(derived):
            G = _christoffel(fx, nm, p, step)(x)
            act = np.einsum("ar,rbm->abm", F, dF) + np.einsum("ar,bn,rnm->abm", F, F, G)
            ex = conns[nm] if nm in conns else derived[nm]
            record(f"connection[{nm}]", act @ Finv, ex, tri)
        for nm in names:
            record(f"curvature[{nm}]", _frame_curvature(fx, nm, p, x, step), curv[nm], quad)
        Rn = _frame_curvature(fx, "nabla", p, x, step)
        Rs = _frame_curvature(fx, "nabla_star", p, x, step)
        S = 0.5 * (Rn + Rs)
        record("ricci[statistical]", np.einsum("abca->bc", S), ric_s, pair)

    for key in sorted(dev):
        ok = dev[key] <= tol
        rep.add(Check(key, "finite differences vs exact engine", verdict(ok), f"{dev[key]:.3e}",
                      detail="" if ok else "offending entries " + ", ".join(offenders.get(key, []))))
    return rep


def convergence_ratio(fixture="hyperbolic2", steps=(1e-3, 5e-4), points: int = 10, assign=None, seed: int = SEED,
                      connection: str = "nabla") -> float:
    """Ratio of maximal curvature deviations at two steps (about 4 for second-order differences)."""
    from .dsl.model import load

    fx = chart(fixture)
    M = load(fx.presentation).M
    p = _params(fx, assign)
    ex = _float_array(curvature(M, connection).entries, {k: v for k, v in p.items() if k in M.parameters})
    devs = []
    for h in steps:
        worst = 0.0
        for x in sample_points(fx, points, seed):
            worst = max(worst, float(np.max(np.abs(_frame_curvature(fx, connection, p, x, h) - ex))))
        devs.append(worst)
    if devs[1] == 0.0:
        raise DomainError("finite-difference error vanished at the smaller step; the ratio is undefined")
    return devs[0] / devs[1]
