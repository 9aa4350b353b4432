"""Exact tensor calculus on frame presentations.

A manifold is described by a frame ``e_1..e_n`` with a constant metric,
constant structure constants ``[e_i, e_j] = c^k_ij e_k`` and constant
connection coefficients ``nabla_{e_i} e_j = Gamma^k_ij e_k``, all living in a
polynomial ring over symbolic parameters.  Directional derivatives of
coefficients vanish, so every geometric quantity reduces to finite sums of
products of ring elements.

Index conventions
-----------------
* ``brackets[i][j][k] = c^k_ij``
* ``Connection.gamma[i][j][k] = Gamma^k_ij``
* ``CurvatureTensor.entries[i][j][k][l] = R^l_ijk`` with
  ``R(e_i, e_j) e_k = sum_l R^l_ijk e_l``
* ``BilinearForm.entries[i][j] = B(e_i, e_j)``
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import permutations, product
from typing import Mapping, Sequence

from .errors import DomainError, StructuralError
from .report import Check, Report
from .ring import Poly, RingQuotient, as_rational, quotient_normalize

SIGNS = ("standard", "reversed")
TRACES = ("first", "last")
ROLES = ("given", "dual", "levi_civita", "induced")


def _tup(x):
    if isinstance(x, (list, tuple)):
        return tuple(_tup(v) for v in x)
    return x


def _zeros(params, *shape):
    z = Poly.zero(params)
    if len(shape) == 1:
        return tuple(z for _ in range(shape[0]))
    return tuple(_zeros(params, *shape[1:]) for _ in range(shape[0]))


def invert_rational_matrix(m: Sequence[Sequence[Fraction]]) -> tuple[tuple[Fraction, ...], ...]:
    """Exact Gauss-Jordan inverse; raises StructuralError when singular."""
    n = len(m)
    a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise StructuralError("metric is singular")
        a[col], a[pivot] = a[pivot], a[col]
        pv = a[col][col]
        a[col] = [v / pv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


# ---------------------------------------------------------------------------
# value types


@dataclass(frozen=True)
class VectorField:
    """Frame-constant vector field ``sum_i coefficients[i] e_i``."""

    coefficients: tuple

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(self.coefficients))

    @property
    def dim(self):
        return len(self.coefficients)

    @property
    def params(self):
        return self.coefficients[0].params

    def __add__(self, other):
        return VectorField(tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other):
        return VectorField(tuple(a - b for a, b in zip(self.coefficients, other.coefficients)))

    def __neg__(self):
        return VectorField(tuple(-a for a in self.coefficients))

    def scale(self, c):
        return VectorField(tuple(a * c for a in self.coefficients))

    def is_zero(self):
        return all(c.is_zero() for c in self.coefficients)

    def subs(self, assignment):
        return VectorField(tuple(c.subs(assignment) for c in self.coefficients))

    def __getitem__(self, i):
        return self.coefficients[i]


@dataclass(frozen=True)
class Connection:
    """Coefficient array of an affine connection on the frame."""

    gamma: tuple
    role: str = "given"

    def __post_init__(self):
        object.__setattr__(self, "gamma", _tup(self.gamma))
        if self.role not in ROLES:
            raise StructuralError(f"unknown connection role {self.role!r}")

    @property
    def dim(self):
        return len(self.gamma)

    def apply(self, x: VectorField, y: VectorField) -> VectorField:
        """``nabla_X Y`` for frame-constant X, Y."""
        n = self.dim
        params = x.params
        out = [Poly.zero(params) for _ in range(n)]
        for i in range(n):
            xi = x.coefficients[i]
            if xi.is_zero():
                continue
            for j in range(n):
                yj = y.coefficients[j]
                if yj.is_zero():
                    continue
                w = xi * yj
                row = self.gamma[i][j]
                for k in range(n):
                    if not row[k].is_zero():
                        out[k] = out[k] + w * row[k]
        return VectorField(tuple(out))

    def subs(self, assignment):
        return Connection(_map(self.gamma, lambda p: p.subs(assignment)), self.role)


@dataclass(frozen=True)
class DifferenceTensor:
    """(1,2) tensor ``K(e_i, e_j) = sum_k components[i][j][k] e_k``."""

    components: tuple

    def __post_init__(self):
        object.__setattr__(self, "components", _tup(self.components))

    @property
    def dim(self):
        return len(self.components)

    def apply(self, x: VectorField, y: VectorField) -> VectorField:
        return Connection(self.components).apply(x, y)

    def is_zero(self):
        return all(p.is_zero() for p in _flatten(self.components))


@dataclass(frozen=True)
class BilinearForm:
    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", _tup(self.entries))

    @property
    def dim(self):
        return len(self.entries)

    def __call__(self, x: VectorField, y: VectorField) -> Poly:
        n = self.dim
        total = Poly.zero(x.params)
        for i in range(n):
            if x.coefficients[i].is_zero():
                continue
            for j in range(n):
                e = self.entries[i][j]
                if not e.is_zero() and not y.coefficients[j].is_zero():
                    total = total + x.coefficients[i] * y.coefficients[j] * e
        return total

    def __add__(self, other):
        return BilinearForm(_zip_map(self.entries, other.entries, lambda a, b: a + b))

    def __sub__(self, other):
        return BilinearForm(_zip_map(self.entries, other.entries, lambda a, b: a - b))

    def __neg__(self):
        return BilinearForm(_map(self.entries, lambda a: -a))

    def scale(self, c):
        return BilinearForm(_map(self.entries, lambda a: a * c))

    def is_zero(self):
        return all(p.is_zero() for row in self.entries for p in row)

    def is_symmetric(self):
        n = self.dim
        return all(self.entries[i][j] == self.entries[j][i] for i in range(n) for j in range(n))

    def subs(self, assignment):
        return BilinearForm(_map(self.entries, lambda p: p.subs(assignment)))


@dataclass(frozen=True)
class CurvatureTensor:
    """(1,3) tensor; ``entries[i][j][k][l] = R^l_ijk``."""

    entries: tuple
    sign: str = "standard"

    def __post_init__(self):
        object.__setattr__(self, "entries", _tup(self.entries))

    @property
    def dim(self):
        return len(self.entries)

    def apply(self, x: VectorField, y: VectorField, z: VectorField) -> VectorField:
        n = self.dim
        params = x.params
        out = [Poly.zero(params) for _ in range(n)]
        for i, j, k in product(range(n), repeat=3):
            w = x.coefficients[i]
            if w.is_zero():
                continue
            w2 = y.coefficients[j]
            if w2.is_zero():
                continue
            w3 = z.coefficients[k]
            if w3.is_zero():
                continue
            row = self.entries[i][j][k]
            coef = w * w2 * w3
            for l in range(n):
                if not row[l].is_zero():
                    out[l] = out[l] + coef * row[l]
        return VectorField(tuple(out))

    def negated(self):
        other = "reversed" if self.sign == "standard" else "standard"
        return CurvatureTensor(_map(self.entries, lambda p: -p), other)

    def is_zero(self):
        return all(p.is_zero() for p in _flatten(self.entries))

    def subs(self, assignment):
        return CurvatureTensor(_map(self.entries, lambda p: p.subs(assignment)), self.sign)


def _map(t, fn):
    if isinstance(t, tuple):
        return tuple(_map(v, fn) for v in t)
    return fn(t)


def _zip_map(a, b, fn):
    if isinstance(a, tuple):
        return tuple(_zip_map(x, y, fn) for x, y in zip(a, b))
    return fn(a, b)


def _flatten(t):
    if isinstance(t, tuple):
        for v in t:
            yield from _flatten(v)
    else:
        yield t


@dataclass(frozen=True)
class FramePresentation:
    """A manifold given by a frame with constant metric, brackets and connections.

    Construction validates metric symmetry and invertibility, antisymmetry of
    the structure constants and the Jacobi identity.  Pass ``validate=False``
    to build deliberately broken presentations for negative controls.
    """

    name: str
    frame: tuple
    parameters: tuple
    metric: tuple
    brackets: tuple
    connections: Mapping[str, Connection] = field(default_factory=dict)
    validate: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "frame", tuple(self.frame))
        object.__setattr__(self, "parameters", tuple(self.parameters))
        object.__setattr__(self, "metric", tuple(tuple(as_rational(v) for v in row) for row in self.metric))
        object.__setattr__(self, "brackets", _tup(self.brackets))
        object.__setattr__(self, "connections", dict(self.connections))
        n = len(self.frame)
        if n < 1:
            raise StructuralError("frame must contain at least one field")
        if len(set(self.frame)) != n:
            raise StructuralError("duplicate frame names")
        if len(self.metric) != n or any(len(r) != n for r in self.metric):
            raise StructuralError("metric shape does not match frame size")
        for name, conn in self.connections.items():
            if conn.dim != n:
                raise StructuralError(f"connection {name!r} has wrong dimension")
        if self.validate:
            self._check()

    def _check(self):
        n = self.dim
        g = self.metric
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(n)):
            raise StructuralError("metric is not symmetric")
        self.inverse_metric  # raises when singular
        c = self.brackets
        for i, j, k in product(range(n), repeat=3):
            if c[i][j][k] != -c[j][i][k]:
                raise StructuralError(
                    f"structure constants not antisymmetric at [{self.frame[i]}, {self.frame[j]}]"
                )
        for i, j, l, k in product(range(n), repeat=4):
            total = Poly.zero(self.parameters)
            for a, b, d in ((i, j, l), (j, l, i), (l, i, j)):
                for m in range(n):
                    if not c[a][b][m].is_zero() and not c[m][d][k].is_zero():
                        total = total + c[a][b][m] * c[m][d][k]
            if not total.is_zero():
                raise StructuralError(
                    f"Jacobi identity fails for ({self.frame[i]}, {self.frame[j]}, {self.frame[l]})"
                )

    @property
    def dim(self) -> int:
        return len(self.frame)

    @cached_property
    def inverse_metric(self):
        return invert_rational_matrix(self.metric)

    def index(self, name) -> int:
        if isinstance(name, int):
            return name
        try:
            return self.frame.index(name)
        except ValueError:
            raise StructuralError(f"unknown frame field {name!r}") from None

    def zero(self) -> Poly:
        return Poly.zero(self.parameters)

    def const(self, c) -> Poly:
        return Poly.const(c, self.parameters)

    def basis(self, i) -> VectorField:
        i = self.index(i)
        return VectorField(tuple(self.const(int(k == i)) for k in range(self.dim)))

    def vector(self, coeffs: Mapping | Sequence) -> VectorField:
        """Build a vector from ``{name: coefficient}`` or a full coefficient list."""
        if isinstance(coeffs, Mapping):
            out = [self.zero()] * self.dim
            for k, v in coeffs.items():
                out[self.index(k)] = v if isinstance(v, Poly) else self.const(v)
            return VectorField(tuple(out))
        return VectorField(tuple(v if isinstance(v, Poly) else self.const(v) for v in coeffs))

    def zero_vector(self) -> VectorField:
        return VectorField(tuple(self.zero() for _ in range(self.dim)))

    def g(self, x: VectorField, y: VectorField) -> Poly:
        return self.metric_form()(x, y)

    def metric_form(self) -> BilinearForm:
        return BilinearForm(tuple(tuple(self.const(v) for v in row) for row in self.metric))

    def bracket(self, x: VectorField, y: VectorField) -> VectorField:
        return Connection(self.brackets).apply(x, y)

    def lower(self, v: VectorField) -> tuple:
        """Covector ``g(v, e_j)``."""
        return tuple(self.g(v, self.basis(j)) for j in range(self.dim))

    def raise_index(self, covector: Sequence[Poly]) -> VectorField:
        n = self.dim
        gi = self.inverse_metric
        return VectorField(
            tuple(
                sum((covector[j] * gi[l][j] for j in range(n) if gi[l][j]), self.zero())
                for l in range(n)
            )
        )

    def connection(self, name="nabla") -> Connection:
        if isinstance(name, Connection):
            return name
        try:
            return self.connections[name]
        except KeyError:
            raise StructuralError(
                f"presentation {self.name!r} has no connection {name!r}; available: {sorted(self.connections)}"
            ) from None

    def with_connections(self, **conns) -> "FramePresentation":
        merged = dict(self.connections)
        merged.update(conns)
        return FramePresentation(
            self.name, self.frame, self.parameters, self.metric, self.brackets, merged, validate=False
        )

    def subs(self, assignment) -> "FramePresentation":
        assignment = {k: v for k, v in assignment.items() if k in self.parameters}
        return FramePresentation(
            self.name,
            self.frame,
            self.parameters,
            self.metric,
            _map(self.brackets, lambda p: p.subs(assignment)),
            {k: c.subs(assignment) for k, c in self.connections.items()},
            validate=False,
        )

    def vector_str(self, v: VectorField) -> str:
        return vector_str(v, self.frame)


def vector_str(v: VectorField, names: Sequence[str]) -> str:
    """Canonical text form of a vector, e.g. ``a*xi - e1`` or ``(a + 1)*e2``."""
    parts = []
    for c, name in zip(v.coefficients, names):
        if c.is_zero():
            continue
        if c == 1:
            body, neg = name, False
        elif c == -1:
            body, neg = name, True
        elif c.is_monomial():
            exp, coef = c.terms()[0]
            neg = coef < 0
            body = f"{-c if neg else c}*{name}"
        else:
            body, neg = f"({c})*{name}", False
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# lowered coefficients


def lowered(M: FramePresentation, conn: Connection):
    """``L[i][j][k] = g(nabla_{e_i} e_j, e_k)``."""
    n = M.dim
    g = M.metric
    z = M.zero()
    out = []
    for i in range(n):
        plane = []
        for j in range(n):
            row = conn.gamma[i][j]
            plane.append(
                tuple(
                    sum((row[m] * g[m][k] for m in range(n) if g[m][k] and not row[m].is_zero()), z)
                    for k in range(n)
                )
            )
        out.append(tuple(plane))
    return tuple(out)


def _raise_last(M: FramePresentation, low):
    n = M.dim
    gi = M.inverse_metric
    z = M.zero()
    return tuple(
        tuple(
            tuple(
                sum((low[i][j][k] * gi[l][k] for k in range(n) if gi[l][k] and not low[i][j][k].is_zero()), z)
                for l in range(n)
            )
            for j in range(n)
        )
        for i in range(n)
    )


def _lowered_brackets(M: FramePresentation):
    return lowered(M, Connection(M.brackets))


# ---------------------------------------------------------------------------
# operations


def levi_civita(M: FramePresentation) -> Connection:
    """Levi-Civita connection from the constant-metric Koszul formula.

    ``2 g(nabla_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y)``; the
    returned connection is re-checked to be torsion-free and metric.
    """
    n = M.dim
    cl = _lowered_brackets(M)
    half = Fraction(1, 2)
    low = tuple(
        tuple(
            tuple((cl[i][j][k] - cl[j][k][i] + cl[k][i][j]) * half for k in range(n))
            for j in range(n)
        )
        for i in range(n)
    )
    conn = Connection(_raise_last(M, low), role="levi_civita")
    if not torsion(M, conn).is_zero():
        raise StructuralError("Koszul connection failed the torsion re-check")
    if any(
        not (low[i][j][k] + low[i][k][j]).is_zero() for i, j, k in product(range(n), repeat=3)
    ):
        raise StructuralError("Koszul connection failed the metric re-check")
    return conn


def dual_connection(M: FramePresentation, nabla: Connection | str = "nabla") -> Connection:
    """Conjugate connection: ``g(nabla_i e_j, e_k) + g(e_j, nabla*_i e_k) = 0``."""
    nabla = M.connection(nabla)
    n = M.dim
    low = lowered(M, nabla)
    dual_low = tuple(
        tuple(tuple(-low[i][k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )
    role = "given" if nabla.role == "dual" else "dual"
    if nabla.role in ("levi_civita", "induced"):
        role = nabla.role
    return Connection(_raise_last(M, dual_low), role=role)


def difference_tensor(nabla: Connection, nabla_g: Connection) -> DifferenceTensor:
    """``K = nabla - nabla_g`` entrywise."""
    if nabla.dim != nabla_g.dim:
        raise StructuralError("connections have different dimensions")
    return DifferenceTensor(_zip_map(nabla.gamma, nabla_g.gamma, lambda a, b: a - b))


def torsion(M: FramePresentation, nabla: Connection) -> DifferenceTensor:
    """``T(e_i, e_j) = nabla_i e_j - nabla_j e_i - [e_i, e_j]``."""
    n = M.dim
    g, c = nabla.gamma, M.brackets
    return DifferenceTensor(
        tuple(
            tuple(tuple(g[i][j][k] - g[j][i][k] - c[i][j][k] for k in range(n)) for j in range(n))
            for i in range(n)
        )
    )


def cubic_form(M: FramePresentation, K: DifferenceTensor):
    """``C[i][j][k] = g(K(e_i, e_j), e_k)``."""
    return lowered(M, Connection(K.components))


def check_statistical(M: FramePresentation, nabla: Connection | str = "nabla") -> Report:
    """Torsion-freeness, Codazzi symmetry of ``nabla g`` and total symmetry of ``g(K(.,.),.)``."""
    nabla_name = nabla if isinstance(nabla, str) else "connection"
    nabla = M.connection(nabla)
    n = M.dim
    names = M.frame
    rep = Report(f"statistical structure check: {M.name} / {nabla_name}")

    tor = torsion(M, nabla)
    bad = [
        f"T({names[i]},{names[j]}) = {vector_str(VectorField(tor.components[i][j]), names)}"
        for i in range(n)
        for j in range(i + 1, n)
        if any(not p.is_zero() for p in tor.components[i][j])
    ]
    rep.add(Check("torsion_free", "torsion-free", "pass" if not bad else "fail", "; ".join(bad) or "0"))

    # (nabla_X g)(Y, Z) = -g(nabla_X Y, Z) - g(Y, nabla_X Z)
    low = lowered(M, nabla)
    ng = [[[-(low[i][j][k] + low[i][k][j]) for k in range(n)] for j in range(n)] for i in range(n)]
    bad = [
        f"({names[i]},{names[j]},{names[k]}): {ng[i][j][k] - ng[j][i][k]}"
        for i, j, k in product(range(n), repeat=3)
        if i < j and not (ng[i][j][k] - ng[j][i][k]).is_zero()
    ]
    rep.add(Check("codazzi", "Codazzi symmetry of nabla g", "pass" if not bad else "fail", "; ".join(bad) or "0"))

    K = difference_tensor(nabla, levi_civita(M))
    C = cubic_form(M, K)
    bad = []
    for i, j, k in product(range(n), repeat=3):
        if not (i <= j <= k):
            continue
        vals = {C[a][b][d] for a, b, d in set(permutations((i, j, k)))}
        if len(vals) > 1:
            bad.append(f"g(K({names[i]},{names[j]}),{names[k]}) not symmetric: {sorted(map(str, vals))}")
    rep.add(Check("cubic_symmetry", "total symmetry of g(K(X,Y),Z)", "pass" if not bad else "fail", "; ".join(bad) or "0"))
    return rep


def curvature(M: FramePresentation, nabla: Connection | str = "nabla", sign: str = "standard") -> CurvatureTensor:
    """``R(e_i,e_j)e_k = nabla_i nabla_j e_k - nabla_j nabla_i e_k - c^m_ij nabla_m e_k``.

    ``sign="reversed"`` negates the result.
    """
    if sign not in SIGNS:
        raise StructuralError(f"unknown sign convention {sign!r}")
    G = M.connection(nabla).gamma
    c = M.brackets
    n = M.dim
    z = M.zero()
    entries = [[[[z] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                out = [z] * n
                for l in range(n):
                    a = G[j][k][l]
                    if not a.is_zero():
                        row = G[i][l]
                        for p in range(n):
                            if not row[p].is_zero():
                                out[p] = out[p] + a * row[p]
                    b = G[i][k][l]
                    if not b.is_zero():
                        row = G[j][l]
                        for p in range(n):
                            if not row[p].is_zero():
                                out[p] = out[p] - b * row[p]
                for m in range(n):
                    cm = c[i][j][m]
                    if not cm.is_zero():
                        row = G[m][k]
                        for p in range(n):
                            if not row[p].is_zero():
                                out[p] = out[p] - cm * row[p]
                if sign == "reversed":
                    out = [-v for v in out]
                entries[i][j][k] = out
                entries[j][i][k] = [-v for v in out]
    R = CurvatureTensor(entries, sign)
    for i, j, k, l in product(range(n), repeat=4):
        if R.entries[i][j][k][l] != -R.entries[j][i][k][l]:
            raise StructuralError("curvature antisymmetry re-check failed")
    return R


def ricci(R: CurvatureTensor, M: FramePresentation | None = None, trace: str = "first") -> BilinearForm:
    """Ricci form.

    ``trace="first"`` (default): ``Ric(Y, Z) = tr(X -> R(X, Y) Z)``.
    ``trace="last"``: ``Ric(X, Y) = sum g^{ij} g(R(X, e_i) e_j, Y)``, which
    needs the presentation for its metric.
    """
    n = R.dim
    E = R.entries
    if trace == "first":
        z = E[0][0][0][0] * 0
        return BilinearForm(
            tuple(tuple(sum((E[i][j][k][i] for i in range(n)), z) for k in range(n)) for j in range(n))
        )
    if trace != "last":
        raise StructuralError(f"unknown trace convention {trace!r}")
    if M is None:
        raise StructuralError("the last-slot trace needs the metric")
    g, gi = M.metric, M.inverse_metric
    z = M.zero()
    out = []
    for x in range(n):
        row = []
        for y in range(n):
            total = z
            for i, j in product(range(n), repeat=2):
                if not gi[i][j]:
                    continue
                v = sum((E[x][i][j][l] * g[l][y] for l in range(n) if g[l][y]), z)
                total = total + v * gi[i][j]
            row.append(total)
        out.append(tuple(row))
    return BilinearForm(tuple(out))


def scalar(Ric: BilinearForm, M: FramePresentation) -> Poly:
    """``sum g^{ij} Ric(e_i, e_j)``."""
    gi = M.inverse_metric
    n = M.dim
    return sum((Ric.entries[i][j] * gi[i][j] for i in range(n) for j in range(n) if gi[i][j]), M.zero())


def statistical_curvature(R: CurvatureTensor, R_star: CurvatureTensor) -> CurvatureTensor:
    """``S = (R + R*) / 2``."""
    if R.dim != R_star.dim:
        raise StructuralError("curvature tensors have different dimensions")
    if R.sign != R_star.sign:
        raise StructuralError("curvature tensors use different sign conventions")
    half = Fraction(1, 2)
    return CurvatureTensor(_zip_map(R.entries, R_star.entries, lambda a, b: (a + b) * half), R.sign)


def statistical_curvature_of(M: FramePresentation, nabla="nabla", sign="standard") -> CurvatureTensor:
    nabla = M.connection(nabla)
    return statistical_curvature(curvature(M, nabla, sign), curvature(M, dual_connection(M, nabla), sign))


def sectional(M: FramePresentation, S: CurvatureTensor, X: VectorField, Y: VectorField) -> RingQuotient:
    """``g(S(X,Y)Y, X) / (g(X,X) g(Y,Y) - g(X,Y)^2)``."""
    gram = M.g(X, X) * M.g(Y, Y) - M.g(X, Y) ** 2
    if gram.is_zero():
        raise DomainError("X and Y do not span a 2-plane")
    num = M.g(S.apply(X, Y, Y), X)
    return quotient_normalize(RingQuotient(num, gram))


@dataclass(frozen=True)
class LieDerivative:
    """Lie derivative of the metric along a frame-constant field.

    ``bracket`` is ``-g([V,X],Y) - g(X,[V,Y])``; ``via_connections`` is
    ``g(nabla_X V, Y) + g(X, nabla*_Y V)`` when a connection was supplied.
    """

    bracket: BilinearForm
    via_connections: BilinearForm | None = None

    @property
    def agrees(self) -> bool | None:
        if self.via_connections is None:
            return None
        return (self.bracket - self.via_connections).is_zero()

    @property
    def discrepancy(self) -> BilinearForm | None:
        if self.via_connections is None:
            return None
        return self.bracket - self.via_connections


def lie_derivative_metric(M: FramePresentation, V: VectorField, nabla: Connection | str | None = "nabla") -> LieDerivative:
    n = M.dim
    basis = [M.basis(i) for i in range(n)]
    brs = [M.bracket(V, e) for e in basis]
    bracket_form = BilinearForm(
        tuple(tuple(-(M.g(brs[i], basis[j]) + M.g(basis[i], brs[j])) for j in range(n)) for i in range(n))
    )
    if nabla is None or (isinstance(nabla, str) and nabla not in M.connections):
        return LieDerivative(bracket_form)
    conn = M.connection(nabla)
    dual = dual_connection(M, conn)
    dv = [conn.apply(e, V) for e in basis]
    dsv = [dual.apply(e, V) for e in basis]
    via = BilinearForm(
        tuple(tuple(M.g(dv[i], basis[j]) + M.g(basis[i], dsv[j]) for j in range(n)) for i in range(n))
    )
    return LieDerivative(bracket_form, via)


def constant_curvature_model(M: FramePresentation):
    """``Q^l_ijk`` with ``Q(X,Y)Z = g(Y,Z) X - g(X,Z) Y`` on the frame."""
    n = M.dim
    g = M.metric
    return [
        [[[g[j][k] * (l == i) - g[i][k] * (l == j) for l in range(n)] for k in range(n)] for j in range(n)]
        for i in range(n)
    ]


def constant_curvature_check(M: FramePresentation, R: CurvatureTensor) -> RingQuotient | None:
    """Return c with ``R(X,Y)Z = c (g(Y,Z)X - g(X,Z)Y)`` on all frame triples, else None."""
    n = M.dim
    if n < 2:
        raise StructuralError("constant curvature needs dimension at least 2")
    Q = constant_curvature_model(M)
    c = None
    for i, j, k, l in product(range(n), repeat=4):
        q = Q[i][j][k][l]
        if q:
            c = R.entries[i][j][k][l] / q
            break
    if c is None:
        return None
    for i, j, k, l in product(range(n), repeat=4):
        if R.entries[i][j][k][l] != c * Q[i][j][k][l]:
            return None
    return RingQuotient(c)


def constant_curvature_residual(M: FramePresentation, R: CurvatureTensor, c) -> CurvatureTensor:
    """``R - c Q`` entrywise, for reporting why the constant-curvature ansatz fails."""
    n = M.dim
    Q = constant_curvature_model(M)
    if isinstance(c, RingQuotient):
        c = c.as_poly()
    return CurvatureTensor(
        tuple(
            tuple(
                tuple(tuple(R.entries[i][j][k][l] - c * Q[i][j][k][l] for l in range(n)) for k in range(n))
                for j in range(n)
            )
            for i in range(n)
        ),
        R.sign,
    )


def ricci_of(M: FramePresentation, nabla="nabla", source="nabla", sign="standard", trace="first") -> BilinearForm:
    """Ricci form from ``nabla``, its dual, or the statistical curvature."""
    conn = M.connection(nabla)
    if source in ("nabla", "connection"):
        R = curvature(M, conn, sign)
    elif source in ("nabla_star", "nabla-star", "dual"):
        R = curvature(M, dual_connection(M, conn), sign)
    elif source == "statistical":
        R = statistical_curvature_of(M, conn, sign)
    else:
        raise StructuralError(f"unknown Ricci source {source!r}")
    return ricci(R, M, trace)


def bilinear_str(B: BilinearForm, names: Sequence[str]) -> str:
    n = B.dim
    parts = [
        f"({names[i]},{names[j]}): {B.entries[i][j]}"
        for i in range(n)
        for j in range(n)
        if not B.entries[i][j].is_zero()
    ]
    return "; ".join(parts) if parts else "0"


def curvature_str(R: CurvatureTensor, names: Sequence[str]) -> str:
    n = R.dim
    parts = []
    for i, j, k in product(range(n), repeat=3):
        if i < j:
            v = VectorField(R.entries[i][j][k])
            if not v.is_zero():
                parts.append(f"R({names[i]},{names[j]}){names[k]} = {vector_str(v, names)}")
    return "; ".join(parts) if parts else "0"
