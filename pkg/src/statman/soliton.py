"""Soliton residuals, exact solvers, Einstein detection and ambient theorem audits."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import StructuralError
from .frame_algebra import (
    BilinearForm,
    FramePresentation,
    VectorField,
    bilinear_str,
    lie_derivative_metric,
    ricci_of,
    scalar,
)
from .report import Check, Report, verdict
from .ring import Poly, RingQuotient, quotient_normalize

KINDS = ("ricci", "eta_ricci", "yamabe", "quasi_yamabe")
SOURCES = ("nabla", "nabla_star", "statistical")


def normalize_kind(kind: str) -> str:
    k = kind.replace("-", "_").lower()
    if k not in KINDS:
        raise StructuralError(f"unknown soliton kind {kind!r}; expected one of {KINDS}")
    return k


def normalize_source(source: str) -> str:
    s = source.replace("-", "_").lower()
    if s not in SOURCES:
        raise StructuralError(f"unknown Ricci source {source!r}; expected one of {SOURCES}")
    return s


@dataclass(frozen=True)
class SolitonProblem:
    """A soliton equation on a presentation.

    The defining left-hand sides are::

        ricci         Ric + 1/2 L_V g + lambda g
        eta_ricci     2 Ric + L_V g + 2 lambda g + 2 omega eta(x)eta
        yamabe        L_V g - 2 (R - lambda) g
        quasi_yamabe  1/2 L_V g + (lambda - R) g + omega eta(x)eta

    ``potential`` of None means the zero field.
    """

    kind: str
    potential: VectorField | None = None
    ricci_source: str = "nabla"
    contact: object = None
    nabla: str = "nabla"
    sign: str = "standard"
    trace: str = "first"

    def __post_init__(self):
        object.__setattr__(self, "kind", normalize_kind(self.kind))
        object.__setattr__(self, "ricci_source", normalize_source(self.ricci_source))

    @property
    def use_eta(self) -> bool:
        return self.kind in ("eta_ricci", "quasi_yamabe")


@dataclass(frozen=True)
class PencilSolution:
    """Solution of ``A + sum c_k B_k = 0`` by projection onto the span of the ``B_k``."""

    coefficients: tuple
    residual: BilinearForm
    consistent: bool
    notes: tuple = ()


@dataclass(frozen=True)
class SolitonSolution:
    lam: RingQuotient
    omega: RingQuotient | None
    residual: BilinearForm
    consistent: bool
    source: str = "nabla"
    notes: tuple = ()

    def __post_init__(self):
        if self.consistent != self.residual.is_zero():
            raise StructuralError("consistency flag disagrees with the residual")


def _frob(A: BilinearForm, B: BilinearForm):
    n = A.dim
    return sum((A.entries[i][j] * B.entries[i][j] for i in range(n) for j in range(n)), A.entries[0][0] * 0)


def solve_pencil(A: BilinearForm, gens) -> PencilSolution:
    """Solve ``A + sum_k c_k gens[k] = 0`` exactly.

    The coefficients come from the Gram system of the Frobenius pairing on
    frame entries (Cramer's rule over RingQuotient).  Generators that vanish
    identically are dropped with coefficient 0 and a note; linearly dependent
    nonzero generators raise StructuralError.  ``residual`` is the numerator
    form ``den * A + sum num_k gens[k]``, zero exactly when consistent.
    """
    params = A.entries[0][0].params
    notes = []
    active = [k for k, B in enumerate(gens) if not B.is_zero()]
    for k, B in enumerate(gens):
        if B.is_zero():
            notes.append(f"generator {k} vanishes identically; its coefficient is unconstrained and set to 0")
    m = len(active)
    G = [[_frob(gens[a], gens[b]) for b in active] for a in active]
    rhs = [-_frob(A, gens[a]) for a in active]
    if m == 0:
        det = Poly.one(params)
        nums = []
    elif m == 1:
        det = G[0][0]
        nums = [rhs[0]]
    elif m == 2:
        det = G[0][0] * G[1][1] - G[0][1] * G[1][0]
        nums = [rhs[0] * G[1][1] - G[0][1] * rhs[1], G[0][0] * rhs[1] - rhs[0] * G[1][0]]
    else:
        raise StructuralError("at most two generators are supported")
    if det.is_zero():
        raise StructuralError("generators are linearly dependent; the projection is degenerate")
    coeffs = [RingQuotient(Poly.zero(params))] * len(gens)
    resid = A.scale(det)
    for a, num in zip(active, nums):
        coeffs[a] = quotient_normalize(RingQuotient(num, det))
        resid = resid + gens[a].scale(num)
    return PencilSolution(tuple(coeffs), resid, resid.is_zero(), tuple(notes))


def _ricci(M, prob):
    return ricci_of(M, prob.nabla, prob.ricci_source, prob.sign, prob.trace)


def _lie(M, prob):
    V = prob.potential if prob.potential is not None else M.zero_vector()
    return lie_derivative_metric(M, V, None).bracket


def _eta_form(M, prob):
    if prob.contact is None:
        raise StructuralError(f"{prob.kind} soliton needs a contact structure for eta")
    return prob.contact.eta_form(M)


def soliton_pencil(M: FramePresentation, prob: SolitonProblem):
    """``(A, B_lambda, B_omega)`` with residual ``A + lambda B_lambda + omega B_omega``."""
    g = M.metric_form()
    L = _lie(M, prob)
    zero = g.scale(0)
    if prob.kind == "ricci":
        return _ricci(M, prob) + L.scale(Fraction(1, 2)), g, zero
    if prob.kind == "eta_ricci":
        return _ricci(M, prob).scale(2) + L, g.scale(2), _eta_form(M, prob).scale(2)
    R = scalar(_ricci(M, prob), M)
    if prob.kind == "yamabe":
        return L - g.scale(R * 2), g.scale(2), zero
    return L.scale(Fraction(1, 2)) - g.scale(R), g, _eta_form(M, prob)


def soliton_residual(M: FramePresentation, prob: SolitonProblem, lam, omega=0) -> BilinearForm:
    """Left-hand side of the defining equation at the given constants."""
    if prob.use_eta and prob.contact is None:
        raise StructuralError(f"{prob.kind} soliton needs a contact structure for eta")
    A, Bl, Bw = soliton_pencil(M, prob)
    lam = _as_poly(lam, M)
    omega = _as_poly(omega, M)
    return A + Bl.scale(lam) + Bw.scale(omega)


def _as_poly(x, M):
    if isinstance(x, RingQuotient):
        return x.as_poly()
    if isinstance(x, Poly):
        return x
    return M.const(x)


def solve_soliton(M: FramePresentation, prob: SolitonProblem) -> SolitonSolution:
    """Exact (lambda, omega) by projecting the residual pencil onto its generators."""
    A, Bl, Bw = soliton_pencil(M, prob)
    gens = [Bl, Bw] if prob.use_eta else [Bl]
    sol = solve_pencil(A, gens)
    lam = sol.coefficients[0]
    omega = sol.coefficients[1] if prob.use_eta else None
    return SolitonSolution(lam, omega, sol.residual, sol.consistent, prob.ricci_source, sol.notes)


def classify(lam, assignment=None, convention: str = "ricci") -> str:
    """``shrinking``/``steady``/``expanding`` from the sign of lambda.

    ``convention="ricci"``: lambda < 0 shrinking, > 0 expanding.
    ``convention="yamabe"``: the opposite assignment of labels.
    """
    if not isinstance(lam, RingQuotient):
        lam = RingQuotient(lam if isinstance(lam, Poly) else Poly.const(lam))
    v = lam.evaluate(assignment or {})
    sign = "zero" if v == 0 else ("negative" if v < 0 else "positive")
    if sign == "zero":
        return "steady"
    if convention == "ricci":
        return "shrinking" if sign == "negative" else "expanding"
    if convention == "yamabe":
        return "expanding" if sign == "negative" else "shrinking"
    raise StructuralError(f"unknown classification convention {convention!r}")


@dataclass(frozen=True)
class EinsteinResult:
    """``kind`` is ``einstein``, ``eta_einstein`` or ``neither``."""

    kind: str
    c1: RingQuotient | None = None
    c2: RingQuotient | None = None
    residual: BilinearForm | None = None

    def __str__(self):
        if self.kind == "einstein":
            return f"einstein({self.c1})"
        if self.kind == "eta_einstein":
            return f"eta_einstein({self.c1}, {self.c2})"
        return "neither"


def einstein_check(M: FramePresentation, Ric: BilinearForm, ct=None) -> EinsteinResult:
    """Exact decomposition ``Ric = c1 g + c2 eta(x)eta`` (``c2 = 0`` means Einstein)."""
    g = M.metric_form()
    sol = solve_pencil(-Ric, [g])
    if sol.consistent:
        return EinsteinResult("einstein", sol.coefficients[0], RingQuotient(M.zero()), sol.residual)
    if ct is None:
        return EinsteinResult("neither", residual=sol.residual)
    sol = solve_pencil(-Ric, [g, ct.eta_form(M)])
    if sol.consistent:
        c1, c2 = sol.coefficients
        if c2.is_zero():
            return EinsteinResult("einstein", c1, c2, sol.residual)
        return EinsteinResult("eta_einstein", c1, c2, sol.residual)
    return EinsteinResult("neither", residual=sol.residual)


def _judge(value, assign):
    """True when a Poly/RingQuotient/BilinearForm/VectorField is zero (after substitution)."""
    if assign:
        value = value.subs(assign)
    return value.is_zero()


def _qpoly(q: RingQuotient) -> Poly:
    if not q.is_polynomial():
        raise StructuralError(f"{q} is not polynomial; audits need polynomial soliton constants")
    return q.as_poly()


def audit_ambient_theorems(M: FramePresentation, nabla, ct, source="statistical", assign=None,
                           omega_shift=0, sign="standard") -> Report:
    """Ambient eta-Ricci soliton identities for potential xi.

    Solves the eta-Ricci problem, then checks the eta-Einstein form of Ric,
    the Ricci-operator action on xi, the eigenvalue statement for xi and the
    scalar identity; ``omega_shift`` perturbs the solved omega (negative
    control).
    """
    from .structures import beta_of

    n = M.dim
    if n % 2 == 0:
        raise StructuralError("ambient theorems need odd dimension 2s+1")
    s = (n - 1) // 2
    prob = SolitonProblem("eta_ricci", ct.xi, source, ct, nabla, sign)
    sol = solve_soliton(M, prob)
    rep = Report(f"ambient eta-Ricci audit: {M.name} (source={source})")
    if assign:
        rep.data["assignment"] = ", ".join(f"{k}={v}" for k, v in sorted(assign.items()))
    conv = (f"source={source}", f"sign={sign}")
    rep.add(Check("solve", "eta-Ricci soliton with potential xi", verdict(sol.consistent),
                  f"lambda = {sol.lam}, omega = {sol.omega}", conventions=conv, detail="; ".join(sol.notes)))
    if not sol.consistent:
        rep.add(Check("residual", "soliton residual", "info", bilinear_str(sol.residual, M.frame)))
        return rep
    lam = _qpoly(sol.lam)
    omega = _qpoly(sol.omega) + omega_shift
    beta = beta_of(M, nabla, ct)
    rep.data["lambda"] = str(lam)
    rep.data["omega"] = str(omega)
    if omega_shift:
        rep.data["omega_shift"] = str(omega_shift)
    rep.data["beta"] = str(beta)
    Ric = ricci_of(M, nabla, source, sign)
    g = M.metric_form()
    ee = ct.eta_form(M)
    claimed = g.scale(-(lam + 1)) - ee.scale(omega + beta - 1)
    res = Ric - claimed
    rep.add(Check("ricci_form", "Ric = -(lambda+1) g - (omega+beta-1) eta(x)eta", verdict(_judge(res, assign), "match"),
                  bilinear_str(res, M.frame), conventions=conv))
    # Ricci operator on xi: raise Ric(xi, .)
    Qxi = M.raise_index([Ric(ct.xi, M.basis(j)) for j in range(n)])
    r_op = Qxi - ct.xi.scale(-(lam + 1) - (omega + beta - 1))
    rep.add(Check("ricci_operator", "Q E = -(lambda+1) E - (omega+beta-1) eta(E) xi at E = xi", verdict(_judge(r_op, assign), "match"),
                  f"Q xi = {M.vector_str(Qxi)}; residual {M.vector_str(r_op)}", conventions=conv))
    eig = Qxi - ct.xi.scale(-(lam + omega + beta - 1))
    rep.add(Check("eigenvalue", "Q xi = -(lambda+omega+beta-1) xi", verdict(_judge(eig, assign), "match"),
                  f"residual {M.vector_str(eig)}", printed=str(-(lam + omega + beta - 1)), conventions=conv))
    r = scalar(Ric, M)
    rhs = -(lam + 1) * (2 * s + 1) - (omega + beta - 1)
    rep.add(Check("scalar", "r = -(2s+1)(lambda+1) - (omega+beta-1)", verdict(_judge(r - rhs, assign), "match"),
                  f"engine r = {r}", printed=str(rhs), conventions=conv))
    return rep
