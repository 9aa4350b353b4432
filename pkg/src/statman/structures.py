"""Almost contact and Kenmotsu statistical structures on frame presentations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import StructuralError, UnsupportedInputError
from .frame_algebra import (
    BilinearForm,
    Connection,
    DifferenceTensor,
    FramePresentation,
    VectorField,
    bilinear_str,
    check_statistical,
    curvature,
    difference_tensor,
    dual_connection,
    levi_civita,
    ricci_of,
    vector_str,
)
from .report import Check, Report, verdict
from .ring import Poly, RingQuotient, quotient_normalize


@dataclass(frozen=True)
class ContactTriple:
    """``phi[i]`` holds the coefficients of ``phi(e_i)``; eta is derived from ``xi``."""

    phi: tuple
    xi: VectorField

    def __post_init__(self):
        object.__setattr__(self, "phi", tuple(tuple(r) for r in self.phi))

    @property
    def dim(self):
        return len(self.phi)

    def apply(self, v: VectorField) -> VectorField:
        n = self.dim
        z = v.coefficients[0] * 0
        out = [z] * n
        for i in range(n):
            ci = v.coefficients[i]
            if ci.is_zero():
                continue
            for k in range(n):
                if not self.phi[i][k].is_zero():
                    out[k] = out[k] + ci * self.phi[i][k]
        return VectorField(tuple(out))

    def eta(self, M: FramePresentation, v: VectorField) -> Poly:
        return M.g(v, self.xi)

    def eta_form(self, M: FramePresentation) -> BilinearForm:
        """``eta (x) eta`` on the frame."""
        e = [self.eta(M, M.basis(i)) for i in range(M.dim)]
        return BilinearForm(tuple(tuple(e[i] * e[j] for j in range(M.dim)) for i in range(M.dim)))

    def xi_index(self, M: FramePresentation) -> int | None:
        """Index of the frame field equal to xi, if any."""
        for i in range(M.dim):
            if (M.basis(i) - self.xi).is_zero():
                return i
        return None

    def subs(self, assignment):
        return ContactTriple(
            tuple(tuple(p.subs(assignment) for p in row) for row in self.phi), self.xi.subs(assignment)
        )


def contact_from_images(M: FramePresentation, images: dict, xi) -> ContactTriple:
    """Build a contact triple from ``{frame name: phi image}`` and the name or vector of xi."""
    rows = []
    for f in M.frame:
        v = images.get(f)
        rows.append(v.coefficients if isinstance(v, VectorField) else M.vector(v or {}).coefficients)
    if not isinstance(xi, VectorField):
        xi = M.basis(xi)
    return ContactTriple(tuple(rows), xi)


def _require_dim(M, ct):
    if ct.dim != M.dim or ct.xi.dim != M.dim:
        raise StructuralError(f"contact structure has dimension {ct.dim}, presentation has {M.dim}")


def _residual_list(M, items):
    """Render ``[(label, VectorField or Poly)]`` skipping zeros."""
    parts = []
    for label, v in items:
        if isinstance(v, VectorField):
            if not v.is_zero():
                parts.append(f"{label}: {vector_str(v, M.frame)}")
        elif not v.is_zero():
            parts.append(f"{label}: {v}")
    return parts


def _emit(rep, claim, anchor, parts, kind="pass"):
    rep.add(Check(claim, anchor, verdict(not parts, kind), "; ".join(parts) or "0"))


def check_almost_contact(M: FramePresentation, ct: ContactTriple) -> Report:
    """Residuals of the almost contact metric identities over all frame pairs."""
    _require_dim(M, ct)
    n = M.dim
    basis = [M.basis(i) for i in range(n)]
    names = M.frame
    rep = Report(f"almost contact metric check: {M.name}")
    xi = ct.xi
    eta_xi = ct.eta(M, xi)
    _emit(rep, "eta_xi", "eta(xi) = 1", [] if eta_xi == 1 else [f"eta(xi) = {eta_xi}"])
    _emit(rep, "phi_xi", "phi xi = 0", _residual_list(M, [("phi xi", ct.apply(xi))]))
    _emit(rep, "eta_phi", "eta o phi = 0", _residual_list(M, [(f"eta(phi {names[i]})", ct.eta(M, ct.apply(basis[i]))) for i in range(n)]))
    items = []
    for i in range(n):
        lhs = ct.apply(ct.apply(basis[i]))
        rhs = -basis[i] + xi.scale(ct.eta(M, basis[i]))
        items.append((f"phi^2 {names[i]}", lhs - rhs))
    _emit(rep, "phi_squared", "phi^2 = -I + eta (x) xi", _residual_list(M, items))
    items = []
    for i, j in product(range(n), repeat=2):
        if i <= j:
            lhs = M.g(ct.apply(basis[i]), ct.apply(basis[j]))
            rhs = M.g(basis[i], basis[j]) - ct.eta(M, basis[i]) * ct.eta(M, basis[j])
            items.append((f"({names[i]},{names[j]})", lhs - rhs))
    _emit(rep, "metric_compatible", "g(phi X, phi Y) = g(X,Y) - eta(X) eta(Y)", _residual_list(M, items))
    return rep


def beta_of(M: FramePresentation, nabla, ct: ContactTriple) -> Poly:
    """``eta(K(xi, xi))`` with ``K = nabla - nabla^g``."""
    K = difference_tensor(M.connection(nabla), levi_civita(M))
    return ct.eta(M, K.apply(ct.xi, ct.xi))


def check_kenmotsu_statistical(M: FramePresentation, nabla, ct: ContactTriple) -> Report:
    """Statistical precondition, the two Kenmotsu statistical identities and K-phi anticommutation."""
    _require_dim(M, ct)
    conn = M.connection(nabla)
    n = M.dim
    names = M.frame
    basis = [M.basis(i) for i in range(n)]
    rep = Report(f"Kenmotsu statistical check: {M.name}")
    stat = check_statistical(M, conn)
    rep.add(
        Check(
            "statistical",
            "statistical structure (precondition)",
            verdict(stat.passed),
            "; ".join(f"{c.claim}={c.verdict}" for c in stat.checks),
        )
    )
    ac = check_almost_contact(M, ct)
    rep.add(Check("almost_contact", "almost contact metric structure", verdict(ac.passed),
                  "; ".join(f"{c.claim}={c.verdict}" for c in ac.checks)))
    star = dual_connection(M, conn)
    xi = ct.xi
    eta = [ct.eta(M, e) for e in basis]
    items = []
    for i, j in product(range(n), repeat=2):
        E, F = basis[i], basis[j]
        lhs = conn.apply(E, ct.apply(F)) - ct.apply(star.apply(E, F))
        rhs = ct.apply(E).scale(-eta[j]) + xi.scale(M.g(ct.apply(E), F))
        items.append((f"({names[i]},{names[j]})", lhs - rhs))
    _emit(rep, "nabla_phi", "nabla_E(phi F) - phi nabla*_E F = -eta(F) phi E + g(phi E, F) xi", _residual_list(M, items))

    beta = beta_of(M, conn, ct)
    items = []
    for i in range(n):
        E = basis[i]
        mu = beta * eta[i]
        rhs = E - xi.scale(eta[i] - mu)
        items.append((names[i], conn.apply(E, xi) - rhs))
    _emit(rep, "nabla_xi", "nabla_E xi = E - [eta(E) - mu(E)] xi, mu(E) = eta(K(xi,xi)) eta(E)", _residual_list(M, items))

    K = difference_tensor(conn, levi_civita(M))
    items = []
    for i, j in product(range(n), repeat=2):
        E, F = basis[i], basis[j]
        items.append((f"({names[i]},{names[j]})", K.apply(E, ct.apply(F)) + ct.apply(K.apply(E, F))))
    _emit(rep, "K_phi", "K(E, phi F) = -phi K(E, F)", _residual_list(M, items))
    rep.data["mu(xi)"] = str(beta)
    return rep


@dataclass(frozen=True)
class KDecomposition:
    """``K(E,F) = A_part(E,F) + Theta(E,F) xi`` with ``A_part`` orthogonal to xi."""

    A_part: DifferenceTensor
    Theta: BilinearForm


def decompose_K(M: FramePresentation, nabla, ct: ContactTriple, K: DifferenceTensor | None = None):
    """Split the difference tensor along xi and test the conditions on the split parts.

    Returns ``(KDecomposition, Report)``.  ``K`` may be passed explicitly to
    audit a tensor other than ``nabla - nabla^g``.
    """
    _require_dim(M, ct)
    n = M.dim
    names = M.frame
    basis = [M.basis(i) for i in range(n)]
    if K is None:
        K = difference_tensor(M.connection(nabla), levi_civita(M))
    xi = ct.xi
    gxx = M.g(xi, xi)
    if not gxx.is_constant() or gxx.is_zero():
        raise StructuralError("xi must have constant nonzero length")
    inv = 1 / gxx.constant_value()
    theta = [[M.g(K.apply(basis[i], basis[j]), xi) * inv for j in range(n)] for i in range(n)]
    A = [[(K.apply(basis[i], basis[j]) - xi.scale(theta[i][j])).coefficients for j in range(n)] for i in range(n)]
    dec = KDecomposition(DifferenceTensor(A), BilinearForm(theta))
    rep = Report(f"difference tensor decomposition: {M.name}")
    _emit(rep, "A_xi", "A(E, xi) = 0", _residual_list(M, [(f"A({names[i]},xi)", dec.A_part.apply(basis[i], xi)) for i in range(n)]))
    base = [basis[j] - xi.scale(M.g(basis[j], xi) * inv) for j in range(n)]
    items = []
    for i, j in product(range(n), repeat=2):
        if not base[j].is_zero():
            items.append((f"Theta({names[i]},{names[j]}^base)", M.g(K.apply(basis[i], base[j]), xi) * inv))
    _emit(rep, "Theta_base", "Theta(E, F_base) = 0", _residual_list(M, items))
    items = []
    for i, j in product(range(n), repeat=2):
        E, F = base[i], base[j]
        if E.is_zero() or F.is_zero():
            continue
        items.append((f"({names[i]},{names[j]})", dec.A_part.apply(E, ct.apply(F)) + ct.apply(dec.A_part.apply(E, F))))
    _emit(rep, "holomorphic", "K_base(E, J F) = -J K_base(E, F) on the base", _residual_list(M, items))
    rep.data["Theta"] = bilinear_str(dec.Theta, names)
    return dec, rep


# ---------------------------------------------------------------------------
# warped products


@dataclass(frozen=True)
class HolomorphicBase:
    """Even-dimensional abelian base with complex structure ``J`` and difference tensor ``K_base``.

    ``J[i]`` holds the coefficients of ``J(e_i)``.
    """

    presentation: FramePresentation
    J: tuple
    K_base: DifferenceTensor | None = None

    def __post_init__(self):
        M = self.presentation
        n = M.dim
        object.__setattr__(self, "J", tuple(tuple(M.const(c) if not isinstance(c, Poly) else c for c in r) for r in self.J))
        if n % 2:
            raise StructuralError("holomorphic base must have even dimension")
        if len(self.J) != n or any(len(r) != n for r in self.J):
            raise StructuralError("J has the wrong shape")
        if self.K_base is None:
            object.__setattr__(self, "K_base", DifferenceTensor(tuple(tuple(tuple(M.zero() for _ in range(n)) for _ in range(n)) for _ in range(n))))
        jt = ContactTriple(self.J, M.zero_vector())
        for i in range(n):
            e = M.basis(i)
            if not (jt.apply(jt.apply(e)) + e).is_zero():
                raise StructuralError("J^2 != -I")
            for j in range(n):
                f = M.basis(j)
                if M.g(jt.apply(e), jt.apply(f)) != M.g(e, f):
                    raise StructuralError("metric is not J-invariant")

    def J_apply(self, v):
        return ContactTriple(self.J, self.presentation.zero_vector()).apply(v)


@dataclass(frozen=True)
class WarpResult:
    presentation: FramePresentation
    contact: ContactTriple
    report: Report


def warp_kenmotsu(base: HolomorphicBase, beta, xi_name: str = "xi") -> WarpResult:
    """Kenmotsu statistical presentation on ``base x R`` with metric ``e^{2t} g + dt^2``.

    The frame is ``e_i = e^{-t} E_i`` for the base frame ``E_i`` plus
    ``xi = d/dt``; the difference tensor is ``K(E,F) = K_base(E,F)`` on
    base fields (components read in the rescaled frame), ``K(E, xi) = 0`` and
    ``K(xi, xi) = beta xi``.
    """
    B = base.presentation
    if any(not p.is_zero() for row in B.brackets for col in row for p in col):
        raise UnsupportedInputError("warped constructor supports abelian base frames only")
    m = B.dim
    params = B.parameters
    if not isinstance(beta, Poly):
        beta = Poly.const(beta, params)
    if beta.params != params:
        raise StructuralError("beta must use the base parameter list")
    if xi_name in B.frame:
        raise StructuralError(f"frame name {xi_name!r} already used by the base")
    n = m + 1
    z = Poly.zero(params)
    one = Poly.one(params)
    frame = B.frame + (xi_name,)
    metric = [[B.metric[i][j] if i < m and j < m else Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    br = [[[z] * n for _ in range(n)] for _ in range(n)]
    for i in range(m):
        br[i][m][i] = one
        br[m][i][i] = -one
    # warped Levi-Civita for an abelian constant-metric base
    lc = [[[z] * n for _ in range(n)] for _ in range(n)]
    for i in range(m):
        for j in range(m):
            if B.metric[i][j]:
                lc[i][j][m] = Poly.const(-B.metric[i][j], params)
        lc[i][m][i] = one
    Kt = base.K_base.components
    Kc = [[[z] * n for _ in range(n)] for _ in range(n)]
    for i, j, k in product(range(m), repeat=3):
        Kc[i][j][k] = Kt[i][j][k]
    Kc[m][m][m] = beta
    nabla = [[[lc[i][j][k] + Kc[i][j][k] for k in range(n)] for j in range(n)] for i in range(n)]
    M = FramePresentation(
        f"{B.name} warped",
        frame,
        params,
        metric,
        br,
        {"nabla": Connection(nabla), "levi_civita_warped": Connection(lc, role="levi_civita")},
    )
    rep = Report(f"warped Kenmotsu construction over {B.name}")
    lc_ok = levi_civita(M).gamma == Connection(lc).gamma
    rep.add(Check("levi_civita", "warped Levi-Civita agrees with the Koszul formula", verdict(lc_ok)))
    phi = [list(base.J[i]) + [z] for i in range(m)] + [[z] * n]
    ct = ContactTriple(phi, M.basis(m))
    ac = check_almost_contact(M, ct)
    rep.add(Check("almost_contact", "almost contact metric structure", verdict(ac.passed)))
    items = []
    for i, j in product(range(m), repeat=2):
        E, F = B.basis(i), B.basis(j)
        r = base.K_base.apply(E, base.J_apply(F)) + base.J_apply(base.K_base.apply(E, F))
        if not r.is_zero():
            items.append(f"({B.frame[i]},{B.frame[j]}): {vector_str(r, B.frame)}")
    rep.add(Check("holomorphic_base", "K_base(E, J F) = -J K_base(E, F)", verdict(not items), "; ".join(items) or "0"))
    ks = check_kenmotsu_statistical(M, "nabla", ct)
    rep.add(Check("kenmotsu_statistical", "Kenmotsu statistical structure", verdict(ks.passed),
                  "; ".join(f"{c.claim}={c.verdict}" for c in ks.checks)))
    return WarpResult(M, ct, rep)


# ---------------------------------------------------------------------------
# curvature identity audits

SIGN_CONVENTIONS = ("standard", "reversed")


def _vec_residuals(M, pairs, fn):
    out = []
    for label, args in pairs:
        r = fn(*args)
        if not r.is_zero():
            out.append((label, r))
    return out


def _render(M, res):
    return "; ".join(f"{lab}: {vector_str(v, M.frame) if isinstance(v, VectorField) else v}" for lab, v in res) or "0"


def _subs_res(res, assign):
    out = []
    for lab, v in res:
        v2 = v.subs(assign)
        if not v2.is_zero():
            out.append((lab, v2))
    return out


def audit_curvature_identities(M: FramePresentation, nabla, ct: ContactTriple, assign=None) -> Report:
    """Evaluate the five xi-curvature identities under both sign conventions.

    Items::

        i    R(E,F) xi = eta(F) E - eta(E) F
        ii   R(xi,E) F = g(E,F) xi - eta(F) E
        iii  R(phi E, xi) F = eta(F) phi E - g(phi E, F) xi
        iv   R(E, phi F) xi + R(xi, E) phi F = -R(phi F, xi) E
        v    g(R(E,xi) xi, E) = g(E,E) - eta(E)^2   (polarized over frame pairs)

    With ``assign`` the verdict is taken after substitution and the symbolic
    residual is kept in ``value``.
    """
    _require_dim(M, ct)
    conn = M.connection(nabla)
    n = M.dim
    names = M.frame
    basis = [M.basis(i) for i in range(n)]
    xi = ct.xi
    eta = lambda v: ct.eta(M, v)  # noqa: E731
    pairs = [(f"({names[i]},{names[j]})", (basis[i], basis[j])) for i, j in product(range(n), repeat=2)]
    rep = Report(f"xi-curvature identities: {M.name}")
    if assign:
        rep.data["assignment"] = ", ".join(f"{k}={v}" for k, v in sorted(assign.items()))
    matches = {}
    for sign in SIGN_CONVENTIONS:
        R = curvature(M, conn, sign)
        items = {
            "i": lambda E, F: R.apply(E, F, xi) - (E.scale(eta(F)) - F.scale(eta(E))),
            "ii": lambda E, F: R.apply(xi, E, F) - (xi.scale(M.g(E, F)) - E.scale(eta(F))),
            "iii": lambda E, F: R.apply(ct.apply(E), xi, F) - (ct.apply(E).scale(eta(F)) - xi.scale(M.g(ct.apply(E), F))),
            "iv": lambda E, F: R.apply(E, ct.apply(F), xi) + R.apply(xi, E, ct.apply(F)) + R.apply(ct.apply(F), xi, E),
            "v": lambda E, F: (
                (M.g(R.apply(E, xi, xi), F) + M.g(R.apply(F, xi, xi), E)) * Fraction(1, 2)
                - (M.g(E, F) - eta(E) * eta(F))
            ),
        }
        for key, fn in items.items():
            res = _vec_residuals(M, pairs, fn)
            judged = _subs_res(res, assign) if assign else res
            ok = not judged
            matches[(key, sign)] = ok
            rep.add(
                Check(
                    f"item_{key}[{sign}]",
                    f"xi-curvature identity ({key})",
                    verdict(ok, "match"),
                    _render(M, res),
                    conventions=(f"sign={sign}",),
                    detail=("at " + rep.data["assignment"] + ": " + _render(M, judged)) if assign else "",
                )
            )
    key_items = ("i", "ii", "v")
    holding = [s for s in SIGN_CONVENTIONS if all(matches[(k, s)] for k in key_items)]
    rep.add(
        Check(
            "convention",
            "sign convention under which items (i), (ii), (v) all hold",
            "info",
            ", ".join(holding) if holding else "none",
        )
    )
    rep.data["holding_conventions"] = holding
    return rep


# ---------------------------------------------------------------------------
# Ricci forms under constant curvature


def rho_formulas(c_bar, s):
    """``(rho1, rho2) = ((c(s+1) - 3s + 1)/2, -(c+1)(s+1)/2)``."""
    c = c_bar
    return (c * (s + 1) - 3 * s + 1) / 2, -(c + 1) * (s + 1) / 2


def decompose_metric_eta(M: FramePresentation, B: BilinearForm, ct: ContactTriple | None):
    """Exact ``B = c1 g + c2 eta(x)eta``; returns ``(c1, c2, residual)`` or ``None`` when no fit.

    ``c1, c2`` are RingQuotients; ``residual`` is the polynomial numerator of
    ``B - c1 g - c2 eta(x)eta`` scaled by the common denominator.
    """
    from .soliton import solve_pencil

    gens = [M.metric_form()]
    if ct is not None:
        gens.append(ct.eta_form(M))
    sol = solve_pencil(-B, gens)
    coeffs = list(sol.coefficients) + [RingQuotient(M.zero())] * (2 - len(sol.coefficients))
    return coeffs[0], coeffs[1], sol


def audit_ricci_forms(M: FramePresentation, nabla, ct: ContactTriple, c_bar, source="statistical", sign="standard") -> Report:
    """Test the constant-curvature Ricci forms ``Ric = rho1 g + rho2 eta(x)eta`` and companions."""
    _require_dim(M, ct)
    n = M.dim
    if n % 2 == 0:
        raise StructuralError("Ricci forms need odd dimension 2s+1")
    s = (n - 1) // 2
    c_bar = Fraction(c_bar) if not isinstance(c_bar, Poly) else c_bar
    names = M.frame
    basis = [M.basis(i) for i in range(n)]
    Ric = ricci_of(M, nabla, source, sign)
    g = M.metric_form()
    ee = ct.eta_form(M)
    rho1, rho2 = rho_formulas(c_bar, s)
    rep = Report(f"Ricci forms: {M.name} (source={source}, c={c_bar}, s={s})")
    rep.data["Ric"] = bilinear_str(Ric, names)
    rep.data["rho1"] = str(rho1)
    rep.data["rho2"] = str(rho2)
    resid = Ric - g.scale(rho1) - ee.scale(rho2)
    rep.add(Check("ricci_form", "Ric = rho1 g + rho2 eta(x)eta", verdict(resid.is_zero(), "match"),
                  bilinear_str(resid, names), printed=f"rho1 = {rho1}, rho2 = {rho2}",
                  conventions=(f"source={source}", f"sign={sign}")))
    c1, c2, sol = decompose_metric_eta(M, Ric, ct)
    if sol.consistent:
        rep.add(Check("engine_rho", "engine decomposition (rho1, rho2)", "info", f"rho1 = {c1}, rho2 = {c2}"))
        # invert the formulas for c
        from_r1 = (c1 * 2 + (3 * s - 1)) * RingQuotient(M.const(Fraction(1, s + 1)))
        from_r2 = c2 * RingQuotient(M.const(Fraction(-2, s + 1))) - 1
        consistent = from_r1 == from_r2
        rep.add(Check("c_solved", "constant c reproducing the engine Ricci form", verdict(consistent, "match"),
                      f"from rho1: {quotient_normalize(from_r1)}; from rho2: {quotient_normalize(from_r2)}",
                      printed=str(c_bar)))
    else:
        rep.add(Check("engine_rho", "engine decomposition (rho1, rho2)", "info", "Ric is not of the form c1 g + c2 eta(x)eta"))
    xi = ct.xi
    items = _residual_list(M, [(names[i], Ric(basis[i], xi) + ct.eta(M, basis[i]) * (2 * s)) for i in range(n)])
    rep.add(Check("ricci_xi", "Ric(E, xi) = -2s eta(E)", verdict(not items, "match"), "; ".join(items) or "0"))
    items = []
    for i, j in product(range(n), repeat=2):
        if i <= j:
            E, F = basis[i], basis[j]
            r = Ric(ct.apply(E), ct.apply(F)) - Ric(E, F) - ct.eta(M, E) * ct.eta(M, F) * (2 * s)
            if not r.is_zero():
                items.append(f"({names[i]},{names[j]}): {r}")
    rep.add(Check("ricci_phi", "Ric(phi E, phi F) = Ric(E, F) + 2s eta(E) eta(F)", verdict(not items, "match"), "; ".join(items) or "0"))
    formula_nonflat = (rho1 + rho2) != 0 and not (rho1 == 0 and rho2 == 0)
    rep.add(Check("not_ricci_flat", "not Ricci-flat", verdict(bool(formula_nonflat) and not Ric.is_zero(), "match"),
                  f"engine Ric {'is' if Ric.is_zero() else 'is not'} zero; formula rho1 + rho2 = {rho1 + rho2}"))
    return rep
