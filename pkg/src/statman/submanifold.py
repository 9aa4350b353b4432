"""Adapted-frame submanifolds: induced structure, shape operators, Gauss equations and theorem audits."""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import product

from .errors import ClosureError, StructuralError, UnsupportedInputError
from .frame_algebra import (
    BilinearForm,
    Connection,
    FramePresentation,
    VectorField,
    bilinear_str,
    curvature,
    dual_connection,
    lie_derivative_metric,
    ricci_of,
    scalar,
)
from .report import Check, Report, verdict
from .ring import Fraction, Poly, RingQuotient, quotient_normalize
from .soliton import classify, solve_pencil


def _resolve_tangent(M: FramePresentation, tangent) -> tuple:
    idx = []
    for t in tangent:
        i = M.index(t) if isinstance(t, str) else int(t)
        if not 0 <= i < M.dim:
            raise StructuralError(f"tangent index {t!r} out of range")
        if i in idx:
            raise StructuralError(f"tangent field {M.frame[i]} listed twice")
        idx.append(i)
    if not idx:
        raise StructuralError("tangent set is empty")
    return tuple(sorted(idx))


@dataclass(frozen=True)
class ShapeData:
    """``A[u][a] = A_{e_u} e_a`` in the induced frame, ``H`` and ``H_star`` as ambient vectors."""

    A: dict
    A_star: dict
    H: VectorField
    H_star: VectorField


@dataclass(frozen=True)
class AdaptedSubmanifold:
    """A submanifold spanned by a subset of the ambient frame.

    ``h[a][b]`` and ``h_star[a][b]`` are ambient vectors with only normal
    components; ``Dperp[a][u]`` is the normal part of ``nabla_{e_a} e_u``.
    ``induced`` carries connections ``nabla`` and ``nabla_star``; it is None
    when the tangent set is not closed under brackets.
    """

    ambient: FramePresentation
    nabla: Connection
    tangent_idx: tuple
    normal_idx: tuple
    induced: FramePresentation | None
    h: tuple
    h_star: tuple
    Dperp: tuple
    Dperp_star: tuple
    closure_ok: bool
    closure_defect: tuple = ()

    @property
    def dim(self):
        return len(self.tangent_idx)

    @property
    def names(self):
        return tuple(self.ambient.frame[i] for i in self.tangent_idx)

    def require_closed(self):
        if not self.closure_ok:
            raise ClosureError("tangent frame not closed under brackets: " + "; ".join(self.closure_defect))

    def to_ambient(self, v: VectorField) -> VectorField:
        """Embed an induced-frame vector into the ambient frame."""
        coeffs = [self.ambient.zero()] * self.ambient.dim
        for a, i in enumerate(self.tangent_idx):
            coeffs[i] = v.coefficients[a]
        return VectorField(tuple(coeffs))

    def tangent_part(self, v: VectorField) -> VectorField:
        return VectorField(tuple(v.coefficients[i] for i in self.tangent_idx))

    def normal_part(self, v: VectorField) -> VectorField:
        z = self.ambient.zero()
        keep = set(self.normal_idx)
        return VectorField(tuple(c if i in keep else z for i, c in enumerate(v.coefficients)))

    def restrict(self, B: BilinearForm) -> BilinearForm:
        T = self.tangent_idx
        return BilinearForm(tuple(tuple(B.entries[i][j] for j in T) for i in T))

    def weingarten(self, u: int, star: bool = False):
        """``A_{e_u}`` (or ``A*``) as a list of induced vectors, ``A[a] = A e_a``."""
        conn = dual_connection(self.ambient, self.nabla) if star else self.nabla
        M = self.ambient
        return [-self.tangent_part(conn.apply(M.basis(i), M.basis(u))) for i in self.tangent_idx]

    @property
    def shape(self) -> ShapeData:
        A = {self.ambient.frame[u]: tuple(self.weingarten(u)) for u in self.normal_idx}
        As = {self.ambient.frame[u]: tuple(self.weingarten(u, True)) for u in self.normal_idx}
        H, Hs = mean_curvature(self)
        return ShapeData(A, As, H, Hs)


def induce(ambient: FramePresentation, nabla="nabla", tangent=(), strict: bool = True) -> AdaptedSubmanifold:
    """Split the ambient connection along the adapted subframe ``tangent``.

    Raises ClosureError for a non-closed tangent set when ``strict``;
    otherwise the result has ``closure_ok = False`` and no induced presentation.
    """
    M = ambient
    conn = M.connection(nabla) if isinstance(nabla, str) else nabla
    dual = dual_connection(M, conn)
    T = _resolve_tangent(M, tangent)
    N = tuple(i for i in range(M.dim) if i not in T)
    for i, u in product(T, N):
        if M.metric[i][u] != 0:
            raise StructuralError(f"{M.frame[i]} and {M.frame[u]} are not orthogonal; the frame is not adapted")
    defects = []
    for i, j in product(T, T):
        if i < j:
            for u in N:
                if not M.brackets[i][j][u].is_zero():
                    defects.append(f"[{M.frame[i]}, {M.frame[j]}] has {M.frame[u]} component {M.brackets[i][j][u]}")
    closed = not defects
    if not closed and strict:
        raise ClosureError("tangent frame not closed under brackets: " + "; ".join(defects))
    sub = AdaptedSubmanifold(M, conn, T, N, None, (), (), (), (), closed, tuple(defects))
    h = tuple(tuple(sub.normal_part(conn.apply(M.basis(i), M.basis(j))) for j in T) for i in T)
    hs = tuple(tuple(sub.normal_part(dual.apply(M.basis(i), M.basis(j))) for j in T) for i in T)
    Dp = tuple(tuple(sub.normal_part(conn.apply(M.basis(i), M.basis(u))) for u in N) for i in T)
    Dps = tuple(tuple(sub.normal_part(dual.apply(M.basis(i), M.basis(u))) for u in N) for i in T)
    induced = None
    if closed:
        m = len(T)
        metric = tuple(tuple(M.metric[i][j] for j in T) for i in T)
        brackets = tuple(tuple(tuple(M.brackets[i][j][k] for k in T) for j in T) for i in T)
        g_ind = tuple(tuple(tuple(conn.gamma[i][j][k] for k in T) for j in T) for i in T)
        gs_ind = tuple(tuple(tuple(dual.gamma[i][j][k] for k in T) for j in T) for i in T)
        induced = FramePresentation(
            f"{M.name}[{','.join(M.frame[i] for i in T)}]",
            tuple(M.frame[i] for i in T),
            M.parameters,
            metric,
            brackets,
            {"nabla": Connection(g_ind, "induced"), "nabla_star": Connection(gs_ind, "induced")},
        )
        assert m == induced.dim
    return replace(sub, induced=induced, h=h, h_star=hs, Dperp=Dp, Dperp_star=Dps)


def duality_check(sub: AdaptedSubmanifold) -> Report:
    """Shape-operator duality: g(h(E,F),U) = g(A*_U E, F) and g(h*(E,F),U) = g(A_U E, F)."""
    M = sub.ambient
    rep = Report(f"shape duality: {', '.join(sub.names)}")
    bad, bad_s = [], []
    for u in sub.normal_idx:
        A = sub.weingarten(u)
        As = sub.weingarten(u, True)
        U = M.basis(u)
        for a, b in product(range(sub.dim), repeat=2):
            Fb = M.basis(sub.tangent_idx[b])
            r = M.g(sub.h[a][b], U) - M.g(sub.to_ambient(As[a]), Fb)
            rs = M.g(sub.h_star[a][b], U) - M.g(sub.to_ambient(A[a]), Fb)
            if not r.is_zero():
                bad.append(f"({sub.names[a]},{sub.names[b]};{M.frame[u]}): {r}")
            if not rs.is_zero():
                bad_s.append(f"({sub.names[a]},{sub.names[b]};{M.frame[u]}): {rs}")
    rep.add(Check("h_vs_A_star", "g(h(E,F),U) = g(A*_U E,F)", verdict(not bad), "; ".join(bad) or "0"))
    rep.add(Check("h_star_vs_A", "g(h*(E,F),U) = g(A_U E,F)", verdict(not bad_s), "; ".join(bad_s) or "0"))
    return rep


def mean_curvature(sub: AdaptedSubmanifold):
    """``(H, H*)``: metric traces of h and h* divided by the submanifold dimension."""
    M = sub.ambient
    T = sub.tangent_idx
    m = len(T)
    ginv = invert_block(M, T)
    H = M.zero_vector()
    Hs = M.zero_vector()
    for a, b in product(range(m), repeat=2):
        c = ginv[a][b]
        if c:
            H = H + sub.h[a][b].scale(c)
            Hs = Hs + sub.h_star[a][b].scale(c)
    return H.scale(Fraction(1, m)), Hs.scale(Fraction(1, m))


def invert_block(M: FramePresentation, T):
    from .frame_algebra import invert_rational_matrix

    return invert_rational_matrix([[M.metric[i][j] for j in T] for i in T])


@dataclass(frozen=True)
class Umbilicity:
    categories: tuple
    H: VectorField
    H_star: VectorField
    residual_h: tuple
    residual_h_star: tuple

    def __contains__(self, name):
        return name in self.categories


def umbilicity(sub: AdaptedSubmanifold) -> Umbilicity:
    """Categories among totally_geodesic, totally_umbilical, minimal (else generic)."""
    sub.require_closed()
    M = sub.ambient
    T = sub.tangent_idx
    H, Hs = mean_curvature(sub)
    res, res_s = [], []
    for a, b in product(range(len(T)), repeat=2):
        gab = M.metric[T[a]][T[b]]
        r = sub.h[a][b] - H.scale(gab)
        rs = sub.h_star[a][b] - Hs.scale(gab)
        if not r.is_zero():
            res.append(f"h({sub.names[a]},{sub.names[b]}) - g H = {M.vector_str(r)}")
        if not rs.is_zero():
            res_s.append(f"h*({sub.names[a]},{sub.names[b]}) - g H* = {M.vector_str(rs)}")
    zero_h = all(v.is_zero() for row in sub.h for v in row)
    zero_hs = all(v.is_zero() for row in sub.h_star for v in row)
    cats = []
    if zero_h and zero_hs:
        cats.append("totally_geodesic")
    if not res and not res_s:
        cats.append("totally_umbilical")
    if H.is_zero() and Hs.is_zero():
        cats.append("minimal")
    if not cats:
        cats.append("generic")
    return Umbilicity(tuple(cats), H, Hs, tuple(res), tuple(res_s))


def gauss_check(sub: AdaptedSubmanifold, sign: str = "standard") -> Report:
    """Both Gauss equations on all tangent 4-tuples, using ``sub.h``, ``sub.h_star`` and ``sub.induced``.

    ``data["corrections"]`` counts the 4-tuples with a nonzero second-fundamental-form term.
    """
    sub.require_closed()
    M = sub.ambient
    T = sub.tangent_idx
    m = len(T)
    Rb = curvature(M, sub.nabla, sign)
    Rbs = curvature(M, dual_connection(M, sub.nabla), sign)
    Ni = sub.induced
    R = curvature(Ni, "nabla", sign)
    Rs = curvature(Ni, "nabla_star", sign)
    rep = Report(f"Gauss equations: {', '.join(sub.names)} (sign={sign})")
    g = M.g
    bad, bad_s = [], []
    corr = corr_s = 0
    for a, b, c, d in product(range(m), repeat=4):
        E, F, G, H = (M.basis(T[x]) for x in (a, b, c, d))
        e, f, gg, hh = (Ni.basis(x) for x in (a, b, c, d))
        lhs = g(Rb.apply(E, F, G), H)
        corr1 = g(sub.h[a][c], sub.h_star[b][d]) - g(sub.h_star[a][d], sub.h[b][c])
        r = lhs - Ni.g(R.apply(e, f, gg), hh) - corr1
        lhs_s = g(Rbs.apply(E, F, G), H)
        corr2 = g(sub.h_star[a][c], sub.h[b][d]) - g(sub.h[a][d], sub.h_star[b][c])
        rs = lhs_s - Ni.g(Rs.apply(e, f, gg), hh) - corr2
        corr += not corr1.is_zero()
        corr_s += not corr2.is_zero()
        label = ",".join(sub.names[x] for x in (a, b, c, d))
        if not r.is_zero():
            bad.append(f"({label}): {r}")
        if not rs.is_zero():
            bad_s.append(f"({label}): {rs}")
    rep.add(Check("gauss", "Gauss equation for nabla", verdict(not bad), "; ".join(bad[:8]) or "0",
                  conventions=(f"sign={sign}",)))
    rep.add(Check("gauss_star", "Gauss equation for nabla*", verdict(not bad_s), "; ".join(bad_s[:8]) or "0",
                  conventions=(f"sign={sign}",)))
    rep.data["corrections"] = corr
    rep.data["corrections_star"] = corr_s
    return rep


@dataclass(frozen=True)
class PhiSplit:
    """``P[a]`` induced vector, ``C[a]`` ambient normal vector, for each tangent ``e_a``."""

    P: tuple
    C: tuple
    kind: str
    roundtrip: bool


def phi_decompose(sub: AdaptedSubmanifold, ct) -> PhiSplit:
    """Split ``phi E = P E + C E`` and classify as invariant, anti_invariant or generic."""
    M = sub.ambient
    P, C = [], []
    ok = True
    for i in sub.tangent_idx:
        pe = ct.apply(M.basis(i))
        p = sub.tangent_part(pe)
        c = sub.normal_part(pe)
        ok = ok and (sub.to_ambient(p) + c - pe).is_zero()
        P.append(p)
        C.append(c)
    if all(c.is_zero() for c in C):
        kind = "invariant"
    elif all(p.is_zero() for p in P):
        kind = "anti_invariant"
    else:
        kind = "generic"
    return PhiSplit(tuple(P), tuple(C), kind, ok)


def concircular_check(M: FramePresentation, nabla, v: VectorField, directions=None):
    """``mu`` with ``nabla_{e_i} v = mu e_i`` for every direction, or None.

    ``directions`` restricts the test to a subset of frame indices or names.
    """
    conn = M.connection(nabla) if isinstance(nabla, str) else nabla
    idx = range(M.dim) if directions is None else _resolve_tangent(M, directions)
    mu = None
    for i in idx:
        w = conn.apply(M.basis(i), v)
        c = w.coefficients[i]
        if mu is None:
            mu = c
        if not (w - M.basis(i).scale(mu)).is_zero():
            return None
    return RingQuotient(mu if mu is not None else M.zero())


def _xi_position(sub, ct):
    M = sub.ambient
    xi = ct.xi
    tangent = sub.normal_part(xi).is_zero()
    normal = sub.tangent_part(xi).is_zero()
    if tangent and not normal:
        return "tangent"
    if normal and not tangent:
        return "normal"
    raise UnsupportedInputError(f"xi = {M.vector_str(xi)} is neither tangent nor normal to the submanifold")


def _zero_at(x, assign):
    if assign:
        x = x.subs(assign)
    return x.is_zero()


def tangential_split_audit(sub: AdaptedSubmanifold, ct, v: VectorField | None = None, assign=None) -> Report:
    """Tangential/normal splits of ``nabla xi`` and of a concircular ``v``.

    With ``v`` given, its factor mu is read off the tangent directions of the
    ambient connection (after substituting ``assign``).
    """
    from .structures import beta_of

    sub.require_closed()
    M = sub.ambient
    Ni = sub.induced
    T = sub.tangent_idx
    beta = beta_of(M, sub.nabla, ct)
    rep = Report(f"tangential split: {', '.join(sub.names)}")
    if assign:
        rep.data["assignment"] = ", ".join(f"{k}={v}" for k, v in sorted(assign.items()))
    pos = _xi_position(sub, ct)
    rep.data["xi"] = pos
    eta = [ct.eta(M, M.basis(i)) for i in T]
    if pos == "tangent":
        xi_t = sub.tangent_part(ct.xi)
        bad_t, bad_h = [], []
        for a in range(sub.dim):
            lhs = Ni.connection("nabla").apply(Ni.basis(a), xi_t)
            rhs = Ni.basis(a) - xi_t.scale(eta[a] - beta * eta[a])
            r = lhs - rhs
            if not _zero_at(r, assign):
                bad_t.append(f"{sub.names[a]}: {Ni.vector_str(r)}")
            hx = sub.h[a][T.index(ct.xi_index(M))] if ct.xi_index(M) is not None else None
            if hx is not None and not _zero_at(hx, assign):
                bad_h.append(f"{sub.names[a]}: {M.vector_str(hx)}")
        rep.add(Check("tangent_nabla_xi", "nabla_E xi = E - [eta(E) - mu(E)] xi on N", verdict(not bad_t, "match"),
                      "; ".join(bad_t) or "0", detail=f"mu(E) = {beta} eta(E)"))
        rep.add(Check("tangent_h_xi", "h(E, xi) = 0", verdict(not bad_h, "match"), "; ".join(bad_h) or "0"))
    else:
        bad_t, bad_n = [], []
        for a, i in enumerate(T):
            w = sub.nabla.apply(M.basis(i), ct.xi)
            rt = sub.tangent_part(w) - Ni.basis(a)
            rn = sub.normal_part(w) - ct.xi.scale((beta - 1) * eta[a])
            if not _zero_at(rt, assign):
                bad_t.append(f"{sub.names[a]}: {Ni.vector_str(rt)}")
            if not _zero_at(rn, assign):
                bad_n.append(f"{sub.names[a]}: {M.vector_str(rn)}")
        rep.add(Check("normal_nabla_xi", "tangential part of nabla_E xi = E (xi normal)", verdict(not bad_t, "match"),
                      "; ".join(bad_t) or "0"))
        rep.add(Check("normal_h_xi", "normal part of nabla_E xi = (beta-1) eta(E) xi", verdict(not bad_n, "match"),
                      "; ".join(bad_n) or "0"))
    if v is not None:
        rep.extend(_concircular_split(sub, v, assign))
    return rep


def _concircular_split(sub, v, assign) -> Report:
    rep = Report()
    Ms = sub.ambient.subs(assign) if assign else sub.ambient
    subs_ = induce(Ms, sub.nabla.subs(assign) if assign else sub.nabla, sub.tangent_idx, strict=True)
    if assign:
        v = v.subs(assign)
    mu = concircular_check(Ms, subs_.nabla, v, directions=subs_.tangent_idx)
    if mu is None:
        rep.add(Check("concircular", "v concircular along N", "n/a", "nabla_E v is not a multiple of E"))
        return rep
    mu = mu.as_poly()
    rep.data["mu"] = str(mu)
    rep.add(Check("concircular", "v concircular along N", "info", f"mu = {mu}",
                  detail="concurrent" if mu == 1 else ""))
    Ni = subs_.induced
    vT = subs_.tangent_part(v)
    vN = subs_.normal_part(v)
    A = _shape_along(subs_, vN)
    bad = []
    for a in range(subs_.dim):
        lhs = Ni.connection("nabla").apply(Ni.basis(a), vT)
        r = lhs - A[a] - Ni.basis(a).scale(mu)
        if not r.is_zero():
            bad.append(f"{subs_.names[a]}: {Ni.vector_str(r)}")
    rep.add(Check("vT_split", "nabla_E v^T = A_{v^N} E + mu E", verdict(not bad, "match"), "; ".join(bad) or "0"))
    if vT.is_zero():
        rep.add(Check("vT_degenerate", "v^T concircular on N", "info", "v^T = 0; the concircular factor is 0 trivially"))
    nu = concircular_check(Ni, "nabla", vT)
    if nu is None:
        rep.add(Check("shape_vN", "A_{v^N} = (nu - mu) id", "n/a", "v^T is not concircular on N"))
    else:
        nu = nu.as_poly()
        bad = [f"{subs_.names[a]}: {Ni.vector_str(A[a] - Ni.basis(a).scale(nu - mu))}"
               for a in range(subs_.dim) if not (A[a] - Ni.basis(a).scale(nu - mu)).is_zero()]
        rep.add(Check("shape_vN", "A_{v^N} = (nu - mu) id", verdict(not bad, "match"), "; ".join(bad) or "0",
                      detail=f"nu = {nu}"))
    flat = curvature(Ni, "nabla").is_zero()
    umb = "totally_umbilical" in umbilicity(subs_)
    rep.add(Check("flat_or_umbilical", "N flat or totally umbilical", "info",
                  f"flat: {flat}; totally umbilical: {umb}"))
    return rep


def _shape_along(sub, U: VectorField):
    """``A_U e_a`` for a normal ambient vector U, as induced vectors."""
    M = sub.ambient
    out = [sub.induced.zero_vector() for _ in range(sub.dim)]
    for u in sub.normal_idx:
        c = U.coefficients[u]
        if c.is_zero():
            continue
        Au = sub.weingarten(u)
        out = [o + x.scale(c) for o, x in zip(out, Au)]
    return out


def _fmt_assign(assign):
    return ", ".join(f"{k}={v}" for k, v in sorted(assign.items()))


def audit_submanifold_soliton_theorems(sub: AdaptedSubmanifold, ct, source: str = "statistical", assign=None,
                                       v: VectorField | None = None, sign: str = "standard") -> Report:
    """Soliton identities on a submanifold, judged at ``assign``.

    The eta-Ricci and quasi-Yamabe problems are solved on the induced
    structure with the Ricci form of ``source``; each printed relation is
    then evaluated with the solved constants.
    """
    from .structures import beta_of

    sub.require_closed()
    M = sub.ambient
    assign = assign or {}
    pos = _xi_position(sub, ct)
    rep = Report(f"submanifold soliton audit: {', '.join(sub.names)} (xi {pos}, source={source})")
    if assign:
        rep.data["assignment"] = _fmt_assign(assign)
    conv = (f"source={source}", f"sign={sign}")
    beta = beta_of(M, sub.nabla, ct)
    Ni = sub.induced
    Ric = ricci_of(Ni, "nabla", source, sign)
    g = Ni.metric_form()
    ee = sub.restrict(ct.eta_form(M))
    s_sub = (sub.dim - 1) // 2
    s_amb = (M.dim - 1) // 2
    if pos == "tangent":
        xi_t = sub.tangent_part(ct.xi)
        L = lie_derivative_metric(Ni, xi_t, None).bracket
        sol = solve_pencil(Ric.scale(2) + L, [g.scale(2), ee.scale(2)])
        lam, om = sol.coefficients
        rep.add(Check("eta_ricci_solve", "eta-Ricci soliton on N with potential xi", verdict(sol.consistent),
                      f"lambda = {lam}, omega = {om}", conventions=conv))
        rep.data["lambda"] = str(lam)
        rep.data["omega"] = str(om)
        if not sol.consistent:
            return rep
        lam, om = lam.as_poly(), om.as_poly()
        r = L - (g - ee.scale(1 - beta)).scale(2)
        rep.add(Check("lie_xi", "L_xi g = 2[g - (1-beta) eta(x)eta]", verdict(_zero_at(r, assign), "match"),
                      bilinear_str(r, Ni.frame), detail=f"computed L_xi g = {bilinear_str(L, Ni.frame)}"))
        r = Ric - (g.scale(-(lam + 1)) - ee.scale(om + beta - 1))
        rep.add(Check("eta_einstein", "Ric = -(lambda+1) g - (omega+beta-1) eta(x)eta",
                      verdict(_zero_at(r, assign), "match"), bilinear_str(r, Ni.frame), conventions=conv))
        xa = Ni.index(M.frame[ct.xi_index(M)]) if ct.xi_index(M) is not None else None
        R = curvature(Ni, "nabla", sign)
        if source == "statistical":
            from .frame_algebra import statistical_curvature

            R = statistical_curvature(R, curvature(Ni, "nabla_star", sign))
        elif source == "nabla_star":
            R = curvature(Ni, "nabla_star", sign)
        bad = []
        for a, b in product(range(sub.dim), repeat=2):
            E, F = Ni.basis(a), Ni.basis(b)
            lhs = R.apply(E, F, xi_t)
            rhs = (F.scale(Ni.g(E, xi_t)) - E.scale(Ni.g(F, xi_t))).scale(1 - beta)
            if not _zero_at(lhs - rhs, assign):
                bad.append(f"({Ni.frame[a]},{Ni.frame[b]}): {Ni.vector_str(lhs - rhs)}")
        rep.add(Check("curvature_xi", "R(E,F)xi = (1-beta)[eta(E)F - eta(F)E]", verdict(not bad, "match"),
                      "; ".join(bad[:6]) or "0", conventions=conv))
        rxx = Ric(xi_t, xi_t)
        for label, s in (("sub", s_sub), ("ambient", s_amb)):
            r = rxx - (s - 1) * (beta - 1)
            rep.add(Check(f"ricci_xi[s={label}]", "Ric(E,xi) = (s-1)(beta-1) eta(E)", verdict(_zero_at(r, assign), "match"),
                          f"Ric(xi,xi) = {rxx}", printed=str(M.const(s - 1) * (beta - 1)),
                          conventions=conv + (f"s={s}",)))
            r = lam - (s * (1 - beta) - om)
            rep.add(Check(f"lambda_relation[s={label}]", "lambda = s(1-beta) - omega", verdict(_zero_at(r, assign), "match"),
                          f"lambda = {lam}", printed=str(M.const(s) * (1 - beta) - om), conventions=conv + (f"s={s}",)))
        lam_rederived = -rxx - om - beta
        rep.add(Check("lambda_rederived", "lambda from Ric(xi,xi) in the eta-Einstein form", "info",
                      f"{lam_rederived}", detail=f"agrees with solved lambda: {_zero_at(lam_rederived - lam, assign)}"))
    else:
        Lamb = sub.restrict(lie_derivative_metric(M, ct.xi, None).bracket)
        rep.add(Check("lie_xi_normal", "L_xi g = 0 on N", verdict(_zero_at(Lamb, assign), "match"),
                      bilinear_str(Lamb, Ni.frame)))
        sol = solve_pencil(Ric.scale(2) + Lamb, [g.scale(2), ee.scale(2)])
        lam, om = sol.coefficients
        rep.add(Check("eta_ricci_solve", "eta-Ricci soliton on N with normal xi", verdict(sol.consistent),
                      f"lambda = {lam}, omega = {om}", conventions=conv, detail="; ".join(sol.notes)))
        rep.data["lambda"] = str(lam)
        rep.data["omega"] = str(om)
        if sol.consistent:
            lam = lam.as_poly()
            r = lam + beta
            rep.add(Check("lambda_minus_beta", "lambda = -beta", verdict(_zero_at(r, assign), "match"), f"lambda = {lam}",
                          printed=str(-beta), conventions=conv))
            alt = solve_pencil(Ric.scale(2), [g.scale(2), ee.scale(2)])
            lam0 = alt.coefficients[0].as_poly()
            rep.add(Check("lambda_minus_beta[L=0]", "lambda = -beta with L_xi g = 0 on N",
                          verdict(alt.consistent and _zero_at(lam0 + beta, assign), "match"), f"lambda = {lam0}",
                          printed=str(-beta), conventions=conv + ("lie=printed",)))
            if assign:
                rep.data["class"] = classify(RingQuotient(lam), assign)
            r = Ric - (g.scale(-(1 + lam)) + ee.scale(1 - beta))
            rep.add(Check("eta_einstein_normal", "Ric = -(1+lambda) g + (1-beta) eta(x)eta",
                          verdict(_zero_at(r, assign), "match"), bilinear_str(r, Ni.frame), conventions=conv))
    if v is not None:
        rep.extend(_concircular_theorems(sub, ct, v, source, assign, sign))
    return rep


def _concircular_theorems(sub, ct, v, source, assign, sign) -> Report:
    rep = Report()
    conv = (f"source={source}", f"sign={sign}")
    Ms = sub.ambient.subs(assign) if assign else sub.ambient
    cts = ct.subs(assign) if assign else ct
    S = induce(Ms, sub.nabla.subs(assign) if assign else sub.nabla, sub.tangent_idx)
    v = v.subs(assign) if assign else v
    mu = concircular_check(Ms, S.nabla, v, directions=S.tangent_idx)
    if mu is None:
        rep.add(Check("concircular_v", "v concircular", "n/a", "no single mu along N; concircular theorems not evaluated"))
        return rep
    mu = mu.as_poly()
    Ni = S.induced
    vT = S.tangent_part(v)
    vN = S.normal_part(v)
    g = Ni.metric_form()
    ee = S.restrict(cts.eta_form(Ms))
    Ric = ricci_of(Ni, "nabla", source, sign)
    R = scalar(Ric, Ni)
    L = lie_derivative_metric(Ni, vT, None).bracket
    n = Ni.dim
    hv = BilinearForm(tuple(tuple(Ms.g(S.h[a][b], S.to_ambient(vT)) for b in range(n)) for a in range(n)))
    A = _shape_along(S, vN)
    Av = BilinearForm(tuple(tuple(Ni.g(A[a], Ni.basis(b)) for b in range(n)) for a in range(n)))
    rep.data["mu"] = str(mu)
    rep.data["scalar"] = str(R)
    # Lie derivative along v^T
    r = L - g.scale(2 * mu) - hv.scale(2)
    rep.add(Check("lie_vT", "L_{v^T} g = 2 mu g + 2 g(h(E,F), v^T)", verdict(r.is_zero(), "match"),
                  bilinear_str(r, Ni.frame), detail=f"computed L = {bilinear_str(L, Ni.frame)}"))
    sol = solve_pencil(Ric.scale(2) + L, [g.scale(2), ee.scale(2)])
    lam, om = sol.coefficients
    rep.add(Check("eta_ricci_vT", "almost eta-Ricci soliton with potential v^T", verdict(sol.consistent),
                  f"lambda = {lam}, omega = {om}", conventions=conv))
    if sol.consistent:
        lam, om = lam.as_poly(), om.as_poly()
        r = Ric - (g.scale(lam - mu) - hv - ee.scale(om))
        rep.add(Check("ricci_vT", "Ric = (lambda-mu) g - g(h, v^T) - omega eta(x)eta", verdict(r.is_zero(), "match"),
                      bilinear_str(r, Ni.frame), conventions=conv))
    qsol = solve_pencil(L.scale(Fraction(1, 2)) - g.scale(R), [g, ee])
    ql, qo = qsol.coefficients
    rep.add(Check("quasi_yamabe_vT", "almost quasi-Yamabe soliton with potential v^T", verdict(qsol.consistent),
                  f"lambda = {ql}, omega = {qo}", conventions=conv, detail="; ".join(qsol.notes)))
    if not qsol.consistent:
        return rep
    ql, qo = ql.as_poly(), qo.as_poly()
    r = g.scale(R - ql - mu) - (Av - ee.scale(qo))
    rep.add(Check("quasi_yamabe_shape", "(R-lambda-mu) g = g(A_{v^N}E,F) - omega eta(x)eta",
                  verdict(r.is_zero(), "match"), bilinear_str(r, Ni.frame), conventions=conv))
    minimal = "minimal" in umbilicity(S)
    d = R - ql + qo - mu
    rep.add(Check("quasi_yamabe_minimal", "N minimal implies R = lambda - omega + mu",
                  verdict(d.is_zero(), "match") if minimal else "n/a", f"R - lambda + omega - mu = {d}",
                  detail=f"N minimal: {minimal}"))
    d1 = R - ql + qo - 1
    rep.add(Check("quasi_yamabe_concurrent", "N minimal, v concurrent implies R = lambda - omega + 1",
                  verdict(d1.is_zero(), "match") if (minimal and mu == 1) else "n/a", f"R - lambda + omega - 1 = {d1}",
                  detail=f"mu = {mu}"))
    return rep
