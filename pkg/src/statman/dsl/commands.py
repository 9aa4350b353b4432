"""Command dispatch behind the ``statman`` CLI."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import DivisionError, EvaluationError, StructuralError
from ..fixtures import DEFAULT_ASSIGNMENT, FIXTURES
from ..frame_algebra import (
    bilinear_str,
    check_statistical,
    curvature,
    curvature_str,
    dual_connection,
    ricci_of,
    scalar,
    sectional,
    statistical_curvature_of,
)
from ..report import Check, Report, verdict
from ..ring import Fraction
from ..soliton import (
    SolitonProblem,
    classify,
    einstein_check,
    normalize_kind,
    normalize_source,
    solve_soliton,
)
from ..structures import check_almost_contact, check_kenmotsu_statistical
from .model import Loaded, build
from .parser import ManifoldDoc, parse_vector

COMMANDS = ("check", "curvature", "ricci", "scalar", "sectional", "soliton", "classify", "sub", "audit", "oracle", "fixtures")
STRUCTURES = ("statistical", "almost-contact", "kenmotsu")


@dataclass
class Flags:
    connection: str = "nabla"
    ricci_source: str | None = None
    sign: str = "standard"
    assign: dict | None = None
    tangent: tuple | None = None
    structure: str | None = None
    pair: tuple | None = None
    kind: str | None = None
    potential: str | None = None
    section: str | None = None
    points: int = 10
    step: float = 1e-4
    tol: float = 1e-5


def parse_assign(text: str | None) -> dict:
    """``"a=0,b=1/2"`` to ``{"a": Fraction(0), "b": Fraction(1, 2)}``."""
    out = {}
    if not text:
        return out
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        key, sep, val = item.partition("=")
        if not sep or not key.strip():
            raise StructuralError(f"bad assignment {item!r}; expected name=value")
        try:
            out[key.strip()] = Fraction(val.strip())
        except ValueError:
            raise StructuralError(f"bad value in assignment {item!r}; expected a rational") from None
    return out


def parse_names(text: str | None) -> tuple | None:
    if text is None:
        return None
    return tuple(t.strip() for t in text.split(",") if t.strip())


def _as_flags(flags) -> Flags:
    if flags is None:
        return Flags()
    if isinstance(flags, Flags):
        return flags
    if isinstance(flags, dict):
        return Flags(**flags)
    return Flags(**{k: getattr(flags, k) for k in Flags.__dataclass_fields__ if hasattr(flags, k)})


def _assignment(loaded: Loaded, f: Flags) -> tuple[dict, dict]:
    """Split the user assignment into parameters of the document and ignored names."""
    given = f.assign or {}
    params = loaded.M.parameters
    used = {k: v for k, v in given.items() if k in params}
    ignored = {k: v for k, v in given.items() if k not in params}
    return used, ignored


def _header(rep: Report, loaded: Loaded, f: Flags, assign, ignored):
    rep.data["manifold"] = loaded.M.name
    if assign:
        rep.data["assignment"] = ", ".join(f"{k}={v}" for k, v in sorted(assign.items()))
    if ignored:
        rep.data["ignored_assignment"] = ", ".join(f"{k}={v}" for k, v in sorted(ignored.items()))


def _vector(loaded: Loaded, text: str):
    M = loaded.M
    coeffs = parse_vector(text, M.parameters, M.frame)
    return M.vector(coeffs)


def _curvature_of(M, f: Flags, source: str):
    conn = M.connection(f.connection)
    if source == "nabla":
        return curvature(M, conn, f.sign)
    if source == "nabla_star":
        return curvature(M, dual_connection(M, conn), f.sign)
    return statistical_curvature_of(M, conn, f.sign)


def _conv(f: Flags, source):
    return (f"connection={f.connection}", f"source={source}", f"sign={f.sign}")


def cmd_check(loaded, f, assign):
    M, ct = loaded.M, loaded.contact
    rep = Report(f"structure checks: {M.name}")
    wanted = f.structure or ("kenmotsu" if ct is not None else "statistical")
    if wanted not in STRUCTURES:
        raise StructuralError(f"unknown structure {wanted!r}; expected one of {', '.join(STRUCTURES)}")
    if wanted != "statistical" and ct is None:
        raise StructuralError(f"structure {wanted!r} needs a contact block in the document")
    if wanted == "statistical":
        rep.extend(check_statistical(M, f.connection))
    elif wanted == "almost-contact":
        rep.extend(check_almost_contact(M, ct))
    else:
        rep.extend(check_kenmotsu_statistical(M, f.connection, ct))
    if assign:
        # symbolic checks are parameter free; record whether they also hold after substitution
        Ma = M.subs(assign)
        cta = ct.subs(assign) if ct is not None else None
        sub = check_statistical(Ma, f.connection) if wanted == "statistical" else (
            check_almost_contact(Ma, cta) if wanted == "almost-contact" else check_kenmotsu_statistical(Ma, f.connection, cta))
        rep.data["passed_at_assignment"] = sub.passed
    return rep


def cmd_curvature(loaded, f, assign):
    M = loaded.M
    source = normalize_source(f.ricci_source or "nabla")
    R = _curvature_of(M, f, source)
    if assign:
        R = R.subs(assign)
    rep = Report(f"curvature: {M.name}")
    rep.data["curvature"] = curvature_str(R, M.frame)
    rep.add(Check("curvature", "curvature tensor", "info", "flat" if R.is_zero() else "not flat", conventions=_conv(f, source)))
    return rep


def cmd_ricci(loaded, f, assign):
    M, ct = loaded.M, loaded.contact
    source = normalize_source(f.ricci_source or "nabla")
    Ric = ricci_of(M, f.connection, source, f.sign)
    if assign:
        Ric = Ric.subs(assign)
        Ma = M.subs(assign)
        cta = ct.subs(assign) if ct is not None else None
    else:
        Ma, cta = M, ct
    rep = Report(f"Ricci tensor: {M.name}")
    rep.data["ricci"] = bilinear_str(Ric, M.frame)
    rep.data["symmetric"] = Ric.is_symmetric()
    rep.add(Check("einstein", "Einstein / eta-Einstein decomposition", "info", str(einstein_check(Ma, Ric, cta)),
                  conventions=_conv(f, source)))
    return rep


def cmd_scalar(loaded, f, assign):
    M = loaded.M
    source = normalize_source(f.ricci_source or "nabla")
    r = scalar(ricci_of(M, f.connection, source, f.sign), M)
    rep = Report(f"scalar curvature: {M.name}")
    rep.add(Check("scalar", "scalar curvature", "info", r, conventions=_conv(f, source)))
    if assign:
        rep.data["value_at_assignment"] = r.evaluate(assign) if set(r.free_parameters()) <= set(assign) else r.subs(assign)
    return rep


def cmd_sectional(loaded, f, assign):
    M = loaded.M
    if not f.pair or len(f.pair) != 2:
        raise StructuralError("sectional needs --pair X,Y")
    X, Y = (_vector(loaded, t) for t in f.pair)
    source = normalize_source(f.ricci_source or "statistical")
    R = _curvature_of(M, f, source)
    k = sectional(M, R, X, Y)
    rep = Report(f"sectional curvature: {M.name}")
    rep.add(Check("sectional", f"K({f.pair[0]},{f.pair[1]})", "info", k, conventions=_conv(f, source)))
    if assign:
        rep.data["value_at_assignment"] = k.subs(assign)
    return rep


def _problem(loaded, f, default_kind):
    M, ct = loaded.M, loaded.contact
    kind = normalize_kind(f.kind or default_kind)
    pot = f.potential
    if pot is None:
        pot = M.frame[ct.xi_index(M)] if ct is not None and ct.xi_index(M) is not None and kind != "ricci" else "0"
    V = None if pot in ("0", "none") else _vector(loaded, pot)
    if kind in ("eta_ricci", "quasi_yamabe") and ct is None:
        raise StructuralError(f"soliton kind {kind!r} needs a contact block (eta) in the document")
    source = normalize_source(f.ricci_source or ("statistical" if ct is not None else "nabla"))
    return SolitonProblem(kind, V, source, ct, f.connection, f.sign), pot


def _published_lines(loaded, kind, assign):
    """Comparison lines against the published five-dimensional values, when they apply."""
    from ..audit import _relabel, section8

    if loaded.fixture not in ("kenmotsu5d", "kenmotsu5d-sub-invariant"):
        return []
    prefix = {"eta_ricci": ("eta_ricci",), "quasi_yamabe": ("quasi_yamabe",)}.get(kind)
    if not prefix:
        return []
    rep = _relabel(section8(loaded.M, loaded.contact, assign or {"a": 0}), "8")
    return [c for c in rep.checks if c.claim.startswith(prefix)]


def cmd_soliton(loaded, f, assign):
    M = loaded.M
    prob, pot = _problem(loaded, f, "eta_ricci" if loaded.contact is not None else "ricci")
    sol = solve_soliton(M, prob)
    rep = Report(f"soliton solve: {M.name} ({prob.kind}, potential {pot})")
    rep.data["lambda"] = sol.lam
    if sol.omega is not None:
        rep.data["omega"] = sol.omega
    rep.data["residual"] = bilinear_str(sol.residual, M.frame)
    rep.add(Check("solve", f"{prob.kind} soliton", verdict(sol.consistent),
                  f"lambda = {sol.lam}" + (f", omega = {sol.omega}" if sol.omega is not None else ""),
                  conventions=_conv(f, prob.ricci_source), detail="; ".join(sol.notes)))
    if sol.consistent:
        conv = "yamabe" if prob.kind in ("yamabe", "quasi_yamabe") else "ricci"
        try:
            rep.data["class"] = classify(sol.lam, assign, conv)
        except (EvaluationError, DivisionError):
            rep.data["class"] = "depends on unassigned parameters"
    for c in _published_lines(loaded, prob.kind, assign):
        rep.add(c)
    return rep


def cmd_classify(loaded, f, assign):
    M, ct = loaded.M, loaded.contact
    assign = dict(assign) if assign else dict(DEFAULT_ASSIGNMENT.get(loaded.fixture or "", {}))
    rep = Report(f"classification: {M.name}")
    if assign:
        rep.data["assignment"] = ", ".join(f"{k}={v}" for k, v in sorted(assign.items()))
    source = normalize_source(f.ricci_source or ("statistical" if ct is not None else "nabla"))
    ein = einstein_check(M, ricci_of(M, f.connection, source, f.sign), ct)
    if ein.kind == "einstein":
        rep.add(Check("einstein", "type from the sign of the Einstein constant", "info", classify(ein.c1, assign),
                      detail=str(ein), conventions=_conv(f, source)))
    else:
        rep.add(Check("einstein", "Einstein constant", "n/a", str(ein), conventions=_conv(f, source)))
    prob, pot = _problem(loaded, f, "eta_ricci" if ct is not None else "ricci")
    sol = solve_soliton(M, prob)
    if sol.consistent:
        conv = "yamabe" if prob.kind in ("yamabe", "quasi_yamabe") else "ricci"
        rep.add(Check("soliton", f"{prob.kind} soliton type (potential {pot})", "info", classify(sol.lam, assign, conv),
                      detail=f"lambda = {sol.lam}", conventions=_conv(f, prob.ricci_source)))
    else:
        rep.add(Check("soliton", f"{prob.kind} soliton (potential {pot})", "n/a", "no soliton constant solves the equation",
                      conventions=_conv(f, prob.ricci_source)))
    return rep


def cmd_sub(loaded, f, assign):
    from ..submanifold import duality_check, gauss_check, induce, phi_decompose, umbilicity

    M, ct = loaded.M, loaded.contact
    tangent = f.tangent
    if tangent is None:
        if len(loaded.submanifolds) != 1:
            raise StructuralError("sub needs --tangent (or exactly one submanifold block in the document)")
        tangent = next(iter(loaded.submanifolds.values()))
    sub = induce(M, f.connection, tangent)
    rep = Report(f"submanifold {', '.join(sub.names)} of {M.name}")
    u = umbilicity(sub)
    rep.data["categories"] = ", ".join(u.categories) or "none"
    rep.data["H"] = M.vector_str(u.H)
    rep.data["H_star"] = M.vector_str(u.H_star)
    rep.data["closed"] = sub.closure_ok
    if ct is not None:
        ph = phi_decompose(sub, ct)
        rep.data["phi"] = ph.kind
    g = gauss_check(sub, f.sign)
    rep.extend(g)
    rep.data.update(g.data)
    rep.extend(duality_check(sub))
    return rep


def cmd_audit(loaded, f, assign):
    from ..audit import audit

    source = normalize_source(f.ricci_source or "statistical")
    return audit(loaded, f.section, assign or None, source, f.sign)


def cmd_oracle(loaded, f, assign):
    from ..numoracle import cross_validate

    name = loaded.fixture
    if name is None:
        raise StructuralError("the oracle only knows the built-in fixture charts")
    return cross_validate(name, points=f.points, step=f.step, tol=f.tol, assign=assign or None)


def cmd_fixtures(loaded, f, assign):
    rep = Report("built-in fixtures")
    rep.data["fixtures"] = list(FIXTURES)
    return rep


_DISPATCH = {
    "check": cmd_check,
    "curvature": cmd_curvature,
    "ricci": cmd_ricci,
    "scalar": cmd_scalar,
    "sectional": cmd_sectional,
    "soliton": cmd_soliton,
    "classify": cmd_classify,
    "sub": cmd_sub,
    "audit": cmd_audit,
    "oracle": cmd_oracle,
    "fixtures": cmd_fixtures,
}


def run_command(doc, command: str, flags=None) -> Report:
    """Run ``command`` on a parsed document (``ManifoldDoc`` or ``Loaded``)."""
    if command not in _DISPATCH:
        raise StructuralError(f"unknown command {command!r}; expected one of {', '.join(COMMANDS)}")
    f = _as_flags(flags)
    if command == "fixtures":
        return cmd_fixtures(None, f, {})
    loaded = build(doc) if isinstance(doc, ManifoldDoc) else doc
    if not isinstance(loaded, Loaded):
        raise StructuralError("run_command needs a parsed document")
    if f.sign not in ("standard", "reversed"):
        raise StructuralError(f"unknown sign convention {f.sign!r}")
    assign, ignored = _assignment(loaded, f)
    rep = _DISPATCH[command](loaded, f, assign)
    if command not in ("audit", "oracle"):
        _header(rep, loaded, f, assign, ignored)
    elif ignored:
        rep.data["ignored_assignment"] = ", ".join(f"{k}={v}" for k, v in sorted(ignored.items()))
    return rep
