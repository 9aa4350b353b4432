"""Canonical pretty-printer for manifold documents."""

from __future__ import annotations

from ..frame_algebra import VectorField, vector_str
from ..ring import Poly
from .parser import ManifoldDoc


def _frac(v) -> str:
    return str(v)


def _vec(doc: ManifoldDoc, d: dict) -> str:
    coeffs = tuple(d.get(f, Poly.zero(doc.params)) for f in doc.frame)
    return vector_str(VectorField(coeffs), doc.frame)


def print_doc(doc: ManifoldDoc) -> str:
    """Render ``doc`` so that ``parse(print_doc(doc))`` has the same structure."""
    order = {f: i for i, f in enumerate(doc.frame)}
    out = [f'manifold "{doc.name}"']
    if doc.params:
        out.append("params " + ", ".join(doc.params))
    out.append(f"dim {doc.dim}")
    out.append("frame " + " ".join(doc.frame))
    offdiag = any(x != y for x, y in doc.metric)
    if not offdiag:
        out.append("metric diag(" + ", ".join(_frac(doc.metric.get((f, f), 0)) for f in doc.frame) + ")")
    else:
        out.append("metric")
        for (x, y), v in sorted(doc.metric.items(), key=lambda kv: (order[kv[0][0]], order[kv[0][1]])):
            if order[x] <= order[y]:
                out.append(f"  ({x}, {y}) = {_frac(v)}")
    for (x, y), v in sorted(doc.brackets.items(), key=lambda kv: (order[kv[0][0]], order[kv[0][1]])):
        if v:
            out.append(f"bracket [{x}, {y}] = {_vec(doc, v)}")
    for name in sorted(doc.connections):
        table = doc.connections[name]
        out.append(f"connection {name} {{")
        for (x, y), v in sorted(table.items(), key=lambda kv: (order[kv[0][0]], order[kv[0][1]])):
            if v:
                out.append(f"  {x} {y} = {_vec(doc, v)};")
        out.append("}")
    if doc.phi is not None:
        out.append("contact {")
        for x in doc.frame:
            if doc.phi.get(x):
                out.append(f"  phi {x} = {_vec(doc, doc.phi[x])};")
        out.append(f"  xi = {doc.xi};")
        out.append("}")
    for name in sorted(doc.submanifolds):
        out.append(f"submanifold {name} {{")
        out.append("  tangent " + ", ".join(doc.submanifolds[name]) + ";")
        out.append("}")
    return "\n".join(out) + "\n"
