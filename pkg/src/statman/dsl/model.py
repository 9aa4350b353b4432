"""Turn a parsed document into engine objects."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from ..errors import StructuralError
from ..fixtures import FIXTURES, fixture_text
from ..frame_algebra import Connection, FramePresentation, VectorField
from ..ring import Poly
from ..structures import ContactTriple
from .parser import ManifoldDoc, parse


@dataclass
class Loaded:
    doc: ManifoldDoc
    M: FramePresentation
    contact: ContactTriple | None = None
    submanifolds: dict = field(default_factory=dict)
    fixture: str | None = None


def _vec(doc, d, params) -> VectorField:
    return VectorField(tuple(d.get(f, Poly.zero(params)) for f in doc.frame))


def build(doc: ManifoldDoc) -> Loaded:
    """FramePresentation, contact triple and submanifold tangent sets of ``doc``."""
    params = doc.params
    n = len(doc.frame)
    idx = {f: i for i, f in enumerate(doc.frame)}
    metric = tuple(tuple(doc.metric.get((x, y), 0) for y in doc.frame) for x in doc.frame)
    z = Poly.zero(params)
    br = [[[z] * n for _ in range(n)] for _ in range(n)]
    for (x, y), d in doc.brackets.items():
        v = _vec(doc, d, params)
        for k in range(n):
            br[idx[x]][idx[y]][k] = v.coefficients[k]
            br[idx[y]][idx[x]][k] = -v.coefficients[k]
    conns = {}
    for name, table in doc.connections.items():
        gam = [[[z] * n for _ in range(n)] for _ in range(n)]
        for (x, y), d in table.items():
            gam[idx[x]][idx[y]] = list(_vec(doc, d, params).coefficients)
        conns[name] = Connection(gam, "given")
    M = FramePresentation(doc.name, doc.frame, params, metric, br, conns)
    ct = None
    if doc.phi is not None:
        rows = tuple(_vec(doc, doc.phi.get(f, {}), params).coefficients for f in doc.frame)
        ct = ContactTriple(rows, M.basis(idx[doc.xi]))
    return Loaded(doc, M, ct, dict(doc.submanifolds))


def load(source: str) -> Loaded:
    """Load a built-in fixture name or a path to an ``.sm`` file."""
    if source in FIXTURES:
        res = build(parse(fixture_text(source)))
        res.fixture = source
        return res
    path = Path(source)
    if not path.exists():
        raise StructuralError(f"{source!r} is neither a built-in fixture nor a readable file")
    return build(parse(path.read_text(encoding="utf-8")))
