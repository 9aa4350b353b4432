"""Lexer, parser and resolver for ``.sm`` manifold documents.

Grammar (statements are newline tolerant; ``#`` starts a comment)::

    document    = header stmt*
    header      = "manifold" STRING
    stmt        = params | dim | frame | metric | bracket | connection
                | contact | submanifold
    params      = "params" IDENT ("," IDENT)*
    dim         = "dim" INT
    frame       = "frame" IDENT+
    metric      = "metric" ("diag" "(" rational ("," rational)* ")" | entry+)
    entry       = "(" IDENT "," IDENT ")" "=" rational
    bracket     = "bracket" "[" IDENT "," IDENT "]" "=" vexpr [";"]
    connection  = "connection" IDENT "{" (IDENT IDENT "=" vexpr ";")* "}"
    contact     = "contact" "{" ("phi" IDENT "=" vexpr ";")* "xi" "=" IDENT ";" "}"
    submanifold = "submanifold" IDENT "{" "tangent" IDENT ("," IDENT)* ";" "}"

A ``vexpr`` is a sum of terms ``coef*frame`` where ``coef`` is a polynomial
in the declared parameters built from numbers, ``+ - * / ^`` and parens.
Outside braces a bracket's ``vexpr`` ends at the end of its line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import ParseError
from ..ring import Poly

KEYWORDS = {"manifold", "params", "dim", "frame", "metric", "bracket", "connection", "contact", "submanifold"}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<newline>\n)
  | (?P<string>"[^"\n]*")
  | (?P<number>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[\[\](){},;=+\-*/^])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # ident, number, string, punct, newline, eof
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens, errors = [], []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            errors.append((line, col, "lexical", f"unexpected character {text[pos]!r}"))
            pos += 1
            continue
        kind = m.lastgroup
        if kind == "newline":
            tokens.append(Token("newline", "\n", line, col))
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    if errors:
        raise ParseError(errors)
    return tokens


# ---------------------------------------------------------------------------
# expression trees


@dataclass(frozen=True)
class Num:
    value: Fraction
    line: int
    col: int


@dataclass(frozen=True)
class Name:
    name: str
    line: int
    col: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object
    line: int
    col: int


@dataclass(frozen=True)
class Neg:
    operand: object
    line: int
    col: int


# ---------------------------------------------------------------------------
# AST


@dataclass
class ManifoldDoc:
    """Parsed and resolved manifold document.

    Coefficient tables are sparse maps keyed by frame names; ``spans`` maps
    ``(section, key)`` to the ``(line, col)`` where the entry was written.
    """

    name: str
    params: tuple = ()
    dim: int | None = None
    frame: tuple = ()
    metric: dict = field(default_factory=dict)  # (X, Y) -> Fraction, both orders
    metric_diag: bool = False
    brackets: dict = field(default_factory=dict)  # (X, Y) -> {Z: Poly}
    connections: dict = field(default_factory=dict)  # name -> {(X, Y): {Z: Poly}}
    phi: dict | None = None  # X -> {Z: Poly}
    xi: str | None = None
    submanifolds: dict = field(default_factory=dict)  # name -> tuple of frame names
    source: str = ""
    spans: dict = field(default_factory=dict)

    def structure(self):
        """Hashable structural summary used for round-trip comparisons."""

        def vec(d):
            return tuple(sorted((k, str(v)) for k, v in d.items() if not v.is_zero()))

        return (
            self.name,
            self.params,
            self.dim,
            self.frame,
            tuple(sorted((k, str(v)) for k, v in self.metric.items())),
            tuple(sorted((k, vec(v)) for k, v in self.brackets.items() if vec(v))),
            tuple(
                sorted(
                    (name, tuple(sorted((k, vec(v)) for k, v in table.items() if vec(v))))
                    for name, table in self.connections.items()
                )
            ),
            None if self.phi is None else tuple(sorted((k, vec(v)) for k, v in self.phi.items() if vec(v))),
            self.xi,
            tuple(sorted(self.submanifolds.items())),
        )


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.raw = {
            "name": None,
            "params": [],
            "dim": None,
            "frame": [],
            "metric_diag": None,
            "metric_entries": [],
            "brackets": [],
            "connections": [],
            "contact": None,
            "submanifolds": [],
        }

    # token helpers
    def peek(self, skip_nl=True) -> Token:
        j = self.i
        while skip_nl and self.tokens[j].kind == "newline":
            j += 1
        return self.tokens[j]

    def next(self, skip_nl=True) -> Token:
        while skip_nl and self.tokens[self.i].kind == "newline":
            self.i += 1
        tok = self.tokens[self.i]
        if tok.kind != "eof":
            self.i += 1
        return tok

    def error(self, tok: Token, msg: str):
        raise ParseError([(tok.line, tok.col, "syntax", msg)])

    def expect(self, text=None, kind=None, skip_nl=True) -> Token:
        tok = self.next(skip_nl)
        if text is not None and tok.text != text:
            self.error(tok, f"expected {text!r}, found {_show(tok)}")
        if kind is not None and tok.kind != kind:
            self.error(tok, f"expected {kind}, found {_show(tok)}")
        return tok

    def ident(self, skip_nl=True) -> Token:
        tok = self.next(skip_nl)
        if tok.kind != "ident" or tok.text in KEYWORDS:
            self.error(tok, f"expected identifier, found {_show(tok)}")
        return tok

    def accept(self, text, skip_nl=True) -> Token | None:
        if self.peek(skip_nl).text == text and self.peek(skip_nl).kind in ("punct", "ident"):
            return self.next(skip_nl)
        return None

    # grammar
    def parse(self):
        tok = self.next()
        if tok.text != "manifold":
            self.error(tok, f"document must start with 'manifold \"name\"', found {_show(tok)}")
        s = self.expect(kind="string", skip_nl=False)
        self.raw["name"] = (s.text[1:-1], s)
        while self.peek().kind != "eof":
            tok = self.next()
            handler = getattr(self, f"_stmt_{tok.text}", None) if tok.kind == "ident" else None
            if handler is None:
                self.error(tok, f"expected a statement keyword, found {_show(tok)}")
            handler(tok)
        return self.raw

    def _stmt_manifold(self, tok):
        self.error(tok, "duplicate 'manifold' header")

    def _stmt_params(self, tok):
        self.raw["params"].append(self.ident(skip_nl=False))
        while self.accept(",", skip_nl=False):
            self.raw["params"].append(self.ident(skip_nl=False))

    def _stmt_dim(self, tok):
        n = self.expect(kind="number", skip_nl=False)
        self.raw["dim"] = (int(n.text), n)

    def _stmt_frame(self, tok):
        names = [self.ident(skip_nl=False)]
        while self.peek(False).kind == "ident" and self.peek(False).text not in KEYWORDS:
            names.append(self.next(False))
        self.raw["frame"].extend(names)

    def _stmt_metric(self, tok):
        if self.accept("diag", skip_nl=False):
            self.expect("(")
            vals = [self.rational()]
            while self.accept(","):
                vals.append(self.rational())
            self.expect(")")
            self.raw["metric_diag"] = (vals, tok)
            return
        if self.peek().text != "(":
            self.error(self.peek(), "expected 'diag(...)' or '(X, Y) = value' metric entries")
        while self.peek().text == "(":
            lp = self.next()
            x = self.ident()
            self.expect(",")
            y = self.ident()
            self.expect(")")
            self.expect("=")
            self.raw["metric_entries"].append((x, y, self.rational(), lp))

    def rational(self) -> Fraction:
        sign = -1 if self.accept("-") else 1
        n = self.expect(kind="number")
        value = Fraction(int(n.text))
        if self.accept("/"):
            d = self.expect(kind="number")
            if int(d.text) == 0:
                self.error(d, "zero denominator")
            value /= int(d.text)
        return sign * value

    def _stmt_bracket(self, tok):
        self.expect("[")
        x = self.ident()
        self.expect(",")
        y = self.ident()
        self.expect("]")
        self.expect("=")
        expr = self.vexpr(stop_nl=True)
        self.accept(";", skip_nl=False)
        self.raw["brackets"].append((x, y, expr, tok))

    def _stmt_connection(self, tok):
        name = self.ident(skip_nl=False)
        self.expect("{")
        entries = []
        while self.peek().text != "}":
            x = self.ident()
            y = self.ident()
            self.expect("=")
            entries.append((x, y, self.vexpr(), x))
            self.expect(";")
        self.expect("}")
        self.raw["connections"].append((name, entries))

    def _stmt_contact(self, tok):
        if self.raw["contact"] is not None:
            self.error(tok, "duplicate contact block")
        self.expect("{")
        phi = []
        xi = None
        while self.peek().text != "}":
            kw = self.next()
            if kw.text == "phi" and xi is None:
                x = self.ident()
                self.expect("=")
                phi.append((x, self.vexpr(), x))
                self.expect(";")
            elif kw.text == "xi" and xi is None:
                self.expect("=")
                xi = self.ident()
                self.expect(";")
            else:
                self.error(kw, f"expected 'phi X = ...;' or a single 'xi = NAME;' at the end, found {_show(kw)}")
        if xi is None:
            self.error(self.peek(), "contact block requires 'xi = NAME;'")
        self.expect("}")
        self.raw["contact"] = (phi, xi, tok)

    def _stmt_submanifold(self, tok):
        name = self.ident(skip_nl=False)
        self.expect("{")
        self.expect("tangent")
        names = [self.ident()]
        while self.accept(","):
            names.append(self.ident())
        self.expect(";")
        self.expect("}")
        self.raw["submanifolds"].append((name, names))

    # expressions
    def vexpr(self, stop_nl=False):
        skip = not stop_nl
        tok = self.peek(skip)
        if self.accept("-", skip):
            node = Neg(self.term(skip), tok.line, tok.col)
        else:
            self.accept("+", skip)
            node = self.term(skip)
        while self.peek(skip).text in ("+", "-") and self.peek(skip).kind == "punct":
            op = self.next(skip)
            node = BinOp(op.text, node, self.term(skip), op.line, op.col)
        return node

    expr = vexpr

    def term(self, skip):
        node = self.unary(skip)
        while self.peek(skip).text in ("*", "/") and self.peek(skip).kind == "punct":
            op = self.next(skip)
            node = BinOp(op.text, node, self.unary(skip), op.line, op.col)
        return node

    def unary(self, skip):
        tok = self.peek(skip)
        if tok.text == "-" and tok.kind == "punct":
            self.next(skip)
            return Neg(self.unary(skip), tok.line, tok.col)
        return self.power(skip)

    def power(self, skip):
        node = self.atom(skip)
        if self.peek(skip).text == "^":
            op = self.next(skip)
            exp = self.expect(kind="number", skip_nl=skip)
            node = BinOp("^", node, Num(Fraction(int(exp.text)), exp.line, exp.col), op.line, op.col)
        return node

    def atom(self, skip):
        tok = self.next(skip)
        if tok.kind == "number":
            return Num(Fraction(int(tok.text)), tok.line, tok.col)
        if tok.kind == "ident" and tok.text not in KEYWORDS:
            return Name(tok.text, tok.line, tok.col)
        if tok.text == "(":
            node = self.vexpr()
            self.expect(")")
            return node
        self.error(tok, f"expected a number, name or '(' in expression, found {_show(tok)}")


def _show(tok: Token) -> str:
    if tok.kind == "eof":
        return "end of input"
    if tok.kind == "newline":
        return "end of line"
    return repr(tok.text)


# ---------------------------------------------------------------------------
# resolution


class _Resolver:
    def __init__(self, raw, text):
        self.raw = raw
        self.text = text
        self.errors = []

    def err(self, line, col, kind, msg):
        self.errors.append((line, col, kind, msg))

    def resolve(self) -> ManifoldDoc:
        raw = self.raw
        name, _ = raw["name"]
        params = []
        for t in raw["params"]:
            if t.text in params:
                self.err(t.line, t.col, "reference", f"parameter {t.text!r} declared twice")
            else:
                params.append(t.text)
        self.params = tuple(params)
        frame = []
        for t in raw["frame"]:
            if t.text in frame:
                self.err(t.line, t.col, "reference", f"frame field {t.text!r} declared twice")
            elif t.text in self.params:
                self.err(t.line, t.col, "reference", f"{t.text!r} is already a parameter")
            else:
                frame.append(t.text)
        self.frame = tuple(frame)
        doc = ManifoldDoc(name=name, params=self.params, frame=self.frame, source=self.text)
        if not frame:
            self.err(1, 1, "semantic", "no 'frame' statement")
        if raw["dim"] is not None:
            n, tok = raw["dim"]
            doc.dim = n
            if frame and n != len(frame):
                self.err(tok.line, tok.col, "semantic", f"dim {n} does not match {len(frame)} frame fields")
        else:
            doc.dim = len(frame)

        if raw["metric_diag"] is not None:
            vals, tok = raw["metric_diag"]
            doc.metric_diag = True
            if len(vals) != len(frame):
                self.err(tok.line, tok.col, "semantic", f"diag has {len(vals)} entries for {len(frame)} frame fields")
            for f, v in zip(frame, vals):
                doc.metric[(f, f)] = v
        for x, y, v, tok in raw["metric_entries"]:
            if self.frame_ref(x) and self.frame_ref(y):
                for key in ((x.text, y.text), (y.text, x.text)):
                    if key in doc.metric and doc.metric[key] != v:
                        self.err(tok.line, tok.col, "semantic", f"conflicting metric entry ({x.text}, {y.text})")
                    doc.metric[key] = v
                doc.spans[("metric", (x.text, y.text))] = (tok.line, tok.col)
        if raw["metric_diag"] is None and not raw["metric_entries"]:
            self.err(1, 1, "semantic", "no 'metric' statement")
        doc.metric = {k: v for k, v in doc.metric.items() if v != 0}

        for x, y, expr, tok in raw["brackets"]:
            ok = self.frame_ref(x) & self.frame_ref(y)
            vec = self.vector(expr)
            if not ok or vec is None:
                continue
            key = (x.text, y.text)
            if key in doc.brackets or (y.text, x.text) in doc.brackets:
                self.err(tok.line, tok.col, "semantic", f"bracket [{x.text}, {y.text}] given twice")
                continue
            if x.text == y.text and vec:
                self.err(tok.line, tok.col, "semantic", f"bracket [{x.text}, {x.text}] must vanish")
                continue
            doc.brackets[key] = vec
            doc.spans[("bracket", key)] = (tok.line, tok.col)

        for name_tok, entries in raw["connections"]:
            if name_tok.text in doc.connections:
                self.err(name_tok.line, name_tok.col, "semantic", f"connection {name_tok.text!r} defined twice")
                continue
            table = {}
            for x, y, expr, tok in entries:
                ok = self.frame_ref(x) & self.frame_ref(y)
                vec = self.vector(expr)
                if not ok or vec is None:
                    continue
                key = (x.text, y.text)
                if key in table:
                    self.err(tok.line, tok.col, "semantic", f"entry {x.text} {y.text} given twice")
                    continue
                table[key] = vec
                doc.spans[(f"connection:{name_tok.text}", key)] = (tok.line, tok.col)
            doc.connections[name_tok.text] = table

        if raw["contact"] is not None:
            phi_entries, xi_tok, _ = raw["contact"]
            doc.phi = {}
            for x, expr, tok in phi_entries:
                ok = self.frame_ref(x)
                vec = self.vector(expr)
                if ok and vec is not None:
                    if x.text in doc.phi:
                        self.err(tok.line, tok.col, "semantic", f"phi {x.text} given twice")
                    doc.phi[x.text] = vec
                    doc.spans[("phi", x.text)] = (tok.line, tok.col)
            if self.frame_ref(xi_tok):
                doc.xi = xi_tok.text

        for name_tok, names in raw["submanifolds"]:
            if name_tok.text in doc.submanifolds:
                self.err(name_tok.line, name_tok.col, "semantic", f"submanifold {name_tok.text!r} defined twice")
                continue
            seen = []
            for t in names:
                if self.frame_ref(t):
                    if t.text in seen:
                        self.err(t.line, t.col, "semantic", f"{t.text!r} listed twice")
                    else:
                        seen.append(t.text)
            doc.submanifolds[name_tok.text] = tuple(seen)
            doc.spans[("submanifold", name_tok.text)] = (name_tok.line, name_tok.col)

        if self.errors:
            raise ParseError(sorted(self.errors))
        return doc

    def frame_ref(self, tok) -> bool:
        if tok.text not in self.frame:
            what = "a parameter, not a frame field" if tok.text in self.params else "undeclared frame field"
            self.err(tok.line, tok.col, "reference", f"{tok.text!r} is {what}")
            return False
        return True

    def vector(self, expr):
        """Resolve to ``{frame name: Poly}``; None after recording errors."""
        n_err = len(self.errors)
        out = self._vec(expr)
        if len(self.errors) > n_err:
            return None
        return {k: v for k, v in out.items() if not v.is_zero()}

    def _vec(self, node):
        # returns dict frame->Poly, or a Poly for scalar subexpressions
        res = self._eval(node)
        if isinstance(res, Poly):
            if not res.is_zero():
                self.err(node.line, node.col, "syntax", "expression has no frame field (write 0 for the zero vector)")
            return {}
        return res

    def _eval(self, node):
        z = Poly.zero(self.params)
        if isinstance(node, Num):
            return Poly.const(node.value, self.params)
        if isinstance(node, Name):
            if node.name in self.frame:
                return {node.name: Poly.one(self.params)}
            if node.name in self.params:
                return Poly.var(node.name, self.params)
            self.err(node.line, node.col, "reference", f"undeclared name {node.name!r}")
            return z
        if isinstance(node, Neg):
            v = self._eval(node.operand)
            return -v if isinstance(v, Poly) else {k: -c for k, c in v.items()}
        l, r = self._eval(node.left), self._eval(node.right)
        op = node.op
        if op in ("+", "-"):
            if isinstance(l, Poly) and isinstance(r, Poly):
                return l + r if op == "+" else l - r
            if isinstance(l, Poly) or isinstance(r, Poly):
                scalar_side = l if isinstance(l, Poly) else r
                if not scalar_side.is_zero():
                    self.err(node.line, node.col, "syntax", "cannot add a scalar to a vector")
                    return {}
                l = {} if isinstance(l, Poly) else l
                r = {} if isinstance(r, Poly) else r
            out = dict(l)
            for k, c in r.items():
                out[k] = out.get(k, z) + (c if op == "+" else -c)
            return out
        if op == "*":
            if isinstance(l, Poly) and isinstance(r, Poly):
                return l * r
            if isinstance(l, dict) and isinstance(r, dict):
                self.err(node.line, node.col, "syntax", "product of two frame fields")
                return {}
            s, v = (l, r) if isinstance(l, Poly) else (r, l)
            return {k: c * s for k, c in v.items()}
        if op == "/":
            if not isinstance(r, Poly) or not r.is_constant():
                self.err(node.line, node.col, "syntax", "division only by numbers")
                return l
            if r.is_zero():
                self.err(node.line, node.col, "syntax", "division by zero")
                return l
            d = r.constant_value()
            return l / d if isinstance(l, Poly) else {k: c / d for k, c in l.items()}
        if op == "^":
            if not isinstance(l, Poly):
                self.err(node.line, node.col, "syntax", "power of a frame field")
                return {}
            return l ** int(r.constant_value())
        raise AssertionError(op)


def parse(text: str) -> ManifoldDoc:
    """Parse and resolve a document; raises ParseError with located diagnostics."""
    raw = _Parser(text).parse()
    return _Resolver(raw, text).resolve()


def parse_poly(text: str, params) -> Poly:
    """Parse a standalone polynomial expression over ``params``."""
    p = _Parser(text)
    expr = p.vexpr()
    if p.peek().kind != "eof":
        p.error(p.peek(), f"unexpected {_show(p.peek())} after expression")
    r = _Resolver(None, text)
    r.params, r.frame = tuple(params), ()
    out = r._eval(expr)
    if r.errors:
        raise ParseError(r.errors)
    return out


def parse_vector(text: str, params, frame) -> dict:
    """Parse a linear combination of ``frame`` names; returns ``{name: Poly}`` (``"0"`` gives ``{}``)."""
    p = _Parser(text)
    expr = p.vexpr()
    if p.peek().kind != "eof":
        p.error(p.peek(), f"unexpected {_show(p.peek())} after expression")
    r = _Resolver(None, text)
    r.params, r.frame = tuple(params), tuple(frame)
    out = r._eval(expr)
    if r.errors:
        raise ParseError(r.errors)
    if isinstance(out, Poly):
        if not out.is_zero():
            raise ParseError([(1, 1, "reference", f"{text!r} is a scalar, expected a vector field")])
        return {}
    return out
