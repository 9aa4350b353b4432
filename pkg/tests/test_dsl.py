"""Parser, printer, loader and report serialization."""

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from statman.dsl.commands import Flags, parse_assign, run_command
from statman.dsl.model import build, load
from statman.dsl.parser import parse, parse_poly, parse_vector
from statman.dsl.printer import print_doc
from statman.errors import ParseError, StructuralError
from statman.fixtures import FIXTURES, fixture_text
from statman.report import Check, Report, emit
from statman.ring import Poly


@pytest.mark.parametrize("name", FIXTURES)
def test_fixture_parses_and_round_trips(name):
    doc = parse(fixture_text(name))
    again = parse(print_doc(doc))
    assert again.structure() == doc.structure()
    assert parse(print_doc(again)).structure() == again.structure()


def test_kenmotsu_document_shape():
    doc = parse(fixture_text("kenmotsu5d"))
    assert doc.frame == ("e1", "e2", "e3", "e4", "xi")
    assert doc.params == ("a",)
    assert doc.xi == "xi"
    assert set(doc.connections) == {"nabla", "levi_civita_printed", "nabla_star_printed"}


def test_metric_diag():
    doc = parse('manifold "m"\nframe a b c d e\nmetric diag(1,1,1,1,1)\n')
    M = build(doc).M
    assert M.metric == tuple(tuple(int(i == j) for j in range(5)) for i in range(5))


@pytest.mark.parametrize(
    "text,kind,line,col",
    [
        ('manifold "m"\nframe e1 e2\nmetric diag(1,1)\nbracket [e1, e9] = e1\n', "reference", 4, 14),
        ('manifold "m"\nframe e1 $\n', "lexical", 2, 10),
        ('manifold "m"\nframe e1\nmetric diag(1,\n', "syntax", 4, 1),
        ('manifold "m"\nframe e1 e2\nmetric diag(1,1,1)\n', "semantic", 3, 1),
    ],
)
def test_diagnostics_carry_spans(text, kind, line, col):
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert (line, col, kind) == exc.value.diagnostics[0][:3]


def test_undeclared_parameter_in_coefficient():
    text = 'manifold "m"\nframe x y\nmetric diag(1,1)\nconnection nabla {\n  x x = c*y;\n}\n'
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert exc.value.diagnostics[0][2] == "reference"


def test_singular_metric_is_structural():
    with pytest.raises(StructuralError):
        build(parse('manifold "m"\nframe x y\nmetric diag(1,0)\n'))


def test_load_unknown():
    with pytest.raises(StructuralError):
        load("no-such-fixture")


def test_load_from_path(tmp_path):
    p = tmp_path / "h.sm"
    p.write_text(fixture_text("hyperbolic2"), encoding="utf-8")
    L = load(str(p))
    assert L.fixture is None and L.M.frame == ("E1", "E2")


def test_parse_vector_and_poly():
    v = parse_vector("e1 + 2*a*xi", ("a",), ("e1", "xi"))
    assert v["e1"] == Poly.one(("a",)) and v["xi"] == Poly.var("a", ("a",)) * 2
    assert parse_poly("3*a - 15", ("a",)) == Poly.var("a", ("a",)) * 3 - 15
    with pytest.raises(ParseError):
        parse_vector("a", ("a",), ("e1",))


def test_parse_assign():
    assert parse_assign("a=0, b=1/2") == {"a": 0, "b": pytest.approx(0.5)}
    with pytest.raises(StructuralError):
        parse_assign("a")
    with pytest.raises(StructuralError):
        parse_assign("a=x")


# --- reports ------------------------------------------------------------------


def test_empty_report_is_canonical():
    assert emit(Report(), "machine") == b"{}\n"
    assert emit(Report(), "text") == b""


def test_polynomial_printing_in_report():
    r = Report("t")
    r.add(Check("scalar", "scalar", "mismatch", "-20", printed=parse_poly("3*a - 15", ("a",))))
    out = emit(r, "machine").decode()
    assert '"printed": "3*a - 15"' in out


@pytest.mark.parametrize("command", ["check", "curvature", "ricci", "scalar", "soliton", "classify", "audit"])
def test_machine_output_is_deterministic(loaded, command):
    L = loaded["kenmotsu5d"]
    a = emit(run_command(L, command, Flags(assign={"a": 0})), "machine")
    b = emit(run_command(load("kenmotsu5d"), command, Flags(assign={"a": 0})), "machine")
    assert a == b
    data = json.loads(a)
    assert "title" in data
    assert a.endswith(b"\n") and b"\r" not in a


def test_machine_keys_sorted(loaded):
    out = emit(run_command(loaded["hyperbolic2"], "audit"), "machine").decode()
    data = json.loads(out)
    assert json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n" == out


names = st.from_regex(r"[a-z][a-z0-9]{0,3}", fullmatch=True).filter(
    lambda s: s not in {"manifold", "params", "dim", "frame", "metric", "diag", "bracket", "connection", "contact",
                        "phi", "xi", "submanifold", "tangent"})


@st.composite
def documents(draw):
    frame = draw(st.lists(names, min_size=1, max_size=4, unique=True))
    diag = draw(st.lists(st.integers(1, 5), min_size=len(frame), max_size=len(frame)))
    lines = [f'manifold "gen"', "frame " + " ".join(frame), "metric diag(" + ", ".join(map(str, diag)) + ")"]
    lines.append("connection nabla {")
    for x in frame:
        for y in frame:
            c = draw(st.integers(-3, 3))
            z = draw(st.sampled_from(frame))
            if c:
                lines.append(f"  {x} {y} = {c}*{z};")
    lines.append("}")
    return "\n".join(lines) + "\n"


@given(documents())
@settings(max_examples=40, deadline=None)
def test_generated_documents_round_trip(text):
    doc = parse(text)
    assert parse(print_doc(doc)).structure() == doc.structure()
