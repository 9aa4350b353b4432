"""Claim audits: verdicts on the Kenmotsu document and the example fixtures."""

import pytest

from statman.audit import audit, default_tangents
from statman.dsl.model import load
from statman.errors import StructuralError


def verdicts(rep):
    out = {}
    for c in rep.all_checks():
        out.setdefault(c.claim, c.verdict)
    return out


@pytest.fixture(scope="module")
def sections(kenmotsu):
    return {s: audit(kenmotsu, section=s) for s in "2345678"}


def test_section2_structure(sections):
    v = verdicts(sections["2"])
    assert v["levi_civita"] == "match"
    assert v["nabla_star"] == "mismatch"
    assert v["difference_tensor"] == "match"
    for k in ("torsion_free", "codazzi", "cubic_symmetry", "K_phi", "statistical_curvature", "gauss", "gauss_star"):
        assert v[k] == "pass", k
    assert "-2*a*xi" in sections["2"].find("nabla_star").value


def test_section3_sign_convention(sections):
    rep = sections["3"]
    v = verdicts(rep)
    for item in ("i", "ii", "iii", "v"):
        assert v[f"item_{item}[standard]"] == "mismatch"
        assert v[f"item_{item}[reversed]"] == "match"
    assert v["item_iv[standard]"] == v["item_iv[reversed]"] == "match"
    assert rep.find("convention").value == "reversed"
    assert v["c_solved"] == "match" and v["warp_matches_fixture"] == "match"


def test_section4_submanifold_readings(sections):
    rep = sections["4"]
    v = verdicts(rep)
    assert v["ricci_xi[s=sub]"] == "mismatch"
    assert v["lambda_relation[s=ambient]"] == "match"
    assert rep.find("lambda_rederived").value == "-a + 1"
    assert v["lambda_minus_beta"] == "mismatch" and v["lambda_minus_beta[L=0]"] == "match"


def test_section5_ambient(sections):
    v = verdicts(sections["5"])
    assert sections["5"].find("solve").value == "lambda = 3, omega = 1"
    assert v["scalar"] == "match" and v["eigenvalue"] == "mismatch"


def test_sections_6_7_at_unit_parameter(sections):
    assert sections["6"].sections[0].data.get("assignment") == "a=1" or "a=1" in str(sections["6"].to_dict())
    vt = [c for c in sections["7"].all_checks() if c.claim == "quasi_yamabe_vT"]
    assert vt[0].value == "lambda = -7, omega = 1"


def test_section8_published_values(sections):
    rep = sections["8"]
    v = verdicts(rep)
    assert v["ricci"] == "match"
    assert v["eta_ricci[lambda]"] == "match" and v["eta_ricci_class"] == "match"
    for k in ("ricci_xi", "scalar", "eta_ricci[omega]", "quasi_yamabe[lambda]", "quasi_yamabe_threshold"):
        assert v[k] == "mismatch", k
    assert rep.find("quasi_yamabe[lambda]").value == "-21"
    assert "16/3" in rep.find("quasi_yamabe_threshold").value
    assert v["curvature[e1,xi,xi]"] == "mismatch" and v["statistical_curvature[e1,xi,xi]"] == "match"
    assert v["curvature[e1,e4,e4]#2"] == "match"


def test_every_anchor_is_labelled(sections):
    for s, rep in sections.items():
        for c in rep.all_checks():
            assert c.anchor, (s, c.claim)


def test_hyperbolic_example():
    rep = audit(load("hyperbolic2"))
    assert rep.passed
    assert verdicts(rep)["classification"] == "match"


def test_flat2_example():
    v = verdicts(audit(load("flat2-einstein")))
    assert v["statistical"] == "mismatch" and v["conjugate"] == "mismatch"
    assert v["constant_curvature"] == v["scalar"] == v["einstein"] == "match"


def test_flat3_example():
    rep = audit(load("flat3-einstein"))
    assert rep.passed
    assert rep.find("constant_curvature").value == "nabla: 1/4*b^2"


def test_non_contact_section_errors():
    with pytest.raises(StructuralError):
        audit(load("hyperbolic2"), section="3")
    with pytest.raises(StructuralError):
        audit(load("kenmotsu5d"), section="9")


def test_default_tangents(kenmotsu):
    t = default_tangents(kenmotsu.M, kenmotsu.contact)
    assert t["xi_normal"] == ("e1", "e2", "e3", "e4")
    assert len(t["invariant"]) == 3 and t["invariant"][-1] == "xi"


def test_override_assignment(kenmotsu):
    rep = audit(kenmotsu, section="8", assign={"a": 1})
    assert rep.find("curvature[e2,xi,xi]").verdict in ("match", "mismatch")
    assert "a=1" in str(rep.to_dict())


def test_section8_ricci_convention_sweep(sections):
    rep = sections["8"]
    assert set(rep.find("ricci").conventions) == {"ricci=statistical/standard/first", "ricci=statistical/standard/last"}
    assert rep.find("ricci_xi").conventions == ()
    assert "-4*a - 4 (ricci=nabla/standard/last)" in rep.find("ricci_xi").detail
    assert rep.find("scalar").conventions == ()
    assert "no convention" in rep.find("eta_ricci[omega]").detail
