"""Anchor labels and published values compared by the audit command.

Labels are report data: each audited check carries the label of the
statement it tests so a reader can locate it in the source document.
Values are transcribed verbatim (including known misprints) and are never
used by the engine itself.
"""

SECTIONS = ("2", "3", "4", "5", "6", "7", "8")

# claim id -> anchor label, per audit section
ANCHORS = {
    "2": {
        "levi_civita": "Example 2.3, Levi-Civita table",
        "nabla_star": "Example 2.3, conjugate connection table",
        "difference_tensor": "Example 2.3, K(E,F) = a g(E,xi) g(F,xi) xi",
        "torsion_free": "Example 2.3, statistical structure",
        "codazzi": "Eq. 2.1",
        "cubic_symmetry": "Example 2.3, statistical structure",
        "eta_xi": "Example 2.3, almost contact structure",
        "phi_xi": "Example 2.3, almost contact structure",
        "eta_phi": "Example 2.3, almost contact structure",
        "phi_squared": "Example 2.3, almost contact structure",
        "metric_compatible": "Example 2.3, almost contact structure",
        "statistical": "Theorem 3.3",
        "almost_contact": "Proposition 3.1(i)",
        "nabla_phi": "Theorem 3.3, Eq. 3.2",
        "nabla_xi": "Theorem 3.3, Eq. 3.3",
        "K_phi": "Example 2.3, K(E,phi F) + phi K(E,F) = 0",
        "invariant": "Example 2.5, invariant submanifold",
        "xi_tangent": "Example 2.5, xi tangent to N",
        "umbilical": "Eqs. 2.16-2.17",
        "gauss": "Eq. 2.10",
        "gauss_star": "Eq. 2.11",
        "h_vs_A_star": "Eq. 2.8",
        "h_star_vs_A": "Eq. 2.9",
        "statistical_curvature": "Eq. 2.12",
    },
    "3": {
        "item_i": "Proposition 3.5(i)",
        "item_ii": "Proposition 3.5(ii)",
        "item_iii": "Proposition 3.5(iii)",
        "item_iv": "Proposition 3.5(iv)",
        "item_v": "Proposition 3.5(v)",
        "convention": "Proposition 3.5",
        "ricci_form": "Proposition 3.6(i)",
        "engine_rho": "Proposition 3.6(i)",
        "c_solved": "Proposition 3.6(i)",
        "ricci_xi": "Proposition 3.6(ii)",
        "ricci_phi": "Proposition 3.6(iii)",
        "not_ricci_flat": "Proposition 3.6",
        "A_xi": "Theorem 3.2(i)",
        "Theta_base": "Theorem 3.2(i)",
        "holomorphic": "Theorem 3.2(ii)",
        "levi_civita": "Proposition 3.1",
        "almost_contact": "Proposition 3.1(i)",
        "holomorphic_base": "Proposition 3.4",
        "kenmotsu_statistical": "Proposition 3.4",
        "warp_matches_fixture": "Proposition 3.4 / Example 2.3",
    },
    "4": {
        "eta_ricci_solve": "Eq. 4.1",
        "lie_xi": "Eq. 4.5",
        "eta_einstein": "Eq. 4.6, Theorem 4.1",
        "curvature_xi": "Eq. 4.8",
        "ricci_xi": "Eq. 4.9",
        "lambda_relation": "Theorem 4.3",
        "lambda_rederived": "Eq. 4.6 at F = xi",
        "tangent_nabla_xi": "Eq. 4.3",
        "tangent_h_xi": "Eq. 4.3",
        "normal_nabla_xi": "Eq. 4.10",
        "normal_h_xi": "Eq. 4.10",
        "lie_xi_normal": "Eq. 4.11",
        "eta_einstein_normal": "Eq. 4.12, Theorem 4.4",
        "lambda_minus_beta": "Eq. 4.13, Theorem 4.6",
        "statistical": "Section 4 examples, statistical manifold",
        "constant_curvature": "Section 4 examples, constant curvature",
        "ricci_flat": "Section 4 example 1, Ricci-flat",
        "scalar": "Section 4 examples, scalar curvature",
        "einstein": "Section 4 examples, Einstein constant",
        "soliton": "Section 4 examples, Ricci soliton",
        "classification": "Section 4 examples, shrinking/steady/expanding",
        "conjugate": "Section 4 example 2, conjugate connection",
        "conjugate_statistical": "Section 4 example 2, conjugate connection",
    },
    "5": {
        "solve": "Eq. 5.1",
        "ricci_form": "Eq. 5.3, Theorem 5.1(i)",
        "ricci_operator": "Theorem 5.1(ii)",
        "eigenvalue": "Remark 5.2",
        "scalar": "Theorem 5.1(iii)",
    },
    "6": {
        "concircular": "Eq. 1.7",
        "vT_split": "Eq. 6.4, Lemma 6.1",
        "vT_degenerate": "Lemma 6.1",
        "shape_vN": "Eq. 6.6",
        "flat_or_umbilical": "Lemma 6.1",
        "lie_vT": "Theorem 6.3, Lie derivative along v^T",
        "eta_ricci_vT": "Theorem 6.3",
        "ricci_vT": "Eq. 6.11, Theorem 6.3",
        "ambient_concircular": "Eq. 1.7",
    },
    "7": {
        "quasi_yamabe_vT": "Eq. 1.6",
        "quasi_yamabe_shape": "Eq. 7.5, Theorem 7.1",
        "quasi_yamabe_minimal": "Eq. 7.6, Theorem 7.3",
        "quasi_yamabe_concurrent": "Corollary 7.5",
    },
    "8": {
        "curvature": "Eq. 8.1",
        "statistical_curvature": "Eq. 8.2",
        "ricci": "Eq. 8.3",
        "ricci_xi": "Eq. 8.4",
        "scalar": "Eq. 8.5",
        "eta_ricci": "Section 8, eta-Ricci soliton",
        "eta_ricci_class": "Section 8, expanding eta-Ricci soliton",
        "quasi_yamabe": "Section 8, almost quasi-Yamabe soliton",
        "quasi_yamabe_threshold": "Section 8, a > 5 / a < 5",
    },
}


def anchor(section: str, claim: str) -> str:
    """Label for ``claim`` (bracketed convention suffixes are ignored)."""
    base = claim.split("[", 1)[0]
    table = ANCHORS.get(section, {})
    return table.get(claim) or table.get(base) or ""


# --- published values -------------------------------------------------------

# Published curvature components of the five-dimensional example, shared by
# the curvature of nabla, of nabla* and the statistical curvature.
# Entries: (X, Y, Z, {frame: coefficient}) meaning R(X,Y)Z.  The table is
# transcribed with its duplicate entry.
KENMOTSU_CURVATURE = (
    ("e1", "e2", "e1", {"e2": "1"}),
    ("e1", "e2", "e2", {"e1": "-1"}),
    ("e1", "e3", "e1", {"e3": "1"}),
    ("e1", "e3", "e3", {"e1": "-1"}),
    ("e1", "e4", "e1", {"e4": "1"}),
    ("e1", "xi", "e1", {"xi": "1"}),
    ("e1", "e4", "e4", {"e1": "-1"}),
    ("e1", "xi", "xi", {"e1": "-1"}),
    ("e2", "e3", "e2", {"e3": "1"}),
    ("e2", "e3", "e3", {"e2": "-1"}),
    ("e2", "e4", "e2", {"e4": "1"}),
    ("e2", "e4", "e4", {"e2": "-1"}),
    ("e2", "xi", "e2", {"xi": "1"}),
    ("e2", "xi", "xi", {"e2": "a"}),
    ("e3", "e4", "e3", {"e4": "1"}),
    ("e3", "e4", "e4", {"e3": "-1"}),
    ("e3", "xi", "e3", {"xi": "a"}),
    ("e3", "xi", "xi", {"e3": "a"}),
    ("e4", "xi", "e4", {"xi": "a"}),
    ("e4", "xi", "xi", {"e4": "a"}),
    ("e1", "e4", "e4", {"e1": "-1"}),
)

KENMOTSU_PRINTED = {
    "ricci_base": "-4",  # Ric(e_i, e_i), i = 1..4
    "ricci_xi": "3*a + 1",
    "scalar": "3*a - 15",
    "eta_ricci_lambda": "3",
    "eta_ricci_omega": "-(beta + 3*a + 4)",
    "eta_ricci_class": "expanding",
    "quasi_yamabe_lambda": "3*a - 16",
    "quasi_yamabe_mu": "1 - beta",
    "quasi_yamabe_threshold": "5",
    "nabla_star_xi_xi": "-2*a",
    "ricci_forms_c": "-1",
}

# Published claims for the three two- and three-dimensional examples.
EXAMPLE_PRINTED = {
    "hyperbolic2": {
        "constant_curvature": "0",
        "scalar": "0",
        "ricci_flat": True,
        "einstein": "0",
        "soliton_lambda": "0",
        "classification": "steady",
    },
    "flat2-einstein": {
        "constant_curvature": "-1",
        "scalar": "-2",
        "einstein": "-1",
        "classification": "shrinking",
    },
    "flat3-einstein": {
        "constant_curvature": "1/4*b^2",
        "scalar": "3/2*b^2",
        "einstein": "1/2*b^2",
        "classification": "expanding",
    },
}
