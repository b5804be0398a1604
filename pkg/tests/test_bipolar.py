"""Bipolar vertex analysis: multiplicities, tangent planes, domain decision,
area bounds and embeddedness."""

from fractions import Fraction

import numpy as np
import pytest

from lawson.bipolar import (INCONCLUSIVE, NOT_EMBEDDED, area_bounds,
                            area_bounds_closed, area_bounds_pipeline,
                            bipolar_orientability, bipolar_orientability_for,
                            branched_vertices, chi_bipolar_closed,
                            chi_surface_closed, classify_planes,
                            embeddedness_verdict, embeddedness_verdict_for,
                            fundamental_domain_decision, image_set_invariance,
                            multiplicity, tangent_planes,
                            tangent_planes_at_vertex,
                            vertex_plane_classifications, vertex_points)
from lawson.errors import (BranchRuleInapplicable, InconsistentEvidence,
                           MissingParity)
from lawson.exterior import EQUAL
from lawson.lattice import LatticeConfig


def test_vertex_points_are_unit_simple_bivectors():
    for family in ("xi", "eta"):
        points = vertex_points(family, LatticeConfig(m=3, k=3))
        for point in points.values():
            p = point.image
            assert np.linalg.norm(p) == pytest.approx(1.0)
            assert p[0] * p[5] - p[1] * p[4] + p[2] * p[3] == pytest.approx(0.0)


def test_multiplicity_oracles_xi():
    config = LatticeConfig(m=3, k=2)
    values = {label: multiplicity("xi", config, label).multiplicity
              for label in ("P0", "Q0", "P1", "Q1")}
    assert values == {"P0": 2, "P1": 2, "Q0": 3, "Q1": 3}


def test_multiplicity_oracles_eta_odd_k():
    config = LatticeConfig(m=2, k=3)
    values = {label: multiplicity("eta", config, label).multiplicity
              for label in ("Q0", "P1", "Q1", "-Q1")}
    assert values == {"Q0": 1, "P1": 3, "Q1": 2, "-Q1": 1}
    result = multiplicity("eta", config, "P1")
    assert not result.used_double_cover
    assert result.count == 3 and len(result.classes) == 3
    assert result.raw_count == 3 * 2 * config.m  # stabilizer order 2m


def test_multiplicity_oracles_eta_even_k():
    config = LatticeConfig(m=4, k=2)
    values = {label: multiplicity("eta", config, label).multiplicity
              for label in ("Q0", "P1", "Q1", "-Q1")}
    assert values == {"Q0": 2, "P1": 2, "Q1": 4, "-Q1": 2}
    result = multiplicity("eta", config, "Q1")
    assert result.used_double_cover  # mixed parity forces the signed cover
    assert len(result.solution_set) == result.raw_count
    with pytest.raises(MissingParity):
        multiplicity("eta", config, "Q1", use_double_cover=False)


@pytest.mark.parametrize("family", ["xi", "eta"])
@pytest.mark.parametrize("m,k", [(3, 2), (2, 3), (3, 3), (4, 3)])
def test_main_vertex_multiplicities(family, m, k):
    config = LatticeConfig(m=m, k=k)
    p_label = "P0" if family == "xi" else "P1"
    assert multiplicity(family, config, p_label).multiplicity == k
    assert multiplicity(family, config, "Q1").multiplicity == m


def test_branch_rule_inapplicable_at_right_angles():
    with pytest.raises(BranchRuleInapplicable):
        tangent_planes("eta", LatticeConfig(m=3, k=3), "Q0")  # angle pi/2
    with pytest.raises(BranchRuleInapplicable):
        tangent_planes("xi", LatticeConfig(m=3, k=2), "Q0")  # angle pi/k, k=2


def test_branched_vertices():
    assert branched_vertices("xi", LatticeConfig(m=3, k=2)) == ["P0", "P1"]
    assert branched_vertices("xi", LatticeConfig(m=3, k=3)) == ["P0", "Q0", "P1", "Q1"]
    assert branched_vertices("eta", LatticeConfig(m=2, k=3)) == ["Q1"]
    assert branched_vertices("eta", LatticeConfig(m=3, k=3)) == ["P1", "Q1"]


def test_tangent_plane_counts_match_multiplicity():
    config = LatticeConfig(m=3, k=3)
    for family in ("xi", "eta"):
        for label in branched_vertices(family, config):
            planes = tangent_planes(family, config, label, verify=True)
            mult = multiplicity(family, config, label).multiplicity
            assert len(planes.planes) == mult
            assert planes.exponents == tuple(range(mult))
            listed = tangent_planes_at_vertex(family, config, label)
            assert all(np.allclose(a.basis, b.basis)
                       for a, b in zip(listed, planes.planes))


def test_classification_patterns():
    # all distinct sheet planes at the (3, 3) vertices cross transversally
    for cls in vertex_plane_classifications("xi", LatticeConfig(m=3, k=3)).values():
        assert cls["counts"] == {"Equal": 0, "Partial": 0, "Transversal": 3}
    # even sheet count: plane alpha equals plane alpha + n/2, nothing else
    cls = vertex_plane_classifications("xi", LatticeConfig(m=4, k=4),
                                       stable=True)["P0"]
    n = cls["count"]
    assert n == 4
    for a in range(n // 2):
        assert cls["pairs"][(a, a + n // 2)] == EQUAL
    assert cls["counts"]["Equal"] == n // 2
    assert len(cls["pairs"]) == n * (n - 1) // 2
    # k = 2 branched P-vertices carry a single Equal pair
    cls = vertex_plane_classifications("xi", LatticeConfig(m=3, k=2))["P0"]
    assert cls["counts"] == {"Equal": 1, "Partial": 0, "Transversal": 0}


DECISION_ORACLES = [
    ("xi", 3, 2, "S", -2),
    ("xi", 3, 3, "S", -6),
    ("xi", 4, 4, "S_mod_minus_one", -8),
    ("eta", 2, 3, "S", -2),
    ("eta", 3, 2, "Sbar", -2),
    ("eta", 4, 2, "Sbar_mod_minus_one", -2),
]


@pytest.mark.parametrize("family,m,k,tag,chi", DECISION_ORACLES)
def test_fundamental_domain_decision(family, m, k, tag, chi):
    decision = fundamental_domain_decision(family, LatticeConfig(m=m, k=k))
    assert decision.tag == tag
    assert decision.chi == chi == chi_bipolar_closed(family, LatticeConfig(m=m, k=k))
    assert bipolar_orientability(decision)
    assert decision.chi_surface == chi_surface_closed(family, LatticeConfig(m=m, k=k))


def test_inconsistent_evidence():
    fake = {"P0": {"count": 4,
                   "pairs": {(0, 2): "Partial", (1, 3): "Equal"},
                   "counts": {"Equal": 1, "Partial": 1, "Transversal": 0}}}
    with pytest.raises(InconsistentEvidence):
        fundamental_domain_decision("xi", LatticeConfig(m=4, k=4),
                                    plane_classifications=fake)
    odd = {"P0": {"count": 3, "pairs": {}, "counts": {}}}
    with pytest.raises(InconsistentEvidence):
        fundamental_domain_decision("xi", LatticeConfig(m=4, k=4),
                                    plane_classifications=odd)


AREA_ORACLES = [
    ("xi", 3, 2, 12, 20),
    ("xi", 4, 2, 8, 12),
    ("xi", 3, 3, 12, 36),
    ("eta", 3, 2, 12, 36),
    ("eta", 4, 2, 8, 28),
    ("eta", 2, 3, 12, 28),
]


@pytest.mark.parametrize("family,m,k,lower,upper", AREA_ORACLES)
def test_area_bounds(family, m, k, lower, upper):
    config = LatticeConfig(m=m, k=k)
    bounds = area_bounds_closed(family, config)
    assert bounds.lower_over_pi == Fraction(lower)
    assert bounds.upper_over_pi == Fraction(upper)
    # the independent re-derivation must agree exactly
    decision = fundamental_domain_decision(family, config)
    assert area_bounds_pipeline(family, config, decision) == bounds
    assert area_bounds(family, config, decision=decision, verify=True) == bounds


def test_embeddedness_verdicts():
    assert embeddedness_verdict_for("xi", LatticeConfig(m=3, k=3)) == NOT_EMBEDDED
    assert embeddedness_verdict_for("eta", LatticeConfig(m=3, k=3)) == NOT_EMBEDDED
    # branched vertices with only Equal pairs prove nothing
    assert embeddedness_verdict_for("xi", LatticeConfig(m=3, k=2)) == INCONCLUSIVE
    assert embeddedness_verdict_for("eta", LatticeConfig(m=2, k=3)) == INCONCLUSIVE
    assert embeddedness_verdict({}) == INCONCLUSIVE


def test_bipolar_orientability_for():
    assert bipolar_orientability_for("eta", LatticeConfig(m=3, k=2))
    assert bipolar_orientability_for("xi", LatticeConfig(m=4, k=4))


@pytest.mark.parametrize("family,m,k", [("xi", 3, 2), ("eta", 2, 3), ("eta", 4, 2)])
def test_image_set_invariance(family, m, k):
    assert image_set_invariance(family, LatticeConfig(m=m, k=k))
