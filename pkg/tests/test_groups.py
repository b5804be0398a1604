"""Reflection groups: closure vs normal forms, parity, subgroups, status."""

import numpy as np
import pytest

from lawson.errors import (CapExceeded, NonInvolutiveGenerator,
                           ParityUndefined, ValidationError)
from lawson.groups import (ABSENT, PRESENT_EVEN, PRESENT_ODD,
                           NormalFormElement, canonical_key, closure,
                           expected_order, family_group,
                           minus_identity_status, normal_form_elements,
                           normal_form_group, parity,
                           polygon_symmetry_subgroup, stabilizer)
from lawson.lattice import (LatticeConfig, R00, family_polygon, rot12,
                            xi_polygon)

CONFIGS = [(3, 2), (2, 3), (4, 2), (3, 3), (4, 4), (2, 4)]


def test_canonical_key_collapses_signed_zero():
    a = np.zeros((4, 4))
    b = np.zeros((4, 4))
    b[0, 0] = -0.0
    assert canonical_key(a) == canonical_key(b)
    assert canonical_key(np.eye(4)) != canonical_key(-np.eye(4))


def test_closure_basics():
    group = closure([R00])
    assert group.order == 2
    assert R00 in group and np.eye(4) in group
    assert group.parity(canonical_key(R00)) == 1
    assert group.parity(canonical_key(np.eye(4))) == 0


def test_closure_rejects_bad_generators():
    with pytest.raises(NonInvolutiveGenerator):
        closure([rot12(np.pi / 3)])  # orthogonal but not an involution
    with pytest.raises(NonInvolutiveGenerator):
        closure([2.0 * np.eye(4)])  # involutive up to scale, not orthogonal
    with pytest.raises(NonInvolutiveGenerator):
        closure([np.eye(3)])


def test_closure_cap():
    with pytest.raises(CapExceeded):
        family_group("xi", LatticeConfig(m=3, k=2), cap=10)


@pytest.mark.parametrize("family", ["xi", "eta"])
@pytest.mark.parametrize("m,k", CONFIGS)
def test_two_constructions_agree(family, m, k):
    config = LatticeConfig(m=m, k=k)
    bfs = family_group(family, config)
    forms = normal_form_group(family, config)
    assert bfs.order == forms.order == expected_order(family, config)
    assert bfs.keys() == forms.keys()
    for key in forms.keys():
        assert bfs.element(key).parities == forms.element(key).parities


def test_expected_orders():
    assert expected_order("xi", LatticeConfig(m=3, k=2)) == 12
    assert expected_order("eta", LatticeConfig(m=3, k=2)) == 12  # k even
    assert expected_order("eta", LatticeConfig(m=2, k=3)) == 24  # k odd
    with pytest.raises(ValidationError):
        expected_order("zeta", LatticeConfig(m=3, k=2))


def test_normal_form_multiplication_matches_matrices():
    for family, m, k in [("xi", 3, 4), ("eta", 3, 3), ("eta", 4, 2)]:
        elements = normal_form_elements(family, LatticeConfig(m=m, k=k))
        rng = np.random.default_rng(11)
        for _ in range(40):
            a, b = rng.choice(len(elements), size=2)
            prod = elements[a].multiply(elements[b])
            assert np.allclose(prod.matrix(),
                               elements[a].matrix() @ elements[b].matrix(),
                               atol=1e-12)


def test_parity_values():
    nf = NormalFormElement("xi", 3, 4, (1, 2, 1))
    assert parity(nf) == 1
    assert parity(NormalFormElement("xi", 3, 4, (2, 1, 0))) == 0
    assert parity(NormalFormElement("eta_odd_k", 2, 3, (1, 0, 0, 0))) == 1
    assert parity(NormalFormElement("eta_odd_k", 2, 3, (1, 0, 0, 1))) == 0
    with pytest.raises(ParityUndefined):
        parity(NormalFormElement("eta_even_k", 3, 2, (0, 0, 0)))


def test_mixed_parity_group():
    group = normal_form_group("eta", LatticeConfig(m=3, k=2))
    assert group.has_mixed_parity and not group.orientable_quotient_flag
    for element in group:
        assert element.parities == frozenset({0, 1})
    with pytest.raises(ParityUndefined):
        group.parity(canonical_key(np.eye(4)))
    odd_k = normal_form_group("eta", LatticeConfig(m=2, k=3))
    assert not odd_k.has_mixed_parity and odd_k.orientable_quotient_flag


def test_stabilizer_orders():
    config = LatticeConfig(m=3, k=2)
    group = family_group("xi", config)
    polygon = xi_polygon(config)
    circles = [arc.circle for arc in polygon.arcs]
    # P0 sits on two circles meeting at angle pi/m -> dihedral of order 2m
    assert stabilizer(group, polygon.vertex("P0"), circles).order == 2 * config.m
    assert stabilizer(group, polygon.vertex("Q0"), circles).order == 2 * config.k
    edge_point = polygon.arcs[0].point(0.3)
    assert stabilizer(group, edge_point, circles).order == 2
    interior = np.array([0.5, 0.5, 0.5, 0.5])
    assert stabilizer(group, interior, circles).order == 1


@pytest.mark.parametrize("family,m,k", [("xi", 3, 2), ("eta", 2, 3), ("eta", 4, 2)])
def test_polygon_symmetry_trivial_for_families(family, m, k):
    config = LatticeConfig(m=m, k=k)
    group = family_group(family, config)
    polygon = family_polygon(family, config)
    assert polygon_symmetry_subgroup(group, polygon).order == 1


def test_polygon_symmetry_detects_block_swap():
    # swapping the two coordinate planes maps the (2, 2) quadrilateral,
    # whose vertices are the four standard basis vectors, onto itself
    with pytest.warns(UserWarning):
        config = LatticeConfig(m=2, k=2)
    swap = np.block([[np.zeros((2, 2)), np.eye(2)],
                     [np.eye(2), np.zeros((2, 2))]])
    group = closure([swap])
    polygon = xi_polygon(config)
    assert polygon_symmetry_subgroup(group, polygon).order == 2


def test_minus_identity_status_table():
    cases = [("xi", 4, 4, PRESENT_EVEN), ("xi", 4, 2, PRESENT_EVEN),
             ("xi", 3, 2, ABSENT), ("xi", 3, 3, ABSENT),
             ("eta", 4, 2, PRESENT_EVEN), ("eta", 2, 4, PRESENT_EVEN),
             ("eta", 2, 3, PRESENT_ODD), ("eta", 4, 3, PRESENT_ODD),
             ("eta", 3, 2, ABSENT), ("eta", 3, 3, ABSENT)]
    for family, m, k, expected in cases:
        group = normal_form_group(family, LatticeConfig(m=m, k=k))
        assert minus_identity_status(group) == expected, (family, m, k)
