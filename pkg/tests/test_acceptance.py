"""Acceptance gate: the nine headline checks over the full 2..8 grid.

Each test prints one summary line so a `pytest -v -s` run reads as a
checklist.  Heavy intermediates are cached and shared across the tests.
"""

import time
from fractions import Fraction
from functools import lru_cache

import pytest

from lawson.bipolar import (area_bounds_closed, area_bounds_pipeline,
                            bipolar_orientability, branched_vertices,
                            chi_bipolar_closed, chi_surface_closed,
                            classify_planes, fundamental_domain_decision,
                            multiplicity, tangent_planes)
from lawson.complexes import (build_complex, euler_characteristic_formula,
                              orientability, orientable_by_coloring)
from lawson.exterior import EQUAL, TRANSVERSAL
from lawson.groups import (ABSENT, PRESENT_EVEN, PRESENT_ODD, expected_order,
                           family_group, minus_identity_status,
                           normal_form_group)
from lawson.lattice import LatticeConfig, family_polygon
from lawson.report import run_batch

GRID = [(m, k) for m in range(2, 9) for k in range(2, 9) if (m, k) != (2, 2)]
FAMILIES = ("xi", "eta")


@lru_cache(maxsize=None)
def group(family, m, k):
    return normal_form_group(family, LatticeConfig(m=m, k=k))


@lru_cache(maxsize=None)
def surface(family, m, k):
    config = LatticeConfig(m=m, k=k)
    return build_complex(group(family, m, k), family_polygon(family, config))


@lru_cache(maxsize=None)
def classifications(family, m, k):
    config = LatticeConfig(m=m, k=k)
    out = {}
    for label in branched_vertices(family, config):
        planes = tangent_planes(family, config, label, group=group(family, m, k))
        out[label] = classify_planes(planes, stable=True)
    return out


@lru_cache(maxsize=None)
def decision(family, m, k):
    return fundamental_domain_decision(family, LatticeConfig(m=m, k=k),
                                       group=group(family, m, k),
                                       surface_complex=surface(family, m, k),
                                       plane_classifications=classifications(family, m, k) or None)


def test_criterion_1_group_orders():
    for family in FAMILIES:
        for m, k in GRID:
            start = time.perf_counter()
            bfs = family_group(family, LatticeConfig(m=m, k=k))
            forms = group(family, m, k)
            elapsed = time.perf_counter() - start
            expected = 2 * m * k if family == "xi" or k % 2 == 0 else 4 * m * k
            assert bfs.order == forms.order == expected
            assert expected == expected_order(family, LatticeConfig(m=m, k=k))
            assert bfs.keys() == forms.keys()
            for key in forms.keys():
                assert bfs.element(key).parities == forms.element(key).parities
            assert elapsed < 1.0, (family, m, k, elapsed)
    print("criterion 1 (group orders, two constructions, < 1 s/pair): pass")


def test_criterion_2_euler_characteristic_three_ways():
    for family in FAMILIES:
        for m, k in GRID:
            config = LatticeConfig(m=m, k=k)
            combinatorial = surface(family, m, k).chi
            polygon = family_polygon(family, config)
            formula = euler_characteristic_formula(polygon, group(family, m, k).order)
            base = 1 - (m - 1) * (k - 1)
            if family == "xi" or k % 2:
                closed = 2 * base
            else:
                closed = base
            assert combinatorial == formula == closed == chi_surface_closed(family, config)
    print("criterion 2 (chi: combinatorial = formula = closed form): pass")


def test_criterion_3_orientability():
    for family in FAMILIES:
        for m, k in GRID:
            cx = surface(family, m, k)
            by_parity, _ = orientability(cx)
            by_coloring, _ = orientable_by_coloring(cx)
            assert by_parity == by_coloring
            if family == "xi":
                assert by_parity
            else:
                assert by_parity == (k % 2 == 1)
    print("criterion 3 (orientability, two methods, xi/eta pattern): pass")


def test_criterion_4_multiplicities():
    for family in FAMILIES:
        for m, k in GRID:
            config = LatticeConfig(m=m, k=k)
            p_label = "P0" if family == "xi" else "P1"
            p = multiplicity(family, config, p_label, group=group(family, m, k))
            q = multiplicity(family, config, "Q1", group=group(family, m, k))
            assert p.multiplicity == k, (family, m, k)
            assert q.multiplicity == m, (family, m, k)
    print("criterion 4 (P-vertex multiplicity k, Q-vertex multiplicity m): pass")


def test_criterion_5_equality_pattern_and_stability():
    for family in FAMILIES:
        for m, k in GRID:
            for label, cls in classifications(family, m, k).items():
                n = cls["count"]  # k at P-vertices, m at Q-vertices
                for (a, b), rel in cls["pairs"].items():
                    expect_equal = (n % 2 == 0 and (b - a) % n == n // 2)
                    assert (rel == EQUAL) == expect_equal, (family, m, k, label, a, b)
    print("criterion 5a (plane alpha = plane 0 iff alpha in {0, n/2}, "
          "stable at 1e-6/1e-9/1e-12): pass")


def test_criterion_5_transversal_existence_as_stated():
    missing = []
    for family in FAMILIES:
        for m, k in GRID:
            if m > 2 or k > 2:
                found = any(cls["counts"][TRANSVERSAL] > 0
                            for cls in classifications(family, m, k).values())
                if not found:
                    missing.append((family, m, k))
    status = "pass" if not missing else f"fail ({len(missing)} pairs without one)"
    print(f"criterion 5b (some Transversal pair whenever m > 2 or k > 2): {status}")
    # As stated this fails at (m, 2) and (2, k): the only branched vertices
    # there carry exactly two sheets, whose tangent planes coincide.
    assert not missing, missing


def test_criterion_6_minus_identity_and_free_quotient():
    for family in FAMILIES:
        for m, k in GRID:
            status = minus_identity_status(group(family, m, k))
            both_even = m % 2 == 0 and k % 2 == 0
            if family == "xi" or k % 2 == 0:
                assert status == (PRESENT_EVEN if both_even else ABSENT)
            else:
                assert status == (PRESENT_ODD if m % 2 == 0 else ABSENT)
            d = decision(family, m, k)
            # quotient taken exactly when -identity acts on the decided domain:
            # as an even word on the orientable surface, or at all on the
            # orientation double cover; freeness on every cell is verified
            # inside the quotient construction
            if d.orientable_surface:
                expected_quotient = status == PRESENT_EVEN
            else:
                expected_quotient = status != ABSENT
            assert d.quotient_applied == expected_quotient
    print("criterion 6 (-identity detection and free quotient action): pass")


def test_criterion_7_bipolar_chi_and_orientability():
    for family in FAMILIES:
        for m, k in GRID:
            d = decision(family, m, k)
            base = 1 - (m - 1) * (k - 1)
            closed = base if (m % 2 == 0 and k % 2 == 0) else 2 * base
            assert d.chi == closed == chi_bipolar_closed(family, LatticeConfig(m=m, k=k))
            assert bipolar_orientability(d)
    print("criterion 7 (bipolar chi matches the closed forms; always orientable): pass")


def test_criterion_8_area_bounds():
    for family in FAMILIES:
        for m, k in GRID:
            config = LatticeConfig(m=m, k=k)
            closed = area_bounds_closed(family, config)
            prefactor = 2 if (m % 2 == 0 and k % 2 == 0) else 4
            assert closed.lower_over_pi == Fraction(prefactor * max(m, k))
            if family == "xi":
                assert closed.upper_over_pi == Fraction(prefactor * (m * k + k - m))
            else:
                assert closed.upper_over_pi == Fraction(prefactor * (3 * m * k - 3 * k - m))
            derived = area_bounds_pipeline(family, config, decision(family, m, k))
            assert derived == closed, (family, m, k)
    print("criterion 8 (area bounds: closed forms = independent re-derivation): pass")


def test_criterion_9_full_grid_verify_runtime():
    start = time.perf_counter()
    for family in FAMILIES:
        reports, failures = run_batch(family, range(2, 9), range(2, 9), verify=True)
        assert not failures, failures
        assert len(reports) == len(GRID)
        for report in reports:
            assert set(report.verification.values()) == {"pass"}
    elapsed = time.perf_counter() - start
    print(f"criterion 9 (full 2..8 grid, both families, verify mode): "
          f"pass in {elapsed:.1f} s")
    assert elapsed < 60.0
