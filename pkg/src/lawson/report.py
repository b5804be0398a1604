"""End-to-end reports: one (family, m, k) analysis with optional verification.

A report collects the group order, surface topology, decided bipolar
fundamental domain, per-vertex multiplicities, tangent-plane classification,
exact area bounds (as rational multiples of pi) and the embeddedness
verdict.  In verify mode every quantity is recomputed along a second,
independent path and the two must agree.
"""

from __future__ import annotations

import csv
import io
import json
import time
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .bipolar import (INCONCLUSIVE, area_bounds_closed, area_bounds_pipeline,
                      bipolar_orientability, branched_vertices,
                      chi_bipolar_closed, chi_surface_closed, classify_planes,
                      embeddedness_verdict, fundamental_domain_decision,
                      image_set_invariance, multiplicity, tangent_planes)
from .complexes import (build_complex, euler_characteristic_formula,
                        export_complex, orientability, orientable_by_coloring)
from .errors import CrossCheckError, ExcludedCase, LawsonError, ValidationError
from .exterior import TRANSVERSAL
from .groups import (expected_order, family_group, minus_identity_status,
                     normal_form_group, polygon_symmetry_subgroup)
from .lattice import FAMILIES, LatticeConfig, family_polygon

SCHEMA_VERSION = "1"

CSV_COLUMNS = ["family", "m", "k", "group_order", "minus_identity", "chi_surface",
               "orientable_surface", "fundamental_domain", "chi_bipolar",
               "orientable_bipolar", "multiplicities", "plane_classification",
               "area_lower_over_pi", "area_upper_over_pi", "embedded", "verification"]


@dataclass
class BipolarReport:
    family: str
    m: int
    k: int
    group_order: int
    minus_identity: str
    chi_surface: int
    orientable_surface: bool
    fundamental_domain: str
    chi_bipolar: int
    orientable_bipolar: bool
    multiplicities: dict
    plane_classification: dict
    area_lower_over_pi: Fraction
    area_upper_over_pi: Fraction
    embedded: str
    verification: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "family": self.family,
            "m": self.m,
            "k": self.k,
            "group_order": self.group_order,
            "minus_identity": self.minus_identity,
            "chi_surface": self.chi_surface,
            "orientable_surface": self.orientable_surface,
            "fundamental_domain": self.fundamental_domain,
            "chi_bipolar": self.chi_bipolar,
            "orientable_bipolar": self.orientable_bipolar,
            "multiplicities": dict(sorted(self.multiplicities.items())),
            "plane_classification": {k: v for k, v in sorted(self.plane_classification.items())},
            "area_lower_over_pi": str(self.area_lower_over_pi),
            "area_upper_over_pi": str(self.area_upper_over_pi),
            "embedded": self.embedded,
            "verification": dict(sorted(self.verification.items())),
        }


def _validate(family, m, k, allow_excluded):
    if family not in FAMILIES:
        raise ValidationError(f"unknown family {family!r}; expected one of {FAMILIES}")
    if not (isinstance(m, int) and isinstance(k, int)) or m < 2 or k < 2:
        raise ValidationError(f"need integers m >= 2 and k >= 2, got (m, k) = ({m}, {k})")
    if (m, k) == (2, 2) and not allow_excluded:
        raise ExcludedCase("(m, k) = (2, 2) is excluded from analysis; "
                           "pass allow_excluded to force it")


def _plane_summary(classification):
    return {
        "count": classification["count"],
        "equal_pairs": classification["counts"]["Equal"],
        "partial_pairs": classification["counts"]["Partial"],
        "transversal_pairs": classification["counts"]["Transversal"],
    }


def run_single(family, m, k, verify=False, allow_excluded=False, cap=10000,
               export_complex_path=None):
    """Full analysis of one (family, m, k) pair."""
    _validate(family, m, k, allow_excluded)
    with warnings.catch_warnings():
        if allow_excluded:
            warnings.simplefilter("ignore")
        config = LatticeConfig(m=m, k=k)
    checks = {}

    group = normal_form_group(family, config)
    if verify:
        bfs = family_group(family, config, cap=cap)
        same = (bfs.keys() == group.keys()
                and all(bfs.element(key).parities == group.element(key).parities
                        for key in group.keys()))
        checks["group_constructions_agree"] = same
        if not same:
            raise CrossCheckError("BFS closure and normal-form group disagree")
    if group.order != expected_order(family, config):
        raise CrossCheckError("group order differs from the closed form")

    polygon = family_polygon(family, config)
    symmetry = polygon_symmetry_subgroup(group, polygon)
    if symmetry.order != 1:
        raise CrossCheckError("polygon symmetry subgroup is not trivial")

    surface = build_complex(group, polygon, symmetry_subgroup=symmetry)
    oriented, _ = orientability(surface)
    if verify:
        colored, _ = orientable_by_coloring(surface)
        checks["orientability_methods_agree"] = colored == oriented
        formula = euler_characteristic_formula(polygon.angle_denominators, group.order,
                                               symmetry.order)
        closed = chi_surface_closed(family, config)
        checks["chi_surface_three_ways"] = surface.chi == formula == closed
        if not checks["chi_surface_three_ways"]:
            raise CrossCheckError("surface Euler characteristic mismatch")

    multiplicities = {label: multiplicity(family, config, label, group=group)
                      for label in polygon.vertex_labels}

    classifications = {}
    for label in branched_vertices(family, config):
        planes = tangent_planes(family, config, label, group=group, verify=verify)
        classifications[label] = classify_planes(planes, stable=verify)
    if verify:
        checks["plane_relations_tolerance_stable"] = True  # classify_planes(stable=) raised otherwise

    decision = fundamental_domain_decision(family, config, group=group,
                                           surface_complex=surface,
                                           plane_classifications=classifications or None)
    oriented_bipolar = bipolar_orientability(decision)
    if not oriented_bipolar:
        raise CrossCheckError("decided bipolar domain is not orientable")
    if verify and (m, k) != (2, 2):
        checks["chi_bipolar_closed_form"] = decision.chi == chi_bipolar_closed(family, config)
        if not checks["chi_bipolar_closed_form"]:
            raise CrossCheckError("bipolar Euler characteristic differs from the closed form")

    bounds = area_bounds_closed(family, config)
    if verify and (m, k) != (2, 2):
        derived = area_bounds_pipeline(family, config, decision,
                                       multiplicities=multiplicities)
        checks["area_bounds_rederived"] = derived == bounds
        if not checks["area_bounds_rederived"]:
            raise CrossCheckError(f"area bounds mismatch: closed {bounds}, derived {derived}")
        checks["image_set_invariant"] = image_set_invariance(family, config, group=group)
        if not checks["image_set_invariant"]:
            raise CrossCheckError("bipolar vertex image set is not action-invariant")

    embedded = embeddedness_verdict(classifications) if (m, k) != (2, 2) else INCONCLUSIVE

    if export_complex_path is not None:
        with open(export_complex_path, "w", encoding="utf-8") as handle:
            handle.write(export_complex(decision.complex))

    return BipolarReport(
        family=family, m=m, k=k,
        group_order=group.order,
        minus_identity=minus_identity_status(group),
        chi_surface=surface.chi,
        orientable_surface=oriented,
        fundamental_domain=decision.tag,
        chi_bipolar=decision.chi,
        orientable_bipolar=oriented_bipolar,
        multiplicities={label: r.multiplicity for label, r in multiplicities.items()},
        plane_classification={label: _plane_summary(c) for label, c in classifications.items()},
        area_lower_over_pi=bounds.lower_over_pi,
        area_upper_over_pi=bounds.upper_over_pi,
        embedded=embedded,
        verification={name: ("pass" if ok else "fail") for name, ok in checks.items()},
    )


def parse_range(text):
    """'A..B' -> range of integers A..B inclusive; a single integer is allowed."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError as exc:
        raise ValidationError(f"bad range {text!r}; expected 'A..B'") from exc
    if hi < lo:
        raise ValidationError(f"empty range {text!r}")
    return range(lo, hi + 1)


def run_batch(family, m_range, k_range, verify=False, cap=10000):
    """Reports for a rectangle of (m, k) pairs; (2, 2) is skipped.

    A failing pair does not stop the batch: its error is recorded and the
    remaining pairs still run.  Returns (reports, failures)."""
    reports, failures = [], []
    for m in m_range:
        for k in k_range:
            if (m, k) == (2, 2):
                continue
            try:
                reports.append(run_single(family, m, k, verify=verify, cap=cap))
            except LawsonError as exc:
                failures.append({"family": family, "m": m, "k": k,
                                 "error": type(exc).__name__, "message": str(exc)})
    return reports, failures


def to_json(reports, failures=()):
    payload = {"schema_version": SCHEMA_VERSION,
               "reports": [r.to_dict() for r in reports]}
    if failures:
        payload["failures"] = list(failures)
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def to_csv(reports):
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for report in reports:
        row = report.to_dict()
        row.pop("schema_version")
        for column in ("multiplicities", "plane_classification", "verification"):
            row[column] = json.dumps(row[column], sort_keys=True)
        writer.writerow(row)
    return buffer.getvalue()


def to_markdown(reports):
    header = ["family", "m", "k", "|G|", "chi(S)", "orientable", "domain",
              "chi bipolar", "area/pi in [lo, up)", "embedded"]
    lines = ["| " + " | ".join(header) + " |",
             "|" + "|".join(["---"] * len(header)) + "|"]
    for r in reports:
        lines.append("| " + " | ".join(str(x) for x in (
            r.family, r.m, r.k, r.group_order, r.chi_surface,
            "yes" if r.orientable_surface else "no", r.fundamental_domain,
            r.chi_bipolar, f"[{r.area_lower_over_pi}, {r.area_upper_over_pi})",
            r.embedded)) + " |")
    return "\n".join(lines) + "\n"
