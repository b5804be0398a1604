"""Vertex-level analysis of the bipolar surface of a tessellated surface.

The bipolar map sends a surface point x with unit normal nu(x) to the
simple bivector x ^ nu(x) in R^6 (up to the sign carried by the word
parity).  At a polygon vertex all tessellation sheets through the vertex
map to the same bivector; this module counts those sheets by brute force,
enumerates their tangent 2-planes through the branch rule, decides the
smallest fundamental domain, and turns the data into Euler characteristic,
area bounds and an embeddedness verdict.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import (BranchRuleInapplicable, CrossCheckError,
                     InconsistentEvidence, MissingParity, ValidationError)
from .exterior import (EPS, EQUAL, PARTIAL, TRANSVERSAL, Plane2in6,
                       plane_relation, plane_relation_stable, wedge2)
from .groups import (ABSENT, PRESENT_EVEN, ReflectionGroup, canonical_key,
                     closure, minus_identity_status, normal_form_group)
from .lattice import (ETA, XI, LatticeConfig, family_polygon,
                      polar_vertex_data, rot12, rot34)
from .complexes import (build_complex, double_cover, euler_characteristic_formula,
                        orientability, orientable_by_coloring,
                        quotient_by_minus_identity)

S_DOMAIN = "S"
S_QUOTIENT = "S_mod_minus_one"
SBAR_DOMAIN = "Sbar"
SBAR_QUOTIENT = "Sbar_mod_minus_one"

NOT_EMBEDDED = "NotEmbedded"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class BipolarVertexPoint:
    label: str
    base: np.ndarray = field(repr=False)
    normal: np.ndarray = field(repr=False)
    image: np.ndarray = field(repr=False)  # bivector in R^6


def vertex_points(family, config: LatticeConfig):
    """The bivector image point base ^ normal for every polygon vertex."""
    polygon = family_polygon(family, config)
    polar = polar_vertex_data(family, config)
    out = {}
    for label in polygon.vertex_labels:
        base = polygon.vertex(label)
        normal = polar[label]
        out[label] = BipolarVertexPoint(label=label, base=base, normal=normal,
                                        image=wedge2(base, normal))
    return out


@dataclass(frozen=True)
class MultiplicityResult:
    label: str
    raw_count: int
    multiplicity: int
    classes: tuple  # frozensets of element keys, or of (sheet, key) pairs
    used_double_cover: bool

    @property
    def count(self):
        return self.multiplicity

    @property
    def solution_set(self):
        return sorted(x for cls in self.classes for x in cls)


def _vertex_index(polygon, label):
    return polygon.vertex_labels.index(label)


def _vertex_stabilizer(polygon, index):
    return closure([polygon.reflections[index - 1], polygon.reflections[index]])


def multiplicity(family, config: LatticeConfig, label, group: ReflectionGroup | None = None,
                 use_double_cover: bool | None = None, eps=EPS):
    """Brute-force sheet count of the bipolar image of a polygon vertex.

    Counts the solutions g of (-1)^parity(g) . (g base) ^ (g normal) = image
    over the whole group and divides by the vertex stabilizer order.  When
    the group has mixed-parity elements the count runs over (sheet, g) pairs
    of the orientation double cover with sign (-1)^sheet instead."""
    if group is None:
        group = normal_form_group(family, config)
    polygon = family_polygon(family, config)
    index = _vertex_index(polygon, label)
    stab = _vertex_stabilizer(polygon, index)
    point = vertex_points(family, config)[label]

    if use_double_cover is None:
        use_double_cover = group.has_mixed_parity
    if group.has_mixed_parity and not use_double_cover:
        raise MissingParity("signed count needs parities; group has mixed-parity "
                            "elements and the double cover was disabled")

    solutions = set()
    for element in group:
        moved = wedge2(element.matrix @ point.base, element.matrix @ point.normal)
        if use_double_cover:
            for sheet in (0, 1):
                if np.max(np.abs((-1.0) ** sheet * moved - point.image)) <= eps:
                    solutions.add((sheet, element.key))
        else:
            sign = (-1.0) ** group.parity(element.key)
            if np.max(np.abs(sign * moved - point.image)) <= eps:
                solutions.add(element.key)

    matrices = {e.key: e.matrix for e in group}
    classes = []
    assigned = set()
    for sol in sorted(solutions):
        if sol in assigned:
            continue
        if use_double_cover:
            sheet, key = sol
            cls = frozenset(((sheet + stab.parity(u.key)) % 2,
                             canonical_key(matrices[key] @ u.matrix)) for u in stab)
        else:
            cls = frozenset(canonical_key(matrices[sol] @ u.matrix) for u in stab)
        if not cls <= solutions:
            raise CrossCheckError("solution set is not a union of stabilizer cosets")
        classes.append(cls)
        assigned |= cls

    count = len(solutions)
    if count % stab.order or len(classes) * stab.order != count:
        raise CrossCheckError("solution count is not a whole number of stabilizer cosets")
    return MultiplicityResult(label=label, raw_count=count, multiplicity=count // stab.order,
                              classes=tuple(classes), used_double_cover=use_double_cover)


def _is_p_type(vertex, eps=EPS):
    return abs(vertex[2]) <= eps and abs(vertex[3]) <= eps


def _incident_tangents(polygon, index):
    incoming = polygon.arcs[index - 1]
    outgoing = polygon.arcs[index]
    length = incoming.length
    u1, u2 = incoming._frame()
    t_in = -np.sin(length) * u1 + np.cos(length) * u2
    _, t_out = outgoing._frame()
    return t_in, t_out


@dataclass(frozen=True)
class TangentPlaneFamily:
    label: str
    vertex_kind: str  # "P" or "Q"
    exponents: tuple[int, ...]
    planes: tuple  # Plane2in6, aligned with exponents


def tangent_planes(family, config: LatticeConfig, label,
                   group: ReflectionGroup | None = None, verify=False, eps=EPS):
    """Tangent 2-planes of the bipolar sheets at a branched vertex.

    Applicable only where the interior angle is pi/n with n > 2 (the branch
    rule); otherwise BranchRuleInapplicable.  Sheet alpha is the image of
    the base tangent plane under the bivector action of the alpha-th power
    of the circle rotation, with the powers verified to enumerate the
    brute-force solution classes."""
    if group is None:
        group = normal_form_group(family, config)
    polygon = family_polygon(family, config)
    index = _vertex_index(polygon, label)
    if polygon.angle_denominators[index] <= 2:
        raise BranchRuleInapplicable(
            f"vertex {label} has interior angle pi/{polygon.angle_denominators[index]}; "
            "the branch rule needs an angle below pi/2")

    vertex = polygon.vertices[index]
    if _is_p_type(vertex):
        kind, count = "P", config.k
        rotation = rot12(2.0 * np.pi / config.k)
    else:
        kind, count = "Q", config.m
        rotation = rot34(2.0 * np.pi / config.m)

    result = multiplicity(family, config, label, group=group, eps=eps)
    if result.multiplicity != count:
        raise CrossCheckError(f"multiplicity {result.multiplicity} at {label} does not "
                              f"match the rotation order {count}")

    powers = {}
    power = np.eye(4)
    for alpha in range(count):
        powers[alpha] = power
        power = power @ rotation

    # match each solution class to the unique rotation power it contains
    class_of = {}
    for alpha in range(count):
        key = canonical_key(powers[alpha])
        hits = [cls for cls in result.classes
                if (key in cls if not result.used_double_cover
                    else any(pair[1] == key for pair in cls))]
        if len(hits) != 1:
            raise CrossCheckError("rotation powers do not enumerate the solution classes")
        if id(hits[0]) in class_of:
            raise CrossCheckError("two rotation powers landed in one solution class")
        class_of[id(hits[0])] = alpha

    normal = polar_vertex_data(family, config)[label]
    t_in, t_out = _incident_tangents(polygon, index)
    planes = []
    for alpha in range(count):
        g = powers[alpha]
        planes.append(Plane2in6.from_spanners(wedge2(g @ t_in, g @ normal),
                                              wedge2(g @ t_out, g @ normal), eps=eps))

    if verify:
        matrices = {e.key: e.matrix for e in group}
        for cls in result.classes:
            alpha = class_of[id(cls)]
            rep = sorted(cls)[0]
            g = matrices[rep[1] if result.used_double_cover else rep]
            other = Plane2in6.from_spanners(wedge2(g @ t_in, g @ normal),
                                            wedge2(g @ t_out, g @ normal), eps=eps)
            if plane_relation(planes[alpha], other, eps=eps) != EQUAL:
                raise CrossCheckError("tangent plane depends on the coset representative")

    return TangentPlaneFamily(label=label, vertex_kind=kind,
                              exponents=tuple(range(count)), planes=tuple(planes))


def classify_planes(family_planes: TangentPlaneFamily, stable=False, eps=EPS):
    """Pairwise relations of the sheet tangent planes at one vertex."""
    planes = family_planes.planes
    pairs = {}
    counts = {EQUAL: 0, PARTIAL: 0, TRANSVERSAL: 0}
    for a in range(len(planes)):
        for b in range(a + 1, len(planes)):
            if stable:
                rel = plane_relation_stable(planes[a], planes[b])
            else:
                rel = plane_relation(planes[a], planes[b], eps=eps)
            pairs[(a, b)] = rel
            counts[rel] += 1
    return {"count": len(planes), "pairs": pairs, "counts": counts}


def branched_vertices(family, config: LatticeConfig):
    polygon = family_polygon(family, config)
    return [label for label, n in zip(polygon.vertex_labels, polygon.angle_denominators)
            if n > 2]


def chi_surface_closed(family, config: LatticeConfig):
    """Closed form for chi of the tessellated surface itself."""
    base = config.m + config.k - config.m * config.k
    if family == XI:
        return 2 * base
    if family == ETA:
        return 2 * base if config.k % 2 else base
    raise ValidationError(f"unknown family {family!r}")


def chi_bipolar_closed(family, config: LatticeConfig):
    """Closed form for chi of the decided bipolar fundamental domain:
    1 - (m-1)(k-1) when m and k are both even, twice that otherwise."""
    base = 1 - (config.m - 1) * (config.k - 1)
    both_even = config.m % 2 == 0 and config.k % 2 == 0
    return base if both_even else 2 * base


@dataclass
class DomainDecision:
    tag: str
    complex: object
    chi: int
    surface_complex: object
    chi_surface: int
    orientable_surface: bool
    minus_identity: str
    quotient_applied: bool
    cover_used: bool


def fundamental_domain_decision(family, config: LatticeConfig,
                                group: ReflectionGroup | None = None,
                                surface_complex=None, plane_classifications=None):
    """Smallest domain on which the bipolar map is a well-defined immersion.

    Orientable surface: the surface itself, or its quotient by -identity
    when -identity is an even-parity element.  Non-orientable surface: the
    orientation double cover, quotiented by -identity whenever -identity
    belongs to the group.  When the quotient is taken, the sheet tangent
    planes at every branched vertex must pair up (sheet alpha equal to
    sheet alpha + n/2), otherwise the evidence is inconsistent."""
    if group is None:
        group = normal_form_group(family, config)
    polygon = family_polygon(family, config)
    if surface_complex is None:
        surface_complex = build_complex(group, polygon)
    oriented, _ = orientability(surface_complex)
    status = minus_identity_status(group)

    if oriented:
        if status == PRESENT_EVEN:
            domain, tag, quotient, cover = (quotient_by_minus_identity(surface_complex),
                                            S_QUOTIENT, True, False)
        else:
            domain, tag, quotient, cover = surface_complex, S_DOMAIN, False, False
    else:
        covered = double_cover(surface_complex)
        if status != ABSENT:
            domain, tag, quotient, cover = (quotient_by_minus_identity(covered),
                                            SBAR_QUOTIENT, True, True)
        else:
            domain, tag, quotient, cover = covered, SBAR_DOMAIN, False, True

    if quotient:
        if plane_classifications is None:
            plane_classifications = {}
            for label in branched_vertices(family, config):
                plane_classifications[label] = classify_planes(
                    tangent_planes(family, config, label, group=group))
        for label, cls in plane_classifications.items():
            n = cls["count"]
            if n % 2:
                raise InconsistentEvidence(
                    f"quotient taken but vertex {label} has an odd sheet count {n}")
            for a in range(n // 2):
                if cls["pairs"][(a, a + n // 2)] != EQUAL:
                    raise InconsistentEvidence(
                        f"quotient taken but sheets {a} and {a + n // 2} at {label} "
                        "are not tangent")

    return DomainDecision(tag=tag, complex=domain, chi=domain.chi,
                          surface_complex=surface_complex, chi_surface=surface_complex.chi,
                          orientable_surface=oriented, minus_identity=status,
                          quotient_applied=quotient, cover_used=cover)


def bipolar_orientability(decision: DomainDecision):
    """The decided bipolar domain must be orientable (2-coloring test)."""
    oriented, _ = orientable_by_coloring(decision.complex)
    return oriented


@dataclass(frozen=True)
class AreaBounds:
    """Strict bounds  lower <= area < upper,  both exact multiples of pi."""
    lower_over_pi: Fraction
    upper_over_pi: Fraction


def area_bounds_closed(family, config: LatticeConfig):
    """Closed forms: prefactor 2 pi when m and k are both even, else 4 pi;
    lower bound max(m, k) prefactors, upper bound (mk + k - m) for xi and
    (3mk - 3k - m) for eta."""
    m, k = config.m, config.k
    prefactor = 2 if (m % 2 == 0 and k % 2 == 0) else 4
    if family == XI:
        upper = prefactor * (m * k + k - m)
    elif family == ETA:
        upper = prefactor * (3 * m * k - 3 * k - m)
    else:
        raise ValidationError(f"unknown family {family!r}")
    lower = prefactor * max(m, k)
    return AreaBounds(lower_over_pi=Fraction(lower), upper_over_pi=Fraction(upper))


def area_bounds_pipeline(family, config: LatticeConfig, decision: DomainDecision,
                         multiplicities=None):
    """Independent re-derivation of the bounds.

    Upper: the bipolar area over an orientable domain D is
    2 area_D(surface) - 2 pi chi(D); area over the surface obeys the cited
    spherical-area bound (4 pi k for xi, 2 pi (m-1) k for eta with k even and
    4 pi (m-1) k with k odd), with the orientation cover doubling it and the
    -identity quotient halving the result.  Lower: 4 pi times the largest
    sheet multiplicity detected on the decided domain (monotonicity of the
    area of a minimal surface through a point of multiplicity mu)."""
    m, k = config.m, config.k
    if family == XI:
        kusner = Fraction(4 * k)
    elif family == ETA:
        kusner = Fraction((2 if k % 2 == 0 else 4) * (m - 1) * k)
    else:
        raise ValidationError(f"unknown family {family!r}")
    degree = 2 if decision.cover_used else 1
    chi0 = decision.chi_surface * 2 if decision.cover_used else decision.chi_surface
    upper = 2 * degree * kusner - 2 * chi0
    if decision.quotient_applied:
        upper = upper / 2

    if multiplicities is None:
        multiplicities = {label: multiplicity(family, config, label)
                          for label in family_polygon(family, config).vertex_labels}
    best = max(r.multiplicity for r in multiplicities.values())
    best = Fraction(best, 2) if decision.quotient_applied else Fraction(best)
    lower = 4 * best
    bounds = AreaBounds(lower_over_pi=lower, upper_over_pi=upper)
    if bounds.lower_over_pi >= bounds.upper_over_pi:
        raise CrossCheckError("area bounds crossed")
    return bounds


def embeddedness_verdict(plane_classifications):
    """NotEmbedded when some analyzable vertex carries two sheet planes in
    Transversal or Partial relation; otherwise Inconclusive (the absence of
    vertex-level crossings proves nothing)."""
    for cls in plane_classifications.values():
        if cls["counts"][TRANSVERSAL] or cls["counts"][PARTIAL]:
            return NOT_EMBEDDED
    return INCONCLUSIVE


def bipolar_vertex_multiplicity(family, config: LatticeConfig, vertex, **kwargs):
    """Alias of `multiplicity` under the pipeline's operation name."""
    return multiplicity(family, config, vertex, **kwargs)


def tangent_planes_at_vertex(family, config: LatticeConfig, vertex, **kwargs):
    """The sheet tangent planes at a branched vertex, as a plain list."""
    return list(tangent_planes(family, config, vertex, **kwargs).planes)


def area_bounds(family, config: LatticeConfig, decision=None, verify=False):
    """The closed-form bounds; with verify=True the re-derivation pipeline
    runs as well and must agree."""
    bounds = area_bounds_closed(family, config)
    if verify:
        if decision is None:
            decision = fundamental_domain_decision(family, config)
        derived = area_bounds_pipeline(family, config, decision)
        if derived != bounds:
            raise CrossCheckError(f"area bounds mismatch: closed {bounds}, derived {derived}")
    return bounds


def vertex_plane_classifications(family, config: LatticeConfig, group=None, stable=False):
    """classify_planes at every branched vertex."""
    return {label: classify_planes(tangent_planes(family, config, label, group=group),
                                   stable=stable)
            for label in branched_vertices(family, config)}


def embeddedness_verdict_for(family, config: LatticeConfig):
    """Verdict computed from scratch for one (family, m, k)."""
    return embeddedness_verdict(vertex_plane_classifications(family, config))


def bipolar_orientability_for(family, config: LatticeConfig):
    """Orientability of the decided bipolar domain, computed from scratch."""
    return bipolar_orientability(fundamental_domain_decision(family, config))


def image_set_invariance(family, config: LatticeConfig, group=None, eps=EPS):
    """Well-definedness of the bipolar map on the quotient surface: the set
    of signed sheet images of each vertex is globally invariant under the
    signed action of every group element."""
    from .exterior import induced_bivector_map

    if group is None:
        group = normal_form_group(family, config)
    points = vertex_points(family, config)
    for point in points.values():
        images = []
        for element in group:
            moved = wedge2(element.matrix @ point.base, element.matrix @ point.normal)
            if not group.has_mixed_parity:
                images.append((-1.0) ** group.parity(element.key) * moved)
            else:
                images.extend([moved, -moved])
        rounded = {tuple(np.round(img, 9)) for img in images}
        for element in group:
            action = induced_bivector_map(element.matrix)
            signs = [(-1.0) ** p for p in element.parities]
            for img in images:
                ok = any(tuple(np.round(s * (action @ np.asarray(img)), 9)) in rounded
                         for s in signs)
                if not ok:
                    return False
    return True
