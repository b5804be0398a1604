"""Quotient-surface cell complexes for reflection-group tessellations.

A tessellated surface is encoded combinatorially: one quadrilateral face
per group element, side i of face g glued to side i of face g.r_i (r_i the
reflection across boundary edge i), and vertex classes given by cosets of
the vertex stabilizers.  On top of that sit the orientation double cover
and the quotient by the central involution -identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import (ActionNotFree, AlreadyOrientable, CrossCheckError,
                     DegenerateInput, NonIntegerChi, NonManifoldGluing,
                     ValidationError)
from .groups import ReflectionGroup, canonical_key, closure


@dataclass
class SurfaceComplex:
    """A closed-surface cell complex with polygonal faces.

    Faces are hashable labels; an edge is a frozenset of two (label, side)
    pairs; a vertex class is a frozenset of (label, corner) pairs, corner i
    sitting between sides i-1 and i."""

    face_labels: tuple
    num_sides: int
    edges: tuple
    vertex_classes: tuple
    face_parities: dict | None = None
    meta: dict = field(default_factory=dict, repr=False)

    @property
    def num_faces(self):
        return len(self.face_labels)

    @property
    def num_edges(self):
        return len(self.edges)

    @property
    def num_vertices(self):
        return len(self.vertex_classes)

    @property
    def chi(self):
        return self.num_vertices - self.num_edges + self.num_faces

    @property
    def faces(self):
        return self.face_labels

    @property
    def orientable(self):
        if self.face_parities is not None:
            return orientability(self)[0]
        return orientable_by_coloring(self)[0]

    @property
    def parity_map(self):
        return orientability(self)[1] if self.face_parities is not None else None

    def validate(self):
        """Closed-surface sanity: every face side on exactly one edge, every
        corner in exactly one vertex class, gluing fixed-point free."""
        sides = [(f, i) for f in self.face_labels for i in range(self.num_sides)]
        seen = [s for e in self.edges for s in e]
        if any(len(e) != 2 for e in self.edges):
            raise NonManifoldGluing("an edge does not glue exactly two distinct sides")
        if sorted(seen) != sorted(sides):
            raise NonManifoldGluing("face sides are not partitioned by the edges")
        corners = [c for v in self.vertex_classes for c in v]
        if sorted(corners) != sorted(sides):
            raise NonManifoldGluing("face corners are not partitioned by vertex classes")
        return self

    def adjacency(self):
        out = {f: [] for f in self.face_labels}
        for e in self.edges:
            (f1, _), (f2, _) = sorted(e)
            out[f1].append(f2)
            out[f2].append(f1)
        return out

    def is_connected(self):
        if not self.face_labels:
            return True
        adjacency = self.adjacency()
        seen = {self.face_labels[0]}
        stack = [self.face_labels[0]]
        while stack:
            for nb in adjacency[stack.pop()]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        return len(seen) == self.num_faces


@dataclass
class DoubleCoverComplex(SurfaceComplex):
    """Orientation double cover; faces are (sheet, base-face) pairs."""

    def deck_involution(self, face):
        sheet, label = face
        return (1 - sheet, label)


def orientability(cx: SurfaceComplex):
    """Parity criterion: orientable iff no face carries both word parities.

    Returns (orientable, parity_map); the map is None when non-orientable."""
    if cx.face_parities is None:
        raise ValidationError("complex carries no parity data; use the coloring test")
    if any(len(p) > 1 for p in cx.face_parities.values()):
        return False, None
    return True, {f: next(iter(p)) for f, p in cx.face_parities.items()}


def orientable_by_coloring(cx: SurfaceComplex):
    """Independent orientability test: crossing any edge must flip a
    2-coloring of the faces, so the dual graph must be bipartite.

    Returns (orientable, coloring); the coloring is None when non-orientable."""
    adjacency = cx.adjacency()
    color = {}
    for start in cx.face_labels:
        if start in color:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            f = stack.pop()
            for nb in adjacency[f]:
                if nb not in color:
                    color[nb] = 1 - color[f]
                    stack.append(nb)
                elif color[nb] == color[f]:
                    return False, None
    return True, color


def euler_characteristic_formula(angle_denominators, group_order, symmetry_order=1):
    """chi = (|G| / |G^Gamma|) (1 - sum_i (n_i - 1) / (2 n_i)), exactly.

    Accepts a polygon or a bare tuple of angle denominators."""
    if hasattr(angle_denominators, "angle_denominators"):
        angle_denominators = angle_denominators.angle_denominators
    total = Fraction(group_order, symmetry_order)
    chi = total * (1 - sum(Fraction(n - 1, 2 * n) for n in angle_denominators))
    if chi.denominator != 1:
        raise NonIntegerChi(f"formula gave non-integer Euler characteristic {chi}")
    return int(chi)


def build_complex(group: ReflectionGroup, polygon, symmetry_subgroup=None):
    """The closed surface tessellated by `group` copies of `polygon`.

    Requires the polygon's symmetry subgroup inside `group` to be trivial,
    so that faces are in bijection with group elements."""
    if symmetry_subgroup is not None and symmetry_subgroup.order != 1:
        raise ValidationError("faces are only in bijection with elements for a "
                              "trivial polygon symmetry subgroup")
    reflections = list(polygon.reflections)
    n_sides = len(reflections)
    matrices = {e.key: e.matrix for e in group}
    labels = tuple(sorted(matrices))

    edges = set()
    for key in labels:
        for i, r in enumerate(reflections):
            partner = canonical_key(matrices[key] @ r)
            if partner == key:
                raise NonManifoldGluing(f"side {i} of a face glues to itself")
            if partner not in matrices:
                raise NonManifoldGluing("edge reflection leaves the group")
            edges.add(frozenset({(key, i), (partner, i)}))

    stabilizers = []
    for i in range(n_sides):
        stab = closure([reflections[i - 1], reflections[i]])
        if not stab.is_subgroup_of(group):
            raise DegenerateInput("vertex stabilizer leaves the group")
        if stab.order != 2 * polygon.angle_denominators[i]:
            raise DegenerateInput(
                f"vertex stabilizer order {stab.order} != 2 * angle denominator "
                f"{polygon.angle_denominators[i]}")
        stabilizers.append(stab)

    vertex_classes = []
    for i, stab in enumerate(stabilizers):
        assigned = set()
        for key in labels:
            if (key, i) in assigned:
                continue
            cls = frozenset((canonical_key(matrices[key] @ u.matrix), i) for u in stab)
            if len(cls) != stab.order:
                raise DegenerateInput("vertex coset collapsed; stabilizer not free on cosets")
            vertex_classes.append(cls)
            assigned |= cls
    vertex_classes.sort(key=sorted)

    parities = {e.key: e.parities for e in group}
    cx = SurfaceComplex(face_labels=labels, num_sides=n_sides,
                        edges=tuple(sorted(edges, key=sorted)),
                        vertex_classes=tuple(vertex_classes),
                        face_parities=parities,
                        meta={"kind": "base", "group": group, "polygon": polygon,
                              "stabilizers": stabilizers, "matrices": matrices})
    cx.validate()
    if not cx.is_connected():
        raise DegenerateInput("tessellation complex is not connected")
    oriented, _ = orientability(cx)
    colored, _ = orientable_by_coloring(cx)
    if oriented != colored:
        raise CrossCheckError("parity and coloring orientability tests disagree")
    return cx


def double_cover(cx: SurfaceComplex):
    """The orientation double cover of a non-orientable tessellation complex.

    Faces are (sheet, label); crossing any edge swaps the sheet, because the
    surface normal is reversed by each edge reflection.  The vertex class of
    corner ((s, g), i) collects ((s + parity(u)) mod 2, g u) over the
    stabilizer, parity(u) being u's reflection parity in the dihedral
    stabilizer.  The deck involution (s, g) -> (1 - s, g) must be free."""
    if cx.meta.get("kind") != "base":
        raise ValidationError("double cover is built from a base tessellation complex")
    oriented, _ = orientability(cx)
    if oriented:
        raise AlreadyOrientable("complex is already orientable; cover would disconnect")
    matrices = cx.meta["matrices"]
    stabilizers = cx.meta["stabilizers"]

    labels = tuple(sorted((s, key) for s in (0, 1) for key in cx.face_labels))
    edges = set()
    for edge in cx.edges:
        (k1, i), (k2, _i2) = sorted(edge)
        for s in (0, 1):
            edges.add(frozenset({((s, k1), i), ((1 - s, k2), i)}))

    vertex_classes = []
    for i, stab in enumerate(stabilizers):
        units = [(u.key, stab.parity(u.key)) for u in stab]
        assigned = set()
        for (s, key) in labels:
            if ((s, key), i) in assigned:
                continue
            cls = frozenset((((s + p) % 2, canonical_key(matrices[key] @ stab.element(uk).matrix)), i)
                            for uk, p in units)
            if len(cls) != stab.order:
                raise DegenerateInput("cover vertex class collapsed")
            vertex_classes.append(cls)
            assigned |= cls
    vertex_classes.sort(key=sorted)

    parities = {(s, key): frozenset({s}) for (s, key) in labels}
    cover = DoubleCoverComplex(face_labels=labels, num_sides=cx.num_sides,
                           edges=tuple(sorted(edges, key=sorted)),
                           vertex_classes=tuple(vertex_classes),
                           face_parities=parities,
                           meta={"kind": "cover", "base": cx,
                                 "group": cx.meta["group"], "polygon": cx.meta["polygon"],
                                 "stabilizers": stabilizers, "matrices": matrices})
    cover.validate()
    if not cover.is_connected():
        raise CrossCheckError("orientation cover of a non-orientable complex disconnected")
    if cover.chi != 2 * cx.chi:
        raise CrossCheckError("double cover did not double the Euler characteristic")
    colored, _ = orientable_by_coloring(cover)
    if not colored:
        raise CrossCheckError("orientation double cover is not orientable")
    _check_free_involution(cover, lambda label: (1 - label[0], label[1]))
    return cover


def _map_cells(cx: SurfaceComplex, face_map):
    edges = {e: frozenset((face_map(f), i) for f, i in e) for e in cx.edges}
    classes = {v: frozenset((face_map(f), c) for f, c in v) for v in cx.vertex_classes}
    return edges, classes


def _check_free_involution(cx: SurfaceComplex, face_map):
    edges, classes = _map_cells(cx, face_map)
    for f in cx.face_labels:
        if face_map(f) == f:
            raise ActionNotFree("involution fixes a face")
    for e, image in edges.items():
        if image == e:
            raise ActionNotFree("involution fixes an edge")
    for v, image in classes.items():
        if image == v:
            raise ActionNotFree("involution fixes a vertex class")


def quotient_by_minus_identity(cx: SurfaceComplex):
    """Quotient of the surface by the central involution x -> -x.

    On faces the involution sends the group element g to -g (same sheet on
    a double cover, since -identity preserves the bivector image).  The
    action must be free on faces, edges and vertex classes."""
    kind = cx.meta.get("kind")
    if kind not in ("base", "cover"):
        raise ValidationError("quotient needs a base or double-cover tessellation complex")
    matrices = cx.meta["matrices"]
    minus = {key: canonical_key(-matrices[key]) for key in matrices}
    if any(image not in matrices for image in minus.values()):
        raise ValidationError("-identity does not belong to the group")

    if kind == "base":
        face_map = lambda label: minus[label]
    else:
        face_map = lambda label: (label[0], minus[label[1]])

    _check_free_involution(cx, face_map)
    edges_image, classes_image = _map_cells(cx, face_map)

    def rep(label):
        return min(label, face_map(label))

    labels = tuple(sorted({rep(f) for f in cx.face_labels}))
    edges = {frozenset((rep(f), i) for f, i in e) for e in cx.edges}
    classes = {frozenset((rep(f), c) for f, c in v) for v in cx.vertex_classes}
    # freeness means cells merge strictly in pairs
    if not (2 * len(labels) == cx.num_faces and 2 * len(edges) == cx.num_edges
            and 2 * len(classes) == cx.num_vertices):
        raise ActionNotFree("cells did not merge in pairs under the involution")

    parities = None
    if cx.face_parities is not None:
        merged = {}
        consistent = True
        for f in cx.face_labels:
            r = rep(f)
            p = cx.face_parities[f]
            if r in merged and merged[r] != p:
                consistent = False
                break
            merged[r] = p
        if consistent:
            parities = merged

    quotient = SurfaceComplex(face_labels=labels, num_sides=cx.num_sides,
                              edges=tuple(sorted(edges, key=sorted)),
                              vertex_classes=tuple(sorted(classes, key=sorted)),
                              face_parities=parities,
                              meta={"kind": f"{kind}_mod_minus_one", "base": cx,
                                    "group": cx.meta["group"], "polygon": cx.meta["polygon"]})
    quotient.validate()
    if 2 * quotient.chi != cx.chi:
        raise CrossCheckError("quotient did not halve the Euler characteristic")
    return quotient


def export_complex(cx: SurfaceComplex):
    """Plain-text export: one line per face, edge and vertex class, in a
    stable order (faces sorted by label, cells sorted lexicographically)."""
    index = {f: i for i, f in enumerate(cx.face_labels)}

    def side(pair):
        f, i = pair
        return f"{index[f]}:{i}"

    lines = [f"surface-complex faces={cx.num_faces} edges={cx.num_edges} "
             f"vertices={cx.num_vertices} sides-per-face={cx.num_sides} chi={cx.chi}"]
    for f in cx.face_labels:
        parity = ""
        if cx.face_parities is not None:
            parity = " parity=" + ",".join(str(p) for p in sorted(cx.face_parities[f]))
        lines.append(f"face {index[f]}{parity}")
    for e in cx.edges:
        lines.append("edge " + " ".join(side(p) for p in sorted(e, key=lambda p: index[p[0]])))
    for v in cx.vertex_classes:
        lines.append("vertex " + " ".join(side(p) for p in sorted(v, key=lambda p: (index[p[0]], p[1]))))
    return "\n".join(lines) + "\n"
