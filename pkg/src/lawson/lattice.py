"""Great-circle lattice on S^3, geodesic reflections, and boundary polygons.

The unit 3-sphere carries two orthogonal great circles: C1 in the
x1x2-plane and C2 in the x3x4-plane.  For parameters (m, k) the lattice
consists of the points

    P_i = (cos(i pi / k), sin(i pi / k), 0, 0),  i in Z_{2k},
    Q_j = (0, 0, cos(j pi / m), sin(j pi / m)),  j in Z_{2m},

their unit tangents Phat_i, Qhat_j along C1 and C2, and the great circles
gamma_ij through P_i and Q_j.  Reflecting S^3 across gamma_ij gives the
involutions r_ij that generate the surface symmetry groups.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateCircle, DegenerateInput, ValidationError
from .exterior import EPS, orthonormalized

XI = "xi"
ETA = "eta"
FAMILIES = (XI, ETA)

#: reflection across the x1x3-plane; fixes gamma_00 pointwise
R00 = np.diag([1.0, -1.0, 1.0, -1.0])
R00.setflags(write=False)


@dataclass(frozen=True)
class LatticeConfig:
    m: int
    k: int

    def __post_init__(self):
        if not (isinstance(self.m, int) and isinstance(self.k, int)):
            raise ValidationError("m and k must be integers")
        if self.m < 2 or self.k < 2:
            raise ValidationError(f"need m >= 2 and k >= 2, got (m, k) = ({self.m}, {self.k})")
        if self.m == 2 and self.k == 2:
            warnings.warn("(m, k) = (2, 2) is outside the analyzed range; "
                          "surface-level results are not certified", stacklevel=2)


def rot12(phi):
    """Rotation by phi in the x1x2-plane, identity on the x3x4-plane."""
    c, s = np.cos(phi), np.sin(phi)
    return np.array([[c, -s, 0.0, 0.0],
                     [s, c, 0.0, 0.0],
                     [0.0, 0.0, 1.0, 0.0],
                     [0.0, 0.0, 0.0, 1.0]])


def rot34(phi):
    """Rotation by phi in the x3x4-plane, identity on the x1x2-plane."""
    c, s = np.cos(phi), np.sin(phi)
    return np.array([[1.0, 0.0, 0.0, 0.0],
                     [0.0, 1.0, 0.0, 0.0],
                     [0.0, 0.0, c, -s],
                     [0.0, 0.0, s, c]])


class LatticePoints:
    """Accessors for the (m, k) lattice points and their circle tangents."""

    def __init__(self, config: LatticeConfig):
        self.config = config

    def P(self, i):
        a = i * np.pi / self.config.k
        return np.array([np.cos(a), np.sin(a), 0.0, 0.0])

    def Phat(self, i):
        a = i * np.pi / self.config.k
        return np.array([-np.sin(a), np.cos(a), 0.0, 0.0])

    def Q(self, j):
        a = j * np.pi / self.config.m
        return np.array([0.0, 0.0, np.cos(a), np.sin(a)])

    def Qhat(self, j):
        a = j * np.pi / self.config.m
        return np.array([0.0, 0.0, -np.sin(a), np.cos(a)])


def lattice_points(config: LatticeConfig):
    """Accessor object for P_i, Q_j and their hatted tangents."""
    return LatticePoints(config)


@dataclass(frozen=True)
class GreatCircle:
    """A great circle of S^3, stored as an orthonormal basis of its 2-plane."""

    basis: np.ndarray = field(repr=False)  # (4, 2)

    @property
    def plane_basis(self):
        return self.basis

    @classmethod
    def through(cls, a, b, eps=EPS):
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        basis = orthonormalized(np.column_stack([a, b]), eps=eps)
        if basis.shape[1] != 2:
            raise DegenerateCircle("points are equal or antipodal; no unique great circle")
        basis.setflags(write=False)
        return cls(basis=basis)

    def contains(self, x, eps=EPS):
        x = np.asarray(x, dtype=float)
        return np.linalg.norm(x - self.basis @ (self.basis.T @ x)) <= eps


def geodesic_reflection(circle: GreatCircle):
    """Reflection of R^4 across the circle's 2-plane: fixes the plane,
    negates its orthogonal complement.  Always an involutive isometry
    with determinant +1."""
    b = circle.basis
    return 2.0 * (b @ b.T) - np.eye(4)


def lattice_reflection(config: LatticeConfig, i, j, eps=EPS):
    """The reflection r_ij across gamma_ij, computed two independent ways.

    Conjugation formula: r_ij = rot12(2 pi i / k) . rot34(2 pi j / m) . r_00
    (conjugating r_00 by the rotation taking gamma_00 to gamma_ij).
    Cross-checked against the geodesic reflection across the circle through
    P_i and Q_j; the two must agree within eps.
    """
    formula = rot12(2.0 * np.pi * i / config.k) @ rot34(2.0 * np.pi * j / config.m) @ R00
    pts = LatticePoints(config)
    direct = geodesic_reflection(GreatCircle.through(pts.P(i), pts.Q(j)))
    if np.max(np.abs(formula - direct)) > eps:
        raise DegenerateInput(f"reflection formula and geodesic reflection disagree at ({i}, {j})")
    return formula


def rq_reflection():
    """Reflection across the x3x4-plane circle C2: diag(-1, -1, 1, 1)."""
    return geodesic_reflection(GreatCircle.through(np.array([0.0, 0.0, 1.0, 0.0]),
                                                   np.array([0.0, 0.0, 0.0, 1.0])))


@dataclass(frozen=True)
class Arc:
    """A directed geodesic arc from `start` to `end` on a great circle.

    `via` disambiguates half-circle arcs between antipodal endpoints.
    Internally the arc is cos(t) u1 + sin(t) u2 for t in [0, length]."""

    start: np.ndarray = field(repr=False)
    end: np.ndarray = field(repr=False)
    circle: GreatCircle = field(repr=False)
    via: np.ndarray | None = field(default=None, repr=False)

    @classmethod
    def between(cls, start, end, via=None, eps=EPS):
        start = np.asarray(start, dtype=float)
        end = np.asarray(end, dtype=float)
        if via is not None:
            via = np.asarray(via, dtype=float)
            circle = GreatCircle.through(start, via, eps=eps)
            if not circle.contains(end, eps=eps):
                raise DegenerateCircle("via point is off the start-end great circle")
        else:
            circle = GreatCircle.through(start, end, eps=eps)
        return cls(start=start, end=end, circle=circle, via=via)

    def _frame(self):
        u1 = self.start
        anchor = self.via if self.via is not None else self.end
        u2 = anchor - np.dot(anchor, u1) * u1
        u2 = u2 / np.linalg.norm(u2)
        return u1, u2

    @property
    def length(self):
        u1, u2 = self._frame()
        t = np.arctan2(np.dot(self.end, u2), np.dot(self.end, u1))
        if t <= 0.0:
            t += 2.0 * np.pi
        return float(t)

    def point(self, t):
        u1, u2 = self._frame()
        return np.cos(t) * u1 + np.sin(t) * u2

    def sample(self, n=7):
        return [self.point(t) for t in np.linspace(0.0, self.length, n)]

    def contains(self, x, eps=EPS):
        x = np.asarray(x, dtype=float)
        if not self.circle.contains(x, eps=eps):
            return False
        u1, u2 = self._frame()
        t = np.arctan2(np.dot(x, u2), np.dot(x, u1))
        if t < -eps:
            t += 2.0 * np.pi
        return -eps <= t <= self.length + eps

    def reflection(self):
        return geodesic_reflection(self.circle)


def _rotation_order(matrix, cap=512):
    """Smallest n >= 1 with matrix^n = identity (within EPS)."""
    power = np.eye(4)
    for n in range(1, cap + 1):
        power = power @ matrix
        if np.max(np.abs(power - np.eye(4))) <= EPS:
            return n
    raise DegenerateInput("matrix power never returned to the identity")


@dataclass(frozen=True)
class GeodesicPolygon:
    """A closed geodesic quadrilateral with per-edge reflections.

    Edge i runs from vertex i to vertex i+1 (indices mod 4); the interior
    angle at vertex i is pi / angle_denominators[i], recovered from the
    rotation order of the product of the two incident edge reflections."""

    vertex_labels: tuple[str, ...]
    vertices: tuple[np.ndarray, ...] = field(repr=False)
    arcs: tuple[Arc, ...] = field(repr=False)
    reflections: tuple[np.ndarray, ...] = field(repr=False)
    angle_denominators: tuple[int, ...]

    @classmethod
    def from_arcs(cls, labels, arcs):
        n = len(arcs)
        vertices = tuple(arc.start for arc in arcs)
        for i, arc in enumerate(arcs):
            if np.linalg.norm(arc.end - arcs[(i + 1) % n].start) > EPS:
                raise DegenerateInput("polygon arcs do not close up")
        reflections = tuple(arc.reflection() for arc in arcs)
        denominators = []
        for i in range(n):
            order = _rotation_order(reflections[i - 1] @ reflections[i])
            if order < 2:
                raise DegenerateInput(f"degenerate angle at vertex {labels[i]}")
            denominators.append(order)
        for r in reflections:
            r.setflags(write=False)
        return cls(vertex_labels=tuple(labels), vertices=vertices, arcs=tuple(arcs),
                   reflections=reflections, angle_denominators=tuple(denominators))

    def vertex(self, label):
        return self.vertices[self.vertex_labels.index(label)]

    @property
    def via_points(self):
        return tuple(arc.via for arc in self.arcs)


def xi_polygon(config: LatticeConfig):
    """The quadrilateral P0 Q0 P1 Q1 bounding the xi fundamental patch.

    Edge reflections are (r_00, r_10, r_11, r_01); the interior angles are
    (pi/m, pi/k, pi/m, pi/k), asserted from the reflection products."""
    pts = LatticePoints(config)
    arcs = (Arc.between(pts.P(0), pts.Q(0)),
            Arc.between(pts.Q(0), pts.P(1)),
            Arc.between(pts.P(1), pts.Q(1)),
            Arc.between(pts.Q(1), pts.P(0)))
    polygon = GeodesicPolygon.from_arcs(("P0", "Q0", "P1", "Q1"), arcs)
    expected = (config.m, config.k, config.m, config.k)
    if polygon.angle_denominators != expected:
        raise DegenerateInput(f"xi polygon angles {polygon.angle_denominators} != {expected}")
    return polygon


def eta_polygon(config: LatticeConfig):
    """The quadrilateral Q0 P1 Q1 (-Q1) bounding the eta fundamental patch.

    The third edge is the half-circle from Q1 to -Q1 through P0 (on
    gamma_01); the fourth edge lies on C2, with reflection r_Q.  The
    interior angles come out as (pi/2, pi/m, pi/k, pi/2)."""
    pts = LatticePoints(config)
    arcs = (Arc.between(pts.Q(0), pts.P(1)),
            Arc.between(pts.P(1), pts.Q(1)),
            Arc.between(pts.Q(1), -pts.Q(1), via=pts.P(0)),
            Arc.between(-pts.Q(1), pts.Q(0)))
    polygon = GeodesicPolygon.from_arcs(("Q0", "P1", "Q1", "-Q1"), arcs)
    expected = (2, config.m, config.k, 2)
    if polygon.angle_denominators != expected:
        raise DegenerateInput(f"eta polygon angles {polygon.angle_denominators} != {expected}")
    return polygon


def family_polygon(family, config: LatticeConfig):
    if family == XI:
        return xi_polygon(config)
    if family == ETA:
        return eta_polygon(config)
    raise ValidationError(f"unknown family {family!r}; expected one of {FAMILIES}")


def polar_vertex_data(family, config: LatticeConfig):
    """Unit normals of the spherical surface at the polygon vertices.

    Each normal is tangent to S^3, orthogonal to the surface patch, and
    feeds the polar map vertex -> normal; the pair (vertex, normal) spans
    the bivector image point of the vertex."""
    pts = LatticePoints(config)
    if family == XI:
        data = {"P0": pts.Phat(0), "Q0": -pts.Qhat(0), "P1": -pts.Phat(1), "Q1": pts.Qhat(1)}
    elif family == ETA:
        data = {"Q0": pts.Phat(1), "P1": -pts.Phat(1), "Q1": pts.Qhat(1), "-Q1": pts.Phat(0)}
    else:
        raise ValidationError(f"unknown family {family!r}; expected one of {FAMILIES}")
    polygon = family_polygon(family, config)
    for label, normal in data.items():
        vertex = polygon.vertex(label)
        if abs(np.linalg.norm(normal) - 1.0) > EPS or abs(np.dot(normal, vertex)) > EPS:
            raise DegenerateInput(f"polar data at {label} is not a unit tangent normal")
    return data
