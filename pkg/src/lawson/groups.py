"""Finite reflection groups in O(4) built two independent ways.

Path one: breadth-first closure of a generator set, tracking for every
element the set of word-length parities that reach it ("parity evidence").
Path two: explicit normal forms with an exact multiplication law on index
tuples.  The two constructions must produce identical element sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (CapExceeded, DegenerateInput, NonInvolutiveGenerator,
                     ParityUndefined, ValidationError)
from .exterior import EPS
from .lattice import (ETA, FAMILIES, XI, LatticeConfig, R00, lattice_reflection,
                      rot12, rot34, rq_reflection)

CANONICAL_DECIMALS = 12

ABSENT = "Absent"
PRESENT_EVEN = "PresentEven"
PRESENT_ODD = "PresentOdd"


def canonical_key(matrix):
    """Stable hashable key: entries rounded to 12 decimals, row-major.

    Adding 0.0 after rounding collapses -0.0 and +0.0."""
    return (np.round(np.asarray(matrix, dtype=float), CANONICAL_DECIMALS) + 0.0).tobytes()


IDENTITY_KEY = canonical_key(np.eye(4))


@dataclass(frozen=True)
class GroupElement:
    matrix: np.ndarray = field(repr=False)
    parities: frozenset

    @property
    def key(self):
        return canonical_key(self.matrix)


class ReflectionGroup:
    """An explicit finite matrix group with per-element parity evidence."""

    def __init__(self, elements, generators=()):
        self._elements = {e.key: e for e in elements}
        self.generators = tuple(generators)

    @property
    def order(self):
        return len(self._elements)

    def __iter__(self):
        for key in sorted(self._elements):
            yield self._elements[key]

    def __contains__(self, matrix):
        return canonical_key(matrix) in self._elements

    def element(self, key):
        return self._elements[key]

    def keys(self):
        return set(self._elements)

    @property
    def has_mixed_parity(self):
        return any(len(e.parities) > 1 for e in self._elements.values())

    @property
    def orientable_quotient_flag(self):
        return not self.has_mixed_parity

    def parity(self, key):
        """The word-length parity of an element; raises if both occur."""
        parities = self._elements[key].parities
        if len(parities) != 1:
            raise ParityUndefined("element is reached by both even and odd words")
        return next(iter(parities))

    def is_subgroup_of(self, other):
        return self.keys() <= other.keys()


def _check_involutive_orthogonal(matrix, eps=EPS):
    matrix = np.asarray(matrix, dtype=float)
    if matrix.shape != (4, 4):
        raise NonInvolutiveGenerator("generator is not a 4x4 matrix")
    if np.max(np.abs(matrix @ matrix.T - np.eye(4))) > eps:
        raise NonInvolutiveGenerator("generator is not orthogonal")
    if np.max(np.abs(matrix @ matrix - np.eye(4))) > eps:
        raise NonInvolutiveGenerator("generator is not an involution")
    return matrix


def closure(generators, cap=10000):
    """BFS closure of involutive generators with parity-evidence tracking.

    Starts from the identity (parity 0) and right-multiplies by generators;
    an element is re-enqueued whenever its parity-evidence set grows, so
    evidence saturates even when an element is first seen late."""
    gens = [_check_involutive_orthogonal(g) for g in generators]
    identity = np.eye(4)
    elements = {IDENTITY_KEY: (identity, {0})}
    queue = [IDENTITY_KEY]
    while queue:
        key = queue.pop()
        matrix, parities = elements[key]
        for gen in gens:
            product = matrix @ gen
            pkey = canonical_key(product)
            new_parities = {(p + 1) % 2 for p in parities}
            if pkey not in elements:
                if len(elements) >= cap:
                    raise CapExceeded(f"group closure exceeded cap of {cap} elements")
                elements[pkey] = (product, set(new_parities))
                queue.append(pkey)
            elif not new_parities <= elements[pkey][1]:
                elements[pkey][1].update(new_parities)
                queue.append(pkey)
    made = []
    for key, (matrix, parities) in elements.items():
        matrix = matrix.copy()
        matrix.setflags(write=False)
        made.append(GroupElement(matrix=matrix, parities=frozenset(parities)))
    gen_elements = [GroupElement(matrix=g, parities=frozenset({1})) for g in gens]
    return ReflectionGroup(made, generators=gen_elements)


def family_generators(family, config: LatticeConfig):
    """The boundary-edge reflections generating the family's symmetry group."""
    if family == XI:
        pairs = ((0, 0), (1, 0), (1, 1), (0, 1))
        return [lattice_reflection(config, i, j) for i, j in pairs]
    if family == ETA:
        gens = [lattice_reflection(config, 1, 0), lattice_reflection(config, 1, 1),
                lattice_reflection(config, 0, 1)]
        gens.append(rq_reflection())
        return gens
    raise ValidationError(f"unknown family {family!r}; expected one of {FAMILIES}")


def family_group(family, config: LatticeConfig, cap=10000):
    return closure(family_generators(family, config), cap=cap)


# -- normal forms -------------------------------------------------------

XI_FORM = "xi"
ETA_EVEN_FORM = "eta_even_k"
ETA_ODD_FORM = "eta_odd_k"


def _form_kind(family, config):
    if family == XI:
        return XI_FORM
    if family == ETA:
        return ETA_ODD_FORM if config.k % 2 else ETA_EVEN_FORM
    raise ValidationError(f"unknown family {family!r}; expected one of {FAMILIES}")


@dataclass(frozen=True)
class NormalFormElement:
    """A group element as an index tuple with an exact product law.

    xi / eta (k even): indices (alpha, beta, gamma) for
        rot12(2 pi alpha / k) rot34(2 pi beta / m) r00^gamma.
    eta (k odd): indices (q, alpha, beta, gamma) with a leading central
        factor r_Q^q, r_Q the reflection across C2.

    The law uses r00 rot(phi) r00 = rot(-phi), so conjugating a rotation
    index by a reflection negates it."""

    kind: str
    m: int
    k: int
    indices: tuple[int, ...]

    def __post_init__(self):
        expected = 4 if self.kind == ETA_ODD_FORM else 3
        if len(self.indices) != expected:
            raise ValidationError(f"{self.kind} normal form needs {expected} indices")

    def _split(self):
        if self.kind == ETA_ODD_FORM:
            q, alpha, beta, gamma = self.indices
        else:
            q = 0
            alpha, beta, gamma = self.indices
        return q, alpha, beta, gamma

    def multiply(self, other: "NormalFormElement"):
        if (self.kind, self.m, self.k) != (other.kind, other.m, other.k):
            raise ValidationError("cannot multiply normal forms of different groups")
        q1, a1, b1, g1 = self._split()
        q2, a2, b2, g2 = other._split()
        sign = -1 if g1 % 2 else 1
        alpha = (a1 + sign * a2) % self.k
        beta = (b1 + sign * b2) % self.m
        gamma = (g1 + g2) % 2
        if self.kind == ETA_ODD_FORM:
            return NormalFormElement(self.kind, self.m, self.k,
                                     ((q1 + q2) % 2, alpha, beta, gamma))
        return NormalFormElement(self.kind, self.m, self.k, (alpha, beta, gamma))

    def matrix(self):
        q, alpha, beta, gamma = self._split()
        out = rot12(2.0 * np.pi * alpha / self.k) @ rot34(2.0 * np.pi * beta / self.m)
        if gamma:
            out = out @ R00
        if q:
            out = rq_reflection() @ out
        return out

    def parity(self):
        """Reflection-word parity.  For eta with k even the identity is both
        an even and an odd word, so no element has a well-defined parity."""
        q, _, _, gamma = self._split()
        if self.kind == ETA_EVEN_FORM:
            raise ParityUndefined("eta with k even carries both parities on every element")
        if self.kind == ETA_ODD_FORM:
            return (q + gamma) % 2
        return gamma % 2


def normal_form_elements(family, config: LatticeConfig):
    """All normal-form elements of the family group, without duplicates."""
    kind = _form_kind(family, config)
    m, k = config.m, config.k
    out = []
    if kind == ETA_ODD_FORM:
        for q in range(2):
            for alpha in range(k):
                for beta in range(m):
                    for gamma in range(2):
                        out.append(NormalFormElement(kind, m, k, (q, alpha, beta, gamma)))
    else:
        for alpha in range(k):
            for beta in range(m):
                for gamma in range(2):
                    out.append(NormalFormElement(kind, m, k, (alpha, beta, gamma)))
    return out


def normal_form_group(family, config: LatticeConfig):
    """The family group realized from normal forms, with parity evidence
    assigned exactly: {gamma} for xi, {q + gamma} for eta with k odd, and
    {0, 1} on every element for eta with k even."""
    kind = _form_kind(family, config)
    elements = []
    for nf in normal_form_elements(family, config):
        matrix = nf.matrix()
        matrix.setflags(write=False)
        if kind == ETA_EVEN_FORM:
            parities = frozenset({0, 1})
        else:
            parities = frozenset({nf.parity()})
        elements.append(GroupElement(matrix=matrix, parities=parities))
    group = ReflectionGroup(elements)
    if group.order != len(elements):
        raise DegenerateInput("normal forms are not pairwise distinct")
    return group


def expected_order(family, config: LatticeConfig):
    if family == XI:
        return 2 * config.m * config.k
    if family == ETA:
        return (4 if config.k % 2 else 2) * config.m * config.k
    raise ValidationError(f"unknown family {family!r}; expected one of {FAMILIES}")


def parity(nf: NormalFormElement):
    """Reflection-word parity of a normal-form element (gamma for the
    xi family, q + gamma for eta with k odd; undefined for eta, k even)."""
    return nf.parity()


# -- subgroups and status ------------------------------------------------


def stabilizer(group: ReflectionGroup, point, circles, cap=10000):
    """Subgroup generated by the reflections across those of the given
    great circles that pass through `point`."""
    from .lattice import geodesic_reflection
    gens = [geodesic_reflection(c) for c in circles if c.contains(point)]
    sub = closure(gens, cap=cap)
    if not sub.is_subgroup_of(group):
        raise DegenerateInput("stabilizer generators leave the ambient group")
    return sub


def polygon_symmetry_subgroup(group: ReflectionGroup, polygon, eps=EPS, samples_per_arc=9):
    """Elements of `group` that map the polygon's point set onto itself.

    Each boundary arc is sampled; a candidate must send every sample onto
    some arc of the polygon and permute the vertex set."""
    vertices = list(polygon.vertices)
    samples = [s for arc in polygon.arcs for s in arc.sample(samples_per_arc)]

    def on_boundary(x):
        return any(arc.contains(x, eps=max(eps, 1e-7)) for arc in polygon.arcs)

    def is_vertex(x):
        return any(np.linalg.norm(x - v) <= max(eps, 1e-7) for v in vertices)

    kept = []
    for element in group:
        g = element.matrix
        if all(is_vertex(g @ v) for v in vertices) and all(on_boundary(g @ s) for s in samples):
            kept.append(element)
    sub = ReflectionGroup(kept)
    for a in kept:  # symmetries must be closed under composition
        for b in kept:
            if canonical_key(a.matrix @ b.matrix) not in sub.keys():
                raise DegenerateInput("polygon symmetry candidates are not closed")
    return sub


def minus_identity_status(group: ReflectionGroup):
    """Whether -identity belongs to the group and with what parity evidence.

    Mixed evidence counts as PresentEven: an even word realizing -identity
    is what the quotient construction needs."""
    key = canonical_key(-np.eye(4))
    if key not in group.keys():
        return ABSENT
    parities = group.element(key).parities
    return PRESENT_EVEN if 0 in parities else PRESENT_ODD
