"""Exterior algebra on R^4 and rank tests on 2-planes in the bivector space R^6.

Bivectors are expanded in the ordered orthonormal basis

    e12, e13, e14, e23, e24, e34

so a simple bivector v ^ w is the vector of the six 2x2 minors of the
4x2 matrix [v w], read in that order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateInput

EPS = 1e-9

#: index pairs (i, j), i < j, defining the bivector coordinate order
BIVECTOR_BASIS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))

EQUAL = "Equal"
PARTIAL = "Partial"
TRANSVERSAL = "Transversal"


def _vec(v, dim):
    v = np.asarray(v, dtype=float)
    if v.shape != (dim,):
        raise DegenerateInput(f"expected a vector of shape ({dim},), got {v.shape}")
    return v


def wedge2(v, w):
    """v ^ w in R^6: the six signed 2x2 minors of [v w]."""
    v = _vec(v, 4)
    w = _vec(w, 4)
    return np.array([v[i] * w[j] - v[j] * w[i] for i, j in BIVECTOR_BASIS])


def hodge3(v1, v2, v3):
    """Hodge dual *(v1 ^ v2 ^ v3) in R^4.

    Component i is det(v1, v2, v3, E_i) with E_i the i-th standard basis
    vector, so the result is orthogonal to each argument and
    det(v1, v2, v3, *(v1^v2^v3)) = |*(v1^v2^v3)|^2 >= 0.
    """
    cols = [_vec(v, 4) for v in (v1, v2, v3)]
    out = np.empty(4)
    for i in range(4):
        e = np.zeros(4)
        e[i] = 1.0
        out[i] = np.linalg.det(np.column_stack(cols + [e]))
    return out


def hodge4(v1, v2, v3, v4):
    """*(v1 ^ v2 ^ v3 ^ v4): the determinant of the column matrix."""
    cols = [_vec(v, 4) for v in (v1, v2, v3, v4)]
    return float(np.linalg.det(np.column_stack(cols)))


def bivector_inner(a, b):
    """Inner product on bivectors.

    For simple bivectors this is the Gram determinant
    <v^w, x^y> = <v,x><w,y> - <v,y><w,x>; the e_ij basis is orthonormal
    for it, so on coordinates it is the Euclidean dot product in R^6.
    """
    return float(np.dot(_vec(a, 6), _vec(b, 6)))


def induced_bivector_map(matrix):
    """The 6x6 matrix of the action induced on bivectors by a 4x4 matrix."""
    matrix = np.asarray(matrix, dtype=float)
    if matrix.shape != (4, 4):
        raise DegenerateInput("expected a 4x4 matrix")
    cols = [wedge2(matrix[:, i], matrix[:, j]) for i, j in BIVECTOR_BASIS]
    return np.column_stack(cols)


def orthonormalized(columns, eps=EPS):
    """Column-pivoted modified Gram-Schmidt.

    Returns an orthonormal basis (one column per accepted pivot) of the
    span of `columns`; a column whose residual norm is <= eps is dropped.
    """
    work = np.array(columns, dtype=float)
    if work.ndim != 2:
        raise DegenerateInput("expected a 2-d array of columns")
    basis = []
    remaining = [work[:, j].copy() for j in range(work.shape[1])]
    while remaining:
        norms = [np.linalg.norm(c) for c in remaining]
        pick = int(np.argmax(norms))
        if norms[pick] <= eps:
            break
        u = remaining.pop(pick) / norms[pick]
        basis.append(u)
        remaining = [c - np.dot(u, c) * u for c in remaining]
    if not basis:
        return np.zeros((work.shape[0], 0))
    return np.column_stack(basis)


def numerical_rank(columns, eps=EPS):
    """Rank of a column collection under the pivoted Gram-Schmidt rule."""
    return orthonormalized(columns, eps=eps).shape[1]


@dataclass(frozen=True)
class Plane2in6:
    """A 2-plane in R^6 given by two independent spanners."""

    spanners: np.ndarray = field(repr=False)  # (6, 2)
    basis: np.ndarray = field(repr=False)  # (6, 2), orthonormal

    @classmethod
    def from_spanners(cls, s1, s2, eps=EPS):
        s1 = _vec(s1, 6)
        s2 = _vec(s2, 6)
        basis = orthonormalized(np.column_stack([s1, s2]), eps=eps)
        if basis.shape[1] != 2:
            raise DegenerateInput("spanners do not span a 2-plane")
        basis.setflags(write=False)
        spanners = np.column_stack([s1, s2])
        spanners.setflags(write=False)
        return cls(spanners=spanners, basis=basis)

    def contains(self, x, eps=EPS):
        x = _vec(x, 6)
        return np.linalg.norm(x - self.basis @ (self.basis.T @ x)) <= eps


def plane_relation(p, q, eps=EPS):
    """Relation of two 2-planes in R^6 by the rank of their combined spanners.

    rank 2 -> Equal, rank 3 -> Partial (a common line), rank 4 -> Transversal
    (intersection only at the origin).
    """
    rank = numerical_rank(np.column_stack([p.basis, q.basis]), eps=eps)
    if rank == 2:
        return EQUAL
    if rank == 3:
        return PARTIAL
    if rank == 4:
        return TRANSVERSAL
    raise DegenerateInput(f"combined spanner rank {rank} is not a 2-plane pair")


def plane_relation_stable(p, q, eps_list=(1e-6, EPS, 1e-12)):
    """plane_relation evaluated at several tolerances; all must agree."""
    relations = {plane_relation(p, q, eps=eps) for eps in eps_list}
    if len(relations) != 1:
        raise DegenerateInput(f"plane relation unstable across tolerances: {relations}")
    return relations.pop()
