"""Wedge products, Hodge duals and 2-plane relations in the bivector space.

Run:  python3 demos/01_exterior_algebra.py
"""

import numpy as np

from lawson.exterior import (BIVECTOR_BASIS, Plane2in6, bivector_inner,
                             hodge3, hodge4, plane_relation, wedge2)

e = np.eye(4)

print("bivector coordinate order:", " ".join(f"e{i+1}{j+1}" for i, j in BIVECTOR_BASIS))
print()

v, w = e[0], e[1]
p = wedge2(v, w)
print("e1 ^ e2              =", p)
print("|e1 ^ e2|^2          =", bivector_inner(p, p))
print("Plucker p0p5-p1p4+p2p3 =", p[0] * p[5] - p[1] * p[4] + p[2] * p[3])
print()

h = hodge3(e[0], e[1], e[2])
print("*(e1 ^ e2 ^ e3)      =", h, " (the missing basis vector)")
print("*(e1 ^ e2 ^ e3 ^ e4) =", hodge4(*e), " (the determinant)")
print()

# three 2-planes in R^6 spanned by simple bivectors
plane_12_13 = Plane2in6.from_spanners(wedge2(e[0], e[1]), wedge2(e[0], e[2]))
plane_12_13_again = Plane2in6.from_spanners(wedge2(e[0], e[1] + e[2]),
                                            wedge2(e[0], e[1] - e[2]))
plane_12_14 = Plane2in6.from_spanners(wedge2(e[0], e[1]), wedge2(e[0], e[3]))
plane_34_24 = Plane2in6.from_spanners(wedge2(e[2], e[3]), wedge2(e[1], e[3]))

print("same plane, different spanners :", plane_relation(plane_12_13, plane_12_13_again))
print("planes sharing the line <e12>  :", plane_relation(plane_12_13, plane_12_14))
print("planes meeting only at zero    :", plane_relation(plane_12_13, plane_34_24))
