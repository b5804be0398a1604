"""From tessellation to closed surface: cell complexes, Euler characteristic,
orientability, the orientation double cover and the -identity quotient.

Run:  python3 demos/03_quotient_surfaces.py
"""

from lawson.complexes import (build_complex, double_cover,
                              euler_characteristic_formula,
                              quotient_by_minus_identity)
from lawson.groups import normal_form_group
from lawson.lattice import LatticeConfig, family_polygon

print(f"{'family':6} {'m':>2} {'k':>2} {'F':>4} {'E':>4} {'V':>4} "
      f"{'chi':>4} {'formula':>8} {'orientable':>11}")
for family in ("xi", "eta"):
    for m, k in [(3, 2), (2, 3), (4, 2), (3, 3), (4, 4)]:
        config = LatticeConfig(m=m, k=k)
        group = normal_form_group(family, config)
        polygon = family_polygon(family, config)
        cx = build_complex(group, polygon)
        formula = euler_characteristic_formula(polygon, group.order)
        print(f"{family:6} {m:>2} {k:>2} {cx.num_faces:>4} {cx.num_edges:>4} "
              f"{cx.num_vertices:>4} {cx.chi:>4} {formula:>8} "
              f"{'yes' if cx.orientable else 'no':>11}")

print()
print("eta with k even is non-orientable; its orientation double cover")
print("doubles chi and carries a free sheet-swapping deck involution:")
config = LatticeConfig(m=3, k=2)
base = build_complex(normal_form_group("eta", config), family_polygon("eta", config))
cover = double_cover(base)
print(f"  eta(3,2): chi(base) = {base.chi}, chi(cover) = {cover.chi}, "
      f"cover orientable = {cover.orientable}, connected = {cover.is_connected()}")

print()
print("when -identity lies in the group it acts freely, so the surface")
print("descends to a quotient with half the Euler characteristic:")
config = LatticeConfig(m=4, k=4)
cx = build_complex(normal_form_group("xi", config), family_polygon("xi", config))
quotient = quotient_by_minus_identity(cx)
print(f"  xi(4,4): chi = {cx.chi} -> chi(quotient) = {quotient.chi}, "
      f"quotient orientable = {quotient.orientable}")
