"""The reflection symmetry groups of the xi and eta tessellations.

Each group is built twice -- breadth-first closure of the boundary-edge
reflections, and explicit normal forms with an exact product law -- and the
two element sets are compared.

Run:  python3 demos/02_symmetry_groups.py
"""

from lawson.groups import (expected_order, family_group,
                           minus_identity_status, normal_form_group)
from lawson.lattice import LatticeConfig

print(f"{'family':6} {'m':>2} {'k':>2} {'|G| bfs':>8} {'|G| forms':>10} "
      f"{'closed':>7} {'sets':>6} {'-identity':>12}")
for family in ("xi", "eta"):
    for m in range(2, 6):
        for k in range(2, 6):
            if (m, k) == (2, 2):
                continue
            config = LatticeConfig(m=m, k=k)
            bfs = family_group(family, config)
            forms = normal_form_group(family, config)
            agree = "same" if bfs.keys() == forms.keys() else "DIFFER"
            print(f"{family:6} {m:>2} {k:>2} {bfs.order:>8} {forms.order:>10} "
                  f"{expected_order(family, config):>7} {agree:>6} "
                  f"{minus_identity_status(forms):>12}")

print()
print("xi:  |G| = 2mk; -identity is an even word exactly when m and k are even.")
print("eta: |G| = 2mk for k even (every element carries both word parities),")
print("     4mk for k odd, where -identity appears as an odd word when m is even.")
