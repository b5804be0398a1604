"""End-to-end bipolar classification: sheet multiplicities, tangent-plane
relations at branched vertices, the decided fundamental domain, exact area
bounds and the embeddedness verdict.

Run:  python3 demos/04_bipolar_classification.py
"""

from lawson.bipolar import (branched_vertices, classify_planes,
                            fundamental_domain_decision, multiplicity,
                            tangent_planes)
from lawson.lattice import LatticeConfig, family_polygon
from lawson.report import run_batch, to_markdown

family, m, k = "eta", 2, 3
config = LatticeConfig(m=m, k=k)
polygon = family_polygon(family, config)

print(f"== {family}({m},{k}) ==")
print("sheet multiplicities at the polygon vertices:")
for label in polygon.vertex_labels:
    result = multiplicity(family, config, label)
    print(f"  {label:>3}: {result.multiplicity} "
          f"({result.raw_count} signed solutions / stabilizer cosets)")

print("tangent-plane relations at branched vertices (interior angle < pi/2):")
for label in branched_vertices(family, config):
    cls = classify_planes(tangent_planes(family, config, label, verify=True))
    print(f"  {label:>3}: {cls['count']} sheet planes, pair counts {cls['counts']}")

decision = fundamental_domain_decision(family, config)
print(f"fundamental domain: {decision.tag}, chi = {decision.chi} "
      f"(surface chi = {decision.chi_surface}, "
      f"orientable = {decision.orientable_surface}, "
      f"-identity = {decision.minus_identity})")

print()
print("== full classification, both families, 2 <= m,k <= 4 ==")
for fam in ("xi", "eta"):
    reports, failures = run_batch(fam, range(2, 5), range(2, 5))
    assert not failures
    print(to_markdown(reports))
