"""Symmetry groups, quotient-surface topology and bipolar classification for
the xi and eta families of spherical minimal surfaces.

The computation pipeline:

1. `exterior`  — wedge products, Hodge duals and 2-plane rank tests in the
   bivector space R^6.
2. `lattice`   — the (m, k) great-circle lattice on S^3, geodesic
   reflections and the boundary polygons of the two families.
3. `groups`    — the reflection symmetry groups, built independently by
   breadth-first closure and by explicit normal forms.
4. `complexes` — the tessellated quotient surfaces as cell complexes, their
   orientation double covers and -identity quotients.
5. `bipolar`   — sheet multiplicities, tangent-plane transversality,
   fundamental-domain decision, exact area bounds, embeddedness verdict.
6. `report`/`cli` — end-to-end reports with cross-checked verify mode.
"""

from .bipolar import (AreaBounds, BipolarVertexPoint, DomainDecision,
                      MultiplicityResult, TangentPlaneFamily, area_bounds,
                      area_bounds_closed, area_bounds_pipeline,
                      bipolar_orientability, bipolar_orientability_for,
                      bipolar_vertex_multiplicity, branched_vertices,
                      chi_bipolar_closed, chi_surface_closed, classify_planes,
                      embeddedness_verdict, embeddedness_verdict_for,
                      fundamental_domain_decision, image_set_invariance,
                      multiplicity, tangent_planes, tangent_planes_at_vertex,
                      vertex_plane_classifications, vertex_points)
from .complexes import (DoubleCoverComplex, SurfaceComplex, build_complex,
                        double_cover, euler_characteristic_formula,
                        export_complex, orientability, orientable_by_coloring,
                        quotient_by_minus_identity)
from .exterior import (EPS, BIVECTOR_BASIS, Plane2in6, bivector_inner, hodge3,
                       hodge4, plane_relation, plane_relation_stable, wedge2)
from .groups import (GroupElement, NormalFormElement, ReflectionGroup,
                     canonical_key, closure, family_generators, family_group,
                     minus_identity_status, normal_form_elements,
                     normal_form_group, parity, polygon_symmetry_subgroup,
                     stabilizer)
from .lattice import (Arc, GeodesicPolygon, GreatCircle, LatticeConfig,
                      LatticePoints, eta_polygon, family_polygon,
                      geodesic_reflection, lattice_points, lattice_reflection,
                      polar_vertex_data, rot12, rot34, rq_reflection,
                      xi_polygon)
from .report import (BipolarReport, run_batch, run_single, to_csv, to_json,
                     to_markdown)
from . import errors

__version__ = "0.1.0"
