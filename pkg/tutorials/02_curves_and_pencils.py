"""
Rational curves and elliptic pencils
====================================

Enumerate (-2)-classes of small degree, keep the irreducible ones, then
read off the reducible fibers of the pencil cut out by a quadrangle.
"""

# %%
from k3lab.config import humbert_configuration, is_proper, quadrangles, symmetry_group
from k3lab.curves import classify_conics, rational_curves
from k3lab.lattice import lattice_from_graph
from k3lab.pencils import affine_dynkin, dynkin_subgraphs, fiber_class, pencil_analysis, subgraph_orbits

cfg = humbert_configuration()
lat = lattice_from_graph(cfg)
g = symmetry_group(cfg)

# %%
# Candidates of each degree are the (-2)-vectors v with v.H = d.  A candidate
# is dropped when it meets an accepted curve of lower degree negatively.
census = rational_curves(lat, 4, g)
for d, n in census.counts().items():
    print(f"degree {d}: {n:3d} curves, orbits {census.orbit_sizes(d)}")

# %%
# The nine conics sit one in each cell alpha_r x beta_s
conics = classify_conics(census.curves[2], lat, cfg)
names = {c.coords: c.name for c in conics.values()}
print(sorted(names.values()))

# %%
# Induced 4-cycles are affine A3 diagrams: each gives an elliptic pencil
cycles = dynkin_subgraphs(cfg, affine_dynkin("A3"))
print(len(cycles), "4-cycles in orbits", sorted(len(o) for o in subgraph_orbits(g, cycles)))

q = next(q for q in quadrangles(cfg) if is_proper(cfg, q))
f = fiber_class(q, lat, cfg, census.all_curves())
report = pencil_analysis(f, census, cfg.labels, q)
print("fiber degree", report.fiber_degree, "reducible fibers", report.fiber_types())
for fb in report.fibers:
    print("  ", fb.type_name, [c.name or names.get(c.coords, c.coords) for c in fb.components])
