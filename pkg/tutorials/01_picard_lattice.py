"""
The lattice spanned by the 24 lines
===================================

Build the Humbert configuration, pass to the quotient by the radical and
look at the discriminant form and the symmetry group.
"""

# %%
from k3lab.config import fragments_and_quadrangles, humbert_configuration, symmetry_group
from k3lab.exact import signature
from k3lab.lattice import discriminant_form, lattice_from_graph

cfg = humbert_configuration()
print(cfg.n, "lines, degrees", sorted(set(cfg.degrees())))

# %%
# Z Gamma / rad.  The basis is fifteen of the lines; H is the sum of any
# (3,3)-fragment, and all sixteen fragment sums agree.
lat = lattice_from_graph(cfg)
print("basis:", " ".join(lat.basis_labels))
print("rank", lat.rank, "det", lat.det(), "signature", signature(lat.gram), "H^2 =", lat.square(lat.h))

frag, proper, improper = fragments_and_quadrangles(cfg)
print(len(frag), "fragments,", len(proper), "proper and", len(improper), "improper quadrangles")

# %%
# Discriminant group and its quadratic form (diagonal in Q/2Z, pairing in Q/Z)
form = discriminant_form(lat)
print("S^vee / S =", " + ".join(f"Z/{d}" for d in form.orders))
for row in form.gram:
    print("   ", " ".join(f"{str(x):>5}" for x in row))

# %%
# Symmetries of the incidence graph, including the swap of the two families
g = symmetry_group(cfg)
print("|Sym| =", g.order(), "transitive:", g.is_transitive())
print("stabilizer of a fragment:", g.setwise_stabilizer(frag[0]).order())
