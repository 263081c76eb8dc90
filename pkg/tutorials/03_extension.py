"""
Adding a symmetric conic
========================

Look for 0/1 patterns on the lines that a further conic could have,
adjoin the chosen one and inspect the resulting rank-16 lattice.
"""

# %%
from k3lab.extension import cell_label, degeneration_strata, extension_lab

r = extension_lab()
cand = r.candidates
print(len(cand.patterns), "patterns:", len(cand.old), "old conics and orbits", [len(o) for o in cand.new_orbits])
print("chosen pattern meets lines", cand.chosen.flat())

# %%
print("rank", r.lattice.rank, "curves", r.curves.census.counts())
print("coloured symmetry group", r.group.order(), "acting on lines as", r.line_image.order())
print("signs on the discriminant:", sorted(s for _, s in r.involutions))

# %%
# Halving the 27 invariant divisors gives the intersection pattern of the
# lines on a cubic surface.
cu = r.cubic
print("srg", cu.srg, "double-six", cu.double_six, "tritangent", cu.tritangent)

# %%
strata = degeneration_strata()
for rho, cells_, orbit in strata.strata:
    print(rho, "{" + ",".join(cell_label(i) for i in cells_) + "}", "orbit", orbit)
