"""
A tour of the three symmetry groups
===================================

Build the tetrahedral group extended by a coordinate swap, the rotation
group of the cube and the full octahedral group, then look at orders,
classes and the subgroup lattice.
"""

from equihopf.group import GENERATORS, SELECTORS, build_group, conjugacy_classes, element_order, evaluate_word, normalizer
from equihopf import serialize as ser

# all elements are signed permutation matrices
for sel in SELECTORS:
    G = build_group(sel)
    sizes = sorted(len(c) for c in conjugacy_classes(G))
    print(f"{sel:<11} order {len(G):>2}  class sizes {sizes}")

G = build_group("octa-full")
print("generator orders R, C, k, T:", [element_order(G, GENERATORS[x]) for x in "RCkT"])

# the two order-24 groups share the rotations of the tetrahedron but not much else
A = {g.matrix.tobytes() for g in build_group("tetra-full").elements}
B = {g.matrix.tobytes() for g in build_group("octa-rot").elements}
print("common elements of the two order-24 groups:", len(A & B))

# words are read left to right; T^2 is a rotation by pi about the z axis
print(evaluate_word("T^2").matrix)

# a normalizer that shows up in the H mod K analysis
K = G.subgroup(["-T^2C^2TC"])
print("|N(<-T^2C^2TC>)| =", len(normalizer(G, K)))

# the subgroup lattice as graphviz source; render with `dot -Tsvg`
with open("octa_full_lattice.dot", "w") as fh:
    fh.write(ser.subgroup_lattice_dot("octa-full"))
print("wrote octa_full_lattice.dot")
