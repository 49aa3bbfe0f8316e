"""
Isotropy subgroups and the H mod K pairs
========================================

Enumerate the isotropy subgroups of Gamma x S^1 on C^3, list the primary
Hopf branches, and compare them with every (H, K) pair allowed by the
H mod K conditions. The pairs that no primary branch realises are printed
at the end.
"""

from equihopf import serialize as ser
from equihopf.group import build_group
from equihopf.hmodk import classify_unrealizable, enumerate_pairs

# nine isotropy types; five of them have a 2-dim fixed-point subspace
print(ser.isotropy_text(ser.isotropy_report("tetra-full")))

# each C-axial row gives a branch of periodic orbits; the last two rows need
# extra conditions on the cubic coefficients
print(ser.hopf_text(ser.hopf_report("octa-rot")))

# admissible (H, K) pairs with K != 1, one per conjugacy class
G = build_group("octa-full")
pairs = enumerate_pairs(G, trivial_K=False)
print(f"octa-full: {len(pairs)} pairs with K != 1")
for p in pairs:
    d = p.describe()
    print(f"  K = {d['K']:<4} {str(d['K_generators']):<28} H = {d['H']:<6} {d['H_generators']}")

missing = classify_unrealizable(G, trivial_K=False)
print(f"{len(missing)} of them are not realised by a primary Hopf branch")
