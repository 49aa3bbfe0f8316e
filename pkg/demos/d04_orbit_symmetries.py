"""
Reading symmetries off numerical orbits
=======================================

Pick cubic coefficients for which all five C-axial branches are stable
inside their fixed-point subspaces, integrate each one with RK4, and
recover (H, K) from the sampled orbit. The same orbit is read in each of
the three groups.
"""

from equihopf.odeverify import axial_seed, detect_symmetries, find_periodic, supercritical_params
from equihopf.group import SELECTORS, build_group, format_word

p = supercritical_params(seed=0)
print("lambda, alpha, beta, gamma =", p.lam, p.alpha, p.beta, p.gamma)

for idx in "bcdef":
    z0, fix = axial_seed(idx, p)
    orbit = find_periodic(p, z0, transient=50.0, subspace=fix)
    print(f"({idx}) {fix.describe():<22} period {orbit.period:.6f}  closure {orbit.closure_error:.1e}")
    for sel in SELECTORS:
        det = detect_symmetries(orbit, build_group(sel))
        w = det.words.get(sel, {})
        print(f"     {sel:<11} H = {w.get('H')}  K = {w.get('K')}")

# time shifts of the rotating wave (d): C moves the orbit by a third of a period
z0, fix = axial_seed("d", p)
orbit = find_periodic(p, z0, transient=0.0, subspace=fix)
G = build_group("tetra-full")
det = detect_symmetries(orbit, G)
for g, s in det.shifts.items():
    print(f"  {format_word(G.words[g]) or 'Id':<4} shift {s}")
