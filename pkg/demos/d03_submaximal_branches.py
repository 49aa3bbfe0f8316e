"""
Submaximal branches in the 4-dimensional subspaces
==================================================

Inside {(z1, z2, 0)} branches (xi z, z, 0) exist when |alpha/beta| > 1 and
|Re(alpha/beta)| < 1. Inside {(z1, z1, z2)} they come from intersections
of a hyperbola with the unit circle. This script sweeps a few ratios and
writes the circle/conic pictures as SVG.
"""

import numpy as np

from equihopf import serialize as ser
from equihopf.branches import figure_geometry, solve_z1z2, solve_zz_x, submaximal_count

# the existence region for (xi z, z, 0), on a coarse grid
xs = np.linspace(-2, 2, 41)
region = np.array([[submaximal_count(solve_z1z2(complex(u, v), 1)) for u in xs] for v in xs[::-1]])
for row in region[::4]:
    print("".join(".#"[min(n, 1)] for n in row))

# at alpha/beta = 2i the two branches have r^2 = 3 and 1/3
for s in solve_z1z2(2j, 1):
    print(f"r^2 = {s.r_squared:.6f}  xi = {s.xi:.6f}")

# (z, z, xi z): count intersections with R > 0
for ratio in [-1 + 1.25j, -1 + 4j, 0.75, -0.25 + 1.25j, -0.75 + 1.25j, -1.25 + 1.25j]:
    sols = solve_zz_x(ratio, 1)
    tags = [s.classification for s in sols]
    print(f"{ratio!s:>14}: {submaximal_count(sols)} submaximal  {tags}")
    name = f"conic_{ratio.real:+.2f}{ratio.imag:+.2f}i.svg".replace("+", "p").replace("-", "m")
    with open(name, "w") as fh:
        fh.write(ser.geometry_svg(figure_geometry(ratio)))
