"""Equivariant Hopf bifurcation tools for cubic symmetry groups acting on C^3.

The three groups <T, kappa>, O and <O, -Id> act on C^3 by signed
permutations. This package builds them exactly, lists the isotropy
subgroups of Gamma x S^1, checks the H mod K conditions, catalogs the
primary Hopf branches, solves the cubic normal form's submaximal branch
equations and checks orbit symmetries by integration.
"""

from .group import ALPHABETS, SELECTORS, GroupElement, Subgroup, build_group, evaluate_word, parse_word
from .twisted import DEFAULT_N, TwistedElement, enumerate_isotropy, fix_of_subgroup, twisted_group_equal
from .hmodk import classify_unrealizable, enumerate_pairs, hopf_catalog
from .normalform import NFParams, eval_vf, restrict
from .branches import figure_geometry, solve_z1z2, solve_zz_x
from .odeverify import detect_symmetries, find_periodic, interpret_orbit, supercritical_params, verify_row

__version__ = "0.1.0"
