"""Independent brute-force derivations of the frozen test constants.

Uses plain numpy matrices and sympy only; nothing from equihopf is imported.
Run with ``python3 tests/oracles/derive.py``; the printed values are the
ones written into the test modules.
"""

import itertools
import json

import numpy as np
import sympy as sp

R = np.diag([1, -1, -1])
C = np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
K = np.array([[1, 0, 0], [0, 0, 1], [0, 1, 0]])
T = np.array([[0, 1, 0], [-1, 0, 0], [0, 0, 1]])
I3 = np.eye(3, dtype=int)


def close(gens):
    seen = {I3.tobytes(): I3}
    frontier = [I3]
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                b = a @ g
                if b.tobytes() not in seen:
                    seen[b.tobytes()] = b
                    new.append(b)
        frontier = new
    return list(seen.values())


def key(m):
    return m.tobytes()


def classes(G):
    left = {key(g): g for g in G}
    out = []
    while left:
        g = next(iter(left.values()))
        cls = {key(h @ g @ h.T) for h in G}
        out.append(len(cls))
        for k in cls:
            left.pop(k, None)
    return sorted(out)


def subgroups(G):
    """All subgroups by closing every pair (enough for these groups, checked by triples)."""
    found = set()
    for a, b, c in itertools.combinations_with_replacement(range(len(G)), 3):
        S = close([G[a], G[b], G[c]])
        found.add(frozenset(key(s) for s in S))
    return found


def order(g):
    m, n = g.copy(), 1
    while not np.array_equal(m, I3):
        m, n = m @ g, n + 1
    return n


out = {}
groups = {"tetra-full": close([C, R, K]), "octa-rot": close([C, T]), "octa-full": close([C, T, -I3])}
for name, G in groups.items():
    out[f"{name} order"] = len(G)
    out[f"{name} classes"] = classes(G)
    subs = subgroups(G)
    out[f"{name} subgroups"] = len(subs)
    out[f"{name} order-8 subgroups"] = sum(len(s) == 8 for s in subs)

# cyclic subgroup classes up to conjugacy, brute force
for name, G in groups.items():
    cyc = set()
    for g in G:
        S = frozenset(key(m) for m in close([g]))
        cls = frozenset(frozenset(key(h @ np.frombuffer(k, dtype=int).reshape(3, 3) @ h.T) for k in S) for h in G)
        cyc.add(cls)
    out[f"{name} cyclic subgroup classes"] = len(cyc)

# normalizers of <-T^2C^2TC> and <-TC^2TC^2> in octa-full
G = groups["octa-full"]
for word, m in [("-T^2C^2TC", -T @ T @ C @ C @ T @ C), ("-TC^2TC^2", -T @ C @ C @ T @ C @ C)]:
    S = {key(x) for x in close([m])}
    N = [h for h in G if {key(h @ np.frombuffer(k, dtype=int).reshape(3, 3) @ h.T) for k in S} == S]
    out[f"|N(<{word}>)|"] = len(N)
    out[f"orders in N(<{word}>)"] = sorted({order(h) for h in N})

# homomorphisms to Z_24, brute force over generator images
def homs(gens):
    H = close(gens)
    count = 0
    for images in itertools.product(range(24), repeat=len(gens)):
        phi = {key(I3): 0}
        frontier = [I3]
        ok = True
        while frontier and ok:
            new = []
            for a in frontier:
                for g, q in zip(gens, images):
                    b = a @ g
                    val = (phi[key(a)] + q) % 24
                    if key(b) in phi:
                        ok &= phi[key(b)] == val
                    else:
                        phi[key(b)] = val
                        new.append(b)
            frontier = new
        count += ok
    return count

out["homs <C>"] = homs([C])
out["homs <C, T^2C^2T>"] = homs([C, T @ T @ C @ C @ T])

# kernel of e^{-2 pi i/3} C - Id
w = sp.exp(2 * sp.pi * sp.I / 3)
M = sp.conjugate(w) * sp.Matrix(C.tolist()) - sp.eye(3)
ns = M.nullspace()
v = ns[0] / ns[0][0]
out["ker(wbar C - Id)"] = [str(sp.nsimplify(sp.simplify(x))) for x in v]
out["zeta_24^8"] = [float(sp.re(w)), float(sp.im(w))]

# reduced cubic coefficient on each reference line: F(t v) = t|t|^2 c v for the cubic part
a, b, g = sp.symbols("alpha beta gamma")
z = sp.symbols("z1:4")
zb = sp.symbols("zb1:4")
def cubic(zv, zbv):
    res = []
    for j in range(3):
        o = [k for k in range(3) if k != j]
        s = sum(zv[k] * zbv[k] for k in range(3))
        res.append(zv[j] * (g * s + a * sum(zv[k] * zbv[k] for k in o)) + b * zbv[j] * sum(zv[k] ** 2 for k in o))
    return res
lines = {
    "b": [1, 0, 0],
    "c": [1, 1, 1],
    "d": [1, w, w**2],
    "e": [0, 1, 1],
    "f": [1, sp.I, 0],
}
for idx, v in lines.items():
    vb = [sp.conjugate(x) for x in v]
    f = cubic(v, vb)
    j = next(i for i in range(3) if v[i] != 0)
    norm = sum(sp.expand(x * y) for x, y in zip(v, vb))
    c = sp.simplify(sp.expand(f[j] / v[j]) / norm)
    out[f"c({idx})"] = str(sp.nsimplify(sp.expand(c)))

# (xi z, z, 0) at alpha/beta = 2i: solve alpha(1 - r^2) + beta(e^{-2i phi} - r^2 e^{2i phi}) = 0
r2, ph = sp.symbols("r2 phi", real=True)
rho = 2 * sp.I
eq = sp.expand((rho * (1 - r2) + sp.exp(-2 * sp.I * ph) - r2 * sp.exp(2 * sp.I * ph)).rewrite(sp.cos))
sols = sp.solve([sp.re(eq), sp.im(eq)], [r2, ph], dict=True)
out["2i branches r^2"] = sorted({str(sp.nsimplify(s[r2])) for s in sols if s[r2].is_positive})
out["2i branches cos2phi"] = sorted({str(sp.simplify(sp.cos(2 * s[ph]))) for s in sols})

# x0, y0 at ratio 0 and the Ki of ratio -1 / 3/4
for rr in [0, -1, sp.Rational(3, 4)]:
    x0 = (1 - 3 * sp.re(rr)) / 4
    y0 = sp.im(rr) / 4
    Ki = 3 * sp.im(rr) * (sp.re(rr) + 1) / 16
    out[f"ratio {rr}: x0, y0, Ki"] = [str(x0), str(y0), str(Ki)]

# symmetry of reference points: H = {g : g x = e^{i theta} x}, K = {theta = 0}
pts = {
    "b": [1, 0, 0], "c": [1, 1, 1], "d": [1, np.exp(2j * np.pi / 3), np.exp(4j * np.pi / 3)],
    "e": [0, 1, 1], "f": [1, 1j, 0], "g": [0, 1, 0.37 + 0.61j], "h": [1, 0.37 + 0.61j, 0.37 + 0.61j],
}
for name, G in groups.items():
    for idx, x in pts.items():
        x = np.array(x, dtype=complex)
        H, Kc = 0, 0
        for m in G:
            y = m @ x
            lam = np.vdot(x, y) / np.vdot(x, x)
            if abs(abs(lam) - 1) < 1e-12 and np.linalg.norm(y - lam * x) < 1e-12:
                H += 1
                Kc += abs(lam - 1) < 1e-12
        out[f"{name} ({idx}) |H|, |K|, branches"] = [H, Kc, len(G) // H]

print(json.dumps({k: v for k, v in out.items() if v is not None}, indent=1, default=int))
