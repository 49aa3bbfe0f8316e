"""The Gamma x S^1 action on C^3: twisted elements, twisted subgroups, fixed-point
subspaces and isotropy enumeration.

A phase ``q`` (a Fraction in [0, 1)) stands for e^{2 pi i q}; a twisted
element (g, q) acts on z by z -> e^{2 pi i q} g z. A twisted subgroup is the
graph {(h, phi(h))} of a homomorphism phi: H -> Z_N.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from .exact import Cyclotomic, CyclotomicField, CycloMatrix, field, kernel_basis, numeric_vector, span_key
from .group import (
    ALPHABETS,
    GENERATORS,
    FiniteGroup,
    GroupElement,
    NotRepresentableError,
    Subgroup,
    element_order,
    evaluate_word,
    format_word,
    rewrite_word,
    subgroup_classes,
)

__all__ = [
    "TwistedElement",
    "TwistedSubgroup",
    "FixSubspace",
    "IsotropyRecord",
    "act",
    "fix_of_element",
    "fix_of_subgroup",
    "cycle_rule_dim",
    "circle_homomorphisms",
    "stabilizer_of_point",
    "enumerate_isotropy",
    "twisted_group_equal",
    "generate_twisted",
    "parse_twisted",
    "format_phase",
    "matrix_generators",
    "rewrite_twisted",
    "ROW_NAMES",
    "reference_subspace",
    "reinterpret",
    "product_with_phases",
]

DEFAULT_N = 24


def _phase(q) -> Fraction:
    q = Fraction(q)
    return q - (q.numerator // q.denominator)


def _check_denominator(q: Fraction, N: int) -> int:
    k = q * N
    if k.denominator != 1:
        raise ValueError(f"phase {q} is not a multiple of 1/{N}")
    return int(k) % N


@dataclass(frozen=True)
class TwistedElement:
    g: GroupElement
    q: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "q", _phase(self.q))

    def __matmul__(self, other: "TwistedElement") -> "TwistedElement":
        return TwistedElement(self.g @ other.g, self.q + other.q)

    def inverse(self) -> "TwistedElement":
        return TwistedElement(self.g.inverse(), -self.q)

    def canonical(self) -> tuple[GroupElement, Fraction]:
        """Representative of the 6x6 real matrix: (g, q) and (-g, q + 1/2) coincide."""
        if self.g.signs[0] < 0:
            return (-self.g, _phase(self.q + Fraction(1, 2)))
        return (self.g, self.q)

    def same_matrix(self, other: "TwistedElement") -> bool:
        return self.canonical() == other.canonical()

    def complex_matrix(self) -> np.ndarray:
        return np.exp(2j * np.pi * float(self.q)) * self.g.matrix

    def real_matrix(self) -> np.ndarray:
        """The 6x6 real matrix acting on (Re z, Im z)."""
        m = self.complex_matrix()
        return np.block([[m.real, -m.imag], [m.imag, m.real]])

    def __repr__(self) -> str:
        return f"TwistedElement({format_phase(self.q)}, {self.g.matrix.tolist()})"


def format_phase(q: Fraction) -> str:
    """e^{2 pi i q} in exponential notation, e.g. 'e^{-πi/2}'; '' for q = 0."""
    q = _phase(q)
    if q == 0:
        return ""
    a = 2 * q if 2 * q <= 1 else 2 * q - 2  # multiple of pi in (-1, 1]
    sign = "-" if a < 0 else ""
    a = abs(a)
    num = "" if a.numerator == 1 else str(a.numerator)
    den = "" if a.denominator == 1 else f"/{a.denominator}"
    return f"e^{{{sign}{num}πi{den}}}"


def parse_twisted(text: str) -> TwistedElement:
    """Parse a Table-2 style generator such as 'e^{-πi/2}T', 'e^{pi i}C^2RC' or 'wbarC'."""
    s = text.replace(" ", "").replace("−", "-").replace("pi", "π").replace("ω̄", "wbar")
    q = Fraction(0)
    if s.startswith("wbar"):
        q, s = Fraction(-1, 3), s[4:]
    elif s.startswith("e^{"):
        end = s.index("}")
        body = s[3:end].replace("πi", "π").replace("iπ", "π")
        s = s[end + 1 :]
        sign = -1 if body.startswith("-") else 1
        body = body.lstrip("-")
        num_s, _, den_s = body.partition("/")
        num = Fraction(num_s.replace("π", "") or 1)
        den = Fraction(den_s or 1)
        q = sign * num / den / 2
    return TwistedElement(evaluate_word(s or "Id"), q)


@dataclass(frozen=True)
class FixSubspace:
    basis: tuple[tuple[Cyclotomic, ...], ...]
    ambient: int = 3

    @property
    def complex_dim(self) -> int:
        return len(self.basis)

    @property
    def real_dim(self) -> int:
        return 2 * len(self.basis)

    def key(self) -> tuple:
        return span_key(self.basis)

    def __eq__(self, other):
        return isinstance(other, FixSubspace) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def contains(self, v: Sequence[Cyclotomic]) -> bool:
        if all(x.is_zero() for x in v):
            return True
        return len(span_key(list(self.basis) + [tuple(v)])) == self.complex_dim

    def numeric_basis(self) -> np.ndarray:
        """Columns are the basis vectors as complex doubles, shape (3, dim)."""
        if not self.basis:
            return np.zeros((self.ambient, 0), dtype=complex)
        return np.array([numeric_vector(b) for b in self.basis]).T

    def transformed(self, g: GroupElement) -> "FixSubspace":
        return FixSubspace(tuple(tuple(g.apply(b)) for b in self.basis), self.ambient)

    def describe(self) -> str:
        """Readable parametrisation such as '(z1, z2, z2)'."""
        if not self.basis:
            return "(0, 0, 0)"
        red = [tuple(row) for row in _rref_rows(self.basis)]
        names = ["z"] if len(red) == 1 else [f"z{j + 1}" for j in range(len(red))]
        coords = []
        for c in range(self.ambient):
            terms = []
            for name, row in zip(names, red):
                coef = row[c]
                if coef.is_zero():
                    continue
                terms.append(_coef_str(coef) + name)
            coords.append("+".join(terms) if terms else "0")
        return "(" + ", ".join(coords) + ")"


def _rref_rows(vectors):
    from .exact import rref

    return rref(vectors)[0]


def _coef_str(c: Cyclotomic) -> str:
    F = c.field
    for k in range(F.order):
        if c == F.root(k):
            return _ROOT_NAMES.get(Fraction(k, F.order), f"e^{{2πi·{Fraction(k, F.order)}}}")
        if c == -F.root(k) and k == 0:
            return "-"
    return f"({complex(c):.3g})"


_ROOT_NAMES = {
    Fraction(0): "",
    Fraction(1, 2): "-",
    Fraction(1, 4): "i",
    Fraction(3, 4): "-i",
    Fraction(1, 3): "ω",
    Fraction(2, 3): "ω²",
}


def _exact_vector(z, F: CyclotomicField) -> tuple[Cyclotomic, ...]:
    return tuple(F(x) if not isinstance(x, Cyclotomic) else x for x in z)


def act(t: TwistedElement, z, F: CyclotomicField | None = None):
    """e^{2 pi i q} g z for an exact vector (Cyclotomic entries) or a numeric array."""
    if isinstance(z, np.ndarray) or (len(z) and isinstance(z[0], (complex, float, np.number))):
        arr = np.asarray(z, dtype=complex)
        return np.exp(2j * np.pi * float(t.q)) * (arr @ t.g.matrix.T)
    if F is None:
        F = next((x.field for x in z if isinstance(x, Cyclotomic)), field(DEFAULT_N))
    z = _exact_vector(z, F)
    k = _check_denominator(t.q, F.order)
    return tuple(x.times_root(k) for x in t.g.apply(z))


def _element_matrix(t: TwistedElement, F: CyclotomicField) -> CycloMatrix:
    k = _check_denominator(t.q, F.order)
    rows = [[F.zero] * 3 for _ in range(3)]
    for j, (p, s) in enumerate(zip(t.g.perm, t.g.signs)):
        rows[p][j] = F.root(k) if s > 0 else -F.root(k)
    for i in range(3):
        rows[i][i] = rows[i][i] - F.one
    return CycloMatrix(rows)


@lru_cache(maxsize=None)
def _fix_cached(elements: tuple[TwistedElement, ...], N: int) -> FixSubspace:
    F = field(N)
    if not elements:
        return FixSubspace(tuple(tuple(F.one if i == j else F.zero for j in range(3)) for i in range(3)))
    rows = []
    for t in elements:
        rows.extend(_element_matrix(t, F).rows)
    return FixSubspace(tuple(kernel_basis(rows)))


def fix_of_element(t: TwistedElement, N: int = DEFAULT_N) -> FixSubspace:
    """Exact kernel of e^{2 pi i q} g - Id over Q(zeta_N)."""
    return _fix_cached((t,), N)


def cycle_rule_dim(t: TwistedElement) -> int:
    """Complex dim of Fix(t): one per cycle whose sign product times e^{2 pi i q L} is 1."""
    dim = 0
    for cyc, sign in t.g.cycles():
        total = _phase(t.q * len(cyc) + (Fraction(1, 2) if sign < 0 else 0))
        dim += total == 0
    return dim


@dataclass(eq=False)
class TwistedSubgroup:
    """Graph {(h, phi(h)) : h in H} of a homomorphism phi: H -> Z_N."""

    H: Subgroup
    phi: Mapping[int, Fraction]

    def __post_init__(self):
        self.phi = {i: _phase(self.phi[i]) for i in self.H.sorted}

    @property
    def group(self) -> FiniteGroup:
        return self.H.group

    def __len__(self) -> int:
        return len(self.H)

    @property
    def elements(self) -> list[TwistedElement]:
        G = self.group
        return [TwistedElement(G.elements[i], self.phi[i]) for i in self.H.sorted]

    def key(self) -> tuple:
        return tuple((i, self.phi[i]) for i in self.H.sorted)

    def __eq__(self, other):
        return isinstance(other, TwistedSubgroup) and other.group is self.group and other.key() == self.key()

    def __hash__(self):
        return hash(self.key())

    def kernel(self) -> Subgroup:
        """Spatial part K = {h : phi(h) = 0}."""
        return Subgroup(self.group, (i for i, q in self.phi.items() if q == 0))

    def is_homomorphism(self) -> bool:
        G = self.group
        return all(
            self.phi[G.table[a][b]] == _phase(self.phi[a] + self.phi[b]) for a in self.H.members for b in self.H.members
        )

    def conjugate(self, g: int) -> "TwistedSubgroup":
        G = self.group
        return TwistedSubgroup(
            Subgroup(G, (G.conj(g, h) for h in self.H.members)), {G.conj(g, h): q for h, q in self.phi.items()}
        )

    def canonical_key(self) -> tuple:
        return min(self.conjugate(g).key() for g in range(len(self.group)))

    def generators(self) -> list[TwistedElement]:
        G = self.group
        return [TwistedElement(G.elements[i], self.phi[i]) for i in self.H.generators()]

    def contains(self, t: TwistedElement) -> bool:
        i = self.group.index.get(t.g)
        return i is not None and i in self.H.members and self.phi[i] == t.q

    def __repr__(self) -> str:
        gens = ", ".join(format_phase(t.q) + format_word(self.group.word(t.g)) for t in self.generators())
        return f"TwistedSubgroup(order={len(self)}, gens={{{gens or 'Id'}}})"


def fix_of_subgroup(S: TwistedSubgroup, N: int = DEFAULT_N) -> FixSubspace:
    """Intersection of the generators' fixed spaces (one stacked kernel)."""
    return _fix_cached(tuple(S.generators()), N)


def circle_homomorphisms(H: Subgroup, N: int = DEFAULT_N) -> list[dict[int, Fraction]]:
    """All homomorphisms H -> Z_N (phases k/N), the trivial one first."""
    G = H.group
    gens = H.generators()
    choices = []
    for g in gens:
        o = element_order(G, g)
        if N % o:
            # images must satisfy o * phi(g) = 0 in Z_N
            step = N // np.gcd(N, o)
            choices.append([Fraction(k, N) for k in range(0, N, step)])
        else:
            choices.append([Fraction(k, o) for k in range(o)])
    out = []
    for images in itertools.product(*choices):
        phi = {G.identity: Fraction(0)}
        frontier = [G.identity]
        ok = True
        while frontier and ok:
            nxt = []
            for h in frontier:
                for g, q in zip(gens, images):
                    hg = G.table[h][g]
                    val = _phase(phi[h] + q)
                    if hg in phi:
                        if phi[hg] != val:
                            ok = False
                            break
                    else:
                        phi[hg] = val
                        nxt.append(hg)
                if not ok:
                    break
            frontier = nxt
        if ok:
            out.append(phi)
    return out


def stabilizer_of_point(z: Sequence[Cyclotomic], G: FiniteGroup, N: int = DEFAULT_N) -> TwistedSubgroup:
    """All (g, q) with e^{2 pi i q} g z = z, computed exactly."""
    F = field(N)
    z = _exact_vector(z, F)
    nz = [j for j, x in enumerate(z) if not x.is_zero()]
    if not nz:
        raise ValueError("z = 0: the isotropy is the full group Gamma x S^1")
    multiples = [[x.times_root(m) for m in range(N)] for x in z]
    lookup = {multiples[nz[0]][m]: m for m in range(N)}
    phi: dict[int, Fraction] = {}
    for gi, g in enumerate(G.elements):
        gz = g.apply(z)
        m = lookup.get(gz[nz[0]])
        if m is None:
            continue
        if all(gz[j] == multiples[j][m] for j in range(3)):
            phi[gi] = _phase(Fraction(-m, N))
    return TwistedSubgroup(Subgroup(G, phi), phi)


ROW_NAMES = {
    "a": "Origin",
    "b": "Pure mode",
    "c": "Standing wave",
    "d": "Rotating wave",
    "e": "Standing wave",
    "f": "Rotating wave",
    "g": "2-Sphere solutions",
    "h": "2-Sphere solutions",
    "i": "General solutions",
}

# Fixed-point subspaces in the form of the isotropy table (coordinates as
# (power of zeta_N numerator / N) or None for zero).
_REFERENCE = {
    "b": [(0, None, None)],
    "c": [(0, 0, 0)],
    "d": [(0, Fraction(1, 3), Fraction(2, 3))],
    "e": [(None, 0, 0)],
    "f": [(0, Fraction(1, 4), None)],
    "g": [(None, 0, None), (None, None, 0)],
    "h": [(0, None, None), (None, 0, 0)],
    "i": [(0, None, None), (None, 0, None), (None, None, 0)],
}


def reference_subspace(index: str, N: int = DEFAULT_N) -> FixSubspace:
    F = field(N)
    if index == "a":
        return FixSubspace(())
    vecs = []
    for v in _REFERENCE[index]:
        vecs.append(tuple(F.zero if c is None else F.root(int(Fraction(c) * N)) for c in v))
    return FixSubspace(tuple(vecs))


@dataclass(eq=False)
class IsotropyRecord:
    index: str
    name: str
    sigma: TwistedSubgroup | None  # None for the origin (the whole Gamma x S^1)
    fix: FixSubspace
    group: FiniteGroup
    n_conjugates: int = 1

    @property
    def real_dim(self) -> int:
        return self.fix.real_dim

    @property
    def c_axial(self) -> bool:
        return self.real_dim == 2

    @property
    def order(self) -> int | None:
        return None if self.sigma is None else len(self.sigma)

    @property
    def branch_count(self) -> int | None:
        """Number of distinct trajectories in the group orbit, |Gamma| / |H|."""
        return None if self.sigma is None else len(self.group) // len(self.sigma)

    def generator_words(self, alphabet: Sequence[str] | None = None) -> list[str]:
        if self.sigma is None:
            labels = alphabet or self.group.generator_labels
            # -Id = e^{i pi} is already in the circle
            return [a for a in labels if a != "-Id"] + ["e^{iθ}"]
        alphabet = tuple(alphabet or self.group.generator_labels)
        return [format_twisted(t, alphabet) for t in matrix_generators(self.sigma, alphabet)] or ["Id"]


def matrix_generators(S: TwistedSubgroup, alphabet: Sequence[str] | None = None) -> list[TwistedElement]:
    """A small generating set of S as a group of 6x6 matrices.

    Elements acting trivially, such as (-Id, 1/2), are dropped; candidates are
    taken greedily by (nonzero phase, order, word length).
    """
    alphabet = tuple(alphabet or S.group.generator_labels)
    G = S.group
    ident = TwistedElement(GENERATORS["Id"]).canonical()
    cands = {}
    for t in S.elements:
        k = t.canonical()
        if k != ident and k not in cands:
            cands[k] = t
    ranked = []
    for t in cands.values():
        q, w = rewrite_twisted(t, alphabet)
        order = len(generate_twisted([t]))
        ranked.append(((q != 0, -order, "-Id" in w, len(w), w), TwistedElement(evaluate_word(w or "Id"), q)))
    ranked.sort(key=lambda r: r[0])
    target = set(cands) | {ident}
    chosen: list[TwistedElement] = []
    span = {ident}
    for _, t in ranked:
        if span == target:
            break
        if t.canonical() not in span:
            chosen.append(t)
            span = generate_twisted(chosen)
    for t in list(chosen):
        rest = [u for u in chosen if u is not t]
        if generate_twisted(rest) == target:
            chosen = rest
    return chosen


def rewrite_twisted(t: TwistedElement, alphabet: Sequence[str]) -> tuple[Fraction, tuple[str, ...]]:
    """Write the 6x6 matrix of t as e^{2 pi i q'} w with w a word over ``alphabet``.

    Both (g, q) and (-g, q + 1/2) are tried; preference goes to phase 0,
    then to words without -Id, then to the shorter word.
    """
    options = []
    for g, q in ((t.g, t.q), (-t.g, _phase(t.q + Fraction(1, 2)))):
        try:
            w = rewrite_word(None, g, alphabet)
        except NotRepresentableError:
            continue
        options.append(((q != 0, "-Id" in w, len(w)), q, w))
    if not options:
        raise NotRepresentableError(f"{t!r} is not a twisted word over {{{', '.join(alphabet)}}}")
    _, q, w = min(options, key=lambda o: o[0])
    return q, w


def format_twisted(t: TwistedElement, alphabet: Sequence[str]) -> str:
    q, w = rewrite_twisted(t, alphabet)
    return format_phase(q) + (format_word(w) if w or not q else "")


def _generic_points(fix: FixSubspace, rng: np.random.Generator, N: int, samples: int):
    F = field(N)
    i = F.root(N // 4)
    for _ in range(samples):
        coeffs = rng.integers(-10, 11, size=(len(fix.basis), 2))
        z = [F.zero] * 3
        for (a, b), v in zip(coeffs, fix.basis):
            c = F(int(a)) + F(int(b)) * i
            z = [x + c * y for x, y in zip(z, v)]
        yield tuple(z)


def _generic_stabilizer(fix: FixSubspace, G: FiniteGroup, N: int, seed: int, samples: int = 3) -> TwistedSubgroup:
    rng = np.random.default_rng(seed)
    stabs = []
    for z in _generic_points(fix, rng, N, samples):
        if all(x.is_zero() for x in z):
            continue
        stabs.append(stabilizer_of_point(z, G, N))
    keys = [set(s.key()) for s in stabs]
    common = set.intersection(*keys)
    if any(k != common for k in keys):
        warnings.warn("generic-point samples disagree; using the intersection of their stabilizers", RuntimeWarning)
    phi = dict(common)
    return TwistedSubgroup(Subgroup(G, phi), phi)


def enumerate_isotropy(G: FiniteGroup, N: int = DEFAULT_N, seed: int = 0) -> list[IsotropyRecord]:
    """Isotropy subgroups of Gamma x S^1 on C^3 up to conjugacy, labelled (a)-(i).

    Every pair (H, phi) with H a subgroup-class representative is tested: it is
    kept when its fixed space is nonzero and equals the stabilizer of generic
    points of that space.
    """
    found: dict[tuple, TwistedSubgroup] = {}
    for cls in subgroup_classes(G):
        H = cls[0]
        for phi in circle_homomorphisms(H, N):
            S = TwistedSubgroup(H, phi)
            fix = fix_of_subgroup(S, N)
            if fix.complex_dim == 0:
                continue
            if _generic_stabilizer(fix, G, N, seed) != S:
                continue
            found.setdefault(S.canonical_key(), S)
    records = [IsotropyRecord("a", ROW_NAMES["a"], None, FixSubspace(()), G)]
    refs = {idx: reference_subspace(idx, N) for idx in "bcdefghi"}
    for S in found.values():
        fix = fix_of_subgroup(S, N)
        label, rep = None, S
        for g in range(len(G)):
            key = fix.transformed(G.elements[g]).key()
            label = next((idx for idx, ref in refs.items() if ref.key() == key), None)
            if label is not None:
                rep = S.conjugate(g)
                break
        label = label or "?"
        n_conj = len({S.conjugate(g).key() for g in range(len(G))})
        records.append(IsotropyRecord(label, ROW_NAMES.get(label, ""), rep, fix_of_subgroup(rep, N), G, n_conj))
    records.sort(key=lambda r: (r.index, -(r.order or 10**9)))
    return records


def generate_twisted(generators: Iterable[TwistedElement], bound: int = 100_000) -> set[tuple[GroupElement, Fraction]]:
    """Closure of a set of twisted elements, as canonical 6x6-matrix keys."""
    gens = list(generators)
    ident = TwistedElement(GENERATORS["Id"], Fraction(0))
    seen = {ident.canonical(): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for b in gens:
                c = a @ b
                k = c.canonical()
                if k not in seen:
                    if len(seen) >= bound:
                        raise ValueError("twisted closure exceeds bound")
                    seen[k] = c
                    nxt.append(c)
        frontier = nxt
    return set(seen)


def twisted_group_equal(A: Iterable[TwistedElement], B: Iterable[TwistedElement]) -> bool:
    """Do the two finite sets of twisted elements give the same set of 6x6 matrices?"""
    return {t.canonical() for t in A} == {t.canonical() for t in B}


def product_with_phases(G: FiniteGroup, N: int = DEFAULT_N, phases: bool = True) -> list[TwistedElement]:
    """All (g, k/N) for g in G (or only phase 0)."""
    ks = range(N) if phases else [0]
    return [TwistedElement(g, Fraction(k, N)) for g in G.elements for k in ks]


def alphabet_for(G: FiniteGroup) -> tuple[str, ...]:
    return ALPHABETS.get(G.name, G.generator_labels)


def reinterpret(S: TwistedSubgroup, G: FiniteGroup) -> TwistedSubgroup:
    """The same set of 6x6 matrices read as a twisted subgroup of G x S^1.

    Every (g, q) with g in G whose matrix e^{2 pi i q} g lies in S is kept.
    """
    phases = dict(t.canonical() for t in S.elements)
    phi: dict[int, Fraction] = {}
    for gi, g in enumerate(G.elements):
        if g.signs[0] > 0:
            if g in phases:
                phi[gi] = phases[g]
        elif -g in phases:
            phi[gi] = _phase(phases[-g] + Fraction(1, 2))
    return TwistedSubgroup(Subgroup(G, phi), phi)
