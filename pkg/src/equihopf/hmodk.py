"""H mod K: admissible (H, K) pairs and the primary Hopf catalog.

Conditions checked for a pair K <= H <= Gamma:

    (a) K is normal in H and H/K is cyclic
    (b) K is an isotropy subgroup of Gamma acting on C^3
    (c) dim_R Fix(K) >= 2, and if it equals 2 then H = K or H = N(K)
    (d) H fixes a connected component of Fix(K) minus L_K

For (d) the variety L_K is computed exactly. When every piece has real
codimension at least 2 the complement is connected, and any H inside N(K)
maps it to itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Sequence

from .exact import field
from .group import (
    ALPHABETS,
    SELECTORS,
    FiniteGroup,
    Subgroup,
    all_subgroups,
    build_group,
    element_order,
    format_word,
    normalizer,
    rewrite_word,
    subgroup_classes,
)
from .twisted import (
    DEFAULT_N,
    FixSubspace,
    IsotropyRecord,
    TwistedElement,
    TwistedSubgroup,
    _fix_cached,
    enumerate_isotropy,
    fix_of_subgroup,
    format_twisted,
    matrix_generators,
    reinterpret,
)

__all__ = [
    "HmodKPair",
    "HopfBranchRecord",
    "Interpretation",
    "spatial_fix",
    "is_isotropy",
    "variety_LK",
    "quotient_is_cyclic",
    "check_conditions",
    "enumerate_pairs",
    "cyclic_subgroup_count",
    "hopf_catalog",
    "classify_unrealizable",
    "pair_key",
    "structure_name",
    "subgroup_words",
]


def _as_twisted(K: Subgroup) -> TwistedSubgroup:
    return TwistedSubgroup(K, {i: 0 for i in K.members})


def spatial_fix(K: Subgroup, N: int = DEFAULT_N) -> FixSubspace:
    """Fix(K) for the spatial action of K on C^3 (no phases)."""
    return fix_of_subgroup(_as_twisted(K), N)


def _pointwise_stabilizer(G: FiniteGroup, fix: FixSubspace) -> frozenset[int]:
    return frozenset(i for i, g in enumerate(G.elements) if all(tuple(g.apply(v)) == tuple(v) for v in fix.basis))


def is_isotropy(G: FiniteGroup, K: Subgroup, N: int = DEFAULT_N) -> bool:
    """K equals the pointwise stabilizer of Fix(K), i.e. of a generic point in it."""
    return _pointwise_stabilizer(G, spatial_fix(K, N)) == K.members


class VarietyError(RuntimeError):
    pass


def variety_LK(G: FiniteGroup, K: Subgroup, N: int = DEFAULT_N) -> list[tuple[FixSubspace, int]]:
    """Pieces Fix(g) ∩ Fix(K), g not in K, with their real codimension in Fix(K)."""
    fixK = spatial_fix(K, N)
    kgens = [TwistedElement(G.elements[i]) for i in K.generators()]
    pieces: dict[tuple, tuple[FixSubspace, int]] = {}
    for gi, g in enumerate(G.elements):
        if gi in K.members:
            continue
        piece = _fix_cached(tuple(kgens + [TwistedElement(g)]), N)
        if piece.complex_dim >= fixK.complex_dim:
            raise VarietyError(f"Fix({g!r}) contains Fix(K): K is not an isotropy subgroup")
        pieces.setdefault(piece.key(), (piece, fixK.real_dim - piece.real_dim))
    return sorted(pieces.values(), key=lambda p: (-p[0].complex_dim, p[0].key()))


def quotient_is_cyclic(H: Subgroup, K: Subgroup) -> bool:
    if not (K <= H and K.is_normal_in(H)):
        return False
    G = H.group
    return any(G.closure([h, *K.members]) == H.members for h in H.members)


@dataclass(eq=False)
class HmodKPair:
    H: Subgroup
    K: Subgroup
    fix_K: FixSubspace
    flags: tuple[bool, bool, bool, bool]
    normalizer_K: Subgroup
    notes: str = ""

    @property
    def quotient_order(self) -> int:
        return len(self.H) // len(self.K)

    @property
    def admissible(self) -> bool:
        return all(self.flags)

    @property
    def group(self) -> FiniteGroup:
        return self.H.group

    def key(self) -> tuple:
        return pair_key(self.H, self.K)

    def describe(self, alphabet: Sequence[str] | None = None) -> dict:
        alphabet = tuple(alphabet or self.group.generator_labels)
        return {
            "K": structure_name(self.K),
            "K_generators": subgroup_words(self.K, alphabet),
            "H": structure_name(self.H),
            "H_generators": subgroup_words(self.H, alphabet),
            "H_order": len(self.H),
            "K_order": len(self.K),
            "fix_K": self.fix_K.describe(),
            "dim": self.fix_K.real_dim,
            "notes": self.notes,
        }


def pair_key(H: Subgroup, K: Subgroup) -> tuple:
    """Canonical form of (H, K) under simultaneous conjugation."""
    G = H.group
    return min((H.conjugate(g).sorted, K.conjugate(g).sorted) for g in range(len(G)))


def check_conditions(G: FiniteGroup, H: Subgroup, K: Subgroup, N: int = DEFAULT_N) -> HmodKPair:
    NK = normalizer(G, K)
    fixK = spatial_fix(K, N)
    a = quotient_is_cyclic(H, K)
    b = K <= H and is_isotropy(G, K, N)
    c = fixK.real_dim >= 2 and (fixK.real_dim != 2 or H == K or H == NK)
    d = False
    if a and b and fixK.real_dim > 0:
        pieces = variety_LK(G, K, N)
        connected = all(codim >= 2 for _, codim in pieces)
        d = connected and H <= NK
    notes = []
    if H == K:
        notes.append("H = K")
    if H == NK:
        notes.append("H = N(K)")
    return HmodKPair(H, K, fixK, (a, b, c, d), NK, ", ".join(notes))


def enumerate_pairs(G: FiniteGroup, N: int = DEFAULT_N, trivial_K: bool = True) -> list[HmodKPair]:
    """All pairs satisfying (a)-(d), one per class under simultaneous conjugacy.

    For a fixed isotropy K the candidates are the H with K <= H <= N(K);
    two of them give conjugate pairs exactly when they are conjugate by N(K).
    """
    subs = all_subgroups(G)
    out: list[HmodKPair] = []
    for cls in subgroup_classes(G):
        K = cls[0]
        if len(K) == 1 and not trivial_K:
            continue
        if not is_isotropy(G, K, N) or spatial_fix(K, N).real_dim < 2:
            continue
        NK = normalizer(G, K)
        seen = set()
        for H in subs:
            if not (K <= H <= NK):
                continue
            key = min(H.conjugate(n).sorted for n in NK.members)
            if key in seen:
                continue
            seen.add(key)
            pair = check_conditions(G, H, K, N)
            if pair.admissible:
                out.append(pair)
    out.sort(key=lambda p: (len(p.K), len(p.H), p.K.sorted, p.H.sorted))
    return out


def cyclic_subgroup_count(G: FiniteGroup) -> int:
    """Conjugacy classes of cyclic subgroups, i.e. the H options paired with K = 1."""
    return sum(1 for cls in subgroup_classes(G) if cls[0].is_cyclic())


def structure_name(S: Subgroup) -> str:
    """Isomorphism type: 1, Z_n, D_n, D_n x Z2, ..."""
    G = S.group
    n = len(S)
    if n == 1:
        return "1"
    orders = [element_order(G, i) for i in S.members]
    if max(orders) == n:
        return f"Z{n}"
    abelian = all(G.table[a][b] == G.table[b][a] for a in S.members for b in S.members)
    if abelian:
        if max(orders) == 2:
            return "D2" if n == 4 else "Z2^" + str(n.bit_length() - 1)
        return f"Z{max(orders)}xZ{n // max(orders)}"
    if max(orders) == n // 2:
        return f"D{n // 2}"
    if n == 12 and max(orders) == 3:
        return "A4"
    if n == 24 and max(orders) == 4 and 3 in orders:
        return "S4"
    minus = G.index.get(-G.elements[G.identity])
    if minus is not None and minus in S.members:
        rest = [i for i in S.members if G.elements[i].det == 1] if n % 2 == 0 else []
        if len(rest) == n // 2:
            inner = Subgroup(G, rest)
            if inner.is_closed():
                return structure_name(inner) + "xZ2"
    return f"order {n}"


def subgroup_words(S: Subgroup, alphabet: Sequence[str]) -> list[str]:
    G = S.group
    if len(S) == 1:
        return ["Id"]
    return [format_word(rewrite_word(G, i, alphabet)) for i in S.generators()]


@dataclass
class Interpretation:
    """One row of a Hopf table as read in a given group Gamma."""

    selector: str
    sigma: TwistedSubgroup
    sigma_words: list[str]
    H: Subgroup
    K: Subgroup
    H_words: list[str]
    K_words: list[str]

    @property
    def branch_count(self) -> int:
        return len(self.H.group) // len(self.H)

    def as_dict(self) -> dict:
        return {
            "group": self.selector,
            "sigma_generators": self.sigma_words,
            "H": structure_name(self.H),
            "H_generators": self.H_words,
            "H_order": len(self.H),
            "K": structure_name(self.K),
            "K_generators": self.K_words,
            "K_order": len(self.K),
            "branch_count": self.branch_count,
        }


def interpret(sigma: TwistedSubgroup, selector: str) -> Interpretation:
    G = build_group(selector)
    S = reinterpret(sigma, G)
    alphabet = ALPHABETS[selector]
    words = [format_twisted(t, alphabet) for t in matrix_generators(S, alphabet)] or ["Id"]
    H, K = S.H, S.kernel()
    return Interpretation(selector, S, words, H, K, subgroup_words(H, alphabet), subgroup_words(K, alphabet))


@dataclass
class HopfBranchRecord:
    index: str
    sigma: TwistedSubgroup
    H: Subgroup
    K: Subgroup
    kind: str  # "C-axial" or "submaximal-conditional"
    fix: FixSubspace
    interpretations: dict[str, Interpretation] = dc_field(default_factory=dict)

    @property
    def branch_count(self) -> int:
        return len(self.H.group) // len(self.H)

    @property
    def generator_words(self) -> dict[str, list[str]]:
        return {s: i.sigma_words for s, i in self.interpretations.items()}


def hopf_catalog(G: FiniteGroup, N: int = DEFAULT_N, interpretations: Sequence[str] = SELECTORS) -> list[HopfBranchRecord]:
    """Rows (b)-(h): the C-axial classes, then the two 4-dim submaximal classes.

    The submaximal rows exist only for suitable cubic coefficients; they are
    kept and tagged ``submaximal-conditional``.
    """
    out = []
    for rec in _isotropy(G, N):
        if rec.sigma is None or rec.index == "i":
            continue
        kind = "C-axial" if rec.c_axial else "submaximal-conditional"
        S = rec.sigma
        row = HopfBranchRecord(rec.index, S, S.H, S.kernel(), kind, rec.fix)
        for sel in interpretations:
            row.interpretations[sel] = interpret(S, sel)
        out.append(row)
    return out


@lru_cache(maxsize=None)
def _isotropy(G: FiniteGroup, N: int) -> tuple[IsotropyRecord, ...]:
    return tuple(enumerate_isotropy(G, N))


def classify_unrealizable(G: FiniteGroup, N: int = DEFAULT_N, trivial_K: bool = True) -> list[HmodKPair]:
    """Admissible pairs with H != 1 that no catalog row (b)-(h) realises."""
    realised = {pair_key(r.H, r.K) for r in hopf_catalog(G, N, interpretations=())}
    return [p for p in enumerate_pairs(G, N, trivial_K) if len(p.H) > 1 and p.key() not in realised]
