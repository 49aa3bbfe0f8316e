"""Finite groups of 3x3 signed permutation matrices.

The three groups of interest are built from named generators::

    tetra-full   <R, C, k>      full tetrahedral group, order 24
    octa-rot     <C, T>         rotations of the cube, order 24
    octa-full    <C, T, -Id>    full cube group, order 48

Words are tuples of generator labels read left to right as a matrix product,
so ``("T", "C", "C")`` is the matrix T @ C @ C.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

__all__ = [
    "GroupElement",
    "FiniteGroup",
    "Subgroup",
    "NotRepresentableError",
    "GENERATORS",
    "ALPHABETS",
    "SELECTORS",
    "generate_group",
    "build_group",
    "element_order",
    "conjugacy_classes",
    "all_subgroups",
    "subgroup_classes",
    "normalizer",
    "rewrite_word",
    "evaluate_word",
    "parse_word",
    "format_word",
]


class NotRepresentableError(ValueError):
    """Raised when an element is not a product of the given alphabet."""


@dataclass(frozen=True)
class GroupElement:
    """Signed permutation: column j of the matrix is signs[j] * e_{perm[j]}."""

    perm: tuple[int, int, int]
    signs: tuple[int, int, int]

    @classmethod
    def from_matrix(cls, m) -> "GroupElement":
        m = np.asarray(m)
        if m.shape != (3, 3):
            raise ValueError("expected a 3x3 matrix")
        perm, signs = [], []
        for j in range(3):
            nz = [i for i in range(3) if m[i, j] != 0]
            if len(nz) != 1 or abs(int(m[nz[0], j])) != 1 or m[nz[0], j] != int(m[nz[0], j]):
                raise ValueError("not a signed permutation matrix")
            perm.append(nz[0])
            signs.append(int(m[nz[0], j]))
        if sorted(perm) != [0, 1, 2]:
            raise ValueError("not a signed permutation matrix")
        return cls(tuple(perm), tuple(signs))

    @cached_property
    def matrix(self) -> np.ndarray:
        m = np.zeros((3, 3), dtype=int)
        for j, (p, s) in enumerate(zip(self.perm, self.signs)):
            m[p, j] = s
        m.flags.writeable = False
        return m

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        perm = tuple(self.perm[other.perm[j]] for j in range(3))
        signs = tuple(other.signs[j] * self.signs[other.perm[j]] for j in range(3))
        return GroupElement(perm, signs)

    def inverse(self) -> "GroupElement":
        perm = [0, 0, 0]
        signs = [0, 0, 0]
        for j, (p, s) in enumerate(zip(self.perm, self.signs)):
            perm[p] = j
            signs[p] = s
        return GroupElement(tuple(perm), tuple(signs))

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.perm, tuple(-s for s in self.signs))

    @property
    def det(self) -> int:
        return int(round(np.linalg.det(self.matrix)))

    def apply(self, z: Sequence):
        """g @ z for any sequence supporting negation (exact or numeric)."""
        out = [None, None, None]
        for j, (p, s) in enumerate(zip(self.perm, self.signs)):
            out[p] = z[j] if s > 0 else -z[j]
        return out

    def cycles(self) -> list[tuple[list[int], int]]:
        """Cycles of the underlying permutation with the product of signs along each."""
        seen, out = set(), []
        for start in range(3):
            if start in seen:
                continue
            cyc, sign, j = [], 1, start
            while j not in seen:
                seen.add(j)
                cyc.append(j)
                sign *= self.signs[j]
                j = self.perm[j]
            out.append((cyc, sign))
        return out

    def __repr__(self) -> str:
        return "GroupElement(" + str(self.matrix.tolist()) + ")"


IDENTITY = GroupElement((0, 1, 2), (1, 1, 1))

GENERATORS: dict[str, GroupElement] = {
    "R": GroupElement.from_matrix([[1, 0, 0], [0, -1, 0], [0, 0, -1]]),
    "C": GroupElement.from_matrix([[0, 1, 0], [0, 0, 1], [1, 0, 0]]),
    "k": GroupElement.from_matrix([[1, 0, 0], [0, 0, 1], [0, 1, 0]]),
    "T": GroupElement.from_matrix([[0, 1, 0], [-1, 0, 0], [0, 0, 1]]),
    "-Id": GroupElement.from_matrix(-np.eye(3, dtype=int)),
    "Id": IDENTITY,
}

# Generator order used for words: {C,R,k}, {C,T}, {C,T,-Id}.
ALPHABETS: dict[str, tuple[str, ...]] = {
    "tetra-full": ("C", "R", "k"),
    "octa-rot": ("C", "T"),
    "octa-full": ("C", "T", "-Id"),
}
SELECTORS = tuple(ALPHABETS)


_WORD_TOKEN = re.compile(r"(-Id|Id|R|C|T|k|κ)(?:\^(\d+)|([²³⁴]))?")
_SUPERSCRIPT = {"²": 2, "³": 3, "⁴": 4}


def parse_word(text: str) -> tuple[str, ...]:
    """Parse e.g. ``"-T^2C^2TC"`` or ``"C²Rκ"`` into a label tuple.

    A leading ``-`` stands for the generator -Id.
    """
    text = text.replace(" ", "").replace("−", "-")
    word: list[str] = []
    if text.startswith("-") and not text.startswith("-Id"):
        word.append("-Id")
        text = text[1:]
    pos = 0
    while pos < len(text):
        m = _WORD_TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse word {text!r} at position {pos}")
        label = "k" if m.group(1) == "κ" else m.group(1)
        power = int(m.group(2)) if m.group(2) else _SUPERSCRIPT.get(m.group(3), 1)
        if label != "Id":
            word.extend([label] * power)
        pos = m.end()
    return tuple(word)


def format_word(word: Sequence[str]) -> str:
    """Compact string form; -Id (central) is pulled to the front as a sign."""
    neg = word.count("-Id") % 2
    core = [w for w in word if w != "-Id"]
    parts = []
    i = 0
    while i < len(core):
        j = i
        while j < len(core) and core[j] == core[i]:
            j += 1
        n = j - i
        parts.append(core[i] + (f"^{n}" if n > 1 else ""))
        i = j
    body = "".join(parts)
    if not body:
        return "-Id" if neg else "Id"
    return ("-" if neg else "") + body


def evaluate_word(word: Sequence[str] | str, generators: Mapping[str, GroupElement] = GENERATORS) -> GroupElement:
    if isinstance(word, str):
        word = parse_word(word)
    out = IDENTITY
    for label in word:
        out = out @ generators[label]
    return out


@dataclass(eq=False)
class FiniteGroup:
    """A closed set of signed permutations with BFS words and a product table."""

    elements: list[GroupElement]
    generator_labels: tuple[str, ...]
    words: list[tuple[str, ...]]
    name: str = ""

    def __post_init__(self):
        self.index = {g: i for i, g in enumerate(self.elements)}
        n = len(self.elements)
        self.table = [[self.index[a @ b] for b in self.elements] for a in self.elements]
        self.inv = [self.index[g.inverse()] for g in self.elements]
        self.identity = self.index[IDENTITY]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g: GroupElement) -> bool:
        return g in self.index

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def alphabet(self) -> dict[str, GroupElement]:
        return {label: GENERATORS[label] for label in self.generator_labels}

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def conj(self, g: int, h: int) -> int:
        """Index of g h g^-1."""
        return self.table[self.table[g][h]][self.inv[g]]

    def closure(self, indices: Iterable[int]) -> frozenset[int]:
        members = {self.identity}
        frontier = list(set(indices))
        gens = list(frontier)
        members.update(frontier)
        while frontier:
            new = []
            for a in frontier:
                for b in gens:
                    c = self.table[a][b]
                    if c not in members:
                        members.add(c)
                        new.append(c)
            frontier = new
        return frozenset(members)

    def subgroup(self, elements: Iterable[GroupElement | int | str | Sequence[str]]) -> "Subgroup":
        """Subgroup generated by elements given as GroupElements, indices or words."""
        idx = []
        for e in elements:
            if isinstance(e, int):
                idx.append(e)
            elif isinstance(e, GroupElement):
                idx.append(self.index[e])
            else:
                g = evaluate_word(e)
                if g not in self.index:
                    raise NotRepresentableError(f"{e!r} is not an element of {self.name or 'the group'}")
                idx.append(self.index[g])
        return Subgroup(self, self.closure(idx))

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, frozenset(range(len(self))))

    @cached_property
    def trivial(self) -> "Subgroup":
        return Subgroup(self, frozenset({self.identity}))

    def word(self, g: GroupElement | int) -> tuple[str, ...]:
        i = g if isinstance(g, int) else self.index[g]
        return self.words[i]


class Subgroup:
    """A subset of a FiniteGroup's indices that is closed under products."""

    __slots__ = ("group", "members", "_sorted")

    def __init__(self, group: FiniteGroup, members: Iterable[int]):
        self.group = group
        self.members = frozenset(members)
        self._sorted = None

    def __eq__(self, other):
        return isinstance(other, Subgroup) and other.group is self.group and other.members == self.members

    def __hash__(self):
        return hash(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, i) -> bool:
        if isinstance(i, GroupElement):
            i = self.group.index.get(i, -1)
        return i in self.members

    def __le__(self, other: "Subgroup") -> bool:
        return self.members <= other.members

    def __lt__(self, other: "Subgroup") -> bool:
        return self.members < other.members

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def sorted(self) -> tuple[int, ...]:
        if self._sorted is None:
            self._sorted = tuple(sorted(self.members))
        return self._sorted

    @property
    def elements(self) -> list[GroupElement]:
        return [self.group.elements[i] for i in self.sorted]

    def is_closed(self) -> bool:
        G = self.group
        return G.identity in self.members and all(
            G.table[a][b] in self.members for a in self.members for b in self.members
        )

    def conjugate(self, g: int) -> "Subgroup":
        return Subgroup(self.group, (self.group.conj(g, h) for h in self.members))

    def conjugates(self) -> list["Subgroup"]:
        seen: dict[frozenset, Subgroup] = {}
        for g in range(len(self.group)):
            c = self.conjugate(g)
            seen.setdefault(c.members, c)
        return sorted(seen.values(), key=lambda s: s.sorted)

    def canonical_key(self) -> tuple[int, ...]:
        """Lexicographically least conjugate, as a sorted index tuple."""
        return min(self.conjugate(g).sorted for g in range(len(self.group)))

    def is_conjugate(self, other: "Subgroup") -> bool:
        return len(self) == len(other) and self.canonical_key() == other.canonical_key()

    def is_normal_in(self, other: "Subgroup") -> bool:
        return self <= other and all(self.conjugate(g).members == self.members for g in other.members)

    def is_cyclic(self) -> bool:
        return any(element_order(self.group, i) == len(self) for i in self.members)

    def generators(self) -> list[int]:
        """A small generating set, greedily chosen by (word length, index)."""
        G = self.group
        cand = sorted(self.members - {G.identity}, key=lambda i: (-element_order(G, i), len(G.words[i]), i))
        gens: list[int] = []
        current = frozenset({G.identity})
        for i in cand:
            if i not in current:
                gens.append(i)
                current = G.closure(gens)
                if current == self.members:
                    break
        for i in list(gens):
            rest = [j for j in gens if j != i]
            if G.closure(rest) == self.members:
                gens = rest
        return gens

    def __repr__(self) -> str:
        words = [format_word(self.group.words[i]) for i in self.generators()]
        return f"Subgroup(order={len(self)}, gens={{{', '.join(words)}}})"


def generate_group(
    generators: Sequence[GroupElement] | Mapping[str, GroupElement],
    labels: Sequence[str] | None = None,
    bound: int = 10_000,
    name: str = "",
) -> FiniteGroup:
    """Breadth-first closure of the generators.

    Elements are listed in discovery order (right multiplication by the
    generators in their given order), so ``words[i]`` is a shortest word.
    """
    if isinstance(generators, Mapping):
        labels = tuple(generators)
        gens = list(generators.values())
    else:
        gens = list(generators)
        labels = tuple(labels) if labels is not None else tuple(f"g{i}" for i in range(len(gens)))
    if len(labels) != len(gens):
        raise ValueError("one label per generator")
    elements = [IDENTITY]
    words: list[tuple[str, ...]] = [()]
    seen = {IDENTITY: 0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for lab, g in zip(labels, gens):
            h = elements[i] @ g
            if h not in seen:
                if len(elements) >= bound:
                    raise ValueError(f"closure exceeds {bound} elements")
                seen[h] = len(elements)
                elements.append(h)
                words.append(words[i] + (lab,))
                queue.append(seen[h])
    return FiniteGroup(elements, tuple(labels), words, name)


_GROUP_CACHE: dict[str, FiniteGroup] = {}


def build_group(selector: str) -> FiniteGroup:
    """One of the three groups by selector name (cached)."""
    if selector not in ALPHABETS:
        raise ValueError(f"unknown group selector {selector!r}; choose from {SELECTORS}")
    if selector not in _GROUP_CACHE:
        labels = ALPHABETS[selector]
        _GROUP_CACHE[selector] = generate_group([GENERATORS[x] for x in labels], labels, name=selector)
    return _GROUP_CACHE[selector]


def element_order(G: FiniteGroup, g: GroupElement | int) -> int:
    i = g if isinstance(g, int) else G.index[g]
    n, cur = 1, i
    while cur != G.identity:
        cur = G.table[cur][i]
        n += 1
    return n


def conjugacy_classes(G: FiniteGroup) -> list[list[int]]:
    """Conjugacy classes as sorted index lists, ordered by smallest member."""
    remaining = set(range(len(G)))
    classes = []
    for i in range(len(G)):
        if i not in remaining:
            continue
        cls = sorted({G.conj(g, i) for g in range(len(G))})
        remaining.difference_update(cls)
        classes.append(cls)
    return classes


def all_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Every subgroup, by repeated adjunction of one element starting from cyclic ones.

    Sorted by (order, sorted members).
    """
    found: dict[frozenset, Subgroup] = {}
    layer = []
    for i in range(len(G)):
        s = G.closure([i])
        if s not in found:
            found[s] = Subgroup(G, s)
            layer.append(s)
    while layer:
        nxt = []
        for s in layer:
            for g in range(len(G)):
                if g in s:
                    continue
                t = G.closure(list(s) + [g])
                if t not in found:
                    found[t] = Subgroup(G, t)
                    nxt.append(t)
        layer = nxt
    return sorted(found.values(), key=lambda s: (len(s), s.sorted))


def subgroup_classes(G: FiniteGroup) -> list[list[Subgroup]]:
    """Subgroups grouped by conjugacy; each class lists its members, first is the representative."""
    classes: dict[tuple, list[Subgroup]] = {}
    for s in all_subgroups(G):
        classes.setdefault(s.canonical_key(), []).append(s)
    return sorted(classes.values(), key=lambda c: (len(c[0]), c[0].sorted))


def normalizer(G: FiniteGroup, S: Subgroup) -> Subgroup:
    return Subgroup(G, (g for g in range(len(G)) if S.conjugate(g).members == S.members))


_WORD_TREES: dict[tuple[str, ...], dict[GroupElement, tuple[str, ...]]] = {}


def _word_tree(alphabet: tuple[str, ...]) -> dict[GroupElement, tuple[str, ...]]:
    if alphabet not in _WORD_TREES:
        H = generate_group([GENERATORS[a] for a in alphabet], alphabet)
        _WORD_TREES[alphabet] = {g: w for g, w in zip(H.elements, H.words)}
    return _WORD_TREES[alphabet]


def rewrite_word(G: FiniteGroup | None, g: GroupElement | int, alphabet: Sequence[str]) -> tuple[str, ...]:
    """Shortest word over ``alphabet`` (labels in GENERATORS) evaluating to g."""
    if isinstance(g, int):
        if G is None:
            raise ValueError("an index needs its group")
        g = G.elements[g]
    tree = _word_tree(tuple(alphabet))
    if g not in tree:
        raise NotRepresentableError(f"{g!r} is not generated by {{{', '.join(alphabet)}}}")
    return tree[g]
