"""Eddington's zoo puzzle, solved by brute force over S8.

Eight animals come in four mated pairs (1 2)(3 4)(5 6)(7 8).  Each child's
guess is a permutation P of the true labelling.  Boys satisfy P P = I, girls
P P = T with T the all-mates swap, and two children are compatible when
their commutator is T.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations
from typing import Iterable, Iterator

from .errors import FtrError, NotMateRespecting

LABELS = tuple(range(1, 9))


class CycleParseError(FtrError, ValueError):
    pass


@dataclass(frozen=True, order=True)
class Perm8:
    """A bijection of {1..8}; ``images[i - 1]`` is P(i)."""

    images: tuple

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(LABELS):
            raise ValueError(f"not a permutation of 1..8: {images}")
        object.__setattr__(self, "images", images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __matmul__(self, other: "Perm8") -> "Perm8":
        return compose(self, other)

    @classmethod
    def parse(cls, text: str) -> "Perm8":
        return parse_cycles(text)

    def __str__(self) -> str:
        return format_cycles(self)

    @cached_property
    def fixed_points(self) -> tuple:
        return tuple(i for i in LABELS if self(i) == i)


IDENTITY = Perm8(LABELS)
T = Perm8((2, 1, 4, 3, 6, 5, 8, 7))


def compose(P: Perm8, Q: Perm8) -> Perm8:
    """(P Q)(i) = P(Q(i))."""
    return Perm8(tuple(P(Q(i)) for i in LABELS))


def inverse(P: Perm8) -> Perm8:
    out = [0] * 8
    for i in LABELS:
        out[P(i) - 1] = i
    return Perm8(tuple(out))


def mate(i: int) -> int:
    return T(i)


def is_mate_respecting(P: Perm8) -> bool:
    return all(P(mate(i)) == mate(P(i)) for i in LABELS)


def commutator(P: Perm8, Q: Perm8) -> Perm8:
    return P @ Q @ inverse(P) @ inverse(Q)


def commutator_is_T(P: Perm8, Q: Perm8) -> bool:
    return commutator(P, Q) == T


def classify(P: Perm8) -> str:
    """'boy' if P^2 = I, 'girl' if P^2 = T, else 'neither'."""
    if not is_mate_respecting(P):
        raise NotMateRespecting(str(P))
    square = P @ P
    if square == IDENTITY:
        return "boy"
    if square == T:
        return "girl"
    return "neither"


def score(P: Perm8) -> int:
    """Animals named correctly: the fixed points of P."""
    return len(P.fixed_points)


# --------------------------------------------------------------------------
# cycle notation

_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str) -> Perm8:
    """Read "(1 3 2 4)(5 7 6 8)"; unlisted labels are fixed and "()" is
    the identity."""
    if text.strip() == "()":
        return IDENTITY
    stripped = _CYCLE.sub("", text).strip()
    if stripped:
        raise CycleParseError(f"unexpected text {stripped!r} in {text!r}")
    images = list(LABELS)
    seen: set[int] = set()
    for body in _CYCLE.findall(text):
        try:
            cycle = [int(tok) for tok in body.replace(",", " ").split()]
        except ValueError:
            raise CycleParseError(f"bad cycle ({body})") from None
        if not cycle:
            raise CycleParseError("empty cycle")
        for a in cycle:
            if a not in LABELS or a in seen:
                raise CycleParseError(f"label {a} out of range or repeated in {text!r}")
            seen.add(a)
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            images[a - 1] = b
    return Perm8(tuple(images))


def format_cycles(P: Perm8, fixed: bool = False) -> str:
    """Cycle notation starting each cycle at its smallest label.

    Fixed points are written out only with ``fixed``; the identity is "()"
    otherwise.
    """
    seen: set[int] = set()
    parts = []
    for start in LABELS:
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        j = P(start)
        while j != start:
            cycle.append(j)
            seen.add(j)
            j = P(j)
        if len(cycle) > 1 or fixed:
            parts.append("(" + " ".join(map(str, cycle)) + ")")
    return "".join(parts) or "()"


# --------------------------------------------------------------------------
# the worked family

WITNESSES = {
    "Mary": parse_cycles("(1 3 2 4)(5 7 6 8)"),
    "Sue": parse_cycles("(1 5 2 6)(3 8 4 7)"),
    "John": parse_cycles("(1)(2)(3 4)(5 6)(7)(8)"),
    "Bob": parse_cycles("(1 3)(2 4)(5 7)(6 8)"),
    "Jim": parse_cycles("(1 5)(2 6)(3 8)(4 7)"),
}


def is_family(members: Iterable[Perm8]) -> bool:
    members = list(members)
    return all(
        commutator_is_T(P, Q) for i, P in enumerate(members) for Q in members[i + 1 :]
    )


# --------------------------------------------------------------------------
# exhaustive search


def children(first_image: int | None = None) -> Iterator[tuple[Perm8, str]]:
    """Every mate-respecting boy or girl, in lexicographic order.

    ``first_image`` restricts to P(1) = first_image, which splits the search
    into eight independent slices.
    """
    for images in permutations(LABELS):
        if first_image is not None and images[0] != first_image:
            continue
        P = Perm8(images)
        if not is_mate_respecting(P):
            continue
        kind = classify(P)
        if kind != "neither":
            yield P, kind


def _maximal_cliques(adj: dict[int, set[int]]) -> Iterator[frozenset]:
    """Bron-Kerbosch with Tomita pivoting, iterative."""
    stack = [(set(), set(adj), set())]
    while stack:
        R, P, X = stack.pop()
        if not P and not X:
            yield frozenset(R)
            continue
        pivot = max(P | X, key=lambda u: len(adj[u] & P))
        for v in sorted(P - adj[pivot]):
            stack.append((R | {v}, P & adj[v], X & adj[v]))
            P = P - {v}
            X = X | {v}


@dataclass(frozen=True, order=True)
class Family:
    members: tuple  # (Perm8, kind) pairs, sorted

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def composition(self) -> tuple[int, int]:
        kinds = Counter(kind for _, kind in self.members)
        return kinds["boy"], kinds["girl"]

    @property
    def winners(self) -> tuple:
        best = max(score(P) for P, _ in self.members)
        return tuple((P, kind) for P, kind in self.members if score(P) == best)

    @property
    def best_score(self) -> int:
        return max(score(P) for P, _ in self.members)


@dataclass(frozen=True)
class ZooSolution:
    size: int
    families: tuple
    candidates: int
    boys: int
    girls: int

    @property
    def compositions(self) -> set:
        return {f.composition for f in self.families}

    def summary(self) -> str:
        comps = sorted(self.compositions)
        kinds = {kind for f in self.families for _, kind in f.winners}
        scores = {f.best_score for f in self.families}
        comp = "; ".join(f"{b} boys, {g} girls" for b, g in comps)
        kind = "/".join(sorted(kinds))
        score_text = "/".join(str(s) for s in sorted(scores))
        return f"max family {self.size} ({comp}); winner: {kind}, {score_text} correct"


def max_family(require_mixed: bool = True) -> ZooSolution:
    """Largest mutually compatible set of children, with every witness."""
    nodes = [c for first in LABELS for c in children(first)]
    index = {P: i for i, (P, _) in enumerate(nodes)}
    adj = {i: set() for i in range(len(nodes))}
    for i, (P, _) in enumerate(nodes):
        for j in range(i + 1, len(nodes)):
            if commutator_is_T(P, nodes[j][0]):
                adj[i].add(j)
                adj[j].add(i)
    best: list[frozenset] = []
    size = 0
    for clique in _maximal_cliques(adj):
        kinds = {nodes[i][1] for i in clique}
        if require_mixed and len(kinds) < 2:
            continue
        if len(clique) > size:
            size, best = len(clique), [clique]
        elif len(clique) == size:
            best.append(clique)
    families = tuple(sorted(
        Family(tuple(sorted((nodes[i] for i in clique), key=lambda m: index[m[0]])))
        for clique in best
    ))
    kinds = Counter(kind for _, kind in nodes)
    return ZooSolution(size, families, len(nodes), kinds["boy"], kinds["girl"])
