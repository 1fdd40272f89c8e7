"""Join-irreducibles and the rank-preserving embedding into a power set."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import NotBoolean, NotDistributive
from .lattice import Lattice
from .verdict import Verdict, failed, passed

__all__ = [
    "BirkhoffEmbedding",
    "join_irreducibles",
    "is_join_irreducible",
    "has_one_lower_cover",
    "birkhoff_embed",
    "verify_embedding",
    "BooleanFrame",
    "boolean_frame",
]


@dataclass(frozen=True)
class BirkhoffEmbedding:
    """``irreducibles[i - 1]`` is x_i; ``image[a]`` is {i : x_i <= a}."""

    irreducibles: tuple[str, ...]
    image: dict[str, frozenset[int]]

    @property
    def n(self) -> int:
        return len(self.irreducibles)

    def __call__(self, a: str) -> frozenset[int]:
        return self.image[a]


def is_join_irreducible(L: Lattice, x: str) -> bool:
    """Definitional test: x is not the bottom and a ∨ b < x whenever a, b < x."""
    if x == L.bottom:
        return False
    below = L.below(x)
    return all(L.join(a, b) != x for a, b in itertools.combinations_with_replacement(below, 2))


def has_one_lower_cover(L: Lattice, x: str) -> bool:
    return len(L.lower_covers(x)) == 1


def join_irreducibles(L: Lattice) -> list[str]:
    """Join-irreducible elements ordered by (rank, input order).

    Both the definitional test and the single-lower-cover test are run on
    every element; a disagreement means the lattice tables are corrupt.
    """
    found = []
    for x in L:
        by_definition = is_join_irreducible(L, x)
        if by_definition != has_one_lower_cover(L, x):
            raise RuntimeError(f"join-irreducibility tests disagree at {x!r}")
        if by_definition:
            found.append(x)
    return sorted(found, key=lambda x: (L.rank(x), L.index[x]))


def birkhoff_embed(L: Lattice) -> BirkhoffEmbedding:
    if not L.is_distributive:
        w = L.distributivity.witness
        raise NotDistributive(f"lattice is not distributive (fails at {w}); refusing to embed")
    irr = join_irreducibles(L)
    image = {
        a: frozenset(i for i, x in enumerate(irr, start=1) if L.leq(x, a))
        for a in L
    }
    return BirkhoffEmbedding(tuple(irr), image)


def verify_embedding(L: Lattice, emb: BirkhoffEmbedding) -> Verdict:
    """Check injectivity, meet/join preservation and r(a) = |φ(a)|.

    The witness is ``(condition, a, b)`` (``b`` is omitted for the
    per-element checks) and ``lhs``/``rhs`` are the two compared values.
    """
    phi = emb.image
    missing = [a for a in L if a not in phi]
    if missing:
        return failed(("defined", missing[0]), None, None, "defined")
    seen = {}
    for a in L:
        if phi[a] in seen:
            b = seen[phi[a]]
            return failed(("injective", b, a), sorted(phi[b]), sorted(phi[a]), "injective")
        seen[phi[a]] = a
    for a, b in itertools.product(L, repeat=2):
        meet_img, cap = phi[L.meet(a, b)], phi[a] & phi[b]
        if meet_img != cap:
            return failed(("meet", a, b), sorted(meet_img), sorted(cap), "meet")
        join_img, cup = phi[L.join(a, b)], phi[a] | phi[b]
        if join_img != cup:
            return failed(("join", a, b), sorted(join_img), sorted(cup), "join")
    for a in L:
        if L.rank(a) != len(phi[a]):
            return failed(("rank", a), L.rank(a), len(phi[a]), "rank")
    return passed(condition="embedding", n=emb.n)


class BooleanFrame:
    """Subset coordinates for a Boolean lattice.

    ``to_set[x]`` is the subset of ``ground`` that element ``x`` stands for
    and ``from_set`` inverts it.  Power-set lattices keep their own ground
    labels; any other Boolean lattice is coordinatised through its Birkhoff
    embedding with ground set {1, ..., n}.
    """

    def __init__(self, lattice: Lattice, ground: tuple, to_set: dict):
        self.lattice = lattice
        self.ground = ground
        self.to_set = to_set
        self.from_set = {s: x for x, s in to_set.items()}
        self.full = frozenset(ground)

    @property
    def n(self) -> int:
        return len(self.ground)

    def complement(self, x: str) -> str:
        return self.from_set[self.full - self.to_set[x]]

    def element(self, subset) -> str:
        return self.from_set[frozenset(subset)]


@lru_cache(maxsize=256)
def boolean_frame(L: Lattice) -> BooleanFrame:
    if not L.is_distributive:
        raise NotBoolean("lattice is not distributive, so it is not Boolean")
    emb = birkhoff_embed(L)
    if len(L) != 2 ** emb.n:
        raise NotBoolean(f"lattice has {len(L)} elements but {emb.n} join-irreducibles; "
                         "it is not a power set")
    if L.ground is not None and len(L.ground) == emb.n:
        # irreducibles of a power set are its singletons, in ground order
        labels = L.ground
    else:
        labels = tuple(range(1, emb.n + 1))
    to_set = {a: frozenset(labels[i - 1] for i in s) for a, s in emb.image.items()}
    return BooleanFrame(L, tuple(labels), to_set)
