"""Finite lattices built from cover relations.

Elements are opaque strings.  The order in which elements are supplied is
kept and used everywhere a "first failure" has to be picked, so reports are
reproducible.  Order relations are stored as Python-int bitsets indexed by
a linear extension of the order; with that indexing the lowest set bit of a
set of upper bounds is always a minimal one, which makes computing the
join/meet tables cheap.
"""
from __future__ import annotations

import graphlib
import heapq
import itertools
import math
import warnings
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .errors import CycleError, NotALattice, ParamError
from .verdict import Verdict, failed, passed

__all__ = [
    "Lattice",
    "build_lattice",
    "is_distributive",
    "rank_function",
    "check_rank_modularity",
    "standard_lattice",
    "boolean",
    "powerset",
    "chain",
    "divisor",
    "product",
    "subset_label",
]


class Lattice:
    """An immutable finite lattice with dense join/meet tables.

    Do not call the constructor directly; use :func:`build_lattice` or one
    of the standard constructors.  ``join_table[i][j]`` and
    ``meet_table[i][j]`` are indices into ``elements``.
    """

    def __init__(self, elements, covers, pos, up, down, join_table, meet_table,
                 ranks, ground=None):
        self.elements: tuple[str, ...] = tuple(elements)
        self.index: dict[str, int] = {e: i for i, e in enumerate(self.elements)}
        self.covers: tuple[tuple[str, str], ...] = tuple(covers)
        self._pos = pos
        self._up = up
        self._down = down
        self.join_table: tuple[tuple[int, ...], ...] = join_table
        self.meet_table: tuple[tuple[int, ...], ...] = meet_table
        self._ranks = tuple(ranks)
        # ground-set labels when the lattice was built as a power set
        self.ground: tuple | None = ground

        n = len(self.elements)
        bottom = top = 0
        for i in range(1, n):
            bottom = meet_table[bottom][i]
            top = join_table[top][i]
        self.bottom: str = self.elements[bottom]
        self.top: str = self.elements[top]

        self._lower = [[] for _ in range(n)]
        self._upper = [[] for _ in range(n)]
        for lo, hi in self.covers:
            self._lower[self.index[hi]].append(lo)
            self._upper[self.index[lo]].append(hi)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.index

    def __repr__(self):
        return f"<Lattice with {len(self)} elements, bottom={self.bottom!r}, top={self.top!r}>"

    def leq(self, x: str, y: str) -> bool:
        i, j = self.index[x], self.index[y]
        return bool(self._up[i] >> self._pos[j] & 1)

    def lt(self, x: str, y: str) -> bool:
        return x != y and self.leq(x, y)

    def join(self, x: str, y: str) -> str:
        return self.elements[self.join_table[self.index[x]][self.index[y]]]

    def meet(self, x: str, y: str) -> str:
        return self.elements[self.meet_table[self.index[x]][self.index[y]]]

    def rank(self, x: str) -> int:
        return self._ranks[self.index[x]]

    @property
    def ranks(self) -> dict[str, int]:
        return dict(zip(self.elements, self._ranks))

    @property
    def rank_list(self) -> tuple[int, ...]:
        """Ranks indexed like ``elements``."""
        return self._ranks

    def lower_covers(self, x: str) -> list[str]:
        return list(self._lower[self.index[x]])

    def upper_covers(self, x: str) -> list[str]:
        return list(self._upper[self.index[x]])

    def below(self, x: str) -> list[str]:
        """Elements strictly below ``x``, in input order."""
        return [y for y in self.elements if y != x and self.leq(y, x)]

    @cached_property
    def distributivity(self) -> Verdict:
        return is_distributive(self)

    @property
    def is_distributive(self) -> bool:
        return self.distributivity.holds


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def build_lattice(elements: Sequence[str], covers: Iterable[tuple[str, str]],
                  ground=None) -> Lattice:
    """Build a :class:`Lattice` from its elements and (lower, upper) covers.

    Redundant covers (implied by transitivity) are dropped with a warning.
    Raises :class:`CycleError` if the covers are cyclic and
    :class:`NotALattice` if some pair has no unique join or meet.
    """
    elements = list(elements)
    if not elements:
        raise ParamError("a lattice needs at least one element")
    for e in elements:
        if not isinstance(e, str) or not e or any(c.isspace() for c in e):
            raise ParamError(f"element ids must be non-empty strings without whitespace: {e!r}")
    if len(set(elements)) != len(elements):
        raise ParamError("duplicate element ids")
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)

    edges = set()
    for pair in covers:
        lo, hi = pair
        for e in (lo, hi):
            if e not in index:
                raise ParamError(f"cover ({lo}, {hi}) references unknown element {e!r}")
        if lo == hi:
            raise CycleError(f"cover ({lo}, {hi}) is a loop")
        edges.add((index[lo], index[hi]))

    preds = {i: set() for i in range(n)}
    for lo, hi in edges:
        preds[hi].add(lo)
    try:
        graphlib.TopologicalSorter(preds).prepare()
    except graphlib.CycleError as exc:
        cycle = [elements[i] for i in exc.args[1]]
        raise CycleError(f"covers contain a cycle: {' -> '.join(cycle)}") from None
    topo = _stable_topo(n, edges)

    pos = [0] * n
    for k, i in enumerate(topo):
        pos[i] = k
    succ = [[] for _ in range(n)]
    for lo, hi in edges:
        succ[lo].append(hi)

    up = [0] * n
    for i in reversed(topo):
        mask = 1 << pos[i]
        for j in succ[i]:
            mask |= up[j]
        up[i] = mask
    down = [0] * n
    for i in topo:
        mask = 1 << pos[i]
        for j in preds[i]:
            mask |= down[j]
        down[i] = mask

    irredundant = []
    dropped = []
    for lo, hi in sorted(edges):
        if any(other != hi and up[other] >> pos[hi] & 1 for other in succ[lo]):
            dropped.append((elements[lo], elements[hi]))
        else:
            irredundant.append((lo, hi))
    if dropped:
        warnings.warn(f"dropped {len(dropped)} redundant cover(s): {dropped}", stacklevel=2)

    ranks = [0] * n
    lower = [[] for _ in range(n)]
    for lo, hi in irredundant:
        lower[hi].append(lo)
    for i in topo:
        if lower[i]:
            ranks[i] = 1 + max(ranks[j] for j in lower[i])

    at = topo  # at[position] -> element index
    join = [[0] * n for _ in range(n)]
    meet = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            ub = up[i] & up[j]
            if not ub:
                raise NotALattice(f"({elements[i]}, {elements[j]}) has no upper bound",
                                  (elements[i], elements[j]))
            m = (ub & -ub).bit_length() - 1
            if ub & ~up[at[m]]:
                mins = [elements[at[k]] for k in _bits(ub) if down[at[k]] & ub == 1 << k]
                raise NotALattice(
                    f"({elements[i]}, {elements[j]}) has several minimal upper bounds: {mins}",
                    (elements[i], elements[j]), mins)
            join[i][j] = join[j][i] = at[m]

            lb = down[i] & down[j]
            if not lb:
                raise NotALattice(f"({elements[i]}, {elements[j]}) has no lower bound",
                                  (elements[i], elements[j]))
            m = lb.bit_length() - 1
            if lb & ~down[at[m]]:
                maxs = [elements[at[k]] for k in _bits(lb) if up[at[k]] & lb == 1 << k]
                raise NotALattice(
                    f"({elements[i]}, {elements[j]}) has several maximal lower bounds: {maxs}",
                    (elements[i], elements[j]), maxs)
            meet[i][j] = meet[j][i] = at[m]

    return Lattice(
        elements,
        [(elements[lo], elements[hi]) for lo, hi in irredundant],
        tuple(pos), tuple(up), tuple(down),
        tuple(map(tuple, join)), tuple(map(tuple, meet)),
        ranks, ground,
    )


def _stable_topo(n, edges):
    # linear extension preferring input order among available elements
    indeg = [0] * n
    succ = [[] for _ in range(n)]
    for lo, hi in edges:
        indeg[hi] += 1
        succ[lo].append(hi)
    ready = [i for i in range(n) if indeg[i] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        i = heapq.heappop(ready)
        order.append(i)
        for j in succ[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                heapq.heappush(ready, j)
    return order


def is_distributive(L: Lattice) -> Verdict:
    """Check x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z) for every ordered triple."""
    J, M = L.join_table, L.meet_table
    n = len(L)
    for x, y, z in itertools.product(range(n), repeat=3):
        lhs = M[x][J[y][z]]
        rhs = J[M[x][y]][M[x][z]]
        if lhs != rhs:
            e = L.elements
            return failed((e[x], e[y], e[z]), e[lhs], e[rhs], "distributivity")
    return passed(condition="distributivity")


def rank_function(L: Lattice) -> dict[str, int]:
    """Length of the longest chain ending at each element."""
    return L.ranks


def check_rank_modularity(L: Lattice) -> Verdict:
    """Check r(x) + r(y) = r(x ∨ y) + r(x ∧ y) for every ordered pair."""
    r = L.rank_list
    J, M = L.join_table, L.meet_table
    n = len(L)
    for x, y in itertools.product(range(n), repeat=2):
        lhs = r[x] + r[y]
        rhs = r[J[x][y]] + r[M[x][y]]
        if lhs != rhs:
            e = L.elements
            return failed((e[x], e[y]), lhs, rhs, "rank modularity",
                          ranks=(r[x], r[y], r[J[x][y]], r[M[x][y]]))
    return passed(condition="rank modularity")


# --- standard constructors -------------------------------------------------

def subset_label(subset) -> str:
    """Element id used for a subset in power-set lattices, e.g. ``{1,3}``."""
    return "{" + ",".join(str(a) for a in sorted(subset)) + "}"


def powerset(ground: Iterable) -> Lattice:
    """The Boolean lattice of all subsets of ``ground`` under inclusion.

    Elements are ordered by size, then lexicographically by position in
    ``ground``.  Lattices are immutable, so equal ground sets share one
    cached instance.
    """
    return _powerset(tuple(ground))


@lru_cache(maxsize=128)
def _powerset(ground: tuple) -> Lattice:
    if len(set(ground)) != len(ground):
        raise ParamError("ground set has repeated labels")
    if len(ground) > 12:
        raise ParamError("power sets are limited to 12 ground elements")
    subsets = [c for k in range(len(ground) + 1)
               for c in itertools.combinations(range(len(ground)), k)]
    label = {c: subset_label(ground[i] for i in c) for c in subsets}
    covers = []
    for c in subsets:
        for i in range(len(ground)):
            if i not in c:
                covers.append((label[c], label[tuple(sorted(c + (i,)))]))
    return build_lattice([label[c] for c in subsets], covers, ground=ground)


def boolean(n: int) -> Lattice:
    """P(n): subsets of {1, ..., n}."""
    if not isinstance(n, int) or n < 0:
        raise ParamError(f"boolean lattice needs n >= 0, got {n!r}")
    return powerset(range(1, n + 1))


def chain(m: int) -> Lattice:
    """A chain with ``m`` elements labelled ``0`` .. ``m-1``."""
    if not isinstance(m, int) or m < 1:
        raise ParamError(f"chain needs at least one element, got {m!r}")
    labels = [str(i) for i in range(m)]
    return build_lattice(labels, list(zip(labels, labels[1:])))


def divisor(m: int) -> Lattice:
    """Divisors of ``m`` ordered by divisibility (join = lcm, meet = gcd)."""
    if not isinstance(m, int) or m < 1:
        raise ParamError(f"divisor lattice needs m >= 1, got {m!r}")
    divs = [d for d in range(1, m + 1) if m % d == 0]
    if len(divs) > 4096:
        raise ParamError("too many divisors")
    covers = []
    for d in divs:
        for e in divs:
            q, r = divmod(e, d)
            if r == 0 and q > 1 and _is_prime(q):
                covers.append((str(d), str(e)))
    return build_lattice([str(d) for d in divs], covers)


def _is_prime(q):
    return q > 1 and all(q % p for p in range(2, math.isqrt(q) + 1))


def product(A: Lattice, B: Lattice) -> Lattice:
    """Cartesian product with the coordinatewise order; ids are ``(a,b)``."""
    if not isinstance(A, Lattice) or not isinstance(B, Lattice):
        raise ParamError("product needs two lattices")
    label = {(a, b): f"({a},{b})" for a in A for b in B}
    covers = []
    for a, b in label:
        for a2 in A.upper_covers(a):
            covers.append((label[a, b], label[a2, b]))
        for b2 in B.upper_covers(b):
            covers.append((label[a, b], label[a, b2]))
    return build_lattice(list(label.values()), covers)


_KINDS = {"boolean": boolean, "chain": chain, "divisor": divisor, "product": product}


def standard_lattice(kind: str, *params) -> Lattice:
    """Catalog constructor: ``standard_lattice("divisor", 12)`` and so on."""
    try:
        make = _KINDS[kind]
    except KeyError:
        raise ParamError(f"unknown lattice kind {kind!r}; expected one of {sorted(_KINDS)}") from None
    try:
        return make(*params)
    except TypeError as exc:
        raise ParamError(f"bad parameters for {kind}: {exc}") from None
