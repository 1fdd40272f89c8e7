"""Counterexamples to the pairwise strengthening, and random instance makers.

Randomness always flows through :class:`random.Random` (MT19937) seeded
with the caller's integer, so every run is reproducible from its seed.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .birkhoff import birkhoff_embed
from .errors import BudgetExceeded, ParamError
from .inequalities import (
    DECREASING,
    INCREASING,
    WeightFunction,
    WeightQuadruple,
    check_ad_hypothesis,
    check_q4ft,
    check_q4ft_stronger,
    is_log_supermodular,
    is_monotone,
)
from .lattice import Lattice, boolean
from .verdict import Verdict, failed, passed

__all__ = [
    "REFERENCE_TABLE",
    "reference_quadruple",
    "check_conjecture9",
    "verify_paper_counterexample",
    "ReferenceReport",
    "SearchConfig",
    "Counterexample",
    "iter_counterexamples",
    "search_counterexamples",
    "random_log_supermodular",
    "random_monotone",
    "random_ad_quadruple",
    "random_fkg_instance",
    "random_selection",
]

# values over (∅, {1}, {2}, {1,2})
REFERENCE_TABLE = {
    "alpha": (0, 0, 1, 0),
    "beta": (1, 1, 1, 0),
    "gamma": (0, 0, 1, 1),
    "delta": (1, 0, 1, 0),
}


def reference_quadruple() -> WeightQuadruple:
    return WeightQuadruple.from_table(boolean(2), *REFERENCE_TABLE.values())


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def check_conjecture9(quad: WeightQuadruple) -> Verdict:
    """α(A)β(B) + α(B)β(A) ≤ γ(A)δ(B) + γ(B)δ(A) for every unordered pair."""
    L = quad.carrier
    a, b, c, d = (w.vector for w in quad)
    n = len(L)
    for i in range(n):
        for j in range(i, n):
            lhs = a[i] * b[j] + a[j] * b[i]
            rhs = c[i] * d[j] + c[j] * d[i]
            if lhs > rhs:
                return failed((L.elements[i], L.elements[j]), lhs, rhs, "pairwise")
    return passed(condition="pairwise")


@dataclass
class ReferenceReport:
    ad: Verdict
    conjecture: Verdict
    q4ft: Verdict
    stronger: Verdict

    @property
    def ok(self) -> bool:
        return (self.ad.holds
                and not self.conjecture.holds
                and self.conjecture.witness == ("{1}", "{2}")
                and (self.conjecture.lhs, self.conjecture.rhs) == (1, 0)
                and self.q4ft.holds
                and self.stronger.holds)


def verify_paper_counterexample() -> ReferenceReport:
    quad = reference_quadruple()
    return ReferenceReport(
        ad=check_ad_hypothesis(quad),
        conjecture=check_conjecture9(quad),
        q4ft=check_q4ft(quad),
        stronger=check_q4ft_stronger(quad),
    )


# --- searching -------------------------------------------------------------

@dataclass(frozen=True)
class SearchConfig:
    n: int
    value_grid: tuple[Fraction, ...]
    mode: str = "exhaustive"
    seed: int = 0
    limit: int = 10**6

    def __post_init__(self):
        if not isinstance(self.n, int) or not 0 <= self.n <= 3:
            raise ParamError(f"n must be in 0..3, got {self.n!r}")
        grid = tuple(sorted({Fraction(v) for v in self.value_grid}))
        if not grid:
            raise ParamError("value grid is empty")
        if grid[0] < 0:
            raise ParamError("value grid must be non-negative")
        object.__setattr__(self, "value_grid", grid)
        if self.mode not in ("exhaustive", "random"):
            raise ParamError(f"mode must be 'exhaustive' or 'random', got {self.mode!r}")
        if not isinstance(self.limit, int) or self.limit < 0:
            raise ParamError(f"limit must be a non-negative integer, got {self.limit!r}")
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
            raise ParamError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")

    @property
    def space(self) -> int:
        return len(self.value_grid) ** (4 * 2 ** self.n)


@dataclass(frozen=True)
class Counterexample:
    index: int
    quad: WeightQuadruple
    ad: Verdict
    conjecture: Verdict


def _emit(index, quad):
    ad, conj = check_ad_hypothesis(quad), check_conjecture9(quad)
    if not ad.holds or conj.holds:
        raise RuntimeError(f"candidate {index} failed re-verification")
    return Counterexample(index, quad, ad, conj)


def iter_counterexamples(cfg: SearchConfig) -> Iterator[Counterexample]:
    """Yield quadruples satisfying the AD hypothesis but not the pairwise one.

    Exhaustive mode walks the candidates lexicographically in (α, β, γ, δ)
    with elements in subset-size-then-lex order; ``index`` is the position
    in that walk.  Random mode draws ``limit`` candidates from the seeded
    generator and ``index`` is the draw number.
    """
    if cfg.mode == "exhaustive":
        if cfg.space > cfg.limit:
            raise BudgetExceeded(f"exhaustive space {cfg.space} exceeds limit {cfg.limit}")
        yield from _exhaustive(cfg)
    else:
        yield from _random(cfg)


def search_counterexamples(cfg: SearchConfig) -> list[Counterexample]:
    return list(iter_counterexamples(cfg))


def _exhaustive(cfg):
    L = boolean(cfg.n)
    m = len(L)
    J, M = L.join_table, L.meet_table
    vectors = list(itertools.product(cfg.value_grid, repeat=m))
    N = len(vectors)
    unordered = [(i, j) for i in range(m) for j in range(i, m)]
    for ia, a in enumerate(vectors):
        for ib, b in enumerate(vectors):
            # only pairs with a positive left side constrain γ and δ
            needed = [(J[i][j], M[i][j], a[i] * b[j])
                      for i in range(m) if a[i] for j in range(m) if b[j]]
            sym = [(i, j, a[i] * b[j] + a[j] * b[i]) for i, j in unordered]
            for ic, c in enumerate(vectors):
                if any(not c[z] for z, _, _ in needed):
                    continue
                for id_, d in enumerate(vectors):
                    if any(p > c[z] * d[w] for z, w, p in needed):
                        continue
                    if all(s <= c[i] * d[j] + c[j] * d[i] for i, j, s in sym):
                        continue
                    index = ((ia * N + ib) * N + ic) * N + id_
                    yield _emit(index, WeightQuadruple.from_table(L, a, b, c, d))


def _random(cfg):
    L = boolean(cfg.n)
    rng = random.Random(cfg.seed)
    m = len(L)
    for index in range(cfg.limit):
        values = [rng.choice(cfg.value_grid) for _ in range(4 * m)]
        quad = WeightQuadruple.from_table(L, *(values[k * m:(k + 1) * m] for k in range(4)))
        if check_ad_hypothesis(quad) and not check_conjecture9(quad):
            yield _emit(index, quad)


# --- random instances ------------------------------------------------------

U_GRID = (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3))
W_GRID = (Fraction(1), Fraction(3, 2), Fraction(2), Fraction(3))
VALUE_GRID = (Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3))


def random_log_supermodular(L: Lattice, seed=None, u: Sequence | None = None,
                            w: dict | None = None, u_grid=U_GRID, w_grid=W_GRID) -> WeightFunction:
    """μ(a) = Π_{i ∈ φ(a)} u_i · Π_{i < j in φ(a)} w_ij with u_i ≥ 0, w_ij ≥ 1.

    φ is the Birkhoff embedding, so this works on any distributive lattice
    (on a power set φ(A) is just A).  ``u`` (length n) and ``w`` (keyed by
    index pairs ``(i, j)``, i < j, 1-based) override the random draws.
    """
    rng = _rng(seed)
    emb = birkhoff_embed(L)
    n = emb.n
    if u is None:
        u = [rng.choice(u_grid) for _ in range(n)]
    if len(u) != n:
        raise ParamError(f"need {n} unary factors, got {len(u)}")
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    if w is None:
        w = {p: rng.choice(w_grid) for p in pairs}
    u = [Fraction(x) for x in u]
    w = {p: Fraction(w.get(p, 1)) for p in pairs}
    if any(x < 0 for x in u) or any(x < 1 for x in w.values()):
        raise ParamError("need u_i >= 0 and w_ij >= 1")

    def mu(a):
        s = sorted(emb.image[a])
        value = Fraction(1)
        for i in s:
            value *= u[i - 1]
        for p in itertools.combinations(s, 2):
            value *= w[p]
        return value

    out = WeightFunction.from_function(L, mu)
    assert is_log_supermodular(out), "generator produced a non-log-supermodular measure"
    return out


def random_monotone(L: Lattice, direction: str, seed=None, thresholds=None,
                    count: int | None = None, value_grid=VALUE_GRID) -> WeightFunction:
    """f(x) = max{v : (t, v) threshold with t ≤ x}, or t ≥ x when decreasing.

    Empty maxima are 0.  ``thresholds`` is a list of (element, value) pairs;
    otherwise ``count`` (default 1 to 3) of them are drawn at random.
    """
    if direction not in (INCREASING, DECREASING):
        raise ParamError(f"direction must be {INCREASING!r} or {DECREASING!r}")
    rng = _rng(seed)
    if thresholds is None:
        if count is None:
            count = rng.randint(1, 3)
        thresholds = [(rng.choice(L.elements), rng.choice(value_grid)) for _ in range(count)]
    thresholds = [(t, Fraction(v)) for t, v in thresholds]

    def f(x):
        if direction == INCREASING:
            hits = [v for t, v in thresholds if L.leq(t, x)]
        else:
            hits = [v for t, v in thresholds if L.leq(x, t)]
        return max(hits, default=Fraction(0))

    out = WeightFunction.from_function(L, f)
    assert is_monotone(out, direction), "generator produced a non-monotone function"
    return out


def random_fkg_instance(L: Lattice, seed=None, direction: str | None = None):
    """(μ, f, g, direction) with μ log-supermodular and f, g co-monotone."""
    rng = _rng(seed)
    if direction is None:
        direction = rng.choice((INCREASING, DECREASING))
    mu = random_log_supermodular(L, rng)
    return mu, random_monotone(L, direction, rng), random_monotone(L, direction, rng), direction


AD_GRID = (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3))


def random_ad_quadruple(L: Lattice, seed=None, grid=AD_GRID, zero_prob=0.4,
                        max_tries=10_000) -> WeightQuadruple:
    """A random quadruple satisfying the AD hypothesis, by grid sampling.

    α, β, γ are drawn from ``grid`` (α, β with extra zeros); a draw is
    rejected when some positive α(x)β(y) meets γ(x ∨ y) = 0.  δ(w) is then
    set to the larger of a grid draw and the least value the hypothesis
    allows, and most of the time to exactly that least value, so many
    instances sit on the boundary of the hypothesis.
    """
    rng = _rng(seed)
    positive = [v for v in grid if v > 0]
    if not positive:
        raise ParamError("grid needs a positive value")
    n = len(L)
    J, M = L.join_table, L.meet_table

    def draw(p_zero):
        return [Fraction(0) if rng.random() < p_zero else rng.choice(positive) for _ in range(n)]

    for _ in range(max_tries):
        a, b, c = draw(zero_prob), draw(zero_prob), draw(zero_prob / 4)
        need = [Fraction(0)] * n
        feasible = True
        for i in range(n):
            for j in range(n):
                p = a[i] * b[j]
                if not p:
                    continue
                top = c[J[i][j]]
                if not top:
                    feasible = False
                    break
                need[M[i][j]] = max(need[M[i][j]], p / top)
            if not feasible:
                break
        if not feasible:
            continue
        d = [need[k] if rng.random() < 0.7 and need[k] else max(need[k], rng.choice(grid))
             for k in range(n)]
        quad = WeightQuadruple.from_table(L, a, b, c, d)
        assert check_ad_hypothesis(quad), "generator produced a quadruple outside the hypothesis"
        return quad
    raise RuntimeError(f"no AD quadruple found in {max_tries} draws")


def random_selection(L: Lattice, seed=None, p: float = 0.5) -> tuple[str, ...]:
    rng = _rng(seed)
    return tuple(x for x in L if rng.random() < p)
