"""Acceptance suite: one test per criterion, each at its stated bound.

Every comparison is exact (rational arithmetic); the only tolerances are
the wall-clock limits.  ``conftest.py`` prints a pass/fail line per
criterion at the end of the run.
"""
import itertools
import random
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

from latticeineq import (
    QPolynomial,
    WeightFunction,
    WeightQuadruple,
    birkhoff_embed,
    boolean,
    chain,
    check_ad_hypothesis,
    check_conjecture9,
    check_fkg_q,
    check_q4ft,
    check_q4ft_stronger,
    divisor,
    fkg_quadruple,
    poly_dominates,
    product,
    random_ad_quadruple,
    replay_q4ft,
    verify_embedding,
)
from latticeineq.search import random_fkg_instance, random_selection, reference_quadruple
from oracles import order_of, q4ft_sides, trim

criterion = pytest.mark.criterion


def _subsets(L):
    return [c for k in range(len(L) + 1) for c in itertools.combinations(L.elements, k)]


@criterion(1, "reference table: AD holds on all 16 pairs, pairwise form fails at ({1},{2}) 1 > 0, < 1 s")
def test_criterion_1_reference_counterexample():
    start = time.perf_counter()
    quad = reference_quadruple()
    L = quad.carrier
    a, b, c, d = quad
    pairs = list(itertools.product(L, repeat=2))
    assert len(pairs) == 16
    for x, y in pairs:
        assert a[x] * b[y] <= c[L.join(x, y)] * d[L.meet(x, y)]
    assert check_ad_hypothesis(quad)
    v = check_conjecture9(quad)
    assert not v
    assert v.witness == ("{1}", "{2}")
    assert (v.lhs, v.rhs) == (1, 0)
    assert time.perf_counter() - start < 1.0


def _fkg_family(L, rng):
    mu, f, g, direction = random_fkg_instance(L, rng)
    return fkg_quadruple(mu, f, g, direction)


@criterion(2, "1000 AD quadruples on P(n), n=1..3, both generators: q-4FT and complement sums hold, < 2 min")
def test_criterion_2_theorem_as_property():
    start = time.perf_counter()
    rng = random.Random(20240502)
    families = (random_ad_quadruple, _fkg_family)
    violations = 0
    for i in range(1000):
        L = boolean(1 + i % 3)
        quad = families[(i // 3) % 2](L, rng)
        assert check_ad_hypothesis(quad)
        violations += not check_q4ft(quad)
        for _ in range(20):
            violations += not check_q4ft(quad, random_selection(L, rng), random_selection(L, rng))
        violations += not check_q4ft_stronger(quad)
    assert violations == 0
    assert time.perf_counter() - start < 120


@criterion(3, "200 AD instances on divisor(12), divisor(36), chain(5), chain(3)xchain(3): q-4FT on 20 (X,Y), < 2 min")
def test_criterion_3_lattice_form():
    start = time.perf_counter()
    rng = random.Random(31337)
    lattices = [divisor(12), divisor(36), chain(5), product(chain(3), chain(3))]
    violations = 0
    for i in range(200):
        L = lattices[i % 4]
        quad = random_ad_quadruple(L, rng) if i % 8 < 4 else _fkg_family(L, rng)
        assert check_ad_hypothesis(quad)
        for _ in range(20):
            violations += not check_q4ft(quad, random_selection(L, rng), random_selection(L, rng))
    assert violations == 0
    assert time.perf_counter() - start < 120


def _catalog():
    yield from (chain(m) for m in range(1, 9))
    yield from (boolean(n) for n in range(5))
    yield from (divisor(m) for m in (12, 36, 60))
    yield from (product(chain(p), chain(q)) for p in range(1, 5) for q in range(1, 5))


@criterion(4, "embedding catalog: injective, meets, joins, rank = |phi| on chains, P(n), divisors, products, < 10 s")
def test_criterion_4_birkhoff_catalog():
    start = time.perf_counter()
    count = 0
    for L in _catalog():
        emb = birkhoff_embed(L)
        assert verify_embedding(L, emb), repr(L)
        # the same properties once more against the cover-only oracle
        brute = order_of(L)
        images = {x: emb.image[x] for x in L}
        assert len(set(images.values())) == len(L)
        for x, y in itertools.product(L, repeat=2):
            assert images[brute.join(x, y)] == images[x] | images[y]
            assert images[brute.meet(x, y)] == images[x] & images[y]
        for x in L:
            assert brute.rank(x) == len(images[x])
        count += 1
    assert count == 8 + 5 + 3 + 16
    assert time.perf_counter() - start < 10


@criterion(5, "500 q-FKG instances on P(n), n<=3: dominance holds and its q=1 value satisfies FKG, < 1 min")
def test_criterion_5_fkg():
    start = time.perf_counter()
    rng = random.Random(5150)
    violations = 0
    for i in range(500):
        L = boolean(i % 4)
        mu, f, g, _ = random_fkg_instance(L, rng)
        v = check_fkg_q(mu, f, g)
        violations += not v
        # plain FKG recomputed from scratch, not read from the verdict
        int_f = sum(f[x] * mu[x] for x in L)
        int_g = sum(g[x] * mu[x] for x in L)
        int_1 = sum(mu[x] for x in L)
        int_fg = sum(f[x] * g[x] * mu[x] for x in L)
        violations += not int_f * int_g <= int_1 * int_fg
        assert v.lhs(1) == int_f * int_g and v.rhs(1) == int_1 * int_fg
    assert violations == 0
    assert time.perf_counter() - start < 60


@criterion(6, "proof replay: direct q-4FT equals embedding + slice route, verdict and every coefficient, 100 instances, < 2 min")
def test_criterion_6_replay():
    start = time.perf_counter()
    rng = random.Random(606)
    lattices = [boolean(2), boolean(3), divisor(12), divisor(36), chain(4),
                product(chain(2), chain(3)), product(chain(3), chain(3))]
    for i in range(100):
        L = lattices[i % len(lattices)]
        quad = random_ad_quadruple(L, rng)
        report = replay_q4ft(quad, random_selection(L, rng), random_selection(L, rng))
        direct = report.direct
        assert report.identities_hold
        assert direct.holds == all(v.holds for v in report.coefficients)
        for v in report.coefficients:
            k = v.details["k"]
            assert v.lhs == direct.lhs[k] and v.rhs == direct.rhs[k]
        assert len(report.coefficients) >= max(len(direct.lhs), len(direct.rhs))
        assert report.agree
    assert time.perf_counter() - start < 120


@criterion(7, "q-4FT coefficients equal an independent rank-matched double sum, 100 instances")
def test_criterion_7_oracle_equivalence():
    rng = random.Random(77)
    lattices = [boolean(2), boolean(3), divisor(12), divisor(60), chain(5), product(chain(3), chain(2))]
    grid = [0, 1, 2, Fraction(1, 2), Fraction(5, 3)]
    for i in range(100):
        L = lattices[i % len(lattices)]
        # arbitrary weights: the identity between the two routes needs no hypothesis
        tables = [{x: Fraction(rng.choice(grid)) for x in L} for _ in range(4)]
        quad = WeightQuadruple(*(WeightFunction(L, t) for t in tables))
        X, Y = random_selection(L, rng), random_selection(L, rng)
        v = check_q4ft(quad, X, Y)
        lhs, rhs = q4ft_sides(order_of(L), *tables, X, Y)
        assert list(v.lhs.coeffs) == trim(lhs)
        assert list(v.rhs.coeffs) == trim(rhs)


def _search(*args):
    return subprocess.run([sys.executable, "-m", "latticeineq", "search", *args],
                          capture_output=True, text=True, timeout=120)


@criterion(8, "search --n 2 --grid 0,1 finds the reference table in < 1 min; --n 1 --grid 0,1,2 finds none")
def test_criterion_8_search_reproduction():
    start = time.perf_counter()
    proc = _search("--n", "2", "--grid", "0,1", "--exhaustive")
    elapsed = time.perf_counter() - start
    assert proc.returncode == 0
    assert elapsed < 60
    assert "examined 65536 candidates" in proc.stdout
    assert "alpha=0,0,1,0 beta=1,1,1,0 gamma=0,0,1,1 delta=1,0,1,0" in proc.stdout
    proc = _search("--n", "1", "--grid", "0,1,2", "--exhaustive")
    assert proc.returncode == 0
    assert "found 0 counterexample(s)" in proc.stdout
    assert not [line for line in proc.stdout.splitlines() if line.startswith("#")]


def _random_poly(rng):
    return QPolynomial([Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(rng.randint(0, 5))])


def _nonneg_poly(rng):
    return QPolynomial([Fraction(rng.randint(0, 3), rng.randint(1, 2)) for _ in range(rng.randint(0, 5))])


@criterion(9, "dominance is reflexive, antisymmetric and transitive on 500 random triples")
def test_criterion_9_dominance_laws():
    rng = random.Random(9)
    chained = 0
    for i in range(500):
        P = _random_poly(rng)
        if i % 2:
            # build chains P << Q << R so transitivity is exercised, not vacuous
            Q = P + _nonneg_poly(rng)
            R = Q + _nonneg_poly(rng)
        else:
            Q, R = _random_poly(rng), _random_poly(rng)
        for A in (P, Q, R):
            assert poly_dominates(A, A)
        for A, B in itertools.permutations((P, Q, R), 2):
            if poly_dominates(A, B) and poly_dominates(B, A):
                assert A == B
        for A, B, C in itertools.permutations((P, Q, R), 3):
            if poly_dominates(A, B) and poly_dominates(B, C):
                chained += 1
                assert poly_dominates(A, C)
    assert chained >= 250
