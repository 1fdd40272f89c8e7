import itertools
import random
from fractions import Fraction

import pytest

from latticeineq import (
    DECREASING,
    INCREASING,
    NotBoolean,
    PreconditionFailed,
    QPolynomial,
    WeightFunction,
    WeightQuadruple,
    birkhoff_embed,
    boolean,
    boolean_frame,
    check_ad_hypothesis,
    check_q4ft,
    check_setminus_lemma,
    coefficient_slice_check,
    complement_transform,
    diagonal_construction,
    divisor,
    extend_via_embedding,
    fkg_quadruple,
    interval_restriction,
    product,
    chain,
    q_weighted_polynomial,
    replay_q4ft,
)
from latticeineq.search import reference_quadruple, random_ad_quadruple, random_selection


def ones(L):
    w = WeightFunction.constant(L, 1)
    return WeightQuadruple(w, w, w, w)


def values(w):
    return tuple(v for _, v in w.items())


class TestExtend:
    def test_divisor_twelve(self):
        L = divisor(12)
        emb = birkhoff_embed(L)
        w = WeightFunction.constant(L, 1)
        ext = extend_via_embedding(L, emb, w)
        assert sum(ext[x] for x in ext.carrier) == 6
        expected = QPolynomial([1, 2, 2, 1])
        assert q_weighted_polynomial(w) == q_weighted_polynomial(ext) == expected

    def test_empty_selection(self):
        L = divisor(12)
        ext = extend_via_embedding(L, birkhoff_embed(L), WeightFunction.constant(L, 1), [])
        assert all(v == 0 for v in values(ext))

    def test_boolean_identity(self):
        L = boolean(2)
        w = WeightFunction.from_sequence(L, [3, 1, 4, 1])
        assert values(extend_via_embedding(L, birkhoff_embed(L), w)) == values(w)

    def test_polynomial_preserved(self):
        rng = random.Random(4)
        for L in (divisor(36), divisor(60), product(chain(3), chain(4)), chain(5)):
            emb = birkhoff_embed(L)
            for _ in range(10):
                w = WeightFunction.from_sequence(L, [rng.randint(0, 7) for _ in L])
                S = random_selection(L, rng)
                assert q_weighted_polynomial(extend_via_embedding(L, emb, w, S)) == q_weighted_polynomial(w, S)


class TestIntervalRestriction:
    def test_identity(self):
        quad = reference_quadruple()
        r = interval_restriction(quad, set(), {1, 2})
        for old, new in zip(quad, r):
            assert values(old) == values(new)

    def test_lower_end_one(self):
        quad = reference_quadruple()
        r = interval_restriction(quad, "{1}", "{1,2}")
        assert r.carrier.elements == ("{}", "{2}")
        assert values(r.alpha) == (0, 0)
        assert values(r.beta) == (1, 0)
        assert values(r.gamma) == (0, 1)
        assert values(r.delta) == (0, 0)

    def test_point_interval(self):
        quad = reference_quadruple()
        r = interval_restriction(quad, {2}, {2})
        assert len(r.carrier) == 1
        assert [w["{}"] for w in r] == [1, 1, 1, 1]

    def test_not_nested(self):
        with pytest.raises(PreconditionFailed):
            interval_restriction(reference_quadruple(), {1}, {2})

    def test_non_boolean(self):
        with pytest.raises(NotBoolean):
            interval_restriction(ones(divisor(12)), set(), set())


class TestSlices:
    def test_reference_k1(self):
        v = coefficient_slice_check(reference_quadruple(), 1)
        assert v and (v.lhs, v.rhs) == (1, 1) and v.details["identity"]
        nonzero = [(s.F, s.G) for s in v.details["slices"] if not s.skipped and s.lhs]
        assert nonzero == [("{}", "{2}")]

    def test_reference_k2(self):
        v = coefficient_slice_check(reference_quadruple(), 2)
        assert v and (v.lhs, v.rhs) == (2, 2) and v.details["identity"]

    @pytest.mark.parametrize("n", [0, 1, 2, 3])
    def test_top_coefficient_all_ones(self, n):
        v = coefficient_slice_check(ones(boolean(n)), 2 * n)
        assert (v.lhs, v.rhs) == (1, 1)
        active = [s for s in v.details["slices"] if not s.skipped]
        assert len(active) == 1 and active[0].F == active[0].G

    def test_out_of_range(self):
        from latticeineq import ParamError
        with pytest.raises(ParamError):
            coefficient_slice_check(reference_quadruple(), 5)

    def test_identity_is_unconditional(self):
        rng = random.Random(9)
        for n in (1, 2, 3):
            L = boolean(n)
            for _ in range(25):
                quad = WeightQuadruple.from_table(
                    L, *([rng.choice([0, 1, 2, Fraction(1, 3)]) for _ in L] for _ in range(4)))
                for k in range(2 * n + 1):
                    assert coefficient_slice_check(quad, k).details["identity"]


class TestComplement:
    def test_involution(self):
        rng = random.Random(2)
        L = boolean(3)
        for _ in range(10):
            quad = WeightQuadruple.from_table(L, *([rng.randint(0, 4) for _ in L] for _ in range(4)))
            back = complement_transform(complement_transform(quad))
            assert all(values(x) == values(y) for x, y in zip(quad, back))

    def test_constants_fixed(self):
        quad = ones(boolean(2))
        assert all(values(x) == values(y) for x, y in zip(quad, complement_transform(quad)))

    def test_reference_beta(self):
        assert values(complement_transform(reference_quadruple()).beta) == (0, 1, 1, 1)

    def test_setminus_iff_ad(self):
        rng = random.Random(6)
        for n in (1, 2):
            L = boolean(n)
            for _ in range(200):
                quad = WeightQuadruple.from_table(
                    L, *([rng.choice([0, 1, 2]) for _ in L] for _ in range(4)))
                hyp, _ = check_setminus_lemma(quad)
                assert hyp.holds == check_ad_hypothesis(complement_transform(quad)).holds


class TestDiagonal:
    def test_reference_table(self):
        f, g = diagonal_construction(reference_quadruple())
        assert values(f) == (0, 0, 1, 0)
        assert values(g) == (1, 0, 0, 0)
        assert f.total() == g.total() == 1

    def test_constants_and_zero(self):
        f, g = diagonal_construction(ones(boolean(2)))
        assert values(f) == values(g) == (1, 1, 1, 1)
        L = boolean(2)
        z, one = WeightFunction.constant(L, 0), WeightFunction.constant(L, 1)
        f, _ = diagonal_construction(WeightQuadruple(z, one, one, one))
        assert values(f) == (0, 0, 0, 0)


class TestFkgQuadruple:
    def setup_method(self):
        self.L = boolean(2)
        self.mu = WeightFunction.from_sequence(self.L, [1, 1, 1, 2])
        self.up = WeightFunction.from_function(self.L, lambda x: 1 if "1" in x else 0)
        self.down = WeightFunction.from_function(self.L, lambda x: 0 if "1" in x else 1)

    def test_all_ones(self):
        one = WeightFunction.constant(self.L, 1)
        for direction in (INCREASING, DECREASING):
            quad = fkg_quadruple(one, one, one, direction)
            assert all(values(w) == (1, 1, 1, 1) for w in quad)
            assert check_ad_hypothesis(quad)

    def test_increasing(self):
        quad = fkg_quadruple(self.mu, self.up, self.up)
        assert values(quad.alpha) == values(quad.beta) == values(quad.gamma) == (0, 1, 0, 2)
        assert values(quad.delta) == (1, 1, 1, 2)
        assert check_ad_hypothesis(quad)

    def test_printed_assignment_needs_swap_when_increasing(self):
        # 0/1 indicators happen to pass either way
        quad = fkg_quadruple(self.mu, self.up, self.up)
        assert check_ad_hypothesis(WeightQuadruple(quad.alpha, quad.beta, quad.delta, quad.gamma))
        # a strictly increasing f separates the two assignments
        L = boolean(1)
        mu = WeightFunction.constant(L, 1)
        f = WeightFunction.from_sequence(L, [1, 2])
        quad = fkg_quadruple(mu, f, f)
        assert check_ad_hypothesis(quad)
        v = check_ad_hypothesis(WeightQuadruple(quad.alpha, quad.beta, quad.delta, quad.gamma))
        assert not v and v.witness == ("{}", "{1}") and (v.lhs, v.rhs) == (2, 1)

    def test_decreasing_uses_printed_assignment(self):
        quad = fkg_quadruple(self.mu, self.down, self.down)
        assert values(quad.gamma) == values(self.mu)
        assert check_ad_hypothesis(quad)

    def test_preconditions(self):
        bad = WeightFunction.from_sequence(self.L, [1, 2, 2, 1])
        with pytest.raises(PreconditionFailed):
            fkg_quadruple(bad, self.up, self.up)
        with pytest.raises(PreconditionFailed):
            fkg_quadruple(self.mu, self.up, self.down)
        with pytest.raises(PreconditionFailed):
            fkg_quadruple(self.mu, self.up, self.up, DECREASING)

    def test_reproduces_fkg_polynomials(self):
        from latticeineq import check_fkg_q
        quad = fkg_quadruple(self.mu, self.up, self.up)
        v, fkg = check_q4ft(quad), check_fkg_q(self.mu, self.up, self.up)
        assert v and v.lhs == fkg.lhs and v.rhs == fkg.rhs


def test_hypothesis_preservation():
    rng = random.Random(2024)
    for i in range(1000):
        n = 1 + i % 3
        L = boolean(n)
        quad = random_ad_quadruple(L, rng)
        frame = boolean_frame(L)
        for F, G in itertools.product(frame.to_set.values(), repeat=2):
            if F <= G:
                assert check_ad_hypothesis(interval_restriction(quad, F, G))
        f, g = diagonal_construction(quad)
        for A, B in itertools.product(L, repeat=2):
            SA, SB = frame.to_set[A], frame.to_set[B]
            assert f[A] * f[B] <= g[frame.element(SB - SA)] * g[frame.element(SA - SB)]
        # the complement of the quadruple meets the set-minus hypothesis
        hyp, concl = check_setminus_lemma(complement_transform(quad))
        assert hyp and concl


def test_replay_agrees_on_random_lattices():
    rng = random.Random(77)
    for L in (boolean(2), divisor(12), product(chain(2), chain(3)), chain(4)):
        for _ in range(5):
            quad = random_ad_quadruple(L, rng)
            report = replay_q4ft(quad, random_selection(L, rng), random_selection(L, rng))
            assert report.agree and report.identities_hold and report.direct


def test_replay_agrees_when_it_fails():
    L = boolean(1)
    zero, one = WeightFunction.constant(L, 0), WeightFunction.constant(L, 1)
    report = replay_q4ft(WeightQuadruple(one, one, zero, one))
    assert not report.direct and not report.slice_route_holds and report.agree
