"""Exact checkers for the four functions family of correlation inequalities.

All weights are :class:`fractions.Fraction`; every comparison is exact.
Pairwise scans run over ordered pairs in the carrier's input order and
report the first failure.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Collection, Iterable, Mapping, Sequence

from .birkhoff import boolean_frame
from .errors import NotDistributive, ParamError, PreconditionFailed
from .lattice import Lattice
from .polynomial import QPolynomial, poly_dominates
from .verdict import Verdict, failed, passed

__all__ = [
    "WeightFunction",
    "WeightQuadruple",
    "selection",
    "family_join",
    "family_meet",
    "check_ad_hypothesis",
    "check_4ft_conclusion",
    "q_weighted_polynomial",
    "check_q4ft",
    "check_q4ft_stronger",
    "check_setminus_lemma",
    "is_log_supermodular",
    "is_monotone",
    "monotone_direction",
    "check_fkg_q",
    "INCREASING",
    "DECREASING",
]

INCREASING = "increasing"
DECREASING = "decreasing"


class WeightFunction:
    """A non-negative exact rational value for every element of a lattice."""

    __slots__ = ("carrier", "vector")

    def __init__(self, carrier: Lattice, values: Mapping[str, object]):
        missing = [x for x in carrier if x not in values]
        if missing:
            raise ParamError(f"weight function has no value for {missing[0]!r}")
        extra = [x for x in values if x not in carrier]
        if extra:
            raise ParamError(f"weight function names unknown element {extra[0]!r}")
        vector = []
        for x in carrier:
            v = values[x]
            if isinstance(v, float):
                raise ParamError(f"weight of {x!r} is a float; use an exact rational")
            v = Fraction(v)
            if v < 0:
                raise ParamError(f"weight of {x!r} is negative: {v}")
            vector.append(v)
        self.carrier = carrier
        self.vector: tuple[Fraction, ...] = tuple(vector)

    @classmethod
    def from_sequence(cls, carrier: Lattice, values: Sequence) -> WeightFunction:
        """Values listed in the carrier's element order."""
        if len(values) != len(carrier):
            raise ParamError(f"expected {len(carrier)} values, got {len(values)}")
        return cls(carrier, dict(zip(carrier.elements, values)))

    @classmethod
    def constant(cls, carrier: Lattice, c=1) -> WeightFunction:
        return cls.from_sequence(carrier, [c] * len(carrier))

    @classmethod
    def from_function(cls, carrier: Lattice, fn: Callable[[str], object]) -> WeightFunction:
        return cls(carrier, {x: fn(x) for x in carrier})

    def __getitem__(self, x: str) -> Fraction:
        return self.vector[self.carrier.index[x]]

    def items(self):
        return zip(self.carrier.elements, self.vector)

    def as_dict(self) -> dict[str, Fraction]:
        return dict(self.items())

    def total(self, S: Iterable[str] | None = None) -> Fraction:
        if S is None:
            return sum(self.vector, Fraction(0))
        return sum((self[x] for x in S), Fraction(0))

    def __mul__(self, other):
        if isinstance(other, WeightFunction):
            if other.carrier is not self.carrier:
                raise ParamError("pointwise product of weights on different carriers")
            return WeightFunction.from_sequence(
                self.carrier, [a * b for a, b in zip(self.vector, other.vector)])
        return WeightFunction.from_sequence(self.carrier, [a * other for a in self.vector])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, WeightFunction):
            return NotImplemented
        return self.carrier is other.carrier and self.vector == other.vector

    def __hash__(self):
        return hash((id(self.carrier), self.vector))

    def __repr__(self):
        body = ", ".join(f"{x}: {v}" for x, v in self.items())
        return f"WeightFunction({{{body}}})"


@dataclass(frozen=True)
class WeightQuadruple:
    alpha: WeightFunction
    beta: WeightFunction
    gamma: WeightFunction
    delta: WeightFunction

    def __post_init__(self):
        c = self.alpha.carrier
        if any(w.carrier is not c for w in (self.beta, self.gamma, self.delta)):
            raise ParamError("the four weight functions must share one carrier")

    @property
    def carrier(self) -> Lattice:
        return self.alpha.carrier

    @classmethod
    def from_table(cls, carrier: Lattice, alpha, beta, gamma, delta) -> WeightQuadruple:
        """Build from four value lists in the carrier's element order."""
        return cls(*(WeightFunction.from_sequence(carrier, v) for v in (alpha, beta, gamma, delta)))

    def __iter__(self):
        return iter((self.alpha, self.beta, self.gamma, self.delta))


def selection(L: Lattice, S: Collection[str] | None) -> tuple[str, ...]:
    """Normalise a family of elements: ``None`` means all of ``L``.

    Returns the distinct members in the lattice's element order.
    """
    if S is None:
        return L.elements
    members = set(S)
    unknown = sorted(members - set(L.index))
    if unknown:
        raise ParamError(f"selection contains unknown elements: {unknown}")
    return tuple(x for x in L if x in members)


def family_join(L: Lattice, X, Y) -> tuple[str, ...]:
    """{x ∨ y : x ∈ X, y ∈ Y} as a set, in element order."""
    X, Y = selection(L, X), selection(L, Y)
    return selection(L, {L.join(x, y) for x in X for y in Y})


def family_meet(L: Lattice, X, Y) -> tuple[str, ...]:
    X, Y = selection(L, X), selection(L, Y)
    return selection(L, {L.meet(x, y) for x in X for y in Y})


def check_ad_hypothesis(quad: WeightQuadruple) -> Verdict:
    """α(x)β(y) ≤ γ(x ∨ y)δ(x ∧ y) for all ordered pairs, x = y included."""
    L = quad.carrier
    a, b, c, d = (w.vector for w in quad)
    J, M = L.join_table, L.meet_table
    n = len(L)
    for i in range(n):
        if not a[i]:
            continue
        for j in range(n):
            lhs = a[i] * b[j]
            if lhs and lhs > c[J[i][j]] * d[M[i][j]]:
                return failed((L.elements[i], L.elements[j]), lhs, c[J[i][j]] * d[M[i][j]],
                              "AD hypothesis")
    return passed(condition="AD hypothesis")


def check_4ft_conclusion(quad: WeightQuadruple, X=None, Y=None) -> Verdict:
    """α(X)β(Y) ≤ γ(X ∨ Y)δ(X ∧ Y) with X ∨ Y, X ∧ Y taken as sets."""
    L = quad.carrier
    X, Y = selection(L, X), selection(L, Y)
    XjY, XmY = family_join(L, X, Y), family_meet(L, X, Y)
    sums = dict(
        alpha=quad.alpha.total(X), beta=quad.beta.total(Y),
        gamma=quad.gamma.total(XjY), delta=quad.delta.total(XmY),
    )
    lhs = sums["alpha"] * sums["beta"]
    rhs = sums["gamma"] * sums["delta"]
    details = dict(sums=sums, join=XjY, meet=XmY, vacuous=not X or not Y)
    if lhs > rhs:
        return failed((X, Y), lhs, rhs, "4FT", **details)
    return passed(lhs, rhs, "4FT", **details)


def q_weighted_polynomial(w: WeightFunction, S=None) -> QPolynomial:
    """Σ_{x ∈ S} w(x) q^{r(x)}."""
    L = w.carrier
    S = selection(L, S)
    coeffs = [Fraction(0)] * ((max(L.rank(x) for x in S) + 1) if S else 0)
    for x in S:
        coeffs[L.rank(x)] += w[x]
    return QPolynomial(coeffs)


def _require_distributive(L):
    if not L.is_distributive:
        raise NotDistributive(f"carrier is not distributive (fails at {L.distributivity.witness})")


def check_q4ft(quad: WeightQuadruple, X=None, Y=None) -> Verdict:
    """Coefficientwise dominance of the rank-generating products.

    ``lhs``/``rhs`` are the polynomials
    Σ_X α q^r · Σ_Y β q^r and Σ_{X∨Y} γ q^r · Σ_{X∧Y} δ q^r.  On failure the
    witness is ``(k,)`` and ``details`` has both coefficients at ``q^k``.
    """
    L = quad.carrier
    _require_distributive(L)
    X, Y = selection(L, X), selection(L, Y)
    XjY, XmY = family_join(L, X, Y), family_meet(L, X, Y)
    factors = dict(
        alpha=q_weighted_polynomial(quad.alpha, X),
        beta=q_weighted_polynomial(quad.beta, Y),
        gamma=q_weighted_polynomial(quad.gamma, XjY),
        delta=q_weighted_polynomial(quad.delta, XmY),
    )
    lhs = factors["alpha"] * factors["beta"]
    rhs = factors["gamma"] * factors["delta"]
    dom = poly_dominates(lhs, rhs)
    details = dict(factors=factors, join=XjY, meet=XmY, vacuous=not X or not Y)
    if not dom:
        return failed(dom.witness, lhs, rhs, "q-4FT",
                      lhs_coeff=dom.lhs, rhs_coeff=dom.rhs, **details)
    return passed(lhs, rhs, "q-4FT", **details)


def check_q4ft_stronger(quad: WeightQuadruple) -> Verdict:
    """Σ_A α(A)β(Aᶜ) ≤ Σ_C γ(C)δ(Cᶜ) on a Boolean carrier."""
    frame = boolean_frame(quad.carrier)
    lhs = sum((quad.alpha[x] * quad.beta[frame.complement(x)] for x in frame.lattice), Fraction(0))
    rhs = sum((quad.gamma[x] * quad.delta[frame.complement(x)] for x in frame.lattice), Fraction(0))
    if lhs > rhs:
        return failed((), lhs, rhs, "complement-sum")
    return passed(lhs, rhs, "complement-sum")


def check_setminus_lemma(quad: WeightQuadruple) -> tuple[Verdict, Verdict]:
    """Set-difference hypothesis and total-mass conclusion, reported separately.

    The first verdict scans α(A)β(B) ≤ γ(B∖A)δ(A∖B) over ordered pairs; the
    second compares α(P)β(P) with γ(P)δ(P) for the whole power set P.
    """
    frame = boolean_frame(quad.carrier)
    to_set, elem = frame.to_set, frame.from_set
    a, b, c, d = quad
    hypothesis = passed(condition="set-difference hypothesis")
    for x, y in itertools.product(frame.lattice, repeat=2):
        lhs = a[x] * b[y]
        rhs = c[elem[to_set[y] - to_set[x]]] * d[elem[to_set[x] - to_set[y]]]
        if lhs > rhs:
            hypothesis = failed((x, y), lhs, rhs, "set-difference hypothesis")
            break
    lhs = a.total() * b.total()
    rhs = c.total() * d.total()
    if lhs > rhs:
        conclusion = failed((), lhs, rhs, "total mass")
    else:
        conclusion = passed(lhs, rhs, "total mass")
    return hypothesis, conclusion


def is_log_supermodular(mu: WeightFunction) -> Verdict:
    """μ(x)μ(y) ≤ μ(x ∨ y)μ(x ∧ y) for all ordered pairs."""
    L = mu.carrier
    m = mu.vector
    J, M = L.join_table, L.meet_table
    for i, j in itertools.product(range(len(L)), repeat=2):
        lhs, rhs = m[i] * m[j], m[J[i][j]] * m[M[i][j]]
        if lhs > rhs:
            return failed((L.elements[i], L.elements[j]), lhs, rhs, "log-supermodular")
    return passed(condition="log-supermodular")


def is_monotone(f: WeightFunction, direction: str) -> Verdict:
    """Check f(x) ≤ f(y) for x ≤ y (increasing) or x ≥ y (decreasing).

    The witness is the comparable pair ``(x, y)`` with ``x < y``.
    """
    if direction not in (INCREASING, DECREASING):
        raise ParamError(f"direction must be {INCREASING!r} or {DECREASING!r}, got {direction!r}")
    L = f.carrier
    for x, y in itertools.product(L, repeat=2):
        if x != y and L.leq(x, y):
            lo, hi = (f[x], f[y]) if direction == INCREASING else (f[y], f[x])
            if lo > hi:
                return failed((x, y), f[x], f[y], direction)
    return passed(condition=direction)


def monotone_direction(f: WeightFunction, g: WeightFunction) -> str:
    """Common monotonicity direction of ``f`` and ``g``.

    Constants count as both.  Raises :class:`PreconditionFailed` if the two
    are not both increasing or both decreasing.
    """
    verdicts = {
        (name, d): is_monotone(h, d)
        for name, h in (("f", f), ("g", g)) for d in (INCREASING, DECREASING)
    }
    for d in (INCREASING, DECREASING):
        if verdicts["f", d] and verdicts["g", d]:
            return d
    for name in ("f", "g"):
        if not verdicts[name, INCREASING] and not verdicts[name, DECREASING]:
            raise PreconditionFailed(f"{name} is neither increasing nor decreasing",
                                     "monotonicity", verdicts[name, INCREASING].witness)
    raise PreconditionFailed("f and g are monotone in opposite directions", "mixed directions",
                             verdicts["f", INCREASING].witness or verdicts["g", INCREASING].witness)


def check_fkg_q(mu: WeightFunction, f: WeightFunction, g: WeightFunction) -> Verdict:
    """P_μ(f)P_μ(g) ≪ P_μ(1)P_μ(fg), where P_μ(h) = Σ h(x)μ(x)q^{r(x)}.

    ``details`` carries the four polynomials, the detected direction and the
    q = 1 (plain FKG) comparison.
    """
    L = mu.carrier
    if f.carrier is not L or g.carrier is not L:
        raise ParamError("mu, f and g must share one carrier")
    _require_distributive(L)
    lsm = is_log_supermodular(mu)
    if not lsm:
        raise PreconditionFailed("mu is not log-supermodular", "log-supermodularity", lsm.witness)
    direction = monotone_direction(f, g)

    P = dict(
        f=q_weighted_polynomial(f * mu),
        g=q_weighted_polynomial(g * mu),
        one=q_weighted_polynomial(mu),
        fg=q_weighted_polynomial(f * g * mu),
    )
    lhs = P["f"] * P["g"]
    rhs = P["one"] * P["fg"]
    fkg_lhs, fkg_rhs = lhs(1), rhs(1)
    details = dict(polynomials=P, direction=direction,
                   fkg_lhs=fkg_lhs, fkg_rhs=fkg_rhs, fkg_holds=fkg_lhs <= fkg_rhs)
    dom = poly_dominates(lhs, rhs)
    if not dom:
        return failed(dom.witness, lhs, rhs, "q-FKG",
                      lhs_coeff=dom.lhs, rhs_coeff=dom.rhs, **details)
    return passed(lhs, rhs, "q-FKG", **details)
