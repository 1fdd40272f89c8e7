"""Polynomials in q with exact rational coefficients, and the ≪ order."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .verdict import Verdict, failed, passed

__all__ = ["QPolynomial", "poly_dominates", "format_rational", "parse_rational"]

_SUPERSCRIPT = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def parse_rational(text: str) -> Fraction:
    """Parse an integer ``p`` or a ratio ``p/q``; decimals are rejected."""
    text = text.strip()
    num, sep, den = text.partition("/")
    try:
        if sep:
            return Fraction(int(num), int(den))
        return Fraction(int(num))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a rational literal: {text!r}") from None


def format_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class QPolynomial:
    """Dense coefficient vector, index = power of q, trailing zeros trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        coeffs = [Fraction(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(coeffs)

    @classmethod
    def monomial(cls, coeff, power: int) -> QPolynomial:
        return cls([0] * power + [coeff])

    @property
    def degree(self) -> float | int:
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, QPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        n = max(len(self), len(other))
        return QPolynomial(self[k] + other[k] for k in range(n))

    def __sub__(self, other):
        n = max(len(self), len(other))
        return QPolynomial(self[k] - other[k] for k in range(n))

    def __neg__(self):
        return QPolynomial(-c for c in self.coeffs)

    def __mul__(self, other):
        if not isinstance(other, QPolynomial):
            return QPolynomial(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return QPolynomial()
        out = [Fraction(0)] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return QPolynomial(out)

    __rmul__ = __mul__

    def __call__(self, q) -> Fraction:
        total = Fraction(0)
        for c in reversed(self.coeffs):
            total = total * q + c
        return total

    def __repr__(self):
        return f"QPolynomial({[format_rational(c) for c in self.coeffs]})"

    def serialize(self) -> str:
        """Space-separated coefficients, lowest degree first (``0`` if zero)."""
        return " ".join(format_rational(c) for c in self.coeffs) or "0"

    @classmethod
    def parse(cls, text: str) -> QPolynomial:
        return cls(parse_rational(t) for t in text.split())

    def pretty(self) -> str:
        """Human-readable form such as ``q+2q²+q³``."""
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            coef = format_rational(abs(c))
            if k == 0:
                body = coef
            else:
                power = "q" if k == 1 else "q" + str(k).translate(_SUPERSCRIPT)
                body = power if abs(c) == 1 else coef + power
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        return out + "".join(s + b for s, b in terms[1:])

    __str__ = pretty


def poly_dominates(P: QPolynomial, R: QPolynomial) -> Verdict:
    """Check P ≪ R: every coefficient of R - P is non-negative.

    On failure the witness is ``(k,)`` for the lowest offending power, with
    the coefficients of P and R at ``k`` as ``lhs``/``rhs``.
    """
    for k in range(max(len(P), len(R))):
        if P[k] > R[k]:
            return failed((k,), P[k], R[k], "dominance")
    return passed(P, R, "dominance")
