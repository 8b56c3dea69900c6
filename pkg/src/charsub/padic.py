"""Rational numbers viewed inside the p-adic field Q_p.

Every rational has an eventually periodic base-p expansion, so all the
operations here are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from sympy import isprime


def valuation(x, p: int) -> int | None:
    """p-adic valuation of a rational; ``None`` stands for +infinity (x = 0)."""
    x = Fraction(x)
    if x == 0:
        return None
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def fractional_part(x, p: int) -> Fraction:
    """The p-adic fractional part {x}_p in [0, 1).

    It is the unique r / p**k with 0 <= r < p**k such that x - r / p**k lies
    in Z_p.
    """
    x = Fraction(x)
    v = valuation(x, p)
    if v is None or v >= 0:
        return Fraction(0)
    k = -v
    pk = p**k
    num = x.numerator
    den = x.denominator // pk  # coprime to p
    r = num * pow(den, -1, pk) % pk
    return Fraction(r, pk)


@dataclass(frozen=True)
class PAdic:
    """A rational point of Q_p."""

    p: int
    value: Fraction

    def __post_init__(self):
        if not isprime(self.p):
            raise ValueError(f"{self.p} is not prime")
        object.__setattr__(self, "value", Fraction(self.value))

    @property
    def valuation(self) -> int | None:
        return valuation(self.value, self.p)

    def is_zero(self) -> bool:
        return self.value == 0

    def fractional_part(self) -> Fraction:
        return fractional_part(self.value, self.p)

    def __add__(self, other):
        return PAdic(self.p, self.value + _value(other, self.p))

    def __sub__(self, other):
        return PAdic(self.p, self.value - _value(other, self.p))

    def __mul__(self, other):
        return PAdic(self.p, self.value * _value(other, self.p))

    __rmul__ = __mul__

    def __neg__(self):
        return PAdic(self.p, -self.value)

    def digits(self) -> tuple[int | None, tuple[int, ...], tuple[int, ...]]:
        """Eventually periodic expansion ``(valuation, preperiod, period)``.

        The value equals ``p**valuation * u`` where the unit ``u`` has base-p
        digits ``preperiod`` followed by ``period`` repeated forever (least
        significant digit first).  The leading digit is nonzero.  Zero is
        ``(None, (), ())``.
        """
        v = self.valuation
        if v is None:
            return None, (), ()
        u = self.value / Fraction(self.p) ** v
        seen = {}
        out = []
        while u not in seen:
            seen[u] = len(out)
            d = u.numerator * pow(u.denominator, -1, self.p) % self.p
            out.append(d)
            u = (u - d) / self.p
        start = seen[u]
        return v, tuple(out[:start]), tuple(out[start:])

    @classmethod
    def from_digits(cls, p, v, preperiod, period) -> PAdic:
        """Inverse of :meth:`digits`."""
        if v is None:
            return cls(p, Fraction(0))
        head = sum(d * p**i for i, d in enumerate(preperiod))
        block = sum(d * p**i for i, d in enumerate(period))
        tail = Fraction(block, 1 - p ** len(period)) if period else Fraction(0)
        unit = head + Fraction(p) ** len(preperiod) * tail
        return cls(p, unit * Fraction(p) ** v)

    def __str__(self):
        return str(self.value)


def _value(other, p):
    if isinstance(other, PAdic):
        if other.p != p:
            raise ValueError("mixing different primes")
        return other.value
    return Fraction(other)
