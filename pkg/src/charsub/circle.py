"""Points of the circle group T = R/Z.

Exact points are plain :class:`fractions.Fraction` values reduced into
``[0, 1)``. Irrational points are :class:`CircleInterval` objects: a rational
enclosure ``[lower, upper]`` of ``multiplier * real`` taken mod 1, where
``real`` is a :class:`CertifiedReal` that can be refined on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


def circle(x) -> Fraction:
    """Canonical representative of ``x`` in [0, 1)."""
    return Fraction(x) % 1


def signed_rep(t) -> Fraction:
    """Representative of ``t`` in (-1/2, 1/2]."""
    t = Fraction(t) % 1
    return t - 1 if t > HALF else t


def norm(t) -> Fraction:
    """Distance from an exact point to the nearest integer."""
    t = Fraction(t) % 1
    return min(t, 1 - t)


def in_t_plus(t) -> bool:
    return norm(t) <= QUARTER


class CertifiedReal:
    """A real number given by rational enclosures of any requested precision.

    Subclasses implement :meth:`bounds`, which must return ``(lo, hi)`` with
    ``lo <= value <= hi`` and ``hi - lo <= 2**-level``.
    """

    def bounds(self, level: int) -> tuple[Fraction, Fraction]:
        raise NotImplementedError

    def magnitude_bound(self) -> Fraction:
        lo, hi = self.bounds(0)
        return max(abs(lo), abs(hi))


@dataclass(frozen=True)
class QuadraticIrrational(CertifiedReal):
    """The real number ``(a + b*sqrt(d)) / c``."""

    a: int
    b: int
    d: int
    c: int = 1

    def __post_init__(self):
        if self.d < 0 or self.c == 0:
            raise ValueError("need d >= 0 and c != 0")

    def bounds(self, level):
        # enclose sqrt(d) to width 2**-k, then scale
        k = level + max(abs(self.b), 1).bit_length() + 1
        scale = 1 << k
        s = isqrt(self.d * scale * scale)
        exact = s * s == self.d * scale * scale
        lo_s = Fraction(s, scale)
        hi_s = lo_s if exact else Fraction(s + 1, scale)
        ends = [(self.a + self.b * lo_s) / self.c, (self.a + self.b * hi_s) / self.c]
        return min(ends), max(ends)

    def __str__(self):
        if (self.a, self.b, self.d, self.c) == (1, 1, 5, 2):
            return "phi"
        if self.a == 0 and self.b == 1 and self.c == 1:
            return f"sqrt({self.d})"
        return f"({self.a}+{self.b}*sqrt({self.d}))/{self.c}"


def golden_ratio() -> QuadraticIrrational:
    return QuadraticIrrational(1, 1, 5, 2)


def sqrt(d: int) -> QuadraticIrrational:
    return QuadraticIrrational(0, 1, d, 1)


@dataclass(frozen=True)
class CircleInterval:
    """Certified enclosure of ``multiplier * real`` in T.

    An optional exact ``offset`` is added.  ``lower`` lies in [0, 1); the
    true point is
    ``lower + s`` mod 1 for some ``0 <= s <= upper - lower``.  Refinement is
    a deterministic function of ``(real, multiplier, level)``.
    """

    real: CertifiedReal
    multiplier: int = 1
    level: int = 20
    offset: Fraction = Fraction(0)

    @property
    def _raw(self):
        lo, hi = self.real.bounds(self.level)
        m = self.multiplier
        lo, hi = (m * lo, m * hi) if m >= 0 else (m * hi, m * lo)
        lo, hi = lo + self.offset, hi + self.offset
        shift = lo.numerator // lo.denominator
        return lo - shift, hi - shift

    @property
    def lower(self) -> Fraction:
        return self._raw[0]

    @property
    def upper(self) -> Fraction:
        return self._raw[1]

    @property
    def width(self) -> Fraction:
        lo, hi = self._raw
        return hi - lo

    def refine(self) -> CircleInterval:
        """Return an enclosure of at most half the current width."""
        target = self.width / 2
        level = self.level + 1
        while True:
            out = CircleInterval(self.real, self.multiplier, level, self.offset)
            if out.width <= target:
                return out
            level += 1

    def refine_to(self, width) -> CircleInterval:
        out = self
        while out.width > width:
            out = out.refine()
        return out

    def scale(self, n: int, width=Fraction(1, 2**40)) -> CircleInterval:
        """Enclosure of ``n`` times this point with width at most ``width``."""
        width = Fraction(width)
        m = self.multiplier * n
        offset = circle(self.offset * n)
        level = self.level
        while True:
            out = CircleInterval(self.real, m, level, offset)
            if out.width <= width:
                return out
            ratio = out.width / width
            level += max(1, ratio.numerator.bit_length() - ratio.denominator.bit_length() + 1)

    def shift(self, t) -> CircleInterval:
        """The enclosure translated by the exact point ``t``."""
        return CircleInterval(self.real, self.multiplier, self.level, circle(self.offset + t))

    def norm_bounds(self) -> tuple[Fraction, Fraction]:
        """Lower and upper bounds on the distance to Z over the enclosure."""
        return interval_norm_bounds(*self._raw)

    def __str__(self):
        text = f"{self.multiplier}*{self.real}" if self.multiplier != 1 else str(self.real)
        return f"{text}+{self.offset}" if self.offset else text


def interval_norm_bounds(lower, upper) -> tuple[Fraction, Fraction]:
    """Image of the rational interval ``[lower, upper]`` under the norm of T."""
    lower, upper = Fraction(lower), Fraction(upper)
    if upper < lower:
        raise ValueError("empty interval")
    if upper - lower >= 1:
        return Fraction(0), HALF
    shift = lower.numerator // lower.denominator
    lo, hi = lower - shift, upper - shift
    low = Fraction(0) if hi >= 1 else min(norm(lo), norm(hi))
    high = HALF if (lo <= HALF <= hi or hi >= 1 + HALF) else max(norm(lo), norm(hi))
    return low, high


def circle_norm(t):
    """Norm of a circle value.

    Exact points give a single Fraction in [0, 1/2]; intervals (either a
    :class:`CircleInterval` or a plain ``(lower, upper)`` pair of rationals)
    give a ``(lower, upper)`` pair of Fractions.
    """
    if isinstance(t, CircleInterval):
        return t.norm_bounds()
    if isinstance(t, tuple):
        return interval_norm_bounds(*t)
    return norm(t)
