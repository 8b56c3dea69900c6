"""Finitely presented infinite sequences of characters.

Each family is an immutable dataclass exposing ``group``, ``nth(n)`` and
``expr()`` (a string in the textual sequence grammar, see :mod:`charsub.expr`).
The structural analyses in this module never sample: whatever they return is
derived from the family's closed form.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from math import factorial, gcd, lcm

from .circle import CircleInterval, circle, signed_rep
from .errors import DescriptorMismatch, PreconditionError, Undecidable
from .groups import (
    CircleT,
    FiniteAbelian,
    IntegersZ,
    PAdicQ,
    Product,
    RealsR,
    canonical_character,
    is_zero_character,
    zero_character,
)
from .padic import PAdic

# bound on explicit state-space searches for integer recurrences
SEARCH_LIMIT = 10_000


# ---------------------------------------------------------------------------
# eventually periodic presentations


@dataclass(frozen=True)
class EventuallyPeriodic:
    """The sequence ``prefix + cycle + cycle + ...`` (cycle nonempty)."""

    prefix: tuple
    cycle: tuple

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if not self.cycle:
            raise ValueError("cycle must be nonempty")

    @property
    def preperiod(self) -> int:
        return len(self.prefix)

    @property
    def period(self) -> int:
        return len(self.cycle)

    def at(self, n: int):
        if n < len(self.prefix):
            return self.prefix[n]
        return self.cycle[(n - len(self.prefix)) % len(self.cycle)]

    def _spread(self, pre, period):
        return EventuallyPeriodic(
            tuple(self.at(n) for n in range(pre)), tuple(self.at(n) for n in range(pre, pre + period))
        )

    def tail(self, m: int) -> EventuallyPeriodic:
        pre = max(0, self.preperiod - m)
        return EventuallyPeriodic(
            tuple(self.at(m + n) for n in range(pre)),
            tuple(self.at(m + n) for n in range(pre, pre + self.period)),
        )

    def interleave(self, other: EventuallyPeriodic) -> EventuallyPeriodic:
        half_pre = max(self.preperiod, other.preperiod)
        half_period = lcm(self.period, other.period)

        def at(n):
            return self.at(n // 2) if n % 2 == 0 else other.at(n // 2)

        pre, period = 2 * half_pre, 2 * half_period
        return EventuallyPeriodic(tuple(at(n) for n in range(pre)), tuple(at(n) for n in range(pre, pre + period)))

    def map(self, f) -> EventuallyPeriodic:
        return EventuallyPeriodic(tuple(f(a) for a in self.prefix), tuple(f(a) for a in self.cycle))

    def zip_with(self, other: EventuallyPeriodic, f) -> EventuallyPeriodic:
        pre = max(self.preperiod, other.preperiod)
        period = lcm(self.period, other.period)
        return EventuallyPeriodic(
            tuple(f(self.at(n), other.at(n)) for n in range(pre)),
            tuple(f(self.at(n), other.at(n)) for n in range(pre, pre + period)),
        )

    def minimal(self) -> EventuallyPeriodic:
        """Shortest prefix and minimal period presenting the same sequence."""
        cyc = self.cycle
        L = len(cyc)
        for d in range(1, L + 1):
            if L % d == 0 and all(cyc[i] == cyc[i % d] for i in range(L)):
                cyc = cyc[:d]
                break
        pre = list(self.prefix)
        while pre and pre[-1] == cyc[-1]:
            pre.pop()
            cyc = (cyc[-1],) + cyc[:-1]
        return EventuallyPeriodic(tuple(pre), cyc)

    def infinitely_often(self) -> frozenset:
        return frozenset(self.cycle)

    def finitely_often(self) -> frozenset:
        return frozenset(self.prefix) - frozenset(self.cycle)

    def eventually_constant(self, value) -> bool:
        return all(c == value for c in self.cycle)


def _detect_cycle(step, state, limit=SEARCH_LIMIT):
    """Iterate ``state -> step(state)`` until a state repeats.

    Returns ``(states, start)`` where ``states[start:]`` is the cycle.
    """
    seen = {}
    states = []
    while state not in seen:
        if len(states) > limit:
            return None
        seen[state] = len(states)
        states.append(state)
        state = step(state)
    return states, seen[state]


# ---------------------------------------------------------------------------
# null bounds: explicit upper bounds |N_n| <= bound(n) that decrease to 0


class NullBound:
    def bound(self, n: int) -> Fraction:
        raise NotImplementedError

    def first_below(self, eps) -> int:
        """An index n0 with ``bound(n) <= eps`` for every n >= n0."""
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError

    def is_zero(self) -> bool:
        return False


@dataclass(frozen=True)
class ZeroBound(NullBound):
    def bound(self, n):
        return Fraction(0)

    def first_below(self, eps):
        return 0

    def describe(self):
        return "0"

    def is_zero(self):
        return True


@dataclass(frozen=True)
class GeometricBound(NullBound):
    """``C / q**n``."""

    C: Fraction
    q: int

    def bound(self, n):
        return Fraction(self.C) / self.q**n

    def first_below(self, eps):
        eps = Fraction(eps)
        if eps <= 0:
            raise ValueError("eps must be positive")
        n = 0
        while self.bound(n) > eps:
            n += 1
        return n

    def describe(self):
        return f"{self.C}/{self.q}^n"


@dataclass(frozen=True)
class HarmonicBound(NullBound):
    """``C / n`` for n >= 1 and ``C`` at n = 0."""

    C: Fraction

    def bound(self, n):
        return Fraction(self.C) / max(n, 1)

    def first_below(self, eps):
        eps = Fraction(eps)
        if eps <= 0:
            raise ValueError("eps must be positive")
        q = Fraction(self.C) / eps
        return max(1, -(-q.numerator // q.denominator))

    def describe(self):
        return f"{self.C}/n"


@dataclass(frozen=True)
class ScaledBound(NullBound):
    inner: NullBound
    factor: Fraction

    def bound(self, n):
        return abs(Fraction(self.factor)) * self.inner.bound(n)

    def first_below(self, eps):
        if self.factor == 0:
            return 0
        return self.inner.first_below(Fraction(eps) / abs(Fraction(self.factor)))

    def describe(self):
        return f"{abs(Fraction(self.factor))}*({self.inner.describe()})"

    def is_zero(self):
        return self.factor == 0 or self.inner.is_zero()


@dataclass(frozen=True)
class ShiftedBound(NullBound):
    inner: NullBound
    m: int

    def bound(self, n):
        return self.inner.bound(n + self.m)

    def first_below(self, eps):
        return max(0, self.inner.first_below(eps) - self.m)

    def describe(self):
        return f"shift({self.inner.describe()}, {self.m})"

    def is_zero(self):
        return self.inner.is_zero()


@dataclass(frozen=True)
class InterleavedBound(NullBound):
    even: NullBound
    odd: NullBound

    def bound(self, n):
        return self.even.bound(n // 2) if n % 2 == 0 else self.odd.bound(n // 2)

    def first_below(self, eps):
        return max(2 * self.even.first_below(eps), 2 * self.odd.first_below(eps) + 1)

    def describe(self):
        return f"interleave({self.even.describe()}, {self.odd.describe()})"

    def is_zero(self):
        return self.even.is_zero() and self.odd.is_zero()


@dataclass(frozen=True)
class PrefixBound(NullBound):
    """``inner`` from index ``m`` on, zero before."""

    inner: NullBound
    m: int

    def bound(self, n):
        return Fraction(0) if n < self.m else self.inner.bound(n)

    def first_below(self, eps):
        return self.inner.first_below(eps)

    def describe(self):
        return f"({self.inner.describe()} from n={self.m})"

    def is_zero(self):
        return self.inner.is_zero()


@dataclass(frozen=True)
class SumBound(NullBound):
    left: NullBound
    right: NullBound

    def bound(self, n):
        return self.left.bound(n) + self.right.bound(n)

    def first_below(self, eps):
        half = Fraction(eps) / 2
        return max(self.left.first_below(half), self.right.first_below(half))

    def describe(self):
        return f"{self.left.describe()} + {self.right.describe()}"

    def is_zero(self):
        return self.left.is_zero() and self.right.is_zero()


@dataclass(frozen=True)
class NullSplit:
    """Characters written as ``v_n = P_n + N_n`` with P eventually periodic.

    For sequences on Z the ``P_n`` are exact points of T; on R they are
    rationals.  The real numbers ``N_n`` satisfy ``|N_n| <= bound.bound(n)``
    and have sign ``sign.at(n)`` (one of -1, 0, 1) when ``sign`` is known.
    """

    periodic: EventuallyPeriodic
    bound: NullBound
    sign: EventuallyPeriodic | None


# ---------------------------------------------------------------------------
# sequence families


class CharSequence:
    """Base class of all sequence families."""

    def nth(self, n: int):
        raise NotImplementedError

    def terms(self, start: int, stop: int) -> list:
        return [self.nth(n) for n in range(start, stop)]

    def expr(self) -> str:
        raise NotImplementedError

    def __str__(self):
        return self.expr()


def _check_index(n):
    if n < 0:
        raise PreconditionError(f"index {n} is negative")


@dataclass(frozen=True)
class ExplicitPeriodic(CharSequence):
    group: object
    prefix: tuple
    cycle: tuple

    def __post_init__(self):
        if not self.cycle:
            raise PreconditionError("cycle must be nonempty")
        object.__setattr__(self, "prefix", tuple(canonical_character(self.group, c) for c in self.prefix))
        object.__setattr__(self, "cycle", tuple(canonical_character(self.group, c) for c in self.cycle))

    def nth(self, n):
        _check_index(n)
        if n < len(self.prefix):
            return self.prefix[n]
        return self.cycle[(n - len(self.prefix)) % len(self.cycle)]

    def presentation(self) -> EventuallyPeriodic:
        return EventuallyPeriodic(self.prefix, self.cycle)

    def expr(self):
        from .expr import format_character

        pre = ", ".join(format_character(self.group, c) for c in self.prefix)
        cyc = ", ".join(format_character(self.group, c) for c in self.cycle)
        return f"periodic([{pre}];[{cyc}])"


@dataclass(frozen=True)
class LinearRecurrence(CharSequence):
    """Integer characters of T with v_{n} = c_1 v_{n-1} + ... + c_r v_{n-r}."""

    coefficients: tuple
    initial: tuple
    group: object = CircleT()

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))
        object.__setattr__(self, "initial", tuple(int(c) for c in self.initial))
        if not isinstance(self.group, CircleT):
            raise DescriptorMismatch("linear recurrences are sequences of characters of T")
        if not self.coefficients or len(self.coefficients) != len(self.initial):
            raise PreconditionError("need r >= 1 coefficients and r initial values")

    @property
    def order(self):
        return len(self.coefficients)

    def step(self, state: tuple) -> tuple:
        nxt = sum(c * s for c, s in zip(self.coefficients, reversed(state)))
        return state[1:] + (nxt,)

    def terms(self, start, stop):
        out = []
        state = self.initial
        for n in range(stop):
            if n >= start:
                out.append(state[0])
            state = self.step(state)
        return out

    def nth(self, n):
        _check_index(n)
        return self.terms(n, n + 1)[0]

    def residues(self, q: int) -> EventuallyPeriodic:
        """v_n mod q, by repetition of the length-r residue state vector."""
        r = self.order

        def step(state):
            nxt = sum(c * s for c, s in zip(self.coefficients, reversed(state))) % q
            return state[1:] + (nxt,)

        start = tuple(v % q for v in self.initial)
        found = _detect_cycle(step, start, limit=q**r + 1)
        assert found is not None, "residue states exceeded q**r without repeating"
        states, k = found
        return EventuallyPeriodic(tuple(s[0] for s in states[:k]), tuple(s[0] for s in states[k:]))

    def expr(self):
        return f"rec([{', '.join(map(str, self.coefficients))}],[{', '.join(map(str, self.initial))}])"


def fibonacci() -> LinearRecurrence:
    return LinearRecurrence((1, 1), (1, 1))


@dataclass(frozen=True)
class Factorial(CharSequence):
    """v_n = n! as characters of T."""

    group: object = CircleT()

    def __post_init__(self):
        if not isinstance(self.group, CircleT):
            raise DescriptorMismatch("factorial is a sequence of characters of T")

    def nth(self, n):
        _check_index(n)
        return factorial(n)

    def terms(self, start, stop):
        out, f = [], 1
        for n in range(stop):
            if n > 0:
                f *= n
            if n >= start:
                out.append(f)
        return out

    def residues(self, q):
        pre, f, n = [], 1 % q, 0
        while f != 0:
            pre.append(f)
            n += 1
            f = f * n % q
        return EventuallyPeriodic(tuple(pre), (0,))

    def expr(self):
        return "factorial"


@dataclass(frozen=True)
class Geometric(CharSequence):
    """Powers: ``c*q**n`` on T and Q_p, ``c / q**n`` (mod 1) on Z."""

    c: int
    q: int
    group: object = CircleT()

    def __post_init__(self):
        if not isinstance(self.c, int) or not isinstance(self.q, int):
            raise PreconditionError("geometric parameters must be integers")
        if self.q < 2:
            raise PreconditionError("geometric ratio must be >= 2")
        if not isinstance(self.group, (CircleT, IntegersZ, PAdicQ)):
            raise DescriptorMismatch(f"no geometric family on {self.group}")

    def nth(self, n):
        _check_index(n)
        if isinstance(self.group, CircleT):
            return self.c * self.q**n
        if isinstance(self.group, IntegersZ):
            return circle(Fraction(self.c, self.q**n))
        return PAdic(self.group.p, Fraction(self.c * self.q**n))

    def residues(self, q):
        start = self.c % q
        states, k = _detect_cycle(lambda s: s * self.q % q, start, limit=q + 1)
        return EventuallyPeriodic(tuple(states[:k]), tuple(states[k:]))

    def expr(self):
        return f"geom({self.c},{self.q})"


@dataclass(frozen=True)
class Harmonic(CharSequence):
    """Characters of R: v_0 = 0 and v_n(x) = x/n."""

    group: object = RealsR()

    def __post_init__(self):
        if not isinstance(self.group, RealsR):
            raise DescriptorMismatch("the harmonic family lives on R")

    def nth(self, n):
        _check_index(n)
        return Fraction(0) if n == 0 else Fraction(1, n)

    def expr(self):
        return "harmonic"


@dataclass(frozen=True)
class ZEnumeration(CharSequence):
    """The one-to-one enumeration 1, -1, 2, -2, ... of the nonzero characters of T."""

    group: object = CircleT()

    def __post_init__(self):
        if not isinstance(self.group, CircleT):
            raise DescriptorMismatch("the enumeration lives on T")

    def nth(self, n):
        _check_index(n)
        k = n // 2 + 1
        return k if n % 2 == 0 else -k

    def residues(self, q):
        return EventuallyPeriodic((), tuple(self.nth(n) % q for n in range(2 * q)))

    def expr(self):
        return "zenum"


@dataclass(frozen=True)
class Interleave(CharSequence):
    """w_{2n} = u_n and w_{2n+1} = v_n."""

    u: CharSequence
    v: CharSequence

    def __post_init__(self):
        if self.u.group != self.v.group:
            raise DescriptorMismatch(f"cannot interleave sequences on {self.u.group} and {self.v.group}")

    @property
    def group(self):
        return self.u.group

    def nth(self, n):
        _check_index(n)
        return self.u.nth(n // 2) if n % 2 == 0 else self.v.nth(n // 2)

    def expr(self):
        return f"interleave({self.u.expr()},{self.v.expr()})"


@dataclass(frozen=True)
class Tail(CharSequence):
    """(v_n)_{n >= m}."""

    inner: CharSequence
    m: int

    def __post_init__(self):
        if self.m < 0:
            raise PreconditionError("tail offset must be >= 0")

    @property
    def group(self):
        return self.inner.group

    def nth(self, n):
        _check_index(n)
        return self.inner.nth(n + self.m)

    def terms(self, start, stop):
        return self.inner.terms(start + self.m, stop + self.m)

    def expr(self):
        return f"tail({self.inner.expr()},{self.m})"


@dataclass(frozen=True)
class ClaimLift(CharSequence):
    """Characters of Z sending 1 to the lift b_n of a_n = inner_n(1) with m b_n = a_n.

    ``inner`` is a sequence on Z read in the coordinates of the subgroup mZ.
    """

    inner: CharSequence
    m: int

    def __post_init__(self):
        if not isinstance(self.inner.group, IntegersZ):
            raise DescriptorMismatch("claim lifts act on sequences of characters of Z")
        if self.m < 2:
            raise PreconditionError("lift index must be >= 2")

    @property
    def group(self):
        return IntegersZ()

    def nth(self, n):
        from .construct import claim_lift

        return claim_lift(self.inner.nth(n), self.m)

    def expr(self):
        return f"lift({self.inner.expr()},{self.m})"


@dataclass(frozen=True)
class Divide(CharSequence):
    """Extension of characters of dZ to Z: 1 -> signed_rep(inner_n(1)) / d."""

    inner: CharSequence
    d: int

    def __post_init__(self):
        if not isinstance(self.inner.group, IntegersZ):
            raise DescriptorMismatch("divide acts on sequences of characters of Z")
        if self.d < 1:
            raise PreconditionError("divisor must be >= 1")

    @property
    def group(self):
        return IntegersZ()

    def nth(self, n):
        a = self.inner.nth(n)
        if isinstance(a, CircleInterval):
            raise Undecidable("cannot divide an irrational circle point exactly")
        return circle(signed_rep(a) / self.d)

    def expr(self):
        return f"divide({self.inner.expr()},{self.d})"


@dataclass(frozen=True)
class Pair(CharSequence):
    """Characters (left_n, right_n) of a product group."""

    left: CharSequence
    right: CharSequence

    @property
    def group(self):
        return Product(self.left.group, self.right.group)

    def nth(self, n):
        return (self.left.nth(n), self.right.nth(n))

    def expr(self):
        return f"pair({self.left.expr()},{self.right.expr()})"


def zero_sequence(G) -> ExplicitPeriodic:
    return ExplicitPeriodic(G, (), (zero_character(G),))


def constant(G, chi) -> ExplicitPeriodic:
    return ExplicitPeriodic(G, (), (chi,))


def nth(seq: CharSequence, n: int):
    return seq.nth(n)


def interleave(u: CharSequence, v: CharSequence) -> Interleave:
    return Interleave(u, v)


def tail(seq: CharSequence, m: int) -> CharSequence:
    if m == 0:
        return seq
    if isinstance(seq, Tail):
        return Tail(seq.inner, seq.m + m)
    return Tail(seq, m)


def push_tail(seq: CharSequence) -> CharSequence:
    """Move tails inside interleaves and merge nested tails (same terms, simpler shape)."""
    if isinstance(seq, Tail):
        inner, m = seq.inner, seq.m
        while isinstance(inner, Tail):
            inner, m = inner.inner, inner.m + m
        if isinstance(inner, Interleave):
            u, v = inner.u, inner.v
            if m % 2 == 0:
                return Interleave(push_tail(tail(u, m // 2)), push_tail(tail(v, m // 2)))
            return Interleave(push_tail(tail(v, m // 2)), push_tail(tail(u, m // 2 + 1)))
        return tail(push_tail(inner), m)
    if isinstance(seq, Interleave):
        return Interleave(push_tail(seq.u), push_tail(seq.v))
    return seq


def deinterleave(w: CharSequence) -> tuple[CharSequence, CharSequence]:
    if not isinstance(w, Interleave):
        raise PreconditionError("not an interleaved sequence")
    return w.u, w.v


# ---------------------------------------------------------------------------
# eventual periodicity


@lru_cache(maxsize=4096)
def as_periodic(seq: CharSequence) -> EventuallyPeriodic | None:
    """Exact eventually periodic presentation of the characters, if one exists structurally."""
    if isinstance(seq, ExplicitPeriodic):
        return seq.presentation()
    if isinstance(seq, Interleave):
        a, b = as_periodic(seq.u), as_periodic(seq.v)
        return a.interleave(b) if a is not None and b is not None else None
    if isinstance(seq, Tail):
        a = as_periodic(seq.inner)
        return a.tail(seq.m) if a is not None else None
    if isinstance(seq, Pair):
        a, b = as_periodic(seq.left), as_periodic(seq.right)
        return a.zip_with(b, lambda x, y: (x, y)) if a is not None and b is not None else None
    if isinstance(seq, Geometric) and seq.c == 0:
        return EventuallyPeriodic((), (zero_character(seq.group),))
    if isinstance(seq, LinearRecurrence):
        found = _detect_cycle(seq.step, seq.initial)
        if found is None:
            return None
        states, k = found
        return EventuallyPeriodic(tuple(s[0] for s in states[:k]), tuple(s[0] for s in states[k:]))
    if isinstance(seq, (ClaimLift, Divide)):
        a = as_periodic(seq.inner)
        if a is None:
            return None
        proxy = seq
        return a.map(lambda chi: _apply_transform(proxy, chi))
    return None


def _apply_transform(seq, chi):
    if isinstance(seq, ClaimLift):
        from .construct import claim_lift

        return claim_lift(chi, seq.m)
    return circle(signed_rep(chi) / seq.d)


def to_explicit(seq: CharSequence) -> ExplicitPeriodic | None:
    pres = as_periodic(seq)
    if pres is None:
        return None
    pres = pres.minimal()
    return ExplicitPeriodic(seq.group, pres.prefix, pres.cycle)


@lru_cache(maxsize=4096)
def residue_presentation(seq: CharSequence, q: int) -> EventuallyPeriodic:
    """``v_n mod q`` for an integer sequence on T, as an eventually periodic sequence."""
    if not isinstance(seq.group, CircleT):
        raise DescriptorMismatch("residues are defined for characters of T")
    if q < 1:
        raise PreconditionError("modulus must be positive")
    if hasattr(seq, "residues"):
        return seq.residues(q)
    if isinstance(seq, ExplicitPeriodic):
        return seq.presentation().map(lambda v: v % q)
    if isinstance(seq, Interleave):
        return residue_presentation(seq.u, q).interleave(residue_presentation(seq.v, q))
    if isinstance(seq, Tail):
        return residue_presentation(seq.inner, q).tail(seq.m)
    raise Undecidable(f"no residue rule for {seq.expr()}")


# ---------------------------------------------------------------------------
# support analysis


class Gamma0Kind(enum.Enum):
    EMPTY = "empty"
    INFINITE = "infinite"
    FINITE_NONEMPTY = "finite-nonempty"


UNDECIDABLE = "undecidable"


@dataclass(frozen=True)
class SupportAnalysis:
    """Characters appearing infinitely often, and the kind of the remainder.

    ``gamma_inf`` is a frozenset or the ``UNDECIDABLE`` marker;
    ``gamma0`` holds the finitely-often characters when that set is finite.
    """

    gamma_inf: object
    gamma0_kind: Gamma0Kind | None
    gamma0: frozenset | None = None
    reason: str = ""

    @property
    def decided(self) -> bool:
        return self.gamma_inf != UNDECIDABLE

    @property
    def eventually_null(self) -> bool:
        return (
            self.decided
            and self.gamma0_kind != Gamma0Kind.INFINITE
            and all(_is_zero_any(c) for c in self.gamma_inf)
        )


def _is_zero_any(chi) -> bool:
    if isinstance(chi, tuple):
        return all(_is_zero_any(c) for c in chi)
    if isinstance(chi, PAdic):
        return chi.value == 0
    if isinstance(chi, CircleInterval):
        return False
    return chi == 0


def _finite_kind(gamma0) -> Gamma0Kind:
    return Gamma0Kind.FINITE_NONEMPTY if gamma0 else Gamma0Kind.EMPTY


def _from_presentation(pres: EventuallyPeriodic, reason) -> SupportAnalysis:
    g0 = pres.finitely_often()
    return SupportAnalysis(pres.infinitely_often(), _finite_kind(g0), g0, reason)


def _injective(reason) -> SupportAnalysis:
    return SupportAnalysis(frozenset(), Gamma0Kind.INFINITE, None, reason)


def _undecidable(reason) -> SupportAnalysis:
    return SupportAnalysis(UNDECIDABLE, None, None, reason)


@lru_cache(maxsize=4096)
def support_partition(seq: CharSequence) -> SupportAnalysis:
    """Split the support into characters seen infinitely often and the rest."""
    if isinstance(seq, ExplicitPeriodic):
        return _from_presentation(seq.presentation(), "read off prefix and cycle")
    if isinstance(seq, Factorial):
        return _injective("n! is strictly increasing for n >= 1")
    if isinstance(seq, ZEnumeration):
        return _injective("one-to-one enumeration")
    if isinstance(seq, Harmonic):
        return _injective("1/n is strictly decreasing")
    if isinstance(seq, Geometric):
        if seq.c == 0:
            return _from_presentation(EventuallyPeriodic((), (zero_character(seq.group),)), "c = 0")
        return _injective(f"|c| q^n strictly monotone (q = {seq.q} >= 2)")
    if isinstance(seq, LinearRecurrence):
        return _recurrence_support(seq)
    if isinstance(seq, Interleave):
        a, b = support_partition(seq.u), support_partition(seq.v)
        if not (a.decided and b.decided):
            return _undecidable("a child has undecidable support")
        inf = a.gamma_inf | b.gamma_inf
        if Gamma0Kind.INFINITE in (a.gamma0_kind, b.gamma0_kind):
            return SupportAnalysis(inf, Gamma0Kind.INFINITE, None, "a child has infinitely many rare characters")
        g0 = (a.gamma0 | b.gamma0) - inf
        return SupportAnalysis(inf, _finite_kind(g0), g0, "union of child supports")
    if isinstance(seq, Tail):
        a = support_partition(seq.inner)
        if not a.decided or a.gamma0_kind != Gamma0Kind.FINITE_NONEMPTY:
            return SupportAnalysis(a.gamma_inf, a.gamma0_kind, a.gamma0, a.reason)
        pres = as_periodic(seq)
        if pres is None:
            return _undecidable("tail of a sequence with finitely many rare characters")
        return _from_presentation(pres, "tail of an eventually periodic sequence")
    if isinstance(seq, (ClaimLift, Divide)):
        a = support_partition(seq.inner)
        if not a.decided:
            return a
        f = lambda chi: _apply_transform(seq, chi)  # noqa: E731 -- injective on characters
        g0 = frozenset(map(f, a.gamma0)) if a.gamma0 is not None else None
        return SupportAnalysis(frozenset(map(f, a.gamma_inf)), a.gamma0_kind, g0, "image under an injective map")
    if isinstance(seq, Pair):
        pres = as_periodic(seq)
        if pres is not None:
            return _from_presentation(pres, "both components eventually periodic")
        a, b = support_partition(seq.left), support_partition(seq.right)
        for side in (a, b):
            if side.decided and not side.gamma_inf and side.gamma0_kind == Gamma0Kind.INFINITE:
                return _injective("one component is finitely-many-to-one")
        return _undecidable("pair of sequences without a joint rule")
    return _undecidable(f"no support rule for {type(seq).__name__}")


def _recurrence_support(seq: LinearRecurrence) -> SupportAnalysis:
    pres = as_periodic(seq)
    if pres is not None:
        return _from_presentation(pres, "integer state vector repeats")
    cert = divergence_certificate(seq)
    if cert is not None:
        return _injective(cert)
    return _undecidable("recurrence neither periodic nor certified divergent")


def divergence_certificate(seq: LinearRecurrence) -> str | None:
    """A proof that |v_n| is eventually strictly increasing, when one is found.

    Three sufficient tests are tried on the integer data:

    * nonnegative coefficients with c_1 >= 1 and sum >= 2, plus a window of r
      consecutive terms of one strict sign;
    * a dominant first coefficient |c_1| >= 2 + sum_{i>=2} |c_i|, plus a window
      whose last term strictly dominates the others in absolute value;
    * characteristic polynomial (x - 1)^r with a nonzero top difference
      (a nonconstant polynomial sequence).
    """
    c = seq.coefficients
    r = len(c)
    terms = seq.terms(0, SEARCH_LIMIT // 10 + r)
    if c[0] >= 1 and all(ci >= 0 for ci in c) and sum(c) >= 2:
        for n in range(r - 1, len(terms)):
            window = terms[n - r + 1 : n + 1]
            if all(t > 0 for t in window) or all(t < 0 for t in window):
                return f"positive recurrence: window of one strict sign ending at n={n}"
    rest = sum(abs(ci) for ci in c[1:])
    if abs(c[0]) >= 2 + rest:
        for n in range(r - 1, len(terms)):
            window = terms[n - r + 1 : n + 1]
            if window[-1] != 0 and all(abs(window[-1]) > abs(t) for t in window[:-1]):
                return f"dominant coefficient: |v_n| strictly dominates its window at n={n}"
    from math import comb

    binom = tuple((-1) ** (i + 1) * comb(r, i) for i in range(1, r + 1))
    if c == binom:
        diffs = list(terms[: r])
        for k in range(r - 1, 0, -1):
            # k-th difference of a polynomial of degree < r
            top = sum((-1) ** (k - i) * comb(k, i) * diffs[i] for i in range(k + 1))
            if top != 0:
                return f"polynomial sequence of degree {k}"
    return None


def normalize_dag(seq: CharSequence) -> CharSequence:
    """Drop characters that occur only finitely often when there are finitely many of them."""
    a = support_partition(seq)
    if not a.decided:
        raise Undecidable(f"cannot normalize {seq.expr()}: {a.reason}")
    if a.gamma0_kind != Gamma0Kind.FINITE_NONEMPTY:
        return seq
    pres = as_periodic(seq)
    if pres is None:
        raise Undecidable(f"cannot drop the finite part of {seq.expr()}")
    keep = a.gamma_inf
    prefix = tuple(chi for chi in pres.prefix if chi in keep)
    return ExplicitPeriodic(seq.group, prefix, pres.cycle)


# ---------------------------------------------------------------------------
# null splits for sequences on Z and R


@lru_cache(maxsize=4096)
def null_split(seq: CharSequence) -> NullSplit | None:
    """Decompose characters of Z or R into an eventually periodic part plus a null part."""
    G = seq.group
    if not isinstance(G, (IntegersZ, RealsR)):
        return None
    if isinstance(seq, ExplicitPeriodic):
        if any(isinstance(c, CircleInterval) for c in seq.prefix + seq.cycle):
            return None
        zeros = EventuallyPeriodic((), (0,))
        return NullSplit(seq.presentation(), ZeroBound(), zeros)
    if isinstance(seq, Geometric) and isinstance(G, IntegersZ):
        sgn = (seq.c > 0) - (seq.c < 0)
        return NullSplit(EventuallyPeriodic((), (Fraction(0),)), GeometricBound(Fraction(abs(seq.c)), seq.q),
                         EventuallyPeriodic((), (sgn,)))
    if isinstance(seq, Harmonic):
        return NullSplit(EventuallyPeriodic((), (Fraction(0),)), HarmonicBound(Fraction(1)),
                         EventuallyPeriodic((0,), (1,)))
    if isinstance(seq, Tail):
        s = null_split(seq.inner)
        if s is None:
            return None
        return NullSplit(s.periodic.tail(seq.m), ShiftedBound(s.bound, seq.m),
                         s.sign.tail(seq.m) if s.sign is not None else None)
    if isinstance(seq, Interleave):
        a, b = null_split(seq.u), null_split(seq.v)
        if a is None or b is None:
            return None
        sign = a.sign.interleave(b.sign) if a.sign is not None and b.sign is not None else None
        return NullSplit(a.periodic.interleave(b.periodic), InterleavedBound(a.bound, b.bound), sign)
    if isinstance(seq, ClaimLift):
        return _claim_lift_split(seq)
    if isinstance(seq, Divide):
        return _divide_split(seq)
    return None


def _claim_lift_split(seq: ClaimLift) -> NullSplit | None:
    s = null_split(seq.inner)
    if s is None or s.sign is None:
        return None
    if not all(p == 0 for p in s.periodic.prefix + s.periodic.cycle):
        return None
    if s.bound.first_below(Fraction(1, seq.m**2)) != 0:
        return None
    m = seq.m
    # a_n = N_n with |N_n| <= 1/m^2; b_n = N_n/m + 1/m when N_n >= 0, N_n/m - 1/m otherwise
    periodic = s.sign.map(lambda sg: circle(Fraction(-1 if sg < 0 else 1, m)))
    return NullSplit(periodic, ScaledBound(s.bound, Fraction(1, m)), s.sign)


def _divide_split(seq: Divide) -> NullSplit | None:
    s = null_split(seq.inner)
    if s is None or s.sign is None:
        return None
    d = seq.d
    half = Fraction(1, 2)
    reps = s.periodic.map(signed_rep)
    margins = [half - abs(r) for r in reps.cycle if abs(r) != half]
    margin = min(margins) if margins else half
    if margin <= 0:
        return None
    n1 = s.bound.first_below(margin / 2)
    # terms before n1 are computed exactly and folded into the periodic part
    pre_len = max(n1, reps.preperiod, s.sign.preperiod)
    period = lcm(reps.period, s.sign.period)
    exact = []
    for n in range(pre_len):
        a = seq.inner.nth(n)
        if isinstance(a, CircleInterval):
            return None
        exact.append(circle(signed_rep(a) / d))

    def periodic_at(n):
        r, sg = reps.at(n), s.sign.at(n)
        if r == half and sg > 0:
            r = -half
        return circle(r / d)

    periodic = EventuallyPeriodic(
        tuple(exact), tuple(periodic_at(n) for n in range(pre_len, pre_len + period))
    )
    sign = EventuallyPeriodic((0,) * pre_len, tuple(s.sign.at(n) for n in range(pre_len, pre_len + period)))
    return NullSplit(periodic, ScaledBound(PrefixBound(s.bound, pre_len), Fraction(1, d)), sign)
