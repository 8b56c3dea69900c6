"""Decidable classification facts about the supported groups.

Exponent arithmetic works on symbolic compact descriptors.  The convention
that 0 stands for "unbounded" lives in :class:`ExtendedExponent` only.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce, total_ordering
from math import gcd, lcm

from .errors import DescriptorMismatch, PreconditionError
from .groups import (
    CIRCLE,
    CircleT,
    Factor,
    FiniteAbelian,
    IntegersZ,
    PAdicQ,
    Product,
    RealsR,
    SymbolicCompact,
    is_compact,
    is_finite,
    moduli,
    order,
)
from . import sequences as S


@total_ordering
@dataclass(frozen=True)
class ExtendedExponent:
    """A nonnegative integer where 0 means unbounded and sits above every n >= 1."""

    value: int

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("exponents are nonnegative")

    @property
    def unbounded(self) -> bool:
        return self.value == 0

    def _key(self):
        return (1, 0) if self.value == 0 else (0, self.value)

    def __lt__(self, other):
        return self._key() < other._key()

    def __str__(self):
        return "inf" if self.value == 0 else str(self.value)


def as_symbolic(G) -> SymbolicCompact:
    """Read a compact descriptor as a list of factors."""
    if isinstance(G, SymbolicCompact):
        return G
    if isinstance(G, FiniteAbelian):
        return SymbolicCompact(tuple(Factor(d) for d in G.factors))
    if isinstance(G, CircleT):
        return SymbolicCompact((Factor(CIRCLE),))
    if isinstance(G, Product) and is_compact(G):
        return SymbolicCompact(as_symbolic(G.left).factors + as_symbolic(G.right).factors)
    raise DescriptorMismatch(f"{G} is not a compact descriptor")


def exp_descriptor(G) -> ExtendedExponent:
    """Least n with nG = 0; 0 when some factor is a circle."""
    factors = as_symbolic(G).factors
    if any(f.base == CIRCLE for f in factors):
        return ExtendedExponent(0)
    return ExtendedExponent(reduce(lcm, (f.base for f in factors), 1))


def eo_descriptor(G) -> ExtendedExponent:
    """Least n with nG finite; 0 when none exists."""
    factors = as_symbolic(G).factors
    if any(f.base == CIRCLE for f in factors):
        return ExtendedExponent(0)
    return ExtendedExponent(reduce(lcm, (f.base for f in factors if f.infinite), 1))


def multiply_descriptor(m: int, G) -> SymbolicCompact:
    """The subgroup mG, factor by factor: m Z(d) = Z(d / gcd(m, d)) and m T = T."""
    if m < 1:
        raise PreconditionError("m must be positive")
    out = []
    for f in as_symbolic(G).factors:
        if f.base == CIRCLE:
            out.append(f)
            continue
        d = f.base // gcd(m, f.base)
        if d > 1:
            out.append(Factor(d, f.multiplicity))
    return SymbolicCompact(tuple(out))


def descriptor_is_finite(G) -> bool:
    return all(f.base != CIRCLE and not f.infinite for f in as_symbolic(G).factors)


def descriptor_is_trivial(G) -> bool:
    return not as_symbolic(G).factors


@dataclass(frozen=True)
class TCharCriterion:
    holds: bool
    eo: ExtendedExponent
    exp: ExtendedExponent
    witness: int | None
    witness_group: SymbolicCompact | None
    reason: str


def not_t_characterizable(G) -> TCharCriterion:
    """Test ``eo(G) < exp(G)`` for a quotient X/H; when it holds, m = eo(G) has mG finite and non-trivial."""
    eo, ex = eo_descriptor(G), exp_descriptor(G)
    if not eo < ex:
        return TCharCriterion(False, eo, ex, None, None, f"eo = {eo} is not below exp = {ex}")
    m = eo.value
    mG = multiply_descriptor(m, G)
    if not descriptor_is_finite(mG) or descriptor_is_trivial(mG):
        raise AssertionError(f"witness {m} fails: {m}G = {mG}")
    return TCharCriterion(True, eo, ex, m, mG, f"{m}G = {mG} is finite and non-trivial")


# ---------------------------------------------------------------------------
# autocharacterization


@dataclass(frozen=True)
class AutocharVerdict:
    autocharacterized: bool
    reason: str
    witness: S.CharSequence | None = None
    check: object = None  # a WitnessSummary from the spot checks

    def to_dict(self):
        out = {"autocharacterized": self.autocharacterized, "reason": self.reason}
        if self.witness is not None:
            out["witness"] = self.witness.expr()
        if self.check is not None:
            out["check"] = self.check.to_dict()
        return out


def autochar_witness(G) -> S.CharSequence | None:
    """A non-trivial sequence with s_v(G) = G for the non-compact groups of the tower."""
    if isinstance(G, IntegersZ):
        return S.Geometric(1, 2, G)
    if isinstance(G, RealsR):
        return S.Harmonic(G)
    if isinstance(G, PAdicQ):
        return S.Geometric(1, G.p, G)
    if isinstance(G, Product):
        left = autochar_witness(G.left)
        if left is not None:
            return S.Pair(left, S.zero_sequence(G.right))
        right = autochar_witness(G.right)
        if right is not None:
            return S.Pair(S.zero_sequence(G.left), right)
    return None


def autochar_verdict(G, seed=0, samples=25) -> AutocharVerdict:
    """Compact groups are never autocharacterized; the others come with a checked witness."""
    from .membership import is_autochar_witness

    if isinstance(G, SymbolicCompact) or is_compact(G):
        return AutocharVerdict(False, "compact: a sequence with s_v = X must be eventually null")
    witness = autochar_witness(G)
    if witness is None:
        raise DescriptorMismatch(f"no witness rule for {G}")
    check = is_autochar_witness(G, witness, seed=seed, samples=samples)
    if check.status != "confirmed":
        raise AssertionError(f"witness {witness.expr()} failed its spot check: {check.reason}")
    return AutocharVerdict(True, "not compact", witness, check)


# ---------------------------------------------------------------------------
# finite-group facts


@dataclass(frozen=True)
class PigeonholeFact:
    dual_order: int
    statement: str
    gamma_inf: frozenset | None = None


def k_char_impossible_finite(G, seq: S.CharSequence | None = None) -> PigeonholeFact:
    """A finite dual has no finitely-many-to-one sequence: some character recurs."""
    if not is_finite(G):
        raise DescriptorMismatch(f"{G} is not finite")
    n = order(G)
    statement = f"among any {n + 1} terms some character of the {n}-element dual repeats"
    if seq is None:
        return PigeonholeFact(n, statement)
    analysis = S.support_partition(seq)
    if not analysis.decided or not analysis.gamma_inf:
        raise AssertionError("a sequence on a finite group must have a recurring character")
    return PigeonholeFact(n, statement, analysis.gamma_inf)


@dataclass(frozen=True)
class MinAPAnswer:
    admits: bool
    rank: int
    torsion: tuple
    flagged: str = ""


def fg_signature(G) -> tuple[int, tuple]:
    """(rank, torsion moduli) of a finitely generated discrete descriptor."""
    if isinstance(G, IntegersZ):
        return 1, ()
    if isinstance(G, FiniteAbelian):
        return 0, G.factors
    if isinstance(G, Product):
        r1, t1 = fg_signature(G.left)
        r2, t2 = fg_signature(G.right)
        return r1 + r2, t1 + t2
    raise DescriptorMismatch(f"{G} is not finitely generated discrete")


def admits_minap_fg(G=None, rank: int | None = None, torsion=()) -> MinAPAnswer:
    """Z^r x F admits a MinAP topology iff no m makes mG finite and non-trivial."""
    if G is not None:
        rank, torsion = fg_signature(G)
    if rank is None or rank < 0:
        raise PreconditionError("rank must be >= 0")
    torsion = tuple(torsion)
    if rank > 0:
        return MinAPAnswer(True, rank, torsion)
    if all(d == 1 for d in torsion):
        return MinAPAnswer(False, rank, torsion, "trivial group: no m gives a non-trivial mG; reported as not admitting")
    return MinAPAnswer(False, rank, torsion)


def is_connected_descriptor(G) -> bool:
    return all(f.base == CIRCLE for f in as_symbolic(G).factors)


def finite_descriptor_moduli(G) -> tuple:
    return moduli(G)
