"""Radicals: the joint kernel of all characters occurring in a sequence.

Results are canonical per group family:

* finite groups: a :class:`~charsub.groups.FiniteSubgroup`;
* T: the torsion subgroup ``T[g] = {t : g t = 0}`` given by ``g >= 0``
  (``g = 1`` is ``{0}``, ``g = 0`` is all of T);
* Z: the subgroup ``dZ`` given by ``d >= 0`` (``d = 0`` is ``{0}``);
* products whose sequences act on one factor at a time: a pair of results.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import factorial, gcd, lcm

from .certificates import Certificate, verifier
from .circle import CircleInterval
from .errors import DescriptorMismatch, PreconditionError, Undecidable
from .expr import format_character, parse_group, parse_sequence
from .groups import (
    DEFAULT_CAP,
    CircleT,
    FiniteAbelian,
    FiniteSubgroup,
    IntegersZ,
    Product,
    canonical_character,
    is_finite,
    joint_kernel,
    zero_character,
)
from . import sequences as S

REPLAY_WINDOW = 1000


@dataclass(frozen=True)
class RadicalResult:
    group: object
    kind: str  # "finite", "circle", "integers" or "product"
    value: object
    certificate: Certificate

    def contains(self, x) -> bool:
        if self.kind == "finite":
            return x in self.value
        if self.kind == "circle":
            if isinstance(x, CircleInterval):
                raise Undecidable("membership of an irrational point in a torsion subgroup")
            return (self.value * Fraction(x)) % 1 == 0
        if self.kind == "integers":
            return x == 0 if self.value == 0 else x % self.value == 0
        left, right = self.value
        return left.contains(x[0]) and right.contains(x[1])

    def describe(self) -> str:
        if self.kind == "finite":
            return f"{{{', '.join(format_character(self.group, e) for e in self.value.elements())}}}"
        if self.kind == "circle":
            return "T" if self.value == 0 else ("{0}" if self.value == 1 else f"T[{self.value}]")
        if self.kind == "integers":
            return "{0}" if self.value == 0 else ("Z" if self.value == 1 else f"{self.value}Z")
        return f"{self.value[0].describe()} x {self.value[1].describe()}"

    def __le__(self, other: RadicalResult) -> bool:
        """Inclusion of subgroups presented in the same family."""
        if self.kind != other.kind:
            raise DescriptorMismatch("radicals of different families")
        if self.kind == "finite":
            return self.value <= other.value
        if self.kind == "circle":
            return other.value == 0 or (self.value != 0 and other.value % self.value == 0)
        if self.kind == "integers":
            return self.value == 0 or (other.value != 0 and self.value % other.value == 0)
        return self.value[0] <= other.value[0] and self.value[1] <= other.value[1]


def _seq_text(seq):
    return seq.expr() if isinstance(seq, S.CharSequence) else None


# ---------------------------------------------------------------------------
# finite groups


def radical_finite(G, seq_or_gamma, cap=DEFAULT_CAP) -> RadicalResult:
    """Joint kernel of a finite set of characters, or of the support of a sequence."""
    if not is_finite(G):
        raise DescriptorMismatch(f"{G} is not finite")
    if isinstance(seq_or_gamma, S.CharSequence):
        if seq_or_gamma.group != G:
            raise DescriptorMismatch(f"sequence lives on {seq_or_gamma.group}, not {G}")
        analysis = S.support_partition(seq_or_gamma)
        if not analysis.decided:
            raise Undecidable(f"support of {seq_or_gamma.expr()} is undecided: {analysis.reason}")
        gamma = analysis.gamma_inf | (analysis.gamma0 or frozenset())
    else:
        gamma = frozenset(canonical_character(G, chi) for chi in seq_or_gamma)
    kernel = joint_kernel(G, sorted(gamma), cap)
    cert = Certificate(
        "radical-finite", str(G), _seq_text(seq_or_gamma), None,
        {"gamma": sorted(format_character(G, c) for c in gamma),
         "kernel": [format_character(G, e) for e in kernel.elements()]},
        (f"intersection of the kernels of {len(gamma)} characters",),
    )
    return RadicalResult(G, "finite", kernel, cert)


@verifier("radical-finite")
def _replay_finite(cert: Certificate) -> bool:
    from .expr import parse_character

    G = parse_group(cert.group)
    gamma = [parse_character(G, t) for t in cert.claims["gamma"]]
    if cert.sequence is not None:
        res = radical_finite(G, parse_sequence(G, cert.sequence))
    else:
        res = radical_finite(G, gamma)
    claimed = {parse_character(G, t) for t in cert.claims["kernel"]}
    brute = {x for x in claimed if all(_pair_zero(G, c, x) for c in gamma)}
    return res.certificate.claims == cert.claims and brute == claimed and set(res.value.elements()) == claimed


def _pair_zero(G, c, x):
    from .groups import eval_character

    return eval_character(G, c, x) == 0


# ---------------------------------------------------------------------------
# the circle


def _circle_gcd(seq) -> tuple[int, list[int], str]:
    """gcd of all terms of an integer sequence, with seed indices whose terms have that gcd.

    Every family rule returns indices whose terms generate the same ideal as
    the whole sequence, together with the reason it divides every term.
    """
    seq = S.push_tail(seq)
    if isinstance(seq, S.Interleave):
        gu, iu, ru = _circle_gcd(seq.u)
        gv, iv, rv = _circle_gcd(seq.v)
        return gcd(gu, gv), [2 * i for i in iu] + [2 * i + 1 for i in iv], f"interleave: ({ru}) and ({rv})"
    inner, m = (seq.inner, seq.m) if isinstance(seq, S.Tail) else (seq, 0)
    if isinstance(inner, S.LinearRecurrence):
        window = list(range(inner.order))
        g = reduce(gcd, inner.terms(m, m + inner.order), 0)
        return g, window, f"recurrence: g divides the {inner.order} initial terms, hence every later term"
    if isinstance(inner, S.Factorial):
        return factorial(m), [0], f"factorial: {m}! divides n! for every n >= {m}"
    if isinstance(inner, S.Geometric):
        return abs(inner.c) * inner.q**m, [0], "geometric: every term is a multiple of the first"
    if isinstance(inner, S.ZEnumeration):
        return 1, [0, 2], "enumeration: two consecutive integers occur"
    explicit = S.to_explicit(seq)
    if explicit is not None:
        terms = explicit.prefix + explicit.cycle
        return reduce(gcd, terms, 0), list(range(len(terms))), "eventually periodic: gcd of prefix and one cycle"
    raise Undecidable(f"no gcd rule for {seq.expr()}")


def radical_circle(seq) -> RadicalResult:
    """``T[g]`` where g is the gcd of all terms of an integer sequence on T."""
    if not isinstance(seq.group, CircleT):
        raise DescriptorMismatch("radical_circle needs a sequence of characters of T")
    g, seeds, reason = _circle_gcd(seq)
    cert = Certificate("radical-circle", "T", seq.expr(), None, {"g": g, "seeds": seeds}, (reason,))
    return RadicalResult(CircleT(), "circle", g, cert)


@verifier("radical-circle")
def _replay_circle(cert: Certificate) -> bool:
    seq = parse_sequence(CircleT(), cert.sequence)
    res = radical_circle(seq)
    g = cert.claims["g"]
    if res.value != g or res.certificate.claims != cert.claims:
        return False
    if reduce(gcd, (seq.nth(i) for i in cert.claims["seeds"]), 0) != g:
        return False
    return all(t % g == 0 for t in seq.terms(0, REPLAY_WINDOW)) if g else all(t == 0 for t in seq.terms(0, 50))


# ---------------------------------------------------------------------------
# the integers


def _integers_lcm(seq) -> tuple[int, str]:
    """lcm of the denominators, or 0 when they are unbounded."""
    seq = S.push_tail(seq)
    if isinstance(seq, S.Interleave):
        du, ru = _integers_lcm(seq.u)
        dv, rv = _integers_lcm(seq.v)
        d = 0 if 0 in (du, dv) else lcm(du, dv)
        return d, f"interleave: ({ru}) and ({rv})"
    inner = seq.inner if isinstance(seq, S.Tail) else seq
    if isinstance(inner, S.Geometric) and inner.c != 0:
        return 0, f"denominators of {inner.c}/{inner.q}^n are unbounded"
    if isinstance(inner, (S.ClaimLift, S.Divide)):
        d, reason = _integers_lcm(S.tail(inner.inner, seq.m) if isinstance(seq, S.Tail) else inner.inner)
        if d == 0:
            k = inner.m if isinstance(inner, S.ClaimLift) else inner.d
            return 0, f"{k} * b_n = a_n, so ker b_n lies in ker a_n; {reason}"
    explicit = S.to_explicit(seq)
    if explicit is not None:
        terms = explicit.prefix + explicit.cycle
        if any(isinstance(t, CircleInterval) for t in terms):
            raise PreconditionError("irrational characters of Z have no certified kernel here")
        return reduce(lcm, (t.denominator for t in terms), 1), "eventually periodic: lcm of denominators"
    raise Undecidable(f"no denominator rule for {seq.expr()}")


def radical_integers(seq) -> RadicalResult:
    """``dZ`` with d the lcm of the denominators of all characters (0 if unbounded)."""
    if not isinstance(seq.group, IntegersZ):
        raise DescriptorMismatch("radical_integers needs a sequence of characters of Z")
    d, reason = _integers_lcm(seq)
    cert = Certificate("radical-integers", "Z", seq.expr(), None, {"d": d}, (reason,))
    return RadicalResult(IntegersZ(), "integers", d, cert)


@verifier("radical-integers")
def _replay_integers(cert: Certificate) -> bool:
    seq = parse_sequence(IntegersZ(), cert.sequence)
    res = radical_integers(seq)
    d = cert.claims["d"]
    if res.value != d:
        return False
    terms = seq.terms(0, 60)
    if d:
        return all((d * t) % 1 == 0 for t in terms)
    # unbounded: the denominators in the window keep growing past any fixed bound
    return max(t.denominator for t in terms) > 2**40


# ---------------------------------------------------------------------------
# dispatch, products, witnesses


def _split_product(seq):
    """For sequences acting on one factor at a time, the two one-sided sequences."""
    if isinstance(seq, S.Pair):
        if _all_zero(seq.right):
            return [seq.left], []
        if _all_zero(seq.left):
            return [], [seq.right]
        return None
    if isinstance(seq, S.Interleave):
        a, b = _split_product(seq.u), _split_product(seq.v)
        if a is None or b is None:
            return None
        return a[0] + b[0], a[1] + b[1]
    return None


def _all_zero(seq):
    pres = S.as_periodic(seq)
    return pres is not None and all(S._is_zero_any(c) for c in pres.prefix + pres.cycle)


def _join(G, seqs):
    if not seqs:
        return S.zero_sequence(G)
    out = seqs[0]
    for s in seqs[1:]:
        out = S.Interleave(out, s)
    return out


def radical(G, seq, cap=DEFAULT_CAP) -> RadicalResult:
    """Radical of ``seq`` on any supported group."""
    if seq.group != G:
        raise DescriptorMismatch(f"sequence lives on {seq.group}, not {G}")
    if is_finite(G):
        return radical_finite(G, seq, cap)
    if isinstance(G, CircleT):
        return radical_circle(seq)
    if isinstance(G, IntegersZ):
        return radical_integers(seq)
    if isinstance(G, Product):
        parts = _split_product(seq)
        if parts is None:
            raise Undecidable("radical of a product sequence mixing both factors")
        left = radical(G.left, _join(G.left, parts[0]), cap)
        right = radical(G.right, _join(G.right, parts[1]), cap)
        cert = Certificate("radical-product", str(G), seq.expr(), None,
                           {"left": left.certificate.to_dict(), "right": right.certificate.to_dict()},
                           ("every character vanishes on one factor",))
        return RadicalResult(G, "product", (left, right), cert)
    raise Undecidable(f"no radical rule on {G}")


@verifier("radical-product")
def _replay_product(cert: Certificate) -> bool:
    return all(Certificate.from_dict(cert.claims[k]).replay() for k in ("left", "right"))


def n_characterizer(G, gamma) -> S.ExplicitPeriodic:
    """A periodic sequence on ``G`` whose cycle runs through the characters of ``gamma``."""
    gamma = list(gamma)
    if not gamma:
        raise PreconditionError("the empty set of characters has no sequence witness")
    cycle = []
    for chi in gamma:
        chi = canonical_character(G, chi)
        if chi not in cycle:
            cycle.append(chi)
    return S.ExplicitPeriodic(G, (), tuple(cycle))


def inj_into_torus(G) -> S.CharSequence:
    """Characters with trivial joint kernel, as a sequence.

    Finite groups use the coordinate characters, Z uses 1/2**n, and a product
    interleaves the two lists extended by zero on the other factor.
    """
    if isinstance(G, FiniteAbelian):
        if not G.factors:
            return S.zero_sequence(G)
        basis = [tuple(1 if i == j else 0 for j in range(len(G.factors))) for i in range(len(G.factors))]
        return S.ExplicitPeriodic(G, (), tuple(basis))
    if isinstance(G, IntegersZ):
        return S.Geometric(1, 2, G)
    if isinstance(G, Product):
        left, right = inj_into_torus(G.left), inj_into_torus(G.right)
        return S.Interleave(
            S.Pair(left, S.zero_sequence(G.right)),
            S.Pair(S.zero_sequence(G.left), right),
        )
    raise DescriptorMismatch(f"no injection into a power of T for {G}")


def is_trivial(result: RadicalResult) -> bool:
    if result.kind == "finite":
        return result.value.is_trivial()
    if result.kind == "circle":
        return result.value == 1
    if result.kind == "integers":
        return result.value == 0
    return is_trivial(result.value[0]) and is_trivial(result.value[1])
