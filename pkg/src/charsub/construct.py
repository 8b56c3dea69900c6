"""Constructions of characterizing sequences.

Subgroups ``dZ`` of Z are handled in coordinates: a character of ``dZ`` is
stored as its value at the generator ``d`` (a point of T), exactly like a
character of Z.  Extending a character of ``dZ`` to ``eZ`` (with e | d) means
choosing a value ``b`` at ``e`` with ``(d/e) b`` equal to the old value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from sympy import isprime

from .circle import CircleInterval, circle, norm, signed_rep
from .errors import DescriptorMismatch, PreconditionError, Undecidable
from .groups import IntegersZ, Product, is_finite
from . import sequences as S


def claim_lift(a, m: int) -> Fraction:
    """The point b with ``m b = a`` and ``|k b| > 1/m^2`` for 1 <= k < m.

    Needs ``|a| <= 1/m^2`` (both conclusions survive equality).  For a in
    [0, 1/m^2] the answer is ``a/m + 1/m``; otherwise it is minus the lift of
    ``-a``.  At a = 0 the first branch is used.
    """
    if isinstance(a, CircleInterval):
        raise PreconditionError("claim_lift needs an exact point")
    if not isinstance(m, int) or m < 2:
        raise PreconditionError("m must be an integer >= 2")
    a = circle(a)
    bound = Fraction(1, m * m)
    if norm(a) > bound:
        raise PreconditionError(f"|{a}| = {norm(a)} exceeds 1/{m * m}")
    r = signed_rep(a)
    b = circle(r / m + Fraction(1, m)) if r >= 0 else circle(-(-r / m + Fraction(1, m)))
    assert circle(m * b) == a, "m b != a"
    assert all(norm(k * b) > bound for k in range(1, m)), "some |k b| <= 1/m^2"
    return b


# ---------------------------------------------------------------------------
# extensions


def extend_zero_on_summand(u: S.CharSequence, product: Product) -> S.Pair:
    """Characters of H x Z that restrict to u_n on H and vanish on Z."""
    if not isinstance(product, Product):
        raise DescriptorMismatch(f"{product} is not a product")
    if u.group != product.left:
        raise DescriptorMismatch(f"sequence lives on {u.group}, not on the factor {product.left}")
    return S.Pair(u, S.zero_sequence(product.right))


@dataclass(frozen=True)
class PrimeExtension:
    sequence: S.CharSequence
    branch: str  # "zero" or "divide"
    reason: str


def extend_prime_index(u: S.CharSequence, p: int, ambient=IntegersZ()) -> PrimeExtension:
    """Extend characters of pZ (in coordinates) to Z, keeping s = everything.

    With a_n = u_n(p), the extension sends 1 to ``b_n = signed_rep(a_n)/p``,
    so ``p b_n = a_n``.  When a_n = 0 infinitely often this is the branch that
    sends the new generator to 0 on those indices.
    """
    if is_finite(ambient):
        raise PreconditionError(
            "a finite group has no non-trivial sequence with s = H, so there is nothing to extend"
        )
    if not isinstance(ambient, IntegersZ):
        raise DescriptorMismatch("prime-index extension is implemented for subgroups pZ of Z")
    if not isprime(p):
        raise PreconditionError(f"index {p} is not prime")
    if not isinstance(u.group, IntegersZ):
        raise DescriptorMismatch("u must be a sequence on pZ written in coordinates")
    support = S.support_partition(u)
    zero = Fraction(0)
    if support.decided and zero in support.gamma_inf:
        branch, reason = "zero", "a_n = 0 infinitely often; those terms send the generator to 0"
    else:
        branch, reason = "divide", "b_n = signed_rep(a_n)/p satisfies p b_n = a_n"
    return PrimeExtension(S.Divide(u, p), branch, reason)


# ---------------------------------------------------------------------------
# K-characterizing finite-index subgroups of Z


@dataclass(frozen=True)
class CosetPresentation:
    """H = mZ inside Z with the chain X_i = H + <x_1, ..., x_i> = d_i Z."""

    ambient: object
    m: int
    representatives: tuple
    chain: tuple  # d_0 = m, d_1, ..., d_n = 1

    def __post_init__(self):
        chain = self.chain
        if chain[0] != self.m or chain[-1] != 1:
            raise PreconditionError(f"chain {chain} must run from {self.m} down to 1")
        for prev, nxt in zip(chain, chain[1:]):
            if nxt >= prev or prev % nxt:
                raise PreconditionError(f"chain {chain} is not strictly increasing as subgroups")
        if tuple(self.representatives) != tuple(chain[1:]):
            raise PreconditionError("representatives must generate the chain")

    @classmethod
    def for_integers(cls, m: int, chain=None) -> CosetPresentation:
        chain = tuple(chain) if chain is not None else ((m, 1) if m > 1 else (1,))
        return cls(IntegersZ(), m, chain[1:], chain)

    @property
    def indices(self) -> tuple:
        return tuple(a // b for a, b in zip(self.chain, self.chain[1:]))


def prime_chain(m: int) -> tuple:
    """m, m/p_1, m/(p_1 p_2), ..., 1 dividing out prime factors from the smallest up."""
    from sympy import factorint

    chain = [m]
    for p, e in sorted(factorint(m).items()):
        for _ in range(e):
            chain.append(chain[-1] // p)
    return tuple(chain)


def default_witness(r: int) -> S.CharSequence:
    """u_n(j) = j / 2^(n+t) on a subgroup of Z, with t least such that 2^t > r^2."""
    t = 0
    while 2**t <= r * r:
        t += 1
    return S.tail(S.Geometric(1, 2, IntegersZ()), t)


def _prepare_witness(u, r, horizon):
    """Drop a prefix of u so that |u_n(r x)| < 1/r^2 for every remaining n."""
    if not isinstance(u.group, IntegersZ):
        raise DescriptorMismatch("the witness must be a sequence on a subgroup of Z in coordinates")
    split = S.null_split(u)
    if split is None or not all(p == 0 for p in split.periodic.prefix + split.periodic.cycle):
        raise Undecidable(f"cannot certify that {u.expr()} characterizes its whole group")
    n0 = split.bound.first_below(Fraction(1, r * r + 1))
    if n0 > horizon:
        raise PreconditionError(f"|a_n| < 1/{r * r} only from n = {n0}, beyond the horizon {horizon}")
    analysis = S.support_partition(u)
    if not (analysis.decided and not analysis.gamma_inf and analysis.gamma0_kind == S.Gamma0Kind.INFINITE):
        raise PreconditionError(f"{u.expr()} is not certified one-to-one")
    if any(t == 0 for t in u.terms(n0, n0 + 50)):
        raise PreconditionError("the witness has zero terms")
    return S.tail(u, n0)


@dataclass(frozen=True)
class KCharacterization:
    sequence: S.CharSequence
    presentation: CosetPresentation
    steps: tuple


def k_characterize_open_finite_index(m: int, u: S.CharSequence | None = None, chain=None,
                                     horizon: int = 1000) -> KCharacterization:
    """A finitely-many-to-one sequence v on Z with s_v(Z) = mZ.

    ``u`` is a sequence on mZ (in coordinates) with s_u(mZ) = mZ; by default
    u_n(mj) = j/2^(n+t).  Along the chain ``d_0 = m > d_1 > ... > 1`` each
    step applies the lifting claim with the index r = d_{i-1}/d_i; from the
    second step on, the previous sequence is extended by division and
    interleaved with the new lift.
    """
    if m < 1:
        raise PreconditionError("m must be positive")
    pres = CosetPresentation.for_integers(m, chain)
    if m == 1:
        seq = u if u is not None else default_witness(1)
        return KCharacterization(seq, pres, ("m = 1: H is the whole group, v = u",))
    steps = []
    current = None
    for i, r in enumerate(pres.indices):
        if i == 0:
            witness = _prepare_witness(u if u is not None else default_witness(r), r, horizon)
            current = S.ClaimLift(witness, r)
            steps.append(f"step 1: index {r}, v = lift({witness.expr()}, {r})")
        else:
            witness = _prepare_witness(default_witness(r), r, horizon)
            current = S.Interleave(S.Divide(current, r), S.ClaimLift(witness, r))
            steps.append(f"step {i + 1}: index {r}, interleave the extension of the previous sequence "
                         f"with lift({witness.expr()}, {r})")
    return KCharacterization(current, pres, tuple(steps))


def verify_k_characterization(result: KCharacterization, bound: int = 1000) -> list:
    """Integers k with |k| <= bound where the verdict disagrees with ``m | k``."""
    from .membership import member

    m = result.presentation.m
    bad = []
    for k in range(-bound, bound + 1):
        v = member(IntegersZ(), result.sequence, k)
        if v.proven_in != (k % m == 0) or v.undecided:
            bad.append(k)
    return bad


# ---------------------------------------------------------------------------
# quotients and the circle


def quotient_lift(u: S.CharSequence, qmap) -> S.ExplicitPeriodic:
    """v_n = u_n o pi for the projection ``qmap`` of a finite group onto X/F."""
    if u.group != qmap.target:
        raise DescriptorMismatch(f"sequence lives on {u.group}, not on the quotient {qmap.target}")
    explicit = S.to_explicit(u)
    if explicit is None:
        raise Undecidable(f"{u.expr()} has no periodic presentation")
    return S.ExplicitPeriodic(
        qmap.source,
        tuple(qmap.pullback(c) for c in explicit.prefix),
        tuple(qmap.pullback(c) for c in explicit.cycle),
    )


def dense_enum_zero_characterizer() -> S.ZEnumeration:
    """The enumeration 1, -1, 2, -2, ... of the nonzero characters of T."""
    return S.ZEnumeration()
