import random
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from charsub import sequences as S
from charsub.circle import norm
from charsub.construct import (
    CosetPresentation,
    claim_lift,
    default_witness,
    extend_prime_index,
    extend_zero_on_summand,
    k_characterize_open_finite_index,
    prime_chain,
    quotient_lift,
    verify_k_characterization,
)
from charsub.errors import DescriptorMismatch, PreconditionError
from charsub.groups import (
    CircleT,
    FiniteAbelian,
    IntegersZ,
    Product,
    all_subgroups,
    eval_character,
    iter_characters,
    iter_elements,
    joint_kernel,
    quotient_finite,
)
from charsub.membership import member, s_v_brute, s_v_finite
from charsub.radicals import inj_into_torus, is_trivial, n_characterizer, radical, radical_finite

T = CircleT()
Z = IntegersZ()


# ---------------------------------------------------------------------------
# radicals


def test_circle_radicals_of_standard_families():
    assert radical(T, S.Factorial()).value == 1
    assert radical(T, S.fibonacci()).value == 1
    assert radical(T, S.constant(T, 5)).value == 5
    assert radical(T, S.zero_sequence(T)).value == 0


def test_circle_radical_divides_every_term():
    # oracle: T[g] is killed by every term iff g divides every term
    for seq in [S.Geometric(6, 2, T), S.ExplicitPeriodic(T, (4,), (6, 10)), S.LinearRecurrence((2,), (3,))]:
        g = radical(T, seq).value
        terms = seq.terms(0, 200)
        expected = 0
        for t in terms:
            expected = gcd(expected, t)
        assert g == expected


def test_integer_radicals():
    assert radical(Z, S.ExplicitPeriodic(Z, (), (Fraction(1, 2), Fraction(1, 3)))).value == 6
    assert radical(Z, S.Geometric(1, 2, Z)).value == 0
    assert radical(Z, S.ExplicitPeriodic(Z, (Fraction(1, 3),), (0,))).value == 3


def test_finite_radicals():
    G = FiniteAbelian((2, 4))
    assert radical_finite(G, [(1, 0), (0, 1)]).value.is_trivial()
    H = FiniteAbelian((4,))
    assert radical_finite(H, S.ExplicitPeriodic(H, (), ((2,),))).value.elements() == [(0,), (2,)]


def test_radical_certificates_replay():
    for G, seq in [(T, S.Factorial()), (T, S.constant(T, 5)), (Z, S.Geometric(1, 2, Z)),
                   (FiniteAbelian((6,)), S.ExplicitPeriodic(FiniteAbelian((6,)), (), ((2,),)))]:
        assert radical(G, seq).certificate.replay()


def test_tail_monotonicity_on_the_circle():
    seq = S.ExplicitPeriodic(T, (1, 2, 3), (12, 18))
    values = [radical(T, S.tail(seq, m)).value for m in range(6)]
    for a, b in zip(values, values[1:]):
        assert b % a == 0


@pytest.mark.parametrize("factors", [(2,), (6,), (2, 4), (3, 3)])
def test_radical_is_inside_s_v(factors):
    G = FiniteAbelian(factors)
    rng = random.Random(0)
    els = list(iter_elements(G))
    for _ in range(15):
        seq = S.ExplicitPeriodic(G, tuple(rng.choice(els) for _ in range(2)), (rng.choice(els),))
        assert radical_finite(G, seq).value <= s_v_finite(G, seq)


def test_n_characterizer_realizes_the_radical():
    G = FiniteAbelian((2, 4))
    gamma = [(1, 2), (0, 2)]
    seq = n_characterizer(G, gamma)
    assert radical(G, seq).value == joint_kernel(G, gamma)
    with pytest.raises(PreconditionError):
        n_characterizer(G, [])


@pytest.mark.parametrize("text", ["Z(6)", "Z(2)+Z(4)", "Z", "prod(Z, Z(2))"])
def test_inj_into_torus_has_trivial_kernel(text):
    from charsub.expr import parse_group

    G = parse_group(text)
    assert is_trivial(radical(G, inj_into_torus(G)))


# ---------------------------------------------------------------------------
# the lifting claim


def test_claim_lift_examples():
    assert claim_lift(Fraction(1, 100), 3) == Fraction(1, 300) + Fraction(1, 3)
    b = claim_lift(Fraction(24, 25), 5)
    assert (5 * b - Fraction(24, 25)).denominator == 1
    assert claim_lift(0, 4) == Fraction(1, 4)


@settings(max_examples=300, deadline=None)
@given(st.integers(2, 12), st.fractions(min_value=-1, max_value=1, max_denominator=10**5))
def test_claim_lift_conditions(m, a):
    a = a / (m * m)  # now |a| <= 1/m^2
    b = claim_lift(a, m)
    assert (m * b - a).denominator == 1
    assert all(norm(k * b) > Fraction(1, m * m) for k in range(1, m))


def test_claim_lift_preconditions():
    with pytest.raises(PreconditionError):
        claim_lift(Fraction(1, 3), 2)
    with pytest.raises(PreconditionError):
        claim_lift(Fraction(0), 1)


# ---------------------------------------------------------------------------
# constructions


def test_prime_chain():
    assert prime_chain(12) == (12, 6, 3, 1)
    assert prime_chain(7) == (7, 1)


def test_coset_presentation_validation():
    assert CosetPresentation.for_integers(12, (12, 6, 1)).indices == (2, 6)
    with pytest.raises(PreconditionError):
        CosetPresentation.for_integers(12, (12, 5, 1))


def test_default_witness_prefix():
    # 2^t > r^2 makes the first term already below 1/r^2
    for r in (2, 3, 6):
        assert norm(default_witness(r).nth(0)) < Fraction(1, r * r)


@pytest.mark.parametrize("m", [2, 3, 4, 6])
def test_k_characterization(m):
    result = k_characterize_open_finite_index(m)
    assert verify_k_characterization(result, bound=60) == []
    terms = result.sequence.terms(0, 300)
    assert len(set(terms)) == len(terms)
    assert all(t != 0 for t in terms)


def test_k_characterization_along_other_chains():
    for chain in [(12, 6, 3, 1), (6, 2, 1)]:
        result = k_characterize_open_finite_index(chain[0], chain=chain)
        assert verify_k_characterization(result, bound=40) == []


def test_extend_prime_index():
    u = S.Geometric(1, 2, Z)
    ext = extend_prime_index(u, 3)
    # the extension sends 1 to b_n with 3 b_n = u_n(3)
    for n in range(10):
        assert (3 * ext.sequence.nth(n) - u.nth(n)).denominator == 1
    for k in [0, 1, 5, -8]:
        assert member(Z, ext.sequence, k).proven_in
    with pytest.raises(PreconditionError):
        extend_prime_index(u, 4)
    with pytest.raises(PreconditionError):
        extend_prime_index(u, 3, FiniteAbelian((3,)))


def test_extend_zero_on_summand():
    G = Product(Z, FiniteAbelian((2,)))
    seq = extend_zero_on_summand(S.Geometric(1, 2, Z), G)
    assert seq.nth(3) == (Fraction(1, 8), (0,))
    with pytest.raises(DescriptorMismatch):
        extend_zero_on_summand(S.Geometric(1, 2, Z), Product(FiniteAbelian((2,)), Z))


@pytest.mark.parametrize("factors", [(4,), (2, 2), (2, 4), (6,)])
def test_quotient_lift_commutes_and_pulls_back(factors):
    X = FiniteAbelian(factors)
    for F in all_subgroups(X):
        q = quotient_finite(X, F.generators)
        for chi in iter_characters(q.target):
            u = S.ExplicitPeriodic(q.target, (), (chi,))
            v = quotient_lift(u, q)
            for x in iter_elements(X):
                assert eval_character(X, v.cycle[0], x) == eval_character(q.target, chi, q.project(x))
            assert s_v_brute(X, v) == q.preimage(s_v_brute(q.target, u))


def test_dense_enumeration_characterizes_zero():
    seq = S.ZEnumeration()
    assert member(T, seq, 0).proven_in
    for x in [Fraction(1, 5), Fraction(2, 9)]:
        assert member(T, seq, x).proven_not_in
