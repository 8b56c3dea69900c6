import random
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from charsub import sequences as S
from charsub.certificates import Certificate
from charsub.circle import QUARTER, CircleInterval, golden_ratio
from charsub.errors import PreconditionError
from charsub.groups import (
    CircleT,
    FiniteAbelian,
    IntegersZ,
    PAdicQ,
    Product,
    RealsR,
    add_elements,
    eval_character,
    flatten,
    iter_elements,
    neg_element,
)
from charsub.membership import Status, evidence_trail, is_autochar_witness, member, s_v_brute, s_v_finite
from charsub.padic import PAdic, fractional_part

T = CircleT()


def _eventually_zero_mod(terms_mod_q, window):
    """Oracle for rational points of T: the last ``window`` residues are all zero."""
    return all(t == 0 for t in terms_mod_q[-window:])


@pytest.mark.parametrize("q", [6, 7, 12, 25, 30])
def test_factorial_characterizes_rationals(q):
    # [DERIVED] q divides n! for n >= q
    for a in range(q):
        v = member(T, S.Factorial(), Fraction(a, q))
        assert v.proven_in
        assert v.certificate.replay()


def test_fibonacci_at_one_half():
    v = member(T, S.fibonacci(), Fraction(1, 2))
    assert v.proven_not_in
    # F_{n+1}/2 mod 1 cycles through 1/2, 1/2, 0
    assert v.certificate.claims["cycle"] == ["1/2", "1/2", "0"]
    assert v.certificate.replay()


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8, 11])
def test_fibonacci_rational_points_against_oracle(q):
    # oracle: iterate F_n mod q well past the Pisano period (at most 6q)
    residues = [x % q for x in S.fibonacci().terms(0, 20 * q)]
    for a in range(q):
        inside = _eventually_zero_mod([(a * r) % q for r in residues], 6 * q)
        assert member(T, S.fibonacci(), Fraction(a, q)).proven_in == inside


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=1, max_size=2), st.integers(2, 12), st.data())
def test_recurrence_verdicts_against_iteration(coeffs, q, data):
    initial = data.draw(st.lists(st.integers(-5, 5), min_size=len(coeffs), max_size=len(coeffs)))
    a = data.draw(st.integers(0, q - 1))
    seq = S.LinearRecurrence(tuple(coeffs), tuple(initial))
    length = q ** len(coeffs) * 3 + 20
    residues = [(a * t) % q for t in seq.terms(0, length)]
    inside = _eventually_zero_mod(residues, q ** len(coeffs) + 1)
    v = member(T, seq, Fraction(a, q))
    assert not v.undecided
    assert v.proven_in == inside
    assert v.certificate.replay()


@pytest.mark.parametrize("x", [Fraction(1, 3), Fraction(1, 2), Fraction(2, 7)])
def test_zenumeration_escapes(x):
    v = member(T, S.ZEnumeration(), x)
    assert v.proven_not_in
    assert Fraction(v.certificate.claims["escape_norm"]) > QUARTER
    assert v.certificate.replay()


def test_zenumeration_at_zero():
    assert member(T, S.ZEnumeration(), 0).proven_in


def test_integers_with_geometric_sequence():
    for k in [0, 1, -5, 10**6]:
        assert member(IntegersZ(), S.Geometric(1, 2, IntegersZ()), k).proven_in


def test_integers_with_periodic_sequence():
    # [DERIVED] k/2 and k/3 both vanish mod 1 iff 6 | k
    seq = S.ExplicitPeriodic(IntegersZ(), (), (Fraction(1, 2), Fraction(1, 3)))
    for k in range(-12, 13):
        v = member(IntegersZ(), seq, k)
        assert v.proven_in == (k % 6 == 0)
        assert not v.undecided


def test_reals_with_harmonic():
    rng = random.Random(1)
    for _ in range(20):
        x = Fraction(rng.randint(-1000, 1000), rng.randint(1, 50))
        assert member(RealsR(), S.Harmonic(), x).proven_in


def test_padic_geometric():
    G = PAdicQ(3)
    v = member(G, S.Geometric(1, 3, G), PAdic(3, Fraction(1, 3)))
    assert v.proven_in


def test_padic_verdict_against_fractional_parts():
    # oracle: {2^n x}_3 for x = 1/3 is (2^n mod 3)/3, never 0
    G = PAdicQ(3)
    x = PAdic(3, Fraction(1, 3))
    assert all(fractional_part(Fraction(2**n, 3), 3) != 0 for n in range(30))
    assert member(G, S.Geometric(1, 2, G), x).proven_not_in


def test_golden_ratio_is_undecided_with_evidence():
    phi = CircleInterval(golden_ratio())
    v = member(T, S.fibonacci(), phi, horizon=30)
    assert v.status is Status.UNDECIDED
    trail = evidence_trail(T, S.fibonacci(), phi, horizon=30)
    assert len(trail.upper_bounds) == 31
    assert trail.upper_bounds[30] < Fraction(1, 10**6)


def test_product_membership():
    G = Product(IntegersZ(), FiniteAbelian((2,)))
    seq = S.Pair(S.Geometric(1, 2, IntegersZ()), S.ExplicitPeriodic(FiniteAbelian((2,)), (), ((1,),)))
    assert member(G, seq, (7, (0,))).proven_in
    assert member(G, seq, (7, (1,))).proven_not_in


def test_certificate_round_trip_through_dict():
    v = member(T, S.fibonacci(), Fraction(1, 2))
    again = Certificate.from_dict(v.certificate.to_dict())
    assert again == v.certificate
    assert again.replay()


def test_tampered_certificate_fails_replay():
    v = member(T, S.fibonacci(), Fraction(1, 2))
    data = v.certificate.to_dict()
    data["claims"] = dict(data["claims"], cycle=["0", "0", "0"])
    assert not Certificate.from_dict(data).replay()


def test_unknown_certificate_kind():
    assert not Certificate("no-such-kind", "T").replay()


FINITE = [FiniteAbelian(f) for f in [(2,), (4,), (6,), (2, 2), (2, 4), (3, 3)]]


def _brute_sv(G, seq):
    # oracle: evaluate the cycle characters directly
    cycle = S.as_periodic(seq).cycle
    return {flatten(G, x) for x in iter_elements(G) if all(eval_character(G, c, x) == 0 for c in cycle)}


@pytest.mark.parametrize("G", FINITE)
def test_s_v_finite_against_brute_force(G):
    rng = random.Random(G.order)
    els = list(iter_elements(G))
    for _ in range(20):
        seq = S.ExplicitPeriodic(G, tuple(rng.choice(els) for _ in range(2)),
                                 tuple(rng.choice(els) for _ in range(rng.randint(1, 3))))
        assert s_v_finite(G, seq).flat() == _brute_sv(G, seq)
        assert s_v_brute(G, seq).flat() == _brute_sv(G, seq)


@pytest.mark.parametrize("G", FINITE)
def test_subgroup_law_on_finite_groups(G):
    rng = random.Random(7)
    els = list(iter_elements(G))
    seq = S.ExplicitPeriodic(G, (), tuple(rng.choice(els) for _ in range(2)))
    inside = [x for x in els if member(G, seq, x).proven_in]
    for x in inside:
        assert member(G, seq, neg_element(G, x)).proven_in
        for y in inside:
            assert member(G, seq, add_elements(G, x, y)).proven_in


def test_example_s_v_on_z4():
    G = FiniteAbelian((4,))
    assert s_v_finite(G, S.ExplicitPeriodic(G, (), ((2,),))).elements() == [(0,), (2,)]


def test_compact_shadow_whole_group_only_for_zero_cycle():
    G = FiniteAbelian((6,))
    for c in iter_elements(G):
        seq = S.ExplicitPeriodic(G, (), (c,))
        assert s_v_finite(G, seq).is_whole() == (c == (0,))


def test_autochar_witness_checks():
    assert is_autochar_witness(RealsR(), S.Harmonic()).status == "confirmed"
    assert is_autochar_witness(PAdicQ(5), S.Geometric(1, 5, PAdicQ(5))).status == "confirmed"
    G = FiniteAbelian((6,))
    assert is_autochar_witness(G, S.ExplicitPeriodic(G, (), ((1,),))).status == "refuted"
    with pytest.raises(PreconditionError):
        is_autochar_witness(G, S.zero_sequence(G))


def test_autochar_witness_refutes_a_bad_sequence_on_integers():
    seq = S.ExplicitPeriodic(IntegersZ(), (), (Fraction(1, 2),))
    assert is_autochar_witness(IntegersZ(), seq, seed=3).status == "refuted"


def test_verdicts_are_deterministic():
    a = member(T, S.fibonacci(), Fraction(3, 7)).to_dict()
    b = member(T, S.fibonacci(), Fraction(3, 7)).to_dict()
    assert a == b


def test_factorial_fibonacci_are_sensible_at_many_points():
    # [DERIVED] 1/6 and 1/7 are in s_v for factorial; F_n mod 7 has a nonzero cycle
    assert member(T, S.Factorial(), Fraction(1, 7)).proven_in
    assert factorial(7) % 7 == 0
    assert member(T, S.fibonacci(), Fraction(1, 7)).proven_not_in
