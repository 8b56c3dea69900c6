from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from charsub import sequences as S
from charsub.errors import DescriptorMismatch, ParseError, PreconditionError
from charsub.expr import format_sequence, parse_element, parse_group, parse_sequence
from charsub.groups import CircleT, FiniteAbelian, IntegersZ, RealsR

T = CircleT()


def _fib(n):
    a, b = 1, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def test_fibonacci_terms():
    assert S.fibonacci().terms(0, 10) == [_fib(n) for n in range(10)]


def test_factorial_terms():
    assert S.Factorial().terms(0, 8) == [factorial(n) for n in range(8)]
    assert S.Factorial().nth(10) == factorial(10)


def test_geometric_on_each_group():
    assert S.Geometric(3, 2, T).nth(4) == 48
    assert S.Geometric(1, 2, IntegersZ()).nth(3) == Fraction(1, 8)


def test_zenumeration_order():
    assert S.ZEnumeration().terms(0, 6) == [1, -1, 2, -2, 3, -3]


def test_negative_index_rejected():
    with pytest.raises((ValueError, PreconditionError)):
        S.fibonacci().nth(-1)


def test_interleave_and_tail():
    u = S.ExplicitPeriodic(T, (), (1,))
    v = S.ExplicitPeriodic(T, (), (2,))
    w = S.interleave(u, v)
    assert w.terms(0, 4) == [1, 2, 1, 2]
    assert S.tail(S.ZEnumeration(), 2).terms(0, 2) == [2, -2]
    assert S.tail(S.tail(S.ZEnumeration(), 1), 1).expr() == S.tail(S.ZEnumeration(), 2).expr()


def test_deinterleave_inverts_interleave():
    u, v = S.Factorial(), S.fibonacci()
    a, b = S.deinterleave(S.interleave(u, v))
    assert a.terms(0, 6) == u.terms(0, 6)
    assert b.terms(0, 6) == v.terms(0, 6)


def _pisano_oracle(q, length):
    # plain iteration, no cycle detection
    return [_fib(n) % q for n in range(length)]


@pytest.mark.parametrize("q", [2, 3, 5, 7, 10, 12])
def test_residues_of_fibonacci(q):
    pres = S.residue_presentation(S.fibonacci(), q)
    direct = _pisano_oracle(q, 200)
    assert [pres.at(n) for n in range(200)] == direct


def test_pisano_period_mod_2_is_three():
    pres = S.residue_presentation(S.fibonacci(), 2)
    assert pres.period == 3


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=1, max_size=3), st.integers(2, 15), st.data())
def test_recurrence_residues_match_iteration(coeffs, q, data):
    initial = data.draw(st.lists(st.integers(-5, 5), min_size=len(coeffs), max_size=len(coeffs)))
    seq = S.LinearRecurrence(tuple(coeffs), tuple(initial))
    pres = seq.residues(q)
    direct = [t % q for t in seq.terms(0, 150)]
    assert [pres.at(n) for n in range(150)] == direct


@pytest.mark.parametrize("q", [1, 6, 7, 30])
def test_factorial_residues_are_eventually_zero(q):
    pres = S.Factorial().residues(q)
    assert pres.cycle == (0,)
    assert [pres.at(n) for n in range(40)] == [factorial(n) % q for n in range(40)]


def test_support_of_explicit_sequence():
    G = FiniteAbelian((4,))
    seq = S.ExplicitPeriodic(G, ((1,),), ((2,), (3,)))
    a = S.support_partition(seq)
    assert a.gamma_inf == frozenset({(2,), (3,)})
    assert a.gamma0_kind == S.Gamma0Kind.FINITE_NONEMPTY
    assert a.gamma0 == frozenset({(1,)})


def test_support_of_one_to_one_families():
    for seq in [S.ZEnumeration(), S.Factorial(), S.fibonacci()]:
        a = S.support_partition(seq)
        assert a.decided
        assert a.gamma_inf == frozenset()
        assert a.gamma0_kind == S.Gamma0Kind.INFINITE


def test_eventually_null_detection():
    G = FiniteAbelian((3,))
    seq = S.ExplicitPeriodic(G, ((1,), (2,)), ((0,),))
    assert S.support_partition(seq).eventually_null
    assert S.normalize_dag(seq).terms(0, 3) == [(0,)] * 3


def test_null_split_of_geometric_on_integers():
    split = S.null_split(S.Geometric(1, 2, IntegersZ()))
    assert split is not None
    assert all(p == 0 for p in split.periodic.prefix + split.periodic.cycle)
    # the bound dominates |1/2^n| and tends to zero
    for n in range(30):
        assert split.bound.bound(n) >= Fraction(1, 2**n)
    assert split.bound.first_below(Fraction(1, 1000)) <= 10


def test_zero_sequence_and_constant():
    assert S.zero_sequence(IntegersZ()).nth(5) == 0
    assert S.constant(T, 5).terms(0, 3) == [5, 5, 5]


def test_pair_requires_matching_groups():
    seq = S.Pair(S.Geometric(1, 2, IntegersZ()), S.zero_sequence(FiniteAbelian((2,))))
    assert seq.nth(1) == (Fraction(1, 2), (0,))


# ---------------------------------------------------------------------------
# the expression grammar

GROUPS = ["T", "Z", "R", "Q_3", "Z(6)", "Z(2)+Z(4)", "Z(1)", "prod(Z, Z(2))",
          "Z(3) x Z(2)^N", "T^N", "T x Z(2)"]


@pytest.mark.parametrize("text", GROUPS)
def test_group_round_trip(text):
    G = parse_group(text)
    assert parse_group(str(G)) == G


SEQUENCES = [
    ("T", "factorial"), ("T", "fib"), ("T", "zenum"), ("T", "geom(3,2)"), ("T", "rec([2, -1],[0, 1])"),
    ("Z", "geom(1,2)"), ("Z", "periodic([];[1/2, 1/3])"), ("R", "harmonic"), ("Q_5", "geom(1,5)"),
    ("Z(4)", "periodic([1];[2])"), ("T", "interleave(factorial,fib)"), ("T", "tail(zenum,3)"),
    ("Z", "lift(tail(geom(1,2),3),2)"), ("Z", "divide(geom(1,4),3)"), ("T", "zero"),
    ("prod(Z, Z(2))", "pair(geom(1,2),zero)"),
]


@pytest.mark.parametrize("group,text", SEQUENCES)
def test_sequence_round_trip(group, text):
    G = parse_group(group)
    seq = parse_sequence(G, text)
    again = parse_sequence(G, format_sequence(seq))
    assert again.terms(0, 12) == seq.terms(0, 12)
    assert format_sequence(again) == format_sequence(seq)


def test_parse_error_reports_column():
    with pytest.raises(ParseError) as info:
        parse_sequence(T, "geom(1,")
    assert "column" in str(info.value)
    with pytest.raises(ParseError) as info:
        parse_group("Z(2)+?")
    assert info.value.pos == 5


def test_sequence_group_mismatch():
    with pytest.raises((DescriptorMismatch, ParseError)):
        parse_sequence(RealsR(), "factorial")


def test_parse_elements():
    assert parse_element(T, "1/6") == Fraction(1, 6)
    assert parse_element(FiniteAbelian((2, 4)), "(1, 3)") == (1, 3)
    assert parse_element(IntegersZ(), "-7") == -7
