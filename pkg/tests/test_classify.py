import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from charsub.classify import (
    ExtendedExponent,
    admits_minap_fg,
    autochar_verdict,
    descriptor_is_finite,
    descriptor_is_trivial,
    eo_descriptor,
    exp_descriptor,
    is_connected_descriptor,
    k_char_impossible_finite,
    multiply_descriptor,
    not_t_characterizable,
)
from charsub import sequences as S
from charsub.expr import parse_group
from charsub.groups import CIRCLE, COUNTABLE, Factor, FiniteAbelian, SymbolicCompact


def test_extended_order_puts_zero_on_top():
    assert ExtendedExponent(5) < ExtendedExponent(0)
    assert ExtendedExponent(2) < ExtendedExponent(6)
    assert not ExtendedExponent(0) < ExtendedExponent(0)
    assert sorted([ExtendedExponent(0), ExtendedExponent(3), ExtendedExponent(1)]) == \
        [ExtendedExponent(1), ExtendedExponent(3), ExtendedExponent(0)]


@pytest.mark.parametrize("text,exp_,eo", [
    ("Z(3) x Z(2)^N", 6, 2), ("Z(4)", 4, 1), ("T x Z(2)", 0, 0), ("Z(2)^N", 2, 2), ("T^N", 0, 0),
    ("Z(2)+Z(6)", 6, 1),
])
def test_exp_and_eo(text, exp_, eo):
    G = parse_group(text)
    assert exp_descriptor(G).value == exp_
    assert eo_descriptor(G).value == eo


def test_multiply_descriptor():
    G = parse_group("Z(3) x Z(2)^N")
    assert str(multiply_descriptor(2, G)) == "Z(3)"
    assert str(multiply_descriptor(3, G)) == "Z(2)^N"
    assert descriptor_is_trivial(multiply_descriptor(6, G))


def test_t_characterization_criterion():
    crit = not_t_characterizable(parse_group("Z(3) x Z(2)^N"))
    assert crit.holds and crit.witness == 2
    assert descriptor_is_finite(crit.witness_group) and not descriptor_is_trivial(crit.witness_group)
    assert not not_t_characterizable(parse_group("T^N")).holds
    assert not not_t_characterizable(parse_group("Z(2)^N")).holds


def _descriptors():
    base = st.one_of(st.just(CIRCLE), st.sampled_from([2, 3, 4, 6, 8, 9, 12]))
    mult = st.one_of(st.just(COUNTABLE), st.integers(1, 3))
    return st.lists(st.builds(Factor, base, mult), min_size=1, max_size=4).map(lambda fs: SymbolicCompact(tuple(fs)))


@settings(max_examples=200, deadline=None)
@given(_descriptors())
def test_eo_never_exceeds_exp(G):
    eo, ex = eo_descriptor(G), exp_descriptor(G)
    assert eo <= ex
    crit = not_t_characterizable(G)
    if crit.holds:
        mG = multiply_descriptor(crit.witness, G)
        assert descriptor_is_finite(mG) and not descriptor_is_trivial(mG)
    if is_connected_descriptor(G):
        assert not crit.holds


@settings(max_examples=200, deadline=None)
@given(_descriptors(), st.integers(1, 72))
def test_eo_is_least_multiplier_making_the_group_finite(G, m):
    # brute-force oracle over m = 1..72
    eo = eo_descriptor(G)
    finite = descriptor_is_finite(multiply_descriptor(m, G))
    if eo.unbounded:
        assert not finite
    else:
        assert finite == (m % eo.value == 0)


def test_autochar_verdicts():
    for text in ["R", "Z", "Q_2", "Q_3", "Q_5"]:
        verdict = autochar_verdict(parse_group(text))
        assert verdict.autocharacterized
        assert verdict.check.status == "confirmed"
    assert autochar_verdict(parse_group("R")).witness.expr() == "harmonic"
    for text in ["Z(6)", "T", "Z(3) x Z(2)^N", "prod(T, Z(2))"]:
        assert not autochar_verdict(parse_group(text)).autocharacterized


def test_autochar_on_products_with_a_noncompact_factor():
    verdict = autochar_verdict(parse_group("prod(Z(2), R)"))
    assert verdict.autocharacterized
    assert verdict.check.status == "confirmed"


def test_pigeonhole_fact():
    assert k_char_impossible_finite(FiniteAbelian((2, 2))).dual_order == 4
    G = FiniteAbelian((4,))
    rng = random.Random(0)
    for _ in range(10):
        seq = S.ExplicitPeriodic(G, (), tuple((rng.randrange(4),) for _ in range(rng.randint(1, 3))))
        assert k_char_impossible_finite(G, seq).gamma_inf == frozenset(seq.cycle)


def test_minap_for_finitely_generated_groups():
    assert admits_minap_fg(parse_group("Z")).admits
    assert not admits_minap_fg(parse_group("Z(5)")).admits
    assert admits_minap_fg(parse_group("prod(Z, Z(2))")).admits
    trivial = admits_minap_fg(parse_group("Z(1)"))
    assert not trivial.admits and trivial.flagged
