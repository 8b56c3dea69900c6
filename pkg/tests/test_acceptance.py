"""The ten acceptance criteria.  Each test records one PASS/FAIL line."""

import random
import time
from fractions import Fraction
from math import gcd

from conftest import record

from charsub import sequences as S
from charsub.circle import QUARTER, CircleInterval, golden_ratio
from charsub.classify import autochar_verdict, eo_descriptor, exp_descriptor, multiply_descriptor, not_t_characterizable
from charsub.classify import descriptor_is_finite, descriptor_is_trivial
from charsub.construct import k_characterize_open_finite_index
from charsub.expr import parse_group
from charsub.groups import (
    CircleT,
    IntegersZ,
    PAdicQ,
    RealsR,
    all_finite_abelian,
    eval_character,
    flatten,
    iter_characters,
    iter_elements,
)
from charsub.membership import evidence_trail, is_autochar_witness, member, s_v_brute, s_v_finite
from charsub.radicals import radical, radical_finite
from charsub.verify import run_suite

CORPUS = all_finite_abelian(64)


def _kernel(G, chi):
    return frozenset(flatten(G, x) for x in iter_elements(G) if eval_character(G, chi, x) == 0)


def _corpus_sequences(G, rng, samples=40):
    """Every single-character cycle, then seeded cycles of length 2 and 3 with short prefixes."""
    chars = list(iter_characters(G))
    for c in chars:
        yield S.ExplicitPeriodic(G, (), (c,))
    for _ in range(samples):
        pre = tuple(rng.choice(chars) for _ in range(rng.randint(0, 2)))
        cyc = tuple(rng.choice(chars) for _ in range(rng.randint(2, 3)))
        yield S.ExplicitPeriodic(G, pre, cyc)


def test_criterion_01_claim_lift_suite():
    start = time.perf_counter()
    summary = run_suite("claim-lift", seed=7, sizes={"cases": 500})
    elapsed = time.perf_counter() - start
    passed = summary.ok and summary.passed == 500 and elapsed < 5
    record(1, "claim-lift suite", passed, f"{summary.passed}/500 exact, {elapsed:.2f}s")
    assert passed, summary.to_dict()


def test_criterion_02_interleave_is_intersection():
    start = time.perf_counter()
    summary = run_suite("interleave-intersection", seed=2, sizes={"max_order": 64})
    elapsed = time.perf_counter() - start
    passed = summary.ok and elapsed < 60
    record(2, "interleave = intersection", passed,
           f"{summary.passed} checks on {len(CORPUS)} groups, {elapsed:.1f}s")
    assert passed, summary.to_dict()


def test_criterion_03_radical_bound():
    rng = random.Random(3)
    checked = 0
    failures = []
    for G in CORPUS:
        for seq in _corpus_sequences(G, rng, samples=10):
            rad = radical_finite(G, seq).value
            sv = s_v_brute(G, seq)
            checked += 1
            if not rad <= sv:
                failures.append((str(G), seq.expr()))
    T = CircleT()
    for seq in [S.Factorial(), S.fibonacci(), S.Geometric(1, 2, T), S.Geometric(5, 3, T)]:
        rad = radical(T, seq)
        g = rad.value
        ok = rad.certificate.replay()
        # every point of the torsion subgroup T[g] must be proven in s_v
        ok = ok and all(member(T, seq, Fraction(k, g)).proven_in for k in range(g)) if g else ok
        checked += 1
        if not ok:
            failures.append(("T", seq.expr()))
    passed = not failures
    record(3, "radical bound n_v <= s_v", passed, f"{checked} cases")
    assert passed, failures[:5]


def test_criterion_04_finite_group_collapse():
    rng = random.Random(4)
    checked = 0
    failures = []
    for G in CORPUS:
        for seq in _corpus_sequences(G, rng, samples=10):
            gamma_inf = S.support_partition(seq).gamma_inf
            assert gamma_inf == frozenset(seq.cycle)
            via_radical = radical_finite(G, sorted(gamma_inf)).value
            if s_v_finite(G, seq) != via_radical or s_v_brute(G, seq) != via_radical:
                failures.append((str(G), seq.expr()))
            checked += 1
    passed = not failures
    record(4, "finite collapse s_v = radical of the recurring characters", passed, f"{checked} cases")
    assert passed, failures[:5]


def test_criterion_05_quotient_correspondence():
    start = time.perf_counter()
    summary = run_suite("quotient-lift", seed=5, sizes={"max_order": 32})
    elapsed = time.perf_counter() - start
    passed = summary.ok and elapsed < 60
    record(5, "quotient correspondence", passed, f"{summary.passed} (X, F, u) cases, {elapsed:.1f}s")
    assert passed, summary.to_dict()


def test_criterion_06_k_characterization():
    start = time.perf_counter()
    Z = IntegersZ()
    failures = []
    replayed = 0
    for m in (2, 3, 4, 6, 12):
        seq = k_characterize_open_finite_index(m).sequence
        for k in range(-1000, 1001):
            v = member(Z, seq, k)
            if v.proven_in != (k % m == 0) or v.undecided:
                failures.append((m, k, v.status.value))
            else:
                replayed += 1
                if not v.certificate.replay():
                    failures.append((m, k, "replay"))
    elapsed = time.perf_counter() - start
    passed = not failures and elapsed < 30
    record(6, "K-characterization of mZ", passed, f"5 x 2001 verdicts, {replayed} replayed, {elapsed:.1f}s")
    assert passed, failures[:5]


def test_criterion_07_dense_enumeration():
    start = time.perf_counter()
    T = CircleT()
    seq = S.ZEnumeration()
    failures = []
    count = 0
    for q in range(2, 51):
        for a in range(1, q):
            if gcd(a, q) != 1:
                continue
            v = member(T, seq, Fraction(a, q))
            count += 1
            escape = Fraction(v.certificate.claims["escape_norm"]) if v.certificate else 0
            if not (v.proven_not_in and escape > QUARTER and v.certificate.replay()):
                failures.append(f"{a}/{q}")
    zero = member(T, seq, 0)
    elapsed = time.perf_counter() - start
    passed = not failures and zero.proven_in and elapsed < 10
    record(7, "dense enumeration characterizes {0}", passed, f"{count} points, {elapsed:.1f}s")
    assert passed, failures[:5]


def test_criterion_08_autocharacterization():
    failures = []
    for G in [RealsR(), PAdicQ(2), PAdicQ(3), PAdicQ(5), IntegersZ()]:
        verdict = autochar_verdict(G)
        certs = verdict.check.certificates if verdict.check else ()
        if not (verdict.autocharacterized and verdict.check.status == "confirmed"
                and certs and all(c.replay() for c in certs)):
            failures.append(str(G))
    for G in CORPUS:
        if autochar_verdict(G).autocharacterized:
            failures.append(str(G))
            continue
        nonzero = [c for c in iter_characters(G) if any(c)]
        if nonzero:
            summary = is_autochar_witness(G, S.ExplicitPeriodic(G, (), (nonzero[-1],)))
            if summary.status != "refuted":
                failures.append(str(G))
    passed = not failures
    record(8, "autocharacterization verdicts", passed, f"5 confirmed, {len(CORPUS)} finite refuted")
    assert passed, failures


def test_criterion_09_eo_exp():
    G = parse_group("Z(3) x Z(2)^N")
    crit = not_t_characterizable(G)
    witness_ok = crit.holds and descriptor_is_finite(multiply_descriptor(crit.witness, G)) \
        and not descriptor_is_trivial(multiply_descriptor(crit.witness, G))
    passed = (eo_descriptor(G).value == 2 and exp_descriptor(G).value == 6 and witness_ok
              and not not_t_characterizable(parse_group("T^N")).holds
              and not not_t_characterizable(parse_group("Z(2)^N")).holds)
    record(9, "eo/exp criterion", passed, f"eo = 2 < 6 = exp, witness m = {crit.witness}")
    assert passed


def test_criterion_10_golden_ratio_evidence():
    start = time.perf_counter()
    T = CircleT()
    phi = CircleInterval(golden_ratio())
    v = member(T, S.fibonacci(), phi, horizon=30)
    trail = evidence_trail(T, S.fibonacci(), phi, horizon=30)
    bound_30 = trail.upper_bounds[30]
    # oracle: F_31 phi - F_32 = (-1)^31 / phi^31, so |F_31 phi| = phi^-31 ~ 3.3e-7
    elapsed = time.perf_counter() - start
    passed = v.undecided and bound_30 < Fraction(1, 10**6) and elapsed < 1
    record(10, "golden-ratio evidence", passed, f"bound at n = 30: {float(bound_30):.2e}, {elapsed:.2f}s")
    assert passed
