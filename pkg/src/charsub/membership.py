"""Membership in the characterized subgroup s_v(X) = {x : v_n(x) -> 0}.

Every decision goes through a *value analysis*: an eventually periodic
sequence ``P_n`` of exact points of T and an explicit null bound ``e(n)`` with
``|v_n(x) - P_n| <= e(n)``.  Then x is in s_v(X) exactly when the cycle of P
is identically zero; otherwise a nonzero cycle value c recurs on an
arithmetic progression of indices, and past the index where ``e(n) <= |c|/2``
every term of that progression stays at distance at least ``|c|/2`` from 0.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .certificates import Certificate, verifier
from .circle import QUARTER, CircleInterval, circle, norm
from .errors import DescriptorMismatch, PreconditionError, Undecidable
from .expr import format_element, parse_element, parse_group, parse_sequence
from .groups import (
    DEFAULT_CAP,
    CircleT,
    FiniteSubgroup,
    IntegersZ,
    PAdicQ,
    Product,
    RealsR,
    _flat_elements,
    canonical_element,
    eval_character,
    flatten,
    is_finite,
    joint_kernel,
    iter_elements,
    moduli,
    pairing_numerator,
    check_cap,
)
from .padic import fractional_part, valuation
from . import sequences as S

DEFAULT_HORIZON = 1000
ESCAPE_THRESHOLD = QUARTER


class Status(enum.Enum):
    PROVEN_IN = "ProvenIn"
    PROVEN_NOT_IN = "ProvenNotIn"
    UNDECIDED = "Undecided"


@dataclass(frozen=True)
class Evidence:
    """Finite-horizon data behind an Undecided verdict.  It proves nothing."""

    horizon: int
    threshold: Fraction
    upper_bounds: tuple = ()  # per index n = 0..horizon, upper bound on |v_n(x)|
    worst_tail_bound: Fraction | None = None
    escapes: int = 0
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "horizon": self.horizon,
            "threshold": str(self.threshold),
            "worst_tail_bound": None if self.worst_tail_bound is None else str(self.worst_tail_bound),
            "escapes": self.escapes,
            "note": self.note,
            "upper_bounds": [str(b) for b in self.upper_bounds],
        }


@dataclass(frozen=True)
class Verdict:
    status: Status
    certificate: Certificate | None = None
    evidence: Evidence | None = field(default=None, compare=False)

    @property
    def proven_in(self) -> bool:
        return self.status is Status.PROVEN_IN

    @property
    def proven_not_in(self) -> bool:
        return self.status is Status.PROVEN_NOT_IN

    @property
    def undecided(self) -> bool:
        return self.status is Status.UNDECIDED

    def to_dict(self) -> dict:
        out = {"status": self.status.value}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_dict()
        if self.evidence is not None:
            out["evidence"] = self.evidence.to_dict()
        return out


# ---------------------------------------------------------------------------
# value analyses


@dataclass(frozen=True)
class ValueAnalysis:
    values: S.EventuallyPeriodic  # exact points of T
    error: S.NullBound
    method: str


def _scaled(bound, factor):
    factor = abs(Fraction(factor))
    return S.ZeroBound() if factor == 0 or isinstance(bound, S.ZeroBound) else S.ScaledBound(bound, factor)


def _padic_leaf(G, seq, x):
    p = G.p
    if isinstance(seq, S.Geometric):
        if seq.c == 0:
            return S.EventuallyPeriodic((), (Fraction(0),))
        # {c q^{n+1} x}_p = {q {c q^n x}_p}_p because q is a p-adic integer
        start = fractional_part(seq.c * x.value, p)
        states, k = S._detect_cycle(lambda t: fractional_part(seq.q * t, p), start)
        return S.EventuallyPeriodic(tuple(states[:k]), tuple(states[k:]))
    pres = S.as_periodic(seq)
    if pres is not None:
        return pres.map(lambda chi: fractional_part(chi.value * x.value, p))
    return None


def value_analysis(G, seq, x) -> ValueAnalysis | None:
    """Exact eventually periodic approximation of ``n -> v_n(x)``, if a rule applies."""
    if isinstance(seq, S.Interleave):
        a, b = value_analysis(G, seq.u, x), value_analysis(G, seq.v, x)
        if a is None or b is None:
            return None
        return ValueAnalysis(a.values.interleave(b.values), S.InterleavedBound(a.error, b.error),
                             f"interleave({a.method}, {b.method})")
    if isinstance(seq, S.Tail) and not isinstance(G, (IntegersZ, RealsR)):
        a = value_analysis(G, seq.inner, x)
        if a is None:
            return None
        return ValueAnalysis(a.values.tail(seq.m), S.ShiftedBound(a.error, seq.m), f"tail({a.method}, {seq.m})")
    if isinstance(G, Product) and isinstance(seq, S.Pair):
        a, b = value_analysis(G.left, seq.left, x[0]), value_analysis(G.right, seq.right, x[1])
        if a is None or b is None:
            return None
        return ValueAnalysis(a.values.zip_with(b.values, lambda s, t: circle(s + t)), S.SumBound(a.error, b.error),
                             f"pair({a.method}, {b.method})")
    if is_finite(G):
        pres = S.as_periodic(seq)
        if pres is None:
            return None
        return ValueAnalysis(pres.map(lambda chi: eval_character(G, chi, x)), S.ZeroBound(), "finite-cycle")
    if isinstance(G, CircleT):
        if isinstance(x, CircleInterval):
            return None
        q = x.denominator
        try:
            residues = S.residue_presentation(seq, q)
        except Undecidable:
            return None
        a = x.numerator
        return ValueAnalysis(residues.map(lambda r: Fraction(r * a % q, q)), S.ZeroBound(), f"residues mod {q}")
    if isinstance(G, (IntegersZ, RealsR)):
        split = S.null_split(seq)
        if split is None:
            return None
        k = Fraction(x)
        return ValueAnalysis(split.periodic.map(lambda p: circle(k * p)), _scaled(split.bound, k),
                             f"split with null part {split.bound.describe()}")
    if isinstance(G, PAdicQ):
        values = _padic_leaf(G, seq, x)
        if values is None:
            return None
        return ValueAnalysis(values, S.ZeroBound(), f"{G.p}-adic fractional parts")
    return None


# ---------------------------------------------------------------------------
# verdicts


def _frac_list(xs):
    return [str(Fraction(v)) for v in xs]


def _decide(G, seq, x, analysis: ValueAnalysis) -> Verdict:
    vals = analysis.values.minimal()
    claims = {"method": analysis.method, "preperiod": vals.preperiod, "cycle": _frac_list(vals.cycle),
              "error": analysis.error.describe()}
    subject = format_element(G, x)
    if all(c == 0 for c in vals.cycle):
        trace = (f"v_n(x) - P_n is bounded by {analysis.error.describe()} -> 0",
                 f"P_n = 0 for n >= {vals.preperiod}")
        return Verdict(Status.PROVEN_IN, Certificate("value-cycle", str(G), seq.expr(), subject, claims, trace))
    j = max(range(vals.period), key=lambda i: (norm(vals.cycle[i]), -i))
    c = vals.cycle[j]
    exact = analysis.error.is_zero()
    half = norm(c) if exact else norm(c) / 2
    start = 0 if exact else analysis.error.first_below(half)
    # first index of the progression n = preperiod + j (mod period) at or after start
    first = vals.preperiod + j
    if first < start:
        first += -(-(start - first) // vals.period) * vals.period
    claims.update({"residue_index": j, "value": str(c), "escape_from": first, "escape_norm": str(half),
                   "outside_T_plus": half > QUARTER})
    trace = (f"P_n = {c} for every n = {first} + {vals.period} t",
             f"|v_n(x)| >= {half} along that progression" + (", outside T_+" if half > QUARTER else ""))
    return Verdict(Status.PROVEN_NOT_IN, Certificate("value-cycle", str(G), seq.expr(), subject, claims, trace))


def member(G, seq, x, horizon=DEFAULT_HORIZON, threshold=ESCAPE_THRESHOLD) -> Verdict:
    """Tri-state membership of ``x`` in s_v(G)."""
    if seq.group != G:
        raise DescriptorMismatch(f"sequence lives on {seq.group}, not {G}")
    x = canonical_element(G, x)
    support = S.support_partition(seq)
    if support.eventually_null:
        cert = Certificate("eventually-null", str(G), seq.expr(), _subject(G, x), {}, (support.reason,))
        return Verdict(Status.PROVEN_IN, cert)
    analysis = value_analysis(G, seq, x)
    if analysis is not None:
        return _decide(G, seq, x, analysis)
    has_interval = _has_interval(G, x)
    if has_interval or not _exact_terms(seq):
        return Verdict(Status.UNDECIDED, None, evidence_trail(G, seq, x, horizon, threshold))
    return Verdict(Status.UNDECIDED, None, Evidence(horizon, Fraction(threshold), note="no rule"))


def _subject(G, x):
    try:
        return format_element(G, x)
    except ValueError:
        return str(x)


def _has_interval(G, x):
    if isinstance(x, CircleInterval):
        return True
    if isinstance(G, Product):
        return _has_interval(G.left, x[0]) or _has_interval(G.right, x[1])
    return False


def _exact_terms(seq):
    terms = seq.terms(0, 8)
    return not any(isinstance(t, CircleInterval) for t in terms)


def evidence_trail(G, seq, x, horizon=DEFAULT_HORIZON, threshold=ESCAPE_THRESHOLD) -> Evidence:
    """Norm bounds of ``v_n(x)`` for n = 0..horizon, with the escape count."""
    threshold = Fraction(threshold)
    uppers, escapes = [], 0
    for n, chi in enumerate(seq.terms(0, horizon + 1)):
        value = eval_character(G, chi, x)
        if isinstance(value, CircleInterval):
            value = value.refine_to(Fraction(1, 2**40)) if value.width > Fraction(1, 2**40) else value
            lo, hi = value.norm_bounds()
        else:
            lo = hi = norm(value)
        uppers.append(hi)
        if lo > threshold:
            escapes += 1
    window = uppers[len(uppers) - max(1, len(uppers) // 10):]
    return Evidence(horizon, threshold, tuple(uppers), max(window), escapes,
                    "finite horizon data; no limit is claimed")


@verifier("value-cycle")
def _replay_value_cycle(cert: Certificate) -> bool:
    G = parse_group(cert.group)
    seq = parse_sequence(G, cert.sequence)
    x = parse_element(G, cert.subject)
    fresh = member(G, seq, x)
    if fresh.certificate is None or fresh.certificate.claims != cert.claims:
        return False
    # independent spot check: direct evaluation against P_n and the error bound
    analysis = value_analysis(G, seq, x)
    pre, cycle = cert.claims["preperiod"], [Fraction(c) for c in cert.claims["cycle"]]
    period = len(cycle)
    stop = pre + 2 * period + 2
    if "escape_from" in cert.claims:
        stop = max(stop, cert.claims["escape_from"] + 2 * period + 1)
    stop = min(stop, 4000)
    for n in range(stop):
        chi = seq.nth(n)
        value = eval_character(G, chi, x)
        if isinstance(value, CircleInterval):
            return False
        expected = cycle[(n - pre) % period] if n >= pre else analysis.values.at(n)
        if norm(value - expected) > analysis.error.bound(n):
            return False
    if "escape_from" in cert.claims:
        half = Fraction(cert.claims["escape_norm"])
        n = cert.claims["escape_from"]
        for _ in range(3):
            if norm(eval_character(G, seq.nth(n), x)) < half:
                return False
            n += period
    return True


@verifier("eventually-null")
def _replay_null(cert: Certificate) -> bool:
    G = parse_group(cert.group)
    seq = parse_sequence(G, cert.sequence)
    return S.support_partition(seq).eventually_null


# ---------------------------------------------------------------------------
# finite groups


def s_v_finite(G, seq, cap=DEFAULT_CAP) -> FiniteSubgroup:
    """s_v(G) on a finite group, computed twice and compared.

    The first computation intersects the kernels of the characters occurring
    infinitely often; the second tests every element's eventual value cycle.
    """
    if not is_finite(G):
        raise DescriptorMismatch(f"{G} is not finite")
    if seq.group != G:
        raise DescriptorMismatch(f"sequence lives on {seq.group}, not {G}")
    check_cap(G, cap)
    normalized = S.normalize_dag(seq)
    gamma_inf = S.support_partition(normalized).gamma_inf
    via_radical = joint_kernel(G, sorted(gamma_inf), cap)
    pres = S.as_periodic(seq)
    if pres is not None:
        mods = moduli(G)
        cycle = sorted({flatten(G, c) for c in pres.cycle})
        brute = [x for x in _flat_elements(mods) if all(pairing_numerator(mods, c, x) == 0 for c in cycle)]
        if frozenset(brute) != via_radical.flat():
            raise AssertionError(f"s_v computations disagree for {seq.expr()} on {G}")
    return via_radical


def s_v_brute(G, seq, cap=DEFAULT_CAP) -> FiniteSubgroup:
    """Brute-force s_v on a finite group: elements whose value cycle is zero."""
    check_cap(G, cap)
    mods = moduli(G)
    pres = S.as_periodic(seq)
    if pres is None:
        raise Undecidable(f"{seq.expr()} has no periodic presentation")
    members = []
    for flat in _flat_elements(mods):
        if all(pairing_numerator(mods, flatten(G, c), flat) == 0 for c in pres.cycle):
            members.append(flat)
    return FiniteSubgroup(G, members)


# ---------------------------------------------------------------------------
# autocharacterization witnesses


@dataclass(frozen=True)
class WitnessSummary:
    status: str  # "confirmed", "refuted" or "undecided"
    reason: str
    certificates: tuple = ()
    sampled: tuple = ()

    def to_dict(self):
        return {"status": self.status, "reason": self.reason,
                "certificates": [c.to_dict() for c in self.certificates], "sampled": list(self.sampled)}


def _sample_elements(G, rng, count):
    if isinstance(G, IntegersZ):
        return [0, 1, -1] + [rng.randint(-10**6, 10**6) for _ in range(count)]
    if isinstance(G, RealsR):
        return [Fraction(0), Fraction(1)] + [Fraction(rng.randint(-10**4, 10**4), rng.randint(1, 10**3))
                                             for _ in range(count)]
    if isinstance(G, PAdicQ):
        p = G.p
        return [Fraction(0), Fraction(1, p)] + [Fraction(rng.randint(-10**4, 10**4), p ** rng.randint(0, 6)
                                                         * rng.randint(1, 50)) for _ in range(count)]
    if isinstance(G, CircleT):
        return [Fraction(rng.randint(0, q - 1), q) for q in (rng.randint(1, 60) for _ in range(count))]
    if isinstance(G, Product):
        left, right = _sample_elements(G.left, rng, count), _sample_elements(G.right, rng, count)
        return list(zip(left, right))
    if is_finite(G):
        elements = list(iter_elements(G))
        return [rng.choice(elements) for _ in range(count)]
    raise DescriptorMismatch(f"cannot sample {G}")


def _uniform_certificate(G, seq):
    """A statement covering every element at once, when the family has one."""
    if isinstance(G, RealsR) and isinstance(seq, S.Harmonic):
        return Certificate("uniform", str(G), seq.expr(), None, {"bound": "|x|/n"},
                           ("|x/n| <= |x|/n -> 0 for every rational x",))
    if isinstance(G, IntegersZ) and isinstance(seq, S.Geometric) and seq.c != 0:
        return Certificate("uniform", str(G), seq.expr(), None, {"bound": f"|{seq.c} k|/{seq.q}^n"},
                           (f"|k {seq.c}/{seq.q}^n| <= |{seq.c} k|/{seq.q}^n -> 0 for every integer k",))
    if isinstance(G, PAdicQ) and isinstance(seq, S.Geometric) and seq.c != 0 and valuation(seq.q, G.p) > 0:
        return Certificate("uniform", str(G), seq.expr(), None, {"valuation_growth": valuation(seq.q, G.p)},
                           (f"v_p(c q^n x) = v_p(c x) + {valuation(seq.q, G.p)} n -> infinity, "
                            "so the fractional part is eventually 0",))
    if isinstance(G, Product) and isinstance(seq, S.Pair):
        sides = []
        for H, part in ((G.left, seq.left), (G.right, seq.right)):
            support = S.support_partition(part)
            if support.decided and support.eventually_null:
                sides.append(f"the {H} coordinate is eventually null")
                continue
            inner = _uniform_certificate(H, part)
            if inner is None:
                return None
            sides.append(inner.trace[0])
        return Certificate("uniform", str(G), seq.expr(), None, {"sides": sides},
                           ("v_n(x, y) = u_n(x) + w_n(y) with both summands null: " + "; ".join(sides),))
    return None


@verifier("uniform")
def _replay_uniform(cert: Certificate) -> bool:
    G = parse_group(cert.group)
    seq = parse_sequence(G, cert.sequence)
    again = _uniform_certificate(G, seq)
    return again is not None and again.claims == cert.claims


def is_autochar_witness(G, seq, seed=0, samples=25) -> WitnessSummary:
    """Does ``seq`` (not eventually null) characterize the whole group?"""
    import random

    support = S.support_partition(seq)
    if support.decided and support.eventually_null:
        raise PreconditionError("the sequence is eventually null")
    if is_finite(G):
        if not support.decided:
            raise Undecidable("support undecided on a finite group")
        sv = s_v_finite(G, seq)
        nonzero = sorted(format_element(G, c) for c in support.gamma_inf if not S._is_zero_any(c))
        assert not sv.is_whole(), "a finite group cannot be characterized by a non-null sequence"
        return WitnessSummary("refuted", f"compact group: nonzero characters {nonzero} recur, "
                                         f"so s_v has order {sv.order} < {sv.order * sv.index}")
    rng = random.Random(seed)
    points = _sample_elements(G, rng, samples)
    certs, verdicts = [], []
    for x in points:
        v = member(G, seq, x)
        verdicts.append(v.status.value)
        if v.proven_not_in:
            return WitnessSummary("refuted", f"{_subject(G, x)} is not in s_v", (v.certificate,),
                                  tuple(_subject(G, p) for p in points))
        if v.certificate is not None:
            certs.append(v.certificate)
    uniform = _uniform_certificate(G, seq)
    if uniform is not None and all(s == Status.PROVEN_IN.value for s in verdicts):
        return WitnessSummary("confirmed", uniform.trace[0], (uniform, *certs[:3]),
                              tuple(_subject(G, p) for p in points))
    return WitnessSummary("undecided", "every sampled element is in s_v; no uniform certificate",
                          tuple(certs[:3]), tuple(_subject(G, p) for p in points))
