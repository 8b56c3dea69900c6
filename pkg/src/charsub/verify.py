"""Seeded property suites.

Each suite takes a seed and a dict of sizes and returns a :class:`SuiteSummary`.
The same seed and sizes always give the same summary.  Oracles are
independent of the code under test: brute-force evaluation on finite groups
and exact re-checks of stated inequalities elsewhere.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .circle import circle
from .construct import claim_lift, k_characterize_open_finite_index, quotient_lift
from .errors import CharsubError
from .expr import format_element, format_sequence, parse_group
from .groups import (
    CircleT,
    FiniteAbelian,
    Factor,
    SymbolicCompact,
    CIRCLE,
    COUNTABLE,
    add_elements,
    all_finite_abelian,
    all_subgroups,
    eval_character,
    flatten,
    iter_characters,
    iter_elements,
    neg_element,
    quotient_finite,
    subgroup_embedding,
)
from .membership import member, s_v_brute, s_v_finite
from .radicals import radical, radical_finite
from . import classify
from . import sequences as S

MAX_COUNTEREXAMPLES = 5


@dataclass
class SuiteSummary:
    name: str
    seed: int
    sizes: dict
    passed: int = 0
    failed: int = 0
    counterexamples: list = field(default_factory=list)
    vacuous: bool = False
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def check(self, condition: bool, example) -> None:
        if condition:
            self.passed += 1
        else:
            self.failed += 1
            if len(self.counterexamples) < MAX_COUNTEREXAMPLES:
                self.counterexamples.append(example)

    def to_dict(self) -> dict:
        return {
            "suite": self.name, "seed": self.seed, "sizes": dict(self.sizes), "ok": self.ok,
            "passed": self.passed, "failed": self.failed, "vacuous": self.vacuous,
            "counterexamples": list(self.counterexamples), "notes": list(self.notes),
        }


def _groups(sizes, default_max):
    """The finite corpus: explicit ``groups`` if given, else all groups up to ``max_order``."""
    if "groups" in sizes:
        return [parse_group(g) for g in sizes["groups"]]
    return all_finite_abelian(int(sizes.get("max_order", default_max)))


def _random_periodic(G, rng, max_len=3, prefix=True):
    chars = list(iter_characters(G))
    pre = tuple(rng.choice(chars) for _ in range(rng.randint(0, 2))) if prefix else ()
    cyc = tuple(rng.choice(chars) for _ in range(rng.randint(1, max_len)))
    return S.ExplicitPeriodic(G, pre, cyc)


def _brute_members(G, cycle):
    """Elements killed by every character of the cycle: the independent oracle."""
    return frozenset(flatten(G, x) for x in iter_elements(G)
                     if all(eval_character(G, c, x) == 0 for c in cycle))


# ---------------------------------------------------------------------------


def suite_subgroup_law(seed=0, sizes=None):
    """ProvenIn elements are closed under x + y and -x."""
    sizes = dict(sizes or {})
    out = SuiteSummary("subgroup-law", seed, sizes)
    rng = random.Random(seed)
    per_group = int(sizes.get("cases", 3))
    for G in _groups(sizes, 16):
        for _ in range(per_group):
            seq = _random_periodic(G, rng)
            inside = [x for x in iter_elements(G) if member(G, seq, x).proven_in]
            in_set = {flatten(G, x) for x in inside}
            closed = all(flatten(G, add_elements(G, x, y)) in in_set for x in inside for y in inside)
            closed = closed and all(flatten(G, neg_element(G, x)) in in_set for x in inside)
            out.check(closed, {"group": str(G), "sequence": format_sequence(seq)})
    T = CircleT()
    families = [S.Factorial(), S.fibonacci(), S.Geometric(1, 2, T), S.ZEnumeration()]
    samples = int(sizes.get("circle_samples", 40))
    for seq in families:
        points = [Fraction(rng.randint(0, q - 1), q) for q in (rng.randint(1, 40) for _ in range(samples))]
        inside = [x for x in points if member(T, seq, x).proven_in]
        for x in inside[:8]:
            out.check(member(T, seq, circle(-x)).proven_in, {"sequence": seq.expr(), "x": str(x), "law": "-x"})
            for y in inside[:8]:
                out.check(member(T, seq, circle(x + y)).proven_in,
                          {"sequence": seq.expr(), "x": str(x), "y": str(y), "law": "x+y"})
    return out


def suite_permutation(seed=0, sizes=None):
    """Rotating the cycle of an explicit sequence does not change any verdict."""
    sizes = dict(sizes or {})
    out = SuiteSummary("permutation", seed, sizes)
    rng = random.Random(seed)
    per_group = int(sizes.get("cases", 3))
    for G in _groups(sizes, 16):
        for _ in range(per_group):
            seq = _random_periodic(G, rng)
            k = rng.randint(1, max(1, len(seq.cycle)))
            rotated = S.ExplicitPeriodic(G, seq.prefix, seq.cycle[k:] + seq.cycle[:k])
            same = all(member(G, seq, x).status == member(G, rotated, x).status for x in iter_elements(G))
            out.check(same, {"group": str(G), "sequence": format_sequence(seq), "shift": k})
    T = CircleT()
    for _ in range(int(sizes.get("circle_cases", 30))):
        cyc = tuple(rng.randint(-12, 12) for _ in range(rng.randint(1, 4)))
        seq = S.ExplicitPeriodic(T, (), cyc)
        k = rng.randint(1, len(cyc))
        rotated = S.ExplicitPeriodic(T, (), cyc[k:] + cyc[:k])
        x = Fraction(rng.randint(0, 23), 24)
        out.check(member(T, seq, x).status == member(T, rotated, x).status,
                  {"sequence": format_sequence(seq), "shift": k, "x": str(x)})
    return out


def suite_interleave_intersection(seed=0, sizes=None):
    """s_w = s_u & s_v for w = interleave(u, v) on finite groups.

    Every unordered pair of single-character cycles is checked; on top of
    that ``samples`` seeded pairs with cycles of length 1 to 3 per group.
    """
    sizes = dict(sizes or {})
    out = SuiteSummary("interleave-intersection", seed, sizes)
    rng = random.Random(seed)
    samples = int(sizes.get("samples", 150))
    exhaustive = bool(sizes.get("exhaustive_pairs", True))
    for G in _groups(sizes, 64):
        chars = list(iter_characters(G))
        single = {c: s_v_finite(G, S.ExplicitPeriodic(G, (), (c,))) for c in chars}
        kernels = {c: _brute_members(G, (c,)) for c in chars}
        if exhaustive:
            for i, a in enumerate(chars):
                for b in chars[i:]:
                    u, v = S.ExplicitPeriodic(G, (), (a,)), S.ExplicitPeriodic(G, (), (b,))
                    sw = s_v_finite(G, S.interleave(u, v))
                    ok = sw == single[a] & single[b] and sw.flat() == kernels[a] & kernels[b]
                    out.check(ok, {"group": str(G), "u": format_sequence(u), "v": format_sequence(v)})
        for _ in range(samples):
            u = _random_periodic(G, rng, prefix=False)
            v = _random_periodic(G, rng, prefix=False)
            sw = s_v_finite(G, S.interleave(u, v))
            oracle = frozenset.intersection(*(kernels[c] for c in u.cycle + v.cycle))
            ok = sw == s_v_finite(G, u) & s_v_finite(G, v) and sw.flat() == oracle
            out.check(ok, {"group": str(G), "u": format_sequence(u), "v": format_sequence(v)})
    return out


def suite_restriction(seed=0, sizes=None):
    """s_{v|J}(J) = s_v(G) & J for every subgroup J, with J presented abstractly."""
    sizes = dict(sizes or {})
    out = SuiteSummary("restriction", seed, sizes)
    rng = random.Random(seed)
    per_subgroup = int(sizes.get("cases", 1))
    for G in _groups(sizes, 16):
        for J in all_subgroups(G):
            emb = subgroup_embedding(J)
            for _ in range(per_subgroup):
                seq = _random_periodic(G, rng)
                restricted = S.ExplicitPeriodic(emb.abstract, tuple(emb.restrict(c) for c in seq.prefix),
                                                tuple(emb.restrict(c) for c in seq.cycle))
                inner = s_v_finite(emb.abstract, restricted)
                image = {flatten(G, emb.embed(y)) for y in inner.elements()}
                expected = s_v_finite(G, seq).flat() & J.flat()
                out.check(image == expected, {"group": str(G), "J": [format_element(G, g) for g in J.generators],
                                              "sequence": format_sequence(seq)})
    return out


def suite_radical_bound(seed=0, sizes=None):
    """n_v <= s_v on finite groups and, via certificates, on T."""
    sizes = dict(sizes or {})
    out = SuiteSummary("radical-bound", seed, sizes)
    rng = random.Random(seed)
    per_group = int(sizes.get("cases", 3))
    groups = _groups(sizes, 16)
    nontrivial = 0
    for G in groups:
        for _ in range(per_group):
            seq = _random_periodic(G, rng)
            rad = radical_finite(G, seq)
            sv = s_v_finite(G, seq)
            out.check(rad.value <= sv and rad.certificate.replay(),
                      {"group": str(G), "sequence": format_sequence(seq)})
            nontrivial += G.order > 1 if isinstance(G, FiniteAbelian) else 1
    if sizes.get("circle", "groups" not in sizes):
        T = CircleT()
        families = [S.Factorial(), S.fibonacci(), S.Geometric(1, 2, T), S.Geometric(3, 2, T),
                    S.ExplicitPeriodic(T, (1,), (6, 10))]
        for seq in families:
            rad = radical(T, seq)
            g = rad.value
            torsion = [Fraction(k, g) for k in range(g)] if g else []
            ok = rad.certificate.replay() and all(member(T, seq, x).proven_in for x in torsion)
            out.check(ok, {"sequence": seq.expr(), "g": g})
            nontrivial += 1
    if nontrivial == 0:
        out.vacuous = True
        out.notes.append("every group in the corpus is trivial, so the containment holds vacuously")
    return out


def suite_claim_lift(seed=0, sizes=None):
    """m b = a and |k b| > 1/m^2 for 1 <= k < m, re-checked exactly."""
    sizes = dict(sizes or {})
    out = SuiteSummary("claim-lift", seed, sizes)
    rng = random.Random(seed)
    for _ in range(int(sizes.get("cases", 500))):
        m = rng.randint(2, 12)
        bound = Fraction(1, m * m)
        den = rng.randint(m * m + 1, 10**6)
        num = rng.randint(-(den - 1) // (m * m), (den - 1) // (m * m))
        a = Fraction(num, den)
        assert abs(a) < bound
        b = claim_lift(a, m)
        ok = (m * b - a).denominator == 1 and all(
            min((k * b) % 1, 1 - (k * b) % 1) > bound for k in range(1, m))
        out.check(ok, {"a": str(a), "m": m, "b": str(b)})
    return out


def suite_k_characterize(seed=0, sizes=None):
    """member(k) is ProvenIn exactly when m | k, for the constructed sequence."""
    sizes = dict(sizes or {})
    out = SuiteSummary("k-characterize", seed, sizes)
    bound = int(sizes.get("bound", 1000))
    for m in sizes.get("m", [2, 3, 4, 6, 12]):
        result = k_characterize_open_finite_index(int(m))
        G = result.presentation.ambient
        for k in range(-bound, bound + 1):
            v = member(G, result.sequence, k)
            ok = v.proven_in == (k % m == 0) and not v.undecided and v.certificate is not None
            if ok and v.proven_not_in:
                ok = Fraction(v.certificate.claims["escape_norm"]) > 0
            out.check(ok, {"m": m, "k": k, "verdict": v.status.value})
        terms = result.sequence.terms(0, 1000)
        out.check(len(set(terms)) == len(terms) and all(t != 0 for t in terms),
                  {"m": m, "property": "one-to-one and nonzero on 1000 terms"})
    return out


def suite_quotient_lift(seed=0, sizes=None):
    """s_v(X) = pi^-1(s_u(X/F)) for v = u o pi, with u cycling through a cyclic subgroup of the dual."""
    sizes = dict(sizes or {})
    out = SuiteSummary("quotient-lift", seed, sizes)
    for X in _groups(sizes, 32):
        for F in all_subgroups(X):
            qmap = quotient_finite(X, F.generators)
            Q = qmap.target
            for chi in iter_characters(Q):
                cycle, c = [chi], chi
                while any(c):
                    c = add_elements(Q, c, chi)
                    cycle.append(c)
                u = S.ExplicitPeriodic(Q, (), tuple(cycle))
                v = quotient_lift(u, qmap)
                square = all(eval_character(X, v.cycle[0], x) == eval_character(Q, chi, qmap.project(x))
                             for x in iter_elements(X))
                ok = square and s_v_brute(X, v) == qmap.preimage(s_v_brute(Q, u))
                out.check(ok, {"group": str(X), "F": [format_element(X, g) for g in F.generators],
                               "u": format_sequence(u)})
    return out


def _random_descriptor(rng):
    factors = []
    for _ in range(rng.randint(1, 4)):
        base = CIRCLE if rng.random() < 0.15 else rng.choice([2, 3, 4, 5, 6, 8, 9])
        mult = COUNTABLE if rng.random() < 0.4 else rng.randint(1, 3)
        factors.append(Factor(base, mult))
    return SymbolicCompact(tuple(factors))


def suite_eo_exp(seed=0, sizes=None):
    """eo <= exp, the witness check, and the connected case."""
    sizes = dict(sizes or {})
    out = SuiteSummary("eo-exp", seed, sizes)
    rng = random.Random(seed)
    known = [("Z(3) x Z(2)^N", True), ("T^N", False), ("Z(2)^N", False)]
    for text, expected in known:
        crit = classify.not_t_characterizable(parse_group(text))
        out.check(crit.holds == expected, {"descriptor": text})
    for _ in range(int(sizes.get("cases", 200))):
        G = _random_descriptor(rng)
        eo, ex = classify.eo_descriptor(G), classify.exp_descriptor(G)
        crit = classify.not_t_characterizable(G)
        ok = eo <= ex
        if crit.holds:
            mG = classify.multiply_descriptor(crit.witness, G)
            ok = ok and classify.descriptor_is_finite(mG) and not classify.descriptor_is_trivial(mG)
        if classify.is_connected_descriptor(G):
            ok = ok and not crit.holds
        out.check(ok, {"descriptor": str(G)})
    return out


SUITES = {
    "subgroup-law": suite_subgroup_law,
    "permutation": suite_permutation,
    "interleave-intersection": suite_interleave_intersection,
    "restriction": suite_restriction,
    "radical-bound": suite_radical_bound,
    "claim-lift": suite_claim_lift,
    "k-characterize": suite_k_characterize,
    "quotient-lift": suite_quotient_lift,
    "eo-exp": suite_eo_exp,
}


def run_suite(name: str, seed: int = 0, sizes: dict | None = None) -> SuiteSummary:
    try:
        suite = SUITES[name]
    except KeyError:
        raise CharsubError(f"unknown suite {name!r}; known: {', '.join(SUITES)}") from None
    return suite(seed, sizes)
