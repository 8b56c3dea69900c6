"""The supported abelian groups, their elements and characters.

Elements and characters are plain Python values whose shape depends on the
group descriptor:

=================  =========================  =================================
group              element                    character
=================  =========================  =================================
FiniteAbelian      tuple of residues          tuple of residues (c_i x_i / d_i)
IntegersZ          int                        circle point (Fraction/interval)
CircleT            circle point               int (x -> n x)
RealsR             Fraction                   Fraction r (x -> r x mod 1)
PAdicQ             PAdic                      PAdic y (x -> {x y}_p)
Product            pair                       pair
=================  =========================  =================================
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, lcm, prod
from typing import NamedTuple, Union

from .circle import CircleInterval, circle
from .errors import CapExceeded, DescriptorMismatch, PreconditionError, Undecidable
from .padic import PAdic, fractional_part

DEFAULT_CAP = 10**6

CIRCLE = "T"
COUNTABLE = "N"


@dataclass(frozen=True)
class FiniteAbelian:
    """Z(d_1) + ... + Z(d_k) with d_1 | d_2 | ... | d_k; ``()`` is the trivial group."""

    factors: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(d) for d in self.factors))
        for d in self.factors:
            if d < 2:
                raise ValueError(f"invariant factor {d} must be >= 2")
        for a, b in zip(self.factors, self.factors[1:]):
            if b % a:
                raise ValueError(f"invariant factors {self.factors} do not form a divisibility chain")

    @property
    def order(self) -> int:
        return prod(self.factors)

    def __str__(self):
        return "+".join(f"Z({d})" for d in self.factors) if self.factors else "Z(1)"


@dataclass(frozen=True)
class IntegersZ:
    def __str__(self):
        return "Z"


@dataclass(frozen=True)
class CircleT:
    def __str__(self):
        return "T"


@dataclass(frozen=True)
class RealsR:
    def __str__(self):
        return "R"


@dataclass(frozen=True)
class PAdicQ:
    p: int

    def __post_init__(self):
        from sympy import isprime

        if not isprime(self.p):
            raise ValueError(f"Q_p needs a prime, got {self.p}")

    def __str__(self):
        return f"Q_{self.p}"


@dataclass(frozen=True)
class Product:
    left: "GroupDescriptor"
    right: "GroupDescriptor"

    def __post_init__(self):
        if depth(self) > 2:
            raise ValueError("products nest at most two levels deep")

    def __str__(self):
        return f"prod({self.left}, {self.right})"


@dataclass(frozen=True)
class Factor:
    """One factor ``base ** multiplicity`` of a symbolic compact group.

    ``base`` is a cyclic order d >= 2 or ``CIRCLE``; ``multiplicity`` is a
    positive integer or ``COUNTABLE``.
    """

    base: Union[int, str]
    multiplicity: Union[int, str] = 1

    def __post_init__(self):
        if self.base != CIRCLE and (not isinstance(self.base, int) or self.base < 2):
            raise ValueError(f"bad factor base {self.base!r}")
        if self.multiplicity != COUNTABLE and (not isinstance(self.multiplicity, int) or self.multiplicity < 1):
            raise ValueError(f"bad multiplicity {self.multiplicity!r}")

    @property
    def infinite(self) -> bool:
        return self.multiplicity == COUNTABLE

    def __str__(self):
        base = "T" if self.base == CIRCLE else f"Z({self.base})"
        if self.multiplicity == 1:
            return base
        return f"{base}^{self.multiplicity}"


@dataclass(frozen=True)
class SymbolicCompact:
    """A product of cyclic groups and circles with finite or countable multiplicities."""

    factors: tuple[Factor, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))

    def __str__(self):
        return " x ".join(str(f) for f in self.factors) if self.factors else "Z(1)"


GroupDescriptor = Union[FiniteAbelian, IntegersZ, CircleT, RealsR, PAdicQ, Product, SymbolicCompact]


def depth(G) -> int:
    if isinstance(G, Product):
        return 1 + max(depth(G.left), depth(G.right))
    return 0


def is_finite(G) -> bool:
    if isinstance(G, FiniteAbelian):
        return True
    if isinstance(G, Product):
        return is_finite(G.left) and is_finite(G.right)
    return False


def is_compact(G) -> bool:
    if isinstance(G, (FiniteAbelian, CircleT, SymbolicCompact)):
        return True
    if isinstance(G, Product):
        return is_compact(G.left) and is_compact(G.right)
    return False


def order(G) -> int:
    if not is_finite(G):
        raise PreconditionError(f"{G} is infinite")
    return prod(moduli(G))


def moduli(G) -> tuple[int, ...]:
    """Cyclic orders of the flattened coordinates of a finite group."""
    if isinstance(G, FiniteAbelian):
        return G.factors
    if isinstance(G, Product) and is_finite(G):
        return moduli(G.left) + moduli(G.right)
    raise PreconditionError(f"{G} is not finite")


def flatten(G, x) -> tuple[int, ...]:
    if isinstance(G, FiniteAbelian):
        return tuple(x)
    return flatten(G.left, x[0]) + flatten(G.right, x[1])


def unflatten(G, flat):
    if isinstance(G, FiniteAbelian):
        return tuple(flat)
    k = len(moduli(G.left))
    return (unflatten(G.left, flat[:k]), unflatten(G.right, flat[k:]))


def check_cap(G, cap=DEFAULT_CAP) -> int:
    n = order(G)
    if n > cap:
        raise CapExceeded(n, cap)
    return n


# ---------------------------------------------------------------------------
# elements and characters


def canonical_element(G, x):
    """Validate ``x`` as an element of ``G`` and return its canonical form."""
    try:
        if isinstance(G, FiniteAbelian):
            x = tuple(x)
            if len(x) != len(G.factors):
                raise DescriptorMismatch(f"{x!r} has wrong length for {G}")
            return tuple(int(a) % d for a, d in zip(x, G.factors))
        if isinstance(G, IntegersZ):
            if isinstance(x, Fraction) and x.denominator != 1:
                raise DescriptorMismatch(f"{x} is not an integer")
            if isinstance(x, (bool, float)) or not isinstance(x, (int, Fraction)):
                raise DescriptorMismatch(f"{x!r} is not an integer")
            return int(x)
        if isinstance(G, CircleT):
            if isinstance(x, CircleInterval):
                return x
            return _exact_circle(x)
        if isinstance(G, RealsR):
            return _rational(x)
        if isinstance(G, PAdicQ):
            if isinstance(x, PAdic):
                if x.p != G.p:
                    raise DescriptorMismatch(f"{x} lives in Q_{x.p}, not Q_{G.p}")
                return x
            return PAdic(G.p, _rational(x))
        if isinstance(G, Product):
            a, b = x
            return (canonical_element(G.left, a), canonical_element(G.right, b))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, DescriptorMismatch):
            raise
        raise DescriptorMismatch(f"{x!r} is not an element of {G}") from exc
    raise DescriptorMismatch(f"no runtime elements for {G}")


def canonical_character(G, chi):
    """Validate ``chi`` as a character of ``G`` and return its canonical form."""
    try:
        if isinstance(G, FiniteAbelian):
            return canonical_element(G, chi)
        if isinstance(G, IntegersZ):
            if isinstance(chi, CircleInterval):
                return chi
            return _exact_circle(chi)
        if isinstance(G, CircleT):
            if isinstance(chi, Fraction) and chi.denominator != 1:
                raise DescriptorMismatch(f"{chi} is not an integer")
            if isinstance(chi, (bool, float)) or not isinstance(chi, (int, Fraction)):
                raise DescriptorMismatch(f"{chi!r} is not an integer")
            return int(chi)
        if isinstance(G, (RealsR, PAdicQ)):
            return canonical_element(G, chi)
        if isinstance(G, Product):
            a, b = chi
            return (canonical_character(G.left, a), canonical_character(G.right, b))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, DescriptorMismatch):
            raise
        raise DescriptorMismatch(f"{chi!r} is not a character of {G}") from exc
    raise DescriptorMismatch(f"no runtime characters for {G}")


def _rational(x) -> Fraction:
    if isinstance(x, (bool, float)) or not isinstance(x, (int, Fraction)):
        raise DescriptorMismatch(f"{x!r} is not an exact rational")
    return Fraction(x)


def _exact_circle(x) -> Fraction:
    return circle(_rational(x))


def zero_element(G):
    if isinstance(G, FiniteAbelian):
        return (0,) * len(G.factors)
    if isinstance(G, IntegersZ):
        return 0
    if isinstance(G, (CircleT, RealsR)):
        return Fraction(0)
    if isinstance(G, PAdicQ):
        return PAdic(G.p, Fraction(0))
    if isinstance(G, Product):
        return (zero_element(G.left), zero_element(G.right))
    raise DescriptorMismatch(f"no runtime elements for {G}")


def zero_character(G):
    if isinstance(G, IntegersZ):
        return Fraction(0)
    if isinstance(G, CircleT):
        return 0
    if isinstance(G, Product):
        return (zero_character(G.left), zero_character(G.right))
    return zero_element(G)


def is_zero_character(G, chi) -> bool:
    chi = canonical_character(G, chi)
    if isinstance(chi, CircleInterval):
        # an irrational point of T is never zero
        return False
    return chi == zero_character(G)


def add_elements(G, x, y):
    x, y = canonical_element(G, x), canonical_element(G, y)
    if isinstance(G, FiniteAbelian):
        return tuple((a + b) % d for a, b, d in zip(x, y, G.factors))
    if isinstance(G, Product):
        return (add_elements(G.left, x[0], y[0]), add_elements(G.right, x[1], y[1]))
    if isinstance(G, CircleT):
        return _add_circle(x, y)
    return canonical_element(G, x + y)


def neg_element(G, x):
    x = canonical_element(G, x)
    if isinstance(G, FiniteAbelian):
        return tuple(-a % d for a, d in zip(x, G.factors))
    if isinstance(G, Product):
        return (neg_element(G.left, x[0]), neg_element(G.right, x[1]))
    if isinstance(G, CircleT) and isinstance(x, CircleInterval):
        return x.scale(-1, x.width)
    return canonical_element(G, -x)


def multiple(G, k: int, x):
    """The element ``k * x``."""
    x = canonical_element(G, x)
    if isinstance(G, FiniteAbelian):
        return tuple(k * a % d for a, d in zip(x, G.factors))
    if isinstance(G, Product):
        return (multiple(G.left, k, x[0]), multiple(G.right, k, x[1]))
    if isinstance(x, CircleInterval):
        return x.scale(k)
    return canonical_element(G, k * x)


def add_characters(G, a, b):
    a, b = canonical_character(G, a), canonical_character(G, b)
    if isinstance(G, FiniteAbelian):
        return tuple((x + y) % d for x, y, d in zip(a, b, G.factors))
    if isinstance(G, Product):
        return (add_characters(G.left, a[0], b[0]), add_characters(G.right, a[1], b[1]))
    if isinstance(G, IntegersZ):
        return _add_circle(a, b)
    return canonical_character(G, a + b)


def _add_circle(a, b):
    if isinstance(a, CircleInterval) and isinstance(b, CircleInterval):
        raise Undecidable("sum of two irrational circle points has no exact representation here")
    if isinstance(a, CircleInterval):
        return a.shift(b)
    if isinstance(b, CircleInterval):
        return b.shift(a)
    return circle(a + b)


def eval_character(G, chi, x):
    """The pairing ``chi(x)`` in T.

    Returns an exact Fraction in [0, 1) when both operands are exact, and a
    :class:`CircleInterval` otherwise.
    """
    chi = canonical_character(G, chi)
    x = canonical_element(G, x)
    return _eval(G, chi, x)


def _eval(G, chi, x):
    if isinstance(G, FiniteAbelian):
        return circle(sum(Fraction(c * a, d) for c, a, d in zip(chi, x, G.factors)))
    if isinstance(G, CircleT):
        return x.scale(chi) if isinstance(x, CircleInterval) else circle(chi * x)
    if isinstance(G, IntegersZ):
        return chi.scale(x) if isinstance(chi, CircleInterval) else circle(chi * x)
    if isinstance(G, RealsR):
        return circle(chi * x)
    if isinstance(G, PAdicQ):
        return fractional_part(chi.value * x.value, G.p)
    if isinstance(G, Product):
        return _add_circle(_eval(G.left, chi[0], x[0]), _eval(G.right, chi[1], x[1]))
    raise DescriptorMismatch(f"cannot evaluate characters of {G}")


# ---------------------------------------------------------------------------
# finite groups


@lru_cache(maxsize=256)
def _flat_elements(mods: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    return tuple(itertools.product(*(range(d) for d in mods)))


@lru_cache(maxsize=256)
def _weights(mods: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    L = reduce(lcm, mods, 1)
    return L, tuple(L // d for d in mods)


def pairing_numerator(mods, c, x) -> int:
    """``chi(x) * L mod L`` where L is the exponent; zero iff chi(x) = 0."""
    L, w = _weights(mods)
    return sum(ci * xi * wi for ci, xi, wi in zip(c, x, w)) % L


def iter_elements(G, cap=DEFAULT_CAP):
    check_cap(G, cap)
    for flat in _flat_elements(moduli(G)):
        yield unflatten(G, flat)


def iter_characters(G, cap=DEFAULT_CAP):
    """Characters of a finite group; the dual carries the same invariant factors."""
    return iter_elements(G, cap)


class FiniteDual(NamedTuple):
    group: GroupDescriptor
    pairing: object

    def separates_points(self, cap=DEFAULT_CAP) -> bool:
        return pairing_separates_points(self.group, cap)


def dual_finite(G, cap=DEFAULT_CAP) -> FiniteDual:
    """Dual of a finite group: same invariant factors, pairing ``sum c_i x_i / d_i``."""
    if not is_finite(G):
        raise PreconditionError(f"{G} is not finite")
    check_cap(G, cap)

    def pairing(c, x):
        return eval_character(G, c, x)

    return FiniteDual(G, pairing)


def pairing_separates_points(G, cap=DEFAULT_CAP) -> bool:
    """Exhaustive check that every nonzero element is moved by some character."""
    check_cap(G, cap)
    mods = moduli(G)
    elems = _flat_elements(mods)
    zero = (0,) * len(mods)
    for x in elems:
        if x == zero:
            continue
        if not any(pairing_numerator(mods, c, x) for c in elems):
            return False
    return True


class FiniteSubgroup:
    """A subgroup of a finite group stored as its full element set."""

    __slots__ = ("ambient", "_flat", "generators")

    def __init__(self, ambient, flat_elements, generators=None):
        self.ambient = ambient
        self._flat = frozenset(flat_elements)
        if generators is None:
            generators = _small_generating_set(moduli(ambient), self._flat)
        self.generators = tuple(unflatten(ambient, g) for g in generators)

    def __contains__(self, x):
        return flatten(self.ambient, canonical_element(self.ambient, x)) in self._flat

    @property
    def order(self) -> int:
        return len(self._flat)

    @property
    def index(self) -> int:
        return order(self.ambient) // len(self._flat)

    def elements(self):
        return [unflatten(self.ambient, f) for f in sorted(self._flat)]

    def flat(self) -> frozenset:
        return self._flat

    def is_whole(self) -> bool:
        return len(self._flat) == order(self.ambient)

    def is_trivial(self) -> bool:
        return len(self._flat) == 1

    def __le__(self, other):
        return self.ambient == other.ambient and self._flat <= other._flat

    def __and__(self, other):
        if self.ambient != other.ambient:
            raise DescriptorMismatch("intersection of subgroups of different groups")
        return FiniteSubgroup(self.ambient, self._flat & other._flat)

    def __eq__(self, other):
        return isinstance(other, FiniteSubgroup) and self.ambient == other.ambient and self._flat == other._flat

    def __hash__(self):
        return hash((self.ambient, self._flat))

    def __repr__(self):
        shown = self.elements()
        if len(shown) > 8:
            return f"<subgroup of {self.ambient}: order {self.order}, generators {list(self.generators)}>"
        return f"<subgroup of {self.ambient}: {shown}>"


def _closure(mods, gens) -> set:
    zero = (0,) * len(mods)
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple((a + b) % d for a, b, d in zip(x, g, mods))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def _small_generating_set(mods, flat) -> list:
    gens = []
    span = {(0,) * len(mods)}
    for x in sorted(flat, key=lambda e: (-_element_order(mods, e), e)):
        if x not in span:
            gens.append(x)
            span = _closure(mods, gens)
            if len(span) == len(flat):
                break
    return gens


def _element_order(mods, x) -> int:
    return reduce(lcm, (d // gcd(a, d) for a, d in zip(x, mods)), 1)


def subgroup_generated(G, generators, cap=DEFAULT_CAP) -> FiniteSubgroup:
    """Closure of ``generators`` in the finite group ``G``."""
    check_cap(G, cap)
    mods = moduli(G)
    gens = [flatten(G, canonical_element(G, g)) for g in generators]
    return FiniteSubgroup(G, _closure(mods, gens), generators=gens)


def subgroup_ops_finite(G, generators, cap=DEFAULT_CAP) -> FiniteSubgroup:
    return subgroup_generated(G, generators, cap)


def whole_group(G, cap=DEFAULT_CAP) -> FiniteSubgroup:
    check_cap(G, cap)
    return FiniteSubgroup(G, _flat_elements(moduli(G)))


def trivial_subgroup(G) -> FiniteSubgroup:
    return FiniteSubgroup(G, [(0,) * len(moduli(G))], generators=[])


def annihilator_finite(G, S, cap=DEFAULT_CAP) -> FiniteSubgroup:
    """Annihilator of a finite set ``S``.

    For a set of elements this is the subgroup of the dual killing all of
    them; for a set of characters it is the joint kernel in ``G``.  With the
    pairing ``sum c_i x_i / d_i`` both computations are the same, so the
    result is always a subgroup of the descriptor ``G`` (read as the dual in
    the first case).
    """
    check_cap(G, cap)
    mods = moduli(G)
    S = [flatten(G, canonical_element(G, s)) for s in S]
    flat = [c for c in _flat_elements(mods) if all(pairing_numerator(mods, c, s) == 0 for s in S)]
    return FiniteSubgroup(G, flat)


@lru_cache(maxsize=65536)
def _kernel_flat(mods, c) -> frozenset:
    return frozenset(x for x in _flat_elements(mods) if pairing_numerator(mods, c, x) == 0)


def joint_kernel(G, characters, cap=DEFAULT_CAP) -> FiniteSubgroup:
    """Intersection of the kernels of ``characters`` (all of ``G`` if empty)."""
    check_cap(G, cap)
    mods = moduli(G)
    flat = frozenset(_flat_elements(mods))
    for chi in characters:
        flat = flat & _kernel_flat(mods, flatten(G, canonical_character(G, chi)))
    return FiniteSubgroup(G, flat)


# ---------------------------------------------------------------------------
# quotients of finite groups


@dataclass(frozen=True)
class QuotientMap:
    """The canonical projection X -> X/F for a finite group X.

    ``target`` is X/F in invariant-factor form; ``basis_change`` is the
    unimodular matrix T with ``pi(x)_j = (x T)_j mod target.factors[j]``
    over the retained columns ``columns``.
    """

    source: GroupDescriptor
    kernel: FiniteSubgroup
    target: FiniteAbelian
    basis_change: tuple[tuple[int, ...], ...]
    columns: tuple[int, ...]

    def project(self, x):
        flat = flatten(self.source, canonical_element(self.source, x))
        T = self.basis_change
        out = []
        for j, d in zip(self.columns, self.target.factors):
            out.append(sum(xi * T[i][j] for i, xi in enumerate(flat)) % d)
        return tuple(out)

    def pullback(self, chi):
        """The character ``chi o pi`` of the source group."""
        chi = canonical_character(self.target, chi)
        T = self.basis_change
        mods = moduli(self.source)
        flat = []
        for i, d in enumerate(mods):
            value = circle(sum(Fraction(c * T[i][j], e) for c, j, e in zip(chi, self.columns, self.target.factors)))
            residue = value * d
            assert residue.denominator == 1, "pullback is not a character"
            flat.append(int(residue) % d)
        return unflatten(self.source, tuple(flat))

    def preimage(self, subgroup: FiniteSubgroup) -> FiniteSubgroup:
        mods = moduli(self.source)
        flat = [x for x in _flat_elements(mods) if self.project(unflatten(self.source, x)) in subgroup]
        return FiniteSubgroup(self.source, flat)


def quotient_finite(G, F_generators, cap=DEFAULT_CAP) -> QuotientMap:
    """Projection of the finite group ``G`` onto ``G / <F_generators>``."""
    from sympy.polys.domains import ZZ
    from sympy.polys.matrices import DM
    from sympy.polys.matrices.normalforms import smith_normal_decomp

    check_cap(G, cap)
    F = subgroup_generated(G, F_generators, cap)
    mods = moduli(G)
    k = len(mods)
    if k == 0:
        return QuotientMap(G, F, FiniteAbelian(()), (), ())
    rows = [[d if i == j else 0 for j in range(k)] for i, d in enumerate(mods)]
    rows += [list(flatten(G, g)) for g in F.generators]
    D, _, T = smith_normal_decomp(DM(rows, ZZ))
    D = D.to_Matrix()
    T = T.to_Matrix()
    diag = [abs(int(D[j, j])) for j in range(k)]
    columns = tuple(j for j, d in enumerate(diag) if d != 1)
    target = FiniteAbelian(tuple(diag[j] for j in columns))
    basis = tuple(tuple(int(T[i, j]) for j in range(k)) for i in range(k))
    qmap = QuotientMap(G, F, target, basis, columns)
    assert target.order * F.order == order(G)
    return qmap


# ---------------------------------------------------------------------------
# enumeration of small finite groups and their subgroups


def all_finite_abelian(max_order: int) -> list[FiniteAbelian]:
    """Every finite abelian group of order <= max_order, once per isomorphism type."""
    out = []

    def extend(chain, size):
        out.append(FiniteAbelian(tuple(chain)))
        start = chain[-1] if chain else 2
        d = start
        while size * d <= max_order:
            if not chain or d % chain[-1] == 0:
                extend(chain + [d], size * d)
            d += 1

    extend([], 1)
    return sorted(out, key=lambda G: (G.order, G.factors))


def all_subgroups(G, cap=DEFAULT_CAP) -> list[FiniteSubgroup]:
    """Every subgroup of a finite group, found by joining cyclic subgroups."""
    check_cap(G, cap)
    mods = moduli(G)
    zero = (0,) * len(mods)
    cyclic = {frozenset(_closure(mods, [x])) for x in _flat_elements(mods)}
    seen = {frozenset([zero])}
    frontier = list(seen)
    while frontier:
        nxt = []
        for H in frontier:
            for C in cyclic:
                if C <= H:
                    continue
                # H + C is already a subgroup in an abelian group
                J = frozenset(tuple((a + b) % d for a, b, d in zip(h, c, mods)) for h in H for c in C)
                if J not in seen:
                    seen.add(J)
                    nxt.append(J)
        frontier = nxt
    return [FiniteSubgroup(G, H) for H in sorted(seen, key=lambda s: (len(s), sorted(s)))]


@dataclass(frozen=True)
class SubgroupEmbedding:
    """An isomorphism from ``abstract`` (invariant-factor form) onto a subgroup of ``ambient``.

    ``images[j]`` is the image of the j-th basis vector of ``abstract``.
    """

    abstract: FiniteAbelian
    ambient: GroupDescriptor
    images: tuple

    def embed(self, y):
        mods = moduli(self.ambient)
        flat = [0] * len(mods)
        for a, img in zip(y, self.images):
            g = flatten(self.ambient, img)
            flat = [(s + a * gi) % d for s, gi, d in zip(flat, g, mods)]
        return unflatten(self.ambient, tuple(flat))

    def restrict(self, chi):
        """The character ``chi o embed`` of the abstract group."""
        out = []
        for img, d in zip(self.images, self.abstract.factors):
            value = eval_character(self.ambient, chi, img)
            residue = value * d
            assert residue.denominator == 1, "restriction is not a character"
            out.append(int(residue) % d)
        return tuple(out)


def subgroup_embedding(J: FiniteSubgroup) -> SubgroupEmbedding:
    """Present J as Z(L)^k / K via its generators and read off invariant factors."""
    G = J.ambient
    mods = moduli(G)
    gens = [flatten(G, g) for g in J.generators]
    if not gens:
        return SubgroupEmbedding(FiniteAbelian(()), G, ())
    L = reduce(lcm, mods, 1)
    k = len(gens)
    A = FiniteAbelian((L,) * k)

    def image(a):
        flat = [0] * len(mods)
        for ai, g in zip(a, gens):
            flat = [(s + ai * gi) % d for s, gi, d in zip(flat, g, mods)]
        return tuple(flat)

    kernel = [a for a in _flat_elements(A.factors) if image(a) == (0,) * len(mods)]
    qmap = quotient_finite(A, kernel)
    target = qmap.target
    images = [None] * len(target.factors)
    for a in _flat_elements(A.factors):
        t = qmap.project(a)
        nonzero = [j for j, c in enumerate(t) if c]
        if len(nonzero) == 1 and t[nonzero[0]] == 1 and images[nonzero[0]] is None:
            images[nonzero[0]] = unflatten(G, image(a))
            if all(img is not None for img in images):
                break
    emb = SubgroupEmbedding(target, G, tuple(images))
    assert {flatten(G, emb.embed(y)) for y in _flat_elements(target.factors)} == J.flat()
    return emb
