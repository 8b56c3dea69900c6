"""Text syntax for group descriptors, elements, characters and sequences.

Descriptors::

    T   Z   R   Q_3   Z(4)   Z(2)+Z(4)   Z(1)   prod(Z, Z(2))
    Z(3) x Z(2)^N   T^N   T x Z(2)

Sequences (the group is supplied by the caller and fixes how literals read)::

    factorial  harmonic  zenum  fib  zero
    geom(c,q)  rec([c1,...,cr],[v0,...,v_{r-1}])  periodic([prefix];[cycle])
    interleave(e1,e2)  tail(e,m)  lift(e,m)  divide(e,d)  pair(e1,e2)

Literals are integers, fractions ``a/b``, tuples ``(a,b)`` and, for points
of T and characters of Z, the irrationals ``phi`` and ``sqrt(d)`` with an
optional integer multiplier such as ``3*phi``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .circle import CircleInterval, QuadraticIrrational, golden_ratio, sqrt
from .errors import ParseError
from .groups import (
    CIRCLE,
    COUNTABLE,
    CircleT,
    Factor,
    FiniteAbelian,
    IntegersZ,
    PAdicQ,
    Product,
    RealsR,
    SymbolicCompact,
    canonical_character,
    canonical_element,
)
from .padic import PAdic
from . import sequences as S

_TOKEN = re.compile(r"\s*(?:(?P<num>-?\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<sym>[()\[\];,/*+^]))")


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.tokens = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise ParseError("unexpected character", text, pos)
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0

    def peek(self, offset=0):
        j = self.i + offset
        return self.tokens[j] if j < len(self.tokens) else (None, None, len(self.text))

    def next(self):
        tok = self.peek()
        if tok[0] is None:
            raise ParseError("unexpected end of input", self.text, len(self.text))
        self.i += 1
        return tok

    def expect(self, value):
        kind, val, pos = self.next()
        if val != value:
            raise ParseError(f"expected {value!r}, found {val!r}", self.text, pos)

    def accept(self, value) -> bool:
        if self.peek()[1] == value:
            self.i += 1
            return True
        return False

    def integer(self) -> int:
        kind, val, pos = self.next()
        if kind != "num":
            raise ParseError(f"expected an integer, found {val!r}", self.text, pos)
        return int(val)

    def done(self):
        kind, val, pos = self.peek()
        if kind is not None:
            raise ParseError(f"unexpected trailing input {val!r}", self.text, pos)


# ---------------------------------------------------------------------------
# descriptors


def parse_group(text: str):
    lx = _Lexer(text)
    G = _group(lx)
    lx.done()
    return G


def _group(lx):
    kind, val, pos = lx.peek()
    if val == "prod":
        lx.next()
        lx.expect("(")
        left = _group(lx)
        lx.expect(",")
        right = _group(lx)
        lx.expect(")")
        return Product(left, right)
    factors = [_factor(lx)]
    symbolic = factors[0][1] != 1
    cyclic_sum = False
    while True:
        if lx.accept("+"):
            cyclic_sum = True
        elif lx.peek()[1] == "x":
            lx.next()
            symbolic = True
        else:
            break
        factors.append(_factor(lx))
        symbolic = symbolic or factors[-1][1] != 1
    if symbolic and cyclic_sum:
        raise ParseError("cannot mix '+' and 'x' in one descriptor", lx.text, pos)
    if symbolic or (len(factors) > 1 and any(b == CIRCLE for b, _ in factors)):
        return SymbolicCompact(tuple(Factor(b, m) for b, m in factors))
    if len(factors) == 1:
        base = factors[0][0]
        if base == CIRCLE:
            return CircleT()
        if isinstance(base, str):
            return {"Z": IntegersZ(), "R": RealsR()}.get(base) or PAdicQ(int(base[2:]))
        return FiniteAbelian(() if base == 1 else (base,))
    if any(isinstance(b, str) for b, _ in factors):
        raise ParseError("'+' joins finite cyclic groups only", lx.text, pos)
    try:
        return FiniteAbelian(tuple(b for b, _ in factors))
    except ValueError as exc:
        raise ParseError(str(exc), lx.text, pos) from None


def _factor(lx):
    kind, val, pos = lx.next()
    if val == "T":
        base = CIRCLE
    elif val == "Z" and lx.peek()[1] == "(":
        lx.next()
        base = lx.integer()
        lx.expect(")")
        if base < 1:
            raise ParseError("cyclic order must be positive", lx.text, pos)
    elif val in ("Z", "R"):
        base = val
    elif kind == "name" and re.fullmatch(r"Q_\d+", val):
        try:
            PAdicQ(int(val[2:]))
        except ValueError as exc:
            raise ParseError(str(exc), lx.text, pos) from None
        base = val
    else:
        raise ParseError(f"unknown group {val!r}", lx.text, pos)
    mult = 1
    if lx.accept("^"):
        k, v, p = lx.next()
        if v == "N":
            mult = COUNTABLE
        elif k == "num" and int(v) >= 1:
            mult = int(v)
        else:
            raise ParseError(f"bad multiplicity {v!r}", lx.text, p)
        if base in ("Z", "R") or (isinstance(base, str) and base.startswith("Q_")):
            raise ParseError("powers are only for compact factors", lx.text, p)
    return base, mult


def format_group(G) -> str:
    return str(G)


# ---------------------------------------------------------------------------
# literals


def _scalar(lx):
    """An exact rational, or ``[k*]phi`` / ``[k*]sqrt(d)``."""
    kind, val, pos = lx.peek()
    mult = 1
    if kind == "num" and lx.peek(1)[1] == "*":
        mult = lx.integer()
        lx.next()
        kind, val, pos = lx.peek()
    if val == "phi":
        lx.next()
        return CircleInterval(golden_ratio(), mult)
    if val == "sqrt":
        lx.next()
        lx.expect("(")
        d = lx.integer()
        lx.expect(")")
        return CircleInterval(sqrt(d), mult)
    if mult != 1:
        raise ParseError("a multiplier must precede phi or sqrt(d)", lx.text, pos)
    num = lx.integer()
    if lx.accept("/"):
        den = lx.integer()
        if den == 0:
            raise ParseError("zero denominator", lx.text, pos)
        return Fraction(num, den)
    return num


def _literal(lx, G):
    if isinstance(G, Product):
        lx.expect("(")
        a = _literal(lx, G.left)
        lx.expect(",")
        b = _literal(lx, G.right)
        lx.expect(")")
        return (a, b)
    if isinstance(G, FiniteAbelian):
        if not G.factors:
            lx.expect("(")
            lx.expect(")")
            return ()
        if len(G.factors) == 1 and lx.peek()[1] != "(":
            return (lx.integer(),)
        lx.expect("(")
        out = [lx.integer()]
        while lx.accept(","):
            out.append(lx.integer())
        lx.expect(")")
        return tuple(out)
    return _scalar(lx)


def parse_element(G, text: str):
    lx = _Lexer(text)
    x = _literal(lx, G)
    lx.done()
    return canonical_element(G, x if not isinstance(G, PAdicQ) else Fraction(x))


def parse_character(G, text: str):
    lx = _Lexer(text)
    chi = _literal(lx, G)
    lx.done()
    return canonical_character(G, chi if not isinstance(G, PAdicQ) else Fraction(chi))


def _format_scalar(v) -> str:
    if isinstance(v, CircleInterval):
        if v.offset:
            raise ValueError("shifted irrational points have no literal syntax")
        real = v.real
        base = "phi" if real == golden_ratio() else str(real)
        if isinstance(real, QuadraticIrrational) and base not in ("phi",) and not base.startswith("sqrt"):
            raise ValueError(f"no literal syntax for {real}")
        return base if v.multiplier == 1 else f"{v.multiplier}*{base}"
    if isinstance(v, PAdic):
        v = v.value
    return str(Fraction(v)) if not isinstance(v, int) else str(v)


def format_character(G, chi) -> str:
    if isinstance(G, Product):
        return f"({format_character(G.left, chi[0])},{format_character(G.right, chi[1])})"
    if isinstance(G, FiniteAbelian):
        if len(chi) == 1:
            return str(chi[0])
        return "(" + ",".join(str(c) for c in chi) + ")"
    return _format_scalar(chi)


format_element = format_character


# ---------------------------------------------------------------------------
# sequences


def parse_sequence(G, text: str) -> S.CharSequence:
    lx = _Lexer(text)
    seq = _sequence(lx, G)
    lx.done()
    return seq


def _int_list(lx):
    lx.expect("[")
    out = []
    if not lx.accept("]"):
        out.append(lx.integer())
        while lx.accept(","):
            out.append(lx.integer())
        lx.expect("]")
    return out


def _char_list(lx, G):
    lx.expect("[")
    out = []
    if not lx.accept("]"):
        out.append(_literal(lx, G))
        while lx.accept(","):
            out.append(_literal(lx, G))
        lx.expect("]")
    return out


def _sequence(lx, G):
    kind, name, pos = lx.next()
    if kind != "name":
        raise ParseError(f"expected a sequence, found {name!r}", lx.text, pos)
    try:
        if name == "factorial":
            return S.Factorial(G)
        if name == "harmonic":
            return S.Harmonic(G)
        if name == "zenum":
            return S.ZEnumeration(G)
        if name == "fib":
            return S.LinearRecurrence((1, 1), (1, 1), G)
        if name == "zero":
            return S.zero_sequence(G)
        lx.expect("(")
        if name == "geom":
            c = lx.integer()
            lx.expect(",")
            q = lx.integer()
            out = S.Geometric(c, q, G)
        elif name == "rec":
            coeffs = _int_list(lx)
            lx.expect(",")
            out = S.LinearRecurrence(tuple(coeffs), tuple(_int_list(lx)), G)
        elif name == "periodic":
            prefix = _char_list(lx, G)
            lx.expect(";")
            cycle = _char_list(lx, G)
            if isinstance(G, PAdicQ):
                prefix, cycle = [Fraction(c) for c in prefix], [Fraction(c) for c in cycle]
            out = S.ExplicitPeriodic(G, tuple(prefix), tuple(cycle))
        elif name == "interleave":
            u = _sequence(lx, G)
            lx.expect(",")
            out = S.Interleave(u, _sequence(lx, G))
        elif name in ("tail", "lift", "divide"):
            inner = _sequence(lx, G)
            lx.expect(",")
            k = lx.integer()
            out = {"tail": S.Tail, "lift": S.ClaimLift, "divide": S.Divide}[name](inner, k)
        elif name == "pair":
            if not isinstance(G, Product):
                raise ParseError("pair(...) needs a product group", lx.text, pos)
            u = _sequence(lx, G.left)
            lx.expect(",")
            out = S.Pair(u, _sequence(lx, G.right))
        else:
            raise ParseError(f"unknown sequence family {name!r}", lx.text, pos)
        lx.expect(")")
        return out
    except ParseError:
        raise
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{name}: {exc}", lx.text, pos) from None


def format_sequence(seq: S.CharSequence) -> str:
    return seq.expr()
