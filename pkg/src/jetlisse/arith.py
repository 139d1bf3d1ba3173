"""Exact multivariate polynomials over indexed jet variables.

A variable ``x{j}_{i}`` stands for the jet coordinate of generator ``j`` at
level ``i`` (``i >= 1``); level 1 variables are the base-ring generators.
Coefficients are :class:`fractions.Fraction`, so every operation is exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, NamedTuple, Union

Scalar = Fraction
Coercible = Union[int, Fraction, "Polynomial"]


class VarId(NamedTuple):
    """Jet variable ``x^gen_(-level)``."""

    gen: int
    level: int

    @property
    def weight(self) -> int:
        return self.level

    def __str__(self) -> str:
        return f"x{self.gen}_{self.level}"


class Monomial:
    """Power product of jet variables, stored as sorted ``(VarId, exp)`` pairs."""

    __slots__ = ("items", "degree", "weight", "_hash")

    def __init__(self, items: Iterable[tuple[VarId, int]] = ()):
        merged: dict[VarId, int] = {}
        for v, e in items:
            if e < 0:
                raise ValueError("negative exponent")
            if e:
                merged[v] = merged.get(v, 0) + e
        self.items = tuple(sorted(merged.items()))
        self.degree = sum(e for _, e in self.items)
        self.weight = sum(v.level * e for v, e in self.items)
        self._hash = hash(self.items)

    @classmethod
    def _raw(cls, items: tuple[tuple[VarId, int], ...]) -> "Monomial":
        m = cls.__new__(cls)
        m.items = items
        m.degree = sum(e for _, e in items)
        m.weight = sum(v.level * e for v, e in items)
        m._hash = hash(items)
        return m

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Monomial) and self.items == other.items

    def __repr__(self) -> str:
        return f"Monomial({str(self)!r})"

    def __str__(self) -> str:
        if not self.items:
            return "1"
        return "*".join(str(v) if e == 1 else f"{v}^{e}" for v, e in self.items)

    def as_dict(self) -> dict[VarId, int]:
        return dict(self.items)

    def variables(self) -> tuple[VarId, ...]:
        return tuple(v for v, _ in self.items)

    def exponent(self, v: VarId) -> int:
        for w, e in self.items:
            if w == v:
                return e
        return 0

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not other.items:
            return self
        if not self.items:
            return other
        d = dict(self.items)
        for v, e in other.items:
            d[v] = d.get(v, 0) + e
        return Monomial._raw(tuple(sorted(d.items())))

    def divides(self, other: "Monomial") -> bool:
        od = dict(other.items)
        return all(od.get(v, 0) >= e for v, e in self.items)

    def __truediv__(self, other: "Monomial") -> "Monomial":
        d = dict(self.items)
        for v, e in other.items:
            r = d.get(v, 0) - e
            if r < 0:
                raise ValueError(f"{other} does not divide {self}")
            if r:
                d[v] = r
            else:
                del d[v]
        return Monomial._raw(tuple(sorted(d.items())))

    def lcm(self, other: "Monomial") -> "Monomial":
        d = dict(self.items)
        for v, e in other.items:
            if e > d.get(v, 0):
                d[v] = e
        return Monomial._raw(tuple(sorted(d.items())))

    def gcd(self, other: "Monomial") -> "Monomial":
        od = dict(other.items)
        return Monomial._raw(
            tuple((v, min(e, od[v])) for v, e in self.items if v in od)
        )

    def is_coprime(self, other: "Monomial") -> bool:
        od = dict(other.items)
        return not any(v in od for v, _ in self.items)


ONE_MONOMIAL = Monomial()


# ---------- monomial orders ----------

ORDER_TAGS = ("degrevlex", "weighted-degrevlex", "lex")


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order plus a variable ranking.

    ``ranking`` lists variables from largest to smallest; variables outside it
    rank below every listed one and among themselves by the default rule:
    lower level is larger, then lower generator index is larger (so
    ``x1_1 > x2_1 > x1_2``).
    """

    tag: str = "weighted-degrevlex"
    ranking: tuple[VarId, ...] = ()

    def __post_init__(self) -> None:
        if self.tag not in ORDER_TAGS:
            raise ValueError(f"unknown monomial order {self.tag!r}")

    def rank(self, v: VarId) -> tuple:
        """Sort key of a variable; larger key means larger variable."""
        return _var_rank(self, v)

    def key(self, m: Monomial) -> tuple:
        """Sort key of a monomial; larger key means larger monomial."""
        return _mono_key(self, m)

    def compare(self, a: Monomial, b: Monomial) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)


@lru_cache(maxsize=None)
def _var_rank(order: MonomialOrder, v: VarId) -> tuple:
    if v in order.ranking:
        return (1, -order.ranking.index(v))
    return (0, -v.level, -v.gen)


@lru_cache(maxsize=1 << 18)
def _mono_key(order: MonomialOrder, m: Monomial) -> tuple:
    ranked = sorted((_var_rank(order, v), e) for v, e in m.items)
    if order.tag == "lex":
        return tuple(reversed(ranked))
    tail = tuple((r, -e) for r, e in ranked)
    if order.tag == "degrevlex":
        return (m.degree, tail)
    return (m.weight, m.degree, tail)


DEFAULT_ORDER = MonomialOrder()


def compare_monomials(a: Monomial, b: Monomial, order: MonomialOrder = DEFAULT_ORDER) -> int:
    """Return 1, 0 or -1 as ``a`` is greater than, equal to or less than ``b``."""
    return order.compare(a, b)


# ---------- polynomials ----------


def _scalar(c: int | Fraction) -> Fraction:
    if isinstance(c, bool) or not isinstance(c, (int, Fraction)):
        raise TypeError(f"not an exact scalar: {c!r}")
    return Fraction(c)


class Polynomial:
    """Immutable sparse polynomial ``{Monomial: Fraction}`` with no zero terms."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int | Fraction] | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                c = _scalar(c)
                if c:
                    clean[m] = c
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def _wrap(cls, terms: dict[Monomial, Fraction]) -> "Polynomial":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    # constructors
    @classmethod
    def constant(cls, c: int | Fraction) -> "Polynomial":
        c = _scalar(c)
        return cls._wrap({ONE_MONOMIAL: c} if c else {})

    @classmethod
    def var(cls, gen: int, level: int = 1) -> "Polynomial":
        if gen < 0 or level < 0:
            raise ValueError("variable indices must be non-negative")
        return cls._wrap({Monomial._raw(((VarId(gen, level), 1),)): Fraction(1)})

    @classmethod
    def monomial(cls, m: Monomial, c: int | Fraction = 1) -> "Polynomial":
        return cls({m: c})

    # inspection
    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return self._terms

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not m.items for m in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get(ONE_MONOMIAL, Fraction(0))

    def coefficient(self, m: Monomial) -> Fraction:
        return self._terms.get(m, Fraction(0))

    def variables(self) -> frozenset[VarId]:
        return frozenset(v for m in self._terms for v, _ in m.items)

    def max_level(self) -> int:
        return max((v.level for v in self.variables()), default=0)

    def degree(self) -> int:
        return max((m.degree for m in self._terms), default=-1)

    def weights(self) -> set[int]:
        return {m.weight for m in self._terms}

    def max_weight(self) -> int:
        return max((m.weight for m in self._terms), default=0)

    def is_weight_homogeneous(self) -> bool:
        return len(self.weights()) <= 1

    def leading_monomial(self, order: MonomialOrder = DEFAULT_ORDER) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self._terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder = DEFAULT_ORDER) -> Fraction:
        return self._terms[self.leading_monomial(order)]

    def monic(self, order: MonomialOrder = DEFAULT_ORDER) -> "Polynomial":
        if not self._terms:
            return self
        lc = self.leading_coefficient(order)
        if lc == 1:
            return self
        return Polynomial._wrap({m: c / lc for m, c in self._terms.items()})

    def sorted_terms(self, order: MonomialOrder = DEFAULT_ORDER) -> list[tuple[Monomial, Fraction]]:
        """Terms from largest to smallest monomial."""
        return sorted(self._terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    # arithmetic
    @staticmethod
    def _coerce(other: Coercible) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        return Polynomial.constant(other)

    def __add__(self, other: Coercible) -> "Polynomial":
        other = self._coerce(other)
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for m, c in small.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._wrap(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._wrap({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: Coercible) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Coercible) -> "Polynomial":
        return self._coerce(other) - self

    def scale(self, c: int | Fraction) -> "Polynomial":
        c = _scalar(c)
        if not c:
            return Polynomial()
        return Polynomial._wrap({m: c * a for m, a in self._terms.items()})

    def mul_term(self, m: Monomial, c: int | Fraction) -> "Polynomial":
        c = _scalar(c)
        if not c:
            return Polynomial()
        return Polynomial._wrap({m * k: c * a for k, a in self._terms.items()})

    def __mul__(self, other: Coercible) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 * m2
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Polynomial._wrap(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def diff(self, v: VarId) -> "Polynomial":
        """Partial derivative with respect to ``v``."""
        out: dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            d = m.as_dict()
            e = d.get(v, 0)
            if not e:
                continue
            if e == 1:
                del d[v]
            else:
                d[v] = e - 1
            k = Monomial._raw(tuple(sorted(d.items())))
            out[k] = out.get(k, 0) + c * e
        return Polynomial({k: c for k, c in out.items()})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._terms == Polynomial.constant(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({self.to_str()!r})"

    def __str__(self) -> str:
        return self.to_str()

    def to_str(self, names: Mapping[VarId, str] | None = None,
               order: MonomialOrder = DEFAULT_ORDER) -> str:
        return serialize(self, names=names, order=order)


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def var(gen: int, level: int = 1) -> Polynomial:
    return Polynomial.var(gen, level)


def const(c: int | Fraction) -> Polynomial:
    return Polynomial.constant(c)


def format_scalar(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def parse_scalar(text: str) -> Fraction:
    """Parse an integer or ``p/q`` rational literal."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational literal: {text!r}") from exc


def _mono_str(m: Monomial, names: Mapping[VarId, str] | None) -> str:
    parts = []
    for v, e in m.items:
        s = names.get(v, str(v)) if names else str(v)
        parts.append(s if e == 1 else f"{s}^{e}")
    return "*".join(parts)


def serialize(p: Polynomial, names: Mapping[VarId, str] | None = None,
              order: MonomialOrder = DEFAULT_ORDER) -> str:
    """Canonical text form, terms from largest to smallest monomial."""
    if p.is_zero():
        return "0"
    out = []
    for i, (m, c) in enumerate(p.sorted_terms(order)):
        neg = c < 0
        a = -c if neg else c
        if not m.items:
            body = format_scalar(a)
        elif a == 1:
            body = _mono_str(m, names)
        else:
            body = f"{format_scalar(a)}*{_mono_str(m, names)}"
        if i == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


# ---------- parsing ----------


class ParseError(ValueError):
    """Malformed polynomial text; ``pos`` is the 0-based character offset."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at column {pos + 1}")
        self.message = message
        self.pos = pos


_TOKEN_KINDS = (
    ("num", re.compile(r"\d+")),
    ("var", re.compile(r"x\d+_\d+(?![A-Za-z0-9_])")),
    ("name", re.compile(r"[A-Za-z][A-Za-z0-9_]*")),
    ("op", re.compile(r"[-+*^/()]")),
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        for kind, rx in _TOKEN_KINDS:
            mt = rx.match(text, pos)
            if mt:
                tokens.append((kind, mt.group(), pos))
                pos = mt.end()
                break
        else:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, names: Mapping[str, VarId] | None):
        self.tokens = _tokenize(text)
        self.i = 0
        self.names = names or {}

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, str, int]:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect_op(self, op: str) -> None:
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)

    def expr(self) -> Polynomial:
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            acc = -self.term() if val == "-" else self.term()
        else:
            acc = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                acc = acc - rhs if val == "-" else acc + rhs
            else:
                return acc

    def term(self) -> Polynomial:
        acc = self.power()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.power()
            elif kind == "op" and val == "/":
                self.take()
                kind, val, pos = self.take()
                if kind != "num":
                    raise ParseError("can only divide by an integer literal", pos)
                if int(val) == 0:
                    raise ParseError("division by zero", pos)
                acc = acc.scale(Fraction(1, int(val)))
            else:
                return acc

    def power(self) -> Polynomial:
        kind, val, pos = self.peek()
        if kind == "op" and val == "-":
            self.take()
            return -self.power()
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "num":
                raise ParseError("exponent must be a non-negative integer", pos)
            base = base ** int(val)
        return base

    def atom(self) -> Polynomial:
        kind, val, pos = self.take()
        if kind == "num":
            k2, v2, _ = self.peek()
            if k2 == "op" and v2 == "/":
                self.take()
                k3, v3, p3 = self.take()
                if k3 != "num":
                    raise ParseError("expected integer denominator", p3)
                if int(v3) == 0:
                    raise ParseError("zero denominator", p3)
                return Polynomial.constant(Fraction(int(val), int(v3)))
            return Polynomial.constant(int(val))
        if kind == "var":
            mt = re.fullmatch(r"x(\d+)_(\d+)", val)
            gen, lvl = int(mt.group(1)), int(mt.group(2))
            if gen < 1 or lvl < 1:
                raise ParseError("variable indices must be >= 1", pos)
            return Polynomial.var(gen, lvl)
        if kind == "name":
            if val in self.names:
                v = self.names[val]
                return Polynomial.var(v.gen, v.level)
            raise ParseError(f"unknown name {val!r}", pos)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        if kind == "end":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected {val!r}", pos)


def parse(text: str, names: Mapping[str, VarId] | None = None) -> Polynomial:
    """Parse polynomial text in the ``x{j}_{i}`` grammar.

    ``names`` optionally maps extra identifiers (e.g. ``e``, ``h``) to variables.
    """
    p = _Parser(text, names)
    if p.peek()[0] == "end":
        raise ParseError("empty polynomial", 0)
    result = p.expr()
    kind, val, pos = p.peek()
    if kind != "end":
        raise ParseError(f"unexpected {val!r}", pos)
    return result
