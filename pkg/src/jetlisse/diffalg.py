"""Differential polynomial rings and jet-scheme ideals of affine presentations.

The derivation acts on jet variables by ``T x^j_(-i) = i * x^j_(-i-1)``; in a
ring truncated at order ``m`` the top level ``m + 1`` is killed instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .arith import DEFAULT_ORDER, Monomial, MonomialOrder, Polynomial, VarId


@dataclass(frozen=True)
class Presentation:
    """``C[x^1..x^r] / <relations>`` with relations in level-1 variables."""

    num_generators: int
    relations: tuple[Polynomial, ...] = ()
    names: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.num_generators < 1:
            raise ValueError("a presentation needs at least one generator")
        object.__setattr__(self, "relations", tuple(self.relations))
        object.__setattr__(self, "names", tuple(self.names))
        if self.names and len(self.names) != self.num_generators:
            raise ValueError("need one name per generator")
        for f in self.relations:
            for v in f.variables():
                if v.level != 1 or not 1 <= v.gen <= self.num_generators:
                    raise ValueError(f"relation {f} uses {v}, outside the base generators")

    def name_map(self) -> dict[str, VarId]:
        return {n: VarId(j + 1, 1) for j, n in enumerate(self.names)}

    def display_names(self, max_level: int) -> dict[VarId, str]:
        """``VarId -> label`` using generator names when present (``e``, ``e_2``, ...)."""
        if not self.names:
            return {}
        out = {}
        for j, n in enumerate(self.names, start=1):
            out[VarId(j, 1)] = n
            for i in range(2, max_level + 1):
                out[VarId(j, i)] = f"{n}_{i}"
        return out


@dataclass(frozen=True)
class DifferentialRing:
    """Jet polynomial ring of a presentation, truncated at ``order`` or unbounded (``None``)."""

    presentation: Presentation
    order: Optional[int] = None

    def __post_init__(self) -> None:
        if self.order is not None and self.order < 0:
            raise ValueError("truncation order must be >= 0")

    @property
    def r(self) -> int:
        return self.presentation.num_generators

    @property
    def top_level(self) -> Optional[int]:
        return None if self.order is None else self.order + 1

    def variables(self, max_level: Optional[int] = None) -> tuple[VarId, ...]:
        top = self.top_level if max_level is None else max_level
        if top is None:
            raise ValueError("unbounded ring has infinitely many variables; pass max_level")
        return tuple(VarId(j, i) for i in range(1, top + 1) for j in range(1, self.r + 1))

    def _check(self, p: Polynomial) -> None:
        for v in p.variables():
            if not 1 <= v.gen <= self.r:
                raise ValueError(f"{v} is not a variable of this ring")
            if self.order is not None and v.level > self.order + 1:
                raise ValueError(f"{v} exceeds truncation level {self.order + 1}")

    def derive_var(self, v: VarId) -> Polynomial:
        if self.order is not None and v.level >= self.order + 1:
            return Polynomial()
        return Polynomial.var(v.gen, v.level + 1).scale(v.level)

    def derive(self, p: Polynomial) -> Polynomial:
        """``T(p)`` by the Leibniz rule."""
        self._check(p)
        return _derive(p, self.order)

    def derive_n(self, p: Polynomial, n: int) -> Polynomial:
        if n < 0:
            raise ValueError("n must be >= 0")
        self._check(p)
        for _ in range(n):
            if p.is_zero():
                break
            p = _derive(p, self.order)
        return p


def _derive(p: Polynomial, order: Optional[int]) -> Polynomial:
    out: dict = {}
    for m, c in p.items():
        items = m.items
        for v, e in items:
            if order is not None and v.level >= order + 1:
                continue
            up = VarId(v.gen, v.level + 1)
            d = dict(items)
            if e == 1:
                del d[v]
            else:
                d[v] = e - 1
            d[up] = d.get(up, 0) + 1
            k = Monomial._raw(tuple(sorted(d.items())))
            s = out.get(k, 0) + c * e * v.level
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return Polynomial(out)


def derive(ring: DifferentialRing, p: Polynomial) -> Polynomial:
    return ring.derive(p)


def derive_n(ring: DifferentialRing, p: Polynomial, n: int) -> Polynomial:
    return ring.derive_n(p, n)


@dataclass(frozen=True)
class JetIdeal:
    """Generators of a (truncated) jet ideal together with its ambient variables."""

    ring: DifferentialRing
    generators: tuple[Polynomial, ...]
    max_level: int
    max_weight: Optional[int] = None
    note: str = ""

    @property
    def variables(self) -> tuple[VarId, ...]:
        return self.ring.variables(self.max_level)

    def groebner(self, order: MonomialOrder = DEFAULT_ORDER):
        from .groebner import buchberger

        return buchberger(self.generators, order, variables=self.variables)


def _dedupe(polys) -> tuple[Polynomial, ...]:
    seen = set()
    out = []
    for p in polys:
        if p.is_zero() or p in seen:
            continue
        seen.add(p)
        out.append(p)
    return tuple(out)


def jet_ideal(pres: Presentation, m: int) -> JetIdeal:
    """Ideal of the order-``m`` jet scheme: ``T^j f_i`` for ``j = 0..m`` under truncated ``T``."""
    if m < 0:
        raise ValueError("jet order must be >= 0")
    ring = DifferentialRing(pres, m)
    gens = []
    for f in pres.relations:
        g = f
        for j in range(m + 1):
            if g.is_zero():
                break
            gens.append(g)
            g = ring.derive(g)
    return JetIdeal(ring, _dedupe(gens), max_level=m + 1)


def weight_window(ring: DifferentialRing, gens: Sequence[Polynomial], w: int) -> list[Polynomial]:
    """All ``T^j g`` (untruncated unless the ring is) whose terms have weight <= ``w``."""
    out = []
    for g in gens:
        if g.max_weight() > w:
            raise ValueError(f"generator {g} has weight {g.max_weight()} > {w}")
        while not g.is_zero() and g.max_weight() <= w:
            out.append(g)
            g = ring.derive(g)
    return out


def arc_ideal_truncation(pres: Presentation, w: int) -> JetIdeal:
    """Weight-``w`` window of the arc-space ideal ``<T^j f_i ; j >= 0>``.

    Only the derivatives of total weight at most ``w`` are kept, in the
    variables of level ``1..w``; this approximates the infinite jet ideal
    from below, one weight at a time.
    """
    if pres.relations and w < max(f.max_weight() for f in pres.relations):
        raise ValueError("window weight is below the weight of a relation")
    ring = DifferentialRing(pres, None)
    gens = weight_window(ring, pres.relations, w)
    return JetIdeal(ring, _dedupe(gens), max_level=max(w, 1), max_weight=w,
                    note=f"weight-{w} window of the arc-space ideal")


def falling_coefficient(level: int, n: int) -> Fraction:
    """``level * (level+1) * ... * (level+n-1)``: the scalar in ``T^n x_(-level)``."""
    out = 1
    for k in range(level, level + n):
        out *= k
    return Fraction(out)
