"""Buchberger's algorithm, normal forms and dimension of quotient rings."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .arith import DEFAULT_ORDER, ONE_MONOMIAL, Monomial, MonomialOrder, Polynomial, VarId


class NotZeroDimensional(ValueError):
    pass


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced, monic Gröbner basis sorted by decreasing leading monomial."""

    order: MonomialOrder
    basis: tuple[Polynomial, ...]
    variables: frozenset[VarId]
    leading: tuple[Monomial, ...] = field(repr=False, compare=False, default=())

    @property
    def is_unit(self) -> bool:
        return len(self.basis) == 1 and self.basis[0].is_constant()

    @property
    def is_zero_ideal(self) -> bool:
        return not self.basis

    def normal_form(self, p: Polynomial) -> Polynomial:
        return _reduce(p, self.basis, self.leading, self.order)

    def contains(self, p: Polynomial) -> bool:
        return self.normal_form(p).is_zero()

    def __len__(self) -> int:
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)


def _reduce(p: Polynomial, basis: Sequence[Polynomial], leading: Sequence[Monomial],
            order: MonomialOrder) -> Polynomial:
    """Full reduction of ``p``; basis elements must be monic with the given leading monomials."""
    if not basis:
        return p
    key = order.key
    work = dict(p.terms)
    rem: dict[Monomial, Fraction] = {}
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        for g, lm in zip(basis, leading):
            if lm.divides(m):
                q = m / lm
                for gm, gc in g.items():
                    if gm is lm or gm == lm:
                        continue
                    t = gm * q
                    s = work.get(t, 0) - c * gc
                    if s:
                        work[t] = s
                    else:
                        work.pop(t, None)
                break
        else:
            rem[m] = c
    return Polynomial(rem)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = DEFAULT_ORDER) -> Polynomial:
    lf, lg = f.leading_monomial(order), g.leading_monomial(order)
    l = lf.lcm(lg)
    return f.mul_term(l / lf, 1 / f.terms[lf]) - g.mul_term(l / lg, 1 / g.terms[lg])


def buchberger(generators: Iterable[Polynomial], order: MonomialOrder = DEFAULT_ORDER,
               variables: Optional[Iterable[VarId]] = None) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``generators``.

    Pairs are taken by the normal strategy (smallest lcm first) and pruned by
    Buchberger's coprime and chain criteria.  ``variables`` fixes the ambient
    ring; it defaults to the variables appearing in the generators.
    """
    gens = [g for g in generators if not g.is_zero()]
    ambient = frozenset(variables) if variables is not None else frozenset()
    ambient = ambient.union(*(g.variables() for g in gens)) if gens else ambient
    key = order.key

    G: list[Polynomial] = []
    LM: list[Monomial] = []
    pairs: set[tuple[int, int]] = set()

    def add(h: Polynomial) -> None:
        h = h.monic(order)
        G.append(h)
        LM.append(h.leading_monomial(order))
        j = len(G) - 1
        for i in range(j):
            pairs.add((i, j))

    for g in gens:
        h = _reduce(g, G, LM, order)
        if not h.is_zero():
            if h.is_constant():
                return _unit(order, ambient)
            add(h)

    while pairs:
        i, j = min(pairs, key=lambda p: (LM[p[0]].lcm(LM[p[1]]).degree,
                                         key(LM[p[0]].lcm(LM[p[1]])), p))
        pairs.discard((i, j))
        li, lj = LM[i], LM[j]
        if li.is_coprime(lj):
            continue
        l = li.lcm(lj)
        if _chain_criterion(i, j, l, LM, pairs):
            continue
        s = s_polynomial(G[i], G[j], order)
        h = _reduce(s, G, LM, order)
        if h.is_zero():
            continue
        if h.is_constant():
            return _unit(order, ambient)
        add(h)

    return _finalize(G, LM, order, ambient)


def _chain_criterion(i: int, j: int, l: Monomial, LM: list[Monomial],
                     pairs: set[tuple[int, int]]) -> bool:
    for k in range(len(LM)):
        if k == i or k == j:
            continue
        if not LM[k].divides(l):
            continue
        # strict lcms keep the argument inductive, so eliminations never cycle
        if LM[i].lcm(LM[k]) == l or LM[j].lcm(LM[k]) == l:
            continue
        if (min(i, k), max(i, k)) in pairs or (min(j, k), max(j, k)) in pairs:
            continue
        return True
    return False


def _unit(order: MonomialOrder, ambient: frozenset[VarId]) -> GroebnerBasis:
    one = Polynomial.constant(1)
    return GroebnerBasis(order, (one,), ambient, (ONE_MONOMIAL,))


def _finalize(G: list[Polynomial], LM: list[Monomial], order: MonomialOrder,
              ambient: frozenset[VarId]) -> GroebnerBasis:
    key = order.key
    idx = sorted(range(len(G)), key=lambda i: key(LM[i]))
    minimal: list[int] = []
    for i in idx:
        if not any(LM[k].divides(LM[i]) for k in minimal):
            minimal.append(i)
    polys = [G[i] for i in minimal]
    lms = [LM[i] for i in minimal]
    reduced = []
    for n, g in enumerate(polys):
        others = polys[:n] + polys[n + 1:]
        olms = lms[:n] + lms[n + 1:]
        tail = _reduce(g - Polynomial.monomial(lms[n]), others, olms, order)
        reduced.append(tail + Polynomial.monomial(lms[n]))
    pairs = sorted(zip(lms, reduced), key=lambda t: key(t[0]), reverse=True)
    return GroebnerBasis(order, tuple(p for _, p in pairs), ambient,
                         tuple(m for m, _ in pairs))


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    return gb.normal_form(p)


def ideal_contains(gb: GroebnerBasis, gens: Iterable[Polynomial]) -> bool:
    """True iff every polynomial of ``gens`` lies in the ideal of ``gb``."""
    return all(gb.contains(g) for g in gens)


def ideals_equal(a: GroebnerBasis, b: GroebnerBasis) -> bool:
    return ideal_contains(a, b.basis) and ideal_contains(b, a.basis)


# ---------- dimension ----------


@dataclass(frozen=True)
class DimensionReport:
    krull_dimension: int
    zero_dimensional: bool
    quotient_dimension: Optional[int] = None
    independent_set: tuple[VarId, ...] = ()
    num_variables: int = 0

    @property
    def unit_ideal(self) -> bool:
        return self.krull_dimension == -1

    def as_dict(self) -> dict:
        out = {
            "krull_dimension": self.krull_dimension,
            "zero_dimensional": self.zero_dimensional,
            "num_variables": self.num_variables,
        }
        if self.unit_ideal:
            out["unit_ideal"] = True
        if self.quotient_dimension is not None:
            out["quotient_dimension"] = self.quotient_dimension
        if self.independent_set:
            out["independent_set"] = [str(v) for v in self.independent_set]
        return out


def _sorted_vars(gb: GroebnerBasis) -> list[VarId]:
    return sorted(gb.variables, key=gb.order.rank, reverse=True)


def max_independent_set(gb: GroebnerBasis) -> tuple[VarId, ...]:
    """Largest variable subset containing no leading-monomial support.

    Depth-first search with a size bound; variables outside every leading
    monomial are always included.
    """
    supports = {frozenset(m.variables()) for m in gb.leading}
    supports = [s for s in supports if not any(t < s for t in supports)]
    vars_ = _sorted_vars(gb)
    constrained = [v for v in vars_ if any(v in s for s in supports)]
    free = [v for v in vars_ if v not in set(constrained)]

    best: list[VarId] = []

    def dfs(pos: int, chosen: list[VarId]) -> None:
        nonlocal best
        if len(chosen) + len(constrained) - pos <= len(best):
            return
        if pos == len(constrained):
            best = list(chosen)
            return
        v = constrained[pos]
        chosen.append(v)
        cs = set(chosen)
        if not any(s <= cs for s in supports):
            dfs(pos + 1, chosen)
        chosen.pop()
        dfs(pos + 1, chosen)

    dfs(0, [])
    return tuple(free + best)


def is_zero_dimensional(gb: GroebnerBasis) -> bool:
    if gb.is_unit:
        return False
    pure = {m.items[0][0] for m in gb.leading if len(m.items) == 1}
    return all(v in pure for v in gb.variables)


def krull_dimension(gb: GroebnerBasis) -> DimensionReport:
    n = len(gb.variables)
    if gb.is_unit:
        return DimensionReport(-1, False, None, (), n)
    if is_zero_dimensional(gb):
        return DimensionReport(0, True, len(quotient_basis(gb)), (), n)
    ind = max_independent_set(gb)
    return DimensionReport(len(ind), False, None, ind, n)


def quotient_basis(gb: GroebnerBasis) -> list[Monomial]:
    """Standard monomials of a zero-dimensional ideal, in increasing order."""
    if not is_zero_dimensional(gb):
        raise NotZeroDimensional("quotient ring is not finite-dimensional")
    vars_ = _sorted_vars(gb)
    bounds = {m.items[0][0]: m.items[0][1] for m in gb.leading if len(m.items) == 1}
    out: list[Monomial] = []

    def rec(k: int, exps: list[tuple[VarId, int]]) -> None:
        if k == len(vars_):
            out.append(Monomial(exps))
            return
        v = vars_[k]
        for e in range(bounds[v]):
            cand = exps + [(v, e)] if e else exps
            mono = Monomial(cand)
            if any(lm.divides(mono) for lm in gb.leading):
                break
            rec(k + 1, cand)

    rec(0, [])
    out.sort(key=gb.order.key)
    return out
