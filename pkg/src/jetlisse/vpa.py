"""Level-0 vertex Poisson structure on jet rings of affine Poisson varieties.

For base elements ``u, v`` the products are ``u_(0) v = {u, v}`` and
``u_(n) v = 0`` for ``n > 0``.  On derivatives,

    u_(n) T^l v = l!/(l-n)! * T^(l-n) {u, v}    (l >= n, else 0),

and every ``u_(n)`` acts on the jet ring as a derivation.  Products
``a_(n)`` for arbitrary jet polynomials ``a`` are recovered from the
singular part of ``e^(zT) (-d/dz)^k u_-(-z) a`` (see :func:`minus_field`).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .arith import DEFAULT_ORDER, Monomial, MonomialOrder, Polynomial, VarId
from .diffalg import DifferentialRing, JetIdeal, Presentation, _dedupe, weight_window
from .groebner import GroebnerBasis, buchberger, ideal_contains


class JacobiViolation(ValueError):
    def __init__(self, triple: tuple[int, int, int], residual: Polynomial):
        super().__init__(f"Jacobi identity fails on generators {triple}: cyclic sum = {residual}")
        self.triple = triple
        self.residual = residual


class NonTermination(RuntimeError):
    pass


def _check_base(p: Polynomial, r: int, what: str) -> None:
    for v in p.variables():
        if v.level != 1 or not 1 <= v.gen <= r:
            raise ValueError(f"{what} must be a polynomial in x1_1..x{r}_1, got {v}")


@dataclass(frozen=True)
class PoissonStructure:
    """Bracket table ``{x^a, x^b}`` for ``a < b`` on ``r`` base generators."""

    r: int
    table: tuple[tuple[tuple[int, int], Polynomial], ...] = ()
    validated: bool = False
    _lookup: dict = field(default_factory=dict, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        for (a, b), p in self.table:
            if not 1 <= a < b <= self.r:
                raise ValueError(f"bad bracket index pair ({a}, {b})")
            _check_base(p, self.r, f"{{x{a}, x{b}}}")
        self._lookup.update(dict(self.table))

    @classmethod
    def from_entries(cls, r: int, entries: Mapping[tuple[int, int], Polynomial]) -> "PoissonStructure":
        """Build from ``{(a, b): poly}``; ``(b, a)`` entries are negated, missing pairs are zero."""
        merged: dict[tuple[int, int], Polynomial] = {}
        for (a, b), p in entries.items():
            if a == b:
                if not p.is_zero():
                    raise ValueError(f"{{x{a}, x{a}}} must vanish")
                continue
            key, val = ((a, b), p) if a < b else ((b, a), -p)
            if key in merged and merged[key] != val:
                raise ValueError(f"conflicting entries for {{x{key[0]}, x{key[1]}}}")
            merged[key] = val
        table = tuple(sorted((k, v) for k, v in merged.items() if not v.is_zero()))
        return cls(r, table)

    @classmethod
    def trivial(cls, r: int) -> "PoissonStructure":
        return cls(r, (), True)

    def generator_bracket(self, a: int, b: int) -> Polynomial:
        if a == b:
            return Polynomial()
        if a < b:
            return self._lookup.get((a, b), Polynomial())
        return -self._lookup.get((b, a), Polynomial())

    def bracket(self, u: Polynomial, v: Polynomial) -> Polynomial:
        """``{u, v}`` extended from the table by the Leibniz rule in both slots."""
        _check_base(u, self.r, "bracket argument")
        _check_base(v, self.r, "bracket argument")
        out = Polynomial()
        du = {x.gen: u.diff(x) for x in u.variables()}
        dv = {x.gen: v.diff(x) for x in v.variables()}
        for a, pa in du.items():
            for b, pb in dv.items():
                g = self.generator_bracket(a, b)
                if not g.is_zero():
                    out = out + pa * pb * g
        return out

    def is_trivial(self) -> bool:
        return not self.table


def jacobi_residual(ps: PoissonStructure, a: int, b: int, c: int) -> Polynomial:
    x = [None] + [Polynomial.var(j, 1) for j in range(1, ps.r + 1)]
    br = ps.bracket
    return (br(x[a], br(x[b], x[c])) + br(x[b], br(x[c], x[a]))
            + br(x[c], br(x[a], x[b])))


def validate_poisson(ps: PoissonStructure) -> PoissonStructure:
    """Check the Jacobi identity on every generator triple; return a validated copy."""
    for a in range(1, ps.r + 1):
        for b in range(a + 1, ps.r + 1):
            for c in range(b + 1, ps.r + 1):
                res = jacobi_residual(ps, a, b, c)
                if not res.is_zero():
                    raise JacobiViolation((a, b, c), res)
    return PoissonStructure(ps.r, ps.table, True)


def _apply_derivation(target: Polynomial, on_var: Callable[[VarId], Polynomial]) -> Polynomial:
    """Extend ``on_var`` to ``target`` as a derivation."""
    out = Polynomial()
    for v in sorted(target.variables()):
        img = on_var(v)
        if img.is_zero():
            continue
        out = out + target.diff(v) * img
    return out


class VpaContext:
    """A jet ring together with a Poisson structure on its base generators.

    Products are cached per instance, so reuse one context for a batch of
    computations.  ``strict=False`` admits unvalidated bracket tables (used
    for negative controls).
    """

    def __init__(self, poisson: PoissonStructure, ring: Optional[DifferentialRing] = None,
                 strict: bool = True):
        if ring is None:
            ring = DifferentialRing(Presentation(poisson.r), None)
        if ring.r != poisson.r:
            raise ValueError("ring and Poisson structure disagree on the number of generators")
        if strict and not poisson.validated:
            poisson = validate_poisson(poisson)
        self.ring = ring
        self.poisson = poisson
        self._base_var: dict = {}
        self._field: dict = {}
        self._var_prod: dict = {}

    @property
    def r(self) -> int:
        return self.poisson.r

    def bracket(self, u: Polynomial, v: Polynomial) -> Polynomial:
        return self.poisson.bracket(u, v)

    def derive_n(self, p: Polynomial, n: int) -> Polynomial:
        return self.ring.derive_n(p, n)

    # u_(n) for base u
    def _base_on_var(self, u: Polynomial, n: int, v: VarId) -> Polynomial:
        key = (u, n, v)
        hit = self._base_var.get(key)
        if hit is not None:
            return hit
        l = v.level - 1
        if l < n:
            res = Polynomial()
        else:
            # x^b_(-l-1) = T^l x^b / l!
            br = self.bracket(u, Polynomial.var(v.gen, 1))
            res = self.derive_n(br, l - n).scale(Fraction(1, factorial(l - n)))
        self._base_var[key] = res
        return res

    def nth_product_base(self, u: Polynomial, n: int, target: Polynomial) -> Polynomial:
        """``u_(n) target`` for a base element ``u`` and any jet polynomial ``target``."""
        if n < 0:
            raise ValueError("n must be >= 0")
        _check_base(u, self.r, "u")
        return _apply_derivation(target, lambda v: self._base_on_var(u, n, v))

    def minus_field(self, a: Polynomial, k: int, u: Polynomial) -> list[tuple[int, Polynomial]]:
        """Nonzero coefficients ``(n, a_(n) T^k u)`` of ``Sing(e^(zT) (-d/dz)^k u_-(-z) a)``.

        With ``c_m = u_(m) a``:
        ``a_(n) T^k u = sum_m (-1)^(m+1) (m+k)!/(m! (m+k-n)!) T^(m+k-n) c_m``
        over ``m >= max(0, n-k)``.  The sum is finite because ``u_(m)`` kills
        every variable of level ``<= m``.
        """
        if k < 0:
            raise ValueError("k must be >= 0")
        _check_base(u, self.r, "u")
        key = (a, k, u)
        hit = self._field.get(key)
        if hit is not None:
            return hit
        top = a.max_level()
        cs = [self.nth_product_base(u, m, a) for m in range(top)]
        out = []
        for n in range(top + k):
            acc = Polynomial()
            for m in range(max(0, n - k), top):
                if cs[m].is_zero():
                    continue
                j = m + k - n
                coef = Fraction((-1) ** (m + 1) * factorial(m + k), factorial(m) * factorial(j))
                acc = acc + self.derive_n(cs[m], j).scale(coef)
            if not acc.is_zero():
                out.append((n, acc))
        self._field[key] = out
        return out

    def _product_on_var(self, a: Polynomial, n: int, v: VarId) -> Polynomial:
        key = (a, n, v)
        hit = self._var_prod.get(key)
        if hit is not None:
            return hit
        k = v.level - 1
        coeffs = dict(self.minus_field(a, k, Polynomial.var(v.gen, 1)))
        res = coeffs.get(n, Polynomial()).scale(Fraction(1, factorial(k)))
        self._var_prod[key] = res
        return res

    def nth_product(self, a: Polynomial, n: int, b: Polynomial) -> Polynomial:
        """``a_(n) b`` for arbitrary jet polynomials, ``n >= 0``."""
        if n < 0:
            raise ValueError("n must be >= 0")
        if a.is_constant() or b.is_constant():
            return Polynomial()
        return _apply_derivation(b, lambda v: self._product_on_var(a, n, v))

    # ideals
    def base_variables(self) -> tuple[VarId, ...]:
        return tuple(VarId(j, 1) for j in range(1, self.r + 1))

    def poisson_closure(self, gens: Sequence[Polynomial], max_rounds: int = 64,
                        order: MonomialOrder = DEFAULT_ORDER) -> GroebnerBasis:
        """Smallest ideal containing ``gens`` and stable under ``{x^a, -}`` for every ``a``."""
        for g in gens:
            _check_base(g, self.r, "closure generator")
        xs = [Polynomial.var(j, 1) for j in range(1, self.r + 1)]
        gb = buchberger(gens, order, variables=self.base_variables())
        for _ in range(max_rounds):
            new = _dedupe(self.bracket(x, g) for x in xs for g in gb.basis)
            new = tuple(p for p in new if not gb.contains(p))
            if not new:
                return gb
            gb = buchberger(list(gb.basis) + list(new), order, variables=self.base_variables())
        raise NonTermination(f"Poisson closure did not stabilize within {max_rounds} rounds "
                             f"(current basis has {len(gb)} elements)")

    def differential_closure(self, gens: Sequence[Polynomial], w: int) -> JetIdeal:
        """Weight-``w`` truncation of the smallest ``T``-stable ideal containing ``gens``."""
        ring = DifferentialRing(self.ring.presentation, None)
        out = weight_window(ring, gens, w)
        return JetIdeal(ring, _dedupe(out), max_level=max(w, 1), max_weight=w,
                        note=f"T-closure truncated at weight {w}")


# ---------- module-level API ----------


def bracket(ctx: VpaContext, u: Polynomial, v: Polynomial) -> Polynomial:
    return ctx.bracket(u, v)


def nth_product_base(ctx: VpaContext, u: Polynomial, n: int, target: Polynomial) -> Polynomial:
    return ctx.nth_product_base(u, n, target)


def minus_field(ctx: VpaContext, a: Polynomial, k: int, u: Polynomial) -> list[tuple[int, Polynomial]]:
    return ctx.minus_field(a, k, u)


def nth_product(ctx: VpaContext, a: Polynomial, n: int, b: Polynomial) -> Polynomial:
    return ctx.nth_product(a, n, b)


def poisson_closure(ctx: VpaContext, gens: Sequence[Polynomial], max_rounds: int = 64) -> GroebnerBasis:
    return ctx.poisson_closure(gens, max_rounds)


def differential_closure(ctx: VpaContext, gens: Sequence[Polynomial], w: int) -> JetIdeal:
    return ctx.differential_closure(gens, w)


# ---------- radicals ----------


def divide_exact(a: Polynomial, b: Polynomial) -> Polynomial:
    """``a / b`` when ``b`` divides ``a``; raises ``ValueError`` otherwise."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    order = MonomialOrder("lex")
    lb = b.leading_monomial(order)
    cb = b.terms[lb]
    q = Polynomial()
    r = a
    while not r.is_zero():
        lr = r.leading_monomial(order)
        if not lb.divides(lr):
            raise ValueError(f"{b} does not divide {a}")
        t = Polynomial.monomial(lr / lb, r.terms[lr] / cb)
        q = q + t
        r = r - t * b
    return q


_AUX = VarId(0, 0)


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic gcd, via ``lcm = <f> ∩ <g>`` (elimination of an auxiliary variable)."""
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    if f.is_constant() or g.is_constant():
        return Polynomial.constant(1)
    t = Polynomial.var(_AUX.gen, _AUX.level)
    order = MonomialOrder("lex", (_AUX,))
    gb = buchberger([t * f, (1 - t) * g], order)
    lcm = [p for p in gb.basis if _AUX not in p.variables()]
    if len(lcm) != 1:
        raise ArithmeticError("intersection of principal ideals was not principal")
    return divide_exact(f * g, lcm[0]).monic()


def radical_principal(p: Polynomial) -> Polynomial:
    """Squarefree part of ``p``: generator of the radical of ``<p>``, made monic."""
    if p.is_zero():
        raise ValueError("the radical of the zero ideal is not principal-computable here")
    if p.is_constant():
        return Polynomial.constant(1)
    g = p
    for v in sorted(p.variables()):
        g = poly_gcd(g, p.diff(v))
        if g.is_constant():
            break
    return divide_exact(p, g).monic()


# ---------- axiom checks ----------


def random_element(rng: random.Random, r: int, max_weight: int, max_terms: int = 3,
                   max_coeff: int = 3) -> Polynomial:
    """Random jet polynomial whose monomials have weight <= ``max_weight``."""
    out = Polynomial()
    for _ in range(rng.randint(1, max_terms)):
        budget = rng.randint(0, max_weight)
        items = []
        while budget > 0:
            lvl = rng.randint(1, budget)
            items.append((VarId(rng.randint(1, r), lvl), 1))
            budget -= lvl
            if rng.random() < 0.35:
                break
        c = rng.choice([i for i in range(-max_coeff, max_coeff + 1) if i])
        out = out + Polynomial.monomial(Monomial(items), c)
    return out


@dataclass
class AxiomReport:
    passed: bool
    checked: dict[str, int]
    counterexample: Optional[dict] = None

    def as_dict(self) -> dict:
        out = {"passed": self.passed, "checked": dict(self.checked)}
        if self.counterexample:
            out["counterexample"] = dict(self.counterexample)
        return out


AXIOMS = ("translation", "skew_symmetry", "commutator", "leibniz")


def _axiom_sides(ctx: VpaContext, axiom: str, a: Polynomial, b: Polynomial, c: Polynomial,
                 m: int, n: int) -> tuple[Polynomial, Polynomial]:
    prod = ctx.nth_product
    if axiom == "translation":
        lhs = prod(ctx.ring.derive(a), n, b)
        rhs = prod(a, n - 1, b).scale(-n) if n > 0 else Polynomial()
        return lhs, rhs
    if axiom == "skew_symmetry":
        lhs = prod(a, n, b)
        rhs = Polynomial()
        top = a.max_weight() + b.max_weight()
        for j in range(0, max(top - n, 0) + 1):
            t = prod(b, n + j, a)
            if t.is_zero():
                continue
            coef = Fraction((-1) ** (n + j + 1), factorial(j))
            rhs = rhs + ctx.derive_n(t, j).scale(coef)
        return lhs, rhs
    if axiom == "commutator":
        lhs = prod(a, m, prod(b, n, c)) - prod(b, n, prod(a, m, c))
        rhs = Polynomial()
        for j in range(m + 1):
            ab = prod(a, j, b)
            if not ab.is_zero():
                rhs = rhs + prod(ab, m + n - j, c).scale(comb(m, j))
        return lhs, rhs
    if axiom == "leibniz":
        lhs = prod(a, n, b * c)
        rhs = prod(a, n, b) * c + b * prod(a, n, c)
        return lhs, rhs
    raise ValueError(f"unknown axiom {axiom!r}")


def check_vpa_axioms(ctx: VpaContext, samples: int = 200, seed: int = 0, max_weight: int = 4,
                     max_mode: int = 3) -> AxiomReport:
    """Check the four vertex Poisson axioms on seeded random jet polynomials.

    Each sample draws ``a, b, c`` of weight at most ``max_weight`` and modes
    ``m, n <= max_mode``; the first ``r`` samples use bare generators so that
    base-level defects (a bad bracket table) are always exercised.  Stops at
    the first failure.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = random.Random(seed)
    checked = {ax: 0 for ax in AXIOMS}
    r = ctx.r
    names = ctx.ring.presentation.display_names(max_weight * 2 + max_mode + 2)
    for s in range(samples):
        if s < r:
            a = Polynomial.var(s + 1, 1)
            b = Polynomial.var((s + 1) % r + 1, 1)
            c = Polynomial.var((s + 2) % r + 1, 1)
            m, n = 0, 0
        else:
            a = random_element(rng, r, max_weight)
            b = random_element(rng, r, max_weight)
            c = random_element(rng, r, max_weight)
            m, n = rng.randint(0, max_mode), rng.randint(0, max_mode)
        for ax in AXIOMS:
            lhs, rhs = _axiom_sides(ctx, ax, a, b, c, m, n)
            checked[ax] += 1
            if lhs != rhs:
                return AxiomReport(False, checked, {
                    "axiom": ax, "sample": s, "m": m, "n": n,
                    "a": a.to_str(names), "b": b.to_str(names), "c": c.to_str(names),
                    "lhs": lhs.to_str(names), "rhs": rhs.to_str(names),
                })
    return AxiomReport(True, checked)
