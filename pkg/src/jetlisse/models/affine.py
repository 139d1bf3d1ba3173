"""Lie algebra data, Kirillov-Kostant brackets and the affine closure argument."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from ..arith import Monomial, Polynomial, VarId
from ..groebner import ideal_contains
from ..vpa import PoissonStructure, VpaContext, radical_principal, validate_poisson


class LieAlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class LieAlgebraData:
    """Structure constants ``[x_i, x_j] = sum_k c[(i, j)][k] x_k`` (1-based indices)."""

    dimension: int
    names: tuple[str, ...]
    constants: tuple[tuple[tuple[int, int], tuple[tuple[int, Fraction], ...]], ...]

    @classmethod
    def from_triples(cls, names: Iterable[str], triples: Iterable[tuple[int, int, int, Fraction]],
                     validate: bool = True) -> "LieAlgebraData":
        """``(i, j, k, value)`` means ``[x_i, x_j]`` has ``value`` on ``x_k``.

        Entries for ``(j, i)`` are implied by antisymmetry; an explicit one
        must agree.
        """
        names = tuple(names)
        d = len(names)
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        explicit: dict[tuple[int, int, int], Fraction] = {}
        for i, j, k, val in triples:
            for idx in (i, j, k):
                if not 1 <= idx <= d:
                    raise LieAlgebraError(f"index {idx} outside 1..{d}")
            val = Fraction(val)
            if (i, j, k) in explicit and explicit[(i, j, k)] != val:
                raise LieAlgebraError(f"conflicting constants for [{names[i-1]}, {names[j-1]}]")
            explicit[(i, j, k)] = val
        for (i, j, k), val in explicit.items():
            if i == j:
                if val:
                    raise LieAlgebraError(f"[{names[i-1]}, {names[i-1]}] must vanish")
                continue
            back = explicit.get((j, i, k))
            if back is not None and back != -val:
                raise LieAlgebraError(
                    f"antisymmetry fails for [{names[i-1]}, {names[j-1]}] on {names[k-1]}")
            a, b, s = (i, j, val) if i < j else (j, i, -val)
            if val:
                table.setdefault((a, b), {})[k] = s
        consts = tuple(sorted((key, tuple(sorted(v.items()))) for key, v in table.items()))
        data = cls(d, names, consts)
        if validate:
            data.validate()
        return data

    def bracket_coeffs(self, i: int, j: int) -> dict[int, Fraction]:
        if i == j:
            return {}
        for key, vals in self.constants:
            if key == (min(i, j), max(i, j)):
                sign = 1 if i < j else -1
                return {k: sign * v for k, v in vals}
        return {}

    def _bracket_vec(self, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for i, a in u.items():
            for j, b in v.items():
                for k, c in self.bracket_coeffs(i, j).items():
                    out[k] = out.get(k, 0) + a * b * c
        return {k: c for k, c in out.items() if c}

    def validate(self) -> None:
        d = self.dimension

        def e(n: int) -> dict[int, Fraction]:
            return {n: Fraction(1)}

        for i in range(1, d + 1):
            for j in range(i + 1, d + 1):
                for k in range(j + 1, d + 1):
                    s: dict[int, Fraction] = {}
                    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                        for key, val in self._bracket_vec(e(a), self._bracket_vec(e(b), e(c))).items():
                            s[key] = s.get(key, 0) + val
                    if any(s.values()):
                        raise LieAlgebraError(
                            f"Jacobi identity fails on ({self.names[i-1]}, {self.names[j-1]}, "
                            f"{self.names[k-1]})")

    def index(self, name: str) -> int:
        try:
            return self.names.index(name) + 1
        except ValueError:
            raise LieAlgebraError(f"unknown basis element {name!r}") from None

    def name_map(self) -> dict[str, VarId]:
        return {n: VarId(i, 1) for i, n in enumerate(self.names, start=1)}


def sl2() -> LieAlgebraData:
    """``sl_2`` on the ordered basis ``(e, h, f)``: ``[h,e]=2e, [h,f]=-2f, [e,f]=h``."""
    return LieAlgebraData.from_triples(("e", "h", "f"), [(2, 1, 1, 2), (2, 3, 3, -2), (1, 3, 2, 1)])


def abelian(n: int, prefix: str = "a") -> LieAlgebraData:
    return LieAlgebraData.from_triples(tuple(f"{prefix}{i}" for i in range(1, n + 1)), [])


def sl_n(n: int) -> LieAlgebraData:
    """``sl_n`` on matrix units ``e{i}{j}`` (``i != j``) and ``h{i} = E_ii - E_{i+1,i+1}``."""
    if n < 2:
        raise ValueError("n must be >= 2")
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    names = [f"e{i+1}{j+1}" for i, j in off] + [f"h{i+1}" for i in range(n - 1)]
    mats = []
    for i, j in off:
        m = [[0] * n for _ in range(n)]
        m[i][j] = 1
        mats.append(m)
    for i in range(n - 1):
        m = [[0] * n for _ in range(n)]
        m[i][i], m[i + 1][i + 1] = 1, -1
        mats.append(m)

    def mul(a, b):
        return [[sum(a[r][t] * b[t][c] for t in range(n)) for c in range(n)] for r in range(n)]

    def coords(m) -> dict[int, Fraction]:
        out = {}
        for idx, (i, j) in enumerate(off):
            if m[i][j]:
                out[idx + 1] = Fraction(m[i][j])
        acc = Fraction(0)
        for i in range(n - 1):
            acc += m[i][i]
            if acc:
                out[len(off) + i + 1] = acc
        return out

    triples = []
    for a in range(len(mats)):
        for b in range(a + 1, len(mats)):
            p, q = mul(mats[a], mats[b]), mul(mats[b], mats[a])
            comm = [[p[r][c] - q[r][c] for c in range(n)] for r in range(n)]
            for k, v in coords(comm).items():
                triples.append((a + 1, b + 1, k, v))
    return LieAlgebraData.from_triples(names, triples)


BUILTINS = {"sl2": sl2, "sl3": lambda: sl_n(3)}


def kirillov_kostant(data: LieAlgebraData) -> PoissonStructure:
    """Linear Poisson structure ``{x^i, x^j} = sum_k c^k_ij x^k`` on ``C[g*]``, validated."""
    entries = {}
    for (i, j), vals in data.constants:
        entries[(i, j)] = sum((Polynomial.var(k, 1).scale(v) for k, v in vals), Polynomial())
    return validate_poisson(PoissonStructure.from_entries(data.dimension, entries))


@dataclass
class ClosureReport:
    root: str
    power: int
    radical: Polynomial
    closure: tuple[Polynomial, ...]
    contains_all: bool

    @property
    def verdict(self) -> str:
        return "associated variety = {0}" if self.contains_all else "associated variety != {0}"

    def as_dict(self, names=None) -> dict:
        return {
            "root_vector": self.root,
            "power": self.power,
            "radical_generator": self.radical.to_str(names),
            "closure_basis": [p.to_str(names) for p in self.closure],
            "closure_is_augmentation_ideal": self.contains_all,
            "verdict": self.verdict,
        }


def integrable_closure_check(data: LieAlgebraData, root: int | str, power: int = 1,
                             max_rounds: int = 64) -> ClosureReport:
    """Radical of ``<x_root^power>``, closed under brackets; does it contain all of ``g``?"""
    if power < 1:
        raise ValueError("power must be >= 1")
    idx = data.index(root) if isinstance(root, str) else root
    if not 1 <= idx <= data.dimension:
        raise LieAlgebraError(f"root index {idx} outside 1..{data.dimension}")
    ctx = VpaContext(kirillov_kostant(data))
    rad = radical_principal(Polynomial.var(idx, 1) ** power)
    gb = ctx.poisson_closure([rad], max_rounds)
    gens = [Polynomial.var(k, 1) for k in range(1, data.dimension + 1)]
    return ClosureReport(data.names[idx - 1], power, rad, gb.basis, ideal_contains(gb, gens))


def jet_monomial_counts(num_generators: int, max_weight: int) -> list[int]:
    """Number of monomials of each weight ``0..max_weight`` in the jet variables, by enumeration."""
    vars_ = [VarId(j, i) for i in range(1, max_weight + 1) for j in range(1, num_generators + 1)]
    seen: list[set[Monomial]] = [set() for _ in range(max_weight + 1)]
    seen[0].add(Monomial())
    for w in range(1, max_weight + 1):
        for v in vars_:
            if v.level > w:
                continue
            for m in seen[w - v.level]:
                seen[w].add(m * Monomial([(v, 1)]))
    return [len(s) for s in seen]


def colored_partition_counts(colors: int, max_weight: int) -> list[int]:
    """Coefficients of ``prod_{n>=1} (1 - q^n)^(-colors)`` up to ``q^max_weight``."""
    series = [1] + [0] * max_weight
    for n in range(1, max_weight + 1):
        for _ in range(colors):
            for d in range(n, max_weight + 1):
                series[d] += series[d - n]
    return series


@dataclass
class GradedDimsReport:
    dimension: int
    level: Optional[str]
    rows: list[tuple[int, int, int]]

    @property
    def all_equal(self) -> bool:
        return all(a == b for _, a, b in self.rows)

    def as_dict(self) -> dict:
        return {
            "lie_dimension": self.dimension,
            "level": self.level,
            "rows": [{"weight": w, "jet_ring": a, "pbw": b, "equal": a == b} for w, a, b in self.rows],
            "all_equal": self.all_equal,
        }


def graded_dims_jet_vs_pbw(data: LieAlgebraData, max_weight: int,
                           level: Optional[Fraction] = None) -> GradedDimsReport:
    """Weight-by-weight dimensions of ``C[g*_inf]`` versus ``S(g[t^-1]t^-1)``.

    ``level`` is echoed only: neither side depends on it.
    """
    if max_weight < 0:
        raise ValueError("max_weight must be >= 0")
    jet = jet_monomial_counts(data.dimension, max_weight)
    pbw = colored_partition_counts(data.dimension, max_weight)
    lv = None if level is None else str(Fraction(level))
    return GradedDimsReport(data.dimension, lv, [(w, jet[w], pbw[w]) for w in range(max_weight + 1)])
