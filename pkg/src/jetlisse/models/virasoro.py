"""Virasoro vacuum and highest-weight modules by exact commutator straightening.

States are PBW monomials ``L_{-n1} ... L_{-nk} |v>`` with ``n1 >= ... >= nk``,
stored as descending tuples.  In the vacuum module ``L_{-1}|0> = 0`` so the
basis uses parts ``>= 2``; a highest-weight (Verma) module uses parts ``>= 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterator, Optional

from ..arith import Polynomial
from ..groebner import GroebnerBasis, buchberger
from ..arith import VarId
from ..linalg import determinant, nullspace

State = tuple[int, ...]
Vector = dict[State, Fraction]


def minimal_central_charge(p: int, q: int) -> Fraction:
    """``1 - 6 (p - q)^2 / (p q)`` for coprime ``p, q >= 2``."""
    if not (isinstance(p, int) and isinstance(q, int)) or p < 2 or q < 2:
        raise ValueError("p and q must be integers >= 2")
    if gcd(p, q) != 1:
        raise ValueError(f"p={p} and q={q} are not coprime")
    return 1 - Fraction(6 * (p - q) ** 2, p * q)


@dataclass(frozen=True)
class VirasoroParams:
    c: Fraction
    pq: Optional[tuple[int, int]] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "c", Fraction(self.c))
        if self.pq is not None and minimal_central_charge(*self.pq) != self.c:
            raise ValueError(f"c={self.c} does not match minimal pair {self.pq}")

    @classmethod
    def minimal(cls, p: int, q: int) -> "VirasoroParams":
        return cls(minimal_central_charge(p, q), (p, q))


def partitions(n: int, min_part: int = 1, max_part: Optional[int] = None) -> Iterator[State]:
    """Partitions of ``n`` as descending tuples, largest first part first."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), min_part - 1, -1):
        for rest in partitions(n - first, min_part, first):
            yield (first,) + rest


def vacuum_basis(N: int) -> list[list[State]]:
    """Per-level PBW basis of the vacuum module, levels ``0..N``."""
    if N < 0:
        raise ValueError("N must be >= 0")
    return [list(partitions(d, 2)) for d in range(N + 1)]


def _add(acc: Vector, state: State, c: Fraction) -> None:
    s = acc.get(state, 0) + c
    if s:
        acc[state] = s
    else:
        acc.pop(state, None)


class VirasoroModule:
    """Vacuum module ``Vir^c`` or Verma module ``M(c, h)`` up to a level cutoff."""

    def __init__(self, params: VirasoroParams, cutoff: int, kind: str = "vacuum",
                 h: Fraction | int = 0):
        if kind not in ("vacuum", "highest-weight"):
            raise ValueError(f"unknown module kind {kind!r}")
        if cutoff < 0:
            raise ValueError("cutoff must be >= 0")
        self.params = params
        self.c = params.c
        self.cutoff = cutoff
        self.kind = kind
        self.h = Fraction(0) if kind == "vacuum" else Fraction(h)
        self._act: dict[tuple[int, State], Vector] = {}
        self._gram: dict[int, list[list[Fraction]]] = {}

    @property
    def min_part(self) -> int:
        return 2 if self.kind == "vacuum" else 1

    def basis(self, level: int) -> list[State]:
        return list(partitions(level, self.min_part))

    def act(self, n: int, state: State) -> Vector:
        """``L_n`` applied to a PBW basis state, straightened back into the basis."""
        key = (n, state)
        hit = self._act.get(key)
        if hit is not None:
            return hit
        out: Vector = {}
        if not state:
            if n < 0:
                if not (self.kind == "vacuum" and n == -1):
                    out[(-n,)] = Fraction(1)
            elif n == 0 and self.h:
                out[()] = self.h
        elif n < 0 and -n >= state[0]:
            out[(-n,) + state] = Fraction(1)
        else:
            m1, rest = state[0], state[1:]
            # L_n L_{-m1} w = L_{-m1} L_n w + [L_n, L_{-m1}] w
            for s, c in self.act(n, rest).items():
                for s2, c2 in self.act(-m1, s).items():
                    _add(out, s2, c * c2)
            if n + m1:
                for s, c in self.act(n - m1, rest).items():
                    _add(out, s, (n + m1) * c)
            if n == m1:
                _add(out, rest, Fraction(n ** 3 - n, 12) * self.c)
        self._act[key] = out
        return out

    def apply(self, n: int, vec: Vector) -> Vector:
        out: Vector = {}
        for s, c in vec.items():
            for s2, c2 in self.act(n, s).items():
                _add(out, s2, c * c2)
        return out

    def pairing(self, u: State, v: State) -> Fraction:
        """Contravariant form ``<u, v>`` with ``<v0, v0> = 1`` and ``L_n^+ = L_{-n}``."""
        vec: Vector = {v: Fraction(1)}
        for part in u:
            vec = self.apply(part, vec)
            if not vec:
                return Fraction(0)
        return vec.get((), Fraction(0))

    def gram_matrix(self, level: int) -> list[list[Fraction]]:
        if level > self.cutoff:
            raise ValueError(f"level {level} exceeds cutoff {self.cutoff}")
        if level not in self._gram:
            b = self.basis(level)
            self._gram[level] = [[self.pairing(u, v) for v in b] for u in b]
        return [row[:] for row in self._gram[level]]

    def gram_determinant(self, level: int) -> Fraction:
        return determinant(self.gram_matrix(level))

    def singular_levels(self) -> list[tuple[int, list[Vector]]]:
        """Levels ``<= cutoff`` whose Gram matrix is degenerate, with kernel bases."""
        out = []
        for d in range(self.cutoff + 1):
            b = self.basis(d)
            ker = nullspace(self.gram_matrix(d), len(b))
            if ker:
                out.append((d, [{s: c for s, c in zip(b, v) if c} for v in ker]))
        return out

    def c2_image(self) -> GroebnerBasis:
        """Ideal of ``C[x] = Vir^c / C_2`` generated by the images of Gram kernels.

        A PBW monomial containing some ``L_{-n}`` with ``n >= 3`` lies in
        ``C_2``; ``L_{-2}^k |0>`` maps to ``x^k``.
        """
        if self.kind != "vacuum":
            raise ValueError("the C2 image into C[x] is defined for the vacuum module")
        x = Polynomial.var(1, 1)
        images = []
        for _, vecs in self.singular_levels():
            for vec in vecs:
                img = Polynomial()
                for s, c in vec.items():
                    if all(p == 2 for p in s):
                        img = img + (x ** len(s)).scale(c)
                if not img.is_zero():
                    images.append(img)
        return buchberger(images, variables=[VarId(1, 1)])


def format_state(s: State) -> str:
    if not s:
        return "|0>"
    return "".join(f"L(-{p})" for p in s) + "|0>"
