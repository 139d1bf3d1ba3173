"""C2-cofiniteness / lisse verdict for a presented C2-algebra ``C[x^1..x^r]/I``.

The verdict depends only on the Krull dimension of the base quotient: a
zero-dimensional associated variety has zero-dimensional arc space.  Jet
and arc-window dimensions are attached as diagnostics only, since finite
truncations of non-reduced schemes can have positive dimension.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..arith import Polynomial, VarId
from ..diffalg import DifferentialRing, Presentation, jet_ideal, weight_window, _dedupe
from ..groebner import DimensionReport, GroebnerBasis, buchberger, krull_dimension
from ..vpa import radical_principal

THEOREM_LINE = ("C2-cofinite <=> lisse: SS(M) lies in the arc space of X_M, and the arc space "
                "of a zero-dimensional variety is zero-dimensional")

NON_REDUCED_CAVEAT = ("finite-order jet schemes of a non-reduced zero-dimensional scheme can have "
                      "positive dimension (e.g. <x^2> at order 1 has dimension 1); such numbers are "
                      "diagnostics, not the verdict")


@dataclass
class LisseReport:
    dimension: DimensionReport
    lisse: bool
    verdict: str
    jet_dimensions: dict[int, int] = field(default_factory=dict)
    window_dimensions: dict[int, int] = field(default_factory=dict)
    reduced_generators: Optional[list[Polynomial]] = None
    reduced_window_dimensions: dict[int, int] = field(default_factory=dict)
    reduced_note: str = ""
    caveats: list[str] = field(default_factory=list)

    def as_dict(self, names=None) -> dict:
        out = {
            "dimension": self.dimension.as_dict(),
            "lisse": self.lisse,
            "verdict": self.verdict,
            "theorem": THEOREM_LINE,
            "jet_dimensions": {str(k): v for k, v in self.jet_dimensions.items()},
            "arc_window_dimensions": {str(k): v for k, v in self.window_dimensions.items()},
        }
        if self.reduced_generators is not None:
            out["reduced_generators"] = [p.to_str(names) for p in self.reduced_generators]
            out["reduced_arc_window_dimensions"] = {
                str(k): v for k, v in self.reduced_window_dimensions.items()}
        if self.reduced_note:
            out["reduced_note"] = self.reduced_note
        return out


def _window_dim(pres: Presentation, gens, w: int) -> int:
    ring = DifferentialRing(pres, None)
    gs = _dedupe(weight_window(ring, gens, w))
    gb = buchberger(gs, variables=ring.variables(w))
    return krull_dimension(gb).krull_dimension


def _reduced_generators(gb: GroebnerBasis) -> tuple[Optional[list[Polynomial]], str]:
    if len(gb.basis) == 1:
        return [radical_principal(gb.basis[0])], "radical of a principal ideal (squarefree part)"
    if all(p.degree() <= 1 for p in gb.basis):
        return list(gb.basis), "linear ideal: already prime, hence reduced"
    return None, "non-principal nonlinear ideal: radical not computed"


def lisse_verdict(r_ideal: GroebnerBasis, num_generators: Optional[int] = None,
                  jet_order: int = 2, max_weight: int = 6) -> LisseReport:
    """Decide C2-cofiniteness from ``dim C[x]/I`` and attach jet diagnostics.

    ``jet_order`` bounds the order-``m`` jet ideals reported; ``max_weight``
    bounds the arc-space windows (raw and, where computable, reduced).
    """
    for v in r_ideal.variables:
        if v.level != 1:
            raise ValueError("the C2-algebra ideal must live in level-1 variables")
    r = num_generators or max((v.gen for v in r_ideal.variables), default=1)
    base_vars = [VarId(j, 1) for j in range(1, r + 1)]
    gb = buchberger(r_ideal.basis, r_ideal.order, variables=base_vars)
    dim = krull_dimension(gb)
    if dim.unit_ideal:
        lisse, verdict = False, "unit ideal: empty associated variety (degenerate input)"
    elif dim.zero_dimensional:
        lisse, verdict = True, "C2-cofinite and lisse"
    else:
        lisse, verdict = False, f"not C2-cofinite, not lisse (dim X = {dim.krull_dimension})"
    report = LisseReport(dim, lisse, verdict, caveats=[NON_REDUCED_CAVEAT])
    if dim.unit_ideal:
        return report
    pres = Presentation(r, tuple(gb.basis))
    for m in range(jet_order + 1):
        report.jet_dimensions[m] = krull_dimension(jet_ideal(pres, m).groebner()).krull_dimension
    top = max((p.max_weight() for p in gb.basis), default=1)
    for w in range(max(top, 1), max_weight + 1):
        report.window_dimensions[w] = _window_dim(pres, gb.basis, w)
    red, note = _reduced_generators(gb) if gb.basis else (None, "zero ideal")
    report.reduced_note = note
    if red is not None:
        report.reduced_generators = red
        rtop = max((p.max_weight() for p in red), default=1)
        for w in range(max(rtop, 1), max_weight + 1):
            report.reduced_window_dimensions[w] = _window_dim(pres, red, w)
    return report
