"""Extremal ideals: certify, refute or search for a separating weight.

A Borel-fixed ideal I with top generator degree m is extremal for an order
when every monomial of I_m is larger than every standard monomial of
degree m.  For a weight vector this is strict separation of weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import fourier_motzkin
from .borel import (
    MonomialIdeal,
    PreconditionError,
    _require_borel,
    borel_maximal_standard,
    borel_minimal_monomials,
)
from .monomials import Monomial, TermOrder, WeightVector, format_monomial


@dataclass(frozen=True)
class ExtremalityCertificate:
    weight: WeightVector
    degree: int
    min_ideal_weight: Fraction | None
    max_standard_weight: Fraction | None

    def __post_init__(self):
        lo, hi = self.min_ideal_weight, self.max_standard_weight
        if lo is not None and hi is not None and not lo > hi:
            raise ValueError("certificate without strict separation")

    def to_json(self):
        return {
            "status": "certified",
            "weight": [str(w) for w in self.weight.weights],
            "degree": self.degree,
            "min_ideal_weight": None if self.min_ideal_weight is None else str(self.min_ideal_weight),
            "max_standard_weight": None if self.max_standard_weight is None else str(self.max_standard_weight),
        }


@dataclass(frozen=True)
class Refutation:
    """A weight that fails: an ideal monomial not heavier than a standard one."""

    weight: WeightVector
    degree: int
    ideal_monomial: Monomial
    standard_monomial: Monomial
    ideal_weight: Fraction
    standard_weight: Fraction

    def to_json(self, names):
        return {
            "status": "refuted",
            "weight": [str(w) for w in self.weight.weights],
            "degree": self.degree,
            "ideal_monomial": format_monomial(self.ideal_monomial, names),
            "ideal_weight": str(self.ideal_weight),
            "standard_monomial": format_monomial(self.standard_monomial, names),
            "standard_weight": str(self.standard_weight),
        }


def _linear_form(coeffs, names) -> str:
    out = ""
    for i, c in enumerate(coeffs):
        if not c:
            continue
        mag = "" if abs(c) == 1 else f"{abs(c)}*"
        if out:
            out += " - " if c < 0 else " + "
        elif c < 0:
            out = "-"
        out += f"{mag}w_{names[i]}"
    return out or "0"


@dataclass(frozen=True)
class Infeasibility:
    """No non-increasing weight separates; ``conflict`` lists (ideal, standard) pairs."""

    degree: int
    conflict: tuple

    def describe(self, names) -> list:
        lines = []
        for A, B in self.conflict:
            diff = tuple(a - b for a, b in zip(A, B))
            terms = _linear_form(diff, names)
            lines.append(f"w({format_monomial(A, names)}) > w({format_monomial(B, names)}): {terms} > 0")
        return lines

    def to_json(self, names):
        return {
            "status": "infeasible",
            "degree": self.degree,
            "conflict": [[format_monomial(A, names), format_monomial(B, names)] for A, B in self.conflict],
            "inequalities": self.describe(names),
        }


def _degree(I: MonomialIdeal) -> int:
    if I.is_zero():
        raise PreconditionError("the zero ideal has no extremal degree")
    return I.regularity


def _extremes(I, m, w):
    if w.is_non_increasing():
        ideal = borel_minimal_monomials(I, m)
        std = borel_maximal_standard(I, m)
    else:
        ideal = I.monomials(m)
        std = I.standard_monomials(m)
    return ideal, std


def separation(I: MonomialIdeal, w: WeightVector, full_scan: bool = False):
    """(lightest ideal monomial, its weight, heaviest standard monomial, its weight)
    in the top generator degree; None entries when a side is empty."""
    m = _degree(I)
    if full_scan:
        ideal, std = I.monomials(m), I.standard_monomials(m)
    else:
        ideal, std = _extremes(I, m, w)
    lo = min(ideal, key=lambda A: (w.weight(A), A), default=None)
    hi = max(std, key=lambda B: (w.weight(B), B), default=None)
    return (lo, None if lo is None else w.weight(lo),
            hi, None if hi is None else w.weight(hi))


def check_extremal(I: MonomialIdeal, w: WeightVector, full_scan: bool = False):
    """Certificate if w strictly separates I_m from the standard monomials, else a Refutation.

    Non-increasing weights only need the Borel-minimal monomials of I_m and
    the Borel-maximal standard monomials.
    """
    _require_borel(I)
    if len(w) != I.nvars:
        raise PreconditionError(f"weight has {len(w)} entries for {I.nvars} variables")
    m = _degree(I)
    lo, lo_w, hi, hi_w = separation(I, w, full_scan)
    if lo is None or hi is None or lo_w > hi_w:
        return ExtremalityCertificate(w, m, lo_w, hi_w)
    return Refutation(w, m, lo, hi, lo_w, hi_w)


def separation_constraints(I: MonomialIdeal) -> list:
    """(coefficients, rhs, label) rows of the weight feasibility system."""
    m = _degree(I)
    n1 = I.nvars
    cons = []
    for A in borel_minimal_monomials(I, m):
        for B in borel_maximal_standard(I, m):
            cons.append((tuple(a - b for a, b in zip(A, B)), 1, ("sep", A, B)))
    for i in range(n1 - 1):
        row = [0] * n1
        row[i], row[i + 1] = 1, -1
        cons.append((tuple(row), 0, ("mono", i)))
    row = [0] * n1
    row[-1] = 1
    cons.append((tuple(row), 0, ("nonneg", n1 - 1)))
    return cons


def find_extremal_weight(I: MonomialIdeal):
    """A non-increasing integer weight certifying I, or an Infeasibility."""
    _require_borel(I)
    m = _degree(I)
    try:
        w = fourier_motzkin.solve(separation_constraints(I), I.nvars)
    except fourier_motzkin.Infeasible as exc:
        conflict = tuple(sorted((lab[1], lab[2]) for lab in exc.origin if lab[0] == "sep"))
        return Infeasibility(m, conflict)
    return WeightVector(w).normalized()


def is_extremal_wrt(I: MonomialIdeal, order: TermOrder) -> bool:
    """Every monomial of I_m exceeds every standard monomial of degree m under order."""
    _require_borel(I)
    m = _degree(I)
    ideal = I.monomials(m)
    std = I.standard_monomials(m)
    if not ideal or not std:
        return True
    key = order.key
    return key(min(ideal, key=key)) > key(max(std, key=key))
