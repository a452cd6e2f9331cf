"""Local persistence test on the chart of the Grassmannian around an extremal ideal.

A point of the chart centred at ``[J_m]`` is a choice of coefficients
``c[A, B]`` (A a degree-m monomial of J, B a standard monomial of degree
m).  It determines the ideal ``I = (f_A)`` with
``f_A = x^A + sum_B c[A, B] x^B``.  When J is extremal, ``I`` grows like J
in every degree as soon as it does so in degree m + 1.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .borel import MonomialIdeal, PreconditionError, hilbert_function, truncate
from .extremality import ExtremalityCertificate, Infeasibility, check_extremal, find_extremal_weight
from .kernel.groebner import buchberger
from .kernel.linalg import rank
from .kernel.poly import MultiPoly
from .monomials import (
    LEX,
    Monomial,
    TermOrder,
    WeightVector,
    format_monomial,
    max_var,
    min_var,
    monomials_of_degree,
    mul,
)


def equigenerated_base(J: MonomialIdeal) -> MonomialIdeal:
    """J itself if equigenerated, else its truncation at the top generator degree."""
    if J.is_zero():
        raise PreconditionError("the zero ideal has no chart")
    if J.is_equigenerated():
        return J
    return truncate(J, J.regularity)


@dataclass(frozen=True)
class ChartPoint:
    """Coefficients c[A, B] of a point in the chart centred at [J_m].

    ``base`` is replaced by its truncation at degree m when it is not
    equigenerated.  Missing pairs mean a zero coefficient.
    """

    base: MonomialIdeal
    coefficients: Mapping = field(default_factory=dict)

    def __post_init__(self):
        base = equigenerated_base(self.base)
        object.__setattr__(self, "base", base)
        F, R = set(self.F), set(self.R)
        clean = {}
        for (A, B), c in dict(self.coefficients).items():
            A, B = tuple(A), tuple(B)
            if A not in F or B not in R:
                raise PreconditionError(
                    f"coefficient key ({format_monomial(A, base.names)}, "
                    f"{format_monomial(B, base.names)}) is outside the chart")
            c = Fraction(c)
            if c:
                clean[(A, B)] = c
        object.__setattr__(self, "coefficients", clean)

    @property
    def degree(self) -> int:
        return self.base.regularity

    @property
    def F(self) -> list:
        """Degree-m monomials of the base, lex-descending."""
        return self.base.monomials(self.degree, LEX)

    @property
    def R(self) -> list:
        """Standard monomials of degree m, lex-descending."""
        return self.base.standard_monomials(self.degree, LEX)

    def coefficient(self, A, B) -> Fraction:
        return self.coefficients.get((tuple(A), tuple(B)), Fraction(0))

    def to_json(self) -> dict:
        names = self.base.names
        out = {}
        for A in self.F:
            for B in self.R:
                c = self.coefficient(A, B)
                if c:
                    out[f"{format_monomial(A, names)}:{format_monomial(B, names)}"] = str(c)
        return out

    @classmethod
    def from_json(cls, base: MonomialIdeal, data: Mapping[str, object]) -> "ChartPoint":
        base = equigenerated_base(base)
        ring = base.ring
        coeffs = {}
        for key, value in data.items():
            a, sep, b = key.partition(":")
            if not sep:
                raise ValueError(f"point key {key!r} is not of the form A:B")
            coeffs[(ring.parse_monomial(a), ring.parse_monomial(b))] = Fraction(str(value))
        return cls(base, coeffs)


@dataclass(frozen=True)
class PersistenceVerdict:
    dim_expected: int
    dim_actual: int
    persists: bool
    checked_degrees: tuple = ()
    weight: WeightVector | None = None

    def forward_agrees(self) -> bool:
        return all(a == b for _, a, b in self.checked_degrees)

    def to_json(self) -> dict:
        return {
            "persists": self.persists,
            "dim_expected": self.dim_expected,
            "dim_actual": self.dim_actual,
            "checked_degrees": [
                {"degree": z, "dim_I": a, "dim_J": b} for z, a, b in self.checked_degrees
            ],
            "weight": None if self.weight is None else [str(w) for w in self.weight.weights],
        }


def chart_generators(p: ChartPoint) -> list:
    """f_A = x^A + sum_B c[A, B] x^B for each A in F."""
    ring = p.base.ring
    gens = []
    for A in p.F:
        terms = {A: Fraction(1)}
        for B in p.R:
            c = p.coefficient(A, B)
            if c:
                terms[B] = c
        gens.append(MultiPoly(ring, terms))
    return gens


def _homogeneous_degree(gens):
    degs = set()
    for g in gens:
        if not g:
            continue
        if not g.is_homogeneous():
            raise PreconditionError(f"{g} is not homogeneous")
        degs.add(g.total_degree())
    if len(degs) > 1:
        raise PreconditionError("generators have different degrees")
    return degs.pop() if degs else None


def degree_rows(gens: Sequence[MultiPoly], d: int, leads: Sequence[Monomial] | None = None):
    """Sparse coefficient rows of u * g for all monomials u of degree d - m.

    With ``leads`` given, the rows u * g with min_var(u) >= max_var(lead)
    come first.
    """
    m = _homogeneous_degree(gens)
    if m is None:
        return [], {}
    if d < m:
        raise PreconditionError(f"degree {d} is below the generator degree {m}")
    nvars = gens[0].ring.nvars
    cols = {mono: j for j, mono in enumerate(monomials_of_degree(nvars, d))}
    mults = monomials_of_degree(nvars, d - m)
    first, rest = [], []
    for idx, g in enumerate(gens):
        lead_k = max(max_var(leads[idx]), 0) if leads is not None else None
        for u in mults:
            row = {cols[mul(u, e)]: c for e, c in g.terms.items()}
            if lead_k is None or min_var(u) >= lead_k:
                first.append(row)
            else:
                rest.append(row)
    return first + rest, cols


def dim_in_degree(gens: Sequence[MultiPoly], d: int, leads: Sequence[Monomial] | None = None) -> int:
    """Dimension of the degree-d piece of the ideal generated by equal-degree forms."""
    rows, _ = degree_rows(gens, d, leads)
    return rank(rows)


def ek_basis_rank(p: ChartPoint) -> int:
    """Rank of {x_j f_A : j >= max_var(A)} in degree m + 1."""
    gens = chart_generators(p)
    n1 = p.base.nvars
    cols = {mono: j for j, mono in enumerate(monomials_of_degree(n1, p.degree + 1))}
    rows = []
    for A, f in zip(p.F, gens):
        for j in range(max(max_var(A), 0), n1):
            rows.append({cols[tuple(e + (k == j) for k, e in enumerate(mono))]: c
                         for mono, c in f.terms.items()})
    return rank(rows)


def certify(J: MonomialIdeal, weight: WeightVector | None = None) -> WeightVector:
    """A weight certifying J (given or searched); raises when there is none."""
    if weight is not None:
        cert = check_extremal(J, weight)
        if not isinstance(cert, ExtremalityCertificate):
            raise PreconditionError(f"weight {weight} does not certify {J}")
        return weight
    found = find_extremal_weight(J)
    if isinstance(found, Infeasibility):
        raise PreconditionError(f"{J} is not extremal for any non-increasing weight")
    return found


def local_persistence_check(p: ChartPoint, forward: int = 5,
                            weight: WeightVector | None = None) -> PersistenceVerdict:
    """Compare dim I_{m+1} with dim J_{m+1}; optionally record degrees m..m+forward."""
    J = p.base
    w = certify(J, weight)
    m = p.degree
    gens = chart_generators(p)
    leads = p.F
    expected = hilbert_function(J, m + 1)
    actual = dim_in_degree(gens, m + 1, leads)
    checked = ()
    if forward > 0:
        checked = tuple(
            (z, actual if z == m + 1 else dim_in_degree(gens, z, leads), hilbert_function(J, z))
            for z in range(m, m + forward + 1)
        )
    return PersistenceVerdict(expected, actual, actual == expected, checked, w)


def flat_family_fiber(p: ChartPoint, w: WeightVector, t) -> list:
    """Generators of I(t): c[A, B] rescaled by t^(w.(A - B)).

    Every pair with a nonzero coefficient needs a positive integer exponent.
    """
    t = Fraction(t)
    if any(x.denominator != 1 for x in w.weights):
        raise PreconditionError("flat family needs an integer weight vector")
    ring = p.base.ring
    gens = []
    for A in p.F:
        terms = {A: Fraction(1)}
        for B in p.R:
            c = p.coefficient(A, B)
            if not c:
                continue
            e = w.weight(A) - w.weight(B)
            if e <= 0 or e.denominator != 1:
                raise PreconditionError(
                    f"weight {w} gives exponent {e} for "
                    f"({format_monomial(A, ring.names)}, {format_monomial(B, ring.names)})")
            terms[B] = c * t ** int(e)
        gens.append(MultiPoly(ring, terms))
    return gens


def initial_ideal(gens: Sequence[MultiPoly], order: TermOrder | None = None) -> MonomialIdeal:
    """Monomial ideal of leading terms of a Gröbner basis of (gens)."""
    gens = [g for g in gens if g]
    if not gens:
        raise PreconditionError("the zero ideal has no initial ideal")
    gb = buchberger(gens, order)
    return MonomialIdeal(gens[0].ring.names, gb.leading_monomials())


def random_chart_point(base: MonomialIdeal, rng: random.Random, low: int = -3, high: int = 3,
                       density: float = 1.0) -> ChartPoint:
    """Integer coefficients drawn uniformly from [low, high]."""
    base = equigenerated_base(base)
    point = ChartPoint(base)
    coeffs = {}
    for A in point.F:
        for B in point.R:
            if rng.random() < density:
                coeffs[(A, B)] = rng.randint(low, high)
    return ChartPoint(base, coeffs)
