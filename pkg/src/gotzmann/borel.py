"""Monomial ideals with Borel-fixed / stable structure.

Covers membership, Borel closure and Borel generators, the
Eliahou-Kervaire decomposition of a stable ideal, first syzygies of an
equigenerated Borel-fixed ideal, Hilbert functions and polynomials,
truncation, lex segments and the classical Gotzmann growth check.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .kernel.linalg import rank
from .kernel.poly import MultiPoly, PolyRing
from .monomials import (
    DEGREVLEX,
    LEX,
    Monomial,
    TermOrder,
    borel_covers,
    borel_lower_covers,
    borel_up_set,
    count_monomials,
    degree,
    div,
    divides,
    format_monomial,
    max_var,
    monomials_of_degree,
    mono_lcm,
    mul,
    times_var,
    variable,
)


class PreconditionError(ValueError):
    """An operation was called outside its domain."""


def default_names(nvars: int) -> tuple:
    if nvars <= 4:
        return ("x", "y", "z", "w")[:nvars]
    return tuple(f"x{i}" for i in range(nvars))


def _minimalize(gens):
    gens = sorted(set(gens), key=lambda m: (degree(m), tuple(-e for e in m)))
    out = []
    for g in gens:
        if not any(divides(h, g) for h in out):
            out.append(g)
    return out


@dataclass(frozen=True, init=False)
class MonomialIdeal:
    """A monomial ideal given by its minimal generators.

    Generators are stored by increasing degree, lex-largest first within a
    degree.  An empty generator list is the zero ideal.
    """

    names: tuple
    generators: tuple

    def __init__(self, names: Sequence[str] | int, generators: Iterable[Monomial] = ()):
        if isinstance(names, int):
            names = default_names(names)
        names = tuple(names)
        gens = [tuple(g) for g in generators]
        for g in gens:
            if len(g) != len(names) or min(g, default=0) < 0:
                raise ValueError(f"bad exponent vector {g} for variables {names}")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "generators", tuple(_minimalize(gens)))

    @classmethod
    def parse(cls, names: Sequence[str], gens: Iterable[str]) -> "MonomialIdeal":
        ring = PolyRing(tuple(names))
        return cls(names, [ring.parse_monomial(g) for g in gens])

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def ring(self) -> PolyRing:
        return PolyRing(self.names)

    def __contains__(self, m: Monomial) -> bool:
        return any(divides(g, m) for g in self.generators)

    def contains(self, m: Monomial) -> bool:
        return m in self

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return any(not any(g) for g in self.generators)

    @property
    def regularity(self) -> int:
        """Largest generator degree (the regularity when Borel-fixed)."""
        return max((degree(g) for g in self.generators), default=0)

    def is_equigenerated(self) -> bool:
        return len({degree(g) for g in self.generators}) <= 1

    def monomials(self, d: int, order: TermOrder = LEX) -> list:
        """Monomials of I in degree d, largest first."""
        return [m for m in monomials_of_degree(self.nvars, d, order) if m in self]

    def standard_monomials(self, d: int, order: TermOrder = LEX) -> list:
        return [m for m in monomials_of_degree(self.nvars, d, order) if m not in self]

    def format(self, m: Monomial) -> str:
        return format_monomial(m, self.names)

    def generator_strings(self, order: TermOrder = DEGREVLEX) -> list:
        return [self.format(g) for g in order.sorted_desc(self.generators)]

    def __str__(self):
        return "(" + ", ".join(self.generator_strings()) + ")"

    def to_polys(self) -> list:
        ring = self.ring
        return [ring.monomial(g) for g in self.generators]

    def to_json(self, order: TermOrder = DEGREVLEX) -> dict:
        return {"vars": list(self.names), "gens": self.generator_strings(order)}


def monomial_ideal_from_polys(polys: Sequence[MultiPoly]) -> MonomialIdeal:
    """Monomial ideal generated by the supports of monomial polynomials."""
    if not polys:
        raise ValueError("no polynomials")
    gens = []
    for p in polys:
        if len(p.terms) != 1:
            raise PreconditionError(f"{p} is not a monomial")
        gens.extend(p.terms)
    return MonomialIdeal(polys[0].ring.names, gens)


# ---------- Borel / stable structure ----------

def borel_violations(I: MonomialIdeal) -> list:
    """Triples (generator, i, missing) with x_{i-1}/x_i * generator not in I."""
    out = []
    for g in I.generators:
        for i in range(1, I.nvars):
            if g[i]:
                up = g[:i - 1] + (g[i - 1] + 1, g[i] - 1) + g[i + 1:]
                if up not in I:
                    out.append((g, i, up))
    return out


def is_borel_fixed(I: MonomialIdeal) -> bool:
    return not borel_violations(I)


def stability_violations(I: MonomialIdeal) -> list:
    out = []
    for g in I.generators:
        k = max_var(g)
        for i in range(k):
            m = times_var(div(g, variable(I.nvars, k)), i)
            if m not in I:
                out.append((g, i, m))
    return out


def is_stable(I: MonomialIdeal) -> bool:
    return not stability_violations(I)


def borel_closure(gens: Iterable[Monomial], names: Sequence[str] | int | None = None) -> MonomialIdeal:
    """Smallest Borel-fixed ideal containing the given monomials."""
    gens = [tuple(g) for g in gens]
    if names is None:
        if not gens:
            raise ValueError("cannot infer the number of variables")
        names = len(gens[0])
    closed = set()
    for g in gens:
        closed |= borel_up_set(g)
    return MonomialIdeal(names, closed)


def _require_borel(I):
    bad = borel_violations(I)
    if bad:
        g, i, up = bad[0]
        raise PreconditionError(f"ideal is not Borel-fixed: missing {I.format(up)}")


def _require_stable(I):
    bad = stability_violations(I)
    if bad:
        raise PreconditionError(f"ideal is not stable: missing {I.format(bad[0][2])}")


def is_borel_minimal(I: MonomialIdeal, m: Monomial) -> bool:
    """m in I and no single downward move keeps it in I."""
    return m in I and not any(b in I for b in borel_lower_covers(m))


def borel_generators(I: MonomialIdeal) -> list:
    """Minimal generators that are minimal in the Borel filter of their degree."""
    _require_borel(I)
    return [g for g in I.generators if is_borel_minimal(I, g)]


def borel_maximal_standard(I: MonomialIdeal, d: int) -> list:
    """Standard monomials of degree d with no standard monomial one move above."""
    return [m for m in I.standard_monomials(d) if all(b in I for b in borel_covers(m))]


def borel_minimal_monomials(I: MonomialIdeal, d: int) -> list:
    return [m for m in I.monomials(d) if is_borel_minimal(I, m)]


# ---------- Eliahou-Kervaire decomposition ----------

def ek_decompose(I: MonomialIdeal, m: Monomial) -> tuple:
    """Split m in I as generator * cofactor with max_var(generator) <= min_var(cofactor).

    Strips the largest variable of m for as long as the quotient stays in I.
    """
    m = tuple(m)
    _require_stable(I)
    if m not in I:
        raise PreconditionError(f"{I.format(m)} is not in the ideal")
    cur = m
    while any(cur):
        k = max_var(cur)
        nxt = cur[:k] + (cur[k] - 1,) + cur[k + 1:]
        if nxt not in I:
            break
        cur = nxt
    return cur, div(m, cur)


def _cofactors(nvars, start, d):
    """Monomials of degree d in variables start..nvars-1, lex-descending."""
    if d == 0:
        return [(0,) * nvars]
    tail = monomials_of_degree(nvars - start, d)
    return [(0,) * start + t for t in tail]


def degree_basis(I: MonomialIdeal, d: int) -> list:
    """Monomials of I in degree d, one block per generator (the EK partition)."""
    if not is_stable(I) or any(degree(g) > d for g in I.generators):
        if is_stable(I):
            warnings.warn("degree below a generator degree; enumerating directly", stacklevel=2)
        return I.monomials(d)
    out = []
    for g in LEX.sorted_desc(I.generators):
        k = max(max_var(g), 0)
        out.extend(mul(g, c) for c in _cofactors(I.nvars, k, d - degree(g)))
    return out


def ek_blocks(I: MonomialIdeal, d: int) -> dict:
    """generator -> list of its degree-d block."""
    blocks = {}
    for g in I.generators:
        e = d - degree(g)
        if e < 0:
            blocks[g] = []
            continue
        k = max(max_var(g), 0)
        blocks[g] = [mul(g, c) for c in _cofactors(I.nvars, k, e)]
    return blocks


# ---------- Hilbert functions ----------

def hilbert_function(I: MonomialIdeal, d: int) -> int:
    """dim I_d: the number of degree-d monomials in I."""
    if d < 0:
        return 0
    if is_stable(I):
        n1 = I.nvars
        total = 0
        for g in I.generators:
            e = d - degree(g)
            if e >= 0:
                # cofactors of degree e in the variables max_var(g)..n
                total += count_monomials(n1 - max(max_var(g), 0), e)
        return total
    return sum(1 for m in monomials_of_degree(I.nvars, d) if m in I)


def quotient_hilbert_function(I: MonomialIdeal, d: int) -> int:
    return count_monomials(I.nvars, d) - hilbert_function(I, d)


def _lagrange(points):
    """Coefficients (low to high) of the interpolating polynomial."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k, b in enumerate(basis):
            coeffs[k] += yi * b / denom
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


HILBERT_RING = PolyRing(("d",))


def hilbert_polynomial(I: MonomialIdeal) -> MultiPoly:
    """Hilbert polynomial of S/I as a polynomial in the variable ``d``.

    Interpolates n+1 values from a degree where the Hilbert function is
    known to be polynomial and checks one more value.
    """
    if is_stable(I):
        start = I.regularity
    else:
        # Taylor resolution bound
        lcm_all = (0,) * I.nvars
        for g in I.generators:
            lcm_all = mono_lcm(lcm_all, g)
        start = degree(lcm_all)
    npts = I.nvars
    pts = [(Fraction(d), Fraction(quotient_hilbert_function(I, d)))
           for d in range(start, start + npts)]
    coeffs = _lagrange(pts)
    check = start + npts
    value = sum(c * check ** k for k, c in enumerate(coeffs))
    if value != quotient_hilbert_function(I, check):
        raise ArithmeticError("Hilbert function did not stabilize where expected")
    return MultiPoly(HILBERT_RING, {(k,): c for k, c in enumerate(coeffs)})


# ---------- truncation, syzygies, lex ----------

def truncate(I: MonomialIdeal, d: int) -> MonomialIdeal:
    """I_{>=d}: all degree-d monomials of I plus generators of degree > d."""
    gens = [g for g in I.generators if degree(g) > d]
    gens.extend(m for m in monomials_of_degree(I.nvars, d) if m in I)
    return MonomialIdeal(I.names, gens)


@dataclass(frozen=True)
class SyzygyRelation:
    """x_i * A = x_k * C with i < k = max_var(A)."""

    i: int
    A: Monomial
    k: int
    C: Monomial

    def format(self, names) -> str:
        a, c = format_monomial(self.A, names), format_monomial(self.C, names)
        return f"{names[self.i]}*({a}) - {names[self.k]}*({c})"


def first_syzygies(I: MonomialIdeal) -> list:
    """One relation per (i, A) with A a generator and i < max_var(A)."""
    _require_borel(I)
    if not I.is_equigenerated():
        raise PreconditionError("first_syzygies needs an equigenerated ideal")
    out = []
    n1 = I.nvars
    for A in LEX.sorted_desc(I.generators):
        k = max_var(A)
        for i in range(k):
            C = times_var(div(A, variable(n1, k)), i)
            out.append(SyzygyRelation(i, A, k, C))
    return out


def lex_segment(nvars: int, d: int, r: int, names: Sequence[str] | None = None) -> MonomialIdeal:
    """Ideal generated by the r lex-largest monomials of degree d."""
    total = count_monomials(nvars, d)
    if not 0 <= r <= total:
        raise PreconditionError(f"r must lie in [0, {total}]")
    mons = monomials_of_degree(nvars, d, LEX)[:r]
    return MonomialIdeal(names or nvars, mons)


def gotzmann_growth_check(dim_m: int, dim_m1: int, nvars: int, m: int) -> bool:
    """Does a degree-m piece of dimension dim_m grow to dim_m1 like the lex segment?"""
    L = lex_segment(nvars, m, dim_m)
    return dim_m1 == hilbert_function(L, m + 1)


def multiplication_rank(I: MonomialIdeal, m: int) -> int:
    """Rank of S_1 x I_m -> I_{m+1} as an explicit 0/1 matrix."""
    cols = {mono: j for j, mono in enumerate(monomials_of_degree(I.nvars, m + 1))}
    rows = []
    for A in I.monomials(m):
        for j in range(I.nvars):
            rows.append({cols[times_var(A, j)]: 1})
    return rank(rows)
