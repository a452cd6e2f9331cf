"""Equations of the Hilbert-scheme chart centred at an extremal ideal.

The chart generators ``f_A`` have one free parameter per pair (A, B).
Multiplying by the variables gives a matrix whose entries are 0, 1 or a
single parameter; the chart of the Hilbert scheme is where its rank drops
to ``dim J_{m+1}``, i.e. where all minors of size ``dim J_{m+1} + 1``
vanish.
"""

from __future__ import annotations

import os
import random
import string
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .borel import (
    MonomialIdeal,
    PreconditionError,
    _require_borel,
    hilbert_function,
    hilbert_polynomial,
)
from .kernel.groebner import buchberger, krull_dimension, trim_generators
from .kernel.linalg import MinorExpander
from .kernel.poly import MultiPoly, PolyRing
from .monomials import (
    DEGREVLEX,
    LEX,
    TermOrder,
    WeightVector,
    count_monomials,
    format_monomial,
    monomials_of_degree,
    times_var,
)
from .persistence import ChartPoint, certify, equigenerated_base, random_chart_point


def parameter_names(count: int, taken: Sequence[str] = ()) -> list:
    """A, B, C, ... when they fit, otherwise c0, c1, ..."""
    letters = [c for c in string.ascii_uppercase if c not in taken]
    if count <= len(letters):
        return letters[:count]
    return [f"c{i}" for i in range(count)]


@dataclass(frozen=True)
class SymbolicChart:
    """Chart generators with one parameter per (A, B) pair, A-major order."""

    base: MonomialIdeal
    F: tuple
    R: tuple
    param_names: tuple
    generators: tuple

    @property
    def degree(self) -> int:
        return self.base.regularity

    @property
    def pairs(self) -> list:
        return [(A, B) for A in self.F for B in self.R]

    @property
    def param_ring(self) -> PolyRing:
        return PolyRing(self.param_names)

    @property
    def ring(self) -> PolyRing:
        return PolyRing(self.base.names + self.param_names)

    def param_of(self, A, B) -> str:
        return self.param_names[self.F.index(A) * len(self.R) + self.R.index(B)]

    def point(self, values: Mapping[str, object]) -> ChartPoint:
        """ChartPoint from parameter values (missing names are zero)."""
        coeffs = {}
        for (A, B), name in zip(self.pairs, self.param_names):
            if name in values:
                coeffs[(A, B)] = Fraction(values[name])
        return ChartPoint(self.base, coeffs)

    def values_of(self, p: ChartPoint) -> dict:
        return {name: p.coefficient(A, B) for (A, B), name in zip(self.pairs, self.param_names)}

    def evaluate(self, p: ChartPoint) -> list:
        """The generators with parameters replaced by the point's coefficients."""
        ring = self.base.ring
        nb = self.base.nvars
        vals = self.values_of(p)
        out = []
        for g in self.generators:
            num = g.partial_evaluate(vals)
            out.append(MultiPoly(ring, {m[:nb]: c for m, c in num.terms.items()}))
        return out


def symbolic_chart(base: MonomialIdeal, weight: WeightVector | None = None) -> SymbolicChart:
    base = equigenerated_base(base)
    _require_borel(base)
    certify(base, weight)
    m = base.regularity
    F = tuple(base.monomials(m, LEX))
    R = tuple(base.standard_monomials(m, LEX))
    names = tuple(parameter_names(len(F) * len(R), base.names))
    ring = PolyRing(base.names + names)
    pad = (0,) * len(names)
    gens = []
    for a, A in enumerate(F):
        terms = {A + pad: 1}
        for b, B in enumerate(R):
            e = [0] * len(names)
            e[a * len(R) + b] = 1
            terms[B + tuple(e)] = 1
        gens.append(MultiPoly(ring, terms))
    return SymbolicChart(base, F, R, names, tuple(gens))


@dataclass(frozen=True)
class ChartMatrix:
    """Coefficient matrix of x_j * f_A in degree m + 1.

    Rows are (j, A) with A-major ordering, columns are the degree-(m+1)
    monomials in descending ``column_order``.
    """

    chart: SymbolicChart
    row_labels: tuple
    col_labels: tuple
    entries: tuple

    @property
    def shape(self) -> tuple:
        return len(self.row_labels), len(self.col_labels)

    @property
    def param_ring(self) -> PolyRing:
        return self.chart.param_ring

    def row_names(self) -> list:
        names = self.chart.base.names
        gen_names = generator_names(len(self.chart.F))
        idx = {A: i for i, A in enumerate(self.chart.F)}
        return [f"{names[j]}{gen_names[idx[A]]}" for j, A in self.row_labels]

    def col_names(self) -> list:
        return [format_monomial(c, self.chart.base.names) for c in self.col_labels]

    def evaluate(self, values: Mapping[str, object]) -> list:
        """Rational matrix at a parameter assignment (missing names are zero)."""
        names = self.param_ring.names
        point = [Fraction(values.get(n, 0)) for n in names]
        return [[e.evaluate(point) for e in row] for row in self.entries]

    def text_entries(self) -> list:
        return [[str(e) for e in row] for row in self.entries]

    def to_json(self) -> dict:
        return {
            "rows": self.row_names(),
            "cols": self.col_names(),
            "entries": self.text_entries(),
        }


def generator_names(count: int) -> list:
    letters = "fghpqrstuv"
    if count <= len(letters):
        return list(letters[:count])
    return [f"f{i}" for i in range(count)]


def build_chart_matrix(base: MonomialIdeal, weight: WeightVector | None = None,
                       column_order: TermOrder = LEX) -> ChartMatrix:
    chart = symbolic_chart(base, weight)
    J = chart.base
    n1 = J.nvars
    pring = chart.param_ring
    cols = tuple(monomials_of_degree(n1, chart.degree + 1, column_order))
    col_index = {c: i for i, c in enumerate(cols)}
    rows, labels = [], []
    for A in chart.F:
        for j in range(n1):
            row = [pring.zero] * len(cols)
            row[col_index[times_var(A, j)]] = pring.one
            for B in chart.R:
                row[col_index[times_var(B, j)]] = pring.var(chart.param_of(A, B))
            rows.append(tuple(row))
            labels.append((j, A))
    return ChartMatrix(chart, tuple(labels), cols, tuple(rows))


# ---------- minors ----------

@dataclass(frozen=True)
class MinorCensus:
    k: int
    candidates: int
    structural_zero: int
    symbolic_zero: int
    minors: tuple  # ((rows, cols, poly), ...)

    @property
    def nonzero(self) -> int:
        return len(self.minors)


def _structurally_zero(entries, rows, cols):
    return any(not any(entries[r][c] for c in cols) for r in rows) or any(
        not any(entries[r][c] for r in rows) for c in cols)


def _minors_for_rows(args):
    entries, row_sets, k, ncols = args
    expander = MinorExpander(entries)
    out = []
    skipped = zeros = 0
    for rows in row_sets:
        for cols in combinations(range(ncols), k):
            if _structurally_zero(entries, rows, cols):
                skipped += 1
                continue
            p = expander.minor(rows, cols)
            if p:
                out.append((rows, cols, p))
            else:
                zeros += 1
    return out, skipped, zeros


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("GOTZMANN_THREADS", "1")))
    except ValueError:
        return 1


def minor_census(mat: ChartMatrix, k: int, workers: int | None = None) -> MinorCensus:
    """All k x k minors, ordered by (row set, column set).

    Selections with a row or column that vanishes on the selection are
    skipped without expansion; everything else is expanded symbolically.
    """
    nrows, ncols = mat.shape
    if not 1 <= k <= min(nrows, ncols):
        raise PreconditionError(f"minor size {k} out of range for a {nrows}x{ncols} matrix")
    workers = workers or default_workers()
    row_sets = list(combinations(range(nrows), k))
    entries = [list(r) for r in mat.entries]
    if workers <= 1 or len(row_sets) == 1:
        chunks = [row_sets]
    else:
        size = -(-len(row_sets) // workers)
        chunks = [row_sets[i:i + size] for i in range(0, len(row_sets), size)]
    jobs = [(entries, chunk, k, ncols) for chunk in chunks]
    if len(jobs) == 1:
        results = [_minors_for_rows(jobs[0])]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_minors_for_rows, jobs))
    minors, skipped, zeros = [], 0, 0
    for out, s, z in results:
        minors.extend(out)
        skipped += s
        zeros += z
    candidates = len(row_sets) * len(list(combinations(range(ncols), k)))
    return MinorCensus(k, candidates, skipped, zeros, tuple(minors))


def minors_ideal(mat: ChartMatrix, k: int, workers: int | None = None) -> list:
    """The nonzero k x k minors as polynomials in the parameters."""
    return [p for _, _, p in minor_census(mat, k, workers).minors]


def critical_minor_size(mat: ChartMatrix) -> int:
    J = mat.chart.base
    return hilbert_function(J, mat.chart.degree + 1) + 1


def normalize_signs(polys: Sequence[MultiPoly], order: TermOrder = DEGREVLEX) -> list:
    """Flip each polynomial so its leading coefficient is positive."""
    out = []
    for f in polys:
        lm = f.leading_monomial(order)
        out.append(-f if f.terms[lm] < 0 else f)
    return out


def hilbert_chart_equations(base: MonomialIdeal, weight: WeightVector | None = None,
                            workers: int | None = None, order: TermOrder = DEGREVLEX) -> list:
    """Trimmed generators of the ideal of critical minors of the chart matrix."""
    mat = build_chart_matrix(base, weight)
    k = critical_minor_size(mat)
    if k > min(mat.shape):
        return []
    return normalize_signs(trim_generators(minors_ideal(mat, k, workers), order), order)


def chart_dimension(equations: Sequence[MultiPoly], ring: PolyRing | None = None,
                    order: TermOrder | None = None) -> int:
    """Krull dimension of the parameter ring modulo the equations."""
    eqs = [e for e in equations if e]
    if not eqs:
        if ring is None:
            raise ValueError("need the parameter ring when there are no equations")
        return ring.nvars
    return krull_dimension(buchberger(eqs, order))


# ---------- Grassmannian sizes ----------

@dataclass(frozen=True)
class ChartSize:
    degree: int
    r: int
    ambient: int

    @property
    def dimension(self) -> int:
        return self.r * (self.ambient - self.r)

    def to_json(self) -> dict:
        return {"degree": self.degree, "r": self.r, "dim_S_m": self.ambient,
                "grassmannian_dimension": self.dimension}


@dataclass(frozen=True)
class GrassmannianReport:
    extremal: ChartSize
    lex: ChartSize

    def to_json(self) -> dict:
        return {"extremal": self.extremal.to_json(), "lex": self.lex.to_json()}


def _size(I):
    m = I.regularity
    return ChartSize(m, hilbert_function(I, m), count_monomials(I.nvars, m))


def grassmannian_sizes(base: MonomialIdeal, lex_alternative: MonomialIdeal) -> GrassmannianReport:
    """Grass(r, S_m) sizes for the extremal chart and for the lex embedding."""
    if base.nvars != lex_alternative.nvars:
        raise PreconditionError("ideals live in different rings")
    hb, hl = hilbert_polynomial(base), hilbert_polynomial(lex_alternative)
    if hb != hl:
        raise PreconditionError(f"Hilbert polynomials differ: {hb} vs {hl}")
    return GrassmannianReport(_size(base), _size(lex_alternative))


# ---------- points on the chart variety ----------

def graph_parametrization(equations: Sequence[MultiPoly]):
    """Write the zero set as a graph over some of the variables, if possible.

    Repeatedly picks an equation containing a term ``c * v`` (v a variable
    that occurs nowhere else in the equation), solves for v and substitutes.
    Returns ``(free_names, {dependent: polynomial in free})`` or None when
    some equation survives the substitutions.
    """
    eqs = [e for e in equations if e]
    if not eqs:
        return None
    ring = eqs[0].ring
    deps = {}
    progress = True
    while eqs and progress:
        progress = False
        for idx, e in enumerate(eqs):
            pick = None
            for v in range(ring.nvars):
                unit = tuple(1 if i == v else 0 for i in range(ring.nvars))
                c = e.terms.get(unit)
                if c and all(m == unit or not m[v] for m in e.terms):
                    pick = (v, c, unit)
                    break
            if pick is None:
                continue
            v, c, unit = pick
            name = ring.names[v]
            rest = MultiPoly(ring, {m: a for m, a in e.terms.items() if m != unit})
            expr = rest * (-1 / c)
            deps = {k: p.substitute({name: expr}) for k, p in deps.items()}
            deps[name] = expr
            eqs = [q.substitute({name: expr}) for j, q in enumerate(eqs) if j != idx]
            eqs = [q for q in eqs if q]
            progress = True
            break
    if eqs:
        return None
    free = [n for n in ring.names if n not in deps]
    return free, {k: deps[k] for k in ring.names if k in deps}


def on_variety_values(param: tuple, rng: random.Random, low: int = -3, high: int = 3) -> dict:
    free, deps = param
    values = {n: Fraction(rng.randint(low, high)) for n in free}
    point = {n: Fraction(0) for n in deps} | values
    for name, expr in deps.items():
        values[name] = expr.evaluate(point)
    return values


@dataclass(frozen=True)
class SamplePoint:
    point: ChartPoint
    kind: str  # "on", "perturbed" or "random"


def sample_chart_points(chart: SymbolicChart, equations: Sequence[MultiPoly], count: int,
                        seed: int = 0) -> list:
    """A reproducible mix of points on the chart variety, near it, and at random.

    Uses ``random.Random(seed)``; roughly 40% on the variety, 20% on it with
    one coordinate shifted by 1, and 40% with independent integer
    coefficients in [-3, 3].
    """
    rng = random.Random(seed)
    param = graph_parametrization(equations) if equations else None
    out = []
    for i in range(count):
        slot = i % 5
        if param is not None and slot in (0, 1):
            out.append(SamplePoint(chart.point(on_variety_values(param, rng)), "on"))
        elif param is not None and slot == 2:
            values = on_variety_values(param, rng)
            name = rng.choice(sorted(param[1]) or list(chart.param_names))
            values[name] += 1
            out.append(SamplePoint(chart.point(values), "perturbed"))
        elif not equations and slot in (0, 1, 2):
            # no equations: every point lies on the variety
            out.append(SamplePoint(random_chart_point(chart.base, rng), "on"))
        else:
            out.append(SamplePoint(random_chart_point(chart.base, rng), "random"))
    return out
