"""End-to-end run of the 3-points-in-the-plane chart, diffed against golden data."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from math import comb
from pathlib import Path

from .borel import MonomialIdeal, hilbert_function, is_borel_fixed
from .chart import (
    build_chart_matrix,
    chart_dimension,
    critical_minor_size,
    grassmannian_sizes,
    minor_census,
    normalize_signs,
    sample_chart_points,
)
from .extremality import find_extremal_weight, is_extremal_wrt
from .kernel.groebner import buchberger, ideal_equal, trim_generators
from .kernel.poly import parse_polys
from .monomials import TermOrder
from .persistence import chart_generators, initial_ideal, local_persistence_check


def load_golden(path: str | Path | None = None) -> dict:
    if path is None:
        text = resources.files("gotzmann").joinpath("golden/three_points.json").read_text()
    else:
        text = Path(path).read_text()
    return json.loads(text)


@dataclass
class Check:
    name: str
    passed: bool
    expected: object = None
    actual: object = None

    def to_json(self):
        return {"name": self.name, "status": "PASS" if self.passed else "FAIL",
                "expected": self.expected, "actual": self.actual}


@dataclass
class Report:
    checks: list = field(default_factory=list)
    flags: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name, expected, actual, passed=None):
        self.checks.append(Check(name, expected == actual if passed is None else passed,
                                 expected, actual))

    def to_json(self) -> dict:
        return {
            "status": "PASS" if self.passed else "FAIL",
            "checks": [c.to_json() for c in self.checks],
            "diff": [c.to_json() for c in self.checks if not c.passed],
            "flags": self.flags,
            **self.data,
        }

    def to_text(self) -> str:
        width = max(len(c.name) for c in self.checks)
        lines = [f"{c.name:<{width}}  {'PASS' if c.passed else 'FAIL'}" for c in self.checks]
        lines += [f"note: {f}" for f in self.flags]
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)


def _matrix_diff(expected, actual):
    out = []
    if expected["rows"] != actual["rows"]:
        out.append({"field": "rows", "expected": expected["rows"], "actual": actual["rows"]})
    if expected["cols"] != actual["cols"]:
        out.append({"field": "cols", "expected": expected["cols"], "actual": actual["cols"]})
    for i, (er, ar) in enumerate(zip(expected["entries"], actual["entries"])):
        for j, (e, a) in enumerate(zip(er, ar)):
            if e != a:
                out.append({"entry": [i, j], "expected": e, "actual": a})
    if len(expected["entries"]) != len(actual["entries"]):
        out.append({"field": "row count", "expected": len(expected["entries"]),
                    "actual": len(actual["entries"])})
    return out


def persistence_sampling(base: MonomialIdeal, equations, chart, count: int, seed: int,
                         forward: int, order: TermOrder) -> dict:
    """Run the persistence test on seeded sample points; count inconsistencies."""
    m = chart.degree
    inconsistent = []
    kinds = {}
    persisting = 0
    for idx, sp in enumerate(sample_chart_points(chart, equations, count, seed)):
        v = local_persistence_check(sp.point, forward)
        ok = v.persists == v.forward_agrees()
        if v.persists:
            persisting += 1
            ini = initial_ideal(chart_generators(sp.point), order)
            ok = ok and all(ini.monomials(d) == base.monomials(d) for d in (m, m + 1))
        kinds[sp.kind] = kinds.get(sp.kind, 0) + 1
        if not ok:
            inconsistent.append({"index": idx, "point": sp.point.to_json(), **v.to_json()})
    return {"points": count, "seed": seed, "kinds": dict(sorted(kinds.items())),
            "persisting": persisting, "inconsistent": inconsistent}


def reproduce_paper(golden: str | Path | dict | None = None, forward: int = 0,
                    seed: int = 0, samples: int = 100, workers: int | None = None) -> Report:
    gold = golden if isinstance(golden, dict) else load_golden(golden)
    order = TermOrder.parse(gold.get("order", "degrevlex"))
    J = MonomialIdeal.parse(gold["ideal"]["vars"], gold["ideal"]["gens"])
    L = MonomialIdeal.parse(gold["lex_ideal"]["vars"], gold["lex_ideal"]["gens"])
    rep = Report()

    rep.add("base is Borel-fixed", True, is_borel_fixed(J))
    rep.add(f"base is extremal for {order}", True, is_extremal_wrt(J, order))
    w = find_extremal_weight(J)
    rep.data["weight"] = str(w)

    mat = build_chart_matrix(J)
    actual = mat.to_json()
    diff = _matrix_diff(gold["matrix"], actual)
    rep.checks.append(Check("chart matrix", not diff, gold["matrix"] if diff else None, diff or None))
    rep.data["matrix"] = actual

    k = critical_minor_size(mat)
    census = minor_census(mat, k, workers)
    gm = gold["minors"]
    rep.add("minor size", gm["k"], k)
    rep.add("candidate minors", gm["candidates"], census.candidates)
    rep.add("nonzero minors vs stated count", gm["stated_nonzero"], census.nonzero)
    nrows, ncols = mat.shape
    rep.data["minors"] = {
        "k": k, "candidates": census.candidates, "structural_zero": census.structural_zero,
        "symbolic_zero": census.symbolic_zero, "nonzero": census.nonzero,
        "distinct_nonzero": len({p for _, _, p in census.minors}),
    }
    stated_total = gm["stated_total"]
    if stated_total != census.candidates:
        assumed_rows = next((r for r in range(k, 4 * nrows)
                             if comb(r, k) * comb(ncols, k) == stated_total), None)
        rep.flags.append(
            f"stated total of {stated_total} minors does not fit the {nrows}x{ncols} matrix "
            f"(C({nrows},{k})*C({ncols},{k}) = {census.candidates})"
            + (f"; it equals C({assumed_rows},{k})*C({ncols},{k})" if assumed_rows else ""))

    minors = [p for _, _, p in census.minors]
    trimmed = normalize_signs(trim_generators(minors, order), order)
    ring = mat.param_ring.with_order(order)
    stated = parse_polys(gold["equations"], ring)
    rep.add("trimmed ideal equals stated equations", True, ideal_equal(trimmed, stated, order))
    gb = buchberger(minors, order)
    gb_text = [str(g) for g in gb]
    rep.add("reduced basis equals stated equations (as a set)",
            sorted(gold["equations"]), sorted(gb_text))
    rep.data["equations"] = [str(e) for e in trimmed]
    rep.data["groebner_basis"] = gb_text
    rep.data["s_polynomials_reduce"] = gb.spolys_reduce_to_zero()

    dim = chart_dimension(trimmed, ring, order)
    rep.add("chart dimension", gold["dimension"], dim)

    sizes = grassmannian_sizes(J, L).to_json()
    rep.add("Grassmannian sizes", gold["grassmannian"], sizes)

    for label, ideal in (("J", J), ("L", L)):
        for d, value in gold["hilbert"][label]:
            rep.add(f"dim {label}_{d}", value, hilbert_function(ideal, d))

    if forward > 0:
        chart = mat.chart
        sampling = persistence_sampling(J, trimmed, chart, samples, seed, forward, order)
        rep.add("persistence sampling consistent", [], sampling["inconsistent"])
        rep.data["sampling"] = sampling
    return rep
