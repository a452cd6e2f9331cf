"""Command-line front end.

Every subcommand prints a human-readable summary; ``-o FILE`` writes the
JSON result and ``--json`` prints the JSON instead of the summary.

Exit codes: 0 success, 1 negative answer (refuted, infeasible, not
Borel-fixed, does not persist, golden mismatch), 2 unreadable input,
3 precondition failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import borel, chart, extremality, persistence
from .kernel.groebner import EmptyVarietyError, buchberger, trim_generators
from .kernel.poly import ParseError, PolyRing, parse_polys
from .monomials import TermOrder, WeightVector

EXIT_OK, EXIT_NEGATIVE, EXIT_PARSE, EXIT_PRECONDITION = 0, 1, 2, 3


class InputError(Exception):
    pass


# ---------- input ----------

def _read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _ideal_spec(path):
    data = _read_json(path)
    if not isinstance(data, dict) or "vars" not in data or "gens" not in data:
        raise InputError(f"{path}: expected an object with 'vars' and 'gens'")
    return list(data["vars"]), list(data["gens"])


def load_monomial_ideal(path) -> borel.MonomialIdeal:
    names, gens = _ideal_spec(path)
    try:
        return borel.MonomialIdeal.parse(names, gens)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def load_polys(path, order: TermOrder):
    names, gens = _ideal_spec(path)
    try:
        return parse_polys(gens, PolyRing(tuple(names), order))
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def parse_weight(text) -> WeightVector:
    if text is None:
        return None
    try:
        if Path(text).is_file():
            return WeightVector(tuple(Fraction(str(x)) for x in _read_json(text)))
        return WeightVector.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad weight {text!r}: {exc}") from exc


def parse_order(text) -> TermOrder:
    try:
        return TermOrder.parse(text)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _require(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise InputError(f"--{n.replace('_', '-')} is required for {args.command}")


# ---------- commands: each returns (exit code, payload, text) ----------

def cmd_check_borel(args):
    I = load_monomial_ideal(args.ideal)
    bad = borel.borel_violations(I)
    payload = {"ideal": I.to_json(), "borel_fixed": not bad, "stable": borel.is_stable(I),
               "missing": sorted({I.format(up) for _, _, up in bad})}
    if not bad:
        return EXIT_OK, payload, f"{I} is Borel-fixed"
    lines = [f"{I} is not Borel-fixed"]
    for g, i, up in bad:
        lines.append(f"  missing {I.format(up)} (from {I.format(g)}, {I.names[i]} -> {I.names[i - 1]})")
    return EXIT_NEGATIVE, payload, "\n".join(lines)


def cmd_borel_generators(args):
    I = load_monomial_ideal(args.ideal)
    gens = [I.format(g) for g in borel.borel_generators(I)]
    return EXIT_OK, {"ideal": I.to_json(), "borel_generators": gens}, "Borel generators: " + ", ".join(gens)


def cmd_borel_closure(args):
    names, gens = _ideal_spec(args.ideal)
    ring = PolyRing(tuple(names))
    try:
        mons = [ring.parse_monomial(g) for g in gens]
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    I = borel.borel_closure(mons, names)
    return EXIT_OK, {"ideal": I.to_json()}, f"Borel closure: {I}"


def cmd_ek_decompose(args):
    _require(args, "monomial")
    I = load_monomial_ideal(args.ideal)
    try:
        m = I.ring.parse_monomial(args.monomial)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    g, c = borel.ek_decompose(I, m)
    payload = {"monomial": I.format(m), "generator": I.format(g), "cofactor": I.format(c)}
    return EXIT_OK, payload, f"{I.format(m)} = ({I.format(g)}) * ({I.format(c)})"


def cmd_degree_basis(args):
    _require(args, "degree")
    I = load_monomial_ideal(args.ideal)
    basis = borel.degree_basis(I, args.degree)
    payload = {"degree": args.degree, "count": len(basis), "basis": [I.format(m) for m in basis]}
    text = [f"dim I_{args.degree} = {len(basis)}"]
    if borel.is_stable(I):
        blocks = borel.ek_blocks(I, args.degree)
        payload["blocks"] = {I.format(g): [I.format(m) for m in b] for g, b in blocks.items()}
        text += [f"  {I.format(g)}: " + ", ".join(I.format(m) for m in b) for g, b in blocks.items()]
    return EXIT_OK, payload, "\n".join(text)


def cmd_hilbert(args):
    I = load_monomial_ideal(args.ideal)
    hp = borel.hilbert_polynomial(I)
    degrees = [args.degree] if args.degree is not None else range(0, I.regularity + I.nvars + 1)
    rows = [{"degree": d, "dim_I": borel.hilbert_function(I, d),
             "dim_quotient": borel.quotient_hilbert_function(I, d)} for d in degrees]
    payload = {"ideal": I.to_json(), "regularity": I.regularity,
               "hilbert_polynomial": str(hp), "values": rows}
    text = [f"Hilbert polynomial of S/I: {hp}", f"{'d':>3} {'dim I_d':>8} {'dim (S/I)_d':>12}"]
    text += [f"{r['degree']:>3} {r['dim_I']:>8} {r['dim_quotient']:>12}" for r in rows]
    return EXIT_OK, payload, "\n".join(text)


def cmd_syzygies(args):
    I = load_monomial_ideal(args.ideal)
    rels = borel.first_syzygies(I)
    m = I.regularity
    expected = I.nvars * len(I.generators) - borel.hilbert_function(I, m + 1)
    payload = {"count": len(rels), "expected_count": expected,
               "relations": [r.format(I.names) for r in rels]}
    text = [f"{len(rels)} first syzygies"] + ["  " + r.format(I.names) for r in rels]
    return EXIT_OK, payload, "\n".join(text)


def cmd_lex_segment(args):
    _require(args, "vars", "degree", "dim")
    names = [v.strip() for v in args.vars.split(",")]
    L = borel.lex_segment(len(names), args.degree, args.dim, names)
    return EXIT_OK, {"ideal": L.to_json()}, f"lex segment: {L}"


def cmd_gotzmann_growth(args):
    _require(args, "nvars", "degree", "dim_m", "dim_m1")
    ok = borel.gotzmann_growth_check(args.dim_m, args.dim_m1, args.nvars, args.degree)
    lex_next = borel.hilbert_function(borel.lex_segment(args.nvars, args.degree, args.dim_m), args.degree + 1)
    payload = {"grows_like_lex": ok, "lex_dim_m1": lex_next}
    text = f"lex growth {args.dim_m} -> {lex_next}; given {args.dim_m1}: {'matches' if ok else 'differs'}"
    return (EXIT_OK if ok else EXIT_NEGATIVE), payload, text


def cmd_check_extremal(args):
    _require(args, "weight")
    I = load_monomial_ideal(args.ideal)
    w = parse_weight(args.weight)
    res = extremality.check_extremal(I, w)
    if isinstance(res, extremality.ExtremalityCertificate):
        text = (f"certified by w = ({w}): ideal weights >= {res.min_ideal_weight} > "
                f"{res.max_standard_weight} >= standard weights")
        return EXIT_OK, res.to_json(), text
    text = (f"refuted by w = ({w}): {I.format(res.ideal_monomial)} has weight {res.ideal_weight}, "
            f"standard {I.format(res.standard_monomial)} has weight {res.standard_weight}")
    return EXIT_NEGATIVE, res.to_json(I.names), text


def cmd_find_weight(args):
    I = load_monomial_ideal(args.ideal)
    res = extremality.find_extremal_weight(I)
    if isinstance(res, extremality.Infeasibility):
        text = "\n".join(["infeasible: no non-increasing weight separates; conflicting constraints"]
                         + ["  " + line for line in res.describe(I.names)])
        return EXIT_NEGATIVE, res.to_json(I.names), text
    cert = extremality.check_extremal(I, res)
    return EXIT_OK, cert.to_json(), f"extremal weight: ({res})"


def _load_point(args):
    _require(args, "base", "point")
    J = load_monomial_ideal(args.base)
    data = _read_json(args.point)
    try:
        return persistence.ChartPoint.from_json(J, data)
    except (ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, borel.PreconditionError):
            raise
        raise InputError(f"{args.point}: {exc}") from exc


def cmd_persistence(args):
    p = _load_point(args)
    v = persistence.local_persistence_check(p, args.forward, parse_weight(args.weight))
    text = [f"dim I_{p.degree + 1} = {v.dim_actual}, dim J_{p.degree + 1} = {v.dim_expected}: "
            + ("persists" if v.persists else "does not persist")]
    if v.checked_degrees:
        text.append(f"{'z':>3} {'dim I_z':>8} {'dim J_z':>8}")
        text += [f"{z:>3} {a:>8} {b:>8}" for z, a, b in v.checked_degrees]
    return (EXIT_OK if v.persists else EXIT_NEGATIVE), v.to_json(), "\n".join(text)


def cmd_flat_fiber(args):
    _require(args, "weight")
    p = _load_point(args)
    try:
        t = Fraction(args.t)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad t: {exc}") from exc
    gens = persistence.flat_family_fiber(p, parse_weight(args.weight), t)
    out = [str(g) for g in gens]
    return EXIT_OK, {"t": str(t), "generators": out}, "\n".join(out)


def cmd_initial_ideal(args):
    order = parse_order(args.order)
    polys = load_polys(args.ideal, order)
    ini = persistence.initial_ideal(polys, order)
    return EXIT_OK, {"order": str(order), "ideal": ini.to_json(order)}, f"in({order}) = {ini}"


def cmd_gb(args):
    order = parse_order(args.order)
    polys = load_polys(args.ideal, order)
    gb = buchberger(polys, order)
    out = [str(g) for g in gb]
    return EXIT_OK, {"order": str(order), "basis": out}, "\n".join(out)


def cmd_chart_equations(args):
    J = load_monomial_ideal(args.ideal)
    w = parse_weight(args.weight)
    mat = chart.build_chart_matrix(J, w)
    order = parse_order(args.order)
    payload = {"ideal": J.to_json(), "parameters": list(mat.chart.param_names)}
    pring = mat.param_ring.with_order(order)
    k = chart.critical_minor_size(mat)
    if k <= min(mat.shape):
        census = chart.minor_census(mat, k)
        minors = [p for _, _, p in census.minors]
        eqs = chart.normalize_signs(trim_generators(minors, order), order)
        payload["minors"] = {"k": k, "candidates": census.candidates,
                             "structural_zero": census.structural_zero,
                             "symbolic_zero": census.symbolic_zero, "nonzero": census.nonzero}
        if args.emit_minors:
            payload["minors"]["list"] = [
                {"rows": list(r), "cols": list(c), "minor": str(p)} for r, c, p in census.minors]
        gb = buchberger(minors, order) if minors else None
    else:
        eqs, gb = [], None
        payload["minors"] = {"k": k, "candidates": 0, "nonzero": 0}
    payload["generators"] = [str(e) for e in eqs]
    payload["groebner_basis"] = [str(g) for g in gb] if gb else []
    try:
        payload["dimension"] = chart.chart_dimension(eqs, pring, order)
    except EmptyVarietyError:
        payload["dimension"] = None
    if args.emit_matrix:
        payload["matrix"] = mat.to_json()
    text = [f"chart parameters: {', '.join(mat.chart.param_names)}",
            f"{k}x{k} minors: {payload['minors'].get('nonzero', 0)} nonzero of "
            f"{payload['minors'].get('candidates', 0)}",
            f"{len(eqs)} trimmed generators:"] + ["  " + e for e in payload["generators"]]
    text.append(f"reduced {order} basis: {len(payload['groebner_basis'])} elements")
    text += ["  " + g for g in payload["groebner_basis"]]
    text.append(f"dimension: {payload['dimension']}")
    if args.emit_matrix:
        text.append(format_matrix(mat))
    return EXIT_OK, payload, "\n".join(text)


def format_matrix(mat) -> str:
    cols = mat.col_names()
    rows = mat.row_names()
    cells = mat.text_entries()
    width = max(len(s) for s in cols + [c for r in cells for c in r])
    head = " " * 4 + " ".join(f"{c:>{width}}" for c in cols)
    body = [f"{r:<4}" + " ".join(f"{c:>{width}}" for c in row) for r, row in zip(rows, cells)]
    return "\n".join([head] + body)


def cmd_grassmannian_sizes(args):
    _require(args, "lex")
    J = load_monomial_ideal(args.ideal)
    L = load_monomial_ideal(args.lex)
    rep = chart.grassmannian_sizes(J, L)
    text = []
    for label, s in (("extremal", rep.extremal), ("lex", rep.lex)):
        text.append(f"{label:<9} Grass({s.r}, S_{s.degree}) with dim S_{s.degree} = {s.ambient}: "
                    f"dimension {s.r} x {s.ambient - s.r} = {s.dimension}")
    return EXIT_OK, rep.to_json(), "\n".join(text)


def cmd_reproduce_paper(args):
    from .reproduce import reproduce_paper

    golden = args.golden
    if golden is not None:
        golden = _read_json(golden)
    try:
        rep = reproduce_paper(golden, forward=args.forward or 0, seed=args.seed)
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed golden data: {exc}") from exc
    return (EXIT_OK if rep.passed else EXIT_NEGATIVE), rep.to_json(), rep.to_text()


COMMANDS = {
    "check-borel": (cmd_check_borel, "is the monomial ideal Borel-fixed?"),
    "borel-generators": (cmd_borel_generators, "Borel generators of a Borel-fixed ideal"),
    "borel-closure": (cmd_borel_closure, "smallest Borel-fixed ideal containing the monomials"),
    "ek-decompose": (cmd_ek_decompose, "generator * cofactor splitting of a monomial"),
    "degree-basis": (cmd_degree_basis, "monomials of I in one degree, by generator block"),
    "hilbert": (cmd_hilbert, "Hilbert function and polynomial"),
    "syzygies": (cmd_syzygies, "first syzygies of an equigenerated Borel-fixed ideal"),
    "lex-segment": (cmd_lex_segment, "ideal of the r lex-largest monomials of degree d"),
    "gotzmann-growth": (cmd_gotzmann_growth, "does dim_m grow to dim_m1 like the lex segment?"),
    "check-extremal": (cmd_check_extremal, "certify or refute extremality for a weight"),
    "find-weight": (cmd_find_weight, "search a non-increasing separating weight"),
    "persistence": (cmd_persistence, "local persistence test at a chart point"),
    "flat-fiber": (cmd_flat_fiber, "generators of the rescaled family at t"),
    "initial-ideal": (cmd_initial_ideal, "initial ideal of polynomial generators"),
    "chart-equations": (cmd_chart_equations, "equations of the Hilbert-scheme chart"),
    "grassmannian-sizes": (cmd_grassmannian_sizes, "Grassmannian sizes: extremal chart vs lex"),
    "reproduce-paper": (cmd_reproduce_paper, "three points in the plane, end to end"),
    "gb": (cmd_gb, "reduced Groebner basis"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gotzmann", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--ideal", help="JSON file {\"vars\": [...], \"gens\": [...]}")
        p.add_argument("--base", help="base ideal file (persistence, flat-fiber)")
        p.add_argument("--point", help="JSON file mapping \"A:B\" to coefficients")
        p.add_argument("--weight", help="comma list like 5,2,1,0 or a JSON file")
        p.add_argument("--order", default="degrevlex", help="lex, degrevlex or weight:w0,...:degrevlex")
        p.add_argument("--degree", type=int)
        p.add_argument("--forward", type=int, default=5 if name == "persistence" else 0)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("-o", "--output", help="write the JSON result here")
        p.add_argument("--json", action="store_true", help="print JSON instead of text")
        if name == "ek-decompose":
            p.add_argument("--monomial")
        if name == "lex-segment":
            p.add_argument("--vars", help="comma-separated variable names")
            p.add_argument("--dim", type=int)
        if name == "gotzmann-growth":
            p.add_argument("--nvars", type=int)
            p.add_argument("--dim-m", type=int)
            p.add_argument("--dim-m1", type=int)
        if name == "flat-fiber":
            p.add_argument("--t", default="1")
        if name == "chart-equations":
            p.add_argument("--emit-matrix", action="store_true")
            p.add_argument("--emit-minors", action="store_true")
        if name == "grassmannian-sizes":
            p.add_argument("--lex", help="lex ideal file")
        if name == "reproduce-paper":
            p.add_argument("--golden", help="golden JSON file (default: bundled)")
    return parser


def dumps(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    if args.command in ("persistence", "flat-fiber") and args.base is None:
        args.base = args.ideal
    needs_ideal = args.command not in ("lex-segment", "gotzmann-growth", "reproduce-paper",
                                       "persistence", "flat-fiber")
    handler = COMMANDS[args.command][0]
    try:
        if needs_ideal:
            _require(args, "ideal")
        code, payload, text = handler(args)
    except (InputError, ParseError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_PARSE
    except (borel.PreconditionError, EmptyVarietyError) as exc:
        print(f"precondition failed: {exc}", file=stderr)
        return EXIT_PRECONDITION
    if args.output:
        Path(args.output).write_text(dumps(payload))
    print(dumps(payload) if args.json else text, file=stdout, end="" if args.json else "\n")
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
