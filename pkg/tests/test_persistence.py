import random
from fractions import Fraction

import pytest

from gotzmann.borel import MonomialIdeal, PreconditionError, hilbert_function, truncate
from gotzmann.chart import hilbert_chart_equations, sample_chart_points, symbolic_chart
from gotzmann.extremality import find_extremal_weight
from gotzmann.kernel.poly import PolyRing
from gotzmann.monomials import DEGREVLEX, LEX, TermOrder, WeightVector
from gotzmann.persistence import (
    ChartPoint,
    chart_generators,
    dim_in_degree,
    ek_basis_rank,
    flat_family_fiber,
    initial_ideal,
    local_persistence_check,
    random_chart_point,
)

XYZ = ["x", "y", "z"]


def ideal(names, *gens):
    return MonomialIdeal.parse(names, gens)


def point(J, **coeffs):
    """ChartPoint from keyword pairs like x2_xz=1 (A and B joined by '_')."""
    ring = J.ring
    out = {}
    for key, c in coeffs.items():
        a, b = key.split("_")
        out[(ring.parse_monomial(_expand(a)), ring.parse_monomial(_expand(b)))] = c
    return ChartPoint(J, out)


def _expand(short):
    # "x2" -> "x^2", "xz" -> "x*z"
    parts, i = [], 0
    while i < len(short):
        v = short[i]
        i += 1
        e = ""
        while i < len(short) and short[i].isdigit():
            e += short[i]
            i += 1
        parts.append(v + (f"^{e}" if e else ""))
    return "*".join(parts)


@pytest.fixture(scope="module")
def samples():
    J = ideal(XYZ, "x^2", "x*y", "y^2")
    chart = symbolic_chart(J)
    eqs = hilbert_chart_equations(J)
    return J, chart, sample_chart_points(chart, eqs, 60, seed=1)


def test_origin_generators():
    J = ideal(XYZ, "x^2", "x*y", "y^2")
    gens = chart_generators(ChartPoint(J))
    assert [str(g) for g in gens] == ["x^2", "x*y", "y^2"]
    X = ideal(XYZ, "x^3")
    p = random_chart_point(X, random.Random(0))
    (f,) = chart_generators(p)
    assert f.coefficient((3, 0, 0)) == 1 and len(p.R) == 9


def test_three_point_chart_generators():
    J = ideal(XYZ, "x^2", "x*y", "y^2")
    vals = dict(zip("ABCDEFGHI", [Fraction(i, 7) for i in range(1, 10)]))
    chart = symbolic_chart(J)
    p = chart.point(vals)
    ring = PolyRing(tuple(XYZ))
    A, B, C, D, E, F, G, H, I = (vals[c] for c in "ABCDEFGHI")
    x, y, z = ring.gens()
    expected = [x * x + x * z * A + y * z * B + z * z * C,
                x * y + x * z * D + y * z * E + z * z * F,
                y * y + x * z * G + y * z * H + z * z * I]
    assert chart_generators(p) == expected


def test_point_validation_and_json():
    J = ideal(XYZ, "x^2", "x*y", "y^2")
    p = point(J, x2_xz=Fraction(1, 2), xy_z2=-3)
    assert p.to_json() == {"x^2:x*z": "1/2", "x*y:z^2": "-3"}
    assert ChartPoint.from_json(J, p.to_json()) == p
    with pytest.raises(PreconditionError):
        point(J, x2_xy=1)
    with pytest.raises(ValueError):
        ChartPoint.from_json(J, {"x^2": "1"})


def test_non_equigenerated_base_is_truncated():
    I = ideal(XYZ, "x", "y^3")
    p = ChartPoint(I)
    assert p.base == truncate(I, 3) and p.degree == 3
    assert len(p.F) == 7 and len(p.R) == 3


def test_dim_in_degree_examples():
    J = ideal(XYZ, "x^2", "x*y", "y^2")
    gens = chart_generators(ChartPoint(J))
    assert dim_in_degree(gens, 3) == hilbert_function(J, 3) == 7
    assert dim_in_degree(gens, 2) == 3
    rigged = chart_generators(point(J, y2_z2=1))
    assert dim_in_degree(rigged, 3) == 8
    with pytest.raises(PreconditionError):
        dim_in_degree(gens, 1)
    ring = J.ring
    with pytest.raises(PreconditionError):
        dim_in_degree([ring.parse("x^2 + y")], 3)


def test_random_chart_points_are_generic():
    # a random point of the Grassmannian chart misses the Hilbert scheme
    J = ideal(XYZ, "x^2", "x*y", "y^2")
    rng = random.Random(3)
    for _ in range(10):
        p = random_chart_point(J, rng, -9, 9)
        assert dim_in_degree(chart_generators(p), 3) == 9


def test_origin_persists():
    for J in [ideal(XYZ, "x^2", "x*y", "y^2"), ideal("xyzw", "x^2", "x*y", "x*z", "y^3")]:
        v = local_persistence_check(ChartPoint(J), forward=5)
        assert v.persists and v.forward_agrees()
        m = ChartPoint(J).degree
        assert [z for z, _, _ in v.checked_degrees] == list(range(m, m + 6))


def test_rigged_point_fails_forward():
    J = ideal(XYZ, "x^2", "x*y", "y^2")
    v = local_persistence_check(point(J, y2_z2=1), forward=5)
    assert (v.dim_actual, v.dim_expected, v.persists) == (8, 7, False)
    assert not v.forward_agrees()


def test_persistence_needs_extremal_base():
    I = ideal(XYZ, "x^2", "x*y^3", "y^4")
    with pytest.raises(PreconditionError):
        local_persistence_check(ChartPoint(I))
    J = ideal(XYZ, "x^2", "x*y", "y^2")
    with pytest.raises(PreconditionError):
        local_persistence_check(ChartPoint(J), weight=WeightVector((1, 2, 3)))


def test_persistence_equivalence(samples):
    J, _, pts = samples
    kinds = set()
    for sp in pts:
        v = local_persistence_check(sp.point, forward=5)
        assert v.persists == v.forward_agrees()
        assert v.persists == (sp.kind == "on")
        kinds.add(sp.kind)
    assert kinds == {"on", "perturbed", "random"}


def test_basis_claim(samples):
    J, _, pts = samples
    for sp in pts:
        p = sp.point
        if dim_in_degree(chart_generators(p), 3) == 7:
            assert ek_basis_rank(p) == 7


def test_flat_family(samples):
    J, _, pts = samples
    w = find_extremal_weight(J)
    worder = TermOrder("weighted", w, "degrevlex")
    for sp in pts:
        p = sp.point
        assert flat_family_fiber(p, w, 1) == chart_generators(p)
        assert flat_family_fiber(p, w, 0) == chart_generators(ChartPoint(J))
        if sp.kind != "on":
            continue
        for t in (Fraction(2), Fraction(1, 3), Fraction(-1)):
            assert dim_in_degree(flat_family_fiber(p, w, t), 3) == 7
        ini = initial_ideal(chart_generators(p), worder)
        for d in (2, 3):
            assert ini.monomials(d) == J.monomials(d)


def test_flat_family_rescaling():
    J = ideal(XYZ, "x^2", "x*y", "y^2")
    p = point(J, x2_z2=5)
    (f, _, _) = flat_family_fiber(p, WeightVector((2, 1, 0)), Fraction(1, 2))
    assert f.coefficient((0, 0, 2)) == Fraction(5, 16)
    with pytest.raises(PreconditionError):
        flat_family_fiber(point(J, y2_xz=1), WeightVector((2, 1, 0)), 2)
    with pytest.raises(PreconditionError):
        flat_family_fiber(p, WeightVector((Fraction(1, 2), 0, 0)), 2)


def test_initial_ideal_examples(samples):
    J, _, pts = samples
    ring = J.ring
    mono = [ring.parse(g) for g in ("x^2", "x*y", "y^2")]
    assert initial_ideal(mono, DEGREVLEX) == J
    assert initial_ideal([ring.parse("x^2 - y*z")], LEX) == ideal(XYZ, "x^2")
    on = [sp.point for sp in pts if sp.kind == "on"]
    for p in on[:5]:
        assert initial_ideal(chart_generators(p), DEGREVLEX) == J
    with pytest.raises(PreconditionError):
        initial_ideal([ring.zero])
