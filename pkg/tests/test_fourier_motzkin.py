import random
from fractions import Fraction
from itertools import combinations

import pytest
from sympy import Matrix

from gotzmann.fourier_motzkin import Infeasible, solve


def satisfied(cons, w):
    return all(sum(Fraction(a) * x for a, x in zip(coeffs, w)) >= b for coeffs, b, _ in cons)


def farkas_certified(cons):
    """Some subset has y > 0 with y.A = 0 and y.b > 0, proving infeasibility."""
    for k in range(1, len(cons) + 1):
        for sub in combinations(cons, k):
            null = Matrix([list(a) for a, _, _ in sub]).T.nullspace()
            if len(null) != 1:
                continue
            y = list(null[0])
            if all(v < 0 for v in y):
                y = [-v for v in y]
            if all(v > 0 for v in y) and sum(v * b for v, (_, b, _) in zip(y, sub)) > 0:
                return True
    return False


def test_simple_feasible():
    cons = [((1, 0), 1, "a"), ((-1, 1), 2, "b"), ((0, -1), -10, "c")]
    w = solve(cons, 2)
    assert satisfied(cons, w)


def test_simple_infeasible_names_the_conflict():
    cons = [((1, 0), 1, "a"), ((0, 1), 0, "noise"), ((-1, 0), 0, "b")]
    with pytest.raises(Infeasible) as exc:
        solve(cons, 2)
    assert exc.value.origin == {"a", "b"}


def test_free_variables_default_to_zero():
    assert solve([], 3) == [0, 0, 0]


def test_random_systems():
    rng = random.Random(0)
    feasible = infeasible = 0
    for _ in range(300):
        n = rng.randint(1, 4)
        cons = []
        for k in range(rng.randint(1, 8)):
            a = tuple(rng.randint(-3, 3) for _ in range(n))
            cons.append((a, rng.randint(-4, 4), k))
        try:
            w = solve(cons, n)
        except Infeasible as exc:
            infeasible += 1
            assert farkas_certified([c for c in cons if c[2] in exc.origin])
        else:
            feasible += 1
            assert satisfied(cons, w)
    assert feasible and infeasible


def test_planted_solutions_are_found():
    rng = random.Random(1)
    for _ in range(200):
        n = rng.randint(1, 5)
        w0 = [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(n)]
        cons = []
        for k in range(rng.randint(1, 10)):
            a = tuple(rng.randint(-3, 3) for _ in range(n))
            slack = rng.randint(0, 2)
            cons.append((a, sum(x * y for x, y in zip(a, w0)) - slack, k))
        assert satisfied(cons, solve(cons, n))
