"""Exact Fourier-Motzkin elimination for systems ``a . w >= b``.

Each constraint remembers which input constraints it was derived from, so
an infeasible system comes with the set of inputs that produced the
contradiction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple
    rhs: Fraction
    origin: frozenset

    def normalized(self) -> "Constraint":
        scale = max((abs(c) for c in self.coeffs), default=0)
        if not scale:
            return self
        return Constraint(tuple(c / scale for c in self.coeffs), self.rhs / scale, self.origin)


class Infeasible(Exception):
    def __init__(self, origin: frozenset):
        super().__init__(f"infeasible; conflicting inputs {sorted(origin)}")
        self.origin = origin


def _dedupe(cons):
    best = {}
    for c in cons:
        c = c.normalized()
        if not any(c.coeffs):
            if c.rhs > 0:
                raise Infeasible(c.origin)
            continue
        key = c.coeffs
        old = best.get(key)
        # keep the tightest; on ties the one with the smaller provenance
        if old is None or c.rhs > old.rhs or (
            c.rhs == old.rhs and (len(c.origin), sorted(c.origin)) < (len(old.origin), sorted(old.origin))
        ):
            best[key] = c
    return [best[k] for k in sorted(best)]


def _eliminate(cons, j, step):
    # Chernikov: after `step` eliminations a combination of more than
    # step + 1 inputs is implied by the others and can be dropped
    keep, pos, neg = [], [], []
    for c in cons:
        a = c.coeffs[j]
        (pos if a > 0 else neg if a < 0 else keep).append(c)
    out = list(keep)
    contradictions = []
    for p in pos:
        for q in neg:
            ap, aq = p.coeffs[j], -q.coeffs[j]
            coeffs = tuple(aq * x + ap * y for x, y in zip(p.coeffs, q.coeffs))
            new = Constraint(coeffs, aq * p.rhs + ap * q.rhs, p.origin | q.origin)
            if not any(new.coeffs) and new.rhs > 0:
                contradictions.append(new.origin)
            elif len(new.origin) <= step + 1:
                out.append(new)
    if contradictions:
        raise Infeasible(min(contradictions, key=lambda o: (len(o), sorted(o))))
    return _dedupe(out)


def solve(constraints: Sequence[tuple], nvars: int) -> list:
    """Find w with ``a . w >= b`` for every ``(a, b, label)`` in constraints.

    Variables are eliminated in index order; back-substitution sets each
    variable to the midpoint of its interval, lower bound + 1 (or upper
    bound - 1) when half-unbounded, and 0 when free.  Raises
    :class:`Infeasible` carrying the labels of a contradicting subset.
    """
    cons = [Constraint(tuple(Fraction(x) for x in a), Fraction(b), frozenset([label]))
            for a, b, label in constraints]
    stages = []
    cur = _dedupe(cons)
    for j in range(nvars):
        stages.append(cur)
        cur = _eliminate(cur, j, j + 1)
    w = [Fraction(0)] * nvars
    for j in range(nvars - 1, -1, -1):
        lo = hi = None
        for c in stages[j]:
            a = c.coeffs[j]
            if not a:
                continue
            rest = sum(c.coeffs[k] * w[k] for k in range(j + 1, nvars))
            bound = (c.rhs - rest) / a
            if a > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        if lo is not None and hi is not None:
            w[j] = (lo + hi) / 2
        elif lo is not None:
            w[j] = lo + 1
        elif hi is not None:
            w[j] = hi - 1
    return w
