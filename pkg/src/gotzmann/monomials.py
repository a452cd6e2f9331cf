"""Monomials, term orders and the Borel poset.

A monomial is a plain tuple of nonnegative exponents.  Index 0 is the
largest variable, so ``(2, 1, 0)`` is ``x0^2*x1`` and every order here
satisfies ``x0 > x1 > ... > xn``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd, lcm
from typing import Iterable, Sequence

Monomial = tuple


def degree(m: Monomial) -> int:
    return sum(m)


def max_var(m: Monomial) -> int:
    """Largest index with a positive exponent (-1 for the unit monomial)."""
    for i in range(len(m) - 1, -1, -1):
        if m[i]:
            return i
    return -1


def min_var(m: Monomial) -> int:
    """Smallest index with a positive exponent (len(m) for the unit monomial)."""
    for i, e in enumerate(m):
        if e:
            return i
    return len(m)


def one(nvars: int) -> Monomial:
    return (0,) * nvars


def variable(nvars: int, i: int) -> Monomial:
    return tuple(1 if j == i else 0 for j in range(nvars))


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def div(a: Monomial, b: Monomial) -> Monomial:
    """Exact quotient a / b; b must divide a."""
    q = tuple(x - y for x, y in zip(a, b))
    if min(q, default=0) < 0:
        raise ValueError(f"{b} does not divide {a}")
    return q


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def coprime(a: Monomial, b: Monomial) -> bool:
    return not any(x and y for x, y in zip(a, b))


def times_var(m: Monomial, i: int) -> Monomial:
    return m[:i] + (m[i] + 1,) + m[i + 1:]


def format_monomial(m: Monomial, names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


# ---------- term orders ----------

@dataclass(frozen=True)
class WeightVector:
    """Rational weights, one per variable; ``weight(m)`` is the dot product."""

    weights: tuple

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(Fraction(w) for w in self.weights))

    def __len__(self):
        return len(self.weights)

    @property
    def scale(self) -> int:
        return lcm(*(w.denominator for w in self.weights)) if self.weights else 1

    @property
    def integral(self) -> tuple:
        """The weights times the common denominator, as ints."""
        s = self.scale
        return tuple(int(w * s) for w in self.weights)

    def weight(self, m: Monomial) -> Fraction:
        return Fraction(sum(w * e for w, e in zip(self.integral, m)), self.scale)

    def is_non_increasing(self) -> bool:
        return all(a >= b for a, b in zip(self.weights, self.weights[1:]))

    def normalized(self) -> "WeightVector":
        """Smallest positive integer multiple (all-integer, gcd 1)."""
        ints = self.integral
        g = 0
        for v in ints:
            g = gcd(g, v)
        return WeightVector(tuple(v // g for v in ints) if g else ints)

    def __str__(self):
        return ",".join(str(w) for w in self.weights)

    @classmethod
    def parse(cls, text: str) -> "WeightVector":
        return cls(tuple(Fraction(t.strip()) for t in text.split(",") if t.strip()))


def _lex_key(m):
    return m


def _degrevlex_key(m):
    return (sum(m), tuple(-e for e in reversed(m)))


_BASE_KEYS = {"lex": _lex_key, "degrevlex": _degrevlex_key}


@dataclass(frozen=True)
class TermOrder:
    """A term order: ``lex``, ``degrevlex`` or a weighted order.

    Weighted orders compare total degree first, then weight, then the
    tiebreak order.  Within one degree this is the usual weight
    refinement; across degrees it keeps the order a well-order.
    """

    kind: str = "degrevlex"
    weight: WeightVector | None = None
    tiebreak: str = "degrevlex"
    _key: object = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.kind in _BASE_KEYS:
            key = _BASE_KEYS[self.kind]
        elif self.kind == "weighted":
            if self.weight is None:
                raise ValueError("weighted order needs a weight vector")
            if self.tiebreak not in _BASE_KEYS:
                raise ValueError(f"unknown tiebreak order {self.tiebreak!r}")
            w = self.weight.integral
            tb = _BASE_KEYS[self.tiebreak]

            def key(m, w=w, tb=tb):
                return (sum(m), sum(a * b for a, b in zip(w, m)), tb(m))
        else:
            raise ValueError(f"unknown term order {self.kind!r}")
        object.__setattr__(self, "_key", key)

    @property
    def key(self):
        """Sort key: larger key means larger monomial."""
        return self._key

    def compare(self, a: Monomial, b: Monomial) -> int:
        """-1, 0 or 1 as a is less than, equal to, or greater than b."""
        if len(a) != len(b):
            raise ValueError("monomials from different rings")
        if self.weight is not None and len(self.weight) != len(a):
            raise ValueError("weight length does not match the ring")
        ka, kb = self._key(a), self._key(b)
        return (ka > kb) - (ka < kb)

    def sorted_desc(self, monomials: Iterable[Monomial]) -> list:
        return sorted(monomials, key=self._key, reverse=True)

    def __reduce__(self):
        return (TermOrder, (self.kind, self.weight, self.tiebreak))

    def __str__(self):
        if self.kind == "weighted":
            return f"weight:{self.weight}:{self.tiebreak}"
        return self.kind

    @classmethod
    def parse(cls, text: str) -> "TermOrder":
        """Parse ``lex``, ``degrevlex`` or ``weight:5,2,1,0:degrevlex``."""
        text = text.strip()
        if text.startswith("weight:"):
            parts = text.split(":")
            if len(parts) not in (2, 3):
                raise ValueError(f"bad order spec {text!r}")
            tiebreak = parts[2] if len(parts) == 3 else "degrevlex"
            return cls("weighted", WeightVector.parse(parts[1]), tiebreak)
        return cls(text)


LEX = TermOrder("lex")
DEGREVLEX = TermOrder("degrevlex")


def compare(a: Monomial, b: Monomial, order: TermOrder) -> int:
    return order.compare(a, b)


def _compositions(nvars, d):
    # descending lex order
    if nvars == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _compositions(nvars - 1, d - first):
            yield (first,) + rest


@lru_cache(maxsize=512)
def _lex_monomials(nvars, d):
    return tuple(_compositions(nvars, d)) if nvars else (((),) if d == 0 else ())


def monomials_of_degree(nvars: int, d: int, order: TermOrder = LEX) -> list:
    """All C(nvars-1+d, d) monomials of degree d, largest first."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    mons = list(_lex_monomials(nvars, d))
    if order.kind != "lex":
        mons = order.sorted_desc(mons)
    return mons


def count_monomials(nvars: int, d: int) -> int:
    if d < 0:
        return 0
    return comb(nvars - 1 + d, d)


# ---------- Borel poset ----------

def borel_leq(a: Monomial, b: Monomial) -> bool:
    """True iff b is reachable from a by moving variables to smaller indices."""
    if sum(a) != sum(b):
        raise ValueError("Borel order compares monomials of equal degree")
    sa = sb = 0
    for x, y in zip(a, b):
        sa += x
        sb += y
        if sa > sb:
            return False
    return True


def borel_covers(a: Monomial) -> list:
    """Monomials one upward move above a: x_i -> x_{i-1}."""
    out = []
    for i in range(1, len(a)):
        if a[i]:
            out.append(a[:i - 1] + (a[i - 1] + 1, a[i] - 1) + a[i + 1:])
    return out


def borel_lower_covers(a: Monomial) -> list:
    """Monomials one downward move below a: x_i -> x_{i+1}."""
    out = []
    for i in range(len(a) - 1):
        if a[i]:
            out.append(a[:i] + (a[i] - 1, a[i + 1] + 1) + a[i + 2:])
    return out


def borel_up_set(a: Monomial) -> set:
    """Everything Borel-above a (inclusive), by BFS over covers."""
    seen = {a}
    queue = deque([a])
    while queue:
        for b in borel_covers(queue.popleft()):
            if b not in seen:
                seen.add(b)
                queue.append(b)
    return seen
