"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ..monomials import DEGREVLEX, Monomial, TermOrder, format_monomial


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class PolyRing:
    """Variable names plus the term order used for printing and leading terms."""

    names: tuple
    order: TermOrder = DEGREVLEX

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def with_order(self, order: TermOrder) -> "PolyRing":
        return PolyRing(self.names, order)

    def index(self, name: str) -> int:
        return self.names.index(name)

    @property
    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    @property
    def one(self) -> "MultiPoly":
        return MultiPoly(self, {(0,) * self.nvars: Fraction(1)})

    def const(self, c) -> "MultiPoly":
        return MultiPoly(self, {(0,) * self.nvars: Fraction(c)})

    def monomial(self, m: Monomial, c=1) -> "MultiPoly":
        return MultiPoly(self, {tuple(m): Fraction(c)})

    def var(self, name_or_index) -> "MultiPoly":
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        return self.monomial(tuple(1 if j == i else 0 for j in range(self.nvars)))

    def gens(self) -> list:
        return [self.var(i) for i in range(self.nvars)]

    def parse(self, text: str) -> "MultiPoly":
        return parse_poly(text, self)

    def parse_monomial(self, text: str) -> Monomial:
        p = parse_poly(text, self)
        if len(p.terms) != 1 or p.leading_coefficient() != 1:
            raise ParseError(f"not a monomial: {text!r}")
        return next(iter(p.terms))


class MultiPoly:
    """Immutable sparse polynomial: a map exponent-tuple -> nonzero Fraction."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping | None = None, *, _clean=False):
        self.ring = ring
        if _clean:
            self.terms = terms
        else:
            clean = {}
            n = ring.nvars
            for m, c in (terms or {}).items():
                m = tuple(m)
                if len(m) != n:
                    raise ValueError(f"exponent {m} does not fit ring {ring.names}")
                c = Fraction(c)
                if c:
                    clean[m] = c
            self.terms = clean
        self._hash = None

    # ----- basic protocol -----
    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.ring.names == other.ring.names and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.names, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"MultiPoly({str(self)!r})"

    def __str__(self):
        return format_poly(self)

    def __reduce__(self):
        return (MultiPoly, (self.ring, self.terms))

    # ----- arithmetic -----
    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.ring.names != self.ring.names:
                raise ValueError("polynomials from different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return MultiPoly(self.ring, out, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.ring, {m: -c for m, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.ring.zero
            return MultiPoly(self.ring, {m: c * other for m, c in self.terms.items()}, _clean=True)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    del out[m]
        return MultiPoly(self.ring, out, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result, base = self.ring.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def mul_term(self, m: Monomial, c=1) -> "MultiPoly":
        c = Fraction(c)
        if not c:
            return self.ring.zero
        return MultiPoly(
            self.ring,
            {tuple(a + b for a, b in zip(k, m)): v * c for k, v in self.terms.items()},
            _clean=True,
        )

    # ----- inspection -----
    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def leading_monomial(self, order: TermOrder | None = None) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=(order or self.ring.order).key)

    def leading_coefficient(self, order: TermOrder | None = None) -> Fraction:
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: TermOrder | None = None) -> "MultiPoly":
        if not self.terms:
            return self
        return self * (1 / self.leading_coefficient(order))

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(tuple(m), Fraction(0))

    def support(self, order: TermOrder | None = None) -> list:
        """Monomials in descending order."""
        return sorted(self.terms, key=(order or self.ring.order).key, reverse=True)

    def variables(self) -> set:
        return {i for m in self.terms for i, e in enumerate(m) if e}

    # ----- evaluation / substitution -----
    def evaluate(self, point) -> Fraction:
        """Evaluate at a sequence of values or a name -> value mapping."""
        vals = self._values(point)
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for v, e in zip(vals, m):
                if e:
                    t *= v ** e
            total += t
        return total

    def partial_evaluate(self, assignment: Mapping[str, object]) -> "MultiPoly":
        """Substitute numbers for some variables; the ring is unchanged."""
        idx = {self.ring.index(k): Fraction(v) for k, v in assignment.items()}
        out = {}
        for m, c in self.terms.items():
            t = c
            mm = list(m)
            for i, v in idx.items():
                if mm[i]:
                    t *= v ** mm[i]
                    mm[i] = 0
            if t:
                key = tuple(mm)
                s = out.get(key, 0) + t
                if s:
                    out[key] = s
                else:
                    del out[key]
        return MultiPoly(self.ring, out, _clean=True)

    def substitute(self, mapping: Mapping[str, "MultiPoly"]) -> "MultiPoly":
        """Replace variables by polynomials of the same ring."""
        idx = {self.ring.index(k): v for k, v in mapping.items()}
        result = self.ring.zero
        for m, c in self.terms.items():
            rest = list(m)
            t = self.ring.one * c
            for i, p in idx.items():
                if rest[i]:
                    t = t * p ** rest[i]
                    rest[i] = 0
            result = result + t.mul_term(tuple(rest))
        return result

    def _values(self, point):
        if isinstance(point, Mapping):
            return [Fraction(point[n]) for n in self.ring.names]
        vals = [Fraction(v) for v in point]
        if len(vals) != self.ring.nvars:
            raise ValueError("point has wrong length")
        return vals

    def to_ring(self, ring: PolyRing, index_map: Sequence[int] | None = None) -> "MultiPoly":
        """Move into another ring; variable i goes to index_map[i] (default: by name)."""
        if index_map is None:
            index_map = [ring.index(n) for n in self.ring.names]
        out = {}
        for m, c in self.terms.items():
            mm = [0] * ring.nvars
            for i, e in enumerate(m):
                if e:
                    mm[index_map[i]] += e
            out[tuple(mm)] = c
        return MultiPoly(ring, out, _clean=True)


# ---------- text syntax ----------

def _format_coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: MultiPoly, order: TermOrder | None = None) -> str:
    if not p.terms:
        return "0"
    out = []
    for i, m in enumerate(p.support(order)):
        c = p.terms[m]
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = format_monomial(m, p.ring.names)
        if mono == "1":
            body = _format_coef(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_coef(a)}*{mono}"
        if i == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos = 0
    toks = []
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        if mt.group(1):
            toks.append(("num", int(mt.group(1))))
        elif mt.group(2):
            toks.append(("name", mt.group(2)))
        else:
            toks.append(("op", "^" if mt.group(3) == "**" else mt.group(3)))
        pos = mt.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return toks


def parse_poly(text: str, ring: PolyRing) -> MultiPoly:
    """Parse ``coef*x^e*y - p/q*z + ...`` into a polynomial of ``ring``."""
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty polynomial")
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take():
        nonlocal pos
        tok = peek()
        pos += 1
        return tok

    def factor():
        kind, val = take()
        if kind == "num":
            if peek() == ("op", "/"):
                take()
                k2, den = take()
                if k2 != "num" or den == 0:
                    raise ParseError(f"bad denominator in {text!r}")
                return ring.const(Fraction(val, den))
            return ring.const(val)
        if kind == "name":
            if val not in ring.names:
                raise ParseError(f"unknown variable {val!r}; ring has {ring.names}")
            v = ring.var(val)
            if peek() == ("op", "^"):
                take()
                k2, e = take()
                if k2 != "num":
                    raise ParseError(f"bad exponent in {text!r}")
                v = v ** e
            return v
        if (kind, val) == ("op", "("):
            inner = expr()
            if take() != ("op", ")"):
                raise ParseError(f"unbalanced parenthesis in {text!r}")
            if peek() == ("op", "^"):
                take()
                k2, e = take()
                if k2 != "num":
                    raise ParseError(f"bad exponent in {text!r}")
                inner = inner ** e
            return inner
        raise ParseError(f"unexpected token {val!r} in {text!r}")

    def term():
        t = factor()
        while peek() == ("op", "*"):
            take()
            t = t * factor()
        return t

    def expr():
        sign = 1
        if peek() in (("op", "+"), ("op", "-")):
            sign = -1 if take()[1] == "-" else 1
        total = term() * sign
        while peek() in (("op", "+"), ("op", "-")):
            s = -1 if take()[1] == "-" else 1
            total = total + term() * s
        return total

    result = expr()
    if pos != len(toks):
        raise ParseError(f"trailing input in {text!r}")
    return result


def parse_polys(texts: Iterable[str], ring: PolyRing) -> list:
    return [parse_poly(t, ring) for t in texts]
