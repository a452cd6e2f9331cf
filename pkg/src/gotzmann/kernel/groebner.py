"""Buchberger's algorithm, normal forms, dimension and generator trimming.

Polynomials are handled internally as ``{exponent: Fraction}`` dicts; the
public surface takes and returns :class:`MultiPoly`.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from ..monomials import TermOrder, coprime, div, divides, mono_lcm, mul
from .poly import MultiPoly, PolyRing


class EmptyVarietyError(ValueError):
    """The ideal contains 1."""


def _neg(k):
    if isinstance(k, tuple):
        return tuple(_neg(x) for x in k)
    return -k


def _heap_key(order: TermOrder):
    key = order.key
    return lru_cache(maxsize=None)(lambda m: _neg(key(m)))


def _lead(terms, key):
    return max(terms, key=key)


def _reduce(terms, divisors, hkey, full=True):
    """Remainder of ``terms`` on division by monic ``divisors`` [(lm, terms)].

    The first divisor (in list order) whose leading monomial divides the
    current term is used.  With ``full=False`` only the head is reduced.
    """
    p = dict(terms)
    heap = [(hkey(m), m) for m in p]
    heapq.heapify(heap)
    r = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = p.pop(m, None)
        if c is None:
            continue
        for lm, g in divisors:
            if divides(lm, m):
                q = div(m, lm)
                for e, a in g.items():
                    if e == lm:
                        continue
                    t = mul(e, q)
                    old = p.get(t)
                    if old is None:
                        p[t] = -c * a
                        heapq.heappush(heap, (hkey(t), t))
                    else:
                        v = old - c * a
                        if v:
                            p[t] = v
                        else:
                            del p[t]
                break
        else:
            r[m] = c
            if not full:
                r.update(p)
                return r
    return r


def _monic(terms, key):
    lm = _lead(terms, key)
    inv = 1 / terms[lm]
    return lm, {m: c * inv for m, c in terms.items()}


def _spoly(lm_f, f, lm_g, g):
    L = mono_lcm(lm_f, lm_g)
    uf, ug = div(L, lm_f), div(L, lm_g)
    out = {}
    for m, c in f.items():
        out[mul(m, uf)] = c
    for m, c in g.items():
        t = mul(m, ug)
        v = out.get(t, 0) - c
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Gröbner basis: monic, interreduced, sorted by leading monomial."""

    ring: PolyRing
    order: TermOrder
    generators: tuple

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def leading_monomials(self) -> list:
        return [g.leading_monomial(self.order) for g in self.generators]

    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.generators)

    def normal_form(self, f: MultiPoly) -> MultiPoly:
        return normal_form(f, self)

    def contains(self, f: MultiPoly) -> bool:
        return not normal_form(f, self)

    def spolys_reduce_to_zero(self) -> bool:
        """Check every S-polynomial (no pair criteria) reduces to zero."""
        key = self.order.key
        hkey = _heap_key(self.order)
        divisors = [(_lead(g.terms, key), g.terms) for g in self.generators]
        for (la, a), (lb, b) in combinations(divisors, 2):
            if _reduce(_spoly(la, a, lb, b), divisors, hkey):
                return False
        return True

    def is_interreduced(self) -> bool:
        lms = self.leading_monomials()
        for i, g in enumerate(self.generators):
            for j, lm in enumerate(lms):
                if i == j:
                    continue
                if any(divides(lm, m) for m in g.terms):
                    return False
        return True


def _update(G, B, ih, lms):
    """Gebauer-Möller installation of polynomial ih into basis G / pairs B."""
    mh = lms[ih]
    C = list(G)
    D = []
    while C:
        ig = C.pop(0)
        mg = lms[ig]
        L = mono_lcm(mh, mg)

        def lcm_divides(ip):
            return divides(mono_lcm(mh, lms[ip]), L)

        if coprime(mh, mg) or (
            not any(lcm_divides(ip) for ip in C) and not any(lcm_divides(ip) for ip in D)
        ):
            D.append(ig)
    E = [(ig, ih) for ig in D if not coprime(mh, lms[ig])]
    B_new = []
    for ig1, ig2 in B:
        m1, m2 = lms[ig1], lms[ig2]
        L = mono_lcm(m1, m2)
        if not divides(mh, L) or mono_lcm(m1, mh) == L or mono_lcm(m2, mh) == L:
            B_new.append((ig1, ig2))
    B_new.extend(E)
    G_new = [ig for ig in G if not divides(mh, lms[ig])]
    G_new.append(ih)
    return G_new, B_new


def buchberger(gens: Sequence[MultiPoly], order: TermOrder | None = None,
               ring: PolyRing | None = None) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``gens``.

    Normal selection strategy (smallest lcm first under the order) with
    Gebauer-Möller pair elimination.  The zero ideal gives an empty basis.
    """
    gens = list(gens)
    if ring is None:
        if not gens:
            raise ValueError("cannot infer the ring of an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring.names != ring.names:
            raise ValueError("generators from different rings")
    order = order or ring.order
    key = order.key
    hkey = _heap_key(order)

    polys, lms = [], []
    G, B = [], []

    def install(terms):
        lm, f = _monic(terms, key)
        polys.append(f)
        lms.append(lm)
        return len(polys) - 1

    for g in gens:
        if not g:
            continue
        r = _reduce(g.terms, [(lms[i], polys[i]) for i in G], hkey)
        if not r:
            continue
        G, B = _update(G, B, install(r), lms)

    while B:
        best = min(B, key=lambda pr: (sum(mono_lcm(lms[pr[0]], lms[pr[1]])),
                                      key(mono_lcm(lms[pr[0]], lms[pr[1]])), pr))
        B.remove(best)
        i, j = best
        s = _spoly(lms[i], polys[i], lms[j], polys[j])
        h = _reduce(s, [(lms[k], polys[k]) for k in G], hkey)
        if h:
            G, B = _update(G, B, install(h), lms)

    if any(not any(lms[i]) for i in G):
        return GroebnerBasis(ring, order, (ring.one,))

    G = sorted(G, key=lambda i: key(lms[i]))
    reduced = []
    for i in G:
        others = [(lms[k], polys[k]) for k in G if k != i]
        tail = _reduce(polys[i], others, hkey)
        reduced.append(MultiPoly(ring, tail, _clean=True))
    return GroebnerBasis(ring, order, tuple(reduced))


def normal_form(f: MultiPoly, gb: GroebnerBasis) -> MultiPoly:
    """Remainder of f modulo the basis; zero iff f lies in the ideal."""
    if f.ring.names != gb.ring.names:
        raise ValueError("polynomial and basis live in different rings")
    key = gb.order.key
    divisors = [(_lead(g.terms, key), g.terms) for g in gb.generators]
    return MultiPoly(f.ring, _reduce(f.terms, divisors, _heap_key(gb.order)), _clean=True)


def krull_dimension(gb: GroebnerBasis) -> int:
    """Dimension of the quotient ring: the largest set of variables that
    carries no leading monomial of the basis."""
    lms = gb.leading_monomials()
    if any(not any(m) for m in lms):
        raise EmptyVarietyError("ideal contains 1: empty variety")
    n = gb.ring.nvars
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in lms]
    for size in range(n, -1, -1):
        for S in combinations(range(n), size):
            s = set(S)
            if not any(sup <= s for sup in supports):
                return size
    return 0


def ideal_equal(gens_a: Sequence[MultiPoly], gens_b: Sequence[MultiPoly],
                order: TermOrder | None = None) -> bool:
    """Ideal equality by mutual normal forms."""
    ga = buchberger(gens_a, order)
    gb = buchberger(gens_b, order)
    return all(ga.contains(g) for g in gens_b) and all(gb.contains(g) for g in gens_a)


def trim_generators(gens: Sequence[MultiPoly], order: TermOrder | None = None) -> list:
    """A generating subset from which no element can be dropped.

    Candidates are taken by (total degree, leading term); each is kept only
    if it is not already in the ideal of those kept before it.  Then kept
    elements lying in the ideal of the others are removed until nothing
    more can go.
    """
    cands = []
    seen = set()
    for g in gens:
        if g and g not in seen:
            seen.add(g)
            cands.append(g)
    if not cands:
        return []
    order = order or cands[0].ring.order
    key = order.key
    cands.sort(key=lambda g: (g.total_degree(), key(g.leading_monomial(order))))

    kept = []
    gb = None
    for c in cands:
        if gb is not None and gb.contains(c):
            continue
        kept.append(c)
        gb = buchberger(list(gb.generators) + [c] if gb else [c], order)

    changed = True
    while changed:
        changed = False
        for i in range(len(kept) - 1, -1, -1):
            others = kept[:i] + kept[i + 1:]
            if others and buchberger(others, order).contains(kept[i]):
                del kept[i]
                changed = True
                break
    return kept
