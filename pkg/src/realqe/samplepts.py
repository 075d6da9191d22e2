"""Rational sample points meeting every connected component of
{ y in R^t : p_1(y) != 0 and ... and p_k(y) != 0 }.

Cylindrical recursion on the parameter block: each level keeps a squarefree,
pairwise-coprime basis; projection one variable down takes contents, leading
coefficients, discriminants and pairwise resultants; the base level isolates
real roots and picks the simplest rationals strictly between consecutive
roots plus one point below and one above; lifting specializes the level
polynomials at each base point and repeats the interval construction in the
fiber.  Only full-dimensional cells are sampled, which is enough for strict
inequations.  Variables are eliminated in the order y_t, ..., y_1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactalg import Poly, VarSpace, discriminant, divexact, poly_gcd, resultant, squarefree_part
from .real1d import (
    IsolatingInterval,
    eval_univar,
    isolate_with_squarefree,
    refine_interval,
)


@dataclass(frozen=True)
class SamplePointSet:
    points: tuple[tuple[Fraction, ...], ...]
    defining_polys: tuple[Poly, ...]


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """The rational with smallest denominator strictly inside (lo, hi)."""
    if not lo < hi:
        raise ValueError("empty interval")
    if lo < 0 < hi:
        return Fraction(0)
    if hi <= 0:
        return -simplest_between(-hi, -lo)
    if lo == 0:
        if hi > 1:
            return Fraction(1)
        k = 1 / hi
        return Fraction(1, k.numerator // k.denominator + 1)
    fl = lo.numerator // lo.denominator
    if hi > fl + 1:
        return Fraction(fl + 1)
    if lo == fl:
        k = 1 / (hi - fl)
        return fl + Fraction(1, k.numerator // k.denominator + 1)
    t = simplest_between(1 / (hi - fl), 1 / (lo - fl))
    return fl + 1 / t


def _poly_key(p: Poly):
    items = tuple(sorted((m, c.numerator, c.denominator)
                         for m, c in p.terms.items()))
    return (p.deg(), len(p.terms), items)


def _canon_sort(polys):
    return sorted(polys, key=_poly_key)


def _coprime_squarefree_basis(polys) -> list[Poly]:
    """Squarefree pairwise-coprime polynomials with the same union of zeros."""
    work = []
    for p in polys:
        if p.is_zero():
            raise ValueError("zero polynomial among the inequations")
        if p.is_constant():
            continue
        sf = squarefree_part(p)
        if sf not in work:
            work.append(sf)
    changed = True
    while changed:
        changed = False
        for i in range(len(work)):
            for j in range(i + 1, len(work)):
                g = poly_gcd(work[i], work[j])
                if g.is_constant():
                    continue
                a = divexact(work[i], g).primitive()
                b = divexact(work[j], g).primitive()
                repl = [q for q in (g, a, b) if not q.is_constant()]
                work = [work[k] for k in range(len(work)) if k not in (i, j)]
                for q in repl:
                    if q not in work:
                        work.append(q)
                changed = True
                break
            if changed:
                break
    return _canon_sort(work)


def _project(level: list[Poly], var: int) -> list[Poly]:
    """Open-CAD projection of a squarefree coprime set, eliminating var."""
    out = []
    with_var = []
    for p in level:
        if p.deg_in(var) == 0:
            out.append(p)
            continue
        coeffs = p.univar_coeffs(var)
        cont = coeffs[0].space.zero()
        for c in coeffs:
            cont = poly_gcd(cont, c)
            if cont.is_constant():
                break
        pp = p if cont.is_constant() else divexact(p, cont).primitive()
        if not cont.is_constant():
            out.append(cont)
        lc = pp.univar_coeffs(var)[-1]
        if not lc.is_constant():
            out.append(lc)
        if pp.deg_in(var) >= 2:
            d = discriminant(pp, var)
            if not d.is_constant():
                out.append(d)
        with_var.append(pp)
    for i in range(len(with_var)):
        for j in range(i + 1, len(with_var)):
            r = resultant(with_var[i], with_var[j], var)
            if r.is_zero():
                raise AssertionError("coprime polynomials with zero resultant")
            if not r.is_constant():
                out.append(r)
    return out


def _roots_in_window(g: Poly, var: int, lo: Fraction, hi: Fraction) -> bool:
    """Whether g has a root inside [lo, hi]; lo and hi must not be roots."""
    hits, sf = isolate_with_squarefree(g, var)
    for iv in hits:
        cur = iv
        while True:
            if cur.hi < lo or cur.lo > hi:
                break
            if lo <= cur.lo and cur.hi <= hi:
                return True
            cur = refine_interval(sf, cur, cur.width() / 4, var)
    return False


def _disjoint_root_intervals(fiber_polys: list[tuple[Poly, int]]):
    """Isolate roots of each polynomial and refine until the intervals are
    pairwise disjoint; isolating intervals of coincident roots of distinct
    polynomials are merged.

    Distinctness of persistently-overlapping roots of different polynomials
    is decided exactly by a gcd once cheap refinement fails to separate;
    proven-distinct pairs eventually separate by further bisection.
    """
    items = []
    for ident, (p, var) in enumerate(fiber_polys):
        ivs, sf = isolate_with_squarefree(p, var)
        for iv in ivs:
            items.append([iv, sf, var, ident])
    decided_distinct: set[tuple[int, int]] = set()
    stalled: dict[tuple[int, int], int] = {}
    guard = 0
    while True:
        guard += 1
        if guard > 100000:
            raise AssertionError("interval separation did not converge")
        items.sort(key=lambda it: (it[0].lo, it[0].hi))
        clash = None
        for a, b in zip(items, items[1:]):
            if a[0].overlaps(b[0]):
                clash = (a, b)
                break
        if clash is None:
            return [it[0] for it in items]
        a, b = clash
        pair = (min(a[3], b[3]), max(a[3], b[3]))
        if a[3] != b[3] and pair not in decided_distinct:
            stalled[pair] = stalled.get(pair, 0) + 1
            if stalled[pair] > 48:
                g = poly_gcd(a[1], b[1])
                lo = max(a[0].lo, b[0].lo)
                hi = min(a[0].hi, b[0].hi)
                if not g.is_constant() and lo <= hi and \
                        _roots_in_window(g, a[2], lo, hi):
                    # the two intervals isolate the same number: keep one
                    items.remove(b)
                    continue
                decided_distinct.add(pair)
        for it in (a, b):
            w = it[0].width()
            if w > 0:
                it[0] = refine_interval(it[1], it[0], w / 4, it[2])


def _cut_points(intervals: list[IsolatingInterval]) -> list[Fraction]:
    """One rational below, between consecutive, and above the isolated roots."""
    if not intervals:
        return [Fraction(0)]
    lo0 = intervals[0].lo
    hiN = intervals[-1].hi
    cuts = [Fraction(lo0.numerator // lo0.denominator - 1)]
    for a, b in zip(intervals, intervals[1:]):
        if a.hi < b.lo:
            cuts.append(simplest_between(a.hi, b.lo))
        else:  # intervals share a non-root endpoint
            cuts.append(a.hi)
    cuts.append(Fraction(-((-hiN.numerator) // hiN.denominator) + 1))
    return cuts


def sample_points(polys: list[Poly], t: int | None = None) -> SamplePointSet:
    """Sample points meeting every component of the inequation locus.

    The polynomials must be nonzero and involve only the parameter block y.
    Points come out sorted, deterministic, and each satisfies every input
    inequation strictly.
    """
    if not polys:
        raise ValueError("no inequations given")
    space = polys[0].space
    if t is None:
        t = space.t
    if t < 1:
        raise ValueError("need at least one parameter")
    if any(p.is_zero() for p in polys):
        raise ValueError("zero polynomial among the inequations")
    if any(p.deg_x() > 0 for p in polys):
        raise ValueError("inequations must involve parameters only")
    n = space.n
    yvars = list(range(n, n + t))

    def _primitive_dedupe(ps):
        out = []
        for p in ps:
            if p.is_constant():
                continue
            prim = p.primitive()
            if prim not in out:
                out.append(prim)
        return _canon_sort(out)

    # the base level needs no coprime refinement: coincident roots across
    # polynomials are detected lazily during interval separation
    levels: dict[int, list[Poly]] = {}
    levels[t] = (_coprime_squarefree_basis(polys) if t > 1
                 else _primitive_dedupe(polys))
    for k in range(t, 1, -1):
        proj = _project(levels[k], yvars[k - 1])
        levels[k - 1] = (_coprime_squarefree_basis(proj) if k - 1 > 1
                         else _primitive_dedupe(proj))

    def lift(k: int, prefix: tuple[Fraction, ...]) -> list[tuple[Fraction, ...]]:
        var = yvars[k - 1]
        assignment = {space.y_names[i]: prefix[i] for i in range(k - 1)}
        fiber = []
        for p in levels[k]:
            if p.deg_in(var) == 0:
                continue
            q = p.evaluate(assignment) if assignment else p
            fiber.append((q, var))
        intervals = _disjoint_root_intervals(fiber)
        out = []
        for cut in _cut_points(intervals):
            if any(eval_univar(q, v, cut) == 0 for q, v in fiber):
                raise AssertionError("cut point hit a root")
            out.append(prefix + (cut,))
        return out

    points = [()]
    for k in range(1, t + 1):
        nxt: list[tuple[Fraction, ...]] = []
        for prefix in points:
            nxt.extend(lift(k, prefix))
        points = nxt

    final = []
    for pt in points:
        assignment = dict(zip(space.y_names, pt))
        if all(p.eval_rat(assignment) != 0 for p in polys):
            final.append(pt)
    return SamplePointSet(tuple(final), tuple(polys))
