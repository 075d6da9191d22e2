"""Monomial orders, Buchberger's algorithm, reduced Groebner bases, normal
forms, quotient bases and staircase dimension over Q and over Q(y).

Two coefficient regimes share the pair-management logic:

* field regime ("Q"): coefficients in Q, monomials over all variables,
  grevlex or the block order grevlex(x) > grevlex(y);
* parametric regime ("Q(y)"): coefficients in Q[y] treated as elements of
  the field Q(y), monomials over x only under grevlex(x).  Elements are
  stored as primitive polynomials of Q[x,y] with positive leading
  y-coefficient, and every reduction is fraction-free: pseudo-division by
  the leading y-coefficient followed by content removal.

The selection strategy is sugar; pair elimination uses Buchberger's first
(coprime leading monomials) and second (chain) criteria.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .exactalg import (
    Poly,
    _ratio,
    VarSpace,
    divexact,
    grevlex_key,
    mono_deg,
    mono_div,
    mono_divides,
    mono_lcm,
    poly_gcd,
)

FIELD_Q = "Q"
FIELD_QY = "Q(y)"


class NotZeroDimensional(Exception):
    """The staircase is infinite: the ideal is not zero-dimensional."""


# ---------------------------------------------------------------------------
# monomial orders
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MonomialOrder:
    """Admissible monomial order given by a sort key (max key = leading)."""

    kind: str  # "grevlex_all" | "block" | "subset"
    split: int = 0
    subset: tuple = ()

    def key(self, mono: tuple):
        if self.kind == "grevlex_all":
            return grevlex_key(mono)
        if self.kind == "block":
            return (grevlex_key(mono[: self.split]), grevlex_key(mono[self.split:]))
        if self.kind == "subset":
            return grevlex_key(tuple(mono[i] for i in self.subset))
        raise ValueError(f"unknown order kind {self.kind!r}")


def grevlex_order() -> MonomialOrder:
    return MonomialOrder("grevlex_all")


def block_order(space: VarSpace) -> MonomialOrder:
    """grevlex(x) > grevlex(y): compares the x-part first."""
    return MonomialOrder("block", split=space.n)


def grevlex_subset(indices) -> MonomialOrder:
    return MonomialOrder("subset", subset=tuple(indices))


# ---------------------------------------------------------------------------
# shared pair queue
# ---------------------------------------------------------------------------

class _PairQueue:
    """Sugar-strategy critical pair queue with Buchberger's two criteria."""

    def __init__(self):
        self.pending: dict[tuple[int, int], tuple] = {}
        self.done: set[tuple[int, int]] = set()

    def push(self, i: int, j: int, sugar, lcm_key):
        self.pending[(i, j)] = (sugar, lcm_key, i, j)

    def pop_min(self):
        key = min(self.pending, key=self.pending.get)
        del self.pending[key]
        self.done.add(key)
        return key

    def chain_skip(self, i: int, j: int, lcm_ij: tuple, lms: list) -> bool:
        for k in range(len(lms)):
            if k == i or k == j:
                continue
            if mono_divides(lms[k], lcm_ij):
                a = (min(i, k), max(i, k))
                b = (min(j, k), max(j, k))
                if a in self.done and b in self.done:
                    return True
        return False

    def __bool__(self):
        return bool(self.pending)


# ---------------------------------------------------------------------------
# field regime: dict[mono] = Fraction
# ---------------------------------------------------------------------------

def _f_lm(d: dict, key) -> tuple:
    return max(d, key=key)


def _f_monic(d: dict, key) -> dict:
    lc = d[_f_lm(d, key)]
    if lc == 1:
        return d
    inv = 1 / Fraction(lc)
    return {m: _ratio(c * inv) for m, c in d.items()}


def _f_sub_scaled(d: dict, g: dict, factor, shift: tuple) -> dict:
    res = dict(d)
    for m, c in g.items():
        mm = tuple(a + b for a, b in zip(m, shift))
        s = res.get(mm, 0) - factor * c
        if s:
            res[mm] = _ratio(s)
        elif mm in res:
            del res[mm]
    return res


def _f_reduce(h: dict, G: list[dict], lms: list[tuple], lcs: list, key) -> dict:
    """Full normal form of h modulo G (leading and tail terms)."""
    h = dict(h)
    rem: dict = {}
    while h:
        lm = max(h, key=key)
        c = h[lm]
        for g, lmg, lcg in zip(G, lms, lcs):
            if mono_divides(lmg, lm):
                h = _f_sub_scaled(h, g, Fraction(c) / lcg, mono_div(lm, lmg))
                break
        else:
            rem[lm] = c
            del h[lm]
    return rem


def _f_spoly(g1, lm1, lc1, g2, lm2, lc2) -> dict:
    gamma = mono_lcm(lm1, lm2)
    a = _f_sub_scaled({}, g1, Fraction(-1, 1) / lc1, mono_div(gamma, lm1))
    return _f_sub_scaled(a, g2, Fraction(1, 1) / lc2, mono_div(gamma, lm2))


def _buchberger_field(dicts: list[dict], key) -> list[dict]:
    G: list[dict] = []
    lms: list[tuple] = []
    lcs: list = []
    sugars: list[int] = []
    queue = _PairQueue()

    def add(d: dict, sugar: int):
        d = _f_monic(d, key)
        lm = _f_lm(d, key)
        idx = len(G)
        G.append(d)
        lms.append(lm)
        lcs.append(Fraction(1))
        sugars.append(sugar)
        for i in range(idx):
            gamma = mono_lcm(lms[i], lm)
            s = max(
                sugars[i] + mono_deg(gamma) - mono_deg(lms[i]),
                sugar + mono_deg(gamma) - mono_deg(lm),
            )
            queue.push(i, idx, s, key(gamma))

    for d in dicts:
        if d:
            add(d, max(mono_deg(m) for m in d))

    while queue:
        i, j = queue.pop_min()
        lcm_ij = mono_lcm(lms[i], lms[j])
        if lcm_ij == tuple(a + b for a, b in zip(lms[i], lms[j])):
            continue  # coprime leading monomials
        if queue.chain_skip(i, j, lcm_ij, lms):
            continue
        s = _f_spoly(G[i], lms[i], lcs[i], G[j], lms[j], lcs[j])
        r = _f_reduce(s, G, lms, lcs, key)
        if r:
            sugar = max(
                sugars[i] + mono_deg(lcm_ij) - mono_deg(lms[i]),
                sugars[j] + mono_deg(lcm_ij) - mono_deg(lms[j]),
            )
            add(r, sugar)

    # minimalize: drop elements whose lm is divisible by another lm
    order_idx = sorted(range(len(G)), key=lambda i: key(lms[i]))
    keep: list[int] = []
    for i in order_idx:
        if not any(mono_divides(lms[k], lms[i]) for k in keep):
            keep.append(i)
    mins = [G[i] for i in keep]
    min_lms = [lms[i] for i in keep]
    # interreduce tails
    out = []
    for i, g in enumerate(mins):
        others = [mins[k] for k in range(len(mins)) if k != i]
        olms = [min_lms[k] for k in range(len(mins)) if k != i]
        olcs = [Fraction(1)] * len(others)
        r = _f_reduce(g, others, olms, olcs, key)
        out.append(_f_monic(r, key))
    out.sort(key=lambda d: key(_f_lm(d, key)))
    return out


# ---------------------------------------------------------------------------
# parametric regime: dict[x-mono] = Poly in y
# ---------------------------------------------------------------------------

def _pp_from_poly(p: Poly) -> dict:
    n = p.space.n
    zero_x = (0,) * n
    groups: dict[tuple, dict] = {}
    for m, c in p.terms.items():
        groups.setdefault(m[:n], {})[zero_x + m[n:]] = c
    return {xm: Poly(p.space, d, _clean=True) for xm, d in groups.items()}


def _pp_to_poly(d: dict, space: VarSpace) -> Poly:
    n = space.n
    terms: dict = {}
    for xm, cp in d.items():
        for m, c in cp.terms.items():
            terms[xm + m[n:]] = c
    return Poly(space, terms, _clean=True)


def _pp_lm(d: dict) -> tuple:
    return max(d, key=grevlex_key)


def _pp_clean(d: dict) -> dict:
    return {m: c for m, c in d.items() if not c.is_zero()}


def _pp_sub_mul(d: dict, scale_d: Poly, g: dict, factor: Poly, shift: tuple) -> dict:
    """scale_d * d - factor * x^shift * g, with dict representation."""
    if scale_d.is_constant() and scale_d.as_constant() == 1:
        res = dict(d)
    else:
        res = {m: c * scale_d for m, c in d.items()}
    for m, c in g.items():
        mm = tuple(a + b for a, b in zip(m, shift))
        cur = res.get(mm)
        val = (cur - factor * c) if cur is not None else -(factor * c)
        if val.is_zero():
            if mm in res:
                del res[mm]
        else:
            res[mm] = val
    return res


def _pp_content(d: dict, space: VarSpace) -> Poly:
    g = space.zero()
    for cp in d.values():
        g = poly_gcd(g, cp)
        if g.is_constant():
            break
    return g


def _pp_primitive(d: dict, space: VarSpace) -> dict:
    if not d:
        return d
    cont = _pp_content(d, space)
    if _pp_to_lc(d).sign_at_leading() < 0:
        cont = cont.scale(-1)
    if cont.is_constant() and cont.as_constant() == 1:
        return d
    return {m: divexact(c, cont) for m, c in d.items()}


def _pp_to_lc(d: dict) -> Poly:
    return d[_pp_lm(d)]


def _pp_reduce(h: dict, G: list[dict], lms: list[tuple], space: VarSpace,
               track: bool = False):
    """Fraction-free full normal form of h modulo G over Q(y).

    Returns (r, mult) with mult * h = r modulo the ideal; every x-monomial of
    r lies under the staircase of the lms.  mult is None unless track is set.
    Each pseudo-reduction step scales the whole working polynomial by the
    reducer's leading y-coefficient, so irreducible tail terms stay in sync.
    """
    h = dict(h)
    mult = space.const(1) if track else None
    reducer_cache: dict[tuple, int] = {}

    def reducer_for(m: tuple) -> int:
        idx = reducer_cache.get(m)
        if idx is None:
            idx = next((k for k, lmg in enumerate(lms) if mono_divides(lmg, m)), -1)
            reducer_cache[m] = idx
        return idx

    while True:
        best = None
        best_key = None
        for m in h:
            if reducer_for(m) >= 0:
                k = grevlex_key(m)
                if best is None or k > best_key:
                    best, best_key = m, k
        if best is None:
            break
        g = G[reducer_for(best)]
        lmg = lms[reducer_for(best)]
        lcg = g[lmg]
        h = _pp_sub_mul(h, lcg, g, h[best], mono_div(best, lmg))
        if track:
            mult = mult * lcg
    rem = h
    if track:
        # strip any common polynomial factor of the remainder and multiplier
        g = mult
        for cp in rem.values():
            g = poly_gcd(g, cp)
            if g.is_constant():
                break
        if not g.is_constant():
            rem = {m: divexact(c, g) for m, c in rem.items()}
            mult = divexact(mult, g)
        c = mult.content()
        if mult.sign_at_leading() < 0:
            c = -c
        if c != 1:
            rem = {m: cp.scale(1 / c) for m, cp in rem.items()}
            mult = mult.scale(1 / c)
    return rem, mult


def _pp_spoly(g1: dict, lm1: tuple, g2: dict, lm2: tuple, space: VarSpace) -> dict:
    gamma = mono_lcm(lm1, lm2)
    c1 = g1[lm1]
    c2 = g2[lm2]
    a = {tuple(x + y for x, y in zip(m, mono_div(gamma, lm1))): c * c2
         for m, c in g1.items()}
    return _pp_clean(_pp_sub_mul(a, space.const(1), g2, c1, mono_div(gamma, lm2)))


def _buchberger_param(pps: list[dict], space: VarSpace) -> list[dict]:
    G: list[dict] = []
    lms: list[tuple] = []
    sugars: list[int] = []
    queue = _PairQueue()

    def add(d: dict, sugar: int):
        d = _pp_primitive(d, space)
        lm = _pp_lm(d)
        idx = len(G)
        G.append(d)
        lms.append(lm)
        sugars.append(sugar)
        for i in range(idx):
            gamma = mono_lcm(lms[i], lm)
            s = max(
                sugars[i] + mono_deg(gamma) - mono_deg(lms[i]),
                sugar + mono_deg(gamma) - mono_deg(lm),
            )
            queue.push(i, idx, s, grevlex_key(gamma))

    for d in pps:
        if d:
            add(d, max(mono_deg(m) for m in d))

    while queue:
        i, j = queue.pop_min()
        lcm_ij = mono_lcm(lms[i], lms[j])
        if lcm_ij == tuple(a + b for a, b in zip(lms[i], lms[j])):
            continue
        if queue.chain_skip(i, j, lcm_ij, lms):
            continue
        s = _pp_spoly(G[i], lms[i], G[j], lms[j], space)
        r, _ = _pp_reduce(s, G, lms, space)
        if r:
            sugar = max(
                sugars[i] + mono_deg(lcm_ij) - mono_deg(lms[i]),
                sugars[j] + mono_deg(lcm_ij) - mono_deg(lms[j]),
            )
            add(r, sugar)

    order_idx = sorted(range(len(G)), key=lambda i: grevlex_key(lms[i]))
    keep: list[int] = []
    for i in order_idx:
        if not any(mono_divides(lms[k], lms[i]) for k in keep):
            keep.append(i)
    mins = [G[i] for i in keep]
    min_lms = [lms[i] for i in keep]
    out = []
    for i, g in enumerate(mins):
        others = [mins[k] for k in range(len(mins)) if k != i]
        olms = [min_lms[k] for k in range(len(mins)) if k != i]
        r, _ = _pp_reduce(g, others, olms, space)
        out.append(_pp_primitive(r, space))
    out.sort(key=lambda d: grevlex_key(_pp_lm(d)))
    return out


# ---------------------------------------------------------------------------
# public surface
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis; gens are monic (Q) or primitive (Q(y))."""

    gens: tuple[Poly, ...]
    order: MonomialOrder
    coeff_field: str
    reduced: bool = True

    @property
    def space(self) -> VarSpace:
        return self.gens[0].space

    def lead_monomials(self) -> list[tuple]:
        """Full leading monomials under the basis order (field regime)."""
        return [g.leading(self.order.key)[0] for g in self.gens]

    def x_lead_monomials(self) -> list[tuple]:
        """Leading monomials in the x-variables only (grevlex(x))."""
        n = self.space.n
        out = []
        for g in self.gens:
            out.append(max((m[:n] for m in g.terms), key=grevlex_key))
        return out

    def x_lead_coeff(self, g: Poly) -> Poly:
        """Coefficient in Q[y] of the leading x-monomial of g."""
        n = self.space.n
        space = self.space
        xlm = max((m[:n] for m in g.terms), key=grevlex_key)
        zero_x = (0,) * n
        terms = {zero_x + m[n:]: c for m, c in g.terms.items() if m[:n] == xlm}
        return Poly(space, terms, _clean=True)

    def contains_unit(self) -> bool:
        """True when the ideal is all of the ring (over the coefficient field)."""
        zero_x = (0,) * self.space.n
        if self.coeff_field == FIELD_QY:
            return any(lm == zero_x for lm in self.x_lead_monomials())
        return any(sum(lm) == 0 for lm in self.lead_monomials())


def buchberger(gens, order: MonomialOrder | None = None,
               coeff_field: str = FIELD_Q) -> GroebnerBasis:
    """Reduced Groebner basis of <gens> w.r.t. the order, in either regime.

    In the Q(y) regime the order is grevlex on the x-variables and the
    coefficients are rational functions of y; the returned generators are the
    primitive representatives in Q[x,y] of the monic reduced basis.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("cannot take a Groebner basis of the zero ideal")
    space = gens[0].space
    if any(g.space != space for g in gens):
        raise ValueError("generators live in different variable spaces")
    if coeff_field == FIELD_QY:
        order = order or grevlex_subset(range(space.n))
        pps = [_pp_from_poly(g) for g in gens]
        out = _buchberger_param(pps, space)
        polys = tuple(_pp_to_poly(d, space) for d in out)
        return GroebnerBasis(polys, order, FIELD_QY)
    order = order or grevlex_order()
    key = order.key
    out = _buchberger_field([dict(g.terms) for g in gens], key)
    polys = tuple(Poly(space, d, _clean=True) for d in out)
    return GroebnerBasis(polys, order, FIELD_Q)


def normal_form(p: Poly, G: GroebnerBasis) -> Poly:
    """Remainder of division of p by G over Q (field regime)."""
    if G.coeff_field != FIELD_Q:
        raise ValueError("normal_form over Q(y) returns a pair; use normal_form_qy")
    key = G.order.key
    dicts = [dict(g.terms) for g in G.gens]
    lms = [g.leading(key)[0] for g in G.gens]
    lcs = [g.terms[lm] for g, lm in zip(G.gens, lms)]
    r = _f_reduce(dict(p.terms), dicts, lms, lcs, key)
    return Poly(p.space, r, _clean=True)


def normal_form_qy(p: Poly, G: GroebnerBasis) -> tuple[Poly, Poly]:
    """Normal form over Q(y) as a pair (r, mult): NF(p) = r / mult.

    r is a polynomial supported under the staircase (in x) with Q[y]
    coefficients and mult is a nonzero polynomial of Q[y].
    """
    if G.coeff_field != FIELD_QY:
        raise ValueError("use normal_form for the Q regime")
    space = p.space
    pps = [_pp_from_poly(g) for g in G.gens]
    lms = [_pp_lm(d) for d in pps]
    r, mult = _pp_reduce(_pp_from_poly(p), pps, lms, space, track=True)
    return _pp_to_poly(r, space), mult


@dataclass(frozen=True)
class QuotientBasis:
    """Monomial basis (in x) of the quotient by a zero-dimensional ideal."""

    monomials: tuple[tuple, ...]
    space: VarSpace

    @property
    def delta(self) -> int:
        return len(self.monomials)

    def degree_sum(self) -> int:
        return sum(mono_deg(m) for m in self.monomials)


def quotient_basis(G: GroebnerBasis) -> QuotientBasis:
    """Staircase of monomials in x irreducible by G, ordered by (deg, grevlex).

    Raises NotZeroDimensional when the staircase is infinite.  The unit ideal
    yields an empty basis (delta = 0).
    """
    space = G.space
    n = space.n
    xlms = [lm for lm in G.x_lead_monomials()]
    zero = (0,) * n
    if any(lm == zero for lm in xlms):
        return QuotientBasis((), space)
    for j in range(n):
        if not any(all(lm[i] == 0 for i in range(n) if i != j) for lm in xlms):
            raise NotZeroDimensional(f"no pure power of x[{j}] among leading monomials")
    found = set()
    queue = [zero]
    while queue:
        m = queue.pop()
        if m in found:
            continue
        if any(mono_divides(lm, m) for lm in xlms):
            continue
        found.add(m)
        for j in range(n):
            queue.append(m[:j] + (m[j] + 1,) + m[j + 1:])
    monos = tuple(sorted(found, key=lambda m: (mono_deg(m), grevlex_key(m))))
    return QuotientBasis(monos, space)


def staircase_dimension(G: GroebnerBasis, var_indices=None) -> int:
    """Krull dimension of the leading-term ideal; -1 for the unit ideal."""
    if G.coeff_field == FIELD_QY:
        lms = G.x_lead_monomials()
        nvars = G.space.n
    else:
        lms = G.lead_monomials()
        nvars = G.space.nvars
    if var_indices is None:
        var_indices = tuple(range(nvars))
    if any(all(e == 0 for e in lm) for lm in lms):
        return -1
    supports = [frozenset(i for i, e in enumerate(lm) if e) for lm in lms]
    for size in range(len(var_indices), 0, -1):
        for S in combinations(var_indices, size):
            sset = frozenset(S)
            if not any(sup <= sset for sup in supports):
                return size
    return 0


def check_noether_degree_condition(G: GroebnerBasis) -> bool:
    """True iff every basis element has total degree equal to its x-degree."""
    return all(g.deg() == g.deg_x() for g in G.gens)


def is_groebner(G: GroebnerBasis) -> bool:
    """Exhaustive S-polynomial check (test support)."""
    space = G.space
    if G.coeff_field == FIELD_QY:
        pps = [_pp_from_poly(g) for g in G.gens]
        lms = [_pp_lm(d) for d in pps]
        for i in range(len(pps)):
            for j in range(i + 1, len(pps)):
                s = _pp_spoly(pps[i], lms[i], pps[j], lms[j], space)
                r, _ = _pp_reduce(s, pps, lms, space)
                if r:
                    return False
        return True
    key = G.order.key
    dicts = [dict(g.terms) for g in G.gens]
    lms = [g.leading(key)[0] for g in G.gens]
    lcs = [g.terms[lm] for g, lm in zip(G.gens, lms)]
    for i in range(len(dicts)):
        for j in range(i + 1, len(dicts)):
            s = _f_spoly(dicts[i], lms[i], lcs[i], dicts[j], lms[j], lcs[j])
            if _f_reduce(s, dicts, lms, lcs, key):
                return False
    return True
