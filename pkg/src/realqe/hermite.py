"""Parametric Hermite matrices for zero-dimensional parametric ideals.

H(i, j) is the trace of multiplication by b_i * b_j on the quotient algebra
Q(y)[x]/<F>, computed from normal forms w.r.t. the reduced Groebner basis
over Q(y).  The specialization guard w_F is the squarefree part of the
product of the leading y-coefficients of the block-order basis of <F> in
Q[x,y]; off its zero set the matrix specializes to the Hermite matrix of the
specialized system.

The construction insists that the staircase read from the block-order basis
agrees with the true Q(y) staircase; a mismatch means the randomization was
degenerate, and the caller is expected to redraw (this mirrors the
retry-on-failure contract for the other detectable degeneracies).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .exactalg import Poly, RatFunc, VarSpace, divexact, poly_gcd, squarefree_part
from .gb import (
    FIELD_QY,
    GroebnerBasis,
    QuotientBasis,
    _pp_from_poly,
    _pp_lm,
    _pp_reduce,
    block_order,
    buchberger,
    check_noether_degree_condition,
    quotient_basis,
)
from .exactalg import mono_divides, mono_mul
from .seeds import derive


class BadCongruenceTransform(Exception):
    """Every sampled congruence transform left some minor identically zero."""


class SpecializationGuard(Exception):
    """Specialization requested at a point where w_F (or a denominator) vanishes."""


class StaircaseMismatch(Exception):
    """Block-order staircase disagrees with the Q(y) staircase; redraw upstream."""


@dataclass(frozen=True)
class ParametricHermite:
    """Symmetric delta x delta trace-form matrix with entries in Q(y)."""

    entries: tuple[tuple[RatFunc, ...], ...]  # empty when delta == 0
    basis: QuotientBasis
    w_f: Poly
    assumption_c: bool
    block_gb: GroebnerBasis
    param_gb: GroebnerBasis

    @property
    def delta(self) -> int:
        return self.basis.delta

    @property
    def space(self) -> VarSpace:
        return self.w_f.space

    def entry(self, i: int, j: int) -> RatFunc:
        return self.entries[i][j]


@dataclass(frozen=True)
class MinorSequence:
    """Leading principal minors of Q^T H Q and their numerator polynomials."""

    minors: tuple[RatFunc, ...]
    numerators: tuple[Poly, ...]
    qseed: int | None  # None means the identity transform


def _same_monomial_ideal(a: list[tuple], b: list[tuple]) -> bool:
    return (all(any(mono_divides(x, m) for x in b) for m in a)
            and all(any(mono_divides(x, m) for x in a) for m in b))


def hermite_matrix(F: list[Poly]) -> ParametricHermite:
    """Parametric Hermite matrix and specialization guard w_F of <F>.

    Requires <F> zero-dimensional over Q(y) (checked); radicality is the
    caller's obligation.  An empty generic fiber yields delta = 0 with no
    matrix.
    """
    if not F:
        raise ValueError("empty polynomial system")
    space = F[0].space
    G_block = buchberger(F, block_order(space))
    w = space.const(1)
    for g in G_block.gens:
        w = w * G_block.x_lead_coeff(g)
    w_f = squarefree_part(w)
    G_param = buchberger(F, coeff_field=FIELD_QY)
    if not _same_monomial_ideal(G_block.x_lead_monomials(), G_param.x_lead_monomials()):
        raise StaircaseMismatch(
            "block-order staircase differs from the Q(y) staircase")
    basis = quotient_basis(G_param)
    assumption_c = check_noether_degree_condition(G_block)
    delta = basis.delta
    if delta == 0:
        return ParametricHermite((), basis, w_f, assumption_c, G_block, G_param)

    pps = [_pp_from_poly(g) for g in G_param.gens]
    lms = [_pp_lm(d) for d in pps]
    index_of = {m: k for k, m in enumerate(basis.monomials)}
    one = space.const(1)
    nf_cache: dict[tuple, tuple[dict, Poly]] = {}

    def nf(mono: tuple) -> tuple[dict, Poly]:
        """Normal form of an x-monomial: ({basis mono: Poly}, denominator)."""
        got = nf_cache.get(mono)
        if got is None:
            if mono in index_of:
                got = ({mono: one}, one)
            else:
                r, mult = _pp_reduce({mono: one}, pps, lms, space, track=True)
                got = (r, mult)
            nf_cache[mono] = got
        return got

    def trace_of(mono: tuple) -> RatFunc:
        """Trace of multiplication by the x-monomial on the quotient."""
        total = RatFunc(space.zero())
        for b in basis.monomials:
            coords, den = nf(mono_mul(mono, b))
            c = coords.get(b)
            if c is not None and not c.is_zero():
                total = total + RatFunc(c, den)
        return total

    rows = [[None] * delta for _ in range(delta)]
    for i in range(delta):
        for j in range(i, delta):
            v = trace_of(mono_mul(basis.monomials[i], basis.monomials[j]))
            rows[i][j] = v
            rows[j][i] = v
    entries = tuple(tuple(r) for r in rows)
    return ParametricHermite(entries, basis, w_f, assumption_c, G_block, G_param)


def _common_denominator(ph: ParametricHermite):
    """(P, D): polynomial matrix P and D in Q[y] with H = P / D entrywise."""
    space = ph.space
    D = space.const(1)
    for row in ph.entries:
        for e in row:
            g = poly_gcd(D, e.den)
            D = divexact(D * e.den, g)
    P = [[e.num * divexact(D, e.den) for e in row] for row in ph.entries]
    return P, D


def _bareiss_leading_minors(grid: list[list[Poly]]):
    """Pivot-free Bareiss pass; returns (minors, scale) with the k-th leading
    principal minor equal to minors[k] / scale**(k+1), or None as soon as one
    of them is identically zero.

    The matrix is cleared to integer coefficients first so that the whole
    elimination runs in native integer arithmetic.
    """
    n = len(grid)
    space = grid[0][0].space
    den = 1
    for row in grid:
        for e in row:
            for c in e.terms.values():
                d = c.denominator
                if d != 1:
                    den = den * d // gcd(den, d)
    scale = Fraction(den)
    a = [[e.scale(den) for e in row] for row in grid]
    minors = []
    prev = space.const(1)
    for k in range(n):
        if a[k][k].is_zero():
            return None
        minors.append(a[k][k])
        if k == n - 1:
            break
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = divexact(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev)
        prev = a[k][k]
    return minors, scale


def _random_q(delta: int, seed: int) -> list[list[int]]:
    rng = random.Random(seed)
    while True:
        q = [[rng.randint(-9, 9) for _ in range(delta)] for _ in range(delta)]
        # integer determinant by fraction-free elimination
        m = [row[:] for row in q]
        det = 1
        ok = True
        for k in range(delta):
            piv = next((i for i in range(k, delta) if m[i][k]), None)
            if piv is None:
                ok = False
                break
            if piv != k:
                m[k], m[piv] = m[piv], m[k]
                det = -det
            for i in range(k + 1, delta):
                f = Fraction(m[i][k]) / m[k][k]
                for j in range(k, delta):
                    m[i][j] = m[i][j] - f * m[k][j]
        if ok:
            return q


def principal_minor_sequence(ph: ParametricHermite, qseed: int | None = None,
                             max_retries: int = 5, q_rows=None) -> MinorSequence:
    """Leading principal minors of Q^T H Q with their numerators.

    The identity transform is tried first (any invertible Q whose minors do
    not vanish identically is admissible, and the identity keeps the
    coefficients small); if some minor vanishes identically, Q is resampled
    from seeds derived from qseed, up to max_retries, before
    BadCongruenceTransform is raised.  q_rows pins an explicit rational
    matrix, which is never resampled.
    """
    delta = ph.delta
    if delta == 0:
        return MinorSequence((), (), qseed)
    space = ph.space
    P, D = _common_denominator(ph)
    if q_rows is not None:
        q_rows = [[Fraction(v) for v in row] for row in q_rows]
        if len(q_rows) != delta or any(len(r) != delta for r in q_rows):
            raise ValueError(f"pinned transform must be {delta}x{delta}")
    for attempt in range(max_retries + 1):
        if q_rows is not None:
            q = q_rows
        elif attempt == 0:
            q = None  # identity
        else:
            q = _random_q(delta, derive(qseed if qseed is not None else 0,
                                        3, attempt))
        if q is None:
            T = P
        else:
            # T = Q^T P Q
            PQ = [[space.zero() for _ in range(delta)] for _ in range(delta)]
            for i in range(delta):
                for j in range(delta):
                    acc = space.zero()
                    for k in range(delta):
                        if q[k][j]:
                            acc = acc + P[i][k].scale(q[k][j])
                    PQ[i][j] = acc
            T = [[space.zero() for _ in range(delta)] for _ in range(delta)]
            for i in range(delta):
                for j in range(delta):
                    acc = space.zero()
                    for k in range(delta):
                        if q[k][i]:
                            acc = acc + PQ[k][j].scale(q[k][i])
                    T[i][j] = acc
        result = _bareiss_leading_minors(T)
        if result is not None:
            dets, scale = result
            minors = []
            nums = []
            denom = space.const(1)
            for det in dets:
                denom = denom * D.scale(scale)
                M = RatFunc(det, denom)
                minors.append(M)
                nums.append(M.num)
            return MinorSequence(tuple(minors), tuple(nums),
                                 None if q is None else qseed)
        if q_rows is not None:
            raise BadCongruenceTransform(
                "the pinned transform leaves a principal minor identically zero")
    raise BadCongruenceTransform(
        f"no invertible transform avoided identically-zero minors "
        f"after {max_retries} retries")


def specialize_hermite(ph: ParametricHermite, eta) -> list[list[Fraction]]:
    """Entrywise evaluation of H at a rational parameter point.

    Guarded by w_F: evaluation off the guard set raises SpecializationGuard.
    """
    space = ph.space
    point = dict(zip(space.y_names, (Fraction(v) for v in eta)))
    if len(point) != space.t or len(tuple(eta)) != space.t:
        raise ValueError("parameter point has wrong length")
    if ph.w_f.eval_rat(point) == 0:
        raise SpecializationGuard("w_F vanishes at the requested point")
    out = []
    for row in ph.entries:
        vals = []
        for e in row:
            den = e.den.eval_rat(point)
            if den == 0:
                raise SpecializationGuard("entry denominator vanishes at the point")
            vals.append(e.num.eval_rat(point) / den)
        out.append(vals)
    return out
