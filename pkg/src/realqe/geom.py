"""Randomized critical-point systems: change of variables on the quantified
block, Jacobian minors, and fiber equations.

For a system f of s polynomials with generic fiber dimension d, the i-th
critical system consists of the (n-d)-minors of the Jacobian columns
J_{i+1}..J_n, the polynomials f themselves, and the fiber equations
x_1 - alpha_1, ..., x_{i-1} - alpha_{i-1}.  For i = d+1 the minor set is
empty.  The minors are enumerated lexicographically by (row subset, column
subset) so runs are reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .exactalg import PMatrix, Poly, VarSpace, minors_k
from .gb import FIELD_QY, buchberger, staircase_dimension


class EmptyGenericFiber(Exception):
    """The ideal is all of Q(y)[x]: the generic fiber is empty."""


@dataclass(frozen=True)
class ChangeOfVars:
    """Invertible rational matrix acting on the x-variables only."""

    A: tuple[tuple[Fraction, ...], ...]
    seed: int | None = None

    @property
    def n(self) -> int:
        return len(self.A)

    def is_identity(self) -> bool:
        return all(self.A[i][j] == (1 if i == j else 0)
                   for i in range(self.n) for j in range(self.n))


@dataclass(frozen=True)
class CritSystem:
    """The i-th critical system W_i: minors, then f^A, then fiber equations."""

    index: int
    polys: tuple[Poly, ...]
    alpha: tuple[Fraction, ...]


def _det_fractions(rows) -> Fraction:
    a = [list(map(Fraction, r)) for r in rows]
    n = len(a)
    det = Fraction(1)
    for k in range(n):
        pivot = next((i for i in range(k, n) if a[i][k] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != k:
            a[k], a[pivot] = a[pivot], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            factor = a[i][k] / a[k][k]
            for j in range(k, n):
                a[i][j] -= factor * a[k][j]
    return det


def identity_change(n: int) -> ChangeOfVars:
    return ChangeOfVars(tuple(tuple(Fraction(1 if i == j else 0) for j in range(n))
                              for i in range(n)))


def random_change_of_vars(n: int, t: int, seed: int) -> ChangeOfVars:
    """Uniform integer entries in [-99, 99], resampled until invertible.

    Deterministic for a fixed seed; t is carried for the GL(n, t, Q) contract
    (the matrix never touches the parameters).
    """
    rng = random.Random(seed)
    while True:
        rows = tuple(tuple(Fraction(rng.randint(-99, 99)) for _ in range(n))
                     for _ in range(n))
        if _det_fractions(rows) != 0:
            return ChangeOfVars(rows, seed)


def random_alpha(n: int, seed: int) -> tuple[Fraction, ...]:
    """Fiber base point: integer entries in [-99, 99], deterministic in seed."""
    rng = random.Random(seed)
    return tuple(Fraction(rng.randint(-99, 99)) for _ in range(n))


def change_vars(f: list[Poly], A: ChangeOfVars) -> list[Poly]:
    """Compose every polynomial with x -> A*x, leaving parameters fixed."""
    if not f:
        return []
    space = f[0].space
    n = space.n
    if A.n != n:
        raise ValueError("matrix size does not match the number of x-variables")
    if _det_fractions(A.A) == 0:
        raise ValueError("change of variables must be invertible")
    if A.is_identity():
        return list(f)
    linear = []
    for k in range(n):
        terms = {}
        for j in range(n):
            if A.A[k][j]:
                mono = tuple(1 if idx == j else 0 for idx in range(space.nvars))
                terms[mono] = A.A[k][j]
        linear.append(Poly(space, terms, _clean=True))
    power_cache: dict[tuple[int, int], Poly] = {}

    def lin_pow(k: int, e: int) -> Poly:
        got = power_cache.get((k, e))
        if got is None:
            got = linear[k] ** e
            power_cache[(k, e)] = got
        return got

    out = []
    for p in f:
        acc = space.zero()
        for m, c in p.terms.items():
            term = Poly(space, {(0,) * n + m[n:]: c}, _clean=True)
            for k in range(n):
                if m[k]:
                    term = term * lin_pow(k, m[k])
            acc = acc + term
        out.append(acc)
    return out


def jac_x(f: list[Poly]) -> PMatrix:
    """Jacobian of f w.r.t. the x-variables: s rows, n columns."""
    n = f[0].space.n
    return PMatrix([[p.derivative(j) for j in range(n)] for p in f])


def build_critical_system(fA: list[Poly], i: int, d: int, alpha) -> CritSystem:
    """W_i = (n-d)-minors of columns J_{i+1}..J_n, then f^A, then fibers."""
    space = fA[0].space
    n = space.n
    if not 1 <= i <= d + 1:
        raise ValueError(f"critical system index {i} out of range 1..{d + 1}")
    alpha = tuple(Fraction(a) for a in alpha)
    if len(alpha) < i - 1:
        raise ValueError("alpha has too few entries for the fiber equations")
    k = n - d
    ncols = n - i
    minors: list[Poly] = []
    if ncols >= 1 and k <= min(len(fA), ncols):
        jac = jac_x(fA)
        sub = jac.submatrix(range(len(fA)), range(i, n))
        minors = minors_k(sub, k)
    fibers = []
    for j in range(i - 1):
        mono = tuple(1 if idx == j else 0 for idx in range(space.nvars))
        fibers.append(Poly(space, {mono: Fraction(1)}) - space.const(alpha[j]))
    return CritSystem(i, tuple(minors) + tuple(fA) + tuple(fibers), alpha)


def generic_dimension(f: list[Poly]) -> int:
    """Dimension of <f> over Q(y)[x]; raises EmptyGenericFiber on <1>."""
    G = buchberger(f, coeff_field=FIELD_QY)
    if G.contains_unit():
        raise EmptyGenericFiber("the system has no solutions for generic parameters")
    return staircase_dimension(G)
