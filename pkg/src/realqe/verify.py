"""Independent decision oracle for "f(eta, x) = 0 has a real solution" at
rational parameter points, and sampled equivalence testing of output
formulas.

The oracle specializes the critical systems of a fresh randomization at the
query point and decides by the signature of the (non-parametric) Hermite
matrix of each specialized system over Q, computed from scratch.  Points
where some specialization is not zero-dimensional are reported as
degenerate rather than decided.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .exactalg import Poly, VarSpace, mono_mul
from .formula import SAFormula, evaluate
from .gb import NotZeroDimensional, buchberger, grevlex_order, normal_form, quotient_basis
from .geom import (
    ChangeOfVars,
    EmptyGenericFiber,
    build_critical_system,
    change_vars,
    generic_dimension,
    random_alpha,
    random_change_of_vars,
)
from .real1d import signature_symmetric
from .seeds import SALT_A, SALT_ALPHA, SALT_SAMPLE, derive

DEGENERATE = "degenerate"


@dataclass(frozen=True)
class EquivalenceReport:
    """Outcome of sampled equivalence between a formula and the oracle."""

    tested: int
    agreements: int
    disagreements: tuple[tuple[tuple[Fraction, ...], bool, bool], ...]
    skipped: int

    @property
    def disagreement_count(self) -> int:
        return len(self.disagreements)

    def ok(self) -> bool:
        return not self.disagreements


def _signature_of_specialized(polys: list[Poly]):
    """Hermite signature over Q of a specialized system in the x-variables.

    Returns an integer signature, or None when the system is degenerate
    (identically zero or not zero-dimensional).
    """
    nonzero = [p for p in polys if not p.is_zero()]
    if not nonzero:
        return None
    if any(p.is_constant() for p in nonzero):
        return 0  # a nonzero constant equation: empty variety
    G = buchberger(nonzero, grevlex_order())
    try:
        B = quotient_basis(G)
    except NotZeroDimensional:
        return None
    delta = B.delta
    if delta == 0:
        return 0
    space = nonzero[0].space
    nf_cache: dict[tuple, Poly] = {}

    def nf(mono: tuple) -> Poly:
        r = nf_cache.get(mono)
        if r is None:
            width_mono = mono + (0,) * space.t
            r = normal_form(Poly(space, {width_mono: Fraction(1)}), G)
            nf_cache[mono] = r
        return r

    def coeff(poly: Poly, basis_mono: tuple) -> Fraction:
        return poly.coeff(basis_mono + (0,) * space.t)

    H = [[Fraction(0)] * delta for _ in range(delta)]
    for i in range(delta):
        for j in range(i, delta):
            prod = mono_mul(B.monomials[i], B.monomials[j])
            total = Fraction(0)
            for b in B.monomials:
                total += coeff(nf(mono_mul(prod, b)), b)
            H[i][j] = H[j][i] = total
    sig, _rank = signature_symmetric(H)
    return sig


class RealSolutionOracle:
    """Reusable oracle: fixes a randomization once, answers many points."""

    def __init__(self, f, seed: int = 0, A: ChangeOfVars | None = None,
                 alpha=None):
        self.f = [p for p in f]
        if not self.f:
            raise ValueError("empty system")
        space = self.f[0].space
        self.space = space
        n = space.n
        self.A = A if A is not None else random_change_of_vars(
            n, space.t, derive(seed, SALT_A))
        self.alpha = (tuple(Fraction(a) for a in alpha) if alpha is not None
                      else random_alpha(n, derive(seed, SALT_ALPHA)))
        fA = change_vars(self.f, self.A)
        self.empty_fiber = False
        try:
            self.d = generic_dimension(fA)
        except EmptyGenericFiber:
            self.empty_fiber = True
            self.d = -1
            self.systems = ()
            return
        self.systems = tuple(
            build_critical_system(fA, i, self.d, self.alpha)
            for i in range(1, self.d + 2))

    def decide(self, eta):
        """True / False / "degenerate" for the existence of a real solution."""
        eta = tuple(Fraction(v) for v in eta)
        if self.empty_fiber:
            # generic fiber is empty: almost every point has no solution, and
            # no finite specialization certificate exists here
            return DEGENERATE
        found = False
        for system in self.systems:
            specialized = [p.subs_y(eta) for p in system.polys]
            sig = _signature_of_specialized(specialized)
            if sig is None:
                return DEGENERATE
            if sig > 0:
                found = True
        return found


def exists_real_solution(f, eta, A: ChangeOfVars | None = None,
                         alpha=None, seed: int = 0):
    """One-shot oracle call; see RealSolutionOracle for the batched form."""
    return RealSolutionOracle(f, seed=seed, A=A, alpha=alpha).decide(eta)


def formula_equivalence_sample(phi: SAFormula, f, N: int, seed: int, box,
                               skip_polys=(), oracle: RealSolutionOracle | None = None,
                               denominator_bits: int = 7) -> EquivalenceReport:
    """Compare phi against the oracle on N random rational points in the box.

    Points are uniform on the grid with denominator 2**denominator_bits.
    Points where a skip polynomial vanishes or the oracle is degenerate are
    counted as skipped, mirroring the measure-zero exclusion of the
    correctness statement.
    """
    if N < 1:
        raise ValueError("need at least one sample")
    f = [p for p in f]
    space = f[0].space
    t = space.t
    box = [(Fraction(lo), Fraction(hi)) for lo, hi in box]
    if len(box) != t:
        raise ValueError("box must bound every parameter")
    if oracle is None:
        oracle = RealSolutionOracle(f, seed=derive(seed, 97))
    rng = random.Random(derive(seed, SALT_SAMPLE))
    den = 1 << denominator_bits
    agreements = 0
    skipped = 0
    disagreements = []
    for _ in range(N):
        eta = tuple(lo + Fraction(rng.randint(0, int((hi - lo) * den)), den)
                    for lo, hi in box)
        assignment = dict(zip(space.y_names, eta))
        if any(p.eval_rat(assignment) == 0 for p in skip_polys):
            skipped += 1
            continue
        verdict = oracle.decide(eta)
        if verdict == DEGENERATE:
            skipped += 1
            continue
        truth = evaluate(phi, eta)
        if truth == verdict:
            agreements += 1
        else:
            disagreements.append((eta, truth, verdict))
    return EquivalenceReport(N, agreements, tuple(disagreements), skipped)
