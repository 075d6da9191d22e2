"""Orchestration: real root classification of a zero-dimensional parametric
system, one-block quantifier elimination, and the degree-bound calculator.

Classification builds the parametric Hermite matrix, the leading principal
minors of Q^T H Q, sample points for the minor/guard inequations, keeps the
sample points with positive Hermite signature, and assembles the sign-vector
clauses; the elimination driver draws a change of variables and a fiber base
point, classifies the d+1 critical systems, and takes the disjunction.
Detectable degeneracies (non-zero-dimensional systems, staircase mismatch)
trigger a fresh draw, up to a retry budget.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .exactalg import Poly, VarSpace
from .formula import SAFormula, from_sign_vector, simplify
from .gb import NotZeroDimensional
from .geom import (
    ChangeOfVars,
    CritSystem,
    EmptyGenericFiber,
    build_critical_system,
    change_vars,
    generic_dimension,
    identity_change,
    random_alpha,
    random_change_of_vars,
)
from .hermite import (
    MinorSequence,
    ParametricHermite,
    StaircaseMismatch,
    hermite_matrix,
    principal_minor_sequence,
    specialize_hermite,
)
from .real1d import signature_symmetric
from .samplepts import SamplePointSet, sample_points
from .seeds import SALT_A, SALT_ALPHA, SALT_Q, SALT_RETRY, derive


class RandomizationFailure(Exception):
    """All retries produced a degenerate critical system."""

    def __init__(self, message: str, system_index: int):
        super().__init__(message)
        self.system_index = system_index


@dataclass(frozen=True)
class ClassificationResult:
    """Output of one RealRootClassification call."""

    phi: SAFormula
    w_inf: Poly
    hermite: ParametricHermite
    minors: MinorSequence
    points: SamplePointSet | None
    kept_points: tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class QERun:
    """Full trace of one elimination run."""

    input_polys: tuple[Poly, ...]
    A: ChangeOfVars
    alpha: tuple[Fraction, ...]
    seed: int | None
    d: int
    systems: tuple[CritSystem, ...]
    per_system: tuple[ClassificationResult, ...]
    phi: SAFormula
    retries_used: int
    empty_generic_fiber: bool = False


def real_root_classification(F, qseed: int | None = None,
                             q_rows=None) -> ClassificationResult:
    """Quantifier-free description of the parameters where F has a real root.

    F generates a zero-dimensional ideal over Q(y) (checked); radicality is
    the caller's obligation.  qseed None pins the congruence transform to the
    identity; q_rows pins an explicit matrix.
    """
    F = list(F)
    if not F:
        raise ValueError("empty system")
    space = F[0].space
    ph = hermite_matrix(F)
    ms = principal_minor_sequence(ph, qseed, q_rows=q_rows)
    w_inf = ph.w_f
    for m in ms.numerators:
        w_inf = w_inf * m
    if ph.delta == 0:
        return ClassificationResult(SAFormula.false(), w_inf, ph, ms, None, ())

    ineqs = []
    for m in ms.numerators:
        if not m.is_constant() and m.primitive() not in [q.primitive() for q in ineqs]:
            ineqs.append(m)
    if not ph.w_f.is_constant() and ph.w_f not in [q.primitive() for q in ineqs]:
        ineqs.append(ph.w_f)

    if ineqs:
        points = sample_points(ineqs, space.t)
        candidates = points.points
    else:
        points = None
        candidates = ((Fraction(0),) * space.t,)

    kept = []
    clauses = []
    for eta in candidates:
        assignment = dict(zip(space.y_names, eta))
        sig, _rank = signature_symmetric(specialize_hermite(ph, eta))
        if sig <= 0:
            continue
        kept.append(eta)
        condition_polys = []
        signs = []
        for M, m in zip(ms.minors, ms.numerators):
            if not m.is_constant():
                condition_polys.append(m)
                signs.append(1 if m.eval_rat(assignment) > 0 else -1)
            if not M.den.is_constant():
                condition_polys.append(M.den)
                signs.append(1 if M.den.eval_rat(assignment) > 0 else -1)
        clauses.append(from_sign_vector(condition_polys, signs, guard=ph.w_f))
    phi = simplify(SAFormula(tuple(clauses)))
    return ClassificationResult(phi, w_inf, ph, ms, points, tuple(kept))


def one_block_qe(f, seed: int = 0, max_retries: int = 5,
                 A: ChangeOfVars | None = None, alpha=None,
                 identity_q: bool = False, q_rows=None) -> QERun:
    """One-block quantifier elimination for the system f = 0.

    Draws (A, alpha) from the seed unless they are pinned; classification of
    every critical system W_1..W_{d+1} is retried with a fresh draw when a
    detectable degeneracy shows up.  The caller asserts radicality and
    equi-dimensionality of <f> and that the projection has full-dimensional
    image; an empty generic fiber short-circuits to the false formula with
    the caveat flag set.
    """
    f = [p for p in f]
    if not f or any(p.is_zero() for p in f):
        raise ValueError("the input system must be a list of nonzero polynomials")
    space = f[0].space
    if space.t < 1:
        raise ValueError("quantifier elimination needs at least one parameter")
    n = space.n
    pinned = A is not None or alpha is not None
    last_failure = 0
    retries = 0
    for attempt in range(max_retries + 1):
        run_seed = derive(seed, SALT_RETRY, attempt) if attempt else seed
        A_cur = A if A is not None else random_change_of_vars(
            n, space.t, derive(run_seed, SALT_A))
        alpha_cur = (tuple(Fraction(a) for a in alpha) if alpha is not None
                     else random_alpha(n, derive(run_seed, SALT_ALPHA)))
        fA = change_vars(f, A_cur)
        try:
            d = generic_dimension(fA)
        except EmptyGenericFiber:
            return QERun(tuple(f), A_cur, alpha_cur, seed, -1, (), (),
                         SAFormula.false(), retries, empty_generic_fiber=True)
        systems = tuple(build_critical_system(fA, i, d, alpha_cur)
                        for i in range(1, d + 2))
        per = []
        failed_at = None
        for idx, system in enumerate(systems):
            qseed = None if identity_q else derive(run_seed, SALT_Q, idx + 1)
            try:
                per.append(real_root_classification(list(system.polys), qseed,
                                                    q_rows=q_rows))
            except (NotZeroDimensional, StaircaseMismatch):
                failed_at = idx + 1
                break
        if failed_at is None:
            phi = SAFormula.false()
            for res in per:
                phi = phi.or_with(res.phi)
            return QERun(tuple(f), A_cur, alpha_cur, seed, d, systems,
                         tuple(per), simplify(phi), retries)
        last_failure = failed_at
        if pinned:
            raise RandomizationFailure(
                f"pinned (A, alpha) leaves system W_{failed_at} degenerate",
                failed_at)
        retries += 1
    raise RandomizationFailure(
        f"system W_{last_failure} stayed positive-dimensional after "
        f"{max_retries} redraws (likely an assumption violation)", last_failure)


# ---------------------------------------------------------------------------
# degree bounds
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundReport:
    """Output degree bounds and the operation-count expression."""

    n: int
    t: int
    s: int
    D: int
    degree_bound: int          # 2(n+s) D^s (D-1)^(n-s+1) C(n,s)
    degree_bound_tight: int    # 2(n+s-1) D^s (D-1)^(n-s+1) C(n,s)
    basis_degree_sums: tuple[int, ...]  # per critical system i = 1..d+1
    minor_degree_bounds: tuple[int, ...]
    op_count: int
    op_count_expr: str


def degree_bounds(n: int, t: int, s: int, D: int) -> BoundReport:
    """Exact bound arithmetic for generic inputs of degree D.

    Two headline constants are reported: the announced 2(n+s)... form and the
    sharper 2(n+s-1)... form; conformance checks use the larger.
    """
    if not 1 <= s <= n:
        raise ValueError("need 1 <= s <= n")
    if t < 1 or D < 1:
        raise ValueError("need t >= 1 and D >= 1")
    head = 2 * (n + s) * D ** s * (D - 1) ** (n - s + 1) * comb(n, s)
    tight = 2 * (n + s - 1) * D ** s * (D - 1) ** (n - s + 1) * comb(n, s)
    d = n - s
    sums = []
    for i in range(1, d + 1):
        sums.append((n + s - i) * D ** s * (D - 1) ** (n - i - s + 2)
                    * comb(n - i + 1, s))
    sums.append(D ** s * s * (D - 1))  # i = d + 1
    minors = tuple(2 * v for v in sums)
    dd = head
    ops = (n - s + 1) * 8 ** t * dd ** (3 * t + 2) * comb(t + dd, t)
    expr = (f"(n-s+1) * 8^t * Dcal^(3t+2) * C(t+Dcal, t) = "
            f"{n - s + 1} * 8^{t} * {dd}^{3 * t + 2} * C({t + dd},{t})")
    return BoundReport(n, t, s, D, head, tight, tuple(sums), minors, ops, expr)
