"""Orchestrator tests: classification goldens, elimination runs, bounds."""

import random
from fractions import Fraction

import pytest

from realqe.exactalg import VarSpace
from realqe.formula import SAFormula, evaluate, parse_formula, serialize
from realqe.geom import identity_change
from realqe.parsing import parse_poly
from realqe.qe import (
    QERun,
    RandomizationFailure,
    degree_bounds,
    one_block_qe,
    real_root_classification,
)

SP = VarSpace(("x1", "x2"), ("y1", "y2", "y3"))
F = parse_poly("x1^2 + y1*x2^2 + y2*x2 + y3", SP)
W1 = [parse_poly("2*y1*x2 + y2", SP), F]
W2 = [F, parse_poly("x1", SP)]

REF = parse_formula(
    "y2^2 - 4*y1*y3 > 0 AND y1 > 0 OR y2^2 - 4*y1*y3 != 0 AND y1 < 0", SP)


def _agree_on_samples(phi, psi, space, excluded, n=500, seed=77):
    rng = random.Random(seed)
    bad = []
    for _ in range(n):
        eta = tuple(Fraction(rng.randint(-256, 256), 128)
                    for _ in range(space.t))
        a = dict(zip(space.y_names, eta))
        if any(q.eval_rat(a) == 0 for q in excluded):
            continue
        if evaluate(phi, eta) != evaluate(psi, eta):
            bad.append(eta)
    return bad


def test_classification_w1_matches_paper():
    res = real_root_classification(W1, qseed=None)
    expected = parse_formula(
        "y2^2 - 4*y1*y3 > 0 AND y1 > 0 OR y2^2 - 4*y1*y3 < 0 AND y1 < 0", SP)
    bad = _agree_on_samples(res.phi, expected, SP,
                            [parse_poly("y1", SP),
                             parse_poly("y2^2 - 4*y1*y3", SP)])
    assert not bad
    assert res.w_inf.primitive() == (parse_poly("y1", SP)
                                     * parse_poly("y2^2 - 4*y1*y3", SP)).primitive()


def test_classification_w2_matches_paper():
    res = real_root_classification(W2, qseed=None)
    expected = parse_formula(
        "y2^2 - 4*y1*y3 > 0 AND y1 != 0", SP)
    bad = _agree_on_samples(res.phi, expected, SP,
                            [parse_poly("y1", SP),
                             parse_poly("y2^2 - 4*y1*y3", SP)])
    assert not bad


def test_classification_no_real_solutions():
    sp = VarSpace(("x1",), ("y1",))
    res = real_root_classification([parse_poly("x1^2 + 1", sp)], qseed=None)
    assert res.phi.is_false()


def test_classification_kept_points_satisfy_phi():
    res = real_root_classification(W1, qseed=None)
    for eta in res.kept_points:
        assert evaluate(res.phi, eta)


def test_one_block_qe_worked_example_golden():
    run = one_block_qe([F], seed=1, A=identity_change(2), alpha=(0, 0),
                       identity_q=True)
    assert run.d == 1
    assert len(run.systems) == 2
    assert list(run.systems[0].polys) == W1
    assert list(run.systems[1].polys) == W2
    bad = _agree_on_samples(run.phi, REF, SP,
                            [parse_poly("y1", SP),
                             parse_poly("y2^2 - 4*y1*y3", SP)])
    assert not bad


def test_one_block_qe_circle():
    sp = VarSpace(("x",), ("y",))
    f = parse_poly("x^2 + y^2 - 1", sp)
    run = one_block_qe([f], seed=4)
    inside = parse_formula("y^2 - 1 < 0", sp)
    excluded = [p for res in run.per_system for p in [res.w_inf]]
    bad = _agree_on_samples(run.phi, inside, sp, excluded)
    assert not bad


def test_one_block_qe_trivial_linear():
    sp = VarSpace(("x1",), ("y1",))
    run = one_block_qe([parse_poly("x1 - y1", sp)], seed=5)
    assert run.d == 0
    # projection is everything: the formula holds at generic points
    rng = random.Random(81)
    hits = 0
    for _ in range(50):
        eta = (Fraction(rng.randint(-64, 64), 16),)
        a = {"y1": eta[0]}
        if any(res.w_inf.eval_rat(a) == 0 for res in run.per_system):
            continue
        assert evaluate(run.phi, eta)
        hits += 1
    assert hits >= 45


def test_one_block_qe_empty_generic_fiber():
    sp = VarSpace(("x1",), ("y1",))
    run = one_block_qe([parse_poly("y1", sp)], seed=6)
    assert run.empty_generic_fiber
    assert run.phi.is_false()


def test_determinism_same_seed():
    run1 = one_block_qe([F], seed=42)
    run2 = one_block_qe([F], seed=42)
    assert serialize(run1.phi) == serialize(run2.phi)
    assert run1.A == run2.A
    assert run1.alpha == run2.alpha
    assert run1.retries_used == run2.retries_used


def test_bad_input_rejected():
    with pytest.raises(ValueError):
        one_block_qe([], seed=1)
    with pytest.raises(ValueError):
        one_block_qe([SP.zero()], seed=1)


# -- degree bounds --------------------------------------------------------------

def test_bounds_table_values():
    br = degree_bounds(3, 2, 2, 2)
    assert br.degree_bound == 120
    assert br.degree_bound_tight == 96
    assert br.basis_degree_sums[0] == 48
    assert br.minor_degree_bounds[0] == 96


def test_bounds_linear_degenerate():
    br = degree_bounds(3, 2, 2, 1)
    assert br.degree_bound == 0


def test_bounds_usage_error():
    with pytest.raises(ValueError):
        degree_bounds(2, 1, 3, 2)


def test_bounds_last_system():
    br = degree_bounds(3, 2, 2, 2)
    # i = d+1 sum bound: D^s * s * (D-1) = 4 * 2 * 1
    assert br.basis_degree_sums[-1] == 8
