"""Critical-system construction tests: worked example, hyperboloid, randomness."""

import random
from fractions import Fraction
from math import comb

import pytest

from realqe.exactalg import VarSpace
from realqe.gb import FIELD_QY, buchberger, quotient_basis
from realqe.geom import (
    ChangeOfVars,
    EmptyGenericFiber,
    build_critical_system,
    change_vars,
    generic_dimension,
    identity_change,
    random_alpha,
    random_change_of_vars,
)
from realqe.parsing import parse_poly

SP = VarSpace(("x1", "x2"), ("y1", "y2", "y3"))
F = parse_poly("x1^2 + y1*x2^2 + y2*x2 + y3", SP)

HYP = VarSpace(("x1", "x2", "x3"), ())
FH = parse_poly("x1^2 - x2^2 - x3^2 - 1", HYP)


def test_change_vars_identity():
    assert change_vars([F], identity_change(2)) == [F]


def test_change_vars_permutation():
    A = ChangeOfVars(((Fraction(0), Fraction(1)), (Fraction(1), Fraction(0))))
    assert change_vars([parse_poly("x1", SP)], A) == [parse_poly("x2", SP)]


def test_change_vars_preserves_degree():
    rng = random.Random(61)
    for seed in range(5):
        A = random_change_of_vars(2, 3, seed)
        fa = change_vars([F], A)[0]
        assert fa.deg_x() == F.deg_x()
        assert fa.deg() == F.deg()


def test_change_vars_singular_rejected():
    A = ChangeOfVars(((Fraction(1), Fraction(1)), (Fraction(1), Fraction(1))))
    with pytest.raises(ValueError):
        change_vars([F], A)


def test_random_change_deterministic():
    assert random_change_of_vars(3, 2, 42).A == random_change_of_vars(3, 2, 42).A
    assert random_alpha(3, 7) == random_alpha(3, 7)


def test_random_change_distinct_across_seeds():
    seen = {random_change_of_vars(2, 1, s).A for s in range(100)}
    assert len(seen) >= 99


def test_worked_example_w1():
    w1 = build_critical_system([F], 1, 1, (Fraction(0),))
    assert list(w1.polys) == [parse_poly("2*y1*x2 + y2", SP), F]


def test_worked_example_w2():
    w2 = build_critical_system([F], 2, 1, (Fraction(0),))
    assert list(w2.polys) == [F, parse_poly("x1", SP)]


def test_hyperboloid_three_systems():
    d = generic_dimension([FH])
    assert d == 2
    alpha = (Fraction(0), Fraction(0))
    w1 = build_critical_system([FH], 1, d, alpha)
    w2 = build_critical_system([FH], 2, d, alpha)
    w3 = build_critical_system([FH], 3, d, alpha)
    assert list(w1.polys) == [parse_poly("-2*x2", HYP), parse_poly("-2*x3", HYP), FH]
    assert list(w2.polys) == [parse_poly("-2*x3", HYP), FH, parse_poly("x1", HYP)]
    assert list(w3.polys) == [FH, parse_poly("x1", HYP), parse_poly("x2", HYP)]


def test_index_out_of_range():
    with pytest.raises(ValueError):
        build_critical_system([F], 3, 1, (Fraction(0),))


def test_generic_dimension_worked_example():
    assert generic_dimension([F]) == 1


def test_generic_dimension_zero():
    sp = VarSpace(("x1", "x2"), ("y1",))
    assert generic_dimension([parse_poly("x1", sp), parse_poly("x2", sp)]) == 0


def test_generic_dimension_circle():
    sp = VarSpace(("x",), ("y",))
    assert generic_dimension([parse_poly("x^2 + y^2 - 1", sp)]) == 0


def test_empty_generic_fiber():
    sp = VarSpace(("x",), ("y",))
    with pytest.raises(EmptyGenericFiber):
        generic_dimension([parse_poly("y", sp)])


def test_minor_count_regular_sequence():
    # for s = n - d the number of minors in W_i is C(n-i, n-d)
    sp = VarSpace(("x1", "x2", "x3"), ("y1",))
    f = [parse_poly("x1^2 + x2^2 + x3^2 + y1", sp),
         parse_poly("x1*x2 - x3 + y1", sp)]
    d = generic_dimension(f)
    assert d == 1
    n, s = 3, 2
    for i in range(1, d + 2):
        w = build_critical_system(f, i, d, (Fraction(0),))
        nminors = len(w.polys) - s - (i - 1)
        assert nminors == (comb(n - i, n - d) if n - i >= n - d else 0)


def test_projection_invariant_under_change_of_vars():
    # a point (x, y) solves f^A iff (A x, y) solves f: check on a crafted
    # solvable instance with rational solutions
    rng = random.Random(67)
    sp = VarSpace(("x1", "x2"), ("y1",))
    f = parse_poly("x1 - y1", sp)
    g = parse_poly("x2 - 2", sp)
    for seed in range(4):
        A = random_change_of_vars(2, 1, seed)
        fa = change_vars([f, g], A)
        eta = Fraction(rng.randint(-5, 5))
        # solve the transformed linear system A x = (eta, 2)
        a, b = A.A[0]
        c, d = A.A[1]
        det = a * d - b * c
        x1 = (d * eta - b * 2) / det
        x2 = (-c * eta + a * 2) / det
        point = {"x1": x1, "x2": x2, "y1": eta}
        assert all(p.eval_rat(point) == 0 for p in fa)


def test_worked_example_w1_specialization_quotient():
    w1 = build_critical_system([F], 1, 1, (Fraction(0),))
    eta = {"y1": Fraction(3), "y2": Fraction(-1), "y3": Fraction(2)}
    specialized = [p.evaluate(eta) for p in w1.polys]
    G = buchberger(specialized)
    B = quotient_basis(G)
    assert B.delta == 2
