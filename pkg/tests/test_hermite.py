"""Hermite matrix golden tests (worked example) and the counting property."""

import random
from fractions import Fraction

import pytest

from realqe.exactalg import Poly, RatFunc, VarSpace
from realqe.geom import build_critical_system
from realqe.hermite import (
    ParametricHermite,
    SpecializationGuard,
    hermite_matrix,
    principal_minor_sequence,
    specialize_hermite,
)
from realqe.parsing import parse_poly
from realqe.real1d import isolate_real_roots, signature_symmetric
from realqe.gb import NotZeroDimensional

SP = VarSpace(("x1", "x2"), ("y1", "y2", "y3"))
F = parse_poly("x1^2 + y1*x2^2 + y2*x2 + y3", SP)
DELTA = parse_poly("y2^2 - 4*y1*y3", SP)


def P(text, space=SP):
    return parse_poly(text, space)


def _w(i):
    return build_critical_system([F], i, 1, (Fraction(0),)).polys


def test_h1_golden():
    ph = hermite_matrix(list(_w(1)))
    assert ph.delta == 2
    assert ph.w_f == P("y1")
    assert ph.entry(0, 0) == RatFunc(SP.const(2))
    assert ph.entry(0, 1) == RatFunc(SP.zero())
    assert ph.entry(1, 1) == RatFunc(P("y2^2 - 4*y1*y3 + 2*y1 * -2*y3 + 2*y1*2*y3"),
                                     P("2*y1"))
    # i.e. -2*y3 + y2^2/(2*y1)
    assert ph.entry(1, 1) == RatFunc(P("-4*y1*y3 + y2^2"), P("2*y1"))


def test_h2_golden():
    ph = hermite_matrix(list(_w(2)))
    assert ph.delta == 2
    assert ph.w_f == P("y1")
    assert ph.entry(0, 0) == RatFunc(SP.const(2))
    assert ph.entry(0, 1) == RatFunc(P("-y2"), P("y1"))
    assert ph.entry(1, 1) == RatFunc(P("-2*y1*y3 + y2^2"), P("y1^2"))


def test_hermite_no_parameters_used():
    sp = VarSpace(("x1",), ("u",))
    ph = hermite_matrix([parse_poly("x1^2 - 1", sp)])
    assert ph.delta == 2
    assert ph.entry(0, 0) == RatFunc(sp.const(2))
    assert ph.entry(0, 1) == RatFunc(sp.zero())
    assert ph.entry(1, 1) == RatFunc(sp.const(2))


def test_hermite_not_zero_dimensional():
    sp = VarSpace(("x1", "x2"), ("y1",))
    with pytest.raises(NotZeroDimensional):
        hermite_matrix([parse_poly("x1 - y1", sp)])


def test_minor_sequence_w1_identity_q():
    ph = hermite_matrix(list(_w(1)))
    ms = principal_minor_sequence(ph, qseed=None)
    assert list(ms.minors) == [RatFunc(SP.const(2)), RatFunc(DELTA, P("y1"))]
    assert list(ms.numerators) == [SP.const(2), DELTA]


def test_minor_sequence_w2_identity_q():
    ph = hermite_matrix(list(_w(2)))
    ms = principal_minor_sequence(ph, qseed=None)
    assert list(ms.minors) == [RatFunc(SP.const(2)), RatFunc(DELTA, P("y1^2"))]
    assert list(ms.numerators) == [SP.const(2), DELTA]


def test_minor_sequence_diagonal_prefix_products():
    sp = VarSpace(("x1",), ("u",))
    # mult by x1 has trace 0, x1^2 has trace 2u: H = [[2, 0], [0, 2u]]
    ph = hermite_matrix([parse_poly("x1^2 - u", sp)])
    ms = principal_minor_sequence(ph, qseed=None)
    assert list(ms.numerators) == [sp.const(2), parse_poly("4*u", sp).primitive() * 4]


def test_specialize_h1():
    ph = hermite_matrix(list(_w(1)))
    s = specialize_hermite(ph, (1, Fraction(1, 8), 0))
    assert s == [[2, 0], [0, Fraction(1, 128)]]
    assert signature_symmetric(s) == (2, 2)


def test_specialize_h2():
    ph = hermite_matrix(list(_w(2)))
    s = specialize_hermite(ph, (1, Fraction(1, 8), 0))
    assert s == [[2, Fraction(-1, 8)], [Fraction(-1, 8), Fraction(1, 64)]]


def test_specialize_guard():
    ph = hermite_matrix(list(_w(1)))
    with pytest.raises(SpecializationGuard):
        specialize_hermite(ph, (0, 1, 1))


def test_signature_invariant_under_qseed():
    ph = hermite_matrix(list(_w(1)))
    pts = [(1, Fraction(1, 8), 0), (-1, Fraction(1, 8), Fraction(-1, 128)),
           (2, 3, -1), (Fraction(-1, 2), 1, 1)]
    base = [signature_symmetric(specialize_hermite(ph, p))[0] for p in pts]
    for qseed in (1, 2):
        ms = principal_minor_sequence(ph, qseed=qseed)
        # signatures recomputed through the transformed minors agree at all
        # points where the minors do not vanish
        for p, expect in zip(pts, base):
            point = dict(zip(SP.y_names, map(Fraction, p)))
            vals = [m.eval_rat(point) for m in ms.minors]
            if any(v == 0 for v in vals):
                continue
            from realqe.real1d import signature_from_minor_signs
            assert signature_from_minor_signs(vals) == expect


def _univar_distinct_roots(p, var):
    return len(isolate_real_roots(p, var))


def test_counting_property_random_univariate():
    # signature(H(eta)) = #distinct real roots, rank = #distinct complex roots
    rng = random.Random(71)
    sp = VarSpace(("x",), ("u",))
    checked = 0
    while checked < 20:
        deg = rng.randint(2, 4)
        coeffs = {(d, rng.randint(0, 1)): Fraction(rng.randint(-5, 5))
                  for d in range(deg)}
        coeffs[(deg, 0)] = Fraction(rng.randint(1, 5))
        f = Poly(sp, coeffs)
        try:
            ph = hermite_matrix([f])
        except NotZeroDimensional:
            continue
        for _ in range(5):
            eta = Fraction(rng.randint(-6, 6))
            point = {"u": eta}
            if ph.w_f.eval_rat(point) == 0:
                continue
            fe = f.evaluate(point)
            if fe.deg_in(0) < 1:
                continue
            sig, rank = signature_symmetric(specialize_hermite(ph, (eta,)))
            n_real = _univar_distinct_roots(fe, 0)
            # distinct complex roots = degree of the squarefree part
            from realqe.exactalg import poly_gcd, divexact
            g = poly_gcd(fe, fe.derivative(0))
            n_complex = divexact(fe, g).deg_in(0)
            assert sig == n_real
            assert rank == n_complex
            checked += 1
