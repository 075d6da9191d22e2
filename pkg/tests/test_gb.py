"""Groebner engine tests: both coefficient regimes, normal forms, staircases."""

import random
from fractions import Fraction
from itertools import combinations

import pytest

from realqe.exactalg import Poly, RatFunc, VarSpace, grevlex_key, mono_deg
from realqe.gb import (
    FIELD_Q,
    FIELD_QY,
    GroebnerBasis,
    MonomialOrder,
    NotZeroDimensional,
    block_order,
    buchberger,
    check_noether_degree_condition,
    grevlex_order,
    is_groebner,
    normal_form,
    normal_form_qy,
    quotient_basis,
    staircase_dimension,
)
from realqe.parsing import parse_poly

SP = VarSpace(("x1", "x2"), ("y1", "y2", "y3"))


def P(text, space=SP):
    return parse_poly(text, space)


W1 = [P("2*y1*x2 + y2"), P("x1^2 + y1*x2^2 + y2*x2 + y3")]
W2 = [P("x1^2 + y1*x2^2 + y2*x2 + y3"), P("x1")]


# -- monomial orders -----------------------------------------------------------

def test_grevlex_tie_break():
    key = grevlex_order().key
    # x1^2 > x2^2 under grevlex on (x1, x2, ...)
    a = (2, 0, 0, 0, 0)
    b = (0, 2, 0, 0, 0)
    assert key(a) > key(b)


def test_block_order_compares_x_first():
    key = block_order(SP).key
    # any positive x-degree beats pure-y monomials of huge degree
    assert key((1, 0, 0, 0, 0)) > key((0, 0, 9, 9, 9))


def test_orders_admissible_on_random_triples():
    rng = random.Random(31)
    for order in (grevlex_order(), block_order(SP)):
        key = order.key
        one = (0,) * 5
        for _ in range(200):
            a = tuple(rng.randint(0, 4) for _ in range(5))
            b = tuple(rng.randint(0, 4) for _ in range(5))
            c = tuple(rng.randint(0, 4) for _ in range(5))
            if a != one:
                assert key(a) > key(one)
            if key(a) > key(b):
                ac = tuple(i + j for i, j in zip(a, c))
                bc = tuple(i + j for i, j in zip(b, c))
                assert key(ac) > key(bc)


# -- buchberger -----------------------------------------------------------------

def test_single_variable_generator():
    G = buchberger([P("x1")], grevlex_order())
    assert list(G.gens) == [P("x1")]


def test_single_poly_is_its_own_basis():
    sp = VarSpace(("x",), ("y",))
    f = parse_poly("x^2 + y^2 - 1", sp)
    G = buchberger([f], block_order(sp))
    assert list(G.gens) == [f]


def test_worked_example_param_basis():
    G = buchberger(W1, coeff_field=FIELD_QY)
    lms = set(G.x_lead_monomials())
    assert lms == {(0, 1), (2, 0)}
    B = quotient_basis(G)
    assert B.monomials == ((0, 0), (1, 0))
    assert B.delta == 2


def test_worked_example_block_basis():
    G = buchberger(W1, block_order(SP))
    # reduced basis: {y1*x2 + y2/2, x1^2 + (y2/2)*x2 + y3} up to monic scaling
    assert len(G.gens) == 2
    lms = set(G.lead_monomials())
    assert lms == {(0, 1, 1, 0, 0), (2, 0, 0, 0, 0)}
    reduced = sorted(G.gens, key=lambda g: grevlex_key(g.leading()[0]))
    assert reduced[0] == P("y1*x2 + 1/2*y2")
    assert reduced[1] == P("x1^2 + 1/2*y2*x2 + y3")


def test_all_spolys_reduce_to_zero():
    for gens, field in ((W1, FIELD_Q), (W1, FIELD_QY), (W2, FIELD_QY)):
        order = block_order(SP) if field == FIELD_Q else None
        G = buchberger(gens, order, coeff_field=field)
        assert is_groebner(G)


def test_membership_of_generators():
    G = buchberger(W1, block_order(SP))
    for g in W1:
        assert normal_form(g, G).is_zero()


# -- normal forms ------------------------------------------------------------------

def test_normal_form_of_basis_elements_is_zero():
    G = buchberger(W1, coeff_field=FIELD_QY)
    for g in G.gens:
        r, _ = normal_form_qy(g, G)
        assert r.is_zero()


def test_normal_form_x1sq_worked_example():
    G = buchberger(W1, coeff_field=FIELD_QY)
    r, mult = normal_form_qy(P("x1^2"), G)
    # NF(x1^2) = Delta / (4*y1) on the basis {1, x1}
    assert RatFunc(r, mult) == RatFunc(P("y2^2 - 4*y1*y3"), P("4*y1"))


def test_normal_form_zero():
    G = buchberger(W1, coeff_field=FIELD_QY)
    r, _ = normal_form_qy(SP.zero(), G)
    assert r.is_zero()


def test_normal_form_idempotent_and_multiplicative():
    rng = random.Random(37)
    G = buchberger(W1, coeff_field=FIELD_QY)
    Gq = buchberger([g.evaluate({"y1": 1, "y2": 2, "y3": Fraction(1, 3)}) for g in W1],
                    grevlex_order())
    for _ in range(20):
        terms = {tuple(rng.randint(0, 2) for _ in range(5)): Fraction(rng.randint(-4, 4))
                 for _ in range(4)}
        p = Poly(SP, terms)
        q = Poly(SP, {tuple(rng.randint(0, 2) for _ in range(5)):
                      Fraction(rng.randint(-4, 4)) for _ in range(3)})
        # Q regime: idempotence and multiplicativity of the remainder
        nf_p = normal_form(p, Gq)
        assert normal_form(nf_p, Gq) == nf_p
        lhs = normal_form(p * q, Gq)
        rhs = normal_form(normal_form(p, Gq) * normal_form(q, Gq), Gq)
        assert lhs == rhs
        # Q(y) regime: a remainder is already fully reduced
        r, _ = normal_form_qy(p, G)
        r2, m2 = normal_form_qy(r, G)
        assert RatFunc(r2, m2) == RatFunc(r)


def test_normal_form_linear_over_field():
    rng = random.Random(41)
    Gq = buchberger([g.evaluate({"y1": 1, "y2": 2, "y3": Fraction(1, 3)}) for g in W1],
                    grevlex_order())
    for _ in range(10):
        p = Poly(SP, {tuple(rng.randint(0, 2) for _ in range(5)):
                      Fraction(rng.randint(-4, 4)) for _ in range(4)})
        q = Poly(SP, {tuple(rng.randint(0, 2) for _ in range(5)):
                      Fraction(rng.randint(-4, 4)) for _ in range(4)})
        a, b = Fraction(3, 2), Fraction(-2, 5)
        lhs = normal_form(p.scale(a) + q.scale(b), Gq)
        rhs = normal_form(p, Gq).scale(a) + normal_form(q, Gq).scale(b)
        assert lhs == rhs


# -- quotient bases -------------------------------------------------------------------

def test_quotient_basis_w2():
    G = buchberger(W2, coeff_field=FIELD_QY)
    B = quotient_basis(G)
    assert B.monomials == ((0, 0), (0, 1))  # {1, x2}
    assert B.delta == 2


def test_quotient_basis_point_ideal():
    sp = VarSpace(("x1", "x2", "x3"), ())
    G = buchberger([parse_poly(v, sp) for v in ("x1", "x2", "x3")], grevlex_order())
    B = quotient_basis(G)
    assert B.monomials == ((0, 0, 0),)
    assert B.delta == 1


def test_quotient_dimension_counts_solutions_with_multiplicity():
    sp = VarSpace(("x", "y"), ())
    G = buchberger([parse_poly("x^2 - 1", sp), parse_poly("y^3", sp)], grevlex_order())
    assert quotient_basis(G).delta == 6


def test_quotient_basis_infinite_staircase_rejected():
    G = buchberger([P("x1")], coeff_field=FIELD_QY)
    with pytest.raises(NotZeroDimensional):
        quotient_basis(G)


# -- staircase dimension ----------------------------------------------------------------

def test_dimension_worked_example_is_one():
    G = buchberger([P("x1^2 + y1*x2^2 + y2*x2 + y3")], coeff_field=FIELD_QY)
    assert staircase_dimension(G) == 1


def test_dimension_of_point():
    sp = VarSpace(("x1", "x2", "x3"), ())
    G = buchberger([parse_poly(v, sp) for v in ("x1", "x2", "x3")], grevlex_order())
    assert staircase_dimension(G) == 0


def test_dimension_hyperboloid():
    sp = VarSpace(("x1", "x2", "x3"), ())
    G = buchberger([parse_poly("x1^2 - x2^2 - x3^2 - 1", sp)], grevlex_order())
    assert staircase_dimension(G) == 2


def test_dimension_unit_ideal_sentinel():
    sp = VarSpace(("x1",), ())
    G = buchberger([parse_poly("x1", sp), parse_poly("x1 - 1", sp)], grevlex_order())
    assert staircase_dimension(G) == -1


def _dimension_oracle(lms, nvars):
    """Largest subset of variables whose span avoids every leading support."""
    if any(all(e == 0 for e in lm) for lm in lms):
        return -1
    best = 0
    for size in range(1, nvars + 1):
        for S in combinations(range(nvars), size):
            ok = True
            for lm in lms:
                if all(i in S for i, e in enumerate(lm) if e):
                    ok = False
                    break
            if ok:
                best = max(best, size)
    return best


def test_dimension_brute_force_agreement():
    rng = random.Random(43)
    sp = VarSpace(("a", "b", "c", "d", "e"), ())
    for _ in range(15):
        gens = []
        for _ in range(rng.randint(1, 3)):
            terms = {tuple(rng.randint(0, 2) for _ in range(5)):
                     Fraction(rng.randint(-3, 3)) for _ in range(3)}
            p = Poly(sp, terms)
            if not p.is_zero():
                gens.append(p)
        if not gens:
            continue
        G = buchberger(gens, grevlex_order())
        assert staircase_dimension(G) == _dimension_oracle(G.lead_monomials(), 5)


# -- Noether degree condition --------------------------------------------------------------

def test_noether_condition_true_case():
    sp = VarSpace(("x1",), ("y1",))
    G = buchberger([parse_poly("x1^2 - y1", sp)], block_order(sp))
    assert check_noether_degree_condition(G)


def test_noether_condition_false_case():
    sp = VarSpace(("x1",), ("y1",))
    G = buchberger([parse_poly("x1 - y1^2", sp)], block_order(sp))
    assert not check_noether_degree_condition(G)


def test_worked_example_fails_noether():
    # the leading y1-coefficient of the x2-element makes deg > deg_x
    G = buchberger(W1, block_order(SP))
    assert not check_noether_degree_condition(G)
