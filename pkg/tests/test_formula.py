"""Formula representation tests: evaluation, simplification, round trips."""

import random
from fractions import Fraction

import pytest

from realqe.exactalg import VarSpace
from realqe.formula import (
    SAFormula,
    SignCondition,
    evaluate,
    from_dict,
    from_sign_vector,
    parse_formula,
    serialize,
    simplify,
    to_dict,
)
from realqe.parsing import ParseError, parse_poly

SP = VarSpace(("x1", "x2"), ("y1", "y2", "y3"))


def P(text):
    return parse_poly(text, SP)


REF = parse_formula(
    "y2^2 - 4*y1*y3 > 0 AND y1 > 0 OR y2^2 - 4*y1*y3 != 0 AND y1 < 0", SP)


def test_evaluate_true_point():
    assert evaluate(REF, (1, Fraction(1, 8), 0)) is True


def test_evaluate_false_point():
    assert evaluate(REF, (1, Fraction(1, 8), Fraction(1, 128))) is False


def test_false_formula():
    assert evaluate(SAFormula.false(), (1, 2, 3)) is False
    assert serialize(SAFormula.false()) == "FALSE"


def test_true_formula():
    assert evaluate(SAFormula.true(), (0, 0, 0)) is True
    assert serialize(SAFormula.true()) == "TRUE"


def test_from_sign_vector_golden():
    clause = from_sign_vector([P("y2^2 - 4*y1*y3"), P("y1")], [1, 1],
                              guard=P("y1"))
    phi = simplify(SAFormula((clause,)))
    assert evaluate(phi, (1, Fraction(1, 8), 0))
    assert not evaluate(phi, (-1, Fraction(1, 8), 0))
    # the y1 != 0 guard is absorbed into y1 > 0
    assert serialize(phi) == "y1 > 0 AND y2^2 - 4*y1*y3 > 0"


def test_from_sign_vector_constant_dropped():
    clause = from_sign_vector([SP.const(2)], [1], guard=P("y1"))
    phi = simplify(SAFormula((clause,)))
    assert serialize(phi) == "y1 != 0"


def test_guard_only_clause():
    clause = from_sign_vector([], [], guard=P("y1"))
    assert clause == (SignCondition(P("y1"), "!="),)


def test_simplify_duplicate_clauses():
    clause = from_sign_vector([P("y1")], [1])
    phi = simplify(SAFormula((clause, clause)))
    assert len(phi.clauses) == 1


def test_simplify_contradiction():
    clause = (SignCondition(P("y1"), ">"), SignCondition(P("y1"), "<"))
    phi = simplify(SAFormula((clause,)))
    assert phi.is_false()


def test_simplify_scaled_polys_merge():
    a = (SignCondition(P("2*y1"), ">"),)
    b = (SignCondition(P("y1"), ">"),)
    phi = simplify(SAFormula((a, b)))
    assert len(phi.clauses) == 1


def test_simplify_negated_leading_coefficient():
    phi = simplify(SAFormula(((SignCondition(P("-y1"), ">"),),)))
    assert serialize(phi) == "y1 < 0"


def test_simplify_preserves_semantics_random():
    rng = random.Random(73)
    polys = [P("y1"), P("y2^2 - 4*y1*y3"), P("y1 + y2"), P("y3")]
    rels = (">", "<", "=", "!=", ">=", "<=")
    for _ in range(60):
        clauses = []
        for _ in range(rng.randint(1, 3)):
            conds = tuple(
                SignCondition(rng.choice(polys).scale(rng.choice((-2, 1, 3))),
                              rng.choice(rels))
                for _ in range(rng.randint(1, 3)))
            clauses.append(conds)
        phi = SAFormula(tuple(clauses))
        simplified = simplify(phi)
        for _ in range(25):
            eta = tuple(Fraction(rng.randint(-8, 8), rng.choice((1, 2, 4)))
                        for _ in range(3))
            assert evaluate(phi, eta) == evaluate(simplified, eta)


def test_serialize_parse_roundtrip():
    phi = simplify(REF)
    assert parse_formula(serialize(phi), SP) == phi


def test_dict_roundtrip():
    phi = simplify(REF)
    assert from_dict(to_dict(phi), SP) == phi


def test_parse_reports_position():
    with pytest.raises(ParseError):
        parse_formula("y1 > 1", SP)
    with pytest.raises(ParseError):
        parse_formula("y1 >", SP)
    with pytest.raises(ParseError):
        parse_formula("bogus ^^ 0", SP)


def test_kept_point_clause_holds_at_its_point():
    rng = random.Random(79)
    polys = [P("y1"), P("y2^2 - 4*y1*y3")]
    for _ in range(20):
        eta = tuple(Fraction(rng.randint(-8, 8), 2) for _ in range(3))
        a = dict(zip(SP.y_names, eta))
        vals = [q.eval_rat(a) for q in polys]
        if any(v == 0 for v in vals):
            continue
        clause = from_sign_vector(polys, [1 if v > 0 else -1 for v in vals])
        assert evaluate(SAFormula((clause,)), eta)
