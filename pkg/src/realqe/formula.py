"""Semi-algebraic formulas over the parameters: disjunctions of conjunctions
of polynomial sign conditions, with exact evaluation, syntactic
simplification, and text / structured serialization.

Text grammar: clauses separated by "OR", conditions by "AND", each condition
"<poly> <rel> 0" with rel one of > < = != >= <=.  The empty disjunction
prints as "FALSE", the trivially true formula as "TRUE".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exactalg import Poly, VarSpace
from .parsing import ParseError, parse_poly

RELS = (">", "<", "=", "!=", ">=", "<=")

_REL_SIGNS = {
    ">": frozenset({1}),
    "<": frozenset({-1}),
    "=": frozenset({0}),
    "!=": frozenset({-1, 1}),
    ">=": frozenset({0, 1}),
    "<=": frozenset({-1, 0}),
}

_SIGNS_REL = {v: k for k, v in _REL_SIGNS.items()}


@dataclass(frozen=True)
class SignCondition:
    """poly rel 0 with poly a nonzero polynomial in the parameters."""

    poly: Poly
    rel: str

    def __post_init__(self):
        if self.rel not in RELS:
            raise ValueError(f"unknown relation {self.rel!r}")
        if self.poly.is_zero():
            raise ValueError("sign condition on the zero polynomial")

    def holds_at(self, point: dict) -> bool:
        v = self.poly.eval_rat(point)
        s = 0 if v == 0 else (1 if v > 0 else -1)
        return s in _REL_SIGNS[self.rel]

    def __str__(self) -> str:
        return f"{self.poly} {self.rel} 0"


@dataclass(frozen=True)
class SAFormula:
    """Disjunction of conjunctions of sign conditions; () clauses are true,
    the empty disjunction is false."""

    clauses: tuple[tuple[SignCondition, ...], ...]
    canonical: bool = field(default=False, compare=False)

    @classmethod
    def false(cls) -> "SAFormula":
        return cls((), True)

    @classmethod
    def true(cls) -> "SAFormula":
        return cls(((),), True)

    def is_false(self) -> bool:
        return not self.clauses

    def is_true(self) -> bool:
        return any(not cl for cl in self.clauses)

    def polynomials(self) -> list[Poly]:
        out = []
        for cl in self.clauses:
            for cond in cl:
                if cond.poly not in out:
                    out.append(cond.poly)
        return out

    def or_with(self, other: "SAFormula") -> "SAFormula":
        return SAFormula(self.clauses + other.clauses)


def evaluate(phi: SAFormula, eta) -> bool:
    """Exact truth value of phi at a rational parameter point."""
    eta = tuple(Fraction(v) for v in eta)
    for clause in phi.clauses:
        ok = True
        for cond in clause:
            names = cond.poly.space.y_names
            if len(eta) != len(names):
                raise ValueError("parameter point has wrong length")
            if not cond.holds_at(dict(zip(names, eta))):
                ok = False
                break
        if ok:
            return True
    return False


def from_sign_vector(polys, signs, guard: Poly | None = None):
    """Clause asserting each polynomial's strict sign, plus guard != 0.

    signs entries are +1/-1 (or the strings "+"/"-").
    """
    if len(polys) != len(signs):
        raise ValueError("polys and signs have different lengths")
    conds = []
    for p, s in zip(polys, signs):
        if isinstance(s, str):
            s = 1 if s == "+" else -1
        if s not in (1, -1):
            raise ValueError("signs must be strictly positive or negative")
        conds.append(SignCondition(p, ">" if s > 0 else "<"))
    if guard is not None and not guard.is_zero():
        conds.append(SignCondition(guard, "!="))
    return tuple(conds)


def _normalize_condition(cond: SignCondition) -> SignCondition:
    p = cond.poly
    if p.is_constant():
        return cond
    prim = p.primitive()
    # p = c * prim with c of the sign of the leading coefficient of p
    flip = p.sign_at_leading() < 0
    rel = cond.rel
    if flip:
        rel = {">": "<", "<": ">", ">=": "<=", "<=": ">=",
               "=": "=", "!=": "!="}[rel]
    return SignCondition(prim, rel)


def simplify(phi: SAFormula) -> SAFormula:
    """Syntactic canonical form: constant conditions folded, same-polynomial
    conditions intersected (dropping contradictory clauses), duplicates
    removed, everything sorted."""
    out_clauses = []
    for clause in phi.clauses:
        by_poly: dict[Poly, frozenset] = {}
        contradiction = False
        for cond in clause:
            cond = _normalize_condition(cond)
            if cond.poly.is_constant():
                v = cond.poly.as_constant()
                s = 0 if v == 0 else (1 if v > 0 else -1)
                if s in _REL_SIGNS[cond.rel]:
                    continue  # trivially true condition
                contradiction = True
                break
            cur = by_poly.get(cond.poly, frozenset({-1, 0, 1}))
            cur = cur & _REL_SIGNS[cond.rel]
            if not cur:
                contradiction = True
                break
            by_poly[cond.poly] = cur
        if contradiction:
            continue
        conds = []
        for p, signs in by_poly.items():
            if signs == frozenset({-1, 0, 1}):
                continue
            conds.append(SignCondition(p, _SIGNS_REL[signs]))
        conds.sort(key=lambda c: (str(c.poly), c.rel))
        key = tuple(conds)
        if not key:
            return SAFormula.true()
        if key not in out_clauses:
            out_clauses.append(key)
    out_clauses.sort(key=lambda cl: tuple((str(c.poly), c.rel) for c in cl))
    return SAFormula(tuple(out_clauses), True)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def serialize(phi: SAFormula) -> str:
    if phi.is_false():
        return "FALSE"
    if phi.is_true():
        return "TRUE"
    return " OR ".join(" AND ".join(str(c) for c in cl) for cl in phi.clauses)


def parse_formula(text: str, space: VarSpace) -> SAFormula:
    """Inverse of serialize; raises ParseError with positions on bad input."""
    body = text.strip()
    if not body:
        raise ParseError("empty formula", 0)
    if body == "FALSE":
        return SAFormula.false()
    if body == "TRUE":
        return SAFormula.true()
    clauses = []
    for clause_text in body.split(" OR "):
        conds = []
        for cond_text in clause_text.split(" AND "):
            conds.append(_parse_condition(cond_text.strip(), space))
        clauses.append(tuple(conds))
    return SAFormula(tuple(clauses))


def _parse_condition(text: str, space: VarSpace) -> SignCondition:
    for rel in (">=", "<=", "!=", ">", "<", "="):
        idx = text.find(rel)
        if idx >= 0:
            lhs = text[:idx].strip()
            rhs = text[idx + len(rel):].strip()
            if rhs != "0":
                raise ParseError("conditions must compare against 0", idx)
            poly = parse_poly(lhs, space)
            if poly.deg_x() > 0:
                raise ParseError("formula polynomials must involve parameters only", 0)
            return SignCondition(poly, rel)
    raise ParseError(f"no relation found in condition {text!r}", 0)


def to_dict(phi: SAFormula) -> dict:
    """Stable structured form: clause list of [poly-string, rel] pairs."""
    return {
        "clauses": [[[str(c.poly), c.rel] for c in cl] for cl in phi.clauses],
    }


def from_dict(data: dict, space: VarSpace) -> SAFormula:
    clauses = []
    for cl in data["clauses"]:
        conds = []
        for poly_text, rel in cl:
            poly = parse_poly(poly_text, space)
            conds.append(SignCondition(poly, rel))
        clauses.append(tuple(conds))
    return SAFormula(tuple(clauses))
