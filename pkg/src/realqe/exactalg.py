"""Exact arithmetic foundation: sparse multivariate polynomials over Q,
rational functions, polynomial matrices, determinants and resultants.

Coefficients are `fractions.Fraction` throughout (aliased as `Rat`), so every
value is an exact rational in lowest terms with a positive denominator.
Monomials are plain exponent tuples of length n + t over a `VarSpace` whose
variables are split into a quantified block x and a parameter block y.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd as _int_gcd

Rat = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _ratio(c):
    """Coefficient normal form: plain int when integral, Fraction otherwise.

    Exactness is unchanged; integer coefficients keep the hot paths
    (pseudo-division, Bareiss, resultants) in fast native arithmetic.
    """
    if type(c) is int:
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


# ---------------------------------------------------------------------------
# variable spaces and monomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VarSpace:
    """Ordered variable layout: x (quantified) block followed by y (parameters).

    t = 0 is allowed so that purely unparametric systems (specialized fibers,
    characteristic polynomials) reuse the same machinery.
    """

    x_names: tuple[str, ...]
    y_names: tuple[str, ...]

    def __post_init__(self):
        names = self.x_names + self.y_names
        if len(self.x_names) < 1:
            raise ValueError("need at least one quantified variable")
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")

    @property
    def n(self) -> int:
        return len(self.x_names)

    @property
    def t(self) -> int:
        return len(self.y_names)

    @property
    def nvars(self) -> int:
        return len(self.x_names) + len(self.y_names)

    @property
    def names(self) -> tuple[str, ...]:
        return self.x_names + self.y_names

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def var(self, name: str) -> "Poly":
        mono = tuple(1 if i == self.index(name) else 0 for i in range(self.nvars))
        return Poly(self, {mono: 1}, _clean=True)

    def const(self, c) -> "Poly":
        return Poly(self, {(0,) * self.nvars: c}, _clean=False)

    def zero(self) -> "Poly":
        return Poly(self, {})


def mono_mul(a: tuple, b: tuple) -> tuple:
    return tuple(i + j for i, j in zip(a, b))


def mono_div(a: tuple, b: tuple) -> tuple:
    return tuple(i - j for i, j in zip(a, b))


def mono_divides(a: tuple, b: tuple) -> bool:
    """True when monomial a divides monomial b."""
    return all(i <= j for i, j in zip(a, b))


def mono_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(i, j) for i, j in zip(a, b))


def mono_deg(a: tuple) -> int:
    return sum(a)


def grevlex_key(mono: tuple):
    """Sort key realizing graded reverse lexicographic order (max = leading)."""
    return (sum(mono), tuple(-e for e in reversed(mono)))


# ---------------------------------------------------------------------------
# sparse polynomials
# ---------------------------------------------------------------------------

class Poly:
    """Sparse multivariate polynomial: finite map monomial -> nonzero Rat."""

    __slots__ = ("space", "terms")

    def __init__(self, space: VarSpace, terms: dict, *, _clean: bool = False):
        self.space = space
        if _clean:
            self.terms = terms
        else:
            self.terms = {}
            width = space.nvars
            for m, c in terms.items():
                if len(m) != width:
                    raise ValueError("monomial width does not match variable space")
                c = _ratio(c)
                if c:
                    self.terms[m] = c

    # -- construction helpers ------------------------------------------------

    @classmethod
    def const(cls, space: VarSpace, c) -> "Poly":
        return space.const(c)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self.terms)

    def as_constant(self) -> Fraction:
        if self.is_zero():
            return _ZERO
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return Fraction(next(iter(self.terms.values())))

    # -- degrees ---------------------------------------------------------------

    def deg(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def deg_x(self) -> int:
        n = self.space.n
        return max((sum(m[:n]) for m in self.terms), default=-1)

    def deg_y(self) -> int:
        n = self.space.n
        return max((sum(m[n:]) for m in self.terms), default=-1)

    def deg_in(self, var: int) -> int:
        return max((m[var] for m in self.terms), default=-1)

    # -- arithmetic ------------------------------------------------------------

    def _check(self, other: "Poly"):
        if self.space != other.space:
            raise ValueError("polynomials live in different variable spaces")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = res.get(m, 0) + c
            if s:
                res[m] = s
            elif m in res:
                del res[m]
        return Poly(self.space, res, _clean=True)

    def __sub__(self, other: "Poly") -> "Poly":
        self._check(other)
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = res.get(m, 0) - c
            if s:
                res[m] = s
            elif m in res:
                del res[m]
        return Poly(self.space, res, _clean=True)

    def __neg__(self) -> "Poly":
        return Poly(self.space, {m: -c for m, c in self.terms.items()}, _clean=True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        res: dict = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = tuple(i + j for i, j in zip(m1, m2))
                s = res.get(m, 0) + c1 * c2
                if s:
                    res[m] = s
                elif m in res:
                    del res[m]
        return Poly(self.space, res, _clean=True)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        c = _ratio(c)
        if not c:
            return Poly(self.space, {}, _clean=True)
        if c == 1:
            return self
        return Poly(self.space, {m: _ratio(c * v) for m, v in self.terms.items()},
                    _clean=True)

    def mul_term(self, c, mono: tuple) -> "Poly":
        c = _ratio(c)
        if not c:
            return Poly(self.space, {}, _clean=True)
        return Poly(
            self.space,
            {tuple(i + j for i, j in zip(m, mono)): _ratio(c * v)
             for m, v in self.terms.items()},
            _clean=True,
        )

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = self.space.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poly)
            and self.space == other.space
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.space, frozenset(self.terms.items())))

    # -- structure -------------------------------------------------------------

    def coeff(self, mono: tuple):
        return self.terms.get(mono, 0)

    def leading(self, key=grevlex_key) -> tuple:
        """Leading (monomial, coefficient) under the given key (default grevlex)."""
        m = max(self.terms, key=key)
        return m, self.terms[m]

    def content(self) -> Fraction:
        """Positive rational c with self/c integer-coefficient and coprime."""
        num = 0
        den = 1
        for c in self.terms.values():
            num = _int_gcd(num, abs(c.numerator))
            den = den * c.denominator // _int_gcd(den, c.denominator)
        if num == 0:
            return _ONE
        return Fraction(num, den)

    def primitive(self) -> "Poly":
        """Integer-coprime coefficients, positive leading coefficient (grevlex)."""
        if self.is_zero():
            return self
        c = self.content()
        _, lc = self.leading()
        if lc < 0:
            c = -c
        return self.scale(1 / c)

    def sign_at_leading(self) -> int:
        if self.is_zero():
            return 0
        return 1 if self.leading()[1] > 0 else -1

    # -- calculus / evaluation ---------------------------------------------------

    def derivative(self, var: int) -> "Poly":
        res = {}
        for m, c in self.terms.items():
            e = m[var]
            if e:
                dm = m[:var] + (e - 1,) + m[var + 1:]
                res[dm] = res.get(dm, 0) + c * e
        return Poly(self.space, {m: c for m, c in res.items() if c}, _clean=True)

    def evaluate(self, assignment: dict) -> "Poly":
        """Exact substitution of a subset of variables by rationals."""
        if not assignment:
            return self
        idx = {}
        for name, val in assignment.items():
            idx[self.space.index(name)] = Fraction(val)
        # exact substitution; coefficients renormalized to ints where possible
        res: dict = {}
        for m, c in self.terms.items():
            v = c
            new_m = list(m)
            for i, val in idx.items():
                e = m[i]
                if e:
                    v *= val ** e
                new_m[i] = 0
            if v == 0:
                continue
            key = tuple(new_m)
            s = res.get(key, 0) + v
            if s:
                res[key] = _ratio(s)
            elif key in res:
                del res[key]
        return Poly(self.space, res, _clean=True)

    def eval_rat(self, assignment: dict) -> Fraction:
        """Full evaluation to a rational; raises if variables remain."""
        return self.evaluate(assignment).as_constant()

    def subs_y(self, point) -> "Poly":
        """Specialize all parameters at a rational point (length t)."""
        names = self.space.y_names
        if len(point) != len(names):
            raise ValueError("parameter point has wrong length")
        return self.evaluate(dict(zip(names, point)))

    # -- univariate views ----------------------------------------------------------

    def univar_coeffs(self, var: int) -> list:
        """Dense coefficient list in `var` (index = exponent), entries Poly."""
        d = self.deg_in(var)
        if d < 0:
            return []
        buckets: list[dict] = [dict() for _ in range(d + 1)]
        for m, c in self.terms.items():
            e = m[var]
            rest = m[:var] + (0,) + m[var + 1:]
            buckets[e][rest] = buckets[e].get(rest, 0) + c
        return [Poly(self.space, b, _clean=True) for b in buckets]

    @staticmethod
    def from_univar(coeffs: list, var: int, space: VarSpace) -> "Poly":
        res: dict = {}
        for e, p in enumerate(coeffs):
            for m, c in p.terms.items():
                key = m[:var] + (m[var] + e,) + m[var + 1:]
                s = res.get(key, 0) + c
                if s:
                    res[key] = s
                elif key in res:
                    del res[key]
        return Poly(space, res, _clean=True)

    # -- printing ----------------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = self.space.names
        parts = []
        for m in sorted(self.terms, key=grevlex_key, reverse=True):
            c = self.terms[m]
            factors = []
            for name, e in zip(names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if not factors:
                body = str(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(abs(c))] + factors)
            parts.append(("- " if c < 0 else "+ ") + body)
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]

    def __repr__(self) -> str:
        return f"Poly({self})"


# ---------------------------------------------------------------------------
# gcd, squarefree part, exact division
# ---------------------------------------------------------------------------

def divexact(a: Poly, b: Poly) -> Poly:
    """Exact quotient a / b; raises ValueError when b does not divide a."""
    if b.is_zero():
        raise ValueError("division by zero polynomial")
    if a.is_zero():
        return a
    if b.is_constant():
        return a.scale(1 / b.as_constant())
    space = a.space
    rem = a
    quo: dict = {}
    lm_b, lc_b = b.leading()
    while not rem.is_zero():
        lm_r, lc_r = rem.leading()
        if not mono_divides(lm_b, lm_r):
            raise ValueError("inexact polynomial division")
        m = mono_div(lm_r, lm_b)
        c = _ratio(Fraction(lc_r) / lc_b)
        quo[m] = c
        rem = rem - b.mul_term(c, m)
    return Poly(space, quo)


def _prem(f: list, g: list, space: VarSpace) -> list:
    """Pseudo-remainder of dense univariate coefficient lists (entries Poly).

    Satisfies lc(g)^(deg f - deg g + 1) * f = q*g + r.
    """
    df, dg = len(f) - 1, len(g) - 1
    lc_g = g[-1]
    r = list(f)
    steps = df - dg + 1
    while len(r) - 1 >= dg and any(not p.is_zero() for p in r):
        while r and r[-1].is_zero():
            r.pop()
        if len(r) - 1 < dg:
            break
        lc_r = r[-1]
        shift = len(r) - 1 - dg
        r = [p * lc_g for p in r]
        for i in range(dg + 1):
            r[shift + i] = r[shift + i] - lc_r * g[i]
        r.pop()
        steps -= 1
        while r and r[-1].is_zero():
            r.pop()
    # match the classical normalization lc(g)^(df-dg+1)
    if steps > 0:
        mult = lc_g ** steps
        r = [p * mult for p in r]
    return r


def _univar_content(coeffs: list, space: VarSpace) -> Poly:
    g = space.zero()
    for p in coeffs:
        if p.is_zero():
            continue
        g = poly_gcd(g, p)
        if g.is_constant():
            break
    return g if not g.is_zero() else space.zero()


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """GCD in Q[vars], primitive with positive grevlex leading coefficient.

    Recursive content/primitive-part scheme with a subresultant PRS for the
    univariate steps; gcd(p, 0) is the primitive part of p by convention.
    """
    if a.space != b.space:
        raise ValueError("polynomials live in different variable spaces")
    space = a.space
    if a.is_zero():
        return b.primitive()
    if b.is_zero():
        return a.primitive()
    if a.is_constant() or b.is_constant():
        return space.const(1)
    var = _main_var(a, b)
    da, db = a.deg_in(var), b.deg_in(var)
    if da == 0 or db == 0:
        # one operand is free of the main variable: it can only divide the
        # other through the content w.r.t. that variable
        with_var, without = (a, b) if db == 0 else (b, a)
        cont = _univar_content(with_var.univar_coeffs(var), space)
        return poly_gcd(cont, without)
    big, small = (a, b) if da >= db else (b, a)
    ca = _univar_content(big.univar_coeffs(var), space)
    cb = _univar_content(small.univar_coeffs(var), space)
    pa = divexact(big, ca)
    pb = divexact(small, cb)
    if _gcd_var_part_trivial(pa, pb, var):
        gp = space.const(1)
    else:
        g = _prs_last(pa, pb, var)
        if g.deg_in(var) == 0:
            gp = space.const(1)
        else:
            gcont = _univar_content(g.univar_coeffs(var), space)
            gp = divexact(g, gcont)
    return (poly_gcd(ca, cb) * gp).primitive()


def _main_var(a: Poly, b: Poly) -> int:
    best = -1
    for p in (a, b):
        for m in p.terms:
            for i in range(len(m) - 1, best, -1):
                if m[i]:
                    best = max(best, i)
                    break
    return best


def _subres_prs_core(f: list, g: list, space: VarSpace):
    """Subresultant PRS of dense coefficient lists with deg f >= deg g >= 1.

    Returns (last, s_last): the last nonzero PRS element (gcd candidate up to
    content) and the accumulated subresultant scalar (the resultant when the
    last element has degree zero).  Divisions are exact in the coefficient
    ring; no content computations happen inside the loop.
    """
    one = space.const(1)
    n, m = len(f) - 1, len(g) - 1
    d = n - m
    b = one if (d + 1) % 2 == 0 else -one
    h = [p * b for p in _prem(f, g, space)]
    while h and h[-1].is_zero():
        h.pop()
    lc = g[-1]
    c = lc ** d
    s_last = c
    c = -c
    cur, m_cur = g, m
    while h:
        k = len(h) - 1
        d = m_cur - k
        cur, nxt, m_cur = h, cur, k
        b = (lc * (c ** d)).scale(-1)
        h = [divexact(p, b) for p in _prem(nxt, cur, space)]
        while h and h[-1].is_zero():
            h.pop()
        lc = cur[-1]
        if d > 1:
            c = divexact((lc.scale(-1)) ** d, c ** (d - 1))
        else:
            c = lc.scale(-1)
        s_last = c.scale(-1)
    return cur, s_last


# -- dense fast path: coefficients as integer lists in one inner variable ----

def _du_strip(c: list) -> list:
    while c and not c[-1]:
        c.pop()
    return c


def _du_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    res = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    res[i + j] += x * y
    return _du_strip(res)


def _du_sub(a: list, b: list) -> list:
    res = list(a) + [0] * (len(b) - len(a))
    for j, y in enumerate(b):
        res[j] -= y
    return _du_strip(res)


def _du_neg(a: list) -> list:
    return [-x for x in a]


def _du_pow(a: list, k: int) -> list:
    res = [1]
    for _ in range(k):
        res = _du_mul(res, a)
    return res


def _du_divexact(a: list, b: list) -> list:
    """Exact quotient of dense integer polynomial lists."""
    if not a:
        return []
    out = [0] * (len(a) - len(b) + 1)
    r = list(a)
    lc = b[-1]
    for k in range(len(out) - 1, -1, -1):
        c, rem = divmod(r[k + len(b) - 1], lc)
        if rem:
            raise ValueError("inexact dense division")
        out[k] = c
        if c:
            for i, gv in enumerate(b):
                r[k + i] -= c * gv
    if any(r[: len(b) - 1]):
        raise ValueError("inexact dense division")
    return _du_strip(out)


def _prem_dense(f: list, g: list) -> list:
    """Pseudo-remainder where coefficients are dense integer lists."""
    df, dg = len(f) - 1, len(g) - 1
    lc_g = g[-1]
    r = [list(c) for c in f]
    steps = df - dg + 1
    while len(r) - 1 >= dg and any(r):
        while r and not r[-1]:
            r.pop()
        if len(r) - 1 < dg:
            break
        lc_r = r[-1]
        shift = len(r) - 1 - dg
        r = [_du_mul(c, lc_g) for c in r]
        for i in range(dg + 1):
            r[shift + i] = _du_sub(r[shift + i], _du_mul(lc_r, g[i]))
        r.pop()
        steps -= 1
        while r and not r[-1]:
            r.pop()
    if steps > 0 and r:
        mult = _du_pow(lc_g, steps)
        r = [_du_mul(c, mult) for c in r]
    return r


def _subres_prs_core_dense(f: list, g: list):
    """Subresultant PRS with dense integer-list coefficients; mirrors
    _subres_prs_core and returns (last, s_last) in the same representation."""
    n, m = len(f) - 1, len(g) - 1
    d = n - m
    sign = 1 if (d + 1) % 2 == 0 else -1
    h = _prem_dense(f, g)
    if sign < 0:
        h = [_du_neg(c) for c in h]
    while h and not h[-1]:
        h.pop()
    lc = g[-1]
    c = _du_pow(lc, d)
    s_last = c
    c = _du_neg(c)
    cur, m_cur = g, m
    while h:
        k = len(h) - 1
        d = m_cur - k
        cur, nxt, m_cur = h, cur, k
        b = _du_neg(_du_mul(lc, _du_pow(c, d)))
        h = [_du_divexact(p, b) for p in _prem_dense(nxt, cur)]
        while h and not h[-1]:
            h.pop()
        lc = cur[-1]
        if d > 1:
            c = _du_divexact(_du_pow(_du_neg(lc), d), _du_pow(c, d - 1))
        else:
            c = _du_neg(lc)
        s_last = _du_neg(c)
    return cur, s_last


def _dense_view(p: Poly, q: Poly, var: int):
    """Dense integer-list views of p and q in var when their coefficients
    live in at most one other variable and are integral; None otherwise."""
    space = p.space
    inner = None
    for poly in (p, q):
        for m in poly.terms:
            for i, e in enumerate(m):
                if e and i != var:
                    if inner is None or inner == i:
                        inner = i
                    else:
                        return None
        for c in poly.terms.values():
            if type(c) is not int:
                return None
    if inner is None:
        inner = var  # constants only; any index works for rebuilding

    def view(poly: Poly) -> list:
        out = [[] for _ in range(poly.deg_in(var) + 1)]
        for m, c in poly.terms.items():
            lst = out[m[var]]
            e = m[inner] if inner != var else 0
            if len(lst) <= e:
                lst.extend([0] * (e + 1 - len(lst)))
            lst[e] += c
        return [_du_strip(c) for c in out]

    def rebuild(coeff_lists: list) -> Poly:
        terms = {}
        width = space.nvars
        for e_var, lst in enumerate(coeff_lists):
            for e_in, c in enumerate(lst):
                if c:
                    m = [0] * width
                    m[var] = e_var
                    if inner != var:
                        m[inner] = e_in
                    terms[tuple(m)] = c
        return Poly(space, terms, _clean=True)

    return view(p), view(q), rebuild


# -- fast certified integer-polynomial gcd (large-evaluation-point method) --

def _int_list_primitive(c: list[int]) -> list[int]:
    g = 0
    for v in c:
        g = _int_gcd(g, v)
    if g > 1:
        c = [v // g for v in c]
    if c and c[-1] < 0:
        c = [-v for v in c]
    return c


def _int_horner(c: list[int], x: int) -> int:
    acc = 0
    for v in reversed(c):
        acc = acc * x + v
    return acc


def _int_list_divexact(a: list[int], b: list[int]):
    """Exact quotient of integer coefficient lists, or None when inexact."""
    if len(a) < len(b):
        return None
    out = [0] * (len(a) - len(b) + 1)
    r = list(a)
    lc = b[-1]
    for k in range(len(out) - 1, -1, -1):
        c, rem = divmod(r[k + len(b) - 1], lc)
        if rem:
            return None
        out[k] = c
        if c:
            for i, gv in enumerate(b):
                r[k + i] -= c * gv
    if any(r[: len(b) - 1]):
        return None
    return out


def _xi_for(a: list[int], b: list[int]) -> int:
    """Evaluation point exceeding the coefficient bound of any divisor."""
    n = max(len(a), len(b)) - 1
    h = max(max(abs(v) for v in a), max(abs(v) for v in b))
    bits = n + h.bit_length() + n.bit_length() + 4
    return 1 << bits


def _int_list_gcd(a: list[int], b: list[int]) -> list[int]:
    """Exact gcd of primitive integer polynomial lists.

    Evaluation at a point beyond the Mignotte divisor bound gives a sound
    coprimality certificate (a nonconstant common divisor would have a huge
    value dividing the integer gcd of the evaluations); common divisors are
    recovered by balanced base-xi digit reconstruction with trial division,
    iterated until the certificate holds, with a subresultant PRS fallback.
    """
    a = _int_list_primitive([v for v in a])
    b = _int_list_primitive([v for v in b])
    if not a or len(a) == 1 or not b or len(b) == 1:
        return [1]
    acc: list[int] | None = None
    for _round in range(10 * (len(a) + len(b))):
        xi = _xi_for(a, b)
        g0 = _int_gcd(abs(_int_horner(a, xi)), abs(_int_horner(b, xi)))
        if g0 < xi // 2:
            break  # certified: no nonconstant common divisor remains
        # reconstruct a candidate divisor from balanced base-xi digits
        digits = []
        r = g0
        while r:
            d = r % xi
            if d > xi // 2:
                d -= xi
            digits.append(d)
            r = (r - d) // xi
        cand = _int_list_primitive(digits)
        qa = _int_list_divexact(a, cand) if len(cand) > 1 else None
        qb = _int_list_divexact(b, cand) if qa is not None else None
        if qa is None or qb is None:
            # unlucky point: exact PRS fallback for the remaining part
            rest = _int_list_gcd_prs(a, b)
            if len(rest) > 1:
                a = _int_list_divexact(a, rest)
                acc = rest if acc is None else _du_mul(acc, rest)
            break
        a = _int_list_primitive(qa)
        b = _int_list_primitive(qb)
        acc = cand if acc is None else _du_mul(acc, cand)
        if len(a) == 1 or len(b) == 1:
            break
    return _int_list_primitive(acc) if acc else [1]


def _int_list_gcd_prs(a: list[int], b: list[int]) -> list[int]:
    """Primitive PRS gcd of integer lists (slow exact fallback)."""
    a, b = _int_list_primitive(list(a)), _int_list_primitive(list(b))
    if len(a) < len(b):
        a, b = b, a
    while b and len(b) > 0:
        r = _int_prem_scalar(a, b)
        r = _int_list_primitive(r)
        if not r:
            return b
        a, b = b, r
        if len(b) == 1:
            return [1]
    return a


def _int_list_squarefree(c: list[int]) -> list[int]:
    """Squarefree part of a primitive integer polynomial list.

    Repeatedly strips certified common divisors of the polynomial and its
    derivative; each round either certifies squarefreeness or reduces the
    degree, so the loop terminates with an exact result.
    """
    c = _int_list_primitive(list(c))
    while len(c) - 1 >= 2:
        dp = [c[i] * i for i in range(1, len(c))]
        g = _int_list_gcd(c, dp)
        if len(g) == 1:
            return c
        c = _int_list_primitive(_int_list_divexact(c, g))
    return c


def _int_prem_scalar(f: list[int], g: list[int]) -> list[int]:
    df, dg = len(f) - 1, len(g) - 1
    lc = g[-1]
    r = list(f)
    steps = df - dg + 1
    while len(r) - 1 >= dg and any(r):
        while r and not r[-1]:
            r.pop()
        if len(r) - 1 < dg:
            break
        top = r[-1]
        shift = len(r) - 1 - dg
        r = [v * lc for v in r]
        for i in range(dg + 1):
            r[shift + i] -= top * g[i]
        r.pop()
        steps -= 1
        while r and not r[-1]:
            r.pop()
    if steps > 0 and r:
        mult = lc ** steps
        r = [v * mult for v in r]
    return r


def _int_uni_resultant(f: list[int], g: list[int]) -> int:
    """Resultant of integer coefficient lists via the subresultant PRS."""
    n, m = len(f) - 1, len(g) - 1
    if n < m:
        res = _int_uni_resultant(g, f)
        return res if (n * m) % 2 == 0 else -res
    if m < 0:
        return 0
    if m == 0:
        return g[0] ** n
    d = n - m
    sign = 1 if (d + 1) % 2 == 0 else -1
    h = [sign * v for v in _int_prem_scalar(f, g)]
    lc = g[-1]
    c = lc ** d
    s_last = c
    c = -c
    cur, m_cur = g, m
    while h:
        k = len(h) - 1
        d = m_cur - k
        cur, nxt, m_cur = h, cur, k
        b = -(lc * c ** d)
        h = [v // b for v in _int_prem_scalar(nxt, cur)]
        lc = cur[-1]
        if d > 1:
            c = (-lc) ** d // c ** (d - 1)
        else:
            c = -lc
        s_last = -c
    if len(cur) - 1 > 0:
        return 0
    return s_last


def _resultant_interp(fv: list, gv: list, bound: int):
    """res w.r.t. the outer variable of two dense views (coefficients are
    integer lists in one inner variable), by evaluation at consecutive
    integer nodes and integer forward-difference interpolation.

    Exact: specialization commutes with the resultant at nodes where both
    leading coefficients survive; the window of bound+1 consecutive good
    nodes pins the polynomial of degree <= bound.  Once the top differences
    vanish the table is capped at the apparent degree; every later node
    still checks the capped tail, and any discrepancy rebuilds the full
    table from the stored values.
    """
    lc_f, lc_g = fv[-1], gv[-1]

    def horner(lst: list[int], c: int) -> int:
        acc = 0
        for v in reversed(lst):
            acc = acc * c + v
        return acc

    # find a window of bound+1 consecutive nodes avoiding the finitely many
    # integer zeros of either leading coefficient
    start = 0
    while True:
        run = 0
        s = start
        while run <= bound:
            c = s + run
            if horner(lc_f, c) == 0 or horner(lc_g, c) == 0:
                start = c + 1
                break
            run += 1
        else:
            break

    def value_at(c: int) -> int:
        fc = [horner(coef, c) for coef in fv]
        gc = [horner(coef, c) for coef in gv]
        while fc and not fc[-1]:
            fc.pop()
        while gc and not gc[-1]:
            gc.pop()
        return _int_uni_resultant(fc, gc)

    def build(cap_allowed: bool):
        values: list[int] = []
        row: list[int] = []
        tops: list[int] = []
        cap = None
        zero_run = 0
        for j in range(bound + 1):
            v = value_at(start + j)
            values.append(v)
            limit = len(row) + 1 if cap is None else cap
            new_row = [v]
            for i in range(min(len(row), limit - 1)):
                new_row.append(new_row[i] - row[i])
            if cap is not None and len(row) == cap:
                # degree was frozen: the next difference must vanish
                if len(new_row) > cap - 1 and len(row) > cap - 1 \
                        and new_row[cap - 1] != row[cap - 1]:
                    return None  # early degree guess was wrong
            row = new_row
            if cap is None:
                tops.append(row[-1])
                if row[-1] == 0:
                    zero_run += 1
                    if cap_allowed and zero_run >= 8 and len(row) > 8:
                        cap = len(row) - 8
                        row = row[:cap]
                        tops = tops[:cap]
                else:
                    zero_run = 0
        return tops

    tops = build(cap_allowed=True)
    if tops is None:
        tops = build(cap_allowed=False)
    while tops and tops[-1] == 0:
        tops.pop()
    if not tops:
        return []
    # expand sum_k tops[k] * C(x - start, k) into monomial coefficients
    coeffs = [Fraction(0)]
    basis = [Fraction(1)]  # product (x-start)(x-start-1).../k!
    fact = 1
    for k, top in enumerate(tops):
        if k:
            fact *= k
            shifted = [Fraction(0)] + basis
            off = start + k - 1
            for i in range(len(basis)):
                shifted[i] -= basis[i] * off
            basis = shifted
        if top:
            scale = Fraction(top, fact)
            while len(coeffs) < len(basis):
                coeffs.append(Fraction(0))
            for i, bv in enumerate(basis):
                coeffs[i] += bv * scale
    out = []
    for v in coeffs:
        v = Fraction(v)
        if v.denominator != 1:
            raise AssertionError("resultant interpolation produced a fraction")
        out.append(int(v))
    return _du_strip(out)


_TRIAL_VALUES = (1, -1, 2, -2, 3, -3, 5, -5, 7, -7)


def _gcd_var_part_trivial(a: Poly, b: Poly, var: int) -> bool:
    """Certified check that gcd(a, b) involves no power of var.

    Specializes every other variable at a point where a leading coefficient
    survives; a constant specialized gcd proves the claim because the gcd's
    leading coefficient divides both leading coefficients.
    """
    space = a.space
    others = [i for i in range(space.nvars)
              if i != var and (a.deg_in(i) > 0 or b.deg_in(i) > 0)]
    if not others:
        return False
    lca = a.univar_coeffs(var)[-1]
    lcb = b.univar_coeffs(var)[-1]
    names = space.names
    for trial in range(4):
        point = {names[i]: Fraction(_TRIAL_VALUES[(trial + k) % len(_TRIAL_VALUES)]
                                    * (trial + 1))
                 for k, i in enumerate(others)}
        if lca.eval_rat(point) == 0 and lcb.eval_rat(point) == 0:
            continue
        a1 = a.evaluate(point)
        b1 = b.evaluate(point)
        if a1.is_zero() or b1.is_zero():
            continue
        if poly_gcd(a1, b1).deg_in(var) == 0:
            return True
    return False


def _prs_last(f: Poly, g: Poly, var: int) -> Poly:
    """Last nonzero element of the subresultant PRS of f, g w.r.t. var."""
    space = f.space
    dense = _dense_view(f, g, var)
    if dense is not None:
        a, b, rebuild = dense
        if all(len(c) <= 1 for c in a) and all(len(c) <= 1 for c in b):
            # univariate over the rationals: certified evaluation gcd
            ga = _int_list_gcd([c[0] if c else 0 for c in a],
                               [c[0] if c else 0 for c in b])
            return rebuild([[v] for v in ga])
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            return rebuild(b)
        last, _ = _subres_prs_core_dense(a, b)
        return rebuild(last)
    a = f.univar_coeffs(var)
    b = g.univar_coeffs(var)
    if len(a) < len(b):
        a, b = b, a
    if len(b) == 1:
        return Poly.from_univar(b, var, space)
    last, _ = _subres_prs_core(a, b, space)
    return Poly.from_univar(last, var, space)


def squarefree_part(p: Poly) -> Poly:
    """Product of the distinct irreducible factors of p (primitive, lc > 0)."""
    if p.is_zero():
        raise ValueError("squarefree part of the zero polynomial")
    sf = p.primitive()
    while True:
        g = sf.space.zero()
        for var in range(sf.space.nvars):
            d = sf.derivative(var)
            if d.is_zero():
                continue
            g = poly_gcd(g, d) if not g.is_zero() else d.primitive()
            g = poly_gcd(sf, g)
            if g.is_constant():
                break
        if g.is_zero() or g.is_constant():
            return sf.primitive()
        nxt = divexact(sf, g).primitive()
        if nxt == sf:
            return sf
        sf = nxt


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

class RatFunc:
    """Quotient of polynomials, normalized: gcd(num, den) = 1, den primitive
    with positive grevlex leading coefficient (rational content lives in num).
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None, *, _clean: bool = False):
        if den is None:
            den = num.space.const(1)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _clean:
            num, den = self._normalize(num, den)
        self.num = num
        self.den = den

    @staticmethod
    def _normalize(num: Poly, den: Poly):
        if num.is_zero():
            return num, num.space.const(1)
        if not den.is_constant():
            g = poly_gcd(num, den)
            if not g.is_constant():
                num = divexact(num, g)
                den = divexact(den, g)
        # den primitive, positive lc; rational factor absorbed into num
        c = den.content()
        if den.sign_at_leading() < 0:
            c = -c
        if c != 1:
            den = den.scale(1 / c)
            num = num.scale(1 / c)
        return num, den

    @classmethod
    def of(cls, value, space: VarSpace | None = None) -> "RatFunc":
        if isinstance(value, RatFunc):
            return value
        if isinstance(value, Poly):
            return cls(value, None, _clean=True)
        if space is None:
            raise ValueError("a VarSpace is required to wrap a constant")
        return cls(space.const(value), None, _clean=True)

    @property
    def space(self) -> VarSpace:
        return self.num.space

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.is_constant()

    def as_poly(self) -> Poly:
        if not self.is_poly():
            raise ValueError("rational function has a nontrivial denominator")
        return self.num.scale(1 / self.den.as_constant())

    def __add__(self, other: "RatFunc") -> "RatFunc":
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        if self.den == other.den:
            return RatFunc(self.num - other.num, self.den)
        return RatFunc(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, _clean=True)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RatFunc)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def eval_rat(self, assignment: dict) -> Fraction:
        d = self.den.eval_rat(assignment)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at the point")
        return self.num.eval_rat(assignment) / d

    def __str__(self) -> str:
        if self.is_poly():
            return str(self.as_poly())
        return f"({self.num}) / ({self.den})"

    def __repr__(self) -> str:
        return f"RatFunc({self})"


# ---------------------------------------------------------------------------
# matrices, determinants, minors
# ---------------------------------------------------------------------------

class PMatrix:
    """Dense rectangular matrix of Poly or RatFunc entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        entries = tuple(tuple(row) for row in entries)
        if not entries or not entries[0]:
            raise ValueError("matrix must be nonempty")
        width = len(entries[0])
        if any(len(row) != width for row in entries):
            raise ValueError("matrix rows have unequal length")
        self.entries = entries
        self.rows = len(entries)
        self.cols = width

    def entry(self, i: int, j: int):
        return self.entries[i][j]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def all_poly(self) -> bool:
        return all(isinstance(e, Poly) for row in self.entries for e in row)

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    def submatrix(self, row_idx, col_idx) -> "PMatrix":
        return PMatrix([[self.entries[i][j] for j in col_idx] for i in row_idx])

    def __str__(self):
        return "[" + "; ".join(", ".join(str(e) for e in row) for row in self.entries) + "]"


def det_poly(grid: list) -> Poly:
    """Fraction-free Bareiss determinant of a square grid of Poly entries."""
    n = len(grid)
    space = grid[0][0].space
    if n == 1:
        return grid[0][0]
    a = [list(row) for row in grid]
    sign = 1
    prev = space.const(1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            pivot_row = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if pivot_row is None:
                return space.zero()
            a[k], a[pivot_row] = a[pivot_row], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = divexact(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev)
            a[i][k] = space.zero()
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def det_bareiss(M: PMatrix) -> RatFunc:
    """Exact determinant; fraction-free over Poly entries, row-cleared otherwise."""
    if not M.is_square():
        raise ValueError("determinant of a non-square matrix")
    if M.all_poly():
        return RatFunc(det_poly([list(row) for row in M.entries]))
    space = M.entries[0][0].space
    grid = []
    den_total = space.const(1)
    for row in M.entries:
        rfs = [RatFunc.of(e, space) for e in row]
        row_den = space.const(1)
        for rf in rfs:
            g = poly_gcd(row_den, rf.den)
            row_den = divexact(row_den * rf.den, g)
        grid.append([rf.num * divexact(row_den, rf.den) for rf in rfs])
        den_total = den_total * row_den
    return RatFunc(det_poly(grid), den_total)


def minors_k(M: PMatrix, k: int) -> list:
    """All k x k minors of a Poly matrix, ordered lexicographically by
    (row index subset, column index subset)."""
    if k < 1 or k > min(M.rows, M.cols):
        raise ValueError("minor size out of range")
    if not M.all_poly():
        raise ValueError("minors are defined for polynomial matrices")
    out = []
    for rsub in combinations(range(M.rows), k):
        for csub in combinations(range(M.cols), k):
            out.append(det_poly([[M.entries[i][j] for j in csub] for i in rsub]))
    return out


# ---------------------------------------------------------------------------
# resultants and discriminants
# ---------------------------------------------------------------------------

def _subresultant_prs_resultant(f: list, g: list, space: VarSpace):
    """Resultant of dense univariate coefficient lists (low to high exponent)
    via the subresultant PRS; divisions are exact in the coefficient ring.
    """
    n, m = len(f) - 1, len(g) - 1
    if n < m:
        res = _subresultant_prs_resultant(g, f, space)
        return res if (n * m) % 2 == 0 else -res
    if m == 0:
        return g[0] ** n
    last, s_last = _subres_prs_core(f, g, space)
    if len(last) - 1 > 0:
        return space.zero()
    return s_last


def resultant(p: Poly, q: Poly, var) -> Poly:
    """Resultant of p and q w.r.t. var (Sylvester determinant, exact)."""
    if p.space != q.space:
        raise ValueError("polynomials live in different variable spaces")
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of a zero polynomial")
    space = p.space
    if isinstance(var, str):
        var = space.index(var)
    f = p.univar_coeffs(var)
    g = q.univar_coeffs(var)
    if len(f) - 1 <= 0 and len(g) - 1 <= 0:
        return space.const(1)
    if len(f) - 1 <= 0:
        return f[0] ** (len(g) - 1) if f else space.zero()
    if len(g) - 1 <= 0:
        return g[0] ** (len(f) - 1) if g else space.zero()
    # dense fast paths after clearing denominators:
    # res(dp*p, dq*q) = dp^deg(q) * dq^deg(p) * res(p, q)
    dp = 1
    for c in p.terms.values():
        dp = dp * c.denominator // _int_gcd(dp, c.denominator)
    dq = 1
    for c in q.terms.values():
        dq = dq * c.denominator // _int_gcd(dq, c.denominator)
    dense = _dense_view(p.scale(dp), q.scale(dq), var)
    if dense is not None:
        a, b, rebuild = dense
        factor = Fraction(dp) ** (len(g) - 1) * Fraction(dq) ** (len(f) - 1)
        if all(len(c) <= 1 for c in a) and all(len(c) <= 1 for c in b):
            # univariate over the rationals: scalar subresultant PRS
            val = _int_uni_resultant([c[0] if c else 0 for c in a],
                                     [c[0] if c else 0 for c in b])
            return space.const(Fraction(val) / factor)
        out = _resultant_interp(a, b, p.deg() * q.deg())
        if not out:
            return space.zero()
        return rebuild([out]).scale(1 / factor)
    return _subresultant_prs_resultant(f, g, space)


def sylvester_resultant(p: Poly, q: Poly, var) -> Poly:
    """Resultant as a Bareiss determinant of the Sylvester matrix (oracle path)."""
    space = p.space
    if isinstance(var, str):
        var = space.index(var)
    f = p.univar_coeffs(var)
    g = q.univar_coeffs(var)
    n, m = len(f) - 1, len(g) - 1
    if n < 1 and m < 1:
        return space.const(1)
    if n < 1:
        return f[0] ** m
    if m < 1:
        return g[0] ** n
    size = n + m
    zero = space.zero()
    grid = []
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(reversed(f)):
            row[i + j] = c
        grid.append(row)
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(reversed(g)):
            row[i + j] = c
        grid.append(row)
    return det_poly(grid)


def discriminant(p: Poly, var) -> Poly:
    """Discriminant of p in var: (-1)^(d(d-1)/2) res(p, dp/dvar) / lc_var(p)."""
    space = p.space
    if isinstance(var, str):
        var = space.index(var)
    d = p.deg_in(var)
    if d < 1:
        raise ValueError("discriminant requires positive degree in the variable")
    dp = p.derivative(var)
    res = resultant(p, dp, var)
    lc = p.univar_coeffs(var)[-1]
    quo = divexact(res, lc)
    return quo if (d * (d - 1) // 2) % 2 == 0 else -quo
