"""Univariate real root isolation and exact signatures of rational symmetric
matrices: the sign-decision backbone.

Isolation uses Descartes' rule of signs with Vincent-Collins-Akritas
bisection on the squarefree part, entirely in integer arithmetic after
clearing denominators.  Signatures come from the characteristic polynomial:
a symmetric rational matrix has a real spectrum, so Descartes counting on
the coefficient sequence is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _int_gcd

from .exactalg import Poly, VarSpace, _int_list_squarefree, det_poly, divexact, poly_gcd


@dataclass(frozen=True)
class IsolatingInterval:
    """Open interval (lo, hi) around a single simple root, or an exact root
    when lo == hi."""

    lo: Fraction
    hi: Fraction
    exact: bool = False

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def width(self) -> Fraction:
        return self.hi - self.lo

    def overlaps(self, other: "IsolatingInterval") -> bool:
        return not (self.hi < other.lo or other.hi < self.lo)


# ---------------------------------------------------------------------------
# dense integer helpers
# ---------------------------------------------------------------------------

def _dense_coeffs(p: Poly, var: int) -> list[Fraction]:
    d = p.deg_in(var)
    out = [Fraction(0)] * (d + 1)
    for m, c in p.terms.items():
        if any(e and i != var for i, e in enumerate(m)):
            raise ValueError("polynomial is not univariate in the given variable")
        out[m[var]] += c
    while out and out[-1] == 0:
        out.pop()
    return out


def _detect_var(p: Poly) -> int:
    var = None
    for m in p.terms:
        for i, e in enumerate(m):
            if e:
                if var is None or var == i:
                    var = i
                else:
                    raise ValueError("polynomial is not univariate")
    return 0 if var is None else var


def _to_int(coeffs: list[Fraction]) -> list[int]:
    den = 1
    for c in coeffs:
        den = den * c.denominator // _int_gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for c in ints:
        g = _int_gcd(g, abs(c))
    if g > 1:
        ints = [c // g for c in ints]
    return ints


def _int_sqfree(c: list[int]) -> list[int]:
    """Squarefree part of a primitive integer polynomial."""
    return _int_list_squarefree(c)


def _int_primitive(c: list[int]) -> list[int]:
    g = 0
    for v in c:
        g = _int_gcd(g, abs(v))
    if g > 1:
        c = [v // g for v in c]
    if c and c[-1] < 0:
        c = [-v for v in c]
    return c


def _int_prem(f: list[int], g: list[int]) -> list[int]:
    df, dg = len(f) - 1, len(g) - 1
    lc = g[-1]
    r = list(f)
    while len(r) - 1 >= dg and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < dg:
            break
        top = r[-1]
        shift = len(r) - 1 - dg
        r = [v * lc for v in r]
        for i in range(dg + 1):
            r[shift + i] -= top * g[i]
        r.pop()
    while r and r[-1] == 0:
        r.pop()
    return r


def _int_poly_gcd(f: list[int], g: list[int]) -> list[int]:
    a, b = _int_primitive(list(f)), _int_primitive(list(g))
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _int_prem(a, b)
        a, b = b, _int_primitive(r)
    return a


def _int_poly_divexact(f: list[int], g: list[int]) -> list[int]:
    out = [Fraction(0)] * (len(f) - len(g) + 1)
    r = [Fraction(v) for v in f]
    lc = g[-1]
    for k in range(len(out) - 1, -1, -1):
        c = r[k + len(g) - 1] / lc
        out[k] = c
        for i, gv in enumerate(g):
            r[k + i] -= c * gv
    if any(r[: len(g) - 1]) or any(v.denominator != 1 for v in out):
        raise ValueError("inexact integer polynomial division")
    return [int(v) for v in out]


def _variations(c: list[int]) -> int:
    signs = [1 if v > 0 else -1 for v in c if v]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _shift1(c: list[int]) -> list[int]:
    """Taylor shift: coefficients of p(x + 1)."""
    c = list(c)
    n = len(c)
    for k in range(n - 1):
        for j in range(n - 2, k - 1, -1):
            c[j] += c[j + 1]
    return c


def _scale_half(c: list[int]) -> list[int]:
    """Coefficients of 2^n * p(x / 2)."""
    n = len(c) - 1
    return [v << (n - i) for i, v in enumerate(c)]


def _div_by_x_minus_1(c: list[int]) -> list[int]:
    """Exact quotient by (x - 1); the caller guarantees sum(c) == 0."""
    n = len(c) - 1
    b = [0] * n
    b[n - 1] = c[n]
    for k in range(n - 2, -1, -1):
        b[k] = c[k + 1] + b[k + 1]
    return b


def _strip_two_content(c: list[int]) -> list[int]:
    """Divide out the largest common power of two (cheap size control)."""
    tz = None
    for v in c:
        if v:
            t = (v & -v).bit_length() - 1
            tz = t if tz is None else min(tz, t)
            if tz == 0:
                return c
    if not tz:
        return c
    return [v >> tz for v in c]


def _isolate01(c: list[int]):
    """Isolating dyadic subintervals of (0, 1) for squarefree integer p with
    p(0) != 0 and p(1) != 0.  Yields (num, k, exact) meaning the open interval
    (num/2^k, (num+1)/2^k), or the exact root num/2^k when exact is set.
    Discovered midpoint roots are deflated before recursing so that no frame
    ever carries a root on its boundary."""
    out = []
    stack = [(0, 0, c)]
    while stack:
        num, k, q = stack.pop()
        t = _shift1(list(reversed(q)))
        v = _variations(t)
        if v == 0:
            continue
        if v == 1:
            out.append((num, k, False))
            continue
        left = _strip_two_content(_scale_half(q))
        if sum(left) == 0:  # p(1/2) = 0 in this frame
            out.append((2 * num + 1, k + 1, True))
            left = _div_by_x_minus_1(left)
        right = _shift1(left)
        stack.append((2 * num, k + 1, left))
        stack.append((2 * num + 1, k + 1, right))
    return out


# ---------------------------------------------------------------------------
# isolation
# ---------------------------------------------------------------------------

def isolate_real_roots(p: Poly, var=None) -> list[IsolatingInterval]:
    """Disjoint isolating intervals, one per distinct real root of p, sorted.

    Works on the squarefree part, so multiplicities do not matter.  Interval
    endpoints are never roots; rational roots are returned exactly.
    """
    return isolate_with_squarefree(p, var)[0]


def isolate_with_squarefree(p: Poly, var=None):
    """(intervals, squarefree part as Poly): the second component is the
    polynomial against which the intervals can be sign-refined."""
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    if var is None:
        var = _detect_var(p)
    elif isinstance(var, str):
        var = p.space.index(var)
    coeffs = _dense_coeffs(p, var)
    if len(coeffs) <= 1:
        return [], p.space.const(1)
    ints = _to_int(coeffs)
    ints = _int_sqfree(_int_primitive(ints))
    out: list[IsolatingInterval] = []
    root_at_zero = ints[0] == 0
    while ints[0] == 0:
        ints = ints[1:]
    if root_at_zero:
        out.append(IsolatingInterval(Fraction(0), Fraction(0), True))

    def isolate_positive(q: list[int]):
        """Intervals for the positive roots of q: (0,1) directly, 1 exactly,
        and (1, oo) through the reciprocal polynomial, avoiding any root-bound
        scaling of the coefficients."""
        found = []
        if sum(q) == 0:
            found.append(IsolatingInterval(Fraction(1), Fraction(1), True))
            q = _div_by_x_minus_1(q)
        for num, k, exact in _isolate01(q):
            lo = Fraction(num, 1 << k)
            hi = Fraction(num + 1, 1 << k)
            found.append(IsolatingInterval(lo, lo, True) if exact
                         else IsolatingInterval(lo, hi, False))
        rev = list(reversed(q))
        while rev and rev[-1] == 0:
            rev.pop()
        bound = None
        for num, k, exact in _isolate01(rev):
            if exact:
                r = Fraction(1 << k, num)
                found.append(IsolatingInterval(r, r, True))
            elif num > 0:
                lo = Fraction(1 << k, num + 1)
                hi = Fraction(1 << k, num)
                found.append(IsolatingInterval(lo, hi, False))
            else:
                # reciprocal interval is (2^k, oo): close it with a power of
                # two beyond the Cauchy root bound (hence not a root)
                if bound is None:
                    cauchy = 1 + max(abs(v) for v in q) // abs(q[-1])
                    bound = 1 << (cauchy.bit_length() + 1)
                hi = Fraction(max(bound, 1 << (k + 1)))
                found.append(IsolatingInterval(Fraction(1 << k), hi, False))
        return found

    if len(ints) > 1:
        out.extend(isolate_positive(ints))
        neg = [v if i % 2 == 0 else -v for i, v in enumerate(ints)]
        for iv in isolate_positive(neg):
            out.append(IsolatingInterval(-iv.hi, -iv.lo, iv.exact))
    # repair pass: subdivision can leave a discovered rational root sitting on
    # the boundary of a neighbouring open interval; push such boundaries off
    # the root so that endpoints are never roots of p
    sf = ([0] if root_at_zero else []) + ints

    def val(x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(sf):
            acc = acc * x + c
        return acc

    repaired = []
    for iv in out:
        if iv.exact:
            repaired.append(iv)
            continue
        lo, hi = iv.lo, iv.hi
        exact_hit = None
        for bad_lo in (True, False):
            end = lo if bad_lo else hi
            if val(end) != 0:
                continue
            other = hi if bad_lo else lo
            good = val(other)
            frac = Fraction(1, 2)
            while True:
                tpt = end + (other - end) * frac
                v = val(tpt)
                if v == 0:
                    exact_hit = tpt
                    break
                if (v > 0) != (good > 0):
                    if bad_lo:
                        lo = tpt
                    else:
                        hi = tpt
                    break
                frac /= 2
            if exact_hit is not None:
                break
        if exact_hit is not None:
            repaired.append(IsolatingInterval(exact_hit, exact_hit, True))
        else:
            repaired.append(IsolatingInterval(lo, hi, False))
    repaired.sort(key=lambda iv: (iv.lo, iv.hi))
    width = p.space.nvars
    sf_poly = Poly(p.space,
                   {tuple(e if i == var else 0 for i in range(width)): c
                    for e, c in enumerate(sf) if c},
                   _clean=True)
    return repaired, sf_poly


def eval_univar(p: Poly, var, value: Fraction) -> Fraction:
    """Exact evaluation of a univariate polynomial (Horner)."""
    if isinstance(var, str):
        var = p.space.index(var)
    coeffs = _dense_coeffs(p, var)
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * value + c
    return acc


def refine_interval(p: Poly, iv: IsolatingInterval, width: Fraction,
                    var=None) -> IsolatingInterval:
    """Bisect an isolating interval of a squarefree p below the given width."""
    if iv.exact:
        return iv
    if var is None:
        var = _detect_var(p)
    lo, hi = iv.lo, iv.hi
    s_lo = eval_univar(p, var, lo)
    if s_lo == 0:
        raise ValueError("interval endpoint is a root; not an isolating interval")
    while hi - lo > width:
        mid = (lo + hi) / 2
        v = eval_univar(p, var, mid)
        if v == 0:
            return IsolatingInterval(mid, mid, True)
        if (v > 0) == (s_lo > 0):
            lo = mid
        else:
            hi = mid
    return IsolatingInterval(lo, hi, False)


# ---------------------------------------------------------------------------
# signatures of symmetric rational matrices
# ---------------------------------------------------------------------------

_LAM = VarSpace(("lam",), ())


def char_poly(matrix) -> list[Fraction]:
    """Coefficients (low to high) of det(lam*I - M) for a rational matrix."""
    n = len(matrix)
    grid = []
    for i in range(n):
        row = []
        for j in range(n):
            terms = {}
            if i == j:
                terms[(1,)] = Fraction(1)
            v = Fraction(matrix[i][j])
            if v:
                terms[(0,)] = -v
            row.append(Poly(_LAM, terms, _clean=True))
        grid.append(row)
    det = det_poly(grid)
    out = [Fraction(0)] * (n + 1)
    for m, c in det.terms.items():
        out[m[0]] = c
    return out


def signature_symmetric(S) -> tuple[int, int]:
    """(signature, rank) of a symmetric matrix of rationals, exactly.

    All eigenvalues are real, so the positive/negative counts are the
    Descartes sign variations of the characteristic polynomial at lam and
    -lam, with multiplicity; the zero eigenvalue count is the trailing-zero
    count of the coefficient sequence.
    """
    rows = [list(map(Fraction, row)) for row in S]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix is not square")
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                raise ValueError("matrix is not symmetric")
    if n == 0:
        return 0, 0
    coeffs = char_poly(rows)
    t = next(i for i, c in enumerate(coeffs) if c != 0)
    tail = coeffs[t:]
    signs = [1 if c > 0 else -1 for c in tail if c]
    pos = sum(1 for a, b in zip(signs, signs[1:]) if a != b)
    alt = [c if i % 2 == 0 else -c for i, c in enumerate(tail)]
    signs_n = [1 if c > 0 else -1 for c in alt if c]
    neg = sum(1 for a, b in zip(signs_n, signs_n[1:]) if a != b)
    return pos - neg, n - t


def signature_from_minor_signs(minor_values) -> int:
    """Jacobi's rule: signature from the signs of the leading principal minors.

    With M_0 = 1, the signature is (#sign agreements) - (#sign changes) along
    1, M_1, ..., M_delta; every value must be nonzero.
    """
    values = [Fraction(v) for v in minor_values]
    if any(v == 0 for v in values):
        raise ValueError("zero principal minor; fall back to signature_symmetric")
    prev = 1
    sig = 0
    for v in values:
        cur = 1 if v > 0 else -1
        sig += 1 if cur == prev else -1
        prev = cur
    return sig
