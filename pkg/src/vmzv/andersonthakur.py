"""Anderson-Thakur polynomials H_n in A[t]."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import BiPoly, Poly
from .carlitz import IndexComposition, carlitz_gamma, d_factor

__all__ = ["at_poly", "at_coeffs", "ATCoeffs", "f_factor", "at_degree_ok", "generating_identity_residual"]


def _in_t(f):
    # reinterpret a polynomial in T as one in t
    return BiPoly.from_t(f)


@lru_cache(maxsize=None)
def f_factor(field, i):
    """F_i = prod_{j=1..i} (t^(q^i) - T^(q^j)), with F_0 = 1."""
    q = field.q
    out = BiPoly(field, {(0, 0): 1})
    for j in range(1, i + 1):
        out = out * BiPoly(field, {(q**i, 0): 1, (0, q**j): field.neg(1)})
    return out


def _divide_by_t_poly(X, den):
    rows = {}
    for j, f in X.by_T().items():
        qt, r = divmod(f, den)
        if not r.is_zero():
            raise AssertionError("Anderson-Thakur recurrence produced a non-polynomial value")
        rows[j] = qt
    return BiPoly.from_by_T(X.field, rows)


def _lcm(a, b):
    return (a * b) // a.gcd(b)


@lru_cache(maxsize=None)
def at_poly(field, n):
    """H_n, from the recurrence attached to the generating series identity."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return BiPoly(field, {(0, 0): 1})
    q = field.q
    pieces = []
    i = 0
    while q**i <= n:
        m = n - q**i
        pieces.append((f_factor(field, i) * at_poly(field, m), d_factor(field, i) * carlitz_gamma(field, m + 1)))
        i += 1
    L = pieces[0][1]
    for _, d in pieces[1:]:
        L = _lcm(L, d)
    g = carlitz_gamma(field, n + 1)
    total = BiPoly(field)
    for num, d in pieces:
        total = total + _in_t(g * (L // d)) * num
    return _divide_by_t_poly(total, L)


@dataclass(frozen=True)
class ATCoeffs:
    """Per position i, the coefficients u_{i0}, ..., u_{i m_i} of H_{s_i - 1}."""

    index: IndexComposition
    coeffs: tuple

    @property
    def degrees(self):
        return tuple(len(c) - 1 for c in self.coeffs)


def at_coeffs(field, index):
    index = IndexComposition.parse(index)
    return ATCoeffs(index, tuple(tuple(at_poly(field, s - 1).t_coefficients()) for s in index))


def at_degree_ok(field, s):
    """Every t-coefficient of H_{s-1} has T-degree < s q / (q - 1)."""
    q = field.q
    limit = Fraction(s * q, q - 1)
    return all(c.degree < limit for c in at_poly(field, s - 1).t_coefficients())


def generating_identity_residual(field, N):
    """Coefficients of x^1..x^N in (1 - sum F_i/D_i(t) x^(q^i)) * sum H_n/Gamma_{n+1}(t) x^n.

    Each coefficient is returned as a pair (numerator BiPoly, denominator in t);
    the identity holds exactly when every numerator is zero.
    """
    q = field.q
    out = []
    for n in range(1, N + 1):
        terms = [(at_poly(field, n), carlitz_gamma(field, n + 1))]
        i = 0
        while q**i <= n:
            m = n - q**i
            terms.append((-(f_factor(field, i) * at_poly(field, m)), d_factor(field, i) * carlitz_gamma(field, m + 1)))
            i += 1
        L = terms[0][1]
        for _, d in terms[1:]:
            L = _lcm(L, d)
        total = BiPoly(field)
        for num, d in terms:
            total = total + _in_t(L // d) * num
        out.append((total, L))
    return out
