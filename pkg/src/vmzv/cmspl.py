"""Carlitz multiple star polylogarithms at finite places and at infinity."""

from __future__ import annotations

from fractions import Fraction

from .algebra import Poly
from .carlitz import IndexComposition, LUnits, b_weight, l_factor
from .errors import ConvergenceError, MembershipError, PrecisionError
from .localfields import InfAdicNumber, VAdicNumber, _poly_ord, residue_ring
from .tmodule import (
    _PowerCache,
    apply_rho_poly,
    binomial_mod_p,
    build_tmodule,
    continuation_poly,
    frobenius_power,
    log_top_from_residues,
    special_point,
    term_schedule,
    x_precision,
)

__all__ = [
    "cmspl_direct_v",
    "cmspl_continued_v",
    "cmspl_v",
    "cmspl_inf",
    "continued_point",
    "functional_equation_check",
    "stuffle_depth1_check",
    "collapse",
    "RETRIES",
]

RETRIES = 3


def collapse(index, i):
    """The collapsed index (s_1+...+s_i, s_{i+1}, ..., s_r); None stands for the empty index."""
    return IndexComposition.parse(index).collapse(i)


def _is_exact_zero(x):
    if isinstance(x, Poly):
        return x.is_zero()
    return x.is_exact_zero()


def _ord_lower(x, place):
    if isinstance(x, Poly):
        return _poly_ord(x, place)
    return x.ord_lower_bound()


def _times_poly(x, f):
    """x * f for a polynomial f, losing no precision beyond what x carries."""
    place = x.place
    if x.is_exact_zero() or f.is_zero():
        return VAdicNumber.exact_zero(place)
    of = _poly_ord(f, place)
    prec = x.abs_prec - min(0, x.ord_lower_bound()) + of + 1
    return x * VAdicNumber.from_poly(f, place, prec)


def _div_poly(x, f):
    """x / f for a polynomial f that is a v-adic unit."""
    place = x.place
    if x.is_exact_zero():
        return x
    prec = x.abs_prec - min(0, x.ord_lower_bound()) + 1
    return x / VAdicNumber.from_poly(f, place, max(prec, 1))


def _initial_guard(weight, q, eps, N):
    I = term_schedule(q, eps, weight, N, 1)
    return weight * -(-I // eps) if I else weight


def _with_retries(run, weight, q, eps, N, what):
    guard = _initial_guard(weight, q, eps, N)
    best = None
    for _ in range(RETRIES + 1):
        out = run(guard)
        if out.abs_prec >= N:
            return out.truncate(N)
        best = out.abs_prec
        guard *= 2
    raise PrecisionError(f"{what}: reached only O(v^{best}) after {RETRIES} retries", achieved=best)


# ---------------------------------------------------------------------------
# direct series
# ---------------------------------------------------------------------------


def _direct_once(index, args, place, N, guard):
    q, eps = place.field.q, place.eps
    wt, r = index.weight, index.depth
    c = _ord_lower(args[0], place)
    I = term_schedule(q, eps, wt, N, c)
    aI = I // eps
    K = N + wt * aI + guard
    L = LUnits(place, K + wt * aI)
    pw = []
    for x in args:
        if isinstance(x, Poly):
            cache = _PowerCache(x, place, K)
            pw.append(cache.get)
        else:
            pw.append(lambda i, x=x: frobenius_power(x, i, K))
    one = VAdicNumber.from_poly(1, place, K)
    B = [VAdicNumber.exact_zero(place)] * r + [one]
    for i in range(I + 1):
        for m in range(r - 1, -1, -1):
            t = pw[m](i) * L.l_power_inverse(i, index[m])
            B[m] = B[m] + t * B[m + 1]
    return B[0].truncate(N)


def cmspl_direct_v(index, point, place, N):
    """Sum over i_1 >= ... >= i_r >= 0 of prod u_j^(q^i_j) / L_(i_j)^(s_j), to O(v^N).

    The first argument must lie in v A_v; the others must be integral.
    Arguments are polynomials or integral v-adic values.
    """
    index = IndexComposition.parse(index)
    args = list(point)
    if len(args) != index.depth:
        raise ValueError("index and point must have the same length")
    if any(_is_exact_zero(x) for x in args):
        return VAdicNumber.exact_zero(place)
    if _ord_lower(args[0], place) < 1:
        raise MembershipError("direct series needs the first argument in v A_v")
    if any(_ord_lower(x, place) < 0 for x in args[1:]):
        raise MembershipError("direct series needs integral arguments")
    q, eps = place.field.q, place.eps
    return _with_retries(lambda g: _direct_once(index, args, place, N, g), index.weight, q, eps, N, "direct series")


# ---------------------------------------------------------------------------
# continuation
# ---------------------------------------------------------------------------


def continued_point(index, point, place, P, level=None, extra_factors=0):
    """(G, a, residues of rho_a(special point) mod v^P) for the reversed index and point."""
    index = IndexComposition.parse(index)
    G = build_tmodule(index.reversed(), tuple(point)[::-1])
    a = continuation_poly(G, place, level=level, extra_factors=extra_factors)
    R = residue_ring(place, P)
    sp = [R.reduce(x.c) for x in special_point(G)]
    X = apply_rho_poly(G, a, sp, ring=R)
    vc = place.v
    for y in X:
        if y and not (Poly._raw(place.field, y) % vc).is_zero():
            raise MembershipError("rho_a of the special point is not inside the open unit polydisk")
    return G, a, X


def _continued_once(index, point, place, N, guard, level, extra_factors):
    q, eps = place.field.q, place.eps
    d1 = index.weight
    P = x_precision(q, eps, d1, N, guard)
    G, a, X = continued_point(index, point, place, P, level, extra_factors)
    top = log_top_from_residues(G, X, P, place, N, guard)
    out = _div_poly(top, a)
    return out if index.depth % 2 else -out


def cmspl_continued_v(index, point, place, N, level=None, extra_factors=0):
    """Value through the logarithm of the t-module of the reversed index and point.

    The result is (-1)^(r-1)/a(T) times the first-block bottom coordinate of
    log_G(rho_a(special point)).
    """
    index = IndexComposition.parse(index)
    point = tuple(point)
    if len(point) != index.depth:
        raise ValueError("index and point must have the same length")
    if any(u.is_zero() for u in point):
        return VAdicNumber.exact_zero(place)
    q, eps = place.field.q, place.eps
    return _with_retries(
        lambda g: _continued_once(index, point, place, N, g, level, extra_factors),
        index.weight, q, eps, N, "continued value")


def cmspl_v(index, point, place, N):
    """Dispatch: direct series when u_1 lies in v A, continuation otherwise."""
    index = IndexComposition.parse(index)
    point = tuple(point)
    if any(_is_exact_zero(u) for u in point):
        return VAdicNumber.exact_zero(place)
    if _ord_lower(point[0], place) >= 1:
        return cmspl_direct_v(index, point, place, N)
    return cmspl_continued_v(index, point, place, N)


# ---------------------------------------------------------------------------
# infinity
# ---------------------------------------------------------------------------


def _inf_once(index, point, M, guard):
    F = point[0].field
    q = F.q
    r = index.depth
    degs = [u.degree for u in point]
    slack = sum(degs) + guard
    Mw = M + slack

    def f(j, i):
        s = index[j]
        return s * (q ** (i + 1) - q) // (q - 1) - q**i * degs[j]

    lower_rest = -sum(degs[1:])
    one = InfAdicNumber.from_poly(Poly.one(F), Mw)
    B = [InfAdicNumber.exact_zero(F)] * r + [one]
    i = 0
    while f(0, i) + lower_rest < M:
        for m in range(r - 1, -1, -1):
            u = point[m]
            upow = InfAdicNumber(InfAdicNumber.from_poly(u, Mw // q**i + 1)._s.frobenius(i)).truncate(Mw)
            Linv = InfAdicNumber.from_poly(l_factor(F, i) ** index[m], Mw + 2 * slack).inverse()
            B[m] = B[m] + (upow * Linv).truncate(Mw) * B[m + 1]
        i += 1
    return B[0].truncate(M)


def cmspl_inf(index, point, M):
    """The star polylogarithm summed in k_oo to O(T^-M)."""
    index = IndexComposition.parse(index)
    point = tuple(point)
    if len(point) != index.depth:
        raise ValueError("index and point must have the same length")
    F = point[0].field
    q = F.q
    for j, (s, u) in enumerate(zip(index, point), start=1):
        if not u.is_zero() and u.degree >= Fraction(s * q, q - 1):
            raise ConvergenceError(
                f"series diverges at infinity: deg u_{j} = {u.degree} is not below {s}*q/(q-1)")
    if any(u.is_zero() for u in point):
        return InfAdicNumber.exact_zero(F)
    guard = index.weight + 2
    best = None
    for _ in range(RETRIES + 1):
        out = _inf_once(index, point, M, guard)
        if out.abs_prec >= M:
            return out
        best = out.abs_prec
        guard *= 2
    raise PrecisionError(f"series at infinity reached only O(T^{-best})", achieved=best)


# ---------------------------------------------------------------------------
# identities
# ---------------------------------------------------------------------------


def functional_equation_check(index, point, place, N):
    """Evaluate both sides of the functional equation relating continued values to direct series.

    Returns (lhs, rhs, agree).
    """
    index = IndexComposition.parse(index)
    point = tuple(point)
    F = place.field
    r = index.depth
    lhs = cmspl_v(index, point, place, N)
    q, eps = F.q, place.eps
    wt = index.weight
    guard = _initial_guard(wt, q, eps, N)
    P = x_precision(q, eps, wt, N, guard)
    G, a, X = continued_point(index, point, place, P)
    dt = G.blocks
    T = Poly.gen(F)
    cache = {}

    def star(sub, args):
        if sub is None:
            return VAdicNumber.exact_zero(place)
        key = (sub.parts, tuple(args))
        if key not in cache:
            cache[key] = cmspl_direct_v(sub, args, place, N)
        return cache[key]

    total = VAdicNumber.exact_zero(place)
    for m in range(1, r + 1):
        off, bm = G.offsets[m - 1], dt[m - 1]
        first = collapse(index, r + 1 - m)
        second = collapse(index, r + 2 - m)
        tail1 = point[r + 1 - m:]
        for j in range(bm):
            V = VAdicNumber._from_residue(place, X[off + bm - j - 1], 0, P)
            for l in range(j + 1):
                c = binomial_mod_p(j, l, F.p)
                if c == 0:
                    continue
                arg = _times_poly(V, T ** (j - l))
                bracket_val = star(first, (arg,) + tail1)
                if second is not None:
                    arg2 = _times_poly(arg, point[r + 1 - m])
                    bracket_val = bracket_val - star(second, (arg2,) + point[r + 2 - m:])
                coef = Poly.const(F, F.from_int(c)) * T**l
                if (j + l + m - 1) % 2:
                    coef = -coef
                total = total + _times_poly(bracket_val, coef)
    rhs = _div_poly(total, a)
    if r % 2 == 0:
        rhs = -rhs
    return lhs, rhs, (lhs - rhs).is_zero()


def stuffle_depth1_check(s1, s2, u1, u2, place, N):
    """Check Li(s1;u1) Li(s2;u2) = Li(s1,s2;u1,u2) + Li(s2,s1;u2,u1) - Li(s1+s2;u1 u2).

    Returns (lhs, rhs, agree); both sides are certified to at least O(v^N).
    """
    extra = max(0, -b_weight(s1, place)) + max(0, -b_weight(s2, place))
    Nw = N + extra
    a = cmspl_v((s1,), (u1,), place, Nw)
    b = cmspl_v((s2,), (u2,), place, Nw)
    lhs = a * b
    rhs = (cmspl_v((s1, s2), (u1, u2), place, Nw) + cmspl_v((s2, s1), (u2, u1), place, Nw)
           - cmspl_v((s1 + s2,), (u1 * u2,), place, Nw))
    if lhs.abs_prec < N and not lhs.is_exact_zero():
        raise PrecisionError("stuffle product lost precision", achieved=lhs.abs_prec)
    return lhs, rhs, (lhs - rhs).is_zero()
