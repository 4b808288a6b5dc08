"""The t-module G_{s,u}: structure, rho-action, continuation and logarithm rows.

Coordinates are numbered block by block; block m has size
d_m = s_m + ... + s_r. Rho is

    rho_t(x) = T x + N x + E x^(1)

with N the shift inside each block and E supported on block-bottom rows and
block-first columns.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property

from .algebra import Poly, _norm, padd, pmul, pscale, psub
from .carlitz import IndexComposition, LUnits, bracket, l_factor
from .errors import CostGuardError, MembershipError, PrecisionError
from .localfields import VAdicNumber, residue_ring

__all__ = [
    "TModuleSpec",
    "build_tmodule",
    "special_point",
    "apply_rho_t",
    "apply_rho_poly",
    "continuation_poly",
    "continuation_level",
    "binomial_mod_p",
    "log_row",
    "log_row_exact",
    "log_row_oracle",
    "log_top_coordinate",
    "log_top_from_residues",
    "frobenius_power",
    "term_schedule",
]


@dataclass(frozen=True)
class TModuleSpec:
    index: IndexComposition
    point: tuple
    field: object

    @cached_property
    def blocks(self):
        s = self.index.parts
        return tuple(sum(s[m:]) for m in range(len(s)))

    @cached_property
    def offsets(self):
        out, acc = [], 0
        for b in self.blocks:
            out.append(acc)
            acc += b
        return tuple(out)

    @property
    def dim(self):
        return sum(self.blocks)

    @property
    def depth(self):
        return len(self.blocks)

    @cached_property
    def twist(self):
        """E as {(block l, block m): coefficient} for l <= m; row = bottom of l, column = top of m."""
        F = self.field
        out = {}
        r = self.depth
        for l in range(r):
            c = Poly.one(F)
            out[(l, l)] = c
            for m in range(l + 1, r):
                c = -(c * self.point[m - 1])
                out[(l, m)] = c
        return out

    def twist_matrix(self):
        """E as a dense d x d list of polynomials."""
        F = self.field
        d = self.dim
        M = [[Poly.zero(F) for _ in range(d)] for _ in range(d)]
        for (l, m), c in self.twist.items():
            M[self.offsets[l] + self.blocks[l] - 1][self.offsets[m]] = c
        return M

    def nilpotent_matrix(self):
        F = self.field
        d = self.dim
        M = [[Poly.zero(F) for _ in range(d)] for _ in range(d)]
        for off, b in zip(self.offsets, self.blocks):
            for k in range(b - 1):
                M[off + k][off + k + 1] = Poly.one(F)
        return M


def build_tmodule(index, point):
    index = IndexComposition.parse(index)
    point = tuple(point)
    if len(point) != index.depth:
        raise ValueError("index and point must have the same length")
    if not point:
        raise ValueError("empty index")
    return TModuleSpec(index, point, point[0].field)


def special_point(G):
    """Zero except at block bottoms; block m holds (-1)^(r-m) u_m ... u_r."""
    F = G.field
    x = [Poly.zero(F) for _ in range(G.dim)]
    r = G.depth
    prod_ = Poly.one(F)
    for m in range(r - 1, -1, -1):
        prod_ = prod_ * G.point[m]
        val = prod_ if (r - 1 - m) % 2 == 0 else -prod_
        x[G.offsets[m] + G.blocks[m] - 1] = val
    return x


# ---------------------------------------------------------------------------
# rho
# ---------------------------------------------------------------------------


class _ExactOps:
    def __init__(self, field):
        self.F = field
        self.zero = Poly.zero(field)
        self.T = Poly.gen(field)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def scale(self, c, a):
        return a.scale(c)

    def frob(self, a):
        return a.frobenius(1)

    def times_T(self, a):
        return a.shift(1)

    def const(self, p):
        return p


class _ResidueOps:
    def __init__(self, ring):
        self.R = ring
        self.F = ring.field
        self.zero = ()

    def add(self, a, b):
        return padd(self.F, a, b)

    def mul(self, a, b):
        return self.R.mul(a, b)

    def scale(self, c, a):
        return pscale(self.F, c, a)

    def frob(self, a):
        return self.R.frob(a, 1)

    def times_T(self, a):
        return self.R.reduce((0,) + a) if a else a

    def const(self, p):
        return self.R.reduce(p.c)


def _rho_t(G, x, ops, twist):
    out = []
    r = G.depth
    for m in range(r):
        off, b = G.offsets[m], G.blocks[m]
        for k in range(b):
            y = ops.times_T(x[off + k])
            if k + 1 < b:
                y = ops.add(y, x[off + k + 1])
            else:
                for mm in range(m, r):
                    first = x[G.offsets[mm]]
                    if first:
                        y = ops.add(y, ops.mul(twist[(m, mm)], ops.frob(first)))
            out.append(y)
    return out


def _ops_for(G, x, ring):
    if ring is not None:
        ops = _ResidueOps(ring)
        twist = {k: ops.const(c) for k, c in G.twist.items()}
        return ops, twist, [ring.reduce(c.c) if isinstance(c, Poly) else c for c in x], None
    if x and isinstance(x[0], VAdicNumber):
        place = x[0].place
        if any(c.ord_lower_bound() < 0 for c in x):
            raise MembershipError("rho on v-adic points needs integral coordinates")
        prec = min(c.abs_prec for c in x)
        ring = residue_ring(place, prec)
        ops = _ResidueOps(ring)
        twist = {k: ops.const(c) for k, c in G.twist.items()}
        res = [_to_residue(c, ring) for c in x]
        return ops, twist, res, (place, prec)
    ops = _ExactOps(G.field)
    return ops, G.twist, list(x), None


def _to_residue(c, ring):
    if c.is_zero() or c.shift >= ring.k:
        return ()
    return ring.mul(ring.vpow(c.shift), ring.reduce(c._u))


def _wrap(res, back):
    if back is None:
        return res
    place, prec = back
    return [VAdicNumber._from_residue(place, y, 0, prec) for y in res]


def apply_rho_t(G, x, ring=None):
    """rho_t(x) for x over A (exact), residues mod v^k (ring given), or integral v-adic values."""
    ops, twist, xs, back = _ops_for(G, x, ring)
    return _wrap(_rho_t(G, xs, ops, twist), back)


def apply_rho_poly(G, a, x, ring=None):
    """rho_a(x) by Horner's rule; a is a polynomial in t (stored as a Poly)."""
    if a.is_zero():
        raise ValueError("a must be nonzero")
    ops, twist, xs, back = _ops_for(G, x, ring)
    w = [ops.zero] * len(xs)
    for c in reversed(a.c):
        w = _rho_t(G, w, ops, twist)
        if c:
            w = [ops.add(wi, ops.scale(c, xi)) for wi, xi in zip(w, xs)]
    return _wrap(w, back)


def continuation_level(G, place):
    """Smallest divisor l of eps_v with u^(q^l) = u mod v for every u in the point."""
    v = place.v
    residues = [u % v for u in G.point]
    for l in range(1, place.eps + 1):
        if place.eps % l:
            continue
        if all(r.frobenius(l) % v == r for r in residues):
            return l
    return place.eps


def continuation_poly(G, place, level=None, extra_factors=0):
    """a(t) = prod_l (v(t)^(d_l * level) - 1), times extra factors (v(t)^(d_1 level) - 1).

    The level defaults to the minimal valid one.
    """
    if level is None:
        level = continuation_level(G, place)
    v = place.v
    a = Poly.one(G.field)
    for d in G.blocks:
        a = a * (v ** (d * level) - 1)
    for _ in range(extra_factors):
        a = a * (v ** (G.blocks[0] * level) - 1)
    return a


def binomial_mod_p(n, k, p):
    """C(n, k) mod p via Lucas' theorem."""
    out = 1
    while n or k:
        a, b = n % p, k % p
        if b > a:
            return 0
        num = den = 1
        for t in range(b):
            num = num * (a - t) % p
            den = den * (t + 1) % p
        out = out * num * pow(den, p - 2, p) % p
        n //= p
        k //= p
    return out


# ---------------------------------------------------------------------------
# logarithm rows
# ---------------------------------------------------------------------------


def log_row_exact(G, imax):
    """Closed-form d_1-th rows of P_0, ..., P_imax as unreduced fractions.

    Each row is a list of ``(numerator, denominator)`` polynomial pairs in
    coordinate order.
    """
    F = G.field
    s = G.index.parts
    r = G.depth
    e = [0]
    for sm in s:
        e.append(e[-1] + sm)
    one = Poly.one(F)
    a_prev = [one] + [Poly.zero(F)] * r  # a_m(i-1)
    rows = []
    for i in range(imax + 1):
        nb = -bracket(F, i) if i else Poly.zero(F)
        Li, Lprev = l_factor(F, i), l_factor(F, i - 1) if i else one
        row = []
        for m in range(r):
            dm = G.blocks[m]
            if m == 0:
                num0, den = one, Li**dm
            else:
                num0 = a_prev[m] if m % 2 == 0 else -a_prev[m]
                den = Lprev ** e[m] * Li**dm
            for j in range(1, dm + 1):
                row.append((num0 * nb ** (dm - j), den))
        rows.append(row)
        a_cur = [one]
        for m in range(1, r + 1):
            a_cur.append(a_prev[m] * nb ** e[m] + a_cur[m - 1] * G.point[m - 1].frobenius(i))
        a_prev = a_cur
    return rows


def _cost_budget(default):
    raw = os.environ.get("VMZV_COST_BUDGET")
    return int(raw) if raw else default


def log_row_oracle(G, imax, budget=None):
    """Exact matrices P_0..P_imax from the full recurrence.

    Returns ``[(M_i, Delta_i)]`` with P_i = M_i / Delta_i, where
    Delta_i = prod_{k<=i} [k]^(2 d_1 - 1) is a common denominator.
    """
    budget = budget if budget is not None else _cost_budget(120)
    d = G.dim
    if imax * d > budget:
        raise CostGuardError(f"matrix oracle with i={imax}, d={d} exceeds budget {budget}")
    F = G.field
    zero, one = Poly.zero(F), Poly.one(F)
    top = set(G.offsets)
    bottom = {o + b - 1 for o, b in zip(G.offsets, G.blocks)}
    E = G.twist_matrix()
    K = 2 * G.blocks[0] - 2

    def ad(X):
        # N X - X N
        out = []
        for a in range(d):
            row = []
            for b in range(d):
                left = X[a + 1][b] if a not in bottom else zero
                right = X[a][b - 1] if b not in top else zero
                row.append(left - right)
            out.append(row)
        return out

    M = [[one if a == b else zero for b in range(d)] for a in range(d)]
    Delta = one
    out = [(M, Delta)]
    for i in range(imax):
        Ei = [[c.frobenius(i) if not c.is_zero() else zero for c in row] for row in E]
        X = [[_dot(M[a], Ei, b, d, zero) for b in range(d)] for a in range(d)]
        b_next = bracket(F, i + 1)
        S = X
        Y = X
        for _ in range(K):
            Y = ad(Y)
            S = [[S[a][b] * b_next + Y[a][b] for b in range(d)] for a in range(d)]
        M = [[-S[a][b] for b in range(d)] for a in range(d)]
        Delta = Delta * b_next ** (2 * G.blocks[0] - 1)
        out.append((M, Delta))
    return out


def _dot(row, E, b, d, zero):
    acc = zero
    for k in range(d):
        if not row[k].is_zero() and not E[k][b].is_zero():
            acc = acc + row[k] * E[k][b]
    return acc


def frobenius_power(x, i, K):
    """x^(q^i) truncated to absolute precision at most K (x a Poly or integral VAdicNumber)."""
    if isinstance(x, Poly):
        raise TypeError("use a residue ring for polynomials")
    place = x.place
    s = place.field.q**i
    if x.is_exact_zero():
        return x
    if x.is_zero():
        return VAdicNumber.zero(place, min(K, x.abs_prec * s))
    m = x.shift
    rel = min(K - s * m, s * (x.abs_prec - m))
    if rel <= 0:
        return VAdicNumber.zero(place, min(K, s * x.abs_prec))
    R = residue_ring(place, rel)
    return VAdicNumber(place, s * m, R.frob(R.reduce(x._u), i), s * m + rel)


def _alpha(i, eps):
    return i // eps


def term_schedule(q, eps, weight, N, c=1):
    """Largest summation index I for terms bounded below by c q^i - weight * floor(i/eps).

    Terms with index > I have valuation >= N.
    """
    i = 0
    last = 0
    while True:
        T = c * q**i - weight * _alpha(i, eps)
        if T >= N and c * q**i * (q - 1) >= weight:
            return last
        last = i
        i += 1


class _PowerCache:
    """u^(q^i) modulo v^K for a fixed polynomial u, built by repeated Frobenius."""

    def __init__(self, u, place, K):
        self.R = residue_ring(place, K)
        self.place = place
        self.K = K
        self.vals = [self.R.reduce(u.c)]

    def get(self, i):
        while len(self.vals) <= i:
            self.vals.append(self.R.frob(self.vals[-1], 1))
        return VAdicNumber._from_residue(self.place, self.vals[i], 0, self.K)


class _RowStream:
    """Incremental multipliers of the closed-form rows in v-adic mode.

    Row i block m is (-[i])^(d_m - j) times mult_m(i), where
    mult_m(i) = (-1)^(m-1) A_{m-1}(i-1) / L_i^(d_m).
    """

    def __init__(self, G, place, K):
        self.G = G
        self.place = place
        self.K = K
        self.L = LUnits(place, K)
        self.pows = [_PowerCache(u, place, K) for u in G.point]
        r = G.depth
        self.A = [VAdicNumber.from_poly(1, place, K)] + [VAdicNumber.exact_zero(place)] * r
        self.i = -1

    def advance(self):
        """Move to the next row; return the multipliers of that row."""
        self.i += 1
        i = self.i
        G, r = self.G, self.G.depth
        mults = []
        for m in range(r):
            a = self.A[m]
            if m % 2:
                a = -a
            mults.append(a * self.L.l_power_inverse(i, G.blocks[m]))
        newA = [self.A[0]]
        for m in range(1, r + 1):
            term = newA[m - 1] * self.pows[m - 1].get(i) * self.L.l_power_inverse(i, G.index[m - 1])
            newA.append(self.A[m] + term)
        self.A = newA
        return mults


def log_row(G, i, place=None, K=None):
    """The d_1-th row of P_i: exact fractions, or v-adic values when a place is given."""
    if place is None:
        return log_row_exact(G, i)[i]
    stream = _RowStream(G, place, K)
    for _ in range(i + 1):
        mults = stream.advance()
    nb = stream.L.neg_bracket(i)
    row = []
    for m in range(G.depth):
        dm = G.blocks[m]
        for j in range(1, dm + 1):
            row.append(mults[m] * nb ** (dm - j) if dm > j else mults[m])
    return row


def log_top_from_residues(G, x, P, place, N, guard):
    """d_1-th coordinate of log_G(x) for x given as residues mod v^P, all divisible by v.

    Returns a VAdicNumber whose precision is whatever was certified (at most N).
    """
    q, eps, d1 = place.field.q, place.eps, G.blocks[0]
    R = residue_ring(place, P)
    c = P
    for y in x:
        sv = R.split_valuation(y)
        if sv is not None:
            c = min(c, sv[0])
    if c < 1:
        raise MembershipError("point is not inside the open unit polydisk")
    if all(not y for y in x) and P >= N:
        return VAdicNumber.zero(place, N)
    I = term_schedule(q, eps, d1, N, c)
    aI = _alpha(I, eps)
    K_L = N + 2 * d1 * aI + guard
    stream = _RowStream(G, place, K_L)
    total = VAdicNumber.zero(place, N)
    X = list(x)
    Kprev = P
    for i in range(I + 1):
        Ki = N + d1 * _alpha(i, eps) + guard
        # x^(q^i) is known modulo v^(q^i P)
        Ki = min(Ki, q**i * P)
        if i:
            if Ki > q * Kprev:
                raise PrecisionError("Frobenius chain lost precision", achieved=Ki)
            Ri = residue_ring(place, Ki)
            X = [Ri.reduce(_frob_raw(y, q)) for y in X]
        else:
            Ri = residue_ring(place, Ki)
            X = [Ri.reduce(y) for y in X]
        Kprev = Ki
        mults = stream.advance()
        nb = Ri.reduce(stream.L.bracket_res(i)) if i else ()
        nb = psub(place.field, (), nb)
        for m in range(G.depth):
            off, b = G.offsets[m], G.blocks[m]
            S = X[off]
            for j in range(1, b):
                S = padd(place.field, Ri.mul(S, nb), X[off + j])
            if not S:
                Sv = VAdicNumber.zero(place, Ki)
            else:
                Sv = VAdicNumber._from_residue(place, S, 0, Ki)
            total = total + mults[m] * Sv
    return total.truncate(N)


def _frob_raw(a, q):
    if not a:
        return a
    out = [0] * ((len(a) - 1) * q + 1)
    out[::q] = a
    return tuple(out)


def x_precision(q, eps, weight, N, guard):
    """Precision P such that x^(q^i) mod v^(q^i P) covers every term up to the truncation index."""
    I = term_schedule(q, eps, weight, N, 1)
    P = 1
    for i in range(I + 1):
        need = N + weight * _alpha(i, eps) + guard
        P = max(P, -(-need // q**i))
    return P


def log_top_coordinate(G, x, place, N, guard=None):
    """d_1-th coordinate of log_G(x) to absolute precision N, x a list of v-adic values."""
    if guard is None:
        guard = G.index.weight
    P = min(y.abs_prec for y in x)
    R = residue_ring(place, P)
    res = [_to_residue(y, R) for y in x]
    out = log_top_from_residues(G, res, P, place, N, guard)
    if out.abs_prec < N:
        raise PrecisionError("log coordinate below requested precision", achieved=out.abs_prec)
    return out
