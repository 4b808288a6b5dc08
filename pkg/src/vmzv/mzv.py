"""Multiple zeta values: v-adic, at infinity, finite, and adelic scans."""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache

from .algebra import INF, GF, Place, Poly, enumerate_places
from .andersonthakur import at_coeffs
from .carlitz import IndexComposition, gamma_index, mzv_bound
from .cmspl import _div_poly, _times_poly, cmspl_inf, cmspl_v
from .errors import CostGuardError, MathError
from .localfields import InfAdicNumber, VAdicNumber, _poly_ord

__all__ = [
    "DecompTriple",
    "decompose_index",
    "MzvResult",
    "zeta_v",
    "power_sum",
    "zeta_inf_series",
    "zeta_inf_cmspl",
    "finite_zeta",
    "finite_zeta_by_power_sums",
    "adelic_scan",
    "ROW_FIELDS",
]

ROW_FIELDS = ("q", "place", "index", "abs_precision", "valuation", "digits", "bound", "criterion", "integral")


@dataclass(frozen=True)
class DecompTriple:
    b: Poly
    index: IndexComposition
    point: tuple

    def has_zero(self):
        return any(u.is_zero() for u in self.point)

    def __str__(self):
        pts = ",".join(str(u) for u in self.point)
        return f"({self.b}, ({self.index}), ({pts}))"


def _apply_word(word, index, point):
    parts, pts = [index[0]], [point[0]]
    for k, w in enumerate(word, start=1):
        if w:
            parts[-1] += index[k]
            pts[-1] = pts[-1] * point[k]
        else:
            parts.append(index[k])
            pts.append(point[k])
    return IndexComposition(tuple(parts)), tuple(pts)


def decompose_index(field, index):
    """Triples (b, collapsed index, collapsed point) over AT coefficient choices and merge words."""
    index = IndexComposition.parse(index)
    r = index.depth
    coeffs = at_coeffs(field, index).coeffs
    T = Poly.gen(field)
    out = []
    for js in itertools.product(*(range(len(c)) for c in coeffs)):
        point = tuple(coeffs[k][j] for k, j in enumerate(js))
        b = T ** sum(js)
        if (r - 1) % 2:
            b = -b
        for word in itertools.product((0, 1), repeat=r - 1):
            sub, pts = _apply_word(word, index, point)
            out.append(DecompTriple(b, sub, pts))
    return out


@dataclass
class MzvResult:
    """A computed MZV with its valuation bound and integrality verdict."""

    index: IndexComposition
    place: object
    value: object
    bound: Fraction
    criterion: bool
    error: str = None

    @property
    def field(self):
        return self.place.field if self.place != "inf" else self.value.field

    @property
    def valuation(self):
        if self.value is None or self.value.is_zero():
            return None
        return self.value.valuation

    @property
    def integral(self):
        """'true', 'false' or 'unknown'."""
        if self.value is None:
            return "unknown"
        if self.value.is_zero():
            return "true" if self.value.abs_prec >= 0 else "unknown"
        return "true" if self.value.valuation >= 0 else "false"

    def satisfies_bound(self):
        if self.value is None:
            return None
        return self.value.ord_lower_bound() >= self.bound

    def to_row(self):
        val = self.value
        js = val.to_json() if val is not None else {"digits": [], "O": None}
        row = {
            "q": self.field.q if self.value is not None else self.place.field.q,
            "place": str(self.place.v) if self.place != "inf" else "inf",
            "index": list(self.index.parts),
            "abs_precision": js["O"],
            "valuation": self.valuation,
            "digits": js["digits"],
            "bound": str(self.bound),
            "criterion": self.criterion,
            "integral": self.integral,
        }
        if self.error is not None:
            row["error"] = self.error
        return row


def _zeta_sum(field, index, place, prec, triples):
    total = VAdicNumber.exact_zero(place)
    for t in triples:
        if t.has_zero():
            continue
        li = cmspl_v(t.index, t.point, place, prec)
        term = _times_poly(li, t.b)
        if t.index.depth % 2 == 0:
            term = -term
        total = total + term
    return total


def zeta_v(index, place, N):
    """The v-adic MZV with N significant digits (capped relative precision).

    A nonzero value is returned to O(v^(ord + N)); a value that vanishes to
    absolute precision N is returned as zero to that precision.
    """
    index = IndexComposition.parse(index)
    if N < 1:
        raise ValueError("precision must be at least 1")
    F = place.field
    triples = decompose_index(F, index)
    gamma = gamma_index(F, index)
    g = _poly_ord(gamma, place)
    target = N
    for _ in range(3):
        S = _zeta_sum(F, index, place, target + g, triples)
        gv = VAdicNumber.from_poly(gamma, place, S.abs_prec - min(0, S.ord_lower_bound()) + 2 * g + 1)
        value = S / gv if not S.is_exact_zero() else S
        if value.is_zero():
            value = value.truncate(N) if value.abs_prec > N else value
            break
        m = value.valuation
        if value.abs_prec >= m + N:
            value = value.truncate(m + N)
            break
        target = m + N
    bound, crit = mzv_bound(index, place)
    return MzvResult(index, place, value, bound, crit)


# ---------------------------------------------------------------------------
# infinity
# ---------------------------------------------------------------------------


def _budget(default):
    raw = os.environ.get("VMZV_COST_BUDGET")
    return int(raw) if raw else default


def _monic(field, d):
    """All monic polynomials of degree d."""
    for tail in itertools.product(range(field.q), repeat=d):
        yield Poly._raw(field, tuple(reversed(tail)) + (1,))


@lru_cache(maxsize=None)
def power_sum(field, d, s, M):
    """S_d(s) = sum of a^-s over monic a of degree d, in k_oo to O(T^-M)."""
    if field.q**d > _budget(200_000):
        raise CostGuardError(f"power sum over {field.q}^{d} polynomials exceeds the budget")
    if M <= s * d:
        return InfAdicNumber.zero(field, M)
    total = InfAdicNumber.exact_zero(field)
    for a in _monic(field, d):
        x = InfAdicNumber.from_poly(a, M - (s - 1) * d + d + 1)
        total = total + x.inverse() ** s
    return total.truncate(M)


def zeta_inf_series(index, M, field):
    """Sum over strictly decreasing degree tuples d_1 > ... > d_r >= 0 of prod S_(d_i)(s_i)."""
    index = IndexComposition.parse(index)
    r = index.depth
    if M <= 0:
        return InfAdicNumber.zero(field, M)
    total = InfAdicNumber.zero(field, M)
    for degs in itertools.combinations(range(M - 1, -1, -1), r):
        if sum(s * d for s, d in zip(index, degs)) >= M:
            continue
        term = None
        for s, d in zip(index, degs):
            ps = power_sum(field, d, s, M)
            term = ps if term is None else term * ps
        total = total + term
    return total.truncate(M)


def zeta_inf_cmspl(index, M, field):
    """(1/Gamma) sum b (-1)^(dep-1) Li* evaluated at infinity."""
    index = IndexComposition.parse(index)
    gamma = gamma_index(field, index)
    triples = decompose_index(field, index)
    extra = max((t.b.degree for t in triples), default=0)
    Mw = M + extra
    total = InfAdicNumber.exact_zero(field)
    for t in triples:
        if t.has_zero():
            continue
        li = cmspl_inf(t.index, t.point, Mw)
        term = li * InfAdicNumber.from_poly_rel(t.b, Mw + 2 * extra + 4)
        if t.index.depth % 2 == 0:
            term = -term
        total = total + term
    out = total / InfAdicNumber.from_poly_rel(gamma, Mw + 2 * extra + 4)
    return out.truncate(M)


# ---------------------------------------------------------------------------
# finite MZVs
# ---------------------------------------------------------------------------


def finite_zeta(index, place):
    """Sum over monic a_1..a_r with deg v > deg a_1 > ... > deg a_r of prod a_i^-s_i, mod v."""
    index = IndexComposition.parse(index)
    F, v = place.field, place.v
    dv = place.eps
    r = index.depth
    if r > dv:
        return Poly.zero(F)
    count = sum(F.q ** sum(degs) for degs in itertools.combinations(range(dv), r))
    if count > _budget(200_000):
        raise CostGuardError(f"finite MZV enumeration of {count} tuples exceeds the budget")
    inv = {}

    def inverse_power(a, s):
        key = (a.c, s)
        if key not in inv:
            inv[key] = (a.inverse_mod(v) ** s) % v
        return inv[key]

    total = Poly.zero(F)
    for degs in itertools.combinations(range(dv - 1, -1, -1), r):
        for tup in itertools.product(*(list(_monic(F, d)) for d in degs)):
            term = Poly.one(F)
            for a, s in zip(tup, index):
                term = (term * inverse_power(a, s)) % v
            total = total + term
    return total % v


def finite_zeta_by_power_sums(index, place):
    """Same sum, organised as a dynamic program over degrees of power sums mod v."""
    index = IndexComposition.parse(index)
    F, v = place.field, place.v
    dv = place.eps
    r = index.depth
    sums = {}
    for d in range(dv):
        for s in set(index):
            acc = Poly.zero(F)
            for a in _monic(F, d):
                acc = acc + a.inverse_mod(v) ** s
            sums[(d, s)] = acc % v
    # C[m][d]: sum over tuples for positions m..r-1 whose first degree is < d
    C = [[Poly.one(F)] * (dv + 1)]
    for m in range(r - 1, -1, -1):
        row = [Poly.zero(F)]
        for d in range(dv):
            row.append((row[-1] + sums[(d, index[m])] * C[0][d]) % v)
        C.insert(0, row)
    return C[0][dv] % v


# ---------------------------------------------------------------------------
# adelic scans
# ---------------------------------------------------------------------------


def _scan_one(args):
    q, v_text, index_parts, N = args
    F = GF(q)
    place = Place.parse(F, v_text)
    index = IndexComposition(index_parts)
    try:
        return zeta_v(index, place, N).to_row()
    except MathError as exc:
        bound, crit = mzv_bound(index, place)
        return MzvResult(index, place, None, bound, crit, error=str(exc)).to_row()


def adelic_scan(index, field, max_deg, N, jobs=1):
    """zeta_v at every place of degree <= max_deg, as rows in place order."""
    index = IndexComposition.parse(index)
    places = enumerate_places(field, max_deg)
    tasks = [(field.q, str(p.v), index.parts, N) for p in places]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_scan_one, tasks))
    return [_scan_one(t) for t in tasks]
