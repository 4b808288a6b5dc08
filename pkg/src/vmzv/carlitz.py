"""Carlitz arithmetic: [i], D_i, L_i, Carlitz factorials and valuation bounds."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product

from .algebra import Poly
from .localfields import VAdicNumber, residue_ring, _theta_frob_mod

__all__ = [
    "IndexComposition",
    "compositions",
    "bracket",
    "d_factor",
    "l_factor",
    "carlitz_gamma",
    "gamma_index",
    "ord_closed",
    "ord_gamma_closed",
    "gamma_ord_bound",
    "b_weight",
    "mzv_bound",
    "LUnits",
]


@dataclass(frozen=True)
class IndexComposition:
    """A tuple (s_1, ..., s_r) of positive integers."""

    parts: tuple

    def __post_init__(self):
        parts = tuple(int(s) for s in self.parts)
        if not parts:
            raise ValueError("an index needs at least one entry")
        if any(s < 1 for s in parts):
            raise ValueError(f"index entries must be positive: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text):
        if isinstance(text, IndexComposition):
            return text
        if isinstance(text, (tuple, list)):
            return cls(tuple(text))
        return cls(tuple(int(x) for x in str(text).split(",") if x.strip()))

    @property
    def weight(self):
        return sum(self.parts)

    @property
    def depth(self):
        return len(self.parts)

    @property
    def height(self):
        return sum(1 for s in self.parts if s != 1)

    def reversed(self):
        return IndexComposition(self.parts[::-1])

    def collapse(self, i):
        """(s_1+...+s_i, s_{i+1}, ..., s_r), or None (the empty index) out of range."""
        r = self.depth
        if i < 1 or i > r:
            return None
        return IndexComposition((sum(self.parts[:i]),) + self.parts[i:])

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, k):
        return self.parts[k]

    def __str__(self):
        return ",".join(map(str, self.parts))


def compositions(w):
    """All compositions of w, in lexicographic order of the cut pattern."""
    out = []
    for cuts in product((0, 1), repeat=w - 1):
        parts, run = [], 1
        for c in cuts:
            if c:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        out.append(IndexComposition(tuple(parts)))
    return out


@lru_cache(maxsize=None)
def bracket(field, i):
    """[i] = T^(q^i) - T."""
    T = Poly.gen(field)
    return Poly.monomial(field, field.q**i) - T


@lru_cache(maxsize=None)
def d_factor(field, i):
    if i == 0:
        return Poly.one(field)
    return bracket(field, i) * d_factor(field, i - 1).frobenius(1)


@lru_cache(maxsize=None)
def l_factor(field, i):
    if i == 0:
        return Poly.one(field)
    return -(bracket(field, i) * l_factor(field, i - 1))


@lru_cache(maxsize=None)
def carlitz_gamma(field, n):
    """Gamma_n = prod D_j^(n_j) over the base-q digits of n - 1."""
    if n < 1:
        raise ValueError("Gamma_n needs n >= 1")
    m, j, out = n - 1, 0, Poly.one(field)
    while m:
        m, dig = divmod(m, field.q)
        if dig:
            out = out * d_factor(field, j) ** dig
        j += 1
    return out


def gamma_index(field, index):
    out = Poly.one(field)
    for s in IndexComposition.parse(index):
        out = out * carlitz_gamma(field, s)
    return out


def ord_closed(i, place):
    """(ord_v D_i, ord_v L_i) from i = alpha*eps + beta."""
    alpha, beta = divmod(i, place.eps)
    qv = place.q_v
    q = place.field.q
    return q**beta * (qv**alpha - 1) // (qv - 1), alpha


def ord_gamma_closed(n, place):
    m, j, total = n - 1, 0, 0
    q = place.field.q
    while m:
        m, dig = divmod(m, q)
        total += dig * ord_closed(j, place)[0]
        j += 1
    return total


def gamma_ord_bound(index, place):
    index = IndexComposition.parse(index)
    return Fraction(index.weight - index.depth - index.height, place.q_v - 1)


def b_weight(w, place_or_qv):
    """min over n >= 0 of q_v^n - n*w."""
    qv = place_or_qv if isinstance(place_or_qv, int) else place_or_qv.q_v
    best, n, p = 1, 0, 1
    while True:
        best = min(best, p - n * w)
        if p * (qv - 1) > w:
            return best
        n += 1
        p *= qv


def mzv_bound(index, place):
    """(lower bound for ord_v of the v-adic MZV, integrality criterion q_v >= wt)."""
    index = IndexComposition.parse(index)
    bound = b_weight(index.weight, place) - gamma_ord_bound(index, place)
    return bound, place.q_v >= index.weight


class LUnits:
    """Streams L_i = (-1)^i v^alpha(i) U_i with U_i known modulo v^K.

    Also provides [i] modulo v^K. One instance per (place, K); entries are
    built incrementally and cached.
    """

    def __init__(self, place, K):
        self.place = place
        self.K = K
        self.R = residue_ring(place, K)
        self._R1 = residue_ring(place, K + 1)
        F = place.field
        self._units = [(1,)]
        self._inv = [(1,)]
        self._neg_one = Poly.const(F, F.neg(1)).c

    def bracket_res(self, i):
        """[i] modulo v^K as a raw tuple."""
        if i == 0:
            return ()
        return self.R.sub(_theta_frob_mod(self.place, i, self.K), self.R.reduce((0, 1)))

    def bracket(self, i):
        return VAdicNumber._from_residue(self.place, self.bracket_res(i), 0, self.K)

    def neg_bracket(self, i):
        return -self.bracket(i)

    def unit(self, i):
        """(U_i, U_i^-1) modulo v^K, where L_i = (-1)^i v^alpha U_i."""
        while len(self._units) <= i:
            j = len(self._units)
            b = self._R1.sub(_theta_frob_mod(self.place, j, self.K + 1), self._R1.reduce((0, 1)))
            if j % self.place.eps == 0:
                m, b = self._R1.split_valuation(b)
                assert m == 1
            b = self.R.reduce(b)
            self._units.append(self.R.mul(self._units[-1], b))
            self._inv.append(None)
        if self._inv[i] is None:
            self._inv[i] = self.R.inverse(self._units[i])
        return self._units[i], self._inv[i]

    def l_power_inverse(self, i, s):
        """L_i^-s as a VAdicNumber with relative precision K."""
        alpha = i // self.place.eps
        _, inv = self.unit(i)
        u = inv
        if s > 1:
            acc = (1,)
            base, e = inv, s
            while e:
                if e & 1:
                    acc = self.R.mul(acc, base)
                e >>= 1
                if e:
                    base = self.R.mul(base, base)
            u = acc
        if (i * s) % 2 and self.place.field.p != 2:
            u = self.R.sub((), u)
        return VAdicNumber(self.place, -s * alpha, u, self.K - s * alpha)
