"""Truncated arithmetic in the completions k_v and k_oo.

A :class:`VAdicNumber` stores ``v^shift * unit + O(v^abs_prec)`` with ``unit``
a polynomial reduced modulo ``v^(abs_prec - shift)`` and prime to ``v``.
Precision follows the usual calculus for absolute precision:

* add/sub: ``min(N_a, N_b)``
* mul: ``min(N_a + ord_b, N_b + ord_a)``
* div: ``min(N_a - ord_b, N_b + ord_a - 2 ord_b)``
* Frobenius ``x -> x^(q^i)``: ``q^i N`` (characteristic p additivity)

Values indistinguishable from zero carry only their precision; the exact
zero has precision ``inf``. Elements of k_oo are Laurent series in 1/T and
are handled by the same machinery with the uniformizer 1/T.
"""

from __future__ import annotations

from functools import lru_cache

from .algebra import INF, Place, Poly, Rational, _norm, pmul, psub, padd, pneg, pspread, pseries_inverse, pdivmod
from .errors import PrecisionError, ZeroValuationError

__all__ = [
    "ResidueRing",
    "residue_ring",
    "VAdicNumber",
    "InfAdicNumber",
    "vadic_from_rational",
    "vadic_arith",
    "vadic_frobenius",
    "vadic_digits",
    "vadic_from_digits",
    "infadic_from_rational",
    "infadic_arith",
]


class ResidueRing:
    """Arithmetic in A / v^k A on raw coefficient tuples (Barrett reduction)."""

    def __init__(self, place, k):
        self.place = place
        self.field = place.field
        self.k = k
        self.theta = place.is_theta
        if self.theta:
            self.modulus = (0,) * k + (1,)
        else:
            self.modulus = (place.v**k).c
        self.D = len(self.modulus) - 1
        self._rev = tuple(reversed(self.modulus))
        self._inv = (1,)

    def _inverse_to(self, n):
        if len(self._inv) < n:
            self._inv = pseries_inverse(self.field, self._rev, max(n, 2 * len(self._inv)))
        return self._inv

    def reduce(self, f):
        D = self.D
        n = len(f)
        if n <= D:
            return f
        if self.theta:
            return _norm(f[:D])
        F = self.field
        k = n - D
        inv = self._inverse_to(k)
        rq = pmul(F, f[:D - 1:-1][:k], inv[:k])[:k]
        qt = tuple(reversed(rq + (0,) * (k - len(rq))))
        prod_ = pmul(F, _norm(qt), self.modulus)
        return psub(F, f[:D], prod_[:D])

    def mul(self, a, b):
        return self.reduce(pmul(self.field, a, b))

    def add(self, a, b):
        return padd(self.field, a, b)

    def sub(self, a, b):
        return psub(self.field, a, b)

    def frob(self, a, i=1):
        """a^(q^i) mod v^k."""
        if i == 0:
            return a
        q = self.field.q
        if self.theta:
            # only coefficients landing below T^k survive
            out = [0] * self.D
            step = q**i
            for j, c in enumerate(a):
                pos = j * step
                if pos >= self.D:
                    break
                out[pos] = c
            return _norm(out)
        for _ in range(i):
            a = self.reduce(pspread(a, q))
        return a

    def vpow(self, j):
        """v^j mod v^k."""
        if j >= self.k:
            return ()
        return self.reduce((self.place.v**j).c) if not self.theta else (0,) * j + (1,)

    def inverse(self, a):
        """Inverse of a unit modulo v^k: inverse mod v, then Newton lifting."""
        F = self.field
        if self.theta:
            if not a or a[0] == 0:
                raise ZeroDivisionError("not a unit")
            return pseries_inverse(F, a, self.D)
        v = self.place.v
        a0 = Poly._raw(F, a) % v
        if a0.is_zero():
            raise ZeroDivisionError("not a unit")
        g = a0.inverse_mod(v).c
        j = 1
        two = _norm((F.from_int(2),))
        while j < self.k:
            j = min(2 * j, self.k)
            R = residue_ring(self.place, j)
            g = R.mul(g, psub(F, two, R.mul(R.reduce(a), g)))
        return g

    def split_valuation(self, f):
        """Write a nonzero residue f = v^m * u (u prime to v); return (m, u mod v^(k-m))."""
        if not f:
            return None
        if self.theta:
            m = 0
            while f[m] == 0:
                m += 1
            return m, f[m:]
        F, vc = self.field, self.place.v.c
        m = 0
        while True:
            qt, r = pdivmod(F, f, vc)
            if r:
                return m, f
            f = qt
            m += 1


@lru_cache(maxsize=4096)
def residue_ring(place, k):
    return ResidueRing(place, k)


@lru_cache(maxsize=4096)
def _theta_frob_mod(place, j, k):
    # T^(q^j) mod v^k
    R = residue_ring(place, k)
    if j == 0:
        return R.reduce((0, 1))
    return R.frob(_theta_frob_mod(place, j - 1, k), 1)


class VAdicNumber:
    """An element ``v^shift * unit + O(v^abs_prec)`` of k_v."""

    __slots__ = ("place", "shift", "_u", "abs_prec")

    def __init__(self, place, shift, unit, abs_prec):
        self.place = place
        self.shift = shift
        self._u = unit.c if isinstance(unit, Poly) else tuple(unit)
        self.abs_prec = abs_prec

    # -- constructors -------------------------------------------------------

    @classmethod
    def exact_zero(cls, place):
        return cls(place, 0, (), INF)

    @classmethod
    def zero(cls, place, prec):
        """A value only known to lie in v^prec A_v."""
        return cls(place, prec if prec != INF else 0, (), prec)

    @classmethod
    def _from_residue(cls, place, f, base, prec):
        # value = v^base * f + O(v^prec), f a residue mod v^(prec-base)
        if prec <= base:
            return cls.zero(place, prec)
        R = residue_ring(place, prec - base)
        f = R.reduce(f)
        sv = R.split_valuation(f)
        if sv is None:
            return cls.zero(place, prec)
        m, u = sv
        return cls(place, base + m, u, prec)

    @classmethod
    def from_poly(cls, f, place, prec):
        """The polynomial f known modulo v^prec."""
        if isinstance(f, int):
            f = Poly.const(place.field, place.field.from_int(f))
        if prec == INF:
            if f.is_zero():
                return cls.exact_zero(place)
            raise ValueError("only zero can be stored exactly")
        if prec <= 0:
            return cls.zero(place, prec)
        return cls._from_residue(place, f.c, 0, prec)

    @classmethod
    def from_poly_rel(cls, f, place, rel):
        """The polynomial f with ``rel`` significant v-adic digits."""
        if f.is_zero():
            return cls.exact_zero(place)
        m = _poly_ord(f, place)
        return cls.from_poly(f, place, m + rel)

    @classmethod
    def from_rational(cls, x, place, prec):
        if isinstance(x, (Poly, int)):
            return cls.from_poly(x, place, prec)
        if x.is_zero():
            return cls.zero(place, prec)
        md = _poly_ord(x.den, place)
        den_unit = _strip(x.den, place, md)
        mn = _poly_ord(x.num, place)
        num_unit = _strip(x.num, place, mn)
        m = mn - md
        if prec <= m:
            return cls.zero(place, prec)
        R = residue_ring(place, prec - m)
        u = R.mul(R.reduce(num_unit.c), R.inverse(R.reduce(den_unit.c)))
        return cls(place, m, u, prec)

    # -- properties ---------------------------------------------------------

    @property
    def field(self):
        return self.place.field

    @property
    def unit(self):
        return Poly._raw(self.place.field, self._u)

    def is_zero(self):
        """True when the value is indistinguishable from 0 at its precision."""
        return not self._u

    def is_exact_zero(self):
        return not self._u and self.abs_prec == INF

    @property
    def valuation(self):
        if not self._u:
            raise ZeroValuationError("valuation of a value that is zero to its precision")
        return self.shift

    def ord_lower_bound(self):
        """Certified lower bound for the valuation (the precision for zero values)."""
        return self.shift if self._u else self.abs_prec

    @property
    def rel_prec(self):
        return self.abs_prec - self.shift if self._u else 0

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, VAdicNumber):
            if isinstance(other, (Poly, int, Rational)):
                return None
            raise TypeError(f"cannot combine VAdicNumber with {type(other).__name__}")
        if other.place != self.place:
            raise ValueError("values at different places")
        return other

    def _lift(self, other):
        o = self._check(other)
        if o is None:
            prec = self.abs_prec
            if prec == INF:
                prec = _DEFAULT_EXACT_PREC
            if isinstance(other, Rational):
                return VAdicNumber.from_rational(other, self.place, max(prec, 1) + 64)
            return VAdicNumber.from_poly(other, self.place, max(prec, 1))
        return o

    def __add__(self, other):
        o = self._lift(other)
        if self.is_exact_zero():
            return o
        if o.is_exact_zero():
            return self
        N = min(self.abs_prec, o.abs_prec)
        if not self._u and not o._u:
            return VAdicNumber.zero(self.place, N)
        if not o._u:
            return self.truncate(N)
        if not self._u:
            return o.truncate(N)
        m0 = min(self.shift, o.shift)
        if N <= m0:
            return VAdicNumber.zero(self.place, N)
        R = residue_ring(self.place, N - m0)
        a = R.reduce(self._u) if self.shift == m0 else R.mul(R.vpow(self.shift - m0), self._u)
        b = R.reduce(o._u) if o.shift == m0 else R.mul(R.vpow(o.shift - m0), o._u)
        return VAdicNumber._from_residue(self.place, padd(self.field, a, b), m0, N)

    __radd__ = __add__

    def __neg__(self):
        return VAdicNumber(self.place, self.shift, pneg(self.field, self._u), self.abs_prec)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if self.is_exact_zero() or o.is_exact_zero():
            return VAdicNumber.exact_zero(self.place)
        if not self._u or not o._u:
            return VAdicNumber.zero(self.place, self.ord_lower_bound() + o.ord_lower_bound())
        m = self.shift + o.shift
        N = min(self.abs_prec + o.shift, o.abs_prec + self.shift)
        R = residue_ring(self.place, N - m)
        return VAdicNumber(self.place, m, R.mul(self._u, o._u), N)

    __rmul__ = __mul__

    def inverse(self):
        if not self._u:
            raise ZeroDivisionError("division by a value that is zero to its precision")
        rel = self.abs_prec - self.shift
        R = residue_ring(self.place, rel)
        return VAdicNumber(self.place, -self.shift, R.inverse(self._u), rel - self.shift)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        if result is None:
            return VAdicNumber.from_poly(1, self.place, self.abs_prec - self.shift if self._u else _DEFAULT_EXACT_PREC)
        return result

    def frobenius(self, i=1):
        """x^(q^i) with precision q^i * N."""
        if i == 0 or self.is_exact_zero():
            return self
        s = self.field.q**i
        if not self._u:
            return VAdicNumber.zero(self.place, self.abs_prec * s)
        return VAdicNumber(self.place, self.shift * s, pspread(self._u, s), self.abs_prec * s)

    def truncate(self, prec):
        """Forget digits at and beyond v^prec."""
        if prec >= self.abs_prec:
            return self
        if not self._u or prec <= self.shift:
            return VAdicNumber.zero(self.place, prec)
        R = residue_ring(self.place, prec - self.shift)
        return VAdicNumber(self.place, self.shift, R.reduce(self._u), prec)

    def agrees_with(self, other):
        """True when self - other is zero at the common precision."""
        return (self - other).is_zero()

    # -- digits ---------------------------------------------------------------

    def digits(self):
        """Canonical expansion as [(power, digit)] with each digit reduced mod v."""
        if not self._u:
            return []
        F, vc = self.field, self.place.v.c
        out = []
        f = self._u
        k = self.shift
        while f and k < self.abs_prec:
            if self.place.is_theta:
                d, f = (f[0],) if f[0] else (), f[1:]
            else:
                qt, d = pdivmod(F, f, vc)
                f = qt
            if d:
                out.append((k, Poly._raw(F, d)))
            k += 1
        return out

    def to_json(self):
        return {
            "digits": [{"pow": k, "c": str(d)} for k, d in self.digits()],
            "O": None if self.abs_prec == INF else self.abs_prec,
        }

    def __eq__(self, other):
        if not isinstance(other, VAdicNumber):
            return NotImplemented
        return (self.place, self.shift if self._u else 0, self._u, self.abs_prec) == (
            other.place, other.shift if other._u else 0, other._u, other.abs_prec)

    def __hash__(self):
        return hash((self.place, self._u, self.abs_prec))

    def __str__(self):
        vs = str(self.place.v)
        terms = []
        for k, d in self.digits():
            ds = str(d)
            if self.place.is_theta:
                mono = "1" if k == 0 else ("T" if k == 1 else f"T^{k}")
                terms.append(mono if ds == "1" else (ds if k == 0 else f"{ds}*{mono}"))
            else:
                mono = "" if k == 0 else (f"({vs})" if k == 1 else f"({vs})^{k}")
                if not mono:
                    terms.append(ds)
                else:
                    terms.append(mono if ds == "1" else (f"({ds})*{mono}" if "+" in ds else f"{ds}*{mono}"))
        if self.abs_prec != INF:
            big_o = f"T^{self.abs_prec}" if self.place.is_theta else f"({vs})^{self.abs_prec}"
            terms.append(f"O({big_o})")
        return "+".join(terms) if terms else "0"

    def __repr__(self):
        return f"VAdicNumber({self}, q={self.field.q})"


_DEFAULT_EXACT_PREC = 32


def _poly_ord(f, place):
    if f.is_zero():
        return INF
    if place.is_theta:
        m = 0
        while f.c[m] == 0:
            m += 1
        return m
    m = 0
    vc = place.v.c
    c = f.c
    while True:
        qt, r = pdivmod(f.field, c, vc)
        if r:
            return m
        c = qt
        m += 1


def _strip(f, place, m):
    if m == 0:
        return f
    if place.is_theta:
        return Poly._raw(f.field, f.c[m:])
    return f // (place.v**m)


def vadic_from_rational(x, place, N):
    """Expansion of x in k_v known modulo v^N."""
    return VAdicNumber.from_rational(x, place, N)


def vadic_arith(a, b, op):
    """Apply ``op`` in {'add', 'sub', 'mul', 'div'} with the precision calculus."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def vadic_frobenius(x, i):
    return x.frobenius(i)


def vadic_digits(x):
    return x.digits()


def vadic_from_digits(place, digits, prec):
    """Reassemble sum(d * v^k) + O(v^prec) from a digit list."""
    if not digits:
        return VAdicNumber.zero(place, prec)
    low = min(k for k, _ in digits)
    acc = Poly.zero(place.field)
    for k, d in digits:
        acc = acc + d * place.v ** (k - low)
    return VAdicNumber._from_residue(place, acc.c, low, prec)


# ---------------------------------------------------------------------------
# k_oo
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _pi_place(field):
    # T is reused as the uniformizer 1/T of k_oo.
    return Place(Poly.gen(field))


class InfAdicNumber:
    """An element of k_oo: a Laurent series in 1/T known up to O(T^-abs_prec)."""

    __slots__ = ("_s",)

    def __init__(self, series):
        self._s = series

    @classmethod
    def exact_zero(cls, field):
        return cls(VAdicNumber.exact_zero(_pi_place(field)))

    @classmethod
    def zero(cls, field, prec):
        return cls(VAdicNumber.zero(_pi_place(field), prec))

    @classmethod
    def from_poly(cls, f, prec, field=None):
        if isinstance(f, int):
            f = Poly.const(field, field.from_int(f))
        P = _pi_place(f.field)
        if f.is_zero():
            return cls.zero(f.field, prec)
        d = f.degree
        # f = T^d * rev(f)(1/T); keep the top coefficients that matter.
        rel = prec + d
        if rel <= 0:
            return cls.zero(f.field, prec)
        top = tuple(reversed(f.c))[:rel]
        return cls(VAdicNumber(P, -d, _norm(top), prec))

    @classmethod
    def from_poly_rel(cls, f, rel):
        if f.is_zero():
            return cls.exact_zero(f.field)
        return cls.from_poly(f, rel - f.degree)

    @classmethod
    def from_rational(cls, x, prec):
        if isinstance(x, Poly):
            return cls.from_poly(x, prec)
        if x.is_zero():
            return cls.zero(x.field, prec)
        m = x.den.degree - x.num.degree
        rel = prec - m
        if rel <= 0:
            return cls.zero(x.field, prec)
        num = cls.from_poly(x.num, rel - x.num.degree)
        den = cls.from_poly(x.den, rel - x.den.degree)
        return num / den

    @property
    def field(self):
        return self._s.field

    @property
    def abs_prec(self):
        return self._s.abs_prec

    @property
    def top_deg(self):
        """Exponent of the leading power of T (= -ord_oo)."""
        return -self._s.valuation

    @property
    def valuation(self):
        return self._s.valuation

    def ord_lower_bound(self):
        return self._s.ord_lower_bound()

    def is_zero(self):
        return self._s.is_zero()

    def is_exact_zero(self):
        return self._s.is_exact_zero()

    def coeffs(self):
        """Coefficients of T^d, T^(d-1), ..., T^(-abs_prec+1)."""
        if self._s.is_zero():
            return []
        n = self.abs_prec - self._s.shift
        u = self._s._u
        return [u[k] if k < len(u) else 0 for k in range(n)]

    def terms(self):
        """[(exponent of T, coefficient)] for the nonzero known coefficients."""
        if self._s.is_zero():
            return []
        return [(-(self._s.shift + k), c) for k, c in enumerate(self._s._u) if c]

    def _wrap(self, other):
        if isinstance(other, InfAdicNumber):
            return other._s
        if isinstance(other, (Poly, int)):
            prec = self.abs_prec if self.abs_prec != INF else _DEFAULT_EXACT_PREC
            return InfAdicNumber.from_poly(other, prec, field=self.field)._s
        if isinstance(other, Rational):
            prec = self.abs_prec if self.abs_prec != INF else _DEFAULT_EXACT_PREC
            return InfAdicNumber.from_rational(other, prec + 64)._s
        raise TypeError(f"cannot combine InfAdicNumber with {type(other).__name__}")

    def __add__(self, other):
        return InfAdicNumber(self._s + self._wrap(other))

    __radd__ = __add__

    def __sub__(self, other):
        return InfAdicNumber(self._s - self._wrap(other))

    def __rsub__(self, other):
        return InfAdicNumber(self._wrap(other) - self._s)

    def __neg__(self):
        return InfAdicNumber(-self._s)

    def __mul__(self, other):
        return InfAdicNumber(self._s * self._wrap(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return InfAdicNumber(self._s / self._wrap(other))

    def __rtruediv__(self, other):
        return InfAdicNumber(self._wrap(other) / self._s)

    def inverse(self):
        return InfAdicNumber(self._s.inverse())

    def __pow__(self, n):
        return InfAdicNumber(self._s**n)

    def truncate(self, prec):
        return InfAdicNumber(self._s.truncate(prec))

    def agrees_with(self, other):
        return (self - other).is_zero()

    def to_json(self):
        return {
            "digits": [{"pow": k, "c": self.field.elem_str(c)} for k, c in self.terms()],
            "O": None if self.abs_prec == INF else -self.abs_prec,
        }

    def __str__(self):
        F = self.field
        parts = []
        for k, c in self.terms():
            mono = "1" if k == 0 else ("T" if k == 1 else f"T^{k}")
            cs = F.elem_str(c)
            if "+" in cs:
                cs = f"({cs})"
            parts.append(mono if cs == "1" else (cs if k == 0 else f"{cs}*{mono}"))
        if self.abs_prec != INF:
            parts.append(f"O(T^{-self.abs_prec})")
        return "+".join(parts) if parts else "0"

    def __repr__(self):
        return f"InfAdicNumber({self}, q={self.field.q})"


def infadic_from_rational(x, M):
    """Laurent expansion of x in 1/T known up to O(T^-M)."""
    return InfAdicNumber.from_rational(x, M)


def infadic_arith(a, b, op):
    return vadic_arith(a, b, op)
