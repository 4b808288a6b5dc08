"""Exact arithmetic over F_q, A = F_q[T], F_q[t, T] and k = F_q(T).

Polynomials are dense little-endian coefficient tuples of field elements.
Field elements are plain ``int`` codes in ``range(q)``: for a prime field the
code is the residue itself, for q = p^e it packs the base-p digits of the
element written in the power basis of the defining modulus (generator "g").

The text format renders the polynomial variable as ``T`` (the bivariate ring
adds ``t``) and the generator of F_q as ``g``, e.g. ``T^2+g*T+1``.
"""

from __future__ import annotations

import re
from array import array
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import product

__all__ = [
    "FiniteField",
    "GF",
    "Poly",
    "BiPoly",
    "Rational",
    "Place",
    "is_irreducible",
    "enumerate_places",
    "count_irreducible",
    "ord_exact",
    "parse_bivariate",
]

INF = float("inf")

# Conway polynomials, little-endian over F_p, for the non-prime fields we support.
_MODULI = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (5, 4): (2, 4, 4, 0, 1),
}


def _is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _prime_power(q):
    for p in range(2, q + 1):
        if q % p == 0:
            e, r = 0, q
            while r % p == 0:
                r //= p
                e += 1
            if r != 1 or not _is_prime(p):
                return None
            return p, e
    return None


class FiniteField:
    """The finite field F_q, q = p^e.

    Elements are ints in ``range(q)``. For e > 1 arithmetic goes through
    precomputed log/antilog and addition tables.
    """

    def __init__(self, p, e=1):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        if e > 1 and (p, e) not in _MODULI:
            raise ValueError(f"no built-in modulus for F_{p}^{e} (supported: e <= 4, p <= 5)")
        self.p = p
        self.e = e
        self.q = p**e
        self.is_prime = e == 1
        self.modulus = _MODULI.get((p, e), (0, 1))
        if not self.is_prime:
            self._build_tables()

    # -- table construction -------------------------------------------------

    def _digits(self, x):
        out = []
        for _ in range(self.e):
            out.append(x % self.p)
            x //= self.p
        return out

    def _undigits(self, ds):
        x = 0
        for d in reversed(ds):
            x = x * self.p + d
        return x

    def _slow_mul(self, a, b):
        p, e, m = self.p, self.e, self.modulus
        da, db = self._digits(a), self._digits(b)
        prod_ = [0] * (2 * e - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod_[i + j] = (prod_[i + j] + x * y) % p
        for k in range(2 * e - 2, e - 1, -1):
            c = prod_[k]
            if c:
                for i in range(e + 1):
                    prod_[k - e + i] = (prod_[k - e + i] - c * m[i]) % p
        return self._undigits(prod_[:e])

    def _build_tables(self):
        q = self.q
        self._add = [[self._undigits([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])
                      for b in range(q)] for a in range(q)]
        self._neg = [self._undigits([(-x) % self.p for x in self._digits(a)]) for a in range(q)]
        for cand in range(2, q):
            exp = [1]
            x = 1
            for _ in range(q - 2):
                x = self._slow_mul(x, cand)
                if x == 1:
                    break
                exp.append(x)
            if len(exp) == q - 1:
                break
        else:  # pragma: no cover - every finite field has a primitive element
            raise RuntimeError("no primitive element found")
        self._exp = exp + exp
        self._log = [0] * q
        for i, x in enumerate(exp):
            self._log[x] = i

    # -- element arithmetic ---------------------------------------------------

    def add(self, a, b):
        if self.is_prime:
            return (a + b) % self.p
        return self._add[a][b]

    def neg(self, a):
        if self.is_prime:
            return (-a) % self.p
        return self._neg[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.is_prime:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_q")
        if self.is_prime:
            return pow(a, self.p - 2, self.p)
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def pow(self, a, n):
        if n == 0:
            return 1
        if a == 0:
            return 0
        if self.is_prime:
            return pow(a, n, self.p)
        return self._exp[(self._log[a] * n) % (self.q - 1)]

    def from_int(self, n):
        """Image of the integer n in F_q."""
        return n % self.p

    @property
    def gen(self):
        """The generator ``g`` of F_q over F_p (the residue 0 + 1*g)."""
        return self.p if not self.is_prime else 1

    def elements(self):
        return range(self.q)

    def elem_str(self, a):
        if self.is_prime:
            return str(a)
        terms = []
        for k, d in reversed(list(enumerate(self._digits(a)))):
            if d == 0:
                continue
            if k == 0:
                terms.append(str(d))
            else:
                mono = "g" if k == 1 else f"g^{k}"
                terms.append(mono if d == 1 else f"{d}*{mono}")
        return "+".join(terms) if terms else "0"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self):
        return hash((self.p, self.e))

    def __repr__(self):
        return f"GF({self.q})"


@lru_cache(maxsize=None)
def GF(q):
    """Return the (cached) finite field with q elements."""
    pe = _prime_power(q)
    if pe is None:
        raise ValueError(f"{q} is not a prime power")
    return FiniteField(*pe)


# ---------------------------------------------------------------------------
# raw coefficient-tuple arithmetic
# ---------------------------------------------------------------------------

_KRON_MIN = 24
_TYPECODES = {1: "B", 2: "H", 4: "I", 8: "Q"}


def _norm(c):
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return tuple(c[:n])


def _kron_mul(a, b, p):
    # Kronecker substitution: pack into big ints, multiply, unpack.
    bound = min(len(a), len(b)) * (p - 1) * (p - 1)
    nbytes = (bound.bit_length() + 7) // 8
    for w in (1, 2, 4, 8):
        if nbytes <= w:
            break
    else:
        return None
    tc = _TYPECODES[w]
    x = int.from_bytes(array(tc, a).tobytes(), "little")
    y = int.from_bytes(array(tc, b).tobytes(), "little")
    m = len(a) + len(b) - 1
    out = array(tc)
    out.frombytes((x * y).to_bytes(m * w, "little"))
    return [c % p for c in out]


def padd(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    if F.is_prime:
        p = F.p
        r = [(x + y) % p for x, y in zip(a, b)]
    else:
        t = F._add
        r = [t[x][y] for x, y in zip(a, b)]
    r.extend(a[len(b):])
    return _norm(r)


def pneg(F, a):
    if F.is_prime:
        p = F.p
        return tuple((-x) % p for x in a)
    t = F._neg
    return tuple(t[x] for x in a)


def psub(F, a, b):
    if F.is_prime:
        p = F.p
        la, lb = len(a), len(b)
        if la >= lb:
            r = [(x - y) % p for x, y in zip(a, b)]
            r.extend(a[lb:])
        else:
            r = [(x - y) % p for x, y in zip(a, b)]
            r.extend((-y) % p for y in b[la:])
        return _norm(r)
    return padd(F, a, pneg(F, b))


def pscale(F, c, a):
    if c == 0:
        return ()
    if c == 1:
        return tuple(a)
    if F.is_prime:
        p = F.p
        return tuple((c * x) % p for x in a)
    return tuple(F.mul(c, x) for x in a)


def pmul(F, a, b):
    if not a or not b:
        return ()
    if F.is_prime:
        p = F.p
        if len(a) >= _KRON_MIN and len(b) >= _KRON_MIN:
            r = _kron_mul(a, b, p)
            if r is not None:
                return _norm(r)
        if len(a) < len(b):
            a, b = b, a
        res = [0] * (len(a) + len(b) - 1)
        for j, y in enumerate(b):
            if y:
                for i, x in enumerate(a):
                    res[i + j] += x * y
        return _norm([c % p for c in res])
    exp, log, add = F._exp, F._log, F._add
    res = [0] * (len(a) + len(b) - 1)
    lb = [(j, log[y]) for j, y in enumerate(b) if y]
    for i, x in enumerate(a):
        if x:
            lx = log[x]
            for j, ly in lb:
                res[i + j] = add[res[i + j]][exp[lx + ly]]
    return _norm(res)


def pmul_trunc(F, a, b, n):
    """Product of a and b modulo T^n."""
    return _norm(pmul(F, a[:n], b[:n])[:n])


def pdivmod(F, a, b):
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    lb = len(b)
    if len(a) < lb:
        return (), tuple(a)
    r = list(a)
    inv = F.inv(b[-1])
    qt = [0] * (len(a) - lb + 1)
    if F.is_prime:
        p = F.p
        for k in range(len(a) - lb, -1, -1):
            c = (r[k + lb - 1] * inv) % p
            if c:
                qt[k] = c
                r[k:k + lb] = [(x - c * y) % p for x, y in zip(r[k:k + lb], b)]
    else:
        for k in range(len(a) - lb, -1, -1):
            c = F.mul(r[k + lb - 1], inv)
            if c:
                qt[k] = c
                r[k:k + lb] = [F.sub(x, F.mul(c, y)) for x, y in zip(r[k:k + lb], b)]
    return _norm(qt), _norm(r[:lb - 1])


def pspread(a, m):
    """Coefficient k moved to position k*m: f(T) -> f(T^m)."""
    if m == 1 or len(a) <= 1:
        return tuple(a)
    out = [0] * ((len(a) - 1) * m + 1)
    out[::m] = a
    return tuple(out)


def pseries_inverse(F, h, n):
    """Inverse of the power series h (h[0] != 0) modulo T^n, by Newton iteration."""
    g = (F.inv(h[0]),)
    two = _norm((F.from_int(2),))
    k = 1
    while k < n:
        k = min(2 * k, n)
        g = pmul_trunc(F, g, psub(F, two, pmul_trunc(F, h, g, k)), k)
    return g


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]+)|(.))")


def _tokenize(s):
    toks = []
    for num, ident, op in _TOKEN.findall(s):
        if num:
            toks.append(("num", int(num)))
        elif ident:
            toks.append(("id", ident))
        elif op.strip():
            toks.append(("op", op))
    return toks


class _Parser:
    # Expressions over F_q[t, T] with + - * ^ and parentheses; values are
    # dicts {(t_degree, T_degree): coefficient}.

    def __init__(self, F, text):
        self.F = F
        self.toks = _tokenize(text)
        self.i = 0
        if not self.toks:
            raise ValueError("empty polynomial string")

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self):
        val = self.expr()
        if self.i != len(self.toks):
            raise ValueError(f"unexpected token {self.peek()[1]!r}")
        return val

    def expr(self):
        F = self.F
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek() == ("op", "+"):
            self.take()
        acc = self.term()
        if sign < 0:
            acc = _bi_scale(F, F.neg(1), acc)
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            if op == "-":
                rhs = _bi_scale(F, F.neg(1), rhs)
            acc = _bi_add(F, acc, rhs)
        return acc

    def term(self):
        acc = self.factor()
        while self.peek() == ("op", "*"):
            self.take()
            acc = _bi_mul(self.F, acc, self.factor())
        return acc

    def factor(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, n = self.take()
            if kind != "num":
                raise ValueError("exponent must be a non-negative integer")
            out = {(0, 0): 1}
            for _ in range(n):
                out = _bi_mul(self.F, out, base)
            return out
        return base

    def atom(self):
        kind, val = self.take()
        F = self.F
        if kind == "num":
            c = F.from_int(val)
            return {(0, 0): c} if c else {}
        if kind == "id":
            if val == "T":
                return {(0, 1): 1}
            if val == "t":
                return {(1, 0): 1}
            if val == "g":
                if F.is_prime:
                    raise ValueError("'g' is only meaningful for non-prime fields")
                return {(0, 0): F.gen}
            raise ValueError(f"unknown symbol {val!r}")
        if (kind, val) == ("op", "("):
            inner = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return inner
        raise ValueError(f"unexpected token {val!r}")


def _bi_add(F, a, b):
    out = dict(a)
    for k, c in b.items():
        s = F.add(out.get(k, 0), c)
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _bi_scale(F, c, a):
    return {k: F.mul(c, x) for k, x in a.items()} if c else {}


def _bi_mul(F, a, b):
    out = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            k = (i1 + i2, j1 + j2)
            s = F.add(out.get(k, 0), F.mul(c1, c2))
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def parse_bivariate(F, text):
    """Parse a string over F_q[t, T] into ``{(t_deg, T_deg): coeff}``."""
    return _Parser(F, text).parse()


def _monomial(F, c, powers):
    # powers: list of (var, exponent) with exponent > 0
    mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in powers)
    cs = F.elem_str(c)
    if not mono:
        return cs
    if c == 1:
        return mono
    if "+" in cs:
        cs = f"({cs})"
    return f"{cs}*{mono}"


# ---------------------------------------------------------------------------
# A = F_q[T]
# ---------------------------------------------------------------------------


class Poly:
    """An element of F_q[T] (also used for F_q[t]; the variable is only a label)."""

    __slots__ = ("field", "c", "_hash")

    def __init__(self, field, coeffs=()):
        self.field = field
        if field.is_prime:
            self.c = _norm([x % field.p for x in coeffs])
        else:
            cs = list(coeffs)
            if any(not 0 <= x < field.q for x in cs):
                raise ValueError("coefficient codes must lie in range(q)")
            self.c = _norm(cs)
        self._hash = None

    @classmethod
    def _raw(cls, field, c):
        obj = cls.__new__(cls)
        obj.field = field
        obj.c = c
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, field):
        return cls._raw(field, ())

    @classmethod
    def one(cls, field):
        return cls._raw(field, (1,))

    @classmethod
    def const(cls, field, c):
        return cls._raw(field, (c,) if c else ())

    @classmethod
    def gen(cls, field):
        """The variable T."""
        return cls._raw(field, (0, 1))

    @classmethod
    def monomial(cls, field, n, c=1):
        return cls._raw(field, (0,) * n + (c,)) if c else cls._raw(field, ())

    @classmethod
    def parse(cls, field, text, var="T"):
        terms = parse_bivariate(field, text)
        other = "t" if var == "T" else "T"
        if var not in ("T", "t"):
            raise ValueError("variable must be 'T' or 't'")
        out = {}
        for (i, j), c in terms.items():
            if (i if other == "t" else j):
                raise ValueError(f"unexpected variable {other!r} in {text!r}")
            out[j if var == "T" else i] = c
        n = max(out, default=-1) + 1
        return cls._raw(field, _norm([out.get(k, 0) for k in range(n)]))

    # -- basic properties -----------------------------------------------------

    @property
    def degree(self):
        """Degree, with -1 for the zero polynomial."""
        return len(self.c) - 1

    @property
    def lead(self):
        return self.c[-1] if self.c else 0

    def is_zero(self):
        return not self.c

    def is_one(self):
        return self.c == (1,)

    def is_monic(self):
        return bool(self.c) and self.c[-1] == 1

    def monic(self):
        if not self.c:
            return self
        return Poly._raw(self.field, pscale(self.field, self.field.inv(self.c[-1]), self.c))

    def __len__(self):
        return len(self.c)

    def __getitem__(self, k):
        return self.c[k] if 0 <= k < len(self.c) else 0

    # -- arithmetic ---------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.field != self.field:
                raise ValueError("polynomials over different fields")
            return other.c
        if isinstance(other, int):
            c = self.field.from_int(other)
            return (c,) if c else ()
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Poly._raw(self.field, padd(self.field, self.c, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Poly._raw(self.field, psub(self.field, self.c, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Poly._raw(self.field, psub(self.field, o, self.c))

    def __neg__(self):
        return Poly._raw(self.field, pneg(self.field, self.c))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Poly._raw(self.field, pmul(self.field, self.c, o))

    __rmul__ = __mul__

    def scale(self, c):
        """Multiply by the field element c."""
        return Poly._raw(self.field, pscale(self.field, c, self.c))

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        qt, r = pdivmod(self.field, self.c, o)
        return Poly._raw(self.field, qt), Poly._raw(self.field, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.one(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def frobenius(self, i=1):
        """Return self^(q^i), i.e. f(T^(q^i)) since coefficients are fixed by x -> x^q."""
        return Poly._raw(self.field, pspread(self.c, self.field.q**i))

    def shift(self, k):
        """Multiply by T^k."""
        if not self.c or k == 0:
            return self
        return Poly._raw(self.field, (0,) * k + self.c)

    def __call__(self, x):
        """Evaluate at x (a field element code, a Poly, or anything supporting + and *)."""
        if isinstance(x, int):
            F = self.field
            acc = 0
            for c in reversed(self.c):
                acc = F.add(F.mul(acc, x), c)
            return acc
        acc = x * 0
        for c in reversed(self.c):
            acc = acc * x + Poly.const(self.field, c)
        return acc

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other):
        """Return (g, s, t) with g = s*self + t*other monic."""
        F = self.field
        r0, r1 = self, other
        s0, s1 = Poly.one(F), Poly.zero(F)
        t0, t1 = Poly.zero(F), Poly.one(F)
        while not r1.is_zero():
            qt, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - qt * s1
            t0, t1 = t1, t0 - qt * t1
        if r0.is_zero():
            return r0, s0, t0
        inv = F.inv(r0.lead)
        return r0.scale(inv), s0.scale(inv), t0.scale(inv)

    def inverse_mod(self, m):
        g, s, _ = self.xgcd(m)
        if not g.is_one():
            raise ZeroDivisionError("not invertible modulo m")
        return s % m

    # -- comparison / display -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.c == other.c
        if isinstance(other, int):
            return self.c == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.q, self.c))
        return self._hash

    def sort_key(self):
        """Degree first, then big-endian coefficient codes."""
        return (len(self.c), tuple(reversed(self.c)))

    def to_str(self, var="T"):
        F = self.field
        terms = [_monomial(F, c, [(var, k)] if k else []) for k, c in reversed(list(enumerate(self.c))) if c]
        return "+".join(terms) if terms else "0"

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Poly({self.to_str()!r}, q={self.field.q})"


# ---------------------------------------------------------------------------
# F_q[t, T]
# ---------------------------------------------------------------------------


class BiPoly:
    """An element of F_q[t, T] stored as ``{(t_degree, T_degree): coeff}``."""

    __slots__ = ("field", "terms")

    def __init__(self, field, terms=None):
        self.field = field
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    @classmethod
    def from_T(cls, f):
        return cls(f.field, {(0, j): c for j, c in enumerate(f.c)})

    @classmethod
    def from_t(cls, f):
        return cls(f.field, {(i, 0): c for i, c in enumerate(f.c)})

    @classmethod
    def parse(cls, field, text):
        return cls(field, parse_bivariate(field, text))

    def __add__(self, other):
        return BiPoly(self.field, _bi_add(self.field, self.terms, other.terms))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return BiPoly(self.field, _bi_scale(self.field, self.field.neg(1), self.terms))

    def __mul__(self, other):
        return BiPoly(self.field, _bi_mul(self.field, self.terms, other.terms))

    def is_zero(self):
        return not self.terms

    def t_degree(self):
        return max((i for i, _ in self.terms), default=-1)

    def T_degree(self):
        return max((j for _, j in self.terms), default=-1)

    def by_T(self):
        """Map T-degree -> coefficient polynomial in t."""
        rows = {}
        for (i, j), c in self.terms.items():
            rows.setdefault(j, {})[i] = c
        F = self.field
        return {j: Poly._raw(F, _norm([r.get(i, 0) for i in range(max(r) + 1)])) for j, r in rows.items()}

    def t_coefficients(self):
        """List of coefficients of t^0, t^1, ... as polynomials in T."""
        F = self.field
        n = self.t_degree() + 1
        cols = [dict() for _ in range(n)]
        for (i, j), c in self.terms.items():
            cols[i][j] = c
        return [Poly._raw(F, _norm([col.get(j, 0) for j in range(max(col, default=-1) + 1)])) for col in cols]

    @classmethod
    def from_by_T(cls, field, rows):
        terms = {}
        for j, f in rows.items():
            for i, c in enumerate(f.c):
                if c:
                    terms[(i, j)] = c
        return cls(field, terms)

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash((self.field.q, frozenset(self.terms.items())))

    def __str__(self):
        F = self.field
        keys = sorted(self.terms, key=lambda k: (-k[0], -k[1]))
        parts = []
        for i, j in keys:
            powers = [(v, k) for v, k in (("t", i), ("T", j)) if k]
            parts.append(_monomial(F, self.terms[(i, j)], powers))
        return "+".join(parts) if parts else "0"

    def __repr__(self):
        return f"BiPoly({str(self)!r}, q={self.field.q})"


# ---------------------------------------------------------------------------
# k = F_q(T)
# ---------------------------------------------------------------------------


class Rational:
    """An element num/den of F_q(T), kept reduced with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced=False):
        if isinstance(num, Rational) and den is None:
            self.num, self.den = num.num, num.den
            return
        if den is None:
            den = Poly.one(num.field)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            g = num.gcd(den)
            if not g.is_one():
                num, den = num // g, den // g
            lc = den.lead
            if lc != 1:
                inv = num.field.inv(lc)
                num, den = num.scale(inv), den.scale(inv)
        self.num, self.den = num, den

    @property
    def field(self):
        return self.num.field

    def is_zero(self):
        return self.num.is_zero()

    def _lift(self, other):
        if isinstance(other, Rational):
            return other
        if isinstance(other, Poly):
            return Rational(other, _reduced=True)
        if isinstance(other, int):
            return Rational(Poly.const(self.field, self.field.from_int(other)), _reduced=True)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return Rational(self.num + o.num, self.den)
        return Rational(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return Rational(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Rational(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero in k")
        return Rational(self.den, self.num)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return Rational(self.num**n, self.den**n, _reduced=True)

    def frobenius(self, i=1):
        return Rational(self.num.frobenius(i), self.den.frobenius(i), _reduced=True)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"Rational({str(self)!r}, q={self.field.q})"


# ---------------------------------------------------------------------------
# places
# ---------------------------------------------------------------------------


def is_irreducible(f):
    """Rabin's irreducibility test over F_q."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    n = f.degree
    if n <= 0:
        return False
    if n == 1:
        return True
    f = f.monic()
    q = f.field.q
    X = Poly.gen(f.field)

    def frob_pow(h, k):
        for _ in range(k):
            h = h.frobenius() % f
        return h

    primes = [r for r in range(2, n + 1) if n % r == 0 and _is_prime(r)]
    for r in primes:
        h = frob_pow(X % f, n // r)
        if not (h - X).gcd(f).is_one():
            return False
    return (frob_pow(X % f, n) - X) % f == Poly.zero(f.field) and q > 1


@dataclass(frozen=True)
class Place:
    """A finite place of k: a monic irreducible v in A."""

    v: Poly
    eps: int = dc_field(init=False)
    q_v: int = dc_field(init=False)

    def __post_init__(self):
        if not self.v.is_monic() or not is_irreducible(self.v):
            raise ValueError(f"{self.v} is not monic irreducible")
        object.__setattr__(self, "eps", self.v.degree)
        object.__setattr__(self, "q_v", self.v.field.q ** self.v.degree)

    @classmethod
    def parse(cls, field, text):
        return cls(Poly.parse(field, text))

    @property
    def field(self):
        return self.v.field

    @property
    def is_theta(self):
        return self.v.c == (0, 1)

    def __str__(self):
        return str(self.v)

    def __repr__(self):
        return f"Place({str(self.v)!r}, q={self.field.q})"


def count_irreducible(q, d):
    """Number of monic irreducibles of degree d over F_q (necklace formula)."""

    def mobius(n):
        res, m, k = 1, n, 2
        while k * k <= m:
            if m % k == 0:
                m //= k
                if m % k == 0:
                    return 0
                res = -res
            k += 1
        return -res if m > 1 else res

    return sum(mobius(m) * q ** (d // m) for m in range(1, d + 1) if d % m == 0) // d


def enumerate_places(field, max_deg):
    """All monic irreducibles of degree <= max_deg, sorted by degree then coefficients."""
    if max_deg < 1:
        raise ValueError("max_deg must be >= 1")
    out = []
    for d in range(1, max_deg + 1):
        for tail in product(range(field.q), repeat=d):
            # tail is big-endian (c_{d-1}, ..., c_0)
            f = Poly._raw(field, tuple(reversed(tail)) + (1,))
            if is_irreducible(f):
                out.append(Place(f))
    return out


def ord_exact(x, place):
    """v-adic valuation of x in k by trial division; +inf for x = 0."""
    if isinstance(x, Poly):
        x = Rational(x, _reduced=True)
    if x.is_zero():
        return INF
    v = place.v

    def count(f):
        n = 0
        while True:
            qt, r = divmod(f, v)
            if not r.is_zero():
                return n
            f, n = qt, n + 1

    return count(x.num) - count(x.den)
