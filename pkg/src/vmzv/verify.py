"""Seeded randomized verification suites shared by the CLI and the test-suite."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .algebra import GF, Place, Poly, enumerate_places
from .carlitz import IndexComposition, compositions
from .cmspl import (
    cmspl_continued_v,
    cmspl_direct_v,
    functional_equation_check,
    stuffle_depth1_check,
)
from .mzv import zeta_inf_cmspl, zeta_inf_series, zeta_v

__all__ = ["CaseResult", "SUITES", "run_suite", "random_poly", "random_index"]


@dataclass
class CaseResult:
    case: str
    passed: bool
    detail: str = ""


def random_poly(rng, field, max_deg, nonzero=False):
    while True:
        d = rng.randint(0, max_deg)
        c = [rng.randrange(field.q) for _ in range(d + 1)]
        f = Poly(field, c)
        if not nonzero or not f.is_zero():
            return f


def random_index(rng, max_weight, max_depth=None):
    w = rng.randint(1, max_weight)
    choices = [s for s in compositions(w) if max_depth is None or s.depth <= max_depth]
    return rng.choice(choices)


def _place(rng, field, max_deg):
    return rng.choice(enumerate_places(field, max_deg))


def suite_funceq(rng, cases=20, N=8):
    out = []
    for _ in range(cases):
        q = rng.choice((2, 3))
        F = GF(q)
        T = Poly.gen(F)
        index = random_index(rng, 5)
        point = tuple(rng.choice((Poly.zero(F), Poly.one(F), T)) for _ in range(index.depth))
        place = Place(rng.choice((T, T + 1)))
        lhs, rhs, ok = functional_equation_check(index, point, place, N)
        desc = f"q={q} v={place} s=({index}) u=({','.join(map(str, point))})"
        out.append(CaseResult(desc, ok, f"lhs={lhs} rhs={rhs}"))
    return out


def suite_stuffle(rng, cases=10, N=8):
    out = []
    for q in (2, 3):
        F = GF(q)
        for _ in range(cases):
            place = _place(rng, F, 2)
            s1, s2 = rng.randint(1, 3), rng.randint(1, 3)
            u1 = place.v * random_poly(rng, F, 1, nonzero=True)
            u2 = place.v * random_poly(rng, F, 1, nonzero=True)
            lhs, rhs, ok = stuffle_depth1_check(s1, s2, u1, u2, place, N)
            out.append(CaseResult(f"q={q} v={place} s=({s1},{s2}) u=({u1},{u2})", ok, f"lhs={lhs} rhs={rhs}"))
    return out


def suite_avals(rng, cases=10, N=8):
    """Two different continuation polynomials give the same value."""
    out = []
    for _ in range(cases):
        q = rng.choice((2, 3))
        F = GF(q)
        place = _place(rng, F, 2)
        index = random_index(rng, 4, 3)
        point = tuple(random_poly(rng, F, 2, nonzero=True) for _ in range(index.depth))
        a = cmspl_continued_v(index, point, place, N)
        b = cmspl_continued_v(index, point, place, N, extra_factors=1)
        ok = (a - b).is_zero()
        if place.eps > 1:
            c = cmspl_continued_v(index, point, place, N, level=place.eps)
            ok = ok and (a - c).is_zero()
        out.append(CaseResult(f"q={q} v={place} s=({index}) u=({','.join(map(str, point))})", ok, f"value={a}"))
    return out


def suite_continuation(rng, cases=20, N=8):
    """Continued value equals the direct series when u_1 lies in v A."""
    out = []
    for _ in range(cases):
        q = rng.choice((2, 3))
        F = GF(q)
        place = _place(rng, F, 2)
        index = random_index(rng, 5)
        first = place.v * random_poly(rng, F, 1, nonzero=True)
        point = (first,) + tuple(random_poly(rng, F, 2, nonzero=True) for _ in range(index.depth - 1))
        a = cmspl_direct_v(index, point, place, N)
        b = cmspl_continued_v(index, point, place, N)
        ok = (a - b).is_zero() and min(a.abs_prec, b.abs_prec) >= N
        out.append(CaseResult(f"q={q} v={place} s=({index}) u=({','.join(map(str, point))})", ok, f"value={a}"))
    return out


def suite_bounds(rng, cases=20, N=10):
    out = []
    for _ in range(cases):
        q = rng.choice((2, 3))
        F = GF(q)
        place = _place(rng, F, 2)
        index = random_index(rng, 6)
        res = zeta_v(index, place, N)
        ok = bool(res.satisfies_bound()) and (not res.criterion or res.integral == "true")
        out.append(CaseResult(f"q={q} v={place} s=({index})", ok,
                              f"value={res.value} bound={res.bound} integral={res.integral}"))
    return out


def suite_dualinf(rng, cases=10, M=8):
    out = []
    for _ in range(cases):
        q = rng.choice((2, 3))
        F = GF(q)
        index = random_index(rng, 5)
        a = zeta_inf_series(index, M, F)
        b = zeta_inf_cmspl(index, M, F)
        out.append(CaseResult(f"q={q} s=({index})", (a - b).is_zero(), f"series={a} cmspl={b}"))
    return out


SUITES = {
    "funceq": suite_funceq,
    "stuffle": suite_stuffle,
    "avals": suite_avals,
    "bounds": suite_bounds,
    "dualinf": suite_dualinf,
    "continuation": suite_continuation,
}


def run_suite(name, seed=0, **kwargs):
    return SUITES[name](random.Random(seed), **kwargs)
