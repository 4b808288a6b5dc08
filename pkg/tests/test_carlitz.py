from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from vmzv.algebra import GF, Place, Poly, Rational, enumerate_places
from vmzv.carlitz import (
    IndexComposition,
    LUnits,
    b_weight,
    bracket,
    carlitz_gamma,
    compositions,
    d_factor,
    gamma_index,
    l_factor,
    mzv_bound,
    ord_closed,
    ord_gamma_closed,
)
from vmzv.localfields import vadic_from_rational

from oracles import exact_L, monic_polys, ord_D_L, ord_D_L_full


class TestIndex:
    def test_statistics(self):
        s = IndexComposition.parse("4,1")
        assert (s.weight, s.depth, s.height) == (5, 2, 1)
        assert str(s.reversed()) == "1,4"
        assert s.collapse(2).parts == (5,)
        assert s.collapse(1).parts == (4, 1)
        assert s.collapse(3) is None

    @pytest.mark.parametrize("bad", ["", "0", "3,-1"])
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            IndexComposition.parse(bad)

    @pytest.mark.parametrize("w", range(1, 8))
    def test_composition_count(self, w):
        comps = compositions(w)
        assert len(comps) == 2 ** (w - 1)
        assert len({c.parts for c in comps}) == len(comps)
        assert all(c.weight == w for c in comps)


class TestCarlitzQuantities:
    @pytest.mark.parametrize("q,i", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 1), (4, 2), (5, 1)])
    def test_factorial_is_product_of_monics(self, q, i):
        F = GF(q)
        prod = Poly.one(F)
        for a in monic_polys(F, i):
            prod = prod * a
        assert d_factor(F, i) == prod

    @pytest.mark.parametrize("q,i", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 2)])
    def test_l_is_signed_lcm_of_monics(self, q, i):
        F = GF(q)
        lcm = Poly.one(F)
        for a in monic_polys(F, i):
            lcm = (lcm * a) // lcm.gcd(a)
        sign = Poly.const(F, F.neg(1) if i % 2 else 1)
        assert l_factor(F, i) == sign * lcm
        assert l_factor(F, i) == exact_L(F, i)

    def test_bracket(self):
        assert str(bracket(GF(2), 1)) == "T^2+T"
        assert str(bracket(GF(3), 1)) == "T^3+2*T"

    def test_gamma(self):
        F = GF(2)
        assert str(gamma_index(F, "4,1")) == "T^2+T"
        assert carlitz_gamma(F, 1) == Poly.one(F)
        assert carlitz_gamma(F, 5) == d_factor(F, 2)
        F3 = GF(3)
        # 7 - 1 = 20 in base 3
        assert carlitz_gamma(F3, 7) == d_factor(F3, 1) ** 2

    def test_gamma_rejects_zero(self):
        with pytest.raises(ValueError):
            carlitz_gamma(GF(2), 0)


class TestClosedForms:
    @pytest.mark.parametrize("q", [2, 3, 4])
    def test_against_full_expansion(self, q):
        F = GF(q)
        for place in enumerate_places(F, 2):
            for i in range(0, 5 if q == 2 else 3):
                assert ord_closed(i, place) == ord_D_L_full(F, i, place), (str(place), i)

    @pytest.mark.parametrize("q", [2, 3, 5])
    def test_against_bracket_oracle(self, q):
        F = GF(q)
        for place in enumerate_places(F, 2):
            for i in range(0, 12):
                assert ord_closed(i, place) == ord_D_L(F, i, place)

    def test_gamma_valuation(self):
        F = GF(3)
        for place in enumerate_places(F, 2):
            for n in range(1, 20):
                g = carlitz_gamma(F, n)
                expected = 0
                while (g % place.v).is_zero():
                    g = g // place.v
                    expected += 1
                assert ord_gamma_closed(n, place) == expected

    @pytest.mark.parametrize("w", range(1, 9))
    @pytest.mark.parametrize("qv", [2, 3, 4, 8, 9])
    def test_b_weight_brute_force(self, w, qv):
        assert b_weight(w, qv) == min(qv**n - n * w for n in range(40))

    def test_bound_golden(self):
        place = Place(Poly.gen(GF(2)))
        bound, criterion = mzv_bound("4,1", place)
        assert bound == Fraction(-9) and criterion is False
        bound, criterion = mzv_bound("3", Place(Poly.gen(GF(3))))
        assert bound == Fraction(-1, 2) and criterion is True


class TestLUnits:
    @pytest.mark.parametrize("q", [2, 3])
    def test_units_reproduce_l(self, q):
        F = GF(q)
        K = 6
        for place in enumerate_places(F, 2):
            lu = LUnits(place, K)
            for i in range(0, 6):
                L = vadic_from_rational(Rational(exact_L(F, i)), place, 40)
                alpha = i // place.eps
                assert L.valuation == alpha
                for s in (1, 2, 3):
                    inv = lu.l_power_inverse(i, s)
                    exact = vadic_from_rational(Rational(Poly.one(F), exact_L(F, i) ** s), place, inv.abs_prec)
                    assert (inv - exact).is_zero()
                    assert inv.abs_prec == K - s * alpha

    @settings(max_examples=30, deadline=None)
    @given(i=st.integers(1, 20), K=st.integers(1, 10))
    def test_bracket_residue(self, i, K):
        F = GF(3)
        place = Place(Poly.parse(F, "T^2+1"))
        lu = LUnits(place, K)
        got = lu.bracket(i)
        m = place.v**K
        from oracles import modpow_theta

        b = (modpow_theta(F, 3**i, m) - Poly.gen(F)) % m
        assert (got - vadic_from_rational(Rational(b), place, K)).is_zero()
