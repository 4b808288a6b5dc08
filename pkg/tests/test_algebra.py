import pytest
from hypothesis import given, settings, strategies as st

from vmzv.algebra import (
    GF,
    INF,
    BiPoly,
    Place,
    Poly,
    Rational,
    _kron_mul,
    _norm,
    count_irreducible,
    enumerate_places,
    is_irreducible,
    ord_exact,
    padd,
    pdivmod,
    pmul,
)

FIELDS = [2, 3, 4, 5, 8, 9]


def P(q, text):
    return Poly.parse(GF(q), text)


def polys(q, max_deg=12):
    F = GF(q)
    return st.lists(st.integers(0, q - 1), max_size=max_deg + 1).map(lambda c: Poly(F, c))


def nonzero_polys(q, max_deg=8):
    return polys(q, max_deg).filter(lambda f: not f.is_zero())


class TestFiniteField:
    @pytest.mark.parametrize("q", FIELDS)
    def test_field_axioms(self, q):
        F = GF(q)
        for a in range(q):
            assert F.add(a, F.neg(a)) == 0
            assert F.mul(a, 1) == a
            if a:
                assert F.mul(a, F.inv(a)) == 1
            for b in range(q):
                assert F.add(a, b) == F.add(b, a)
                assert F.mul(a, b) == F.mul(b, a)

    def test_multiplicative_group_is_cyclic(self):
        F = GF(9)
        g = F.gen
        powers = {F.pow(g, k) for k in range(8)}
        assert powers == set(range(1, 9))

    def test_rejects_non_prime_power(self):
        with pytest.raises(ValueError):
            GF(6)


class TestPolyArithmetic:
    def test_exact_division(self):
        qt, r = divmod(P(2, "T^2+T"), P(2, "T"))
        assert (qt, r) == (P(2, "T+1"), P(2, "0"))

    def test_gcd_is_monic(self):
        assert P(2, "T^2+T").gcd(P(2, "T")) == P(2, "T")
        assert P(3, "2*T^2+2*T").gcd(P(3, "2*T")) == P(3, "T")

    def test_char_two_square(self):
        assert P(2, "T+1") * P(2, "T+1") == P(2, "T^2+1")

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            divmod(P(2, "T"), P(2, "0"))

    @pytest.mark.parametrize("q", [2, 3, 4])
    @settings(max_examples=60, deadline=None)
    @given(data=st.data())
    def test_degree_is_additive(self, q, data):
        f = data.draw(nonzero_polys(q))
        g = data.draw(nonzero_polys(q))
        assert (f * g).degree == f.degree + g.degree

    @pytest.mark.parametrize("q", [2, 3, 4])
    @settings(max_examples=60, deadline=None)
    @given(data=st.data())
    def test_divmod_round_trip(self, q, data):
        a = data.draw(polys(q, 20))
        b = data.draw(nonzero_polys(q))
        qt, r = divmod(a, b)
        assert qt * b + r == a
        assert r.degree < b.degree

    @pytest.mark.parametrize("p", [2, 3, 5])
    @settings(max_examples=40, deadline=None)
    @given(data=st.data())
    def test_kronecker_matches_schoolbook(self, p, data):
        F = GF(p)
        a = tuple(data.draw(st.lists(st.integers(0, p - 1), min_size=30, max_size=80)))
        b = tuple(data.draw(st.lists(st.integers(0, p - 1), min_size=30, max_size=80)))
        school = ()
        for k, c in enumerate(a):
            if c:
                school = padd(F, school, (0,) * k + tuple(F.mul(c, x) for x in b))
        assert pmul(F, a, b) == school
        assert _norm(_kron_mul(a, b, p)) == school

    @settings(max_examples=40, deadline=None)
    @given(data=st.data())
    def test_xgcd_identity(self, data):
        F = GF(3)
        a = data.draw(nonzero_polys(3))
        b = data.draw(nonzero_polys(3))
        g, s, t = a.xgcd(b)
        assert s * a + t * b == g
        assert g == a.gcd(b)

    def test_frobenius_matches_power(self):
        f = P(3, "T^2+2*T+1")
        assert f.frobenius(1) == f**3
        assert f.frobenius(2) == f**9


class TestParsing:
    @pytest.mark.parametrize(
        "q,text",
        [(2, "T^2+T+1"), (4, "T^2+g*T+1"), (4, "(g+1)*T^3+T"), (9, "g*T^4+(g+2)*T+2"), (3, "2*T^5+T")],
    )
    def test_round_trip(self, q, text):
        f = P(q, text)
        assert str(f) == text
        assert P(q, str(f)) == f

    def test_generator_rejected_for_prime_field(self):
        with pytest.raises(ValueError):
            P(3, "g*T")

    def test_expression_parsing(self):
        assert P(2, "(T+1)^2") == P(2, "T^2+1")
        assert P(3, "T*T-1") == P(3, "T^2+2")

    @pytest.mark.parametrize("q", [4, 8])
    @settings(max_examples=50, deadline=None)
    @given(data=st.data())
    def test_random_round_trip(self, q, data):
        f = data.draw(polys(q))
        assert Poly.parse(GF(q), str(f)) == f

    def test_bivariate(self):
        F = GF(2)
        H = BiPoly.parse(F, "t^2+t")
        assert str(H) == "t^2+t"
        assert [str(c) for c in H.t_coefficients()] == ["0", "1", "1"]
        assert str(BiPoly.parse(F, "t*T^2+T+t^3")) == "t^3+t*T^2+T"


class TestIrreducibility:
    def test_examples(self):
        assert is_irreducible(P(2, "T^2+T+1"))
        assert not is_irreducible(P(2, "T^2+T"))
        for q in (2, 3, 5):
            assert is_irreducible(P(q, "T"))

    def test_places_small(self):
        F = GF(2)
        assert [str(p) for p in enumerate_places(F, 1)] == ["T", "T+1"]
        assert [str(p) for p in enumerate_places(F, 2)] == ["T", "T+1", "T^2+T+1"]
        assert len(enumerate_places(GF(3), 1)) == 3

    def test_places_quadratic_brute_force(self):
        # brute force: a monic quadratic is irreducible iff it has no root in F_q
        F = GF(3)
        expected = []
        for b in range(3):
            for c in range(3):
                f = Poly(F, [c, b, 1])
                if all(f(Poly.const(F, x)).is_zero() is False for x in range(3)):
                    expected.append(f)
        got = [p.v for p in enumerate_places(F, 2) if p.eps == 2]
        assert sorted(got, key=lambda f: f.sort_key()) == sorted(expected, key=lambda f: f.sort_key())

    @pytest.mark.parametrize("q", [2, 3, 4, 5])
    def test_necklace_counts(self, q):
        F = GF(q)
        max_deg = 4 if q <= 3 else 3
        places = enumerate_places(F, max_deg)
        for d in range(1, max_deg + 1):
            assert sum(1 for p in places if p.eps == d) == count_irreducible(q, d)

    def test_place_validation(self):
        with pytest.raises(ValueError):
            Place(P(2, "T^2+1"))
        with pytest.raises(ValueError):
            Place(P(3, "2*T+1"))


class TestValuation:
    def test_examples(self):
        F = GF(2)
        T = Poly.gen(F)
        assert ord_exact(Rational(T**2 + T), Place(T)) == 1
        assert ord_exact(Rational(Poly.one(F), T**2 + T), Place(T + 1)) == -1
        assert ord_exact(Rational(Poly.zero(F)), Place(T)) == INF

    @settings(max_examples=60, deadline=None)
    @given(data=st.data())
    def test_additive_and_ultrametric(self, data):
        F = GF(3)
        place = data.draw(st.sampled_from(enumerate_places(F, 2)))
        x = Rational(data.draw(nonzero_polys(3)), data.draw(nonzero_polys(3)))
        y = Rational(data.draw(nonzero_polys(3)), data.draw(nonzero_polys(3)))
        ox, oy = ord_exact(x, place), ord_exact(y, place)
        assert ord_exact(x * y, place) == ox + oy
        s = x + y
        if not s.is_zero():
            os_ = ord_exact(s, place)
            assert os_ >= min(ox, oy)
            if ox != oy:
                assert os_ == min(ox, oy)


class TestRational:
    def test_normalized(self):
        F = GF(3)
        x = Rational(P(3, "2*T^2+2*T"), P(3, "2*T"))
        assert x.den.is_monic()
        assert x == Rational(P(3, "T+1"))

    def test_field_operations(self):
        F = GF(5)
        x = Rational(P(5, "T+1"), P(5, "T^2+2"))
        assert x * x.inverse() == Rational(Poly.one(F))
        assert (x - x).is_zero()
        assert x**-2 == (x * x).inverse()
