import pytest

from vmzv.algebra import GF, BiPoly, Poly, Rational
from vmzv.andersonthakur import at_coeffs, at_degree_ok, at_poly, f_factor, generating_identity_residual
from vmzv.carlitz import carlitz_gamma

from oracles import exact_L, monic_polys


def specialize(H, d):
    """H(t -> T, T -> T^(q^d)) as a polynomial in T."""
    F = H.field
    out = Poly.zero(F)
    for (i, j), c in H.terms.items():
        out = out + Poly.const(F, c) * Poly.monomial(F, i + j * F.q**d)
    return out


def power_sum(F, d, s):
    total = Rational(Poly.zero(F))
    for a in monic_polys(F, d):
        total = total + Rational(Poly.one(F), a**s)
    return total


class TestGolden:
    def test_char_two(self):
        F = GF(2)
        assert str(at_poly(F, 3)) == "t^2+t"
        assert str(at_poly(F, 2)) == "t+T^2"
        assert str(at_poly(F, 0)) == "1"

    def test_char_three(self):
        assert str(at_poly(GF(3), 4)) == "2*t+T^3"

    def test_small_n_is_one(self):
        for q in (2, 3, 4):
            for n in range(q - 1):
                assert str(at_poly(GF(q), n)) == "1"

    def test_coefficients(self):
        F = GF(2)
        c = at_coeffs(F, "4,1")
        assert [[str(u) for u in row] for row in c.coeffs] == [["0", "1", "1"], ["1"]]
        assert c.degrees == (2, 0)

    def test_f_factor(self):
        F = GF(2)
        assert str(f_factor(F, 1)) == "t^2+T^2"
        assert str(f_factor(F, 0)) == "1"


@pytest.mark.parametrize("q,smax,dmax", [(2, 8, 3), (3, 7, 2), (4, 5, 1), (5, 5, 1)])
def test_power_sum_interpolation(q, smax, dmax):
    """Gamma_s * L_d^s * (sum of 1/a^s over monic a of degree d) equals a twisted specialization of H_{s-1}."""
    F = GF(q)
    for s in range(1, smax + 1):
        H = at_poly(F, s - 1)
        for d in range(dmax + 1):
            lhs = Rational(carlitz_gamma(F, s) * exact_L(F, d) ** s) * power_sum(F, d, s)
            assert lhs == Rational(specialize(H, d)), (s, d)


@pytest.mark.parametrize("q,nmax", [(2, 12), (3, 10), (4, 8)])
def test_generating_identity(q, nmax):
    assert all(num.is_zero() for num, _ in generating_identity_residual(GF(q), nmax))


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_degree_bound(q):
    F = GF(q)
    for s in range(1, 10):
        assert at_degree_ok(F, s)


def test_results_are_polynomial_in_both_variables():
    F = GF(3)
    for n in range(20):
        H = at_poly(F, n)
        assert isinstance(H, BiPoly) and not H.is_zero()
