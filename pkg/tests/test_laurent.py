import pytest
from hypothesis import given, strategies as st

from braid3.laurent import ExactDivisionError, LaurentPoly, ONE, T, ZERO, render

polys_st = st.dictionaries(st.integers(-6, 6), st.integers(-9, 9),
                           max_size=6).map(LaurentPoly)


class TestArithmetic:
    def test_zero_is_empty(self):
        assert (T - T).is_zero
        assert LaurentPoly({3: 0}) == ZERO

    def test_ring_axioms_sampled(self):
        @given(polys_st, polys_st, polys_st)
        def axioms(p, q, r):
            assert p + q == q + p
            assert p * q == q * p
            assert p * (q + r) == p * q + p * r
            assert (p * q) * r == p * (q * r)
        axioms()

    def test_shift_and_reverse(self):
        p = LaurentPoly({-1: 1, 0: -1, 1: 1})
        assert p.shift(2) == LaurentPoly({1: 1, 2: -1, 3: 1})
        assert p.reverse() == p
        assert T.reverse() == LaurentPoly({-1: 1})

    def test_eval(self):
        p = LaurentPoly({-2: 1, 0: -3, 2: 1})
        assert p(1) == -1
        assert p(-1) == -1
        with pytest.raises(ValueError):
            p(2)

    def test_degrees(self):
        p = LaurentPoly({-1: 2, 3: -1})
        assert (p.min_exp, p.max_exp, p.span) == (-1, 3, 4)
        assert (p.leading, p.trailing) == (-1, 2)
        with pytest.raises(ValueError):
            ZERO.min_exp


class TestDivision:
    def test_exact(self):
        comb = LaurentPoly({0: 1, 1: 1, 2: 1})
        prod = comb * LaurentPoly({-2: 3, 0: -1, 1: 7})
        assert prod.divexact(comb) == LaurentPoly({-2: 3, 0: -1, 1: 7})

    def test_units(self):
        p = LaurentPoly({-3: 5, 2: -4})
        assert p.divexact(LaurentPoly({1: -1})) == p.shift(-1) * LaurentPoly({0: -1})

    def test_inexact_raises(self):
        with pytest.raises(ExactDivisionError):
            (T + ONE).divexact(LaurentPoly({0: 1, 1: 1, 2: 1}))
        with pytest.raises(ExactDivisionError):
            LaurentPoly({0: 3}).divexact(LaurentPoly({0: 2}))

    def test_zero_dividend(self):
        assert ZERO.divexact(T) == ZERO
        with pytest.raises(ZeroDivisionError):
            ONE.divexact(ZERO)

    @given(polys_st, polys_st)
    def test_roundtrip(self, p, q):
        if q.is_zero:
            return
        assert (p * q).divexact(q) == p


class TestRender:
    def test_style(self):
        assert render(LaurentPoly({1: 1, 0: -1, -1: 1})) == "t - 1 + t^-1"
        assert render(LaurentPoly({1: -1, 0: 3, -1: -1})) == "-t + 3 - t^-1"
        assert render(LaurentPoly({2: 2})) == "2 t^2"
        assert render(ZERO) == "0"
        assert render(ONE) == "1"

    def test_half_exponents(self):
        assert render(LaurentPoly({1: 1, -1: -1}), half_exponents=True) \
            == "t^1/2 - t^-1/2"
        assert render(LaurentPoly({2: 1, 0: -3, -2: 1}), half_exponents=True) \
            == "t - 3 + t^-1"
