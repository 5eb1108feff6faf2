from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cphi6.etaq import (
    GENERATORS,
    EtaParseError,
    EtaQuotient,
    PochProduct,
    clear_cache,
    euler_product,
    expand_eta,
    expand_poch,
    named_generator,
)
from cphi6.series import EXACT, CoeffRing, Series, invert

MOD = CoeffRing.mod3k(12)


def pentagonal(n):
    """(q; q)_inf up to q^(n-1) from Euler's pentagonal number theorem."""
    out = [0] * n
    k = 0
    while True:
        hit = False
        for j in ((k * (3 * k - 1)) // 2, (k * (3 * k + 1)) // 2):
            if j < n:
                out[j] = (-1) ** k
                hit = True
        if not hit:
            return out
        k += 1


def naive_eta(eq, n):
    """prod (1 - q^(k m))^e by repeated list multiplication and division by (1 - q^j)."""
    out = [1] + [0] * (n - 1)
    for k, e in eq.factors:
        for m in range(k, n, k):
            for _ in range(abs(e)):
                if e > 0:
                    for i in range(n - 1, m - 1, -1):
                        out[i] -= out[i - m]
                else:
                    for i in range(m, n):
                        out[i] += out[i - m]
    return out


class TestParse:
    def test_roundtrip(self):
        eq = EtaQuotient.parse(" 12:4, 2:2,6:-2 ,4:-4")
        assert eq == GENERATORS["t"]
        assert str(eq) == "12:4,2:2,6:-2,4:-4"

    @pytest.mark.parametrize("text", ["", "12", "a:1", "0:3", "1:2:3", "2:1.5"])
    def test_rejects(self, text):
        with pytest.raises(EtaParseError):
            EtaQuotient.parse(text)

    def test_exponents_merge(self):
        assert EtaQuotient.parse("1:2,1:-2,3:1").exponents() == {3: 1}


class TestOrders:
    @pytest.mark.parametrize("name, order", [("t", 1), ("y", 0), ("p0", 0), ("p1", 0), ("A", -3), ("B", -1)])
    def test_generator_orders(self, name, order):
        assert GENERATORS[name].q_order() == order
        f = expand_eta(GENERATORS[name], EXACT, 10)
        assert f.ord == order and f.lead == 1

    def test_fractional_order_rejected(self):
        eq = EtaQuotient.parse("1:1,2:1")
        assert eq.q_order() == Fraction(1, 8)
        with pytest.raises(ValueError):
            expand_eta(eq, EXACT, 5)

    def test_scaled(self):
        assert GENERATORS["t"].scaled(3).q_order() == 3


class TestExpansion:
    def test_euler_product_is_pentagonal(self):
        assert euler_product(EXACT, 300).coefficients(0, 300) == pentagonal(300)

    def test_partition_numbers(self):
        p = invert(euler_product(EXACT, 12))
        assert p.coefficients(0, 12) == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56]

    def test_poch_matches_euler(self):
        pp = PochProduct(((1, 1, 1, 3),))
        assert expand_poch(pp, EXACT, 60).agrees(euler_product(EXACT, 60) ** 3)

    def test_poch_with_b_zero(self):
        # (-1; q)_inf = 2 (-q; q)_inf
        a = expand_poch(PochProduct(((-1, 0, 1, 1),)), EXACT, 20)
        b = expand_poch(PochProduct(((-1, 1, 1, 1),)), EXACT, 20)
        assert a.agrees(b * 2)
        with pytest.raises(ZeroDivisionError):
            expand_poch(PochProduct(((1, 0, 1, -1),)), EXACT, 5)

    @pytest.mark.parametrize("name", ["t", "y", "A", "B"])
    def test_against_naive_product(self, name):
        eq = GENERATORS[name]
        start = int(eq.q_order())
        assert expand_eta(eq, EXACT, start + 40).coefficients(start, start + 40) == naive_eta(eq, 40)

    def test_mod_ring_agrees_with_exact(self):
        for name in ("t", "A", "p0"):
            a = expand_eta(GENERATORS[name], EXACT, 200)
            b = expand_eta(GENERATORS[name], MOD, 200)
            assert [c % 3**12 for c in a.coefficients()] == b.coefficients()

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.tuples(st.integers(1, 12), st.integers(-4, 4)), min_size=1, max_size=4),
           st.lists(st.tuples(st.integers(1, 12), st.integers(-4, 4)), min_size=1, max_size=4))
    def test_multiplicative(self, f1, f2):
        e1, e2 = EtaQuotient(tuple(f1)), EtaQuotient(tuple(f2))
        if e1.q_order().denominator != 1 or e2.q_order().denominator != 1:
            return
        prod = expand_eta(e1 * e2, EXACT, 40)
        assert prod.agrees(expand_eta(e1, EXACT, 60) * expand_eta(e2, EXACT, 60))


class TestGroupIdentities:
    N = 200

    def test_y(self):
        t = named_generator("t", EXACT, self.N)
        y = named_generator("y", EXACT, self.N)
        assert (y * (1 - t * 3)).agrees(Series.one(EXACT, self.N))

    def test_p0_p1(self):
        t = named_generator("t", EXACT, self.N)
        assert named_generator("p0", EXACT, self.N).agrees((t + 1) ** 4)
        assert named_generator("p1", EXACT, self.N).agrees((t + 1) ** 2)

    def test_cache_serves_longer_requests(self):
        clear_cache()
        short = named_generator("B", EXACT, 20)
        long = named_generator("B", EXACT, 80)
        assert long.prec >= 80 and short.prec >= 20
        assert named_generator("B", EXACT, 20).agrees(long)

    def test_unknown_name(self):
        with pytest.raises(KeyError):
            named_generator("z", EXACT, 10)
