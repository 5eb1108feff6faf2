import pytest
from hypothesis import given
from hypothesis import strategies as st

from cphi6.frob6 import (
    CphiTable,
    PrecisionShortfall,
    check_known_congruences,
    check_theorem,
    cphi6_enumerate,
    cphi6_oracle_andrews,
    cphi6_series,
    lambda_alpha,
    theorem_modulus_exponent,
)
from cphi6.series import EXACT, CoeffRing

# frozen from cphi6_oracle_andrews, which shares no code with cphi6_series
FROZEN = [1, 36, 297, 1588, 6795, 24948, 81882, 246672, 693495, 1841240, 4657806,
          11302524, 26447631, 59932584, 131980725, 283256612, 593915814, 1219103244,
          2454124035, 4852444500]


def test_series_matches_frozen_oracle_values():
    assert list(cphi6_series(EXACT, 20).values) == FROZEN


def test_andrews_oracle_agrees_to_40():
    assert cphi6_oracle_andrews(40).values == cphi6_series(EXACT, 41).values


def test_andrews_oracle_other_k():
    # k = 1 gives the ordinary partition numbers
    assert list(cphi6_oracle_andrews(8, k=1).values) == [1, 1, 2, 3, 5, 7, 11, 15, 22]
    # k = 2: two-colored Frobenius partitions start 1, 4, 9, 20
    assert list(cphi6_oracle_andrews(3, k=2).values) == [1, 4, 9, 20]


def test_enumeration_agrees():
    assert [cphi6_enumerate(n) for n in range(7)] == FROZEN[:7]
    assert cphi6_enumerate(-1) == 0
    with pytest.raises(ValueError):
        cphi6_enumerate(9)


def test_mod_ring_commutes():
    exact = cphi6_series(EXACT, 300).values
    mod = cphi6_series(CoeffRing.mod3k(8), 300).values
    assert [c % 3**8 for c in exact] == list(mod)


def test_table_shortfall():
    table = CphiTable(EXACT, (1, 36))
    assert table[1] == 36
    with pytest.raises(PrecisionShortfall):
        table[2]


class TestLambda:
    def test_values(self):
        assert [lambda_alpha(a) for a in range(1, 5)] == [1, 7, 7, 61]

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            lambda_alpha(0)

    @given(st.integers(1, 20))
    def test_congruence_and_pairing(self, a):
        assert (4 * lambda_alpha(a) - 1) % 3**a == 0
        if a % 2 == 0:
            assert lambda_alpha(a) == lambda_alpha(a + 1)

    def test_modulus_exponent(self):
        assert [theorem_modulus_exponent(a) for a in range(1, 6)] == [2, 3, 3, 4, 4]


def test_theorem_small():
    report = check_theorem(3, 30)
    assert report.passed and len(report.checks) == 3
    assert FROZEN[1] % 9 == 0 and FROZEN[7] % 27 == 0


def test_theorem_guard_too_small():
    with pytest.raises(ValueError):
        check_theorem(4, 5, K_guard=3)


def test_theorem_detects_a_bad_table():
    values = list(cphi6_series(EXACT, 40).values)
    values[3 * 4 + 1] += 1
    report = check_theorem(1, 10, table=CphiTable(EXACT, tuple(values)))
    assert not report.passed
    assert report.checks[0].witness.startswith("n=4")


def test_known_small_families():
    report = check_known_congruences(60, big_terms={})
    assert report.passed and len(report.checks) == 2
    assert FROZEN[2] == 27 * 11
