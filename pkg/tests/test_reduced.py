"""Closed-form matrix elements: hand values, recurrence sweeps, disambiguation."""

from fractions import Fraction

import pytest

from parafock import reduced as rm
from parafock import patterns as gz

V = rm.DEFAULT_VARIANT


def test_parity_indicator():
    assert rm.parity_indicator("E", 0) == 1
    assert rm.parity_indicator("O", -1) == 1
    assert rm.parity_indicator("E", 3) == 0
    assert rm.parity_indicator("O", 4) == 0
    with pytest.raises(ValueError):
        rm.parity_indicator("X", 1)


def test_signed_sqrt_rational_invariants():
    with pytest.raises(ValueError):
        rm.SignedSqrtRational(1, Fraction(0))
    with pytest.raises(ValueError):
        rm.SignedSqrtRational(0, Fraction(1))
    with pytest.raises(ValueError):
        rm.SignedSqrtRational(1, Fraction(-1))
    v = rm.SignedSqrtRational(-1, Fraction(9, 4))
    assert float(v) == -1.5


def test_vacuum_value_is_p():
    for m, n in ((1, 1), (2, 1), (1, 2), (2, 2), (0, 1), (0, 2)):
        top = (0,) * (m + n)
        for p in (1, 2, 3, 7):
            assert rm.reduced_me_squared(top, 1, p, m, n, V) == p


def test_cut_at_width_p():
    for p in (1, 2, 3):
        assert rm.reduced_me_squared((p, 0), 1, p, 1, 1, V) == 0


def test_fermionic_chain_m1n1():
    # (p - mu1)(mu1 + 1), forced by the recurrence and the Gram oracle
    p = 6
    for mu1 in range(p):
        assert rm.reduced_me_squared((mu1, 0), 1, p, 1, 1, V) \
            == (p - mu1) * (mu1 + 1)


def test_bosonic_values_m1n1():
    assert rm.reduced_me_squared((1, 0), 2, 5, 1, 1, V) == 2
    assert rm.reduced_me_squared((1, 1), 2, 5, 1, 1, V) == 7  # p + 2


def test_cross_family_cancellation_m2n1():
    # the even-slot closed form hits 0 * (1/0) here; pairing gives exactly 2
    for p in (1, 2, 3, 9):
        assert rm.reduced_me_squared((1, 0, 0), 2, p, 2, 1, V) == 2


def test_paraboson_string_values():
    # pure boson column: p + mu for even mu, mu + 1 for odd mu
    p = 5
    for mu in range(5):
        expect = p + mu if mu % 2 == 0 else mu + 1
        assert rm.reduced_me_squared((mu,), 1, p, 0, 1, V) == expect


def test_parafermion_string_values():
    p = 5
    for mu in range(p):
        assert rm.reduced_me_squared((mu,), 1, p, 1, 0, V) \
            == (p - mu) * (mu + 1)


def test_inadmissible_transition_is_zero_by_convention():
    assert rm.reduced_me_squared((0, 0), 2, 3, 1, 1, V) == 0
    # ... even though the raw closed form does not vanish there: the value is
    # forced to zero because the raised row is not a top row.
    num, den, outer = rm._squared_factors((0, 0), 2, 3, 1, 1, V)
    assert outer * rm._ratio(num, den, V) != 0


def test_sign_rules():
    assert rm.reduced_me((1, 1), 2, 3, 1, 1, V).sign == 1  # empty exponent sum
    assert rm.reduced_me((0, 0), 2, 3, 1, 1, V).sign == 0  # vanishing radicand
    # boson raise with an odd boson entry below it flips the sign
    val = rm.reduced_me((2, 2, 1), 2, 3, 1, 2, V)
    assert val.sign == -1
    val = rm.reduced_me((2, 2, 2), 2, 3, 1, 2, V)
    assert val.sign == 1
    for k in (1,):
        assert rm.reduced_me((1, 0, 0), k, 3, 2, 1, V).sign == 1


def test_nonnegative_in_unitary_range():
    for m, n in ((1, 1), (2, 1), (1, 2), (2, 2)):
        for p in (1, 2, 3):
            for level in range(5):
                for top in gz.top_rows_for_level(m, n, p, level, cap=True):
                    for k in range(1, m + n + 1):
                        sq = rm.reduced_me_squared(top, k, p, m, n, V)
                        assert sq >= 0, (m, n, p, top, k)
                        rm.reduced_me(top, k, p, m, n, V)  # no raise


def test_strict_policy_fails_at_vacuum():
    strict = rm.ParsingVariant(zero_policy="strict")
    with pytest.raises(rm.UncancelledZeroError):
        rm.reduced_me_squared((0, 0), 1, 2, 1, 1, strict)


def test_recurrence_residual_examples():
    for p in (1, 2, 3, 11):
        assert rm.recurrence_residual((0, 0), (0,), p, 1, 1, V) == 0
    for sub in ((0,), (1,)):
        assert rm.recurrence_residual((1, 0), sub, 2, 1, 1, V) == 0
    assert rm.recurrence_residual((1, 0, 0), (0, 0), 2, 2, 1, V) == 0


def test_recurrence_residual_rejects_bad_input():
    with pytest.raises(ValueError):
        rm.recurrence_residual((1,), (), 2, 1, 0, V)
    with pytest.raises(ValueError):
        rm.recurrence_residual((1, 0), (3,), 2, 1, 1, V)


def test_wrong_variant_fails_at_low_level():
    wrong = rm.ParsingVariant(eo_reading="indicator_of_sum")
    sweep = rm.residual_sweep(1, 1, [2, 3], 2, wrong)
    assert not sweep["ok"]


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (1, 2), (2, 2), (0, 1), (0, 2)])
def test_recurrence_sweep_default_variant(m, n):
    sweep = rm.residual_sweep(m, n, [1, 2, 3], 4, V)
    assert sweep["ok"], sweep["failures"][:3]
    assert sweep["configs"] > 0


def test_select_parsing_variant_single_domain():
    rep = rm.select_parsing_variant(1, 1, [2, 3], 4)
    assert rep["selected"] == V
    assert "mult:cancel:boson" in rep["survivors"]
    with pytest.raises(ValueError):
        rm.select_parsing_variant(1, 1, [2], 4)


def test_select_parsing_variant_joint_domain_unique():
    rep = rm.select_parsing_variant_multi(
        [(1, 1), (2, 1), (1, 2), (2, 2)], [1, 2, 3], 4)
    assert rep["selected"] == V
    assert rep["survivors"] == ["mult:cancel:boson"]


def test_printed_index_reading_fails_beyond_rank_one():
    printed = rm.ParsingVariant(boson_tail="as_printed")
    sweep = rm.residual_sweep(2, 2, [1, 2, 3], 4, printed)
    assert not sweep["ok"]
    sweep = rm.residual_sweep(1, 1, [1, 2, 3], 4, printed)
    assert sweep["ok"]  # indistinguishable at one fermionic slot


def test_variant_short_roundtrip():
    for variant in rm.ALL_VARIANTS:
        assert rm.ParsingVariant.from_short(variant.short()) == variant
