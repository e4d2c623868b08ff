from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regenalloc import (
    Allocation,
    SystemParams,
    format_ratio,
    parse_ratio,
    storage_cost,
    validate,
)

FIG_REGION = SystemParams(n1=8, n2=2, k=6, d=8, file_size="66", beta="3.3")
FIG_GRAPH = SystemParams(n1=2, n2=2, k=2, d=3, file_size="4", beta="1")

ratios = st.fractions(min_value=-100, max_value=100, max_denominator=1000)
nonneg_ratios = st.fractions(min_value=0, max_value=100, max_denominator=1000)


def test_validate_reference_instances():
    assert validate(FIG_REGION).ok
    assert validate(FIG_GRAPH).ok


def test_validate_rejects_missing_survivor_margin():
    # d = 2 leaves no d surviving helpers after one failure when n = 2
    bad = SystemParams(n1=1, n2=1, k=2, d=2, file_size="1", beta="1")
    report = validate(bad)
    assert not report.ok
    assert any("d must satisfy" in v for v in report.violations)


def test_validate_reports_every_violation():
    report = validate(SystemParams(n1=-1, n2=0, k=0, d=0, file_size="0", beta="-1", c1="0", c2="1"))
    assert not report.ok
    assert len(report.violations) >= 4


def test_storage_cost_examples():
    # oracle: one-line arithmetic, 8*11.22 + 2*11.22 = 112.2
    alloc = Allocation("11.22", "11.22")
    assert storage_cost(FIG_REGION, alloc) == Fraction("112.2")

    assert storage_cost(FIG_REGION, Allocation(0, 0)) == 0

    # oracle: 0.2*8*19.8 + 1.8*2*3.3 = 31.68 + 11.88 = 43.56
    skewed = SystemParams(n1=8, n2=2, k=6, d=8, file_size="66", beta="3.3", c1="0.2", c2="1.8")
    assert storage_cost(skewed, Allocation("19.8", "3.3")) == Fraction("43.56")


@settings(max_examples=60, deadline=None)
@given(a1=nonneg_ratios, a2=nonneg_ratios, b1=nonneg_ratios, b2=nonneg_ratios,
       lam=st.fractions(min_value=0, max_value=10, max_denominator=100))
def test_storage_cost_is_linear(a1, a2, b1, b2, lam):
    summed = Allocation(a1 + b1, a2 + b2)
    assert storage_cost(FIG_REGION, summed) == (
        storage_cost(FIG_REGION, Allocation(a1, a2))
        + storage_cost(FIG_REGION, Allocation(b1, b2))
    )
    scaled = Allocation(lam * a1, lam * a2)
    assert storage_cost(FIG_REGION, scaled) == lam * storage_cost(FIG_REGION, Allocation(a1, a2))


def test_parse_ratio_accepts_decimal_and_fraction_syntax():
    assert parse_ratio("3.3") == Fraction(33, 10)
    assert parse_ratio("33/10") == Fraction(33, 10)
    assert parse_ratio("  -1.5 ") == Fraction(-3, 2)
    assert parse_ratio(7) == Fraction(7)


def test_parse_ratio_rejects_floats():
    with pytest.raises(TypeError):
        parse_ratio(3.3)


def test_ratio_is_always_reduced():
    value = parse_ratio("28/70")
    assert (value.numerator, value.denominator) == (2, 5)
    assert value.denominator > 0


def test_format_ratio_exact_decimals():
    assert format_ratio(Fraction("11.22")) == "11.22"
    assert format_ratio(Fraction(66)) == "66"
    assert format_ratio(Fraction(0)) == "0"
    assert format_ratio(Fraction("-0.125")) == "-0.125"


def test_format_ratio_rounds_nonterminating():
    assert format_ratio(Fraction(1, 3)) == "0.333333333333"
    assert format_ratio(Fraction(2, 3), significant_digits=4) == "0.6667"


@settings(max_examples=200, deadline=None)
@given(
    whole=st.integers(min_value=-10**12, max_value=10**12),
    frac_digits=st.text(alphabet="0123456789", min_size=0, max_size=9),
)
def test_decimal_round_trip_is_lossless(whole, frac_digits):
    text = str(whole) + ("." + frac_digits if frac_digits else "")
    value = parse_ratio(text)
    assert parse_ratio(format_ratio(value)) == value


def test_params_are_immutable():
    with pytest.raises(AttributeError):
        FIG_REGION.beta = Fraction(1)  # type: ignore[misc]
    with pytest.raises(AttributeError):
        Allocation(1, 1).alpha1 = Fraction(2)  # type: ignore[misc]
