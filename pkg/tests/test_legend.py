import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cartogrammer import InputError, compute_legend, format_value, nice_number


class TestNiceNumber:
    @pytest.mark.parametrize(
        "x,expected",
        [
            (1, 1.0),
            (30, 20.0),  # log-distance 0.176 to 20 vs 0.222 to 50
            (53400, 50000.0),
            (2, 2.0),
            (5, 5.0),
            (0.03, 0.02),
            (7.0, 5.0),  # below sqrt(50) ~ 7.07, the log midpoint of 5 and 10
            (7.2, 10.0),  # just above it
            (900, 1000.0),
        ],
    )
    def test_examples(self, x, expected):
        assert nice_number(x) == pytest.approx(expected, rel=1e-12)

    def test_tie_breaks_toward_smaller(self):
        # sqrt(10) is equidistant between 2 and 5 in log space
        assert nice_number(math.sqrt(10.0)) == pytest.approx(2.0)
        # sqrt(2) is equidistant between 1 and 2
        assert nice_number(math.sqrt(2.0)) == pytest.approx(1.0)

    def test_rejects_non_positive(self):
        for bad in (0, -1, math.nan, math.inf):
            with pytest.raises(InputError):
                nice_number(bad)

    @given(st.floats(min_value=1e-12, max_value=1e12))
    @settings(max_examples=300, deadline=None)
    def test_bounded_log_distance_and_membership(self, x):
        n = nice_number(x)
        assert max(x / n, n / x) <= math.sqrt(5.0) + 1e-12
        mantissa = n / 10 ** math.floor(math.log10(n) + 1e-12)
        assert min(abs(mantissa - m) for m in (1.0, 2.0, 5.0, 10.0)) < 1e-9


class TestFormatValue:
    @pytest.mark.parametrize(
        "value,unit,expected",
        [
            (384300, "€", "384,300 €"),
            (375.4e9, "€", "375.4 billion €"),
            (0, "", "0"),
            (1500000, "persons", "1.5 million persons"),
            (999999, "", "999,999"),
            (1e6, "", "1 million"),
            (1234.5, "", "1,234.5"),
            (2.5e12, "$", "2.5 trillion $"),
            (123456789, "", "123.5 million"),
            (8.9e15, "", "8900 trillion"),
            (1.5e16, "", "15,000 trillion"),
        ],
    )
    def test_examples(self, value, unit, expected):
        assert format_value(value, unit) == expected

    def test_rejects_negative_and_non_finite(self):
        for bad in (-1, math.inf, math.nan):
            with pytest.raises(InputError):
                format_value(bad)


class TestComputeLegend:
    def test_austria_population_example(self):
        legend = compute_legend(8.9e6, "persons", 1.5e5)
        assert legend.value == 50000.0
        assert legend.side_px == pytest.approx(29.0, abs=0.05)
        assert legend.label == "represents 50,000 persons"
        assert legend.color == "#707070"
        # key fraction of the total sits in the reported band
        assert 0.005 <= legend.value / 8.9e6 <= 0.009

    def test_square_anchor_arithmetic(self):
        legend = compute_legend(900.0, "", 900.0)
        assert legend.value == 1000.0
        assert legend.side_px == pytest.approx(math.sqrt(1000.0), rel=1e-12)

    def test_exact_value_identity(self):
        legend = compute_legend(1234.5, "u", 98765.0)
        assert legend.side_px**2 * (1234.5 / 98765.0) == pytest.approx(
            legend.value, rel=1e-12
        )

    @given(
        v=st.floats(min_value=1e-6, max_value=1e15),
        a=st.floats(min_value=1e2, max_value=1e7),
    )
    @settings(max_examples=300, deadline=None)
    def test_side_always_near_30px(self, v, a):
        legend = compute_legend(v, "", a)
        assert 30.0 / 5.0**0.25 - 1e-9 <= legend.side_px <= 30.0 * 5.0**0.25 + 1e-9

    def test_rejects_bad_inputs(self):
        with pytest.raises(InputError):
            compute_legend(0, "", 100)
        with pytest.raises(InputError):
            compute_legend(100, "", 0)
