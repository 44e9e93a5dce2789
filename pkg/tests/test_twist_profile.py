import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from src.geometry.twist_profile import (
    h_of_position,
    monodromy_shift,
    position_of_slope,
    position_of_slope_numeric,
    r_tilde,
    slope_at,
)
from src.utils.errors import DomainError

QUARTER_POSITION = 1 / (2 * math.sqrt(3))

interior_slopes = st.builds(
    Fraction, st.integers(1, 49), st.just(50)
).filter(lambda s: 0 < s < 1)


def test_r_tilde_values():
    assert r_tilde(0.0) == -0.25
    assert r_tilde(QUARTER_POSITION) == pytest.approx(-1 / (4 * math.sqrt(3)), abs=1e-12)


@given(st.floats(min_value=1e-6, max_value=1e6))
def test_r_tilde_stays_between_minus_quarter_and_zero(t):
    assert -0.25 < r_tilde(t) < 0


def test_r_tilde_general_radius():
    assert r_tilde(0.0, r=2.0) == -0.5


def test_slope_at_values():
    assert slope_at(0.0) == 0.5
    assert slope_at(QUARTER_POSITION) == pytest.approx(0.25, abs=1e-12)


def test_position_of_slope_values():
    assert position_of_slope(Fraction(1, 2)) == 0.0
    assert position_of_slope(Fraction(1, 4)) == pytest.approx(QUARTER_POSITION, abs=1e-12)
    assert position_of_slope(Fraction(3, 4)) == pytest.approx(-QUARTER_POSITION, abs=1e-12)


@pytest.mark.parametrize("bad", [Fraction(0), Fraction(1), Fraction(3, 2), -0.1])
def test_position_of_slope_rejects_boundary_and_outside(bad):
    with pytest.raises(DomainError):
        position_of_slope(bad)


def test_negative_argument_rejected():
    with pytest.raises(DomainError):
        slope_at(-1.0)
    with pytest.raises(DomainError):
        r_tilde(-1.0)


@given(interior_slopes)
def test_position_inverts_slope(s):
    x0 = position_of_slope(s)
    assert slope_at(abs(x0)) == pytest.approx(float(min(s, 1 - s)), abs=1e-12)
    assert (x0 >= 0) == (s <= Fraction(1, 2))


@given(interior_slopes)
def test_root_finder_matches_closed_form(s):
    assert position_of_slope_numeric(s) == pytest.approx(position_of_slope(s), abs=1e-10)


@given(interior_slopes)
def test_monodromy_shift_recovers_slope(s):
    assert monodromy_shift(position_of_slope(s)) == pytest.approx(float(s), abs=1e-12)


def test_monodromy_shift_half_turn_on_zero_section():
    assert monodromy_shift(0.0) == 0.5


def test_h_of_position():
    assert h_of_position(0.0) == 0.0
    assert h_of_position(math.sinh(2) / 2) == pytest.approx(1.0, abs=1e-12)
    assert h_of_position(-0.3) == h_of_position(0.3)


@given(st.floats(min_value=0.0, max_value=50.0), st.floats(min_value=1e-3, max_value=1.0))
def test_r_tilde_second_differences_nonpositive(start, step):
    values = [r_tilde(start + k * step) for k in range(12)]
    second = [a - 2 * b + c for a, b, c in zip(values, values[1:], values[2:])]
    assert max(second) <= 1e-12
