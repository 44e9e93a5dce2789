"""
Model twist profile of the annulus around the vanishing cycle.

The profile R̃_r(t) = t/2 - sqrt(r^2 + 4t^2)/4 is used with r = 1 on the
working region; the slope function is its derivative and decreases strictly
from 1/2 at the zero section towards 0 at infinity.
"""
import math
from fractions import Fraction
from typing import Optional, Union

import numpy as np
from scipy.optimize import brentq

from src.utils.errors import DomainError
from src.utils.logging import get_logger

logger = get_logger(__name__)

Slope = Union[Fraction, float]

# brentq bracket; slopes at or below this are treated as out of reach
_NUMERIC_BRACKET = 1e8


def r_tilde(t: float, r: float = 1.0) -> float:
    if t < 0:
        raise DomainError(f"r_tilde is defined for t >= 0, got {t}.")
    if r <= 0:
        raise DomainError(f"Fibre radius must be positive, got {r}.")
    return t / 2.0 - math.sqrt(r * r + 4.0 * t * t) / 4.0


def slope_at(t: float) -> float:
    if t < 0:
        raise DomainError(f"slope_at is defined for t >= 0, got {t}.")
    return 0.5 - t / math.sqrt(1.0 + 4.0 * t * t)


def _as_fraction(s: Slope) -> Fraction:
    return s if isinstance(s, Fraction) else Fraction(s)


def position_of_slope(s: Slope, half_width: Optional[float] = None) -> float:
    """
    Signed annulus coordinate x0 of the Morse-Bott torus of slope s.

    Slopes below 1/2 sit on the positive side, slopes above 1/2 on the
    negative side, and slope 1/2 is the zero section.

    Args:
        s: Slope in the open interval (0, 1).
        half_width: When given, a torus with |x0| beyond it is reported.

    Returns:
        x0 with slope_at(|x0|) = min(s, 1 - s).
    """
    frac = _as_fraction(s)
    if not 0 < frac < 1:
        raise DomainError(f"Slope {s} must lie strictly between 0 and 1.")
    if frac > Fraction(1, 2):
        x0 = -position_of_slope(1 - frac)
    else:
        value = float(frac)
        x0 = (1.0 - 2.0 * value) / (4.0 * math.sqrt(value * (1.0 - value)))
    if half_width is not None and abs(x0) > half_width:
        logger.warning(
            f"Torus of slope {frac} sits at |x0| = {abs(x0):.6g}, outside the annulus of half-width {half_width}."
        )
    return x0


def position_of_slope_numeric(s: Slope) -> float:
    """Invert slope_at with a bracketing root finder instead of the closed form."""
    frac = _as_fraction(s)
    if not 0 < frac < 1:
        raise DomainError(f"Slope {s} must lie strictly between 0 and 1.")
    target = float(min(frac, 1 - frac))
    if target == 0.5:
        return 0.0
    root = brentq(
        lambda t: slope_at(t) - target, 0.0, _NUMERIC_BRACKET, xtol=1e-15, rtol=4 * np.finfo(float).eps
    )
    return root if frac < Fraction(1, 2) else -root


def h_of_position(x0: float) -> float:
    # cosh^2 h = sqrt(x0^2 + 1/4) + 1/2  <=>  |x0| = sinh(2h)/2
    return math.asinh(2.0 * abs(x0)) / 2.0


def monodromy_shift(x: float) -> float:
    """
    Fibre rotation y -> y + shift (in turns, mod 1) of the twist map at x.

    The positive side advances by R̃'(x) and the negative side falls back by
    R̃'(|x|); both meet at a half turn on the zero section, so the shift
    decreases from 1 to 0 across the annulus and equals s at
    position_of_slope(s).
    """
    if x >= 0:
        return slope_at(x)
    return 1.0 - slope_at(-x)
