"""
Independent count of the relative intersection of two Morse-Bott tori.

The perturbed tori meet where a two-variable sparse system vanishes. Its
Newton polygons are two leg triangles, the solutions in the algebraic torus
number their mixed volume, and |p q2 - p2 q| of those lie outside the region
of interest.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List

from src.index.ech_index import q_tau_pair
from src.oracle.lattice_polygon import LatticePolygon, leg_triangle, mixed_volume
from src.orbits.orbit_model import farey_slopes
from src.utils.errors import ConsistencyError, DomainError
from src.utils.logging import get_logger

logger = get_logger(__name__)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class NewtonPair:
    first: LatticePolygon
    second: LatticePolygon
    case: str


def _pair_case(s: Fraction, s2: Fraction) -> str:
    if s == s2:
        return "equal_slope"
    if s <= HALF:
        return "lower_half"
    if s2 >= HALF:
        return "upper_half"
    return "straddling"


def newton_polygons_for_pair(p: int, q: int, p2: int, q2: int) -> NewtonPair:
    """
    Newton polygons of the system cutting out the intersection of the
    slope-p/q and slope-p2/q2 tori, p/q >= p2/q2.

    Below the half slope both tori live on the positive side and the legs are
    (p, p2) and (q - p, q2 - p2); on or above it, and across it, the roles of
    the two monomials swap.
    """
    for a, b in ((p, q), (p2, q2)):
        if b < 1 or not 0 <= a <= b or Fraction(a, b).denominator != b:
            raise DomainError(f"{a}/{b} is not a reduced slope in [0, 1].")
    s, s2 = Fraction(p, q), Fraction(p2, q2)
    if s < s2:
        raise DomainError(f"Slopes out of order: {s} < {s2}.")
    case = _pair_case(s, s2)
    near = leg_triangle(p, p2)
    far = leg_triangle(q - p, q2 - p2)
    if case in ("upper_half", "straddling"):
        near, far = far, near
    return NewtonPair(first=near, second=far, case=case)


def q_tau_oracle(p: int, q: int, p2: int, q2: int, check: bool = True) -> int:
    """
    Mixed volume of the Newton pair minus the |p q2 - p2 q| solutions outside
    the region.

    Raises:
        ConsistencyError: check is on and the count differs from q_tau_pair.
    """
    pair = newton_polygons_for_pair(p, q, p2, q2)
    value = mixed_volume(pair.first, pair.second) - abs(p * q2 - p2 * q)
    if check:
        expected = q_tau_pair(p, q, p2, q2)
        if value != expected:
            raise ConsistencyError(f"Oracle gives {value} for {p}/{q}, {p2}/{q2}; closed form gives {expected}.")
    return value


def oracle_sweep(max_q: int) -> List[Dict]:
    """Oracle and closed form for every ordered pair of slopes with denominators up to max_q."""
    slopes = farey_slopes(max_q)
    rows = []
    for i, s in enumerate(slopes):
        for s2 in slopes[: i + 1]:
            p, q, p2, q2 = s.numerator, s.denominator, s2.numerator, s2.denominator
            pair = newton_polygons_for_pair(p, q, p2, q2)
            oracle = q_tau_oracle(p, q, p2, q2, check=False)
            closed = q_tau_pair(p, q, p2, q2)
            rows.append(
                {"p": p, "q": q, "p2": p2, "q2": q2, "case": pair.case, "q_tau": closed, "oracle": oracle, "agree": oracle == closed}
            )
    mismatches = sum(not row["agree"] for row in rows)
    if mismatches:
        logger.error(f"Oracle disagrees with the closed form on {mismatches} of {len(rows)} pairs.")
    else:
        logger.success(f"Oracle agrees with the closed form on all {len(rows)} pairs up to q={max_q}.")
    return rows
