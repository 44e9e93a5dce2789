"""
Index relations for holomorphic curves in the Lefschetz cobordism, and the
finite search classifying index-zero curves with zero self-intersection.
"""
from itertools import product
from typing import Iterator, List

from src.utils.errors import RegimeError
from src.utils.logging import get_logger
from src.validator.data_model import CurveData, SearchCaps, TwistProfile

logger = get_logger(__name__)


def fredholm_index(c: CurveData, profile: TwistProfile) -> int:
    return (
        2 * c.genus
        - 2
        + c.hyperbolic_ends
        + 2 * c.degree
        + 4 * c.fiber_mult * (1 - profile.fiber_genus)
        + 2 * c.q_positive_ends
    )


def self_intersection_doubled(c: CurveData, profile: TwistProfile) -> int:
    """2 C.C from the adjunction-type relation with the Fredholm index."""
    return (
        2 * c.genus
        - 2
        + fredholm_index(c, profile)
        + c.hyperbolic_ends
        + 2 * c.q_negative_mult
        + 4 * c.double_points
    )


def _search_space(profile: TwistProfile, caps: SearchCaps) -> Iterator[CurveData]:
    for genus, m, q, delta in product(
        range(caps.max_genus + 1),
        range(caps.max_fiber_mult + 1),
        range(profile.degree_bound + 1),
        range(caps.max_double_points + 1),
    ):
        # a closed curve of degree 0 is a multiple of the fibre
        if q == 0 and m == 0:
            continue
        for h in range(q + 1):
            for e_plus in range(q - h + 1):
                for e_q in range(q - h - e_plus + 1):
                    yield CurveData(
                        genus=genus,
                        hyperbolic_ends=h,
                        q_positive_ends=e_plus,
                        q_negative_mult=e_q,
                        double_points=delta,
                        degree=q,
                        fiber_mult=m,
                    )


def classify_index_zero_curves(
    profile: TwistProfile, caps: SearchCaps = SearchCaps(), require_index_zero: bool = True
) -> List[CurveData]:
    """
    Every curve descriptor within the caps with C.C = 0, and ind = 0 unless
    require_index_zero is off.

    Raises:
        RegimeError: The degree bound is not below g(F) - 1.
    """
    Q, genus = profile.degree_bound, profile.fiber_genus
    if Q >= genus - 1:
        raise RegimeError(f"Classification needs Q < g(F) - 1, got Q={Q}, g(F)={genus}.")
    found = []
    searched = 0
    for c in _search_space(profile, caps):
        searched += 1
        if require_index_zero and fredholm_index(c, profile) != 0:
            continue
        if self_intersection_doubled(c, profile) == 0:
            found.append(c)
    logger.debug(f"Searched {searched} curve descriptors at Q={Q}, g(F)={genus}; {len(found)} match.")
    return found
