"""
ECH index of orbit sets in the twist model, relative to the empty set.

The index is computed three ways that must agree: the closed form over the
slope-sorted orbit list, the doubled area of the region under the convex
lattice path, and the defining sum of the relative Chern number, the relative
self-intersection and the Conley-Zehnder terms.
"""
from math import gcd
from typing import Iterable, List, Mapping, Optional, Sequence, Tuple

from src.orbits.orbit_model import OrbitFamily, OrbitKind, OrbitSet
from src.utils.errors import ConsistencyError, DomainError
from src.utils.logging import get_logger
from src.validator.data_model import TwistProfile

logger = get_logger(__name__)

CZ_TABLE: Mapping[OrbitFamily, int] = {
    OrbitFamily.SLOPE_ELLIPTIC: -1,
    OrbitFamily.SLOPE_HYPERBOLIC: 0,
    OrbitFamily.MORSE_POSITIVE: -1,
    OrbitFamily.MORSE_NEGATIVE: 1,
    OrbitFamily.MORSE_SADDLE: 0,
}

# index of m copies of the disk over an interior critical point, per unit of m
MORSE_INDEX_PER_UNIT: Mapping[OrbitFamily, int] = {
    OrbitFamily.MORSE_POSITIVE: 0,
    OrbitFamily.MORSE_NEGATIVE: 2,
    OrbitFamily.MORSE_SADDLE: 1,
}


def conley_zehnder(
    kind: OrbitKind, iterate: int = 1, degree_bound: Optional[int] = None, cz_table: Mapping[OrbitFamily, int] = CZ_TABLE
) -> int:
    """
    Conley-Zehnder index of the k-th iterate in the fibre trivialization.

    Elliptic values are constant only for iterates up to the degree bound.
    """
    if iterate < 1:
        raise DomainError(f"Iterate must be positive, got {iterate}.")
    if kind.is_elliptic and degree_bound is not None and iterate > degree_bound:
        raise DomainError(f"Iterate {iterate} of {kind} exceeds the degree bound {degree_bound}.")
    return cz_table[kind.family]


def relative_chern(alpha: OrbitSet) -> int:
    # slope orbits contribute their degree, each Morse disk contributes one
    return sum(kind.degree * mult for kind, mult in alpha)


def _check_coprime(p: int, q: int) -> None:
    if q < 1 or not 0 <= p <= q or gcd(p, q) != 1:
        raise DomainError(f"{p}/{q} is not a reduced slope in [0, 1].")


def q_tau_pair(p: int, q: int, p2: int, q2: int) -> int:
    """
    Relative intersection of the tori of slopes p/q >= p2/q2.

    min{p(q2 - p2), p2(q - p)}; on the diagonal this is p(q - p).
    """
    _check_coprime(p, q)
    _check_coprime(p2, q2)
    if p * q2 < p2 * q:
        raise DomainError(f"Slopes out of order: {p}/{q} < {p2}/{q2}.")
    return min(p * (q2 - p2), p2 * (q - p))


def q_tau_pairing(a: OrbitKind, b: OrbitKind) -> int:
    """Symmetric pairing of two slope orbits; the steeper one goes first."""
    if a.slope < b.slope:
        a, b = b, a
    return q_tau_pair(a.p, a.q, b.p, b.q)


def _cross_sum(flat: Sequence[Tuple[int, int]]) -> int:
    """Sum over i < j of p_i q_j - p_j q_i, via running prefix sums."""
    total = 0
    p_prefix = q_prefix = 0
    for p, q in flat:
        total += p_prefix * q - q_prefix * p
        p_prefix += p
        q_prefix += q
    return total


def _totals(flat: Sequence[Tuple[int, int]]) -> Tuple[int, int]:
    return sum(p for p, _ in flat), sum(q for _, q in flat)


def q_tau_flat(alpha: OrbitSet) -> int:
    flat = alpha.flat_slope_list()
    P, Q = _totals(flat)
    return P * (Q - P) - _cross_sum(flat)


def q_tau_bilinear(alpha: OrbitSet) -> int:
    entries = alpha.slope_entries()
    total = sum(mult * mult * kind.p * (kind.q - kind.p) for kind, mult in entries)
    for i, (a, m_a) in enumerate(entries):
        for b, m_b in entries[i + 1:]:
            total += 2 * m_a * m_b * q_tau_pairing(a, b)
    return total


def q_tau_total(alpha: OrbitSet) -> int:
    """
    Relative self-intersection of the slope part.

    Morse orbits bound disjoint disks and add nothing.

    Raises:
        ConsistencyError: The flat-list and bilinear expansions disagree.
    """
    flat = q_tau_flat(alpha)
    bilinear = q_tau_bilinear(alpha)
    if flat != bilinear:
        raise ConsistencyError(f"Q_tau of {alpha}: flat form {flat} != bilinear form {bilinear}.")
    return flat


def morse_index(alpha: OrbitSet) -> int:
    return sum(MORSE_INDEX_PER_UNIT[kind.family] * mult for kind, mult in alpha.morse_entries())


def ech_index_sum(alpha: OrbitSet) -> int:
    flat = alpha.flat_slope_list()
    P, Q = _totals(flat)
    slope_index = Q + P * (Q - P) - _cross_sum(flat) - alpha.elliptic_multiplicity()
    return slope_index + morse_index(alpha)


def path_vertices(alpha: OrbitSet) -> List[Tuple[int, int]]:
    """
    Boundary of the region under the convex path: the origin, the partial
    sums of the slope edge vectors, then the foot (P, 0).
    """
    vertices = [(0, 0)]
    x = y = 0
    for p, q in alpha.flat_slope_list():
        x, y = x + p, y + q
        vertices.append((x, y))
    vertices.append((x, 0))
    return vertices


def shoelace2(vertices: Sequence[Tuple[int, int]]) -> int:
    """Twice the enclosed area of a closed polygon, exact."""
    total = 0
    for (x1, y1), (x2, y2) in zip(vertices, list(vertices[1:]) + [vertices[0]]):
        total += x1 * y2 - x2 * y1
    return abs(total)


def path_area2(alpha: OrbitSet) -> int:
    return shoelace2(path_vertices(alpha))


def ech_index_area(alpha: OrbitSet) -> int:
    P, Q = _totals(alpha.flat_slope_list())
    slope_index = Q + path_area2(alpha) - P * P - alpha.elliptic_multiplicity()
    return slope_index + morse_index(alpha)


def cz_sum(alpha: OrbitSet, cz_table: Mapping[OrbitFamily, int] = CZ_TABLE) -> int:
    bound = max(alpha.degree, 1)
    return sum(
        conley_zehnder(kind, k, bound, cz_table) for kind, mult in alpha for k in range(1, mult + 1)
    )


def ech_index_components(
    alpha: OrbitSet, cz_table: Mapping[OrbitFamily, int] = CZ_TABLE, cross_check: bool = True
) -> int:
    """
    c_tau + Q_tau + the Conley-Zehnder sum over all iterates.

    Args:
        alpha: Orbit set.
        cz_table: Conley-Zehnder value per orbit family.
        cross_check: Compare with ech_index_sum and raise on disagreement.
    """
    value = relative_chern(alpha) + q_tau_total(alpha) + cz_sum(alpha, cz_table)
    if cross_check:
        expected = ech_index_sum(alpha)
        if value != expected:
            raise ConsistencyError(f"Index of {alpha}: components give {value}, closed form gives {expected}.")
    return value


def fiber_shift(Q: int, m: int, genus: int) -> int:
    """Index change 2m(Q + 1 - g) from adding m fibre classes."""
    return 2 * m * (Q + 1 - genus)


def ech_index_shifted(alpha: OrbitSet, m: int, profile: TwistProfile) -> int:
    return ech_index_sum(alpha) + fiber_shift(alpha.degree, m, profile.fiber_genus)


def relative_chern_shifted(alpha: OrbitSet, m: int, profile: TwistProfile) -> int:
    return relative_chern(alpha) + 2 * m * (1 - profile.fiber_genus)


def q_tau_shifted(alpha: OrbitSet, m: int) -> int:
    return q_tau_total(alpha) + 2 * m * alpha.degree


def ech_index_shifted_components(alpha: OrbitSet, m: int, profile: TwistProfile) -> int:
    return relative_chern_shifted(alpha, m, profile) + q_tau_shifted(alpha, m) + cz_sum(alpha)


def closed_fiber_index(k: int, profile: TwistProfile) -> int:
    """Index of the closed class k[F]."""
    return k * (2 - 2 * profile.fiber_genus)


def index_report(alpha: OrbitSet, m: int = 0, profile: Optional[TwistProfile] = None) -> dict:
    """All index forms of one orbit set, as emitted by the index command."""
    row = {
        "orbit_set": str(alpha),
        "degree": alpha.degree,
        "c_tau": relative_chern(alpha),
        "q_tau": q_tau_total(alpha),
        "cz_sum": cz_sum(alpha),
        "index_sum": ech_index_sum(alpha),
        "index_area": ech_index_area(alpha),
        "index_components": ech_index_components(alpha),
        "area2": path_area2(alpha),
    }
    if row["index_area"] != row["index_sum"]:
        raise ConsistencyError(f"Index of {alpha}: area form {row['index_area']} != closed form {row['index_sum']}.")
    if profile is not None:
        row["fiber_mult"] = m
        row["index_shifted"] = ech_index_shifted(alpha, m, profile)
    return row


def parity_violations(alphas: Iterable[OrbitSet]) -> List[OrbitSet]:
    """Orbit sets whose index parity differs from their hyperbolic count."""
    return [alpha for alpha in alphas if (ech_index_sum(alpha) - alpha.hyperbolic_count()) % 2]
