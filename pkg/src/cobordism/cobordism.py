"""
Cobordism map of the elementary Lefschetz fibration on orbit-set generators.

Above the critical degree the chain map sends exactly the index-zero
generators, products of e0, e1 and Hessian-positive Morse orbits, to 1.
Well below it the map is known on homology: the class of e0^m0 e1^m1 goes to
1 and every other generator to 0. In between the map exists but is not
evaluated.
"""
from enum import Enum
from itertools import combinations_with_replacement
from math import comb
from typing import Dict, List, Union

from pydantic import BaseModel, Field, computed_field

from src.index.ech_index import ech_index_shifted, ech_index_sum
from src.orbits.orbit_model import E0, E1, OrbitFamily, OrbitSet, enumerate_generators, is_ech_generator, morse_kinds
from src.utils.errors import ConsistencyError, DomainError, RegimeError
from src.utils.logging import get_logger
from src.validator.data_model import MorseConfig, TwistProfile

logger = get_logger(__name__)


class Regime(str, Enum):
    HIGH_DEGREE = "high_degree"
    LOW_DEGREE = "low_degree"
    INTERMEDIATE = "intermediate"
    EXCLUDED = "excluded"


class MapOutcome(str, Enum):
    NOT_COMPUTED = "not_computed"


MapValue = Union[int, MapOutcome]


def regime(Q: int, g: int) -> Regime:
    if Q < 0 or g < 2:
        raise DomainError(f"Regime needs Q >= 0 and g >= 2, got Q={Q}, g={g}.")
    if Q == g - 1:
        return Regime.EXCLUDED
    if Q > g - 1:
        return Regime.HIGH_DEGREE
    if 2 * Q < g - 1:
        return Regime.LOW_DEGREE
    return Regime.INTERMEDIATE


def profile_regime(profile: TwistProfile) -> Regime:
    return regime(profile.degree_bound, profile.fiber_genus)


def _require(profile: TwistProfile, wanted: Regime) -> None:
    found = profile_regime(profile)
    if found is not wanted:
        raise RegimeError(
            f"Q={profile.degree_bound}, g(F)={profile.fiber_genus} is in the {found.value} regime, not {wanted.value}."
        )


def closed_form_index_zero_family(Q: int, morse: MorseConfig = MorseConfig()) -> List[OrbitSet]:
    """Every (prod_a e_a^{m_a}) e0^m0 e1^m1 of degree Q over Hessian-positive points a."""
    kinds = [E0, E1] + [kind for kind in morse_kinds(morse) if kind.family is OrbitFamily.MORSE_POSITIVE]
    family = [OrbitSet.of(*choice) for choice in combinations_with_replacement(kinds, Q)]
    return sorted(family, key=lambda alpha: alpha.sort_key)


def closed_form_family_size(Q: int, morse: MorseConfig = MorseConfig()) -> int:
    """Multisets of size Q over the 2 + n_positive degree-one elliptic orbits."""
    kinds = 2 + morse.n_positive
    return comb(Q + kinds - 1, Q)


def index_zero_generators(Q: int, profile: TwistProfile, morse: MorseConfig = MorseConfig()) -> List[OrbitSet]:
    """
    Generators of degree Q with index zero, found by filtering the full
    enumeration and cross-checked against the closed-form family.

    Raises:
        RegimeError: Not in the high-degree regime.
        ConsistencyError: The two computations disagree.
    """
    if regime(Q, profile.fiber_genus) is not Regime.HIGH_DEGREE:
        raise RegimeError(f"Index-zero classification needs Q > g(F) - 1, got Q={Q}, g(F)={profile.fiber_genus}.")
    filtered = [alpha for alpha in enumerate_generators(Q, morse) if ech_index_sum(alpha) == 0]
    closed = closed_form_index_zero_family(Q, morse)
    if filtered != closed:
        missing = {str(a) for a in closed} - {str(a) for a in filtered}
        extra = {str(a) for a in filtered} - {str(a) for a in closed}
        raise ConsistencyError(f"Index-zero generators at Q={Q}: missing {sorted(missing)}, unexpected {sorted(extra)}.")
    return filtered


def _check_generator(alpha: OrbitSet, profile: TwistProfile, morse: MorseConfig) -> None:
    if alpha.degree != profile.degree_bound:
        raise DomainError(f"{alpha} has degree {alpha.degree}, expected {profile.degree_bound}.")
    if not is_ech_generator(alpha):
        raise DomainError(f"{alpha} is not an ECH generator.")
    known = set(morse_kinds(morse))
    unknown = [str(kind) for kind in alpha.kinds() if kind.is_morse and kind not in known]
    if unknown:
        raise DomainError(f"Morse orbits {unknown} are not among the configured critical points.")


def chain_map_value(alpha: OrbitSet, profile: TwistProfile, morse: MorseConfig = MorseConfig()) -> int:
    _require(profile, Regime.HIGH_DEGREE)
    _check_generator(alpha, profile, morse)
    rigid = all(kind in (E0, E1) or kind.family is OrbitFamily.MORSE_POSITIVE for kind in alpha.kinds())
    return int(rigid)


def homology_map_value(alpha: OrbitSet, profile: TwistProfile, morse: MorseConfig = MorseConfig()) -> MapValue:
    """
    Value on a representative of a homology class: 1 on e0^m0 e1^m1, the
    representatives of e^Q, and 0 elsewhere. The intermediate regime gives
    MapOutcome.NOT_COMPUTED.
    """
    found = profile_regime(profile)
    if found is Regime.INTERMEDIATE:
        _check_generator(alpha, profile, morse)
        return MapOutcome.NOT_COMPUTED
    if found is not Regime.LOW_DEGREE:
        raise RegimeError(f"Homology-level values are known only well below the critical degree, got {found.value}.")
    if morse.n_positive:
        logger.warning(
            f"{morse.n_positive} Hessian-positive critical points configured in the low-degree regime; "
            "their orbits are treated as non-representatives."
        )
    _check_generator(alpha, profile, morse)
    return int(all(kind in (E0, E1) for kind in alpha.kinds()))


def map_table(profile: TwistProfile, morse: MorseConfig = MorseConfig(), cap: int = 10**7) -> List[Dict]:
    """(generator, value) rows for every generator of degree Q in the profile's regime."""
    found = profile_regime(profile)
    rows = []
    for alpha in enumerate_generators(profile.degree_bound, morse, cap):
        if found is Regime.HIGH_DEGREE:
            value: MapValue = chain_map_value(alpha, profile, morse)
        else:
            value = homology_map_value(alpha, profile, morse)
        rows.append({
            "orbit_set": str(alpha),
            "regime": found.value,
            "value": value.value if isinstance(value, MapOutcome) else value,
        })
    return rows


class AuditViolation(BaseModel):
    orbit_set: str
    fiber_mult: int
    index: int
    rule: str


class AuditReport(BaseModel):
    degree: int
    fiber_genus: int
    max_fiber_mult: int
    generators_checked: int = 0
    violations: List[AuditViolation] = Field(default_factory=list)

    @computed_field
    @property
    def clean(self) -> bool:
        return not self.violations


def low_degree_index_audit(profile: TwistProfile, morse: MorseConfig = MorseConfig(), max_m: int = 3) -> AuditReport:
    """
    Recompute I_m for every generator and 0 <= m <= max_m, and record any
    breach of I_m < 2Q - 2mQ or of I_0 = 0 exactly on e0^m0 e1^m1.
    """
    _require(profile, Regime.LOW_DEGREE)
    Q = profile.degree_bound
    report = AuditReport(degree=Q, fiber_genus=profile.fiber_genus, max_fiber_mult=max_m)
    for alpha in enumerate_generators(Q, morse):
        report.generators_checked += 1
        boundary_only = all(kind in (E0, E1) for kind in alpha.kinds())
        for m in range(max_m + 1):
            index = ech_index_shifted(alpha, m, profile)
            if not index < 2 * Q - 2 * m * Q:
                report.violations.append(AuditViolation(orbit_set=str(alpha), fiber_mult=m, index=index, rule="index_bound"))
            if m == 0 and (index == 0) != boundary_only:
                report.violations.append(AuditViolation(orbit_set=str(alpha), fiber_mult=m, index=index, rule="zero_index_family"))
    if report.clean:
        logger.success(f"Low-degree audit clean at Q={Q}, g(F)={profile.fiber_genus} over {report.generators_checked} generators.")
    else:
        logger.error(f"Low-degree audit found {len(report.violations)} violations at Q={Q}, g(F)={profile.fiber_genus}.")
    return report
