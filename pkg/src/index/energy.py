"""
Energy of orbit sets and of relative classes Z_alpha + m[F].

A slope orbit at annulus coordinate x0 has energy q (|x0| R'(|x0|) - R(|x0|));
the boundary orbits and the Morse orbits bound disks of zero energy.
"""
from dataclasses import dataclass
from fractions import Fraction

from src.geometry.twist_profile import position_of_slope, r_tilde, slope_at
from src.orbits.orbit_model import OrbitKind, OrbitSet
from src.utils.errors import DomainError
from src.utils.logging import get_logger
from src.validator.data_model import TwistProfile

logger = get_logger(__name__)


def orbit_energy(kind: OrbitKind, half_width: float | None = None) -> float:
    if kind.is_morse or kind.is_boundary:
        return 0.0
    t = abs(position_of_slope(Fraction(kind.p, kind.q), half_width))
    return kind.q * (t * slope_at(t) - r_tilde(t))


def orbitset_energy(alpha: OrbitSet, m: int = 0, profile: TwistProfile | None = None) -> float:
    half_width = profile.annulus_half_width if profile is not None else None
    energy = sum(mult * orbit_energy(kind, half_width) for kind, mult in alpha)
    if m:
        if profile is None:
            raise DomainError("A profile is needed to add fibre classes.")
        energy += m * profile.fiber_area
    return energy


@dataclass(frozen=True)
class AdmissibilityVerdict:
    admissible: bool
    reason: str
    energy: float

    def __bool__(self) -> bool:
        return self.admissible


def is_admissible_class(alpha: OrbitSet, m: int, profile: TwistProfile) -> AdmissibilityVerdict:
    """
    Whether Z_alpha + m[F] can carry a holomorphic current.

    Currents of a nonnegative fibration have nonnegative energy, and orbit
    sets of degree at most Q have energy at most Q, below the fibre area;
    so every m < 0 is excluded.
    """
    Q = profile.degree_bound
    if alpha.degree > Q:
        raise DomainError(f"Orbit set {alpha} has degree {alpha.degree} above the bound {Q}.")
    if profile.fiber_area <= Q:
        raise DomainError(f"Fibre area {profile.fiber_area} must exceed Q={Q}.")
    energy = orbitset_energy(alpha, m, profile)
    if energy < 0:
        return AdmissibilityVerdict(False, "negative energy", energy)
    return AdmissibilityVerdict(True, "nonnegative energy", energy)


def index_energy_ratio(alpha: OrbitSet, profile: TwistProfile) -> float:
    """
    Constant c with I(Z1) - I(Z2) = c (E(Z1) - E(Z2)) for classes that differ
    by fibre multiples: 2(Q + 1 - g(F)) / fibre area.
    """
    return 2 * (alpha.degree + 1 - profile.fiber_genus) / profile.fiber_area
