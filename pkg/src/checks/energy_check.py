import math

from src.checks.base_check import BaseCheck
from src.index.ech_index import ech_index_shifted
from src.index.energy import index_energy_ratio, is_admissible_class, orbit_energy, orbitset_energy
from src.orbits.orbit_model import E0, E1, H0, H1, OrbitKind, enumerate_generators, farey_slopes
from src.validator.data_model import TwistProfile

ENERGY_TOL = 1e-12
# per-degree bound checked on slopes up to this denominator
ENERGY_MAX_Q = 64


class EnergyCheck(BaseCheck):
    """Orbit energies, the degree bound and admissibility of fibre shifts."""

    name = "energy"

    def run(self) -> None:
        self.expect(abs(orbit_energy(OrbitKind.slope_elliptic(1, 2)) - 0.5) < ENERGY_TOL, "E(e_{1/2}) != 1/2")
        self.expect(
            abs(orbit_energy(OrbitKind.slope_elliptic(1, 4)) - math.sqrt(3) / 2) < ENERGY_TOL,
            "E(e_{1/4}) != sqrt(3)/2",
        )
        for kind in (E0, E1, H0, H1):
            self.expect(orbit_energy(kind) == 0.0, f"boundary orbit {kind} has nonzero energy")

        for s in farey_slopes(ENERGY_MAX_Q):
            if s in (0, 1):
                continue
            p, q = s.numerator, s.denominator
            energy = orbit_energy(OrbitKind.slope_elliptic(p, q))
            self.expect(0 < energy <= q / 4 + ENERGY_TOL, f"slope {s}: energy {energy} outside (0, q/4]")
            mirror = orbit_energy(OrbitKind.slope_hyperbolic(q - p, q))
            self.expect(abs(energy - mirror) < ENERGY_TOL, f"slope {s}: energy differs from slope {1 - s}")

        for Q in range(self.ranges.max_degree + 1):
            for alpha in enumerate_generators(Q):
                energy = orbitset_energy(alpha)
                self.expect(-ENERGY_TOL <= energy <= Q + ENERGY_TOL, f"{alpha}: energy {energy} outside [0, {Q}]")

        for Q in range(1, self.ranges.admissibility_degree + 1):
            profile = TwistProfile.default_for(Q + 3, Q)
            for alpha in enumerate_generators(Q):
                for m in range(-2, 3):
                    verdict = is_admissible_class(alpha, m, profile)
                    self.expect(bool(verdict) == (m >= 0), f"{alpha}, m={m}: admissible={bool(verdict)}")
                index_step = ech_index_shifted(alpha, 1, profile) - ech_index_shifted(alpha, 0, profile)
                energy_step = orbitset_energy(alpha, 1, profile) - orbitset_energy(alpha, 0, profile)
                self.expect(
                    abs(index_step - index_energy_ratio(alpha, profile) * energy_step) < 1e-9,
                    f"{alpha}: index and energy steps are not proportional",
                )
