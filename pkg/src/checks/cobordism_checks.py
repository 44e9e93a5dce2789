from src.checks.base_check import BaseCheck
from src.cobordism.cobordism import (
    Regime,
    chain_map_value,
    closed_form_family_size,
    homology_map_value,
    index_zero_generators,
    low_degree_index_audit,
    regime,
)
from src.index.curves import classify_index_zero_curves
from src.index.ech_index import closed_fiber_index
from src.orbits.orbit_model import E0, E1, OrbitSet, enumerate_generators
from src.validator.data_model import MorseConfig, TwistProfile

HIGH_DEGREE_CASES = ((3, 2), (5, 3), (6, 4))
LOW_DEGREE_CASES = ((1, 4), (2, 8), (3, 9))
CURVE_CASES = ((3, 6), (2, 10))
REGIME_CASES = {
    (3, 2): Regime.HIGH_DEGREE,
    (1, 4): Regime.LOW_DEGREE,
    (2, 4): Regime.INTERMEDIATE,
    (1, 2): Regime.EXCLUDED,
}


class CobordismCheck(BaseCheck):
    """Chain-level values above the critical degree, homology-level values well below it."""

    name = "cobordism"

    def run(self) -> None:
        for (Q, g), expected in REGIME_CASES.items():
            self.expect(regime(Q, g) is expected, f"Q={Q}, g={g}: regime {regime(Q, g).value}")

        for Q, g in HIGH_DEGREE_CASES:
            if Q > self.ranges.max_degree:
                self.skip(f"high-degree case Q={Q} above the sweep")
                continue
            profile = TwistProfile.default_for(g, Q)
            for n_positive in (0, 1):
                morse = MorseConfig(n_positive=n_positive)
                zeros = self.guarded(f"Q={Q}, g={g}", index_zero_generators, Q, profile, morse)
                if zeros is None:
                    continue
                zero_set = set(zeros)
                self.expect(
                    len(zeros) == closed_form_family_size(Q, morse),
                    f"Q={Q}, g={g}: {len(zeros)} index-zero generators",
                )
                total = 0
                for alpha in enumerate_generators(Q, morse):
                    value = chain_map_value(alpha, profile, morse)
                    total += value
                    self.expect((value == 1) == (alpha in zero_set), f"Q={Q}, g={g}: chain map on {alpha} is {value}")
                self.expect(total == closed_form_family_size(Q, morse), f"Q={Q}, g={g}: map sums to {total}")

        for Q, g in LOW_DEGREE_CASES:
            if Q > self.ranges.max_degree:
                self.skip(f"low-degree case Q={Q} above the sweep")
                continue
            profile = TwistProfile.default_for(g, Q)
            audit = low_degree_index_audit(profile)
            self.expect(audit.clean, f"Q={Q}, g={g}: {len(audit.violations)} audit violations")
            for alpha in enumerate_generators(Q):
                boundary_only = all(kind in (E0, E1) for kind in alpha.kinds())
                value = homology_map_value(alpha, profile)
                self.expect(value == int(boundary_only), f"Q={Q}, g={g}: homology map on {alpha} is {value}")
            swapped = OrbitSet.from_counts({E0: Q - 1, E1: 1})
            self.expect(
                homology_map_value(swapped, profile) == homology_map_value(OrbitSet.from_counts({E0: Q}), profile),
                f"Q={Q}, g={g}: homology map separates e0 from e1",
            )


class CurveClassificationCheck(BaseCheck):
    """Well below the critical degree the only rigid embedded curve is the special plane."""

    name = "curve_classification"

    def run(self) -> None:
        for Q, g in CURVE_CASES:
            if Q > self.ranges.max_degree:
                self.skip(f"curve case Q={Q} above the sweep")
                continue
            profile = TwistProfile.default_for(g, Q)
            found = classify_index_zero_curves(profile)
            self.expect(
                len(found) == 1 and found[0].is_special_plane,
                f"Q={Q}, g={g}: found {[c.model_dump() for c in found]}",
            )
            relaxed = classify_index_zero_curves(profile, require_index_zero=False)
            self.expect(
                set(map(_key, found)) < set(map(_key, relaxed)),
                f"Q={Q}, g={g}: dropping the index condition adds no curves",
            )
            for k in range(1, 4):
                index = closed_fiber_index(k, profile)
                self.expect(index < 0, f"g={g}: closed class {k}[F] has index {index}")


def _key(c):
    return tuple(sorted(c.model_dump().items()))
