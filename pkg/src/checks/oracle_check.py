import numpy as np

from src.checks.base_check import BaseCheck
from src.oracle.intersection_oracle import oracle_sweep
from src.oracle.lattice_polygon import area2, hull, leg_triangle, minkowski_sum, mixed_volume


class OracleCheck(BaseCheck):
    """The Newton-polygon count reproduces the closed-form pair term."""

    name = "intersection_oracle"

    def run(self) -> None:
        for row in oracle_sweep(self.ranges.max_denominator):
            self.expect(
                row["agree"],
                f"{row['p']}/{row['q']} vs {row['p2']}/{row['q2']} ({row['case']}): "
                f"oracle {row['oracle']}, closed form {row['q_tau']}",
            )
            if (row["p"], row["q"]) == (row["p2"], row["q2"]):
                p, q = row["p"], row["q"]
                self.expect(row["q_tau"] == p * (q - p), f"{p}/{q}: diagonal term {row['q_tau']}")

        legs = range(1, self.ranges.max_leg + 1)
        for a in legs:
            for b in legs:
                for c in legs:
                    for d in legs:
                        mv = mixed_volume(leg_triangle(a, b), leg_triangle(c, d))
                        self.expect(mv == max(a * d, b * c), f"legs ({a},{b}), ({c},{d}): mixed volume {mv}")

        rng = np.random.default_rng(self.ranges.seed)
        for _ in range(self.ranges.random_trials):
            first = hull(rng.integers(0, 6, size=(int(rng.integers(1, 6)), 2)).tolist())
            second = hull(rng.integers(0, 6, size=(int(rng.integers(1, 6)), 2)).tolist())
            self.expect(
                mixed_volume(first, second) == mixed_volume(second, first),
                f"mixed volume of {first} and {second} is not symmetric",
            )
            self.expect(
                area2(minkowski_sum(first, first)) == 4 * area2(first),
                f"{first} + {first} does not scale area by 4",
            )
            third = hull(rng.integers(0, 6, size=(int(rng.integers(1, 6)), 2)).tolist())
            self.expect(
                mixed_volume(first + second, third) == mixed_volume(first, third) + mixed_volume(second, third),
                f"mixed volume is not additive over {first} + {second} against {third}",
            )
            larger = hull(list(first.vertices) + list(second.vertices))
            self.expect(
                mixed_volume(first, third) <= mixed_volume(larger, third),
                f"mixed volume shrinks from {first} to the larger {larger}",
            )
