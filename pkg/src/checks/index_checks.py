from collections import Counter
from itertools import combinations_with_replacement, product
from typing import List, Mapping

import numpy as np

from src.checks.base_check import BaseCheck
from src.index.ech_index import (
    CZ_TABLE,
    ech_index_area,
    ech_index_components,
    ech_index_shifted,
    ech_index_shifted_components,
    ech_index_sum,
    path_area2,
    q_tau_bilinear,
    q_tau_flat,
)
from src.orbits.orbit_model import (
    E0,
    E1,
    OrbitFamily,
    OrbitKind,
    OrbitSet,
    count_generators,
    enumerate_generators,
    farey_slopes,
    is_ech_generator,
    orbit_roster,
    random_orbitset,
)
from src.validator.data_model import MorseConfig, SelfCheckRanges, TwistProfile


def morse_configs(per_type: int) -> List[MorseConfig]:
    return [
        MorseConfig(n_positive=a, n_negative=b, n_saddle=c)
        for a, b, c in product(range(per_type + 1), repeat=3)
    ]


class IndexAgreementCheck(BaseCheck):
    """Closed form, area form and component sum of the index agree."""

    name = "index_agreement"

    def __init__(self, ranges: SelfCheckRanges, cz_table: Mapping[OrbitFamily, int] = CZ_TABLE):
        super().__init__(ranges)
        self.cz_table = cz_table

    def _compare(self, alpha: OrbitSet) -> None:
        closed = ech_index_sum(alpha)
        area = ech_index_area(alpha)
        components = self.guarded(str(alpha), ech_index_components, alpha, self.cz_table, cross_check=False)
        if components is None:
            return
        self.expect(
            closed == area == components,
            f"{alpha}: closed form {closed}, area form {area}, components {components}",
        )

    def run(self) -> None:
        for Q in range(self.ranges.max_degree + 1):
            for alpha in enumerate_generators(Q):
                self._compare(alpha)
        for morse in morse_configs(self.ranges.morse_per_type):
            if morse.n_positive + morse.n_negative + morse.n_saddle == 0:
                continue
            for Q in range(1, self.ranges.morse_degree + 1):
                for alpha in enumerate_generators(Q, morse):
                    if alpha.morse_entries():
                        self._compare(alpha)


class NonnegativityCheck(BaseCheck):
    """
    Slope-only generators have nonnegative index, zero exactly on e1^m e0^n;
    P^2 <= 2 Area; the index has the parity of the hyperbolic count.
    """

    name = "index_nonnegativity"

    def run(self) -> None:
        for Q in range(self.ranges.max_degree + 1):
            zero_sets = []
            for alpha in enumerate_generators(Q):
                index = ech_index_sum(alpha)
                self.expect(index >= 0, f"{alpha}: negative index {index}")
                if index == 0:
                    zero_sets.append(alpha)
                P = sum(p for p, _ in alpha.flat_slope_list())
                self.expect(P * P <= path_area2(alpha), f"{alpha}: P^2 = {P * P} exceeds 2 Area = {path_area2(alpha)}")
                self.expect(
                    (index - alpha.hyperbolic_count()) % 2 == 0,
                    f"{alpha}: index {index} and {alpha.hyperbolic_count()} hyperbolic orbits differ in parity",
                )
            expected = {OrbitSet.from_counts({E1: m, E0: Q - m}) for m in range(Q + 1)}
            self.expect(
                set(zero_sets) == expected,
                f"Q={Q}: index-zero sets {sorted(map(str, zero_sets))} differ from e1^m e0^n",
            )


class ShiftLinearityCheck(BaseCheck):
    """Adding a fibre class moves the index by 2(Q + 1 - g), whichever way it is computed."""

    name = "shift_linearity"

    def run(self) -> None:
        rng = np.random.default_rng(self.ranges.seed)
        max_q = max(self.ranges.max_degree, 1)
        for _ in range(self.ranges.random_trials):
            alpha = random_orbitset(rng, max_q)
            Q = alpha.degree
            genus = int(rng.integers(2, self.ranges.max_genus + 2))
            if genus == Q + 1:
                genus += 1
            profile = TwistProfile.default_for(genus, Q)
            m = int(rng.integers(-3, 4))
            step = ech_index_shifted(alpha, m + 1, profile) - ech_index_shifted(alpha, m, profile)
            self.expect(step == 2 * (Q + 1 - genus), f"{alpha}, m={m}, g={genus}: step {step}")
            self.expect(
                ech_index_shifted(alpha, m, profile) == ech_index_shifted_components(alpha, m, profile),
                f"{alpha}, m={m}, g={genus}: shifted forms disagree",
            )
            self.expect(q_tau_flat(alpha) == q_tau_bilinear(alpha), f"{alpha}: Q_tau expansions disagree")

        for Q in range(2, self.ranges.max_degree + 1):
            generators = enumerate_generators(Q)
            for genus in range(2, Q + 1):
                profile = TwistProfile.default_for(genus, Q)
                for m in range(3):
                    negatives = [str(a) for a in generators if ech_index_shifted(a, m, profile) < 0]
                    self.expect(not negatives, f"Q={Q}, g={genus}, m={m}: negative shifted index on {negatives[:5]}")


def brute_force_generators(Q: int, morse: MorseConfig = MorseConfig()) -> List[OrbitSet]:
    """Generators of degree Q built part by part from the integer partitions of Q."""
    by_degree: dict = {}
    for kind in orbit_roster(Q, morse):
        by_degree.setdefault(kind.degree, []).append(kind)

    def partitions(n: int, largest: int):
        if n == 0:
            yield ()
            return
        for part in range(min(n, largest), 0, -1):
            for rest in partitions(n - part, part):
                yield (part,) + rest

    found = set()
    for parts in partitions(Q, Q):
        counts = Counter(parts)
        choices = [
            list(combinations_with_replacement(by_degree.get(d, []), k)) for d, k in sorted(counts.items())
        ]
        for picks in product(*choices):
            alpha = OrbitSet.from_counts(Counter(kind for pick in picks for kind in pick))
            if is_ech_generator(alpha):
                found.add(alpha)
    return sorted(found, key=lambda alpha: alpha.sort_key)


class EnumerationCheck(BaseCheck):
    """Enumeration is exhaustive, canonical, deterministic and counted correctly."""

    name = "enumeration"

    def run(self) -> None:
        for Q in range(self.ranges.max_degree + 1):
            slopes = farey_slopes(Q)
            coprime = sorted({(p, q) for q in range(1, Q + 1) for p in range(q + 1) if np.gcd(p, q) == 1})
            self.expect(sorted((s.numerator, s.denominator) for s in slopes) == coprime, f"Q={Q}: Farey roster wrong")
            generators = enumerate_generators(Q)
            self.expect(generators == enumerate_generators(Q), f"Q={Q}: enumeration is not deterministic")
            keys = [alpha.sort_key for alpha in generators]
            self.expect(all(a < b for a, b in zip(keys, keys[1:])), f"Q={Q}: output not strictly increasing")
            self.expect(
                all(alpha.degree == Q and is_ech_generator(alpha) for alpha in generators),
                f"Q={Q}: enumeration returned a set of the wrong degree or a non-generator",
            )
            self.expect(len(generators) == count_generators(Q), f"Q={Q}: count mismatch")
            if Q <= self.ranges.brute_force_degree:
                self.expect(generators == brute_force_generators(Q), f"Q={Q}: brute force disagrees")
                morse = MorseConfig(n_positive=1, n_negative=1, n_saddle=1)
                self.expect(
                    enumerate_generators(Q, morse) == brute_force_generators(Q, morse),
                    f"Q={Q}: brute force disagrees with interior Morse points",
                )
            else:
                self.skip(f"brute force above degree {self.ranges.brute_force_degree}")
        # equal-slope ties never move the index
        kinds = [OrbitKind.slope_elliptic(1, 2), OrbitKind.slope_hyperbolic(1, 2), OrbitKind.slope_elliptic(1, 3)]
        alpha = OrbitSet.of(*kinds)
        self.expect(ech_index_sum(alpha) == ech_index_area(alpha), "tie ordering changes the index")
