import numpy as np

from src.checks.base_check import BaseCheck
from src.homology.homology import (
    IntegerMatrix,
    SmithNormalForm,
    dehn_twist_action,
    h1_mapping_torus,
    symplectic_form,
)


class HomologyCheck(BaseCheck):
    """Mapping-torus homology and the Smith normal form behind it."""

    name = "homology"

    def run(self) -> None:
        for genus in range(1, self.ranges.max_genus + 1):
            n = 2 * genus
            twist = dehn_twist_action(genus)
            form = symplectic_form(genus)
            self.expect(twist.transpose() @ form @ twist == form, f"g={genus}: twist is not symplectic")
            self.expect(twist.determinant() == 1, f"g={genus}: twist has determinant {twist.determinant()}")

            group = h1_mapping_torus(genus)
            self.expect(group.free_rank == n and group.is_free, f"g={genus}: H_1 = {group}, expected Z^{n}")
            other_curve = [0] * n
            other_curve[1] = other_curve[2 % n] = 1
            other = h1_mapping_torus(genus, dehn_twist_action(genus, other_curve))
            self.expect(other == group, f"g={genus}: H_1 depends on the twisting curve ({other})")
            identity = h1_mapping_torus(genus, IntegerMatrix.identity(n))
            self.expect(identity.free_rank == n + 1, f"g={genus}: product bundle gives {identity}")

        rng = np.random.default_rng(self.ranges.seed)
        for _ in range(self.ranges.random_trials):
            rows, cols = (int(v) for v in rng.integers(1, 5, size=2))
            matrix = IntegerMatrix.from_rows(rng.integers(-6, 7, size=(rows, cols)).tolist())
            snf = SmithNormalForm(matrix).run()
            self.expect(snf.left @ matrix @ snf.right == snf.diagonal, f"{matrix.to_list()}: U M V != D")
            self.expect(
                abs(snf.left.determinant()) == 1 and abs(snf.right.determinant()) == 1,
                f"{matrix.to_list()}: transforms are not unimodular",
            )
            d = snf.diagonal.entries
            off_diagonal = [d[i, j] for i in range(rows) for j in range(cols) if i != j]
            factors = snf.invariant_factors
            self.expect(
                not any(off_diagonal)
                and all(f > 0 for f in factors)
                and all(b % a == 0 for a, b in zip(factors, factors[1:])),
                f"{matrix.to_list()}: diagonal {snf.diagonal.to_list()} is not in Smith form",
            )
