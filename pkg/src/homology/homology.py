"""
Integer homology of the Dehn-twist mapping torus.

H_1 of the mapping torus is H_0(F) + coker(1 - phi_*) on H_1(F), and the
cokernel is read off the Smith normal form of 1 - phi_*. Entries are Python
integers held in object arrays, so nothing overflows.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.utils.errors import DomainError
from src.utils.logging import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class IntegerMatrix:
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.entries.ndim != 2:
            raise DomainError(f"Expected a 2-dimensional matrix, got shape {self.entries.shape}.")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntegerMatrix":
        rows = [list(row) for row in rows]
        if not rows or len({len(row) for row in rows}) != 1:
            raise DomainError("Rows must be nonempty and of equal length.")
        array = np.empty((len(rows), len(rows[0])), dtype=object)
        for i, row in enumerate(rows):
            for j, value in enumerate(row):
                if int(value) != value:
                    raise DomainError(f"Entry {value} is not an integer.")
                array[i, j] = int(value)
        return cls(array)

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        return IntegerMatrix(self.entries.dot(other.entries))

    def __sub__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        return IntegerMatrix(self.entries - other.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.entries.shape == other.entries.shape and bool(np.all(self.entries == other.entries))

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(self.entries.T.copy())

    def to_list(self) -> List[List[int]]:
        return [[int(v) for v in row] for row in self.entries]

    def determinant(self) -> int:
        """Exact determinant by fraction-valued elimination."""
        if self.rows != self.cols:
            raise DomainError("Determinant of a non-square matrix.")
        a = [[Fraction(int(v)) for v in row] for row in self.entries]
        n = self.rows
        det = Fraction(1)
        for col in range(n):
            pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
            if pivot is None:
                return 0
            if pivot != col:
                a[col], a[pivot] = a[pivot], a[col]
                det = -det
            det *= a[col][col]
            for r in range(col + 1, n):
                factor = a[r][col] / a[col][col]
                for c in range(col, n):
                    a[r][c] -= factor * a[col][c]
        return int(det)


@dataclass(frozen=True)
class AbelianGroup:
    """Z^free_rank + Z/d_1 + ... + Z/d_k with d_1 | d_2 | ... and every d_i > 1."""

    free_rank: int
    torsion: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise DomainError("Free rank must be nonnegative.")
        if any(d <= 1 for d in self.torsion):
            raise DomainError(f"Invariant factors must exceed 1, got {self.torsion}.")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise DomainError(f"Invariant factors {self.torsion} are not in divisibility order.")

    @property
    def is_free(self) -> bool:
        return not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_dict(self) -> Dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion), "group": str(self)}


class SmithNormalForm:
    """
    Smith normal form D = left @ M @ right with unimodular left and right.

    Usage
    -----
    snf = SmithNormalForm(matrix)
    snf.run()
    snf.invariant_factors
    """

    def __init__(self, matrix: IntegerMatrix):
        self._original = matrix
        self._a = matrix.entries.copy()
        self._left = IntegerMatrix.identity(matrix.rows).entries
        self._right = IntegerMatrix.identity(matrix.cols).entries
        self._done = False

    @property
    def diagonal(self) -> IntegerMatrix:
        self.run()
        return IntegerMatrix(self._a)

    @property
    def left(self) -> IntegerMatrix:
        self.run()
        return IntegerMatrix(self._left)

    @property
    def right(self) -> IntegerMatrix:
        self.run()
        return IntegerMatrix(self._right)

    @property
    def invariant_factors(self) -> Tuple[int, ...]:
        """Nonzero diagonal entries, in divisibility order."""
        self.run()
        n = min(self._a.shape)
        return tuple(int(self._a[i, i]) for i in range(n) if self._a[i, i] != 0)

    def run(self) -> "SmithNormalForm":
        if self._done:
            return self
        for s in range(min(self._a.shape)):
            if not self._reduce_at(s):
                break
        self._done = True
        return self

    def _swap_rows(self, i: int, j: int) -> None:
        self._a[[i, j]] = self._a[[j, i]]
        self._left[[i, j]] = self._left[[j, i]]

    def _swap_columns(self, i: int, j: int) -> None:
        self._a[:, [i, j]] = self._a[:, [j, i]]
        self._right[:, [i, j]] = self._right[:, [j, i]]

    def _add_row(self, target: int, source: int, factor: int) -> None:
        self._a[target] += factor * self._a[source]
        self._left[target] += factor * self._left[source]

    def _add_column(self, target: int, source: int, factor: int) -> None:
        self._a[:, target] += factor * self._a[:, source]
        self._right[:, target] += factor * self._right[:, source]

    def _min_abs_position(self, s: int) -> Optional[Tuple[int, int]]:
        best = None
        for i in range(s, self._a.shape[0]):
            for j in range(s, self._a.shape[1]):
                value = abs(self._a[i, j])
                if value and (best is None or value < best[0]):
                    best = (value, i, j)
        return None if best is None else (best[1], best[2])

    def _reduce_at(self, s: int) -> bool:
        """Clear row and column s around the pivot; False when the rest is zero."""
        position = self._min_abs_position(s)
        if position is None:
            return False
        rows, cols = self._a.shape
        while True:
            i, j = position
            if i != s:
                self._swap_rows(s, i)
            if j != s:
                self._swap_columns(s, j)
            pivot = self._a[s, s]
            for i in range(s + 1, rows):
                if self._a[i, s]:
                    self._add_row(i, s, -(self._a[i, s] // pivot))
            for j in range(s + 1, cols):
                if self._a[s, j]:
                    self._add_column(j, s, -(self._a[s, j] // pivot))

            leftovers = [(abs(self._a[i, s]), i, s) for i in range(s + 1, rows) if self._a[i, s]]
            leftovers += [(abs(self._a[s, j]), s, j) for j in range(s + 1, cols) if self._a[s, j]]
            if leftovers:
                _, i, j = min(leftovers)
                position = (i, j)
                continue

            blocking = next(
                (i for i in range(s + 1, rows) for j in range(s + 1, cols) if self._a[i, j] % pivot),
                None,
            )
            if blocking is not None:
                # pull the offending row into row s; the next pass shrinks the pivot
                self._add_row(s, blocking, 1)
                position = (s, s)
                continue
            break
        if self._a[s, s] < 0:
            self._a[s] *= -1
            self._left[s] *= -1
        return True


def smith_normal_form(matrix: IntegerMatrix) -> Tuple[int, ...]:
    return SmithNormalForm(matrix).invariant_factors


def cokernel(matrix: IntegerMatrix) -> AbelianGroup:
    """Abelian group Z^rows / image(matrix)."""
    factors = smith_normal_form(matrix)
    return AbelianGroup(
        free_rank=matrix.rows - len(factors),
        torsion=tuple(d for d in factors if d > 1),
    )


def symplectic_form(genus: int) -> IntegerMatrix:
    """Intersection form in the basis (a_1, b_1, ..., a_g, b_g) with a_i . b_i = 1."""
    n = 2 * genus
    rows = [[0] * n for _ in range(n)]
    for k in range(genus):
        rows[2 * k][2 * k + 1] = 1
        rows[2 * k + 1][2 * k] = -1
    return IntegerMatrix.from_rows(rows)


def dehn_twist_action(genus: int, curve: Optional[Sequence[int]] = None) -> IntegerMatrix:
    """
    Action x -> x + (a . x) a of the twist along a on H_1(F).

    Args:
        genus: Genus of the fibre, at least 1.
        curve: Homology class of the twisting curve in the symplectic basis;
            defaults to a_1. It must be primitive, as for any non-separating
            curve.
    """
    if genus < 1:
        raise DomainError(f"Genus must be at least 1, got {genus}.")
    n = 2 * genus
    a = [1] + [0] * (n - 1) if curve is None else [int(v) for v in curve]
    if len(a) != n:
        raise DomainError(f"Curve class needs {n} coordinates, got {len(a)}.")
    if gcd(*a) != 1:
        raise DomainError(f"Curve class {a} is not primitive.")
    form = symplectic_form(genus).entries
    pairing = np.array(a, dtype=object).dot(form)  # x -> a . x
    rows = [[int(i == j) + a[i] * pairing[j] for j in range(n)] for i in range(n)]
    return IntegerMatrix.from_rows(rows)


def h1_mapping_torus(genus: int, monodromy: Optional[IntegerMatrix] = None) -> AbelianGroup:
    """H_1 of the mapping torus of the given monodromy, the Dehn twist by default."""
    action = dehn_twist_action(genus) if monodromy is None else monodromy
    if action.rows != 2 * genus or action.cols != 2 * genus:
        raise DomainError(f"Monodromy must be {2 * genus}x{2 * genus}.")
    coker = cokernel(IntegerMatrix.identity(2 * genus) - action)
    group = AbelianGroup(free_rank=1 + coker.free_rank, torsion=coker.torsion)
    logger.debug(f"H_1 of the mapping torus at genus {genus}: {group}")
    return group


@dataclass(frozen=True)
class GroupConstant:
    group: AbelianGroup
    generator: str
    provenance: str

    def to_dict(self) -> Dict:
        return {**self.group.to_dict(), "generator": self.generator, "provenance": self.provenance}


def lefschetz_constants(genus: int) -> Dict[str, GroupConstant]:
    """
    Homology of the elementary Lefschetz fibration, recorded rather than
    computed: a Mayer-Vietoris argument over the fibration and a disk
    neighbourhood of the singular fibre.
    """
    if genus < 1:
        raise DomainError(f"Genus must be at least 1, got {genus}.")
    return {
        "H2(X)": GroupConstant(AbelianGroup(1), "[F]", "fibre class; Mayer-Vietoris"),
        "H2(X,dX)": GroupConstant(AbelianGroup(1), "relative class dual to a section", "Lefschetz duality"),
        "H1(X)": GroupConstant(
            AbelianGroup(2 * genus - 1), "H1(F) modulo the vanishing cycle", "vanishing cycle dies in X"
        ),
    }
