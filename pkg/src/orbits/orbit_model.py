"""
Periodic orbits of the perturbed twist model and orbit sets built from them.

Every Morse-Bott torus of rational slope p/q (q bounded by the degree) splits
into one elliptic and one hyperbolic orbit of degree q. The slope-0 and
slope-1 orbits e0, h0, e1, h1 stand for the boundary critical points, and the
interior critical points of the perturbing Morse function give degree-one
orbits sorted by the sign of their Hessian.
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple, Union

import numpy as np

from src.utils.errors import ConsistencyError, DomainError, EnumerationCapError
from src.utils.logging import get_logger
from src.validator.data_model import MorseConfig

logger = get_logger(__name__)

DEFAULT_ENUMERATION_CAP = 10**7


class OrbitFamily(str, Enum):
    SLOPE_ELLIPTIC = "slope_elliptic"
    SLOPE_HYPERBOLIC = "slope_hyperbolic"
    MORSE_POSITIVE = "morse_positive"  # Hessian > 0
    MORSE_NEGATIVE = "morse_negative"  # Hessian < 0
    MORSE_SADDLE = "morse_saddle"


_MORSE_RANK = {
    OrbitFamily.MORSE_POSITIVE: 0,
    OrbitFamily.MORSE_NEGATIVE: 1,
    OrbitFamily.MORSE_SADDLE: 2,
}

_MORSE_PREFIX = {
    OrbitFamily.MORSE_POSITIVE: "e-",
    OrbitFamily.MORSE_NEGATIVE: "e+",
    OrbitFamily.MORSE_SADDLE: "h",
}

_BOUNDARY_ALIASES = {
    (OrbitFamily.SLOPE_ELLIPTIC, 0, 1): "e0",
    (OrbitFamily.SLOPE_ELLIPTIC, 1, 1): "e1",
    (OrbitFamily.SLOPE_HYPERBOLIC, 0, 1): "h0",
    (OrbitFamily.SLOPE_HYPERBOLIC, 1, 1): "h1",
}


class EllipticClass(str, Enum):
    Q_POSITIVE = "q_positive"
    Q_NEGATIVE = "q_negative"
    NEITHER = "neither"


@dataclass(frozen=True)
class OrbitKind:
    family: OrbitFamily
    p: int = 0
    q: int = 1
    label: str = ""

    def __post_init__(self):
        if self.is_slope:
            if self.q < 1 or not 0 <= self.p <= self.q:
                raise DomainError(f"Slope {self.p}/{self.q} must lie in [0, 1] with q >= 1.")
            if gcd(self.p, self.q) != 1:
                raise DomainError(f"Slope {self.p}/{self.q} is not in lowest terms.")
            if self.label:
                raise DomainError("Slope orbits carry no label.")
        else:
            if not self.label or not self.label.replace("_", "a").isalnum():
                raise DomainError(f"Invalid Morse orbit label '{self.label}'.")
            if (self.p, self.q) != (0, 1):
                raise DomainError("Morse orbits carry no slope.")

    @classmethod
    def slope_elliptic(cls, p: int, q: int) -> "OrbitKind":
        return cls(OrbitFamily.SLOPE_ELLIPTIC, p, q)

    @classmethod
    def slope_hyperbolic(cls, p: int, q: int) -> "OrbitKind":
        return cls(OrbitFamily.SLOPE_HYPERBOLIC, p, q)

    @classmethod
    def morse_positive(cls, label: str) -> "OrbitKind":
        return cls(OrbitFamily.MORSE_POSITIVE, label=label)

    @classmethod
    def morse_negative(cls, label: str) -> "OrbitKind":
        return cls(OrbitFamily.MORSE_NEGATIVE, label=label)

    @classmethod
    def morse_saddle(cls, label: str) -> "OrbitKind":
        return cls(OrbitFamily.MORSE_SADDLE, label=label)

    @property
    def is_slope(self) -> bool:
        return self.family in (OrbitFamily.SLOPE_ELLIPTIC, OrbitFamily.SLOPE_HYPERBOLIC)

    @property
    def is_morse(self) -> bool:
        return not self.is_slope

    @property
    def is_hyperbolic(self) -> bool:
        return self.family in (OrbitFamily.SLOPE_HYPERBOLIC, OrbitFamily.MORSE_SADDLE)

    @property
    def is_elliptic(self) -> bool:
        return not self.is_hyperbolic

    @property
    def is_boundary(self) -> bool:
        return self.is_slope and self.q == 1

    @property
    def slope(self) -> Fraction:
        if not self.is_slope:
            raise DomainError(f"Morse orbit {self.token} has no slope.")
        return Fraction(self.p, self.q)

    @property
    def degree(self) -> int:
        return self.q if self.is_slope else 1

    @property
    def token(self) -> str:
        if self.is_morse:
            return f"{_MORSE_PREFIX[self.family]}:{self.label}"
        alias = _BOUNDARY_ALIASES.get((self.family, self.p, self.q))
        if alias:
            return alias
        flavour = "e" if self.family is OrbitFamily.SLOPE_ELLIPTIC else "h"
        return f"{flavour}[{self.p}/{self.q}]"

    @property
    def sort_key(self) -> tuple:
        """Slope descending, elliptic before hyperbolic, then Morse by (type, label)."""
        if self.is_slope:
            return (0, -Fraction(self.p, self.q), 0 if self.is_elliptic else 1, "")
        return (1, Fraction(0), _MORSE_RANK[self.family], self.label)

    def __str__(self) -> str:
        return self.token


E0 = OrbitKind.slope_elliptic(0, 1)
E1 = OrbitKind.slope_elliptic(1, 1)
H0 = OrbitKind.slope_hyperbolic(0, 1)
H1 = OrbitKind.slope_hyperbolic(1, 1)

Entry = Tuple[OrbitKind, int]


@dataclass(frozen=True)
class OrbitSet:
    """
    Multiset of orbits with multiplicities, kept in canonical order.

    Build instances through from_counts, which merges repeated kinds and
    sorts the entries.
    """

    entries: Tuple[Entry, ...] = ()

    def __post_init__(self):
        keys = [kind.sort_key for kind, _ in self.entries]
        if any(a >= b for a, b in zip(keys, keys[1:])):
            raise DomainError("Orbit set entries must be distinct and canonically ordered.")
        for kind, mult in self.entries:
            if mult < 1:
                raise DomainError(f"Multiplicity of {kind} must be positive, got {mult}.")

    @classmethod
    def from_counts(cls, counts: Union[Mapping[OrbitKind, int], Iterable[Entry]]) -> "OrbitSet":
        pairs = counts.items() if isinstance(counts, Mapping) else counts
        merged: Dict[OrbitKind, int] = {}
        for kind, mult in pairs:
            if mult < 0:
                raise DomainError(f"Multiplicity of {kind} must be nonnegative, got {mult}.")
            merged[kind] = merged.get(kind, 0) + mult
        ordered = sorted(((k, m) for k, m in merged.items() if m > 0), key=lambda e: e[0].sort_key)
        return cls(tuple(ordered))

    @classmethod
    def of(cls, *kinds: OrbitKind) -> "OrbitSet":
        """Orbit set with one unit of multiplicity per argument."""
        return cls.from_counts((kind, 1) for kind in kinds)

    @classmethod
    def empty(cls) -> "OrbitSet":
        return cls(())

    def __iter__(self) -> Iterator[Entry]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __str__(self) -> str:
        from src.orbits.grammar import format_orbitset

        return format_orbitset(self)

    @property
    def is_empty(self) -> bool:
        return not self.entries

    @property
    def degree(self) -> int:
        return sum(kind.degree * mult for kind, mult in self.entries)

    @property
    def sort_key(self) -> tuple:
        return tuple((kind.sort_key, mult) for kind, mult in self.entries)

    def multiplicity(self, kind: OrbitKind) -> int:
        for entry_kind, mult in self.entries:
            if entry_kind == kind:
                return mult
        return 0

    def slope_entries(self) -> Tuple[Entry, ...]:
        return tuple(entry for entry in self.entries if entry[0].is_slope)

    def morse_entries(self) -> Tuple[Entry, ...]:
        return tuple(entry for entry in self.entries if entry[0].is_morse)

    def slope_part(self) -> "OrbitSet":
        return OrbitSet(self.slope_entries())

    def flat_slope_list(self) -> List[Tuple[int, int]]:
        """(p, q) of each slope orbit repeated by multiplicity, slope descending."""
        return [(kind.p, kind.q) for kind, mult in self.slope_entries() for _ in range(mult)]

    def elliptic_multiplicity(self, slope_only: bool = True) -> int:
        entries = self.slope_entries() if slope_only else self.entries
        return sum(mult for kind, mult in entries if kind.is_elliptic)

    def hyperbolic_count(self) -> int:
        return sum(mult for kind, mult in self.entries if kind.is_hyperbolic)

    def kinds(self) -> Tuple[OrbitKind, ...]:
        return tuple(kind for kind, _ in self.entries)


def degree(alpha: OrbitSet) -> int:
    return alpha.degree


def is_ech_generator(alpha: OrbitSet) -> bool:
    return all(mult == 1 for kind, mult in alpha if kind.is_hyperbolic)


def farey_slopes(order: int) -> List[Fraction]:
    """Farey fractions of the given order on [0, 1], ascending."""
    if order < 0:
        raise DomainError(f"Farey order must be nonnegative, got {order}.")
    if order == 0:
        return []
    a, b, c, d = 0, 1, 1, order
    slopes = [Fraction(a, b)]
    while c <= order:
        k = (order + b) // d
        a, b, c, d = c, d, k * c - a, k * d - b
        slopes.append(Fraction(a, b))
    return slopes


def morse_kinds(morse: MorseConfig) -> List[OrbitKind]:
    kinds = [OrbitKind.morse_positive(label) for label in morse.positive_labels]
    kinds += [OrbitKind.morse_negative(label) for label in morse.negative_labels]
    kinds += [OrbitKind.morse_saddle(label) for label in morse.saddle_labels]
    return sorted(kinds, key=lambda kind: kind.sort_key)


def orbit_roster(Q: int, morse: MorseConfig = MorseConfig()) -> List[OrbitKind]:
    """All orbits of degree at most Q, in canonical order."""
    kinds: List[OrbitKind] = []
    for slope in reversed(farey_slopes(Q)):
        kinds.append(OrbitKind.slope_elliptic(slope.numerator, slope.denominator))
        kinds.append(OrbitKind.slope_hyperbolic(slope.numerator, slope.denominator))
    return kinds + morse_kinds(morse)


def count_generators(Q: int, morse: MorseConfig = MorseConfig()) -> int:
    """
    Number of ECH generators of degree Q.

    Coefficient of x^Q in the product of 1/(1 - x^d) over elliptic orbits
    and (1 + x^d) over hyperbolic orbits of degree d.
    """
    if Q < 0:
        raise DomainError(f"Degree must be nonnegative, got {Q}.")
    coefficients = [0] * (Q + 1)
    coefficients[0] = 1
    for kind in orbit_roster(Q, morse):
        d = kind.degree
        if kind.is_hyperbolic:
            for n in range(Q, d - 1, -1):
                coefficients[n] += coefficients[n - d]
        else:
            for n in range(d, Q + 1):
                coefficients[n] += coefficients[n - d]
    return coefficients[Q]


def _extend(roster: Sequence[OrbitKind], start: int, remaining: int, chosen: List[Entry]) -> Iterator[Tuple[Entry, ...]]:
    if remaining == 0:
        yield tuple(chosen)
        return
    for index in range(start, len(roster)):
        kind = roster[index]
        most = 1 if kind.is_hyperbolic else remaining // kind.degree
        for mult in range(1, most + 1):
            chosen.append((kind, mult))
            yield from _extend(roster, index + 1, remaining - mult * kind.degree, chosen)
            chosen.pop()


def enumerate_generators(
    Q: int, morse: MorseConfig = MorseConfig(), cap: int = DEFAULT_ENUMERATION_CAP
) -> List[OrbitSet]:
    """
    Every ECH generator of degree exactly Q, sorted canonically.

    Args:
        Q: Degree, at least 0 (degree 0 gives only the empty set).
        morse: Interior critical points of the perturbing Morse function.
        cap: Largest number of generators the caller accepts.

    Raises:
        EnumerationCapError: The count exceeds cap; nothing is enumerated.
    """
    expected = count_generators(Q, morse)
    if expected > cap:
        raise EnumerationCapError(f"Degree {Q} has {expected} generators, above the cap of {cap}.")
    roster = orbit_roster(Q, morse)
    generators = [OrbitSet(entries) for entries in _extend(roster, 0, Q, [])]
    generators.sort(key=lambda alpha: alpha.sort_key)
    if len(generators) != expected:
        raise ConsistencyError(
            f"Enumeration produced {len(generators)} generators of degree {Q}, expected {expected}."
        )
    logger.debug(f"Enumerated {len(generators)} generators of degree {Q} over {len(roster)} orbits.")
    return generators


def classify_elliptic(theta: float, q: int, Q: int) -> EllipticClass:
    """
    Q-positive iff theta mod 1 lies in (0, q/Q), Q-negative iff it lies in
    (1 - q/Q, 1). When q = Q the intervals coincide and Q-positive wins.
    """
    if Q < 1:
        raise DomainError(f"Degree bound must be positive, got {Q}.")
    if q < 1 or q > Q:
        raise DomainError(f"Orbit degree {q} must lie in [1, {Q}].")
    frac = Fraction(theta) % 1 if isinstance(theta, (int, Fraction)) else theta % 1.0
    ratio = Fraction(q, Q)
    if 0 < frac < ratio:
        return EllipticClass.Q_POSITIVE
    if 1 - ratio < frac < 1:
        return EllipticClass.Q_NEGATIVE
    return EllipticClass.NEITHER


def elliptic_class_of_morse(kind: OrbitKind) -> EllipticClass:
    """Slope elliptic orbits and Hessian-positive points are Q-negative; Hessian-negative points are Q-positive."""
    if kind.is_hyperbolic:
        raise DomainError(f"{kind} is hyperbolic.")
    if kind.family is OrbitFamily.MORSE_NEGATIVE:
        return EllipticClass.Q_POSITIVE
    return EllipticClass.Q_NEGATIVE


def random_orbitset(rng: np.random.Generator, max_q: int, max_terms: int = 5, max_mult: int = 3) -> OrbitSet:
    """Random slope-only orbit set, hyperbolic multiplicities allowed above one."""
    slopes = farey_slopes(max_q)
    counts: Dict[OrbitKind, int] = {}
    for _ in range(int(rng.integers(1, max_terms + 1))):
        slope = slopes[int(rng.integers(len(slopes)))]
        maker = OrbitKind.slope_elliptic if rng.random() < 0.5 else OrbitKind.slope_hyperbolic
        kind = maker(slope.numerator, slope.denominator)
        counts[kind] = counts.get(kind, 0) + int(rng.integers(1, max_mult + 1))
    return OrbitSet.from_counts(counts)
