from fractions import Fraction

import numpy as np
import pytest

from src.orbits.orbit_model import (
    E0,
    E1,
    H0,
    H1,
    EllipticClass,
    OrbitKind,
    OrbitSet,
    classify_elliptic,
    count_generators,
    elliptic_class_of_morse,
    enumerate_generators,
    farey_slopes,
    is_ech_generator,
    orbit_roster,
    random_orbitset,
)
from src.utils.errors import DomainError, EnumerationCapError
from src.validator.data_model import MorseConfig

HALF_E = OrbitKind.slope_elliptic(1, 2)
HALF_H = OrbitKind.slope_hyperbolic(1, 2)


def test_degree():
    assert OrbitSet.empty().degree == 0
    assert OrbitSet.of(HALF_E).degree == 2
    assert OrbitSet.from_counts({E0: 2, E1: 1, OrbitKind.morse_saddle("a"): 1}).degree == 4


def test_is_ech_generator():
    assert not is_ech_generator(OrbitSet.from_counts({HALF_H: 2}))
    assert is_ech_generator(OrbitSet.from_counts({HALF_E: 5}))
    assert is_ech_generator(OrbitSet.of(H0, H1))


def test_orbit_kind_validation():
    with pytest.raises(DomainError):
        OrbitKind.slope_elliptic(2, 4)
    with pytest.raises(DomainError):
        OrbitKind.slope_elliptic(3, 2)
    with pytest.raises(DomainError):
        OrbitKind.morse_saddle("")


def test_orbit_set_requires_canonical_entries():
    with pytest.raises(DomainError):
        OrbitSet(((E0, 1), (E1, 1)))
    with pytest.raises(DomainError):
        OrbitSet(((E1, 0),))


def test_from_counts_merges_and_orders():
    alpha = OrbitSet.from_counts([(E0, 1), (E1, 1), (E0, 2)])
    assert alpha.entries == ((E1, 1), (E0, 3))


def test_morse_orbits_follow_slope_orbits():
    saddle = OrbitKind.morse_saddle("a")
    positive = OrbitKind.morse_positive("a")
    alpha = OrbitSet.of(saddle, E0, positive, HALF_E)
    assert alpha.kinds() == (HALF_E, E0, positive, saddle)


def test_farey_slopes():
    assert farey_slopes(0) == []
    assert farey_slopes(3) == [Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(1)]


def test_orbit_roster_is_canonical():
    roster = orbit_roster(3, MorseConfig(n_positive=1, n_saddle=1))
    keys = [kind.sort_key for kind in roster]
    assert keys == sorted(keys)
    assert roster[:2] == [E1, H1]


def test_enumerate_degree_zero():
    assert enumerate_generators(0) == [OrbitSet.empty()]


def test_enumerate_degree_one():
    generators = enumerate_generators(1)
    assert {str(alpha) for alpha in generators} == {"e0", "h0", "e1", "h1"}


def test_enumerate_degree_two():
    expected = {
        "e0^2", "e1 e0", "e1^2", "e0 h0", "h1 e0", "e1 h0", "e1 h1", "h1 h0", "e[1/2]", "h[1/2]",
    }
    assert {str(alpha) for alpha in enumerate_generators(2)} == expected


@pytest.mark.parametrize("Q", range(7))
def test_count_matches_enumeration(Q):
    assert count_generators(Q) == len(enumerate_generators(Q))


def test_count_with_interior_points():
    morse = MorseConfig(n_positive=1, n_negative=1, n_saddle=2)
    for Q in range(5):
        assert count_generators(Q, morse) == len(enumerate_generators(Q, morse))


def test_enumeration_is_sorted_and_distinct():
    generators = enumerate_generators(5, MorseConfig(n_saddle=1))
    keys = [alpha.sort_key for alpha in generators]
    assert all(a < b for a, b in zip(keys, keys[1:]))


def test_enumeration_cap():
    with pytest.raises(EnumerationCapError):
        enumerate_generators(2, cap=5)


@pytest.mark.parametrize(
    "theta, q, Q, expected",
    [
        (0.01, 1, 5, EllipticClass.Q_POSITIVE),
        (-0.01, 1, 5, EllipticClass.Q_NEGATIVE),
        (0.5, 1, 5, EllipticClass.NEITHER),
        (Fraction(1, 2), 1, 1, EllipticClass.Q_POSITIVE),
    ],
)
def test_classify_elliptic(theta, q, Q, expected):
    assert classify_elliptic(theta, q, Q) is expected


def test_classify_elliptic_rejects_large_degree():
    with pytest.raises(DomainError):
        classify_elliptic(0.1, 6, 5)


def test_elliptic_class_of_morse():
    assert elliptic_class_of_morse(OrbitKind.morse_positive("a")) is EllipticClass.Q_NEGATIVE
    assert elliptic_class_of_morse(OrbitKind.morse_negative("a")) is EllipticClass.Q_POSITIVE
    with pytest.raises(DomainError):
        elliptic_class_of_morse(OrbitKind.morse_saddle("a"))


def test_random_orbitset_is_seeded():
    first = random_orbitset(np.random.default_rng(3), 5)
    second = random_orbitset(np.random.default_rng(3), 5)
    assert first == second
    assert all(kind.is_slope and kind.q <= 5 for kind in first.kinds())
