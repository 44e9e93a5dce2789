import itertools

import pytest
from hypothesis import given

from src.index.ech_index import (
    CZ_TABLE,
    closed_fiber_index,
    conley_zehnder,
    ech_index_area,
    ech_index_components,
    ech_index_shifted,
    ech_index_shifted_components,
    ech_index_sum,
    index_report,
    parity_violations,
    path_area2,
    q_tau_bilinear,
    q_tau_flat,
    q_tau_pair,
    q_tau_total,
    relative_chern,
)
from src.orbits.orbit_model import E0, E1, OrbitFamily, OrbitKind, OrbitSet, enumerate_generators
from src.utils.errors import ConsistencyError, DomainError
from src.validator.data_model import MorseConfig, TwistProfile
from tests.strategies import orbit_sets

HALF_E = OrbitKind.slope_elliptic(1, 2)
HALF_H = OrbitKind.slope_hyperbolic(1, 2)


def test_conley_zehnder_values():
    assert conley_zehnder(HALF_E, iterate=2) == -1
    assert conley_zehnder(OrbitKind.morse_saddle("a")) == 0
    assert conley_zehnder(OrbitKind.morse_negative("a")) == 1
    assert conley_zehnder(E0) == -1


def test_conley_zehnder_iterate_guard():
    with pytest.raises(DomainError):
        conley_zehnder(HALF_E, iterate=3, degree_bound=2)
    with pytest.raises(DomainError):
        conley_zehnder(HALF_E, iterate=0)


def test_relative_chern():
    assert relative_chern(OrbitSet.of(HALF_E)) == 2
    assert relative_chern(OrbitSet.empty()) == 0
    assert relative_chern(OrbitSet.of(E1, HALF_E)) == 3


@pytest.mark.parametrize(
    "pair, expected",
    [((1, 2, 1, 3), 1), ((1, 2, 0, 1), 0), ((1, 2, 1, 2), 1), ((2, 3, 1, 3), 1), ((1, 1, 0, 1), 0)],
)
def test_q_tau_pair(pair, expected):
    assert q_tau_pair(*pair) == expected


def test_q_tau_pair_rejects_bad_input():
    with pytest.raises(DomainError):
        q_tau_pair(1, 3, 1, 2)
    with pytest.raises(DomainError):
        q_tau_pair(2, 4, 1, 3)


def test_q_tau_total():
    assert q_tau_total(OrbitSet.of(HALF_E)) == 1
    assert q_tau_total(OrbitSet.of(E1, HALF_E)) == 1
    assert q_tau_total(OrbitSet.from_counts({E0: 4})) == 0


@given(orbit_sets(generators_only=False))
def test_q_tau_expansions_agree(alpha):
    assert q_tau_flat(alpha) == q_tau_bilinear(alpha)


@pytest.mark.parametrize("m, n", [(0, 0), (1, 0), (0, 3), (2, 2), (4, 1)])
def test_boundary_sets_have_index_zero(m, n):
    alpha = OrbitSet.from_counts({E1: m, E0: n})
    assert ech_index_sum(alpha) == 0
    assert ech_index_area(alpha) == 0
    assert path_area2(alpha) == m * m


def test_index_of_half_slope_orbits():
    assert ech_index_sum(OrbitSet.of(HALF_E)) == 2
    assert ech_index_sum(OrbitSet.of(HALF_H)) == 3
    assert ech_index_components(OrbitSet.of(HALF_E)) == 2
    assert ech_index_components(OrbitSet.of(HALF_H)) == 3
    assert ech_index_components(OrbitSet.from_counts({E0: 2})) == 0


def test_area_of_half_slope_path():
    # vertices (0,0), (1,2), (1,0)
    assert path_area2(OrbitSet.of(HALF_E)) == 2
    assert ech_index_area(OrbitSet.of(HALF_E)) == 2


def test_morse_contributions():
    assert ech_index_sum(OrbitSet.from_counts({OrbitKind.morse_positive("a"): 3})) == 0
    assert ech_index_sum(OrbitSet.from_counts({OrbitKind.morse_negative("a"): 2})) == 4
    assert ech_index_sum(OrbitSet.of(OrbitKind.morse_saddle("a"))) == 1


@given(orbit_sets())
def test_three_index_forms_agree(alpha):
    assert ech_index_sum(alpha) == ech_index_area(alpha) == ech_index_components(alpha)


@pytest.mark.parametrize("Q", range(6))
def test_all_generators_three_forms(Q):
    morse = MorseConfig(n_positive=1, n_negative=1, n_saddle=1)
    for alpha in enumerate_generators(Q, morse):
        assert ech_index_sum(alpha) == ech_index_area(alpha) == ech_index_components(alpha)


def test_ties_do_not_change_index():
    kinds = [HALF_E, HALF_H, OrbitKind.slope_elliptic(1, 3), E0]
    values = {ech_index_sum(OrbitSet.of(*order)) for order in itertools.permutations(kinds)}
    assert values == {ech_index_area(OrbitSet.of(*kinds))}


def test_corrupted_table_is_caught():
    table = dict(CZ_TABLE)
    table[OrbitFamily.SLOPE_ELLIPTIC] = 0
    with pytest.raises(ConsistencyError):
        ech_index_components(OrbitSet.of(HALF_E), cz_table=table)


def test_shifted_index_examples():
    assert ech_index_shifted(OrbitSet.from_counts({E0: 2}), 1, TwistProfile.default_for(5, 2)) == -4
    assert ech_index_shifted(OrbitSet.from_counts({E1: 3}), 2, TwistProfile.default_for(2, 3)) == 8


@given(orbit_sets())
def test_shift_is_linear_in_fibre_multiple(alpha):
    genus = alpha.degree + 3
    profile = TwistProfile.default_for(genus, alpha.degree)
    assert ech_index_shifted(alpha, 0, profile) == ech_index_sum(alpha)
    for m in range(-2, 3):
        step = ech_index_shifted(alpha, m + 1, profile) - ech_index_shifted(alpha, m, profile)
        assert step == 2 * (alpha.degree + 1 - genus)
        assert ech_index_shifted(alpha, m, profile) == ech_index_shifted_components(alpha, m, profile)


def test_high_degree_shifted_index_nonnegative():
    for Q in range(2, 6):
        generators = enumerate_generators(Q)
        for genus in range(2, Q + 1):
            profile = TwistProfile.default_for(genus, Q)
            assert all(ech_index_shifted(alpha, m, profile) >= 0 for alpha in generators for m in range(3))


def test_closed_fiber_index_negative():
    profile = TwistProfile.default_for(3, 1)
    assert [closed_fiber_index(k, profile) for k in range(1, 4)] == [-4, -8, -12]


def test_parity():
    generators = [alpha for Q in range(6) for alpha in enumerate_generators(Q)]
    assert parity_violations(generators) == []


def test_index_report_row():
    row = index_report(OrbitSet.of(HALF_E), 1, TwistProfile.default_for(5, 2))
    assert row["index_sum"] == row["index_area"] == row["index_components"] == 2
    assert row["c_tau"] == 2 and row["q_tau"] == 1 and row["cz_sum"] == -1
    assert row["index_shifted"] == 2 + 2 * (2 + 1 - 5)
