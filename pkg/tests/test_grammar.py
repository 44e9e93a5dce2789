import pytest
from hypothesis import given

from src.orbits.grammar import format_orbitset, parse_orbitset
from src.orbits.orbit_model import E0, E1, H0, OrbitKind, OrbitSet
from src.utils.errors import DomainError, OrbitParseError
from tests.strategies import orbit_sets


def test_parse_slope_terms():
    assert parse_orbitset("e[1/2]^2 h0") == OrbitSet.from_counts({OrbitKind.slope_elliptic(1, 2): 2, H0: 1})


def test_parse_morse_terms():
    alpha = parse_orbitset("e-:a^3 e1")
    assert alpha == OrbitSet.from_counts({OrbitKind.morse_positive("a"): 3, E1: 1})
    assert parse_orbitset("e+:b h:c").kinds() == (OrbitKind.morse_negative("b"), OrbitKind.morse_saddle("c"))


def test_parse_merges_repeated_terms():
    assert parse_orbitset("  e0 e0^2 ") == OrbitSet.from_counts({E0: 3})


def test_empty_set():
    assert parse_orbitset("empty") == OrbitSet.empty()
    assert format_orbitset(OrbitSet.empty()) == "empty"


@pytest.mark.parametrize("text", ["e[2/4]", "e[3/2]", "e[1/2]^0", "h[-1/2]"])
def test_semantic_errors(text):
    with pytest.raises(DomainError):
        parse_orbitset(text)


@pytest.mark.parametrize(
    "text, position",
    [
        ("", 0), ("x", 0), ("e0e1", 1), ("e[1/2", 5), ("e[1/2]^", 7), ("e0 ^2", 3),
        # non-ASCII digits are not integers
        ("e[1/2]^²", 7), ("e[³/4]", 2),
    ],
)
def test_syntax_errors_report_position(text, position):
    with pytest.raises(OrbitParseError) as info:
        parse_orbitset(text)
    assert info.value.position == position
    assert info.value.expected
    assert info.value.exit_code == 2


def test_parse_error_is_not_a_domain_error():
    with pytest.raises(OrbitParseError):
        parse_orbitset("e[1/2]]")
    assert not issubclass(OrbitParseError, DomainError)


@given(orbit_sets(generators_only=False))
def test_text_form_reads_back(alpha):
    assert parse_orbitset(format_orbitset(alpha)) == alpha
