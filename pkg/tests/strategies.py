"""Hypothesis strategies shared across the test modules."""
from hypothesis import strategies as st

from src.orbits.orbit_model import OrbitKind, OrbitSet, farey_slopes


@st.composite
def slope_kinds(draw, max_q: int = 6):
    slope = draw(st.sampled_from(farey_slopes(max_q)))
    maker = draw(st.sampled_from([OrbitKind.slope_elliptic, OrbitKind.slope_hyperbolic]))
    return maker(slope.numerator, slope.denominator)


@st.composite
def orbit_sets(draw, max_q: int = 6, generators_only: bool = True):
    counts = draw(st.dictionaries(slope_kinds(max_q), st.integers(1, 3), min_size=1, max_size=4))
    if generators_only:
        counts = {kind: (1 if kind.is_hyperbolic else mult) for kind, mult in counts.items()}
    return OrbitSet.from_counts(counts)


lattice_points = st.tuples(st.integers(-4, 4), st.integers(-4, 4))
point_clouds = st.lists(lattice_points, min_size=1, max_size=7)

small_matrices = st.integers(1, 4).flatmap(
    lambda rows: st.integers(1, 4).flatmap(
        lambda cols: st.lists(
            st.lists(st.integers(-9, 9), min_size=cols, max_size=cols), min_size=rows, max_size=rows
        )
    )
)
