import pytest
from hypothesis import given

from src.homology.homology import (
    AbelianGroup,
    IntegerMatrix,
    SmithNormalForm,
    cokernel,
    dehn_twist_action,
    h1_mapping_torus,
    lefschetz_constants,
    smith_normal_form,
    symplectic_form,
)
from src.utils.errors import DomainError
from tests.strategies import small_matrices


def test_smith_normal_form_examples():
    assert smith_normal_form(IntegerMatrix.identity(3)) == (1, 1, 1)
    assert smith_normal_form(IntegerMatrix.from_rows([[2, 0], [0, 4]])) == (2, 4)
    assert smith_normal_form(IntegerMatrix.from_rows([[2, 4], [6, 8]])) == (2, 4)
    assert smith_normal_form(IntegerMatrix.from_rows([[0, 0], [0, 0]])) == ()


def test_cokernel_with_torsion():
    assert cokernel(IntegerMatrix.from_rows([[2, 0], [0, 3]])) == AbelianGroup(0, (6,))
    assert str(cokernel(IntegerMatrix.from_rows([[2, 0], [0, 0], [0, 0]]))) == "Z^2 + Z/2"


@given(small_matrices)
def test_smith_form_certificate(rows):
    matrix = IntegerMatrix.from_rows(rows)
    snf = SmithNormalForm(matrix)
    assert snf.left @ matrix @ snf.right == snf.diagonal
    assert abs(snf.left.determinant()) == 1
    assert abs(snf.right.determinant()) == 1
    factors = snf.invariant_factors
    assert all(f > 0 for f in factors)
    assert all(b % a == 0 for a, b in zip(factors, factors[1:]))


def test_twist_action_genus_one():
    assert dehn_twist_action(1).to_list() == [[1, 1], [0, 1]]


@pytest.mark.parametrize("genus", range(1, 6))
def test_twist_is_symplectic(genus):
    twist = dehn_twist_action(genus)
    form = symplectic_form(genus)
    assert twist.transpose() @ form @ twist == form
    assert twist.determinant() == 1


@pytest.mark.parametrize("genus", [2, 5])
def test_mapping_torus_homology(genus):
    group = h1_mapping_torus(genus)
    assert group.free_rank == 2 * genus
    assert group.is_free


def test_identity_monodromy():
    assert h1_mapping_torus(3, IntegerMatrix.identity(6)).free_rank == 7


def test_non_primitive_curve_rejected():
    with pytest.raises(DomainError):
        dehn_twist_action(2, [2, 0, 0, 0])


def test_lefschetz_constants():
    constants = lefschetz_constants(4)
    assert constants["H2(X)"].group == AbelianGroup(1)
    assert constants["H2(X)"].generator == "[F]"
    assert constants["H2(X,dX)"].group == AbelianGroup(1)
    assert constants["H1(X)"].group.free_rank == 7


def test_abelian_group_validation():
    with pytest.raises(DomainError):
        AbelianGroup(0, (4, 6))
    with pytest.raises(DomainError):
        AbelianGroup(0, (1,))
