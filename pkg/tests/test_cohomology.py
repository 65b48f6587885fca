import pytest

from app.core.exceptions import PreconditionError
from app.services.algebra.field import Field
from app.services.cohomology import (
    Cochain,
    cobound_reduce,
    coboundary,
    cochain_space,
    cohomology_basis,
    induced_matrix,
    is_coboundary,
    is_cocycle,
)
from app.utils import linalg
from tests.helpers import cochain, context_for, fixture_path


def test_cochain_values_are_reduced(a1):
    eta = cochain(a1, 2, "a*b", "0", "0", "0")
    assert eta.row == ["b*a", "0", "0", "0"]
    assert eta.shifts() == [0]
    assert not eta.is_zero()


def test_cochain_shape_is_checked(a1):
    with pytest.raises(PreconditionError):
        cochain(a1, 2, "a", "0", "0")
    with pytest.raises(PreconditionError):
        cochain(a1, 2, "c", "0", "0", "0")


def test_hh2_of_a1(a1):
    result = cohomology_basis(a1.complex, 2)
    assert result.cochain_dimension == 14
    assert result.dimension == 5
    assert len(result.representatives) == 5
    assert all(is_cocycle(r) for r in result.representatives)
    assert not any(is_coboundary(r) for r in result.representatives)


def test_coboundaries_reduce_to_zero(a1):
    assert is_coboundary(cochain(a1, 2, "0", "0", "b", "0"))
    assert cobound_reduce(cochain(a1, 2, "0", "0", "b", "0")).is_zero()


def test_cobound_reduce_identifies_classes(a1):
    left = cobound_reduce(cochain(a1, 2, "0", "0", "0", "c"))
    right = cobound_reduce(cochain(a1, 2, "a", "0", "0", "0")).scale(-2)
    assert left == right
    assert not left.is_zero()


def test_coboundary_of_a_coboundary_vanishes(a1):
    phi = Cochain.from_terms(a1.complex, 1, {})
    assert coboundary(phi).is_zero()
    psi = cochain(a1, 1, "a", "b*a", "0")
    assert is_cocycle(coboundary(psi))


def test_truncated_polynomial_cohomology(truncated_x2):
    K = truncated_x2.complex
    assert [cohomology_basis(K, n).dimension for n in range(4)] == [2, 1, 1, 1]
    assert cohomology_basis(K, 2).representatives[0].row == ["e1"]


def test_induced_matrix_is_multiplication_by_twice_x(truncated_x2):
    K = truncated_x2.complex
    even = induced_matrix(K, 2)
    assert all(not column for column in even.columns)
    odd = induced_matrix(K, 1)
    assert odd.source.dimension == odd.target.dimension == 2
    assert len(odd.rows()) == 1


def test_characteristic_two_kills_the_differential():
    context = context_for("truncated_x2.json", field_override=Field.prime(2), max_degree=4)
    assert cohomology_basis(context.complex, 2).dimension == 2


def test_lifting_fixtures_are_cocycles(truncated_x2):
    assert is_cocycle(truncated_x2.load_cochain(fixture_path("x2_eta.json")))
    assert is_cocycle(truncated_x2.load_cochain(fixture_path("x2_chi.json")))


def test_infinite_algebra_needs_a_shift(anticommuting):
    K = anticommuting.complex
    with pytest.raises(PreconditionError):
        cochain_space(K, 1)
    assert cochain_space(K, 1, shift=0).dimension == 4
    assert cohomology_basis(K, 1, shift=0).dimension == 3


def test_anticommuting_derivation_is_a_cocycle(anticommuting):
    theta = cochain(anticommuting, 1, "0", "y")
    assert theta.shifts() == [0]
    assert is_cocycle(theta)
    assert not is_coboundary(theta)


A1_SECTION_VALUES = [
    ("a", "0", "0", "0"),
    ("a*b", "0", "0", "0"),
    ("0", "0", "a", "0"),
    ("0", "0", "b", "0"),
    ("0", "0", "a*b", "0"),
    ("0", "0", "e1", "0"),
    ("0", "a*b", "0", "0"),
    ("0", "0", "0", "c"),
    ("0", "0", "0", "b*c"),
]

A1_CLASSES = [
    ("a", "0", "0", "0"),
    ("a*b", "0", "0", "0"),
    ("0", "a*b", "0", "0"),
    ("0", "0", "a", "0"),
    ("0", "0", "e1", "0"),
]


def test_single_entry_cocycles_of_a1_span_the_kernel(a1):
    K = a1.complex
    space = cochain_space(K, 2)
    cocycles = [cochain(a1, 2, *values) for values in A1_SECTION_VALUES]
    assert all(is_cocycle(eta) for eta in cocycles)
    assert linalg.rank([space.vector(eta) for eta in cocycles], K.field.domain, space.dimension) == 9
    result = cohomology_basis(K, 2)
    assert (result.kernel_dimension, result.image_dimension) == (9, 4)

    trivial = [values for values, eta in zip(A1_SECTION_VALUES, cocycles) if is_coboundary(eta)]
    assert trivial == [("0", "0", "b", "0"), ("0", "0", "a*b", "0")]
    # d*(e1, 0, 0) and d*(b, 0, 0) also hit the a^2 component
    for edge, loop in [("c", "a"), ("b*c", "a*b")]:
        left = cobound_reduce(cochain(a1, 2, "0", "0", "0", edge))
        assert left == cobound_reduce(cochain(a1, 2, loop, "0", "0", "0")).scale(-2)


def test_hh2_classes_of_a1(a1):
    K = a1.complex
    space = cochain_space(K, 2)
    domain = K.field.domain

    def reduced(eta):
        return space.vector(cobound_reduce(eta))

    classes = [reduced(cochain(a1, 2, *values)) for values in A1_CLASSES]
    assert linalg.rank(classes, domain, space.dimension) == 5
    for representative in cohomology_basis(K, 2).representatives:
        assert linalg.rank(classes + [reduced(representative)], domain, space.dimension) == 5
