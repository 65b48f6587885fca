from itertools import combinations

import pytest

from app.core.exceptions import DegreeOutOfRangeError, PreconditionError
from app.services.cohomology import cobound_reduce
from app.services.lifting.bracket import bracket, maurer_cartan_check
from app.services.lifting.homotopy import solve_homotopy_lifting
from tests.helpers import cochain, fixture_path


def lifted(context, degree, *values, through=3):
    eta = cochain(context, degree, *values)
    return eta, solve_homotopy_lifting(eta, through)


def test_bracket_of_the_anticommuting_derivation_with_itself(anticommuting):
    theta, psi = lifted(anticommuting, 1, "0", "y", through=2)
    result = bracket(theta, theta, psi, psi)
    assert result.degree == 1
    assert result.raw.is_zero()
    assert result.reduced.is_zero()


def test_bracket_on_truncated_polynomial(truncated_x2):
    eta, psi_eta = lifted(truncated_x2, 1, "x")
    chi, psi_chi = lifted(truncated_x2, 2, "x")
    result = bracket(eta, chi, psi_eta, psi_chi)
    assert result.degree == 2
    assert result.sign == truncated_x2.complex.field.one
    assert result.raw.row == ["-x"]
    assert result.reduced.is_zero()


def test_unit_valued_bracket_vanishes(a1):
    sigma = a1.load_cochain(fixture_path("a1_sigma.json"))
    psi = solve_homotopy_lifting(sigma, 3)
    assert bracket(sigma, sigma, psi, psi).raw.is_zero()


def test_arrow_valued_self_bracket_vanishes(a1):
    eta = a1.load_cochain(fixture_path("a1_eta_a.json"))
    psi = solve_homotopy_lifting(eta, 3)
    assert bracket(eta, eta, psi, psi).raw.is_zero()


@pytest.mark.parametrize(
    "values",
    [
        ("a", "0", "0", "0"),
        ("a*b", "0", "0", "0"),
        ("0", "a*b", "0", "0"),
        ("0", "0", "a", "0"),
        ("0", "0", "e1", "0"),
    ],
)
def test_maurer_cartan_holds_on_a1(a1, values):
    eta, psi = lifted(a1, 2, *values)
    report = maurer_cartan_check(eta, psi)
    assert report.holds
    assert report.class_vanishes
    assert len(report.rows) == 5
    assert all(row.total == "0" for row in report.rows)


def test_maurer_cartan_needs_degree_two(truncated_x2):
    eta, psi = lifted(truncated_x2, 1, "x")
    with pytest.raises(PreconditionError):
        maurer_cartan_check(eta, psi)


def test_lifting_must_belong_to_the_cochain(truncated_x2):
    eta, psi_eta = lifted(truncated_x2, 1, "x")
    chi, psi_chi = lifted(truncated_x2, 2, "x")
    with pytest.raises(PreconditionError):
        bracket(eta, chi, psi_chi, psi_eta)


def test_bracket_degree_must_be_constructed(truncated_x2):
    phi, psi = lifted(truncated_x2, 4, "e1", through=6)
    with pytest.raises(DegreeOutOfRangeError):
        bracket(phi, phi, psi, psi)


def test_bracket_is_graded_antisymmetric_on_hh2_of_a1(a1):
    classes = [
        lifted(a1, 2, *values)
        for values in [
            ("a", "0", "0", "0"),
            ("a*b", "0", "0", "0"),
            ("0", "a*b", "0", "0"),
            ("0", "0", "a", "0"),
            ("0", "0", "e1", "0"),
        ]
    ]
    # (-1)^{(2-1)(2-1)} = -1
    for (eta, psi_eta), (theta, psi_theta) in combinations(classes, 2):
        forward = bracket(eta, theta, psi_eta, psi_theta).raw
        backward = bracket(theta, eta, psi_theta, psi_eta).raw
        assert cobound_reduce(forward - backward).is_zero()
