import pytest

from app.core.exceptions import PreconditionError
from app.services.lifting.homotopy import homotopy_residual, solve_homotopy_lifting, verify_homotopy
from tests.helpers import cochain, fixture_path


def scalar_multiple(K, m, scalar):
    return K.basis_section(m, 0).scale(K.field(scalar))


def test_euler_derivation_on_truncated_polynomial(truncated_x2):
    K = truncated_x2.complex
    eta = truncated_x2.load_cochain(fixture_path("x2_eta.json"))
    psi = solve_homotopy_lifting(eta)
    for m in range(1, 7):
        assert psi.value(m, 0) == scalar_multiple(K, m, m)
    assert psi.rows()[0] == (1, 0, "eps1_0")
    assert verify_homotopy(psi).passed


def test_degree_two_lifting_on_truncated_polynomial(truncated_x2):
    K = truncated_x2.complex
    chi = truncated_x2.load_cochain(fixture_path("x2_chi.json"))
    psi = solve_homotopy_lifting(chi)
    for m in range(2, 7):
        expected = K.basis_section(m - 1, 0) if m % 2 == 0 else K.zero_section(m - 1)
        assert psi.value(m, 0) == expected
    report = verify_homotopy(psi)
    assert report.passed
    assert report.verified_through() == 6


def test_lower_degrees_map_to_zero(truncated_x2):
    chi = truncated_x2.load_cochain(fixture_path("x2_chi.json"))
    psi = solve_homotopy_lifting(chi, 4)
    assert not psi.value(1, 0)
    with pytest.raises(PreconditionError):
        psi.value(5, 0)


def test_anticommuting_derivation(anticommuting):
    theta = cochain(anticommuting, 1, "0", "y")
    K = anticommuting.complex
    psi = solve_homotopy_lifting(theta, 2)
    assert not psi.value(1, 0)
    assert psi.value(1, 1) == K.basis_section(1, 1)
    assert not psi.value(2, 0)
    assert psi.value(2, 1) == K.basis_section(2, 1)
    assert verify_homotopy(psi).passed


def test_unit_valued_cocycle_has_zero_lifting(a1):
    sigma = a1.load_cochain(fixture_path("a1_sigma.json"))
    psi = solve_homotopy_lifting(sigma)
    assert psi.is_zero()
    assert verify_homotopy(psi).passed


def test_a1_arrow_valued_cocycle_lifts(a1):
    eta = a1.load_cochain(fixture_path("a1_eta_a.json"))
    psi = solve_homotopy_lifting(eta)
    report = verify_homotopy(psi)
    assert report.passed
    assert report.verified_through() == 4


def test_manual_resolution_lifting(truncated_x3):
    K = truncated_x3.complex
    alpha = cochain(truncated_x3, 1, "x")
    psi = solve_homotopy_lifting(alpha)
    expected = {1: 1, 2: 3, 3: 4, 4: 6, 5: 7, 6: 9}
    for m, scalar in expected.items():
        assert psi.value(m, 0) == scalar_multiple(K, m, scalar)
    assert verify_homotopy(psi).passed


def test_broken_lifting_is_detected(truncated_x2):
    K = truncated_x2.complex
    eta = truncated_x2.load_cochain(fixture_path("x2_eta.json"))
    psi = solve_homotopy_lifting(eta)
    psi.sections[(3, 0)] = K.basis_section(3, 0)
    assert homotopy_residual(psi, 3, 0)
    report = verify_homotopy(psi)
    assert not report.passed
    assert report.verified_through() == 2


def test_non_cocycles_are_rejected(truncated_x2):
    with pytest.raises(PreconditionError):
        solve_homotopy_lifting(cochain(truncated_x2, 1, "e1"))
    with pytest.raises(PreconditionError):
        solve_homotopy_lifting(cochain(truncated_x2, 0, "x"))


@pytest.mark.parametrize(
    "values",
    [
        ("a", "0", "0", "0"),
        ("a*b", "0", "0", "0"),
        ("0", "a*b", "0", "0"),
        ("0", "0", "a", "0"),
        ("0", "0", "e1", "0"),
    ],
    ids=["eta", "eta_bar", "chi_bar", "chi", "sigma"],
)
def test_hh2_representatives_of_a1_lift_through_degree_three(a1, values):
    psi = solve_homotopy_lifting(cochain(a1, 2, *values), 3)
    report = verify_homotopy(psi)
    assert report.passed
    assert report.verified_through() == 3
