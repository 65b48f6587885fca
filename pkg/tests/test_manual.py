import json

import pytest

from app.core.dependencies import ComputationContext
from app.core.exceptions import ManualResolutionError, VerificationError
from app.models.spec_document import QuiverSpecDocument
from app.services.resolution.complex import MANUAL
from app.services.resolution.verify import COASSOCIATIVITY, verify_complex
from tests.helpers import fixture_path


def manual_document(edit=None) -> ComputationContext:
    data = json.loads(fixture_path("truncated_x3_manual.json").read_text())
    if edit is not None:
        edit(data["resolution"])
    return ComputationContext(QuiverSpecDocument.model_validate(data))


def test_manual_resolution_loads(truncated_x3):
    K = truncated_x3.complex
    assert K.kind == MANUAL
    assert not K.has_tensor_forms
    assert K.max_degree == 6
    assert [K.count(n) for n in range(7)] == [1] * 7


def test_weights_are_inferred_from_the_differential(truncated_x3):
    K = truncated_x3.complex
    assert [K.generators[n][0].weight for n in range(7)] == [0, 1, 3, 4, 6, 7, 9]


def test_differentials_of_both_parities(truncated_x3):
    K = truncated_x3.complex
    assert K.d(K.basis_section(3, 0)).text == "-eps2_0*x + x*eps2_0"
    assert K.d(K.basis_section(4, 0)).text == "eps3_0*x*x + x*eps3_0*x + x*x*eps3_0"


def test_coassociativity_is_advisory_for_manual_input(truncated_x3):
    report = verify_complex(truncated_x3.complex)
    assert report.passed
    rows = [c for c in report.checks if c.property == COASSOCIATIVITY]
    assert rows and not any(c.mandatory for c in rows)


def test_requested_degree_caps_the_loaded_range():
    context = ComputationContext.from_file(fixture_path("truncated_x3_manual.json"), max_degree=4)
    assert context.complex.max_degree == 4


def test_missing_differential_term_fails_verification():
    def drop_middle_term(resolution):
        del resolution["differential"][3]

    context = manual_document(drop_middle_term)
    with pytest.raises(VerificationError) as info:
        context.complex
    assert "d_squared" in info.value.message


def test_missing_degree_is_reported():
    def drop_degree(resolution):
        resolution["generators"] = [g for g in resolution["generators"] if g["degree"] != 3]

    with pytest.raises(ManualResolutionError) as info:
        manual_document(drop_degree).complex
    assert "degree 3" in info.value.message


def test_coefficient_must_fit_the_generators():
    def bad_index(resolution):
        resolution["differential"][0]["to_index"] = 4

    with pytest.raises(ManualResolutionError):
        manual_document(bad_index).complex
