import pytest

from app.core.exceptions import AmbiguousLeadingTermError, RewriteLimitError, ValidationError
from app.services.algebra.element import PathElement
from app.services.algebra.parser import parse_linear_combination, parse_path, parse_spec
from app.services.algebra.quiver import Path
from app.services.reduction.basis import QuotientAlgebra, irr_basis
from app.services.reduction.system import (
    LEFTMOST,
    ReductionRule,
    ReductionSystem,
    check_diamond,
    default_reduction_system,
    overlaps,
    rules_from_relations,
)
from tests.helpers import fixture_path


@pytest.fixture
def a1_algebra():
    return parse_spec(fixture_path("A1.json").read_text())


@pytest.fixture
def a1_system(a1_algebra):
    return default_reduction_system(a1_algebra)


def path(text, system):
    return parse_path(text, system.quiver)


def test_default_rules_of_a1(a1_system):
    assert [r.text for r in a1_system.rules] == ["a*a -> 0", "b*b -> 0", "a*b -> b*a", "a*c -> 0"]


def test_leading_term_prefers_the_earlier_arrow():
    algebra = parse_spec(fixture_path("anticommuting_xy.json").read_text())
    assert [r.text for r in rules_from_relations(algebra)] == ["x*x -> 0", "x*y -> -y*x"]


def test_single_loop_rule():
    algebra = parse_spec(fixture_path("truncated_x2.json").read_text())
    assert [r.text for r in rules_from_relations(algebra)] == ["x*x -> 0"]


def test_normal_forms(a1_system):
    assert a1_system.reduce_path(path("a*b", a1_system)).text == "b*a"
    assert a1_system.reduce_path(path("b*a", a1_system)).text == "b*a"
    assert not a1_system.reduce_path(path("a*a*b", a1_system))


def test_trace_replays_to_the_normal_form(a1_system):
    trace = a1_system.normal_form_trace(path("a*b*a*b", a1_system))
    assert trace.steps
    assert trace.replay(a1_system) == trace.result


def test_leftmost_and_rightmost_agree_on_a_confluent_system(a1_system):
    quiver = a1_system.quiver
    layer = [Path.trivial(v) for v in quiver.vertices]
    checked = len(layer)
    for _ in range(6):
        layer = [
            p.compose(Path.of_arrow(arrow)) for p in layer for arrow in quiver.arrows if arrow.origin == p.terminal
        ]
        for target in layer:
            assert a1_system.reduce_path(target) == a1_system.reduce_path(target, LEFTMOST), target.text
        checked += len(layer)
    # 2 + 3 + 6 + 12 + 24 + 48 + 96
    assert checked == 191


def test_overlaps_of_a1(a1_system):
    assert [o.path.text for o in overlaps(a1_system)] == ["a*a*a", "a*a*b", "a*a*c", "a*b*b", "b*b*b"]


def test_self_overlap_of_a_square():
    algebra = parse_spec(fixture_path("truncated_x2.json").read_text())
    system = default_reduction_system(algebra)
    assert [o.path.text for o in overlaps(system)] == ["x*x*x"]


def test_disjoint_rules_have_no_overlaps():
    algebra = parse_spec(
        {
            "vertices": ["1"],
            "arrows": [{"name": n, "from": "1", "to": "1"} for n in "xyzw"],
            "relations": ["x*y", "z*w"],
        }
    )
    assert len(overlaps(default_reduction_system(algebra))) == 0


def test_diamond_condition_holds_for_a1(a1_system):
    check = check_diamond(a1_system)
    assert check.resolvable
    assert check.failures == []
    assert len(check.resolutions) == 5


def test_empty_rule_set_is_resolvable(a1_algebra):
    system = ReductionSystem(a1_algebra.quiver, a1_algebra.field, [])
    assert check_diamond(system).resolvable


def test_unresolvable_overlap_is_reported():
    algebra = parse_spec(
        {
            "vertices": ["1"],
            "arrows": [{"name": "x", "from": "1", "to": "1"}, {"name": "y", "from": "1", "to": "1"}],
        }
    )
    quiver, field = algebra.quiver, algebra.field
    rules = [
        ReductionRule(parse_path("x*x", quiver), parse_linear_combination("y", quiver, field)),
        ReductionRule(parse_path("x*y", quiver), PathElement(field)),
    ]
    check = check_diamond(ReductionSystem(quiver, field, rules))
    assert not check.resolvable
    assert [r.overlap.path.text for r in check.failures] == ["x*x*x", "x*x*y"]
    assert check.failures[0].left_branch.text == "y*x"
    assert not check.failures[0].right_branch


def test_looping_rules_hit_the_step_cap():
    algebra = parse_spec(
        {
            "vertices": ["1"],
            "arrows": [{"name": "x", "from": "1", "to": "1"}, {"name": "y", "from": "1", "to": "1"}],
        }
    )
    quiver, field = algebra.quiver, algebra.field
    rules = [
        ReductionRule(parse_path("x*y", quiver), parse_linear_combination("y*x", quiver, field)),
        ReductionRule(parse_path("y*x", quiver), parse_linear_combination("x*y", quiver, field)),
    ]
    with pytest.raises(RewriteLimitError):
        ReductionSystem(quiver, field, rules, step_cap=50)


def test_inclusion_ambiguity_is_rejected(a1_algebra):
    quiver, field = a1_algebra.quiver, a1_algebra.field
    rules = [
        ReductionRule(parse_path("a*a", quiver), PathElement(field)),
        ReductionRule(parse_path("a*a*b", quiver), PathElement(field)),
    ]
    with pytest.raises(ValidationError):
        ReductionSystem(quiver, field, rules)


def test_nested_leading_terms_are_ambiguous():
    algebra = parse_spec(
        {
            "vertices": ["1"],
            "arrows": [{"name": "x", "from": "1", "to": "1"}],
            "relations": ["x*x", "x*x*x"],
        }
    )
    with pytest.raises(AmbiguousLeadingTermError):
        rules_from_relations(algebra)


def test_irreducible_basis_of_a1(a1_system):
    basis = irr_basis(a1_system)
    assert [p.text for p in basis.paths] == ["e1", "e2", "a", "b", "c", "b*a", "b*c"]
    assert basis.dimension == 7


def test_irreducible_basis_of_truncated_polynomial():
    algebra = parse_spec(fixture_path("truncated_x2.json").read_text())
    assert [p.text for p in irr_basis(default_reduction_system(algebra)).paths] == ["e1", "x"]


def test_free_acyclic_quiver_basis():
    algebra = parse_spec({"vertices": ["1", "2"], "arrows": [{"name": "c", "from": "1", "to": "2"}]})
    system = ReductionSystem(algebra.quiver, algebra.field, [])
    assert [p.text for p in irr_basis(system).paths] == ["e1", "e2", "c"]


def test_infinite_algebra_is_detected_but_graded_pieces_work():
    algebra = parse_spec(fixture_path("anticommuting_xy.json").read_text())
    quotient = QuotientAlgebra(default_reduction_system(algebra))
    assert not quotient.is_finite
    v = algebra.quiver.vertices[0]
    assert [p.text for p in quotient.paths(v, v, 3)] == ["y*y*x", "y*y*y"]


def test_quotient_multiplication_reduces(a1_system):
    quotient = QuotientAlgebra(a1_system)
    a = quotient.element(path("a", a1_system))
    b = quotient.element(path("b", a1_system))
    assert quotient.multiply(a, b).text == "b*a"
    assert not quotient.multiply(a, b, a)
