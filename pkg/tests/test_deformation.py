import pytest

from app.core.exceptions import CharacteristicError, PreconditionError
from app.services.algebra.field import Field
from app.services.algebra.parser import parse_linear_combination, parse_path
from app.services.deformation.crosscheck import crosscheck_mc
from app.services.deformation.gauge import GaugeMap, gauge_reduce, gauge_shifts
from app.services.deformation.star import (
    DeformedElement,
    FirstOrderDeformation,
    overlap_constraint,
    solve_mc_first_order,
    star_first_order,
)
from app.services.reduction.system import overlaps
from tests.helpers import context_for

A1_FREE = [
    "phi(a*a)[a]",
    "phi(a*a)[b*a]",
    "phi(b*b)[e1]",
    "phi(b*b)[a]",
    "phi(b*b)[b]",
    "phi(b*b)[b*a]",
    "phi(a*b)[b*a]",
    "phi(a*c)[c]",
    "phi(a*c)[b*c]",
]
A1_REDUCED = ["phi(a*a)[a]", "phi(a*a)[b*a]", "phi(b*b)[e1]", "phi(b*b)[a]", "phi(a*b)[b*a]"]


@pytest.fixture
def family(a1):
    return solve_mc_first_order(a1.quotient)


@pytest.fixture
def reduction(family):
    return gauge_reduce(family)


def path(context, text):
    return parse_path(text, context.algebra.quiver)


def names(params):
    return [p.name for p in params]


def test_symbolic_deformation_has_one_parameter_per_parallel_path(a1):
    symbolic = FirstOrderDeformation.symbolic(a1.quotient)
    assert len(symbolic.params()) == 14
    assert symbolic.table()[3] == "a*c -> (phi(a*c)[c])*c + (phi(a*c)[b*c])*b*c"


def test_star_of_a_reducible_pair(a1):
    symbolic = FirstOrderDeformation.symbolic(a1.quotient)
    product = star_first_order(path(a1, "a"), path(a1, "a"), symbolic)
    assert not product.lam
    assert len(product.tau.paths()) == 4


def test_star_of_an_irreducible_pair(a1):
    symbolic = FirstOrderDeformation.symbolic(a1.quotient)
    product = symbolic.star_paths(path(a1, "b"), path(a1, "a"))
    assert product.lam.text == "b*a"
    assert not product.tau


def test_nested_star_product(a1):
    symbolic = FirstOrderDeformation.symbolic(a1.quotient)
    a = DeformedElement.of_path(a1.quotient, path(a1, "a"))
    product = symbolic.star(a, symbolic.star(a, a))
    assert not product.lam
    assert [p.text for p in product.tau.paths()] == ["a", "b*a"]
    assert product.tau.coefficient_of(path(a1, "a")).text == "phi(a*a)[e1]"
    assert product.tau.coefficient_of(path(a1, "b*a")).text == "phi(a*a)[b]"


def test_star_needs_irreducible_factors(a1):
    symbolic = FirstOrderDeformation.symbolic(a1.quotient)
    with pytest.raises(PreconditionError):
        symbolic.star_paths(path(a1, "a*a"), path(a1, "b"))


def test_concrete_deformation(a1):
    field = a1.algebra.field
    values = [parse_linear_combination(t, a1.algebra.quiver, field) for t in ("a", "0", "0", "0")]
    deformation = FirstOrderDeformation.from_elements(a1.quotient, values)
    assert deformation.star_paths(path(a1, "a"), path(a1, "a")).tau.text == "a"
    with pytest.raises(PreconditionError):
        FirstOrderDeformation.from_elements(a1.quotient, values[:3])


def test_cubes_impose_nothing(a1):
    symbolic = FirstOrderDeformation.symbolic(a1.quotient)
    by_path = {o.path.text: o for o in overlaps(a1.system)}
    assert not overlap_constraint(symbolic, by_path["a*a*a"]).associator
    assert not overlap_constraint(symbolic, by_path["b*b*b"]).associator
    assert overlap_constraint(symbolic, by_path["a*a*b"]).equations


def test_mc_constraints_of_a1(family):
    eliminated = family.constraints.eliminated
    assert sorted(p.name for p in eliminated) == sorted(
        ["phi(a*a)[e1]", "phi(a*a)[b]", "phi(a*b)[e1]", "phi(a*b)[a]", "phi(a*b)[b]"]
    )
    assert all(not expr for expr in eliminated.values())
    assert family.constraints.consistent
    assert names(family.free) == A1_FREE
    assert family.dimension == 9


def test_solution_star_product(a1, family):
    product = family.solution.star_paths(path(a1, "a"), path(a1, "a"))
    assert [p.text for p in product.tau.paths()] == ["a", "b*a"]


def test_gauge_reduction_of_a1(reduction):
    assert set(names(reduction.eliminated)) == {
        "phi(a*c)[c]",
        "phi(a*c)[b*c]",
        "phi(b*b)[b]",
        "phi(b*b)[b*a]",
    }
    assert names(reduction.reduced) == A1_REDUCED
    assert reduction.dimension == 5
    assert reduction.shift_table()[2] == "a*b: 0"


def test_gauge_shift_of_an_arrow_rule(a1):
    gauge = GaugeMap.symbolic(a1.quotient)
    shifts = gauge_shifts(a1.quotient, gauge)
    ac = shifts[3]
    assert [p.text for p in ac.paths()] == ["c", "b*c"]
    assert ac.coefficient_of(path(a1, "c")).text == "theta(a)[e1]"
    assert ac.coefficient_of(path(a1, "b*c")).text == "theta(a)[b]"


def test_crosscheck_of_a1(a1, reduction):
    report = crosscheck_mc(a1.complex, reduction)
    one = a1.algebra.field.one
    assert report.correspondence == [{0: one}, {2: one}, {1: one}, {3: one}]
    assert [d.cochain for d in report.directions] == [
        ["a", "0", "0", "0"],
        ["b*a", "0", "0", "0"],
        ["0", "0", "e1", "0"],
        ["0", "0", "a", "0"],
        ["0", "b*a", "0", "0"],
    ]
    assert report.passed
    assert all(d.mc_holds for d in report.directions)
    assert len(report.eliminated) == 4
    assert report.cohomology_dimension == 5
    assert report.dimension_agrees


def test_truncated_polynomial_family(truncated_x2):
    family = solve_mc_first_order(truncated_x2.quotient)
    assert names(family.constraints.params) == ["phi(x*x)[e1]", "phi(x*x)[x]"]
    assert family.dimension == 2
    reduction = gauge_reduce(family)
    assert names(reduction.eliminated) == ["phi(x*x)[x]"]
    assert reduction.dimension == 1
    report = crosscheck_mc(truncated_x2.complex, reduction)
    assert [d.cochain for d in report.directions] == [["e1"]]
    assert report.passed
    assert report.dimension_agrees


def test_gauge_reduction_needs_odd_characteristic():
    context = context_for("A1.json", field_override=Field.prime(2), max_degree=3)
    family = solve_mc_first_order(context.quotient)
    with pytest.raises(CharacteristicError):
        gauge_reduce(family)


def test_symbolic_deformations_need_finite_dimension(anticommuting):
    with pytest.raises(PreconditionError):
        FirstOrderDeformation.symbolic(anticommuting.quotient)
