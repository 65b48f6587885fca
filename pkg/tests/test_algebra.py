import random

import pytest

from app.core.exceptions import FieldMismatchError, SpecParseError, ValidationError
from app.services.algebra.element import PathElement, multiply, uniform_parts
from app.services.algebra.field import Field
from app.services.algebra.parser import parse_linear_combination, parse_spec
from app.services.algebra.quiver import Path
from tests.helpers import context_for, fixture_path

QQ_FIELD = Field.rationals()


@pytest.fixture
def a1_algebra():
    return parse_spec(fixture_path("A1.json").read_text())


@pytest.fixture
def xy_algebra():
    return parse_spec(fixture_path("anticommuting_xy.json").read_text())


def element(text, algebra):
    return parse_linear_combination(text, algebra.quiver, algebra.field)


def test_parse_a1(a1_algebra):
    assert [v.name for v in a1_algebra.quiver.vertices] == ["1", "2"]
    assert [a.name for a in a1_algebra.quiver.arrows] == ["a", "b", "c"]
    assert [r.text for r in a1_algebra.relations] == ["a*a", "b*b", "a*b - b*a", "a*c"]
    assert a1_algebra.quadratic


def test_parse_truncated_polynomial():
    algebra = parse_spec(fixture_path("truncated_x2.json").read_text())
    assert len(algebra.quiver.vertices) == 1
    assert len(algebra.quiver.arrows) == 1
    assert len(algebra.relations) == 1 and algebra.quadratic


def test_no_relations_is_the_free_path_algebra():
    algebra = parse_spec({"vertices": ["1", "2"], "arrows": [{"name": "c", "from": "1", "to": "2"}]})
    assert algebra.relations == ()


def test_field_descriptor_and_override():
    algebra = parse_spec({"field": {"Fp": 5}, "vertices": ["1"], "arrows": [{"name": "x", "from": "1", "to": "1"}]})
    assert algebra.field.characteristic == 5
    assert Field.from_descriptor("Fp:7").characteristic == 7
    assert Field.from_descriptor("Q").characteristic == 0
    with pytest.raises(ValidationError):
        Field.from_descriptor("Fp:6")


def test_compose_respects_endpoints(a1_algebra):
    quiver = a1_algebra.quiver
    a, c = Path.of_arrow(quiver.arrow("a")), Path.of_arrow(quiver.arrow("c"))
    e1 = Path.trivial(quiver.vertex("1"))
    assert e1.compose(a) == a
    assert a.compose(c).text == "a*c"
    assert c.compose(a) is None


def test_multiply_distributes(a1_algebra):
    product = multiply(element("a + b", a1_algebra), element("c", a1_algebra))
    assert product == element("a*c + b*c", a1_algebra)
    assert not multiply(element("a", a1_algebra), PathElement(a1_algebra.field))


def test_multiply_concatenates_in_the_free_algebra(xy_algebra):
    assert multiply(element("x*y", xy_algebra), element("y*x", xy_algebra)).text == "x*y*y*x"


def test_uniform_parts(a1_algebra):
    parts = uniform_parts(element("e1 + c", a1_algebra))
    assert [(o.name, t.name, x.text) for o, t, x in parts] == [("1", "1", "e1"), ("1", "2", "c")]
    assert uniform_parts(PathElement(a1_algebra.field)) == []


def test_uniform_parts_single_block(xy_algebra):
    assert len(uniform_parts(element("x*y - y*x", xy_algebra))) == 1


def test_scalars_and_powers(xy_algebra):
    x = element("1/2*e1 + x^2 - 3*y*x", xy_algebra)
    assert x.text == "1/2*e1 + x*x - 3*y*x"
    assert element("2*x - 2*x", xy_algebra) == PathElement(xy_algebra.field)


def test_canonical_text_reparses(a1_algebra):
    rng = random.Random(7)
    paths = ["e1", "a", "b", "c", "b*a", "a*b*c"]
    for _ in range(25):
        terms = [f"{rng.randint(-4, 4)}/{rng.randint(1, 3)}*{rng.choice(paths)}" for _ in range(3)]
        x = element(" + ".join(terms), a1_algebra)
        assert element(x.text, a1_algebra) == x


def test_parse_errors_carry_a_position(a1_algebra):
    with pytest.raises(SpecParseError) as info:
        element("a * z", a1_algebra)
    assert "column 5" in info.value.message
    with pytest.raises(SpecParseError):
        element("a +", a1_algebra)
    with pytest.raises(SpecParseError):
        element("c*a", a1_algebra)


def test_non_uniform_relation_is_rejected():
    with pytest.raises(SpecParseError) as info:
        parse_spec(fixture_path("non_uniform.json").read_text())
    assert "relations[0]" in info.value.message
    assert info.value.exit_code == 2


def test_malformed_json_reports_line():
    with pytest.raises(SpecParseError) as info:
        parse_spec('{"vertices": ["1"],\n "arrows": [}')
    assert info.value.line == 2


def test_field_mismatch():
    other = Field.prime(3)
    x = PathElement.from_path(QQ_FIELD, Path.trivial(parse_spec({"vertices": ["1"]}).quiver.vertices[0]))
    with pytest.raises(FieldMismatchError):
        x + PathElement(other)


def test_prime_field_prints_representatives():
    field = Field.prime(5)
    assert field.to_text(field(-1)) == "4"
    assert field.to_text(field.parse("1/2")) == "3"


def quiver_paths(quiver, max_length):
    """Every path of Q up to ``max_length`` arrows, trivial paths included."""
    layer = [Path.trivial(v) for v in quiver.vertices]
    paths = list(layer)
    for _ in range(max_length):
        layer = [
            p.compose(Path.of_arrow(arrow))
            for p in layer
            for arrow in quiver.arrows
            if arrow.origin == p.terminal
        ]
        paths.extend(layer)
    return paths


def test_quiver_paths_of_a1(a1_algebra):
    paths = quiver_paths(a1_algebra.quiver, 2)
    # e1, e2; a, b, c; aa, ab, ac, ba, bb, bc
    assert len(paths) == 11


@pytest.mark.parametrize("field", [None, Field.prime(5)], ids=["Q", "F5"])
def test_multiplication_in_the_quotient_is_associative(field):
    quotient = context_for("A1.json", field_override=field).quotient
    paths = quiver_paths(quotient.quiver, 3)
    rng = random.Random(2024)

    def sample():
        chosen = rng.sample(paths, rng.randint(1, 4))
        return PathElement(quotient.field, {p: quotient.field(rng.randint(-5, 5)) for p in chosen})

    for _ in range(1000):
        x, y, z = sample(), sample(), sample()
        left = quotient.multiply(quotient.multiply(x, y), z)
        right = quotient.multiply(x, quotient.multiply(y, z))
        assert left == right


def test_power_accepts_negative_exponents():
    assert QQ_FIELD.power(QQ_FIELD(2), 3) == QQ_FIELD(8)
    assert QQ_FIELD.power(QQ_FIELD(2), -2) == QQ_FIELD.parse("1/4")
    assert QQ_FIELD.power(QQ_FIELD(-3), 0) == QQ_FIELD.one
    f5 = Field.prime(5)
    assert f5.power(f5(2), -1) == f5(3)
    assert f5.power(f5(4), 2) == f5.one
