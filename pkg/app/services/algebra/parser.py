import json
import re
from typing import Any, List, Optional, Tuple, Union

from pydantic import ValidationError as PydanticValidationError

from app.core.exceptions import SpecParseError, ValidationError
from app.models.spec_document import QuiverSpecDocument
from app.services.algebra.element import PathElement
from app.services.algebra.field import Field
from app.services.algebra.presented import PresentedAlgebra
from app.services.algebra.quiver import Path, Quiver

_TOKEN = re.compile(
    r"\s*(?:(?P<number>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^]))"
)


def _tokenize(text: str, location: str) -> List[Tuple[str, str, int]]:
    tokens = []
    position = 0
    while position < len(text):
        if text[position:].strip() == "":
            break
        match = _TOKEN.match(text, position)
        if not match:
            column = position + len(text[position:]) - len(text[position:].lstrip()) + 1
            raise SpecParseError(f"unexpected character {text[column - 1]!r}", location, column=column)
        kind = match.lastgroup
        start = match.start(kind) + 1
        tokens.append((kind, match.group(kind), start))
        position = match.end()
    return tokens


def parse_linear_combination(text: str, quiver: Quiver, field: Field, location: str = "expression") -> PathElement:
    """Parse e.g. ``"a*b - 1*b*a"`` or ``"1/2*e1 + x^2"`` into a kQ element."""
    tokens = _tokenize(text, location)
    if not tokens:
        raise SpecParseError("empty expression", location, column=1)
    pairs = []
    index = 0
    while index < len(tokens):
        sign = field.one
        while index < len(tokens) and tokens[index][1] in "+-" and tokens[index][0] == "op":
            if tokens[index][1] == "-":
                sign = -sign
            index += 1
        if index >= len(tokens):
            raise SpecParseError("expression ends with an operator", location, column=len(text))
        coefficient, path, index = _parse_term(tokens, index, quiver, field, location)
        if path is None:
            if coefficient and len(quiver.vertices) != 1:
                raise SpecParseError(
                    "a bare scalar is only allowed over a one-vertex quiver",
                    location,
                    column=tokens[index - 1][2],
                )
            if coefficient:
                path = Path.trivial(quiver.vertices[0])
        if path is not None:
            pairs.append((path, sign * coefficient))
        if index < len(tokens) and tokens[index][1] not in "+-":
            raise SpecParseError(f"unexpected token {tokens[index][1]!r}", location, column=tokens[index][2])
    return PathElement.from_pairs(field, pairs)


def _parse_term(tokens, index, quiver: Quiver, field: Field, location: str):
    coefficient = field.one
    path: Optional[Path] = None
    expect_factor = True
    while index < len(tokens):
        kind, value, column = tokens[index]
        if not expect_factor:
            if kind == "op" and value == "*":
                expect_factor = True
                index += 1
                continue
            break
        if kind == "number":
            coefficient = coefficient * field.parse(value)
            index += 1
        elif kind == "name":
            factor = quiver.resolve_token(value)
            if factor is None:
                raise SpecParseError(f"unknown arrow or vertex {value!r}", location, column=column)
            index += 1
            exponent = 1
            if index + 1 < len(tokens) and tokens[index][1] == "^" and tokens[index + 1][0] == "number":
                exponent = int(tokens[index + 1][1])
                index += 2
            for _ in range(exponent):
                combined = factor if path is None else path.compose(factor)
                if combined is None:
                    raise SpecParseError(f"path does not compose at {value!r}", location, column=column)
                path = combined
        else:
            raise SpecParseError(f"unexpected token {value!r}", location, column=column)
        expect_factor = False
    if expect_factor:
        raise SpecParseError("missing factor after '*'", location, column=tokens[-1][2])
    return coefficient, path, index


def parse_path(text: str, quiver: Quiver, location: str = "path") -> Path:
    element = parse_linear_combination(text, quiver, Field.rationals(), location)
    if len(element) != 1 or element.items()[0][1] != 1:
        raise SpecParseError(f"{text!r} is not a single path", location, column=1)
    return element.items()[0][0]


def load_document(source: Union[str, bytes, dict]) -> QuiverSpecDocument:
    """Decode and validate the JSON spec document with position-reported errors."""
    if isinstance(source, dict):
        data = source
    else:
        try:
            data = json.loads(source)
        except json.JSONDecodeError as exc:
            raise SpecParseError(exc.msg, "document", line=exc.lineno, column=exc.colno)
    try:
        return QuiverSpecDocument.model_validate(data)
    except PydanticValidationError as exc:
        error = exc.errors()[0]
        location = ".".join(str(part) for part in error["loc"])
        raise SpecParseError(error["msg"], location or "document")


def build_algebra(document: QuiverSpecDocument, field_override: Optional[Field] = None) -> PresentedAlgebra:
    field = field_override or Field.from_descriptor(document.field)
    try:
        quiver = Quiver(document.vertices, [(a.name, a.source, a.target) for a in document.arrows])
    except ValidationError as exc:
        raise SpecParseError(exc.message, "arrows")
    relations = []
    for position, text in enumerate(document.relations):
        location = f"relations[{position}]"
        relation = parse_linear_combination(text, quiver, field, location)
        if not relation:
            raise SpecParseError("relation reduces to zero", location, column=1)
        if not relation.is_uniform():
            raise SpecParseError(f"relation {text!r} is not uniform", location, column=1)
        relations.append(relation)
    return PresentedAlgebra(quiver, field, tuple(relations))


def parse_spec(source: Union[str, bytes, dict], field_override: Optional[Field] = None) -> PresentedAlgebra:
    return build_algebra(load_document(source), field_override)


def scalar_value(value: Any, field: Field, location: str) -> Any:
    try:
        return field(value)
    except SpecParseError as exc:
        raise SpecParseError(exc.message, location)
