import json
from functools import cached_property
from pathlib import Path as FilePath
from typing import List, Optional, Union

from pydantic import ValidationError as PydanticValidationError

from app.core.exceptions import DiamondError, SpecParseError
from app.core.logging import get_logger
from app.models.cochain_document import CochainDocument
from app.models.spec_document import QuiverSpecDocument
from app.services.algebra.field import Field
from app.services.algebra.parser import build_algebra, load_document, parse_linear_combination, parse_path
from app.services.algebra.presented import PresentedAlgebra
from app.services.cohomology import Cochain
from app.services.reduction.basis import QuotientAlgebra
from app.services.reduction.system import (
    DiamondCheck,
    ReductionRule,
    ReductionSystem,
    check_diamond,
    rules_from_relations,
)
from app.services.resolution.complex import KComplex
from app.services.resolution.koszul import build_koszul
from app.services.resolution.manual import load_manual_resolution
from app.utils.cache import CacheManager

logger = get_logger(__name__)


def read_source(path: Union[str, FilePath]) -> str:
    try:
        return FilePath(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecParseError(f"cannot read {path}: {exc.strerror}", str(path))


class ComputationContext:
    """Lazily derived objects for one spec document: algebra, rules, Λ and K."""

    def __init__(
        self,
        document: QuiverSpecDocument,
        field_override: Optional[Field] = None,
        max_degree: Optional[int] = None,
        cache: Optional[CacheManager] = None,
    ):
        self.document = document
        self.field_override = field_override
        self.max_degree = max_degree
        self.cache = cache or CacheManager()

    @classmethod
    def from_file(cls, path: Union[str, FilePath], **kwargs) -> "ComputationContext":
        return cls(load_document(read_source(path)), **kwargs)

    @cached_property
    def algebra(self) -> PresentedAlgebra:
        return build_algebra(self.document, self.field_override)

    @cached_property
    def rules(self) -> List[ReductionRule]:
        if self.document.reduction_rules is None:
            return rules_from_relations(self.algebra)
        quiver, field = self.algebra.quiver, self.algebra.field
        rules = []
        for k, spec in enumerate(self.document.reduction_rules):
            lhs = parse_path(spec.lhs, quiver, f"reduction_rules[{k}].lhs")
            rhs = parse_linear_combination(spec.rhs, quiver, field, f"reduction_rules[{k}].rhs")
            rules.append(ReductionRule(lhs, rhs))
        return rules

    @cached_property
    def system(self) -> ReductionSystem:
        """The reduction system, not yet checked for confluence."""
        return ReductionSystem(self.algebra.quiver, self.algebra.field, self.rules, cache=self.cache)

    @cached_property
    def diamond(self) -> DiamondCheck:
        return check_diamond(self.system)

    @cached_property
    def quotient(self) -> QuotientAlgebra:
        if not self.diamond.resolvable:
            raise DiamondError(
                f"{len(self.diamond.failures)} overlap ambiguities are not resolvable", report=self.diamond
            )
        return QuotientAlgebra(self.system, self.cache)

    @cached_property
    def complex(self) -> KComplex:
        section = self.document.resolution
        if section is not None:
            return load_manual_resolution(section, self.quotient, self.max_degree)
        return build_koszul(self.algebra, self.quotient, self.max_degree)

    def load_cochain(self, source: Union[str, FilePath, CochainDocument]) -> Cochain:
        if isinstance(source, CochainDocument):
            document = source
        else:
            text = read_source(source)
            try:
                document = CochainDocument.model_validate(json.loads(text))
            except json.JSONDecodeError as exc:
                raise SpecParseError(exc.msg, str(source), line=exc.lineno, column=exc.colno)
            except PydanticValidationError as exc:
                error = exc.errors()[0]
                raise SpecParseError(error["msg"], ".".join(str(p) for p in error["loc"]) or str(source))
        quiver, field = self.algebra.quiver, self.algebra.field
        values = [
            parse_linear_combination(text, quiver, field, f"values[{k}]") for k, text in enumerate(document.values)
        ]
        cochain = Cochain(self.complex, document.degree, values)
        logger.debug("cochain_loaded", degree=cochain.degree, cochain=cochain.text)
        return cochain
