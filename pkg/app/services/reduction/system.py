from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from app.core.config import settings
from app.core.exceptions import (
    AmbiguousLeadingTermError,
    DiamondError,
    RewriteLimitError,
    ValidationError,
)
from app.core.logging import get_logger
from app.services.algebra.combination import accumulate
from app.services.algebra.element import PathElement
from app.services.algebra.field import Field
from app.services.algebra.presented import PresentedAlgebra
from app.services.algebra.quiver import Path, Quiver
from app.utils.cache import CacheManager

logger = get_logger(__name__)

RIGHTMOST = "rightmost"
LEFTMOST = "leftmost"


@dataclass(frozen=True)
class ReductionRule:
    lhs: Path
    rhs: PathElement

    @property
    def text(self) -> str:
        return f"{self.lhs.text} -> {self.rhs.text}"


@dataclass(frozen=True)
class RewriteStep:
    path: Path
    position: int
    rule_index: int


@dataclass(frozen=True)
class NormalFormTrace:
    source: Path
    steps: Tuple[RewriteStep, ...]
    result: PathElement

    def replay(self, system: "ReductionSystem") -> PathElement:
        """Re-apply the recorded rewrites; reproduces ``result``."""
        current: Dict[Path, Any] = {self.source: system.field.one}
        for step in self.steps:
            coefficient = current.pop(step.path)
            for path, c in system.apply_rule(step.path, step.position, step.rule_index):
                accumulate(current, path, coefficient * c)
        return PathElement(system.field, current)


class ReductionSystem:
    """Rewriting rules s -> φ_s on paths, with memoised normal forms.

    No lhs may be a subpath of another, so at most one rule matches at any
    start position.  Rule right-hand sides are brought to normal form when the
    system is assembled.
    """

    def __init__(
        self,
        quiver: Quiver,
        field: Field,
        rules: Sequence[ReductionRule],
        step_cap: Optional[int] = None,
        cache: Optional[CacheManager] = None,
    ):
        self.quiver = quiver
        self.field = field
        self.step_cap = step_cap or settings.rewrite_step_cap
        self._cache = cache or CacheManager()
        self._validate(rules)
        self._rules: List[ReductionRule] = list(rules)
        self._by_lhs: Dict[Tuple[int, ...], int] = {r.lhs.indices: i for i, r in enumerate(self._rules)}
        self._lengths = sorted({r.lhs.length for r in self._rules})

        normalized = []
        for rule in self._rules:
            rhs = self.normal_form(rule.rhs)
            if rhs != rule.rhs:
                logger.info("rule_rhs_reduced", lhs=rule.lhs.text, rhs=rhs.text)
            normalized.append(ReductionRule(rule.lhs, rhs))
        self._rules = normalized
        self._cache.clear()

    @staticmethod
    def _validate(rules: Sequence[ReductionRule]) -> None:
        seen = set()
        for rule in rules:
            if rule.lhs.length < 2:
                raise ValidationError(f"rule lhs {rule.lhs.text} must have length >= 2")
            if rule.lhs in seen:
                raise ValidationError(f"duplicate rule for {rule.lhs.text}")
            seen.add(rule.lhs)
            for path in rule.rhs.paths():
                if (path.origin, path.terminal) != (rule.lhs.origin, rule.lhs.terminal):
                    raise ValidationError(f"rule {rule.text} is not parallel")
        for first in rules:
            for second in rules:
                if first is not second and second.lhs.contains(first.lhs):
                    raise ValidationError(
                        f"inclusion ambiguity: {first.lhs.text} is a subpath of {second.lhs.text}"
                    )

    @property
    def rules(self) -> Tuple[ReductionRule, ...]:
        return tuple(self._rules)

    @property
    def lhs_paths(self) -> Tuple[Path, ...]:
        return tuple(r.lhs for r in self._rules)

    def rule_for(self, path: Path) -> Optional[ReductionRule]:
        index = self._by_lhs.get(path.indices)
        return None if index is None else self._rules[index]

    def find_redex(self, path: Path, strategy: str = RIGHTMOST) -> Optional[Tuple[int, int]]:
        """(start position, rule index) of the rightmost (or leftmost) occurrence of some s."""
        indices = path.indices
        starts = range(len(indices) - 1, -1, -1) if strategy == RIGHTMOST else range(len(indices))
        for start in starts:
            for width in self._lengths:
                if start + width > len(indices):
                    break
                rule_index = self._by_lhs.get(indices[start : start + width])
                if rule_index is not None:
                    return start, rule_index
        return None

    def is_irreducible(self, path: Path) -> bool:
        return self.find_redex(path) is None

    def apply_rule(self, path: Path, position: int, rule_index: int) -> List[Tuple[Path, Any]]:
        """Terms of x·φ_s·y for path = x·s·y with s at ``position``."""
        rule = self._rules[rule_index]
        prefix = path.sub(0, position)
        suffix = path.sub(position + rule.lhs.length, path.length)
        terms = []
        for middle, c in rule.rhs.items():
            left = prefix.compose(middle)
            full = left.compose(suffix) if left is not None else None
            if full is not None:
                terms.append((full, c))
        return terms

    def _reduce(self, path: Path, strategy: str, record: Optional[List[RewriteStep]]) -> PathElement:
        pending: Dict[Path, Any] = {path: self.field.one}
        result: Dict[Path, Any] = {}
        steps = 0
        while pending:
            current, coefficient = pending.popitem()
            redex = self.find_redex(current, strategy)
            if redex is None:
                accumulate(result, current, coefficient)
                continue
            steps += 1
            if steps > self.step_cap:
                raise RewriteLimitError(
                    f"normal form of {path.text} exceeded {self.step_cap} rewrite steps"
                )
            if record is not None:
                record.append(RewriteStep(current, redex[0], redex[1]))
            for target, c in self.apply_rule(current, *redex):
                accumulate(pending, target, coefficient * c)
        return PathElement(self.field, result)

    def reduce_path(self, path: Path, strategy: str = RIGHTMOST) -> PathElement:
        key = self._cache.generate_key("nf", strategy, path)
        return self._cache.get_or_compute(key, lambda: self._reduce(path, strategy, None))

    def normal_form(self, x: PathElement, strategy: str = RIGHTMOST) -> PathElement:
        terms: Dict[Path, Any] = {}
        for path, c in x.items():
            for target, d in self.reduce_path(path, strategy).items():
                accumulate(terms, target, c * d)
        return PathElement(self.field, terms)

    def normal_form_trace(self, path: Path, strategy: str = RIGHTMOST) -> NormalFormTrace:
        steps: List[RewriteStep] = []
        result = self._reduce(path, strategy, steps)
        return NormalFormTrace(path, tuple(steps), result)


@dataclass(frozen=True)
class Overlap:
    """An overlap ambiguity p·q·r with p·q and q·r both in S."""

    p: Path
    q: Path
    r: Path
    left_rule: int
    right_rule: int

    @property
    def path(self) -> Path:
        return self.p.compose(self.q).compose(self.r)


@dataclass(frozen=True)
class OverlapSet:
    triples: Tuple[Overlap, ...]

    @property
    def paths(self) -> List[Path]:
        return [o.path for o in self.triples]

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self):
        return iter(self.triples)


def overlaps(system: ReductionSystem) -> OverlapSet:
    found: Dict[Tuple[Tuple[int, ...], int], Overlap] = {}
    rules = system.rules
    for i, first in enumerate(rules):
        for j, second in enumerate(rules):
            s, t = first.lhs, second.lhs
            for width in range(1, min(s.length, t.length)):
                if s.arrows[s.length - width :] != t.arrows[:width]:
                    continue
                overlap = Overlap(
                    s.sub(0, s.length - width),
                    s.sub(s.length - width, s.length),
                    t.sub(width, t.length),
                    i,
                    j,
                )
                found[(overlap.path.indices, overlap.p.length)] = overlap
    ordered = sorted(found.values(), key=lambda o: (o.path.sort_key, o.p.length))
    return OverlapSet(tuple(ordered))


@dataclass(frozen=True)
class OverlapResolution:
    overlap: Overlap
    left_branch: PathElement
    right_branch: PathElement

    @property
    def resolvable(self) -> bool:
        return self.left_branch == self.right_branch


@dataclass(frozen=True)
class DiamondCheck:
    resolutions: Tuple[OverlapResolution, ...] = field(default_factory=tuple)

    @property
    def failures(self) -> List[OverlapResolution]:
        return [r for r in self.resolutions if not r.resolvable]

    @property
    def resolvable(self) -> bool:
        return not self.failures


def check_diamond(system: ReductionSystem) -> DiamondCheck:
    """Reduce every overlap along both critical branches and compare."""
    resolutions = []
    for overlap in overlaps(system):
        whole = overlap.path
        left_terms = system.apply_rule(whole, 0, overlap.left_rule)
        right_terms = system.apply_rule(whole, overlap.p.length, overlap.right_rule)
        left = system.normal_form(PathElement.from_pairs(system.field, left_terms))
        right = system.normal_form(PathElement.from_pairs(system.field, right_terms))
        resolutions.append(OverlapResolution(overlap, left, right))
    check = DiamondCheck(tuple(resolutions))
    logger.debug("diamond_checked", overlaps=len(resolutions), failures=len(check.failures))
    return check


def rules_from_relations(algebra: PresentedAlgebra) -> List[ReductionRule]:
    """Leading path -> -(rest)/leading coefficient for each relation."""
    rules = []
    for relation in algebra.relations:
        lead, coefficient = relation.leading_term()
        rest = relation - PathElement.from_path(algebra.field, lead, coefficient)
        rules.append(ReductionRule(lead, rest.scale(-algebra.field.one / coefficient)))
    leads = [r.lhs for r in rules]
    for i, first in enumerate(leads):
        for j, second in enumerate(leads):
            if i != j and second.contains(first):
                raise AmbiguousLeadingTermError(
                    f"leading path {first.text} of relation {i} is a subpath of the leading path "
                    f"{second.text} of relation {j}"
                )
    return rules


def default_reduction_system(
    algebra: PresentedAlgebra, step_cap: Optional[int] = None, validate: bool = True
) -> ReductionSystem:
    system = ReductionSystem(algebra.quiver, algebra.field, rules_from_relations(algebra), step_cap)
    if validate:
        check = check_diamond(system)
        if not check.resolvable:
            raise DiamondError(
                f"{len(check.failures)} overlap ambiguities are not resolvable", report=check
            )
    return system
