from typing import Callable, Dict, List

from app.core.dependencies import ComputationContext
from app.core.exceptions import PreconditionError
from app.core.logging import get_logger
from app.models.reports import (
    BasisReport,
    BracketReport,
    CohomologyReport,
    CrosscheckSection,
    DeformReport,
    DiamondReport,
    DirectionRow,
    GeneratorRow,
    LiftReport,
    LiftRow,
    MaurerCartanCheckReport,
    MaurerCartanRowModel,
    OverlapRow,
    PropertyRow,
    RecurrenceRow,
    Report,
    ResolutionReport,
    ValidateReport,
)
from app.models.run_config import Command, RunConfig
from app.services.algebra.field import Field
from app.services.cohomology import cohomology_basis
from app.services.deformation.crosscheck import CrosscheckReport, DirectionCheck, crosscheck_mc
from app.services.deformation.gauge import gauge_reduce
from app.services.deformation.star import solve_mc_first_order
from app.services.lifting.bracket import bracket, maurer_cartan_check
from app.services.lifting.homotopy import HomotopyLifting, solve_homotopy_lifting, verify_homotopy
from app.services.lifting.recurrence import recurrence_sequence
from app.services.resolution.bar import check_bar_compatibility
from app.services.resolution.manual import export_resolution
from app.services.resolution.sections import generator_token
from app.services.resolution.verify import VerificationReport, verify_complex

logger = get_logger(__name__)

Handler = Callable[[ComputationContext, RunConfig], Report]


def field_text(field: Field) -> str:
    return "Q" if field.characteristic == 0 else f"Fp:{field.characteristic}"


def _property_rows(report: VerificationReport) -> List[PropertyRow]:
    return [PropertyRow(**vars(check)) for check in report.checks]


def _lift_rows(lifting: HomotopyLifting) -> List[LiftRow]:
    verdicts = {(row.degree, row.generator): row.passed for row in verify_homotopy(lifting).rows}
    return [LiftRow(degree=m, generator=r, value=text, verified=verdicts[(m, r)]) for m, r, text in lifting.rows()]


def _require(value, flag: str, command: Command):
    if value is None:
        raise PreconditionError(f"{command.value} needs {flag}")
    return value


def validate(context: ComputationContext, config: RunConfig) -> Report:
    algebra = context.algebra
    rules = context.system.rules
    if context.document.resolution is not None:
        _ = context.complex  # loading verifies the manual resolution
    return ValidateReport(
        command=config.command.value,
        field=field_text(algebra.field),
        vertices=[v.name for v in algebra.quiver.vertices],
        arrows=[f"{a.name}: {a.origin.name} -> {a.terminal.name}" for a in algebra.quiver.arrows],
        relations=[r.text for r in algebra.relations],
        rules=[r.text for r in rules],
        quadratic=algebra.quadratic,
    )


def diamond(context: ComputationContext, config: RunConfig) -> Report:
    check = context.diamond
    rules = context.system.rules
    rows = [
        OverlapRow(
            overlap=r.overlap.path.text,
            left_rule=rules[r.overlap.left_rule].text,
            right_rule=rules[r.overlap.right_rule].text,
            left_branch=r.left_branch.text,
            right_branch=r.right_branch.text,
            resolvable=r.resolvable,
        )
        for r in check.resolutions
    ]
    return DiamondReport(
        command=config.command.value, passed=check.resolvable, rules=[r.text for r in rules], overlaps=rows
    )


def basis(context: ComputationContext, config: RunConfig) -> Report:
    quotient = context.quotient
    if not quotient.is_finite:
        return BasisReport(command=config.command.value, finite=False)
    paths = quotient.basis().paths
    return BasisReport(command=config.command.value, finite=True, dimension=len(paths), paths=[p.text for p in paths])


def resolution(context: ComputationContext, config: RunConfig) -> Report:
    K = context.complex
    checks = verify_complex(K)
    bar_checks = check_bar_compatibility(K) if K.has_tensor_forms else VerificationReport()
    generators = [
        GeneratorRow(
            degree=n,
            index=g.index,
            origin=g.origin.name,
            terminal=g.terminal.name,
            weight=g.weight,
            tensor=g.tensor.text if g.tensor is not None else None,
        )
        for n in range(K.max_degree + 1)
        for g in K.generators[n]
    ]
    differential = {
        generator_token(n, g.index): K.differential[(n, g.index)].text
        for n in range(1, K.max_degree + 1)
        for g in K.generators[n]
    }
    diagonal = {
        generator_token(n, g.index): K.delta(n, g.index).text for n in range(K.max_degree + 1) for g in K.generators[n]
    }
    return ResolutionReport(
        command=config.command.value,
        passed=checks.passed and bar_checks.passed,
        kind=K.kind,
        max_degree=K.max_degree,
        generators=generators,
        differential=differential,
        diagonal=diagonal,
        checks=_property_rows(checks),
        bar_checks=_property_rows(bar_checks),
        manual_section=export_resolution(K).model_dump(mode="json", exclude_none=True),
    )


def hh(context: ComputationContext, config: RunConfig) -> Report:
    degree = _require(config.degree, "--degree", config.command)
    result = cohomology_basis(context.complex, degree, config.shift)
    return CohomologyReport(
        command=config.command.value,
        degree=degree,
        shift=config.shift,
        cochain_dimension=result.cochain_dimension,
        kernel_dimension=result.kernel_dimension,
        image_dimension=result.image_dimension,
        dimension=result.dimension,
        representatives=[c.row for c in result.representatives],
    )


def lift(context: ComputationContext, config: RunConfig) -> Report:
    eta = context.load_cochain(_require(config.cocycle, "--cocycle", config.command))
    K = context.complex
    lifting = solve_homotopy_lifting(eta, K.max_degree)
    check = verify_homotopy(lifting)
    report = LiftReport(
        command=config.command.value,
        passed=check.passed,
        cochain=eta.row,
        degree=eta.degree,
        max_degree=lifting.max_degree,
        verified_through=check.verified_through(),
        rows=_lift_rows(lifting),
    )
    if config.recurrence:
        run = recurrence_sequence(K, eta, fallback=lifting)
        for m, table in sorted(run.tables.items()):
            for g in K.generators[m]:
                target, value = table.get(g.index, (None, K.field.zero))
                report.recurrence.append(
                    RecurrenceRow(
                        degree=m, generator=g.index, target=target, value=K.field.to_text(value), source=run.sources[m]
                    )
                )
        report.recurrence_stopped_at = run.stopped_at
        report.recurrence_reason = run.reason
    return report


def bracket_command(context: ComputationContext, config: RunConfig) -> Report:
    eta = context.load_cochain(_require(config.left, "--left", config.command))
    theta = context.load_cochain(_require(config.right, "--right", config.command))
    K = context.complex
    top = min(K.max_degree, eta.degree + theta.degree - 1)
    result = bracket(eta, theta, solve_homotopy_lifting(eta, top), solve_homotopy_lifting(theta, top))
    return BracketReport(
        command=config.command.value,
        left=eta.row,
        right=theta.row,
        degree=result.degree,
        sign=K.field.to_text(result.sign),
        raw=result.raw.row,
        reduced=result.reduced.row,
        coboundary=result.reduced.is_zero(),
    )


def mc_check(context: ComputationContext, config: RunConfig) -> Report:
    eta = context.load_cochain(_require(config.cocycle, "--cocycle", config.command))
    lifting = solve_homotopy_lifting(eta, 3)
    result = maurer_cartan_check(eta, lifting)
    return MaurerCartanCheckReport(
        command=config.command.value,
        passed=result.holds,
        cochain=eta.row,
        holds=result.holds,
        class_vanishes=result.class_vanishes,
        lifting=_lift_rows(lifting),
        rows=[MaurerCartanRowModel(**vars(row)) for row in result.rows],
    )


def _direction_row(check: DirectionCheck) -> DirectionRow:
    return DirectionRow(**vars(check), passed=check.passed)


def _crosscheck_section(report: CrosscheckReport, rule_names: List[str], field: Field) -> CrosscheckSection:
    return CrosscheckSection(
        passed=report.passed,
        correspondence=[{rule_names[s]: field.to_text(a) for s, a in sorted(row.items())} for row in report.correspondence],
        directions=[_direction_row(d) for d in report.directions],
        eliminated=[_direction_row(d) for d in report.eliminated],
        family_dimension=report.family_dimension,
        cohomology_dimension=report.cohomology_dimension,
        dimension_agrees=report.dimension_agrees,
    )


def deform(context: ComputationContext, config: RunConfig) -> Report:
    quotient = context.quotient
    family = solve_mc_first_order(quotient)
    reduction = gauge_reduce(family)
    rules = quotient.system.rules
    report = DeformReport(
        command=config.command.value,
        rules=[r.text for r in rules],
        symbolic=family.symbolic.table(),
        constraints=[f"{p.name} = {expr.text}" for p, expr in family.constraints.solved_equations()],
        free=[p.name for p in family.free],
        family=family.solution.table(),
        gauge_shifts=reduction.shift_table(),
        eliminated=[p.name for p in reduction.eliminated],
        reduced=[p.name for p in reduction.reduced],
        family_dimension=reduction.dimension,
    )
    if config.crosscheck:
        result = crosscheck_mc(context.complex, reduction)
        report.crosscheck = _crosscheck_section(result, [r.lhs.text for r in rules], quotient.field)
        report.passed = result.passed
    return report


COMMANDS: Dict[Command, Handler] = {
    Command.VALIDATE: validate,
    Command.DIAMOND: diamond,
    Command.BASIS: basis,
    Command.RESOLUTION: resolution,
    Command.HH: hh,
    Command.LIFT: lift,
    Command.BRACKET: bracket_command,
    Command.MC_CHECK: mc_check,
    Command.DEFORM: deform,
}


def run(config: RunConfig) -> Report:
    """Execute exactly one subcommand and return its report."""
    context = ComputationContext.from_file(
        config.input,
        field_override=Field.from_descriptor(config.field) if config.field else None,
        max_degree=config.max_degree,
    )
    logger.info("command_started", command=config.command.value, input=str(config.input))
    report = COMMANDS[config.command](context, config)
    logger.info("command_finished", command=config.command.value, passed=report.passed)
    return report
