import sys
from typing import List, Optional

from pydantic import ValidationError as PydanticValidationError

from app.cli.commands import run
from app.cli.output import render
from app.cli.parser import parse_config
from app.core.config import override_settings
from app.core.exceptions import QuiverAlgebraError
from app.core.logging import configure_logging, get_logger
from app.models.reports import ErrorReport

USAGE_ERROR = 2


def main(argv: Optional[List[str]] = None) -> int:
    """Run one subcommand; 0 on success, 1 on a negative verdict or math failure, 2 on usage errors."""
    configure_logging()
    logger = get_logger(__name__)
    try:
        config = parse_config(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else USAGE_ERROR
    except PydanticValidationError as exc:
        error = exc.errors()[0]
        location = ".".join(str(part) for part in error["loc"])
        print(f"quiverhh: {location}: {error['msg']}", file=sys.stderr)
        return USAGE_ERROR

    try:
        with override_settings(
            max_degree=config.max_degree,
            rewrite_step_cap=config.rewrite_step_cap,
            basis_cap=config.basis_cap,
            solver_size_cap=config.solver_size_cap,
        ):
            report = run(config)
    except QuiverAlgebraError as exc:
        logger.warning("command_failed", command=config.command.value, error=type(exc).__name__)
        report = ErrorReport(
            command=config.command.value,
            error=exc.message,
            error_type=type(exc).__name__,
            exit_code=exc.exit_code,
        )
        print(render(report, config.output_format))
        return exc.exit_code

    print(render(report, config.output_format))
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
