from typing import Any, List

from app.models.reports import Report
from app.models.run_config import OutputFormat


def _text_lines(value: Any, indent: int = 0) -> List[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for key, item in value.items():
            if isinstance(item, (dict, list)) and item:
                lines.append(f"{pad}{key}:")
                lines.extend(_text_lines(item, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(item)}")
        return lines
    if isinstance(value, list):
        lines = []
        for item in value:
            if isinstance(item, dict):
                nested = _text_lines(item, indent + 1)
                lines.append(f"{pad}- {nested[0].strip()}" if nested else f"{pad}-")
                lines.extend(nested[1:])
            elif isinstance(item, list):
                lines.append(f"{pad}- ({', '.join(_scalar(x) for x in item)})")
            else:
                lines.append(f"{pad}- {_scalar(item)}")
        return lines
    return [f"{pad}{_scalar(value)}"]


def _scalar(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (dict, list)):
        return "none"
    return str(value)


def render(report: Report, output_format: OutputFormat) -> str:
    """JSON in declaration order, or an indented plain-text listing."""
    if output_format == OutputFormat.JSON:
        return report.model_dump_json(indent=2)
    return "\n".join(_text_lines(report.model_dump(mode="json")))
