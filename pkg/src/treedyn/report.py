import json
from typing import Any

from .types import OutputFormat


def _flatten(value: Any, prefix: str, out: list[str]) -> None:
    if isinstance(value, dict) and value:
        for key in sorted(value, key=str):
            _flatten(value[key], f"{prefix}.{key}" if prefix else str(key), out)
        return
    out.append(f"{prefix}: {json.dumps(value, sort_keys=True)}")


def render_json(report: dict[str, Any]) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def render_text(report: dict[str, Any]) -> str:
    """One ``dotted.key: value`` line per leaf, values in JSON notation."""
    lines: list[str] = []
    _flatten(report, "", lines)
    return "\n".join(lines) + "\n"


def render(report: dict[str, Any], fmt: OutputFormat) -> str:
    if fmt is OutputFormat.JSON:
        return render_json(report)
    return render_text(report)


def parse_text(text: str) -> dict[str, Any]:
    """Leaf values of a text report keyed by dotted path."""
    leaves = {}
    for line in text.splitlines():
        key, _, value = line.partition(": ")
        leaves[key] = json.loads(value)
    return leaves


def leaves(report: dict[str, Any]) -> dict[str, Any]:
    """Leaf values of a report keyed by dotted path, as the text rendering lists them."""
    return parse_text(render_text(report))
