# commands/__init__.py

import argparse
import json
import sys

from burkhardt_core.errors import ParseError
from burkhardt_core.exactnum import parse_rational
from burkhardt_core.settings import DEFAULTS, RunSettings


def add_global_flags(parser):
    """Flags every subcommand accepts."""
    parser.add_argument("--json", action="store_true", help="machine-readable JSON output")
    parser.add_argument("--search-bound", type=int, default=DEFAULTS["search_bound"], metavar="N")
    parser.add_argument("--threads", type=int, default=DEFAULTS["threads"], metavar="N")
    parser.add_argument("--show-log", action="store_true", help="print the log panel to stderr")


def emit(settings: RunSettings, payload: dict, lines=None, stream=None):
    """JSON when --json is set, otherwise aligned `key  value` text (or the given lines)."""
    stream = stream or sys.stdout
    if settings.as_json:
        stream.write(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
        return
    if lines is None:
        width = max((len(k) for k in payload), default=0)
        lines = [f"{k.ljust(width)}  {_text(v)}" for k, v in payload.items()]
    for line in lines:
        stream.write(line + "\n")


def _text(value):
    if isinstance(value, (list, tuple)):
        return ", ".join(_text(v) for v in value)
    if isinstance(value, dict):
        return "; ".join(f"{k}={_text(v)}" for k, v in value.items())
    return str(value)


def parse_assignments(text: str) -> dict:
    """'s=1,t=-2/3' -> {'s': Fraction(1), 't': Fraction(-2, 3)}."""
    values = {}
    pos = 0
    for part in text.split(","):
        name, sep, value = part.partition("=")
        if not sep or not name.strip():
            raise ParseError(f"expected name=value, got {part.strip()!r}", pos, text)
        try:
            values[name.strip()] = parse_rational(value)
        except ParseError:
            raise ParseError(f"bad value {value.strip()!r}", pos + len(name) + 1, text) from None
        pos += len(part) + 1
    return values


def rational_arg(text: str):
    """argparse type for exact rationals such as -3/4."""
    try:
        return parse_rational(text)
    except ParseError as e:
        raise argparse.ArgumentTypeError(str(e)) from None
