import argparse
import logging
import sys

from burkhardt_core.errors import BurkhardtError
from burkhardt_core.logbook import clear_log, log_error, render_log_panel
from burkhardt_core.settings import RunSettings
from commands import (
    cmd_classify_rst,
    cmd_fibration,
    cmd_hilbert,
    cmd_kummer_check,
    cmd_obstruction,
    cmd_twist,
    cmd_verify,
)

# ------------------------------------------
# GLOBAL CONFIG
# ------------------------------------------

COMMAND_MAP = {
    "verify": cmd_verify,
    "twist": cmd_twist,
    "obstruction": cmd_obstruction,
    "hilbert": cmd_hilbert,
    "classify-rst": cmd_classify_rst,
    "fibration": cmd_fibration,
    "kummer-check": cmd_kummer_check,
}

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="burkhardt",
        description="Exact computations on twists of the Burkhardt quartic and their Brauer obstruction.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for module in COMMAND_MAP.values():
        module.register(subparsers)
    return parser


# ------------------------------------------
# MAIN
# ------------------------------------------

def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    settings = RunSettings.from_args(args)
    clear_log()

    module = COMMAND_MAP[args.command]
    try:
        code = module.run(args, settings)
    except BurkhardtError as e:
        print(f"error: {e}", file=sys.stderr)
        log_error(f"Command '{args.command}' error: {e}")
        code = EXIT_ERROR

    if settings.show_log:
        print("\n".join(render_log_panel()), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
