# commands/cmd_verify.py

from burkhardt_core.certificates import CERTIFICATES, run_certificates, summary_frame
from burkhardt_core.settings import DEFAULTS

from . import add_global_flags, emit


def register(subparsers):
    p = subparsers.add_parser("verify", help="run the certificate suite")
    p.add_argument("names", nargs="*", default=["all"], help="certificate names, or 'all'")
    p.add_argument("--list", action="store_true", help="list certificate names and exit")
    p.add_argument("--sample-obstruction", type=int, default=DEFAULTS["sample_obstruction"], metavar="N")
    p.add_argument("--mazur-bound", type=int, default=DEFAULTS["mazur_bound"], metavar="N")
    add_global_flags(p)
    return p


def run(args, settings) -> int:
    if args.list:
        emit(settings, {"certificates": sorted(CERTIFICATES)}, lines=sorted(CERTIFICATES))
        return 0

    reports = run_certificates(args.names, settings)
    passed = all(r.passed for r in reports)
    if settings.as_json:
        emit(settings, {"passed": passed, "reports": [r.as_dict() for r in reports]})
    else:
        table = summary_frame(reports).to_string(index=False)
        verdict = "all certificates pass" if passed else "FAILED: " + ", ".join(
            r.name for r in reports if not r.passed
        )
        emit(settings, {}, lines=table.splitlines() + ["", verdict])
    return 0 if passed else 1
