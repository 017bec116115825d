# commands/cmd_kummer_check.py

from burkhardt_core.twist_factory import elliptic_kummer_check

from . import add_global_flags, emit, rational_arg


def register(subparsers):
    p = subparsers.add_parser("kummer-check", help="quartic Kummer model of an elliptic curve")
    p.add_argument("--a2", type=rational_arg, default=0)
    p.add_argument("--a4", type=rational_arg, default=0)
    p.add_argument("--a6", type=rational_arg, required=True)
    p.add_argument("--r", type=rational_arg, required=True, help="nonzero rational, sqrt(r) adjoined")
    p.add_argument("--d", type=rational_arg, default=1, help="quadratic twist d*w^2 = ...")
    add_global_flags(p)
    return p


def run(args, settings) -> int:
    km = elliptic_kummer_check(args.a2, args.a4, args.a6, args.r, args.d)
    payload = {
        "cubic": f"x^3 + {km.a2}*x^2 + {km.a4}*x + {km.a6}",
        "r": str(km.r),
        "d": str(km.d),
        "degree": km.degree,
        "norm": str(km.norm),
        "quartic": f"{km.d}*w^2 = {km.reduced}",
    }
    emit(settings, payload)
    return 0
