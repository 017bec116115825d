# commands/cmd_hilbert.py

from burkhardt_core.brauer import (
    QuaternionSymbolQ,
    hilbert_symbol,
    quaternion_index_q,
    reciprocity_holds,
)
from burkhardt_core.errors import NoConicPointError
from burkhardt_core.obstruction import TernaryQuadratic, find_conic_point

from . import add_global_flags, emit, rational_arg


def register(subparsers):
    p = subparsers.add_parser("hilbert", help="Hilbert symbols and index of (a,b) over Q")
    p.add_argument("-a", required=True, type=rational_arg, help="nonzero rational")
    p.add_argument("-b", required=True, type=rational_arg, help="nonzero rational")
    p.add_argument("--place", help="a prime or 'inf'; all relevant places when omitted")
    p.add_argument("--search", action="store_true", help="look for a point on z^2 = a x^2 + b y^2")
    add_global_flags(p)
    return p


def run(args, settings) -> int:
    sym = QuaternionSymbolQ(args.a, args.b)
    payload = {"symbol": str(sym), "index": quaternion_index_q(sym)}
    if args.place is not None:
        payload["place"] = args.place
        payload["value"] = hilbert_symbol(args.a, args.b, args.place)
    else:
        payload["local_symbols"] = {str(k): v for k, v in sym.local_symbols().items()}
        payload["ramified"] = [str(p) for p in sym.ramified_places()]
        payload["reciprocity"] = reciprocity_holds(sym)
    if args.search:
        conic = TernaryQuadratic.diagonal(-args.a, -args.b, 1)
        try:
            payload["conic_point"] = str(find_conic_point(conic, settings.search_bound))
        except NoConicPointError as e:
            payload["conic_point"] = None
            payload["search"] = str(e)
    emit(settings, payload)
    return 0
