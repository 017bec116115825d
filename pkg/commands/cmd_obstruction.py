# commands/cmd_obstruction.py

from burkhardt_core.brauer import quaternion_index_q, rst_index_classify
from burkhardt_core.errors import NoConicPointError, PreconditionError
from burkhardt_core.obstruction import (
    conic_to_symbol,
    find_conic_point,
    marked_sextic,
    obstruction_conic,
    trope_check,
)
from burkhardt_core.standard_model import ProjectivePoint, hessian_membership
from burkhardt_core.textio import load_model

from . import add_global_flags, emit, parse_assignments


def register(subparsers):
    p = subparsers.add_parser("obstruction", help="obstruction conic and Brauer class at a point")
    p.add_argument("--model", default="bprime", help="bprime | bdoubleprime | standard | PATH.json")
    p.add_argument("--point", required=True, metavar="(a:b:...)", help="a point of the model")
    p.add_argument("--specialize", metavar="s=1", help="fix parameter values first")
    p.add_argument("--marked-sextic", action="store_true", help="also compute the genus-2 curve")
    p.add_argument("--trope-check", action="store_true", help="check the enveloping cone is a vertex cone")
    add_global_flags(p)
    return p


def _local_data(sym, settings, conic):
    data = {
        "index": quaternion_index_q(sym),
        "local_symbols": {str(k): v for k, v in sym.local_symbols().items()},
        "ramified": [str(p) for p in sym.ramified_places()],
    }
    try:
        data["conic_point"] = str(find_conic_point(conic, settings.search_bound))
    except NoConicPointError as e:
        data["conic_point"] = None
        data["search"] = str(e)
    return data


def run(args, settings) -> int:
    model = load_model(args.model)
    if args.specialize:
        model = model.specialize(parse_assignments(args.specialize))
    alpha = ProjectivePoint.parse(args.point)
    if not model.contains(alpha):
        raise PreconditionError(f"{alpha} is not on {model.name}")

    conic = obstruction_conic(model, alpha)
    sym = conic_to_symbol(conic)
    payload = {
        "model": model.name,
        "point": str(alpha),
        "hessian": hessian_membership(model, alpha),
        "gram": [[str(x) for x in row] for row in conic.gram],
        "conic": str(conic),
        "symbol": str(sym),
    }
    if sym.is_rational():
        payload["local"] = _local_data(sym.over_q(), settings, conic)
    else:
        try:
            cls = sym.rst_class()
        except PreconditionError as e:
            payload["rst_class"] = None
            payload["rst_note"] = str(e)
        else:
            payload["rst_class"] = str(cls)
            payload["rst_index"] = rst_index_classify(cls)

    if args.marked_sextic:
        sextic = marked_sextic(model, alpha, settings.search_bound)
        payload["marked_sextic"] = {
            "conic_point": str(sextic.conic_point),
            "degree": sextic.degree,
            "curve": sextic.curve_equation(),
        }
    if args.trope_check:
        payload["trope_check"] = trope_check(model, alpha)

    emit(settings, payload)
    return 0
