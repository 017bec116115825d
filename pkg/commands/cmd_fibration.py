# commands/cmd_fibration.py

from burkhardt_core.errors import PreconditionError
from burkhardt_core.fibration import (
    LINE_FRAMES,
    P0,
    P0_FIBER,
    cubic_family,
    embed_to_bprime,
    fiber_of,
    generate_points,
    height_bits,
    multiples,
    points_frame,
    torsion_test,
)
from burkhardt_core.plots import fibration_graph_figure, height_growth_figure, write_figure
from burkhardt_core.settings import DEFAULTS
from burkhardt_core.standard_model import ProjectivePoint

from . import add_global_flags, emit, rational_arg


def register(subparsers):
    p = subparsers.add_parser("fibration", help="elliptic fibration on B' and point generation")
    p.add_argument("--u", type=rational_arg, help="fiber parameter u")
    p.add_argument("--v", type=rational_arg, help="fiber parameter v")
    p.add_argument("--point", metavar="(X:Y:Z)", help="point on C_(u,v); defaults to the image of P0")
    p.add_argument("--line", default="L345", choices=sorted(LINE_FRAMES))
    p.add_argument("--multiples", type=int, default=DEFAULTS["mazur_bound"], metavar="N")
    p.add_argument("--generate", type=int, metavar="N", help="generate N rational points on B'")
    p.add_argument("--sample-obstruction", type=int, default=DEFAULTS["sample_obstruction"], metavar="N")
    p.add_argument("--mazur-bound", type=int, default=DEFAULTS["mazur_bound"], metavar="N")
    p.add_argument(
        "--max-height-bits", type=int, default=DEFAULTS["max_height_bits"], metavar="N",
        help="stop a fiber once its points exceed N bits",
    )
    p.add_argument("--csv", metavar="PATH.csv", help="write generated points")
    p.add_argument("--plot", metavar="PATH.html", help="write the fiber graph or height growth")
    add_global_flags(p)
    return p


def _base_point(args):
    if args.point:
        return ProjectivePoint.parse(args.point)
    u, v, base = fiber_of(P0, args.line)
    if (u, v) != (args.u, args.v):
        raise PreconditionError(f"P0 lies on fiber ({u},{v}); give --point for ({args.u},{args.v})")
    return base


def _run_fiber(args, settings) -> int:
    C = cubic_family(args.u, args.v)
    P = _base_point(args)
    if not C.contains(P):
        raise PreconditionError(f"{P} is not on C_({args.u},{args.v})")
    pts = multiples(C, P, args.multiples)
    torsion = torsion_test(C, P, settings.mazur_bound)
    rows = []
    for k, Q in enumerate(pts, start=1):
        row = {"n": k, "point": str(Q), "height_bits": height_bits(Q)}
        if Q != C.origin:
            row["bprime"] = str(embed_to_bprime(args.u, args.v, Q, args.line))
        rows.append(row)
    if args.plot:
        write_figure(height_growth_figure(C, P, args.multiples), args.plot)

    payload = {
        "cubic": str(C),
        "fiber": f"({args.u},{args.v})",
        "line": args.line,
        "point": str(P),
        "torsion": str(torsion),
        "multiples": rows,
    }
    lines = [f"C_({args.u},{args.v}): {C}", f"P = {P}: {torsion}"]
    lines += [f"{r['n']:>3}P  {r['height_bits']:>5} bits  {r['point']}" for r in rows]
    emit(settings, payload, lines)
    return 0


def _run_generate(args, settings) -> int:
    report = generate_points(
        args.generate, sample=settings.sample_obstruction, max_height_bits=args.max_height_bits
    )
    frame = points_frame(report)
    if args.csv:
        frame.to_csv(args.csv, index=False)
    if args.plot:
        write_figure(fibration_graph_figure(report.graph), args.plot)
    summary = report.as_dict()
    lines = frame.to_string(index=False).splitlines()
    lines += [
        "",
        f"distinct points: {summary['distinct']}  off Hessian: {summary['off_hessian']}  rank: {summary['rank']}",
    ]
    lines += [f"{s['point']}  ->  {s['symbol']}" for s in summary["samples"]]
    emit(settings, summary, lines)
    return 0


def run(args, settings) -> int:
    if args.generate is not None:
        return _run_generate(args, settings)
    if args.u is None and args.v is None:
        args.u, args.v = P0_FIBER
    elif args.u is None or args.v is None:
        raise PreconditionError("give both --u and --v")
    return _run_fiber(args, settings)
