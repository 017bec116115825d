# commands/cmd_classify_rst.py

import pandas as pd

from burkhardt_core.brauer import (
    MonomialElt,
    RstClass,
    biquaternion_class,
    representable_classes,
    rst_index_classify,
    rst_index_table,
    rst_symbol_to_class,
)
from burkhardt_core.errors import ParseError
from burkhardt_core.plots import rst_index_figure, write_figure

from . import add_global_flags, emit


def register(subparsers):
    p = subparsers.add_parser("classify-rst", help="index of a class in Br(R)[2], R = R(s,t)")
    what = p.add_mutually_exclusive_group(required=True)
    what.add_argument("--class", dest="cls", metavar="e2+e3+e4", help="class in the basis e1..e4")
    what.add_argument("--symbol", metavar="a,b", help="quaternion symbol of monomials, e.g. '-1,t'")
    what.add_argument("--biquaternion", metavar="a,b,c,d", help="(a,b) + (c,d) in monomials")
    what.add_argument("--table", action="store_true", help="all 16 classes")
    p.add_argument("--plot", metavar="PATH.html", help="write the index heatmap")
    add_global_flags(p)
    return p


def _monomials(text: str, count: int):
    parts = text.split(",")
    if len(parts) != count:
        raise ParseError(f"expected {count} comma-separated monomials", 0, text)
    out = []
    pos = 0
    for part in parts:
        try:
            out.append(MonomialElt.parse(part))
        except ParseError:
            raise ParseError(f"bad monomial {part.strip()!r}", pos, text) from None
        pos += len(part) + 1
    return out


def _resolve(args) -> RstClass:
    if args.cls:
        return RstClass.parse(args.cls)
    if args.symbol:
        return rst_symbol_to_class(*_monomials(args.symbol, 2))
    return biquaternion_class(*_monomials(args.biquaternion, 4))


def run(args, settings) -> int:
    if args.plot:
        write_figure(rst_index_figure(), args.plot)

    if args.table:
        rows = rst_index_table()
        lines = pd.DataFrame(rows, columns=["class", "index", "representative"]).to_string(index=False)
        emit(settings, {"classes": rows}, lines.splitlines())
        return 0

    cls = _resolve(args)
    index = rst_index_classify(cls)
    rep = representable_classes().get(cls)
    if cls.is_zero():
        certificate = "zero class"
    elif rep is not None:
        certificate = f"equals the quaternion symbol ({rep[0]},{rep[1]})"
    else:
        certificate = "not among the 12 classes of quaternion symbols of monomials"
    emit(settings, {"class": str(cls), "index": index, "certificate": certificate})
    return 0
