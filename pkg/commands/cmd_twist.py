# commands/cmd_twist.py

from pathlib import Path

from burkhardt_core.errors import PreconditionError
from burkhardt_core.exactnum import parse_rational
from burkhardt_core.textio import model_to_dict, model_to_json
from burkhardt_core.twist_factory import (
    SexticPoly,
    bdoubleprime_model,
    sextic_from_roots,
    specialize_model,
    twist_from_sextic,
)

from . import add_global_flags, emit, parse_assignments


def register(subparsers):
    p = subparsers.add_parser("twist", help="construct a twist of the Burkhardt quartic")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--sextic", metavar="c0,...,c5", help="monic sextic T^6 + c5 T^5 + ... + c0")
    src.add_argument("--roots", metavar="r1,...,r6", help="six distinct rational roots")
    src.add_argument("--bdoubleprime", action="store_true", help="the B'' model over Q(s,t)")
    p.add_argument("--specialize", metavar="s=1,t=2", help="substitute parameter values")
    p.add_argument("--out", metavar="PATH.json", help="write the model as JSON")
    add_global_flags(p)
    return p


def build(args):
    if args.sextic:
        return twist_from_sextic(SexticPoly.parse(args.sextic))
    if args.roots:
        roots = [parse_rational(r) for r in args.roots.split(",")]
        if len(set(roots)) != len(roots):
            raise PreconditionError("roots must be distinct")
        return twist_from_sextic(sextic_from_roots(roots))
    return bdoubleprime_model()


def run(args, settings) -> int:
    twist = build(args)
    model = twist.model
    if args.specialize:
        model = specialize_model(model, parse_assignments(args.specialize))
    if args.out:
        Path(args.out).write_text(model_to_json(model) + "\n", encoding="utf-8")

    payload = {"source": twist.source, "model": model_to_dict(model), "provenance": twist.provenance}
    lines = [f"{model.name} in {', '.join(model.coords)}"]
    if model.params:
        lines[0] += f" over Q({', '.join(model.params)})"
    labels = ("linear", "quartic") if model.is_pair else ("quartic",)
    for label, form in zip(labels, model.forms):
        lines.append(f"{label}: {form}")
    lines.append(f"provenance: {twist.provenance}")
    emit(settings, payload, lines)
    return 0
