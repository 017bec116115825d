# burkhardt_core/certificates.py

import hashlib
import json
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import pandas as pd

from .brauer import (
    MonomialElt,
    QuaternionSymbolQ,
    RstClass,
    all_classes,
    biquaternion_class,
    brauer_equal_q,
    power_series_anisotropy,
    quaternion_index_q,
    reciprocity_holds,
    representable_classes,
    rst_index_classify,
    rst_symbol_to_class,
)
from .errors import BurkhardtError, PreconditionError, UnknownCertificateError
from .fibration import (
    FLEXES,
    P0,
    P0_FIBER,
    cubic_family,
    embedding_identity,
    fiber_of,
    flex_verify,
    generate_points,
    torsion_test,
)
from .logbook import log_error, log_info
from .multipoly import Polynomial
from .obstruction import obstruction_symbol
from .settings import RunSettings
from .standard_model import (
    X_VARS,
    character_table,
    computed_characters,
    generators_rho4,
    induced_rho5,
    maschke_map,
    rho5_scalar,
    s6_orbit,
    singularity_test,
    standard_model,
    sum_rows,
    symmetric_power_matrix,
    symmetric_power_trace,
)
from .twist_factory import (
    SexticPoly,
    bdoubleprime_model,
    bprime_model,
    elliptic_kummer_check,
    sextic_from_roots,
    substituted_bprime,
    tangent_cone_quadric,
    twist_from_sextic,
)

BPRIME_POINT = (40, -30, -8, -5, 3, 0)
BDOUBLEPRIME_POINT = (16, -31, 9, 0, 0)
INDEX_FOUR = ("e1+e4", "e1+e2+e4", "e1+e3+e4", "e2+e3+e4")
KUMMER_RS = (-1, 2, -2, 3, -3, 5)


# ------------------------------------------
# CANONICAL REPORTS
# ------------------------------------------

def canonical_json(value) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def digest(value) -> str:
    return "sha256:" + hashlib.sha256(canonical_json(value).encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class CertificateReport:
    name: str
    status: str  # "pass" | "fail"
    details: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def body(self) -> dict:
        return {"name": self.name, "status": self.status, "details": self.details}

    @property
    def digest(self) -> str:
        return digest(self.body)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def as_dict(self) -> dict:
        return {**self.body, "digest": self.digest, "elapsed": round(self.elapsed, 3)}


# ------------------------------------------
# CERTIFICATES
# ------------------------------------------

def _maschke_identity(settings):
    ys, composed = maschke_map(symbolic=True)
    return not composed, {"forms": [str(y) for y in ys], "remaining_terms": len(composed.terms)}


def _character_table(settings):
    table = character_table()
    computed = computed_characters()
    # the generator matrices put Sym^2 rho4 on the row printed as rho10_dual
    pairs = {
        "rho4": "rho4",
        "rho4_dual": "rho4_dual",
        "rho5": "rho5",
        "sym2_rho4": "rho10_dual",
        "wedge2_rho5": "rho10",
    }
    checks = {}
    for key, row in pairs.items():
        checks[f"{key}={row}"] = [a == b for a, b in zip(computed[key], table[row])]
    equalities = sum(sum(v) for v in checks.values())
    dual = [w == s.conj() for w, s in zip(computed["wedge2_rho5"], computed["sym2_rho4"])]
    details = {
        "computed": {k: [str(x) for x in v] for k, v in computed.items()},
        "equalities": equalities,
        "wedge2_rho5_is_dual_of_sym2_rho4": all(dual),
    }
    return equalities == 15 and all(dual), details


def _rho5_invariance(settings):
    lams = {}
    for name, A in generators_rho4().items():
        lams[name] = str(rho5_scalar(induced_rho5(A)))
    return True, {"scalars": lams}


def _bdoubleprime_reconstruction(settings):
    twist = bdoubleprime_model()
    return True, {"terms": len(twist.model.quartic.terms), **twist.provenance}


def _bprime_obstruction(settings):
    sym = obstruction_symbol(bprime_model(), BPRIME_POINT).over_q()
    expected = QuaternionSymbolQ(-3, -1)
    ramified = sym.ramified_places()
    ok = (
        brauer_equal_q(sym, expected)
        and quaternion_index_q(sym) == 2
        and bool(ramified)
        and reciprocity_holds(sym)
    )
    return ok, {
        "symbol": str(sym),
        "index": quaternion_index_q(sym),
        "ramified": [str(p) for p in ramified],
    }


def _bdoubleprime_restriction(settings):
    model = bdoubleprime_model().model.specialize({"s": Fraction(1)}, "B''|s=1")
    sym = obstruction_symbol(model, BDOUBLEPRIME_POINT)
    samples = [{"t": Fraction(t)} for t in (-5, -2, Fraction(-1, 3), Fraction(1, 2), 3, 7)]
    usable = []
    for values in samples:
        try:
            sym.specialize(values)
        except PreconditionError:
            continue
        usable.append(values)
    reference = [1 if values["t"] > 0 else -1 for values in usable]
    ok = bool(usable) and sym.real_signature(usable) == reference
    details = {"symbol": str(sym), "real_samples": len(usable)}
    try:
        cls = sym.rst_class()
    except PreconditionError:
        details["rst_class"] = None
    else:
        expected = rst_symbol_to_class(MonomialElt(-1), MonomialElt(1, 0, 1))
        details["rst_class"] = str(cls)
        ok = ok and cls == expected
    return ok, details


def _rst_index_enumeration(settings):
    reps = representable_classes()
    index_four = sorted(str(c) for c in (RstClass.parse(x) for x in INDEX_FOUR))
    found = sorted(str(c) for c in all_classes() if rst_index_classify(c) == 4)
    ob = biquaternion_class(MonomialElt(-1), MonomialElt(1, 1, 0), MonomialElt(-1, 1, 0), MonomialElt(1, 0, 1))
    ok = len(reps) == 12 and found == index_four and str(ob) == "e2+e3+e4" and rst_index_classify(ob) == 4
    return ok, {"representable": len(reps), "index_four": found, "ob_bdoubleprime": str(ob)}


def _tangent_cone(settings):
    cone = tangent_cone_quadric()
    form = cone.as_diagonal_form()
    expected = [(Fraction(1), 1, 0), (Fraction(1), 0, 1), (Fraction(1), 1, 1), (Fraction(-3), 0, 0)]
    statuses = {field_: power_series_anisotropy(form, field_).status for field_ in ("C", "R")}
    ok = list(cone.entries) == expected and all(s == "anisotropic" for s in statuses.values())
    return ok, {"form": str(form), "scale": str(cone.scale), "anisotropy": statuses}


def _fibration(settings):
    family = cubic_family()
    flexes = all(flex_verify(family, f) for f in FLEXES)
    model = bprime_model()
    u, v, base = fiber_of(P0)
    C = cubic_family(u, v)
    torsion = torsion_test(C, base, settings.mazur_bound)
    report = generate_points(12, sample=settings.sample_obstruction)
    expected = QuaternionSymbolQ(-3, -1)
    classes = report.sample_classes()
    ok = (
        flexes
        and model.contains(P0)
        and (u, v) == P0_FIBER
        and torsion.non_torsion_certified
        and embedding_identity()
        and report.distinct >= 12
        and len(classes) >= min(10, settings.sample_obstruction)
        and all(brauer_equal_q(c, expected) for c in classes)
    )
    return ok, {
        "slice_point": str(base),
        "torsion": str(torsion),
        **report.as_dict(),
    }


def _singularities(settings):
    bprime = bprime_model()
    orbit = s6_orbit((1, -1, 0, 0, 0, 0))
    orbit_singular = all(singularity_test(bprime, pt) == "singular" for pt in orbit)
    standard = singularity_test(standard_model(), (0, 1, -1, 0, 0))
    bdouble = singularity_test(bdoubleprime_model().model, (1, -1, 0, 0, 0))
    ok = len(orbit) == 15 and orbit_singular and standard == "singular" and bdouble == "singular"
    return ok, {"orbit": len(orbit), "B1": standard, "B''": bdouble}


def _sextic_twist(settings):
    roots = (0, 1, -1, 2, -2, 3)
    twist = twist_from_sextic(sextic_from_roots(roots))
    direct = substituted_bprime(roots)
    same = all(a == b for a, b in zip(twist.model.forms, direct.forms))
    cyclic = twist_from_sextic(SexticPoly((-1, 0, 0, 0, 0, 0)))
    x1 = Polynomial.variable(X_VARS, "x1")
    ok = same and cyclic.model.forms[0] == x1 * 6
    return ok, {"roots": [str(r) for r in roots], "sigma1_cyclic": str(cyclic.model.forms[0])}


def _kummer_model(settings):
    rng = random.Random(12)
    degrees = []
    for k in range(20):
        a2, a4, a6 = (Fraction(rng.randint(-9, 9)) for _ in range(3))
        r = KUMMER_RS[k % len(KUMMER_RS)]
        degrees.append(elliptic_kummer_check(a2, a4, a6, r).degree)
    return all(d <= 4 for d in degrees), {"degrees": degrees}


def _symmetric_powers(settings):
    sym4 = sum_rows("rho5", "rho30")
    sym2_rho10 = sum_rows("rho5", "rho30", "rho20")
    checks = []
    for i, (_, A) in enumerate(generators_rho4().items()):
        checks.append(symmetric_power_trace(A, 4) == sym4[i])
        checks.append(symmetric_power_trace(symmetric_power_matrix(A, 2), 2) == sym2_rho10[i])
    return all(checks), {"checks": checks}


CERTIFICATES = {
    "maschke-identity": _maschke_identity,
    "character-table": _character_table,
    "rho5-invariance": _rho5_invariance,
    "bdoubleprime-reconstruction": _bdoubleprime_reconstruction,
    "bprime-obstruction": _bprime_obstruction,
    "bdoubleprime-restriction": _bdoubleprime_restriction,
    "rst-index-enumeration": _rst_index_enumeration,
    "tangent-cone": _tangent_cone,
    "fibration": _fibration,
    "singularities": _singularities,
    "sextic-twist": _sextic_twist,
    "kummer-model": _kummer_model,
    "symmetric-powers": _symmetric_powers,
}


# ------------------------------------------
# RUNNER
# ------------------------------------------

def _run_one(name: str, settings: RunSettings) -> CertificateReport:
    log_info(f"Certificate {name}: started")
    start = time.perf_counter()
    try:
        ok, details = CERTIFICATES[name](settings)
    except BurkhardtError as e:
        ok, details = False, {"error": f"{type(e).__name__}: {e}"}
        log_error(f"Certificate {name}: {e}")
    elapsed = time.perf_counter() - start
    status = "pass" if ok else "fail"
    log_info(f"Certificate {name}: {status} in {elapsed:.2f}s")
    return CertificateReport(name, status, details, elapsed)


def resolve_selection(selection) -> list:
    if selection is None or selection == "all" or list(selection) == ["all"]:
        return sorted(CERTIFICATES)
    names = [selection] if isinstance(selection, str) else list(selection)
    for name in names:
        if name not in CERTIFICATES:
            raise UnknownCertificateError(name, sorted(CERTIFICATES))
    return sorted(set(names))


def run_certificates(selection="all", settings: RunSettings | None = None) -> list:
    settings = settings or RunSettings()
    names = resolve_selection(selection)
    with ThreadPoolExecutor(max_workers=settings.threads) as pool:
        reports = list(pool.map(lambda n: _run_one(n, settings), names))
    return sorted(reports, key=lambda r: r.name)


def summary_frame(reports) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {"certificate": r.name, "status": r.status, "seconds": round(r.elapsed, 3), "digest": r.digest[7:19]}
            for r in reports
        ],
        columns=["certificate", "status", "seconds", "digest"],
    )
