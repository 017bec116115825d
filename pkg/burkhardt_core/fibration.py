# burkhardt_core/fibration.py

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import networkx as nx
import pandas as pd
import sympy

from .errors import ConsistencyError, PreconditionError
from .linalg import det, rank
from .logbook import log_info, log_warn
from .multipoly import Polynomial
from .obstruction import sample_obstruction
from .settings import DEFAULTS
from .standard_model import ProjectivePoint, X_VARS, as_point_values, hessian_membership, s6_orbit
from .twist_factory import bprime_model

CUBIC_VARS = ("X", "Y", "Z")
FIBRATION_PARAMS = ("u", "v")
FLEXES = ((1, 0, 0), (0, 1, 0), (1, -1, 0))

P0 = ProjectivePoint.of(20, 2, -9, -60, 15, 32)
P0_FIBER = (Fraction(3, 5), Fraction(4))

# (c1, c2, l1, l2, l3, c3): positions of x1..x6 that play the roles of
# X, Y, -uZ, -vZ, Z and the sigma1 slot. The line is x_l1 = x_l2 = x_l3 = sigma1 = 0.
LINE_FRAMES = {
    "L345": (0, 1, 2, 3, 4, 5),
    "L245": (0, 2, 1, 3, 4, 5),
    "L145": (1, 2, 0, 3, 4, 5),
}


# ------------------------------------------
# THE CUBIC FAMILY
# ------------------------------------------

@dataclass(frozen=True)
class FibrationParams:
    u: Fraction
    v: Fraction

    def __post_init__(self):
        object.__setattr__(self, "u", Fraction(self.u))
        object.__setattr__(self, "v", Fraction(self.v))

    def __str__(self):
        return f"({self.u},{self.v})"


@dataclass(frozen=True, eq=False)
class PlaneCubic:
    """Ternary cubic in X, Y, Z, possibly with parameters u, v; origin is a flex."""

    form: Polynomial
    params: tuple = ()
    origin: ProjectivePoint = ProjectivePoint.of(1, 0, 0)
    fiber: FibrationParams | None = None

    @property
    def is_symbolic(self) -> bool:
        return bool(self.params)

    def _at(self, poly, pt):
        values = as_point_values(pt)
        if len(values) != 3:
            raise PreconditionError(f"{pt} is not a point of P^2")
        out = poly.specialize(dict(zip(CUBIC_VARS, values))).restrict_ambient(self.params)
        return out.constant_value() if not self.params else out

    def value(self, pt):
        return self._at(self.form, pt)

    def contains(self, pt) -> bool:
        return not self.value(pt)

    def gradient_at(self, pt):
        return [self._at(d, pt) for d in self.form.gradient(CUBIC_VARS)]

    def hessian_at(self, pt):
        firsts = self.form.gradient(CUBIC_VARS)
        H = [[self._at(f.partial_derivative(c), pt) for c in CUBIC_VARS] for f in firsts]
        return det(H)

    def flexes(self):
        return [ProjectivePoint.of(*f) for f in FLEXES]

    def __str__(self):
        return str(self.form)


def _family_form() -> Polynomial:
    ring = CUBIC_VARS + FIBRATION_PARAMS
    X, Y, Z, u, v = (Polynomial.variable(ring, n) for n in ring)
    return (
        (u + v - 1) * X * Y * (X + Y)
        + (-u * v + u + v) * (X * X + Y * Y) * Z
        + (-u * u - 3 * u * v + 3 * u - v * v + 3 * v - 1) * X * Y * Z
        + (u * u * v + u * v * v - u * v) * Z**3
        + (u * u * v - u * u + u * v * v - 3 * u * v + u - v * v + v) * (X + Y) * Z * Z
    )


def _singular_somewhere(form: Polynomial) -> bool:
    grads = [g.to_sympy() for g in form.gradient(CUBIC_VARS)]
    syms = [sympy.Symbol(c) for c in CUBIC_VARS]
    for k, chart in enumerate(syms):
        local = [g.subs(chart, 1) for g in grads]
        free = [s for i, s in enumerate(syms) if i != k]
        basis = sympy.groebner(local, *free, order="grevlex")
        if list(basis.exprs) != [1]:
            return True
    return False


@lru_cache(maxsize=256)
def _checked_cubic(u: Fraction, v: Fraction) -> "PlaneCubic":
    form = _family_form().specialize({"u": u, "v": v}).restrict_ambient(CUBIC_VARS)
    if not form:
        raise PreconditionError(f"C_(u,v) vanishes identically at u={u}, v={v}")
    if _singular_somewhere(form):
        raise PreconditionError(f"C_(u,v) is singular at u={u}, v={v}")
    return PlaneCubic(form, (), fiber=FibrationParams(u, v))


def cubic_family(u=None, v=None, check: bool = True) -> PlaneCubic:
    """
    The cubic C_(u,v) cut out on the plane V_(u,v) through L345. Without
    arguments the family itself, with u, v as parameters.
    """
    if u is None and v is None:
        return PlaneCubic(_family_form(), FIBRATION_PARAMS)
    if u is None or v is None:
        raise PreconditionError("give both u and v, or neither")
    u, v = Fraction(u), Fraction(v)
    if check:
        return _checked_cubic(u, v)
    form = _family_form().specialize({"u": u, "v": v}).restrict_ambient(CUBIC_VARS)
    if not form:
        raise PreconditionError(f"C_(u,v) vanishes identically at u={u}, v={v}")
    return PlaneCubic(form, (), fiber=FibrationParams(u, v))


def flex_verify(C: PlaneCubic, pt) -> bool:
    if not C.contains(pt):
        raise PreconditionError(f"{pt} is not on C")
    if not any(C.gradient_at(pt)):
        return False
    return not C.hessian_at(pt)


# ------------------------------------------
# GROUP LAW
# ------------------------------------------

def _dot(a, b):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def _require_numeric(C: PlaneCubic):
    if C.is_symbolic:
        raise PreconditionError("the group law needs a specialized cubic")


def third_point(C: PlaneCubic, P, Q) -> ProjectivePoint:
    """Third intersection of C with the line PQ (the tangent line when P = Q)."""
    _require_numeric(C)
    P, Q = ProjectivePoint.of(P), ProjectivePoint.of(Q)
    for pt in (P, Q):
        if not C.contains(pt):
            raise PreconditionError(f"{pt} is not on C")
    p, q = P.as_fractions(), Q.as_fractions()
    if P != Q:
        g1 = _dot(C.gradient_at(p), q)
        g2 = _dot(C.gradient_at(q), p)
        if not g1 and not g2:
            raise ConsistencyError(f"the line through {P} and {Q} lies on C")
        return ProjectivePoint(tuple(g2 * x - g1 * y for x, y in zip(p, q)))
    grad = C.gradient_at(p)
    if not any(grad):
        raise PreconditionError(f"C is singular at {P}")
    for i in range(3):
        e = [int(k == i) for k in range(3)]
        # grad x e lies on the tangent line
        t = (
            grad[1] * e[2] - grad[2] * e[1],
            grad[2] * e[0] - grad[0] * e[2],
            grad[0] * e[1] - grad[1] * e[0],
        )
        if any(t) and any(t[a] * p[b] != t[b] * p[a] for a in range(3) for b in range(3)):
            break
    ct = C.value(t)
    g = _dot(C.gradient_at(t), p)
    if not ct and not g:
        raise ConsistencyError(f"the tangent line at {P} lies on C")
    return ProjectivePoint(tuple(ct * x - g * y for x, y in zip(p, t)))


def cubic_group_law(C: PlaneCubic, P, Q) -> ProjectivePoint:
    """P + Q with the flex origin of C."""
    return third_point(C, C.origin, third_point(C, P, Q))


add = cubic_group_law


def negate(C: PlaneCubic, P) -> ProjectivePoint:
    return third_point(C, C.origin, P)


def multiples(C: PlaneCubic, P, n: int) -> list:
    """[P, 2P, ..., nP]."""
    out = []
    Q = ProjectivePoint.of(P)
    for _ in range(n):
        out.append(Q)
        Q = add(C, Q, P)
    return out


@dataclass(frozen=True)
class TorsionResult:
    order: int | None
    bound: int

    @property
    def non_torsion_certified(self) -> bool:
        return self.order is None

    def __str__(self):
        return "non_torsion_certified" if self.order is None else f"torsion order {self.order}"


def torsion_test(C: PlaneCubic, P, bound: int = DEFAULTS["mazur_bound"]) -> TorsionResult:
    """Order of P if at most `bound`; otherwise P has infinite order (Mazur, over Q)."""
    P = ProjectivePoint.of(P)
    Q = P
    for n in range(1, bound + 1):
        if Q == C.origin:
            return TorsionResult(n, bound)
        Q = add(C, Q, P)
    return TorsionResult(None, bound)


def height_bits(pt) -> int:
    return max(abs(x).bit_length() for x in ProjectivePoint.of(pt).coords)


# ------------------------------------------
# EMBEDDING INTO B'
# ------------------------------------------

def _frame_to_x(y, line):
    order = LINE_FRAMES[line]
    x = [None] * 6
    for slot, pos in enumerate(order):
        x[pos] = y[slot]
    return x


def _x_to_frame(x, line):
    order = LINE_FRAMES[line]
    return [x[pos] for pos in order]


def embed_to_bprime(u, v, pt, line: str = "L345") -> ProjectivePoint:
    """(X : Y : -uZ : -vZ : Z : -X-Y+(u+v-1)Z), placed in the frame of `line`."""
    u, v = Fraction(u), Fraction(v)
    X, Y, Z = as_point_values(pt)
    y = (X, Y, -u * Z, -v * Z, Z, -X - Y + (u + v - 1) * Z)
    if not any(y):
        raise PreconditionError(f"{pt} has no image in B'")
    return ProjectivePoint(tuple(_frame_to_x(y, line)))


def slice_point(u, v, x) -> ProjectivePoint:
    """Inverse of the embedding: (x1 : x2 : x5), Z being x5."""
    u, v = Fraction(u), Fraction(v)
    x = as_point_values(x)
    if len(x) != 6:
        raise PreconditionError("B' points have six coordinates")
    if x[2] != -u * x[4] or x[3] != -v * x[4] or sum(x):
        raise PreconditionError(f"{ProjectivePoint(x)} is not on the plane V_({u},{v})")
    return ProjectivePoint((x[0], x[1], x[4]))


def fiber_of(x, line: str = "L345"):
    """(u, v, slice point) of a B' point in the fibration through `line`."""
    if line not in LINE_FRAMES:
        raise PreconditionError(f"unknown line {line!r}; available: {', '.join(LINE_FRAMES)}")
    y = _x_to_frame(as_point_values(x), line)
    Z = y[4]
    if not Z:
        raise PreconditionError(f"{ProjectivePoint.of(x)} lies on no plane V_(u,v) through {line}")
    u, v = -y[2] / Z, -y[3] / Z
    return u, v, slice_point(u, v, y)


def embedding_identity() -> bool:
    """sigma4 restricted to V_(u,v) equals Z * C_(u,v) as a polynomial identity."""
    ring = CUBIC_VARS + FIBRATION_PARAMS
    X, Y, Z, u, v = (Polynomial.variable(ring, n) for n in ring)
    images = dict(zip(X_VARS, (X, Y, -u * Z, -v * Z, Z, -X - Y + (u + v - 1) * Z)))
    sigma4 = bprime_model().quartic.substitute(images, ring)
    return sigma4 == Z * _family_form()


# ------------------------------------------
# POINT GENERATION
# ------------------------------------------

@dataclass(frozen=True, eq=False)
class PointReport:
    points: tuple
    rows: tuple
    off_hessian: int
    rank: int
    samples: tuple
    graph: nx.Graph = field(repr=False)

    @property
    def distinct(self) -> int:
        return len(self.points)

    def sample_classes(self):
        return [sym.over_q() for _, sym in self.samples]

    def as_dict(self):
        return {
            "distinct": self.distinct,
            "off_hessian": self.off_hessian,
            "rank": self.rank,
            "fibers": sum(1 for _, d in self.graph.nodes(data=True) if d.get("kind") == "fiber"),
            "samples": [{"point": str(pt), "symbol": str(sym)} for pt, sym in self.samples],
        }


def _fiber_label(line, u, v):
    return f"{line}:{u},{v}"


def _sample_candidates(points, max_bits: int) -> list:
    """
    Generated points of at most `max_bits` bits, lowest first, followed by
    their images under coordinate permutations (automorphisms of B').
    """
    small = sorted((pt for pt in points if height_bits(pt) <= max_bits), key=lambda p: (p.height(), p))
    seen = set(small)
    images = []
    for pt in small:
        for img in s6_orbit(pt):
            if img not in seen:
                seen.add(img)
                images.append(img)
    return small + sorted(images, key=lambda p: (p.height(), p))


def generate_points(
    count: int = DEFAULTS["generate"],
    fibers=None,
    lines=tuple(LINE_FRAMES),
    multiples_per_fiber: int = DEFAULTS["mazur_bound"],
    sample: int = DEFAULTS["sample_obstruction"],
    max_height_bits: int = DEFAULTS["max_height_bits"],
    sample_height_bits: int = DEFAULTS["sample_height_bits"],
) -> PointReport:
    """
    Rational points on B' from multiples on fibers of the three fibrations
    through L345, L245 and L145. Seeds are B' points (P0 by default);
    generated points seed new fibers, lowest height first.

    A fiber stops contributing once its multiples exceed `max_height_bits`.
    Obstruction classes are sampled on points of at most `sample_height_bits`
    bits and on their coordinate permutations.
    """
    if count < 1:
        raise PreconditionError("count must be at least 1")
    if max_height_bits < 1 or sample_height_bits < 1:
        raise PreconditionError("height caps must be positive")
    model = bprime_model()
    seeds = [ProjectivePoint.of(s) for s in (fibers or (P0,))]
    for s in seeds:
        if not model.contains(s):
            raise PreconditionError(f"seed {s} is not on B'")

    heap = [(s.height(), s) for s in seeds]
    heapq.heapify(heap)
    found = {}
    graph = nx.Graph()
    visited = set()

    while heap and len(found) < count:
        _, seed = heapq.heappop(heap)
        for line in lines:
            try:
                u, v, base = fiber_of(seed, line)
            except PreconditionError:
                continue
            label = _fiber_label(line, u, v)
            graph.add_node(str(seed), kind="point")
            graph.add_node(label, kind="fiber", line=line)
            graph.add_edge(str(seed), label)
            if label in visited:
                continue
            visited.add(label)
            try:
                C = cubic_family(u, v)
            except PreconditionError as e:
                log_warn(f"Skipped fiber {label}: {e}")
                continue
            if base in C.flexes():
                continue
            Q = base
            for _ in range(multiples_per_fiber):
                if Q == C.origin:
                    break
                images = [embed_to_bprime(u, v, R, line) for R in (Q, negate(C, Q))]
                if all(height_bits(x) > max_height_bits for x in images):
                    break
                for x in images:
                    if height_bits(x) > max_height_bits:
                        continue
                    if not model.contains(x):
                        raise ConsistencyError(f"{x} from fiber {label} is not on B'")
                    if x not in found:
                        found[x] = label
                        graph.add_node(str(x), kind="point")
                        graph.add_edge(str(x), label)
                        heapq.heappush(heap, (x.height(), x))
                if len(found) >= count:
                    break
                Q = add(C, Q, base)
            if len(found) >= count:
                break
        log_info(f"Fibration seed {seed}: {len(found)} points so far")

    if len(found) < count:
        log_warn(f"Only {len(found)} points on B' below {max_height_bits} bits")
    points = tuple(sorted(found, key=lambda p: (p.height(), p))[:count])
    rows = []
    off = []
    for pt in points:
        status = hessian_membership(model, pt)
        if status == "off":
            off.append(pt)
        rows.append({"point": pt, "fiber": found[pt], "hessian": status})
    samples = ()
    if sample:
        candidates = _sample_candidates(off, sample_height_bits)
        samples = tuple(sample_obstruction(model, candidates, sample))
    matrix = [list(pt.as_fractions()) for pt in points]
    report = PointReport(points, tuple(rows), len(off), rank(matrix), samples, graph)
    log_info(f"Generated {report.distinct} points on B' ({report.off_hessian} off the Hessian)")
    return report


def points_frame(report: PointReport) -> pd.DataFrame:
    records = []
    for row in report.rows:
        pt = row["point"]
        rec = {f"x{i + 1}": str(c) for i, c in enumerate(pt.coords)}
        rec.update(
            {
                "height_bits": height_bits(pt),
                "hessian": row["hessian"],
                "fiber": row["fiber"],
            }
        )
        records.append(rec)
    return pd.DataFrame(records, columns=[f"x{i}" for i in range(1, 7)] + ["height_bits", "hessian", "fiber"])
