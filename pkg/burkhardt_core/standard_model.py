# burkhardt_core/standard_model.py

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations_with_replacement, permutations
from math import gcd, lcm

from .errors import AmbientMismatchError, ConsistencyError, ParseError, PreconditionError
from .exactnum import Cyclo3, as_cyclo, cyclo_conj, parse_rational
from .linalg import det, mat_mul, span_coordinates, trace
from .multipoly import LinearMap, Polynomial

T_VARS = ("t1", "t2", "t3", "t4")
Y_VARS = ("y0", "y1", "y2", "y3", "y4")
X_VARS = ("x1", "x2", "x3", "x4", "x5", "x6")


# ------------------------------------------
# POINTS
# ------------------------------------------

def _canonical_coords(values):
    fracs = [Fraction(v) for v in values]
    if not fracs:
        raise PreconditionError("a projective point needs coordinates")
    if not any(fracs):
        raise PreconditionError("all-zero vector is not a projective point")
    den = lcm(*(q.denominator for q in fracs))
    ints = [int(q * den) for q in fracs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


@dataclass(frozen=True, order=True)
class ProjectivePoint:
    """Rational projective point: integer coordinates, gcd 1, first nonzero positive."""

    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", _canonical_coords(self.coords))

    @classmethod
    def of(cls, *values):
        if len(values) == 1 and not isinstance(values[0], (int, Fraction)):
            values = tuple(values[0])
        return cls(tuple(values))

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def as_fractions(self):
        return tuple(Fraction(x) for x in self.coords)

    def height(self) -> int:
        return max(abs(x) for x in self.coords)

    def __str__(self):
        return "(" + ":".join(str(x) for x in self.coords) + ")"

    @classmethod
    def parse(cls, text: str) -> "ProjectivePoint":
        stripped = text.rstrip()
        start = len(text) - len(text.lstrip())
        if start >= len(text) or text[start] != "(":
            raise ParseError("a point starts with '('", start, text)
        close = stripped.find(")")
        if close == -1:
            raise ParseError("missing ')'", len(text), text)
        if close != len(stripped) - 1:
            raise ParseError("trailing characters after ')'", close + 1, text)
        values = []
        pos = start + 1
        for part in text[start + 1:close].split(":"):
            try:
                values.append(parse_rational(part))
            except ParseError:
                raise ParseError(f"bad coordinate {part.strip()!r}", pos, text) from None
            pos += len(part) + 1
        return cls(tuple(values))


def as_point_values(pt):
    if isinstance(pt, ProjectivePoint):
        return pt.as_fractions()
    return tuple(Fraction(x) for x in pt)


# ------------------------------------------
# MODELS
# ------------------------------------------

@dataclass(frozen=True)
class QuarticModel:
    """
    A quartic threefold: one form in P^4, or the pair (sigma1, sigma4) in P^5.

    Polynomials live in the ring coords + params; homogeneity is measured in
    coords only.
    """

    name: str
    forms: tuple
    coords: tuple
    params: tuple = ()
    elimination: str | None = None

    def __post_init__(self):
        ring = tuple(self.coords) + tuple(self.params)
        for f in self.forms:
            if f.ambient != ring:
                raise AmbientMismatchError(
                    f"form of {self.name} lives in {list(f.ambient)}, expected {list(ring)}"
                )
        if self.is_pair and self.elimination not in self.coords:
            raise PreconditionError("a pair model needs an elimination coordinate")

    @property
    def ambient(self):
        return tuple(self.coords) + tuple(self.params)

    @property
    def is_pair(self) -> bool:
        return len(self.forms) == 2

    @property
    def quartic(self) -> Polynomial:
        return self.forms[-1]

    def p4_coords(self):
        if not self.is_pair:
            return tuple(self.coords)
        return tuple(c for c in self.coords if c != self.elimination)

    @cached_property
    def _elimination_image(self):
        lin = self.forms[0]
        k = self.coords.index(self.elimination)
        exps = tuple(1 if i == k else 0 for i in range(len(self.ambient)))
        c = lin.coefficient(exps)
        if not c:
            raise PreconditionError(f"{self.elimination} does not occur in the linear form")
        rest = lin - Polynomial._raw(lin.ambient, {exps: c})
        reduced = self.p4_coords() + tuple(self.params)
        return c, rest.restrict_ambient(reduced)

    @cached_property
    def _p4_form(self):
        if not self.is_pair:
            return self.forms[0]
        c, rest = self._elimination_image
        reduced = rest.ambient
        return self.quartic.substitute({self.elimination: -rest / c}, reduced)

    def p4_form(self) -> Polynomial:
        return self._p4_form

    def p4_model(self) -> "QuarticModel":
        if not self.is_pair:
            return self
        return QuarticModel(self.name + "/P4", (self.p4_form(),), self.p4_coords(), self.params)

    def to_p4_point(self, pt):
        values = as_point_values(pt)
        if not self.is_pair or len(values) == len(self.p4_coords()):
            return values
        if len(values) != len(self.coords):
            raise AmbientMismatchError(f"{self.name} needs {len(self.coords)} coordinates")
        if self.forms[0].specialize(dict(zip(self.coords, values))):
            raise PreconditionError(f"{values} is not on the linear form of {self.name}")
        k = self.coords.index(self.elimination)
        return values[:k] + values[k + 1:]

    def from_p4_point(self, pt):
        values = as_point_values(pt)
        if not self.is_pair:
            return values
        c, rest = self._elimination_image
        value = -rest.specialize(dict(zip(self.p4_coords(), values))).constant_value() / c
        k = self.coords.index(self.elimination)
        return values[:k] + (value,) + values[k:]

    def value_at(self, form: Polynomial, pt):
        values = as_point_values(pt)
        if len(values) != len(self.coords):
            raise AmbientMismatchError(
                f"{self.name} has {len(self.coords)} coordinates, point has {len(values)}"
            )
        return form.specialize(dict(zip(self.coords, values)))

    def contains(self, pt) -> bool:
        values = as_point_values(pt)
        if self.is_pair and len(values) == len(self.p4_coords()):
            return not self.p4_form().specialize(dict(zip(self.p4_coords(), values)))
        return all(not self.value_at(f, values) for f in self.forms)

    def specialize(self, values: dict, name=None) -> "QuarticModel":
        params = tuple(p for p in self.params if p not in values)
        ring = tuple(self.coords) + params
        forms = tuple(f.specialize(values).restrict_ambient(ring) for f in self.forms)
        return QuarticModel(name or self.name, forms, self.coords, params, self.elimination)


def p4_data(model: QuarticModel, pt):
    """The P^4 form, its coordinates and the point (mapped into P^4 if needed)."""
    values = model.to_p4_point(pt)
    coords = model.p4_coords()
    if len(values) != len(coords):
        raise AmbientMismatchError(f"{model.name} needs a point with {len(coords)} coordinates")
    return model.p4_form(), coords, values


def standard_quartic() -> Polynomial:
    pairs = [(1, {"y0": 4})]
    pairs += [(1, {"y0": 1, f"y{i}": 3}) for i in range(1, 5)]
    pairs.append((3, {"y1": 1, "y2": 1, "y3": 1, "y4": 1}))
    return Polynomial.from_terms(Y_VARS, pairs)


def standard_model() -> QuarticModel:
    return QuarticModel("B1", (standard_quartic(),), Y_VARS)


def maschke_map(symbolic: bool = False):
    """
    The quartic forms Y0..Y4 in t1..t4 spanning the rho5 constituent of
    Sym^4 rho4. With `symbolic`, also returns F(Y0, ..., Y4) expanded.
    """
    ft = Polynomial.from_terms
    ys = [
        ft(T_VARS, [(3, {"t1": 1, "t2": 1, "t3": 1, "t4": 1})]),
        ft(T_VARS, [(1, {"t1": 1, "t2": 3}), (1, {"t1": 1, "t3": 3}), (-1, {"t1": 1, "t4": 3})]),
        ft(T_VARS, [(-1, {"t2": 1, "t1": 3}), (-1, {"t2": 1, "t3": 3}), (-1, {"t2": 1, "t4": 3})]),
        ft(T_VARS, [(-1, {"t3": 1, "t1": 3}), (1, {"t3": 1, "t2": 3}), (1, {"t3": 1, "t4": 3})]),
        ft(T_VARS, [(1, {"t4": 1, "t1": 3}), (1, {"t4": 1, "t2": 3}), (-1, {"t4": 1, "t3": 3})]),
    ]
    if not symbolic:
        return ys
    composed = standard_quartic().substitute(dict(zip(Y_VARS, ys)), T_VARS)
    return ys, composed


# ------------------------------------------
# REPRESENTATIONS
# ------------------------------------------

def _z(a, b=0) -> Cyclo3:
    # a + b*zeta
    return Cyclo3(a, b)


@dataclass(frozen=True)
class GeneratorSet:
    names: tuple
    matrices: tuple

    def __getitem__(self, name):
        return self.matrices[self.names.index(name)]

    def items(self):
        return list(zip(self.names, self.matrices))

    def conjugate(self) -> "GeneratorSet":
        return GeneratorSet(
            self.names,
            tuple(tuple(tuple(cyclo_conj(x) for x in row) for row in m) for m in self.matrices),
        )


def generators_rho4() -> GeneratorSet:
    third = Fraction(1, 3)

    def scaled(rows):
        return tuple(tuple(x * third for x in row) for row in rows)

    a1 = tuple(tuple(_z(-1 if i == j else 0) for j in range(4)) for i in range(4))
    a2 = scaled(
        (
            (_z(0, 3), _z(0), _z(0), _z(0)),
            (_z(0), _z(2, 1), _z(2, 1), _z(1, -1)),
            (_z(0), _z(2, 1), _z(-1, 1), _z(-2, -1)),
            (_z(0), _z(1, -1), _z(-2, -1), _z(2, 1)),
        )
    )
    a3 = scaled(
        (
            (_z(1, 2), _z(-1, -2), _z(0), _z(2, 1)),
            (_z(-1, 1), _z(1, 2), _z(0), _z(1, -1)),
            (_z(0), _z(0), _z(3, 3), _z(0)),
            (_z(2, 1), _z(1, 2), _z(0), _z(1, 2)),
        )
    )
    return GeneratorSet(("A1", "A2", "A3"), (a1, a2, a3))


def induced_rho5(A):
    """R with Y_i(A t) = sum_k R[i][k] Y_k, by exact elimination."""
    ys = maschke_map()
    t_map = LinearMap(A, T_VARS, T_VARS)
    R = []
    for i, y in enumerate(ys):
        coords, residual = span_coordinates(y.substitute_linear(t_map), ys)
        if residual:
            raise ConsistencyError(f"span of Y0..Y4 is not stable: residual of Y{i} is {residual}")
        R.append([as_cyclo(c) for c in coords])
    return R


def rho5_scalar(R) -> Cyclo3:
    """The lambda with F(R y) = lambda F(y)."""
    F = standard_quartic()
    moved = F.substitute_linear(LinearMap(R, Y_VARS, Y_VARS))
    lam = moved.coefficient((4, 0, 0, 0, 0))
    if moved != F * lam:
        raise ConsistencyError("F is not semi-invariant under the induced matrix")
    return as_cyclo(lam)


def functor_traces(A):
    """(trace of Sym^2 A, trace of Wedge^2 A)."""
    tr = trace(A)
    tr_sq = trace(mat_mul(A, A))
    half = Fraction(1, 2)
    return as_cyclo((tr * tr + tr_sq) * half), as_cyclo((tr * tr - tr_sq) * half)


def symmetric_power_trace(A, n: int) -> Cyclo3:
    """Trace of Sym^n A through power sums p_k = tr(A^k) and h_m."""
    p = [None]
    power = A
    for k in range(1, n + 1):
        if k > 1:
            power = mat_mul(power, A)
        p.append(trace(power))
    h = [Fraction(1)]
    for m in range(1, n + 1):
        total = Fraction(0)
        for k in range(1, m + 1):
            total = total + p[k] * h[m - k]
        h.append(total * Fraction(1, m))
    return as_cyclo(h[n])


def symmetric_power_matrix(A, n: int):
    """Matrix of f -> f(A t) on the monomial basis of degree-n forms."""
    names = tuple(f"t{i + 1}" for i in range(len(A)))
    basis = list(combinations_with_replacement(range(len(A)), n))

    def exps_of(combo):
        e = [0] * len(A)
        for i in combo:
            e[i] += 1
        return tuple(e)

    t_map = LinearMap(A, names, names)
    rows = []
    for combo in basis:
        mono = Polynomial(names, {exps_of(combo): 1}).substitute_linear(t_map)
        rows.append([mono.coefficient(exps_of(other)) for other in basis])
    return rows


TABLE_CHARACTERS = {
    "rho4": (_z(-4), _z(1, 2), _z(2, 3)),
    "rho4_dual": (_z(-4), _z(-1, -2), _z(-1, -3)),
    "rho5": (_z(5), _z(0), _z(-1, -3)),
    "rho5_dual": (_z(5), _z(0), _z(2, 3)),
    "rho10": (_z(10), _z(-1), _z(-5, -3)),
    "rho10_dual": (_z(10), _z(-1), _z(-2, 3)),
    "rho20": (_z(20), _z(1), _z(2)),
    "rho30": (_z(30), _z(0), _z(-6, -9)),
    "rho30_dual": (_z(30), _z(0), _z(3, 9)),
}


def character_table() -> dict:
    return dict(TABLE_CHARACTERS)


def sum_rows(*names):
    rows = [TABLE_CHARACTERS[n] for n in names]
    return tuple(as_cyclo(sum(col, Fraction(0))) for col in zip(*rows))


def computed_characters(gens: GeneratorSet | None = None) -> dict:
    """
    Characters at the generators computed from the matrices themselves:
    rho4, its conjugate, rho5 (induced), Sym^2 rho4 and Wedge^2 rho5.
    """
    gens = gens or generators_rho4()
    rows = {"rho4": [], "rho4_dual": [], "rho5": [], "sym2_rho4": [], "wedge2_rho5": []}
    for _, A in gens.items():
        R = induced_rho5(A)
        rows["rho4"].append(as_cyclo(trace(A)))
        rows["rho4_dual"].append(cyclo_conj(as_cyclo(trace(A))))
        rows["rho5"].append(as_cyclo(trace(R)))
        rows["sym2_rho4"].append(functor_traces(A)[0])
        rows["wedge2_rho5"].append(functor_traces(R)[1])
    return {k: tuple(v) for k, v in rows.items()}


# ------------------------------------------
# GEOMETRY
# ------------------------------------------

def hessian_membership(model: QuarticModel, alpha) -> str:
    """'on' if the Hessian determinant of the P^4 form vanishes at alpha, else 'off'."""
    form, coords, values = p4_data(model, alpha)
    at = dict(zip(coords, values))
    if form.specialize(at):
        raise PreconditionError(f"{alpha} is not on {model.name}")
    firsts = [form.partial_derivative(c) for c in coords]
    H = [[firsts[i].partial_derivative(c).specialize(at) for c in coords] for i in range(len(coords))]
    return "off" if det(H) else "on"


def singularity_test(model: QuarticModel, pt) -> str:
    values = as_point_values(pt)
    if model.is_pair and len(values) == len(model.coords):
        if not model.contains(values):
            raise PreconditionError(f"{pt} is not on {model.name}")
        at = dict(zip(model.coords, values))
        J = [[f.partial_derivative(c).specialize(at) for c in model.coords] for f in model.forms]
        n = len(model.coords)
        for i in range(n):
            for j in range(i + 1, n):
                if J[0][i] * J[1][j] - J[0][j] * J[1][i]:
                    return "smooth"
        return "singular"
    form, coords, values = p4_data(model, values)
    at = dict(zip(coords, values))
    if form.specialize(at):
        raise PreconditionError(f"{pt} is not on {model.name}")
    if any(form.partial_derivative(c).specialize(at) for c in coords):
        return "smooth"
    return "singular"


def s6_orbit(pt) -> list:
    values = as_point_values(pt)
    orbit = {ProjectivePoint(tuple(values[i] for i in perm)) for perm in permutations(range(len(values)))}
    return sorted(orbit)
