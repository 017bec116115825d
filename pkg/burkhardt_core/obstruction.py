# burkhardt_core/obstruction.py

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import gcd, isqrt, lcm

import sympy

from .brauer import MonomialElt, QuaternionSymbolQ, hilbert_symbol, quaternion_index_q, rst_symbol_to_class
from .errors import (
    ConsistencyError,
    HessianPointError,
    NoConicPointError,
    NotSquarefreeError,
    PreconditionError,
)
from .exactnum import squarefree_part
from .linalg import det
from .logbook import log_info, log_warn
from .multipoly import Polynomial
from .settings import DEFAULTS
from .standard_model import ProjectivePoint, QuarticModel, hessian_membership, p4_data

H_VARS = ("h1", "h2", "h3", "h4")
CONIC_VARS = ("X", "Y", "Z")
SEXTIC_VARS = ("T0", "T1")


# ------------------------------------------
# POLARS
# ------------------------------------------

@dataclass(frozen=True, eq=False)
class PolarSequence:
    """P^(1), P^(2), P^(3) of a quartic at a point: cubic, quadric, linear form."""

    p1: Polynomial
    p2: Polynomial
    p3: Polynomial
    coords: tuple
    point: tuple

    def __getitem__(self, r):
        return (self.p1, self.p2, self.p3)[r - 1]


def _polar_of_form(form, coords, values, r):
    out = form
    for _ in range(r):
        out = out.directional_derivative(values, coords)
    return out


def polar(model: QuarticModel, alpha, r: int) -> Polynomial:
    """r-fold directional derivative of the P^4 form along alpha."""
    if r not in (1, 2, 3):
        raise PreconditionError(f"polar order must be 1, 2 or 3, got {r}")
    form, coords, values = p4_data(model, alpha)
    return _polar_of_form(form, coords, values, r)


def polars(model: QuarticModel, alpha) -> PolarSequence:
    form, coords, values = p4_data(model, alpha)
    p1 = _polar_of_form(form, coords, values, 1)
    p2 = p1.directional_derivative(values, coords)
    p3 = p2.directional_derivative(values, coords)
    return PolarSequence(p1, p2, p3, coords, values)


# ------------------------------------------
# THE OBSTRUCTION CONIC
# ------------------------------------------

@dataclass(frozen=True, eq=False)
class HyperplaneFrame:
    """
    Fraction-free parametrization of P^(3) = 0 by h1..h4:
    x_j = c_k * h_j for j != k and x_k = -sum c_j h_j.
    """

    coords: tuple
    params: tuple
    coefficients: tuple
    pivot: int
    vertex: tuple
    drop: int

    def slots(self):
        """Hyperplane coordinate index of each P^4 coordinate other than the pivot."""
        others = [j for j in range(len(self.coords)) if j != self.pivot]
        return dict(zip(others, range(len(others))))

    def images(self, hs, ring) -> dict:
        ring = tuple(ring)
        cs = [c.extend_ambient(ring) for c in self.coefficients]
        out = {}
        last = Polynomial.zero(ring)
        for j, slot in self.slots().items():
            out[self.coords[j]] = cs[self.pivot] * hs[slot]
            last = last - cs[j] * hs[slot]
        out[self.coords[self.pivot]] = last
        return out

    def plane_slots(self):
        """Hyperplane coordinates kept in the conic plane, in X, Y, Z order."""
        return [i for i in range(len(self.vertex)) if i != self.drop]


@dataclass(frozen=True, eq=False)
class TernaryQuadratic:
    """Symmetric 3x3 Gram matrix over Q[params]; the form is X^T G X."""

    gram: tuple
    params: tuple = ()
    frame: HyperplaneFrame | None = None

    def __post_init__(self):
        gram = tuple(tuple(_as_param_poly(x, self.params) for x in row) for row in self.gram)
        if len(gram) != 3 or any(len(row) != 3 for row in gram):
            raise PreconditionError("a ternary quadratic needs a 3x3 Gram matrix")
        for i in range(3):
            for j in range(i):
                if gram[i][j] != gram[j][i]:
                    raise PreconditionError("Gram matrix is not symmetric")
        if not any(x for row in gram for x in row):
            raise PreconditionError("zero ternary quadratic")
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "params", tuple(self.params))

    @classmethod
    def diagonal(cls, a, b, c, params=()):
        z = 0
        return cls(((a, z, z), (z, b, z), (z, z, c)), params)

    def is_rational(self) -> bool:
        return all(x.is_constant() for row in self.gram for x in row)

    def rational_gram(self):
        if not self.is_rational():
            raise PreconditionError("Gram matrix has non-constant entries")
        return [[x.constant_value() for x in row] for row in self.gram]

    def as_polynomial(self) -> Polynomial:
        ring = CONIC_VARS + self.params
        xs = [Polynomial.variable(ring, v) for v in CONIC_VARS]
        out = Polynomial.zero(ring)
        for i in range(3):
            for j in range(3):
                if self.gram[i][j]:
                    out = out + self.gram[i][j].extend_ambient(ring) * xs[i] * xs[j]
        return out

    def value_at(self, vec):
        total = Fraction(0)
        for i in range(3):
            for j in range(3):
                if self.gram[i][j]:
                    total = total + self.gram[i][j] * (Fraction(vec[i]) * Fraction(vec[j]))
        return total

    def determinant(self):
        return det([list(row) for row in self.gram])

    def __str__(self):
        return str(self.as_polynomial())


def _as_param_poly(x, params):
    if isinstance(x, Polynomial):
        if x.ambient != tuple(params):
            return x.restrict_ambient(params)
        return x
    return Polynomial.constant(params, Fraction(x))


def _pivot_index(coefficients) -> int:
    """Largest constant coefficient; failing that the simplest polynomial one."""
    constants = [(abs(c.constant_value()), -j) for j, c in enumerate(coefficients) if c and c.is_constant()]
    if constants:
        return -max(constants)[1]
    candidates = [(c.total_degree(), len(c.terms), j) for j, c in enumerate(coefficients) if c]
    if not candidates:
        raise ConsistencyError("P^(3) vanishes identically")
    return min(candidates)[2]


def _primitive(entries, params):
    """Divide out the rational content and the common monomial factor."""
    nonzero = [p for p in entries if p]
    coeffs = [c for p in nonzero for c in p.terms.values()]
    den = lcm(*(c.denominator for c in coeffs))
    num = gcd(*(int(c * den) for c in coeffs))
    scale = Fraction(den, num)
    shift = tuple(min(e[i] for p in nonzero for e in p.terms) for i in range(len(params)))
    out = []
    for p in entries:
        terms = {tuple(a - b for a, b in zip(e, shift)): c * scale for e, c in p.terms.items()}
        out.append(Polynomial(params, terms))
    return out


def obstruction_conic(model: QuarticModel, alpha) -> TernaryQuadratic:
    """
    Restrict P^(2) to the hyperplane P^(3) = 0, check that the result is a
    cone with vertex alpha, and project away the vertex.
    """
    if hessian_membership(model, alpha) == "on":
        raise HessianPointError(f"{alpha} lies on the Hessian of {model.name}")
    seq = polars(model, alpha)
    coords, values = seq.coords, seq.point
    params = tuple(model.params)

    linear = seq.p3.coefficients_in(coords)
    coefficients = []
    for j in range(len(coords)):
        exps = tuple(int(i == j) for i in range(len(coords)))
        c = linear.get(exps)
        coefficients.append(c.restrict_ambient(params) if c is not None else Polynomial.zero(params))
    pivot = _pivot_index(coefficients)

    others = [j for j in range(len(coords)) if j != pivot]
    vertex = tuple(values[j] for j in others)
    drop = max(range(len(vertex)), key=lambda i: (abs(vertex[i]), -i))
    frame = HyperplaneFrame(coords, params, tuple(coefficients), pivot, vertex, drop)

    ring = H_VARS + params
    hs = [Polynomial.variable(ring, h) for h in H_VARS]
    images = frame.images(hs, ring)
    if seq.p3.substitute(images, ring):
        raise ConsistencyError("hyperplane parametrization does not lie in P^(3) = 0")
    q4 = seq.p2.substitute(images, ring)

    parts = q4.coefficients_in(H_VARS)
    gram4 = [[Polynomial.zero(params) for _ in range(4)] for _ in range(4)]
    half = Fraction(1, 2)
    for exps, c in parts.items():
        if sum(exps) != 2:
            raise ConsistencyError(f"restricted P^(2) is not a quadric: {q4}")
        c = c.restrict_ambient(params)
        idx = [i for i, e in enumerate(exps) for _ in range(e)]
        i, j = idx
        if i == j:
            gram4[i][i] = c
        else:
            gram4[i][j] = gram4[j][i] = c * half

    for i in range(4):
        row = Polynomial.zero(params)
        for j in range(4):
            if vertex[j]:
                row = row + gram4[i][j] * vertex[j]
        if row:
            raise ConsistencyError(f"restricted P^(2) is not a cone with vertex {alpha}")

    keep = frame.plane_slots()
    entries = _primitive([gram4[i][j] for i in keep for j in keep], params)
    gram = tuple(tuple(entries[3 * r:3 * r + 3]) for r in range(3))
    conic = TernaryQuadratic(gram, params, frame)
    if not conic.determinant():
        raise HessianPointError(f"obstruction conic at {alpha} is degenerate")
    return conic


# ------------------------------------------
# QUATERNION SYMBOLS
# ------------------------------------------

def _poly_key(p: Polynomial):
    const = abs(p.constant_value()) if p.is_constant() else Fraction(0)
    return (p.total_degree(), len(p.terms), const)


def _square_class(p: Polynomial) -> Polynomial:
    """Squarefree representative of p modulo squares of Q(params)^*."""
    if not p:
        raise PreconditionError("zero has no square class")
    if p.is_constant():
        return Polynomial.constant(p.ambient, squarefree_part(p.constant_value()))
    syms = [sympy.Symbol(v) for v in p.ambient]
    coeff, factors = sympy.factor_list(p.to_sympy(), *syms)
    out = Polynomial.constant(
        p.ambient, squarefree_part(Polynomial.from_sympy(coeff, ()).constant_value())
    )
    for f, mult in factors:
        if mult % 2:
            out = out * Polynomial.from_sympy(f, p.ambient)
    return out


def _shear(G, i, j):
    # basis change e_i -> e_i + e_j
    for k in range(3):
        G[i][k] = G[i][k] + G[j][k]
    for k in range(3):
        G[k][i] = G[k][i] + G[k][j]


def _diagonal_classes(gram, choose):
    """
    Square classes <D1, D1*D2, D1*D2*D3> of a fraction-free symmetric
    elimination; `choose(G, idx)` picks the pivot or returns None.
    """
    G = [list(row) for row in gram]
    idx = [0, 1, 2]
    params = G[0][0].ambient
    mult = Polynomial.one(params)
    diag = []
    sheared = False
    while idx:
        pivot = choose(G, idx)
        if pivot is None:
            pair = next(((i, j) for i in idx for j in idx if i < j and G[i][j]), None)
            if pair is None or sheared:
                raise PreconditionError("conic is degenerate (rank < 3)")
            _shear(G, *pair)
            sheared = True
            continue
        sheared = False
        p = G[pivot][pivot]
        mult = _square_class(mult * p)
        diag.append(mult)
        rest = [i for i in idx if i != pivot]
        for i in rest:
            for j in rest:
                G[i][j] = p * G[i][j] - G[i][pivot] * G[pivot][j]
        idx = rest
    return diag


def _largest_diagonal(G, idx):
    nonzero = [i for i in idx if G[i][i]]
    if not nonzero:
        return None
    return max(nonzero, key=lambda i: (abs(G[i][i].constant_value()), -i))


def _simplest_diagonal(G, idx):
    nonzero = [i for i in idx if G[i][i]]
    if not nonzero:
        return None
    return min(nonzero, key=lambda i: (_poly_key(G[i][i]), i))


def _forced_order(order):
    def choose(G, idx):
        pivot = next(i for i in order if i in idx)
        return pivot if G[pivot][pivot] else None

    return choose


def _order_pair(a: Polynomial, b: Polynomial):
    if a.is_constant() and b.is_constant():
        va, vb = a.constant_value(), b.constant_value()
        return (a, b) if (abs(va), va) >= (abs(vb), vb) else (b, a)
    if a.is_constant() != b.is_constant():
        return (a, b) if a.is_constant() else (b, a)
    return (a, b) if (_poly_key(a), str(a)) <= (_poly_key(b), str(b)) else (b, a)


def _symbol_from_diagonal(diag):
    z = 0
    for i, d in enumerate(diag):
        if _poly_key(d) <= _poly_key(diag[z]):
            z = i
    i, j = [k for k in range(3) if k != z]
    a = _square_class(-(diag[i] * diag[z]))
    b = _square_class(-(diag[j] * diag[z]))
    return _order_pair(a, b)


def _symbol_score(pair):
    a, b = pair
    return (
        sum(len(p.terms) > 1 for p in pair),
        a.total_degree() + b.total_degree(),
    )


@dataclass(frozen=True, eq=False)
class ConicSymbol:
    """(a, b) with the conic z^2 - a x^2 - b y^2 = 0; a, b in Q[params]."""

    a: Polynomial
    b: Polynomial
    params: tuple = ()

    def is_rational(self) -> bool:
        return self.a.is_constant() and self.b.is_constant()

    def over_q(self) -> QuaternionSymbolQ:
        if not self.is_rational():
            raise PreconditionError(f"{self} has non-constant entries")
        return QuaternionSymbolQ(int(self.a.constant_value()), int(self.b.constant_value()))

    def _monomial(self, p: Polynomial) -> MonomialElt:
        if len(p.terms) != 1:
            raise PreconditionError(f"{p} is not a monomial in the parameters")
        (exps, c), = p.terms.items()
        powers = dict(zip(p.ambient, exps))
        if set(powers) - {"s", "t"}:
            raise PreconditionError(f"parameters {list(p.ambient)} are not (s, t)")
        # constants are read over R: only the sign survives
        return MonomialElt(1 if c > 0 else -1, powers.get("s", 0), powers.get("t", 0))

    def over_rst(self):
        return self._monomial(self.a), self._monomial(self.b)

    def rst_class(self):
        return rst_symbol_to_class(*self.over_rst())

    def specialize(self, values: dict) -> QuaternionSymbolQ:
        a = self.a.specialize(values).constant_value()
        b = self.b.specialize(values).constant_value()
        if not a or not b:
            raise PreconditionError(f"{self} degenerates at {values}")
        return QuaternionSymbolQ(squarefree_part(a), squarefree_part(b))

    def real_signature(self, samples) -> list:
        """Real Hilbert symbols at sample parameter values (dicts)."""
        out = []
        for values in samples:
            sym = self.specialize(values)
            out.append(hilbert_symbol(sym.a, sym.b, "inf"))
        return out

    def __str__(self):
        return f"({self.a},{self.b})"


def conic_to_symbol(q: TernaryQuadratic) -> ConicSymbol:
    """
    Diagonalize q and read off (a, b) with q equivalent to z^2 - a x^2 - b y^2.
    """
    if q.is_rational():
        diag = _diagonal_classes(q.gram, _largest_diagonal)
        a, b = _symbol_from_diagonal(diag)
        return ConicSymbol(a, b, q.params)
    candidates = [_symbol_from_diagonal(_diagonal_classes(q.gram, _simplest_diagonal))]
    for order in permutations(range(3)):
        try:
            candidates.append(_symbol_from_diagonal(_diagonal_classes(q.gram, _forced_order(order))))
        except PreconditionError:
            continue
    a, b = min(candidates, key=_symbol_score)
    return ConicSymbol(a, b, q.params)


def obstruction_symbol(model: QuarticModel, alpha) -> ConicSymbol:
    sym = conic_to_symbol(obstruction_conic(model, alpha))
    log_info(f"Obstruction of {model.name} at {ProjectivePoint.of(alpha)}: {sym}")
    return sym


def sample_obstruction(model: QuarticModel, points, limit: int = DEFAULTS["sample_obstruction"]):
    """(point, symbol) for up to `limit` points off the Hessian, in the given order."""
    out = []
    for pt in points:
        if len(out) >= limit:
            break
        try:
            out.append((pt, obstruction_symbol(model, pt)))
        except HessianPointError:
            log_warn(f"Skipped {pt}: on the Hessian of {model.name}")
    return out


# ------------------------------------------
# MARKED SEXTIC
# ------------------------------------------

def _coprime_pairs(h):
    """Pairs (x, y) with max(|x|, |y|) = h, up to sign, gcd 1."""
    if h == 0:
        return
    for x in range(-h, h + 1):
        for y in (h,) if abs(x) < h else range(0, h + 1):
            if y == 0 and x < 0:
                continue
            if gcd(x, y) == 1:
                yield x, y


def find_conic_point(q: TernaryQuadratic, bound: int = DEFAULTS["search_bound"]):
    """
    A rational point on the conic, searching (x, y) by growing max-norm up
    to `bound` and solving for z.
    """
    G = q.rational_gram()
    sym = conic_to_symbol(q).over_q()
    if quaternion_index_q(sym) == 2:
        raise NoConicPointError(f"no point found: conic class {sym} is not split")
    A = G[2][2]
    if not A:
        return ProjectivePoint.of(0, 0, 1)
    for h in range(1, bound + 1):
        for x, y in _coprime_pairs(h):
            B = G[0][2] * x + G[1][2] * y
            C = G[0][0] * x * x + 2 * G[0][1] * x * y + G[1][1] * y * y
            disc = B * B - A * C
            if disc < 0:
                continue
            num, den = disc.numerator, disc.denominator
            rn, rd = isqrt(num), isqrt(den)
            if rn * rn != num or rd * rd != den:
                continue
            z = (-B + Fraction(rn, rd)) / A
            return ProjectivePoint.of(x, y, z)
    raise NoConicPointError(f"no point found with max-norm <= {bound}")


@dataclass(frozen=True, eq=False)
class MarkedSextic:
    conic_point: ProjectivePoint
    binary: Polynomial

    def coefficients(self):
        """c_0..c_6 of the dehomogenized form f(1, T1), ascending."""
        return tuple(self.binary.coefficient((6 - i, i)) for i in range(7))

    @property
    def degree(self) -> int:
        cs = self.coefficients()
        return max(i for i, c in enumerate(cs) if c)

    def to_sympy(self):
        T = sympy.Symbol("T")
        expr = sum(sympy.Rational(c.numerator, c.denominator) * T**i for i, c in enumerate(self.coefficients()))
        return sympy.Poly(expr, T)

    def curve_equation(self) -> str:
        return f"y^2 = {self.binary.specialize({'T0': 1}).rename({'T1': 'x'}).restrict_ambient(('x',))}"


def marked_sextic(model: QuarticModel, alpha, bound: int = DEFAULTS["search_bound"]) -> MarkedSextic:
    """
    Binary sextic cut out on the obstruction conic by P^(1), through a
    parametrization of the conic by lines through a found rational point.
    """
    if model.params:
        raise PreconditionError("marked sextics need a model over Q")
    q = obstruction_conic(model, alpha)
    point = find_conic_point(q, bound)
    G = q.rational_gram()
    p = point.as_fractions()

    # two unit vectors completing p to a basis
    basis = next(
        e
        for e in (
            [[int(k == i) for k in range(3)], [int(k == j) for k in range(3)]]
            for i in range(3)
            for j in range(i + 1, 3)
        )
        if det([list(p), e[0], e[1]])
    )

    T0, T1 = (Polynomial.variable(SEXTIC_VARS, v) for v in SEXTIC_VARS)
    d = [T0 * basis[0][k] + T1 * basis[1][k] for k in range(3)]

    def bilinear(u, v):
        total = Polynomial.zero(SEXTIC_VARS)
        for i in range(3):
            for j in range(3):
                if G[i][j]:
                    total = total + u[i] * v[j] * G[i][j]
        return total

    pp = [Polynomial.constant(SEXTIC_VARS, x) for x in p]
    qd = bilinear(d, d)
    bpd = bilinear(pp, d)
    w = [pp[k] * qd - d[k] * bpd * 2 for k in range(3)]
    if bilinear(w, w):
        raise ConsistencyError("conic parametrization is not on the conic")

    frame = q.frame
    hs = [Polynomial.zero(SEXTIC_VARS) for _ in H_VARS]
    for k, slot in enumerate(frame.plane_slots()):
        hs[slot] = w[k]
    images = frame.images(hs, SEXTIC_VARS)
    p1 = polar(model, alpha, 1)
    binary = p1.substitute(images, SEXTIC_VARS)
    sextic = MarkedSextic(point, binary)
    if not binary or sextic.degree < 5:
        raise NotSquarefreeError(f"marked sextic {binary} has a multiple root at infinity")
    if sympy.discriminant(sextic.to_sympy()) == 0:
        raise NotSquarefreeError(f"marked sextic {binary} is not squarefree")
    log_info(f"Marked sextic at {ProjectivePoint.of(alpha)}: degree {sextic.degree}")
    return sextic


# ------------------------------------------
# ENVELOPING CONE
# ------------------------------------------

def _lambda_expansion(model, alpha):
    form, coords, values = p4_data(model, alpha)
    cubic = _polar_of_form(form, coords, values, 1)
    ring = cubic.ambient + ("lam",)
    lam = Polynomial.variable(ring, "lam")
    images = {
        c: Polynomial.variable(ring, c) * lam + v for c, v in zip(coords, values)
    }
    parts = cubic.substitute(images, ring).coefficients_in(("lam",))
    zero = Polynomial.zero(cubic.ambient)
    coeffs = [parts[(k,)].restrict_ambient(cubic.ambient) if (k,) in parts else zero for k in range(4)]
    if coeffs[0]:
        raise ConsistencyError(f"P^(1) does not vanish at {alpha}")
    return coeffs[1:], coords, values


def enveloping_cone(model: QuarticModel, alpha) -> Polynomial:
    """Discriminant B^2 - 4*A*C3 of C(alpha + lam x) = lam A + lam^2 B + lam^3 C3."""
    (A, B, C3), coords, values = _lambda_expansion(model, alpha)
    E = B * B - A * C3 * 4
    if E.directional_derivative(values, coords):
        raise ConsistencyError(f"enveloping cone is not a cone with vertex {alpha}")
    return E


def trope_check(model: QuarticModel, alpha) -> bool:
    """
    On P^(3) = 0 the enveloping cone is the square of the lam^2
    coefficient, and that coefficient is P^(2).
    """
    (A, B, C3), coords, values = _lambda_expansion(model, alpha)
    E = B * B - A * C3 * 4
    seq = polars(model, alpha)
    q = obstruction_conic(model, alpha)
    ring = H_VARS + tuple(model.params)
    hs = [Polynomial.variable(ring, h) for h in H_VARS]
    images = q.frame.images(hs, ring)
    restricted = E.substitute(images, ring)
    square = B.substitute(images, ring) ** 2
    return restricted == square and B == seq.p2
