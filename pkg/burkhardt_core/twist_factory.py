# burkhardt_core/twist_factory.py

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, permutations
from math import comb

import sympy

from .errors import ConsistencyError, NotSquarefreeError, ParseError, PreconditionError
from .exactnum import KUMMER_AMBIENT, KummerCoeff, parse_rational, squarefree_part
from .logbook import log_info
from .multipoly import (
    LinearMap,
    Polynomial,
    elementary_from_power_sums,
    elementary_symmetric,
    multinomial,
    power_sums_from_monic,
    symmetric_reduce,
)
from .standard_model import X_VARS, Y_VARS, QuarticModel, standard_quartic

Z_VARS = ("z0", "z1", "z2", "z3", "z4")
W_VARS = ("w1", "w2", "w3", "w4")
BETA_VARS = ("b1", "b2", "b3", "b4", "b5", "b6")
KUMMER_VARS = ("x1", "x2", "x3")

# (coefficient, z exponents, s exponent, t exponent) of the displayed B'' quartic
BDOUBLEPRIME_TERMS = (
    (1, (4, 0, 0, 0, 0), 0, 0),
    (4, (1, 3, 0, 0, 0), 0, 0),
    (3, (0, 4, 0, 0, 0), 0, 0),
    (3, (0, 0, 4, 0, 0), 2, 0),
    (3, (0, 0, 0, 4, 0), 0, 2),
    (3, (0, 0, 0, 0, 4), 2, 2),
    (12, (1, 1, 2, 0, 0), 1, 0),
    (12, (1, 1, 0, 2, 0), 0, 1),
    (12, (1, 1, 0, 0, 2), 1, 1),
    (24, (1, 0, 1, 1, 1), 1, 1),
    (24, (0, 1, 1, 1, 1), 1, 1),
    (-6, (0, 2, 2, 0, 0), 1, 0),
    (-6, (0, 2, 0, 2, 0), 0, 1),
    (-6, (0, 0, 2, 2, 0), 1, 1),
    (-6, (0, 2, 0, 0, 2), 1, 1),
    (-6, (0, 0, 2, 0, 2), 2, 1),
    (-6, (0, 0, 0, 2, 2), 1, 2),
)

# signs of (√s, √t, √st) in y1..y4
_KUMMER_SIGNS = ((1, 1, 1), (-1, 1, -1), (1, -1, -1), (-1, -1, 1))


@dataclass(frozen=True)
class SexticPoly:
    """Monic T^6 + c5 T^5 + ... + c0, stored as (c0, ..., c5)."""

    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != 6:
            raise PreconditionError(
                f"a monic sextic needs exactly 6 lower coefficients, got {len(self.coeffs)}"
            )
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def parse(cls, text: str) -> "SexticPoly":
        parts = text.split(",")
        values = []
        pos = 0
        for part in parts:
            try:
                values.append(parse_rational(part))
            except ParseError:
                raise ParseError(f"bad coefficient {part.strip()!r}", pos, text) from None
            pos += len(part) + 1
        return cls(tuple(values))

    def to_sympy(self):
        T = sympy.Symbol("T")
        expr = T**6
        for k, c in enumerate(self.coeffs):
            expr += sympy.Rational(c.numerator, c.denominator) * T**k
        return sympy.Poly(expr, T)

    def is_squarefree(self) -> bool:
        return sympy.discriminant(self.to_sympy()) != 0

    def __str__(self):
        return ",".join(str(c) for c in self.coeffs)


@dataclass(frozen=True)
class TwistModel:
    source: str
    model: QuarticModel
    provenance: dict = field(default_factory=dict)


def sextic_from_roots(roots) -> SexticPoly:
    coeffs = [Fraction(1)]  # low to high
    for r in roots:
        r = Fraction(r)
        shifted = [Fraction(0)] + coeffs
        for i in range(len(coeffs)):
            shifted[i] -= r * coeffs[i]
        coeffs = shifted
    if len(coeffs) != 7:
        raise PreconditionError("a sextic needs six roots")
    return SexticPoly(tuple(coeffs[:6]))


# ------------------------------------------
# B' AND ITS TWISTS
# ------------------------------------------

def bprime_model() -> QuarticModel:
    sigma1 = elementary_symmetric(X_VARS, 1)
    sigma4 = elementary_symmetric(X_VARS, 4)
    return QuarticModel("B'", (sigma1, sigma4), X_VARS, elimination="x6")


def _exponent_vectors(n, k):
    for combo in combinations_with_replacement(range(n), k):
        e = [0] * n
        for i in combo:
            e[i] += 1
        yield tuple(e)


def twist_from_sextic(h: SexticPoly) -> TwistModel:
    """
    The pair (sigma1~, sigma4~) in the twisted coordinates x~_i = sum_j beta_i^(j-1) x_j,
    where beta_1..beta_6 are the roots of h. Coefficients come from power sums
    of the roots via Newton's identities; the roots are never constructed.
    """
    if not h.is_squarefree():
        raise NotSquarefreeError(f"T^6 + ... with coefficients {h} has a repeated root")
    n = len(X_VARS)
    p = power_sums_from_monic(h.coeffs, 4 * (n - 1))
    sigma1 = Polynomial(X_VARS, {tuple(int(i == j) for i in range(n)): p[j] for j in range(n)})
    P = [None]
    for k in range(1, 5):
        terms = {}
        for m in _exponent_vectors(n, k):
            weight = sum(j * mj for j, mj in enumerate(m))
            terms[m] = multinomial(k, m) * p[weight]
        P.append(Polynomial(X_VARS, terms))
    sigma4 = elementary_from_power_sums(P)[4]
    model = QuarticModel("twist", (sigma1, sigma4), X_VARS, elimination="x1")
    log_info(f"twist built from sextic ({h}); sigma4 has {len(sigma4.terms)} terms")
    return TwistModel(
        "sextic",
        model,
        {
            "sextic": str(h),
            "power_sums": [str(x) for x in p[:n]],
            "elimination": "x1",
            "method": "newton power sums",
        },
    )


def vandermonde_map(roots) -> LinearMap:
    roots = [Fraction(r) for r in roots]
    V = [[r**j for j in range(len(roots))] for r in roots]
    return LinearMap(V, X_VARS, X_VARS)


def substituted_bprime(roots) -> QuarticModel:
    m = vandermonde_map(roots)
    forms = tuple(f.substitute_linear(m) for f in bprime_model().forms)
    return QuarticModel("B'(V x)", forms, X_VARS, elimination="x1")


def twist_coefficient_by_symmetric_reduce(h: SexticPoly, monomial) -> Fraction:
    """
    Coefficient of x^monomial in sigma4~ computed the long way: as a symmetric
    polynomial in the roots, reduced to elementary functions, then evaluated
    at e_k = (-1)^k c_(6-k).
    """
    slots = [j for j, mj in enumerate(monomial) for _ in range(mj)]
    if len(slots) != 4:
        raise PreconditionError("sigma4~ coefficients are indexed by degree-4 monomials")
    n = len(BETA_VARS)
    terms = {}
    for subset in combinations(range(n), 4):
        for order in set(permutations(slots)):
            e = [0] * n
            for root, power in zip(subset, order):
                e[root] += power
            key = tuple(e)
            terms[key] = terms.get(key, 0) + 1
    in_roots = Polynomial(BETA_VARS, terms)
    reduced = symmetric_reduce(in_roots)
    elementary = [(-1) ** k * h.coeffs[n - k] for k in range(1, n + 1)]
    return reduced.evaluate(elementary)


def specialize_model(model, values: dict, name=None):
    if isinstance(model, TwistModel):
        model = model.model
    return model.specialize({k: Fraction(v) for k, v in values.items()}, name)


# ------------------------------------------
# B'' OVER R(s, t)
# ------------------------------------------

def _kummer_images():
    one = KummerCoeff.of(1)
    units = (KummerCoeff.sqrt_s(), KummerCoeff.sqrt_t(), KummerCoeff.sqrt_st())

    def mono(i, coeff):
        return Polynomial(Z_VARS, {tuple(int(k == i) for k in range(5)): coeff})

    images = {"y0": mono(0, one)}
    for yi, signs in zip(Y_VARS[1:], _KUMMER_SIGNS):
        img = mono(1, one)
        for zi, (sign, unit) in enumerate(zip(signs, units), start=2):
            img = img + mono(zi, unit * sign)
        images[yi] = img
    return images


def displayed_bdoubleprime() -> Polynomial:
    ring = Z_VARS + KUMMER_AMBIENT
    return Polynomial(ring, {z + (s, t): c for c, z, s, t in BDOUBLEPRIME_TERMS})


def bdoubleprime_model() -> TwistModel:
    """
    Substitute y0 = z0, y_i = z1 ± z2√s ± z3√t ± z4√st into F and check the
    result is the displayed quartic over Q[s, t].
    """
    composed = standard_quartic().substitute(_kummer_images(), Z_VARS)
    ring = Z_VARS + KUMMER_AMBIENT
    flat = {}
    for zexps, coeff in composed.terms.items():
        if not coeff.is_rational():
            raise ConsistencyError(f"√-component survives at z^{zexps}: {coeff}")
        for stexps, c in coeff.c00.terms.items():
            flat[zexps + stexps] = c
    form = Polynomial(ring, flat)
    displayed = displayed_bdoubleprime()
    if form != displayed:
        raise ConsistencyError(f"substituted quartic differs from the display by {form - displayed}")
    model = QuarticModel("B''", (form,), Z_VARS, KUMMER_AMBIENT)
    log_info(f"B'' reconstructed: {len(form.terms)} terms, all √-components vanish")
    return TwistModel(
        "kummer-substitution",
        model,
        {
            "substitution": {
                "y0": "z0",
                **{
                    y: "z1 " + " ".join(
                        f"{'+' if sg > 0 else '-'} {z}*{u}"
                        for sg, z, u in zip(signs, ("z2", "z3", "z4"), ("sqrt(s)", "sqrt(t)", "sqrt(st)"))
                    )
                    for y, signs in zip(Y_VARS[1:], _KUMMER_SIGNS)
                },
            },
            "sqrt_components_vanish": True,
            "displayed_terms": len(BDOUBLEPRIME_TERMS),
        },
    )


@dataclass(frozen=True)
class TangentCone:
    """Diagonal quadric sum c_i s^a t^b u_i^2 plus the coordinate change that produced it."""

    entries: tuple  # (coefficient, s exponent, t exponent)
    scalings: tuple  # (u name, expression in w)
    scale: int
    chart: dict
    quadratic: Polynomial

    def as_diagonal_form(self):
        from .brauer import DiagonalEntry, DiagonalForm

        return DiagonalForm(tuple(DiagonalEntry(c, s, t) for c, s, t in self.entries))


def _square_root(q: Fraction) -> Fraction:
    num = sympy.sqrt(sympy.Integer(q.numerator))
    den = sympy.sqrt(sympy.Integer(q.denominator))
    if not (num.is_Integer and den.is_Integer):
        raise ConsistencyError(f"{q} is not a rational square")
    return Fraction(int(num), int(den))


def _best_scale(constants):
    primes = sorted({p for c in constants for p in sympy.primefactors(abs(squarefree_part(c)))})
    candidates = []
    for r in range(len(primes) + 1):
        for subset in combinations(primes, r):
            base = 1
            for p in subset:
                base *= p
            candidates.extend([base, -base])

    def score(lam):
        hits = sum(1 for c in constants if squarefree_part(lam * c) == 1)
        return (-hits, abs(lam), lam < 0)

    return min(candidates, key=score)


def tangent_cone_quadric(twist: TwistModel | None = None) -> TangentCone:
    """
    Quadratic part of B'' at (1:-1:0:0:0), in the chart z0 = 1 with
    z1 = -1 + w1, z2 = w2, z3 = w3, z4 = w4, normalized to sum c_i m_i u_i^2.
    """
    twist = twist or bdoubleprime_model()
    form = twist.model.quartic
    ring = W_VARS + KUMMER_AMBIENT
    w = {v: Polynomial.variable(ring, v) for v in W_VARS}
    images = {
        "z0": Polynomial.one(ring),
        "z1": w["w1"] - 1,
        "z2": w["w2"],
        "z3": w["w3"],
        "z4": w["w4"],
    }
    local = form.substitute(images, ring)
    parts = local.homogeneous_components(W_VARS)
    if parts.get(0) or parts.get(1):
        raise ConsistencyError("(1:-1:0:0:0) is not a singular point of B''")
    quadratic = parts.get(2)
    if quadratic is None:
        raise ConsistencyError("tangent cone has no quadratic part")

    raw = []
    for wexps, coeff in quadratic.coefficients_in(W_VARS).items():
        if sorted(wexps) != [0, 0, 0, 2]:
            raise ConsistencyError(f"tangent cone is not diagonal: cross term w^{wexps}")
        if len(coeff.terms) != 1:
            raise ConsistencyError(f"diagonal entry {coeff} is not a monomial in s, t")
        (exps, c), = coeff.terms.items()
        raw.append((wexps.index(2), c, exps[-2], exps[-1]))
    if len(raw) != 4:
        raise ConsistencyError(f"tangent cone has rank {len(raw)}, expected 4")

    lam = _best_scale([c for _, c, _, _ in raw])
    normalized = []
    for var, c, es, et in raw:
        scaled = lam * c
        unit = squarefree_part(scaled)
        root = _square_root(scaled / unit)
        normalized.append((Fraction(unit), es, et, f"{root}*{W_VARS[var]}"))
    normalized.sort(key=lambda e: (e[1] + e[2] == 0, e[1] + e[2], -e[1]))
    entries = tuple((c, es, et) for c, es, et, _ in normalized)
    scalings = tuple((f"u{i}", expr) for i, (_, _, _, expr) in enumerate(normalized))
    log_info(f"tangent cone normalized with scale {lam}: {entries}")
    return TangentCone(
        entries,
        scalings,
        lam,
        {"point": "(1:-1:0:0:0)", "z0": "1", "z1": "-1+w1", "z2": "w2", "z3": "w3", "z4": "w4"},
        quadratic,
    )


# ------------------------------------------
# ELLIPTIC KUMMER MODELS
# ------------------------------------------

@dataclass(frozen=True)
class KummerModel:
    """d*w^2 = N(x1, x2, x3) where x3 = x1^2 - r*x2^2."""

    a2: Fraction
    a4: Fraction
    a6: Fraction
    r: Fraction
    d: Fraction
    norm: Polynomial
    reduced: Polynomial

    @property
    def degree(self) -> int:
        return self.reduced.total_degree()


def elliptic_kummer_check(a2, a4, a6, r, d=1) -> KummerModel:
    """
    Norm of f(x1 + x2*sqrt(r)) for f = x^3 + a2 x^2 + a4 x + a6, reduced by
    x1^2 -> r x2^2 + x3 to a quartic.
    """
    a2, a4, a6, r, d = (Fraction(v) for v in (a2, a4, a6, r, d))
    if r == 0 or d == 0:
        raise PreconditionError("r and d must be nonzero")
    x1 = Polynomial.variable(KUMMER_VARS, "x1")
    x2 = Polynomial.variable(KUMMER_VARS, "x2")
    x3 = Polynomial.variable(KUMMER_VARS, "x3")
    even = Polynomial.zero(KUMMER_VARS)
    odd = Polynomial.zero(KUMMER_VARS)
    for k, coeff in enumerate((a6, a4, a2, Fraction(1))):
        if not coeff:
            continue
        for i in range(k + 1):
            term = x1 ** (k - i) * x2**i * (coeff * comb(k, i) * r ** (i // 2))
            if i % 2:
                odd = odd + term
            else:
                even = even + term
    norm = even * even - odd * odd * r
    relation = x1**2 - x2**2 * r - x3
    reduced = norm.reduce_by_relation("x1", relation)
    if reduced.total_degree() > 4:
        raise ConsistencyError(f"reduced norm has degree {reduced.total_degree()}")
    back = reduced.substitute({"x3": x1**2 - x2**2 * r}, KUMMER_VARS)
    if back != norm:
        raise ConsistencyError("un-reducing the Kummer model does not give the norm back")
    return KummerModel(a2, a4, a6, r, d, norm, reduced)