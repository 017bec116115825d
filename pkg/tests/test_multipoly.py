import random
from fractions import Fraction

import pytest

from burkhardt_core.errors import (
    AmbientMismatchError,
    NotSymmetricError,
    ParseError,
    RelationError,
    UnknownVariableError,
)
from burkhardt_core.exactnum import Cyclo3
from burkhardt_core.multipoly import (
    LinearMap,
    Polynomial,
    elementary_from_power_sums,
    elementary_symmetric,
    evaluate_point,
    expand_elementary,
    parse_polynomial,
    partial_derivative,
    poly_arith,
    power_sums_from_monic,
    reduce_by_relation,
    substitute_linear,
    symmetric_reduce,
)

XYZ = ("x", "y", "z")


def _random_poly(rng, ambient=XYZ, terms=4, degree=3):
    pairs = []
    for _ in range(terms):
        powers = {v: rng.randint(0, degree) for v in ambient}
        pairs.append((Fraction(rng.randint(-5, 5), rng.randint(1, 3)), powers))
    return Polynomial.from_terms(ambient, pairs)


def _random_point(rng, n=3):
    return [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)]


@pytest.mark.parametrize("seed", range(8))
def test_ring_laws(seed):
    rng = random.Random(seed)
    p, q, r = (_random_poly(rng) for _ in range(3))
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == Polynomial.zero(XYZ)


@pytest.mark.parametrize("seed", range(8))
def test_evaluation_is_a_ring_homomorphism(seed):
    rng = random.Random(100 + seed)
    p, q = _random_poly(rng), _random_poly(rng)
    pt = _random_point(rng)
    assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
    assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)


@pytest.mark.parametrize("seed", range(6))
def test_degree_is_additive(seed):
    rng = random.Random(200 + seed)
    p, q = _random_poly(rng), _random_poly(rng)
    if p and q:
        assert (p * q).total_degree() == p.total_degree() + q.total_degree()


@pytest.mark.parametrize("seed", range(6))
def test_leibniz_rule(seed):
    rng = random.Random(300 + seed)
    p, q = _random_poly(rng), _random_poly(rng)
    for v in XYZ:
        lhs = partial_derivative(p * q, v)
        rhs = partial_derivative(p, v) * q + p * partial_derivative(q, v)
        assert lhs == rhs


def test_poly_arith_ops():
    x = Polynomial.variable(XYZ, "x")
    y = Polynomial.variable(XYZ, "y")
    assert poly_arith(x, y, "add") == x + y
    assert poly_arith(x, y, "sub") == x - y
    assert poly_arith(x, y, "mul") == x * y
    assert poly_arith(x + y, 2, "pow") == x * x + x * y * 2 + y * y


def test_ring_mismatch_raises():
    with pytest.raises(AmbientMismatchError):
        Polynomial.variable(("x",), "x") + Polynomial.variable(("y",), "y")


def test_unknown_variable_raises():
    with pytest.raises(UnknownVariableError):
        partial_derivative(Polynomial.variable(XYZ, "x"), "w")


def test_evaluate_point_dimension_mismatch():
    with pytest.raises(AmbientMismatchError):
        evaluate_point(Polynomial.variable(XYZ, "x"), [1, 2])


@pytest.mark.parametrize("seed", range(4))
def test_linear_maps_compose(seed):
    rng = random.Random(400 + seed)
    p = _random_poly(rng)
    A = LinearMap(tuple(tuple(rng.randint(-2, 2) for _ in range(3)) for _ in range(3)), ("u", "v", "w"), XYZ)
    B = LinearMap(tuple(tuple(rng.randint(-2, 2) for _ in range(3)) for _ in range(3)), ("a", "b", "c"), ("u", "v", "w"))
    step = substitute_linear(substitute_linear(p, A), B)
    once = substitute_linear(p, A.compose(B))
    assert step == once


def test_linear_map_shape_mismatch():
    with pytest.raises(AmbientMismatchError):
        LinearMap(((1, 0),), ("u", "v", "w"), ("x",))


def test_reduce_by_relation_congruence():
    ring = ("x1", "x2", "x3")
    x1, x2, x3 = (Polynomial.variable(ring, v) for v in ring)
    relation = x1**2 - x2**2 * 3 - x3
    p = x1**5 + x1**3 * x2 - x2**4
    reduced = reduce_by_relation(p, "x1", relation)
    assert reduced.degree_in("x1") <= 1
    # congruent modulo the relation: substitute x3 = x1^2 - 3 x2^2 back
    back = reduced.substitute({"x3": x1**2 - x2**2 * 3}, ring)
    assert back == p


def test_reduce_by_relation_requires_monic_square():
    ring = ("x1", "x2")
    x1, x2 = (Polynomial.variable(ring, v) for v in ring)
    with pytest.raises(RelationError):
        reduce_by_relation(x1**3, "x1", x1**2 * 2 - x2)


def test_symmetric_reduce_known_identity():
    ring = ("b1", "b2", "b3")
    b1, b2, b3 = (Polynomial.variable(ring, v) for v in ring)
    p2 = b1**2 + b2**2 + b3**2
    e1, e2, _ = (Polynomial.variable(("e1", "e2", "e3"), v) for v in ("e1", "e2", "e3"))
    assert symmetric_reduce(p2) == e1**2 - e2 * 2


@pytest.mark.parametrize("seed", range(4))
def test_symmetric_reduce_roundtrip(seed):
    rng = random.Random(500 + seed)
    ring = ("b1", "b2", "b3", "b4")
    elem = [elementary_symmetric(ring, k) for k in range(1, 5)]
    p = Polynomial.zero(ring)
    for _ in range(3):
        term = Polynomial.constant(ring, rng.randint(-3, 3))
        for e in elem:
            term = term * e ** rng.randint(0, 2)
        p = p + term
    q = symmetric_reduce(p)
    assert expand_elementary(q, ring) == p


def test_symmetric_reduce_rejects_asymmetric():
    ring = ("b1", "b2", "b3")
    with pytest.raises(NotSymmetricError):
        symmetric_reduce(Polynomial.variable(ring, "b1"))


def test_newton_identities_both_directions():
    # roots 1, 2, 3: T^3 - 6T^2 + 11T - 6
    p = power_sums_from_monic((-6, 11, -6), 4)
    assert p[:5] == [3, 6, 14, 36, 98]
    e = elementary_from_power_sums(p[:4])
    assert e == [1, 6, 11, 6]


def test_text_roundtrip_with_cyclo_coefficients():
    p = Polynomial(XYZ, {(2, 0, 1): Fraction(-3, 2), (0, 1, 0): Cyclo3(1, -2), (0, 0, 0): Fraction(5)})
    assert parse_polynomial(str(p), XYZ) == p


def test_parse_error_offset():
    with pytest.raises(ParseError) as info:
        parse_polynomial("x + * y", XYZ)
    assert info.value.offset == 4


def test_coefficients_in_and_homogeneity():
    ring = ("x", "y", "s")
    p = parse_polynomial("s*x^2 + 3*y^2 - x*y", ring)
    parts = p.coefficients_in(("x", "y"))
    assert parts[(2, 0)] == Polynomial.variable(ring, "s")
    assert p.is_homogeneous(2, ("x", "y"))
    assert not p.is_homogeneous()


def test_sympy_bridge():
    p = parse_polynomial("x^2 - 2*x*y + 1/3", XYZ)
    assert Polynomial.from_sympy(p.to_sympy(), XYZ) == p
