from fractions import Fraction

import pytest

from burkhardt_core.brauer import MonomialElt, QuaternionSymbolQ, brauer_equal_q, quaternion_index_q, rst_symbol_to_class
from burkhardt_core.certificates import BDOUBLEPRIME_POINT, BPRIME_POINT
from burkhardt_core.errors import NoConicPointError, PreconditionError
from burkhardt_core.obstruction import (
    TernaryQuadratic,
    conic_to_symbol,
    enveloping_cone,
    find_conic_point,
    marked_sextic,
    obstruction_conic,
    obstruction_symbol,
    polar,
    polars,
    trope_check,
)
from burkhardt_core.twist_factory import bdoubleprime_model, bprime_model


@pytest.fixture(scope="module")
def bprime():
    return bprime_model()


@pytest.fixture(scope="module")
def bdoubleprime_s1():
    return bdoubleprime_model().model.specialize({"s": Fraction(1)}, "B''|s=1")


# ------------------------------------------
# polars
# ------------------------------------------

def test_polars_vanish_at_the_point(bprime):
    # D_a^r F (a) is a multiple of F(a)
    seq = polars(bprime, BPRIME_POINT)
    at = dict(zip(seq.coords, seq.point))
    for r, degree in ((1, 3), (2, 2), (3, 1)):
        assert seq[r].is_homogeneous(degree)
        assert not seq[r].specialize(at)


def test_polar_matches_sequence(bprime):
    seq = polars(bprime, BPRIME_POINT)
    assert polar(bprime, BPRIME_POINT, 2) == seq.p2


def test_polar_order_is_checked(bprime):
    with pytest.raises(PreconditionError):
        polar(bprime, BPRIME_POINT, 4)


# ------------------------------------------
# conics and symbols
# ------------------------------------------

@pytest.mark.parametrize(
    "a, b, c",
    [(1, 1, 1), (1, 1, -1), (-2, -3, 1), (5, -7, 3), (1, -6, 10), (3, 3, -2)],
)
def test_diagonal_conic_symbol(a, b, c):
    # aX^2 + bY^2 + cZ^2 = 0 is Z^2 = -(a/c) X^2 - (b/c) Y^2
    sym = conic_to_symbol(TernaryQuadratic.diagonal(a, b, c)).over_q()
    assert brauer_equal_q(sym, QuaternionSymbolQ(-a * c, -b * c))


def test_hyperbolic_plane_splits():
    q = TernaryQuadratic(((0, 1, 0), (1, 0, 0), (0, 0, 1)))
    sym = conic_to_symbol(q).over_q()
    assert quaternion_index_q(sym) == 1
    pt = find_conic_point(q)
    assert q.value_at(pt.coords) == 0


def test_find_conic_point_on_split_diagonal_conic():
    q = TernaryQuadratic.diagonal(1, 1, -2)
    pt = find_conic_point(q, bound=5)
    assert q.value_at(pt.coords) == 0


def test_nonsplit_conic_has_no_point():
    with pytest.raises(NoConicPointError):
        find_conic_point(TernaryQuadratic.diagonal(1, 1, 1))


def test_ternary_quadratic_validation():
    with pytest.raises(PreconditionError):
        TernaryQuadratic(((1, 2, 0), (0, 1, 0), (0, 0, 1)))
    with pytest.raises(PreconditionError):
        TernaryQuadratic.diagonal(0, 0, 0)


# ------------------------------------------
# B' and B''
# ------------------------------------------

def test_bprime_obstruction_is_minus_three_minus_one(bprime):
    q = obstruction_conic(bprime, BPRIME_POINT)
    assert q.is_rational()
    assert q.determinant()
    sym = obstruction_symbol(bprime, BPRIME_POINT).over_q()
    assert brauer_equal_q(sym, QuaternionSymbolQ(-3, -1))
    assert quaternion_index_q(sym) == 2
    assert sym.ramified_places()


def test_marked_sextic_needs_a_split_conic(bprime):
    with pytest.raises(NoConicPointError):
        marked_sextic(bprime, BPRIME_POINT)


def test_marked_sextic_needs_a_model_over_q(bdoubleprime_s1):
    with pytest.raises(PreconditionError):
        marked_sextic(bdoubleprime_s1, BDOUBLEPRIME_POINT)


def test_enveloping_cone_restricts_to_a_square(bprime):
    cone = enveloping_cone(bprime, BPRIME_POINT)
    assert cone.is_homogeneous(4)
    assert trope_check(bprime, BPRIME_POINT)


def test_restricted_bdoubleprime_obstruction_follows_the_sign_of_t(bdoubleprime_s1):
    sym = obstruction_symbol(bdoubleprime_s1, BDOUBLEPRIME_POINT)
    assert not sym.is_rational()
    samples = []
    for t in (3, -2, Fraction(1, 2), -5, 7, Fraction(-1, 3)):
        try:
            sym.specialize({"t": Fraction(t)})
        except PreconditionError:
            continue
        samples.append({"t": Fraction(t)})
    assert samples
    assert sym.real_signature(samples) == [1 if s["t"] > 0 else -1 for s in samples]


def test_restricted_bdoubleprime_rst_class(bdoubleprime_s1):
    sym = obstruction_symbol(bdoubleprime_s1, BDOUBLEPRIME_POINT)
    try:
        cls = sym.rst_class()
    except PreconditionError:
        pytest.skip("symbol entries are not monomials in s, t")
    assert cls == rst_symbol_to_class(MonomialElt(-1), MonomialElt(1, 0, 1))
