import random
from fractions import Fraction

import pytest

from burkhardt_core.errors import NotSquarefreeError, ParseError, PreconditionError
from burkhardt_core.multipoly import Polynomial
from burkhardt_core.standard_model import X_VARS, singularity_test
from burkhardt_core.twist_factory import (
    SexticPoly,
    Z_VARS,
    bdoubleprime_model,
    bprime_model,
    displayed_bdoubleprime,
    elliptic_kummer_check,
    sextic_from_roots,
    specialize_model,
    substituted_bprime,
    tangent_cone_quadric,
    twist_coefficient_by_symmetric_reduce,
    twist_from_sextic,
)

ROOTS = (0, 1, -1, 2, -2, 3)


# ------------------------------------------
# sextic twists
# ------------------------------------------

def test_sextic_from_roots():
    h = sextic_from_roots((1, 2, 3, 4, 5, 6))
    # (T-1)...(T-6): constant term 720, T^5 coefficient -21
    assert h.coeffs[0] == 720
    assert h.coeffs[5] == -21


def test_sextic_parse_and_errors():
    assert SexticPoly.parse("-1,0,0,0,0,0").coeffs == (-1, 0, 0, 0, 0, 0)
    with pytest.raises(ParseError) as info:
        SexticPoly.parse("1,2,x,4,5,6")
    assert info.value.offset == 4
    with pytest.raises(PreconditionError):
        SexticPoly((1, 2, 3))


def test_twist_matches_vandermonde_substitution():
    twist = twist_from_sextic(sextic_from_roots(ROOTS))
    direct = substituted_bprime(ROOTS)
    assert twist.model.forms[0] == direct.forms[0]
    assert twist.model.forms[1] == direct.forms[1]
    assert twist.provenance["method"] == "newton power sums"


def test_cyclic_sextic_gives_six_x1():
    twist = twist_from_sextic(SexticPoly((-1, 0, 0, 0, 0, 0)))
    assert twist.model.forms[0] == Polynomial.variable(X_VARS, "x1") * 6


@pytest.mark.parametrize("monomial", [(4, 0, 0, 0, 0, 0), (1, 1, 1, 1, 0, 0), (0, 0, 0, 0, 2, 2), (2, 0, 1, 0, 0, 1)])
def test_power_sum_and_symmetric_reduce_paths_agree(monomial):
    h = sextic_from_roots((1, 2, -1, 3, -2, 5))
    twist = twist_from_sextic(h)
    assert twist.model.quartic.coefficient(monomial) == twist_coefficient_by_symmetric_reduce(h, monomial)


def test_repeated_root_is_rejected():
    with pytest.raises(NotSquarefreeError):
        twist_from_sextic(sextic_from_roots((1, 1, 2, 3, 4, 5)))


def test_twist_lies_over_the_sextic_field():
    twist = twist_from_sextic(sextic_from_roots(ROOTS))
    assert twist.model.quartic.is_homogeneous(4)
    assert twist.model.forms[0].is_homogeneous(1)


# ------------------------------------------
# B''
# ------------------------------------------

def test_bdoubleprime_matches_display():
    twist = bdoubleprime_model()
    assert twist.model.quartic == displayed_bdoubleprime()
    assert twist.model.params == ("s", "t")
    assert twist.model.quartic.is_homogeneous(4, Z_VARS)
    assert twist.provenance["sqrt_components_vanish"] is True


def test_bdoubleprime_specialization():
    model = specialize_model(bdoubleprime_model(), {"s": 1}, "B''|s=1")
    assert model.params == ("t",)
    assert model.contains((16, -31, 9, 0, 0))
    assert singularity_test(bdoubleprime_model().model, (1, -1, 0, 0, 0)) == "singular"


def test_tangent_cone_is_s_t_st_minus_three():
    cone = tangent_cone_quadric()
    assert list(cone.entries) == [(1, 1, 0), (1, 0, 1), (1, 1, 1), (-3, 0, 0)]
    assert cone.chart["point"] == "(1:-1:0:0:0)"
    assert cone.quadratic.is_homogeneous(2, ("w1", "w2", "w3", "w4"))
    assert str(cone.as_diagonal_form()) == "<s, t, s*t, -3>"


# ------------------------------------------
# Kummer models
# ------------------------------------------

@pytest.mark.parametrize("r", [-1, 2, -2, 3, -3, 5])
def test_kummer_model_is_quartic(r):
    rng = random.Random(r)
    for _ in range(4):
        a2, a4, a6 = (Fraction(rng.randint(-9, 9)) for _ in range(3))
        km = elliptic_kummer_check(a2, a4, a6, r)
        assert km.degree <= 4
        assert km.reduced.degree_in("x1") <= 1


def test_kummer_model_rejects_zero_r():
    with pytest.raises(PreconditionError):
        elliptic_kummer_check(0, 0, 1, 0)


def test_bprime_is_the_sigma_pair():
    model = bprime_model()
    assert model.is_pair
    assert model.elimination == "x6"
    assert len(model.quartic.terms) == 15
