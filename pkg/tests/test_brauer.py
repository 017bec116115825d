import json
import random
from fractions import Fraction
from itertools import product

import pytest
import sympy

from burkhardt_core.brauer import (
    INF,
    DiagonalEntry,
    DiagonalForm,
    MonomialElt,
    QuaternionSymbolQ,
    RstClass,
    albert_form,
    all_classes,
    all_monomials,
    biquaternion_class,
    brauer_equal_q,
    diagonal_form,
    hilbert_symbol,
    local_symbols,
    power_series_anisotropy,
    quaternion_index_q,
    ramified_places,
    reciprocity_holds,
    rst_index_classify,
    rst_index_table,
    rst_symbol_to_class,
)
from burkhardt_core.errors import ParseError, PreconditionError
from burkhardt_core.exactnum import squarefree_part
from burkhardt_core.twist_factory import tangent_cone_quadric

PAIRS = [(-1, -1), (2, 3), (-1, 3), (5, -7), (6, 10), (-3, 35), (7, 7), (-2, 1)]


# ------------------------------------------
# Hilbert symbols over Q
# ------------------------------------------

@pytest.mark.parametrize(
    "a, b, place, expected",
    [
        (-1, -1, 2, -1),
        (-1, -1, INF, -1),
        (-1, -1, 3, 1),
        (2, 3, 3, -1),
        (2, 3, 2, -1),
        (2, 3, INF, 1),
        (-1, 3, 3, -1),
        (1, 5, 5, 1),
    ],
)
def test_hilbert_symbol_values(a, b, place, expected):
    assert hilbert_symbol(a, b, place) == expected


@pytest.mark.parametrize("a, b", PAIRS)
def test_hilbert_reciprocity(a, b):
    assert reciprocity_holds(QuaternionSymbolQ(a, b))
    assert len(ramified_places(a, b)) % 2 == 0


@pytest.mark.parametrize("a", [2, -3, 5, 6, -10])
def test_a_minus_a_splits(a):
    assert all(v == 1 for v in local_symbols(a, -a).values())


def test_symbol_ignores_square_factors():
    assert QuaternionSymbolQ(12, -8) == QuaternionSymbolQ(3, -2)
    assert hilbert_symbol(12, -8, 3) == hilbert_symbol(3, -2, 3)


def test_hilbert_symbol_is_a_plain_int():
    assert type(hilbert_symbol(2, 3, 3)) is int
    assert type(hilbert_symbol(3, 2, 3)) is int
    json.dumps({str(k): v for k, v in local_symbols(-3, -1).items()})


def _random_rational(rng, size=10**6):
    return Fraction(rng.choice([-1, 1]) * rng.randint(1, size), rng.randint(1, 50))


@pytest.mark.parametrize("seed", range(4))
def test_reciprocity_and_bilinearity_on_random_symbols(seed):
    rng = random.Random(seed)
    for _ in range(50):
        a, a2, b = (_random_rational(rng) for _ in range(3))
        assert reciprocity_holds(QuaternionSymbolQ(squarefree_part(a), squarefree_part(b)))
        assert len(ramified_places(a, b)) % 2 == 0
        place = rng.choice([2, 3, 5, 7, 11, INF])
        assert hilbert_symbol(a * a2, b, place) == hilbert_symbol(a, b, place) * hilbert_symbol(a2, b, place)
        assert hilbert_symbol(a, b, place) == hilbert_symbol(b, a, place)


def _soluble_mod_prime_power(a, b, p):
    """z^2 = a x^2 + b y^2 has a primitive solution mod p^3 (mod 32 for p = 2)."""
    m = 32 if p == 2 else p**3
    roots = {}
    for z in range(m):
        roots.setdefault(z * z % m, set()).add(z % p != 0)
    for x in range(m):
        for y in range(m):
            units = roots.get((a * x * x + b * y * y) % m)
            if units and (x % p or y % p or True in units):
                return True
    return False


SQUAREFREE = [n for n in range(-30, 31) if n and squarefree_part(n) == n]


@pytest.mark.parametrize("seed", range(3))
def test_hilbert_symbol_matches_local_solubility(seed):
    rng = random.Random(seed)
    for _ in range(8):
        a, b = rng.choice(SQUAREFREE), rng.choice(SQUAREFREE)
        for p in (2, 3, 5, 7):
            expected = 1 if _soluble_mod_prime_power(a, b, p) else -1
            assert hilbert_symbol(a, b, p) == expected, (a, b, p)


def test_bad_inputs():
    with pytest.raises(PreconditionError):
        hilbert_symbol(0, 3, 2)
    with pytest.raises(PreconditionError):
        hilbert_symbol(2, 3, 4)
    with pytest.raises(PreconditionError):
        hilbert_symbol(2, 3, "p")


def test_quaternion_index_and_equality():
    assert quaternion_index_q(QuaternionSymbolQ(-1, -1)) == 2
    assert quaternion_index_q(QuaternionSymbolQ(1, 5)) == 1
    assert brauer_equal_q(QuaternionSymbolQ(2, 3), QuaternionSymbolQ(-1, 3))
    assert not brauer_equal_q(QuaternionSymbolQ(-1, -1), QuaternionSymbolQ(-1, 3))


# ------------------------------------------
# Br(R)[2]
# ------------------------------------------

def test_monomial_parse():
    assert MonomialElt.parse("-st") == MonomialElt(-1, 1, 1)
    assert MonomialElt.parse("s*t") == MonomialElt(1, 1, 1)
    assert str(MonomialElt.parse(" -1 ")) == "-1"
    with pytest.raises(ParseError):
        MonomialElt.parse("x")


def test_class_parse_and_text():
    assert RstClass.parse("e1+e4").bits == (1, 0, 0, 1)
    assert str(RstClass((0, 1, 1, 0))) == "e2+e3"
    assert RstClass.parse("0").is_zero()
    with pytest.raises(ParseError) as info:
        RstClass.parse("e1+e5")
    assert info.value.offset == 3


def test_basis_symbols():
    m1 = MonomialElt(-1)
    s, t = MonomialElt(1, 1, 0), MonomialElt(1, 0, 1)
    assert rst_symbol_to_class(m1, m1) == RstClass((1, 0, 0, 0))
    assert rst_symbol_to_class(m1, s) == RstClass((0, 1, 0, 0))
    assert rst_symbol_to_class(m1, t) == RstClass((0, 0, 1, 0))
    assert rst_symbol_to_class(s, t) == RstClass((0, 0, 0, 1))
    # (s, s) = (s, -1)
    assert rst_symbol_to_class(s, s) == rst_symbol_to_class(s, m1)


def test_symbol_is_bilinear_and_symmetric():
    monos = all_monomials()
    for a, b, c in product(monos, repeat=3):
        assert rst_symbol_to_class(a, b * c) == rst_symbol_to_class(a, b) + rst_symbol_to_class(a, c)
    for a, b in product(monos, repeat=2):
        assert rst_symbol_to_class(a, b) == rst_symbol_to_class(b, a)


def test_index_classification():
    assert rst_index_classify(RstClass()) == 1
    assert rst_index_classify(RstClass((0, 0, 0, 1))) == 2
    assert rst_index_classify(RstClass.parse("e1+e4")) == 4
    indices = [rst_index_classify(c) for c in all_classes()]
    assert len(indices) == 16
    assert indices.count(1) == 1
    assert set(indices) == {1, 2, 4}


def test_index_table_rows():
    rows = rst_index_table()
    assert len(rows) == 16
    for row in rows:
        assert (row["representative"] is None) == (row["index"] == 4)


def test_biquaternion_class_of_minus_one_and_st():
    m1 = MonomialElt(-1)
    cls = biquaternion_class(m1, m1, MonomialElt(1, 1, 0), MonomialElt(1, 0, 1))
    assert cls == RstClass.parse("e1+e4")


# ------------------------------------------
# anisotropy over power series fields
# ------------------------------------------

def test_albert_form_of_index_four_class_is_anisotropic():
    m1 = MonomialElt(-1)
    form = albert_form(m1, m1, MonomialElt(1, 1, 0), MonomialElt(1, 0, 1))
    assert str(form) == "<-1, -1, -1, -s, -t, s*t>"
    assert power_series_anisotropy(form, "R").status == "anisotropic"


def test_isotropic_pair_gives_witness():
    result = power_series_anisotropy(diagonal_form(1, -1, MonomialElt(1, 1, 0)), "Q")
    assert result.status == "isotropic_witness"
    assert result.witness == (1, 1, 0)


def test_residue_field_matters():
    form = diagonal_form(1, 1)
    assert power_series_anisotropy(form, "R").status == "anisotropic"
    assert power_series_anisotropy(form, "C").status == "isotropic_witness"
    assert power_series_anisotropy(diagonal_form(1, -2), "Q").status == "unknown"
    assert power_series_anisotropy(diagonal_form(1, -2), "R").status == "isotropic_witness"


def test_tangent_cone_is_anisotropic_over_real_laurent_series():
    result = power_series_anisotropy(tangent_cone_quadric().as_diagonal_form(), "R")
    assert result.status == "anisotropic"
    assert set(result.classes) == {(0, 0), (1, 0), (0, 1), (1, 1)}


def test_anisotropy_rejects_bad_input():
    with pytest.raises(PreconditionError):
        power_series_anisotropy(diagonal_form(1, 2), "F2")
    with pytest.raises(PreconditionError):
        power_series_anisotropy(diagonal_form(1, 0), "R")


def test_anisotropy_requires_reduced_exponents():
    form = DiagonalForm((DiagonalEntry(1), DiagonalEntry(-1, 2, 0)))
    with pytest.raises(PreconditionError):
        power_series_anisotropy(form, "R")


def test_albert_form_reduces_products_mod_squares():
    s = MonomialElt(1, 1, 0)
    form = albert_form(s, s, 1, 1)
    assert str(form) == "<s, s, -1, -1, -1, 1>"
    assert all(e.is_reduced() for e in form.entries)
    assert power_series_anisotropy(form, "R").status == "isotropic_witness"


def _sympy_value(x):
    if isinstance(x, Fraction):
        return sympy.Rational(x.numerator, x.denominator)
    return sympy.sympify(x)


def _form_at(form, witness):
    """Coefficient of each monomial s^i t^j in the form evaluated at the witness."""
    total = {}
    for entry, w in zip(form.entries, witness):
        key = (entry.es, entry.et)
        total[key] = total.get(key, 0) + _sympy_value(entry.coeff) * _sympy_value(w) ** 2
    return {key: sympy.simplify(value) for key, value in total.items()}


@pytest.mark.parametrize(
    "entries, field_",
    [
        ((1, -1, MonomialElt(1, 1, 0)), "Q"),
        ((1, 1), "C"),
        ((1, -2), "R"),
        ((2, -8), "Q"),
        ((1, 1, -2), "Q"),
        ((MonomialElt(1, 1, 0), 3, MonomialElt(-1, 1, 0)), "R"),
        ((MonomialElt(1, 1, 1), MonomialElt(1, 1, 1), 5), "C"),
    ],
)
def test_witness_is_a_zero_of_the_form(entries, field_):
    form = diagonal_form(*entries)
    result = power_series_anisotropy(form, field_)
    assert result.status == "isotropic_witness"
    assert any(result.witness)
    assert all(v == 0 for v in _form_at(form, result.witness).values())


def _bounded_zero(form, coeffs=range(-2, 3), powers=(0, 1)):
    """Nonzero vector of monomials c * s^i * t^j with the form vanishing, if any."""
    choices = [(0, 0, 0)] + [(c, i, j) for c in coeffs if c for i in powers for j in powers]
    for vec in product(choices, repeat=len(form.entries)):
        if not any(c for c, _, _ in vec):
            continue
        total = {}
        for entry, (c, i, j) in zip(form.entries, vec):
            if c:
                key = (entry.es + 2 * i, entry.et + 2 * j)
                total[key] = total.get(key, 0) + entry.coeff * c * c
        if all(v == 0 for v in total.values()):
            return vec
    return None


@pytest.mark.parametrize("seed", range(3))
def test_forms_with_a_found_zero_are_never_anisotropic(seed):
    rng = random.Random(seed)
    hits = 0
    for _ in range(20):
        entries = [
            DiagonalEntry(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(0, 1), rng.randint(0, 1))
            for _ in range(3)
        ]
        if rng.random() < 0.5:
            first = entries[0]
            entries[2] = DiagonalEntry(-first.coeff * rng.choice([1, 4]), first.es, first.et)
        form = diagonal_form(*entries)
        if _bounded_zero(form) is None:
            continue
        hits += 1
        for field_ in ("R", "C", "Q"):
            assert power_series_anisotropy(form, field_).status != "anisotropic", (str(form), field_)
    assert hits
