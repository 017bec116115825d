# burkhardt_core/brauer.py

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

import sympy
from sympy.functions.combinatorial.numbers import legendre_symbol

from .errors import ParseError, PreconditionError
from .exactnum import squarefree_part

INF = "inf"


# ------------------------------------------
# QUATERNION SYMBOLS OVER Q
# ------------------------------------------

def _square_class_int(q) -> int:
    q = Fraction(q)
    if q == 0:
        raise PreconditionError("Hilbert symbols need nonzero entries")
    return q.numerator * q.denominator


def _normalize_place(place):
    if place in (INF, "∞", "oo", "infinity") or place == math.inf:
        return INF
    try:
        p = int(place)
    except (TypeError, ValueError):
        raise PreconditionError(f"{place!r} is neither a prime nor infinity") from None
    if p != place and str(p) != str(place):
        raise PreconditionError(f"{place!r} is neither a prime nor infinity")
    if not sympy.isprime(p):
        raise PreconditionError(f"{p} is not prime")
    return p


def _split_valuation(n: int, p: int):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def hilbert_symbol(a, b, place) -> int:
    """(a, b)_v in {1, -1} for nonzero rationals a, b and a place v of Q."""
    a = _square_class_int(a)
    b = _square_class_int(b)
    place = _normalize_place(place)
    if place == INF:
        return -1 if (a < 0 and b < 0) else 1
    p = place
    alpha, u = _split_valuation(a, p)
    beta, v = _split_valuation(b, p)
    if p == 2:
        def eps(x):
            return ((x - 1) // 2) % 2

        def omega(x):
            return ((x * x - 1) // 8) % 2

        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    if beta % 2:
        sign *= int(legendre_symbol(u % p, p))
    if alpha % 2:
        sign *= int(legendre_symbol(v % p, p))
    return sign


def relevant_places(a, b) -> list:
    n = abs(_square_class_int(a) * _square_class_int(b))
    primes = set(sympy.primefactors(n)) | {2}
    return sorted(primes) + [INF]


def local_symbols(a, b) -> dict:
    return {place: hilbert_symbol(a, b, place) for place in relevant_places(a, b)}


def ramified_places(a, b) -> list:
    return [place for place, sym in local_symbols(a, b).items() if sym == -1]


@dataclass(frozen=True)
class QuaternionSymbolQ:
    """(a, b) over Q with a, b squarefree nonzero integers."""

    a: int
    b: int

    def __post_init__(self):
        object.__setattr__(self, "a", squarefree_part(self.a))
        object.__setattr__(self, "b", squarefree_part(self.b))

    def local_symbols(self) -> dict:
        return local_symbols(self.a, self.b)

    def ramified_places(self) -> list:
        return ramified_places(self.a, self.b)

    def __str__(self):
        return f"({self.a},{self.b})"


def quaternion_index_q(sym: QuaternionSymbolQ) -> int:
    return 1 if all(v == 1 for v in sym.local_symbols().values()) else 2


def reciprocity_holds(sym: QuaternionSymbolQ) -> bool:
    return math.prod(sym.local_symbols().values()) == 1


def brauer_equal_q(sym1: QuaternionSymbolQ, sym2: QuaternionSymbolQ) -> bool:
    places = set(relevant_places(sym1.a, sym1.b)) | set(relevant_places(sym2.a, sym2.b))
    return all(
        hilbert_symbol(sym1.a, sym1.b, v) == hilbert_symbol(sym2.a, sym2.b, v) for v in places
    )


# ------------------------------------------
# Br(R)[2] FOR R = R[s, 1/s, t, 1/t]
# ------------------------------------------

_MONO_RE = re.compile(r"^\s*([+-]?)\s*(1|s|t|st|s\*t)\s*$")


@dataclass(frozen=True, order=True)
class MonomialElt:
    """±s^es t^et with es, et in {0, 1}: an element of <-1, s, t> mod squares."""

    sign: int = 1
    es: int = 0
    et: int = 0

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise PreconditionError("sign must be 1 or -1")
        object.__setattr__(self, "es", self.es % 2)
        object.__setattr__(self, "et", self.et % 2)

    def __mul__(self, other: "MonomialElt") -> "MonomialElt":
        return MonomialElt(self.sign * other.sign, self.es + other.es, self.et + other.et)

    def bits(self):
        return (int(self.sign < 0), self.es, self.et)

    @classmethod
    def parse(cls, text: str) -> "MonomialElt":
        m = _MONO_RE.match(text)
        if m is None:
            raise ParseError(f"not a monomial in -1, s, t: {text!r}", 0, text)
        body = m.group(2).replace("*", "")
        return cls(-1 if m.group(1) == "-" else 1, int("s" in body), int("t" in body))

    def __str__(self):
        body = ("s" if self.es else "") + ("t" if self.et else "")
        body = body or "1"
        return ("-" if self.sign < 0 else "") + body


def all_monomials() -> list:
    return [MonomialElt(sg, es, et) for sg, es, et in product((1, -1), (0, 1), (0, 1))]


@dataclass(frozen=True, order=True)
class RstClass:
    """
    F_2-vector in the basis e1 = (-1,-1), e2 = (-1,s), e3 = (-1,t), e4 = (s,t).
    """

    bits: tuple = (0, 0, 0, 0)

    def __post_init__(self):
        bits = tuple(int(b) % 2 for b in self.bits)
        if len(bits) != 4:
            raise PreconditionError("Br(R)[2] classes have four coordinates")
        object.__setattr__(self, "bits", bits)

    def __add__(self, other: "RstClass") -> "RstClass":
        return RstClass(tuple(x ^ y for x, y in zip(self.bits, other.bits)))

    def is_zero(self) -> bool:
        return not any(self.bits)

    @classmethod
    def parse(cls, text: str) -> "RstClass":
        body = text.strip()
        if body == "0":
            return cls()
        bits = [0, 0, 0, 0]
        pos = 0
        for part in text.split("+"):
            m = re.fullmatch(r"\s*e([1-4])\s*", part)
            if m is None:
                raise ParseError(f"bad basis element {part.strip()!r}", pos, text)
            bits[int(m.group(1)) - 1] ^= 1
            pos += len(part) + 1
        return cls(tuple(bits))

    def __str__(self):
        names = [f"e{i + 1}" for i, b in enumerate(self.bits) if b]
        return "+".join(names) if names else "0"


def all_classes() -> list:
    return [RstClass(bits) for bits in product((0, 1), repeat=4)]


def rst_symbol_to_class(a: MonomialElt, b: MonomialElt) -> RstClass:
    a0, a1, a2 = a.bits()
    b0, b1, b2 = b.bits()
    return RstClass(
        (
            a0 * b0,
            a0 * b1 + a1 * b0 + a1 * b1,
            a0 * b2 + a2 * b0 + a2 * b2,
            a1 * b2 + a2 * b1,
        )
    )


def biquaternion_class(a, b, c, d) -> RstClass:
    return rst_symbol_to_class(a, b) + rst_symbol_to_class(c, d)


@lru_cache(maxsize=1)
def _representable():
    reps = {}
    for a, b in product(all_monomials(), repeat=2):
        cls = rst_symbol_to_class(a, b)
        reps.setdefault(cls, (a, b))
    return reps


def representable_classes() -> dict:
    """Classes of the form (a, b) with a, b in <-1, s, t>, each with one representative."""
    return dict(_representable())


def rst_index_classify(c: RstClass) -> int:
    if c.is_zero():
        return 1
    return 2 if c in _representable() else 4


def rst_index_table() -> list:
    reps = _representable()
    rows = []
    for c in all_classes():
        rep = reps.get(c)
        rows.append(
            {
                "class": str(c),
                "index": rst_index_classify(c),
                "representative": f"({rep[0]},{rep[1]})" if rep else None,
            }
        )
    return rows


# ------------------------------------------
# DIAGONAL FORMS OVER R((s))((t))
# ------------------------------------------

@dataclass(frozen=True)
class DiagonalEntry:
    """coeff * s^es * t^et."""

    coeff: Fraction
    es: int = 0
    et: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coeff", Fraction(self.coeff))

    @classmethod
    def of(cls, x) -> "DiagonalEntry":
        if isinstance(x, DiagonalEntry):
            return x
        if isinstance(x, MonomialElt):
            return cls(Fraction(x.sign), x.es, x.et)
        return cls(Fraction(x))

    def __mul__(self, other):
        other = DiagonalEntry.of(other)
        return DiagonalEntry(self.coeff * other.coeff, self.es + other.es, self.et + other.et)

    def __neg__(self):
        return DiagonalEntry(-self.coeff, self.es, self.et)

    def parity(self):
        return (self.es % 2, self.et % 2)

    def is_reduced(self) -> bool:
        return self.es in (0, 1) and self.et in (0, 1)

    def reduced(self) -> "DiagonalEntry":
        """Same square class with exponents in {0, 1}."""
        return DiagonalEntry(self.coeff, self.es % 2, self.et % 2)

    def __str__(self):
        mono = "*".join(
            f"{v}^{e}" if e > 1 else v for v, e in (("s", self.es), ("t", self.et)) if e
        )
        if not mono:
            return str(self.coeff)
        if self.coeff == 1:
            return mono
        if self.coeff == -1:
            return "-" + mono
        return f"{self.coeff}*{mono}"


@dataclass(frozen=True)
class DiagonalForm:
    entries: tuple

    def __str__(self):
        return "<" + ", ".join(str(e) for e in self.entries) + ">"

    def __len__(self):
        return len(self.entries)


def diagonal_form(*entries) -> DiagonalForm:
    return DiagonalForm(tuple(DiagonalEntry.of(e) for e in entries))


def albert_form(a, b, c, d) -> DiagonalForm:
    """<a, b, -ab, -c, -d, cd> with exponents reduced mod 2: anisotropic iff (a,b) ⊗ (c,d) has index 4."""
    a, b, c, d = (DiagonalEntry.of(x) for x in (a, b, c, d))
    entries = (a, b, -(a * b), -c, -d, c * d)
    return DiagonalForm(tuple(e.reduced() for e in entries))


@dataclass(frozen=True)
class AnisotropyResult:
    status: str  # "anisotropic" | "isotropic_witness" | "unknown"
    witness: tuple | None
    classes: dict

    def as_dict(self):
        return {
            "status": self.status,
            "witness": None if self.witness is None else [str(w) for w in self.witness],
            "classes": {f"{k[0]}{k[1]}": [str(c) for c in v] for k, v in self.classes.items()},
        }


def _rational_sqrt(q: Fraction):
    if q < 0:
        return None
    num, den = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if num * num == q.numerator and den * den == q.denominator:
        return Fraction(num, den)
    return None


def _pair_witness(ci, cj):
    """Rational (ui, uj) != 0 with ci ui^2 + cj uj^2 = 0, if any."""
    root = _rational_sqrt(-cj / ci)
    if root is None:
        return None
    return root.numerator, root.denominator


def _small_search(coeffs, bound=10):
    rng = range(-bound, bound + 1)
    for vec in product(rng, repeat=len(coeffs)):
        if any(vec) and sum(c * v * v for c, v in zip(coeffs, vec)) == 0:
            return vec
    return None


def _class_witness(coeffs, residue_field):
    """Witness on one parity class, or None if that constant subform is anisotropic."""
    n = len(coeffs)
    if n == 1:
        return None, True
    for i, j in combinations(range(n), 2):
        pair = _pair_witness(coeffs[i], coeffs[j])
        if pair is not None:
            vec = [Fraction(0)] * n
            vec[i], vec[j] = Fraction(pair[0]), Fraction(pair[1])
            return tuple(vec), True
    if residue_field == "C":
        vec = [0] * n
        vec[0] = sympy.Integer(1)
        vec[1] = sympy.sqrt(sympy.Rational(-coeffs[0]) / sympy.Rational(coeffs[1]))
        return tuple(vec), True
    positive = [i for i, c in enumerate(coeffs) if c > 0]
    negative = [i for i, c in enumerate(coeffs) if c < 0]
    if not positive or not negative:
        return None, True
    if residue_field == "R":
        i, j = positive[0], negative[0]
        vec = [sympy.Integer(0)] * n
        vec[i] = sympy.sqrt(sympy.Rational(-coeffs[j]))
        vec[j] = sympy.sqrt(sympy.Rational(coeffs[i]))
        return tuple(vec), True
    # residue field Q, indefinite: only a bounded search
    if n <= 4:
        found = _small_search([coeffs[k] for k in range(n)])
        if found is not None:
            return tuple(Fraction(x) for x in found), True
    return None, False


def power_series_anisotropy(f: DiagonalForm, residue_field: str = "R") -> AnisotropyResult:
    """
    Decide isotropy of sum c_i s^a_i t^b_i u_i^2 over K((s))((t)), K the residue
    field ("R", "C" or "Q"), by grouping entries by exponent parity. Exponents must
    be 0 or 1, so entries of one class share a monomial and the witness is an
    exact zero of the form.
    """
    if residue_field not in ("R", "C", "Q"):
        raise PreconditionError(f"unsupported residue field {residue_field!r}")
    classes = {}
    for idx, e in enumerate(f.entries):
        if e.coeff == 0:
            raise PreconditionError("diagonal entries must be nonzero")
        if not e.is_reduced():
            raise PreconditionError(f"entry {e} must have exponents reduced mod 2")
        classes.setdefault(e.parity(), []).append((idx, e.coeff))
    decided = True
    for parity, members in sorted(classes.items()):
        coeffs = [c for _, c in members]
        vec, known = _class_witness(coeffs, residue_field)
        if vec is not None:
            witness = [Fraction(0)] * len(f.entries)
            for (idx, _), value in zip(members, vec):
                witness[idx] = value
            return AnisotropyResult(
                "isotropic_witness",
                tuple(witness),
                {k: [c for _, c in v] for k, v in classes.items()},
            )
        decided = decided and known
    return AnisotropyResult(
        "anisotropic" if decided else "unknown",
        None,
        {k: [c for _, c in v] for k, v in classes.items()},
    )
