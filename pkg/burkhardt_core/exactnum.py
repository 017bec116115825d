# burkhardt_core/exactnum.py

import re
from dataclasses import dataclass
from fractions import Fraction

from sympy.ntheory.factor_ import core

from .errors import ParseError

# Rationals are plain fractions.Fraction values: always reduced, denominator > 0,
# text form "p/q" or "p".
Rational = Fraction

KUMMER_AMBIENT = ("s", "t")

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")
_CYCLO_RE = re.compile(
    r"^\s*(-?\d+(?:/\d+)?)\s*([+-])\s*(-?\d+(?:/\d+)?)\s*\*\s*z\s*$"
)


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ParseError(f"not a rational: {text!r}", 0, text)
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ParseError("zero denominator", text.index("/") + 1, text)
    return Fraction(num, den)


def squarefree_part(q) -> int:
    """
    Squarefree integer in the square class of the nonzero rational q.

    q = n/d is in the class of n*d; the sign is kept.
    """
    q = Fraction(q)
    if q == 0:
        raise ValueError("zero has no square class")
    n = abs(q.numerator) * q.denominator
    sf = int(core(n, 2)) if n > 1 else 1
    return sf if q > 0 else -sf


def rational_sign(q) -> int:
    q = Fraction(q)
    return (q > 0) - (q < 0)


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return None


@dataclass(frozen=True, eq=False)
class Cyclo3:
    """
    a + b*zeta with zeta^2 + zeta + 1 = 0.

    Values are immutable; a rational Cyclo3 compares and hashes like the
    Fraction it equals.
    """

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    # ------------------------------------------
    # construction / coercion
    # ------------------------------------------

    @classmethod
    def zeta(cls) -> "Cyclo3":
        return cls(0, 1)

    @classmethod
    def coerce(cls, x) -> "Cyclo3":
        if isinstance(x, Cyclo3):
            return x
        q = _as_fraction(x)
        if q is None:
            raise TypeError(f"cannot coerce {type(x).__name__} to Cyclo3")
        return cls(q, 0)

    @staticmethod
    def _other(x):
        if isinstance(x, Cyclo3):
            return x
        q = _as_fraction(x)
        return None if q is None else Cyclo3(q, 0)

    # ------------------------------------------
    # ring operations
    # ------------------------------------------

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Cyclo3(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return Cyclo3(-self.a, -self.b)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Cyclo3(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return cyclo_mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = Cyclo3(1, 0), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> "Cyclo3":
        return cyclo_conj(self)

    def norm(self) -> Fraction:
        return cyclo_norm(self)

    def inverse(self) -> "Cyclo3":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("Cyclo3 division by zero")
        c = self.conj()
        return Cyclo3(c.a / n, c.b / n)

    # ------------------------------------------
    # comparison / text
    # ------------------------------------------

    def is_rational(self) -> bool:
        return self.b == 0

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash(self.a) if self.b == 0 else hash((self.a, self.b))

    def __str__(self):
        return f"{self.a}+{self.b}*z"

    def __repr__(self):
        return f"Cyclo3({self})"

    @classmethod
    def parse(cls, text: str) -> "Cyclo3":
        m = _CYCLO_RE.match(text)
        if m is None:
            try:
                return cls(parse_rational(text), 0)
            except ParseError:
                raise ParseError(f"not a Cyclo3 value: {text!r}", 0, text) from None
        a = parse_rational(m.group(1))
        b = parse_rational(m.group(3))
        return cls(a, b if m.group(2) == "+" else -b)


def cyclo_mul(x: Cyclo3, y: Cyclo3) -> Cyclo3:
    # (a + b z)(c + d z) with z^2 = -z - 1
    ac = x.a * y.a
    bd = x.b * y.b
    return Cyclo3(ac - bd, x.a * y.b + x.b * y.a - bd)


def cyclo_conj(x: Cyclo3) -> Cyclo3:
    return Cyclo3(x.a - x.b, -x.b)


def cyclo_norm(x: Cyclo3) -> Fraction:
    return x.a * x.a - x.a * x.b + x.b * x.b


def as_cyclo(x) -> Cyclo3:
    return Cyclo3.coerce(x)


# ------------------------------------------
# KUMMER ALGEBRA over Q[s, t] with basis 1, √s, √t, √st
# ------------------------------------------

def _kummer_poly(x):
    from .multipoly import Polynomial

    if isinstance(x, Polynomial):
        if x.ambient != KUMMER_AMBIENT:
            raise ValueError(f"Kummer components live in Q{list(KUMMER_AMBIENT)}")
        return x
    return Polynomial.constant(KUMMER_AMBIENT, x)


def _s_and_t():
    from .multipoly import Polynomial

    return (
        Polynomial.variable(KUMMER_AMBIENT, "s"),
        Polynomial.variable(KUMMER_AMBIENT, "t"),
    )


@dataclass(frozen=True, eq=False)
class KummerCoeff:
    """c00 + c10*√s + c01*√t + c11*√st, components polynomials in s, t."""

    c00: object
    c10: object
    c01: object
    c11: object

    @classmethod
    def of(cls, c00=0, c10=0, c01=0, c11=0) -> "KummerCoeff":
        return cls(
            _kummer_poly(c00), _kummer_poly(c10), _kummer_poly(c01), _kummer_poly(c11)
        )

    @classmethod
    def sqrt_s(cls):
        return cls.of(c10=1)

    @classmethod
    def sqrt_t(cls):
        return cls.of(c01=1)

    @classmethod
    def sqrt_st(cls):
        return cls.of(c11=1)

    def components(self):
        return (self.c00, self.c10, self.c01, self.c11)

    def is_rational(self) -> bool:
        return not self.c10 and not self.c01 and not self.c11

    def _other(self, x):
        if isinstance(x, KummerCoeff):
            return x
        if isinstance(x, (int, Fraction)):
            return KummerCoeff.of(x)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return KummerCoeff(*(p + q for p, q in zip(self.components(), o.components())))

    __radd__ = __add__

    def __neg__(self):
        return KummerCoeff(*(-p for p in self.components()))

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return KummerCoeff(*(p * other for p in self.components()))
        if not isinstance(other, KummerCoeff):
            return NotImplemented
        return kummer_mul(self, other)

    __rmul__ = __mul__

    def __bool__(self):
        return any(bool(p) for p in self.components())

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return all(p == q for p, q in zip(self.components(), o.components()))

    def __hash__(self):
        return hash(tuple(str(p) for p in self.components()))

    def __str__(self):
        return f"[{self.c00}] + [{self.c10}]*√s + [{self.c01}]*√t + [{self.c11}]*√st"

    __repr__ = __str__


def kummer_mul(x: KummerCoeff, y: KummerCoeff) -> KummerCoeff:
    s, t = _s_and_t()
    a0, a1, a2, a3 = x.components()
    b0, b1, b2, b3 = y.components()
    c00 = a0 * b0 + s * (a1 * b1) + t * (a2 * b2) + (s * t) * (a3 * b3)
    # √t·√st = t√s and √s·√st = s√t
    c10 = a0 * b1 + a1 * b0 + t * (a2 * b3 + a3 * b2)
    c01 = a0 * b2 + a2 * b0 + s * (a1 * b3 + a3 * b1)
    c11 = a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1
    return KummerCoeff(c00, c10, c01, c11)
