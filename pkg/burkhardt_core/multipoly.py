# burkhardt_core/multipoly.py

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial

import sympy

from .errors import (
    AmbientMismatchError,
    NotSymmetricError,
    ParseError,
    RelationError,
    UnknownVariableError,
)
from .exactnum import Cyclo3

Monomial = tuple


def _normalize_coeff(c):
    if isinstance(c, int) and not isinstance(c, bool):
        return Fraction(c)
    return c


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, Cyclo3)) and not isinstance(x, bool)


def _is_coefficient(x) -> bool:
    # any ring element that is not itself a polynomial or a container
    if isinstance(x, (Polynomial, list, tuple, dict, str, bool, float, complex)) or x is None:
        return False
    return hasattr(x, "__add__") and hasattr(x, "__mul__")


def _add_exps(e1, e2):
    return tuple(a + b for a, b in zip(e1, e2))


def grevlex_key(exps):
    return (sum(exps), tuple(-x for x in reversed(exps)))


def _scalar_inverse(c):
    if isinstance(c, int):
        return Fraction(1, c)
    return 1 / c


class Polynomial:
    """
    Sparse multivariate polynomial over an exact coefficient ring.

    `ambient` is the ordered tuple of variable names; `terms` maps exponent
    tuples to nonzero coefficients (Fraction, Cyclo3, KummerCoeff or any other
    ring element supporting + and *).
    """

    __slots__ = ("ambient", "terms")

    def __init__(self, ambient, terms=None):
        self.ambient = tuple(ambient)
        self.terms = {}
        n = len(self.ambient)
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != n:
                raise AmbientMismatchError(
                    f"monomial {exps} has {len(exps)} exponents, ring has {n} variables"
                )
            c = _normalize_coeff(c)
            acc = self.terms.get(exps)
            c = c if acc is None else acc + c
            if c:
                self.terms[exps] = c
            else:
                self.terms.pop(exps, None)

    @classmethod
    def _raw(cls, ambient, terms):
        p = cls.__new__(cls)
        p.ambient = ambient
        p.terms = terms
        return p

    # ------------------------------------------
    # construction
    # ------------------------------------------

    @classmethod
    def zero(cls, ambient):
        return cls(ambient)

    @classmethod
    def constant(cls, ambient, c):
        ambient = tuple(ambient)
        return cls(ambient, {(0,) * len(ambient): c})

    @classmethod
    def one(cls, ambient):
        return cls.constant(ambient, 1)

    @classmethod
    def variable(cls, ambient, name):
        ambient = tuple(ambient)
        if name not in ambient:
            raise UnknownVariableError(f"{name!r} is not in {list(ambient)}")
        exps = tuple(1 if v == name else 0 for v in ambient)
        return cls(ambient, {exps: 1})

    @classmethod
    def from_terms(cls, ambient, pairs):
        """Build from (coefficient, {name: exponent}) pairs."""
        ambient = tuple(ambient)
        index = {v: i for i, v in enumerate(ambient)}
        terms = {}
        for c, powers in pairs:
            exps = [0] * len(ambient)
            for name, e in powers.items():
                if name not in index:
                    raise UnknownVariableError(f"{name!r} is not in {list(ambient)}")
                exps[index[name]] += e
            key = tuple(exps)
            terms[key] = terms.get(key, 0) + c
        return cls(ambient, terms)

    def index_of(self, name) -> int:
        try:
            return self.ambient.index(name)
        except ValueError:
            raise UnknownVariableError(f"{name!r} is not in {list(self.ambient)}") from None

    # ------------------------------------------
    # arithmetic
    # ------------------------------------------

    def _check_ring(self, other):
        if self.ambient != other.ambient:
            raise AmbientMismatchError(
                f"ring mismatch: {list(self.ambient)} vs {list(other.ambient)}"
            )

    def _lift(self, other):
        if isinstance(other, Polynomial):
            self._check_ring(other)
            return other
        if not _is_coefficient(other):
            return None
        return Polynomial.constant(self.ambient, other)

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for exps, c in o.terms.items():
            acc = terms.get(exps)
            c = c if acc is None else acc + c
            if c:
                terms[exps] = c
            else:
                terms.pop(exps, None)
        return Polynomial._raw(self.ambient, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ambient, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial) and not _is_coefficient(other):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            self._check_ring(other)
            terms = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = _add_exps(e1, e2)
                    acc = terms.get(e)
                    prod = c1 * c2
                    terms[e] = prod if acc is None else acc + prod
            return Polynomial._raw(self.ambient, {e: c for e, c in terms.items() if c})
        if not _is_coefficient(other):
            return NotImplemented
        other = _normalize_coeff(other)
        if not other:
            return Polynomial._raw(self.ambient, {})
        terms = {}
        for e, c in self.terms.items():
            prod = c * other
            if prod:
                terms[e] = prod
        return Polynomial._raw(self.ambient, terms)

    def __rmul__(self, other):
        if not _is_coefficient(other):
            return NotImplemented
        other = _normalize_coeff(other)
        if not other:
            return Polynomial._raw(self.ambient, {})
        terms = {}
        for e, c in self.terms.items():
            prod = other * c
            if prod:
                terms[e] = prod
        return Polynomial._raw(self.ambient, terms)

    def __truediv__(self, other):
        if isinstance(other, Polynomial):
            return NotImplemented
        return self * _scalar_inverse(other)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers need a non-negative integer exponent")
        result = Polynomial.one(self.ambient)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ambient == other.ambient and self.terms == other.terms
        if _is_scalar(other):
            if not other:
                return not self.terms
            zero = (0,) * len(self.ambient)
            return len(self.terms) == 1 and self.terms.get(zero) == other
        return NotImplemented

    __hash__ = None

    # ------------------------------------------
    # inspection
    # ------------------------------------------

    def _indices(self, variables):
        if variables is None:
            return range(len(self.ambient))
        return [self.index_of(v) for v in variables]

    def total_degree(self, variables=None) -> int:
        """Largest total degree in `variables` (all by default); -1 for zero."""
        idx = self._indices(variables)
        if not self.terms:
            return -1
        return max(sum(e[i] for i in idx) for e in self.terms)

    degree = total_degree

    def degree_in(self, name) -> int:
        i = self.index_of(name)
        return max((e[i] for e in self.terms), default=-1)

    def homogeneous_components(self, variables=None) -> dict:
        idx = self._indices(variables)
        parts = {}
        for e, c in self.terms.items():
            d = sum(e[i] for i in idx)
            parts.setdefault(d, {})[e] = c
        return {d: Polynomial._raw(self.ambient, t) for d, t in sorted(parts.items())}

    def is_homogeneous(self, degree=None, variables=None) -> bool:
        parts = self.homogeneous_components(variables)
        if not parts:
            return True
        if len(parts) != 1:
            return False
        return degree is None or next(iter(parts)) == degree

    def coefficient(self, exps):
        if isinstance(exps, dict):
            full = [0] * len(self.ambient)
            for name, e in exps.items():
                full[self.index_of(name)] = e
            exps = tuple(full)
        return self.terms.get(tuple(exps), Fraction(0))

    def coefficients_in(self, variables) -> dict:
        """
        Split into monomials in `variables`.

        Returns {exponents over variables: coefficient polynomial}; the
        coefficients live in the same ambient ring with `variables` absent.
        """
        idx = [self.index_of(v) for v in variables]
        out = {}
        for e, c in self.terms.items():
            key = tuple(e[i] for i in idx)
            rest = list(e)
            for i in idx:
                rest[i] = 0
            out.setdefault(key, {})[tuple(rest)] = c
        return {k: Polynomial._raw(self.ambient, t) for k, t in out.items()}

    def variables_used(self):
        used = set()
        for e in self.terms:
            used.update(i for i, x in enumerate(e) if x)
        return tuple(self.ambient[i] for i in sorted(used))

    def is_constant(self) -> bool:
        zero = (0,) * len(self.ambient)
        return all(e == zero for e in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get((0,) * len(self.ambient), Fraction(0))

    def map_coefficients(self, fn):
        return Polynomial(self.ambient, {e: fn(c) for e, c in self.terms.items()})

    # ------------------------------------------
    # calculus
    # ------------------------------------------

    def partial_derivative(self, var):
        i = self.index_of(var)
        terms = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                d = list(e)
                d[i] = k - 1
                terms[tuple(d)] = c * k
        return Polynomial._raw(self.ambient, terms)

    def directional_derivative(self, direction, variables):
        if len(direction) != len(variables):
            raise AmbientMismatchError("direction and variable list differ in length")
        out = Polynomial.zero(self.ambient)
        for d, v in zip(direction, variables):
            if d:
                out = out + self.partial_derivative(v) * d
        return out

    def gradient(self, variables):
        return [self.partial_derivative(v) for v in variables]

    # ------------------------------------------
    # evaluation / substitution
    # ------------------------------------------

    def evaluate(self, point):
        """Exact value at a full point (one value per ambient variable)."""
        if len(point) != len(self.ambient):
            raise AmbientMismatchError(
                f"point has {len(point)} coordinates, ring has {len(self.ambient)} variables"
            )
        point = [_normalize_coeff(x) for x in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term = term * x**k
            total = total + term
        return total

    def specialize(self, values: dict):
        """Partial evaluation: variables in `values` are set, ring unchanged."""
        idx = {self.index_of(name): _normalize_coeff(v) for name, v in values.items()}
        terms = {}
        for e, c in self.terms.items():
            coef = c
            d = list(e)
            for i, x in idx.items():
                if e[i]:
                    coef = coef * x ** e[i]
                    d[i] = 0
            if not coef:
                continue
            d = tuple(d)
            acc = terms.get(d)
            coef = coef if acc is None else acc + coef
            if coef:
                terms[d] = coef
            else:
                terms.pop(d, None)
        return Polynomial._raw(self.ambient, terms)

    def substitute(self, images: dict, ambient=None):
        """
        Compose with `images` (name -> Polynomial in the target ring).

        Variables without an image map to the same-named variable of the
        target ring.
        """
        if ambient is None:
            rings = {img.ambient for img in images.values() if isinstance(img, Polynomial)}
            if len(rings) != 1:
                raise AmbientMismatchError("cannot infer the target ring of the substitution")
            ambient = rings.pop()
        ambient = tuple(ambient)
        gens = []
        for name in self.ambient:
            if name in images:
                img = images[name]
                if not isinstance(img, Polynomial):
                    img = Polynomial.constant(ambient, img)
                elif img.ambient != ambient:
                    raise AmbientMismatchError(
                        f"image of {name!r} lives in {list(img.ambient)}, expected {list(ambient)}"
                    )
                gens.append(img)
            elif name in ambient:
                gens.append(Polynomial.variable(ambient, name))
            else:
                raise UnknownVariableError(f"no image for {name!r}")
        powers = [{0: Polynomial.one(ambient), 1: g} for g in gens]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * gens[i]
            return cache[k]

        acc = {}
        for e, c in self.terms.items():
            term = None
            for i, k in enumerate(e):
                if k:
                    term = power(i, k) if term is None else term * power(i, k)
            if term is None:
                term = Polynomial.one(ambient)
            for te, tc in term.terms.items():
                prod = c * tc
                prev = acc.get(te)
                acc[te] = prod if prev is None else prev + prod
        return Polynomial._raw(ambient, {e: c for e, c in acc.items() if c})

    def substitute_linear(self, m: "LinearMap"):
        if not set(m.target_vars) <= set(self.ambient):
            raise AmbientMismatchError(
                f"map targets {list(m.target_vars)}, polynomial lives in {list(self.ambient)}"
            )
        ring = tuple(m.source_vars) + tuple(
            v for v in self.ambient if v not in m.target_vars and v not in m.source_vars
        )
        images = {}
        for i, name in enumerate(m.target_vars):
            form = Polynomial.zero(ring)
            for j, src in enumerate(m.source_vars):
                if m.matrix[i][j]:
                    form = form + Polynomial.variable(ring, src) * m.matrix[i][j]
            images[name] = form
        return self.substitute(images, ring)

    def reduce_by_relation(self, lead_var, relation):
        """
        Rewrite lead_var^2 by the tail of `relation` = lead_var^2 - tail until
        the lead_var degree is below 2.
        """
        self._check_ring(relation)
        i = self.index_of(lead_var)
        square = tuple(2 if j == i else 0 for j in range(len(self.ambient)))
        if relation.terms.get(square) != 1 or any(
            e[i] >= 2 for e in relation.terms if e != square
        ):
            raise RelationError(f"relation is not monic in {lead_var}^2: {relation}")
        tail = Polynomial.variable(self.ambient, lead_var) ** 2 - relation
        current = self
        tail_powers = {0: Polynomial.one(self.ambient), 1: tail}
        while any(e[i] >= 2 for e in current.terms):
            acc = Polynomial.zero(self.ambient)
            for e, c in current.terms.items():
                q, r = divmod(e[i], 2)
                low = list(e)
                low[i] = r
                mono = Polynomial._raw(self.ambient, {tuple(low): c})
                if q:
                    if q not in tail_powers:
                        tail_powers[q] = tail**q
                    mono = mono * tail_powers[q]
                acc = acc + mono
            current = acc
        return current

    # ------------------------------------------
    # rings
    # ------------------------------------------

    def extend_ambient(self, ambient):
        ambient = tuple(ambient)
        missing = [v for v in self.ambient if v not in ambient]
        if missing:
            raise AmbientMismatchError(f"{missing} missing from {list(ambient)}")
        pos = [ambient.index(v) for v in self.ambient]
        terms = {}
        for e, c in self.terms.items():
            d = [0] * len(ambient)
            for k, p in zip(e, pos):
                d[p] = k
            terms[tuple(d)] = c
        return Polynomial._raw(ambient, terms)

    def restrict_ambient(self, ambient):
        ambient = tuple(ambient)
        used = self.variables_used()
        dropped = [v for v in used if v not in ambient]
        if dropped:
            raise AmbientMismatchError(f"{dropped} still occur in {self}")
        pos = [self.ambient.index(v) if v in self.ambient else None for v in ambient]
        terms = {}
        for e, c in self.terms.items():
            terms[tuple(e[p] if p is not None else 0 for p in pos)] = c
        return Polynomial._raw(ambient, terms)

    def rename(self, mapping: dict):
        return Polynomial._raw(
            tuple(mapping.get(v, v) for v in self.ambient), dict(self.terms)
        )

    # ------------------------------------------
    # sympy bridge
    # ------------------------------------------

    def to_sympy(self):
        syms = [sympy.Symbol(v) for v in self.ambient]
        zeta = sympy.Rational(-1, 2) + sympy.sqrt(-3) / 2
        expr = sympy.Integer(0)
        for e, c in self.terms.items():
            if isinstance(c, Fraction):
                coef = sympy.Rational(c.numerator, c.denominator)
            elif isinstance(c, Cyclo3):
                coef = sympy.Rational(c.a.numerator, c.a.denominator) + sympy.Rational(
                    c.b.numerator, c.b.denominator
                ) * zeta
            else:
                raise TypeError(f"cannot convert coefficient {c!r} to sympy")
            mono = sympy.Integer(1)
            for s, k in zip(syms, e):
                if k:
                    mono *= s**k
            expr += coef * mono
        return expr

    @classmethod
    def from_sympy(cls, expr, ambient):
        ambient = tuple(ambient)
        syms = [sympy.Symbol(v) for v in ambient]
        expr = sympy.expand(expr)
        if expr == 0:
            return cls.zero(ambient)
        if not syms:
            return cls.constant(ambient, _sympy_rational(sympy.Rational(expr)))
        terms = {}
        for exps, c in sympy.Poly(expr, *syms).terms():
            terms[tuple(exps)] = _sympy_rational(c)
        return cls(ambient, terms)

    # ------------------------------------------
    # text
    # ------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=grevlex_key, reverse=True):
            parts.append(_format_term(self.terms[e], e, self.ambient))
        return " + ".join(parts)

    def __repr__(self):
        return f"Polynomial({self})"

    @classmethod
    def parse(cls, text, ambient=None):
        return parse_polynomial(text, ambient)


def _sympy_rational(c):
    if not c.is_Rational:
        raise ValueError(f"non-rational coefficient {c} from sympy")
    return Fraction(int(c.p), int(c.q))


def _format_coeff(c):
    if isinstance(c, Cyclo3):
        return f"({c})"
    return str(c)


def _format_term(c, exps, ambient):
    factors = []
    for name, k in zip(ambient, exps):
        if k == 1:
            factors.append(name)
        elif k:
            factors.append(f"{name}^{k}")
    if not factors:
        return _format_coeff(c)
    mono = "*".join(factors)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{_format_coeff(c)}*{mono}"


# ------------------------------------------
# PARSER
# ------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(.))", re.DOTALL)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            tokens.append(("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3), text)
            tokens.append(("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _PolyParser:
    def __init__(self, text, ambient):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.ambient = tuple(ambient)
        self.index = {v: k for k, v in enumerate(self.ambient)}

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, val):
        kind, got, off = self.take()
        if got != val:
            raise ParseError(f"expected {val!r}", off, self.text)

    def fail(self, msg):
        raise ParseError(msg, self.peek()[2], self.text)

    def parse(self):
        acc = {}
        sign = 1
        kind, val, _ = self.peek()
        if val in "+-" and kind == "op":
            self.take()
            sign = -1 if val == "-" else 1
        self._term_into(acc, sign)
        while True:
            kind, val, _ = self.peek()
            if kind == "end":
                break
            if kind == "op" and val in "+-":
                self.take()
                self._term_into(acc, -1 if val == "-" else 1)
            else:
                self.fail(f"unexpected {val!r}")
        return Polynomial(self.ambient, acc)

    def _term_into(self, acc, sign):
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.take()
            sign = -sign
        coef_box = [Fraction(sign)]
        exps = [0] * len(self.ambient)
        self._factor(exps, coef_box)
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            self._factor(exps, coef_box)
        key = tuple(exps)
        acc[key] = acc.get(key, 0) + coef_box[0]

    def _factor(self, exps, coef_box):
        kind, val, off = self.take()
        if kind == "num":
            coef_box[0] = coef_box[0] * _parse_number(val)
        elif kind == "op" and val == "(":
            coef_box[0] = coef_box[0] * self._cyclo()
        elif kind == "name":
            if val not in self.index:
                raise ParseError(f"unknown variable {val!r}", off, self.text)
            k = 1
            if self.peek()[1] == "^":
                self.take()
                kind2, num, off2 = self.take()
                if kind2 != "num" or "/" in num:
                    raise ParseError("exponent must be a non-negative integer", off2, self.text)
                k = int(num)
            exps[self.index[val]] += k
        else:
            raise ParseError(f"unexpected {val!r}" if val else "unexpected end of input", off, self.text)

    def _signed_number(self):
        sign = 1
        if self.peek()[1] == "-":
            self.take()
            sign = -1
        kind, val, off = self.take()
        if kind != "num":
            raise ParseError("expected a number", off, self.text)
        return sign * _parse_number(val)

    def _cyclo(self):
        a = self._signed_number()
        if self.peek()[1] == ")":
            self.take()
            return a
        kind, op, off = self.take()
        if op not in "+-" or kind != "op":
            raise ParseError("expected '+' or '-' in a Cyclo3 coefficient", off, self.text)
        b = self._signed_number()
        if op == "-":
            b = -b
        self.expect("*")
        kind, name, off = self.take()
        if name != "z":
            raise ParseError("expected the unit 'z'", off, self.text)
        self.expect(")")
        return Cyclo3(a, b)


def _parse_number(val):
    if "/" in val:
        num, den = val.split("/")
        if int(den) == 0:
            raise ZeroDivisionError("zero denominator")
        return Fraction(int(num), int(den))
    return Fraction(int(val))


def parse_polynomial(text: str, ambient=None) -> Polynomial:
    """
    Parse the printed form back into a Polynomial.

    Without `ambient` the variables are taken in order of first appearance.
    """
    if ambient is None:
        ambient = _infer_ambient(text)
    return _PolyParser(text, ambient).parse()


def _infer_ambient(text):
    names = []
    depth = 0
    for kind, val, _ in _tokenize(text):
        if kind == "op" and val == "(":
            depth += 1
        elif kind == "op" and val == ")":
            depth -= 1
        elif kind == "name" and depth == 0 and val not in names:
            names.append(val)
    return tuple(names)


# ------------------------------------------
# LINEAR MAPS
# ------------------------------------------

@dataclass(frozen=True)
class LinearMap:
    """
    target_vars[i] = sum_j matrix[i][j] * source_vars[j].
    """

    matrix: tuple
    source_vars: tuple
    target_vars: tuple

    def __post_init__(self):
        rows = tuple(tuple(_normalize_coeff(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", rows)
        object.__setattr__(self, "source_vars", tuple(self.source_vars))
        object.__setattr__(self, "target_vars", tuple(self.target_vars))
        if len(rows) != len(self.target_vars) or any(
            len(r) != len(self.source_vars) for r in rows
        ):
            raise AmbientMismatchError(
                f"matrix shape does not match {len(self.target_vars)}x{len(self.source_vars)}"
            )

    def compose(self, inner: "LinearMap") -> "LinearMap":
        """self ∘ inner: substitute by self first, then by inner."""
        if tuple(inner.target_vars) != tuple(self.source_vars):
            raise AmbientMismatchError("maps do not compose")
        from .linalg import mat_mul

        return LinearMap(mat_mul(self.matrix, inner.matrix), inner.source_vars, self.target_vars)


def substitute_linear(p: Polynomial, m: LinearMap) -> Polynomial:
    return p.substitute_linear(m)


def partial_derivative(p: Polynomial, var) -> Polynomial:
    return p.partial_derivative(var)


def evaluate_point(p: Polynomial, pt):
    return p.evaluate(pt)


def reduce_by_relation(p: Polynomial, lead_var, relation) -> Polynomial:
    return p.reduce_by_relation(lead_var, relation)


def directional_derivative(p: Polynomial, direction, variables) -> Polynomial:
    return p.directional_derivative(direction, variables)


def poly_arith(p, q, op: str):
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "pow":
        return p**q
    raise ValueError(f"unknown operation {op!r}")


# ------------------------------------------
# SYMMETRIC FUNCTIONS
# ------------------------------------------

def elementary_symmetric(ambient, k) -> Polynomial:
    ambient = tuple(ambient)
    n = len(ambient)
    terms = {}
    for subset in combinations(range(n), k):
        e = [0] * n
        for i in subset:
            e[i] = 1
        terms[tuple(e)] = Fraction(1)
    return Polynomial(ambient, terms)


def _swap(p: Polynomial, i, j) -> Polynomial:
    terms = {}
    for e, c in p.terms.items():
        d = list(e)
        d[i], d[j] = d[j], d[i]
        terms[tuple(d)] = c
    return Polynomial._raw(p.ambient, terms)


def symmetric_reduce(p: Polynomial, names=None) -> Polynomial:
    """
    Write a symmetric polynomial in its ambient variables as a polynomial
    in the elementary symmetric functions e1..en (ring `names`).
    """
    n = len(p.ambient)
    names = tuple(names or (f"e{k}" for k in range(1, n + 1)))
    if len(names) != n:
        raise AmbientMismatchError("need one elementary-function name per variable")
    for i in range(n - 1):
        if _swap(p, i, i + 1) != p:
            raise NotSymmetricError(
                f"not invariant under {p.ambient[i]} <-> {p.ambient[i + 1]}"
            )

    elem = [elementary_symmetric(p.ambient, k) for k in range(1, n + 1)]
    power_cache = {}

    def e_power(k, d):
        if d == 0:
            return None
        key = (k, d)
        if key not in power_cache:
            prev = e_power(k, d - 1)
            power_cache[key] = elem[k] if prev is None else prev * elem[k]
        return power_cache[key]

    result = {}
    rem = p
    while rem:
        lead = max(rem.terms)
        c = rem.terms[lead]
        if any(lead[k] < lead[k + 1] for k in range(n - 1)):
            raise NotSymmetricError(f"leading monomial {lead} is not a partition")
        d = tuple(lead[k] - (lead[k + 1] if k + 1 < n else 0) for k in range(n))
        result[d] = result.get(d, 0) + c
        prod = None
        for k, dk in enumerate(d):
            pk = e_power(k, dk)
            if pk is not None:
                prod = pk if prod is None else prod * pk
        if prod is None:
            prod = Polynomial.one(p.ambient)
        rem = rem - prod * c
    return Polynomial(names, result)


def expand_elementary(q: Polynomial, ambient) -> Polynomial:
    """Inverse of symmetric_reduce: substitute e_k by the k-th elementary polynomial."""
    ambient = tuple(ambient)
    images = {name: elementary_symmetric(ambient, k + 1) for k, name in enumerate(q.ambient)}
    return q.substitute(images, ambient)


def power_sums_from_monic(coeffs, count) -> list:
    """
    Power sums p_0..p_count of the roots of T^n + c_{n-1} T^{n-1} + ... + c_0,
    with coeffs = (c_0, ..., c_{n-1}). Works over any commutative ring.
    """
    n = len(coeffs)
    e = [Fraction(1)] + [(-1) ** k * _normalize_coeff(coeffs[n - k]) for k in range(1, n + 1)]
    p = [Fraction(n)]
    for k in range(1, count + 1):
        total = Fraction(0)
        if k <= n:
            total = total + (-1) ** (k - 1) * k * e[k]
        for i in range(1, min(k - 1, n) + 1):
            total = total + (-1) ** (i - 1) * e[i] * p[k - i]
        p.append(total)
    return p


def elementary_from_power_sums(P) -> list:
    """
    e_0..e_m from power sums P[1..m] (P[0] is ignored). Entries may be
    rationals or polynomials.
    """
    m = len(P) - 1
    e = [Fraction(1)]
    for k in range(1, m + 1):
        total = None
        for i in range(1, k + 1):
            term = P[i] * e[k - i]
            if i % 2 == 0:
                term = -term
            total = term if total is None else total + term
        e.append(total * Fraction(1, k))
    return e


def multinomial(k, parts) -> int:
    out = factorial(k)
    for m in parts:
        out //= factorial(m)
    return out
