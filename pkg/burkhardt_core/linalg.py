# burkhardt_core/linalg.py

from fractions import Fraction

from .errors import AmbientMismatchError, ConsistencyError
from .multipoly import Polynomial, grevlex_key


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(M):
    return [list(col) for col in zip(*M)]


def mat_mul(A, B):
    if len(A[0]) != len(B):
        raise AmbientMismatchError(f"cannot multiply {len(A)}x{len(A[0])} by {len(B)}x{len(B[0])}")
    cols = list(zip(*B))
    out = []
    for row in A:
        new_row = []
        for col in cols:
            total = Fraction(0)
            for a, b in zip(row, col):
                if a and b:
                    total = total + a * b
            new_row.append(total)
        out.append(new_row)
    return out


def mat_pow(A, k):
    result = identity(len(A))
    for _ in range(k):
        result = mat_mul(result, A)
    return result


def trace(A):
    total = Fraction(0)
    for i in range(len(A)):
        total = total + A[i][i]
    return total


def det(M):
    """
    Determinant by cofactor expansion along rows, memoized on the set of
    remaining columns. Works over any commutative ring (rationals, Cyclo3,
    polynomials).
    """
    n = len(M)
    if any(len(row) != n for row in M):
        raise AmbientMismatchError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    memo = {}

    def minor(row, cols):
        if row == n:
            return Fraction(1)
        if cols in memo:
            return memo[cols]
        total = Fraction(0)
        for pos, j in enumerate(cols):
            entry = M[row][j]
            if not entry:
                continue
            sub = minor(row + 1, cols[:pos] + cols[pos + 1:])
            if not sub:
                continue
            term = entry * sub
            total = total - term if pos % 2 else total + term
        memo[cols] = total
        return total

    return minor(0, tuple(range(n)))


def rank(M):
    """Rank over a field (Fraction or Cyclo3 entries) by Gaussian elimination."""
    rows = [list(r) for r in M]
    if not rows:
        return 0
    r = 0
    ncols = len(rows[0])
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c] if not isinstance(rows[r][c], int) else Fraction(1, rows[r][c])
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def span_coordinates(target: Polynomial, basis):
    """
    Coordinates of `target` in the span of the polynomials `basis`.

    Exact elimination over the coefficient field with pivot monomials.
    Returns (coords, residual); the residual is zero iff target lies in
    the span.
    """
    basis = list(basis)
    for b in basis:
        if b.ambient != target.ambient:
            raise AmbientMismatchError("span_coordinates needs a common ring")
    n = len(basis)
    # reduced rows: (polynomial, combination of original basis vectors, pivot monomial)
    reduced = []
    for k, b in enumerate(basis):
        vec = b
        combo = [Fraction(0)] * n
        combo[k] = Fraction(1)
        for poly, comb, piv in reduced:
            c = vec.terms.get(piv)
            if c:
                f = c / poly.terms[piv]
                vec = vec - poly * f
                combo = [x - f * y for x, y in zip(combo, comb)]
        if not vec:
            raise ConsistencyError(f"basis polynomial {k} is linearly dependent")
        piv = max(vec.terms, key=grevlex_key)
        reduced.append((vec, combo, piv))

    coords = [Fraction(0)] * n
    residual = target
    for poly, comb, piv in reduced:
        c = residual.terms.get(piv)
        if c:
            f = c / poly.terms[piv]
            residual = residual - poly * f
            coords = [x + f * y for x, y in zip(coords, comb)]
    return coords, residual
