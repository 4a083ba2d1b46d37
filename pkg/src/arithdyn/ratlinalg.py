"""Small exact linear-algebra toolkit over the rationals.

Matrices are lists of rows of Fractions.  Everything here is exact; no
floating point.  Sizes are tiny (ranks <= ~10), so plain Gaussian
elimination with Fractions is entirely adequate.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import DegenerateError, InputError

Mat = list  # list[list[Fraction]]
Vec = list  # list[Fraction]


def parse_rational(v) -> Fraction:
    """Accept int, Fraction, or a "p/q" / "p" string."""
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v)
        except (ValueError, ZeroDivisionError) as e:
            raise InputError(f"bad rational literal {v!r}: {e}") from None
    if isinstance(v, float):
        raise InputError(f"refusing float {v!r}; use an exact rational string")
    raise InputError(f"cannot interpret {v!r} as a rational")


def mat(rows) -> Mat:
    return [[parse_rational(v) for v in row] for row in rows]


def vec(entries) -> Vec:
    return [parse_rational(v) for v in entries]


def identity(n: int) -> Mat:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> Mat:
    return [[Fraction(0)] * c for _ in range(r)]


def transpose(A: Mat) -> Mat:
    return [list(col) for col in zip(*A)]


def mat_add(A: Mat, B: Mat) -> Mat:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(A: Mat, s) -> Mat:
    s = parse_rational(s)
    return [[a * s for a in row] for row in A]


def mat_mul(A: Mat, B: Mat) -> Mat:
    if len(A[0]) != len(B):
        raise InputError(f"shape mismatch {len(A)}x{len(A[0])} @ {len(B)}x{len(B[0])}")
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def mat_vec(A: Mat, v: Vec) -> Vec:
    if len(A[0]) != len(v):
        raise InputError("matrix/vector shape mismatch")
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def vec_add(u: Vec, v: Vec) -> Vec:
    return [a + b for a, b in zip(u, v)]


def vec_sub(u: Vec, v: Vec) -> Vec:
    return [a - b for a, b in zip(u, v)]


def vec_scale(v: Vec, s) -> Vec:
    s = parse_rational(s)
    return [s * a for a in v]


def dot(u: Vec, v: Vec) -> Fraction:
    return sum(a * b for a, b in zip(u, v))


def pair(u: Vec, G: Mat, v: Vec) -> Fraction:
    """Bilinear form value u^T G v."""
    return dot(u, mat_vec(G, v))


def mat_pow(A: Mat, k: int) -> Mat:
    if k < 0:
        return mat_pow(inverse(A), -k)
    result = identity(len(A))
    acc = A
    while k:
        if k & 1:
            result = mat_mul(result, acc)
        acc = mat_mul(acc, acc)
        k >>= 1
    return result


def det(A: Mat) -> Fraction:
    n = len(A)
    if any(len(row) != n for row in A):
        raise InputError("determinant of a non-square matrix")
    M = [row[:] for row in A]
    d = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            d = -d
        d *= M[col][col]
        inv_p = 1 / M[col][col]
        for r in range(col + 1, n):
            if M[r][col] == 0:
                continue
            f = M[r][col] * inv_p
            for c in range(col, n):
                M[r][c] -= f * M[col][c]
    return d


def inverse(A: Mat) -> Mat:
    n = len(A)
    M = [row[:] + idrow for row, idrow in zip(A, identity(n))]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise DegenerateError("singular matrix has no inverse")
        M[col], M[piv] = M[piv], M[col]
        inv_p = 1 / M[col][col]
        M[col] = [v * inv_p for v in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [v - f * w for v, w in zip(M[r], M[col])]
    return [row[n:] for row in M]


def solve(A: Mat, b: Vec) -> Vec:
    """Solve A x = b exactly; raises DegenerateError when A is singular."""
    n = len(A)
    M = [row[:] + [bv] for row, bv in zip(A, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise DegenerateError("singular system")
        M[col], M[piv] = M[piv], M[col]
        inv_p = 1 / M[col][col]
        M[col] = [v * inv_p for v in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [v - f * w for v, w in zip(M[r], M[col])]
    return [M[r][n] for r in range(n)]


def rank(A: Mat) -> int:
    if not A:
        return 0
    M = [row[:] for row in A]
    nrows, ncols = len(M), len(M[0])
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv_p = 1 / M[r][col]
        M[r] = [v * inv_p for v in M[r]]
        for i in range(nrows):
            if i != r and M[i][col] != 0:
                f = M[i][col]
                M[i] = [v - f * w for v, w in zip(M[i], M[r])]
        r += 1
        if r == nrows:
            break
    return r


def charpoly(A: Mat) -> list[Fraction]:
    """Characteristic polynomial det(T*I - A) by Faddeev-LeVerrier.

    Returns coefficients in ascending order, [c_0, ..., c_{n-1}, 1].
    """
    n = len(A)
    if any(len(row) != n for row in A):
        raise InputError("characteristic polynomial of a non-square matrix")
    coeffs = [Fraction(0)] * n + [Fraction(1)]
    N = identity(n)
    for k in range(1, n + 1):
        M = mat_mul(A, N)
        ck = -sum(M[i][i] for i in range(n)) / k
        coeffs[n - k] = ck
        N = [[M[i][j] + (ck if i == j else 0) for j in range(n)] for i in range(n)]
    return coeffs


def int_clear(coeffs) -> list[int]:
    """Scale a rational polynomial to coprime integer coefficients,
    positive leading coefficient."""
    fracs = [parse_rational(c) for c in coeffs]
    if all(c == 0 for c in fracs):
        return [0] * len(fracs)
    denom_lcm = 1
    for c in fracs:
        denom_lcm = denom_lcm * c.denominator // gcd(denom_lcm, c.denominator)
    ints = [int(c * denom_lcm) for c in fracs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    ints = [v // g for v in ints]
    lead = next(v for v in reversed(ints) if v != 0)
    if lead < 0:
        ints = [-v for v in ints]
    return ints


def kron(A: Mat, B: Mat) -> Mat:
    """Kronecker product, row-major block layout."""
    out = []
    for ra in A:
        for rb in B:
            out.append([a * b for a in ra for b in rb])
    return out
