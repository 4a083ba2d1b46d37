"""Exact arithmetic in F_p and F_{p^n}.

Elements of an extension are coefficient vectors in the power basis of a
fixed monic irreducible modulus.  The modulus is chosen deterministically
(smallest in lexicographic coefficient order, highest degree first) so that
everything downstream is reproducible bit-for-bit.

Polynomials over F_p are plain lists of residues in ascending degree order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import GuardError, InputError

MAX_EXT_DEGREE = 16
MAX_FIELD_SIZE = 1 << 40

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(m: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond the field-size guard."""
    if m < 2:
        return False
    for w in _MR_WITNESSES:
        if m % w == 0:
            return m == w
    d, s = m - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for w in _MR_WITNESSES:
        x = pow(w, d, m)
        if x in (1, m - 1):
            continue
        for _ in range(s - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# F_p[x] helpers (coefficient lists, ascending degree)
# ---------------------------------------------------------------------------

def poly_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_add(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, v in enumerate(a):
        out[i] = v
    for i, v in enumerate(b):
        out[i] = (out[i] + v) % p
    return poly_trim(out)


def poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % p
    return poly_trim(out)


def poly_mod(a: list[int], f: list[int], p: int) -> list[int]:
    """Remainder of a modulo f (f need not be monic)."""
    a = list(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df and a:
        k = len(a) - 1 - df
        c = a[-1] * inv_lead % p
        for i, fi in enumerate(f):
            a[i + k] = (a[i + k] - c * fi) % p
        poly_trim(a)
    return a


def poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = list(a), list(b)
    while b:
        a, b = b, poly_mod(a, b, p)
    if a:  # monic normal form
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def poly_powmod(base: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    acc = poly_mod(base, f, p)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, acc, p), f, p)
        acc = poly_mod(poly_mul(acc, acc, p), f, p)
        e >>= 1
    return result


def poly_deriv(f: list[int], p: int) -> list[int]:
    return poly_trim([i * c % p for i, c in enumerate(f)][1:])


def _prime_divisors(m: int) -> list[int]:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out.append(m)
    return out


def is_irreducible(f: list[int], p: int) -> bool:
    """Rabin's test: x^{p^n} == x mod f, and gcd(x^{p^{n/l}} - x, f) = 1
    for every prime l dividing n."""
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    xq = poly_powmod(x, p ** n, f, p)
    if poly_trim(poly_add(xq, [(-c) % p for c in x], p)):
        return False
    for ell in _prime_divisors(n):
        d = n // ell
        xd = poly_powmod(x, p ** d, f, p)
        g = poly_gcd(poly_add(xd, [(-c) % p for c in x], p), f, p)
        if len(g) != 1:
            return False
    return True


# ---------------------------------------------------------------------------
# Field containers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PrimeField:
    """The prime field F_p."""

    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise InputError(f"{self.p} is not prime")


@dataclass(frozen=True)
class ExtField:
    """F_{p^n} as F_p[x]/(modulus); modulus coefficients ascending, monic."""

    p: int
    n: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p ** self.n


@dataclass(frozen=True)
class FieldElem:
    """Coordinates in the power basis of `field`, length n, entries in [0, p)."""

    field: ExtField
    coeffs: tuple[int, ...]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    # Convenience operators; the canonical entry point is field_arith.
    def __add__(self, other: "FieldElem") -> "FieldElem":
        return elem_add(self, other)

    def __sub__(self, other: "FieldElem") -> "FieldElem":
        return elem_add(self, elem_neg(other))

    def __mul__(self, other: "FieldElem") -> "FieldElem":
        return elem_mul(self, other)

    def __pow__(self, e: int) -> "FieldElem":
        return elem_pow(self, e)

    def __neg__(self) -> "FieldElem":
        return elem_neg(self)


@lru_cache(maxsize=None)
def build_extension(p: int, n: int) -> ExtField:
    """Construct F_{p^n} with the deterministic smallest irreducible modulus.

    Candidate moduli x^n + c_{n-1}x^{n-1} + ... + c_0 are scanned in
    increasing order of the base-p integer (c_{n-1}, ..., c_0); the first
    irreducible one wins.  For n = 1 that is the polynomial x itself.
    """
    if not is_prime(p):
        raise InputError(f"characteristic {p} is not prime")
    if not 1 <= n <= MAX_EXT_DEGREE:
        raise GuardError(
            f"extension degree {n} outside guard 1..{MAX_EXT_DEGREE}")
    if p ** n > MAX_FIELD_SIZE:
        raise GuardError(
            f"field size p^n = {p ** n} exceeds guard 2^40")
    for m in range(p ** n):
        lower, t = [], m
        for _ in range(n):
            lower.append(t % p)
            t //= p
        f = lower + [1]
        if is_irreducible(f, p):
            return ExtField(p, n, tuple(f))
    raise AssertionError("no irreducible polynomial found (unreachable)")


def prime_field(p: int) -> ExtField:
    """F_p presented as a degree-1 extension (modulus x)."""
    return build_extension(p, 1)


def zero(F: ExtField) -> FieldElem:
    return FieldElem(F, (0,) * F.n)


def one(F: ExtField) -> FieldElem:
    return FieldElem(F, (1,) + (0,) * (F.n - 1))


def from_coeffs(F: ExtField, coeffs) -> FieldElem:
    cs = [c % F.p for c in coeffs]
    if len(cs) > F.n:
        cs = poly_mod(cs, list(F.modulus), F.p)
    cs = cs + [0] * (F.n - len(cs))
    return FieldElem(F, tuple(cs))


def from_int(F: ExtField, c: int) -> FieldElem:
    """Embed an integer via the prime subfield."""
    return from_coeffs(F, [c])


def elements(F: ExtField):
    """All q field elements, in base-p code order (0, 1, ..., q-1)."""
    for code in range(F.q):
        cs, t = [], code
        for _ in range(F.n):
            cs.append(t % F.p)
            t //= F.p
        yield FieldElem(F, tuple(cs))


def _check_same_field(a: FieldElem, b: FieldElem):
    if a.field != b.field:
        raise InputError("elements belong to different fields")


def elem_add(a: FieldElem, b: FieldElem) -> FieldElem:
    _check_same_field(a, b)
    p = a.field.p
    return FieldElem(a.field,
                     tuple((x + y) % p for x, y in zip(a.coeffs, b.coeffs)))


def elem_neg(a: FieldElem) -> FieldElem:
    p = a.field.p
    return FieldElem(a.field, tuple((-x) % p for x in a.coeffs))


def elem_mul(a: FieldElem, b: FieldElem) -> FieldElem:
    _check_same_field(a, b)
    F = a.field
    prod = poly_mul(list(a.coeffs), list(b.coeffs), F.p)
    red = poly_mod(prod, list(F.modulus), F.p) if len(prod) > F.n else prod
    return from_coeffs(F, red)


def elem_inv(a: FieldElem) -> FieldElem:
    """Multiplicative inverse via extended Euclid in F_p[x]."""
    if a.is_zero():
        raise InputError("inversion of zero in a field")
    F = a.field
    p = F.p
    if F.n == 1:
        return FieldElem(F, (pow(a.coeffs[0], p - 2, p),))
    # extended gcd of a.coeffs and modulus
    r0, r1 = list(F.modulus), poly_trim(list(a.coeffs))
    s0, s1 = [], [1]
    while r1:
        # r0 = q*r1 + r2 by long division
        q = []
        rem = list(r0)
        df = len(r1) - 1
        inv_lead = pow(r1[-1], p - 2, p)
        q = [0] * max(len(rem) - df, 0)
        while len(rem) - 1 >= df and rem:
            k = len(rem) - 1 - df
            c = rem[-1] * inv_lead % p
            q[k] = c
            for i, fi in enumerate(r1):
                rem[i + k] = (rem[i + k] - c * fi) % p
            poly_trim(rem)
        r0, r1 = r1, rem
        s0, s1 = s1, poly_add(s0, [(-c) % p for c in poly_mul(q, s1, p)], p)
    # r0 is gcd (a unit, since the modulus is irreducible); normalize
    c = pow(r0[0], p - 2, p)
    inv = [x * c % p for x in s0]
    return from_coeffs(F, inv)


def elem_pow(a: FieldElem, e: int) -> FieldElem:
    if e < 0:
        return elem_pow(elem_inv(a), -e)
    result = one(a.field)
    acc = a
    while e:
        if e & 1:
            result = elem_mul(result, acc)
        acc = elem_mul(acc, acc)
        e >>= 1
    return result


def field_arith(a: FieldElem, b, op: str) -> FieldElem:
    """Dispatch: op in {add, mul, inv, pow}.  For pow, b is the integer
    exponent; for inv, b is ignored."""
    if op == "add":
        return elem_add(a, b)
    if op == "mul":
        return elem_mul(a, b)
    if op == "inv":
        return elem_inv(a)
    if op == "pow":
        return elem_pow(a, b)
    raise InputError(f"unknown field operation {op!r}")


def frobenius_elem(a: FieldElem) -> FieldElem:
    """The p-power Frobenius x -> x^p on the element's field."""
    return elem_pow(a, a.field.p)


def multiplicative_generator(F: ExtField) -> FieldElem:
    """Smallest element (in code order) generating the cyclic group F*."""
    m = F.q - 1
    prime_divs = _prime_divisors(m) if m > 1 else []
    for a in elements(F):
        if a.is_zero():
            continue
        if all(elem_pow(a, m // ell) != one(F) for ell in prime_divs):
            return a
    raise AssertionError("no generator found (unreachable)")
