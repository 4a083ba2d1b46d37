"""Polynomial root finding without companion matrices.

Strategy: factor out roots at zero, reduce to a square-free polynomial by
exact rational gcd with the derivative, then run Aberth's simultaneous
iteration on the distinct roots.  Every returned root is verified against a
backward-error residual; accuracy is limited only by double precision.
"""

from __future__ import annotations

import cmath
from fractions import Fraction

from .errors import ArithdynError, InputError
from .ratlinalg import parse_rational

RESIDUAL_TOL = 1e-12
_MAX_ITER = 400


def _qtrim(c: list[Fraction]) -> list[Fraction]:
    while c and c[-1] == 0:
        c.pop()
    return c


def qpoly_deriv(c: list[Fraction]) -> list[Fraction]:
    return _qtrim([i * v for i, v in enumerate(c)][1:])


def qpoly_divmod(a: list[Fraction], b: list[Fraction]):
    a = a[:]
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        k = len(a) - 1 - db
        f = a[-1] / b[-1]
        q[k] = f
        for i, bv in enumerate(b):
            a[i + k] -= f * bv
        _qtrim(a)
    return _qtrim(q), a


def qpoly_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = _qtrim(a[:]), _qtrim(b[:])
    while b:
        a, b = b, qpoly_divmod(a, b)[1]
    if a:
        lead = a[-1]
        a = [v / lead for v in a]
    return a


def squarefree_part(coeffs) -> list[Fraction]:
    """p / gcd(p, p') -- same distinct roots, all simple."""
    c = _qtrim([parse_rational(v) for v in coeffs])
    if len(c) <= 1:
        return c
    g = qpoly_gcd(c, qpoly_deriv(c))
    if len(g) <= 1:
        return c
    q, r = qpoly_divmod(c, g)
    assert not r
    return q


def poly_eval(coeffs, z):
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + complex(c)
    return acc


def _residual_scale(fc: list[float], z: complex) -> float:
    s, az = 0.0, abs(z)
    t = 1.0
    for c in fc:
        s += abs(c) * t
        t *= az
    return max(s, 1e-300)


def _aberth(fc: list[float]) -> list[complex]:
    """Simultaneous Aberth-Ehrlich refinement for a square-free float
    polynomial with nonzero constant term (coefficients ascending)."""
    n = len(fc) - 1
    lead = fc[-1]
    mc = [c / lead for c in fc]
    dc = [i * c for i, c in enumerate(mc)][1:]
    # initial points on a circle at the geometric-mean radius estimate,
    # angle offset breaks real-axis symmetry
    r = abs(mc[0]) ** (1.0 / n) if mc[0] != 0 else 1.0
    r = max(min(r, 1e6), 1e-6)
    zs = [r * cmath.exp(2j * cmath.pi * (k + 0.35) / n + 0.2j)
          for k in range(n)]
    for _ in range(_MAX_ITER):
        moved = 0.0
        for i in range(n):
            z = zs[i]
            pv = poly_eval(mc, z)
            dv = poly_eval(dc, z)
            if dv == 0:
                zs[i] = z + 1e-6 * (1 + 1j)
                moved = 1.0
                continue
            newton = pv / dv
            s = 0j
            for j in range(n):
                if j != i:
                    diff = z - zs[j]
                    if diff == 0:
                        diff = 1e-12 * (1 + 1j)
                    s += 1 / diff
            denom = 1 - newton * s
            w = newton if denom == 0 else newton / denom
            zs[i] = z - w
            moved = max(moved, abs(w) / max(abs(zs[i]), 1.0))
        if moved < 1e-15:
            break
    # final Newton polish
    for i in range(n):
        for _ in range(3):
            dv = poly_eval(dc, zs[i])
            if dv == 0:
                break
            zs[i] -= poly_eval(mc, zs[i]) / dv
    return zs


def all_roots(coeffs) -> list[complex]:
    """Distinct complex roots of a rational polynomial.

    Multiplicity is dropped (square-free reduction happens first).  Roots
    come back sorted by (modulus, real part, imaginary part) so output is
    deterministic.  Raises if any root fails the residual check.
    """
    c = _qtrim([parse_rational(v) for v in coeffs])
    if len(c) == 0:
        raise InputError("zero polynomial has no well-defined roots")
    if len(c) == 1:
        return []
    sf = squarefree_part(c)
    nz = 0
    while sf and sf[0] == 0:
        sf.pop(0)
        nz = 1  # square-free: zero root appears once
    roots: list[complex] = [0j] * nz
    deg = len(sf) - 1
    if deg == 1:
        roots.append(complex(-sf[0] / sf[1]))
    elif deg == 2:
        a, b, cc = sf[2], sf[1], sf[0]
        disc = cmath.sqrt(complex(b * b - 4 * a * cc))
        roots.append((-complex(b) + disc) / (2 * complex(a)))
        roots.append((-complex(b) - disc) / (2 * complex(a)))
    elif deg > 2:
        fc = [float(v) for v in sf]
        roots.extend(_aberth(fc))
    if deg >= 1:
        fc = [float(v) for v in sf]
        for z in roots[nz:]:
            res = abs(poly_eval(fc, z)) / _residual_scale(fc, z)
            if res > RESIDUAL_TOL:
                raise ArithdynError(
                    f"root solver residual {res:.3e} exceeds {RESIDUAL_TOL}"
                    f" at root {z}")
    roots.sort(key=lambda z: (abs(z), z.real, z.imag))
    return roots


def max_root_modulus(coeffs) -> float:
    """Largest |root|; 0.0 for nonzero constants."""
    rs = all_roots(coeffs)
    return max((abs(z) for z in rs), default=0.0)
