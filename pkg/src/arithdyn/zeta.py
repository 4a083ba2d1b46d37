"""Zeta reconstruction from point counts and the classical consistency checks.

A count sequence N_n is modeled as a signed sum of eigenvalue power sums.
The minimal linear recurrence (exact Berlekamp-Massey over the rationals)
pins down the eigenvalue minimal polynomials; signed multiplicities come
from an exact linear solve; weights come from clustering eigenvalue moduli
at powers of sqrt(q).  All trace arithmetic is exact — floating point only
enters modulus comparisons.

Factor polynomials are stored in the form 1 + c_1 T + ... (constant term 1);
the eigenvalues are the reciprocals of their literal roots, i.e. the roots
of the reversed (characteristic-form) polynomial.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from .counting import CountSequence
from .errors import InputError, OrderNotConfirmedError
from .ratlinalg import (
    int_clear,
    mat_mul,
    mat_vec,
    parse_rational,
    solve,
    transpose,
)
from .roots import all_roots
from .verdict import FAIL, INDETERMINATE, PASS, Verdict, combine
from .verdict import round15 as _round15

NUMERATOR = "numerator"
DENOMINATOR = "denominator"
MIXED = "mixed"

WEIL_REL_TOL = 1e-9
CLUSTER_REL_TOL = 1e-6


@dataclass(frozen=True)
class ZetaFactor:
    """One irreducible piece: coeffs ascending with constant term 1."""

    coeffs: tuple
    side: str
    weight: object  # int or "mixed"

    def reversed_coeffs(self) -> tuple:
        """Characteristic-polynomial form; its roots are the eigenvalues."""
        return tuple(reversed(self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


@dataclass(frozen=True)
class ZetaData:
    q: int
    factors: tuple
    genus_hint: int | None = None
    caveats: tuple = ()


@dataclass(frozen=True)
class EigenvalueData:
    value: complex
    modulus: float
    weight: object
    source_factor: int


# ---------------------------------------------------------------------------
# Exact sequence machinery
# ---------------------------------------------------------------------------

def min_recurrence(seq) -> list[int]:
    """Minimal recurrence characteristic polynomial of a rational sequence.

    Berlekamp-Massey over exact rationals.  Returns integer coefficients in
    ascending order (monic for integer count sequences).  The order is only
    confirmed when the sequence supplies at least twice that many terms;
    otherwise OrderNotConfirmedError carries the tentative order.
    """
    s = [parse_rational(v) for v in seq]
    C = [Fraction(1)]
    B = [Fraction(1)]
    L, m, b = 0, 1, Fraction(1)
    for n in range(len(s)):
        d = s[n]
        for i in range(1, L + 1):
            d += C[i] * s[n - i]
        if d == 0:
            m += 1
            continue
        coef = d / b
        shifted = [Fraction(0)] * m + [coef * v for v in B]
        if 2 * L <= n:
            T = C[:]
            C = C + [Fraction(0)] * (len(shifted) - len(C))
            for i, v in enumerate(shifted):
                C[i] -= v
            L = n + 1 - L
            B, b, m = T, d, 1
        else:
            C = C + [Fraction(0)] * max(0, len(shifted) - len(C))
            for i, v in enumerate(shifted):
                C[i] -= v
            m += 1
    if len(s) < 2 * L:
        raise OrderNotConfirmedError(
            f"sequence of length {len(s)} cannot confirm recurrence order "
            f"{L}; need at least {2 * L} terms", tentative_order=L)
    # C(x) = 1 + c_1 x + ... + c_L x^L  ->  T^L + c_1 T^{L-1} + ... + c_L
    charpoly = list(reversed(C[:L + 1]))
    return int_clear(charpoly)


def power_sums(charpoly, n_max: int) -> list[Fraction]:
    """p_n = sum of n-th powers of the roots, via Newton's identities.

    charpoly: coefficients ascending; never touches floating point.
    """
    c = [parse_rational(v) for v in charpoly]
    while c and c[-1] == 0:
        c.pop()
    if len(c) <= 1:
        raise InputError("power sums need a nonconstant polynomial")
    L = len(c) - 1
    lead = c[-1]
    e = [(-1) ** i * c[L - i] / lead for i in range(L + 1)]  # elementary sym
    p: list[Fraction] = []
    for k in range(1, n_max + 1):
        acc = Fraction(0)
        for i in range(1, min(k, L) + 1):
            acc += (-1) ** (i + 1) * e[i] * (p[k - i - 1] if k - i >= 1
                                             else Fraction(0))
        if k <= L:
            acc += (-1) ** (k + 1) * k * e[k]
        p.append(acc)
    return p


def _factor_int_poly(coeffs_asc: list[int]):
    """Irreducible factorization over Z via sympy; ascending coefficient
    lists with positive leading coefficient, plus multiplicities."""
    x = sympy.symbols("x")
    poly = sympy.Poly(list(reversed(coeffs_asc)), x, domain="ZZ")
    _, factors = poly.factor_list()
    out = []
    for f, mult in factors:
        cs = [int(v) for v in reversed(f.all_coeffs())]
        if cs[-1] < 0:
            cs = [-v for v in cs]
        out.append((cs, int(mult)))
    return out


# ---------------------------------------------------------------------------
# Zeta reconstruction
# ---------------------------------------------------------------------------

def _assign_weight(q: int, eig_moduli: list[float]):
    """Weight w with all moduli clustered at q^{w/2}, else None."""
    mean = sum(eig_moduli) / len(eig_moduli)
    if mean <= 0:
        return None
    w = round(2 * math.log(mean) / math.log(q))
    if w < 0:
        return None
    target = q ** (w / 2)
    if all(abs(m - target) / target <= CLUSTER_REL_TOL for m in eig_moduli):
        return w
    return None


def _rational_qpower_weight(q: int, cs: list[int]):
    """For a linear charpoly-form factor T - r: weight 2j when r = q^j."""
    if len(cs) != 2:
        return None
    num, den = -cs[0], cs[1]
    if den != 1 or num < 1:
        return None
    r, j = num, 0
    while r > 1 and r % q == 0:
        r //= q
        j += 1
    return 2 * j if r == 1 else None


def zeta_from_counts(counts: CountSequence, betti_hint=None) -> ZetaData:
    """Reconstruct eigenvalue factors, signed multiplicities and weights.

    betti_hint, when given, maps weight -> expected eigenvalue count and is
    used only to force a weight onto factors whose moduli do not cluster on
    their own; forced factors still face the Weil check honestly.
    """
    q = counts.q
    seq = list(counts.counts)
    rec = min_recurrence(seq)
    if len(rec) - 1 == 0:
        return ZetaData(q, (), None, ("empty eigenvalue data",))
    factors = _factor_int_poly(rec)
    if any(mult > 1 for _, mult in factors):
        raise InputError(
            "minimal recurrence has a repeated factor; counts are not a "
            "signed sum of eigenvalue powers")
    charpolys = [cs for cs, _ in factors]
    r = len(charpolys)
    # signed multiplicities from N_n = sum_j m_j * p_n(f_j), solved exactly
    # via normal equations (full column rank by minimality of rec)
    psums = [power_sums(cs, len(seq)) for cs in charpolys]
    A = [[psums[j][n] for j in range(r)] for n in range(len(seq))]
    At = transpose(A)
    m = solve(mat_mul(At, A), mat_vec(At, [Fraction(v) for v in seq]))
    for n in range(len(seq)):
        lhs = sum(mj * ps[n] for mj, ps in zip(m, psums))
        if lhs != seq[n]:
            raise InputError(
                f"reconstructed eigenvalue data fails to reproduce N_{n + 1}")
    if any(mj.denominator != 1 or mj == 0 for mj in m):
        raise InputError(
            f"multiplicities {m} are not nonzero integers; counts do not "
            f"decompose over the factor power sums")

    hint_remaining = dict(betti_hint) if betti_hint else {}
    zfactors = []
    caveats = ["smoothness not verified"]
    for cs, mj in zip(charpolys, m):
        side = DENOMINATOR if mj > 0 else NUMERATOR
        weight = _rational_qpower_weight(q, cs)
        if weight is None:
            moduli = [abs(z) for z in all_roots(cs)]
            weight = _assign_weight(q, moduli)
        if weight is None and hint_remaining:
            deg = len(cs) - 1
            candidates = [w for w, k in hint_remaining.items() if k >= deg]
            if len(candidates) == 1:
                weight = candidates[0]
                caveats.append(
                    f"weight {weight} forced by hint on factor {cs}")
        if weight is None:
            weight = MIXED
            caveats.append(f"no consistent weight for factor {cs}")
        elif weight in hint_remaining:
            hint_remaining[weight] -= len(cs) - 1
        zfac = ZetaFactor(tuple(reversed(cs)), side, weight)
        zfactors.extend([zfac] * abs(int(mj)))
    genus = _infer_genus(q, zfactors)
    return ZetaData(q, tuple(zfactors), genus, tuple(caveats))


def _infer_genus(q, zfactors):
    """Curve shape: denominator (1-T)(1-qT), numerator pure weight 1."""
    dens = sorted(f.coeffs for f in zfactors if f.side == DENOMINATOR)
    nums = [f for f in zfactors if f.side == NUMERATOR]
    if dens != sorted([(1, -1), (1, -q)]):
        return None
    if not nums or any(f.weight != 1 for f in nums):
        return None
    total = sum(f.degree for f in nums)
    return total // 2 if total % 2 == 0 else None


def elliptic_zeta(N_1: int, q: int) -> ZetaData:
    """Genus-1 shortcut: numerator 1 - aT + qT^2 with a = q + 1 - N_1."""
    if N_1 < 1:
        raise InputError("elliptic count N_1 must be >= 1")
    a = q + 1 - N_1
    caveats = ()
    if a * a > 4 * q:
        caveats = ("Weil-violating input",)
    factors = (
        ZetaFactor((1, -a, q), NUMERATOR, 1),
        ZetaFactor((1, -1), DENOMINATOR, 0),
        ZetaFactor((1, -q), DENOMINATOR, 2),
    )
    return ZetaData(q, factors, 1, caveats)


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------

def eigenvalue_data(z: ZetaData) -> list[EigenvalueData]:
    out = []
    for idx, f in enumerate(z.factors):
        for root in all_roots(f.reversed_coeffs()):
            out.append(EigenvalueData(root, abs(root), f.weight, idx))
    return out


def weil_check(z: ZetaData, rel_tol: float = WEIL_REL_TOL) -> Verdict:
    """|alpha| = q^{w/2} for every eigenvalue of every weight-w factor."""
    per_factor = []
    for idx, f in enumerate(z.factors):
        if f.weight == MIXED:
            per_factor.append(Verdict(
                f"weil[{idx}]", INDETERMINATE,
                {"factor": list(f.coeffs), "reason": "mixed weight"}))
            continue
        target = z.q ** (f.weight / 2)
        worst, bad = 0.0, None
        for root in all_roots(f.reversed_coeffs()):
            rel = abs(abs(root) - target) / target
            if rel > worst:
                worst, bad = rel, root
        if worst <= rel_tol:
            per_factor.append(Verdict(
                f"weil[{idx}]", PASS,
                {"factor": list(f.coeffs), "weight": f.weight,
                 "max_rel_err": worst}))
        else:
            per_factor.append(Verdict(
                f"weil[{idx}]", FAIL,
                {"factor": list(f.coeffs), "weight": f.weight,
                 "offending_root": [bad.real, bad.imag],
                 "modulus": abs(bad), "target": target}))
    overall = combine(per_factor, "weil")
    witness = dict(overall.witness)
    witness["factors"] = [v.to_json() for v in per_factor]
    if z.caveats:
        witness["caveats"] = list(z.caveats)
    return Verdict("weil", overall.status, witness)


def functional_equation_check(P, q: int, g: int) -> Verdict:
    """q^g T^{2g} P(1/(qT)) = +-P(T), verified as exact integer identities:
    a_{2g-j} q^j = s * a_j q^g for all j and a single sign s."""
    a = [int(v) for v in P]
    while a and a[-1] == 0:
        a.pop()
    if len(a) - 1 != 2 * g:
        raise InputError(
            f"numerator degree {len(a) - 1} does not match 2g = {2 * g}")
    for s in (1, -1):
        if all(a[2 * g - j] * q ** j == s * a[j] * q ** g
               for j in range(2 * g + 1)):
            return Verdict("functional-equation", PASS, {"sign": s})
    j_bad = next(j for j in range(2 * g + 1)
                 if a[2 * g - j] * q ** j != a[j] * q ** g)
    return Verdict("functional-equation", FAIL,
                   {"j": j_bad, "lhs": a[2 * g - j_bad] * q ** j_bad,
                    "rhs": a[j_bad] * q ** g})


def lefschetz_reconstruct(z: ZetaData, n: int) -> int:
    """N_n as the alternating sum of exact eigenvalue power sums."""
    if any(f.weight == MIXED for f in z.factors):
        raise InputError("Lefschetz reconstruction needs fully weighted data")
    total = Fraction(0)
    for f in z.factors:
        p = power_sums(f.reversed_coeffs(), n)[n - 1]
        total += p if f.side == DENOMINATOR else -p
    if total.denominator != 1:
        raise InputError(f"non-integral reconstruction {total} at n={n}")
    return int(total)


def numerator_poly(z: ZetaData) -> list[int]:
    """Product of the numerator factors, ascending, constant term 1."""
    out = [Fraction(1)]
    for f in z.factors:
        if f.side != NUMERATOR:
            continue
        new = [Fraction(0)] * (len(out) + len(f.coeffs) - 1)
        for i, u in enumerate(out):
            for j, v in enumerate(f.coeffs):
                new[i + j] += u * v
        out = new
    return [int(v) for v in out]


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def zeta_to_json(z: ZetaData) -> dict:
    factors = []
    for f in z.factors:
        roots = [{"re": _round15(r.real), "im": _round15(r.imag),
                  "modulus": _round15(abs(r))}
                 for r in all_roots(f.reversed_coeffs())]
        factors.append({"coeffs": list(f.coeffs), "side": f.side,
                        "weight": f.weight, "eigenvalues": roots})
    return {"q": z.q, "factors": factors, "genus_hint": z.genus_hint,
            "caveats": list(z.caveats)}


def zeta_from_json(data) -> ZetaData:
    try:
        factors = tuple(
            ZetaFactor(tuple(int(c) for c in f["coeffs"]), f["side"],
                       f["weight"] if f["weight"] == MIXED else int(f["weight"]))
            for f in data["factors"])
        for f in factors:
            if f.coeffs[0] != 1:
                raise InputError(
                    f"zeta factor {list(f.coeffs)} must have constant term 1")
            if f.side not in (NUMERATOR, DENOMINATOR):
                raise InputError(f"bad factor side {f.side!r}")
        return ZetaData(int(data["q"]), factors, data.get("genus_hint"),
                        tuple(data.get("caveats", ())))
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"malformed zeta data: {e!r}") from None


def save_zeta_json(path, z: ZetaData):
    with open(path, "w") as fh:
        json.dump(zeta_to_json(z), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_zeta_json(path) -> ZetaData:
    try:
        with open(path) as fh:
            return zeta_from_json(json.load(fh))
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read zeta file {path}: {e}") from None
