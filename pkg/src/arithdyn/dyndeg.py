"""Dynamical-degree estimators, spectral data, and the property suite.

Quantities
----------
* ``spectral_radius`` — max eigenvalue modulus from the exact integer-cleared
  characteristic polynomial.
* ``lambda_estimate`` — degree-growth limit from an exact degree sequence,
  using the geometric mean of trailing ratios (with an exact cycle geometric
  mean for eventually periodic sequences).
* ``lambda_monomial`` — closed-form dynamical degrees of a monomial map from
  its torus matrix via exterior-power eigenvalue products.
* ``chi`` — spectral radius of the degree-i pullback action for functorial
  models; a trailing-window limsup estimator for per-iterate norm data.

Checks (each returns a :class:`~arithdyn.verdict.Verdict`)
----------------------------------------------------------
log-concavity of the dynamical-degree sequence, the product formula for
product models, Dinh's inequality chi_i^2 <= max_{p+q=i} lambda_p lambda_q,
equality of the maxima of chi and lambda, the trace-limsup equality
limsup |Tr(M^n)|^{1/n} = sp(M), near-identity powers of unit-modulus tuples,
explicit norm-equivalence constants for the pairing sandwich, and the
Frobenius-model degree identity lambda_i = chi_{2i} = q^i with a zeta
cross-check on projective-space counts.

Tolerances: exact where arithmetic is exact; 1e-6 relative where one side
passes through the root solver; 5% for the truncated trace estimator.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from . import ratlinalg as rl
from .corr import (DegreeSequence, GradedMatrixCorr, MonomialMap,
                   frobenius_model, iterate_degrees, torus_matrix)
from .counting.api import CountSequence
from .errors import DegenerateError, GuardError, InputError
from .roots import all_roots, max_root_modulus
from .verdict import (FAIL, PASS, Verdict, combine, round15, round_floats)
from .zeta import DENOMINATOR, zeta_from_counts

RELATIVE_TOL = 1e-6
LOG_CONCAVITY_TOL = 1e-9
TRACE_TOL = 0.05
MAX_TRACE_N = 500
MIN_TRACE_SPECTRAL = 1.05
UNIT_MODULUS_TOL = 1e-12


# ---------------------------------------------------------------------------
# Spectral quantities
# ---------------------------------------------------------------------------

def _square(M):
    A = rl.mat(M)
    n = len(A)
    if n == 0 or any(len(row) != n for row in A):
        raise InputError("matrix must be square and non-empty")
    return A


def spectral_radius(M) -> float:
    """Max root modulus of the exact characteristic polynomial."""
    return max_root_modulus(rl.int_clear(rl.charpoly(_square(M))))


@dataclass(frozen=True)
class ConvergenceTrace:
    """Audit trail for a limit estimate.

    ``estimates`` are the n-th-root values d_n^{1/n}; ``ratios`` the
    consecutive ratios d_{n+1}/d_n; ``final`` the chosen value; ``window``
    the 1-based n-range of the ratios the estimator used.
    """

    estimates: tuple
    ratios: tuple
    final: float
    window: tuple


def _exact_fraction_root(fr: Fraction, m: int) -> float:
    if m == 1:
        return float(fr)
    num, den = fr.numerator, fr.denominator
    rn = round(num ** (1.0 / m))
    rd = round(den ** (1.0 / m))
    if rn ** m == num and rd ** m == den:
        return float(Fraction(rn, rd))
    return float(fr) ** (1.0 / m)


def lambda_estimate(degs):
    """Degree-growth limit estimate with its convergence trace.

    The estimator is the geometric mean of the last four ratios
    (equivalently (d_N / d_{N-4})^{1/4}), which cancels the constant in
    sequences of the form c * rho^n * poly(n).  If the exact ratio
    sequence is eventually periodic — two full trailing periods agree as
    exact rationals — the estimate is the exact geometric mean of one
    cycle, so periodic degree sequences (finite-order maps) give exact
    answers.
    """
    seq = degs.degs if isinstance(degs, DegreeSequence) else \
        DegreeSequence.make(degs).degs
    N = len(seq)
    if N < 6:
        raise InputError(f"degree sequence too short: need at least 6 terms, "
                         f"got {N}")
    nth_roots = tuple(math.exp(math.log(seq[i]) / (i + 1)) for i in range(N))
    fratios = [Fraction(seq[i + 1], seq[i]) for i in range(N - 1)]
    float_ratios = tuple(float(r) for r in fratios)
    for m in range(1, len(fratios) // 2 + 1):
        if all(fratios[-j] == fratios[-m - j] for j in range(1, m + 1)):
            prod = math.prod(fratios[-m:], start=Fraction(1))
            final = _exact_fraction_root(prod, m)
            trace = ConvergenceTrace(nth_roots, float_ratios, final,
                                     (N - m, N))
            return final, trace
    final = math.exp((math.log(seq[-1]) - math.log(seq[-5])) / 4)
    return final, ConvergenceTrace(nth_roots, float_ratios, final, (N - 4, N))


def lambda_monomial(A, p) -> float:
    """p-th dynamical degree of a monomial map from its torus matrix.

    Equals the spectral radius of the p-th exterior power, i.e. the
    product of the p largest eigenvalue moduli; p = 0 gives 1 and p = k
    gives |det A| exactly.
    """
    Aq = _square(A)
    k = len(Aq)
    if not isinstance(p, int) or not 0 <= p <= k:
        raise InputError(f"exterior power {p!r} out of range 0..{k}")
    d = rl.det(Aq)
    if d == 0:
        raise InputError("torus matrix is singular: map is not dominant")
    if p == 0:
        return 1.0
    if p == k:
        return float(abs(d))
    moduli = sorted((abs(r) for r in all_roots(rl.int_clear(rl.charpoly(Aq)))),
                    reverse=True)
    return math.prod(moduli[:p])


def chi(c: GradedMatrixCorr, i, per_n_norms=None) -> float:
    """Cohomological degree chi_i of a graded matrix model.

    Functorial models: spectral radius of the degree-i action.  Otherwise
    per-iterate pullback norms must be supplied and a trailing-window
    limsup estimator (max of norm_n^{1/n} over the upper half window) is
    used.
    """
    if not isinstance(i, int) or not 0 <= i <= c.lattice.k:
        raise InputError(f"degree {i!r} out of range 0..{c.lattice.k}")
    if c.functorial:
        return spectral_radius(c.actions[i])
    if per_n_norms is None:
        raise InputError("non-functorial model: supply per-iterate norms "
                         "for a limsup estimate")
    norms = [float(x) for x in per_n_norms]
    if len(norms) < 2 or any(x <= 0 for x in norms):
        raise InputError("per-iterate norms must be positive, length >= 2")
    lo = max(1, len(norms) // 2)
    return max(norms[n - 1] ** (1.0 / n) for n in range(lo, len(norms) + 1))


def _chi_pairs(chis):
    """Normalize chi input to sorted (cohomology degree, value) pairs."""
    if hasattr(chis, "items"):
        items = chis.items()
    elif chis and isinstance(next(iter(chis)), (tuple, list)):
        items = chis
    else:
        items = enumerate(chis)
    pairs = sorted((int(d), float(v)) for d, v in items)
    if not pairs:
        raise InputError("no chi values supplied")
    if len({d for d, _ in pairs}) != len(pairs):
        raise InputError("duplicate chi degrees")
    if any(d < 0 or v <= 0 for d, v in pairs):
        raise InputError("chi degrees must be >= 0 with positive values")
    return pairs


def _positive_lambdas(lambdas, minimum=1):
    lams = [float(x) for x in lambdas]
    if len(lams) < minimum:
        raise InputError(f"need at least {minimum} dynamical degrees")
    if any(x <= 0 for x in lams):
        raise InputError("dynamical degrees must be positive")
    return lams


def algebraic_entropy(report) -> float:
    """log of the maximal cohomological degree."""
    pairs = _chi_pairs(report.chis if isinstance(report, DyndegReport)
                       else report)
    return math.log(max(v for _, v in pairs))


# ---------------------------------------------------------------------------
# Property checks
# ---------------------------------------------------------------------------

def check_log_concavity(lambdas) -> Verdict:
    """lambda_i * lambda_{i+2} <= lambda_{i+1}^2 up to 1e-9 relative slack."""
    lams = _positive_lambdas(lambdas, minimum=3)
    worst = 0.0
    violations = []
    for i in range(len(lams) - 2):
        lhs = lams[i] * lams[i + 2]
        rhs = lams[i + 1] ** 2
        worst = max(worst, lhs / rhs)
        if lhs > rhs * (1 + LOG_CONCAVITY_TOL):
            violations.append({"i": i, "triple": lams[i:i + 3]})
    status = FAIL if violations else PASS
    return Verdict("log_concavity", status, round_floats(
        {"value": worst, "reference": 1.0, "tol": LOG_CONCAVITY_TOL,
         "lambdas": lams, "violations": violations}))


def check_product_formula(g_lams, h_lams, f_lams) -> Verdict:
    """lambda_p(g x h) = max_{i+j=p} lambda_i(g) * lambda_j(h)."""
    g = _positive_lambdas(g_lams)
    h = _positive_lambdas(h_lams)
    f = _positive_lambdas(f_lams)
    if len(f) != len(g) + len(h) - 1:
        raise InputError(
            f"product degree count {len(f)} does not match factors "
            f"({len(g)} + {len(h)} - 1)")
    expected = []
    for p in range(len(f)):
        lo = max(0, p - len(h) + 1)
        hi = min(len(g) - 1, p)
        expected.append(max(g[i] * h[p - i] for i in range(lo, hi + 1)))
    worst = max(abs(fv - ev) / ev for fv, ev in zip(f, expected))
    status = PASS if worst <= RELATIVE_TOL else FAIL
    return Verdict("product_formula", status, round_floats(
        {"value": worst, "reference": 0.0, "tol": RELATIVE_TOL,
         "expected": expected, "got": f}))


def check_dinh(chis, lambdas) -> Verdict:
    """chi_i^2 <= max_{p+q=i} lambda_p * lambda_q (relative 1e-6)."""
    pairs = _chi_pairs(chis)
    lams = _positive_lambdas(lambdas)
    k = len(lams) - 1
    worst = 0.0
    violations = []
    for i, x in pairs:
        lo = max(0, i - k)
        hi = min(k, i)
        if lo > hi:
            raise InputError(f"chi degree {i} outside the modeled range "
                             f"0..{2 * k}")
        bound = max(lams[p] * lams[i - p] for p in range(lo, hi + 1))
        ratio = x * x / bound
        worst = max(worst, ratio)
        if ratio > 1 + RELATIVE_TOL:
            violations.append({"i": i, "chi": x, "bound": bound})
    status = FAIL if violations else PASS
    return Verdict("dinh", status, round_floats(
        {"value": worst, "reference": 1.0, "tol": RELATIVE_TOL,
         "violations": violations}))


def check_q4prime(chis, lambdas) -> Verdict:
    """max_i chi_i equals max_i lambda_i (relative 1e-6)."""
    pairs = _chi_pairs(chis)
    lams = _positive_lambdas(lambdas)
    mx_chi = max(v for _, v in pairs)
    mx_lam = max(lams)
    rel = abs(mx_chi - mx_lam) / max(mx_chi, mx_lam)
    status = PASS if rel <= RELATIVE_TOL else FAIL
    return Verdict("q4prime", status, round_floats(
        {"value": mx_chi, "reference": mx_lam, "tol": RELATIVE_TOL}))


# ---------------------------------------------------------------------------
# Trace limsup
# ---------------------------------------------------------------------------

def _trace_root_sequence(M, n_max):
    """|Tr(M^n)|^{1/n} for n = 1..n_max from exact rational traces."""
    A = _square(M)
    out = []
    P = A
    for n in range(1, n_max + 1):
        t = abs(sum(P[i][i] for i in range(len(A))))
        if t == 0:
            out.append(0.0)
        else:
            out.append(math.exp((math.log(t.numerator)
                                 - math.log(t.denominator)) / n))
        if n < n_max:
            P = rl.mat_mul(P, A)
    return out


def trace_limsup(M, n_max):
    """Estimate limsup |Tr(M^n)|^{1/n} over the trailing half window.

    Returns (estimate, best_n) with best_n the achieving exponent.  Small
    n are excluded because |Tr(M^n)|^{1/n} <= rank^{1/n} * sp(M) only
    approaches sp(M) as n grows; the window keeps the overshoot below the
    5% tolerance for the modest ranks this tool handles.
    """
    if not isinstance(n_max, int) or n_max < 2:
        raise InputError(f"n_max must be an integer >= 2, got {n_max!r}")
    if n_max > MAX_TRACE_N:
        raise GuardError(f"n_max={n_max} exceeds the trace guard "
                         f"{MAX_TRACE_N}")
    sp = spectral_radius(M)
    if sp < MIN_TRACE_SPECTRAL:
        raise InputError(
            f"spectral radius {sp:.6g} is below {MIN_TRACE_SPECTRAL}; the "
            "truncated trace estimator is unreliable near the unit circle")
    seq = _trace_root_sequence(M, n_max)
    lo = max(1, n_max // 2)
    best_val, best_n = None, None
    for n in range(lo, n_max + 1):
        v = seq[n - 1]
        if v > 0 and (best_val is None or v > best_val):
            best_val, best_n = v, n
    if best_val is None:
        raise DegenerateError("all traces vanish in the estimation window")
    return best_val, best_n


def check_trace_limsup(M, n_max=MAX_TRACE_N) -> Verdict:
    """trace_limsup within 5% of the spectral radius."""
    est, best_n = trace_limsup(M, n_max)
    sp = spectral_radius(M)
    ok = abs(est - sp) <= TRACE_TOL * sp
    witness = {"value": est, "reference": sp, "tol": TRACE_TOL,
               "best_n": best_n}
    if not ok:
        witness["trace_roots"] = _trace_root_sequence(M, n_max)
    return Verdict("trace_limsup", PASS if ok else FAIL,
                   round_floats(witness))


# ---------------------------------------------------------------------------
# Unit-modulus powers
# ---------------------------------------------------------------------------

def _as_unit_complex(mus):
    out = []
    for mu in mus:
        z = complex(mu[0], mu[1]) if isinstance(mu, (tuple, list)) \
            else complex(mu)
        if abs(abs(z) - 1.0) > UNIT_MODULUS_TOL:
            raise InputError(f"modulus {abs(z)!r} is not within "
                             f"{UNIT_MODULUS_TOL} of 1")
        out.append(z)
    if not out:
        raise InputError("need at least one unit-modulus value")
    return out


def pigeonhole_bound(count, eps) -> int:
    """k_max at which simultaneous approximation guarantees a power near 1."""
    return math.ceil((8.0 / eps) ** count)


def near_identity_powers(mus, eps, k_max):
    """All k <= k_max with max_i |mu_i^k - 1| < eps, in increasing order.

    Powers are computed as exp(k log mu) per k, so no rounding drift
    accumulates across the search range.
    """
    zs = _as_unit_complex(mus)
    if not 0 < eps < 1:
        raise InputError(f"eps must lie in (0, 1), got {eps!r}")
    if not isinstance(k_max, int) or k_max < 1:
        raise InputError(f"k_max must be a positive integer, got {k_max!r}")
    logs = [cmath.log(z) for z in zs]
    out = []
    for k in range(1, k_max + 1):
        if max(abs(cmath.exp(k * l) - 1.0) for l in logs) < eps:
            out.append(k)
    return out


def near_identity_report(mus, eps, k_max) -> dict:
    """Power search plus the pigeonhole bound and a status line.

    An empty result below the pigeonhole bound is reported as "bound not
    reached" rather than treated as a failure.
    """
    ks = near_identity_powers(mus, eps, k_max)
    bound = pigeonhole_bound(len(list(mus)), eps)
    if ks:
        status = "found"
    elif k_max < bound:
        status = "bound not reached"
    else:
        status = "missing beyond bound"
    return {"ks": ks, "pigeonhole_bound": bound, "status": status,
            "eps": eps, "k_max": k_max}


# ---------------------------------------------------------------------------
# Norm-equivalence constants
# ---------------------------------------------------------------------------

def _pairing_matrix(alpha_basis, beta_basis, pairing):
    A = [rl.vec(a) for a in alpha_basis]
    B = [rl.vec(b) for b in beta_basis]
    if not A or len(A) != len(B):
        raise InputError("need equal-size, non-empty bases")
    G = rl.mat(pairing)
    return [[rl.pair(a, G, b) for b in B] for a in A]


def eq3_norm_constants(alpha_basis, beta_basis, pairing):
    """Constants (C1, C2) sandwiching the coordinate sup norm.

    With P0[r][q] = <alpha_r, beta_q> and S(f) = sum |<f^* alpha_p,
    beta_q>|, the coordinate sup norm ||f^*|| (max |entry| of f^* written
    in the alpha basis) satisfies C1 * S <= ||f^*|| <= C2 * S for every
    f^*, where C1 = 1 / (dim * sum |P0|) and C2 = max |entry| of
    (P0^T)^{-1}.  Both constants are exact rationals.
    """
    P0 = _pairing_matrix(alpha_basis, beta_basis, pairing)
    if rl.det(P0) == 0:
        raise DegenerateError("degenerate pairing between the supplied bases")
    m = len(P0)
    total = sum(abs(x) for row in P0 for x in row)
    C1 = Fraction(1) / (m * total)
    inv_t = rl.inverse(rl.transpose(P0))
    C2 = max(abs(x) for row in inv_t for x in row)
    return C1, C2


def eq3_verify(alpha_basis, beta_basis, pairing, fstar) -> bool:
    """Exact sandwich check C1 * S <= ||f^*|| <= C2 * S for one f^*.

    ``fstar`` is the matrix of f^* in the alpha basis (entry [r][p] is the
    alpha_r coordinate of f^* alpha_p).
    """
    C1, C2 = eq3_norm_constants(alpha_basis, beta_basis, pairing)
    P0 = _pairing_matrix(alpha_basis, beta_basis, pairing)
    C = rl.mat(fstar)
    if len(C) != len(P0) or any(len(row) != len(P0) for row in C):
        raise InputError("f^* matrix must match the basis size")
    V = rl.mat_mul(rl.transpose(P0), C)
    S = sum(abs(x) for row in V for x in row)
    norm = max(abs(x) for row in C for x in row)
    return C1 * S <= norm and norm <= C2 * S


# ---------------------------------------------------------------------------
# Frobenius-model degrees with zeta cross-check
# ---------------------------------------------------------------------------

def weil_from_dyndeg(q, k) -> Verdict:
    """lambda_i = chi_{2i} = q^i on the Frobenius model, cross-checked
    against the zeta factorization of projective-space counts."""
    model = frobenius_model(q, k)
    expected = [q ** i for i in range(k + 1)]
    lambdas = [spectral_radius(model.actions[i]) for i in range(k + 1)]
    chis = [chi(model, i) for i in range(k + 1)]
    exact_ok = all(model.actions[i][0][0] == expected[i]
                   for i in range(k + 1))
    float_ok = (lambdas == [float(e) for e in expected]
                and chis == [float(e) for e in expected])

    counts = tuple(sum(q ** (n * i) for i in range(k + 1))
                   for n in range(1, 2 * (k + 1) + 1))
    z = zeta_from_counts(CountSequence(q, counts))
    weights = sorted(f.weight for f in z.factors)
    zeta_ok = (weights == [2 * i for i in range(k + 1)]
               and all(f.side == DENOMINATOR for f in z.factors)
               and sorted(f.coeffs for f in z.factors)
               == sorted((1, -q ** i) for i in range(k + 1)))

    status = PASS if exact_ok and float_ok and zeta_ok else FAIL
    return Verdict("weil_from_dyndeg", status, round_floats(
        {"q": q, "k": k, "lambdas": lambdas, "chis": chis,
         "expected": expected, "zeta_weights": weights,
         "zeta_factors": [list(f.coeffs) for f in z.factors],
         "value": max(chis), "reference": float(max(expected)),
         "tol": 0.0}))


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DyndegReport:
    """Dynamical degrees, cohomological degrees, and entropy of one model.

    ``chis`` is a tuple of (cohomology degree, value) pairs covering the
    modeled degrees; ``lambda_1_estimate`` and ``instability`` are filled
    for monomial-map reports (degree-growth estimator and the
    deg(f^2) < deg(f)^2 signature) and None for matrix models.
    """

    lambdas: tuple
    chis: tuple
    entropy: float
    lambda_1_estimate: object
    instability: object
    diagnostics: tuple

    def chi_map(self) -> dict:
        return dict(self.chis)

    @staticmethod
    def make(lambdas, chis, lambda_1_estimate=None, instability=None,
             diagnostics=()) -> "DyndegReport":
        lams = tuple(_positive_lambdas(lambdas))
        pairs = tuple(_chi_pairs(chis))
        for d, v in pairs:
            if d % 2 == 0 and d // 2 < len(lams):
                if v < lams[d // 2] * (1 - LOG_CONCAVITY_TOL):
                    raise InputError(
                        f"chi_{d} = {v} is below lambda_{d // 2} = "
                        f"{lams[d // 2]}")
        entropy = math.log(max(v for _, v in pairs))
        return DyndegReport(lams, pairs, entropy, lambda_1_estimate,
                            instability, tuple(diagnostics))


def report_for_model(c: GradedMatrixCorr) -> DyndegReport:
    """Spectral report for a functorial graded matrix model."""
    if not c.functorial:
        raise InputError("report requires a functorial model")
    k = c.lattice.k
    vals = [spectral_radius(c.actions[i]) for i in range(k + 1)]
    chis = tuple((2 * i, vals[i]) for i in range(k + 1))
    return DyndegReport.make(vals, chis)


def report_for_monomial(f: MonomialMap, n_max=12) -> DyndegReport:
    """Degree-growth report for a dominant monomial map.

    lambdas come from the exterior powers of the torus matrix; the
    degree-growth estimator and the instability signature come from exact
    iteration.  chi_{2p} is modeled as lambda_p on the rank-one groups of
    P^k.
    """
    if not f.dominant:
        raise InputError("map is not dominant")
    A = torus_matrix(f)
    lams = [lambda_monomial(A, p) for p in range(f.k + 1)]
    degs = iterate_degrees(f, n_max)
    est, trace = lambda_estimate(degs)
    instability = degs.degs[1] < degs.degs[0] ** 2
    chis = tuple((2 * p, lams[p]) for p in range(f.k + 1))
    return DyndegReport.make(
        lams, chis, lambda_1_estimate=est, instability=instability,
        diagnostics=(("lambda_1_degree_growth", trace),))


def property_suite(report: DyndegReport):
    """The per-report checks, deterministically ordered by name.

    Log-concavity needs at least three degrees, so it is skipped (vacuous)
    for curled-up models with k = 1.
    """
    checks = [check_dinh(report.chis, report.lambdas),
              check_q4prime(report.chis, report.lambdas)]
    if len(report.lambdas) >= 3:
        checks.append(check_log_concavity(report.lambdas))
    return tuple(sorted(checks, key=lambda v: v.name))


def report_to_json(report: DyndegReport, checks=None) -> dict:
    if checks is None:
        checks = property_suite(report)
    data = {
        "lambdas": [round15(x) for x in report.lambdas],
        "chis": {str(d): round15(v) for d, v in report.chis},
        "entropy": round15(report.entropy),
        "lambda_1_estimate": (None if report.lambda_1_estimate is None
                              else round15(report.lambda_1_estimate)),
        "instability": report.instability,
        "diagnostics": {
            name: {"estimates": [round15(x) for x in tr.estimates],
                   "ratios": [round15(x) for x in tr.ratios],
                   "final": round15(tr.final),
                   "window": list(tr.window)}
            for name, tr in report.diagnostics},
        "checks": [v.to_json() for v in checks],
        "overall": combine(checks).status,
    }
    return data


def _csv_cell(x) -> str:
    if isinstance(x, bool) or x is None:
        return "" if x is None else str(x)
    if isinstance(x, float):
        return f"{x:.15g}"
    return str(x)


def summary_csv(checks) -> str:
    """quantity,value,reference,tolerance,verdict rows for a check list."""
    lines = ["quantity,value,reference,tolerance,verdict"]
    for v in checks:
        w = v.witness
        lines.append(",".join([
            v.name, _csv_cell(w.get("value")), _csv_cell(w.get("reference")),
            _csv_cell(w.get("tol")), v.status]))
    return "\n".join(lines) + "\n"
