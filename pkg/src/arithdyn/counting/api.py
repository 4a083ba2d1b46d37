"""Point counting over finite fields.

Candidates are enumerated by canonical representative (projective points
with first nonzero coordinate scaled to 1), in fixed-size chunks handed to
the selected kernel backend.  Counts are exact integers and independent of
chunk size and backend.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass

import numpy as np

from .. import ffield as ff
from ..errors import GuardError, InputError
from .backend import get_backend
from .tables import build_table

MAX_CANDIDATES = 10 ** 8
DEFAULT_CHUNK = 1 << 18

PROJECTIVE = "projective"
AFFINE = "affine"


@dataclass(frozen=True)
class PolySystem:
    """Polynomial equations over F_p in a projective or affine ambient.

    polys is a tuple of polynomials; each polynomial is a tuple of terms
    (coefficient, exponent vector), exponent vectors of length n_coords.
    """

    name: str
    p: int
    ambient_kind: str
    ambient_dim: int
    polys: tuple

    @property
    def n_coords(self) -> int:
        return self.ambient_dim + (1 if self.ambient_kind == PROJECTIVE else 0)

    @classmethod
    def from_data(cls, name, p, ambient_kind, ambient_dim, polys):
        if not ff.is_prime(p):
            raise InputError(f"coefficient characteristic {p} is not prime")
        if ambient_kind not in (PROJECTIVE, AFFINE):
            raise InputError(f"unknown ambient kind {ambient_kind!r}")
        if not isinstance(ambient_dim, int) or ambient_dim < 1:
            raise InputError(f"ambient dimension must be a positive integer")
        nv = ambient_dim + (1 if ambient_kind == PROJECTIVE else 0)
        norm_polys = []
        for poly in polys:
            terms = []
            for coeff, exps in poly:
                if len(exps) != nv:
                    raise InputError(
                        f"exponent vector {exps} has length {len(exps)}, "
                        f"expected {nv}")
                if any(not isinstance(e, int) or e < 0 for e in exps):
                    raise InputError(f"negative or non-integer exponent in {exps}")
                c = coeff % p
                if c != 0:
                    terms.append((c, tuple(exps)))
            if ambient_kind == PROJECTIVE and terms:
                degs = {sum(e) for _, e in terms}
                if len(degs) != 1:
                    raise InputError(
                        f"non-homogeneous polynomial in projective ambient "
                        f"(term degrees {sorted(degs)})")
            if terms:
                norm_polys.append(tuple(terms))
        return cls(name, p, ambient_kind, ambient_dim, tuple(norm_polys))


@dataclass(frozen=True)
class CountSequence:
    """N_1..N_m over F_{q^n}; q is the base prime power."""

    q: int
    counts: tuple

    def __post_init__(self):
        if self.q < 2:
            raise InputError("count sequence needs a base q >= 2")
        if any(not isinstance(c, int) or c < 0 for c in self.counts):
            raise InputError("point counts must be non-negative integers")

    @property
    def n_max(self) -> int:
        return len(self.counts)


@dataclass(frozen=True)
class HyperellipticCurve:
    """y^2 = f(x) over F_p, p odd, f squarefree; coefficients ascending."""

    name: str
    p: int
    f: tuple

    @classmethod
    def make(cls, name, p, coeffs):
        if not ff.is_prime(p) or p == 2:
            raise InputError(
                f"hyperelliptic model needs an odd prime, got {p}")
        f = ff.poly_trim([c % p for c in coeffs])
        if len(f) < 2:
            raise InputError("f must have degree >= 1")
        fp = ff.poly_deriv(f, p)
        if not fp or len(ff.poly_gcd(f, fp, p)) != 1:
            raise InputError("f is not squarefree (gcd(f, f') is nontrivial)")
        return cls(name, p, tuple(f))

    @property
    def degree(self) -> int:
        return len(self.f) - 1


def candidate_count(sys: PolySystem, n: int) -> int:
    q = sys.p ** n
    if sys.ambient_kind == PROJECTIVE:
        return (q ** (sys.ambient_dim + 1) - 1) // (q - 1)
    return q ** sys.ambient_dim


def _system_arrays(sys: PolySystem, table):
    offs, logc, rows = [0], [], []
    for poly in sys.polys:
        for c, e in poly:
            logc.append(table.unit_log(c))
            rows.append(e)
        offs.append(len(logc))
    nv = sys.n_coords
    exps = (np.array(rows, dtype=np.int64) if rows
            else np.zeros((0, nv), dtype=np.int64))
    return (np.array(offs, dtype=np.int64),
            np.array(logc, dtype=np.int64),
            exps.reshape(len(rows), nv))


def count_points(sys: PolySystem, n: int, backend: str | None = None,
                 chunk: int = DEFAULT_CHUNK) -> int:
    """Exact number of F_{p^n}-points of the system."""
    if n < 1:
        raise InputError("extension degree n must be >= 1")
    cand = candidate_count(sys, n)
    if cand > MAX_CANDIDATES:
        raise GuardError(
            f"too large for brute force: {cand} candidate tuples exceed "
            f"the guard {MAX_CANDIDATES}")
    table = build_table(sys.p, n)
    kern = get_backend(backend)
    poly_off, logc, exps = _system_arrays(sys, table)
    q, qm1 = table.q, table.q - 1
    nv = sys.n_coords
    total = 0
    if sys.ambient_kind == PROJECTIVE:
        leads = range(nv)
    else:
        leads = (-1,)
    for lead in leads:
        nfree = nv if lead == -1 else nv - 1 - lead
        block = q ** nfree
        for start in range(0, block, chunk):
            stop = min(start + chunk, block)
            total += kern.count_block(start, stop, q, nv, lead,
                                      poly_off, logc, exps, table.zech, qm1)
    return total


def count_sequence(sys: PolySystem, n_max: int, backend: str | None = None,
                   chunk: int = DEFAULT_CHUNK) -> CountSequence:
    counts = []
    for n in range(1, n_max + 1):
        try:
            counts.append(count_points(sys, n, backend=backend, chunk=chunk))
        except GuardError as e:
            raise GuardError(f"count blocked at n={n}: {e}") from e
    return CountSequence(sys.p, tuple(counts))


def hyperelliptic_count(curve: HyperellipticCurve, n: int,
                        backend: str | None = None,
                        chunk: int = 1 << 20) -> int:
    """Points of the smooth model of y^2 = f(x) over F_{p^n}.

    Affine part by quadratic character sums; at infinity one point when
    deg f is odd, 1 + chi(leading coeff) when even.
    """
    if n < 1:
        raise InputError("extension degree n must be >= 1")
    table = build_table(curve.p, n)
    kern = get_backend(backend)
    q, qm1 = table.q, table.q - 1
    logf = np.array(
        [table.unit_log(c) if c != 0 else -1 for c in curve.f],
        dtype=np.int64)
    total = 0
    for start in range(0, q, chunk):
        stop = min(start + chunk, q)
        total += kern.hyper_block(start, stop, logf, table.zech, qm1)
    if curve.degree % 2 == 1:
        total += 1
    else:
        chi = 1 if table.unit_log(curve.f[-1]) % 2 == 0 else -1
        total += 1 + chi
    return total


def hyperelliptic_sequence(curve: HyperellipticCurve, n_max: int,
                           backend: str | None = None) -> CountSequence:
    counts = []
    for n in range(1, n_max + 1):
        try:
            counts.append(hyperelliptic_count(curve, n, backend=backend))
        except GuardError as e:
            raise GuardError(f"count blocked at n={n}: {e}") from e
    return CountSequence(curve.p, tuple(counts))


# ---------------------------------------------------------------------------
# File formats
# ---------------------------------------------------------------------------

def load_variety(path):
    """Read a variety JSON file.

    Standard shape: {"name", "p", "ambient": {"kind", "dim"}, "polys":
    [[[coeff, [e0,...,eN]], ...], ...]}.  The alternative key
    "hyperelliptic": {"f": [c0, c1, ...]} selects the fast curve model
    y^2 = f(x) instead of a general system.
    """
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read variety file {path}: {e}") from None
    try:
        name = data["name"]
        p = data["p"]
        if "hyperelliptic" in data:
            return HyperellipticCurve.make(name, p, data["hyperelliptic"]["f"])
        amb = data["ambient"]
        polys = [[(int(c), [int(e) for e in ev]) for c, ev in poly]
                 for poly in data["polys"]]
        return PolySystem.from_data(name, p, amb["kind"], amb["dim"], polys)
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"malformed variety file {path}: {e!r}") from None


def save_counts_csv(path, cs: CountSequence):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "q_n", "N_n"])
        for i, N in enumerate(cs.counts, start=1):
            w.writerow([i, cs.q ** i, N])


def load_counts_csv(path) -> CountSequence:
    try:
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as e:
        raise InputError(f"cannot read counts file {path}: {e}") from None
    if not rows or rows[0] != ["n", "q_n", "N_n"]:
        raise InputError(f"counts file {path} missing header n,q_n,N_n")
    q = None
    counts = []
    for i, row in enumerate(rows[1:], start=1):
        try:
            n, qn, N = int(row[0]), int(row[1]), int(row[2])
        except (ValueError, IndexError):
            raise InputError(f"bad row {row} in counts file {path}") from None
        if n != i:
            raise InputError(f"counts file rows must run n = 1.. (got {n} at {i})")
        if q is None:
            q = qn
        if q < 2 or qn != q ** n:
            raise InputError(f"inconsistent q_n column at n={n}")
        counts.append(N)
    if not counts:
        raise InputError(f"counts file {path} has no rows")
    return CountSequence(q, tuple(counts))
